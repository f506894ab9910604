import pytest

from linkcert.spatial import Chain, ChainError, canonical, canonical_orientation, chain_add, chain_of, fuse, reverse


def test_chain_arithmetic():
    c = chain_of((0, 1, 2))
    assert c[(1, 0)] == -1 and c[(0, 1)] == 1
    assert (c - c) == Chain()
    assert chain_add(c, chain_of(reverse((0, 1, 2)))) == Chain()


def test_fusing_triangles_along_a_shared_edge():
    # (0,1,2) uses 1->2, (1,3,2) uses 2->1: they cancel and a square remains
    assert fuse((0, 1, 2), (1, 3, 2)) == (0, 1, 3, 2)


def test_fuse_rejects_disconnected_and_multiple():
    with pytest.raises(ChainError, match="degree|disconnected"):
        fuse((0, 1, 2), (3, 4, 5))
    with pytest.raises(ChainError, match="multiplicity"):
        fuse((0, 1, 2), (0, 1, 2))


def test_canonical_forms():
    assert canonical((3, 1, 2)) == (1, 2, 3)
    assert canonical_orientation((3, 2, 1)) == (1, 2, 3)
    assert reverse((0, 1, 2, 3)) == (0, 3, 2, 1)
