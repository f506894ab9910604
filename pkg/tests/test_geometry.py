import random

import pytest

from linkcert.harness import random_embedding
from linkcert.spatial import Embedding, EmbeddingError, is_valid_embedding, validate_embedding
from linkcert.spatial.geometry import _validate_numpy, _validate_python, cross, orient3d, sub


def _reason(fn, pts):
    try:
        fn(pts)
    except EmbeddingError as e:
        return e.reason, e.vertices
    return None


def _violates(pts, reason, vs):
    if reason == "duplicate vertices":
        return pts[vs[0]] == pts[vs[1]]
    if reason == "collinear triple":
        return cross(sub(pts[vs[1]], pts[vs[0]]), sub(pts[vs[2]], pts[vs[0]])) == (0, 0, 0)
    return orient3d(*(pts[v] for v in vs)) == 0


def test_validators_agree_on_dense_lattices():
    rng = random.Random(5)
    for _ in range(200):
        n = rng.randint(13, 30)
        R = rng.choice([3, 5, 9, 40])
        pts = [(rng.randrange(R), rng.randrange(R), rng.randrange(R)) for _ in range(n)]
        a, b = _reason(_validate_numpy, pts), _reason(_validate_python, pts)
        assert (a is None) == (b is None)
        if a:
            assert _violates(pts, *a)


def test_planted_coplanar_quadruple_found():
    rng = random.Random(9)
    pts = [(rng.randrange(10**6), rng.randrange(10**6), rng.randrange(10**6)) for _ in range(40)]
    a, b, c = pts[3], pts[17], pts[29]
    pts[35] = tuple(b[i] + c[i] - a[i] for i in range(3))  # a + (b - a) + (c - a)
    assert orient3d(a, b, c, pts[35]) == 0
    reason, vs = _reason(_validate_numpy, pts)
    assert reason == "coplanar quadruple" and _violates(pts, reason, vs)


def test_specific_violations():
    with pytest.raises(EmbeddingError, match="duplicate"):
        validate_embedding([(0, 0, 0), (0, 0, 0), (1, 2, 3)])
    with pytest.raises(EmbeddingError, match="collinear"):
        validate_embedding([(0, 0, 0), (1, 1, 1), (2, 2, 2)])
    with pytest.raises(EmbeddingError, match="coplanar"):
        validate_embedding([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)])
    assert is_valid_embedding([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])


def test_embedding_json_round_trip_big_integers():
    emb = Embedding(((10**30, 1, 2), (3, -(10**25), 5), (7, 8, 9)))
    text = emb.to_json()
    assert '"1000000000000000000000000000000"' in text
    assert Embedding.from_json(text) == emb
    with pytest.raises(ValueError):
        Embedding.from_json('{"n": 3, "coords": [["1","2","3"]]}')


def test_random_embedding_is_deterministic():
    a = random_embedding(6, 1)
    assert a.to_json() == random_embedding(6, 1).to_json()
    assert a != random_embedding(6, 2)
    assert all(0 <= c < 10**6 for p in a.coords for c in p)


def test_random_embedding_retry_cap():
    with pytest.raises(RuntimeError, match="retry cap"):
        random_embedding(2, 0, M=1, max_resample=50)


def test_thousand_samples_are_valid():
    for seed in range(1000):
        assert is_valid_embedding(list(random_embedding(10, seed).coords))
