"""Integer sequences that size the complete graphs used by the constructions.

All values are exact Python integers.  Recursions are memoized; the
odd-index closed forms are exposed separately so tests can compare the two.
"""

from __future__ import annotations

from functools import lru_cache
from math import prod

__all__ = [
    "alpha",
    "alpha_closed_form",
    "alpha_prime",
    "alpha_prime_closed_form",
    "gamma",
    "gamma_note",
    "gamma_prime",
    "beta",
    "beta_prime",
    "delta",
    "epsilon",
    "vertex_budget",
    "forward_budget",
    "SEQUENCES",
    "table_row",
]

# Value quoted alongside the product formula for r = 1 (the formula gives 2).
GAMMA_QUOTED = {1: 3}


def _check_index(name: str, value: int, lowest: int) -> None:
    if not isinstance(value, int) or value < lowest:
        raise ValueError(f"{name}: index must be an integer >= {lowest}, got {value!r}")


@lru_cache(maxsize=None)
def alpha(n: int) -> int:
    """Vertex count of the complete graph hosting an (n+1)-component ring link."""
    _check_index("alpha", n, 1)
    if n == 1:
        return 6
    if n == 2:
        return 10
    if n % 2 == 1:
        return 2 * alpha(n - 1) + 6
    return 2 * alpha(n - 1)


def alpha_closed_form(n: int) -> int:
    """Closed form valid for odd n >= 3: 6 * (1 + 4 + ... + 4^m) - 4^m, n = 2m+1."""
    if n < 3 or n % 2 == 0:
        raise ValueError("closed form is defined for odd n >= 3")
    m = (n - 1) // 2
    return 6 * sum(4**j for j in range(m + 1)) - 4**m


@lru_cache(maxsize=None)
def alpha_prime(n: int) -> int:
    """Number of blocks needed by the star recursion for n partner cycles."""
    _check_index("alpha_prime", n, 1)
    if n == 1:
        return 1
    if n % 2 == 0:
        return 2 * alpha_prime(n - 1)
    return 2 * alpha_prime(n - 1) + 1


def alpha_prime_closed_form(n: int) -> int:
    """(4^m - 1) / 3 for odd n = 2m - 1."""
    if n < 1 or n % 2 == 0:
        raise ValueError("closed form is defined for odd n >= 1")
    m = (n + 1) // 2
    return (4**m - 1) // 3


@lru_cache(maxsize=None)
def gamma(r: int) -> int:
    """Product (2^0+1)(2^1+1)...(2^(r-1)+1).

    gamma(1) is 2 by this formula although 3 is quoted next to it; see
    :func:`gamma_note`.  The engines size components with
    :func:`vertex_budget` instead.
    """
    _check_index("gamma", r, 1)
    return prod(2**i + 1 for i in range(r))


def gamma_note(r: int) -> tuple[int, int | None]:
    """Return (formula value, separately quoted value or None)."""
    return gamma(r), GAMMA_QUOTED.get(r)


@lru_cache(maxsize=None)
def gamma_prime(n: int) -> int:
    _check_index("gamma_prime", n, 1)
    return prod(3 * 2 ** (i - 1) for i in range(1, n + 1))


@lru_cache(maxsize=None)
def beta(r: int) -> int:
    _check_index("beta", r, 0)
    if r == 0:
        return 6
    if r == 1:
        return 10
    return alpha_prime(2**r) * (gamma(r) + 3)


def beta_prime(n: int, r: int) -> int:
    _check_index("beta_prime", n, 1)
    _check_index("beta_prime", r, 1)
    return alpha_prime(n * 2**r) * (gamma(r) + 3)


def delta(r: int) -> int:
    _check_index("delta", r, 1)
    return alpha_prime(3 * 2**r) * ((2 ** (2 * r - 1) + 2**r) * gamma(r) + 3)


def epsilon(n: int) -> int:
    _check_index("epsilon", n, 1)
    if n == 1:
        return 10
    return alpha_prime(2 ** (n + 1) - 2) * (gamma_prime(n) + 3)


def vertex_budget(r: int, target_final: int = 4) -> list[int]:
    """Backward vertex budgets [c_1, ..., c_{r+1}] for r doubling stages.

    c_{r+1} = target_final and c_s = (2^s + 1)(c_{s+1}/2 - 1), where each
    c_{s+1} is first rounded up to an even number.  c_1 is left as computed.
    """
    _check_index("vertex_budget", r, 1)
    if not isinstance(target_final, int) or target_final < 3:
        raise ValueError(f"invalid target_final {target_final!r}: need an integer >= 3")
    budgets = [target_final]
    for s in range(r, 0, -1):
        nxt = budgets[0]
        if nxt % 2:
            nxt += 1
            budgets[0] = nxt
        budgets.insert(0, (2**s + 1) * (nxt // 2 - 1))
    # the final stage can still require more than the target
    for s in range(1, r + 1):
        if budgets[s - 1] < 2**s + 1:
            raise ValueError(f"target_final={target_final} too small for stage {s}")
    return budgets


def forward_budget(c1: int, r: int) -> list[int]:
    """Guaranteed component sizes c_1..c_{r+1} when starting from c1 vertices."""
    out = [c1]
    for s in range(1, r + 1):
        out.append(2 * (out[-1] // (2**s + 1) + 1))
    return out


SEQUENCES = {
    "alpha": alpha,
    "alpha_prime": alpha_prime,
    "beta": beta,
    "gamma": gamma,
    "gamma_prime": gamma_prime,
    "delta": delta,
    "epsilon": epsilon,
}


def table_row(name: str, index: int, second: int | None = None):
    """Value for the CLI: a single sequence entry, beta_prime(n, r) or budgets."""
    if name == "beta_prime":
        if second is None:
            raise ValueError("beta_prime needs two indices (n, r)")
        return beta_prime(index, second)
    if name == "vertex_budget":
        return vertex_budget(index) if second is None else vertex_budget(index, second)
    if name not in SEQUENCES:
        raise KeyError(name)
    return SEQUENCES[name](index)
