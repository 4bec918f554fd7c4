"""Brute-force cross-checks, deliberately independent of the polytope code.

* ``colength`` counts lattice points outside ``I^m`` with staircase arrays.
* ``multiplicity_estimate`` is ``n! colength(I^m) / m^n``, which tends to e(I).
* ``lct_estimate`` bisects on grid rationals t, deciding ``(t,...,t) in Gamma``
  by enumerating candidate separating functionals instead of solving an LP.

Only input parsing (``SingularityInput``) is shared with the exact modules.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import ceil, factorial

import numpy as np

from . import _staircase
from .newton import InputError, Kind, UnsupportedDimension

MAX_ORACLE_DIM = 3


@dataclass(frozen=True)
class OracleConfig:
    grid_resolution: int = 64
    power_cap: int = 24
    tolerance: Fraction = Fraction(1, 10)

    def __post_init__(self):
        object.__setattr__(self, "tolerance", Fraction(self.tolerance))
        if not 0 < self.tolerance < 1:
            raise ValueError("oracle tolerance must lie in (0, 1)")
        if self.grid_resolution < 1 or self.power_cap < 1:
            raise ValueError("grid_resolution and power_cap must be positive")


def _pure_powers(gens, n):
    powers = []
    for j in range(n):
        on_axis = [g[j] for g in gens if g[j] > 0 and all(g[k] == 0 for k in range(n) if k != j)]
        if not on_axis:
            raise InputError(f"ideal is not m-primary: no pure power of z_{j + 1}")
        powers.append(min(on_axis))
    return powers


def _check(data):
    if data.kind is not Kind.IDEAL:
        raise InputError("the lattice oracle needs an integral monomial ideal")
    if data.n > MAX_ORACLE_DIM:
        raise UnsupportedDimension(f"the lattice oracle handles n <= {MAX_ORACLE_DIM}")
    gens = [tuple(int(c) for c in g) for g in data.generators]
    return gens, _pure_powers(gens, data.n)


def colength(data, m=1):
    """``dim O / I^m``: lattice points not componentwise above any generator of I^m."""
    gens, powers = _check(data)
    n = data.n
    if m < 1:
        raise ValueError("power must be positive")
    if n == 1:
        return m * powers[0]
    G = np.array(gens, dtype=np.int64)
    box = powers[:-1]
    H = _staircase.from_generators(G, box)
    for k in range(2, m + 1):
        H = _staircase.power_step(H, G, [k * b for b in box])
    return int(H.sum())


def multiplicity_estimate(data, cfg=OracleConfig()):
    m = cfg.power_cap
    return Fraction(factorial(data.n) * colength(data, m), m ** data.n)


def _solve_small(rows, rhs):
    n = len(rows)
    M = [[Fraction(v) for v in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return None
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [v * inv for v in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return [M[r][n] for r in range(n)]


def separation_values(gens, n):
    """Values ``min_i <w, a_i>`` at every vertex w of the arrangement on the simplex.

    ``(t,...,t)`` lies in Gamma exactly when t is at least all of them.
    """
    pool = [tuple(1 if k == j else 0 for k in range(n)) for j in range(n)]
    pool += [tuple(a[k] - b[k] for k in range(n)) for a, b in combinations(gens, 2)]
    values = set()
    for rows in combinations(pool, n - 1):
        w = _solve_small(list(rows) + [(1,) * n], [0] * (n - 1) + [1])
        if w is None or any(x < 0 for x in w):
            continue
        values.add(min(sum(x * y for x, y in zip(w, a)) for a in gens))
    return sorted(values)


def lct_estimate(data, cfg=OracleConfig()):
    """Interval ``(lo, hi]`` of width ``1/grid_resolution`` containing ``1/c``."""
    n = data.n
    gens = [tuple(Fraction(c) for c in g) for g in data.generators]
    worst = max(separation_values(gens, n))
    R = cfg.grid_resolution

    def member(k):
        return Fraction(k, R) >= worst

    lo = 0
    hi = ceil(R * min(max(g) for g in gens))
    assert member(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if member(mid):
            hi = mid
        else:
            lo = mid
    return Fraction(lo, R), Fraction(hi, R)
