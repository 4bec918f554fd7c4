from fractions import Fraction
from itertools import product
from math import comb, factorial

import numpy as np
import pytest
from hypothesis import given, strategies as st

from toriclct import _staircase, oracle
from toriclct.newton import InputError, SingularityInput

from .conftest import Z1Z2SQ, Z2Z3, m_power, primary_ideals

F = Fraction


def brute_colength(gens, m, n):
    """Enumerate I^m generators as m-fold sums and count lattice points below them."""
    powers = {tuple([0] * n)}
    for _ in range(m):
        powers = {tuple(a + b for a, b in zip(p, g)) for p in powers for g in gens}
    top = [m * min(g[j] for g in gens if sum(g) == g[j] and g[j] > 0) for j in range(n)]
    return sum(1 for x in product(*[range(t) for t in top])
               if not any(all(a >= b for a, b in zip(x, p)) for p in powers))


def test_colength_examples():
    assert oracle.colength(m_power(2, 1), 1) == 1
    assert oracle.colength(Z2Z3, 1) == 6
    assert oracle.colength(m_power(2, 2), 1) == 3


def test_colength_needs_primary_ideal():
    with pytest.raises(InputError):
        oracle.colength(Z1Z2SQ, 1)
    with pytest.raises(InputError):
        oracle.colength(SingularityInput(2, ((F(1, 2), 0), (0, 1)), "weight"), 1)


@given(primary_ideals(max_gens=2, max_exp=3), st.integers(1, 3))
def test_colength_matches_brute_force(data, m):
    gens = [tuple(int(c) for c in g) for g in data.generators]
    assert oracle.colength(data, m) == brute_colength(gens, m, data.n)


@pytest.mark.parametrize("n,s", [(2, 1), (2, 3), (3, 1), (3, 2)])
def test_estimate_for_m_power_closed_form(n, s):
    # colength(m^(s m)) = C(s m + n - 1, n), so the estimate carries an O(1/m) bias
    m = 24
    expected = F(factorial(n) * comb(s * m + n - 1, n), m ** n)
    assert oracle.multiplicity_estimate(m_power(n, s)) == expected
    assert expected > s ** n


def test_estimate_z2z3_within_tolerance():
    assert abs(oracle.multiplicity_estimate(Z2Z3) - 6) / 6 <= F(1, 10)


@given(primary_ideals(max_gens=2, max_exp=3), st.integers(1, 5))
def test_colength_monotone_in_power(data, m):
    assert oracle.colength(data, m + 1) >= oracle.colength(data, m)


def test_lct_interval_examples():
    cfg = oracle.OracleConfig()
    for data, t in ((Z1Z2SQ, F(2, 3)), (m_power(3, 2), F(2, 3)), (Z2Z3, F(6, 5))):
        lo, hi = oracle.lct_estimate(data, cfg)
        assert lo <= t <= hi and hi - lo <= F(1, cfg.grid_resolution)


def test_config_validation():
    with pytest.raises(ValueError):
        oracle.OracleConfig(tolerance=F(3, 2))
    assert oracle.OracleConfig().power_cap == 24


@given(primary_ideals(max_gens=3, max_exp=6), st.integers(1, 4))
def test_staircase_backends_agree(data, m):
    G = np.array([[int(c) for c in g] for g in data.generators], dtype=np.int64)
    powers = oracle._pure_powers([tuple(r) for r in G], data.n)
    box = powers[:-1]
    H = _staircase.from_generators(G, box)
    for k in range(2, m + 1):
        new_box = [k * b for b in box]
        a = _staircase._step_numpy(H, G, new_box)
        if H.ndim == 1:
            b = _staircase._step_numba_1d(H, G, new_box[0])
        else:
            b = _staircase._step_numba_2d(H, G, *new_box)
        assert np.array_equal(a, b)
        H = a
