"""Skew products: exponents, Bowen metric, separated counts, the sandwich.

The three separated-count evaluations form a verification tower: the
pairwise greedy is assumption-free but tiny-case only, the grouping
greedy is brute force over explicit representatives, and the direct
count is the production path.  They must agree wherever they overlap.
"""

from fractions import Fraction

import pytest

from entroscope.cocycle import Cocycle
from entroscope.exactnum import GOLDEN_MEAN_ALPHA
from entroscope.fiber import IdentityFiber, RotationFiber, SymbolicFiber
from entroscope.skew import (SkewSystem, capacity_A, point_exponents,
                             sandwich_check, skew_bowen_distance, skew_orbit,
                             skew_sep_direct, skew_sep_greedy,
                             skew_sep_pairwise, word_exponents)
from entroscope.symbolic import SFT, FullShift, Sturmian, WindowPoint
from entroscope.util import CapExceeded, ConfigError

SIGN = Cocycle({(-1,): -1, (1,): 1})
SIGNS = FullShift((-1, 1))
GOLDEN = SFT((-1, 1), [(1, 1)])

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


def full_sys():
    return SkewSystem(SIGNS, SIGN, SymbolicFiber(FullShift(2)))


def golden_sys():
    return SkewSystem(GOLDEN, SIGN, SymbolicFiber(FullShift(2)))


# -- construction and exponents ---------------------------------------------

def test_system_validation():
    with pytest.raises(TypeError):
        SkewSystem(SIGNS, {(-1,): -1}, SymbolicFiber(FullShift(2)))
    with pytest.raises(ConfigError):
        # rule keyed on the wrong alphabet is not total over the base
        SkewSystem(SIGNS, Cocycle({(0,): 1, (1,): 1}),
                   SymbolicFiber(FullShift(2)))


def test_word_exponents_sign_walk():
    assert word_exponents(SIGN, (1, 1, -1, 1), 0, 5) == (0, 1, 2, 1, 2)
    assert word_exponents(SIGN, (-1, -1), 0, 3) == (0, -1, -2)
    with pytest.raises(ValueError):
        word_exponents(SIGN, (1, 1), 0, 4)  # two symbols, three steps


def test_word_exponents_radius_one():
    wide = Cocycle({(a, b, c): b for a in (0, 1) for b in (0, 1)
                    for c in (0, 1)}, radius=1)
    # word covers [-1, 4): positions 0..2 have full windows
    assert word_exponents(wide, (1, 0, 1, 1, 0), -1, 3) == (0, 0, 1)
    with pytest.raises(ValueError):
        word_exponents(wide, (1, 0, 1), 0, 3)  # start must be <= -s


def test_point_exponents_matches_word_exponents():
    w = (1, -1, -1, 1, 1, -1)
    y = WindowPoint(0, w)
    assert point_exponents(SIGN, y, 6) == word_exponents(SIGN, w, 0, 6)


def test_skew_orbit_shape():
    sys = full_sys()
    y = WindowPoint(-2, (1, 1, -1, 1, -1, 1, 1))
    x = WindowPoint(-4, (0,) * 9)
    orbit = skew_orbit(sys, y, x, 4)
    assert len(orbit) == 4
    assert orbit[0] == (y, x)
    assert orbit[1][0].start == y.start - 1
    with pytest.raises(ValueError):
        skew_orbit(sys, y, x, 0)


# -- skew Bowen metric ------------------------------------------------------

def test_bowen_modes_agree_on_shared_base():
    sys = full_sys()
    y = WindowPoint(-3, (1, -1, 1, 1, -1, 1, -1, 1, 1))
    x1 = WindowPoint(-5, (0, 1, 0, 0, 1, 1, 0, 1, 0, 1, 1))
    x2 = WindowPoint(-5, (0, 1, 1, 0, 1, 1, 0, 1, 0, 1, 1))
    raw = skew_bowen_distance(sys, (y, x1), (y, x2), 3, mode="raw")
    dec = skew_bowen_distance(sys, (y, x1), (y, x2), 3, mode="decomposition")
    assert raw == dec
    assert raw > 0


def test_bowen_decomposition_needs_base_agreement():
    sys = full_sys()
    wy = [1, -1] * 8
    wz = list(wy)
    wz[9] = 1  # position 1 sits inside the exponent window [0, 2]
    y = WindowPoint(-8, tuple(wy))
    z = WindowPoint(-8, tuple(wz))
    fx = [0] * 19
    fx[9] = 1  # marker at position 0 so shifted-pair scans terminate
    x = WindowPoint(-9, tuple(fx))
    with pytest.raises(ValueError):
        skew_bowen_distance(sys, (y, x), (z, x), 3, mode="decomposition")
    with pytest.raises(ValueError):
        skew_bowen_distance(sys, (y, x), (z, x), 3, mode="typo")
    # at time 1 the base disagreement sits at radius 0: distance 2
    assert skew_bowen_distance(sys, (y, x), (z, x), 3) == 2


# -- verification tower -----------------------------------------------------

def test_tower_agrees_tiny():
    sys = full_sys()
    assert skew_sep_pairwise(sys, 1, HALF) == 64
    assert skew_sep_greedy(sys, 1, HALF) == 64
    assert skew_sep_direct(sys, 1, HALF) == 64
    assert skew_sep_pairwise(sys, 2, 1) == 16
    assert skew_sep_greedy(sys, 2, 1) == 16
    assert skew_sep_direct(sys, 2, 1) == 16


def test_greedy_matches_direct_small():
    sys = full_sys()
    assert skew_sep_greedy(sys, 2, HALF) == skew_sep_direct(sys, 2, HALF) == 256
    assert skew_sep_greedy(sys, 3, HALF) == skew_sep_direct(sys, 3, HALF) == 768
    assert (skew_sep_greedy(sys, 3, QUARTER)
            == skew_sep_direct(sys, 3, QUARTER) == 12288)
    gsys = golden_sys()
    assert (skew_sep_greedy(gsys, 3, QUARTER)
            == skew_sep_direct(gsys, 3, QUARTER) == 3136)
    assert skew_sep_greedy(gsys, 4, HALF) == skew_sep_direct(gsys, 4, HALF) == 736


def test_direct_count_preconditions():
    sys = full_sys()
    assert skew_sep_direct(sys, 3, 2) == 1
    with pytest.raises(ValueError):
        skew_sep_direct(sys, 0, HALF)
    wide = Cocycle({(a, b, c): b for a in (-1, 1) for b in (-1, 1)
                    for c in (-1, 1)}, radius=1)
    rsys = SkewSystem(SIGNS, wide, SymbolicFiber(FullShift(2)))
    with pytest.raises(ConfigError):
        skew_sep_direct(rsys, 2, 1)  # rho(1) = 0 < radius
    assert skew_sep_direct(rsys, 2, HALF) > 0  # rho(1/2) = 1 is enough


def test_greedy_needs_symbolic_fiber_and_honors_cap():
    rsys = SkewSystem(SIGNS, SIGN, RotationFiber(GOLDEN_MEAN_ALPHA))
    with pytest.raises(ConfigError):
        skew_sep_greedy(rsys, 2, HALF)
    with pytest.raises(ConfigError):
        skew_sep_pairwise(rsys, 2, HALF)
    sys = full_sys()
    with pytest.raises(CapExceeded):
        skew_sep_greedy(sys, 3, HALF, pair_cap=100)
    with pytest.raises(CapExceeded):
        skew_sep_pairwise(sys, 2, HALF, pair_cap=100)


def test_direct_on_rotation_fiber_is_exact():
    rsys = SkewSystem(SIGNS, SIGN, RotationFiber(GOLDEN_MEAN_ALPHA))
    # isometric fiber: each base window contributes the same circle count
    got = skew_sep_direct(rsys, 3, Fraction(1, 5))
    words = 2 ** 9  # rho(1/5) = 3, so windows live on [-3, 5]
    assert got == words * 4


# -- capacity ---------------------------------------------------------------

def test_capacity_anchor_and_bracket_order():
    sys = full_sys()
    cb = capacity_A(sys, 3, QUARTER)
    assert (cb.lower, cb.upper) == (192, 768)
    assert cb.n == 3 and cb.epsilon == QUARTER
    for n in range(1, 8):
        b = capacity_A(sys, n, HALF)
        assert b.lower <= b.upper


def test_capacity_dp_matches_enumeration():
    sys = full_sys()
    gsys = golden_sys()
    for n in (1, 2, 5, 8, 12):
        fast = capacity_A(sys, n, QUARTER)
        slow = capacity_A(sys, n, QUARTER, force_enumeration=True)
        assert (fast.lower, fast.upper) == (slow.lower, slow.upper)
    for n in (2, 4, 9):
        fast = capacity_A(gsys, n, HALF)
        slow = capacity_A(gsys, n, HALF, force_enumeration=True)
        assert (fast.lower, fast.upper) == (slow.lower, slow.upper)


def test_capacity_sturmian_base():
    walk = Sturmian(GOLDEN_MEAN_ALPHA, Fraction(1, 2))
    sys = SkewSystem(walk, Cocycle({(-1,): -1, (1,): 1}),
                     SymbolicFiber(FullShift(2)))
    cb = capacity_A(sys, 10, QUARTER)
    assert (cb.lower, cb.upper) == (832, 3328)


def test_capacity_validation():
    sys = full_sys()
    with pytest.raises(ValueError):
        capacity_A(sys, 0, HALF)
    with pytest.raises(ValueError):
        capacity_A(sys, 3, 0)


# -- sandwich ---------------------------------------------------------------

def test_sandwich_full_shift_passes_with_constant_E():
    res = sandwich_check(full_sys(), range(2, 7), QUARTER)
    assert res["pass"] and res["left_certified_all"] and res["e_nonincreasing"]
    assert [row.e_inferred for row in res["rows"]] == [16] * 5
    for row in res["rows"]:
        assert row.a2_lower <= row.a2_upper
        assert row.skew_lo <= row.skew_hi
        assert row.a2_upper <= row.skew_lo  # the certified left inequality


def test_sandwich_golden_base_passes():
    res = sandwich_check(golden_sys(), range(2, 7), QUARTER)
    assert res["pass"]
    assert [row.e_inferred for row in res["rows"]] == [7] * 5


def test_sandwich_epsilon_precondition():
    sys = full_sys()
    with pytest.raises(ConfigError):
        sandwich_check(sys, range(2, 4), HALF)  # needs eps < 2^-(s+1) = 1/2
    with pytest.raises(ConfigError):
        sandwich_check(sys, range(2, 4), 0)
