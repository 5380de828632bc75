"""Scales, slow-entropy reports, sequence entropy, Folner defect, Birkhoff."""

import math
from fractions import Fraction

import pytest

from entroscope.cocycle import Cocycle
from entroscope.entropy import (Arithmetic, Explicit, ExpScale, Geometric,
                                PolyScale, RangeExpScale, RangeInnerScale,
                                bernoulli_seq_entropy, birkhoff_sup,
                                count_bracket, evens_family, folner_defect,
                                goodwyn_check, h_top_estimate,
                                hamming_ball_count, hamming_exponent,
                                interval_family, k_estimate, powers_family,
                                ratio_curve, sa_size, slow_entropy_report)
from entroscope.exactnum import GOLDEN_MEAN_ALPHA
from entroscope.fiber import IdentityFiber, SymbolicFiber
from entroscope.skew import SkewSystem
from entroscope.symbolic import SFT, FullShift, Sturmian

SIGN = Cocycle({(-1,): -1, (1,): 1})
SIGNS = FullShift((-1, 1))
GOLDEN = SFT((-1, 1), [(1, 1)])
LOG2 = math.log(2)
LOG_PHI = math.log((1 + math.sqrt(5)) / 2)


# -- scales -------------------------------------------------------------------

def test_exp_and_poly_scales():
    assert ExpScale().eval_exact(5, 2) == 32
    assert math.isclose(ExpScale().log_eval(7, 0.5), 3.5)
    assert PolyScale().eval_exact(5, 2) == 25
    assert math.isclose(PolyScale().log_eval(8, 3), 3 * math.log(8))
    with pytest.raises(ValueError):
        PolyScale().log_eval(0, 1)
    with pytest.raises(ValueError):
        PolyScale().eval_exact(5, -1)


def test_range_scales_exact_anchors():
    # 2^3 sign words: ranges r (and q = r) are 2,2,3,2,4,2,3,2 over words
    assert RangeExpScale(SIGNS, SIGN).eval_exact(3, 2) == 48
    assert RangeInnerScale(SIGNS, SIGN).eval_exact(3, 2) == 52


def test_range_scale_log_matches_exact():
    scale = RangeExpScale(SIGNS, SIGN)
    for n in (2, 5, 9):
        exact = scale.eval_exact(n, 2)
        assert math.isclose(scale.log_eval(n, LOG2), math.log(exact),
                            rel_tol=1e-12)


# -- count brackets and ratio curves ------------------------------------------

def test_ratio_curve_full_shift_constants():
    rc = ratio_curve(SymbolicFiber(FullShift(2)), ExpScale(), Fraction(1, 2),
                     [10, 20], LOG2)
    for n, rlo, rhi in rc.rows:
        assert math.isclose(rlo, 1.0, rel_tol=1e-9)
        assert math.isclose(rhi, 4.0, rel_tol=1e-9)  # the 2 rho window margin


def test_count_bracket_dispatches_on_target():
    fib = SymbolicFiber(FullShift(2))
    assert count_bracket(fib, 5, Fraction(1, 2)) == (32, 128)
    sys = SkewSystem(SIGNS, SIGN, fib)
    lo, hi = count_bracket(sys, 3, Fraction(1, 4))
    assert (lo, hi) == (192, 768)


# -- slow entropy -------------------------------------------------------------

def test_slow_entropy_threshold_crossings():
    sys = SkewSystem(SIGNS, SIGN, SymbolicFiber(FullShift(2)))
    scale = RangeExpScale(SIGNS, SIGN)
    grid = [round(0.3 + 0.05 * i, 10) for i in range(17)]
    rep = slow_entropy_report(sys, scale, Fraction(1, 4), 60, grid,
                              threshold=1e-2)
    assert not rep.empty_upper and not rep.empty_lower
    assert rep.t_lower <= rep.t_upper
    assert rep.t_upper == 0.85 and rep.t_lower == 0.8
    assert abs(rep.t_upper - LOG2) < 0.2  # finite-n bias shrinks with n
    assert rep.n_max == 60
    assert rep.label == "finite-n diagnostic, not a limit"


def test_slow_entropy_empty_flags_on_bounded_system():
    ident = IdentityFiber([Fraction(0), Fraction(1, 2)])
    rep = slow_entropy_report(ident, ExpScale(), Fraction(1, 4), 40,
                              [0.5, 1.0])
    assert rep.empty_upper and rep.empty_lower
    assert rep.t_upper == rep.t_lower == 0.5  # grid minimum, flagged empty
    with pytest.raises(ValueError):
        slow_entropy_report(ident, ExpScale(), Fraction(1, 4), 40, [])


# -- topological entropy brackets ----------------------------------------------

def test_h_top_full_shift():
    lo, hi = h_top_estimate(SymbolicFiber(FullShift(2)), Fraction(1, 2), 200)
    assert abs(lo - LOG2) < 1e-9
    assert LOG2 <= hi < LOG2 + 0.01
    with pytest.raises(ValueError):
        h_top_estimate(SymbolicFiber(FullShift(2)), Fraction(1, 2), 1)


def test_h_top_golden_mean():
    lo, hi = h_top_estimate(SymbolicFiber(GOLDEN), Fraction(1, 2), 100)
    assert abs(lo - LOG_PHI) < 0.01
    assert abs(hi - LOG_PHI) < 0.02  # upper carries the 2 rho / n excess
    assert lo <= hi
    lo4, hi4 = h_top_estimate(SymbolicFiber(GOLDEN), Fraction(1, 2), 400)
    assert abs(lo4 - LOG_PHI) < 0.005
    assert abs(hi4 - LOG_PHI) < 0.005


# -- sequence footprints and K(A) ----------------------------------------------

def test_sa_size_values():
    assert sa_size(Arithmetic(1, 1), 10, 4) == 13
    assert sa_size(Arithmetic(2, 2), 5, 3) == 11
    assert sa_size(Geometric(2), 4, 2) == 8
    assert sa_size(Explicit([i * i for i in range(1, 21)]), 20, 1) == 20
    with pytest.raises(ValueError):
        sa_size(Arithmetic(1, 1), 0, 1)


def test_sa_size_monotone_in_m():
    for A in (Arithmetic(3, 2), Geometric(3),
              Explicit([1, 4, 9, 16, 25, 36, 49])):
        prev = 0
        for m in range(1, 9):
            cur = sa_size(A, 6, m)
            assert cur >= prev
            prev = cur


def test_k_estimate_arithmetic():
    est = k_estimate(Arithmetic(1, 1))
    assert not est.diverged and est.value == 1 and est.stabilized_m == 1
    est2 = k_estimate(Arithmetic(2, 2))
    assert not est2.diverged and est2.value == 2 and est2.stabilized_m == 2


def test_k_estimate_geometric_diverges():
    est = k_estimate(Geometric(2))
    assert est.diverged and est.value is None
    floats = [float(v) for (_m, _n, v) in est.rows]
    assert floats == [1.0, 2.0, 3.9998, 7.999, 15.9966]
    assert est.last == est.rows[-1][2]


def test_k_estimate_explicit_clamps_n():
    est = k_estimate(Explicit(list(range(1, 50))), n_schedule=(10 ** 6,))
    assert all(n == 49 for (_m, n, _v) in est.rows)
    with pytest.raises(ValueError):
        k_estimate(Arithmetic(1, 1), m_schedule=(4,))


# -- Hamming balls ---------------------------------------------------------------

def test_hamming_ball_small_counts():
    assert hamming_ball_count(2, 4, 0.5) == 5  # strict: j < 2
    assert hamming_ball_count(2, 4, Fraction(1, 2)) == 5
    assert hamming_ball_count(3, 4, Fraction(1, 2)) == 1 + 4 * 2
    assert hamming_ball_count(2, 3, 1) == 7  # j < 3, misses only the antipode
    with pytest.raises(ValueError):
        hamming_ball_count(1, 4, 0.5)
    with pytest.raises(ValueError):
        hamming_ball_count(2, 4, 0)


def test_hamming_exponent_domain_and_endpoint():
    assert math.isclose(hamming_exponent(2, Fraction(1, 2)), LOG2)
    with pytest.raises(ValueError):
        hamming_exponent(2, Fraction(3, 5))  # above (kF-1)/kF
    with pytest.raises(ValueError):
        hamming_exponent(2, 0)


def test_hamming_count_growth_matches_exponent():
    r = Fraction(3, 10)
    want = hamming_exponent(2, r)
    n = 2000
    got = math.log(hamming_ball_count(2, n, r)) / n
    assert abs(got - want) < 0.01
    # the gap shrinks with n
    gap500 = abs(math.log(hamming_ball_count(2, 500, r)) / 500 - want)
    assert abs(got - want) < gap500


# -- Goodwyn ---------------------------------------------------------------------

def test_bernoulli_sequence_entropy_is_log_k():
    assert float(bernoulli_seq_entropy(2, Arithmetic(1, 1), 100)) == LOG2
    assert math.isclose(float(bernoulli_seq_entropy(3, Geometric(2), 12)),
                        math.log(3))


def test_goodwyn_inequality_holds():
    g = goodwyn_check(2, Arithmetic(1, 1))
    assert g["ok"] and math.isclose(g["lhs"], g["rhs"])
    g2 = goodwyn_check(2, Arithmetic(2, 2))
    assert g2["ok"] and g2["rhs"] > g2["lhs"]
    squares = Explicit([i * i for i in range(1, 401)])
    g3 = goodwyn_check(3, squares)
    assert g3["ok"]
    assert g3["k_estimate"].diverged  # gaps grow, so the footprint does too


# -- Folner defect -------------------------------------------------------------

def test_folner_interval_defect_is_two_over_n():
    for n, defect in folner_defect(interval_family, 3, [4, 10, 50, 1000]):
        assert defect == Fraction(2, n)


def test_folner_evens_never_improve():
    for _n, defect in folner_defect(evens_family, 2, [3, 20, 200]):
        assert defect == 1


def test_folner_powers_stay_bad():
    for _n, defect in folner_defect(powers_family, 2, [4, 8, 12]):
        assert defect == 1


# -- Birkhoff sup ----------------------------------------------------------------

def test_birkhoff_zero_cocycle():
    zero = Cocycle({(-1,): 0, (1,): 0})
    assert birkhoff_sup(SIGNS, zero, 7) == 0


def test_birkhoff_full_shift_stays_at_one():
    assert birkhoff_sup(SIGNS, SIGN, 9) == 1
    with pytest.raises(ValueError):
        birkhoff_sup(SIGNS, SIGN, 0)


def test_birkhoff_sturmian_walk_decays():
    walk = Sturmian(GOLDEN_MEAN_ALPHA, Fraction(1, 2))
    assert birkhoff_sup(walk, SIGN, 5) == Fraction(1, 5)
    assert birkhoff_sup(walk, SIGN, 25) == Fraction(3, 25)
    assert birkhoff_sup(walk, SIGN, 500) == Fraction(1, 125)
