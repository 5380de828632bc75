"""Integer cocycles: sums, visited sets, interval covers, range DP."""

from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from entroscope.cocycle import (Cocycle, c_m, cocycle_from_json,
                                cocycle_profile, cocycle_to_json,
                                ergodic_sums, profile_counts,
                                range_distribution, unbounded_evidence,
                                unbounded_profile, walk_range_distribution)
from entroscope.symbolic import SFT, FullShift, Product, Sturmian
from entroscope.exactnum import GOLDEN_MEAN_ALPHA
from entroscope.util import ConfigError

SIGN = Cocycle({(-1,): -1, (1,): 1})
SIGNS = FullShift((-1, 1))
GOLDEN = SFT((-1, 1), [(1, 1)])


def test_cocycle_validation():
    with pytest.raises(ValueError):
        Cocycle({})
    with pytest.raises(ValueError):
        Cocycle({(1, 1): 0})  # wrong key width for radius 0
    with pytest.raises(ValueError):
        Cocycle({(0,): 1}, radius=-1)
    assert SIGN.bound == 1
    assert Cocycle({(0,): 0}).bound == 1  # floor keeps the zero cocycle usable
    assert Cocycle({(0,): -5, (1,): 2}).bound == 5


def test_cocycle_value_and_step_values():
    assert SIGN.value((1,)) == 1
    with pytest.raises(ConfigError):
        SIGN.value((0,))
    assert SIGN.step_values() == {-1: -1, 1: 1}
    wide = Cocycle({(a, b, c): b for a in (0, 1) for b in (0, 1)
                    for c in (0, 1)}, radius=1)
    assert wide.step_values() is None


def test_ergodic_sums_radius_zero():
    assert ergodic_sums(SIGN, (1, 1, -1, 1)) == (0, 1, 2, 1, 2)
    assert ergodic_sums(SIGN, (-1,)) == (0, -1)


def test_ergodic_sums_radius_one_uses_centered_windows():
    # tau(y) = y(-1) + y(1), so tau^j is determined by letters j-1 .. j+1
    tau = Cocycle({(a, b, c): a + c for a in (0, 1) for b in (0, 1)
                   for c in (0, 1)}, radius=1)
    w = (1, 0, 1, 1, 0)  # positions -1 .. 3, window n = 3
    assert ergodic_sums(tau, w) == (0, 2, 2 + 1, 3 + 1)
    with pytest.raises(ValueError):
        ergodic_sums(tau, (1, 0))


def test_c_m_examples():
    assert c_m({0, 1, 2}, 1) == (True, Fraction(1))
    assert c_m({0, 1, 2}, 2) == (True, Fraction(4, 3))
    assert c_m({0, 2, 4}, 1) == (False, Fraction(1))
    assert c_m({0, 2, 4}, 2) == (True, Fraction(2))
    assert c_m({7}, 3) == (True, Fraction(3))
    with pytest.raises(ValueError):
        c_m(set(), 1)
    with pytest.raises(ValueError):
        c_m({0}, 0)


@given(st.sets(st.integers(-30, 30), min_size=1, max_size=10),
       st.integers(1, 6), st.integers(-40, 40))
def test_c_m_translation_invariant_and_brute(F, m, t):
    flag, ratio = c_m(F, m)
    assert c_m({x + t for x in F}, m) == (flag, ratio)
    cover = {x + j for x in F for j in range(m)}
    assert ratio == Fraction(len(cover), len(F))
    lo, hi = min(cover), max(cover)
    assert flag == (len(cover) == hi - lo + 1)


@given(st.integers(-25, 25), st.integers(1, 40),
       st.integers(-6, 6).filter(lambda s: s != 0), st.integers(1, 7))
def test_c_m_range_closed_form(start, count, step, m):
    r = range(start, start + count * step, step)
    assert c_m(r, m) == c_m(list(r), m)


def test_cocycle_profile_known_word():
    prof = cocycle_profile(SIGN, (1, 1, -1, 1))
    assert prof.partial_sums == (0, 1, 2, 1)
    assert prof.visited == (0, 1, 2)
    assert prof.r == 3
    assert prof.cm == 1
    assert prof.q == 3


def brute_distribution(spec, tau, n, r_max=None):
    out = Counter()
    for w in spec.words(n + 2 * tau.radius):
        r = cocycle_profile(tau, w).r
        key = r if r_max is None or r <= r_max else r_max + 1
        out[key] += 1
    return dict(out)


def test_range_dp_matches_enumeration_full_shift():
    for n in range(1, 15):
        dp = walk_range_distribution(SIGNS, n - 1, {-1: -1, 1: 1})
        assert dp == brute_distribution(SIGNS, SIGN, n), n


def test_range_dp_matches_enumeration_golden_mean():
    for n in range(1, 15):
        dp = walk_range_distribution(GOLDEN, n - 1, {-1: -1, 1: 1})
        assert dp == brute_distribution(GOLDEN, SIGN, n), n


def test_range_dp_matches_enumeration_with_zero_steps():
    lazy = Cocycle({(-1,): -1, (1,): 0})
    vals = lazy.step_values()
    for n in range(1, 13):
        dp = walk_range_distribution(SIGNS, n - 1, vals)
        assert dp == brute_distribution(SIGNS, lazy, n), n


def test_range_dp_overflow_bucket():
    for n in (6, 9, 12):
        for r_max in (1, 2, 3):
            dp = walk_range_distribution(SIGNS, n - 1, {-1: -1, 1: 1},
                                         r_max=r_max)
            assert dp == brute_distribution(SIGNS, SIGN, n, r_max=r_max)
            assert sum(dp.values()) == 2 ** n


def test_range_dp_requires_total_small_steps():
    with pytest.raises(ConfigError):
        walk_range_distribution(SIGNS, 3, {1: 1})  # -1 uncovered
    with pytest.raises(ValueError):
        walk_range_distribution(SIGNS, 3, {-1: -2, 1: 2})  # step too big


def test_range_distribution_dispatches_to_enumeration():
    walk = Sturmian(GOLDEN_MEAN_ALPHA, Fraction(1, 2))
    dist = range_distribution(walk, SIGN, 8)
    assert dist == brute_distribution(walk, SIGN, 8)
    assert sum(dist.values()) == 16  # complexity 2n


def test_profile_counts_dp_and_enumeration_agree():
    for spec in (SIGNS, GOLDEN):
        fast = profile_counts(spec, SIGN, 9)
        slow = Counter()
        for w in spec.words(9):
            prof = cocycle_profile(SIGN, w)
            slow[(prof.r, int(prof.q))] += 1
        assert fast == dict(slow)
        # steps in {-1, 0, 1} make visited sets intervals: q = r + bound - 1
        assert all(q == r for r, q in fast)  # bound 1


def test_unbounded_profile_values():
    # length 4 sign words with range >= 3 are those leaving a 2-point set
    assert unbounded_profile(SIGNS, SIGN, 3, 4) == Fraction(3, 4)
    assert unbounded_profile(SIGNS, SIGN, 1, 4) == 1
    ev = unbounded_evidence(SIGNS, SIGN, 3, [4, 8, 12])
    assert ev["curve"][0] == (4, Fraction(3, 4))
    assert ev["curve"][1] == (8, Fraction(63, 64))
    assert ev["nondecreasing_from_start"]
    assert ev["n_max"] == 12


def test_cocycle_json_round_trip():
    doc = cocycle_to_json(SIGN)
    assert doc == {"radius": 0, "rule": {"-1": -1, "1": 1}}
    back = cocycle_from_json(doc)
    assert back.rule == SIGN.rule and back.radius == 0
    wide = Cocycle({(a, b, c): a - c for a in (0, 1) for b in (0, 1)
                    for c in (0, 1)}, radius=1)
    again = cocycle_from_json(cocycle_to_json(wide))
    assert again.rule == wide.rule and again.radius == 1


@settings(deadline=None)
@given(st.integers(2, 10))
def test_dp_total_mass_is_language_size(n):
    dp = walk_range_distribution(GOLDEN, n - 1, {-1: -1, 1: 1})
    assert sum(dp.values()) == GOLDEN.count(n)
