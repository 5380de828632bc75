"""Integer cocycles over a subshift and their ergodic-sum profiles.

A cocycle tau of radius s reads the centered window [-s, s] of a point
and returns an integer.  Over a word w of length n + 2s (the window
[-s, n+s-1] convention of enumerate_language) the ergodic sums
tau^0 = 0, tau^j = sum of the first j window values are all determined,
and the profile of w collects the visited set V = {tau^0, ..., tau^{n-1}},
its size r, the covering ratio c_m(V) at the cocycle's own bound m, and
q = r * c_m(V) = |V + {0, ..., m-1}|.

For radius-0 cocycles with steps in {-1, 0, 1} over an SFT or full shift,
walk_range_distribution computes the histogram of r over the whole
language by dynamic programming without enumerating words.
"""

from dataclasses import dataclass
from fractions import Fraction

from .symbolic import (DEFAULT_WORD_CAP, SFT, FullShift,
                       word_from_str, word_to_str)
from .util import ConfigError


class Cocycle:
    """Radius-s integer cocycle given by a total rule on centered windows.

    bound is max(1, max |value|); the floor of 1 keeps the zero cocycle
    usable wherever a positive bound m is required.
    """

    def __init__(self, rule, radius=0):
        if radius < 0:
            raise ValueError("radius must be >= 0")
        width = 2 * radius + 1
        clean = {}
        for k, v in rule.items():
            key = tuple(k)
            if len(key) != width:
                raise ValueError("rule key %r has length %d, expected %d"
                                 % (key, len(key), width))
            clean[key] = int(v)
        if not clean:
            raise ValueError("rule must be nonempty")
        self.radius = radius
        self.rule = clean
        self.bound = max(1, max(abs(v) for v in clean.values()))

    def __repr__(self):
        return "Cocycle(%r, radius=%d)" % (self.rule, self.radius)

    def value(self, window):
        """tau on one centered window; undefined windows are a config error."""
        key = tuple(window)
        try:
            return self.rule[key]
        except KeyError:
            raise ConfigError("cocycle rule undefined on window %r" % (key,))

    def step_values(self):
        """For radius 0: the rule as {label: step}; None otherwise."""
        if self.radius != 0:
            return None
        return {k[0]: v for k, v in self.rule.items()}


def ergodic_sums(tau, w):
    """(tau^0, ..., tau^n) along a word of length n + 2s.

    Index i of the word is position i - s; the window of time j spans
    tuple indices j .. j + 2s, so all of tau^0 .. tau^n are determined.
    """
    s = tau.radius
    width = 2 * s + 1
    n = len(w) - 2 * s
    if n < 1:
        raise ValueError("word of length %d too short for radius %d"
                         % (len(w), s))
    sums = [0]
    acc = 0
    for j in range(n):
        acc += tau.value(w[j:j + width])
        sums.append(acc)
    return tuple(sums)


def c_m(F, m):
    """(is_interval, |F + {0..m-1}| / |F|) for a finite integer set F.

    The cover size is computed from consecutive gaps: each gap g
    contributes min(g, m) fresh integers and the last element m more.
    The flag reports whether F + {0..m-1} is a full integer interval.
    Arithmetic progressions (range inputs) use the closed form, since
    every gap equals the step.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if isinstance(F, range) and len(F) > 0:
        count = len(F)
        cover = m + (count - 1) * min(abs(F.step), m)
        full = abs(F[-1] - F[0]) + m
        return cover == full, Fraction(cover, count)
    elems = sorted(set(int(x) for x in F))
    if not elems:
        raise ValueError("F must be nonempty")
    cover = m
    for a, b in zip(elems, elems[1:]):
        cover += min(b - a, m)
    full = elems[-1] - elems[0] + m
    return cover == full, Fraction(cover, len(elems))


@dataclass(frozen=True)
class CocycleProfile:
    partial_sums: tuple
    visited: tuple
    r: int
    cm: Fraction
    q: Fraction


def cocycle_profile(tau, w):
    """Profile of one word: visited sums, r, c_m at the cocycle's bound, q."""
    sums = ergodic_sums(tau, w)[:-1]
    visited = tuple(sorted(set(sums)))
    r = len(visited)
    _, cm = c_m(visited, tau.bound)
    return CocycleProfile(partial_sums=tuple(sums), visited=visited,
                          r=r, cm=cm, q=r * cm)


# ---------------------------------------------------------------------------
# range-distribution DP


def walk_range_distribution(spec, steps, values, r_max=None):
    """Histogram {r: word count} of visited-set sizes over L_{steps+1}.

    Valid for radius-0 step rules with values in {-1, 0, 1} on a full
    shift or SFT: every visited set is then an integer interval, so the
    state (graph node, cur - min, max - cur) suffices.  steps is n - 1:
    the last letter of an n-word contributes no step.  With r_max set,
    all mass with range exceeding r_max is returned under key r_max + 1
    (ranges only grow along a word, so the bucket is exact).
    """
    if steps < 0:
        raise ValueError("steps must be >= 0")
    vals = {k: int(v) for k, v in values.items()}
    if any(abs(v) > 1 for v in vals.values()):
        raise ValueError("walk DP needs step values in {-1, 0, 1}")
    if isinstance(spec, FullShift):
        base = SFT(spec.labels, [])
    elif isinstance(spec, SFT):
        base = spec
    else:
        raise ValueError("walk DP needs a full shift or SFT base")
    missing = [a for a in base.labels if a not in vals]
    if missing:
        raise ConfigError("step rule undefined on labels %r" % (missing,))
    n = steps + 1
    states, edges = base.graph()
    if not states:
        return {}
    K = base.context
    if n <= K:
        # tiny windows: profile the handful of state prefixes directly
        out = {}
        for w in base.words(n):
            sums = [0]
            for a in w[:-1]:
                sums.append(sums[-1] + vals[a])
            r = max(sums) - min(sums) + 1
            key = r if r_max is None or r <= r_max else r_max + 1
            out[key] = out.get(key, 0) + 1
        return out

    def bucket(a, b):
        return None if r_max is None or a + b + 1 <= r_max else True

    # dp: {(node, a, b): count} with a = cur - min, b = max - cur;
    # overflow: {node: count} once the range has exceeded r_max
    dp = {}
    overflow = {}
    for i, u in enumerate(states):
        a = b = 0
        for letter in u:
            v = vals[letter]
            a, b = max(a + v, 0), max(b - v, 0)
        if bucket(a, b):
            overflow[i] = overflow.get(i, 0) + 1
        else:
            dp[(i, a, b)] = dp.get((i, a, b), 0) + 1
    for _ in range(n - 1 - K):
        ndp = {}
        nov = {}
        for (i, a, b), cnt in dp.items():
            for letter, j in edges[i]:
                v = vals[letter]
                na, nb = max(a + v, 0), max(b - v, 0)
                if bucket(na, nb):
                    nov[j] = nov.get(j, 0) + cnt
                else:
                    key = (j, na, nb)
                    ndp[key] = ndp.get(key, 0) + cnt
        for i, cnt in overflow.items():
            for _letter, j in edges[i]:
                nov[j] = nov.get(j, 0) + cnt
        dp, overflow = ndp, nov
    # the final letter of the word carries no step, only multiplicity
    out = {}
    for (i, a, b), cnt in dp.items():
        r = a + b + 1
        out[r] = out.get(r, 0) + cnt * len(edges[i])
    spill = sum(cnt * len(edges[i]) for i, cnt in overflow.items())
    if spill:
        key = r_max + 1
        out[key] = out.get(key, 0) + spill
    return out


def _dp_applicable(spec, tau):
    if tau.radius != 0:
        return None
    vals = tau.step_values()
    if any(abs(v) > 1 for v in vals.values()):
        return None
    if not isinstance(spec, (FullShift, SFT)):
        return None
    return vals


def range_distribution(spec, tau, n, word_cap=DEFAULT_WORD_CAP, r_max=None):
    """{r: count} over L_{n,s}, by DP when possible, else by enumeration."""
    if n < 1:
        raise ValueError("n must be >= 1")
    vals = _dp_applicable(spec, tau)
    if vals is not None:
        return walk_range_distribution(spec, n - 1, vals, r_max=r_max)
    out = {}
    for w in spec.words(n + 2 * tau.radius, word_cap=word_cap):
        r = cocycle_profile(tau, w).r
        key = r if r_max is None or r <= r_max else r_max + 1
        out[key] = out.get(key, 0) + 1
    return out


def unbounded_profile(spec, tau, N, n, word_cap=DEFAULT_WORD_CAP):
    """Exact proportion of words w in L_{n,s} with r_n(w) >= N.

    This is the finite-n observable behind lambda-unboundedness; the
    defining property is a statement about all n and is not decidable
    from any single value, so callers track curves over n instead.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    dist = range_distribution(spec, tau, n, word_cap=word_cap, r_max=None)
    total = sum(dist.values())
    if total == 0:
        raise ValueError("empty language at n=%d" % n)
    hit = sum(cnt for r, cnt in dist.items() if r >= N)
    return Fraction(hit, total)


def unbounded_evidence(spec, tau, N, n_values, word_cap=DEFAULT_WORD_CAP):
    """Proportion curve over the given n values, plus a qualitative flag.

    The flag only says the proportion stayed at or above its starting
    level through n_max; it is evidence at level (N, n_max), never a
    verdict on the unboundedness property itself.
    """
    ns = sorted(set(int(n) for n in n_values))
    curve = [(n, unbounded_profile(spec, tau, N, n, word_cap=word_cap))
             for n in ns]
    flag = all(p >= curve[0][1] for _, p in curve)
    return {"N": N, "curve": curve, "nondecreasing_from_start": flag,
            "n_max": ns[-1]}


def profile_counts(spec, tau, n, word_cap=DEFAULT_WORD_CAP):
    """{(r, q): count} over L_{n,s} with q = r * c_m(V) as an integer.

    Steps in {-1, 0, 1} make every visited set an interval, so q is the
    function r + m - 1 of r and the DP histogram suffices; otherwise the
    language is enumerated and each word profiled.
    """
    vals = _dp_applicable(spec, tau)
    if vals is not None:
        m = tau.bound
        dist = walk_range_distribution(spec, n - 1, vals)
        return {(r, r + m - 1): cnt for r, cnt in dist.items()}
    out = {}
    for w in spec.words(n + 2 * tau.radius, word_cap=word_cap):
        prof = cocycle_profile(tau, w)
        q = prof.q
        if q.denominator != 1:
            raise AssertionError("q = r*c_m should be an integer, got %r" % q)
        key = (prof.r, int(q))
        out[key] = out.get(key, 0) + 1
    return out


# ---------------------------------------------------------------------------
# serialization


def cocycle_to_json(tau):
    rule = {}
    for k, v in sorted(tau.rule.items()):
        if not all(isinstance(a, int) for a in k):
            raise TypeError("JSON cocycle rules need integer labels")
        rule[word_to_str(k)] = v
    return {"radius": tau.radius, "rule": rule}


def cocycle_from_json(doc):
    rule = {word_from_str(k): int(v) for k, v in doc["rule"].items()}
    return Cocycle(rule, radius=int(doc.get("radius", 0)))
