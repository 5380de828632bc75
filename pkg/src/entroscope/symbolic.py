"""Subshift specifications, exact language enumeration, the standard metric.

A subshift is described generatively and acts as a language oracle:
``enumerate_language(spec, n, s)`` returns every word realized on the
window [-s, n+s-1] by some bi-infinite point, lexicographically sorted.
Restriction semantics are "realized", not merely locally legal: for an
SFT a word counts only if it lies on a bi-infinite path of the trimmed
de Bruijn graph, so every reported word extends to an actual point.

Words are plain tuples of integer symbol labels.  The window offset
never changes which words appear (shift invariance); it only matters to
callers that index into them, and those fix the convention "index 0 of
the tuple is position -s".

The standard metric on a subshift is
    d(x, y) = inf({2^-n : x(i) = y(i) for all |i| <= n} union {2}),
so d(x, y) <= eps iff x and y agree on the centered window of radius
rho(eps) = min{k >= 0 : 2^-k <= eps}.
"""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exactnum import QuadExact, frac_exact
from .util import CapExceeded, SturmianHorizonError, WindowError

DEFAULT_WORD_CAP = 2 ** 20


def _normalize_alphabet(alphabet):
    """Accept an int k (labels 0..k-1) or an iterable of int labels."""
    if isinstance(alphabet, int):
        if alphabet < 2:
            raise ValueError("alphabet size must be >= 2")
        return tuple(range(alphabet))
    labels = tuple(sorted(int(a) for a in alphabet))
    if len(labels) < 2:
        raise ValueError("alphabet size must be >= 2")
    if len(set(labels)) != len(labels):
        raise ValueError("alphabet labels must be distinct")
    return labels


def _check_cap(count, word_cap):
    if word_cap is not None and count > word_cap:
        raise CapExceeded("word count %d exceeds cap %d" % (count, word_cap))


class FullShift:
    """All bi-infinite sequences over the given alphabet."""

    variant = "full"

    def __init__(self, alphabet=2):
        self.labels = _normalize_alphabet(alphabet)

    def __repr__(self):
        return "FullShift(%r)" % (self.labels,)

    def words(self, length, word_cap=DEFAULT_WORD_CAP):
        if length < 1:
            raise ValueError("length must be >= 1")
        _check_cap(len(self.labels) ** length, word_cap)
        return [tuple(w) for w in itertools.product(self.labels, repeat=length)]

    def count(self, length):
        return len(self.labels) ** length


class SFT:
    """Subshift of finite type: finitely many forbidden words.

    Internally a de Bruijn graph on admissible (L-1)-blocks, L the longest
    forbidden length, trimmed until every node has in- and out-degree >= 1;
    a word is realized iff its block path stays inside the trimmed graph.
    """

    variant = "sft"

    def __init__(self, alphabet, forbidden):
        self.labels = _normalize_alphabet(alphabet)
        fw = []
        for f in forbidden:
            w = tuple(int(a) for a in f)
            if len(w) == 0:
                raise ValueError("forbidden words must be nonempty")
            if any(a not in self.labels for a in w):
                raise ValueError("forbidden word %r uses unknown labels" % (w,))
            fw.append(w)
        self.forbidden = tuple(sorted(set(fw)))
        self._graph_cache = None
        self._word_cache = {}

    def __repr__(self):
        return "SFT(%r, %r)" % (self.labels, self.forbidden)

    @property
    def context(self):
        """K = (longest forbidden length) - 1, the graph's memory."""
        if not self.forbidden:
            return 0
        return max(len(f) for f in self.forbidden) - 1

    def _has_forbidden_factor(self, w):
        for f in self.forbidden:
            lf = len(f)
            if lf > len(w):
                continue
            for i in range(len(w) - lf + 1):
                if w[i:i + lf] == f:
                    return True
        return False

    def graph(self):
        """(states, edges): states are admissible K-words surviving the trim,
        edges[i] lists (label, j) for each admissible one-letter extension."""
        if self._graph_cache is not None:
            return self._graph_cache
        K = self.context
        states = [u for u in itertools.product(self.labels, repeat=K)
                  if not self._has_forbidden_factor(u)]
        live = set(states)
        while True:
            # an edge u -> u[1:]+(a,) exists iff the joined (K+1)-word is clean
            outs = {u: [a for a in self.labels
                        if (K == 0 or u[1:] + (a,) in live)
                        and not self._has_forbidden_factor(u + (a,))]
                    for u in live}
            ins = {u: 0 for u in live}
            for u, letters in outs.items():
                for a in letters:
                    v = (u + (a,))[1:] if K else u
                    ins[v] += 1
            dead = {u for u in live if not outs[u] or ins[u] == 0}
            if not dead:
                break
            live -= dead
            if not live:
                break
        states = sorted(live)
        index = {u: i for i, u in enumerate(states)}
        edges = []
        for u in states:
            row = []
            for a in self.labels:
                w = u + (a,)
                if self._has_forbidden_factor(w):
                    continue
                v = w[1:] if K else u
                if v in index:
                    row.append((a, index[v]))
            edges.append(row)
        self._graph_cache = (states, edges)
        return self._graph_cache

    def words(self, length, word_cap=DEFAULT_WORD_CAP):
        if length < 1:
            raise ValueError("length must be >= 1")
        cached = self._word_cache.get(length)
        if cached is not None:
            _check_cap(len(cached), word_cap)
            return list(cached)
        states, edges = self.graph()
        K = self.context
        if not states:
            return []
        if length <= K:
            out = sorted({u[:length] for u in states})
        else:
            _check_cap(self.count(length), word_cap)
            out = []
            # iterative DFS emitting full words of the requested length
            for i, u in enumerate(states):
                stack = [(list(u), i)]
                while stack:
                    word, j = stack.pop()
                    if len(word) == length:
                        out.append(tuple(word))
                        continue
                    for a, k in reversed(edges[j]):
                        stack.append((word + [a], k))
            out.sort()
        if len(out) * max(length, 1) <= 2 ** 22:
            self._word_cache[length] = tuple(out)
        return out

    def count(self, length):
        """|L_length| by transfer-matrix power over the trimmed graph."""
        states, edges = self.graph()
        if not states:
            return 0
        K = self.context
        if length <= K:
            return len({u[:length] for u in states})
        size = len(states)
        mat = [[0] * size for _ in range(size)]
        for i in range(size):
            for _, j in edges[i]:
                mat[i][j] += 1
        power = _mat_pow(mat, length - K)
        return sum(map(sum, power))


def _mat_mul(x, y):
    n = len(x)
    yt = list(zip(*y))
    return [[sum(a * b for a, b in zip(row, col)) for col in yt] for row in x]


def _mat_pow(m, e):
    n = len(m)
    result = [[int(i == j) for j in range(n)] for i in range(n)]
    while e:
        if e & 1:
            result = _mat_mul(result, m)
        m = _mat_mul(m, m)
        e >>= 1
    return result


class Sturmian:
    """Coding of the rotation x -> x + alpha by the arc [0, intercept).

    Symbols are +1 on [0, intercept) and -1 on [intercept, 1), all decided
    in exact arithmetic.  The default intercept 1 - alpha merges the two
    cut families of the coding partition, which is the choice that makes
    the classical n+1 complexity emerge from the enumeration; intercept
    1/2 gives the balanced-walk coding with complexity 2n.

    alpha may be a Fraction (periodic orbit; enumeration is only valid on
    windows shorter than the denominator and raises past that horizon) or
    a QuadExact with irrational part (no horizon).
    """

    variant = "sturmian"

    def __init__(self, alpha, intercept=None):
        if not isinstance(alpha, QuadExact):
            alpha = QuadExact(Fraction(alpha))
        alpha = alpha.frac()
        if alpha == 0:
            raise ValueError("alpha must not be an integer")
        if intercept is None:
            intercept = 1 - alpha
        if not isinstance(intercept, QuadExact):
            intercept = QuadExact(Fraction(intercept))
        if not (0 < intercept) or not (intercept < 1):
            raise ValueError("intercept must lie strictly inside (0, 1)")
        self.alpha = alpha
        self.intercept = intercept
        self.labels = (-1, 1)

    def __repr__(self):
        return "Sturmian(%r, %r)" % (self.alpha, self.intercept)

    def horizon(self):
        """Longest enumerable window for rational alpha; None if irrational."""
        if self.alpha.is_rational:
            return self.alpha.as_fraction().denominator
        return None

    def _check_horizon(self, length):
        q = self.horizon()
        if q is not None and length >= q:
            raise SturmianHorizonError(
                "window length %d reaches the period %d of the rational angle"
                % (length, q))

    def code(self, x0, positions):
        """Symbols (+1/-1) of the point x0 at the given positions."""
        if not isinstance(x0, QuadExact):
            x0 = QuadExact(Fraction(x0))
        out = []
        for p in positions:
            u = (x0 + p * self.alpha).frac()
            out.append(1 if u < self.intercept else -1)
        return tuple(out)

    def words(self, length, word_cap=DEFAULT_WORD_CAP):
        """Every word of the orbit closure, via the exact cut-point walk.

        The word of x is constant on each cell of the circle partition cut
        by {-p*alpha} (crossing it turns symbol p to +1) and
        {intercept - p*alpha} (turns symbol p to -1), p over the window.
        One cell's word is evaluated directly; the rest follow by flipping
        the symbols attached to each crossed cut.  Boundary points code like
        the cell on their right, so sampling every cell witnesses the whole
        closure.
        """
        if length < 1:
            raise ValueError("length must be >= 1")
        self._check_horizon(length)
        flips = {}
        for p in range(length):
            up = frac_exact(-p * self.alpha)
            dn = frac_exact(self.intercept - p * self.alpha)
            flips.setdefault(up, []).append((p, 1))
            flips.setdefault(dn, []).append((p, -1))
        cuts = sorted(flips)
        _check_cap(len(cuts), word_cap)
        if len(cuts) > 1:
            first_sample = (cuts[0] + cuts[1]) / 2
        else:
            first_sample = cuts[0] + Fraction(1, 2)
        first = self.code(first_sample, range(length))
        cur = list(first)
        seen = {first}
        for c in cuts[1:]:
            for p, sym in flips[c]:
                cur[p] = sym
            seen.add(tuple(cur))
        # walking across the first cut must land back on the first cell
        for p, sym in flips[cuts[0]]:
            cur[p] = sym
        if tuple(cur) != first:
            raise AssertionError("cut walk failed to close up")
        return sorted(seen)

    def count(self, length):
        return len(self.words(length, word_cap=None))


class Product:
    """Componentwise product of two subshifts; symbols are label pairs."""

    variant = "product"

    def __init__(self, left, right):
        self.left = left
        self.right = right
        self.labels = tuple(sorted(itertools.product(left.labels, right.labels)))

    def __repr__(self):
        return "Product(%r, %r)" % (self.left, self.right)

    def words(self, length, word_cap=DEFAULT_WORD_CAP):
        lw = self.left.words(length, word_cap=word_cap)
        rw = self.right.words(length, word_cap=word_cap)
        _check_cap(len(lw) * len(rw), word_cap)
        return sorted(tuple(zip(a, b)) for a in lw for b in rw)

    def count(self, length):
        return self.left.count(length) * self.right.count(length)


# ---------------------------------------------------------------------------
# module-level operations


def enumerate_language(spec, n, s=0, word_cap=DEFAULT_WORD_CAP):
    """All words realized on [-s, n+s-1], sorted lexicographically."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if s < 0:
        raise ValueError("s must be >= 0")
    return spec.words(n + 2 * s, word_cap=word_cap)


def complexity(spec, n):
    """|L_n|, via each variant's counting fast path (big integers)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return spec.count(n)


def sturmian_code(alpha, x0, window, intercept=None):
    """Rotation-coding word of the single point x0 over an inclusive window.

    window is (lo, hi), inclusive on both ends.  The intercept defaults to
    1 - alpha, matching the Sturmian spec default, so codes of points are
    always words of Sturmian(alpha)'s language; pass intercept=1/2 for the
    balanced-walk coding.
    """
    if not isinstance(alpha, QuadExact):
        alpha = QuadExact(Fraction(alpha))
    lo, hi = int(window[0]), int(window[1])
    if hi < lo:
        raise ValueError("empty window")
    spec = Sturmian(alpha, intercept)
    return spec.code(x0, range(lo, hi + 1))


def language_on(spec, positions, word_cap=DEFAULT_WORD_CAP):
    """Distinct restrictions of the language to an arbitrary finite index set.

    Enumerates the interval hull of the positions and projects; by shift
    invariance the hull may be translated to start at 0.
    """
    pos = sorted(set(int(p) for p in positions))
    if not pos:
        raise ValueError("empty position set")
    span = pos[-1] - pos[0] + 1
    offsets = [p - pos[0] for p in pos]
    if span == len(pos):
        # contiguous window: the projection is the identity
        return spec.words(span, word_cap=word_cap)
    hull_words = spec.words(span, word_cap=word_cap)
    return sorted({tuple(w[i] for i in offsets) for w in hull_words})


def word_array(spec, length, word_cap=DEFAULT_WORD_CAP):
    """The language as a numpy integer matrix, one word per row."""
    ws = spec.words(length, word_cap=word_cap)
    if not ws:
        return np.empty((0, length), dtype=np.int8)
    flat = [a for w in ws for a in w]
    if not all(isinstance(a, int) for a in ws[0]):
        raise TypeError("word_array needs integer labels, not %r" % (ws[0],))
    lo, hi = min(flat), max(flat)
    dtype = np.int8 if -128 <= lo and hi <= 127 else np.int64
    return np.array(ws, dtype=dtype)


# ---------------------------------------------------------------------------
# the standard metric and windowed points


def rho(epsilon):
    """Agreement radius of eps: min{k >= 0 : 2^-k <= eps}.

    Two points are eps-close in the standard metric iff they agree on the
    centered window of this radius (for eps < 2; at eps >= 2 every pair is
    eps-close and the radius degenerates to 0).
    """
    e = Fraction(epsilon)
    if e <= 0:
        raise ValueError("epsilon must be positive")
    k = 0
    while Fraction(1, 2 ** k) > e:
        k += 1
        if k > 4096:
            raise ValueError("epsilon too small")
    return k


@dataclass(frozen=True, order=True)
class WindowPoint:
    """A symbolic point known on the window [start, start + len(symbols)).

    Reading outside the window raises WindowError rather than guessing;
    Bowen distances must be exact or fail loudly.  Shifting by k yields the
    point i -> x(i + k), i.e. the window slides to [start - k, ...).
    """

    start: int
    symbols: tuple

    def get(self, i):
        j = i - self.start
        if 0 <= j < len(self.symbols):
            return self.symbols[j]
        raise WindowError("position %d outside window [%d, %d)"
                          % (i, self.start, self.start + len(self.symbols)))

    def shift(self, k):
        return WindowPoint(self.start - k, self.symbols)


def subshift_distance(x, y):
    """Exact standard-metric distance between two windowed points.

    Scans outward from 0; the first disagreement at radius k certifies the
    value 2^-(k-1) (or 2 at k = 0).  If either window runs out first the
    distance is undecidable from the stored data and WindowError is raised.
    """
    k = 0
    while True:
        for i in ((0,) if k == 0 else (-k, k)):
            if x.get(i) != y.get(i):
                return Fraction(2) if k == 0 else Fraction(1, 2 ** (k - 1))
        k += 1


def subshift_close(x, y, epsilon):
    """Certified test of d(x, y) <= epsilon, scanning only radius rho(eps).

    Agreement out to radius rho certifies d <= 2^-rho <= eps; a first
    disagreement at radius k <= rho certifies d = 2^-(k-1) > eps by the
    minimality of rho.  Needs both windows to cover [-rho, rho] only.
    """
    if Fraction(epsilon) >= 2:
        return True
    r = rho(epsilon)
    for k in range(r + 1):
        for i in ((0,) if k == 0 else (-k, k)):
            if x.get(i) != y.get(i):
                return False
    return True


# ---------------------------------------------------------------------------
# serialization


def _num_to_json(x):
    if isinstance(x, QuadExact):
        if x.is_rational:
            return str(x.as_fraction())
        return {"a": str(x.a), "b": str(x.b), "d": x.d}
    return str(Fraction(x))


def _num_from_json(doc):
    if isinstance(doc, dict):
        return QuadExact(Fraction(doc["a"]), Fraction(doc["b"]), int(doc["d"]))
    return Fraction(str(doc))


def word_to_str(word):
    """Words as strings: digits joined bare, multi-character labels by commas.

    A single label that is itself all digits ("10") would collide with the
    bare-digit form of (1, 0), so it keeps a trailing comma.
    """
    parts = [str(a) for a in word]
    if all(len(p) == 1 for p in parts):
        return "".join(parts)
    if len(parts) == 1 and parts[0].isdigit():
        return parts[0] + ","
    return ",".join(parts)


def word_from_str(text):
    text = text.strip()
    if "," in text:
        return tuple(int(p) for p in text.split(",") if p.strip())
    if text.isdigit():
        return tuple(int(c) for c in text)
    # a bare non-digit string is a single multi-character label, e.g. "-1"
    return (int(text),)


def spec_to_json(spec):
    if isinstance(spec, FullShift):
        return {"variant": "full", "alphabet": list(spec.labels)}
    if isinstance(spec, SFT):
        return {"variant": "sft", "alphabet": list(spec.labels),
                "forbidden": [word_to_str(f) for f in spec.forbidden]}
    if isinstance(spec, Sturmian):
        return {"variant": "sturmian", "alpha": _num_to_json(spec.alpha),
                "intercept": _num_to_json(spec.intercept)}
    if isinstance(spec, Product):
        return {"variant": "product", "left": spec_to_json(spec.left),
                "right": spec_to_json(spec.right)}
    raise TypeError("not a subshift spec: %r" % (spec,))


def spec_from_json(doc):
    variant = doc.get("variant")
    if variant == "full":
        return FullShift(doc["alphabet"])
    if variant == "sft":
        return SFT(doc["alphabet"], [word_from_str(f) for f in doc["forbidden"]])
    if variant == "sturmian":
        intercept = doc.get("intercept")
        return Sturmian(_num_from_json(doc["alpha"]),
                        None if intercept is None else _num_from_json(intercept))
    if variant == "product":
        return Product(spec_from_json(doc["left"]), spec_from_json(doc["right"]))
    raise ValueError("unknown subshift variant %r" % (variant,))
