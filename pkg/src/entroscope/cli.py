"""Command-line experiment runner.

One binary, one subcommand per library operation, configured by a
preset name and/or a JSON config file, with individual flags overriding
both.  Results print as short summaries and, with --out, land as CSV
tables plus a summary.json (see reports).

Exit codes: 0 all checks passed or observational, 1 a verdict FAILed,
2 configuration or schema problem, 3 an enumeration cap was exhausted
(a partial report is still written), 4 a fast path disagreed with its
defining enumeration at runtime.
"""

import argparse
import json
import math
import re
import sys
from collections import Counter
from fractions import Fraction

from .cocycle import (_dp_applicable, cocycle_from_json, cocycle_profile,
                      cocycle_to_json, profile_counts, range_distribution,
                      unbounded_evidence)
from .entropy import (FAMILIES, Arithmetic, Explicit, ExpScale, Geometric,
                      PolyScale, RangeExpScale, RangeInnerScale, birkhoff_sup,
                      count_bracket, folner_defect, goodwyn_check,
                      h_top_estimate, hamming_ball_count, hamming_exponent,
                      k_estimate, slow_entropy_report)
from .fiber import fiber_from_json, fiber_to_json
from .presets import float_grid, get_preset, preset_names
from .reports import (Report, curves_table, distribution_table, k_table,
                      pairs_table, profile_table, sandwich_table, words_table)
from .skew import SkewSystem, capacity_A, sandwich_check, skew_sep_direct
from .symbolic import (DEFAULT_WORD_CAP, spec_from_json, spec_to_json,
                       word_to_str)
from .util import (CapExceeded, ConfigError, OracleMismatch,
                   SturmianHorizonError, log_big, parallel_map)

DEFAULT_PAIR_CAP = 2 ** 24

_REQUIRED = object()


# ---------------------------------------------------------------------------
# argument and config parsing


def parse_int_list(text):
    """Int list from "2,5,9" or inclusive range from "2:6"."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 2:
            raise ConfigError("int range must be lo:hi, got %r" % text)
        lo, hi = (int(p) for p in parts)
        if hi < lo:
            raise ConfigError("empty int range %r" % text)
        return list(range(lo, hi + 1))
    out = [int(p) for p in text.split(",") if p.strip()]
    if not out:
        raise ConfigError("empty int list %r" % text)
    return out


def parse_t_grid(text):
    """Float grid from "0.3:1.1:0.05" or an explicit "0.3,0.7,1.1"."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ConfigError("t grid must be start:stop:step, got %r" % text)
        start, stop, step = (float(p) for p in parts)
        if step <= 0 or stop < start:
            raise ConfigError("degenerate t grid %r" % text)
        return float_grid(start, stop, step)
    out = [float(p) for p in text.split(",") if p.strip()]
    if not out:
        raise ConfigError("empty t grid %r" % text)
    return out


_SEQ_RE = re.compile(r"^(arithmetic|geometric|explicit)\s*[:(]\s*(.*?)\)?$")


def parse_sequence(text):
    """Sequence from "arithmetic(2,2)", "geometric:2", "explicit:1,4,9"."""
    m = _SEQ_RE.match(text.strip().lower())
    if not m:
        raise ConfigError("cannot parse sequence %r" % text)
    kind, body = m.groups()
    try:
        nums = [int(p) for p in body.split(",") if p.strip()]
    except ValueError:
        raise ConfigError("sequence arguments must be integers: %r" % text)
    if kind == "arithmetic":
        if len(nums) != 2:
            raise ConfigError("arithmetic takes (start, step)")
        return Arithmetic(nums[0], nums[1])
    if kind == "geometric":
        if len(nums) != 1:
            raise ConfigError("geometric takes (base)")
        return Geometric(nums[0])
    if not nums:
        raise ConfigError("explicit needs at least one term")
    return Explicit(nums)


def make_scale(name, base, tau, word_cap):
    """Scale object from its CLI token."""
    if name == "exp":
        return ExpScale()
    if name == "poly":
        return PolyScale()
    if name in ("range-exp", "range-inner"):
        if base is None or tau is None:
            raise ConfigError("scale %r needs a base subshift and a cocycle"
                              % name)
        if name == "range-exp":
            return RangeExpScale(base, tau, word_cap=word_cap)
        return RangeInnerScale(base, tau, word_cap=word_cap)
    raise ConfigError("unknown scale %r (known: exp, poly, range-exp, "
                      "range-inner)" % name)


_PARAM_PARSERS = {
    "epsilon": lambda v: Fraction(str(v)),
    "radius": lambda v: Fraction(str(v)),
    "n_max": int, "length": int, "n": int, "m": int,
    "k_symbols": int, "reach": int,
    "word_cap": int, "pair_cap": int,
    "threshold": float,
    "n_range": lambda v: [int(x) for x in v],
    "n_list": lambda v: [int(x) for x in v],
    "t_grid": lambda v: (float_grid(float(v["start"]), float(v["stop"]),
                                    float(v["step"]))
                         if isinstance(v, dict) else [float(x) for x in v]),
    "scale": str, "family": str, "sequence": str, "mode": str,
}

_CONFIG_KEYS = ("command", "preset", "system", "parameters", "output")


def apply_config(ctx, doc):
    """Merge one JSON config document into the context, validating keys."""
    if not isinstance(doc, dict):
        raise ConfigError("config root must be an object")
    for key in doc:
        if key not in _CONFIG_KEYS:
            raise ConfigError("unknown config key %r (known: %s)"
                              % (key, ", ".join(_CONFIG_KEYS)))
    if "preset" in doc:
        ctx.update(get_preset(doc["preset"]))
    system = doc.get("system", {})
    if system:
        for key in system:
            if key not in ("base", "tau", "fiber"):
                raise ConfigError("unknown system key %r" % key)
        try:
            if "base" in system:
                ctx["base"] = spec_from_json(system["base"])
            if "tau" in system:
                ctx["tau"] = cocycle_from_json(system["tau"])
            if "fiber" in system:
                ctx["fiber"] = fiber_from_json(system["fiber"])
        except (KeyError, ValueError, TypeError) as exc:
            raise ConfigError("bad system descriptor: %s" % exc)
        ctx.pop("system", None)
    params = doc.get("parameters", {})
    for key, value in params.items():
        if key not in _PARAM_PARSERS:
            raise ConfigError("unknown parameter %r (known: %s)"
                              % (key, ", ".join(sorted(_PARAM_PARSERS))))
        try:
            ctx[key] = _PARAM_PARSERS[key](value)
        except (ValueError, TypeError, KeyError) as exc:
            raise ConfigError("bad value for parameter %r: %s" % (key, exc))
    if "output" in doc:
        ctx["out"] = str(doc["output"])
    if "command" in doc:
        ctx["command"] = str(doc["command"])


_FLAG_KEYS = ("epsilon", "n_max", "n_range", "t_grid", "scale", "threshold",
              "word_cap", "pair_cap", "out", "length", "n", "n_list",
              "sequence", "k_symbols", "radius", "family", "m", "reach")


def load_context(args):
    """Context from preset, then config file, then flag overrides."""
    ctx = {"word_cap": DEFAULT_WORD_CAP, "pair_cap": DEFAULT_PAIR_CAP}
    if getattr(args, "preset", None):
        ctx.update(get_preset(args.preset))
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise ConfigError("cannot read config: %s" % exc)
        except json.JSONDecodeError as exc:
            raise ConfigError("config is not valid JSON: %s" % exc)
        apply_config(ctx, doc)
    for key in _FLAG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            ctx[key] = value
    if ctx["word_cap"] < 1 or ctx["pair_cap"] < 1:
        raise ConfigError("caps must be positive")
    for key in ("n_range", "n_list", "t_grid"):
        if key in ctx and not ctx[key]:
            raise ConfigError("%s must be nonempty" % key)
    if all(k in ctx for k in ("base", "tau", "fiber")) and "system" not in ctx:
        ctx["system"] = SkewSystem(ctx["base"], ctx["tau"], ctx["fiber"])
    return ctx


def need(ctx, key, what):
    if key not in ctx or ctx[key] is None:
        raise ConfigError("this command needs %s; supply a preset or a "
                          "config file (missing: %s)" % (what, key))
    return ctx[key]


def param(ctx, key, default=_REQUIRED):
    if key in ctx and ctx[key] is not None:
        return ctx[key]
    if default is _REQUIRED:
        raise ConfigError("missing parameter %r" % key)
    return default


def echo_params(ctx):
    """Re-runnable echo of the context for the report metadata."""
    out = {}
    for key, value in sorted(ctx.items(), key=lambda kv: kv[0]):
        if key in ("base", "tau", "fiber"):
            try:
                codec = {"base": spec_to_json, "tau": cocycle_to_json,
                         "fiber": fiber_to_json}[key]
                out[key] = codec(value)
            except TypeError:
                out[key] = repr(value)
        elif key == "system":
            continue
        else:
            out[key] = value
    return out


# ---------------------------------------------------------------------------
# runtime self-checks (fast path vs defining enumeration; exit 4)


def self_check_capacity(system, epsilon, word_cap):
    """Recompute one small capacity bracket by enumeration and compare."""
    n = 3
    try:
        fast = capacity_A(system, n, epsilon, word_cap=word_cap)
        slow = capacity_A(system, n, epsilon, word_cap=word_cap,
                          force_enumeration=True)
    except (CapExceeded, SturmianHorizonError):
        return None
    if (fast.lower, fast.upper) != (slow.lower, slow.upper):
        raise OracleMismatch(
            "capacity fast path (%d, %d) != enumeration (%d, %d) at n=%d"
            % (fast.lower, fast.upper, slow.lower, slow.upper, n))
    return n


def self_check_distribution(base, tau, word_cap):
    """Recompute one small range distribution by brute force and compare."""
    if not _dp_applicable(base, tau):
        return None
    n = 6
    dist = range_distribution(base, tau, n, word_cap=word_cap)
    brute = Counter(cocycle_profile(tau, w).r
                    for w in base.words(n + 2 * tau.radius, word_cap=word_cap))
    if dist != dict(brute):
        raise OracleMismatch("range distribution fast path %r != brute %r "
                             "at n=%d" % (dist, dict(brute), n))
    return n


def run_self_checks(args, ctx, report, capacity=False, distribution=False):
    if getattr(args, "no_self_check", False):
        return
    notes = []
    if capacity and "system" in ctx:
        n = self_check_capacity(ctx["system"], param(ctx, "epsilon"),
                                ctx["word_cap"])
        if n is not None:
            notes.append("capacity@n=%d" % n)
    if distribution and "base" in ctx and "tau" in ctx:
        n = self_check_distribution(ctx["base"], ctx["tau"], ctx["word_cap"])
        if n is not None:
            notes.append("distribution@n=%d" % n)
    if notes:
        report.add_verdict("self-check", "PASS", ", ".join(notes))


# ---------------------------------------------------------------------------
# subcommand handlers


def _word_formatter(words):
    """One formatter for the whole listing, so the column stays uniform."""
    if all(isinstance(a, int) and 0 <= a <= 9 for w in words for a in w):
        return word_to_str
    return lambda w: ",".join(str(a) for a in w)


def _cmd_language(args, ctx, report):
    base = need(ctx, "base", "a base subshift")
    length = param(ctx, "length")
    words = base.words(length, word_cap=ctx["word_cap"])
    fmt = _word_formatter(words)
    report.add_table("language", *words_table(words, fmt))
    report.add_verdict("language-count", "OBSERVED",
                       "length %d: %d words" % (length, len(words)))
    print("words of length %d: %d" % (length, len(words)))
    if ctx.get("out") is None and len(words) <= 200:
        for w in words:
            print(fmt(w))


def _cmd_cocycle_stats(args, ctx, report):
    base = need(ctx, "base", "a base subshift")
    tau = need(ctx, "tau", "a cocycle")
    ns = param(ctx, "n_range", [2, 3, 4, 5, 6])
    run_self_checks(args, ctx, report, distribution=True)
    entries = []
    for n in sorted(set(ns)):
        for (r, q), count in sorted(
                profile_counts(base, tau, n, word_cap=ctx["word_cap"]).items()):
            entries.append((n, r, q, count))
    report.add_table("profiles", *profile_table(entries))
    n_top = param(ctx, "n", max(ns))
    dist = range_distribution(base, tau, n_top, word_cap=ctx["word_cap"])
    report.add_table("distribution", *distribution_table(dist))
    total = sum(dist.values())
    mean_r = sum(r * c for r, c in dist.items()) / total
    report.add_verdict("cocycle-stats", "OBSERVED",
                       "n=%d: %d words, mean range %.3f" % (n_top, total,
                                                            mean_r))
    print("range distribution at n=%d over %d words, mean %.3f"
          % (n_top, total, mean_r))


def _cmd_unbounded_profile(args, ctx, report):
    base = need(ctx, "base", "a base subshift")
    tau = need(ctx, "tau", "a cocycle")
    # default level: the smallest one a +-bound step walk cannot reach in a
    # two-step window, so the curve starts strictly below 1 and its climb
    # toward 1 is the visible evidence
    reach = param(ctx, "reach", 2 * max(1, tau.bound) + 1)
    ns = param(ctx, "n_list", [4, 8, 12, 16])
    ev = unbounded_evidence(base, tau, reach, ns, word_cap=ctx["word_cap"])
    report.add_table("unbounded", *pairs_table(ev["curve"],
                                               ("n", "proportion")))
    detail = ("reach %d, n up to %d, %snondecreasing from start"
              % (reach, ev["n_max"],
                 "" if ev["nondecreasing_from_start"] else "NOT "))
    report.add_verdict("unbounded-profile", "OBSERVED", detail)
    print(detail)
    for n, p in ev["curve"]:
        print("n=%d  proportion %s (%.4f)" % (n, p, float(p)))


def _cmd_sep(args, ctx, report):
    system = need(ctx, "system", "a full skew system")
    epsilon = param(ctx, "epsilon")
    ns = sorted(set(param(ctx, "n_range", [param(ctx, "n", 4)])))
    run_self_checks(args, ctx, report, capacity=True)

    def one(n):
        sep = skew_sep_direct(system, n, epsilon, word_cap=ctx["word_cap"])
        sep2 = skew_sep_direct(system, n, 2 * epsilon,
                               word_cap=ctx["word_cap"])
        cap = capacity_A(system, n, epsilon, word_cap=ctx["word_cap"])
        return (n, epsilon, sep, sep2, cap.lower, cap.upper)

    rows = parallel_map(one, ns)
    report.add_table("sep", ("n", "epsilon", "sep", "sep_2eps",
                             "capacity_lower", "capacity_upper"), rows)
    for n, _e, sep, sep2, lo, hi in rows:
        # the skew spanning count at eps sits in [sep(2 eps), sep(eps)]
        if sep2 > sep:
            raise OracleMismatch("sep(2 eps)=%d exceeds sep(eps)=%d at n=%d"
                                 % (sep2, sep, n))
        print("n=%d  sep %d  spanning in [%d, %d]  capacity [%d, %d]"
              % (n, sep, sep2, sep, lo, hi))
    n, _e, sep, sep2, lo, hi = rows[-1]
    report.add_verdict("sep", "OBSERVED",
                       "n=%d: sep %d, spanning in [%d, %d]"
                       % (n, sep, sep2, sep))


def _cmd_sandwich(args, ctx, report):
    system = need(ctx, "system", "a full skew system")
    epsilon = param(ctx, "epsilon")
    ns = param(ctx, "n_range")
    run_self_checks(args, ctx, report, capacity=True)
    result = sandwich_check(system, ns, epsilon, word_cap=ctx["word_cap"])
    report.add_table("sandwich", *sandwich_table(result))
    verdict = "PASS" if result["pass"] else "FAIL"
    detail = ("left certified %s, inferred E nonincreasing %s"
              % (result["left_certified_all"], result["e_nonincreasing"]))
    report.add_verdict("sandwich", verdict, detail)
    for row in result["rows"]:
        print("n=%d  lower[%d,%d]  sep[%d,%d]  upper[%d,%d]  E<=%s"
              % (row.n, row.a2_lower, row.a2_upper, row.skew_lo, row.skew_hi,
                 row.ahalf_lower, row.ahalf_upper, row.e_inferred))
    print("sandwich: %s (%s)" % (verdict, detail))


def _cmd_slow_entropy(args, ctx, report):
    target = ctx.get("system") or need(ctx, "fiber", "a fiber (or a full "
                                       "skew system)")
    base, tau = ctx.get("base"), ctx.get("tau")
    scale = make_scale(param(ctx, "scale", "exp"), base, tau, ctx["word_cap"])
    epsilon = param(ctx, "epsilon")
    n_max = param(ctx, "n_max")
    grid = param(ctx, "t_grid")
    threshold = param(ctx, "threshold", 1e-3)
    if isinstance(target, SkewSystem):
        run_self_checks(args, ctx, report, capacity=True)
    rep = slow_entropy_report(target, scale, epsilon, n_max, grid,
                              threshold=threshold, word_cap=ctx["word_cap"])
    report.add_table("ratios", *curves_table(rep))
    # a second look at how the ratios move in n, on a doubling ladder
    ns = sorted({max(2, n_max >> k) for k in range(4)})
    brackets = parallel_map(
        lambda n: (n, count_bracket(target, n, epsilon, ctx["word_cap"])), ns)
    rows = []
    for t in grid:
        for n, (lo, hi) in brackets:
            ls = scale.log_eval(n, float(t))
            rows.append((float(t), n,
                         math.exp(log_big(lo) - ls) if lo else 0.0,
                         math.exp(log_big(hi) - ls) if hi else 0.0))
    report.add_table("ratios_ladder", ("t", "n", "ratio_lower",
                                       "ratio_upper"), rows)
    detail = ("t_upper %.4g%s, t_lower %.4g%s at n=%d (%s)"
              % (rep.t_upper, " (empty)" if rep.empty_upper else "",
                 rep.t_lower, " (empty)" if rep.empty_lower else "",
                 rep.n_max, rep.label))
    report.add_verdict("slow-entropy", "OBSERVED", detail)
    print(detail)


def _cmd_h_top(args, ctx, report):
    fiber = need(ctx, "fiber", "a fiber")
    epsilon = param(ctx, "epsilon")
    n_max = param(ctx, "n_max")
    lo, hi = h_top_estimate(fiber, epsilon, n_max, word_cap=ctx["word_cap"])
    report.add_table("h_top", ("n_max", "epsilon", "lower", "upper"),
                     [(n_max, epsilon, lo, hi)])
    detail = "(1/n) log bracket [%.6f, %.6f] at n=%d" % (lo, hi, n_max)
    report.add_verdict("h-top", "OBSERVED", detail)
    print(detail)


def _cmd_k_estimate(args, ctx, report):
    seq = parse_sequence(param(ctx, "sequence"))
    ke = k_estimate(seq)
    report.add_table("k_estimate", *k_table(ke))
    if ke.diverged:
        detail = "diverged (last value %s)" % ke.last
    else:
        detail = "value %s, stabilized at m=%d" % (ke.value, ke.stabilized_m)
    report.add_verdict("k-estimate", "OBSERVED", detail)
    print("%r: %s" % (seq, detail))


def _cmd_hamming(args, ctx, report):
    k = param(ctx, "k_symbols", 2)
    r = param(ctx, "radius", Fraction(3, 10))
    n = param(ctx, "n", 2000)
    count = hamming_ball_count(k, n, r)
    normalized = log_big(count) / n if count > 0 else float("-inf")
    exponent = hamming_exponent(k, r)
    report.add_table("hamming", ("n", "k", "radius", "log_count_over_n",
                                 "exponent"),
                     [(n, k, r, normalized, exponent)])
    detail = ("(1/n) log count %.6f vs exponent %.6f (gap %.2e)"
              % (normalized, exponent, abs(normalized - exponent)))
    report.add_verdict("hamming", "OBSERVED", detail)
    print(detail)


def _cmd_goodwyn(args, ctx, report):
    k = param(ctx, "k_symbols", 2)
    seq = parse_sequence(param(ctx, "sequence"))
    n = param(ctx, "n", 1000)
    res = goodwyn_check(k, seq, n=n)
    report.add_table("goodwyn", ("k", "n", "lhs", "rhs", "ok"),
                     [(k, n, res["lhs"], res["rhs"], res["ok"])])
    verdict = "PASS" if res["ok"] else "FAIL"
    detail = "lhs %.6f <= rhs %.6f" % (res["lhs"], res["rhs"])
    if res["k_estimate"].diverged:
        detail += " (K estimate diverged; bound taken at the largest m)"
    report.add_verdict("goodwyn", verdict, detail)
    print("goodwyn: %s (%s)" % (verdict, detail))


def _cmd_folner(args, ctx, report):
    family = param(ctx, "family", "interval")
    if family not in FAMILIES:
        raise ConfigError("unknown family %r (known: %s)"
                          % (family, ", ".join(sorted(FAMILIES))))
    m = param(ctx, "m", 3)
    ns = param(ctx, "n_list", [10, 100, 1000, 10000])
    rows = folner_defect(FAMILIES[family], m, ns)
    report.add_table("folner", *pairs_table(rows, ("n", "defect")))
    last = rows[-1]
    detail = "family %s, m=%d: defect %s at n=%d" % (family, m, last[1],
                                                     last[0])
    report.add_verdict("folner", "OBSERVED", detail)
    for n, d in rows:
        print("n=%d  defect %s (%.6f)" % (n, d, float(d)))


def _cmd_birkhoff(args, ctx, report):
    base = need(ctx, "base", "a base subshift")
    tau = need(ctx, "tau", "a cocycle")
    ns = sorted(set(param(ctx, "n_list", [8, 12, 16])))
    rows = [(n, v, float(v)) for n, v in
            ((n, birkhoff_sup(base, tau, n, word_cap=ctx["word_cap"]))
             for n in ns)]
    report.add_table("birkhoff", ("n", "sup", "sup_float"), rows)
    detail = "max |sum|/n at n=%d: %s" % (rows[-1][0], rows[-1][1])
    report.add_verdict("birkhoff", "OBSERVED", detail)
    for n, v, f in rows:
        print("n=%d  sup %s (%.6f)" % (n, v, f))


HANDLERS = {
    "language": _cmd_language,
    "cocycle-stats": _cmd_cocycle_stats,
    "unbounded-profile": _cmd_unbounded_profile,
    "sep": _cmd_sep,
    "sandwich": _cmd_sandwich,
    "slow-entropy": _cmd_slow_entropy,
    "h-top": _cmd_h_top,
    "k-estimate": _cmd_k_estimate,
    "hamming": _cmd_hamming,
    "goodwyn": _cmd_goodwyn,
    "folner": _cmd_folner,
    "birkhoff": _cmd_birkhoff,
}


def _cmd_run(args, ctx, report):
    command = ctx.get("command")
    if not command:
        raise ConfigError("run needs a config file with a \"command\" entry")
    if command not in HANDLERS:
        raise ConfigError("config names unknown command %r (known: %s)"
                          % (command, ", ".join(sorted(HANDLERS))))
    report.meta["command"] = command
    HANDLERS[command](args, ctx, report)


# ---------------------------------------------------------------------------
# parser and entry point


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--preset", help="preset name (see preset-list)")
    common.add_argument("--config", help="JSON config file")
    common.add_argument("--out", help="directory for CSV tables and "
                        "summary.json")
    common.add_argument("--eps", dest="epsilon", type=Fraction,
                        help="epsilon, e.g. 1/4 or 0.25")
    common.add_argument("--n-max", dest="n_max", type=int)
    common.add_argument("--n-range", dest="n_range", type=parse_int_list,
                        help="window sizes, e.g. 2:6 or 2,4,8")
    common.add_argument("--n-list", dest="n_list", type=parse_int_list,
                        help="n values, e.g. 10,100,1000")
    common.add_argument("--t-grid", dest="t_grid", type=parse_t_grid,
                        help="t grid, e.g. 0.3:1.1:0.05")
    common.add_argument("--scale", choices=("exp", "poly", "range-exp",
                                            "range-inner"))
    common.add_argument("--threshold", type=float,
                        help="ratio threshold for the slow-entropy estimate")
    common.add_argument("--cap-words", dest="word_cap", type=int,
                        help="word enumeration budget (default 2^20)")
    common.add_argument("--cap-pairs", dest="pair_cap", type=int,
                        help="brute-force pair budget (default 2^24)")
    common.add_argument("--no-self-check", action="store_true",
                        help="skip the fast-path vs enumeration cross-check")

    parser = argparse.ArgumentParser(
        prog="entroscope",
        description="exact finite-scale invariants of subshifts, cocycles, "
                    "and skew products")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("language", parents=[common],
                       help="enumerate the base language at one length")
    p.add_argument("--length", type=int)
    p = sub.add_parser("cocycle-stats", parents=[common],
                       help="visited-set profiles and range distribution")
    p.add_argument("--n", type=int, help="length for the distribution table")
    p = sub.add_parser("unbounded-profile", parents=[common],
                       help="proportion of words whose sums reach a level")
    p.add_argument("--reach", type=int, help="level the sums must reach")
    sub.add_parser("sep", parents=[common],
                   help="separated count and capacity bracket per n")
    sub.add_parser("sandwich", parents=[common],
                   help="certified two-sided capacity comparison")
    sub.add_parser("slow-entropy", parents=[common],
                   help="threshold-crossing scale estimates")
    sub.add_parser("h-top", parents=[common],
                   help="(1/n) log bracket for a fiber")
    p = sub.add_parser("k-estimate", parents=[common],
                       help="sequence growth invariant estimate")
    p.add_argument("--sequence", help="arithmetic(a,d) | geometric(b) | "
                   "explicit:v1,v2,...")
    p = sub.add_parser("hamming", parents=[common],
                       help="normalized Hamming ball count vs its exponent")
    p.add_argument("--k-symbols", dest="k_symbols", type=int)
    p.add_argument("--radius", type=Fraction, help="relative radius, e.g. "
                   "3/10")
    p.add_argument("--n", type=int)
    p = sub.add_parser("goodwyn", parents=[common],
                       help="sequence entropy vs K(A) upper bound")
    p.add_argument("--k-symbols", dest="k_symbols", type=int)
    p.add_argument("--sequence")
    p.add_argument("--n", type=int)
    p = sub.add_parser("folner", parents=[common],
                       help="interval-cover defect of a set family")
    p.add_argument("--family", choices=sorted(FAMILIES))
    p.add_argument("--m", type=int)
    sub.add_parser("birkhoff", parents=[common],
                   help="max |ergodic sum| / n over the language")
    sub.add_parser("preset-list", help="list available presets")
    sub.add_parser("run", parents=[common],
                   help="dispatch on the command named in a config file")
    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return 0 if code in (0, None) else 2
    if args.cmd == "preset-list":
        for name in preset_names():
            print("%s: %s" % (name, get_preset(name)["summary"]))
        return 0
    report = None
    out = None
    try:
        if args.cmd == "run" and not getattr(args, "config", None):
            raise ConfigError("run needs --config")
        ctx = load_context(args)
        out = ctx.get("out")
        report = Report(args.cmd, echo_params(ctx))
        handler = _cmd_run if args.cmd == "run" else HANDLERS[args.cmd]
        handler(args, ctx, report)
    except (ConfigError, SturmianHorizonError) as exc:
        print("config error: %s" % exc, file=sys.stderr)
        return 2
    except CapExceeded as exc:
        print("cap exceeded: %s" % exc, file=sys.stderr)
        if report is not None and out:
            report.meta["partial"] = True
            report.add_verdict("run", "FAIL", "cap exceeded: %s" % exc)
            for path in report.write(out):
                print("wrote %s (partial)" % path, file=sys.stderr)
        return 3
    except OracleMismatch as exc:
        print("internal inconsistency: %s" % exc, file=sys.stderr)
        return 4
    if out:
        for path in report.write(out):
            print("wrote %s" % path)
    for check, verdict, detail in report.verdicts:
        print("CHECK %s: %s%s" % (check, verdict,
                                  " (%s)" % detail if detail else ""))
    return 0 if report.all_ok() else 1


if __name__ == "__main__":
    sys.exit(main())
