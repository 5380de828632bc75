"""Shared plumbing: error types, big-integer logs, capped parallel map."""

import math
import os
from concurrent.futures import ThreadPoolExecutor


class CapExceeded(RuntimeError):
    """An enumeration or pair budget was exhausted before completion."""


class OracleMismatch(RuntimeError):
    """A fast path disagreed with its defining enumeration at runtime."""


class ConfigError(ValueError):
    """A config document or CLI argument set failed validation."""


class WindowError(ValueError):
    """A symbolic point was iterated or read outside its stored window."""


class SturmianHorizonError(ValueError):
    """Rotation-coding request past the validity horizon of a rational angle."""


def log_big(x):
    """Natural log of a positive int (or float), safe for huge integers.

    For an integer wider than a double, shifts the top 53 bits down and adds
    back k*ln(2); the result is accurate to ~1e-15 relative.
    """
    if isinstance(x, float):
        if x <= 0.0:
            raise ValueError("log of nonpositive value")
        return math.log(x)
    if x <= 0:
        raise ValueError("log of nonpositive value")
    k = max(x.bit_length() - 53, 0)
    return math.log(x >> k) + k * math.log(2)


def log_sum_exp(terms):
    """log(sum(exp(t) for t in terms)), stable; terms a nonempty iterable."""
    terms = list(terms)
    m = max(terms)
    if m == -math.inf:
        return -math.inf
    return m + math.log(math.fsum(math.exp(t - m) for t in terms))


def thread_count():
    """Worker count from ENTROSCOPE_THREADS; defaults to 1 (serial)."""
    raw = os.environ.get("ENTROSCOPE_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError("ENTROSCOPE_THREADS must be an integer, got %r" % raw)
    return max(1, n)


def parallel_map(fn, items):
    """Map fn over items, optionally threaded, always in input order.

    The reduction order is the input order regardless of worker count, so
    results (including big-integer sums built from them) are deterministic.
    """
    items = list(items)
    workers = thread_count()
    if workers == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
