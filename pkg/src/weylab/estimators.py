"""Orbit-averaged pseudometric estimators over window schedules.

Every estimator works on an exact integer grid: sampled distances are
mapped losslessly onto multiples of 2^-1074 (every nonnegative double is
one), window sums are exact integers, and cross-window comparisons are
exact rational comparisons.  Floats appear only in reported values,
rounded once at the end, so results are independent of summation order
and of threading.

Estimates are finite-window surrogates: 'weyl' and 'besicovitch' take the
max over the tail half of the schedule (a limsup stand-in), 'check' the
min and 'hat' the max of single samples over every window including its
translate slack.  'check' therefore upper-bounds the true orbit infimum
and 'hat' lower-bounds the orbit supremum.

Each windowed value reports the translate that achieved it (the smallest
|g'| among achievers, negative first on ties) and whether every achieving
translate sat on the search boundary |g'| = M; the latter raises the
boundary_warning flag, a hint that the radius was too small to see the
extreme.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .core import CrossSystemError, FolnerSchedule, FolnerWindow, Point
from .profiles import SCALE, DistanceProfile, scaled_from_float

_ESTIMATE_KINDS = ("besicovitch", "weyl", "check", "hat", "banach-density")


# ---------------------------------------------------------------------------
# profile cache: estimator kinds on the same pair and hull share one profile

_CACHE_SIZE = 2
_profile_cache: dict = {}
_profile_order: list = []
_cache_lock = threading.Lock()


def pair_profile(x: Point, y: Point, lo: int, hi: int) -> DistanceProfile:
    """Exact distance profile of the pair on [lo, hi], cached.

    The cache key orders the two points canonically; metrics are symmetric
    so the profile does not depend on the order.
    """
    if x.system_id != y.system_id:
        raise CrossSystemError(
            "cannot profile %r against %r" % (x.system_id, y.system_id)
        )
    system = x.system()
    fa = system.format_point(x.payload)
    fb = system.format_point(y.payload)
    if fb < fa:
        fa, fb = fb, fa
    key = (x.system_id, fa, fb, lo, hi)
    with _cache_lock:
        if key in _profile_cache:
            return _profile_cache[key]
    profile = system.pair_profile(x.payload, y.payload, lo, hi)
    with _cache_lock:
        if key not in _profile_cache:
            _profile_cache[key] = profile
            _profile_order.append(key)
            while len(_profile_order) > _CACHE_SIZE:
                _profile_cache.pop(_profile_order.pop(0), None)
    return profile


# ---------------------------------------------------------------------------
# results


@dataclass(frozen=True)
class WindowValue:
    window: FolnerWindow
    radius: int
    translate: int
    exact: Fraction
    value: float
    boundary: bool


@dataclass(frozen=True)
class PseudometricEstimate:
    kind: str
    x: str
    y: str
    value: float
    exact: Fraction
    per_window: Tuple[WindowValue, ...]
    boundary_warning: bool

    def __post_init__(self):
        if self.kind not in _ESTIMATE_KINDS:
            raise ValueError("unknown estimate kind %r" % (self.kind,))


def _window_value(window, radius, translate, exact, boundary) -> WindowValue:
    return WindowValue(window, radius, translate, exact, float(exact), boundary)


def _aggregate(kind, x, y, per_window, support, maximize) -> PseudometricEstimate:
    best = None
    for i in support:
        wv = per_window[i]
        if best is None or (wv.exact > best.exact if maximize else wv.exact < best.exact):
            best = wv
    warning = any(per_window[i].boundary for i in support)
    return PseudometricEstimate(
        kind=kind, x=x, y=y, value=best.value, exact=best.exact,
        per_window=tuple(per_window), boundary_warning=warning,
    )


def _hull_profile(x, y, schedule: FolnerSchedule) -> DistanceProfile:
    lo, hi = schedule.hull_range()
    return pair_profile(x, y, lo, hi)


def _scan_translates(prefix, base, wlo, whi, M, maximize):
    """Extreme window sum over translates |a| <= M with the tie-break and
    boundary bookkeeping described in the module docstring."""
    best = None
    best_a = 0
    any_interior = False
    for a in range(-M, M + 1):
        s = prefix[whi + a - base + 1] - prefix[wlo + a - base]
        if best is None or (s > best if maximize else s < best):
            best = s
            best_a = a
            any_interior = abs(a) < M
        elif s == best:
            if abs(a) < abs(best_a):
                best_a = a
            if abs(a) < M:
                any_interior = True
    boundary = (M > 0) and not any_interior
    return best, best_a, boundary


def _labels(x: Point, y: Point):
    return str(x), str(y)


def besicovitch(x: Point, y: Point, schedule: FolnerSchedule) -> PseudometricEstimate:
    """Average distance along each window, no translates; tail max."""
    profile = _hull_profile(x, y, schedule)
    prefix = profile.prefix()
    base = profile.lo
    per = []
    for w in schedule.windows:
        total = prefix[w.hi - base + 1] - prefix[w.lo - base]
        per.append(_window_value(w, 0, 0, Fraction(total, len(w) * SCALE), False))
    lx, ly = _labels(x, y)
    return _aggregate("besicovitch", lx, ly, per, schedule.tail_windows(), True)


def weyl(x: Point, y: Point, schedule: FolnerSchedule) -> PseudometricEstimate:
    """Best translated window average per window; tail max."""
    profile = _hull_profile(x, y, schedule)
    prefix = profile.prefix()
    base = profile.lo
    per = []
    for w, M in zip(schedule.windows, schedule.translate_radius):
        total, a, boundary = _scan_translates(prefix, base, w.lo, w.hi, M, True)
        per.append(_window_value(w, M, a, Fraction(total, len(w) * SCALE), boundary))
    lx, ly = _labels(x, y)
    return _aggregate("weyl", lx, ly, per, schedule.tail_windows(), True)


def _extreme_estimate(x, y, schedule, kind):
    minimize = kind == "check"
    profile = _hull_profile(x, y, schedule)
    per = []
    for w, M in zip(schedule.windows, schedule.translate_radius):
        a, b = w.lo - M, w.hi + M
        mn, mn_t, mx, mx_t = profile.extremes(a, b)
        value, pos = (mn, mn_t) if minimize else (mx, mx_t)
        boundary = False
        if b - 1 >= a + 1:
            imn, _, imx, _ = profile.extremes(a + 1, b - 1)
            interior = imn if minimize else imx
            boundary = interior != value
        per.append(_window_value(w, M, pos, Fraction(value, SCALE), boundary))
    lx, ly = _labels(x, y)
    return _aggregate(kind, lx, ly, per, range(len(per)), not minimize)


def check(x: Point, y: Point, schedule: FolnerSchedule) -> PseudometricEstimate:
    """Smallest single sample over every window plus translate slack: an
    upper bound for the orbit infimum of d."""
    return _extreme_estimate(x, y, schedule, "check")


def hat(x: Point, y: Point, schedule: FolnerSchedule) -> PseudometricEstimate:
    """Largest single sample over every window plus translate slack: a
    lower bound for the orbit supremum of d."""
    return _extreme_estimate(x, y, schedule, "hat")


def banach_density(x: Point, y: Point, eps: float,
                   schedule: FolnerSchedule) -> PseudometricEstimate:
    """Worst-translate density of sample times with d < eps; tail max.

    The threshold is compared on the exact grid, so ties at eps never
    depend on float rounding.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    profile = _hull_profile(x, y, schedule)
    threshold = scaled_from_float(eps)
    iprefix = profile.indicator_prefix(threshold)
    base = profile.lo
    per = []
    for w, M in zip(schedule.windows, schedule.translate_radius):
        count, a, boundary = _scan_translates(iprefix, base, w.lo, w.hi, M, False)
        per.append(_window_value(w, M, a, Fraction(count, len(w)), boundary))
    lx, ly = _labels(x, y)
    return _aggregate("banach-density", lx, ly, per, schedule.tail_windows(), True)


def estimate(kind: str, x: Point, y: Point, schedule: FolnerSchedule,
             eps: Optional[float] = None) -> PseudometricEstimate:
    """Dispatch by kind name; 'banach-density' needs eps."""
    if kind == "besicovitch":
        return besicovitch(x, y, schedule)
    if kind == "weyl":
        return weyl(x, y, schedule)
    if kind == "check":
        return check(x, y, schedule)
    if kind == "hat":
        return hat(x, y, schedule)
    if kind == "banach-density":
        if eps is None:
            raise ValueError("banach-density needs eps")
        return banach_density(x, y, eps, schedule)
    raise ValueError("unknown estimate kind %r" % (kind,))
