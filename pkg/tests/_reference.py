"""Slow reference implementations the estimator tests compare against.

Everything here is written the obvious way: explicit per-step orbit walks,
dict-of-distances, quadratic window scans.  Values are quantized onto the
same 2^-1074 grid the estimators use (every nonnegative double sits on it
exactly), so agreement can be asserted as exact Fraction equality, including
achieving translates and boundary flags.
"""

from fractions import Fraction

from weylab.core import Point, get_system

SCALE_BITS = 1074


def scaled(value: float) -> int:
    f = Fraction(value)
    if f < 0:
        raise ValueError("negative distance")
    return (f.numerator << SCALE_BITS) // f.denominator


def orbit_distances(x: Point, y: Point, lo: int, hi: int) -> dict:
    system = get_system(x.system_id)
    out = {}
    for t in range(lo, hi + 1):
        out[t] = system.dist(system.act(x.payload, t),
                             system.act(y.payload, t))
    return out


def _window_sum(dists, a, b):
    return sum(scaled(dists[t]) for t in range(a, b + 1))


def _scan(dists, wlo, whi, radius, maximize):
    """Best window sum over translates in [-radius, radius]; ties keep the
    smallest |translate| (negative first), and the boundary flag is set when
    no achiever is interior."""
    best = best_a = None
    any_interior = False
    for a in range(-radius, radius + 1):
        s = _window_sum(dists, wlo + a, whi + a)
        better = best is None or (s > best if maximize else s < best)
        if better:
            best, best_a = s, a
            any_interior = abs(a) < radius
        elif s == best:
            if abs(a) < abs(best_a):
                best_a = a
            if abs(a) < radius:
                any_interior = True
    return best, best_a, (radius > 0) and not any_interior


def _tail_indices(count):
    return range(count // 2, count)


def _aggregate_max(per, support):
    best = None
    for i in support:
        if best is None or per[i][2] > per[best][2]:
            best = i
    return best


def naive_window_rows(x, y, schedule, kind, eps=None):
    """Rows (window_len, translate, exact Fraction, boundary) per window."""
    rows = []
    for w, radius in zip(schedule.windows, schedule.translate_radius):
        n = len(w)
        dists = orbit_distances(x, y, w.lo - radius, w.hi + radius)
        if kind == "besicovitch":
            s = _window_sum(dists, w.lo, w.hi)
            rows.append((n, 0, Fraction(s, n << SCALE_BITS), False))
        elif kind == "weyl":
            s, a, boundary = _scan(dists, w.lo, w.hi, radius, True)
            rows.append((n, a, Fraction(s, n << SCALE_BITS), boundary))
        elif kind in ("check", "hat"):
            lo, hi = w.lo - radius, w.hi + radius
            pick = max if kind == "hat" else min
            value = pick(scaled(dists[t]) for t in range(lo, hi + 1))
            pos = next(t for t in range(lo, hi + 1)
                       if scaled(dists[t]) == value)
            if hi - 1 >= lo + 1:
                inner = pick(scaled(dists[t]) for t in range(lo + 1, hi))
            else:
                inner = value
            rows.append((n, pos, Fraction(value, 1 << SCALE_BITS),
                         inner != value))
        elif kind == "banach-density":
            cut = scaled(eps)
            ind = {t: int(scaled(d) < cut) for t, d in dists.items()}
            best = best_a = None
            any_interior = False
            for a in range(-radius, radius + 1):
                c = sum(ind[t] for t in range(w.lo + a, w.hi + a + 1))
                if best is None or c < best:
                    best, best_a = c, a
                    any_interior = abs(a) < radius
                elif c == best:
                    if abs(a) < abs(best_a):
                        best_a = a
                    if abs(a) < radius:
                        any_interior = True
            rows.append((n, best_a, Fraction(best, n),
                         (radius > 0) and not any_interior))
        else:
            raise ValueError(kind)
    return rows


def naive_estimate(x, y, schedule, kind, eps=None):
    """(value Fraction, per-window rows, boundary_warning) matching the
    estimator aggregation: tail max for the averaged kinds, global extreme
    for check/hat."""
    rows = naive_window_rows(x, y, schedule, kind, eps)
    if kind in ("besicovitch", "weyl", "banach-density"):
        support = list(_tail_indices(len(rows)))
        idx = _aggregate_max(rows, support)
    elif kind == "hat":
        support = list(range(len(rows)))
        idx = _aggregate_max(rows, support)
    else:
        support = list(range(len(rows)))
        idx = None
        for i in support:
            if idx is None or rows[i][2] < rows[idx][2]:
                idx = i
    warning = any(rows[i][3] for i in support)
    return rows[idx][2], rows, warning
