"""A stack of circles drifting to a common fixed direction, plus its base.

Shell k (k = 1, 2, ...) is the circle (sin t, 1 - cos t, 1/k) in R^3; the
map advances the angle by (1/k)(1 - cos t), a parabolic drift with unique
fixed angle 0: forward orbits creep up to 2*pi without crossing, backward
orbits creep down to 0.  The limit shell 'inf' at height 0 carries the
identity map.  Distances are Euclidean in R^3, so pairs on one shell are
eventually summable while the limit shell preserves distances exactly.

The base system is the convergent sequence {1/k} with a point at 0 and the
trivial action; projecting a shell to its height label is the canonical
factor map.
"""

from __future__ import annotations

import math
import threading

from ..core import System, register_system
from ..profiles import DistanceProfile, scaled_from_float

TWO_PI = 2.0 * math.pi


def _advance(t: float, eps: float) -> float:
    return t + eps * (1.0 - math.cos(t))


def _advance_back(t: float, eps: float) -> float:
    """Solve s + eps*(1 - cos s) = t on [0, t]; g is nondecreasing."""
    if t == 0.0:
        return 0.0
    lo, hi = max(0.0, t - 2.0 * eps), t
    s = 0.5 * (lo + hi)
    for _ in range(80):
        f = s + eps * (1.0 - math.cos(s)) - t
        if f > 0.0:
            hi = s
        elif f < 0.0:
            lo = s
        else:
            return s
        df = 1.0 + eps * math.sin(s)
        sn = s - f / df if df > 1e-9 else 0.5 * (lo + hi)
        if not lo <= sn <= hi:
            sn = 0.5 * (lo + hi)
        if sn == s:
            return s
        s = sn
    return s


class _AngleOrbit:
    def __init__(self, t0: float, eps: float):
        self.eps = eps
        self.fwd = [t0]
        self.bwd = []
        self.lock = threading.Lock()

    def value(self, m: int) -> float:
        if m >= 0:
            if m >= len(self.fwd):
                with self.lock:
                    while m >= len(self.fwd):
                        self.fwd.append(_advance(self.fwd[-1], self.eps))
            return self.fwd[m]
        j = -m - 1
        if j >= len(self.bwd):
            with self.lock:
                while j >= len(self.bwd):
                    prev = self.bwd[-1] if self.bwd else self.fwd[0]
                    self.bwd.append(_advance_back(prev, self.eps))
        return self.bwd[j]


class ShellStackSystem(System):
    """Payloads (level, t0, offset); level None is the identity shell."""

    system_id = "shells62"
    diameter = math.sqrt(5.0)

    def __init__(self):
        self._orbits = {}
        self._lock = threading.Lock()

    def angle(self, payload) -> float:
        level, t0, off = payload
        if level is None or off == 0:
            return t0
        key = (level, t0)
        orbit = self._orbits.get(key)
        if orbit is None:
            with self._lock:
                orbit = self._orbits.setdefault(key, _AngleOrbit(t0, 1.0 / level))
        return orbit.value(off)

    def act(self, payload, g: int):
        level, t0, off = payload
        return (level, t0, off + g)

    def dist(self, p, q) -> float:
        tp, tq = self.angle(p), self.angle(q)
        zp = 0.0 if p[0] is None else 1.0 / p[0]
        zq = 0.0 if q[0] is None else 1.0 / q[0]
        dx = math.sin(tp) - math.sin(tq)
        dy = math.cos(tq) - math.cos(tp)
        dz = zp - zq
        return math.sqrt(dx * dx + dy * dy + dz * dz)

    def pair_profile(self, p, q, lo, hi):
        if p[0] is None and q[0] is None:
            # identity shell: the distance is constant along the orbit
            return DistanceProfile.constant(lo, hi, scaled_from_float(self.dist(p, q)))
        return super().pair_profile(p, q, lo, hi)

    def parse_point(self, text: str):
        fields = {}
        for token in text.split():
            key, _, value = token.partition("=")
            fields[key] = value
        raw = fields.pop("level")
        level = None if raw == "inf" else int(raw)
        t = float(fields.pop("t")) % TWO_PI
        off = int(fields.pop("off", "0"))
        if fields or (level is not None and level < 1):
            raise ValueError("shell payload is level=<k>=1|inf t=<float> [off=<int>]")
        return (level, t, off)

    def format_point(self, payload) -> str:
        level, t0, off = payload
        return "level=%s t=%r off=%d" % ("inf" if level is None else level, t0, off)

    def payload_syntax(self) -> str:
        return "level=<int>=1|inf t=<float angle> [off=<int>]"

    def sample_payloads(self, rng, count: int):
        out = []
        levels = [1, 2, 4, 8, None]
        for _ in range(count):
            level = levels[int(rng.integers(0, len(levels)))]
            t = float(0.1 + (TWO_PI - 0.2) * rng.random())
            out.append((level, t, 0))
        return out


class ShellBaseSystem(System):
    """Heights {1/k} with the limit 0, trivial action, absolute difference."""

    system_id = "shellbase62"
    diameter = 1.0

    def act(self, payload, g: int):
        return payload

    def dist(self, p, q) -> float:
        zp = 0.0 if p is None else 1.0 / p
        zq = 0.0 if q is None else 1.0 / q
        return abs(zp - zq)

    def pair_profile(self, p, q, lo, hi):
        return DistanceProfile.constant(lo, hi, scaled_from_float(self.dist(p, q)))

    def parse_point(self, text: str):
        fields = {}
        for token in text.split():
            key, _, value = token.partition("=")
            fields[key] = value
        raw = fields.pop("level")
        if fields:
            raise ValueError("base payload is level=<k>|inf")
        return None if raw == "inf" else int(raw)

    def format_point(self, payload) -> str:
        return "level=%s" % ("inf" if payload is None else payload)

    def payload_syntax(self) -> str:
        return "level=<int>=1|inf"

    def sample_payloads(self, rng, count: int):
        levels = [1, 2, 3, 4, 8, None]
        return [levels[int(rng.integers(0, len(levels)))] for _ in range(count)]


register_system(ShellStackSystem())
register_system(ShellBaseSystem())
