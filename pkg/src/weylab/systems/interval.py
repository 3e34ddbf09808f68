"""Two mirrored copies of the unit interval under a leftward quadratic pinch.

The base map on [0, 1] fixes 0, 1 and every reciprocal 1/L, and on each
interval [1/(L+1), 1/L] acts by S(y) = y + (y-a)(y-b) with a = 1/(L+1),
b = 1/L, moving interior points left.  The space is the union of the
diagonal branch {(y, y)} and the mirrored branch {(y, -y)} in the plane
with the Euclidean metric, so a branch pair over the same y sits at
distance 2y and the orbit sup is pinned by the backward drift toward b.

Payloads are (branch, y0, offset): the action only moves the integer
offset, so group laws are exact; interval values S^m(y0) come from a
per-anchor cached orbit, forward by iteration and backward by safeguarded
Newton on the increasing quadratic.
"""

from __future__ import annotations

import math
import threading

from ..core import System, register_system

_BRANCHES = ("hat", "check")


def level_of(y: float) -> int:
    """Index L with y in [1/(L+1), 1/L]; 0 and 1 are fixed endpoints."""
    if not 0.0 <= y <= 1.0:
        raise ValueError("interval payload needs y in [0, 1]")
    if y == 0.0:
        return 0  # conventional: fixed point, never iterated
    return max(1, math.floor(1.0 / y))


def step(y: float) -> float:
    if y in (0.0, 1.0):
        return y
    L = level_of(y)
    a, b = 1.0 / (L + 1), 1.0 / L
    return y + (y - a) * (y - b)


def step_back(y: float) -> float:
    """The z in [a, b] with step(z) = y, by safeguarded Newton."""
    if y in (0.0, 1.0):
        return y
    L = level_of(y)
    a, b = 1.0 / (L + 1), 1.0 / L
    lo, hi = y, b  # S moves left, so the preimage sits in [y, b]
    z = 0.5 * (lo + hi)
    for _ in range(80):
        f = z + (z - a) * (z - b) - y
        if f > 0.0:
            hi = z
        elif f < 0.0:
            lo = z
        else:
            return z
        df = 1.0 + (z - a) + (z - b)
        zn = z - f / df if df > 0.0 else 0.5 * (lo + hi)
        if not lo <= zn <= hi:
            zn = 0.5 * (lo + hi)
        if zn == z:
            return z
        z = zn
    return z


class _OrbitCache:
    """Values S^m(y0) for one anchor, grown on demand; thread-safe."""

    def __init__(self, y0: float):
        self.fwd = [y0]  # index m >= 0
        self.bwd = []  # index -(m+1) for m >= 0
        self.lock = threading.Lock()

    def value(self, m: int) -> float:
        if m >= 0:
            if m >= len(self.fwd):
                with self.lock:
                    while m >= len(self.fwd):
                        self.fwd.append(step(self.fwd[-1]))
            return self.fwd[m]
        j = -m - 1
        if j >= len(self.bwd):
            with self.lock:
                while j >= len(self.bwd):
                    prev = self.bwd[-1] if self.bwd else self.fwd[0]
                    self.bwd.append(step_back(prev))
        return self.bwd[j]


class IntervalMirrorSystem(System):
    system_id = "interval61"
    diameter = 2.0

    def __init__(self):
        self._orbits = {}
        self._lock = threading.Lock()

    def _orbit(self, y0: float) -> _OrbitCache:
        cache = self._orbits.get(y0)
        if cache is None:
            with self._lock:
                cache = self._orbits.setdefault(y0, _OrbitCache(y0))
        return cache

    def value(self, payload) -> float:
        branch, y0, off = payload
        return self._orbit(y0).value(off)

    def act(self, payload, g: int):
        branch, y0, off = payload
        return (branch, y0, off + g)

    def dist(self, p, q) -> float:
        yp = self.value(p)
        yq = self.value(q)
        if p[0] == q[0]:
            d = abs(yp - yq)
            return d * math.sqrt(2.0)
        return math.sqrt(2.0 * (yp * yp + yq * yq))

    def parse_point(self, text: str):
        fields = {}
        for token in text.split():
            key, _, value = token.partition("=")
            fields[key] = value
        y = float(fields.pop("y"))
        branch = fields.pop("branch", "hat")
        off = int(fields.pop("off", "0"))
        if branch not in _BRANCHES or fields:
            raise ValueError("interval payload is y=<float> branch=hat|check [off=<int>]")
        level_of(y)  # validates the range
        return (branch, y, off)

    def format_point(self, payload) -> str:
        branch, y0, off = payload
        return "y=%r branch=%s off=%d" % (y0, branch, off)

    def payload_syntax(self) -> str:
        return "y=<float in [0,1]> branch=hat|check [off=<int>]"

    def sample_payloads(self, rng, count: int):
        out = []
        for _ in range(count):
            L = int(rng.integers(1, 7))
            a, b = 1.0 / (L + 1), 1.0 / L
            y = float(a + (b - a) * rng.random())
            out.append((_BRANCHES[int(rng.integers(0, 2))], y, 0))
        return out


register_system(IntervalMirrorSystem())
