"""Exact per-time distance profiles.

Estimators need d(g.x, g.x') for every g in a window hull.  To keep window
sums exact and order-independent we quantize every distance sample onto the
grid 2^-SCALE_BITS as a Python integer.  SCALE_BITS = 1074 makes the floor
map lossless on every nonnegative IEEE double (all of which are integer
multiples of 2^-1074) and on every dyadic 2^-k with k <= 1074; smaller
values floor to 0, which is also what float arithmetic would report.

Flooring onto the grid preserves the ultrametric triangle inequality of
subshift metrics exactly (floor is monotone and commutes with max), so the
property suites can assert window-level inequalities with zero tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import accumulate
from typing import List, Optional, Tuple

import numpy as np

SCALE_BITS = 1074
SCALE = 1 << SCALE_BITS
#: sentinel exponent meaning "no disagreement anywhere", i.e. distance 0
INF_EXP = 1 << 30


def scaled_from_float(x: float) -> int:
    """Exact image of a nonnegative double on the 2^-SCALE_BITS grid."""
    if x < 0.0:
        raise ValueError("distance samples must be nonnegative")
    if x == 0.0:
        return 0
    p, q = x.as_integer_ratio()  # q is a power of two for any float
    return p << (SCALE_BITS - (q.bit_length() - 1))


def scaled_from_exponent(e: int) -> int:
    """Exact image of 2^-e, floored to 0 beyond the grid."""
    if e >= INF_EXP or e > SCALE_BITS:
        return 0
    return 1 << (SCALE_BITS - e)


def float_from_scaled(s: int) -> float:
    return float(Fraction(s, SCALE))


@dataclass
class DistanceProfile:
    """Distance samples d(t) for t in [lo, hi], exact on the quantization grid.

    kind is 'exp2' (values 2^-e from an int64 exponent array), 'float'
    (a float64 array, each value exactly representable) or 'scaled'
    (explicit grid integers).  Scaled values and prefix sums are built
    lazily; both are plain Python ints so sums never round.
    """

    lo: int
    hi: int
    kind: str
    exps: Optional[np.ndarray] = None
    floats: Optional[np.ndarray] = None
    scaled_list: Optional[List[int]] = None
    _prefix: Optional[List[int]] = field(default=None, repr=False)

    # -- constructors -------------------------------------------------

    @classmethod
    def from_exponents(cls, lo: int, exps: np.ndarray) -> "DistanceProfile":
        exps = np.asarray(exps, dtype=np.int64)
        return cls(lo=lo, hi=lo + len(exps) - 1, kind="exp2", exps=exps)

    @classmethod
    def from_floats(cls, lo: int, values: np.ndarray) -> "DistanceProfile":
        values = np.asarray(values, dtype=np.float64)
        if len(values) and float(values.min()) < 0.0:
            raise ValueError("distance samples must be nonnegative")
        return cls(lo=lo, hi=lo + len(values) - 1, kind="float", floats=values)

    @classmethod
    def from_scaled(cls, lo: int, scaled: List[int]) -> "DistanceProfile":
        return cls(lo=lo, hi=lo + len(scaled) - 1, kind="scaled", scaled_list=list(scaled))

    @classmethod
    def constant(cls, lo: int, hi: int, scaled_value: int) -> "DistanceProfile":
        return cls(lo=lo, hi=hi, kind="scaled", scaled_list=[scaled_value] * (hi - lo + 1))

    # -- exact values ---------------------------------------------------

    def __len__(self) -> int:
        return self.hi - self.lo + 1

    def scaled(self) -> List[int]:
        if self.scaled_list is None:
            if self.kind == "exp2":
                self.scaled_list = [scaled_from_exponent(e) for e in self.exps.tolist()]
            else:
                m, e = np.frexp(self.floats)
                mant = np.round(m * 9007199254740992.0).astype(np.int64)  # m * 2^53
                shift = e.astype(np.int64) + (SCALE_BITS - 53)
                out = []
                for mi, sh in zip(mant.tolist(), shift.tolist()):
                    if mi == 0:
                        out.append(0)
                    elif sh >= 0:
                        out.append(mi << sh)
                    else:
                        out.append(mi >> (-sh))  # lossless: subnormal mantissas pad with zeros
                self.scaled_list = out
        return self.scaled_list

    def prefix(self) -> List[int]:
        """Prefix sums: prefix[i] = sum of scaled values at t in [lo, lo+i)."""
        if self._prefix is None:
            self._prefix = list(accumulate(self.scaled(), initial=0))
        return self._prefix

    def range_sum(self, a: int, b: int) -> int:
        """Exact sum of scaled values over t in [a, b] (inclusive)."""
        if a < self.lo or b > self.hi or a > b:
            raise ValueError("range [%d, %d] outside profile [%d, %d]" % (a, b, self.lo, self.hi))
        p = self.prefix()
        return p[b + 1 - self.lo] - p[a - self.lo]

    def value_scaled(self, t: int) -> int:
        if t < self.lo or t > self.hi:
            raise ValueError("t=%d outside profile [%d, %d]" % (t, self.lo, self.hi))
        i = t - self.lo
        if self.kind == "exp2":
            return scaled_from_exponent(int(self.exps[i]))
        if self.kind == "float":
            return scaled_from_float(float(self.floats[i]))
        return self.scaled_list[i]

    def extremes(self, a: int, b: int) -> Tuple[int, int, int, int]:
        """(min_scaled, argmin_t, max_scaled, argmax_t) over [a, b].

        Ties resolve to the smallest t, for deterministic diagnostics.
        """
        if a < self.lo or b > self.hi or a > b:
            raise ValueError("range [%d, %d] outside profile [%d, %d]" % (a, b, self.lo, self.hi))
        i, j = a - self.lo, b - self.lo + 1
        if self.kind == "exp2":
            seg = np.minimum(self.exps[i:j], INF_EXP)  # larger exponent = smaller value
            kmax = int(np.argmax(seg))
            kmin = int(np.argmin(seg))
            return (
                scaled_from_exponent(int(seg[kmax])), a + kmax,
                scaled_from_exponent(int(seg[kmin])), a + kmin,
            )
        if self.kind == "float":
            seg = self.floats[i:j]
            kmin = int(np.argmin(seg))
            kmax = int(np.argmax(seg))
            return (
                scaled_from_float(float(seg[kmin])), a + kmin,
                scaled_from_float(float(seg[kmax])), a + kmax,
            )
        seg = self.scaled_list[i:j]
        mn, mx = min(seg), max(seg)
        return mn, a + seg.index(mn), mx, a + seg.index(mx)

    def indicator_prefix(self, threshold_scaled: int) -> List[int]:
        """Prefix counts of samples strictly below the scaled threshold."""
        if self.kind == "exp2":
            # 2^(SCALE_BITS - e) < T, with the convention value 0 for clipped e
            flags = [1 if scaled_from_exponent(e) < threshold_scaled else 0
                     for e in self.exps.tolist()]
        elif self.kind == "float":
            bound = float_from_scaled(threshold_scaled)
            # exact: every sample is a double and threshold_scaled/SCALE may round;
            # compare on the grid instead
            flags = [1 if scaled_from_float(v) < threshold_scaled else 0
                     for v in self.floats.tolist()]
            del bound
        else:
            flags = [1 if s < threshold_scaled else 0 for s in self.scaled_list]
        return list(accumulate(flags, initial=0))

    def plus(self, other: "DistanceProfile") -> "DistanceProfile":
        """Termwise sum on the grid (the lifted-metric profile)."""
        if (self.lo, self.hi) != (other.lo, other.hi):
            raise ValueError("profiles cover different ranges")
        a = self.scaled()
        b = other.scaled()
        return DistanceProfile.from_scaled(self.lo, [x + y for x, y in zip(a, b)])
