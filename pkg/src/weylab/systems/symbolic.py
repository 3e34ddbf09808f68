"""Shared machinery for binary subshifts under the shift action of Z.

A subshift system only has to materialize letters on an integer range
(coords); the metric 2^-min{|n| : x_n != y_n} and exact orbit distance
profiles then reduce to nearest-disagreement scans, vectorized over the
whole range at once.
"""

from __future__ import annotations

import numpy as np

from ..core import System
from ..profiles import INF_EXP, SCALE_BITS, DistanceProfile

# disagreements farther than the quantization depth contribute exactly zero,
# both on the scaled grid and after rounding to float
_PAD = SCALE_BITS + 2


class SymbolicSystem(System):
    diameter = 1.0

    def coords(self, payload, lo: int, hi: int) -> np.ndarray:
        """Letters x_n for n in [lo, hi], as a uint8 array."""
        raise NotImplementedError

    def dist(self, p, q) -> float:
        if p == q:
            return 0.0
        a = self.coords(p, -SCALE_BITS, SCALE_BITS)
        b = self.coords(q, -SCALE_BITS, SCALE_BITS)
        diff = np.nonzero(a != b)[0]
        if diff.size == 0:
            # distinct points agreeing out to the grid depth: below float
            # resolution either way
            return 0.0
        k = int(np.min(np.abs(diff - SCALE_BITS)))
        return 2.0 ** (-k)

    def pair_profile(self, p, q, lo: int, hi: int) -> DistanceProfile:
        a = self.coords(p, lo - _PAD, hi + _PAD)
        b = self.coords(q, lo - _PAD, hi + _PAD)
        disagree = np.nonzero(a != b)[0].astype(np.int64)
        ts = np.arange(hi - lo + 1, dtype=np.int64) + _PAD
        if disagree.size == 0:
            return DistanceProfile.from_exponents(
                lo, np.full(ts.size, INF_EXP, dtype=np.int64)
            )
        idx = np.searchsorted(disagree, ts)
        left = np.where(
            idx > 0, ts - disagree[np.maximum(idx - 1, 0)], np.int64(INF_EXP)
        )
        right = np.where(
            idx < disagree.size,
            disagree[np.minimum(idx, disagree.size - 1)] - ts,
            np.int64(INF_EXP),
        )
        exps = np.minimum(np.minimum(left, right), np.int64(INF_EXP))
        return DistanceProfile.from_exponents(lo, exps)
