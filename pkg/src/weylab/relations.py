"""Pair classification and the sequence tests behind the regularity lattice.

Verdicts are tolerance driven, never proofs: 'check' upper-bounds the orbit
infimum, so a 'distal' call can be revised by a larger schedule, and the
scan-based modulus tests report 'no violation found at these tolerances'
rather than the property itself.  Diagonal pairs short-circuit to exact
zeros so float noise cannot contradict reflexivity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Tuple

import numpy as np

from .core import (FactorMap, FolnerSchedule, FolnerWindow, Point,
                   SamplerError, ToleranceError, act, dist, dyadic_schedule)
from .estimators import besicovitch, check, hat, weyl

#: schedule used by classification entry points when none is given
DEFAULT_CLASSIFY_SCHEDULE = (10, 14)


def default_classify_schedule() -> FolnerSchedule:
    return dyadic_schedule(*DEFAULT_CLASSIFY_SCHEDULE)


@dataclass(frozen=True)
class Tolerances:
    """Thresholds for turning exact estimates into verdicts.

    zero_tol bounds 'indistinguishable at this scale', sep_tol bounds
    'separated at this scale'; delta_ratio is the slack allowed in the
    modulus scans (delta*(eps) >= delta_ratio * eps passes).
    """

    zero_tol: float = 1e-2
    sep_tol: float = 1e-1
    delta_ratio: float = 0.25

    def __post_init__(self):
        if not 0.0 < self.zero_tol < self.sep_tol:
            raise ToleranceError("need 0 < zero_tol < sep_tol")
        if not 0.0 < self.delta_ratio <= 1.0:
            raise ToleranceError("delta_ratio must lie in (0, 1]")

    def eps_grid(self) -> Tuple[float, ...]:
        return (self.sep_tol, 2.0 * self.sep_tol, 4.0 * self.sep_tol)


@dataclass(frozen=True)
class PairVerdict:
    x: str
    y: str
    diagonal: bool
    in_R_pi: Optional[bool]
    d0: float
    check_value: float
    besicovitch_value: float
    weyl_value: float
    hat_value: float
    banach_proximal: bool
    proximal: bool
    distal: bool
    banach_distal: bool
    inconclusive: bool
    boundary_warning: bool

    def as_dict(self) -> dict:
        return {
            "x": self.x, "y": self.y,
            "diagonal": self.diagonal, "in_R_pi": self.in_R_pi,
            "d0": self.d0,
            "check": self.check_value, "besicovitch": self.besicovitch_value,
            "weyl": self.weyl_value, "hat": self.hat_value,
            "banach_proximal": self.banach_proximal,
            "proximal": self.proximal, "distal": self.distal,
            "banach_distal": self.banach_distal,
            "inconclusive": self.inconclusive,
            "boundary_warning": self.boundary_warning,
        }


def classify_pair(x: Point, y: Point, schedule: Optional[FolnerSchedule] = None,
                  tolerances: Optional[Tolerances] = None,
                  factor: Optional[FactorMap] = None) -> PairVerdict:
    schedule = schedule or default_classify_schedule()
    tol = tolerances or Tolerances()
    in_r: Optional[bool] = None
    if factor is not None:
        ix, iy = factor.apply(x), factor.apply(y)
        if factor.exact_fibres:
            in_r = ix.payload == iy.payload
        else:
            in_r = dist(ix, iy) < tol.zero_tol
    diagonal = x.system_id == y.system_id and x.payload == y.payload
    if diagonal:
        return PairVerdict(
            x=str(x), y=str(y), diagonal=True, in_R_pi=in_r, d0=0.0,
            check_value=0.0, besicovitch_value=0.0, weyl_value=0.0,
            hat_value=0.0, banach_proximal=True, proximal=True,
            distal=False, banach_distal=False, inconclusive=False,
            boundary_warning=False,
        )
    e_check = check(x, y, schedule)
    e_besi = besicovitch(x, y, schedule)
    e_weyl = weyl(x, y, schedule)
    e_hat = hat(x, y, schedule)
    banach_proximal = e_weyl.value < tol.zero_tol
    proximal = e_check.value < tol.zero_tol
    distal = e_check.value > tol.sep_tol
    banach_distal = e_weyl.value > tol.sep_tol
    return PairVerdict(
        x=str(x), y=str(y), diagonal=False, in_R_pi=in_r, d0=dist(x, y),
        check_value=e_check.value, besicovitch_value=e_besi.value,
        weyl_value=e_weyl.value, hat_value=e_hat.value,
        banach_proximal=banach_proximal, proximal=proximal, distal=distal,
        banach_distal=banach_distal,
        inconclusive=not (proximal or distal),
        boundary_warning=e_weyl.boundary_warning,
    )


# ---------------------------------------------------------------------------
# convergent pair sequences


@dataclass(frozen=True)
class PairSequence:
    """Finitely many pairs standing in for a convergent sequence in X x X.

    When a limit is declared it is validated: over the tail half, the sum
    of the two coordinate distances to the limit must decay by a factor of
    at least 3/4 per term (exact zeros are fine), so a wrongly declared
    limit fails loudly instead of skewing the sequence tests.
    """

    terms: Tuple[Tuple[Point, Point], ...]
    limit: Optional[Tuple[Point, Point]] = None
    description: str = ""

    def __post_init__(self):
        if len(self.terms) < 3:
            raise SamplerError("a pair sequence needs at least 3 terms")
        sid = self.terms[0][0].system_id
        points = [p for pair in self.terms for p in pair]
        if self.limit is not None:
            points.extend(self.limit)
        if any(p.system_id != sid for p in points):
            raise SamplerError("pair sequence mixes systems")
        if self.limit is not None:
            la, lb = self.limit
            ds = [dist(a, la) + dist(b, lb) for a, b in self.terms]
            tail = ds[len(ds) // 2 :]
            for prev, cur in zip(tail, tail[1:]):
                if cur > 0.75 * prev:
                    raise SamplerError(
                        "declared limit not approached geometrically: "
                        "tail distances %r" % (tail,)
                    )

    def system_id(self) -> str:
        return self.terms[0][0].system_id


@dataclass(frozen=True)
class SequenceReport:
    asymptotically_banach_proximal: bool
    term_weyl: Tuple[float, ...]
    limit_banach_proximal: Optional[bool]
    limit_weyl: Optional[float]
    description: str


def sequence_report(seq: PairSequence, schedule: Optional[FolnerSchedule] = None,
                    tolerances: Optional[Tolerances] = None) -> SequenceReport:
    """Estimated weyl values of the terms and of the declared limit.

    The sequence counts as asymptotically Banach proximal when the tail
    half of the term estimates sits below zero_tol.
    """
    schedule = schedule or default_classify_schedule()
    tol = tolerances or Tolerances()
    values = []
    for a, b in seq.terms:
        if a.payload == b.payload:
            values.append(0.0)
        else:
            values.append(weyl(a, b, schedule).value)
    tail = values[len(values) // 2 :]
    abp = max(tail) < tol.zero_tol
    limit_bp = None
    limit_value = None
    if seq.limit is not None:
        la, lb = seq.limit
        if la.payload == lb.payload:
            limit_value = 0.0
        else:
            limit_value = weyl(la, lb, schedule).value
        limit_bp = limit_value < tol.zero_tol
    return SequenceReport(abp, tuple(values), limit_bp, limit_value,
                          seq.description)


def is_asymptotically_banach_proximal(seq: PairSequence,
                                      schedule: Optional[FolnerSchedule] = None,
                                      tolerances: Optional[Tolerances] = None) -> bool:
    return sequence_report(seq, schedule, tolerances).asymptotically_banach_proximal


# ---------------------------------------------------------------------------
# sampling helpers


def _sample_pairs(factor: FactorMap, seed: int, count: int):
    if factor.pair_sampler is None:
        raise SamplerError("factor map %s has no pair sampler" % factor.map_id)
    pairs = factor.pair_sampler(seed, count)
    if not pairs:
        raise SamplerError("pair sampler for %s returned nothing" % factor.map_id)
    return pairs


def _sample_sequences(factor: FactorMap, seed: int, count: int):
    if factor.sequence_sampler is None:
        return []
    return factor.sequence_sampler(seed, count)


def _scan_rows(pairs, schedule, tol, value_of):
    """(d0, estimate value) rows for non-diagonal sampled pairs."""
    rows = []
    for a, b in pairs:
        if a.payload == b.payload:
            continue
        rows.append((dist(a, b), value_of(a, b)))
    return rows


def _delta_star(rows, eps: float) -> Optional[float]:
    """Smallest plain distance among pairs whose orbit value reaches eps;
    None when no sampled pair reaches eps (the scan constrains nothing)."""
    ds = [d0 for d0, v in rows if v >= eps]
    return min(ds) if ds else None


# ---------------------------------------------------------------------------
# modulus scans and sequence tests


@dataclass(frozen=True)
class ModulusReport:
    """delta*(eps) scan: for each eps on the grid, the smallest initial
    distance that still produced an orbit value >= eps."""

    holds: bool
    grid: Tuple[Tuple[float, Optional[float], bool], ...]  # (eps, delta*, ok)
    delta_equals_eps: bool
    pairs_examined: int
    note: str


def _modulus_scan(rows, tol: Tolerances, pairs_examined: int,
                  what: str) -> ModulusReport:
    grid = []
    holds = True
    delta_eq = True
    for eps in tol.eps_grid():
        ds = _delta_star(rows, eps)
        ok = ds is None or ds >= tol.delta_ratio * eps
        if ds is not None and ds < eps:
            delta_eq = False
        holds = holds and ok
        grid.append((eps, ds, ok))
    note = ("no violation found at these tolerances" if holds
            else "violation: small initial distance with large %s" % what)
    return ModulusReport(holds, tuple(grid), delta_eq, pairs_examined, note)


def test_equicontinuity(factor: FactorMap,
                        schedule: Optional[FolnerSchedule] = None,
                        tolerances: Optional[Tolerances] = None,
                        seed: int = 0, pair_count: int = 24) -> ModulusReport:
    """Scan R(pi) samples for pairs that start close but drift far apart
    at some single orbit time (hat)."""
    schedule = schedule or default_classify_schedule()
    tol = tolerances or Tolerances()
    pairs = _sample_pairs(factor, seed, pair_count)
    rows = _scan_rows(pairs, schedule, tol,
                      lambda a, b: hat(a, b, schedule).value)
    return _modulus_scan(rows, tol, len(pairs), "orbit sup")


@dataclass(frozen=True)
class PropertyMReport:
    holds: bool
    scan: ModulusReport
    sequence_violations: Tuple[str, ...]
    sequences_examined: int


def test_property_M(factor: FactorMap,
                    schedule: Optional[FolnerSchedule] = None,
                    tolerances: Optional[Tolerances] = None,
                    seed: int = 0, pair_count: int = 24,
                    sequence_count: int = 4) -> PropertyMReport:
    """Two routes at once: the delta*(eps) scan on weyl values over sampled
    R(pi) pairs, and the sequence criterion that a convergent sequence with
    a Banach proximal limit must itself be asymptotically Banach proximal."""
    schedule = schedule or default_classify_schedule()
    tol = tolerances or Tolerances()
    pairs = _sample_pairs(factor, seed, pair_count)
    rows = _scan_rows(pairs, schedule, tol,
                      lambda a, b: weyl(a, b, schedule).value)
    scan = _modulus_scan(rows, tol, len(pairs), "weyl value")
    violations = []
    seqs = _sample_sequences(factor, seed, sequence_count)
    for seq in seqs:
        if seq.limit is None:
            continue
        rep = sequence_report(seq, schedule, tol)
        if rep.limit_banach_proximal and not rep.asymptotically_banach_proximal:
            violations.append(
                "limit is Banach proximal but the sequence is not "
                "asymptotically Banach proximal (%s)" % seq.description
            )
    return PropertyMReport(scan.holds and not violations, scan,
                           tuple(violations), len(seqs))


@dataclass(frozen=True)
class MeanEquicontinuityReport:
    holds: Optional[bool]
    violations: Tuple[str, ...]
    sequences_examined: int
    note: str


def test_mean_equicontinuity(factor: FactorMap,
                             schedule: Optional[FolnerSchedule] = None,
                             tolerances: Optional[Tolerances] = None,
                             seed: int = 0,
                             sequence_count: int = 4) -> MeanEquicontinuityReport:
    """On convergent sequences in R(pi) the map is mean equicontinuous iff
    'asymptotically Banach proximal' and 'limit Banach proximal' agree;
    both defect directions are reported."""
    schedule = schedule or default_classify_schedule()
    tol = tolerances or Tolerances()
    seqs = _sample_sequences(factor, seed, sequence_count)
    if not seqs:
        return MeanEquicontinuityReport(
            None, (), 0, "no sequence sampler: not tested")
    violations = []
    for seq in seqs:
        if seq.limit is None:
            continue
        rep = sequence_report(seq, schedule, tol)
        if rep.asymptotically_banach_proximal and not rep.limit_banach_proximal:
            violations.append(
                "sequence is asymptotically Banach proximal but its limit "
                "is not Banach proximal (%s)" % seq.description
            )
        if rep.limit_banach_proximal and not rep.asymptotically_banach_proximal:
            violations.append(
                "limit is Banach proximal but the sequence is not "
                "asymptotically Banach proximal (%s)" % seq.description
            )
    note = ("no violation found at these tolerances" if not violations
            else "; ".join(violations))
    return MeanEquicontinuityReport(not violations, tuple(violations),
                                    len(seqs), note)


# ---------------------------------------------------------------------------
# regional witnesses and empirical averages


@dataclass(frozen=True)
class WitnessReport:
    found: bool
    witness: Optional[Tuple[str, str]]
    weyl_value: Optional[float]
    dx: Optional[float]
    dy: Optional[float]


def regional_witness_search(factor: FactorMap, x: Point, y: Point,
                            eps_pair: float,
                            schedule: Optional[FolnerSchedule] = None,
                            tolerances: Optional[Tolerances] = None,
                            seed: int = 0, count: int = 40) -> WitnessReport:
    """Look for a non-diagonal sampled pair in R(pi) within eps_pair of
    (x, y) coordinatewise whose weyl value sits below zero_tol: evidence
    that (x, y) is regionally Banach proximal without being so itself."""
    schedule = schedule or default_classify_schedule()
    tol = tolerances or Tolerances()
    best = None
    for a, b in _sample_pairs(factor, seed, count):
        if a.payload == b.payload:
            continue
        for (a2, b2) in ((a, b), (b, a)):
            dxa, dyb = dist(x, a2), dist(y, b2)
            if dxa < eps_pair and dyb < eps_pair:
                value = weyl(a2, b2, schedule).value
                if value < tol.zero_tol:
                    if best is None or value < best[2]:
                        best = (a2, b2, value, dxa, dyb)
    if best is None:
        return WitnessReport(False, None, None, None, None)
    a2, b2, value, dxa, dyb = best
    return WitnessReport(True, (str(a2), str(b2)), value, dxa, dyb)


def empirical_measure(x: Point, observable: Callable[[Point], float],
                      window: FolnerWindow) -> float:
    """Window average of an observable along the orbit of x."""
    total = 0.0
    for t in range(window.lo, window.hi + 1):
        total += observable(act(x, t))
    return total / len(window)
