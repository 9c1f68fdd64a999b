"""Minimal reductions, reduction numbers, and cores of m-primary ideals.

A reduction of I is an ideal J inside I with I^(r+1) = J * I^r for some
r; the least such r is the reduction number.  For an m-primary ideal in
characteristic zero the core (the intersection of all reductions) is
the single colon J^(r+1) : I^r for any one minimal reduction J, and
that colon is what this module computes, wrapped in enough verified
evidence to be trustworthy: every certificate re-checks the defining
equality, every core run checks colon stabilization at the next step,
and multi-sample runs insist the answer is reduction-independent.

Randomness is seeded and splittable: sample k of a run with seed s uses
s * 1000 + k, and retry a of any search uses base * 1000003 + a, so
every report is reproducible from its recorded seeds.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Sequence

from .errors import (CoreAgreementError, NotMPrimaryError,
                     ReductionSearchError, StabilizationError)
from .groebner import (GBStats, Ideal, collect_gb_stats, ideal_contains,
                       ideal_equal, ideal_member)
from .ideal_ops import (ideal_colon, ideal_power, ideal_product,
                        maximal_ideal_power, minimalize_generators)
from .rings import RANDOM_COEFFICIENT_BOUND, Polynomial

_RETRY_STRIDE = 1_000_003
_SAMPLE_STRIDE = 1_000


def _sample_seed(seed: int, index: int) -> int:
    return seed * _SAMPLE_STRIDE + index


def _attempt_seed(seed: int, attempt: int) -> int:
    return seed * _RETRY_STRIDE + attempt


def m_primary_level(ideal: Ideal, bound: int | None = None) -> int | None:
    """Least N with m^N inside the ideal, scanned up to `bound`.

    The default bound is the largest generator degree plus two, which
    covers every ideal this engine is pointed at; None means no power up
    to the bound is contained (the ideal may still be m-primary beyond
    it, so callers treat None as "not verified").
    """
    cached = ideal._mlevel.get(bound)
    if cached is not None:
        return cached if cached >= 0 else None
    if ideal.is_zero():
        return None
    if bound is None:
        bound = max(g.degree() for g in ideal.generators) + 2
    result = None
    for level in range(1, bound + 1):
        power = maximal_ideal_power(ideal.ring, level)
        if ideal_contains(ideal, power):
            result = level
            break
    ideal._mlevel[bound] = result if result is not None else -1
    return result


@dataclass(frozen=True, eq=False)
class ReductionCertificate:
    """A verified reduction J of I together with its reduction number.

    The witness is the equality I^(r+1) = J * I^r (with the failure of
    the same equality at r-1 establishing minimality); `recheck`
    recomputes both from scratch.  `coefficients` records the random
    draw (rows follow the reduction's generators, columns the minimal
    generators of I) when provenance is seeded-random.
    """

    ideal: Ideal
    reduction: Ideal
    reduction_number: int
    provenance: str                      # "explicit" or "seeded-random"
    seed: int | None = None
    coefficients: tuple = ()

    def recheck(self) -> bool:
        if not ideal_contains(self.ideal, self.reduction):
            return False
        r = self.reduction_number
        if not _is_reduction_at(self.ideal, self.reduction, r):
            return False
        if r > 0 and _is_reduction_at(self.ideal, self.reduction, r - 1):
            return False
        return True


def _is_reduction_at(ideal: Ideal, candidate: Ideal, r: int) -> bool:
    # J*I^r is contained in I^(r+1) for free (J inside I), so equality
    # is the single containment I^(r+1) inside J*I^r
    lhs = ideal_power(ideal, r + 1)
    rhs = ideal_product(candidate, ideal_power(ideal, r))
    return ideal_contains(rhs, lhs)


def _scan_reduction_number(ideal: Ideal, candidate: Ideal, cap: int) -> int | None:
    for r in range(cap + 1):
        if _is_reduction_at(ideal, candidate, r):
            return r
    return None


def require_m_primary(ideal: Ideal) -> int:
    level = m_primary_level(ideal)
    if level is None:
        raise NotMPrimaryError(
            "ideal does not contain any scanned power of the maximal ideal")
    return level


def explicit_reduction(ideal: Ideal, reduction_gens: Sequence[Polynomial],
                       cap: int = 10) -> ReductionCertificate:
    """Verify an explicitly given reduction candidate.

    Scans r = 0..cap for I^(r+1) = J * I^r.  A cap overrun is reported
    as "not verified within the cap", never as "not a reduction".
    """
    for g in reduction_gens:
        if not ideal_member(g, ideal):
            raise ValueError(f"candidate generator {g} does not lie in the ideal")
    candidate = Ideal(ideal.ring, tuple(reduction_gens))
    r = _scan_reduction_number(ideal, candidate, cap)
    if r is None:
        raise ReductionSearchError(
            f"candidate not verified as a reduction within reduction-number cap {cap}")
    return ReductionCertificate(ideal=ideal, reduction=candidate,
                                reduction_number=r, provenance="explicit")


def random_minimal_reduction(ideal: Ideal, seed: int, cap: int = 10,
                             retries: int = 5) -> ReductionCertificate:
    """Draw and verify a random minimal reduction of an m-primary ideal.

    The candidate takes n generators (n = ring variables), each a random
    integer combination of the minimal generators of I of one fixed
    degree; the degree profile is the n smallest minimal-generator
    degrees.  Per-degree draws keep every candidate generator
    homogeneous, which the engine's graded model requires, and they are
    as general as homogeneous elements get modulo m*I, which is what
    reduction-ness depends on.  Genericity is not assumed: the
    certificate is verified, and failed draws retry with fresh derived
    seeds up to `retries` times.
    """
    require_m_primary(ideal)
    ring_ctx = ideal.ring
    n = ring_ctx.nvars
    minimal = minimalize_generators(ideal)
    gens = minimal.generators
    if len(gens) < n:
        raise NotMPrimaryError(
            f"m-primary ideal needs at least {n} minimal generators, found {len(gens)}")
    degrees = sorted(g.degree() for g in gens)
    profile = degrees[:n]
    bound = RANDOM_COEFFICIENT_BOUND
    attempted = []
    for attempt in range(retries):
        attempt_seed = _attempt_seed(seed, attempt)
        attempted.append(attempt_seed)
        rng = random.Random(attempt_seed)
        rows = []
        candidates = []
        for degree in profile:
            row = []
            combo = ring_ctx.zero()
            for g in gens:
                if g.degree() == degree:
                    c = rng.randint(-bound, bound)
                    row.append(c)
                    if c:
                        combo = combo + g.scale(c)
                else:
                    row.append(0)
            rows.append(tuple(row))
            candidates.append(combo)
        if any(c.is_zero() for c in candidates):
            continue
        candidate = Ideal(ring_ctx, tuple(candidates))
        r = _scan_reduction_number(ideal, candidate, cap)
        if r is not None:
            return ReductionCertificate(ideal=ideal, reduction=candidate,
                                        reduction_number=r,
                                        provenance="seeded-random",
                                        seed=attempt_seed,
                                        coefficients=tuple(rows))
    raise ReductionSearchError(
        f"no verified reduction after {retries} seeded draws (cap {cap}); "
        f"either unlucky draws or a genuine obstruction",
        seeds=tuple(attempted))


@dataclass(frozen=True, eq=False)
class CoreReport:
    """The computed core with its full evidence trail."""

    ideal: Ideal
    certificate: ReductionCertificate
    core: Ideal
    stabilization_pair: tuple            # (J^(r+1):I^r, J^(r+2):I^(r+1))
    reductions: tuple                    # every certificate sampled
    core_in_ideal: bool
    core_in_reductions: tuple
    samples_agree: bool
    core_m_primary_level: int | None
    gb_stats: tuple
    seconds: float
    field_note: str = "exact rationals"


def _aggregate(stats: Sequence[GBStats]) -> tuple:
    return tuple(stats)


def core_via_colon(certificate: ReductionCertificate) -> CoreReport:
    """Core of the certificate's ideal through the colon formula.

    Computes J^(r+1) : I^r together with the next colon J^(r+2) :
    I^(r+1) and insists they agree (the formula's hypotheses make the
    colon stabilize from r on; disagreement aborts loudly instead of
    guessing which one to trust).
    """
    ideal = certificate.ideal
    reduction = certificate.reduction
    r = certificate.reduction_number
    started = time.perf_counter()
    with collect_gb_stats() as sink:
        first = ideal_colon(ideal_power(reduction, r + 1), ideal_power(ideal, r))
        second = ideal_colon(ideal_power(reduction, r + 2),
                             ideal_power(ideal, r + 1))
        if not ideal_equal(first, second):
            raise StabilizationError(
                "colon ideals at consecutive reduction exponents disagree",
                first, second)
        core_ideal = first
        inside_ideal = ideal_contains(ideal, core_ideal)
        inside_reduction = ideal_contains(reduction, core_ideal)
        level = m_primary_level(core_ideal)
    seconds = time.perf_counter() - started
    if not inside_ideal or not inside_reduction:
        raise CoreAgreementError(
            "computed core escapes the ideal or its reduction", (core_ideal,))
    note = ("exact rationals" if ideal.ring.field.char == 0
            else f"mod-{ideal.ring.field.char} surrogate")
    return CoreReport(ideal=ideal, certificate=certificate, core=core_ideal,
                      stabilization_pair=(first, second),
                      reductions=(certificate,),
                      core_in_ideal=inside_ideal,
                      core_in_reductions=(inside_reduction,),
                      samples_agree=True,
                      core_m_primary_level=level,
                      gb_stats=_aggregate(sink),
                      seconds=seconds,
                      field_note=note)


def core(ideal: Ideal, seed: int, samples: int = 3, cap: int = 10,
         retries: int = 5) -> CoreReport:
    """Core of an m-primary homogeneous ideal from sampled reductions.

    Draws `samples` independent random minimal reductions, runs the
    colon formula for each, and insists every sample yields the same
    ideal (the char-0 theory says the colon is reduction-independent,
    so disagreement is a red-alert diagnostic, raised with all cores
    attached).  Returns the common core with merged evidence.
    """
    if samples < 1:
        raise ValueError("at least one sample is required")
    require_m_primary(ideal)
    started = time.perf_counter()
    with collect_gb_stats() as sink:
        reports = []
        for index in range(samples):
            cert = random_minimal_reduction(ideal, _sample_seed(seed, index),
                                            cap=cap, retries=retries)
            reports.append(core_via_colon(cert))
        base = reports[0]
        for other in reports[1:]:
            if not ideal_equal(base.core, other.core):
                raise CoreAgreementError(
                    "sampled reductions disagree on the core",
                    tuple(rep.core for rep in reports))
        containments = tuple(ideal_contains(rep.certificate.reduction, base.core)
                             for rep in reports)
    seconds = time.perf_counter() - started
    if not all(containments):
        raise CoreAgreementError("core escapes a sampled reduction",
                                 (base.core,))
    return CoreReport(ideal=ideal, certificate=base.certificate, core=base.core,
                      stabilization_pair=base.stabilization_pair,
                      reductions=tuple(rep.certificate for rep in reports),
                      core_in_ideal=base.core_in_ideal,
                      core_in_reductions=containments,
                      samples_agree=True,
                      core_m_primary_level=base.core_m_primary_level,
                      gb_stats=_aggregate(sink),
                      seconds=seconds,
                      field_note=base.field_note)


@dataclass(frozen=True, eq=False)
class DeeperCoreReport:
    """Finite-family approximation of the intersection of cores over
    ideals containing the base ideal."""

    ideal: Ideal
    intersection: Ideal
    base_report: CoreReport
    member_reports: tuple


def deeper_core_sample(ideal: Ideal, family: Sequence[Ideal], seed: int,
                       samples: int = 1, cap: int = 10) -> DeeperCoreReport:
    """Intersect core(ideal) with core(K) over the given finite family.

    Every family member must contain the base ideal.  The result is an
    upper approximation: the full intersection over all containing
    ideals sits inside it.
    """
    if not family:
        raise ValueError("family must be non-empty")
    from .ideal_ops import ideal_intersect
    for index, member in enumerate(family):
        if not ideal_contains(member, ideal):
            raise ValueError(f"family member {index} does not contain the base ideal")
    base_report = core(ideal, _sample_seed(seed, 0), samples=samples, cap=cap)
    member_reports = []
    meet = base_report.core
    for index, member in enumerate(family):
        report = core(member, _sample_seed(seed, index + 1), samples=samples,
                      cap=cap)
        member_reports.append(report)
        meet = ideal_intersect(meet, report.core)
    return DeeperCoreReport(ideal=ideal, intersection=meet,
                            base_report=base_report,
                            member_reports=tuple(member_reports))
