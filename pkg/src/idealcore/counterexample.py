"""The built-in four-variable counterexample: cores do not preserve
containment of ideals.

In R = k[x,y,z,w] take the three quadrics x^2+yw, y^2+zw, z^2+xw, let
I be the ideal they generate plus m^3, and let J add w^3 to the
quadrics.  Then J is a minimal reduction of I with reduction number
one, core(I) = J^2 : I = I^2, while core(m^2) = m^5.  Since I sits
inside m^2 but I^2 contains degree-four elements that m^5 cannot,
core(I) is not contained in core(m^2).  Each statement is verified
here from scratch, over exact rationals by default or over a prime
field as a flagged fast surrogate.

The engine cannot check integral closedness of I (no integral-closure
algorithm is in scope); reports carry it as an assumed hypothesis.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import core_via_colon, explicit_reduction, random_minimal_reduction
from .errors import EngineError
from .groebner import Ideal, ideal_contains, ideal_equal
from .ideal_ops import ci_is_radical, ideal_power, ideal_sum, maximal_ideal_power
from .rings import RingContext, ring

QUADRICS = ("x^2+y*w", "y^2+z*w", "z^2+x*w")
REDUCTION_EXTRA = "w^3"
ASSUMED_HYPOTHESES = ("the base ideal is integrally closed (delegated; "
                      "no integral-closure algorithm is implemented)",)

CHECK_NAMES = (
    "quadrics-radical-complete-intersection",
    "reduction-verified-r1",
    "core-equals-colon-equals-square",
    "core-of-square-of-maximal-ideal",
    "ideal-inside-m2",
    "containment-of-cores-fails",
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def build_ring(char: int = 0) -> RingContext:
    return ring("x,y,z,w", char=char)


def build_instance(ring_ctx: RingContext, tamper: bool = False) -> dict:
    """All the named ideals of the instance, in the given ring."""
    quadrics = tuple(ring_ctx.parse(text) for text in QUADRICS)
    extra = ring_ctx.parse("w^2" if tamper else REDUCTION_EXTRA)
    quadric_ideal = Ideal(ring_ctx, quadrics)
    m2 = maximal_ideal_power(ring_ctx, 2)
    m3 = maximal_ideal_power(ring_ctx, 3)
    m5 = maximal_ideal_power(ring_ctx, 5)
    base = ideal_sum(quadric_ideal, m3)
    return {
        "ring": ring_ctx,
        "quadric_ideal": quadric_ideal,
        "reduction_gens": quadrics + (extra,),
        "base": base,
        "m2": m2,
        "m5": m5,
    }


def run_checks(char: int = 0, seed: int = 1, cap: int = 10,
               tamper: bool = False):
    """Run the six verification checks; returns (results, artifacts).

    Checks that depend on an earlier failure are reported as failed
    with a "not run" detail rather than silently skipped.  The
    artifacts dict carries the computed reports for reuse (cross-check
    suites want the same cores without recomputing them).
    """
    ring_ctx = build_ring(char)
    inst = build_instance(ring_ctx, tamper=tamper)
    base = inst["base"]
    m2 = inst["m2"]
    m5 = inst["m5"]
    results = []
    artifacts: dict = {"instance": inst}

    check = ci_is_radical(inst["quadric_ideal"])
    results.append(CheckResult(
        CHECK_NAMES[0],
        check.is_radical and check.codimension == 3,
        f"codimension {check.codimension}, quotient dimension "
        f"{check.quotient_dimension}, singular locus dimension "
        f"{check.singular_locus_dimension}"))

    cert = None
    try:
        cert = explicit_reduction(base, inst["reduction_gens"], cap=cap)
        passed = cert.reduction_number == 1
        detail = f"reduction number {cert.reduction_number}"
    except (EngineError, ValueError) as exc:
        passed, detail = False, str(exc)
    results.append(CheckResult(CHECK_NAMES[1], passed, detail))
    artifacts["certificate"] = cert

    base_square = ideal_power(base, 2)
    artifacts["base_square"] = base_square
    if cert is None:
        results.append(CheckResult(CHECK_NAMES[2], False,
                                   "not run (reduction check failed)"))
        core_report = None
    else:
        try:
            core_report = core_via_colon(cert)
            passed = ideal_equal(core_report.core, base_square)
            detail = (f"colon has {len(core_report.core.groebner_basis())} "
                      f"basis elements; equals the square: {passed}")
        except EngineError as exc:
            core_report, passed, detail = None, False, str(exc)
        results.append(CheckResult(CHECK_NAMES[2], passed, detail))
    artifacts["core_report"] = core_report

    try:
        m2_cert = random_minimal_reduction(m2, seed, cap=cap)
        m2_report = core_via_colon(m2_cert)
        passed = ideal_equal(m2_report.core, m5)
        detail = (f"reduction number {m2_cert.reduction_number}; "
                  f"core equals the fifth power of m: {passed}")
    except EngineError as exc:
        m2_report, passed, detail = None, False, str(exc)
    results.append(CheckResult(CHECK_NAMES[3], passed, detail))
    artifacts["m2_report"] = m2_report

    inside = ideal_contains(m2, base)
    results.append(CheckResult(CHECK_NAMES[4], inside,
                               f"every generator lies in m^2: {inside}"))

    square_outside = not ideal_contains(m5, base_square)
    witness = next((g for g in base_square.generators
                    if g.degree() is not None and g.degree() < 5), None)
    results.append(CheckResult(
        CHECK_NAMES[5], square_outside,
        f"the square escapes m^5: {square_outside}"
        + (f" (degree-{witness.degree()} witness {witness})" if witness else "")))

    return results, artifacts
