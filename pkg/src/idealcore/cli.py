"""Command-line front door.

Subcommands: gb, core, verify-counterexample, check-conjecture,
deeper-core.  Ideal files are UTF-8 text with one generator per line;
'#' starts a comment and blank lines are ignored.  Exit codes: 0 all
checks passed / success, 1 a mathematical verification failed, 2 usage
or parse error, 3 a computational cap was hit (retry or reduction-number
limit).  JSON reports have the fixed top-level key order command, ring,
input_ideals, result, checks, seed, version; with --no-timings the
output is byte-identical across runs with the same command and seed.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .core import CoreReport, core, deeper_core_sample, explicit_reduction, core_via_colon
from .counterexample import ASSUMED_HYPOTHESES, build_ring, run_checks
from .errors import (EngineError, HomogeneityError, NotMPrimaryError,
                     ParseError, ReductionSearchError)
from .formulas import (build_conjecture_ideal, conjecture_ring,
                       conjectured_core, conjectured_core_exponents,
                       d1_closed_form_exponents, explicit_counterexample_forms)
from .groebner import Ideal, buchberger, ideal_contains, ideal_equal
from .orders import DEGREVLEX, LEX
from .rings import RingContext, ring

_ORDERS = {"degrevlex": DEGREVLEX, "lex": LEX}

VERDICT_EQUAL = "EQUAL"
VERDICT_ENGINE_SMALLER = "ENGINE_PROPER_SUBSET_OF_PREDICTION"
VERDICT_PREDICTION_SMALLER = "PREDICTION_PROPER_SUBSET_OF_ENGINE"
VERDICT_INCOMPARABLE = "INCOMPARABLE"


class UsageError(Exception):
    pass


def _ring_from_args(args) -> RingContext:
    if not args.ring:
        raise UsageError("--ring is required for this command")
    try:
        return ring(args.ring, char=args.char, order=_ORDERS[args.order])
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def load_ideal_file(path: str, ring_ctx: RingContext) -> Ideal:
    """Parse an ideal file: one generator per line, '#' comments."""
    gens = []
    try:
        with open(path, encoding="utf-8") as handle:
            for lineno, raw in enumerate(handle, start=1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                try:
                    gens.append(ring_ctx.parse(line))
                except ParseError as exc:
                    raise UsageError(
                        f"{path}:{lineno}: {exc.message} "
                        f"(at position {exc.position})") from exc
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    if not gens:
        raise UsageError(f"{path}: no generators found")
    try:
        return Ideal(ring_ctx, gens)
    except HomogeneityError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _ring_json(ring_ctx: RingContext) -> dict:
    return {"vars": list(ring_ctx.variables),
            "char": ring_ctx.field.char,
            "order": str(ring_ctx.order)}


def _ideal_json(name: str, ideal: Ideal) -> dict:
    return {"name": name, "generators": [str(g) for g in ideal.generators]}


def _gb_strings(ideal: Ideal) -> list:
    return [str(g) for g in ideal.groebner_basis().elements]


def _report(command: str, ring_ctx: RingContext, input_ideals: list,
            result: dict, checks: dict, seed) -> dict:
    return {
        "command": command,
        "ring": _ring_json(ring_ctx),
        "input_ideals": input_ideals,
        "result": result,
        "checks": checks,
        "seed": seed,
        "version": __version__,
    }


def _core_result_json(report: CoreReport, with_timings: bool) -> dict:
    reductions = []
    for cert in report.reductions:
        reductions.append({
            "provenance": cert.provenance,
            "seed": cert.seed,
            "reduction_number": cert.reduction_number,
            "generators": [str(g) for g in cert.reduction.generators],
            "coefficients": [list(row) for row in cert.coefficients],
        })
    first, second = report.stabilization_pair
    result = {
        "core": _gb_strings(report.core),
        "reduction_number": report.certificate.reduction_number,
        "reductions": reductions,
        "stabilization": {
            "colon_at_r": _gb_strings(first),
            "colon_at_r_plus_1": _gb_strings(second),
            "equal": True,
        },
        "core_inside_ideal": report.core_in_ideal,
        "core_inside_reductions": list(report.core_in_reductions),
        "samples_agree": report.samples_agree,
        "core_m_primary_level": report.core_m_primary_level,
        "gb_runs": len(report.gb_stats),
        "gb_pairs": sum(s.pairs for s in report.gb_stats),
        "gb_max_degree": max((s.max_degree for s in report.gb_stats), default=0),
        "field_note": report.field_note,
    }
    if with_timings:
        result["timings"] = {"seconds": report.seconds}
    return result


def _emit(args, report: dict, text_lines: list):
    if args.output == "json":
        print(json.dumps(report, indent=2))
    else:
        for line in text_lines:
            print(line)


# -- subcommands -----------------------------------------------------

def _cmd_gb(args) -> int:
    ring_ctx = _ring_from_args(args)
    ideal = load_ideal_file(args.ideal_file, ring_ctx)
    started = time.perf_counter()
    basis = buchberger(ideal.generators, ring_ctx.order)
    seconds = time.perf_counter() - started
    result = {
        "basis": [str(g) for g in basis.elements],
        "stats": {"size": basis.stats.size, "pairs": basis.stats.pairs,
                  "max_degree": basis.stats.max_degree},
    }
    if not args.no_timings:
        result["timings"] = {"seconds": seconds}
    report = _report("gb", ring_ctx, [_ideal_json("input", ideal)], result,
                     {}, None)
    lines = [f"reduced basis ({len(basis.elements)} elements):"]
    lines += [f"  {g}" for g in basis.elements]
    _emit(args, report, lines)
    return 0


def _cmd_core(args) -> int:
    ring_ctx = _ring_from_args(args)
    ideal = load_ideal_file(args.ideal_file, ring_ctx)
    if args.reduction_file:
        reduction = load_ideal_file(args.reduction_file, ring_ctx)
        try:
            cert = explicit_reduction(ideal, reduction.generators,
                                      cap=args.max_reduction_number)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        report = core_via_colon(cert)
    else:
        report = core(ideal, args.seed, samples=args.samples,
                      cap=args.max_reduction_number)
    result = _core_result_json(report, not args.no_timings)
    json_report = _report("core", ring_ctx, [_ideal_json("input", ideal)],
                          result, {}, args.seed)
    lines = [f"core ({len(report.core.groebner_basis())} basis elements, "
             f"reduction number {report.certificate.reduction_number}, "
             f"{report.field_note}):"]
    lines += [f"  {g}" for g in report.core.groebner_basis().elements]
    _emit(args, json_report, lines)
    return 0


def _cmd_verify(args) -> int:
    results, _ = run_checks(char=args.char, seed=args.seed,
                            cap=args.max_reduction_number, tamper=args.tamper)
    all_passed = all(r.passed for r in results)
    checks = {r.name: {"pass": r.passed, "evidence": r.detail} for r in results}
    ring_ctx = build_ring(args.char)
    note = "exact rationals" if args.char == 0 else f"mod-{args.char} surrogate"
    result = {"all_passed": all_passed, "field_note": note,
              "assumed_hypotheses": list(ASSUMED_HYPOTHESES)}
    report = _report("verify-counterexample", ring_ctx, [], result, checks,
                     args.seed)
    lines = [f"counterexample verification over "
             f"{'QQ' if args.char == 0 else f'F_{args.char}'}"]
    for r in results:
        lines.append(f"  {'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}")
    if not all_passed:
        first = next(r for r in results if not r.passed)
        lines.append(f"first failing check: {first.name}")
    lines.append(f"assumed hypothesis: {ASSUMED_HYPOTHESES[0]}")
    _emit(args, report, lines)
    return 0 if all_passed else 1


def _compare_ideals(engine: Ideal, predicted: Ideal) -> str:
    if ideal_equal(engine, predicted):
        return VERDICT_EQUAL
    engine_inside = ideal_contains(predicted, engine)
    predicted_inside = ideal_contains(engine, predicted)
    if engine_inside:
        return VERDICT_ENGINE_SMALLER
    if predicted_inside:
        return VERDICT_PREDICTION_SMALLER
    return VERDICT_INCOMPARABLE


def _cmd_conjecture(args) -> int:
    n, s, d = args.n, args.s, args.d
    try:
        a, b = conjectured_core_exponents(n, s, d)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    forms = None
    if args.paper_forms:
        if (n, s, d) != (4, 3, 2):
            raise UsageError("--paper-forms only fits (n, s, d) = (4, 3, 2)")
        forms = explicit_counterexample_forms(conjecture_ring(n, args.char))
    ideal, used_forms = build_conjecture_ideal(n, s, d, args.seed,
                                               char=args.char, forms=forms)
    ring_ctx = ideal.ring
    engine_report = core(ideal, args.seed, samples=args.samples,
                         cap=args.max_reduction_number)
    predicted = conjectured_core(n, s, d, ideal)
    verdict = _compare_ideals(engine_report.core, predicted)
    theorem_backed = d == 1
    failed = theorem_backed and verdict != VERDICT_EQUAL
    if theorem_backed:
        assert (a, b) == d1_closed_form_exponents(n, s)
    result = {
        "params": {"n": n, "s": s, "d": d, "a": a, "b": b},
        "forms": [str(f) for f in used_forms],
        "forms_explicit": bool(args.paper_forms),
        "verdict": verdict,
        "theorem_backed": theorem_backed,
        "engine_core": _gb_strings(engine_report.core),
        "predicted_core": _gb_strings(predicted),
        "reduction_number": engine_report.certificate.reduction_number,
        "field_note": engine_report.field_note,
    }
    if not args.no_timings:
        result["timings"] = {"seconds": engine_report.seconds}
    checks = {"prediction-matches-engine":
              {"pass": verdict == VERDICT_EQUAL,
               "evidence": f"verdict {verdict}"
               + ("; failure contradicts the proved d=1 case" if failed else "")}}
    report = _report("check-conjecture", ring_ctx,
                     [_ideal_json("input", ideal)], result, checks, args.seed)
    lines = [f"instance (n={n}, s={s}, d={d}): predicted core = m^{a} * I^{b}",
             f"verdict: {verdict}"
             + (" [FAILURE: this case is theorem-backed]" if failed else "")]
    _emit(args, report, lines)
    return 1 if failed else 0


def _cmd_deeper(args) -> int:
    ring_ctx = _ring_from_args(args)
    ideal = load_ideal_file(args.ideal_file, ring_ctx)
    members = [load_ideal_file(path, ring_ctx) for path in args.family_files]
    try:
        report = deeper_core_sample(ideal, members, args.seed,
                                    samples=args.samples,
                                    cap=args.max_reduction_number)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    result = {
        "intersection": _gb_strings(report.intersection),
        "base_core": _gb_strings(report.base_report.core),
        "members": [{"file": path, "core": _gb_strings(rep.core)}
                    for path, rep in zip(args.family_files,
                                         report.member_reports)],
    }
    json_report = _report("deeper-core", ring_ctx,
                          [_ideal_json("input", ideal)]
                          + [_ideal_json(path, member)
                             for path, member in zip(args.family_files, members)],
                          result, {}, args.seed)
    lines = [f"deeper-core sample over {len(members)} family members:"]
    lines += [f"  {g}" for g in report.intersection.groebner_basis().elements]
    _emit(args, json_report, lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="idealcore",
        description="exact engine for cores of m-primary homogeneous ideals")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_ring=True):
        if with_ring:
            p.add_argument("--ring", help="comma-separated variable names")
        p.add_argument("--char", type=int, default=0,
                       help="coefficient field: 0 for QQ or a prime > 198")
        p.add_argument("--order", choices=("degrevlex", "lex"),
                       default="degrevlex")
        p.add_argument("--seed", type=int, default=1)
        p.add_argument("--samples", type=int, default=3)
        p.add_argument("--max-reduction-number", type=int, default=10)
        p.add_argument("--output", choices=("text", "json"), default="text")
        p.add_argument("--no-timings", action="store_true",
                       help="omit wall-clock fields (deterministic output)")

    p = sub.add_parser("gb", help="print the reduced basis of an ideal file")
    common(p)
    p.add_argument("ideal_file")
    p.set_defaults(func=_cmd_gb)

    p = sub.add_parser("core", help="core of an m-primary homogeneous ideal")
    common(p)
    p.add_argument("ideal_file")
    p.add_argument("--reduction-file",
                   help="verify this explicit reduction instead of sampling")
    p.set_defaults(func=_cmd_core)

    p = sub.add_parser("verify-counterexample",
                       help="run the six built-in verification checks")
    common(p, with_ring=False)
    p.add_argument("--tamper", action="store_true",
                   help="test hook: corrupt the built-in reduction (w^3 -> w^2)")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("check-conjecture",
                       help="compare the engine core with m^a * I^b")
    common(p, with_ring=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--paper-forms", action="store_true",
                   help="use the fixed counterexample quadrics (needs 4,3,2)")
    p.set_defaults(func=_cmd_conjecture)

    p = sub.add_parser("deeper-core",
                       help="intersect cores over a finite family of ideals")
    common(p)
    p.add_argument("ideal_file")
    p.add_argument("family_files", nargs="*")
    p.set_defaults(func=_cmd_deeper)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.char != 0:
        try:
            build_ring(args.char)  # validates primality and size early
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ReductionSearchError as exc:
        print(f"computational limit: {exc}", file=sys.stderr)
        return 3
    except NotMPrimaryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except EngineError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
