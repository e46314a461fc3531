"""Command line front end.

::

    hybridmat eval  FILE [--format json|text]
    hybridmat check FILE [--expect FILE] [--tolerance RAT] [--sweep RANGES]
    hybridmat fuzz  [--n N] [--seed S] [--max-dim D] [--replay SEED]

Exit codes: 0 success, 1 mismatch, 2 parse or validation error,
3 evaluation error.
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
from fractions import Fraction

from .errors import HybridMatError
from .instance import (
    InstanceError,
    dumps_instance,
    format_scalar,
    generate_instance,
    instance_from_dict,
    load_instance,
    matrix_from_json,
    matrix_to_json,
)
from .oracle import DiffReport, diff

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID, EXIT_EVAL = 0, 1, 2, 3


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _report_json(report: DiffReport) -> dict:
    first = None
    if report.first_mismatch is not None:
        i, j, e, a = report.first_mismatch
        first = {"i": i, "j": j, "expected": format_scalar(e), "actual": format_scalar(a)}
    return {
        "max_abs_diff": None if report.max_abs_diff is None else format_scalar(report.max_abs_diff),
        "mismatch_count": report.mismatch_count,
        "first_mismatch": first,
    }


def _format_text(M) -> str:
    cells = [[str(format_scalar(v)) for v in row] for row in M.tolist()]
    if not cells or not cells[0]:
        return f"<{M.shape[0]}x{M.shape[1]} matrix>"
    width = max(len(c) for row in cells for c in row)
    return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)


def parse_sweep(text: str) -> dict[str, range]:
    """``"q=0..5,r=0..3"`` to ``{"q": range(0, 6), "r": range(0, 4)}``."""
    out = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            name, span = part.split("=")
            lo, hi = span.split("..")
            out[name.strip()] = range(int(lo), int(hi) + 1)
        except ValueError:
            raise InstanceError(f"sweep ranges look like name=lo..hi, got {part!r}") from None
    if not out:
        raise InstanceError("empty sweep")
    return out


def _tolerance(text):
    if text is None:
        return None
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise InstanceError(f"bad tolerance {text!r}") from None


def cmd_eval(args, out, err) -> int:
    inst = load_instance(args.file)
    for problem in inst.problems():
        print(f"warning: {problem}", file=err)
    try:
        M = inst.evaluate()
    except (HybridMatError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_EVAL
    if args.format == "text":
        print(_format_text(M), file=out)
    else:
        print(_dump(matrix_to_json(M)), file=out)
    return EXIT_OK


def _check_one(inst, expected=None, tolerance=None) -> DiffReport:
    actual = inst.evaluate()
    if expected is None:
        expected = inst.oracle()
    return diff(expected, actual, tolerance)


def cmd_check(args, out, err) -> int:
    inst = load_instance(args.file)
    tolerance = _tolerance(args.tolerance)
    expected = None
    if args.expect:
        try:
            with open(args.expect) as fh:
                expected = matrix_from_json(json.load(fh))
        except (OSError, json.JSONDecodeError) as exc:
            raise InstanceError(f"cannot read expected matrix: {exc}") from None

    if args.sweep:
        ranges = parse_sweep(args.sweep)
        unknown = set(ranges) - set(inst.env) - inst.parameters()
        if unknown:
            raise InstanceError(f"sweep names unknown parameters: {', '.join(sorted(unknown))}")
        names = sorted(ranges)
        cases = skipped = failures = 0
        first_failure = None
        for values in itertools.product(*(ranges[k] for k in names)):
            case = inst.with_env(**dict(zip(names, values)))
            if case.problems():
                skipped += 1
                continue
            cases += 1
            try:
                report = _check_one(case, expected, tolerance)
                failed = not report.ok
                detail = _report_json(report)
            except HybridMatError as exc:
                failed, detail = True, {"error": str(exc)}
            if failed:
                failures += 1
                if first_failure is None:
                    first_failure = {"env": dict(case.env), **detail}
        print(
            _dump({"cases": cases, "skipped": skipped, "failures": failures, "first_failure": first_failure}),
            file=out,
        )
        return EXIT_OK if failures == 0 else EXIT_MISMATCH

    problems = inst.problems()
    if problems and expected is None:
        raise InstanceError("; ".join(problems))
    try:
        report = _check_one(inst, expected, tolerance)
    except (HybridMatError, ValueError) as exc:
        if isinstance(exc, InstanceError):
            raise
        print(f"error: {exc}", file=err)
        return EXIT_EVAL
    print(_dump(_report_json(report)), file=out)
    return EXIT_OK if report.ok else EXIT_MISMATCH


def fuzz_seeds(seed: int, n: int) -> list[int]:
    rng = random.Random(seed)
    return [rng.randrange(2**32) for _ in range(n)]


def run_fuzz(n: int, seed: int, max_dim: int):
    """Check ``n`` generated instances; return ``(checked, failing seed or None)``."""
    for k, inst_seed in enumerate(fuzz_seeds(seed, n)):
        inst = instance_from_dict(generate_instance(inst_seed, max_dim))
        try:
            ok = _check_one(inst).ok
        except HybridMatError:
            ok = False
        if not ok:
            return k + 1, inst_seed
    return n, None


def cmd_fuzz(args, out, err) -> int:
    if args.replay is not None:
        out.write(dumps_instance(generate_instance(args.replay, args.max_dim)))
        return EXIT_OK
    checked, failing = run_fuzz(args.n, args.seed, args.max_dim)
    if failing is not None:
        print(f"FAIL after {checked} instances: seed {failing} (replay with --replay {failing})", file=out)
        return EXIT_MISMATCH
    print(f"ok: {checked} instances", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hybridmat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate the hybrid construction of an instance")
    p.add_argument("file")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("check", help="compare the hybrid construction with the dense oracle")
    p.add_argument("file")
    p.add_argument("--expect", help="JSON matrix to compare against instead of the oracle")
    p.add_argument("--tolerance", help="absolute tolerance, float entries only")
    p.add_argument("--sweep", help="parameter ranges, e.g. q=0..5,r=0..5")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("fuzz", help="check randomly generated instances")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-dim", type=int, default=6)
    p.add_argument("--replay", type=int, help="print the instance generated from this seed and exit")
    p.set_defaults(func=cmd_fuzz)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out, err)
    except InstanceError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
