"""Command-line interface.

Subcommands: generate, verify, compute-pi, bench, solve-second.

Exit codes (scriptable, one per error class):
  0  success
  2  usage error
  3  record/sidecar parse or integrity failure
  4  exact verification failed (or not exactly verifiable)
  5  precision exhausted (includes ambiguous rounding and cancellation)
  6  degenerate second term
  7  stored digit counts disagree with the stored value
  8  rounding residual too large for the requested denominator policy

MACHINPI_DIR, when set, is the default directory for records and reports.
Primary outputs are byte-deterministic; timing goes to stderr only.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .analysis import (
    KNOWN_DIGITS_PER_TERM,
    measure_convergence,
    predict_rate,
    validated_pi_reference,
)
from .errors import (
    AmbiguousRounding,
    DegenerateSecondTerm,
    DigitCountMismatch,
    DivisorStraddlesZero,
    EpsilonTooLarge,
    NegativeOperand,
    NotExactlyVerifiable,
    PrecisionExhausted,
    RecordParseError,
    UnverifiedFormula,
)
from .exact import format_decimal_head, parse_rational
from .machin import MachinFormula, solve_second_term, solve_u2, verify_formula
from .radicals import eval_radicals, select_u1
from .records import build_record, check_record, load_record, write_record
from .series import (
    digits_per_term,
    pi_digits_from_formula,
    pi_digits_from_radicals,
    pi_from_formula,
    pi_from_radicals,
    scale_for_digits,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_VERIFICATION = 4
EXIT_PRECISION = 5
EXIT_DEGENERATE = 6
EXIT_DIGIT_COUNT = 7
EXIT_EPSILON = 8

_EXIT_BY_ERROR = (
    (RecordParseError, EXIT_PARSE),
    ((UnverifiedFormula, NotExactlyVerifiable), EXIT_VERIFICATION),
    (
        (PrecisionExhausted, AmbiguousRounding, NegativeOperand, DivisorStraddlesZero),
        EXIT_PRECISION,
    ),
    (DegenerateSecondTerm, EXIT_DEGENERATE),
    (DigitCountMismatch, EXIT_DIGIT_COUNT),
    (EpsilonTooLarge, EXIT_EPSILON),
)


def _work_dir() -> Path:
    return Path(os.environ.get("MACHINPI_DIR", "."))


# Tower digits requested before selection: enough for the 20-digit
# residual display plus slack.
_SELECTION_DIGITS = 26


def generate_record(k: int, denominator: int, rounding: str):
    """Full pipeline: tower -> rational rounding -> exact second term ->
    exact verification.  Returns (record, selection)."""
    digits = _SELECTION_DIGITS
    for _ in range(4):
        state = eval_radicals(k, digits)
        selection = select_u1(state, denominator, rounding)
        eps_text, ok = selection.epsilon.to_decimal(20)
        if ok:
            break
        digits += 8
    else:
        raise PrecisionExhausted("could not pin 20 digits of the residual")
    u2 = solve_u2(selection.u1, k)
    verified = bool(verify_formula(MachinFormula.two_term(k, selection.u1, u2)))
    record = build_record(
        k=k,
        denominator_policy=denominator,
        rounding=rounding,
        u1=selection.u1,
        epsilon_decimal=eps_text,
        u2=u2,
        verified=verified,
        predicted_rate=predict_rate(selection.u1),
    )
    return record, selection


def _cmd_generate(args) -> int:
    record, _ = generate_record(args.k, args.den, args.round)
    out = Path(args.out) if args.out else _work_dir() / f"formula_k{args.k}.json"
    write_record(record, out)
    num, den = record.u2_digit_counts
    print(f"k = {record.k}  (denominator policy {record.denominator_policy}, "
          f"{record.rounding} rounding)")
    print(f"u1 = {record.u1}")
    print(f"eps = {record.epsilon_decimal}")
    print(f"u2 ~ {record.u2_decimal_head}  ({num}/{den} digits)")
    print(f"verified = {str(record.verified).lower()}")
    print(f"predicted digits/term = {record.predicted_rate:.4f}")
    print(f"record written to {out}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    record = load_record(args.record)
    check_record(record)
    print(f"{args.record}: verified exactly; digit counts match")
    return EXIT_OK


def _cmd_compute_pi(args) -> int:
    if (args.formula is None) == (args.k is None):
        raise ValueError("exactly one of --formula or --k is required")
    if (args.digits is None) == (args.terms is None):
        raise ValueError("exactly one of --digits or --terms is required")
    if args.digits is not None and args.digits < 1:
        raise ValueError("--digits must be at least 1")
    if args.terms is not None and args.terms < 1:
        raise ValueError("--terms must be at least 1")

    if args.formula is not None:
        record = load_record(args.formula)
        formula = record.formula()
        rate = min(digits_per_term(beta) for _, beta in formula.terms)
        if args.digits is not None:
            text, result = pi_digits_from_formula(
                formula, args.digits, assume_verified=record.verified
            )
        else:
            scale = scale_for_digits(int(rate * args.terms) + 16)
            result = pi_from_formula(
                formula, args.terms, scale, assume_verified=record.verified
            )
            limit = int(rate * args.terms) + 10
            text, _ = result.value.to_decimal(
                max(1, result.value.valid_decimal_digits(limit))
            )
    else:
        if args.digits is not None:
            text, result = pi_digits_from_radicals(args.k, args.digits)
        else:
            probe = pi_from_radicals(args.k, 1, 64)
            rate = max(probe.per_term_log10, 1.0)
            scale = scale_for_digits(int(rate * args.terms) + 16)
            result = pi_from_radicals(args.k, args.terms, scale)
            limit = int(rate * args.terms) + 10
            text, _ = result.value.to_decimal(
                max(1, result.value.valid_decimal_digits(limit))
            )

    print(text)
    if args.out:
        Path(args.out).write_text(text + "\n")
    print(
        f"terms used: {result.terms_used}; measured digits/term: "
        f"{result.per_term_log10:.3f}",
        file=sys.stderr,
    )
    return EXIT_OK


def _bench_formula(k: int):
    """Record for one depth, easing the denominator when the integer grid
    puts the rounding residual over the smallness limit."""
    for denominator in (1, 10, 100):
        try:
            record, _ = generate_record(k, denominator, "nearest")
            return record
        except EpsilonTooLarge:
            continue
    raise EpsilonTooLarge(f"no workable denominator policy for k = {k}")


def _cmd_bench(args) -> int:
    ks = [int(part) for part in args.k.split(",") if part]
    if not ks:
        raise ValueError("--k needs at least one depth")
    records = [_bench_formula(k) for k in ks]
    ceiling = max(
        int(r.predicted_rate * (args.max_terms + 1)) + 8 for r in records
    )
    reference = validated_pi_reference(ceiling + 4)
    reports = []
    for record in records:
        report = measure_convergence(
            record.formula(),
            args.max_terms,
            reference,
            reference_rate=KNOWN_DIGITS_PER_TERM.get(record.k),
        )
        reports.append(report)
        print(
            f"k={record.k}: {report.wall_time_per_term * 1e3:.3f} ms/term",
            file=sys.stderr,
        )

    out_dir = Path(args.out) if args.out else _work_dir()
    out_dir.mkdir(parents=True, exist_ok=True)
    payload = {
        "schema_version": 1,
        "max_terms": args.max_terms,
        "reports": [
            {
                "k": rep.k,
                "u1": {
                    "num": str(rep.u1.numerator),
                    "den": str(rep.u1.denominator),
                },
                # one sample cannot define a slope; store null, not NaN
                "measured_digits_per_term": (
                    None
                    if rep.measured_digits_per_term != rep.measured_digits_per_term
                    else rep.measured_digits_per_term
                ),
                "predicted_digits_per_term": rep.predicted_digits_per_term,
                "reference_rate": rep.reference_rate,
                "samples": [list(s) for s in rep.samples],
                "rate_within_band": rep.rate_within_band,
            }
            for rep in reports
        ],
    }
    json_path = out_dir / "bench_report.json"
    json_path.write_text(json.dumps(payload, indent=2) + "\n")

    lines = [
        f"{'k':>4s} {'u1':>14s} {'measured':>10s} {'predicted':>10s} {'published':>10s}"
    ]
    for rep in reports:
        published = "-" if rep.reference_rate is None else str(rep.reference_rate)
        lines.append(
            f"{rep.k or 0:4d} {str(rep.u1):>14s} "
            f"{rep.measured_digits_per_term:10.3f} "
            f"{rep.predicted_digits_per_term:10.3f} {published:>10s}"
        )
    table = "\n".join(lines) + "\n"
    (out_dir / "bench_report.txt").write_text(table)
    print(table, end="")
    print(f"reports written to {json_path} and {out_dir / 'bench_report.txt'}")
    return EXIT_OK


def _cmd_solve_second(args) -> int:
    beta1 = parse_rational(args.beta1)
    beta2 = solve_second_term(args.alpha1, beta1)
    print(f"beta2 = {beta2.numerator}/{beta2.denominator}")
    print(f"      ~ {format_decimal_head(beta2)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="machinpi",
        description="Generate, verify, and benchmark two-term arctangent "
        "formulas for pi, and compute pi digits from them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="build and verify a formula at depth k")
    p.add_argument("k", type=int)
    p.add_argument("--den", type=int, default=1,
                   help="round the tower value to multiples of 1/DEN (default 1)")
    p.add_argument("--round", choices=("nearest", "floor"), default="nearest")
    p.add_argument("--out", help="record path (default formula_k<k>.json)")
    p.set_defaults(fn=_cmd_generate)

    p = sub.add_parser("verify", help="re-verify a stored record exactly")
    p.add_argument("record")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("compute-pi", help="compute pi digits")
    p.add_argument("--formula", help="formula record to evaluate")
    p.add_argument("--k", type=int, help="evaluate the depth-k tower instead")
    p.add_argument("--digits", type=int, help="validated digit target")
    p.add_argument("--terms", type=int, help="fixed term budget")
    p.add_argument("--out", help="also write the digits to this file")
    p.set_defaults(fn=_cmd_compute_pi)

    p = sub.add_parser("bench", help="measure digits-per-term convergence")
    p.add_argument("--k", required=True, help="comma-separated depths")
    p.add_argument("--max-terms", type=int, default=20)
    p.add_argument("--out", help="report directory (default MACHINPI_DIR or .)")
    p.set_defaults(fn=_cmd_bench)

    p = sub.add_parser("solve-second",
                       help="exact second argument for a given first term")
    p.add_argument("--alpha1", type=int, required=True)
    p.add_argument("--beta1", required=True, help="rational, e.g. 5 or 24/10")
    p.set_defaults(fn=_cmd_solve_second)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001 - mapped to exit codes below
        for classes, code in _EXIT_BY_ERROR:
            if isinstance(exc, classes):
                print(f"error: {exc}", file=sys.stderr)
                return code
        raise


if __name__ == "__main__":
    raise SystemExit(main())
