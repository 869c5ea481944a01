"""Command-line front end.

Two subcommands: `characterize` reads a config document and emits a full
report; `verify` replays the randomized identity checks.  Exit codes: 0 on
success, 2 for validation problems, 3 when a computed check fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .report import (
    KNOWN_FAULTS,
    characterize_family,
    render_json,
    render_text,
    report_failed,
)
from .verify import run_verify

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_CHECK_FAILED = 3


class ConfigError(ValueError):
    pass


def parse_rational(value: object, position: int) -> Fraction:
    if isinstance(value, bool):
        raise ConfigError(f"lambda[{position}]: expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(
                f"lambda[{position}]: cannot parse {value!r} as a rational: {exc}"
            ) from None
    raise ConfigError(
        f"lambda[{position}]: expected a rational string or integer, got {type(value).__name__}"
    )


def parse_config(raw: str) -> tuple[int, list[Fraction], str | None]:
    """Validate a characterize config document: n, 4n rationals, format."""
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")

    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ConfigError("n must be a positive integer")

    mode = doc.get("mode", "characterize")
    if mode != "characterize":
        raise ConfigError(f"config mode must be 'characterize', got {mode!r}")

    lam_raw = doc.get("lambda")
    if not isinstance(lam_raw, list):
        raise ConfigError("lambda must be an array of rationals")
    if len(lam_raw) != 4 * n:
        raise ConfigError(f"expected {4 * n} parameters, got {len(lam_raw)}")
    lam = [parse_rational(value, i) for i, value in enumerate(lam_raw)]

    fmt = doc.get("format")
    if fmt is not None and fmt not in ("text", "json"):
        raise ConfigError(f"format must be 'text' or 'json', got {fmt!r}")
    return n, lam, fmt


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _cmd_characterize(args: argparse.Namespace) -> int:
    try:
        raw = _read_input(args.input)
    except OSError as exc:
        print(f"error: cannot read {args.input}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    try:
        n, lam, config_fmt = parse_config(raw)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION

    fmt = args.format or config_fmt or "text"
    report = characterize_family(n, lam, fault=args.inject_fault)
    rendered = render_json(report) if fmt == "json" else render_text(report)
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as handle:
                handle.write(rendered)
        except OSError as exc:
            print(f"error: cannot write {args.output}: {exc}", file=sys.stderr)
            return EXIT_VALIDATION
    else:
        sys.stdout.write(rendered)
    return EXIT_CHECK_FAILED if report_failed(report) else EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.n < 1:
        print("error: n must be a positive integer", file=sys.stderr)
        return EXIT_VALIDATION
    if args.trials < 1:
        print("error: trials must be at least 1", file=sys.stderr)
        return EXIT_VALIDATION
    if args.seed < 0:
        print("error: seed must be non-negative", file=sys.stderr)
        return EXIT_VALIDATION
    return run_verify(args.n, args.trials, args.seed, fault=args.inject_fault)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nordenlie",
        description="Construct and characterize the block Lie group family "
        "with Killing Norden metric.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ch = sub.add_parser("characterize", help="run the full pipeline on one member")
    ch.add_argument("--input", required=True, help="config file path, or - for stdin")
    ch.add_argument("--format", choices=("text", "json"), default=None)
    ch.add_argument("--output", default=None, help="write the report to a file")
    ch.add_argument(
        "--inject-fault",
        choices=KNOWN_FAULTS,
        default=None,
        help="testing hook: corrupt one computed component",
    )
    ch.set_defaults(func=_cmd_characterize)

    vf = sub.add_parser("verify", help="replay the randomized identity checks")
    vf.add_argument("--n", type=int, required=True, help="number of blocks")
    vf.add_argument("--trials", type=int, default=100)
    vf.add_argument("--seed", type=int, default=0)
    vf.add_argument(
        "--inject-fault",
        choices=KNOWN_FAULTS,
        default=None,
        help="testing hook: corrupt one computed component",
    )
    vf.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
