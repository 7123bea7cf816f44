"""Command line entry point: ``pvs run``, ``pvs audit-privacy``, ``pvs selftest``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import PVSError
from .scenario import EXIT_CONFIG, EXIT_MISMATCH, EXIT_OK, run_scenario


def _u64(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pvs", description="Private voting by secret sharing: simulator and audits.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="run a scenario file")
    run.add_argument("--config", required=True, help="scenario JSON file")
    run.add_argument("--transcript", help="where to write the JSONL transcript")
    run.add_argument("--seed", type=_u64, help="overrides the scenario seed and PVS_SEED")

    audit = sub.add_parser("audit-privacy", help="exhaustive privacy audit")
    src = audit.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", choices=["tiny"])
    src.add_argument("--config", help="audit JSON file")
    audit.add_argument("--zero-masking", action="store_true",
                       help="sanity mutation: replace mask randomness by zeros")

    sub.add_parser("selftest", help="run the built-in invariant suites")
    return parser


def _audit_from_file(path: str, zero_masking: bool):
    from .privacy import audit_privacy
    from .protocol import ElectionConfig

    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        cfg = ElectionConfig.make(data["n_voters"], data["threshold"], data.get("n_candidates", 1),
                                  modulus=data["field_modulus"])
        return [audit_privacy(cfg, data["adversary"], data["assignments"],
                              zero_masking=zero_masking or bool(data.get("zero_masking", False)))]
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise PVSError(f"cannot read audit config {path}: {exc}") from None


def cmd_audit(args) -> int:
    from .privacy import audit_tiny

    if args.preset:
        reports = audit_tiny(zero_masking=args.zero_masking)
    else:
        reports = _audit_from_file(args.config, args.zero_masking)
    for report in reports:
        print(report.to_text())
        print()
    ok = all(r.indistinguishable for r in reports)
    print("overall:", "Indistinguishable" if ok else "Distinguishable")
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_selftest(_args) -> int:
    from .selftest import selftest

    results = selftest()
    for r in results:
        print(r.line())
    return EXIT_OK if all(r.passed for r in results) else EXIT_MISMATCH


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            outcome = run_scenario(args.config, args.transcript, args.seed)
            stream = sys.stdout if outcome.status == EXIT_OK else sys.stderr
            for line in outcome.messages:
                print(line, file=stream)
            return outcome.status
        if args.command == "audit-privacy":
            return cmd_audit(args)
        return cmd_selftest(args)
    except PVSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
