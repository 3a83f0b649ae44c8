"""Command-line entry point.

    mashgrip simulate scenario.json [--out log.json]
    mashgrip characterize {brake_force,brake_response,extension,aperture,stiffness} [--config cfg.json] [--out table.csv]
    mashgrip calibrate problem.json [--out params.json]
    mashgrip validate scenario.json

Exit status: 0 success, 1 validation error, 2 numeric error, 3 run ended
in Timeout or Abort.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import DomainError, NumericError, RangeError, ValidationError
from .harness.calibrate import calibrate, load_problem
from .harness.characterize import KINDS, characterize
from .harness.scenario import load_scenario
from .harness.simulate import run_scenario

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC, EXIT_TERMINAL = 0, 1, 2, 3


def _emit(text, out):
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def cmd_simulate(args):
    log = run_scenario(load_scenario(args.scenario))
    _emit(log.to_json(), args.out)
    print(f"{log.name or args.scenario}: {log.terminal} (final grip: {log.final_status})", file=sys.stderr)
    return EXIT_OK if log.terminal == "Completed" else EXIT_TERMINAL


def cmd_characterize(args):
    config = {}
    if args.config:
        try:
            config = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"{args.config}: {exc}") from None
    _emit(characterize(args.kind, config).to_csv(), args.out)
    return EXIT_OK


def cmd_calibrate(args):
    result = calibrate(load_problem(args.problem))
    _emit(json.dumps(result.to_dict(), indent=2, sort_keys=True), args.out)
    return EXIT_OK


def cmd_validate(args):
    s = load_scenario(args.scenario)
    print(f"{args.scenario}: ok ({s.strategy}, {len(s.objects)} object(s))")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="mashgrip", description="Soft MASH gripper simulator and calibration tools")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run a scenario and write its JSON log")
    p.add_argument("scenario")
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("characterize", help="emit a characterisation sweep as CSV")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("--config")
    p.add_argument("--out")
    p.set_defaults(func=cmd_characterize)

    p = sub.add_parser("calibrate", help="fit model parameters to a dataset")
    p.add_argument("problem")
    p.add_argument("--out")
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("validate", help="check a scenario file")
    p.add_argument("scenario")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        for problem in exc.problems:
            print(f"error: {problem}", file=sys.stderr)
        return EXIT_INVALID
    except (DomainError, RangeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NumericError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
