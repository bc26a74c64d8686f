"""Command-line entry point.

Subcommands: simulate, spectrum, constraints, converge, entropy-scan,
validate.  All take --config PATH; the runners also take --out DIR,
--strict and --threads N.  Exit codes: 0 success, 2 config/schema
violation, 3 physics precondition failure at run time.
"""

from __future__ import annotations

import argparse
import sys

from .runner import ConfigError, PhysicsError, load_config, run, validate

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_PHYSICS = 3

RUN_COMMANDS = ("simulate", "spectrum", "constraints", "converge", "entropy-scan")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twistwalk",
        description="Twisted quantum walk simulator and continuum-limit lab",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name in RUN_COMMANDS:
        p = sub.add_parser(name, help=f"run a {name} experiment")
        p.add_argument("--config", required=True, help="JSON experiment config")
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument(
            "--strict",
            action="store_true",
            help="escalate lattice-wrap warnings to errors",
        )
        p.add_argument("--threads", type=int, default=1, help="sweep thread count")

    v = sub.add_parser("validate", help="check a config without running it")
    v.add_argument("--config", required=True, help="JSON experiment config")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        raw = load_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    if args.command == "validate":
        diags = validate(raw)
        for d in diags:
            print(d)
        if not diags:
            print("ok")
        return EXIT_CONFIG if any(d.startswith("error:") for d in diags) else EXIT_OK

    # The subcommand must agree with the config's experiment field; fill
    # it in when absent so minimal configs stay minimal.
    raw.setdefault("experiment", args.command)
    if raw["experiment"] != args.command:
        print(
            f"config error: experiment {raw['experiment']!r} does not match "
            f"subcommand {args.command!r}",
            file=sys.stderr,
        )
        return EXIT_CONFIG

    try:
        manifest = run(raw, args.out, strict=args.strict, threads=args.threads)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PhysicsError as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_PHYSICS

    for name in manifest.outputs:
        print(f"wrote {args.out}/{name}")
    print(f"wrote {args.out}/manifest.json")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
