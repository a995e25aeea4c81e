"""Command-line front end: ``cqed run|validate|list-scenarios``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import ConfigError
from .scenarios import SCENARIOS, ScenarioError, parse_config, run_scenario

EXIT_OK, EXIT_RUNTIME, EXIT_INVALID = 0, 1, 2

EPILOG = """\
config format: UTF-8 text, one 'key = value' per line, '#' starts a comment.
The 'scenario' key selects the scenario; 'output_path' is optional (default:
the config path with a .csv suffix). Complex values use the a+bj literal form,
e.g. 'alpha = 3+0.5j'. Run 'list-scenarios' to see every scenario's keys.

exit codes: 0 success, 1 runtime failure, 2 invalid config.
"""


def _load(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ConfigError([f"cannot read config {path}: {exc}"]) from None
    return parse_config(text)


def _cmd_validate(args) -> int:
    cfg = _load(args.config)
    print(f"{args.config}: valid '{cfg.scenario}' config")
    return EXIT_OK


def _cmd_run(args) -> int:
    cfg = _load(args.config)
    out = args.output or cfg.output_path
    if out is None:
        out = Path(args.config).with_suffix(".csv")
    elif not Path(out).is_absolute() and args.output is None:
        out = Path(args.config).parent / out
    path = run_scenario(cfg, out)
    print(f"wrote {path}")
    return EXIT_OK


def _cmd_list(args) -> int:
    for name, schema in SCENARIOS.items():
        print(name)
        for key, p in schema.items():
            default = "required" if p.required else f"default {p.default!r}"
            print(f"  {key:<10} {p.kind:<8} {default:<22} {p.help}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cqed", description="Run cavity-QED scenarios and write CSV tables.",
                                     epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run a scenario config and write its CSV")
    run.add_argument("config")
    run.add_argument("-o", "--output", help="CSV path (overrides output_path in the config)")
    run.set_defaults(func=_cmd_run)
    val = sub.add_parser("validate", help="check a config without running it")
    val.add_argument("config")
    val.set_defaults(func=_cmd_validate)
    lst = sub.add_parser("list-scenarios", help="list scenarios and their parameters")
    lst.set_defaults(func=_cmd_list)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        for err in exc.errors:
            print(f"error: {err}", file=sys.stderr)
        return EXIT_INVALID
    except (ScenarioError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
