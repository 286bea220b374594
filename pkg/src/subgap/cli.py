"""Command line front end.

Three subcommands::

    subgap run <config.json> [--out DIR] [--seed N]
    subgap fig2 [--out DIR]
    subgap audit [--out DIR]

``run`` executes the experiment named in a strictly validated JSON config;
``fig2`` and ``audit`` are shortcuts for the two headline runs with their
built-in default configs.  The output directory is resolved in order from
``--out``, the config's ``outdir`` field, the ``SUBGAP_OUTDIR`` environment
variable, and finally ``./out``.  Exit status is 0 only when every check
in the run's report passed; config errors exit with status 2 and a
diagnostic naming the offending field.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import jsonschema

from .core import TimeGrid
from .errors import ConfigError
from .experiments import EXPERIMENTS, run_bounds_audit, run_fig2

__all__ = ["OUTDIR_ENV", "SCHEMAS", "validate_config", "resolve_outdir", "main"]

OUTDIR_ENV = "SUBGAP_OUTDIR"

_POSITIVE = {"type": "number", "exclusiveMinimum": 0}

_GRID_SCHEMA = {
    "type": "object",
    "properties": {
        "start": {"type": "number"},
        "step": _POSITIVE,
        "n": {"type": "integer", "minimum": 2, "multipleOf": 2},
    },
    "required": ["start", "step", "n"],
    "additionalProperties": False,
}

_COMMON = {
    "seed": {"type": "integer", "minimum": 0},
    "outdir": {"type": "string"},
    "grid": _GRID_SCHEMA,
}


def _schema(experiment: str, required, **props):
    return {
        "type": "object",
        "properties": {"experiment": {"const": experiment}, **_COMMON, **props},
        "required": ["experiment", *required],
        "additionalProperties": False,
    }


#: one strict schema per experiment kind; unknown keys are rejected
SCHEMAS = {
    "fig2": _schema(
        "fig2",
        ["W", "T_DS", "T_SN"],
        W=_POSITIVE,
        T_DS={"type": "array", "items": _POSITIVE, "minItems": 1},
        T_SN=_POSITIVE,
        k_max={"type": "integer", "minimum": 0},
    ),
    "bounds_audit": _schema(
        "bounds_audit",
        ["pairs"],
        pairs={
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "array",
                "items": _POSITIVE,
                "minItems": 2,
                "maxItems": 2,
            },
        },
    ),
    "recovery": _schema(
        "recovery",
        ["W", "T_DS"],
        W=_POSITIVE,
        T_DS=_POSITIVE,
        tol=_POSITIVE,
    ),
    "stability": _schema(
        "stability",
        ["W", "T_DS"],
        W=_POSITIVE,
        T_DS=_POSITIVE,
        sigmas={
            "type": "array",
            "items": {"type": "number", "minimum": 0},
            "minItems": 1,
        },
    ),
    "sampling": _schema(
        "sampling",
        ["W", "T_SN"],
        W=_POSITIVE,
        T_SN=_POSITIVE,
        k_max={"type": "integer", "minimum": 0},
    ),
    "quantum_pipeline": _schema(
        "quantum_pipeline",
        ["P", "X"],
        P=_POSITIVE,
        X=_POSITIVE,
        n_x={"type": "integer", "minimum": 1},
        n_t={"type": "integer", "minimum": 1},
        t_max=_POSITIVE,
    ),
}

#: config key -> runner keyword, per experiment
_KEYMAPS = {
    "fig2": {"W": "w", "T_DS": "t_ds_values", "T_SN": "t_sn", "k_max": "k_max"},
    "bounds_audit": {"pairs": "pairs"},
    "recovery": {"W": "w", "T_DS": "t_ds", "tol": "tol"},
    "stability": {"W": "w", "T_DS": "t_ds", "sigmas": "sigmas"},
    "sampling": {"W": "w", "T_SN": "t_sn", "k_max": "k_max"},
    "quantum_pipeline": {
        "P": "p",
        "X": "x",
        "n_x": "n_x",
        "n_t": "n_t",
        "t_max": "t_max",
    },
}


def validate_config(cfg):
    """Validate a parsed config and translate it to runner arguments.

    Returns (experiment kind, runner kwargs, grid or None, seed, outdir or
    None).  Raises :class:`ConfigError` with the offending field named.
    """
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    kind = cfg.get("experiment")
    if kind not in SCHEMAS:
        raise ConfigError(
            f"field `experiment` must be one of {sorted(SCHEMAS)}, got {kind!r}"
        )
    try:
        jsonschema.validate(cfg, SCHEMAS[kind])
    except jsonschema.ValidationError as exc:
        loc = ".".join(str(p) for p in exc.absolute_path)
        if loc:
            raise ConfigError(f"field `{loc}`: {exc.message}") from exc
        raise ConfigError(exc.message) from exc
    kwargs = {dst: cfg[src] for src, dst in _KEYMAPS[kind].items() if src in cfg}
    if "pairs" in kwargs:
        kwargs["pairs"] = [tuple(pair) for pair in kwargs["pairs"]]
    grid = None
    if "grid" in cfg:
        g = cfg["grid"]
        try:
            grid = TimeGrid(float(g["start"]), float(g["step"]), int(g["n"]))
        except ValueError as exc:
            raise ConfigError(f"field `grid`: {exc}") from exc
    return kind, kwargs, grid, int(cfg.get("seed", 0)), cfg.get("outdir")


def resolve_outdir(cli_out, cfg_out=None) -> Path:
    """--out beats the config's outdir beats $SUBGAP_OUTDIR beats ./out."""
    if cli_out is not None:
        return Path(cli_out)
    if cfg_out:
        return Path(cfg_out)
    env = os.environ.get(OUTDIR_ENV)
    if env:
        return Path(env)
    return Path("out")


def _print_report(report, outdir):
    for check in report["checks"]:
        if check["passed"]:
            print(f"[PASS] {check['name']}")
        else:
            print(
                f"[FAIL] {check['name']}: value={check['value']!r} "
                f"threshold={check['threshold']!r}"
            )
    verdict = "all checks passed" if report["passed"] else "CHECKS FAILED"
    print(f"{verdict}; report in {Path(outdir) / 'report.json'}")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="subgap",
        description="recovery of bandlimited signals and momentum-limited "
        "states from gaps below the uncertainty limit",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p_run = sub.add_parser("run", help="run the experiment in a JSON config")
    p_run.add_argument("config", type=Path, help="path to the config file")
    p_run.add_argument("--out", type=Path, default=None, help="output directory")
    p_run.add_argument(
        "--seed", type=int, default=None, help="override the config seed"
    )
    p_fig2 = sub.add_parser(
        "fig2", help="gapped-band restriction and copy recovery, default config"
    )
    p_fig2.add_argument("--out", type=Path, default=None, help="output directory")
    p_audit = sub.add_parser(
        "audit", help="concentration-bound audit over the standard sweep"
    )
    p_audit.add_argument("--out", type=Path, default=None, help="output directory")
    args = parser.parse_args(argv)

    if args.command == "run":
        try:
            text = Path(args.config).read_text(encoding="utf-8")
        except OSError as exc:
            print(f"error: cannot read config: {exc}", file=sys.stderr)
            return 2
        try:
            cfg = json.loads(text)
        except json.JSONDecodeError as exc:
            print(f"error: config is not valid JSON: {exc}", file=sys.stderr)
            return 2
        try:
            kind, kwargs, grid, seed, cfg_out = validate_config(cfg)
        except ConfigError as exc:
            print(f"error: invalid config: {exc}", file=sys.stderr)
            return 2
        if args.seed is not None:
            seed = args.seed
        outdir = resolve_outdir(args.out, cfg_out)
        report = EXPERIMENTS[kind](outdir, seed=seed, grid=grid, **kwargs)
    elif args.command == "fig2":
        outdir = resolve_outdir(args.out)
        report = run_fig2(outdir)
    else:
        outdir = resolve_outdir(args.out)
        report = run_bounds_audit(outdir)

    _print_report(report, outdir)
    return 0 if report["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
