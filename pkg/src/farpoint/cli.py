"""Command-line front door: ``farpoint run --config FILE`` and ``farpoint list``.

A run configuration is a JSON document::

    {"scenario": "ck_counterexample",
     "parameters": {"n_max": 1000},
     "seed": 0,
     "output_dir": "out",
     "formats": ["json", "csv"]}

Only ``scenario`` is required.  The exit status is ``0`` iff every assertion
in the scenario report passed.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .errors import ConfigError, IoError
from .scenarios import (
    Assertion,
    ScenarioReport,
    run_ball_remark,
    run_ck_counterexample,
    run_density_ck,
    run_density_triangle,
    run_extreme_points_scenario,
    run_fk_remark,
)

FORMATS = ("json", "csv")
TOP_LEVEL_KEYS = {"scenario", "parameters", "seed", "output_dir", "formats"}


def _ck(p, seed):
    return run_ck_counterexample(p["n_max"], p["schedule"], [p["x"]], p["probe_t"])


def _fk(p, seed):
    return run_fk_remark(p["k_values"], np.linspace(p["x_min"], p["x_max"], p["x_count"]))


def _extreme(p, seed):
    return run_extreme_points_scenario(p["dimension"], p["n_vertices"], p["objective"],
                                       p["x"], p["sample_count"], seed)


def _ball(p, seed):
    return run_ball_remark(p["dimension"], p["x_samples"], seed, p["sphere_samples"], p["refine_steps"])


def _tri(p, seed):
    return run_density_triangle(p["samples"], seed, p["half_width"])


def _dck(p, seed):
    return run_density_ck(p["samples"], seed, p["n_max"])


# name -> (runner, {parameter: (type, default)})
SCENARIOS = {
    "ck_counterexample": (_ck, {"n_max": ("int", 1000), "schedule": ("int_list", [10, 100, 1000]),
                                "x": ("real_list", [2.0]), "probe_t": ("real", 0.3)}),
    "fk_remark": (_fk, {"k_values": ("int_list", [1, 2, 5]), "x_min": ("real", -1.0),
                        "x_max": ("real", 2.0), "x_count": ("int", 101)}),
    "extreme_points": (_extreme, {"dimension": ("int", 2), "n_vertices": ("int", 6),
                                  "objective": ("str", "distance_plus_norm"),
                                  "x": ("real_list", None), "sample_count": ("int", 100_000)}),
    "ball_remark": (_ball, {"dimension": ("int", 2), "x_samples": ("int", 10),
                            "sphere_samples": ("int", 100_000), "refine_steps": ("int", 50)}),
    "density_triangle": (_tri, {"samples": ("int", 10_000), "half_width": ("real", 3.0)}),
    "density_ck": (_dck, {"samples": ("int", 100), "n_max": ("int", 10_000)}),
}


def _is_int(v):
    return isinstance(v, int) and not isinstance(v, bool)


def _is_real(v):
    return isinstance(v, (int, float)) and not isinstance(v, bool)


_CHECKS = {
    "int": _is_int,
    "real": _is_real,
    "str": lambda v: isinstance(v, str),
    "int_list": lambda v: isinstance(v, list) and all(_is_int(e) for e in v),
    "real_list": lambda v: isinstance(v, list) and all(_is_real(e) for e in v),
}


@dataclass
class RunConfig:
    scenario: str
    parameters: dict = field(default_factory=dict)
    seed: int = 0
    output_dir: str | None = None
    formats: tuple = ("json",)

    def to_json(self):
        return {"scenario": self.scenario, "parameters": self.parameters, "seed": self.seed,
                "output_dir": self.output_dir, "formats": list(self.formats)}


def parse_config(source: str) -> RunConfig:
    """Validate a JSON run configuration and fill in parameter defaults."""
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise ConfigError([("document", f"not valid JSON: {exc}")]) from exc
    if not isinstance(doc, dict):
        raise ConfigError([("document", "must be a JSON object")])
    problems = [(k, "unknown key") for k in sorted(set(doc) - TOP_LEVEL_KEYS)]
    name = doc.get("scenario")
    if name is None:
        problems.append(("scenario", "missing"))
    elif name not in SCENARIOS:
        problems.append(("scenario", f"unknown scenario {name!r}; known: {', '.join(SCENARIOS)}"))
    seed = doc.get("seed", 0)
    if not _is_int(seed):
        problems.append(("seed", "must be an integer"))
    output_dir = doc.get("output_dir")
    if output_dir is not None and not isinstance(output_dir, str):
        problems.append(("output_dir", "must be a string"))
    formats = doc.get("formats", ["json"])
    if not (isinstance(formats, list) and formats and all(f in FORMATS for f in formats)):
        problems.append(("formats", f"must be a nonempty list drawn from {list(FORMATS)}"))
    params = doc.get("parameters", {})
    if not isinstance(params, dict):
        problems.append(("parameters", "must be an object"))
        params = {}
    resolved = {}
    if name in SCENARIOS:
        schema = SCENARIOS[name][1]
        for key in sorted(set(params) - set(schema)):
            problems.append((f"parameters.{key}", f"unknown parameter for {name}"))
        for key, (kind, default) in schema.items():
            if key not in params:
                resolved[key] = default
            elif not _CHECKS[kind](params[key]):
                problems.append((f"parameters.{key}", f"expected {kind}"))
            else:
                resolved[key] = params[key]
    if problems:
        raise ConfigError(problems)
    return RunConfig(name, resolved, seed, output_dir, tuple(formats))


@dataclass
class ReportEnvelope:
    tool_version: str
    config: RunConfig
    timestamps: dict
    report: ScenarioReport
    overall_pass: bool

    def to_json(self):
        return {"tool_version": self.tool_version, "config": self.config.to_json(),
                "timestamps": self.timestamps, "report": self.report.to_json(),
                "overall_pass": self.overall_pass}


def _now():
    return datetime.now(timezone.utc).isoformat()


def run(config: RunConfig) -> ReportEnvelope:
    """Execute the configured scenario; failures become a failed assertion."""
    start = _now()
    runner = SCENARIOS[config.scenario][0]
    try:
        report = runner(config.parameters, config.seed)
    except Exception as exc:
        report = ScenarioReport(config.scenario, dict(config.parameters))
        report.assertions.append(Assertion("scenario completed", "ok", f"{type(exc).__name__}: {exc}"))
    return ReportEnvelope(__version__, config, {"start": start, "end": _now()}, report, report.passed)


def _plain(o):
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"{type(o).__name__} is not JSON serializable")


def dumps(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, default=_plain) + "\n"


def emit(envelope: ReportEnvelope, formats, output_dir) -> list:
    """Write ``report.json`` and one ``<series>.csv`` per tabular artifact."""
    out = Path(output_dir)
    paths = []
    try:
        out.mkdir(parents=True, exist_ok=True)
        if "json" in formats:
            p = out / "report.json"
            p.write_text(dumps(envelope.to_json()))
            paths.append(str(p))
        if "csv" in formats:
            for name, art in sorted(envelope.report.artifacts.items()):
                if not {"columns", "rows"} <= set(art):
                    continue
                p = out / f"{name}.csv"
                with open(p, "w", newline="") as fh:
                    w = csv.writer(fh, lineterminator="\n")
                    w.writerow(art["columns"])
                    for row in art["rows"]:
                        w.writerow(["" if v is None else (repr(float(v)) if isinstance(v, float) else v)
                                    for v in row])
                paths.append(str(p))
    except OSError as exc:
        raise IoError(f"cannot write reports to {out}: {exc}") from exc
    return paths


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="farpoint", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p_run = sub.add_parser("run", help="run one scenario from a JSON config")
    p_run.add_argument("--config", required=True, help="path to the JSON run configuration")
    p_run.add_argument("--output", help="output directory (default: config, then $FARPOINT_OUTPUT)")
    p_run.add_argument("--format", help="comma-separated subset of json,csv")
    p_run.add_argument("--seed", type=int, help="override the configured seed")
    sub.add_parser("list", help="list scenarios and their parameters")
    args = parser.parse_args(argv)

    if args.command == "list":
        for name, (_, schema) in SCENARIOS.items():
            print(name)
            for key, (kind, default) in schema.items():
                print(f"    {key}: {kind} = {json.dumps(default)}")
        return 0

    try:
        config = parse_config(Path(args.config).read_text())
    except OSError as exc:
        print(f"farpoint: cannot read config: {exc}", file=sys.stderr)
        return 2
    except ConfigError as exc:
        for key, msg in exc.diagnostics:
            print(f"farpoint: config error in {key}: {msg}", file=sys.stderr)
        return 2
    if args.seed is not None:
        config.seed = args.seed
    if args.format:
        fmts = tuple(f.strip() for f in args.format.split(",") if f.strip())
        bad = [f for f in fmts if f not in FORMATS]
        if bad or not fmts:
            print(f"farpoint: unknown format(s) {bad}", file=sys.stderr)
            return 2
        config.formats = fmts
    output_dir = args.output or config.output_dir or os.environ.get("FARPOINT_OUTPUT") or "farpoint-output"

    envelope = run(config)
    try:
        paths = emit(envelope, config.formats, output_dir)
    except IoError as exc:
        print(f"farpoint: {exc}", file=sys.stderr)
        return 3
    for p in paths:
        print(p)
    print("PASS" if envelope.overall_pass else "FAIL")
    return 0 if envelope.overall_pass else 1


if __name__ == "__main__":
    sys.exit(main())
