"""Command-line interface: ``pauli-coherent <command> ...``.

Exit codes: 0 on success, 2 for invalid input or configuration, 3 for I/O or
runtime failures.
"""
from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
from dataclasses import asdict, fields
from pathlib import Path

import numpy as np

from . import outputs
from .channel import ProbVec4, one_shot_capacity_raw
from .codes import VARIANTS, build_code, parse_code_id
from .coherent import CLOSED_FORM_SHOTS, closed_form_rate, code_rate
from .errors import ConfigError, PauliCoherentError
from .optim import FitnessSpec, GAConfig, PSOConfig, ToyProblem, bench_curves, ga_run, pso_run

EXIT_USAGE = 2
EXIT_IO = 3


def _fmt(v: float) -> str:
    return outputs.fmt(float(v))


def _point(args) -> ProbVec4:
    return ProbVec4.from_errors(args.p1, args.p2, args.p3)


def _out_path(arg, default_name: str) -> Path:
    if arg:
        return Path(arg)
    return outputs.default_out_dir() / default_name


def _threads(args) -> int:
    return args.threads if args.threads else (os.cpu_count() or 1)


def _families(text):
    return None if not text else [f.strip().upper() for f in text.split(",") if f.strip()]


# ---------------------------------------------------------------- q1 / eval


def cmd_q1(args) -> int:
    raw = one_shot_capacity_raw(_point(args))
    print(f"q1_raw {_fmt(raw)}")
    print(f"q1 {_fmt(max(raw, 0.0))}")
    return 0


def cmd_eval(args) -> int:
    code = parse_code_id(args.code)
    shots = args.shots if args.shots is not None else code.shots
    if shots != code.shots:
        raise ConfigError(f"{code} is a {code.shots}-use code; got --shots {shots}")
    p = _point(args)
    q1_raw = one_shot_capacity_raw(p)
    has_closed = code.family in CLOSED_FORM_SHOTS
    mode = args.mode or ("closed" if has_closed else "numeric")
    if mode in ("closed", "check") and not has_closed:
        raise ConfigError(f"no closed form for {code}")
    numeric = code_rate(build_code(code), p, shots) if mode in ("numeric", "check") else None
    closed = closed_form_rate(code, p) if mode in ("closed", "check") else None
    rate = closed if closed is not None else numeric
    print(f"code {code}")
    print(f"shots {shots}")
    if mode == "check":
        print(f"closed {_fmt(closed)}")
        print(f"numeric {_fmt(numeric)}")
        print(f"difference {_fmt(abs(closed - numeric))}")
    print(f"rate {_fmt(rate)}")
    print(f"q1_raw {_fmt(q1_raw)}")
    print(f"gap {_fmt(rate - max(q1_raw, 0.0))}")
    return 0


# ---------------------------------------------------------------- optimize


def _reject_unknown(section: str, doc: dict, allowed) -> None:
    extra = sorted(set(doc) - set(allowed))
    if extra:
        raise ConfigError(f"unknown field(s) in {section}: {', '.join(extra)}")


def _dataclass_from(cls, section: str, doc, **override):
    if doc is None:
        doc = {}
    if not isinstance(doc, dict):
        raise ConfigError(f"{section} must be a JSON object")
    names = [f.name for f in fields(cls)]
    _reject_unknown(section, doc, names)
    kw = dict(doc)
    kw.update({k: v for k, v in override.items() if v is not None})
    try:
        return cls(**kw)
    except TypeError as exc:
        raise ConfigError(f"bad {section}: {exc}") from None


RUN_FIELDS = ("name", "algorithm", "problem", "channel", "shots", "ansatz", "encoding",
              "sentinel", "ga", "pso", "toy", "seed", "output", "save_amplitudes")
CHANNEL_FIELDS = ("p1", "p2", "p3")
TOY_FIELDS = ("shapes", "seed", "scale")


def load_config(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    return doc


def _channel(doc) -> ProbVec4:
    if not isinstance(doc, dict):
        raise ConfigError("channel must be an object with p1, p2, p3")
    _reject_unknown("channel", doc, CHANNEL_FIELDS)
    try:
        return ProbVec4.from_errors(doc["p1"], doc["p2"], doc["p3"])
    except KeyError as exc:
        raise ConfigError(f"channel is missing {exc}") from None


def build_problem(doc: dict):
    """The fitness object described by a run config."""
    kind = doc.get("problem", "channel")
    if kind == "toy":
        toy = doc.get("toy") or {}
        _reject_unknown("toy", toy, TOY_FIELDS)
        shapes = [tuple(s) for s in toy.get("shapes", [[1, 4]])]
        return ToyProblem.random(shapes, seed=toy.get("seed", 0), scale=toy.get("scale", 1.0))
    if kind != "channel":
        raise ConfigError(f"unknown problem {kind!r}")
    if "channel" not in doc:
        raise ConfigError("channel problems need a 'channel' block")
    return FitnessSpec(
        _channel(doc["channel"]),
        int(doc.get("shots", 2)),
        doc.get("ansatz", "nn:4x4x4x4x4x2"),
        sentinel=doc.get("sentinel"),
        encoding=doc.get("encoding", "01"),
    )


def run_optimizer(doc: dict, seed=None, map_fn=map):
    """Execute one run config; returns ``(result, problem, config)``."""
    _reject_unknown("config", doc, RUN_FIELDS)
    algo = doc.get("algorithm", "ga")
    seed = seed if seed is not None else doc.get("seed")
    problem = build_problem(doc)
    if algo == "ga":
        cfg = _dataclass_from(GAConfig, "ga", doc.get("ga"), seed=seed)
        return ga_run(problem, cfg, map_fn=map_fn), problem, cfg
    if algo == "pso":
        cfg = _dataclass_from(PSOConfig, "pso", doc.get("pso"), seed=seed)
        return pso_run(problem, cfg, map_fn=map_fn), problem, cfg
    raise ConfigError(f"unknown algorithm {algo!r}")


def result_document(doc, result, problem, cfg) -> dict:
    out = {
        "algorithm": doc.get("algorithm", "ga"),
        "config": asdict(cfg),
        "best_fitness": result.best_fitness,
        "chromosome": [a.tolist() for a in result.best],
        "generations": len(result.curve) - 1,
    }
    if isinstance(problem, FitnessSpec):
        q1_raw = one_shot_capacity_raw(problem.p)
        out.update(
            channel=dict(zip(CHANNEL_FIELDS, problem.p.errors)),
            shots=problem.shots,
            ansatz=problem.ansatz.descriptor,
            encoding=problem.ansatz.encoding,
            best_rate=problem.rate(result.best_fitness),
            q1_raw=q1_raw,
            gap=problem.rate(result.best_fitness) - max(q1_raw, 0.0),
        )
        if doc.get("save_amplitudes"):
            amps = problem.ansatz.decode(result.best).amps
            out["amplitudes"] = [[float(a.real), float(a.imag)] for a in amps]
    return out


def cmd_optimize(args) -> int:
    doc = load_config(args.config)
    if args.seed is not None:
        doc["seed"] = args.seed
    result, problem, cfg = run_optimizer(doc)
    name = doc.get("name", "run")
    out_dir = Path(args.out or doc.get("output") or outputs.default_out_dir())
    res_path = outputs.write_json(out_dir / f"{name}.json", result_document(doc, result, problem, cfg))
    curve_path = outputs.atomic_write_text(out_dir / f"{name}_curve.csv", result.curve.to_csv())
    print(f"best_fitness {_fmt(result.best_fitness)}")
    if isinstance(problem, FitnessSpec):
        print(f"best_rate {_fmt(problem.rate(result.best_fitness))}")
    print(f"result {res_path}")
    print(f"curve {curve_path}")
    return 0


# ---------------------------------------------------------------- scans


def cmd_scan(args) -> int:
    from .scan import GridSpec, ga_scan_points, grid_points, grid_scan

    g = GridSpec(args.lo, args.hi, args.step)
    if args.ga:
        cfg = GAConfig(population_size=args.population, generations=args.generations,
                       seed=args.seed or 0)
        records = ga_scan_points(grid_points(g), args.shots, args.ansatz, cfg, _threads(args))
    else:
        records = grid_scan(g, args.shots, _families(args.families))
    path = outputs.write_csv(_out_path(args.out, f"scan_n{args.shots}.csv"), outputs.SCAN_HEADER,
                             outputs.scan_rows(records))
    n_sup = sum(r.superadditive for r in records)
    print(f"points {len(records)}")
    print(f"superadditive {n_sup}")
    print(f"output {path}")
    return 0


def cmd_slice(args) -> int:
    from .scan import SliceSpec, slice_density

    s = SliceSpec(args.p3, args.lo, args.hi, args.step, args.mode)
    res = slice_density(s, args.shots, _families(args.families))
    cells = list(res.cells())
    path = outputs.write_csv(_out_path(args.out, f"slice_p3_{args.p3:g}_{args.mode}.csv"),
                             outputs.SLICE_HEADER, cells)
    print(f"cells {len(cells)}")
    print(f"positive {sum(v > 0 for *_, v in cells)}")
    print(f"max {_fmt(max((v for *_, v in cells), default=0.0))}")
    print(f"output {path}")
    return 0


def cmd_compare(args) -> int:
    from .scan import GridSpec, compare_points, family_compare

    if args.point:
        try:
            pt = [float(x) for x in args.point.split(",")]
        except ValueError:
            raise ConfigError("--point expects p1,p2,p3") from None
        if len(pt) != 3:
            raise ConfigError("--point expects p1,p2,p3")
        ProbVec4.from_errors(*pt)
        r = compare_points([pt])[0]
        print(f"winner {r.winner}")
        print(f"phi_rate {_fmt(r.phi_rate)}")
        print(f"chi_rate {_fmt(r.chi_rate)}")
        print(f"tie {str(r.tie).lower()}")
        return 0
    records = family_compare(GridSpec(args.lo, args.hi, args.step))
    path = outputs.write_csv(_out_path(args.out, "compare.csv"), outputs.COMPARE_HEADER,
                             outputs.compare_rows(records))
    print(f"superadditive {len(records)}")
    print(f"chi_wins {sum(r.winner == 'CHI' for r in records)}")
    print(f"output {path}")
    return 0


def cmd_gapmax(args) -> int:
    from .scan import gap_maximize

    family = args.family.upper()
    variants = VARIANTS if args.variant == "all" else (args.variant,)
    for v in variants:
        r = gap_maximize(family, v, args.shots)
        label = f"{family}-{v}"
        print(f"{label} gap {_fmt(r.gap)}")
        print(f"{label} p1 {_fmt(r.p.p1)} p2 {_fmt(r.p.p2)} p3 {_fmt(r.p.p3)}")
        print(f"{label} rate {_fmt(r.rate)} q1_raw {_fmt(r.q1_raw)}")
    return 0


# ---------------------------------------------------------------- bench

BENCH_FIELDS = ("name", "channel", "shots", "encoding", "trials", "seed", "generations",
                "algorithms", "ansatz", "nn_depths", "nn_width", "populations", "v_max",
                "ga", "pso", "output")


def bench_cells(doc: dict):
    """Expand a bench config into its cartesian list of cells."""
    _reject_unknown("bench config", doc, BENCH_FIELDS)
    ansatz = list(doc.get("ansatz", []))
    width = int(doc.get("nn_width", 4))
    n_in = 2 * int(doc.get("shots", 2))
    for depth in doc.get("nn_depths", []):
        ansatz.append("nn:" + "x".join([str(n_in)] + [str(width)] * int(depth) + ["2"]))
    if not ansatz:
        raise ConfigError("bench needs at least one ansatz")
    cells = []
    for algo, a, pop in itertools.product(doc.get("algorithms", ["ga"]), ansatz,
                                          doc.get("populations", [100])):
        if algo not in ("ga", "pso"):
            raise ConfigError(f"unknown algorithm {algo!r}")
        vmaxes = doc.get("v_max", [None]) if algo == "pso" else [None]
        for vm in vmaxes:
            cells.append({"algorithm": algo, "ansatz": a, "population": int(pop), "v_max": vm})
    return cells


def _cell_name(cell) -> str:
    a = cell["ansatz"].replace(":", "-").replace("=", "")
    name = f"{cell['algorithm']}_{a}_pop{cell['population']}"
    if cell["v_max"] is not None:
        name += f"_vmax{cell['v_max']:g}"
    return name


def cmd_bench(args) -> int:
    doc = load_config(args.config)
    cells = bench_cells(doc)
    seed = args.seed if args.seed is not None else int(doc.get("seed", 0))
    trials = int(doc.get("trials", 10))
    gens = int(doc.get("generations", 300))
    p = _channel(doc.get("channel", {"p1": 0.003, "p2": 0.285, "p3": 0.008}))
    shots = int(doc.get("shots", 2))
    out_dir = Path(args.out or doc.get("output") or outputs.default_out_dir())
    workers = _threads(args)
    manifest = {"channel": dict(zip(CHANNEL_FIELDS, p.errors)), "shots": shots,
                "trials": trials, "seed": seed, "generations": gens, "cells": []}
    for cell in cells:
        fit = FitnessSpec(p, shots, cell["ansatz"], encoding=doc.get("encoding", "01"))
        if cell["algorithm"] == "ga":
            cfg = _dataclass_from(GAConfig, "ga", doc.get("ga"), population_size=cell["population"],
                                  generations=gens, seed=seed)
        else:
            vm = cell["v_max"]
            extra = {} if vm is None else {"v_max": float(vm), "v_min": -float(vm)}
            cfg = _dataclass_from(PSOConfig, "pso", doc.get("pso"), n_particles=cell["population"],
                                  generations=gens, seed=seed, **extra)
        curve = bench_curves(fit, cell["algorithm"], cfg, trials, workers=workers)
        fname = f"{_cell_name(cell)}.csv"
        outputs.atomic_write_text(out_dir / fname, curve.to_csv())
        final = curve.best_so_far[-1]
        manifest["cells"].append(dict(cell, file=fname, config=asdict(cfg),
                                      final_best_rate=final / shots,
                                      final_mean_rate=curve.mean_fitness[-1] / shots))
        print(f"{fname} final_best_rate {_fmt(final / shots)}")
    name = doc.get("name", "bench")
    path = outputs.write_json(out_dir / f"{name}_manifest.json", manifest)
    print(f"manifest {path}")
    return 0


# ---------------------------------------------------------------- parser


def _add_point(p, required=True):
    for name in ("p1", "p2", "p3"):
        p.add_argument(f"--{name}", type=float, required=required, help=f"{name} error probability")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="pauli-coherent",
        description="Coherent information and super-additivity of qubit Pauli channels.",
    )
    ap.add_argument("--threads", type=int, default=None,
                    help="worker processes for bench/GA scans (default: all cores)")
    sub = ap.add_subparsers(dest="command", required=True)

    q = sub.add_parser("q1", help="one-shot capacity 1 - H(p)")
    _add_point(q)
    q.set_defaults(func=cmd_q1)

    e = sub.add_parser("eval", help="rate of a named code")
    e.add_argument("--code", required=True, help="mes, psi1..psi3, phi1..phi3, chi1..chi3")
    e.add_argument("--shots", type=int, default=None)
    _add_point(e)
    m = e.add_mutually_exclusive_group()
    m.add_argument("--numeric", dest="mode", action="store_const", const="numeric")
    m.add_argument("--closed", dest="mode", action="store_const", const="closed")
    m.add_argument("--check", dest="mode", action="store_const", const="check",
                   help="print closed form, numeric value and their difference")
    e.set_defaults(func=cmd_eval, mode=None)

    o = sub.add_parser("optimize", help="run the GA or PSO from a JSON config",
                       description="Network inputs use the {0,1} bit encoding unless the "
                                   "config sets \"encoding\": \"pm1\".")
    o.add_argument("config")
    o.add_argument("--seed", type=int, default=None)
    o.add_argument("--out", default=None, help="output directory")
    o.set_defaults(func=cmd_optimize)

    s = sub.add_parser("scan", help="closed-form super-additivity scan over a 3-D grid")
    s.add_argument("--shots", type=int, required=True)
    s.add_argument("--families", default=None, help="comma list, e.g. phi,chi")
    s.add_argument("--lo", type=float, default=0.0)
    s.add_argument("--hi", type=float, default=0.2)
    s.add_argument("--step", type=float, default=0.01)
    s.add_argument("--out", default=None)
    s.add_argument("--ga", action="store_true", help="optimize a state per point instead")
    s.add_argument("--ansatz", default="nn:4x4x4x4x4x2")
    s.add_argument("--population", type=int, default=100)
    s.add_argument("--generations", type=int, default=300)
    s.add_argument("--seed", type=int, default=None)
    s.set_defaults(func=cmd_scan)

    sl = sub.add_parser("slice", help="gap density on a fixed-p3 plane")
    sl.add_argument("--p3", type=float, required=True)
    sl.add_argument("--shots", type=int, default=2)
    sl.add_argument("--families", default=None)
    sl.add_argument("--lo", type=float, default=0.0)
    sl.add_argument("--hi", type=float, default=0.4)
    sl.add_argument("--step", type=float, default=0.01)
    sl.add_argument("--mode", choices=("gap", "zero_q1_gap"), default="gap")
    sl.add_argument("--out", default=None)
    sl.set_defaults(func=cmd_slice)

    c = sub.add_parser("compare", help="chi vs repetition codes over a three-use grid")
    c.add_argument("--lo", type=float, default=0.0)
    c.add_argument("--hi", type=float, default=0.2)
    c.add_argument("--step", type=float, default=0.01)
    c.add_argument("--point", default=None, help="compare at a single p1,p2,p3 instead")
    c.add_argument("--out", default=None)
    c.set_defaults(func=cmd_compare)

    g = sub.add_parser("gapmax", help="maximize a code family's gap over Q1")
    g.add_argument("--family", required=True, choices=("psi", "phi", "chi", "PSI", "PHI", "CHI"))
    g.add_argument("--variant", default="I", choices=VARIANTS + ("all",))
    g.add_argument("--shots", type=int, default=None)
    g.set_defaults(func=cmd_gapmax)

    b = sub.add_parser("bench", help="averaged learning curves over a grid of settings")
    b.add_argument("config")
    b.add_argument("--seed", type=int, default=None)
    b.add_argument("--out", default=None, help="output directory")
    b.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads is not None and args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (PauliCoherentError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
