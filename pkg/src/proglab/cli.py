"""Command-line entry point: ``proglab <command> [options]``.

Exit codes: 0 success, 2 validation error, 3 I/O error, 4 contradiction
verdict from ``infer``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .complexity import SERIALIZATIONS
from .eca import evolve, rule_from_code, single_seed
from .errors import ValidationError
from .formats import csv_text, parse_window, pbm_text
from .inference import (
    collect_constraints,
    consistent_count,
    enumerate_consistent,
    identify,
    overfit_count,
)
from .perturbation import difference_diagram, flip, perturbation_scan
from .programmability import DEFAULT_DENSITIES, DEFAULT_SEED, EnsembleSpec, classify, interrogate
from .rng import Xoshiro256

EXIT_OK, EXIT_VALIDATION, EXIT_IO, EXIT_CONTRADICTION = 0, 2, 3, 4

# not echoed into artifact headers: paths and execution details never change results
_PATH_KEYS = {"out", "dump", "json", "window", "command", "func", "workers"}


def _default_seed() -> int:
    env = os.environ.get("PROGLAB_SEED")
    if env is None:
        return DEFAULT_SEED
    try:
        return int(env, 0)
    except ValueError:
        raise ValidationError(f"PROGLAB_SEED={env!r} is not an integer") from None


def _int(text):
    return int(text, 0)


def _floats(text):
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _ints(text):
    try:
        return tuple(int(x, 0) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _config(args) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k not in _PATH_KEYS}
    cfg = {k: list(v) if isinstance(v, tuple) else v for k, v in cfg.items()}
    return {"command": args.command, **cfg}


def _write(path, text: str) -> None:
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", newline="") as fh:
        fh.write(text)


def _initial(args, width, radius):
    if args.init == "single":
        return single_seed(width)
    if args.init == "random":
        return np.array(Xoshiro256(args.seed).bits(width, args.density), dtype=np.uint8)
    raise ValidationError(f"unknown initial condition {args.init!r}")


def cmd_evolve(args) -> int:
    rule = rule_from_code(args.rule, args.radius)
    diagram = evolve(rule, _initial(args, args.width, args.radius), args.steps)
    meta = _config(args)
    _write(args.out, pbm_text(diagram.rows, meta))
    if args.dump:
        lines = [f"# proglab {__version__}", "# config " + json.dumps(meta, sort_keys=True, separators=(",", ":"))]
        lines += ["".join(map(str, row)) for row in diagram.rows]
        _write(args.dump, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_perturb_scan(args) -> int:
    rule = rule_from_code(args.rule, args.radius)
    base = _initial(args, args.width, args.radius)
    profiles = perturbation_scan(rule, base, args.steps)
    meta = _config(args)
    rows = [(p.origin, p.outcome, p.final_hamming, p.speed, p.wrapped) for p in profiles]
    _write(args.out, csv_text(["site", "outcome", "final_hamming", "speed", "wrapped"], rows, meta))
    if args.sites:
        stem = Path(args.out).with_suffix("") if args.out not in (None, "-") else Path("perturb")
        ref = evolve(rule, base, args.steps)
        for site in args.sites:
            diff = difference_diagram(ref, evolve(rule, flip(base, [site]), args.steps))
            _write(f"{stem}_site{site}.pbm", pbm_text(diff, {**meta, "site": site}))
    return EXIT_OK


def _spec(args) -> EnsembleSpec:
    return EnsembleSpec(args.width, args.densities, args.samples, args.seed)


def cmd_profile(args) -> int:
    p = interrogate(rule_from_code(args.rule, args.radius), _spec(args), args.steps, args.serialize)
    doc = {"meta": {"version": __version__, "config": _config(args)}, "profile": p.as_dict()}
    _write(args.out, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_classify(args) -> int:
    codes = args.rules if args.rules else range(1 << (1 << (2 * args.radius + 1)))
    if args.radius != 1 and not args.rules:
        raise ValidationError("radius-2 classification needs an explicit --rules list")
    profiles = classify(codes, _spec(args), args.steps, args.serialize, args.radius, args.workers)
    meta = _config(args)
    rows = [
        (rank, p.rule_code, p.variability, p.controllability, p.programmability,
         float(np.mean(p.input_c)), float(np.mean(p.output_c)))
        for rank, p in enumerate(profiles, start=1)
    ]
    header = ["rank", "rule", "V", "S", "P", "mean_input_c", "mean_output_c"]
    _write(args.out, csv_text(header, rows, meta))
    json_path = args.json
    if json_path is None and args.out not in (None, "-"):
        json_path = str(Path(args.out).with_suffix(".json"))
    if json_path:
        doc = {"meta": {"version": __version__, "config": meta}, "profiles": [p.as_dict() for p in profiles]}
        _write(json_path, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_infer(args) -> int:
    try:
        text = Path(args.window).read_text()
    except OSError as exc:
        raise OSError(f"cannot read window file {args.window}: {exc.strerror}") from exc
    window, radius = parse_window(text)
    t1 = collect_constraints(window, 1)
    verdict = identify(window)
    r2 = overfit_count(window) if window.width >= 5 else None
    table = t1 if radius == 1 else collect_constraints(window, 2)
    width = 2 * radius + 1
    report = {
        "meta": {"version": __version__, "config": {**_config(args), "width": window.width, "radius": radius}},
        "observations": len(window),
        "constraints": {format(k, f"0{width}b"): v for k, v in sorted(table.entries.items())},
        "contradiction": t1.contradiction,
        "consistent_r1": consistent_count(t1),
        "consistent_r2": r2,
        "candidates_r1": [r.code for r in enumerate_consistent(t1)],
        "verdict": str(verdict),
    }
    lines = [
        f"observations: {report['observations']}",
        f"constraints (r={radius}): " + (", ".join(f"{k}->{v}" for k, v in report["constraints"].items()) or "none"),
        f"consistent rules r=1: {report['consistent_r1']}",
        f"consistent rules r=2: {r2 if r2 is not None else 'n/a (width < 5)'}",
        f"verdict: {verdict}",
    ]
    if 1 < len(report["candidates_r1"]) <= 32:
        lines.insert(4, "candidates: " + " ".join(map(str, report["candidates_r1"])))
    sys.stdout.write("\n".join(lines) + "\n")
    if args.out:
        _write(args.out, json.dumps(report, indent=2, sort_keys=True) + "\n")
    return EXIT_CONTRADICTION if verdict.verdict == "contradiction" else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="proglab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"proglab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, rule=30, width=257, steps=128):
        if rule is not None:
            p.add_argument("--rule", type=_int, default=rule, help="Wolfram code (default %(default)s)")
        p.add_argument("--radius", type=int, default=1, choices=(1, 2))
        p.add_argument("--width", type=int, default=width, help="tape width (default %(default)s)")
        p.add_argument("--steps", type=int, default=steps, help="time steps (default %(default)s)")
        p.add_argument("--seed", type=_int, default=None, help="64-bit seed (default $PROGLAB_SEED or 0x5EED)")
        p.add_argument("--out", default=None, help="output path ('-' or omitted: stdout)")

    def initial(p, init):
        p.add_argument("--init", choices=("single", "random"), default=init)
        p.add_argument("--density", type=float, default=0.5, help="cell density for --init random")

    def ensemble(p):
        p.add_argument("--densities", type=_floats, default=DEFAULT_DENSITIES)
        p.add_argument("--samples", type=int, default=8, help="tapes per density")
        p.add_argument("--serialize", choices=SERIALIZATIONS, default="diagram")

    p = sub.add_parser("evolve", help="space-time diagram as a P1 bitmap")
    common(p)
    initial(p, "single")
    p.add_argument("--dump", default=None, help="also write rows as 0/1 text")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("perturb-scan", help="damage profile for every single-cell flip")
    common(p, rule=22)
    initial(p, "random")
    p.add_argument("--sites", type=_ints, default=(), help="flip sites to render as difference bitmaps")
    p.set_defaults(func=cmd_perturb_scan)

    p = sub.add_parser("profile", help="behavioural profile of one rule (JSON)")
    common(p, rule=22, width=256, steps=256)
    ensemble(p)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("classify", help="rank rules by programmability (CSV + JSON)")
    common(p, rule=None, width=256, steps=256)
    ensemble(p)
    p.add_argument("--rules", type=_ints, default=(), help="comma-separated codes (default: all)")
    p.add_argument("--json", default=None, help="JSON path (default: --out with .json suffix)")
    p.add_argument("--workers", type=int, default=1, help="worker processes")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("infer", help="constraints and consistent rules from an observation window")
    p.add_argument("window", help="window file: 'width W radius R' then 't x v' lines")
    p.add_argument("--out", default=None, help="JSON report path")
    p.set_defaults(func=cmd_infer)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if hasattr(args, "seed") and args.seed is None:
            args.seed = _default_seed()
        if hasattr(args, "steps") and args.steps < 0:
            raise ValidationError(f"--steps must be >= 0, got {args.steps}")
        return args.func(args)
    except ValidationError as exc:
        print(f"proglab: error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"proglab: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
