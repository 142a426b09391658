"""Command-line front end.

    vislat visible --radius 10 --output pts.csv
    vislat density --radius 500
    vislat density --curve 12
    vislat bragg --max-denominator 12 --output map.csv --render map.svg
    vislat compare --k 1/2,1/2 --radii 100,200,400
    vislat render --figure bragg --max-denominator 12 --output fig3.svg

Settings can come from a JSON file (--config); flags override it. Every
run prints a JSON report that echoes the resolved configuration.
Exit codes: 0 ok, 2 usage, 3 resource cap, 4 numeric/domain error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field, fields

from . import __version__
from .diffraction import (
    DEFAULT_TRUNCATION,
    bragg_amplitude,
    bragg_map,
    parse_wavevector,
    visible_patch_sums,
)
from .errors import UsageError, VislatError
from .io import bragg_to_csv, bragg_to_records, dumps, points_to_csv, write_atomic
from .lattice import lattice_from_dict
from .render import DotPlotSpec, render_bragg, render_density_curve, render_points
from .visibility import density_curve, empirical_density, enumerate_visible

BOUNDS = {
    "radius": (0, 10**4),
    "max_dimension": (2, 50),
    "max_denominator": (1, 500),
    "truncation": (1, 10**8),
    "threads": (1, 256),
    "dot_scale": (0.0, 1e6),
}


@dataclass
class RunConfig:
    command: str = ""
    lattice: dict = field(default_factory=lambda: {"dimension": 2, "basis": [[1.0, 0.0], [0.0, 1.0]]})
    radius: int | None = None
    max_dimension: int | None = None
    max_denominator: int | None = None
    truncation: int = DEFAULT_TRUNCATION
    k: str | None = None
    radii: list[int] | None = None
    output: str | None = None
    format: str | None = None
    render: str | None = None
    image_format: str = "svg"
    figure: str | None = None
    dot_scale: float = 20.0
    threads: int = 1

    def validate(self) -> None:
        for name, (lo, hi) in BOUNDS.items():
            v = getattr(self, name)
            if v is not None and not lo <= v <= hi:
                raise UsageError(f"{name}={v} outside [{lo}, {hi}]")
        for r in self.radii or []:
            lo, hi = BOUNDS["radius"]
            if not lo <= r <= hi:
                raise UsageError(f"radius {r} outside [{lo}, {hi}]")
        if self.image_format not in ("svg", "pgm"):
            raise UsageError(f"image_format must be svg or pgm, got {self.image_format!r}")
        if self.format not in (None, "csv", "json"):
            raise UsageError(f"format must be csv or json, got {self.format!r}")


_CONFIG_KEYS = {f.name for f in fields(RunConfig)} - {"command"}


def load_config(path: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError("config must be a JSON object")
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    return data


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vislat", description="Visible lattice points and their diffraction.")
    parser.add_argument("--version", action="version", version=__version__)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with RunConfig keys")
    common.add_argument("--lattice", help='lattice JSON, e.g. {"dimension": 2, "basis": [[1,0],[0,1]]}, or a file holding it')
    common.add_argument("--dimension", type=int, help="use the hypercubic lattice Z^n")
    common.add_argument("--threads", type=int)
    common.add_argument("--report", help="write the JSON report here instead of stdout")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("visible", parents=[common], help="list visible points of a coefficient box")
    p.add_argument("--radius", type=int)
    p.add_argument("--output", help="CSV destination (default stdout)")

    p = sub.add_parser("density", parents=[common], help="empirical density or the density-vs-dimension curve")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--radius", type=int)
    g.add_argument("--curve", dest="max_dimension", type=int, metavar="MAX_DIMENSION")
    p.add_argument("--output", help="also write the report here")

    p = sub.add_parser("bragg", parents=[common], help="Bragg amplitudes on the rational grid")
    p.add_argument("--max-denominator", type=int)
    p.add_argument("--output")
    p.add_argument("--format", choices=["csv", "json"])
    p.add_argument("--render", help="also draw the map to this image file")
    p.add_argument("--image-format", choices=["svg", "pgm"])
    p.add_argument("--dot-scale", type=float)

    p = sub.add_parser("compare", parents=[common], help="patch structure factor vs closed-form amplitude")
    p.add_argument("--k", help="wave vector as p1/q1,p2/q2,...")
    p.add_argument("--radii", type=_int_list)
    p.add_argument("--output", help="also write the report here")

    p = sub.add_parser("render", parents=[common], help="draw one of the figures")
    p.add_argument("--figure", choices=["points", "density", "bragg"])
    p.add_argument("--radius", type=int)
    p.add_argument("--max-dimension", type=int)
    p.add_argument("--max-denominator", type=int)
    p.add_argument("--output")
    p.add_argument("--image-format", choices=["svg", "pgm"])
    p.add_argument("--dot-scale", type=float)
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    merged: dict = {}
    if args.config:
        merged.update(load_config(args.config))
    for key in _CONFIG_KEYS:
        v = getattr(args, key, None)
        if v is not None and key != "lattice":
            merged[key] = v
    if args.lattice:
        text = args.lattice
        if not text.lstrip().startswith("{"):
            try:
                with open(text) as fh:
                    text = fh.read()
            except OSError as exc:
                raise UsageError(f"cannot read lattice file: {exc}") from None
        try:
            merged["lattice"] = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"bad lattice JSON: {exc}") from None
    elif args.dimension is not None:
        merged["lattice"] = {"dimension": args.dimension}
    cfg = RunConfig(command=args.command, **merged)
    lat = lattice_from_dict(cfg.lattice)
    cfg.lattice = lat.to_dict()
    cfg.validate()
    return cfg


def _defaults(cfg: RunConfig) -> None:
    if cfg.command == "visible" and cfg.radius is None:
        cfg.radius = 10
    if cfg.command == "density" and cfg.radius is None and cfg.max_dimension is None:
        cfg.radius = 100
    if cfg.command in ("bragg", "render") and cfg.max_denominator is None:
        cfg.max_denominator = 12
    if cfg.command == "compare":
        if cfg.k is None:
            raise UsageError("compare needs --k")
        if cfg.radii is None:
            cfg.radii = [100, 200, 400]
    if cfg.command == "render":
        cfg.figure = cfg.figure or "bragg"
        if cfg.radius is None:
            cfg.radius = 40
        if cfg.max_dimension is None:
            cfg.max_dimension = 12


def cmd_visible(cfg: RunConfig) -> dict:
    lat = lattice_from_dict(cfg.lattice)
    pts = enumerate_visible(lat, cfg.radius)
    text = points_to_csv(pts, lat.dimension)
    if cfg.output:
        write_atomic(cfg.output, text)
    else:
        sys.stdout.write(text)
    return {"visibleCount": int(len(pts))}


def cmd_density(cfg: RunConfig) -> dict:
    if cfg.max_dimension is not None:
        return {"curve": [{"n": n, "density": v} for n, v in density_curve(cfg.max_dimension)]}
    est = empirical_density(lattice_from_dict(cfg.lattice), cfg.radius)
    return {"estimate": est.to_dict()}


def _spec(cfg: RunConfig) -> DotPlotSpec:
    return DotPlotSpec(dot_scale=cfg.dot_scale)


def cmd_bragg(cfg: RunConfig) -> dict:
    lat = lattice_from_dict(cfg.lattice)
    amps = bragg_map(lat, cfg.max_denominator)
    fmt = cfg.format or ("json" if cfg.output and cfg.output.endswith(".json") else "csv")
    out: dict = {"entries": len(amps), "nonzero": sum(1 for b in amps if b.value != 0)}
    if cfg.output:
        text = bragg_to_csv(amps) if fmt == "csv" else dumps(bragg_to_records(amps))
        write_atomic(cfg.output, text)
    else:
        out["map"] = bragg_to_records(amps)
    if cfg.render:
        write_atomic(cfg.render, render_bragg(amps, _spec(cfg), cfg.image_format))
    return out


def cmd_compare(cfg: RunConfig) -> dict:
    lat = lattice_from_dict(cfg.lattice)
    k = parse_wavevector(cfg.k, lat)
    h = bragg_amplitude(k)
    rows = [
        {
            "radius": ps.patch_radius,
            "perSite": [ps.per_site.real, ps.per_site.imag],
            "deviation": abs(ps.per_site - h.value),
        }
        for ps in visible_patch_sums(k, cfg.radii, threads=cfg.threads)
    ]
    return {"k": str(k), "a": h.a, "H": h.value, "table": rows}


def cmd_render(cfg: RunConfig) -> dict:
    if not cfg.output:
        raise UsageError("render needs --output")
    lat = lattice_from_dict(cfg.lattice)
    spec = _spec(cfg)
    if cfg.figure == "points":
        data = render_points(enumerate_visible(lat, cfg.radius), lat, spec, cfg.image_format)
    elif cfg.figure == "density":
        data = render_density_curve(density_curve(cfg.max_dimension), spec, cfg.image_format)
    else:
        data = render_bragg(bragg_map(lat, cfg.max_denominator), spec, cfg.image_format)
    write_atomic(cfg.output, data)
    return {"figure": cfg.figure, "bytes": len(data)}


COMMANDS = {
    "visible": cmd_visible,
    "density": cmd_density,
    "bragg": cmd_bragg,
    "compare": cmd_compare,
    "render": cmd_render,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        _defaults(cfg)
        result = COMMANDS[cfg.command](cfg)
        report = dumps({"config": asdict(cfg), "result": result})
        if args.report:
            write_atomic(args.report, report)
        elif cfg.command == "visible" and not cfg.output:
            sys.stderr.write(report)
        else:
            sys.stdout.write(report)
        if cfg.command in ("density", "compare") and cfg.output:
            write_atomic(cfg.output, report)
    except VislatError as exc:
        print(f"vislat: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except TypeError as exc:
        # unknown/ill-typed RunConfig fields
        print(f"vislat: error: {exc}", file=sys.stderr)
        return UsageError.exit_code
    return 0


def main() -> None:
    sys.exit(run())
