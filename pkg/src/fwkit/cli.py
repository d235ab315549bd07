"""Command-line front end.

One command per invocation; reports go to standard output (or --output)
as JSON, with an optional CSV view for sweeps. Errors are written to
standard error as single-line JSON and mapped to exit codes:

    1  input or flag parse error
    2  infeasible configuration (values out of domain)
    3  solver non-convergence or an empty approximation grid
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from ._serialize import dumps, reports_to_csv
from .bounds import GENERATOR_KINDS, constants_report, run_sweep, verify_bounds
from .errors import EmptyGrid, InvalidSpec, NonConvergence
from .geometry import ConvexPolygon, Point, diameter, load_polygon, polygon_to_json
from .moments import polygon_moment
from .solver import DEFAULT_BUDGET, fw_center_exact, fw_center_grid, fw_center_sed
from .symmetrization import Axis, steiner_symmetrize

COMMANDS = ("fw-center", "ratio", "moments", "symmetrize", "verify", "sweep", "constants")


class _ParseError(Exception):
    pass


class _InfeasibleError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    """One parsed invocation."""

    command: str
    input_path: Optional[str] = None
    method: str = "exact"
    eps: float = 0.1
    tol: Optional[float] = None
    kappa: float = 1.0
    seed: int = 0
    count: int = 10
    kind: str = "random-hull"
    output_path: Optional[str] = None
    format: str = "json"
    point: Optional[tuple[float, float]] = None
    axis: Optional[tuple[float, float, float, float]] = None
    budget: int = DEFAULT_BUDGET


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # noqa: A003 - argparse hook
        raise _ParseError(message)


def _floats(text: str, n: int, flag: str) -> tuple[float, ...]:
    parts = text.split(",")
    if len(parts) != n:
        raise argparse.ArgumentTypeError(f"{flag} needs {n} comma-separated numbers")
    try:
        return tuple(float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{flag} needs {n} comma-separated numbers")


def build_parser() -> _Parser:
    parser = _Parser(prog="fwkit", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p):
        p.add_argument("--input", required=True, help="polygon JSON file")

    def add_output(p):
        p.add_argument("--output", default=None, help="write the report here instead of stdout")

    p = sub.add_parser("fw-center", help="compute a Fermat-Weber center")
    add_input(p)
    p.add_argument("--method", choices=("exact", "grid", "sed"), default="exact")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    add_output(p)

    p = sub.add_parser("ratio", help="optimal mean distance over diameter")
    add_input(p)
    p.add_argument("--tol", type=float, default=None)
    add_output(p)

    p = sub.add_parser("moments", help="distance moment from a point")
    add_input(p)
    p.add_argument("--point", required=True,
                   type=lambda s: _floats(s, 2, "--point"), help="x,y")
    p.add_argument("--kappa", type=float, default=1.0)
    add_output(p)

    p = sub.add_parser("symmetrize", help="Steiner symmetrization about an axis")
    add_input(p)
    p.add_argument("--axis", required=True,
                   type=lambda s: _floats(s, 4, "--axis"), help="px,py,dx,dy")
    add_output(p)

    p = sub.add_parser("verify", help="check the ratio bounds on one body")
    add_input(p)
    p.add_argument("--tol", type=float, default=1e-6)
    add_output(p)

    p = sub.add_parser("sweep", help="verify bounds over generated bodies")
    p.add_argument("--kind", choices=GENERATOR_KINDS, default="random-hull")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    add_output(p)

    p = sub.add_parser("constants", help="emit the named constants")
    add_output(p)

    return parser


def parse_config(argv: Sequence[str]) -> RunConfig:
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=ns.command,
        input_path=getattr(ns, "input", None),
        method=getattr(ns, "method", "exact"),
        eps=getattr(ns, "eps", 0.1),
        tol=getattr(ns, "tol", None),
        kappa=getattr(ns, "kappa", 1.0),
        seed=getattr(ns, "seed", 0),
        count=getattr(ns, "count", 10),
        kind=getattr(ns, "kind", "random-hull"),
        output_path=getattr(ns, "output", None),
        format=getattr(ns, "format", "json"),
        point=getattr(ns, "point", None),
        axis=getattr(ns, "axis", None),
        budget=getattr(ns, "budget", DEFAULT_BUDGET),
    )
    _validate(cfg)
    return cfg


def _validate(cfg: RunConfig) -> None:
    if cfg.tol is not None and not cfg.tol > 0.0:
        raise _InfeasibleError(f"tol must be positive, got {cfg.tol}")
    if cfg.command == "fw-center" and cfg.method == "grid" and not 0.0 < cfg.eps <= 1.0:
        raise _InfeasibleError(f"eps must be in (0, 1] for the grid method, got {cfg.eps}")
    if cfg.command == "moments" and not cfg.kappa >= 1.0:
        raise _InfeasibleError(f"kappa must be >= 1, got {cfg.kappa}")
    if cfg.command == "sweep" and cfg.count < 1:
        raise _InfeasibleError(f"count must be >= 1, got {cfg.count}")
    if cfg.budget < 1:
        raise _InfeasibleError(f"budget must be >= 1, got {cfg.budget}")
    if cfg.command == "symmetrize" and cfg.axis is not None:
        dx, dy = cfg.axis[2], cfg.axis[3]
        if dx == 0.0 and dy == 0.0:
            raise _InfeasibleError("axis direction must be non-zero")


def _load_input(cfg: RunConfig) -> ConvexPolygon:
    if cfg.input_path is None:
        raise _ParseError("this command requires --input")
    try:
        return load_polygon(cfg.input_path)
    except FileNotFoundError:
        raise _ParseError(f"input: file not found: {cfg.input_path}")
    except ValueError as exc:
        raise _ParseError(str(exc))


def run(cfg: RunConfig) -> int:
    """Execute one command and emit its report; returns the exit code."""
    if cfg.command == "fw-center":
        body = _load_input(cfg)
        if cfg.method == "exact":
            res = fw_center_exact(body, tol=cfg.tol, budget=cfg.budget)
        elif cfg.method == "grid":
            res = fw_center_grid(body, cfg.eps)
        else:
            res = fw_center_sed(body)
        payload = {
            "center": [res.center.x, res.center.y],
            "mu_star": res.mu_star,
            "method": res.method,
            "evaluations": res.evaluations,
            "achieved_tol": res.achieved_tol,
        }
    elif cfg.command == "ratio":
        body = _load_input(cfg)
        delta, _, _ = diameter(body)
        mu_star = fw_center_exact(body, tol=cfg.tol).mu_star
        payload = {"delta": delta, "mu_star": mu_star, "ratio": mu_star / delta}
    elif cfg.command == "moments":
        body = _load_input(cfg)
        assert cfg.point is not None
        m = polygon_moment(Point(*cfg.point), body, cfg.kappa)
        payload = {"integral": m.integral, "area": m.area, "mean": m.mean,
                   "kappa": m.kappa, "method": m.method}
    elif cfg.command == "symmetrize":
        body = _load_input(cfg)
        assert cfg.axis is not None
        px, py, dx, dy = cfg.axis
        out = steiner_symmetrize(body, Axis.through(Point(px, py), (dx, dy)))
        payload = polygon_to_json(out)
    elif cfg.command == "verify":
        body = _load_input(cfg)
        tol = cfg.tol if cfg.tol is not None else 1e-6
        payload = verify_bounds(body, tol=tol, body_id=cfg.input_path or "body").to_dict()
    elif cfg.command == "sweep":
        tol = cfg.tol if cfg.tol is not None else 1e-6
        reports = run_sweep(cfg.kind, cfg.count, seed=cfg.seed, tol=tol)
        if cfg.format == "csv":
            _emit(reports_to_csv(reports), cfg.output_path)
            return 0
        payload = [r.to_dict() for r in reports]
    elif cfg.command == "constants":
        payload = constants_report()
    else:  # pragma: no cover - argparse restricts the choices
        raise _ParseError(f"unknown command {cfg.command!r}")
    _emit(dumps(payload) + "\n", cfg.output_path)
    return 0


def _emit(text: str, output_path: Optional[str]) -> None:
    if output_path:
        with open(output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fail(kind: str, detail: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": kind, "detail": detail}) + "\n")
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        cfg = parse_config(argv)
        return run(cfg)
    except _ParseError as exc:
        return _fail("parse_error", str(exc), 1)
    except (_InfeasibleError, InvalidSpec) as exc:
        return _fail("infeasible_config", str(exc), 2)
    except (NonConvergence, EmptyGrid) as exc:
        return _fail("non_convergence", str(exc), 3)
    except ValueError as exc:
        return _fail("infeasible_config", str(exc), 2)


if __name__ == "__main__":
    sys.exit(main())
