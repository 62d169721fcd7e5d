"""Command-line front door.

Subcommands: distance, geodesic, curvature, check, example,
integrability, completion-demo.  Inputs are the JSON wire formats of
the section and matrix types; outputs are JSON reports or CSV traces.
Identical inputs and seed produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import disk, fiber, linalg, sections, suites
from .completion import cauchy_experiment
from .errors import HermGeoError
from .sections import ScalarField, load_section, section_distance


def _emit(args, payload: dict) -> None:
    text = json.dumps(payload, indent=1, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_matrix(path: str) -> np.ndarray:
    with open(path) as fh:
        return linalg.matrix_from_json(json.load(fh))


def cmd_distance(args) -> int:
    h1 = load_section(args.h1)
    h2 = load_section(args.h2)
    print(f"{section_distance(h1, h2):.12g}")
    return 0


def cmd_geodesic(args) -> int:
    h1 = load_section(args.h1)
    h2 = load_section(args.h2)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            sections.write_geodesic_csv(h1, h2, args.steps, fh)
    else:
        sections.write_geodesic_csv(h1, h2, args.steps, sys.stdout)
    return 0


def cmd_curvature(args) -> int:
    h = linalg.posdef(_load_matrix(args.h))
    u = linalg.hermitian(_load_matrix(args.u))
    v = linalg.hermitian(_load_matrix(args.v))
    sec = fiber.sectional_curvature(h, u, v, args.alpha)
    _emit(args, {"sectional_curvature": sec, "alpha": args.alpha})
    return 0


def cmd_check(args) -> int:
    fn = suites.SUITES[args.suite]
    report = fn(seed=args.seed, samples=args.samples)
    _emit(args, report)
    return 0 if report["passed"] else 1


def cmd_example(args) -> int:
    mesh = disk.DiskMesh(args.nr, args.ntheta)
    if args.name == "raufi":
        report = disk.raufi_integrability(mesh, args.alpha)
        u = disk.GridFunction.from_callable(
            mesh, lambda z: np.log(np.abs(z) ** 2) * 2.0)  # log det
        psh = disk.psh_check(u, radii=[0.05, 0.1])
        report["psh_log_det"] = {
            "max_violation": psh.max_violation, "passed": psh.passed,
            "n_centers": psh.n_centers, "n_skipped": psh.n_skipped,
        }
    elif args.name == "line-bundle":
        report = disk.line_bundle_norms(mesh)
        u = disk.GridFunction.from_callable(
            mesh, lambda z: np.log(np.abs(z) ** 2))
        psh = disk.psh_check(u, radii=[0.05, 0.1])
        report["psh_phi"] = {
            "max_violation": psh.max_violation, "passed": psh.passed,
            "n_centers": psh.n_centers, "n_skipped": psh.n_skipped,
        }
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(args.name)
    _emit(args, report)
    return 0


def cmd_integrability(args) -> int:
    from .completion import integrability_report, singular_from_metric
    sigma = singular_from_metric(load_section(args.sigma))
    h0 = load_section(args.h0)
    rep = integrability_report(sigma, h0)
    _emit(args, {
        "l2_log_lambda_min": rep.l2_log_lambda_min,
        "l2_log_lambda_max": rep.l2_log_lambda_max,
        "l2_log_det": rep.l2_log_det,
        "l2_distance": rep.l2_distance,
        "is_l2": rep.is_l2,
    })
    return 0


def cmd_completion_demo(args) -> int:
    """Cauchy experiment: truncations of the unbounded profile log|z|^2
    converging to a non-smooth limit in the completion metric."""
    mesh = disk.DiskMesh(args.nr, args.ntheta)
    quad = mesh.quadrature(rank=1, alpha=args.alpha)
    h0 = sections.MetricSection(
        quad, np.ones((quad.n_points, 1, 1), dtype=complex))
    phi = np.log(np.abs(mesh.points()) ** 2)
    f_limit = ScalarField(quad, phi)
    f_seq = [ScalarField(quad, np.maximum(phi, -float(k)))
             for k in range(1, args.levels + 1)]
    rep = cauchy_experiment(h0, f_seq, f_limit)
    _emit(args, {
        "alpha": args.alpha,
        "levels": args.levels,
        "step_distances": list(rep.step_distances),
        "partial_sums": list(rep.partial_sums),
        "to_limit": list(rep.to_limit),
        "to_limit_formula": list(rep.to_limit_formula),
    })
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hermgeo",
        description="Geometry of positive-definite Hermitian metric sections")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("distance", help="distance between two section files")
    p.add_argument("h1")
    p.add_argument("h2")
    p.set_defaults(fn=cmd_distance)

    p = sub.add_parser("geodesic", help="CSV trace of the connecting geodesic")
    p.add_argument("h1")
    p.add_argument("h2")
    p.add_argument("--steps", type=int, default=11)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_geodesic)

    p = sub.add_parser("curvature",
                       help="sectional curvature from matrix JSON files")
    p.add_argument("h")
    p.add_argument("u")
    p.add_argument("v")
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_curvature)

    p = sub.add_parser("check", help="run a seeded property sweep")
    p.add_argument("suite", choices=sorted(suites.SUITES))
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("example", help="disk case studies")
    p.add_argument("name", choices=["raufi", "line-bundle"])
    p.add_argument("--nr", type=int, default=400)
    p.add_argument("--ntheta", type=int, default=64)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_example)

    p = sub.add_parser("integrability",
                       help="integrability report for a section pair")
    p.add_argument("sigma")
    p.add_argument("h0")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_integrability)

    p = sub.add_parser("completion-demo",
                       help="Cauchy experiment toward a singular limit")
    p.add_argument("--nr", type=int, default=100)
    p.add_argument("--ntheta", type=int, default=32)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--levels", type=int, default=8)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_completion_demo)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except HermGeoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
