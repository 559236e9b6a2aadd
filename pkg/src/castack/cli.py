"""Command-line interface for stack forces, energies and verification.

Subcommands
-----------
force        Casimir force per unit area in one layer of a stack file.
energy       Casimir energy per unit area in one layer of a stack file.
slab-cavity  Net force on the slab of a cavity file.
sweep        Force versus layer thickness, written as CSV.
force-1d     One-dimensional (normal incidence only) cavity force.
verify-greens
             Run the built-in real-frequency stress uniformity matrix.

All results are printed as "key = value" lines with floats at full
precision (repr), so values can be compared and re-parsed exactly.
Exit status: 0 on success, 2 on any input error (bad flags, bad files,
bad indices), 3 when the quadrature fails to converge within its budget
or the verification matrix fails its tolerance.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .casimir import force_1d, force_per_area, energy_per_area, slab_in_cavity_force
from .constants import C, HBAR
from .fresnel import stack_reflection
from .greens import run_verification
from .quadrature import QuadratureSpec
from .stackio import load_cavity, load_stack

__all__ = ["main"]


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _emit(pairs) -> None:
    for key, value in pairs:
        print(f"{key} = {_fmt(value)}")


def _spec(args) -> QuadratureSpec:
    return QuadratureSpec(rel_tol=args.rel_tol, max_evals=args.max_evals)


def _probe_thickness(stack, j: int) -> float:
    stack._check_index(j)
    return stack.layers[j].thickness


def _cmd_force(args) -> int:
    stack = load_stack(args.stack)
    result = force_per_area(stack, args.layer, _spec(args))
    quad = result.quadrature
    if args.normalized:
        d = _probe_thickness(stack, args.layer)
        unit = HBAR * C / d**4
        _emit(
            [
                ("f_minus_normalized", result.f_minus / unit),
                ("abs_err", quad.abs_error_estimate / unit),
            ]
        )
    else:
        _emit([("f_minus_Pa", result.f_minus), ("abs_err", quad.abs_error_estimate)])
    _emit([("evals", quad.evals), ("converged", quad.converged)])
    return 0 if quad.converged else 3


def _cmd_energy(args) -> int:
    stack = load_stack(args.stack)
    result = energy_per_area(stack, args.layer, _spec(args))
    quad = result.quadrature
    if args.normalized:
        d = _probe_thickness(stack, args.layer)
        unit = HBAR * C / d**3
        _emit(
            [
                ("energy_normalized", result.energy / unit),
                ("abs_err", quad.abs_error_estimate / unit),
            ]
        )
    else:
        _emit([("energy_J_per_m2", result.energy), ("abs_err", quad.abs_error_estimate)])
    _emit([("evals", quad.evals), ("converged", quad.converged)])
    return 0 if quad.converged else 3


def _cmd_slab_cavity(args) -> int:
    config = load_cavity(args.cavity)
    result = slab_in_cavity_force(config, _spec(args))
    quad = result.quadrature
    _emit(
        [
            ("force_on_slab_Pa", result.force),
            ("abs_err", quad.abs_error_estimate),
            ("evals", quad.evals),
            ("converged", quad.converged),
        ]
    )
    return 0 if quad.converged else 3


def _parse_vary(vary: str) -> int:
    parts = vary.split(":")
    if len(parts) != 3 or parts[0] != "layer" or parts[2] != "thickness":
        raise ValueError(f"--vary must look like layer:J:thickness, got {vary!r}")
    try:
        return int(parts[1])
    except ValueError:
        raise ValueError(f"--vary layer index must be an integer, got {parts[1]!r}") from None


def _cmd_sweep(args) -> int:
    stack = load_stack(args.stack)
    j = _parse_vary(args.vary)
    if not (args.start > 0.0 and args.stop > args.start):
        raise ValueError(
            f"sweep needs 0 < --from < --to, got --from {args.start!r} --to {args.stop!r}"
        )
    if args.points < 1:
        raise ValueError(f"--points must be >= 1, got {args.points}")
    spec = _spec(args)
    if args.points == 1:
        distances = [args.start]
    else:
        step = (args.stop - args.start) / (args.points - 1)
        distances = [args.start + i * step for i in range(args.points - 1)] + [args.stop]
    lines = ["distance_m,f_minus_Pa,abs_err,evals,converged"]
    all_converged = True
    for d in distances:
        result = force_per_area(stack.with_thickness(j, d), j, spec)
        quad = result.quadrature
        all_converged = all_converged and quad.converged
        lines.append(
            f"{d!r},{result.f_minus!r},{quad.abs_error_estimate!r},"
            f"{quad.evals},{_fmt(quad.converged)}"
        )
    with open(args.out, "w", encoding="utf-8") as handle:
        handle.write("\n".join(lines) + "\n")
    for line in lines:
        print(line)
    return 0 if all_converged else 3


def _cmd_force_1d(args) -> int:
    stack = load_stack(args.stack)
    j = args.layer
    stack._check_index(j)
    lay = stack.layers[j]

    # At k = 0 the two polarizations coincide; use s.
    def r_minus(xi):
        return stack_reflection(stack, j, "minus", "s", xi=xi, k=0.0)

    def r_plus(xi):
        return stack_reflection(stack, j, "plus", "s", xi=xi, k=0.0)

    result = force_1d(r_minus, r_plus, lay.material, lay.thickness, _spec(args))
    quad = result.quadrature
    _emit(
        [
            ("force_N", result.force),
            ("abs_err", quad.abs_error_estimate),
            ("evals", quad.evals),
            ("converged", quad.converged),
        ]
    )
    return 0 if quad.converged else 3


def _cmd_verify_greens(args) -> int:
    report = run_verification(seed=args.seed, tolerance=args.tolerance)
    _emit(
        [
            ("checks", report.checks),
            ("max_z_variation", report.max_z_variation),
            ("max_closed_form_deviation", report.max_closed_form_deviation),
            ("tolerance", report.tolerance),
            ("passed", report.passed),
        ]
    )
    return 0 if report.passed else 3


def _add_quad_flags(sub) -> None:
    sub.add_argument(
        "--rel-tol",
        type=float,
        default=1e-8,
        metavar="T",
        help="relative tolerance of the quadrature (default 1e-8)",
    )
    sub.add_argument(
        "--max-evals",
        type=int,
        default=10_000_000,
        metavar="N",
        help="integrand evaluation budget (default 1e7)",
    )


def _add_normalized_flag(sub, what: str) -> None:
    sub.add_argument(
        "--normalized",
        action="store_true",
        help=(
            f"report the dimensionless {what} instead of SI units, "
            "dividing by hbar*c/d^4 for force and hbar*c/d^3 for energy, "
            "with d the probed layer's thickness"
        ),
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="castack",
        description="Casimir forces and energies in planar multilayer stacks.",
        epilog=(
            "exit status: 0 success; 2 input error; "
            "3 quadrature non-convergence or failed verification"
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subs = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    force = subs.add_parser("force", help="force per unit area in one layer of a stack")
    force.add_argument("--stack", required=True, metavar="FILE", help="stack JSON file")
    force.add_argument("--layer", required=True, type=int, metavar="J", help="probed layer index")
    _add_quad_flags(force)
    _add_normalized_flag(force, "pressure f*d^4/(hbar*c)")
    force.set_defaults(handler=_cmd_force)

    energy = subs.add_parser("energy", help="energy per unit area in one layer of a stack")
    energy.add_argument("--stack", required=True, metavar="FILE", help="stack JSON file")
    energy.add_argument("--layer", required=True, type=int, metavar="J", help="probed layer index")
    _add_quad_flags(energy)
    _add_normalized_flag(energy, "energy E*d^3/(hbar*c)")
    energy.set_defaults(handler=_cmd_energy)

    slab = subs.add_parser("slab-cavity", help="net force on the slab of a two-gap cavity")
    slab.add_argument("--cavity", required=True, metavar="FILE", help="cavity JSON file")
    _add_quad_flags(slab)
    slab.set_defaults(handler=_cmd_slab_cavity)

    sweep = subs.add_parser("sweep", help="force vs layer thickness, written as CSV")
    sweep.add_argument("--stack", required=True, metavar="FILE", help="stack JSON file")
    sweep.add_argument(
        "--vary",
        required=True,
        metavar="layer:J:thickness",
        help="what to vary; only layer thicknesses are supported",
    )
    sweep.add_argument(
        "--from", dest="start", required=True, type=float, metavar="A", help="first thickness [m]"
    )
    sweep.add_argument(
        "--to", dest="stop", required=True, type=float, metavar="B", help="last thickness [m]"
    )
    sweep.add_argument("--points", required=True, type=int, metavar="N", help="number of rows")
    sweep.add_argument("--out", required=True, metavar="FILE", help="output CSV path")
    _add_quad_flags(sweep)
    sweep.set_defaults(handler=_cmd_sweep)

    f1d = subs.add_parser(
        "force-1d", help="one-dimensional cavity force from a stack's k = 0 reflections"
    )
    f1d.add_argument("--stack", required=True, metavar="FILE", help="stack JSON file")
    f1d.add_argument("--layer", required=True, type=int, metavar="J", help="cavity layer index")
    _add_quad_flags(f1d)
    f1d.set_defaults(handler=_cmd_force_1d)

    verify = subs.add_parser(
        "verify-greens",
        help="check stress uniformity across random absorbing stacks at real frequency",
    )
    verify.add_argument(
        "--seed", type=int, default=20260816, help="stack-draw seed (default 20260816)"
    )
    verify.add_argument(
        "--tolerance", type=float, default=1e-10, help="relative tolerance (default 1e-10)"
    )
    verify.set_defaults(handler=_cmd_verify_greens)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return 0 if code is None else int(code)
    try:
        return args.handler(args)
    except (ValueError, IndexError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
