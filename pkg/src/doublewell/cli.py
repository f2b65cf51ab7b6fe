"""Command-line surface for the double-well solver.

Subcommands:

* ``solve``         -- full approximation pipeline, JSON report on stdout.
* ``perturb``       -- add an antisymmetric well-depth perturbation block.
* ``oracle``        -- compare the approximation against the exact solver.
* ``sample``        -- write a CSV of one eigenstate's wavefunction.
* ``paper-example`` -- run the built-in worked example against its
  embedded reference values.

Reports are deterministic: fixed key order, floats serialized with
``repr`` (lossless round-trip), and no timestamps, so identical inputs
produce byte-identical output.  Exit codes: 0 success; 2 bad flags or an
invalid/unreadable spec; 3 the closed-form approximation does not apply;
4 perturbation of a non-symmetric spec; 5 oracle root finding failed;
6 unwritable output path; 7 worked-example mismatch.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from collections.abc import Sequence

import numpy as np

from .errors import (
    AssumptionViolated,
    BadRange,
    DegeneracyUnresolved,
    DomainError,
    EnergyOutOfBand,
    ExcitedBelowZero,
    GridTooCoarse,
    InvalidSpec,
    LevelNotFound,
    MatchingResidualTooLarge,
    NoConvergence,
    NotSymmetric,
    PerturbationTooLarge,
)
from .isolated import IsolatedWellSolution, newton_initial, newton_step, series_y
from .oracle import compare
from .params import WellSpec, load_spec, reduce
from .perturb import invert_ratio, perturbed_levels, symmetric_base
from .tunneling import (
    CoupledSolution,
    DoubleWellResult,
    Parity,
    coefficient_ratio,
    solve_double_well,
)
from .wavefunc import assemble, sample, write_sample_csv

__all__ = ["EXAMPLE_SPEC", "main"]

# Symmetric two-well layout whose reference values are embedded below:
# unit outer walls and barrier, wells at zero, quarter-depth levels.
EXAMPLE_SPEC = WellSpec(
    hbar=1.0,
    mass=2.0,
    v_m4=1.0,
    v_m2=0.0,
    v_0=1.0,
    v_2=0.0,
    v_4=1.0,
    w_m2=2.0 * math.pi / 3.0,
    w_0=10.0 * math.pi / 3.0,
    w_2=2.0 * math.pi / 3.0,
)


def _spec_dict(spec: WellSpec) -> dict:
    return {
        "hbar": spec.hbar,
        "mass": spec.mass,
        "v_m4": spec.v_m4,
        "v_m2": spec.v_m2,
        "v_0": spec.v_0,
        "v_2": spec.v_2,
        "v_4": spec.v_4,
        "w_m2": spec.w_m2,
        "w_0": spec.w_0,
        "w_2": spec.w_2,
        "x_m3": spec.x_m3,
        "x_m1": spec.x_m1,
        "x_1": spec.x_1,
        "x_3": spec.x_3,
    }


def _well_dict(well: IsolatedWellSolution) -> dict:
    return {
        "y": well.y_cap,
        "s_outer": well.s_outer,
        "s_inner": well.s_inner,
        "phi_outer": well.phi_outer,
        "phi_inner": well.phi_inner,
        "c_inner": well.c_inner,
        "t_outer": well.t_outer,
        "t_inner": well.t_inner,
        "u": well.u_cap,
        "a": well.a_coef,
        "b": well.b_coef,
        "c": well.c_coef,
    }


def _level_dict(solution: CoupledSolution, coef_ratio: float) -> dict:
    return {
        "parity": solution.parity.value,
        "r0": solution.r0,
        "p_small": solution.p_small,
        "eps_left": solution.eps_left,
        "eps_right": solution.eps_right,
        "y_left": solution.y_left,
        "y_right": solution.y_right,
        "r_left": solution.r_left,
        "r_right": solution.r_right,
        "energy_left_estimate": solution.energy_left_estimate,
        "energy_right_estimate": solution.energy_right_estimate,
        "energy": solution.energy,
        "z_asym": solution.z_asym,
        "r_asym": solution.r_asym,
        "prob_left": solution.prob_left,
        "prob_right": solution.prob_right,
        "coefficient_ratio": coef_ratio,
    }


def build_report(result: DoubleWellResult) -> dict:
    reduced = result.reduced
    return {
        "spec": _spec_dict(result.spec),
        "reduced": {
            "w_m3": reduced.w_m3,
            "w_m1": reduced.w_m1,
            "w_1": reduced.w_1,
            "w_3": reduced.w_3,
            "k_m2": reduced.k_m2,
            "k_0": reduced.k_0,
            "k_2": reduced.k_2,
            "alpha_m3": reduced.alpha_m3,
            "alpha_m1": reduced.alpha_m1,
            "alpha_1": reduced.alpha_1,
            "alpha_3": reduced.alpha_3,
            "beta_m1": reduced.beta_m1,
            "beta_1": reduced.beta_1,
            "gamma_m3": reduced.gamma_m3,
            "gamma_m1": reduced.gamma_m1,
            "gamma_1": reduced.gamma_1,
            "gamma_3": reduced.gamma_3,
        },
        "wells": {"left": _well_dict(result.left), "right": _well_dict(result.right)},
        "coupling": {"p": result.coupling.p_cap},
        "ground": _level_dict(
            result.ground,
            coefficient_ratio(Parity.GROUND, result.ground, result.left, result.right),
        ),
        "excited": _level_dict(
            result.excited,
            coefficient_ratio(Parity.EXCITED, result.excited, result.left, result.right),
        ),
        "splitting": {
            "e_bar": result.splitting.e_bar,
            "delta_e": result.splitting.delta_e,
            "e0": result.splitting.e0,
            "e1": result.splitting.e1,
        },
    }


def _emit(report: dict) -> None:
    sys.stdout.write(json.dumps(report, indent=2) + "\n")


def _verbose_table(result: DoubleWellResult) -> None:
    rows: list[tuple[str, float]] = []
    for side, well in (("left", result.left), ("right", result.right)):
        rows += [
            (f"{side}.Y", well.y_cap),
            (f"{side}.S_inner", well.s_inner),
            (f"{side}.U", well.u_cap),
            (f"{side}.a", well.a_coef),
            (f"{side}.b", well.b_coef),
            (f"{side}.c", well.c_coef),
        ]
    rows.append(("P", result.coupling.p_cap))
    for label, level in (("ground", result.ground), ("excited", result.excited)):
        rows += [
            (f"{label}.r0", level.r0),
            (f"{label}.p", level.p_small),
            (f"{label}.energy", level.energy),
            (f"{label}.prob_left", level.prob_left),
            (f"{label}.prob_right", level.prob_right),
        ]
    rows += [
        ("e_bar", result.splitting.e_bar),
        ("delta_e", result.splitting.delta_e),
        ("e0", result.splitting.e0),
        ("e1", result.splitting.e1),
    ]
    for name, value in rows:
        sys.stderr.write(f"{name:<20} {value:.12g}\n")


def cmd_solve(args: argparse.Namespace) -> int:
    spec = load_spec(args.spec)
    result = solve_double_well(spec)
    _emit(build_report(result))
    if args.verbose:
        _verbose_table(result)
    return 0


def cmd_perturb(args: argparse.Namespace) -> int:
    spec = load_spec(args.spec)
    base = symmetric_base(spec)
    if args.delta_v is not None:
        delta_v = args.delta_v
    elif args.v is not None:
        delta_v = args.v * base.delta_e
    else:
        delta_v = invert_ratio(base, args.ratio)
    levels = perturbed_levels(base, delta_v)
    result = solve_double_well(spec)
    report = build_report(result)
    report["perturbation"] = {
        "a_sym": base.a_sym,
        "e_bar": base.e_bar,
        "delta_e": base.delta_e,
        "f_coef": base.f_coef,
        "g_coef": base.g_coef,
        "v": levels.v_ratio,
        "delta_v": levels.delta_v,
        "e_left": levels.e_left,
        "e_right": levels.e_right,
        "e0": levels.e0,
        "e1": levels.e1,
        "z_asym": levels.z_asym,
        "prob_ratio": levels.prob_ratio,
    }
    _emit(report)
    return 0


def cmd_oracle(args: argparse.Namespace) -> int:
    spec = load_spec(args.spec)
    comparison = compare(spec, args.tol)
    report = build_report(solve_double_well(spec))
    report["oracle"] = {
        "tol_rel": comparison.tol_rel,
        "e0_approx": comparison.e0_approx,
        "e1_approx": comparison.e1_approx,
        "delta_e_approx": comparison.delta_e_approx,
        "ratio_approx": comparison.ratio_approx,
        "e0_exact": comparison.e0_exact,
        "e1_exact": comparison.e1_exact,
        "delta_e_exact": comparison.delta_e_exact,
        "ratio_exact": comparison.ratio_exact,
        "err_e0": comparison.err_e0,
        "err_e1": comparison.err_e1,
        "err_delta_e": comparison.err_delta_e,
        "err_ratio": comparison.err_ratio,
    }
    _emit(report)
    return 0


def cmd_sample(args: argparse.Namespace) -> int:
    spec = load_spec(args.spec)
    result = solve_double_well(spec)
    parity = Parity(args.state)
    solution = result.ground if parity == Parity.GROUND else result.excited
    model = assemble(spec, result.reduced, solution)
    if args.range is not None:
        x_min, x_max = args.range
    else:
        x_min = model.x_m3 - 5.0 / model.kappa_m4
        x_max = model.x_3 + 5.0 / model.kappa_4
    table = sample(model, x_min, x_max, args.points)
    try:
        write_sample_csv(table, args.out)
    except OSError as exc:
        sys.stderr.write(f"error: cannot write {args.out!r}: {exc}\n")
        return 6
    trapezoid = getattr(np, "trapezoid", None) or np.trapz
    norm = float(trapezoid(table[:, 1] ** 2, table[:, 0]))
    sys.stderr.write(
        f"integral of psi^2 over [{x_min:.12g}, {x_max:.12g}]: {norm:.12g}\n"
    )
    return 0


def _example_rows() -> list[tuple[str, float, float, float, str]]:
    """(name, got, expected, tolerance, mode) for every reference value."""
    spec = EXAMPLE_SPEC
    reduced = reduce(spec)
    result = solve_double_well(spec)
    base = symmetric_base(spec)
    well = result.left
    ground, excited = result.ground, result.excited

    alpha = reduced.alpha_m1
    gamma = reduced.gamma_m1
    y1 = newton_initial(alpha, alpha, gamma, gamma)
    y2 = newton_step(y1, alpha, alpha)
    y3 = newton_step(y2, alpha, alpha)
    y_series = series_y(alpha, alpha, gamma, gamma)

    e_bar = base.e_bar
    rows = [
        ("gamma", gamma, 0.507626296843, 1e-10, "rel"),
        ("S_iter_1", alpha * y1, 0.500580902268, 1e-9, "rel"),
        ("S_iter_2", alpha * y2, 0.500000040032, 1e-9, "rel"),
        ("S_iter_3", alpha * y3, 0.5, 1e-9, "rel"),
        ("S_series", alpha * y_series, 0.500008388946, 1e-9, "rel"),
        ("a", well.a_coef, 18.1379936423, 1e-10, "rel"),
        ("b", well.b_coef, 6.04599788078, 1e-10, "rel"),
        ("U", well.u_cap, 0.96691295084, 1e-10, "rel"),
        ("c", well.c_coef, 0.266543524579, 1e-10, "rel"),
        ("P", result.coupling.p_cap, 2.59700181808, 1e-10, "rel"),
        ("r0", ground.r0, 18.1379936637, 1e-9, "rel"),
        ("p", ground.p_small, 4.57099905795e-16, 1e-9, "rel"),
        ("sqrt_p", math.sqrt(ground.p_small), 2.13798948967e-8, 1e-9, "rel"),
        ("F", base.f_coef, 0.0, 1e-12, "abs"),
        ("G", base.g_coef, 0.911152158473, 1e-10, "rel"),
        ("delta_e", base.delta_e, 1.76810307565e-9, 1e-9, "rel"),
        ("E0_over_Ebar", ground.energy / e_bar, 0.999999992928, 1e-11, "abs"),
        ("E1_over_Ebar", excited.energy / e_bar, 1.000000007072, 1e-11, "abs"),
    ]
    for v, ratio_ref, e0_ref, e1_ref in (
        (0.0, 1.0, 0.999999992928, 1.000000007072),
        (1.0, 5.12569762924, 0.999999990432, 1.000000009568),
        (2.0, 15.2174580971, 0.999999985299, 1.000000014701),
        (141.394471534, None, 0.999999088820, 1.000000911180),
    ):
        levels = perturbed_levels(base, v * base.delta_e)
        tag = f"v={v!r}"
        if ratio_ref is not None:
            rows.append((f"{tag}.prob_ratio", levels.prob_ratio, ratio_ref, 1e-9, "rel"))
        rows.append((f"{tag}.E0_over_Ebar", levels.e0 / e_bar, e0_ref, 1e-11, "abs"))
        rows.append((f"{tag}.E1_over_Ebar", levels.e1 / e_bar, e1_ref, 1e-11, "abs"))
        if v > 2.0:
            z = levels.z_asym
            rows.append((f"{tag}.sqrt_term", math.hypot(1.0, z), 128.835758903, 1e-9, "rel"))
            rows.append((f"{tag}.prob_ratio", levels.prob_ratio, 66393.0, 1.0, "abs"))
    return rows


def cmd_paper_example(args: argparse.Namespace) -> int:
    failures: list[str] = []
    for name, got, expected, tol, mode in _example_rows():
        if mode == "rel":
            error = abs(got - expected) / abs(expected)
        else:
            error = abs(got - expected)
        ok = error <= tol
        if not ok:
            failures.append(name)
        sys.stdout.write(
            f"{'PASS' if ok else 'FAIL'} {name} = {got!r} "
            f"(expected {expected!r}, {mode} tol {tol:g})\n"
        )
    if failures:
        sys.stderr.write("failing quantities: " + ", ".join(failures) + "\n")
        return 7
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="doublewell",
        description=(
            "Closed-form two-level approximations for the one-dimensional "
            "double square well, with an exact matching oracle."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="run the approximation pipeline on a spec file")
    p_solve.add_argument("spec", help="path to a key = value spec file")
    p_solve.add_argument(
        "--verbose", action="store_true", help="print a 12-digit summary table to stderr"
    )
    p_solve.set_defaults(func=cmd_solve)

    p_pert = sub.add_parser(
        "perturb", help="antisymmetric well-depth perturbation of a symmetric spec"
    )
    p_pert.add_argument("spec", help="path to a key = value spec file")
    group = p_pert.add_mutually_exclusive_group(required=True)
    group.add_argument("--delta-v", type=float, dest="delta_v", help="depth shift (energy units)")
    group.add_argument("--v", type=float, dest="v", help="depth shift over half-splitting")
    group.add_argument(
        "--ratio", type=float, dest="ratio", help="target ground-state P_R/P_L to invert"
    )
    p_pert.set_defaults(func=cmd_perturb)

    p_oracle = sub.add_parser(
        "oracle", help="compare the approximation against the exact transcendental solver"
    )
    p_oracle.add_argument("spec", help="path to a key = value spec file")
    p_oracle.add_argument(
        "--tol", type=float, default=1e-13, help="relative tolerance on exact energies"
    )
    p_oracle.set_defaults(func=cmd_oracle)

    p_sample = sub.add_parser("sample", help="write one eigenstate's wavefunction as CSV")
    p_sample.add_argument("spec", help="path to a key = value spec file")
    p_sample.add_argument(
        "--state", choices=("ground", "excited"), default="ground", help="which level"
    )
    p_sample.add_argument(
        "--range",
        nargs=2,
        type=float,
        metavar=("XMIN", "XMAX"),
        help="sampling interval (default: wells plus five decay lengths each side)",
    )
    p_sample.add_argument("--points", type=int, default=1001, help="number of samples")
    p_sample.add_argument("--out", required=True, help="destination CSV path")
    p_sample.set_defaults(func=cmd_sample)

    p_example = sub.add_parser(
        "paper-example",
        help="run the built-in worked example and check embedded reference values",
    )
    p_example.set_defaults(func=cmd_paper_example)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except NotSymmetric as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 4
    except (LevelNotFound, DegeneracyUnresolved) as exc:
        sys.stderr.write(
            f"error: {exc}\n"
            "hint: LevelNotFound means a well binds no level; DegeneracyUnresolved "
            "means --tol is coarser than the level splitting.\n"
        )
        return 5
    except (AssumptionViolated, NoConvergence, ExcitedBelowZero, MatchingResidualTooLarge) as exc:
        sys.stderr.write(
            f"error: {exc}\n"
            "hint: the closed-form approximation does not apply to this potential; "
            "use the `oracle` subcommand for exact energies.\n"
        )
        return 3
    except (
        InvalidSpec,
        DomainError,
        PerturbationTooLarge,
        EnergyOutOfBand,
        GridTooCoarse,
        BadRange,
    ) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
