"""Antisymmetric depth perturbation of a symmetric double well.

About a left-right symmetric configuration, perturb the well floors in
opposite directions,

    V_-2 -> V_-2 + delta_v,     V_2 -> V_2 - delta_v,

and track the response to first order.  With v = delta_v / delta_e the
perturbation measured in units of the half-splitting, the two levels are

    e0 = e_bar + delta_e (F v - sqrt(1 + G^2 v^2))
    e1 = e_bar + delta_e (F v + sqrt(1 + G^2 v^2))

where F collects the antisymmetric and G the symmetric combination of the
well-edge responses.  The decoupled-well energies are
E_L/R = e_bar + delta_e (F v +- G v), and the right/left localization
probability ratio of the ground state is

    P_R / P_L = (sqrt(1 + G^2 v^2) + G v) / (sqrt(1 + G^2 v^2) - G v),

valid for v >> 1 as well; the only smallness requirement is
|delta_v| << potential steps W.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, NotSymmetric, PerturbationTooLarge
from .isolated import IsolatedWellSolution, coupling, solve_wells
from .params import ReducedParams, WellSpec, reduce
from .tunneling import Parity, solve_r0

__all__ = [
    "SymmetricBase",
    "PerturbedLevels",
    "DeltaLedger",
    "symmetric_base",
    "delta_ledger",
    "perturbed_levels",
    "invert_ratio",
    "two_level_check",
]


@dataclass(frozen=True, slots=True)
class SymmetricBase:
    """Symmetric reference configuration for the perturbation formulas.

    ``min_depth`` is the smallest of the four potential steps; first-order
    validity requires |delta_v| well below it.
    """

    a_sym: float
    e_bar: float
    delta_e: float
    f_coef: float
    g_coef: float
    p_small: float
    wells: tuple[IsolatedWellSolution, IsolatedWellSolution]
    min_depth: float


@dataclass(frozen=True, slots=True)
class PerturbedLevels:
    """Level energies and localization for one perturbation strength."""

    v_ratio: float
    delta_v: float
    e_left: float
    e_right: float
    e0: float
    e1: float
    z_asym: float
    prob_ratio: float


@dataclass(frozen=True, slots=True)
class DeltaLedger:
    """Relative first-order shifts delta_X / X per unit of the applied
    antisymmetric perturbation (left floor raised by delta_v, right floor
    lowered by delta_v).

    The barrier-side shifts ``beta`` equal the corresponding inner-edge
    ``alpha`` shifts (both scale as the inverse square root of the same
    step), so only the twelve independent quantities are recorded.  The
    ``a_m1``/``a_1`` entries are relative to the symmetric ``a``.
    """

    alpha_m3: float
    alpha_m1: float
    alpha_1: float
    alpha_3: float
    y_m2: float
    y_2: float
    s_m3: float
    s_m1: float
    s_1: float
    s_3: float
    a_m1: float
    a_1: float


def symmetric_base(spec: WellSpec, tol: float = 1e-13) -> SymmetricBase:
    """Solve the symmetric configuration and package its response inputs.

    Raises :class:`NotSymmetric` when the derived well coefficients
    a_left, a_right differ by more than 1e-9 relative.
    """
    reduced_params = reduce(spec)
    left, right = solve_wells(reduced_params, tol=tol)
    a_scale = max(abs(left.a_coef), abs(right.a_coef))
    if abs(right.a_coef - left.a_coef) > 1e-9 * a_scale:
        raise NotSymmetric(
            f"wells are detuned: a_left={left.a_coef!r}, a_right={right.a_coef!r} "
            "differ by more than 1e-9 relative; the antisymmetric-perturbation "
            "formulas require a symmetric base"
        )
    sum_left = left.u_cap * (
        left.s_inner**2 * left.t_inner + left.s_outer**2 * left.t_outer
    )
    sum_right = right.u_cap * (
        right.s_inner**2 * right.t_inner + right.s_outer**2 * right.t_outer
    )
    f_coef = (sum_right - sum_left) / (2.0 * math.pi)
    g_coef = 1.0 - (sum_right + sum_left) / (2.0 * math.pi)
    r0, p_small = solve_r0(
        Parity.GROUND, left.a_coef, right.a_coef, coupling(left, right).p_cap, tol=tol
    )
    a_sym = 0.5 * (left.a_coef + right.a_coef)
    delta_e = (2.0 * a_sym * reduced_params.k_0 / math.pi**2) * math.sqrt(p_small)
    e_bar = 0.5 * (
        spec.v_m2
        + reduced_params.k_m2 * left.y_cap**2
        + spec.v_2
        + reduced_params.k_2 * right.y_cap**2
    )
    return SymmetricBase(
        a_sym=a_sym,
        e_bar=e_bar,
        delta_e=delta_e,
        f_coef=f_coef,
        g_coef=g_coef,
        p_small=p_small,
        wells=(left, right),
        min_depth=min(
            reduced_params.w_m3, reduced_params.w_m1, reduced_params.w_1, reduced_params.w_3
        ),
    )


def _require_small(delta_v: float, min_depth: float) -> None:
    if abs(delta_v) >= 0.01 * min_depth:
        raise PerturbationTooLarge(
            f"|delta_v| = {abs(delta_v)!r} is not small against the potential "
            f"steps (smallest step {min_depth!r}); first-order response requires "
            "|delta_v| < 0.01 * min(W)"
        )


def delta_ledger(
    base: SymmetricBase, reduced: ReducedParams, delta_v: float
) -> DeltaLedger:
    """All twelve first-order relative shifts for the perturbation delta_v.

    Each entry is delta_X / X (the ``a`` entries delta_a / a_sym).  Signs
    follow from raising the left floor (which shrinks the left well's
    steps) and lowering the right floor (which deepens the right well's).
    """
    _require_small(delta_v, base.min_depth)
    left, right = base.wells
    w_m3, w_m1, w_1, w_3 = reduced.w_m3, reduced.w_m1, reduced.w_1, reduced.w_3
    two_pi = 2.0 * math.pi
    pi_y_left = math.pi * left.y_cap
    pi_y_right = math.pi * right.y_cap
    return DeltaLedger(
        alpha_m3=+delta_v / (2.0 * w_m3),
        alpha_m1=+delta_v / (2.0 * w_m1),
        alpha_1=-delta_v / (2.0 * w_1),
        alpha_3=-delta_v / (2.0 * w_3),
        y_m2=-(left.u_cap / two_pi) * (left.t_inner / w_m1 + left.t_outer / w_m3) * delta_v,
        y_2=+(right.u_cap / two_pi) * (right.t_inner / w_1 + right.t_outer / w_3) * delta_v,
        s_m3=-(left.u_cap / two_pi)
        * (left.t_inner / w_m1 - (left.t_inner + pi_y_left) / w_m3)
        * delta_v,
        s_m1=-(left.u_cap / two_pi)
        * (left.t_outer / w_m3 - (left.t_outer + pi_y_left) / w_m1)
        * delta_v,
        s_1=+(right.u_cap / two_pi)
        * (right.t_outer / w_3 - (right.t_outer + pi_y_right) / w_1)
        * delta_v,
        s_3=+(right.u_cap / two_pi)
        * (right.t_inner / w_1 - (right.t_inner + pi_y_right) / w_3)
        * delta_v,
        a_m1=-(left.u_cap / two_pi)
        * (
            (left.s_inner * left.c_inner + left.t_outer + pi_y_left)
            / (left.c_inner**2 * w_m1)
            - left.t_inner**2 * left.t_outer / w_m3
        )
        * delta_v,
        a_1=+(right.u_cap / two_pi)
        * (
            (right.s_inner * right.c_inner + right.t_outer + pi_y_right)
            / (right.c_inner**2 * w_1)
            - right.t_inner**2 * right.t_outer / w_3
        )
        * delta_v,
    )


def perturbed_levels(base: SymmetricBase, delta_v: float) -> PerturbedLevels:
    """Levels, decoupled energies, and localization ratio at delta_v."""
    _require_small(delta_v, base.min_depth)
    v = delta_v / base.delta_e
    z = base.g_coef * v
    sq = math.hypot(1.0, z)
    drift = base.f_coef * v
    # (sq - z)(sq + z) = 1 exactly, so the ratio has the stable square form.
    ratio = (sq + z) ** 2 if z >= 0.0 else 1.0 / (sq - z) ** 2
    return PerturbedLevels(
        v_ratio=v,
        delta_v=delta_v,
        e_left=base.e_bar + base.delta_e * (drift + z),
        e_right=base.e_bar + base.delta_e * (drift - z),
        e0=base.e_bar + base.delta_e * (drift - sq),
        e1=base.e_bar + base.delta_e * (drift + sq),
        z_asym=z,
        prob_ratio=ratio,
    )


def invert_ratio(base: SymmetricBase, prob_ratio: float) -> float:
    """The delta_v that produces a given ground-state P_R / P_L.

    Inverts the ratio formula: delta_v = (delta_e / 2G) (sqrt(ratio) -
    1/sqrt(ratio)).
    """
    if not prob_ratio > 0.0:
        raise DomainError(f"prob_ratio must be > 0, got {prob_ratio!r}")
    root = math.sqrt(prob_ratio)
    return (base.delta_e / (2.0 * base.g_coef)) * (root - 1.0 / root)


def two_level_check(base: SymmetricBase, delta_v: float) -> tuple[float, float]:
    """Residuals of the closed-form levels in the two-state matrix.

    Builds H = [[E_L, -delta_e], [-delta_e, E_R]], applies it to the
    localization eigenvectors (sqrt(P_L), sqrt(P_R)) and
    (-sqrt(P_R), sqrt(P_L)), and returns the two relative residual norms
    ||H psi - E psi|| / |E| against the closed-form e0, e1.
    """
    levels = perturbed_levels(base, delta_v)
    z = levels.z_asym
    sq = math.hypot(1.0, z)
    if z >= 0.0:
        p_left = 1.0 / (2.0 * sq * (sq + z))
        p_right = 1.0 - p_left
    else:
        p_right = 1.0 / (2.0 * sq * (sq - z))
        p_left = 1.0 - p_right
    cos_half = math.sqrt(p_left)
    sin_half = math.sqrt(p_right)
    residuals = []
    for e_value, vec in (
        (levels.e0, (cos_half, sin_half)),
        (levels.e1, (-sin_half, cos_half)),
    ):
        h_vec = (
            levels.e_left * vec[0] - base.delta_e * vec[1],
            -base.delta_e * vec[0] + levels.e_right * vec[1],
        )
        residual = math.hypot(h_vec[0] - e_value * vec[0], h_vec[1] - e_value * vec[1])
        residuals.append(residual / abs(e_value))
    return residuals[0], residuals[1]
