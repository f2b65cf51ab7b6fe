"""Two wells coupled through the barrier: fixed points, energies, splitting.

With a_left, a_right the wells' barrier coefficients and
P the coupling from :mod:`doublewell.isolated`, the node/extremum position
of the symmetric (ground) combination inside the barrier satisfies

    r0 = (a_left + a_right)/2 + sqrt(((a_right - a_left)/2)^2 + P e^{-2 r0})

and the antisymmetric (excited) combination the same with a minus sign in
front of the square root.  Writing p = P e^{-2 r0}, the per-well phase
corrections are epsilon = (r0 - a)/b per side (sign flipped for the
excited state), which shift each well's phase Y -> Y (1 -+ epsilon) and
hence its energy estimate V_well + K_well [Y (1 -+ epsilon)]^2.

The asymmetry variable z = (a_right - a_left) / (2 sqrt(p)) controls the
left/right localization probabilities

    P_left = (sqrt(1+z^2) - z) / (2 sqrt(1+z^2)),   P_right = 1 - P_left

for the ground state (swapped for the excited state).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import AssumptionViolated, DomainError, ExcitedBelowZero, NoConvergence
from .isolated import BarrierCoupling, IsolatedWellSolution, coupling, solve_wells
from .params import ReducedParams, WellSpec, bound_state_exists, reduce

__all__ = [
    "Parity",
    "CoupledSolution",
    "SplittingResult",
    "DoubleWellResult",
    "solve_r0",
    "correct_energy",
    "splitting",
    "coefficient_ratio",
    "solve_double_well",
]


class Parity(str, enum.Enum):
    """Which of the two lowest coupled levels is meant."""

    GROUND = "ground"
    EXCITED = "excited"


@dataclass(frozen=True, slots=True)
class CoupledSolution:
    """One coupled level: fixed point, phase corrections, energy, localization."""

    parity: Parity
    r0: float
    p_small: float
    eps_left: float
    eps_right: float
    y_left: float
    y_right: float
    r_left: float
    r_right: float
    energy_left_estimate: float
    energy_right_estimate: float
    energy: float
    z_asym: float
    r_asym: float
    prob_left: float
    prob_right: float


@dataclass(frozen=True, slots=True)
class SplittingResult:
    """Mean energy and half-splitting of the two coupled levels."""

    e_bar: float
    delta_e: float
    e0: float
    e1: float


@dataclass(frozen=True, slots=True)
class DoubleWellResult:
    """Full approximation pipeline output for one spec."""

    spec: WellSpec
    reduced: ReducedParams
    left: IsolatedWellSolution
    right: IsolatedWellSolution
    coupling: BarrierCoupling
    ground: CoupledSolution
    excited: CoupledSolution
    splitting: SplittingResult


def solve_r0(
    parity: Parity,
    a_left: float,
    a_right: float,
    p_cap: float,
    tol: float = 1e-13,
    max_iter: int = 100,
) -> tuple[float, float]:
    """Solve the barrier fixed point; returns ``(r0, p_small)``.

    The iteration map is a strong contraction (its derivative is of order
    p itself), so convergence from the start value max(a) (ground) or
    min(a) (excited) takes only a few steps.  The returned pair is
    finalized as p = P e^{-2 r_last}, r0 = mean + sqrt(diff^2 + p), making
    the fixed-point residual evaluate to exactly zero in floating point.
    Raises :class:`ExcitedBelowZero` when the antisymmetric fixed point
    collapses to r0 <= 0, and :class:`NoConvergence` on iteration failure.
    """
    if p_cap < 0.0:
        raise DomainError(f"coupling p_cap must be >= 0, got {p_cap!r}")
    mean = 0.5 * (a_left + a_right)
    diff = 0.5 * (a_right - a_left)
    sign = 1.0 if parity == Parity.GROUND else -1.0
    r = max(a_left, a_right) if parity == Parity.GROUND else min(a_left, a_right)
    if parity == Parity.EXCITED and r <= 0.0:
        raise ExcitedBelowZero(f"antisymmetric fixed point start {r!r} <= 0")
    r_next = r
    for _ in range(max_iter):
        p = p_cap * math.exp(-2.0 * r)
        r_next = mean + sign * math.sqrt(diff * diff + p)
        if parity == Parity.EXCITED and r_next <= 0.0:
            raise ExcitedBelowZero(
                f"antisymmetric fixed point fell to {r_next!r} <= 0: "
                "barrier too weak for a distinct upper level"
            )
        if abs(r_next - r) <= tol * max(1.0, abs(r_next)):
            p = p_cap * math.exp(-2.0 * r_next)
            return mean + sign * math.sqrt(diff * diff + p), p
        r = r_next
    raise NoConvergence(
        "barrier fixed point did not converge", last_iterate=r, residual=abs(r_next - r)
    )


def _stable_gaps(parity: Parity, d: float, p: float) -> tuple[float, float]:
    """Distances of r0 from a_left and a_right without cancellation.

    For the ground state r0 - a_left = h + d and r0 - a_right = h - d with
    h = sqrt(d^2 + p), d = (a_right - a_left)/2; whichever of the two
    suffers cancellation is replaced by p / (other), exact because
    (h + d)(h - d) = p.  The excited gaps a - r0 are the mirror image.
    """
    h = math.sqrt(d * d + p)
    if parity == Parity.GROUND:
        gap_left = h + d if d >= 0.0 else p / (h - d)
        gap_right = h - d if d <= 0.0 else p / (h + d)
    else:
        gap_left = h - d if d <= 0.0 else p / (h + d)
        gap_right = h + d if d >= 0.0 else p / (h - d)
    return gap_left, gap_right


def _probability_split(z: float) -> tuple[float, float]:
    """(P_left, P_right) for asymmetry z, computed complement-stably.

    The smaller share is evaluated as 1 / (2 sq (sq + |z|)) with
    sq = sqrt(1 + z^2), which is the cancellation-free rewriting of
    (sq - |z|) / (2 sq); the larger share is its exact complement.
    """
    sq = math.hypot(1.0, z)
    if z >= 0.0:
        small = 1.0 / (2.0 * sq * (sq + z))
        return small, 1.0 - small
    small = 1.0 / (2.0 * sq * (sq - z))
    return 1.0 - small, small


def correct_energy(
    parity: Parity,
    left_well: IsolatedWellSolution,
    right_well: IsolatedWellSolution,
    r0: float,
    p_small: float,
    reduced: ReducedParams,
    spec: WellSpec,
) -> CoupledSolution:
    """First-order phase corrections and the coupled level's energy.

    Raises :class:`AssumptionViolated` when either epsilon exceeds 0.1,
    the trust boundary of the first-order expansion.
    """
    d = 0.5 * (right_well.a_coef - left_well.a_coef)
    gap_left, gap_right = _stable_gaps(parity, d, p_small)
    eps_left = gap_left / left_well.b_coef
    eps_right = gap_right / right_well.b_coef
    if max(eps_left, eps_right) > 0.1:
        raise AssumptionViolated(
            f"phase correction too large: eps_left={eps_left!r}, eps_right={eps_right!r} "
            "(> 0.1); the barrier is too thin or the wells too detuned for the "
            "first-order approximation"
        )
    flip = -1.0 if parity == Parity.GROUND else 1.0
    y_left = left_well.y_cap * (1.0 + flip * eps_left)
    y_right = right_well.y_cap * (1.0 + flip * eps_right)
    energy_left = spec.v_m2 + reduced.k_m2 * y_left * y_left
    energy_right = spec.v_2 + reduced.k_2 * y_right * y_right
    energy = 0.5 * (energy_left + energy_right)

    # Per-side barrier depths r_side from eps = c e^{-2 r_side}; an exactly
    # vanishing eps (possible only with p = 0) defaults to the complement,
    # or to r0/2 in the fully degenerate case.
    r_left = -0.5 * math.log(eps_left / left_well.c_coef) if eps_left > 0.0 else None
    r_right = -0.5 * math.log(eps_right / right_well.c_coef) if eps_right > 0.0 else None
    if r_left is None and r_right is None:
        r_left = r_right = 0.5 * r0
    elif r_left is None:
        r_left = r0 - r_right
    elif r_right is None:
        r_right = r0 - r_left

    if p_small > 0.0:
        z = d / math.sqrt(p_small)
    else:
        z = 0.0 if d == 0.0 else math.copysign(math.inf, d)
    if parity == Parity.GROUND:
        prob_left, prob_right = _probability_split(z)
    else:
        prob_right, prob_left = _probability_split(z)
    return CoupledSolution(
        parity=parity,
        r0=r0,
        p_small=p_small,
        eps_left=eps_left,
        eps_right=eps_right,
        y_left=y_left,
        y_right=y_right,
        r_left=r_left,
        r_right=r_right,
        energy_left_estimate=energy_left,
        energy_right_estimate=energy_right,
        energy=energy,
        z_asym=z,
        r_asym=math.asinh(z),
        prob_left=prob_left,
        prob_right=prob_right,
    )


def splitting(ground: CoupledSolution, excited: CoupledSolution) -> SplittingResult:
    """Mean energy and half-splitting of the two coupled levels."""
    e0 = ground.energy
    e1 = excited.energy
    return SplittingResult(
        e_bar=0.5 * (e0 + e1), delta_e=0.5 * (e1 - e0), e0=e0, e1=e1
    )


def coefficient_ratio(
    parity: Parity,
    solution: CoupledSolution,
    left_well: IsolatedWellSolution,
    right_well: IsolatedWellSolution,
) -> float:
    """Squared left/right well amplitude ratio (A_left / A_right)^2.

    The ratio factorizes into a well-shape prefactor and a detuning
    bracket; with dA = a_right - a_left, R = sqrt(dA^2 + 4p),

        ground:  (R - dA) / (R + dA),    excited: (R + dA) / (R - dA),

    each evaluated in its cancellation-free form using
    (R - dA)(R + dA) = 4p.  The excited bracket uses that state's own
    p_small.
    """
    d_a = right_well.a_coef - left_well.a_coef
    p = solution.p_small
    prefactor = (
        right_well.s_inner**2 * left_well.b_coef * left_well.c_coef
    ) / (left_well.s_inner**2 * right_well.b_coef * right_well.c_coef)
    if p == 0.0:
        if d_a == 0.0:
            return prefactor
        shrinking = d_a > 0.0 if solution.parity == Parity.GROUND else d_a < 0.0
        return 0.0 if shrinking else math.inf
    r_cap = math.hypot(d_a, 2.0 * math.sqrt(p))
    if solution.parity == Parity.GROUND:
        bracket = 4.0 * p / (d_a + r_cap) ** 2 if d_a >= 0.0 else (r_cap - d_a) ** 2 / (4.0 * p)
    else:
        bracket = (d_a + r_cap) ** 2 / (4.0 * p) if d_a >= 0.0 else 4.0 * p / (r_cap - d_a) ** 2
    return prefactor * bracket


def solve_double_well(
    spec: WellSpec,
    tol_y: float = 1e-13,
    max_iter_y: int = 50,
    tol_r: float = 1e-13,
    max_iter_r: int = 100,
) -> DoubleWellResult:
    """Full approximation pipeline: reduce, solve wells, couple, split."""
    reduced_params = reduce(spec)
    for label, inner, outer in (
        ("left", reduced_params.alpha_m1, reduced_params.alpha_m3),
        ("right", reduced_params.alpha_1, reduced_params.alpha_3),
    ):
        if not bound_state_exists(inner, outer):
            raise DomainError(
                f"{label} well supports no bound level "
                f"(alpha_inner={inner!r}, alpha_outer={outer!r})"
            )
    left, right = solve_wells(reduced_params, tol=tol_y, max_iter=max_iter_y)
    coup = coupling(left, right)
    solutions = {}
    for parity in (Parity.GROUND, Parity.EXCITED):
        r0, p_small = solve_r0(
            parity, left.a_coef, right.a_coef, coup.p_cap, tol=tol_r, max_iter=max_iter_r
        )
        solutions[parity] = correct_energy(
            parity, left, right, r0, p_small, reduced_params, spec
        )
    return DoubleWellResult(
        spec=spec,
        reduced=reduced_params,
        left=left,
        right=right,
        coupling=coup,
        ground=solutions[Parity.GROUND],
        excited=solutions[Parity.EXCITED],
        splitting=splitting(solutions[Parity.GROUND], solutions[Parity.EXCITED]),
    )
