"""Potential specification and dimensionless reduction.

The potential is piecewise constant over five regions,

    V(x) = V_-4 | V_-2 | V_0 | V_2 | V_4

with finite wells V_-2 and V_2 separated by the central barrier V_0 and
closed off by the outer walls V_-4 and V_4.  Region boundaries sit at
x_-3 (left outer wall), x_-1 = x_-3 + w_-2, x_1 = x_-1 + w_0 and
x_3 = x_1 + w_2.  Everything downstream works with the dimensionless
combinations computed by :func:`reduce`:

    K_i     = pi^2 hbar^2 / (2 m w_i^2)        (energy scale of region i)
    alpha_j = sqrt(K_well / W_j)               (well scale over step W_j)
    beta    = sqrt(K_0 / W_inner)              (barrier scale over inner step)
    gamma_j = pi alpha_j / (pi + alpha_in + alpha_out)

where W_-3 = V_-4 - V_-2, W_-1 = V_0 - V_-2 are the left well's outer and
inner steps and W_1 = V_0 - V_2, W_3 = V_4 - V_2 the right well's.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

from .errors import InvalidSpec

__all__ = [
    "WellSpec",
    "ReducedParams",
    "SPEC_KEYS",
    "reduce",
    "bound_state_exists",
    "parse_spec",
    "load_spec",
]

#: Recognized keys of the flat ``key = value`` spec file, in canonical order.
SPEC_KEYS = (
    "hbar",
    "mass",
    "v_m4",
    "v_m2",
    "v_0",
    "v_2",
    "v_4",
    "w_m2",
    "w_0",
    "w_2",
    "x_m3",
)


@dataclass(frozen=True, slots=True)
class WellSpec:
    """Physical description of the five-region double square well.

    ``v_*`` are the region potentials, ``w_*`` the widths of the two wells
    and the barrier, ``x_m3`` the position of the left outer wall.
    Validation happens on construction and raises :class:`InvalidSpec`
    naming the violated constraint.
    """

    hbar: float
    mass: float
    v_m4: float
    v_m2: float
    v_0: float
    v_2: float
    v_4: float
    w_m2: float
    w_0: float
    w_2: float
    x_m3: float = 0.0

    def __post_init__(self) -> None:
        for f in fields(self):
            value = getattr(self, f.name)
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise InvalidSpec(f"{f.name} must be a real number")
            if not math.isfinite(value):
                raise InvalidSpec(f"{f.name} must be finite")
            object.__setattr__(self, f.name, float(value))
        for name in ("hbar", "mass", "w_m2", "w_0", "w_2"):
            if getattr(self, name) <= 0.0:
                raise InvalidSpec(f"violated constraint: {name} > 0")
        for lhs, rhs in (("v_m4", "v_m2"), ("v_0", "v_m2"), ("v_0", "v_2"), ("v_4", "v_2")):
            if getattr(self, lhs) <= getattr(self, rhs):
                raise InvalidSpec(f"violated constraint: {lhs} > {rhs}")

    @property
    def x_m1(self) -> float:
        """Left inner boundary (left well / barrier)."""
        return self.x_m3 + self.w_m2

    @property
    def x_1(self) -> float:
        """Right inner boundary (barrier / right well)."""
        return self.x_m1 + self.w_0

    @property
    def x_3(self) -> float:
        """Right outer boundary (right well / outer wall)."""
        return self.x_1 + self.w_2


@dataclass(frozen=True, slots=True)
class ReducedParams:
    """Dimensionless reduction of a :class:`WellSpec`.

    ``w_m3 .. w_3`` are the four potential steps (energies).  ``k_m2``,
    ``k_0``, ``k_2`` are the region energy scales K_i; the wavenumbers of
    an assembled state live in :mod:`doublewell.wavefunc`, not here.
    """

    w_m3: float
    w_m1: float
    w_1: float
    w_3: float
    k_m2: float
    k_0: float
    k_2: float
    alpha_m3: float
    alpha_m1: float
    alpha_1: float
    alpha_3: float
    beta_m1: float
    beta_1: float
    gamma_m3: float
    gamma_m1: float
    gamma_1: float
    gamma_3: float


def reduce(spec: WellSpec) -> ReducedParams:
    """Compute all dimensionless parameters of the two wells."""
    w_m3 = spec.v_m4 - spec.v_m2
    w_m1 = spec.v_0 - spec.v_m2
    w_1 = spec.v_0 - spec.v_2
    w_3 = spec.v_4 - spec.v_2
    scale = (math.pi * spec.hbar) ** 2 / (2.0 * spec.mass)
    k_m2 = scale / spec.w_m2**2
    k_0 = scale / spec.w_0**2
    k_2 = scale / spec.w_2**2
    alpha_m3 = math.sqrt(k_m2 / w_m3)
    alpha_m1 = math.sqrt(k_m2 / w_m1)
    alpha_1 = math.sqrt(k_2 / w_1)
    alpha_3 = math.sqrt(k_2 / w_3)
    beta_m1 = math.sqrt(k_0 / w_m1)
    beta_1 = math.sqrt(k_0 / w_1)
    denom_left = math.pi + alpha_m1 + alpha_m3
    denom_right = math.pi + alpha_1 + alpha_3
    return ReducedParams(
        w_m3=w_m3,
        w_m1=w_m1,
        w_1=w_1,
        w_3=w_3,
        k_m2=k_m2,
        k_0=k_0,
        k_2=k_2,
        alpha_m3=alpha_m3,
        alpha_m1=alpha_m1,
        alpha_1=alpha_1,
        alpha_3=alpha_3,
        beta_m1=beta_m1,
        beta_1=beta_1,
        gamma_m3=math.pi * alpha_m3 / denom_left,
        gamma_m1=math.pi * alpha_m1 / denom_left,
        gamma_1=math.pi * alpha_1 / denom_right,
        gamma_3=math.pi * alpha_3 / denom_right,
    )


def bound_state_exists(alpha_inner: float, alpha_outer: float) -> bool:
    """Whether a finite well with the given edge parameters binds a state.

    The phase equation  arcsin(a_i Y) + arcsin(a_o Y) + pi Y = pi  has a
    solution with both arcsine arguments at most 1 exactly when either
    both alphas are small (max <= 2) or the smaller alpha clears
    ``alpha_max * cos(pi / alpha_max)``.
    """
    if alpha_inner < 0.0 or alpha_outer < 0.0:
        raise InvalidSpec("violated constraint: alpha >= 0")
    hi = max(alpha_inner, alpha_outer)
    if hi <= 2.0:
        return True
    return min(alpha_inner, alpha_outer) >= hi * math.cos(math.pi / hi)


def parse_spec(text: str) -> WellSpec:
    """Parse the flat ``key = value`` spec format.

    Blank lines and ``#`` comments (full-line or trailing) are ignored.
    Unknown or repeated keys raise :class:`InvalidSpec`; all keys except
    the optional ``x_m3`` are required.
    """
    values: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidSpec(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, _, rhs = line.partition("=")
        key = key.strip()
        if key not in SPEC_KEYS:
            raise InvalidSpec(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise InvalidSpec(f"line {lineno}: duplicate key {key!r}")
        try:
            values[key] = float(rhs.strip())
        except ValueError:
            raise InvalidSpec(f"line {lineno}: {key} is not a number: {rhs.strip()!r}") from None
    missing = [k for k in SPEC_KEYS if k != "x_m3" and k not in values]
    if missing:
        raise InvalidSpec(f"missing keys: {', '.join(missing)}")
    return WellSpec(**values)


def load_spec(path: str) -> WellSpec:
    """Read and parse a spec file."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_spec(fh.read())
