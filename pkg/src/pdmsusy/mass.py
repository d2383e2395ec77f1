"""Mass profiles M(z) > 0 and the kinetic-ordering ambiguity of the PDM Hamiltonian.

A position-dependent mass makes the kinetic term ordering-dependent: the
two-parameter family of Hermitian orderings (alpha, beta, gamma) with
alpha + beta + gamma = -1 adds a real modification term

    U(z) = -((alpha+gamma)/2) M''/M^2 + (alpha*gamma + alpha + gamma) M'^2/M^3

on top of the common flux-form kinetic operator -d/dz (1/M) d/dz.  Everything
here is exact symbolic manipulation of expression trees; units are hbar = 2m0 = 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import expr as ex
from .expr import Expression, differentiate, evaluate, evaluate_grid

__all__ = [
    "OrderingParameters", "MassProfile", "EffectivePotential",
    "named_ordering", "NAMED_ORDERINGS", "ordering_from_alpha_gamma",
    "mass_profile", "quotient_square_mass", "quotient_square_parameter",
    "constant_mass_value", "modification_term", "effective_potential", "mass_at",
    "inverse_sqrt_mass", "NonPositiveMassError",
]


class NonPositiveMassError(ValueError):
    """The mass expression is not strictly positive on its domain."""

    def __init__(self, z: float, value: float):
        super().__init__(f"mass M({z!r}) = {value!r} is not positive")
        self.z = z
        self.value = value


@dataclass(frozen=True)
class OrderingParameters:
    """von Roos kinetic-ordering exponents; the constraint alpha+beta+gamma = -1 is enforced."""

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        s = self.alpha + self.beta + self.gamma
        if abs(s + 1.0) > 1e-12:
            raise ValueError(f"ordering parameters must satisfy alpha+beta+gamma = -1, got {s}")


def ordering_from_alpha_gamma(alpha: float, gamma: float) -> OrderingParameters:
    """Build an ordering from (alpha, gamma), deriving beta = -1 - alpha - gamma."""
    return OrderingParameters(alpha, -1.0 - alpha - gamma, gamma)


# literature-standard named orderings
NAMED_ORDERINGS = {
    "bdd": OrderingParameters(0.0, -1.0, 0.0),          # BenDaniel-Duke
    "bastard": OrderingParameters(-1.0, 0.0, 0.0),      # Bastard (beta = gamma = 0)
    "zk": OrderingParameters(-0.5, 0.0, -0.5),          # Zhu-Kroemer
    "likuhn": OrderingParameters(0.0, -0.5, -0.5),      # Li-Kuhn
}


def named_ordering(name: str) -> OrderingParameters:
    try:
        return NAMED_ORDERINGS[name]
    except KeyError:
        valid = ", ".join(sorted(NAMED_ORDERINGS))
        raise ValueError(f"unknown ordering {name!r}; choose one of: {valid}") from None


@dataclass(frozen=True)
class MassProfile:
    """A strictly positive mass expression together with its exact first two derivatives.

    `shape_parameter` is set when the profile is the built-in quotient-square
    family M = ((a+z^2)/(1+z^2))^2, which unlocks closed forms downstream.
    """

    m: Expression
    dm: Expression
    d2m: Expression
    domain: tuple[float, float]
    shape_parameter: float | None = None


def mass_profile(m: Expression | str, domain: tuple[float, float] = (-12.0, 12.0),
                 scan_points: int = 1024) -> MassProfile:
    """Validate positivity on a dense scan and attach exact derivatives.

    Positivity is checked pointwise on `scan_points` equispaced points including
    the endpoints; a non-positive value raises NonPositiveMassError.
    """
    if isinstance(m, str):
        m = ex.parse(m)
    z_min, z_max = float(domain[0]), float(domain[1])
    if not z_min < z_max:
        raise ValueError(f"empty domain ({z_min}, {z_max})")
    zs = np.linspace(z_min, z_max, scan_points)
    values = evaluate_grid(m, zs)
    if np.any(values <= 0.0):
        i = int(np.argmax(values <= 0.0))
        raise NonPositiveMassError(float(zs[i]), float(values[i]))
    dm = differentiate(m)
    shape = quotient_square_parameter(m)
    return MassProfile(m, dm, differentiate(dm), (z_min, z_max), shape)


def quotient_square_mass(a: float, domain: tuple[float, float] = (-12.0, 12.0)) -> MassProfile:
    """The smooth benchmark family M(z) = ((a+z^2)/(1+z^2))^2, a > 0.

    It interpolates between M(0) = a^2 and M(+-inf) = 1 and admits closed forms
    for 1/sqrt(M) = (1+z^2)/(a+z^2) and for the mass-stretched coordinate
    integral of sqrt(M), which is z + (a-1)*atan(z).
    """
    a = float(a)
    if a <= 0.0:
        raise ValueError(f"shape parameter must be positive, got {a}")
    z2 = ex.Pow(ex.Var(), 2.0)
    m = ex.Pow(ex.Binary("div", ex.add(ex.Const(a), z2), ex.add(ex.Const(1.0), z2)), 2.0)
    profile = mass_profile(m, domain)
    return MassProfile(profile.m, profile.dm, profile.d2m, profile.domain, a)


def quotient_square_parameter(m: Expression) -> float | None:
    """Recognize ((a+z^2)/(1+z^2))^2 structurally (either addend order); None otherwise."""
    if not (isinstance(m, ex.Pow) and m.exponent == 2.0):
        return None
    q = m.base
    if not (isinstance(q, ex.Binary) and q.op == "div"):
        return None
    a = _const_plus_z_squared(q.left)
    one = _const_plus_z_squared(q.right)
    if a is None or one != 1.0:
        return None
    return a if a > 0.0 else None


def _const_plus_z_squared(e: Expression) -> float | None:
    """Match c + z^2 (or z^2 + c), returning c."""
    if not (isinstance(e, ex.Binary) and e.op == "add"):
        return None
    for c, other in ((e.left, e.right), (e.right, e.left)):
        if isinstance(c, ex.Const) and isinstance(other, ex.Pow) \
                and other.exponent == 2.0 and isinstance(other.base, ex.Var):
            return c.value
    return None


def constant_mass_value(m: Expression) -> float | None:
    """Return c if the expression is the constant mass M = c > 0, else None."""
    folded = ex._fold_to_constant(m)
    if folded is not None and folded > 0.0:
        return folded
    return None


def inverse_sqrt_mass(p: MassProfile) -> Expression:
    """1/sqrt(M) as an expression (M^(-1/2))."""
    return ex.pow_(p.m, -0.5)


def modification_term(p: MassProfile, o: OrderingParameters) -> Expression:
    """The ordering-dependent potential U(z) added to the flux-form kinetic operator.

    U = -((alpha+gamma)/2) M''/M^2 + (alpha*gamma + alpha + gamma) M'^2/M^3.
    Symmetric in alpha <-> gamma; identically zero for the BenDaniel-Duke choice.
    """
    c1 = -(o.alpha + o.gamma) / 2.0
    c2 = o.alpha * o.gamma + o.alpha + o.gamma
    first = ex.mul(ex.Const(c1), ex.div(p.d2m, ex.pow_(p.m, 2.0)))
    second = ex.mul(ex.Const(c2), ex.div(ex.mul(p.dm, p.dm), ex.pow_(p.m, 3.0)))
    return ex.add(first, second)


@dataclass(frozen=True)
class EffectivePotential:
    """A real potential profile v0 plus the ordering modification u; veff = v0 + u."""

    v0: Expression
    u: Expression
    ordering: OrderingParameters

    @property
    def veff(self) -> Expression:
        return ex.add(self.v0, self.u)


def effective_potential(v0: Expression, p: MassProfile, o: OrderingParameters) -> EffectivePotential:
    return EffectivePotential(v0, modification_term(p, o), o)


def mass_at(p: MassProfile, z: float) -> tuple[float, float, float]:
    """(M, M', M'') at a point inside the domain."""
    z = float(z)
    if not p.domain[0] <= z <= p.domain[1]:
        raise ex.DomainError(z, f"outside the mass domain {p.domain}")
    return evaluate(p.m, z), evaluate(p.dm, z), evaluate(p.d2m, z)
