"""The beta-foliation and the orbit invariant.

Every point of the tetrablock lies on exactly one leaf

    lambda -> (b1 + conj(b2) lambda, b2 + conj(b1) lambda, lambda),  |b1| + |b2| < 1,

and the automorphism group permutes the leaves transitively. Following
a point's leaf back to the central leaf {(0, 0, lambda)} yields the
canonical radius r in [0, 1): (0, 0, r) is the unique point of that form
in the orbit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .autgroup import TetraAutomorphism
from .errors import NotInDomainError, PreconditionError
from .numerics import (
    DiscAutomorphism,
    TetraPoint,
    disc_compose,
    disc_inverse,
    unit,
)

LEAF_BAND = 1e-6
ORBIT_TOL = 1e-8


@dataclass(frozen=True)
class BetaLeaf:
    beta1: complex
    beta2: complex

    def __post_init__(self) -> None:
        b1, b2 = complex(self.beta1), complex(self.beta2)
        object.__setattr__(self, "beta1", b1)
        object.__setattr__(self, "beta2", b2)
        if not abs(b1) + abs(b2) <= 1.0 - LEAF_BAND:
            raise NotInDomainError(
                f"leaf parameters need |b1| + |b2| < 1 - {LEAF_BAND}, "
                f"got {abs(b1) + abs(b2)!r}"
            )


@dataclass(frozen=True)
class LeafTransport:
    """Image leaf plus the induced parameter map t -> eta (t + c) / (conj(c) t + 1)."""

    target: BetaLeaf
    eta: complex
    c: complex

    def param_map(self, lam: complex) -> complex:
        return self.eta * (lam + self.c) / (self.c.conjugate() * lam + 1)


def leaf_eval(leaf: BetaLeaf, lam: complex) -> TetraPoint:
    lam = complex(lam)
    if not abs(lam) < 1.0:
        raise PreconditionError("leaf parameter must satisfy |lambda| < 1")
    b1, b2 = leaf.beta1, leaf.beta2
    return TetraPoint(b1 + b2.conjugate() * lam, b2 + b1.conjugate() * lam, lam)


def beta_coords(x: TetraPoint) -> tuple[BetaLeaf, complex]:
    """The leaf through ``x`` and the parameter of ``x`` on it (which is x3)."""
    lam = x.x3
    if not abs(lam) < 1.0:
        raise NotInDomainError("point with |x3| >= 1 is not in the tetrablock")
    d = 1.0 - abs(lam) ** 2
    b1 = (x.x1 - x.x2.conjugate() * lam) / d
    b2 = (x.x2 - x.x1.conjugate() * lam) / d
    return BetaLeaf(b1, b2), lam


def transport_right(leaf: BetaLeaf, chi: DiscAutomorphism) -> LeafTransport:
    """Leaf and parameter map carrying ``leaf`` under x -> x . chi."""
    b1, b2 = leaf.beta1, leaf.beta2
    zeta, theta = chi.omega, chi.alpha
    zt = zeta * theta
    den = abs(1 - zt * b2) ** 2 - abs(theta * b1) ** 2
    g1 = b1 * (1 - abs(theta) ** 2) / den
    g2 = (
        theta.conjugate() * (1 - abs(b1) ** 2 + abs(b2) ** 2)
        - zeta * b2
        - zeta.conjugate() * theta.conjugate() ** 2 * b2.conjugate()
    ) / den
    eta = -zeta * (1 - (zt * b2).conjugate()) / (1 - zt * b2)
    c = -zt.conjugate() * b1 / (1 - (zt * b2).conjugate())
    return LeafTransport(BetaLeaf(g1, g2), eta, c)


def transport_left(upsilon: DiscAutomorphism, leaf: BetaLeaf) -> LeafTransport:
    """Leaf and parameter map carrying ``leaf`` under x -> upsilon . x."""
    b1, b2 = leaf.beta1, leaf.beta2
    omega, alpha = upsilon.omega, upsilon.alpha
    den = abs(1 - alpha.conjugate() * b1) ** 2 - abs(alpha * b2) ** 2
    d1 = omega * (
        alpha * (1 - abs(b2) ** 2 + abs(b1) ** 2) - b1 - alpha**2 * b1.conjugate()
    ) / den
    d2 = b2 * (1 - abs(alpha) ** 2) / den
    eta = -omega * (1 - alpha * b1.conjugate()) / (1 - alpha.conjugate() * b1)
    c = -alpha * b2 / (1 - alpha * b1.conjugate())
    return LeafTransport(BetaLeaf(d1, d2), eta, c)


def normal_params(leaf: BetaLeaf) -> tuple[complex, complex]:
    """(alpha, theta) whose automorphisms carry the central leaf onto ``leaf``.

    With u(z) = (z - alpha)/(conj(alpha) z - 1) and
    chi(z) = (z - theta)/(conj(theta) z - 1), u . (0, 0, t) . chi runs over
    ``leaf``.
    """
    r1, r2 = abs(leaf.beta1), abs(leaf.beta2)
    xi1 = unit(leaf.beta1)
    xi2 = unit(leaf.beta2.conjugate())
    h_sum = 0.5 * math.atanh(r1 + r2)
    h_diff = 0.5 * math.atanh(r1 - r2)
    return xi1 * math.tanh(h_sum + h_diff), xi2 * math.tanh(h_sum - h_diff)


def central_leaf_image(alpha: complex, theta: complex, omega: complex = 1, zeta: complex = 1) -> BetaLeaf:
    """Leaf of u . (0, 0, t) . chi for u, chi with parameters (omega, alpha), (zeta, theta)."""
    den = 1 - abs(alpha * theta) ** 2
    return BetaLeaf(
        omega * alpha * (1 - abs(theta) ** 2) / den,
        theta.conjugate() * (1 - abs(alpha) ** 2) / den,
    )


def _normal_data(x: TetraPoint):
    leaf, lam = beta_coords(x)
    alpha, theta = normal_params(leaf)
    z = (lam - alpha * theta.conjugate()) / (1 - alpha.conjugate() * theta * lam)
    return alpha, theta, z


def canonical_radius(x: TetraPoint) -> float:
    """The r in [0, 1) with (0, 0, r) in the automorphism orbit of ``x``."""
    return abs(_normal_data(x)[2])


def normalizing_automorphism(x: TetraPoint) -> TetraAutomorphism:
    """An automorphism h with h(x) = (0, 0, canonical_radius(x))."""
    alpha, theta, z = _normal_data(x)
    upsilon = DiscAutomorphism(1, alpha)
    chi = DiscAutomorphism(1, theta)
    rho = DiscAutomorphism.rotation(unit(z).conjugate())
    return TetraAutomorphism(
        disc_compose(rho, disc_inverse(upsilon)),
        disc_inverse(chi),
        False,
    )


def same_orbit(x: TetraPoint, y: TetraPoint, tol: float = ORBIT_TOL) -> bool:
    return abs(canonical_radius(x) - canonical_radius(y)) <= tol
