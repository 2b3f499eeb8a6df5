"""The automorphism group G = {L_u R_v F^nu} of the tetrablock.

Points are identified with linear fractional maps through
``psi(., x)``; composing those maps gives the diamond product, and the
disc automorphism group acts on the left and on the right by diamond
multiplication with ``tau(u)``.

Normal form convention: ``TetraAutomorphism(upsilon, chi, flip)`` acts as

    x -> L_upsilon(R_chi(F^flip(x)))

i.e. flip first, then the right action, then the left action.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import PoleError
from .numerics import (
    DiscAutomorphism,
    TetraPoint,
    disc_compose,
    disc_inverse,
)

IDENTITY_POINT = TetraPoint(0, 0, -1)


@dataclass(frozen=True)
class TetraAutomorphism:
    upsilon: DiscAutomorphism
    chi: DiscAutomorphism
    flip: bool = False

    @classmethod
    def identity(cls) -> "TetraAutomorphism":
        return cls(DiscAutomorphism.identity(), DiscAutomorphism.identity(), False)

    @classmethod
    def left(cls, u: DiscAutomorphism) -> "TetraAutomorphism":
        return cls(u, DiscAutomorphism.identity(), False)

    @classmethod
    def right(cls, u: DiscAutomorphism) -> "TetraAutomorphism":
        return cls(DiscAutomorphism.identity(), u, False)

    @classmethod
    def pure_flip(cls) -> "TetraAutomorphism":
        return cls(DiscAutomorphism.identity(), DiscAutomorphism.identity(), True)

    def __call__(self, x: TetraPoint) -> TetraPoint:
        return apply(self, x)


def diamond(x: TetraPoint, y: TetraPoint) -> TetraPoint:
    """Parameters of psi(., x) o psi(., y)."""
    d = 1 - x.x2 * y.x1
    if d == 0:
        raise PoleError("diamond product undefined: x2 * y1 = 1")
    return TetraPoint(
        (x.x1 - x.x3 * y.x1) / d,
        (y.x2 - x.x2 * y.x3) / d,
        (x.x1 * y.x2 - x.x3 * y.x3) / d,
    )


def tau(u: DiscAutomorphism) -> TetraPoint:
    """The point x with psi(., x) equal to ``u``."""
    return TetraPoint(u.omega * u.alpha, u.alpha.conjugate(), u.omega)


def act_left(u: DiscAutomorphism, x: TetraPoint) -> TetraPoint:
    return diamond(tau(u), x)


def act_right(x: TetraPoint, u: DiscAutomorphism) -> TetraPoint:
    return diamond(x, tau(u))


def flip_point(x: TetraPoint) -> TetraPoint:
    return TetraPoint(x.x2, x.x1, x.x3)


def star(u: DiscAutomorphism) -> DiscAutomorphism:
    """The involution with flip o L_u = R_{star(u)} o flip."""
    return DiscAutomorphism(u.omega, u.omega.conjugate() * u.alpha.conjugate())


def apply(g: TetraAutomorphism, x: TetraPoint) -> TetraPoint:
    if g.flip:
        x = flip_point(x)
    return act_left(g.upsilon, act_right(x, g.chi))


def compose(g: TetraAutomorphism, h: TetraAutomorphism) -> TetraAutomorphism:
    """Normal form of g o h.

    Uses L_a L_b = L_{a o b}, R_a R_b = R_{b o a}, F L_a = R_{a*} F and
    F R_a = L_{a*} F.
    """
    if not g.flip:
        return TetraAutomorphism(
            disc_compose(g.upsilon, h.upsilon),
            disc_compose(h.chi, g.chi),
            h.flip,
        )
    return TetraAutomorphism(
        disc_compose(g.upsilon, star(h.chi)),
        disc_compose(star(h.upsilon), g.chi),
        not h.flip,
    )


def inverse(g: TetraAutomorphism) -> TetraAutomorphism:
    u_inv = disc_inverse(g.upsilon)
    c_inv = disc_inverse(g.chi)
    if not g.flip:
        return TetraAutomorphism(u_inv, c_inv, False)
    return TetraAutomorphism(star(c_inv), star(u_inv), True)


def random_disc_automorphism(rng: np.random.Generator, radius: float = 0.95) -> DiscAutomorphism:
    omega = cmath.exp(1j * rng.uniform(0.0, 2.0 * cmath.pi))
    # uniform in the disc of the given radius
    r = radius * float(rng.random()) ** 0.5
    alpha = r * cmath.exp(1j * rng.uniform(0.0, 2.0 * cmath.pi))
    return DiscAutomorphism(omega, alpha)


def random_automorphism(rng: np.random.Generator) -> TetraAutomorphism:
    """Uniform unimodular omegas, alphas uniform in |alpha| < 0.95, fair flip bit."""
    upsilon = random_disc_automorphism(rng)
    chi = random_disc_automorphism(rng)
    return TetraAutomorphism(upsilon, chi, bool(rng.random() < 0.5))
