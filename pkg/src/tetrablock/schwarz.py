"""Schwarz lemma at the origin: analytic discs through O with given derivative.

A target ``y`` is reachable by an analytic map of the disc into the
tetrablock with phi(0) = O and phi'(0) = y exactly when
max(|y1|, |y2|) + |y3| <= 1. Two constructions of such a phi live here:

* :func:`phi_eval` evaluates the closed-form rational map;
* :func:`build_matricial` / :func:`f_eval` build the 2x2 contraction-valued
  F = M_{-Z}(lambda Y) whose image under (a11, a22, det) is phi.

The two are independent enough to check each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import PoleError, PreconditionError
from .numerics import Matrix2, TetraPoint, mobius_matrix, psi, unit

FEASIBILITY_TOL = 1e-12
EXTREMAL_TOL = 1e-10

_SWAP = Matrix2(0, 1, 1, 0)


@dataclass(frozen=True)
class TangentTarget:
    y1: complex
    y2: complex
    y3: complex

    def __post_init__(self) -> None:
        for name in ("y1", "y2", "y3"):
            object.__setattr__(self, name, complex(getattr(self, name)))

    def __iter__(self):
        yield self.y1
        yield self.y2
        yield self.y3

    def flip(self) -> "TangentTarget":
        return TangentTarget(self.y2, self.y1, self.y3)


@dataclass(frozen=True)
class SchwarzSolution:
    """Data of the matricial construction for one target.

    ``flipped`` is set when |y1| < |y2|; the matrices then belong to the
    flipped target and are conjugated by the swap matrix on evaluation.
    ``degenerate`` marks y1 = y2 = 0, where phi(lambda) = (0, 0, lambda y3)
    and no matrix data is needed.
    """

    y: TangentTarget
    c: complex
    flipped: bool = False
    degenerate: bool = False
    zeta: Optional[float] = None
    xi: Optional[complex] = None
    z_mat: Optional[Matrix2] = None
    y_mat: Optional[Matrix2] = None

    @property
    def dominant(self) -> str:
        return "y2" if self.flipped else "y1"

    def oriented(self) -> TangentTarget:
        """The target in the orientation the matrices were built for."""
        return self.y.flip() if self.flipped else self.y


def indicatrix_norm(y: TangentTarget) -> float:
    return max(abs(y.y1), abs(y.y2)) + abs(y.y3)


def feasible(y: TangentTarget, tol: float = FEASIBILITY_TOL) -> bool:
    return indicatrix_norm(y) <= 1.0 + tol


def _require_feasible(y: TangentTarget) -> None:
    if not feasible(y):
        raise PreconditionError(
            f"target is infeasible: indicatrix norm {indicatrix_norm(y)!r} > 1"
        )


def c_coefficient(y: TangentTarget) -> complex:
    """The coefficient C(y) of the closed-form solution."""
    _require_feasible(y)
    if y.y1 == 0 and y.y2 == 0:
        return 0j
    m = abs(y.y1) if abs(y.y2) <= abs(y.y1) else abs(y.y2)
    den = m * (1.0 - m - abs(y.y3) ** 2)
    if den <= 0.0:
        # only reachable with |y_dom| = 1, y3 = 0: continuous extension
        return y.y1 * y.y2 / m
    return y.y1 * y.y2 * (1.0 - m) / den


def phi_eval(y: TangentTarget, lam: complex, boundary: bool = False) -> TetraPoint:
    """phi(lambda) = lambda / (1 + lambda conj(y3) C) * (y1, y2, C lambda + y3).

    With ``boundary=True`` points on the unit circle are accepted too, which
    gives the boundary values used by the inner-function check.
    """
    lam = complex(lam)
    if abs(lam) > 1.0 or (abs(lam) == 1.0 and not boundary):
        raise PreconditionError("phi_eval needs |lambda| < 1")
    c = c_coefficient(y)
    den = 1.0 + lam * y.y3.conjugate() * c
    if den == 0:
        raise PoleError("phi has a pole at this lambda")
    pref = lam / den
    return TetraPoint(pref * y.y1, pref * y.y2, pref * (c * lam + y.y3))


def build_matricial(y: TangentTarget) -> SchwarzSolution:
    """Z, xi and the Parrott completion Y(xi) for the target ``y``."""
    _require_feasible(y)
    c = c_coefficient(y)
    if y.y1 == 0 and y.y2 == 0:
        return SchwarzSolution(y=y, c=c, degenerate=True)
    flipped = abs(y.y1) < abs(y.y2)
    a, b, y3 = (y.y2, y.y1, y.y3) if flipped else (y.y1, y.y2, y.y3)
    m = abs(a)
    zeta = math.sqrt(max(1.0 - m, 0.0))
    den = m * (1.0 - m - abs(y3) ** 2)
    if den > 0.0:
        xi = a * b * y3.conjugate() * zeta / den
    else:
        xi = 0j
    root = math.sqrt(m)
    lower_left = -y3 / zeta if zeta > 0.0 else 0j
    return SchwarzSolution(
        y=y,
        c=c,
        flipped=flipped,
        zeta=zeta,
        xi=xi,
        z_mat=Matrix2(0, zeta, 0, 0),
        y_mat=Matrix2(a / root, xi, lower_left, b / root),
    )


def _check_lambda(sol: SchwarzSolution, lam: complex) -> complex:
    if sol.degenerate:
        raise PreconditionError("degenerate solution (y1 = y2 = 0) has no matricial lift")
    lam = complex(lam)
    if not abs(lam) < 1.0:
        raise PreconditionError("F is only defined for |lambda| < 1")
    return lam


def _unflip(sol: SchwarzSolution, f: Matrix2) -> Matrix2:
    return _SWAP @ f @ _SWAP if sol.flipped else f


def f_eval(sol: SchwarzSolution, lam: complex) -> Matrix2:
    """F(lambda) = M_{-Z}(lambda Y), computed through the matricial Moebius map.

    When the dominant entry is below rounding, zeta comes out as exactly 1
    and the Moebius map is not defined in floating point; the expanded
    formula is used instead.
    """
    lam = _check_lambda(sol, lam)
    if sol.zeta >= 1.0:
        return f_closed_form(sol, lam)
    f = mobius_matrix(-sol.z_mat, sol.y_mat.scale(lam))
    return _unflip(sol, f)


def f_closed_form(sol: SchwarzSolution, lam: complex) -> Matrix2:
    """F(lambda) from the expanded rational formula.

    Z + lambda / (1 + lambda xi zeta) [[a, xi |a|], [w, b]] with
    w = -y3 / zeta - lambda zeta C.
    """
    lam = _check_lambda(sol, lam)
    a, b, y3 = sol.oriented()
    zeta = sol.zeta
    w = (-y3 / zeta if zeta > 0.0 else 0j) - lam * zeta * sol.c
    pref = lam / (1.0 + lam * sol.xi * zeta)
    f = sol.z_mat + Matrix2(a, sol.xi * abs(a), w, b).scale(pref)
    return _unflip(sol, f)


def pi_map(m: Matrix2) -> TetraPoint:
    """(a11, a22, det) of a 2x2 matrix."""
    return TetraPoint(m.a11, m.a22, m.det())


def extremal_quotient(x: TetraPoint) -> float:
    """Larger of the two quotients bounding |lambda| for phi(lambda) = x.

    For any analytic phi from the disc to the tetrablock with phi(0) = O,
    this quantity at phi(lambda) is at most |lambda|.
    """
    k = abs(x.x1 * x.x2 - x.x3)
    q1 = (abs(x.x1 - x.x2.conjugate() * x.x3) + k) / (1.0 - abs(x.x2) ** 2)
    q2 = (abs(x.x2 - x.x1.conjugate() * x.x3) + k) / (1.0 - abs(x.x1) ** 2)
    return max(q1, q2)


def is_extremal(y: TangentTarget, tol: float = EXTREMAL_TOL) -> bool:
    return abs(indicatrix_norm(y) - 1.0) <= tol


def extremal_left_inverse(y: TangentTarget) -> tuple[complex, complex]:
    """(omega, omega1) with omega1 * psi(omega, phi(lambda)) = lambda.

    Needs |y2| <= |y1| != 0 and |y1| + |y3| = 1; flip the target first if
    y2 dominates.
    """
    if y.y1 == 0 or abs(y.y2) > abs(y.y1):
        raise PreconditionError("extremal_left_inverse needs |y2| <= |y1| != 0")
    if abs(abs(y.y1) + abs(y.y3) - 1.0) > EXTREMAL_TOL:
        raise PreconditionError("extremal_left_inverse needs |y1| + |y3| = 1")
    omega1 = unit(y.y1).conjugate()
    omega3 = unit(y.y3).conjugate()
    return -omega1.conjugate() * omega3, omega1


def left_inverse_eval(omega: complex, omega1: complex, x: TetraPoint) -> complex:
    return omega1 * psi(omega, x)


def is_doubly_extremal(y: TangentTarget, tol: float = EXTREMAL_TOL) -> bool:
    r3 = 1.0 - abs(y.y3)
    return abs(abs(y.y1) - r3) <= tol and abs(abs(y.y2) - r3) <= tol


def wedge_term(a: Matrix2, b: Matrix2) -> complex:
    """A1 ^ B2 + A2 ^ B1 for the columns A1, A2 of a and B1, B2 of b."""
    a1_b2 = a.a11 * b.a22 - a.a21 * b.a12
    a2_b1 = a.a12 * b.a21 - a.a22 * b.a11
    return a1_b2 + a2_b1


def mu_target(a: Matrix2, b: Matrix2) -> TangentTarget:
    return TangentTarget(b.a11, b.a22, wedge_term(a, b))


def mu_feasible(a: Matrix2, b: Matrix2) -> bool:
    """Solvability of the structured interpolation F(0) = a, F'(0) = b.

    ``a`` must be strictly triangular and nonzero, ``b`` not diagonal.
    """
    if a.a11 != 0 or a.a22 != 0 or (a.a12 != 0 and a.a21 != 0):
        raise PreconditionError("a must be strictly triangular")
    if a.a12 == 0 and a.a21 == 0:
        raise PreconditionError("a must be nonzero")
    if b.a12 == 0 and b.a21 == 0:
        raise PreconditionError("b must not be diagonal")
    return feasible(mu_target(a, b))
