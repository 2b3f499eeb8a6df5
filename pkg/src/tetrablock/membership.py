"""Membership tests for the open tetrablock.

Each of the classical equivalent characterisations is implemented as its
own predicate so that they can be played off against each other:

* ``in_e_definition``  zero-free bilinear form on the closed bidisc (grid)
* ``in_e_inequality``  |x1 - conj(x2) x3| + |x1 x2 - x3| < 1 - |x2|^2
* ``in_e_lft``         sup of the linear fractional map psi(., x) below 1
* ``in_e_symmetric``   symmetric strict contraction A with (a11, a22, det A) = x
* ``in_e_beta``        x on a leaf (b1 + conj(b2) t, b2 + conj(b1) t, t), |b1|+|b2| < 1
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .numerics import (
    TRIANGULAR_TOL,
    Matrix2,
    TetraPoint,
    is_triangular,
    lft_sup_on_circle,
    op_norm,
)

__all__ = [
    "BOUNDARY_BAND",
    "DEFINITION_TOL",
    "MembershipReport",
    "TetraPoint",
    "beta_of",
    "classify",
    "in_distinguished_boundary",
    "in_e_beta",
    "in_e_definition",
    "in_e_inequality",
    "in_e_lft",
    "in_e_symmetric",
    "is_triangular",
    "signed_gap_grid",
]

BOUNDARY_BAND = 1e-6
DEFINITION_TOL = 1e-9
DEFAULT_GRID = 200
INTERIOR_SHELLS = 8
BOUNDARY_TOL = 1e-10

PREDICATES = ("definition", "inequality", "lft", "symmetric", "beta")


@dataclass
class MembershipReport:
    point: TetraPoint
    verdicts: dict[str, bool]
    margins: dict[str, float]
    consensus: bool
    borderline: bool
    triangular: bool = False

    @property
    def member(self) -> bool:
        """Verdict of the inequality test, the reference characterisation."""
        return self.verdicts["inequality"]


def inequality_margin(x: TetraPoint) -> float:
    return (
        1.0
        - abs(x.x2) ** 2
        - abs(x.x1 - x.x2.conjugate() * x.x3)
        - abs(x.x1 * x.x2 - x.x3)
    )


def in_e_inequality(x: TetraPoint) -> tuple[bool, float]:
    margin = inequality_margin(x)
    return margin > 0.0, margin


def lft_margin(x: TetraPoint) -> float:
    if is_triangular(x):
        return min(1.0 - abs(x.x1), 1.0 - abs(x.x2))
    if abs(x.x2) >= 1.0:
        return 1.0 - abs(x.x2)
    return 1.0 - lft_sup_on_circle(x)


def in_e_lft(x: TetraPoint) -> bool:
    # for triangular x, psi(., x) is the constant x1
    return lft_margin(x) > 0.0


def symmetric_witness(x: TetraPoint) -> Matrix2:
    s = cmath.sqrt(x.x1 * x.x2 - x.x3)
    return Matrix2(x.x1, s, s, x.x2)


def symmetric_margin(x: TetraPoint) -> float:
    return 1.0 - op_norm(symmetric_witness(x))


def in_e_symmetric(x: TetraPoint) -> bool:
    return symmetric_margin(x) > 0.0


def beta_of(x: TetraPoint) -> tuple[complex, complex]:
    """The unique (b1, b2) with x on the leaf through parameter x3.

    Requires |x3| < 1.
    """
    d = 1.0 - abs(x.x3) ** 2
    b1 = (x.x1 - x.x2.conjugate() * x.x3) / d
    b2 = (x.x2 - x.x1.conjugate() * x.x3) / d
    return b1, b2


def beta_margin(x: TetraPoint) -> float:
    if abs(x.x3) >= 1.0:
        return 1.0 - abs(x.x3)
    b1, b2 = beta_of(x)
    return 1.0 - abs(b1) - abs(b2)


def in_e_beta(x: TetraPoint) -> bool:
    return beta_margin(x) > 0.0


def _w_grid(n: int) -> np.ndarray:
    theta = 2.0 * np.pi * np.arange(n) / n
    circle = np.exp(1j * theta)
    radii = np.concatenate(([1.0], np.arange(1, INTERIOR_SHELLS) / INTERIOR_SHELLS))
    return np.concatenate([(radii[:, None] * circle[None, :]).ravel(), [0j]])


def signed_gap_grid(x: TetraPoint, n: int = DEFAULT_GRID) -> float:
    """min over sampled |w| <= 1 of |1 - x2 w| - |x1 - x3 w|.

    The bilinear form 1 - x1 z - x2 w + x3 z w is affine in z, so for fixed
    w its minimum modulus over |z| <= 1 is max(0, |1 - x2 w| - |x1 - x3 w|)
    exactly. Only w is sampled: the unit circle and 8 interior shells at
    n angles each, plus the centre, plus w = 1/x2 when that lies in the
    closed disc (there the form vanishes at z = 0). The set where the gap
    is <= 0 is an Apollonius disc or its complement, so if it meets the
    closed disc away from 1/x2 it meets the unit circle. Positive means no
    zero was found.
    """
    if n < 8:
        raise ValueError("grid size must be at least 8")
    w = _w_grid(n)
    if abs(x.x2) >= 1.0:
        w = np.append(w, 1.0 / x.x2)
    gap = np.abs(1.0 - x.x2 * w) - np.abs(x.x1 - x.x3 * w)
    return float(gap.min())


def in_e_definition(x: TetraPoint, grid_size: int = DEFAULT_GRID) -> tuple[bool, float]:
    """Grid check of the defining condition; returns (verdict, min modulus)."""
    min_modulus = max(0.0, signed_gap_grid(x, grid_size))
    return min_modulus > DEFINITION_TOL, min_modulus


def in_distinguished_boundary(x: TetraPoint, tol: float = BOUNDARY_TOL) -> bool:
    return (
        abs(x.x1 - x.x2.conjugate() * x.x3) <= tol
        and abs(x.x2) <= 1.0 + tol
        and abs(abs(x.x3) - 1.0) <= tol
    )


def classify(
    x: TetraPoint,
    grid_size: int = DEFAULT_GRID,
    band: float = BOUNDARY_BAND,
    tol: float = DEFINITION_TOL,
) -> MembershipReport:
    """Run every characterisation and collect verdicts and margins.

    ``borderline`` is raised when any of the closed-form margins is within
    ``band`` of zero. The grid margin is left out of that test because its
    accuracy is set by the grid, not by rounding.
    """
    margins = {
        "inequality": inequality_margin(x),
        "lft": lft_margin(x),
        "symmetric": symmetric_margin(x),
        "beta": beta_margin(x),
    }
    verdicts = {name: m > 0.0 for name, m in margins.items()}
    gap = signed_gap_grid(x, grid_size)
    margins["definition"] = gap
    verdicts["definition"] = gap > tol
    borderline = any(
        abs(m) < band for k, m in margins.items() if k != "definition"
    ) or math.isnan(margins["inequality"])
    ordered = {k: verdicts[k] for k in PREDICATES}
    return MembershipReport(
        point=x,
        verdicts=ordered,
        margins={k: margins[k] for k in PREDICATES},
        consensus=len(set(ordered.values())) == 1,
        borderline=borderline,
        triangular=abs(x.x1 * x.x2 - x.x3) <= TRIANGULAR_TOL,
    )
