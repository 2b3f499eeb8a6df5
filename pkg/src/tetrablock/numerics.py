"""Scalar and 2x2 complex-matrix primitives plus unit-disc Moebius geometry.

Everything here works on plain Python ``complex`` values. The 2x2 algebra
is done entry by entry in closed form; numpy is only touched by the
degenerate branch of :func:`psd_sqrt`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .errors import PoleError, PreconditionError

HERMITIAN_TOL = 1e-10
PSD_EIG_TOL = 1e-12
TRIANGULAR_TOL = 1e-10
UNIMODULAR_TOL = 1e-10


@dataclass(frozen=True)
class TetraPoint:
    """A point (x1, x2, x3) of C^3."""

    x1: complex
    x2: complex
    x3: complex

    def __post_init__(self) -> None:
        for name in ("x1", "x2", "x3"):
            object.__setattr__(self, name, complex(getattr(self, name)))

    def __iter__(self) -> Iterator[complex]:
        yield self.x1
        yield self.x2
        yield self.x3

    @classmethod
    def of(cls, values: Iterable[complex]) -> "TetraPoint":
        x1, x2, x3 = values
        return cls(x1, x2, x3)

    def distance(self, other: "TetraPoint") -> float:
        """Max-modulus distance between two points."""
        return max(abs(a - b) for a, b in zip(self, other))


ORIGIN = TetraPoint(0, 0, 0)


@dataclass(frozen=True)
class Matrix2:
    """2x2 complex matrix [[a11, a12], [a21, a22]]."""

    a11: complex
    a12: complex
    a21: complex
    a22: complex

    def __post_init__(self) -> None:
        for name in ("a11", "a12", "a21", "a22"):
            object.__setattr__(self, name, complex(getattr(self, name)))

    @classmethod
    def identity(cls) -> "Matrix2":
        return cls(1, 0, 0, 1)

    @classmethod
    def zero(cls) -> "Matrix2":
        return cls(0, 0, 0, 0)

    @classmethod
    def diag(cls, d1: complex, d2: complex) -> "Matrix2":
        return cls(d1, 0, 0, d2)

    @classmethod
    def from_rows(cls, rows) -> "Matrix2":
        (a11, a12), (a21, a22) = rows
        return cls(a11, a12, a21, a22)

    def rows(self) -> tuple[tuple[complex, complex], tuple[complex, complex]]:
        return ((self.a11, self.a12), (self.a21, self.a22))

    def entries(self) -> tuple[complex, complex, complex, complex]:
        return (self.a11, self.a12, self.a21, self.a22)

    def to_numpy(self) -> np.ndarray:
        return np.array(self.rows(), dtype=complex)

    def __add__(self, other: "Matrix2") -> "Matrix2":
        return Matrix2(*(a + b for a, b in zip(self.entries(), other.entries())))

    def __sub__(self, other: "Matrix2") -> "Matrix2":
        return Matrix2(*(a - b for a, b in zip(self.entries(), other.entries())))

    def __neg__(self) -> "Matrix2":
        return Matrix2(*(-a for a in self.entries()))

    def scale(self, s: complex) -> "Matrix2":
        return Matrix2(*(s * a for a in self.entries()))

    def __matmul__(self, other: "Matrix2") -> "Matrix2":
        return Matrix2(
            self.a11 * other.a11 + self.a12 * other.a21,
            self.a11 * other.a12 + self.a12 * other.a22,
            self.a21 * other.a11 + self.a22 * other.a21,
            self.a21 * other.a12 + self.a22 * other.a22,
        )

    @property
    def H(self) -> "Matrix2":
        """Conjugate transpose."""
        return Matrix2(
            self.a11.conjugate(), self.a21.conjugate(),
            self.a12.conjugate(), self.a22.conjugate(),
        )

    def det(self) -> complex:
        return self.a11 * self.a22 - self.a12 * self.a21

    def trace(self) -> complex:
        return self.a11 + self.a22

    def inverse(self) -> "Matrix2":
        d = self.det()
        if d == 0:
            raise PoleError("singular 2x2 matrix")
        return Matrix2(self.a22 / d, -self.a12 / d, -self.a21 / d, self.a11 / d)

    def max_abs_diff(self, other: "Matrix2") -> float:
        return max(abs(a - b) for a, b in zip(self.entries(), other.entries()))


@dataclass(frozen=True)
class DiscAutomorphism:
    """The disc automorphism z -> omega (z - alpha) / (conj(alpha) z - 1).

    With this parametrisation the identity map is ``omega = -1, alpha = 0``
    and the rotation z -> w z is ``omega = -w, alpha = 0``.
    """

    omega: complex
    alpha: complex

    def __post_init__(self) -> None:
        omega = complex(self.omega)
        alpha = complex(self.alpha)
        if abs(abs(omega) - 1.0) > UNIMODULAR_TOL:
            raise PreconditionError(f"|omega| must be 1, got {abs(omega)!r}")
        if not abs(alpha) < 1.0:
            raise PreconditionError(f"|alpha| must be < 1, got {abs(alpha)!r}")
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "alpha", alpha)

    @classmethod
    def identity(cls) -> "DiscAutomorphism":
        return cls(-1, 0)

    @classmethod
    def rotation(cls, w: complex) -> "DiscAutomorphism":
        """The rotation z -> w z."""
        return cls(-complex(w), 0)

    def __call__(self, z: complex) -> complex:
        return disc_apply(self, z)

    def coefficients(self) -> tuple[complex, complex, complex, complex]:
        """(a, b, c, d) with the map equal to (a z + b) / (c z + d)."""
        w, a = self.omega, self.alpha
        return (w, -w * a, a.conjugate(), -1)


@dataclass(frozen=True)
class CircleImage:
    center: complex
    radius: float

    def __post_init__(self) -> None:
        if self.radius < 0:
            raise PreconditionError("circle radius must be nonnegative")


def op_norm(m: Matrix2) -> float:
    """Largest singular value of ``m``.

    lambda_max(m m*) = (h11 + h22)/2 + hypot((h11 - h22)/2, |h12|) with
    h = m m*; the gap term is formed directly rather than as t^2 - 4 det,
    which would cancel when the singular values nearly coincide.
    """
    h11 = abs(m.a11) ** 2 + abs(m.a12) ** 2
    h22 = abs(m.a21) ** 2 + abs(m.a22) ** 2
    h12 = m.a11 * m.a21.conjugate() + m.a12 * m.a22.conjugate()
    return math.sqrt((h11 + h22) / 2.0 + math.hypot((h11 - h22) / 2.0, abs(h12)))


def _hermitian_eigenvalues(m: Matrix2) -> tuple[float, float]:
    half_trace = (m.a11.real + m.a22.real) / 2.0
    half_gap = (m.a11.real - m.a22.real) / 2.0
    rad = math.hypot(half_gap, abs(m.a12))
    return half_trace - rad, half_trace + rad


def psd_sqrt(m: Matrix2) -> Matrix2:
    """Unique positive semidefinite square root of a Hermitian PSD matrix."""
    if (
        abs(m.a12 - m.a21.conjugate()) > HERMITIAN_TOL
        or abs(m.a11.imag) > HERMITIAN_TOL
        or abs(m.a22.imag) > HERMITIAN_TOL
    ):
        raise PreconditionError("psd_sqrt needs a Hermitian matrix")
    lo, _ = _hermitian_eigenvalues(m)
    if lo < -PSD_EIG_TOL:
        raise PreconditionError(f"psd_sqrt needs a PSD matrix (min eigenvalue {lo!r})")
    # symmetrise before the closed form so the result is exactly Hermitian
    off = (m.a12 + m.a21.conjugate()) / 2.0
    h = Matrix2(m.a11.real, off, off.conjugate(), m.a22.real)
    s = math.sqrt(max(h.det().real, 0.0))
    denom_sq = h.a11.real + h.a22.real + 2.0 * s
    if denom_sq < 1e-14:
        w, v = np.linalg.eigh(h.to_numpy())
        root = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
        return Matrix2.from_rows(root.tolist())
    t = math.sqrt(denom_sq)
    return Matrix2(
        (h.a11 + s) / t, h.a12 / t, h.a21 / t, (h.a22 + s) / t
    )


def defect(z: Matrix2) -> Matrix2:
    """D_Z = (1 - Z* Z)^(1/2)."""
    return psd_sqrt(Matrix2.identity() - z.H @ z)


def mobius_matrix(z: Matrix2, x: Matrix2) -> Matrix2:
    """Matricial Moebius map -Z + D_{Z*} X (1 - Z* X)^-1 D_Z of the 2x2 ball."""
    if not op_norm(z) < 1.0:
        raise PreconditionError("mobius_matrix needs ||Z|| < 1")
    if not op_norm(x) < 1.0:
        raise PreconditionError("mobius_matrix needs ||X|| < 1")
    k = Matrix2.identity() - z.H @ x
    if abs(k.det()) < 1e-300:
        raise PreconditionError("1 - Z* X is singular")
    return -z + defect(z.H) @ x @ k.inverse() @ defect(z)


def disc_apply(u: DiscAutomorphism, z: complex) -> complex:
    den = u.alpha.conjugate() * z - 1
    if den == 0:
        raise PoleError("disc automorphism evaluated at its pole")
    return u.omega * (z - u.alpha) / den


def _from_coefficients(a: complex, b: complex, c: complex, d: complex) -> DiscAutomorphism:
    # rescale so the constant in the denominator is -1, then read off omega, alpha
    s = -1.0 / d
    a, b = a * s, b * s
    omega = a / abs(a)
    return DiscAutomorphism(omega, -b / a)


def disc_compose(u: DiscAutomorphism, v: DiscAutomorphism) -> DiscAutomorphism:
    """The automorphism z -> u(v(z))."""
    a1, b1, c1, d1 = u.coefficients()
    a2, b2, c2, d2 = v.coefficients()
    return _from_coefficients(
        a1 * a2 + b1 * c2,
        a1 * b2 + b1 * d2,
        c1 * a2 + d1 * c2,
        c1 * b2 + d1 * d2,
    )


def disc_inverse(u: DiscAutomorphism) -> DiscAutomorphism:
    return DiscAutomorphism(u.omega.conjugate(), u.omega * u.alpha)


def disc_same_map(u: DiscAutomorphism, v: DiscAutomorphism, tol: float = 1e-10) -> bool:
    """Map-level equality, checked at a handful of interior points."""
    probes = [0j, 0.5, 0.5j, -0.5, -0.5j, 0.3 + 0.4j]
    return all(abs(disc_apply(u, z) - disc_apply(v, z)) <= tol for z in probes)


def psi(z: complex, x: TetraPoint) -> complex:
    """The linear fractional map (x3 z - x1) / (x2 z - 1)."""
    den = x.x2 * z - 1
    if den == 0:
        raise PoleError("psi evaluated at its pole z = 1/x2")
    return (x.x3 * z - x.x1) / den


def is_triangular(x: TetraPoint, tol: float = TRIANGULAR_TOL) -> bool:
    return abs(x.x1 * x.x2 - x.x3) <= tol


def circumcircle(a: complex, b: complex, c: complex) -> CircleImage:
    """Circle through three distinct non-collinear points."""
    num = (
        abs(a) ** 2 * (b - c)
        + abs(b) ** 2 * (c - a)
        + abs(c) ** 2 * (a - b)
    )
    den = a.conjugate() * (b - c) + b.conjugate() * (c - a) + c.conjugate() * (a - b)
    if abs(den) < 1e-300:
        raise PreconditionError("collinear points have no circumcircle")
    center = num / den
    return CircleImage(center, abs(a - center))


def lft_sup_on_circle(x: TetraPoint) -> float:
    """sup of |psi(z, x)| over the closed unit disc, in closed form.

    Writes psi(z, x) = x1 + (x3 - x1 x2) g(z) with g(z) = z / (x2 z - 1),
    takes the circumcircle of g(1), g(i), g(-1) and maps it across.
    """
    if not abs(x.x2) < 1.0:
        raise PreconditionError("lft_sup_on_circle needs |x2| < 1")
    if is_triangular(x):
        raise PreconditionError("lft_sup_on_circle is undefined for triangular points")
    g = [z / (x.x2 * z - 1) for z in (1, 1j, -1)]
    circ = circumcircle(*g)
    k = x.x3 - x.x1 * x.x2
    return abs(x.x1 + k * circ.center) + abs(k) * circ.radius


def unit(z: complex) -> complex:
    """Phase of z, with the phase of 0 taken to be 1."""
    return z / abs(z) if z != 0 else 1 + 0j


def cis(t: float) -> complex:
    return cmath.exp(1j * t)
