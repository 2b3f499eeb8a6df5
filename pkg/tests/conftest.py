import cmath

import numpy as np
import pytest
from hypothesis import strategies as st

from tetrablock.numerics import DiscAutomorphism, Matrix2, TetraPoint


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def disc_complex(radius=0.95):
    """Strategy: complex numbers with modulus <= radius."""
    return st.builds(
        lambda r, t: radius * r ** 0.5 * cmath.exp(1j * t),
        st.floats(0, 1),
        st.floats(0, 2 * np.pi),
    )


def unimodular():
    return st.floats(0, 2 * np.pi).map(lambda t: cmath.exp(1j * t))


def disc_automorphisms(radius=0.95):
    return st.builds(DiscAutomorphism, unimodular(), disc_complex(radius))


def bounded_complex(bound=1.2):
    return st.builds(
        complex,
        st.floats(-bound, bound, allow_nan=False),
        st.floats(-bound, bound, allow_nan=False),
    )


def matrices(bound=1.2):
    return st.builds(Matrix2, *(bounded_complex(bound) for _ in range(4)))


def contraction(m: Matrix2, target: float) -> Matrix2:
    """Rescale m to operator norm ``target`` (via numpy's SVD)."""
    s = np.linalg.norm(m.to_numpy(), 2)
    return m if s == 0 else m.scale(target / s)


def random_contraction(rng, bound=0.95) -> Matrix2:
    m = Matrix2(*(complex(*rng.normal(size=2)) for _ in range(4)))
    return contraction(m, bound * rng.random())


def leaf_points(cap=0.98):
    """Strategy: points (b1 + conj(b2) t, b2 + conj(b1) t, t) with |b1|+|b2|, |t| <= cap."""

    def build(s, share, p1, p2, t):
        b1 = cap * s * share * cmath.exp(1j * p1)
        b2 = cap * s * (1 - share) * cmath.exp(1j * p2)
        return TetraPoint(b1 + b2.conjugate() * t, b2 + b1.conjugate() * t, t)

    return st.builds(
        build,
        st.floats(0, 1),
        st.floats(0, 1),
        st.floats(0, 2 * np.pi),
        st.floats(0, 2 * np.pi),
        disc_complex(cap),
    )


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for name in sorted(results):
            terminalreporter.write_line(results[name])
