import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import (
    disc_automorphisms,
    disc_complex,
    matrices,
    random_contraction,
)
from tetrablock.errors import PoleError, PreconditionError
from tetrablock.numerics import (
    DiscAutomorphism,
    Matrix2,
    TetraPoint,
    circumcircle,
    defect,
    disc_apply,
    disc_compose,
    disc_inverse,
    disc_same_map,
    lft_sup_on_circle,
    mobius_matrix,
    op_norm,
    psd_sqrt,
    psi,
)


def svd_norm(m: Matrix2) -> float:
    return float(np.linalg.norm(m.to_numpy(), 2))


def _psi_abs(x: TetraPoint, t: np.ndarray) -> np.ndarray:
    z = np.exp(1j * t)
    return np.abs((x.x3 * z - x.x1) / (x.x2 * z - 1))


def sampled_sup(x: TetraPoint, n: int = 4096, refine: int = 0) -> float:
    """Max of |psi| on n circle points; ``refine`` rounds of local zoom."""
    t = 2 * np.pi * np.arange(n) / n
    vals = _psi_abs(x, t)
    best = float(t[vals.argmax()])
    width = 2 * np.pi / n
    for _ in range(refine):
        t = best + np.linspace(-width, width, 201)
        vals = _psi_abs(x, t)
        best = float(t[vals.argmax()])
        width /= 50
    return float(_psi_abs(x, np.array([best]))[0]) if refine else float(vals.max())


class TestMatrix2:
    def test_det_and_trace(self):
        m = Matrix2(1 + 1j, 2, 3j, 4)
        assert m.det() == (1 + 1j) * 4 - 2 * 3j
        assert m.trace() == 5 + 1j

    def test_product_matches_numpy(self, rng):
        a, b = random_contraction(rng), random_contraction(rng)
        expected = a.to_numpy() @ b.to_numpy()
        assert np.allclose((a @ b).to_numpy(), expected, atol=1e-15)

    def test_inverse(self, rng):
        a = random_contraction(rng)
        assert (a @ a.inverse()).max_abs_diff(Matrix2.identity()) < 1e-12

    def test_singular_inverse_raises(self):
        with pytest.raises(PoleError):
            Matrix2(1, 1, 1, 1).inverse()


class TestOpNorm:
    def test_identity(self):
        assert op_norm(Matrix2.identity()) == 1.0

    def test_single_entry(self):
        assert op_norm(Matrix2(0, 2, 0, 0)) == 2.0

    def test_rank_one_all_ones(self):
        # eigenvalues of [[1,1],[1,1]] are 0 and 2
        assert op_norm(Matrix2(1, 1, 1, 1)) == pytest.approx(2.0, abs=1e-15)

    @given(matrices())
    def test_matches_svd(self, m):
        assert op_norm(m) == pytest.approx(svd_norm(m), abs=1e-12)

    @given(matrices(), matrices())
    def test_submultiplicative(self, a, b):
        assert op_norm(a @ b) <= op_norm(a) * op_norm(b) + 1e-12

    @given(matrices(), st.floats(0, 2 * np.pi), st.floats(0, 2 * np.pi))
    def test_unitarily_invariant(self, m, t, s):
        u = Matrix2(math.cos(t), -math.sin(t), math.sin(t), math.cos(t))
        v = Matrix2.diag(cmath.exp(1j * s), cmath.exp(-2j * s))
        assert op_norm(u @ m @ v) == pytest.approx(op_norm(m), abs=1e-12)


class TestPsdSqrt:
    def test_identity(self):
        assert psd_sqrt(Matrix2.identity()) == Matrix2.identity()

    def test_diagonal(self):
        assert psd_sqrt(Matrix2.diag(4, 9)).max_abs_diff(Matrix2.diag(2, 3)) < 1e-15

    def test_defect_of_nilpotent(self):
        zeta = 0.6
        dz = defect(Matrix2(0, zeta, 0, 0))
        assert dz.max_abs_diff(Matrix2.diag(1, math.sqrt(1 - zeta**2))) < 1e-15

    def test_zero_matrix_uses_fallback(self):
        assert psd_sqrt(Matrix2.zero()).max_abs_diff(Matrix2.zero()) < 1e-15

    def test_rank_one(self):
        v = np.array([0.6, 0.8j])
        m = Matrix2.from_rows(np.outer(v, v.conj()).tolist())
        root = psd_sqrt(m)
        assert (root @ root).max_abs_diff(m) < 1e-12

    def test_rejects_non_hermitian(self):
        with pytest.raises(PreconditionError):
            psd_sqrt(Matrix2(1, 1, 0, 1))

    def test_rejects_indefinite(self):
        with pytest.raises(PreconditionError):
            psd_sqrt(Matrix2.diag(1, -1))

    def test_squares_back(self, rng):
        for _ in range(200):
            z = random_contraction(rng, 0.999)
            m = Matrix2.identity() - z.H @ z
            root = psd_sqrt(m)
            assert (root @ root).max_abs_diff(m) < 1e-12
            # independent route: numpy eigendecomposition
            w, v = np.linalg.eigh(m.to_numpy())
            ref = (v * np.sqrt(np.clip(w, 0, None))) @ v.conj().T
            assert np.allclose(root.to_numpy(), ref, atol=1e-10)


class TestMobiusMatrix:
    def test_maps_z_to_zero(self, rng):
        z = random_contraction(rng)
        assert mobius_matrix(z, z).max_abs_diff(Matrix2.zero()) < 1e-12

    def test_zero_parameter_is_identity(self, rng):
        x = random_contraction(rng)
        assert mobius_matrix(Matrix2.zero(), x).max_abs_diff(x) < 1e-15

    def test_inverse_is_negated_parameter(self, rng):
        for _ in range(200):
            z, x = random_contraction(rng), random_contraction(rng)
            back = mobius_matrix(-z, mobius_matrix(z, x))
            assert back.max_abs_diff(x) < 1e-10

    def test_preserves_ball(self, rng):
        for _ in range(500):
            z, x = random_contraction(rng, 0.999), random_contraction(rng, 0.999)
            assert op_norm(mobius_matrix(z, x)) < 1.0

    def test_rejects_non_contraction(self):
        with pytest.raises(PreconditionError):
            mobius_matrix(Matrix2.identity(), Matrix2.zero())


class TestDiscAutomorphism:
    def test_identity_parameters(self):
        u = DiscAutomorphism(-1, 0)
        for z in (0.3, 0.5j, -0.2 + 0.1j):
            assert disc_apply(u, z) == z

    def test_omega_one_alpha_zero_is_negation(self):
        assert disc_apply(DiscAutomorphism(1, 0), 0.3 + 0.2j) == -(0.3 + 0.2j)

    def test_alpha_maps_to_zero(self):
        u = DiscAutomorphism(cmath.exp(0.7j), 0.4 - 0.3j)
        assert abs(disc_apply(u, u.alpha)) == 0.0

    def test_rotation(self):
        w = cmath.exp(1.1j)
        assert disc_apply(DiscAutomorphism.rotation(w), 0.5) == pytest.approx(0.5 * w)

    def test_validation(self):
        with pytest.raises(PreconditionError):
            DiscAutomorphism(2, 0)
        with pytest.raises(PreconditionError):
            DiscAutomorphism(1, 1)

    @given(disc_automorphisms())
    def test_circle_to_circle(self, u):
        for t in np.linspace(0, 2 * np.pi, 64, endpoint=False):
            assert abs(abs(disc_apply(u, cmath.exp(1j * t))) - 1) < 1e-12

    @given(disc_automorphisms(), disc_complex(0.999))
    def test_disc_to_disc(self, u, z):
        assert abs(disc_apply(u, z)) < 1

    @given(disc_automorphisms(), disc_automorphisms())
    def test_compose_pointwise(self, u, v):
        w = disc_compose(u, v)
        for t in np.linspace(0, 2 * np.pi, 32, endpoint=False):
            z = 0.9 * cmath.exp(1j * t)
            assert abs(disc_apply(w, z) - disc_apply(u, disc_apply(v, z))) < 1e-12

    @given(disc_automorphisms())
    def test_compose_with_identity(self, v):
        assert disc_same_map(disc_compose(DiscAutomorphism.identity(), v), v)

    @given(disc_automorphisms())
    def test_inverse_round_trip(self, u):
        w = disc_compose(u, disc_inverse(u))
        for t in np.linspace(0, 2 * np.pi, 32, endpoint=False):
            z = 0.9 * cmath.exp(1j * t)
            assert abs(disc_apply(w, z) - z) < 1e-12

    def test_inverse_of_identity(self):
        inv = disc_inverse(DiscAutomorphism.identity())
        assert disc_same_map(inv, DiscAutomorphism.identity())

    def test_inverse_sends_zero_to_alpha(self):
        u = DiscAutomorphism(1, 0.3 + 0.4j)
        assert abs(disc_apply(disc_inverse(u), 0) - u.alpha) < 1e-15


class TestPsi:
    def test_at_zero(self):
        x = TetraPoint(0.1 + 0.2j, 0.3, 0.4j)
        assert psi(0, x) == x.x1

    def test_triangular_is_constant(self):
        x = TetraPoint(0.3 - 0.1j, 0.5j, (0.3 - 0.1j) * 0.5j)
        for z in (0.2, -0.7j, 0.5 + 0.5j):
            assert psi(z, x) == pytest.approx(x.x1, abs=1e-15)

    def test_value(self):
        assert psi(1, TetraPoint(0, 0, 1)) == -1

    def test_pole(self):
        with pytest.raises(PoleError):
            psi(2, TetraPoint(0, 0.5, 0))


class TestLftSup:
    def test_rotation_scaling(self):
        assert lft_sup_on_circle(TetraPoint(0, 0, 0.7)) == pytest.approx(0.7, abs=1e-15)

    def test_pole_near_circle(self):
        x = TetraPoint(0, 0.5, 0.5)
        assert lft_sup_on_circle(x) == pytest.approx(1.0, abs=1e-12)
        assert sampled_sup(x) == pytest.approx(1.0, abs=1e-6)

    def test_rejects_triangular(self):
        with pytest.raises(PreconditionError):
            lft_sup_on_circle(TetraPoint(0.3, 0.2, 0.06))

    def test_rejects_pole_in_disc(self):
        with pytest.raises(PreconditionError):
            lft_sup_on_circle(TetraPoint(0, 1.5, 0.3))

    def test_circumcircle_guard(self):
        with pytest.raises(PreconditionError):
            circumcircle(0, 1, 2)

    def test_against_sampling(self, rng):
        # sampled maxima are lower bounds; local zoom closes the gap
        checked = 0
        while checked < 1000:
            v = rng.uniform(-1, 1, 6)
            x = TetraPoint(complex(v[0], v[1]), complex(v[2], v[3]) * 0.9, complex(v[4], v[5]))
            if abs(x.x2) >= 0.9 or abs(x.x1 * x.x2 - x.x3) < 1e-3:
                continue
            exact = lft_sup_on_circle(x)
            coarse = sampled_sup(x)
            fine = sampled_sup(x, refine=4)
            assert coarse <= fine + 1e-12
            assert fine <= exact * (1 + 1e-12)
            assert exact - fine < 1e-10 * max(1.0, exact)
            checked += 1
