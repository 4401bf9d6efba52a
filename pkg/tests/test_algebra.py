import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from cstar_fc import algebra as alg
from cstar_fc.algebra import (
    AlgebraElement,
    Tolerance,
    componentwise_algebra,
    matrix_algebra,
)
from cstar_fc.errors import DescriptorMismatch, NotSelfAdjoint

from oracles import eig2_symmetric

M2 = matrix_algebra(2)
M3 = matrix_algebra(3)
R2 = componentwise_algebra(2)
TOL = Tolerance()

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


def square(n):
    return arrays(np.float64, (n, n), elements=finite)


def test_descriptor_validation():
    with pytest.raises(ValueError):
        alg.AlgebraDescriptor("matrix", 0)
    with pytest.raises(ValueError):
        alg.AlgebraDescriptor("banach", 2)
    with pytest.raises(ValueError):
        M2.element([1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        M2.element([[1.0, math.nan], [0.0, 1.0]])
    with pytest.raises(ValueError):
        R2.scalar(math.inf)


def test_elements_are_immutable():
    z = M2.unit()
    with pytest.raises(AttributeError):
        z.entries = np.zeros((2, 2))
    with pytest.raises(ValueError):
        z.entries[0, 0] = 5.0


def test_products_follow_the_algebra_kind():
    a = M2.element([[0, 1], [0, 0]])
    b = M2.element([[0, 0], [1, 0]])
    assert (a * b).tolist() == [[1, 0], [0, 0]]
    assert (b * a).tolist() == [[0, 0], [0, 1]]
    assert (R2.element([2, 3]) * R2.element([4, -1])).tolist() == [8, -3]
    assert (2 * R2.element([1, 2])).tolist() == [2, 4]


def test_descriptor_mismatch():
    with pytest.raises(DescriptorMismatch):
        M2.unit() + M3.unit()
    with pytest.raises(DescriptorMismatch):
        alg.leq(M2.unit(), R2.unit())


class TestAdjoint:
    def test_identity_matrix(self):
        assert alg.adjoint(M2.unit()) == M2.unit()

    def test_componentwise_is_identity(self):
        assert alg.adjoint(R2.element([3, -2])).tolist() == [3, -2]

    def test_transpose(self):
        assert alg.adjoint(M2.element([[0, 1], [0, 0]])).tolist() == [[0, 0], [1, 0]]

    @given(square(3))
    def test_involution(self, m):
        z = M3.element(m)
        assert alg.adjoint(alg.adjoint(z)) == z


class TestSpectrum:
    def test_diagonal(self):
        assert alg.spectrum(M2.diag([9, 4])) == [4, 9]

    def test_quadratic_oracle(self):
        expected = eig2_symmetric(2, 1, 2)
        assert expected == [1.0, 3.0]
        assert alg.spectrum(M2.element([[2, 1], [1, 2]])) == pytest.approx(expected, abs=1e-12)

    def test_componentwise(self):
        assert alg.spectrum(R2.element([20.5, 20.5])) == [20.5, 20.5]

    def test_rejects_non_self_adjoint(self):
        with pytest.raises(NotSelfAdjoint):
            alg.spectrum(M2.element([[0, 1], [0, 0]]))

    @given(st.floats(-100, 100), st.floats(-100, 100), st.floats(-100, 100))
    def test_matches_quadratic_formula(self, a, b, d):
        got = alg.spectrum(M2.element([[a, b], [b, d]]))
        assert got == pytest.approx(eig2_symmetric(a, b, d), abs=1e-9 * (1 + abs(a) + abs(b) + abs(d)))

    @given(st.integers(1, 8), st.integers(0, 2**32 - 1))
    def test_reconstruction_from_random_orthogonal(self, n, seed):
        rng = np.random.default_rng(seed)
        q, _ = np.linalg.qr(rng.normal(size=(n, n)))
        lam = rng.uniform(-5, 5, size=n)
        h = AlgebraElement(matrix_algebra(n), q @ np.diag(lam) @ q.T)
        h = AlgebraElement(h.descriptor, 0.5 * (h.entries + h.entries.T))
        assert alg.spectrum(h) == pytest.approx(sorted(lam), abs=1e-8)


def test_jacobi_against_numpy_eigh():
    rng = np.random.default_rng(7)
    for n in range(1, 9):
        for _ in range(20):
            a = rng.normal(size=(n, n))
            a = a + a.T
            w, v = alg.jacobi_eigh(a)
            np.testing.assert_allclose(w, np.linalg.eigvalsh(a), atol=1e-10)
            np.testing.assert_allclose(v @ np.diag(w) @ v.T, a, atol=1e-10)
            np.testing.assert_allclose(v.T @ v, np.eye(n), atol=1e-12)


def test_jacobi_tiny_pivot_does_not_overflow():
    w, _ = alg.jacobi_eigh(np.array([[1.0, 1e-300], [1e-300, 1e10]]))
    assert w.tolist() == [1.0, 1e10]


class TestPositivity:
    def test_zero(self):
        assert alg.is_positive(M2.zero())
        assert alg.is_positive(R2.zero())

    def test_indefinite(self):
        assert eig2_symmetric(1, 2, 1) == [-1.0, 3.0]
        assert not alg.is_positive(M2.element([[1, 2], [2, 1]]))

    def test_componentwise_rhs_of_counterexample(self):
        assert alg.is_positive(R2.element([14, 14]))

    def test_non_self_adjoint_is_not_positive(self):
        assert not alg.is_positive(M2.element([[1, 1], [0, 1]]))

    def test_boundary_within_tolerance(self):
        assert alg.is_positive(M2.diag([-1e-10, 1.0]))
        assert not alg.is_positive(M2.diag([-1e-6, 1.0]))


class TestOrder:
    @given(square(2))
    def test_reflexive(self, m):
        z = M2.element(m + m.T)
        assert alg.leq(z, z)

    def test_counterexample_values(self):
        a, b = R2.element([14, 14]), R2.element([20.5, 20.5])
        assert alg.leq(a, b)
        assert not alg.leq(b, a)

    def test_incomparable(self):
        a, b = M2.diag([1, 5]), M2.diag([2, 3])
        assert alg.spectrum(b - a) == [-2, 1]
        assert not alg.leq(a, b)
        assert not alg.leq(b, a)

    @given(square(3), square(3), square(3))
    def test_transitive_on_positive_chains(self, a, p1, p2):
        z = M3.element(a + a.T)
        w = z + M3.element(p1 @ p1.T)
        u = w + M3.element(p2 @ p2.T)
        assert alg.leq(z, w) and alg.leq(w, u) and alg.leq(z, u)


class TestNorm:
    def test_diagonal_coefficient(self):
        p = 1 / (2 * math.sqrt(2))
        assert alg.operator_norm(M2.diag([p, p])) == pytest.approx(0.35355339059327373, abs=1e-15)

    def test_componentwise_max_abs(self):
        assert alg.operator_norm(R2.element([-3, 2])) == 3

    def test_nilpotent(self):
        z = M2.element([[0, 3], [0, 0]])
        assert (alg.adjoint(z) * z).tolist() == [[0, 0], [0, 9]]
        assert alg.operator_norm(z) == pytest.approx(3.0, abs=1e-12)

    @given(square(2))
    def test_c_star_identity(self, m):
        z = M2.element(m)
        n = alg.operator_norm(z)
        assert abs(alg.operator_norm(alg.adjoint(z) * z) - n * n) <= 1e-8 * (1 + n * n)

    @given(square(3), square(3))
    def test_submultiplicative(self, a, b):
        z, w = M3.element(a), M3.element(b)
        assert alg.operator_norm(z * w) <= alg.operator_norm(z) * alg.operator_norm(w) + 1e-8

    @given(square(3))
    def test_matches_numpy_spectral_norm(self, m):
        assert alg.operator_norm(M3.element(m)) == pytest.approx(np.linalg.norm(m, 2), abs=1e-8)


class TestAbs:
    def test_diagonal(self):
        np.testing.assert_allclose(alg.abs_element(M2.diag([-3, 2])).entries, np.diag([3, 2]), atol=1e-12)

    def test_componentwise(self):
        assert alg.abs_element(R2.element([-1, -4])).tolist() == [1, 4]

    def test_nilpotent(self):
        out = alg.abs_element(M2.element([[0, 3], [0, 0]]))
        np.testing.assert_allclose(out.entries, np.diag([0, 3]), atol=1e-12)

    @given(square(3))
    def test_positive_square_root_of_star_product(self, m):
        z = M3.element(m)
        a = alg.abs_element(z)
        assert alg.is_positive(a)
        np.testing.assert_allclose((a * a).entries, (alg.adjoint(z) * z).entries, atol=1e-8 * (1 + (m * m).sum()))
        assert abs(alg.operator_norm(a) - alg.operator_norm(z)) <= 10 * TOL.eps * (1 + alg.operator_norm(z))


class TestAdmissibleControl:
    def test_unit(self):
        assert alg.is_admissible_control_value(M2.unit(), alg.basis(M2))
        assert alg.is_admissible_control_value(R2.unit(), alg.basis(R2))

    def test_interval_control_value(self):
        assert alg.is_admissible_control_value(M2.scalar(2 + max(1, 2, 3)), alg.basis(M2))

    def test_naturals_control_zero(self):
        c = abs(0 + 0 - 1 + 1)
        assert c == 0
        assert not alg.is_admissible_control_value(R2.scalar(c), alg.basis(R2))

    def test_non_central(self):
        z = M2.diag([2, 3])
        assert alg.leq(M2.unit(), z)
        assert not alg.is_admissible_control_value(z, alg.basis(M2))
        assert alg.admissibility_margin(z, alg.basis(M2)) > TOL.eps

    def test_requires_generators(self):
        with pytest.raises(ValueError):
            alg.is_admissible_control_value(M2.unit(), [])


@pytest.mark.parametrize("scale", [1e-160, 1e-7, 1.0, 1e7, 1e150])
def test_jacobi_is_scale_invariant(scale):
    a = np.full((3, 3), scale)
    w, v = alg.jacobi_eigh(a)
    np.testing.assert_allclose(w, [0.0, 0.0, 3 * scale], atol=1e-12 * scale)
    np.testing.assert_allclose(v @ np.diag(w) @ v.T, a, rtol=0, atol=1e-12 * scale)
