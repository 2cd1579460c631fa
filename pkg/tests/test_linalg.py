"""Labeled dense linear algebra: wrappers, phases, unitary spectra."""

import math

import numpy as np
import pytest

from qcdual.linalg import (
    ComplexMatrix,
    ComplexVector,
    PHASE_BASE,
    PhaseBase,
    TWO_PI,
    anticommutator,
    commutator,
    dagger,
    eigendecompose_unitary,
    exponentiate_hermitian,
    hermitian_deviation,
    identity_like,
    max_abs,
    outer,
    phase,
    reconstruct_unitary,
    unitarity_deviation,
)


def random_unitary(rng, n):
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    labels = tuple(range(n))
    return ComplexMatrix(q, labels, labels)


class TestWrappers:
    def test_matrix_shape_must_match_labels(self):
        with pytest.raises(ValueError, match="does not match labels"):
            ComplexMatrix(np.eye(3), (0, 1), (0, 1, 2))

    def test_duplicate_labels_rejected(self):
        with pytest.raises(ValueError, match="duplicate"):
            ComplexMatrix(np.eye(2), (0, 0), (0, 1))
        with pytest.raises(ValueError, match="duplicate"):
            ComplexVector(np.ones(2), ("a", "a"))

    def test_data_is_readonly(self):
        m = ComplexMatrix(np.eye(2), (0, 1), (0, 1))
        with pytest.raises(ValueError):
            m.data[0, 0] = 5.0

    def test_vector_norm(self):
        v = ComplexVector([3.0, 4.0], (0, 1))
        assert v.norm() == 5.0
        assert v.dim == 2

    def test_is_square_checks_labels_not_just_shape(self):
        m = ComplexMatrix(np.eye(2), (0, 1), (2, 3))
        assert not m.is_square()


class TestPhase:
    def test_base_is_fixed(self):
        assert PHASE_BASE.epsilon == pytest.approx(math.exp(TWO_PI))
        with pytest.raises(ValueError):
            PhaseBase(2.718)

    def test_quarter_turn(self):
        assert phase(0.25) == pytest.approx(1j)
        assert phase(0.5) == pytest.approx(-1.0)
        assert phase(0.0) == 1.0 + 0.0j

    def test_additive_in_the_exponent(self):
        rng = np.random.default_rng(3)
        xs = rng.uniform(-1e3, 1e3, 300)
        ys = rng.uniform(-1e3, 1e3, 300)
        worst = max(abs(phase(x) * phase(y) - phase(x + y)) for x, y in zip(xs, ys))
        assert worst <= 5e-12

    def test_rejects_other_bases(self):
        with pytest.raises(TypeError):
            phase(1.0, base=2.0)


class TestCommutators:
    def setup_method(self):
        rng = np.random.default_rng(11)
        labels = tuple(range(12))
        self.a = ComplexMatrix(
            rng.standard_normal((12, 12)) + 1j * rng.standard_normal((12, 12)),
            labels,
            labels,
        )
        self.b = ComplexMatrix(
            rng.standard_normal((12, 12)) + 1j * rng.standard_normal((12, 12)),
            labels,
            labels,
        )

    def test_antisymmetry_is_bitwise(self):
        ab = commutator(self.a, self.b)
        ba = commutator(self.b, self.a)
        assert np.abs(ab.data + ba.data).max() == 0.0

    def test_anticommutator_symmetry(self):
        ab = anticommutator(self.a, self.b)
        ba = anticommutator(self.b, self.a)
        assert np.abs(ab.data - ba.data).max() == 0.0

    def test_label_mismatch_rejected(self):
        other = ComplexMatrix(np.eye(12), tuple(range(1, 13)), tuple(range(1, 13)))
        with pytest.raises(ValueError, match="labels differ"):
            commutator(self.a, other)

    def test_outer_and_dagger(self):
        v = ComplexVector([1.0, 1j], (0, 1))
        w = ComplexVector([0.0, 2.0], (0, 1))
        m = outer(v, w)
        assert m.data[0, 1] == 2.0
        assert m.data[1, 1] == 2j
        assert np.array_equal(dagger(m).data, m.data.conj().T)

    def test_identity_like_and_max_abs(self):
        eye = identity_like(self.a)
        assert np.array_equal(eye.data, np.eye(12))
        assert max_abs(np.array([-3.0, 2.0])) == 3.0
        assert max_abs(np.array([])) == 0.0


class TestUnitarySpectrum:
    def test_reconstruction_of_random_unitary(self):
        rng = np.random.default_rng(5)
        u = random_unitary(rng, 24)
        phases, vectors = eigendecompose_unitary(u)
        back = reconstruct_unitary(phases, vectors)
        assert np.abs(back.data - u.data).max() <= 1e-9

    def test_phases_sorted_in_branch(self):
        rng = np.random.default_rng(6)
        phases, _ = eigendecompose_unitary(random_unitary(rng, 16))
        assert np.all(np.diff(phases) >= 0)
        assert phases[0] >= 0.0 and phases[-1] < TWO_PI

    def test_convention_u_v_equals_exp_minus_i_theta_v(self):
        # diagonal unitary with a known entry fixes the sign convention
        labels = (0, 1)
        u = ComplexMatrix(np.diag([1.0, np.exp(-0.5j)]), labels, labels)
        phases, vectors = eigendecompose_unitary(u)
        assert phases[0] == pytest.approx(0.0, abs=1e-15)
        assert phases[1] == pytest.approx(0.5)
        uv = u.data @ vectors.data[:, 1]
        assert np.abs(uv - np.exp(-0.5j) * vectors.data[:, 1]).max() <= 1e-12

    def test_degenerate_phases_are_deterministic(self):
        # two 3-cycles share all eigenphases; repeated calls must agree bitwise
        m = np.zeros((6, 6))
        for src, dst in enumerate((1, 2, 0, 4, 5, 3)):
            m[dst, src] = 1.0
        labels = tuple(range(6))
        u = ComplexMatrix(m, labels, labels)
        p1, v1 = eigendecompose_unitary(u)
        p2, v2 = eigendecompose_unitary(u)
        assert np.array_equal(p1, p2)
        assert np.array_equal(v1.data, v2.data)
        back = reconstruct_unitary(p1, v1)
        assert np.abs(back.data - u.data).max() <= 1e-12

    def test_non_unitary_rejected(self):
        labels = (0, 1)
        with pytest.raises(ValueError, match="not unitary"):
            eigendecompose_unitary(ComplexMatrix(2.0 * np.eye(2), labels, labels))

    def test_unitarity_deviation_zero_for_permutation(self):
        m = np.zeros((3, 3))
        for src, dst in enumerate((2, 0, 1)):
            m[dst, src] = 1.0
        u = ComplexMatrix(m, (0, 1, 2), (0, 1, 2))
        assert unitarity_deviation(u) == 0.0


class TestHermitian:
    def test_exponentiate_diagonal(self):
        labels = (0, 1)
        h = ComplexMatrix(np.diag([1.0, 2.0]), labels, labels)
        m = exponentiate_hermitian(h, -1j)
        expected = np.diag([np.exp(-1j), np.exp(-2j)])
        assert np.abs(m.data - expected).max() <= 1e-15

    def test_hermitian_deviation(self):
        labels = (0, 1)
        h = ComplexMatrix([[0.0, 1j], [1j, 0.0]], labels, labels)
        assert hermitian_deviation(h) == 2.0
        h = ComplexMatrix([[0.0, 1j], [-1j, 0.0]], labels, labels)
        assert hermitian_deviation(h) == 0.0
