"""Lattice field movers: classical splitting and the quantum commutator web."""

import math

import numpy as np
import pytest

from qcdual import lattice_field as lf
from qcdual.canonical_pair import TruncationWindow
from qcdual.linalg import TWO_PI, commutator, hermitian_deviation


def dalembert_field(f, g, t):
    """phi(x, t) = f(x + t) + g(x - t) on the ring, pi the half-step rate."""
    sites = len(f)
    x = np.arange(sites)
    phi = f[(x + t) % sites] + g[(x - t) % sites]
    phi_next = f[(x + t + 1) % sites] + g[(x - t - 1) % sites]
    phi_prev = f[(x + t - 1) % sites] + g[(x - t + 1) % sites]
    return lf.LatticeField1D(phi.astype(float), (phi_next - phi_prev) / 2.0)


class TestWrappers:
    def test_minimum_sites(self):
        with pytest.raises(ValueError, match="3 sites"):
            lf.LatticeField1D(np.zeros(2), np.zeros(2))
        with pytest.raises(ValueError, match="3 sites"):
            lf.LatticeField1D(np.zeros(4), np.zeros(3))

    def test_spacing_positive(self):
        with pytest.raises(ValueError, match="spacing"):
            lf.LatticeField1D(np.zeros(3), np.zeros(3), spacing=0.0)

    def test_arrays_frozen(self):
        field = lf.LatticeField1D(np.zeros(3), np.zeros(3))
        with pytest.raises(ValueError):
            field.phi[0] = 1.0

    def test_mover_shape_check(self):
        with pytest.raises(ValueError, match="equal-length"):
            lf.MoverFields(np.zeros(3), np.zeros(4))

    def test_sites(self):
        assert lf.LatticeField1D(np.zeros(7), np.zeros(7)).sites == 7


class TestClassicalMovers:
    def test_split_formula(self):
        rng = np.random.default_rng(3)
        phi = rng.integers(-5, 6, 12).astype(float)
        pi = rng.integers(-5, 6, 12).astype(float)
        field = lf.LatticeField1D(phi, pi)
        movers = lf.split_movers(field)
        grad = lf.symmetric_gradient(phi)
        assert np.array_equal(movers.a_left, pi + grad)
        assert np.array_equal(movers.a_right, pi - grad)

    def test_recombine_inverts_split(self):
        rng = np.random.default_rng(4)
        field = lf.LatticeField1D(
            rng.integers(-9, 10, 10).astype(float),
            rng.integers(-9, 10, 10).astype(float),
        )
        pi, grad = lf.recombine_movers(lf.split_movers(field))
        assert np.array_equal(pi, field.pi)
        assert np.array_equal(grad, lf.symmetric_gradient(field.phi))

    def test_single_impulses_travel_one_site_per_step(self):
        right = lf.MoverFields(np.zeros(5), np.eye(5)[0])
        left = lf.MoverFields(np.eye(5)[0], np.zeros(5))
        assert np.argmax(lf.shift_evolve(right, 1).a_right) == 1
        assert np.argmax(lf.shift_evolve(right, 3).a_right) == 3
        assert np.argmax(lf.shift_evolve(left, 1).a_left) == 4
        assert np.argmax(lf.shift_evolve(left, 2).a_left) == 3

    def test_shift_solves_wave_equation(self):
        rng = np.random.default_rng(5)
        f = rng.integers(-4, 5, 16)
        g = rng.integers(-4, 5, 16)
        start = lf.split_movers(dalembert_field(f, g, 0))
        for t in (1, 2, 7, 16, 33):
            direct = lf.split_movers(dalembert_field(f, g, t))
            shifted = lf.shift_evolve(start, t)
            assert np.array_equal(shifted.a_left, direct.a_left)
            assert np.array_equal(shifted.a_right, direct.a_right)

    def test_backward_shift_inverts(self):
        movers = lf.MoverFields(np.arange(6.0), np.arange(6.0)[::-1].copy())
        back = lf.shift_evolve(lf.shift_evolve(movers, 9), -9)
        assert np.array_equal(back.a_left, movers.a_left)
        assert np.array_equal(back.a_right, movers.a_right)

    def test_hamilton_density_identity(self):
        rng = np.random.default_rng(6)
        field = lf.LatticeField1D(
            rng.integers(-6, 7, 9).astype(float),
            rng.integers(-6, 7, 9).astype(float),
        )
        movers = lf.split_movers(field)
        density = lf.hamilton_density(movers)
        grad = lf.symmetric_gradient(field.phi)
        assert np.array_equal(density, 0.5 * (field.pi**2 + grad**2))

    def test_total_energy_conserved_exactly(self):
        rng = np.random.default_rng(7)
        movers = lf.MoverFields(
            rng.integers(-8, 9, 20).astype(float),
            rng.integers(-8, 9, 20).astype(float),
        )
        total = math.fsum(lf.hamilton_density(movers))
        for steps in (1, 3, 20, 41):
            drift = math.fsum(lf.hamilton_density(lf.shift_evolve(movers, steps)))
            assert drift - total == 0.0


class TestQuantumMovers:
    def test_sector_dimension(self):
        assert lf.sector_dimension(3, TruncationWindow(1)) == 27
        assert lf.sector_dimension(4, TruncationWindow(2)) == 625

    def test_site_count_floor(self):
        with pytest.raises(ValueError, match="3 sites"):
            lf.compose_quantum_movers(2, TruncationWindow(1))

    def test_budget_guard(self):
        with pytest.raises(ValueError, match="exceeds"):
            lf.compose_quantum_movers(6, TruncationWindow(2))

    def test_movers_hermitian_exactly(self):
        left_ops, right_ops = lf.compose_quantum_movers(3, TruncationWindow(1))
        for op in left_ops + right_ops:
            assert hermitian_deviation(op) == 0.0

    def test_edge_projector_unnormalized(self):
        window = TruncationWindow(1)
        proj = lf.site_edge_projector(3, window, 1)
        # |e><e| with <e|e> = window.dim, so P^2 = window.dim * P
        assert np.array_equal(proj.data @ proj.data, window.dim * proj.data)
        assert np.trace(proj.data).real == lf.sector_dimension(3, window)

    def test_neighbor_commutator_law(self):
        window = TruncationWindow(1)
        left_ops, _ = lf.compose_quantum_movers(3, window)
        eye = np.eye(lf.sector_dimension(3, window))
        target = (1j / TWO_PI) * (eye - lf.site_edge_projector(3, window, 1).data)
        got = commutator(left_ops[0], left_ops[1]).data
        assert np.abs(got - target).max() <= 1e-12

    def test_commutator_categories_three_sites(self):
        dev, notes = lf.verify_lattice_commutators(3, TruncationWindow(1))
        assert dev["same-site"] == 0.0
        assert dev["cross-sector"] == 0.0
        assert dev["left-distant"] == 0.0 and dev["right-distant"] == 0.0
        assert dev["left-neighbor"] <= 1e-12
        assert dev["right-neighbor"] <= 1e-12
        # a 3-ring has no distant pairs and the joint space fits the budget
        assert "vacuously" in notes["left-distant"]
        assert "numerically" in notes["cross-sector"]

    def test_commutator_categories_four_sites(self):
        dev, notes = lf.verify_lattice_commutators(4, TruncationWindow(1))
        # distance-2 pairs exist here and commute exactly
        assert dev["left-distant"] == 0.0 and dev["right-distant"] == 0.0
        assert "left-distant" not in notes
        assert dev["left-neighbor"] <= 1e-12 and dev["right-neighbor"] <= 1e-12
        # 81^2 exceeds the numeric budget, so cross-sector is structural
        assert "disjoint tensor factors" in notes["cross-sector"]
        assert dev["cross-sector"] == 0.0
