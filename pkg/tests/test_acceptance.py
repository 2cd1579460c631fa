"""Acceptance gate: one test per shipped guarantee, tolerances pinned.

Each test is independent and prints one verdict line under pytest -v.
Runtime ceilings are asserted where the guarantee includes one.
"""

import json
import math
import subprocess
import sys
import time
from itertools import product

import numpy as np
import pytest

from qcdual import boolean_fermion as bf
from qcdual import canonical_pair as cp
from qcdual import string_lattice as sl
from qcdual.automaton import AutomatonSpec, build_evolution, extract_hamiltonian
from qcdual.lattice_field import site_edge_projector, verify_lattice_commutators
from qcdual.linalg import TWO_PI, anticommutator, exponentiate_hermitian, hermitian_deviation
from qcdual.suites import quadrature_fourier_coefficient


def sorted_rows(arr):
    arr = np.asarray(arr)
    return arr[np.lexsort(arr.T[::-1])]


def test_criterion_01_conjugate_commutator_identity():
    # [eta, Q] = (i/2pi)(I - |psi><psi|) entrywise to 1e-12 on three windows
    start = time.perf_counter()
    for n in (4, 16, 64):
        deviation = cp.conjugate_commutator_deviation(cp.TruncationWindow(n))
        assert deviation <= 1e-12, f"window {n}: deviation {deviation}"
    assert time.perf_counter() - start < 5.0


def test_criterion_02_fourier_coefficients_match_quadrature():
    for n in range(-64, 65):
        closed = cp.conjugate_fourier_coefficient(n)
        numeric = quadrature_fourier_coefficient(n)
        assert abs(closed - numeric) <= 1e-10, f"order {n}"


def test_criterion_03_interior_defect_decay():
    # interior [q,p] defect at margin N/2, N in {4, 8, 16}; the N=16 value
    # is the pinned regression baseline
    start = time.perf_counter()
    defects = {}
    for n in (4, 8, 16):
        lattice = cp.square_lattice(n)
        defects[n] = cp.canonical_commutator_defect(lattice, n // 2).defect
    assert time.perf_counter() - start < 60.0
    assert defects[16] == pytest.approx(0.028115936796934624, abs=1e-12)
    assert defects[4] >= defects[8] >= defects[16], (
        "interior defect at margin N/2 grows with the window: "
        f"N=4 -> {defects[4]:.12e}, N=8 -> {defects[8]:.12e}, "
        f"N=16 -> {defects[16]:.12e}; the corner of the scaled interior box "
        "stays a fixed fraction of the window away from the seam, so the "
        "max-entry defect does not decay"
    )


def test_criterion_04_hamiltonian_round_trip():
    start = time.perf_counter()
    rng = np.random.default_rng(2026)
    sizes = rng.integers(2, 257, 20)
    sizes[0] = 256
    for k, n in enumerate(sizes):
        dt = 1.0 if k % 2 == 0 else 0.5
        spec = AutomatonSpec(int(n), tuple(int(v) for v in rng.permutation(n)), dt=dt)
        op = build_evolution(spec)
        h = extract_hamiltonian(op)
        assert hermitian_deviation(h) <= 1e-12
        back = exponentiate_hermitian(h, -1j * dt)
        assert np.abs(back.data - op.matrix.data).max() <= 1e-10
        eigs = np.linalg.eigvalsh(h.data)
        assert eigs.min() >= -1e-12
        assert eigs.max() < TWO_PI / dt
    assert time.perf_counter() - start < 30.0


def test_criterion_05_lattice_commutator_categories():
    window = cp.TruncationWindow(2)
    dev, _ = verify_lattice_commutators(3, window)
    assert dev["same-site"] == 0.0
    assert dev["left-distant"] == 0.0 and dev["right-distant"] == 0.0
    assert dev["cross-sector"] == 0.0
    assert dev["left-neighbor"] <= 1e-12
    assert dev["right-neighbor"] <= 1e-12
    # the neighbor law carries the edge projector; spot-check one entry
    proj = site_edge_projector(3, window, 0)
    assert proj.data[0, 0] == 1.0


def test_criterion_06_string_automaton_exact():
    start = time.perf_counter()
    rng = np.random.default_rng(99)
    for _ in range(50):
        length = int(rng.integers(3, 65))
        lattice = sl.WorldSheetLattice(length, 3, 1)
        left = rng.integers(-5, 6, (length, 3))
        right = rng.integers(-5, 6, (length, 3))
        config = sl.config_from_movers(left, right, lattice)
        before = sl.split_string_movers(config)
        current = config
        for _ in range(1000):
            nxt = sl.step(current)
            residual = sl.wave_residual(current.bottom, current.top, nxt.top)
            assert np.abs(residual).max() == 0
            current = nxt
        after = sl.split_string_movers(current)
        assert np.array_equal(
            sorted_rows(before.left_window(0, length)),
            sorted_rows(after.left_window(0, length)),
        )
        assert np.array_equal(
            sorted_rows(before.right_window(0, length)),
            sorted_rows(after.right_window(0, length)),
        )
        back = current
        for _ in range(1000):
            back = sl.step_back(back)
        assert np.array_equal(back.bottom, config.bottom)
        assert np.array_equal(back.top, config.top)
        assert back.tau0 == config.tau0
    assert time.perf_counter() - start < 10.0


def test_criterion_07_exchange_conservation():
    lat = sl.WorldSheetLattice(4, 3, 1)
    arm_a = np.array([[0, 0, 0], [1, 0, 0], [2, 0, 0], [1, 0, 0]])
    arm_b = np.array([[0, 0, 0], [0, 1, 0], [0, 2, 0], [0, 1, 0]])
    a = sl.StringConfiguration(lat, arm_a, arm_a)
    b = sl.StringConfiguration(lat, arm_b, arm_b)

    def slice_multisets(configs):
        bottoms = sorted(
            tuple(int(v) for v in c.bottom[s])
            for c in configs
            for s in range(c.lattice.length)
        )
        tops = sorted(
            tuple(int(v) for v in c.top[s])
            for c in configs
            for s in range(c.lattice.length)
        )
        return bottoms, tops

    site_count = sum(c.lattice.length for c in (a, b))
    merged, events = sl.apply_exchanges([a, b], sl.scan_exchanges([a, b]))
    assert len(events) == 1 and events[0].merged
    assert sum(c.lattice.length for c in merged) == site_count
    assert slice_multisets(merged) == slice_multisets([a, b])

    split, second = sl.apply_exchanges(merged, sl.scan_exchanges(merged, allow_self=True))
    assert len(second) == 1 and not second[0].merged
    assert slice_multisets(split) == slice_multisets([a, b])
    assert sl.canonical_ensemble_form(split) == sl.canonical_ensemble_form([a, b])


def test_criterion_08_boolean_factorization_preserved():
    # exhaustive over every slice pair for short rings
    for length in (3, 4, 5, 6):
        factorizable = 0
        for bits in product((1, -1), repeat=2 * length):
            field = bf.BooleanField(np.array(bits[:length]), np.array(bits[length:]))
            try:
                movers = bf.split_boolean_movers(field)
            except ValueError:
                continue
            factorizable += 1
            current = field
            for _ in range(2 * length):
                current = bf.boolean_step(current)
            stepped = bf.split_boolean_movers(current)
            assert np.array_equal(stepped.left, movers.left)
            assert np.array_equal(stepped.right, movers.right)
            assert stepped.period_sign == movers.period_sign
            for x in range(length):
                assert movers.value(x, current.t0)[0] == current.top[x, 0]
            back = current
            for _ in range(2 * length):
                back = bf.boolean_step_back(back)
            assert np.array_equal(back.bottom, field.bottom)
            assert np.array_equal(back.top, field.top)
        assert factorizable == 2 ** (2 * length) // 2

    # random factorizable pairs on a longer ring
    rng = np.random.default_rng(41)
    for _ in range(200):
        left = rng.choice([1, -1], (32, 1))
        left[:2] = 1
        movers = bf.BooleanMovers(
            left, rng.choice([1, -1], (32, 1)), (int(rng.choice([1, -1])),)
        )
        top = np.array([movers.value(x, 0) for x in range(32)])
        bottom = np.array([movers.value(x, -1) for x in range(32)])
        field = bf.BooleanField(bottom, top)
        current = field
        for _ in range(200):
            current = bf.boolean_step(current)
        stepped = bf.split_boolean_movers(current)
        assert np.array_equal(stepped.left, movers.left)
        assert np.array_equal(stepped.right, movers.right)
        assert stepped.period_sign == movers.period_sign
        back = current
        for _ in range(200):
            back = bf.boolean_step_back(back)
        assert np.array_equal(back.bottom, field.bottom)
        assert np.array_equal(back.top, field.top)


def test_criterion_09_fermion_algebra_exact():
    start = time.perf_counter()
    for n in range(1, 9):
        chain = bf.jordan_wigner(n)
        eye = np.eye(2**n)
        parity = np.diag(bf.parity_operator(chain).data).real
        same_parity = np.outer(parity, parity) > 0
        for i in range(n):
            ci = chain.mode(i)
            # modes flip parity, so same-parity blocks vanish identically
            assert np.all(ci.data[same_parity] == 0)
            for j in range(n):
                mixed = anticommutator(ci, chain.mode_dagger(j)).data
                expected = eye if i == j else np.zeros_like(mixed)
                assert np.array_equal(mixed, expected)
                same = anticommutator(ci, chain.mode(j)).data
                assert np.array_equal(same, np.zeros_like(same))
    assert time.perf_counter() - start < 20.0


def test_criterion_10_spacetime_lattice_constant():
    cases = {
        1.0: TWO_PI,
        1.0 / (4 * math.pi**2): 1.0,
        4.0: 2.0 * TWO_PI,
    }
    for alpha_prime, expected in cases.items():
        got = sl.spacetime_lattice_constant(alpha_prime)
        assert abs(got - expected) <= 1e-14


def test_criterion_11_verify_all_is_deterministic(tmp_path):
    outputs = []
    for name in ("first.json", "second.json"):
        path = tmp_path / name
        proc = subprocess.run(
            [
                sys.executable,
                "-m",
                "qcdual",
                "verify-all",
                "--seed",
                "7",
                "--format",
                "machine",
                "--output",
                str(path),
            ],
            capture_output=True,
        )
        assert proc.returncode == 0, proc.stderr.decode()
        outputs.append((proc.stdout, path.read_bytes()))
    assert outputs[0][0] == outputs[1][0]
    assert outputs[0][1] == outputs[1][1]
    body = json.loads(outputs[0][1])
    assert body["summary"]["failed"] == 0
