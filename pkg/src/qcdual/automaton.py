"""Reversible finite automata, their permutation operators, and Hamiltonians.

A deterministic update rule on a finite state set, required to be a
bijection, becomes a permutation matrix U acting on the basis of
classical states.  Diagonal density matrices over that basis evolve
classically; a Hamiltonian with U = exp(-iH dt) is read off from the
permutation's cycles.
"""

from dataclasses import dataclass
from itertools import product

import numpy as np

from .linalg import ComplexMatrix, ComplexVector, TWO_PI, exponentiate_hermitian

DENSE_STATE_BUDGET = 4096


@dataclass(frozen=True)
class CellStructure:
    """Cell-lattice shape behind a global automaton rule."""

    cell_count: int
    alphabet_size: int
    radius: int

    def __post_init__(self):
        if self.cell_count < 1 or self.alphabet_size < 2 or self.radius < 0:
            raise ValueError("invalid cell structure")


@dataclass(frozen=True)
class AutomatonSpec:
    """Finite state set with a bijective update rule and a time step."""

    state_count: int
    step_rule: tuple
    dt: float = 1.0
    cells: CellStructure | None = None

    def __post_init__(self):
        object.__setattr__(self, "step_rule", tuple(int(s) for s in self.step_rule))
        if self.state_count < 1:
            raise ValueError("state_count must be positive")
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if len(self.step_rule) != self.state_count:
            raise ValueError("step_rule length must equal state_count")
        seen = {}
        for src, dst in enumerate(self.step_rule):
            if not 0 <= dst < self.state_count:
                raise ValueError(f"rule target {dst} out of range")
            if dst in seen:
                raise ValueError(
                    f"rule is not a bijection: states {seen[dst]} and {src} "
                    f"both map to {dst}"
                )
            seen[dst] = src
        if self.cells is not None:
            expected = self.cells.alphabet_size ** self.cells.cell_count
            if self.state_count != expected:
                raise ValueError(
                    f"state_count {self.state_count} does not equal "
                    f"alphabet^cells = {expected}"
                )


def cellular_spec(cell_count, alphabet_size, radius, table, dt=1.0):
    """Global AutomatonSpec from a local neighborhood update table.

    `table` maps each neighborhood tuple (length 2*radius+1, symbols
    left to right) to the cell's next symbol.  Cells sit on a periodic
    ring; a global state is encoded base-`alphabet_size` with cell 0 as
    the most significant digit.  Reversibility of the induced global map
    is checked by brute force, which is what bounds the state count.
    """
    cells = CellStructure(cell_count, alphabet_size, radius)
    n = alphabet_size**cell_count
    if n > DENSE_STATE_BUDGET:
        raise ValueError(
            f"state count {n} exceeds dense budget {DENSE_STATE_BUDGET}"
        )
    width = 2 * radius + 1
    for hood in product(range(alphabet_size), repeat=width):
        if hood not in table:
            raise ValueError(f"update table is missing neighborhood {hood}")

    def encode(symbols):
        idx = 0
        for s in symbols:
            idx = idx * alphabet_size + s
        return idx

    rule = []
    for state in range(n):
        digits = []
        rem = state
        for _ in range(cell_count):
            digits.append(rem % alphabet_size)
            rem //= alphabet_size
        digits.reverse()
        nxt = []
        for x in range(cell_count):
            hood = tuple(
                digits[(x + off) % cell_count] for off in range(-radius, radius + 1)
            )
            nxt.append(int(table[hood]))
        rule.append(encode(nxt))
    return AutomatonSpec(n, tuple(rule), dt=dt, cells=cells)


@dataclass(frozen=True)
class EvolutionOperator:
    """Permutation matrix of one automaton step, with the rule it encodes."""

    matrix: ComplexMatrix
    permutation: tuple
    dt: float = 1.0

    def __post_init__(self):
        m = self.matrix.data
        ones = m == 1
        if not (
            np.all((m == 0) | ones)
            and np.all(ones.sum(axis=0) == 1)
            and np.all(ones.sum(axis=1) == 1)
        ):
            raise ValueError("matrix is not a permutation matrix")


def build_evolution(spec):
    """Permutation operator with entry (rule(j), j) = 1."""
    n = spec.state_count
    if n > DENSE_STATE_BUDGET:
        raise ValueError(
            f"state count {n} exceeds dense budget {DENSE_STATE_BUDGET}; "
            "larger automata run classically only"
        )
    m = np.zeros((n, n))
    m[np.array(spec.step_rule), np.arange(n)] = 1.0
    labels = tuple(range(n))
    return EvolutionOperator(ComplexMatrix(m, labels, labels), spec.step_rule, spec.dt)


def _cycles(perm):
    n = len(perm)
    seen = np.zeros(n, dtype=bool)
    out = []
    for start in range(n):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        j = perm[start]
        while j != start:
            cyc.append(j)
            seen[j] = True
            j = perm[j]
        out.append(cyc)
    return out


def extract_hamiltonian(op, dt=None):
    """Hermitian H with exp(-iH dt) = U and spectrum in [0, 2*pi/dt).

    Each permutation cycle of length m contributes its Fourier modes
    omega^(jk)/sqrt(m) as eigenvectors with eigenvalue 2*pi*k/(m*dt),
    k = 0..m-1, which fixes H uniquely on the chosen branch and keeps
    degenerate eigenphases deterministic.
    """
    if dt is None:
        dt = op.dt
    if dt <= 0:
        raise ValueError("dt must be positive")
    n = len(op.permutation)
    h = np.zeros((n, n), dtype=complex)
    for cyc in _cycles(op.permutation):
        m = len(cyc)
        idx = np.array(cyc)
        j = np.arange(m)
        # eigenvector matrix of the cyclic shift on this block
        v = np.exp(2j * np.pi * np.outer(j, j) / m) / np.sqrt(m)
        ev = TWO_PI * j / (m * dt)
        block = (v * ev) @ v.conj().T
        h[np.ix_(idx, idx)] += block
    h = 0.5 * (h + h.conj().T)
    return ComplexMatrix(h, op.matrix.row_labels, op.matrix.col_labels)


def _permutation_power(perm, steps):
    n = len(perm)
    result = np.arange(n)
    base = np.array(perm)
    k = steps
    while k:
        if k & 1:
            result = base[result]
        base = base[base]
        k >>= 1
    return result


def evolve_state(op, psi, steps):
    """U^steps |psi> by permutation indexing."""
    if steps < 0:
        raise ValueError("steps must be non-negative")
    if psi.labels != op.matrix.col_labels:
        raise ValueError("state labels do not match the operator basis")
    pk = _permutation_power(op.permutation, steps)
    out = np.empty_like(psi.data)
    out[pk] = psi.data
    return ComplexVector(out, psi.labels)


@dataclass(frozen=True)
class DiagonalDensity:
    """Probability weights over the classical basis (a diagonal density matrix)."""

    weights: np.ndarray

    def __post_init__(self):
        w = np.array(self.weights, dtype=float)
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        if w.ndim != 1 or np.any(w < 0):
            raise ValueError("weights must be a non-negative vector")
        if abs(w.sum() - 1.0) > 1e-12:
            raise ValueError(f"weights sum to {w.sum()!r}, not 1")

    def matrix(self, labels=None):
        labels = tuple(range(len(self.weights))) if labels is None else tuple(labels)
        return ComplexMatrix(np.diag(self.weights), labels, labels)


def evolve_density(op, rho, steps=1):
    """Classical transport of diagonal weights along the permutation."""
    pk = _permutation_power(op.permutation, steps)
    out = np.empty_like(rho.weights)
    out[pk] = rho.weights
    return DiagonalDensity(out)


def expectation(rho, observable):
    """Tr(rho O) for diagonal rho: sum of weights times diagonal entries."""
    diag = np.diag(observable.data)
    if len(diag) != len(rho.weights):
        raise ValueError("dimension mismatch between density and observable")
    return complex(np.sum(rho.weights * diag))


def conjugate_observable(op, observable):
    """Heisenberg step O -> U† O U."""
    u = op.matrix.data
    return ComplexMatrix(
        u.conj().T @ observable.data @ u,
        observable.row_labels,
        observable.col_labels,
    )


def schrodinger_residual(op, h, dt, psi):
    """|| U psi - exp(-iH dt) psi ||."""
    u_psi = op.matrix.data @ psi.data
    e_psi = exponentiate_hermitian(h, -1j * dt).data @ psi.data
    return float(np.linalg.norm(u_psi - e_psi))
