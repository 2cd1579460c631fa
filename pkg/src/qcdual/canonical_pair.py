"""Canonical position/momentum pairs built from integer-valued operators.

An integer operator on a symmetric window [-N, N] acquires a bounded
conjugate partner whose matrix elements come from the Fourier series of
the sawtooth x -> x on (-1/2, 1/2].  Combining an integer pair with the
symmetrized correction operators yields real position and momentum
operators whose commutator equals (i/2pi)(1 - |edge><edge|) up to
truncation effects, where the edge state is the alternating-sign vector
over the window.
"""

from dataclasses import dataclass
import math

import numpy as np

from .linalg import ComplexMatrix, ComplexVector, TWO_PI, commutator, outer

KERNEL_SINGULARITY_TOL = 1e-12


@dataclass(frozen=True)
class TruncationWindow:
    """Symmetric integer window [-N, N], dimension 2N+1."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("window size must be positive")

    @property
    def dim(self):
        return 2 * self.n + 1

    def indices(self):
        return np.arange(-self.n, self.n + 1)

    def labels(self):
        return tuple(range(-self.n, self.n + 1))


@dataclass(frozen=True)
class PairLattice:
    """Product basis of two integer windows, ordered row-major (pos outer)."""

    window_pos: TruncationWindow
    window_mom: TruncationWindow

    @property
    def dim(self):
        return self.window_pos.dim * self.window_mom.dim

    def labels(self):
        return tuple(
            (q, p)
            for q in range(-self.window_pos.n, self.window_pos.n + 1)
            for p in range(-self.window_mom.n, self.window_mom.n + 1)
        )

    def coordinate_arrays(self):
        """Flat per-basis-state integer coordinates (pos, mom)."""
        pos = np.repeat(self.window_pos.indices(), self.window_mom.dim)
        mom = np.tile(self.window_mom.indices(), self.window_pos.dim)
        return pos, mom


def square_lattice(n):
    w = TruncationWindow(n)
    return PairLattice(w, w)


def bounded_conjugate(window):
    """Bounded conjugate of the integer operator on the window.

    Entries <m1| . |m2> = (i/2pi) (-1)^(m1-m2) / (m1-m2) off the
    diagonal and 0 on it; Hermitian by construction.
    """
    idx = window.indices()
    d = idx[:, None] - idx[None, :]
    safe = np.where(d == 0, 1, d)
    m = np.where(d != 0, 1j / TWO_PI * (-1.0) ** np.abs(d) / safe, 0.0)
    labels = window.labels()
    return ComplexMatrix(m, labels, labels)


def integer_diagonal(window):
    labels = window.labels()
    return ComplexMatrix(np.diag(window.indices().astype(float)), labels, labels)


def edge_state(window):
    """Alternating vector (-1)^m over the window, unnormalized."""
    vals = (-1.0) ** np.abs(window.indices())
    return ComplexVector(vals, window.labels())


def pair_edge_state(lattice):
    """Alternating vector (-1)^(pos+mom) over the pair lattice, unnormalized."""
    pos, mom = lattice.coordinate_arrays()
    return ComplexVector((-1.0) ** np.abs(pos + mom), lattice.labels())


def conjugate_fourier_coefficient(n):
    """Fourier coefficient of the sawtooth x -> x on (-1/2, 1/2].

    Coefficient n is i(-1)^n / (2*pi*n) for n != 0 and 0 for n = 0.
    """
    if n == 0:
        return 0j
    return 1j * (-1.0) ** n / (TWO_PI * n)


def conjugate_commutator_deviation(window):
    """Max-entry deviation of the conjugate/integer commutator identity.

    The commutator of the bounded conjugate with its integer partner
    equals (i/2pi)(1 - |edge><edge|) entrywise on any window; the
    integer operator is diagonal, so truncation does not disturb the
    identity.
    """
    eta = bounded_conjugate(window)
    q = integer_diagonal(window)
    psi = edge_state(window)
    lhs = commutator(eta, q).data
    rhs = (1j / TWO_PI) * (np.eye(window.dim) - outer(psi, psi).data)
    return float(np.abs(lhs - rhs).max())


def _pair_differences(lattice):
    pos, mom = lattice.coordinate_arrays()
    dq = pos[None, :] - pos[:, None]
    dp = mom[None, :] - mom[:, None]
    return pos, mom, dq.astype(float), dp.astype(float)


def position_correction(lattice):
    """Bounded correction completing the integer position to a real one.

    Entry at coordinate differences (dq, dp) = (col - row) is
    (-1)^(dp+dq+1) * i*dp / (2*pi*(dp^2+dq^2)), zero at dq = dp = 0.
    """
    _, _, dq, dp = _pair_differences(lattice)
    den = dq * dq + dp * dp
    safe = np.where(den == 0, 1.0, den)
    sign = np.where(np.mod(dq + dp, 2) == 0, 1.0, -1.0)
    m = np.where(den > 0, -sign * 1j * dp / (TWO_PI * safe), 0.0)
    labels = lattice.labels()
    return ComplexMatrix(m, labels, labels)


def momentum_correction(lattice):
    """Bounded correction completing the integer momentum to a real one.

    Entry at (dq, dp) is (-1)^(dp+dq) * i*dq / (2*pi*(dp^2+dq^2)),
    zero at dq = dp = 0.
    """
    _, _, dq, dp = _pair_differences(lattice)
    den = dq * dq + dp * dp
    safe = np.where(den == 0, 1.0, den)
    sign = np.where(np.mod(dq + dp, 2) == 0, 1.0, -1.0)
    m = np.where(den > 0, sign * 1j * dq / (TWO_PI * safe), 0.0)
    labels = lattice.labels()
    return ComplexMatrix(m, labels, labels)


def position_operator(lattice):
    pos, _ = lattice.coordinate_arrays()
    labels = lattice.labels()
    diag = ComplexMatrix(np.diag(pos.astype(float)), labels, labels)
    corr = position_correction(lattice)
    return ComplexMatrix(diag.data + corr.data, labels, labels)


def momentum_operator(lattice):
    _, mom = lattice.coordinate_arrays()
    labels = lattice.labels()
    diag = ComplexMatrix(np.diag(mom.astype(float)), labels, labels)
    corr = momentum_correction(lattice)
    return ComplexMatrix(diag.data + corr.data, labels, labels)


@dataclass(frozen=True)
class CommutatorDefect:
    """Interior truncation defect of the canonical commutator identity."""

    defect: float
    edge_overlap: float


def canonical_commutator_defect(lattice, interior_margin):
    """Truncation defect of [q, p] = (i/2pi)(1 - |edge><edge|).

    defect: largest |entry| of the residual over rows and columns whose
    (pos, mom) labels lie at least `interior_margin` inside the window.
    edge_overlap: |<e|C|e>| for the normalized edge state e, the
    residual weight in the edge direction (the identity leaves this
    direction exact, so it stays at rounding level).
    """
    n_pos = lattice.window_pos.n
    n_mom = lattice.window_mom.n
    if not 1 <= interior_margin < min(n_pos, n_mom):
        raise ValueError("interior_margin must be in [1, N)")
    q = position_operator(lattice)
    p = momentum_operator(lattice)
    psi = pair_edge_state(lattice)
    residual = commutator(q, p).data - (1j / TWO_PI) * (
        np.eye(lattice.dim) - outer(psi, psi).data
    )
    pos, mom = lattice.coordinate_arrays()
    interior = (np.abs(pos) <= n_pos - interior_margin) & (
        np.abs(mom) <= n_mom - interior_margin
    )
    defect = float(np.abs(residual[np.ix_(interior, interior)]).max())
    e = psi.data / np.linalg.norm(psi.data)
    edge_overlap = float(abs(e.conj() @ residual @ e))
    return CommutatorDefect(defect, edge_overlap)


def interior_action_deviation(lattice, margin=2):
    """Max interior deviation of [q,p] v from (i/2pi) v for a fixed
    interior test vector orthogonal to the edge state.

    The vector has support on the two central sites (0,0) and (1,0),
    whose alternating signs cancel, so the rank-one edge term drops and
    the deviation isolates pure truncation error; it decays as the
    window grows.
    """
    n_pos = lattice.window_pos.n
    n_mom = lattice.window_mom.n
    if min(n_pos, n_mom) <= margin:
        raise ValueError("window too small for the requested margin")
    q = position_operator(lattice).data
    p = momentum_operator(lattice).data
    v = np.zeros(lattice.dim, dtype=complex)
    dim_mom = lattice.window_mom.dim
    v[(0 + n_pos) * dim_mom + (0 + n_mom)] = 1.0
    v[(1 + n_pos) * dim_mom + (0 + n_mom)] = 1.0
    psi = pair_edge_state(lattice)
    if abs(psi.data @ v) != 0:
        raise AssertionError("test vector must be orthogonal to the edge state")
    dev = q @ (p @ v) - p @ (q @ v) - (1j / TWO_PI) * v
    pos, mom = lattice.coordinate_arrays()
    interior = (np.abs(pos) <= n_pos - margin) & (np.abs(mom) <= n_mom - margin)
    return float(np.abs(dev[interior]).max())


def split_integer_fraction(x):
    """x = n + f with integer n and fraction f in (-1/2, 1/2].

    Ties x = n + 1/2 resolve downward to n, keeping f = 1/2 inside the
    half-open interval.
    """
    n = math.ceil(x - 0.5)
    return int(n), float(x - n)


def momentum_basis_kernel(k_int, kappa, pos, mom):
    """Overlap of the continuous-momentum state (k_int + kappa) with |pos, mom>.

    (sin(pi kappa)/pi) * (-1)^(k_int-mom) * exp(-2 pi i kappa pos)
    / (k_int - mom + kappa); the removable singularity at
    k_int - mom + kappa -> 0 is evaluated through the sinc form.
    """
    if not -0.5 < kappa <= 0.5:
        raise ValueError("kappa must lie in (-1/2, 1/2]")
    sign = -1.0 if (k_int - mom) % 2 else 1.0
    phase = np.exp(-2j * np.pi * kappa * pos)
    d = k_int - mom + kappa
    if abs(d) < KERNEL_SINGULARITY_TOL:
        return complex(sign * phase * np.sinc(kappa))
    return complex(sign * phase * np.sin(np.pi * kappa) / (np.pi * d))


def midpoint_kappa_grid(count):
    """Uniform midpoint grid of the kappa interval (-1/2, 1/2)."""
    if count < 1:
        raise ValueError("grid needs at least one point")
    return -0.5 + (np.arange(count) + 0.5) / count


def to_momentum_basis(state, lattice, k_window, kappa_grid):
    """Amplitudes <k_int + kappa | state> on a (k, kappa) grid.

    Returns a complex array of shape (k_window.dim, len(kappa_grid)).
    The kernel sum runs over the whole pair lattice: the momentum label
    enters the 1/(k - mom + kappa) factor and the position label only a
    phase, so the sum factorizes into a phase-weighted position sum
    followed by a kernel contraction over momentum.
    """
    if state.labels != lattice.labels():
        raise ValueError("state labels do not match the lattice")
    kappa_grid = np.asarray(kappa_grid, dtype=float)
    if np.any(kappa_grid <= -0.5) or np.any(kappa_grid > 0.5):
        raise ValueError("kappa grid must lie in (-1/2, 1/2]")
    pos_idx = lattice.window_pos.indices()
    mom_idx = lattice.window_mom.indices()
    k_idx = k_window.indices()
    grid = state.data.reshape(lattice.window_pos.dim, lattice.window_mom.dim)
    out = np.empty((k_window.dim, len(kappa_grid)), dtype=complex)
    sign = (-1.0) ** np.abs(k_idx[:, None] - mom_idx[None, :])
    for col, kappa in enumerate(kappa_grid):
        d = k_idx[:, None] - mom_idx[None, :] + kappa
        near = np.abs(d) < KERNEL_SINGULARITY_TOL
        safe = np.where(near, 1.0, d)
        kernel = sign * np.sin(np.pi * kappa) / (np.pi * safe)
        kernel = np.where(near, sign * np.sinc(kappa), kernel)
        phases = np.exp(-2j * np.pi * kappa * pos_idx)
        out[:, col] = kernel @ (grid.T @ phases)
    return out


def momentum_basis_norm(amplitudes, kappa_grid):
    """Discretized norm: sum over k of the kappa quadrature of |amp|^2.

    Assumes a uniform grid over the unit kappa interval (weight
    1/len(grid)), as produced by midpoint_kappa_grid.
    """
    amplitudes = np.asarray(amplitudes)
    return float(np.sum(np.abs(amplitudes) ** 2) / amplitudes.shape[1])
