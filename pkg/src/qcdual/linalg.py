"""Dense complex linear algebra over labeled finite bases.

Everything downstream (automaton operators, integer canonical pairs,
lattice movers, fermion chains) is realized as a dense complex matrix
over an explicitly labeled basis.  The wrappers here carry those labels,
check them on every binary operation, and keep the underlying arrays
read-only so values can be shared freely.
"""

from dataclasses import dataclass, field
import math

import numpy as np
import scipy.linalg

TWO_PI = 2.0 * math.pi

DEFAULT_UNITARY_TOL = 1e-10


def _readonly_complex(values, shape_name):
    arr = np.array(values, dtype=complex)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class ComplexMatrix:
    """Dense complex matrix with row and column basis labels."""

    data: np.ndarray
    row_labels: tuple
    col_labels: tuple

    def __post_init__(self):
        arr = _readonly_complex(self.data, "matrix")
        if arr.ndim != 2:
            raise ValueError("matrix data must be two dimensional")
        object.__setattr__(self, "data", arr)
        object.__setattr__(self, "row_labels", tuple(self.row_labels))
        object.__setattr__(self, "col_labels", tuple(self.col_labels))
        if arr.shape != (len(self.row_labels), len(self.col_labels)):
            raise ValueError(
                f"shape {arr.shape} does not match labels "
                f"({len(self.row_labels)}, {len(self.col_labels)})"
            )
        if len(set(self.row_labels)) != len(self.row_labels):
            raise ValueError("duplicate row labels")
        if len(set(self.col_labels)) != len(self.col_labels):
            raise ValueError("duplicate column labels")

    @property
    def shape(self):
        return self.data.shape

    def is_square(self):
        return self.row_labels == self.col_labels


@dataclass(frozen=True)
class ComplexVector:
    """Dense complex vector with basis labels."""

    data: np.ndarray
    labels: tuple

    def __post_init__(self):
        arr = _readonly_complex(self.data, "vector")
        if arr.ndim != 1:
            raise ValueError("vector data must be one dimensional")
        object.__setattr__(self, "data", arr)
        object.__setattr__(self, "labels", tuple(self.labels))
        if arr.shape != (len(self.labels),):
            raise ValueError(
                f"length {arr.shape[0]} does not match {len(self.labels)} labels"
            )
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate labels")

    @property
    def dim(self):
        return self.data.shape[0]

    def norm(self):
        return float(np.linalg.norm(self.data))


@dataclass(frozen=True)
class PhaseBase:
    """Base of the phase convention: exp(i * 2*pi * x) written as epsilon^(i x)."""

    epsilon: float = field(default=math.exp(TWO_PI))

    def __post_init__(self):
        if not math.isclose(self.epsilon, math.exp(TWO_PI), rel_tol=1e-12):
            raise ValueError("epsilon must equal exp(2*pi)")


PHASE_BASE = PhaseBase()


def phase(x, base=PHASE_BASE):
    """epsilon^{ix} = exp(2*pi*i*x) for the fixed base epsilon = e^{2 pi}."""
    if not isinstance(base, PhaseBase):
        raise TypeError("base must be a PhaseBase")
    # log(epsilon) is 2*pi by the PhaseBase invariant; using 2*pi directly
    # avoids the exp/log round trip.
    return complex(np.exp(2j * np.pi * x))


def _require_matching_square(a, b):
    if a.shape != b.shape or not a.is_square() or not b.is_square():
        raise ValueError("operands must be square and of equal dimension")
    if a.row_labels != b.row_labels or a.col_labels != b.col_labels:
        raise ValueError("operand basis labels differ")


def commutator(a, b):
    """[A, B] = AB - BA.

    Both products are formed once and subtracted, so swapping the
    arguments negates the result exactly (bitwise), not just up to
    rounding.
    """
    _require_matching_square(a, b)
    ab = a.data @ b.data
    ba = b.data @ a.data
    return ComplexMatrix(ab - ba, a.row_labels, a.col_labels)


def anticommutator(a, b):
    """{A, B} = AB + BA."""
    _require_matching_square(a, b)
    return ComplexMatrix(a.data @ b.data + b.data @ a.data, a.row_labels, a.col_labels)


def outer(v, w):
    """|v><w|, entry (a, b) = v_a * conj(w_b)."""
    return ComplexMatrix(np.outer(v.data, np.conj(w.data)), v.labels, w.labels)


def dagger(a):
    return ComplexMatrix(a.data.conj().T, a.col_labels, a.row_labels)


def identity_like(a):
    return ComplexMatrix(np.eye(a.shape[0]), a.row_labels, a.col_labels)


def max_abs(arr):
    """Largest |entry| of an array or labeled matrix/vector; 0.0 when empty."""
    data = arr.data if hasattr(arr, "data") and not isinstance(arr, np.ndarray) else arr
    data = np.asarray(data)
    return float(np.abs(data).max()) if data.size else 0.0


def unitarity_deviation(u):
    """max-entry deviation of U†U from the identity."""
    d = u.data.conj().T @ u.data - np.eye(u.shape[0])
    return float(np.abs(d).max())


def eigendecompose_unitary(u, tol=DEFAULT_UNITARY_TOL):
    """Phases and eigenvectors of a unitary, in the convention U v = exp(-i theta) v.

    Returns (phases, vectors): phases is an ascending float array in
    [0, 2*pi); column k of vectors is the eigenvector for phases[k].
    Exact phase ties are broken by lexicographic comparison of the
    (re, im) entry tuples of the phase-normalized eigenvectors, which
    makes the output deterministic for permutation operators with
    repeated cycle lengths.
    """
    if not u.is_square():
        raise ValueError("eigendecomposition requires a square operator")
    dev = unitarity_deviation(u)
    if dev > tol:
        raise ValueError(f"input is not unitary within {tol:g} (deviation {dev:.3e})")
    # Schur form of a normal matrix is diagonal, so Z holds orthonormal
    # eigenvectors and diag(T) the eigenvalues.
    t, z = scipy.linalg.schur(u.data, output="complex")
    lam = np.diag(t)
    theta = np.mod(-np.angle(lam), TWO_PI)
    theta = np.where(theta >= TWO_PI, 0.0, theta)

    vecs = z.copy()
    for k in range(vecs.shape[1]):
        col = vecs[:, k]
        j = int(np.argmax(np.abs(col)))
        pivot = col[j]
        if abs(pivot) > 0:
            vecs[:, k] = col * (np.conj(pivot) / abs(pivot))

    def tie_key(k):
        col = vecs[:, k]
        return (theta[k], tuple((float(e.real), float(e.imag)) for e in col))

    order = sorted(range(len(lam)), key=tie_key)
    phases = theta[order]
    vectors = ComplexMatrix(vecs[:, order], u.row_labels, tuple(range(len(lam))))
    return phases, vectors


def reconstruct_unitary(phases, vectors):
    """Sum of exp(-i theta_k) |v_k><v_k| over the decomposition."""
    v = vectors.data
    u = (v * np.exp(-1j * np.asarray(phases))) @ v.conj().T
    return ComplexMatrix(u, vectors.row_labels, vectors.row_labels)


def hermitian_deviation(a):
    return float(np.abs(a.data - a.data.conj().T).max())


def exponentiate_hermitian(h, scale):
    """exp(scale * H) for Hermitian H via its eigendecomposition."""
    w, v = np.linalg.eigh(h.data)
    m = (v * np.exp(scale * w)) @ v.conj().T
    return ComplexMatrix(m, h.row_labels, h.col_labels)
