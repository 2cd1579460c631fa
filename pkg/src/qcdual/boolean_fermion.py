"""Boolean +-1 automaton and its fermionic operator bridge.

The sign field s(x, t) on a periodic ring obeys the exact product rule
s(x, t+1) = s(x-1, t) s(x+1, t) s(x, t-1), which factorizes into left
and right movers s = s_L * s_R.  A chain of fermionic modes is built by
the Jordan-Wigner construction, and ring slices encode into occupation
basis states (site occupied where s = -1).
"""

from dataclasses import dataclass
from functools import reduce
from itertools import product

import numpy as np

from .linalg import ComplexMatrix, ComplexVector

MAX_CHAIN_SITES = 12


def _sign_slice(values, dims):
    arr = np.array(values, dtype=np.int64)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2 or arr.shape[1] != dims:
        raise ValueError("slice shape does not match the component count")
    if not np.all(np.abs(arr) == 1):
        raise ValueError("slice values must be +1 or -1")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class BooleanField:
    """Two consecutive +-1 slices on a periodic ring, per component."""

    bottom: np.ndarray
    top: np.ndarray
    dims: int = 1
    t0: int = 0

    def __post_init__(self):
        bottom = _sign_slice(self.bottom, self.dims)
        top = _sign_slice(self.top, self.dims)
        if bottom.shape != top.shape:
            raise ValueError("slices must share a shape")
        if bottom.shape[0] < 3:
            raise ValueError("ring needs at least 3 sites")
        object.__setattr__(self, "bottom", bottom)
        object.__setattr__(self, "top", top)

    @property
    def sites(self):
        return self.bottom.shape[0]


def boolean_step(field):
    """s(x, t+1) = s(x-1, t) * s(x+1, t) * s(x, t-1), exactly."""
    new_top = (
        np.roll(field.top, 1, axis=0) * np.roll(field.top, -1, axis=0) * field.bottom
    )
    return BooleanField(field.top, new_top, field.dims, field.t0 + 1)


def boolean_step_back(field):
    """Inverse step; every +-1 factor is its own inverse."""
    new_bottom = (
        np.roll(field.bottom, 1, axis=0)
        * np.roll(field.bottom, -1, axis=0)
        * field.top
    )
    return BooleanField(new_bottom, field.bottom, field.dims, field.t0 - 1)


@dataclass(frozen=True)
class BooleanMovers:
    """Mover factors s_L, s_R with per-component periodicity signs.

    One period of each mover is stored; values extend over the covering
    line by s_L(u + L) = period_sign * s_L(u) (same sign for s_R), the
    two consistent possibilities on a ring.  The gauge anchors
    s_L(0) = s_L(1) = +1.
    """

    left: np.ndarray
    right: np.ndarray
    period_sign: tuple

    def __post_init__(self):
        left = np.array(self.left, dtype=np.int64)
        right = np.array(self.right, dtype=np.int64)
        left.setflags(write=False)
        right.setflags(write=False)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "period_sign", tuple(int(c) for c in self.period_sign))
        if any(c not in (-1, 1) for c in self.period_sign):
            raise ValueError("period signs must be +1 or -1")

    @property
    def sites(self):
        return self.left.shape[0]

    def left_at(self, u):
        u = int(u)
        length = self.sites
        shift, base = divmod(u, length)
        signs = np.array(self.period_sign, dtype=np.int64) ** abs(shift)
        return self.left[base] * signs

    def right_at(self, v):
        v = int(v)
        length = self.sites
        shift, base = divmod(v, length)
        signs = np.array(self.period_sign, dtype=np.int64) ** abs(shift)
        return self.right[base] * signs

    def value(self, x, t):
        """Recomposed field s(x, t) = s_L(x + t) * s_R(x - t)."""
        return self.left_at(x + t) * self.right_at(x - t)


def split_boolean_movers(field):
    """Factor the two slices into movers, or report inconsistent data.

    The covering-line recursion s_L(u) = s_L(u-2) * top(u-t0) *
    bottom(u-t0-1) always solves; a ring factorization additionally
    needs s_L and s_R to repeat after one period up to a single shared
    sign.  Exactly half of all slice pairs pass; the update rule
    preserves the property, so a failure means hand-built inconsistent
    initial data.
    """
    length = field.sites
    # the slices enter only through residues mod length and the mover
    # functions are invariant under t0 -> t0 + length, so normalizing
    # keeps every needed covering-line index non-negative
    t0 = field.t0 % length
    bottom = field.bottom
    top = field.top
    span = 2 * length + 2
    left = np.empty((span + 2 * t0, field.dims), dtype=np.int64)
    left[0] = 1
    left[1] = 1
    for u in range(2, len(left)):
        left[u] = (
            left[u - 2]
            * top[(u - t0) % length]
            * bottom[(u - t0 - 1) % length]
        )
    right = np.empty((span, field.dims), dtype=np.int64)
    for v in range(span):
        right[v] = top[(v + t0) % length] * left[v + 2 * t0]
    period = []
    for mu in range(field.dims):
        signs = set()
        for u in range(length):
            signs.add(int(left[u + length, mu] * left[u, mu]))
        for v in range(length):
            signs.add(int(right[v + length, mu] * right[v, mu]))
        if len(signs) != 1:
            raise ValueError(
                f"slice pair does not factorize into movers (component {mu}: "
                "inconsistent periodicity sign)"
            )
        period.append(signs.pop())
    return BooleanMovers(left[:length], right[:length], tuple(period))


def _lexicographic_occupations(n):
    return tuple(product((0, 1), repeat=n))


@dataclass(frozen=True)
class FermionChain:
    """Jordan-Wigner fermion modes on an n-site chain.

    Basis states are occupation tuples in lexicographic order (vacuum
    first, site 0 the most significant bit); operator entries are exact
    0 and +-1.
    """

    n: int
    lowering: tuple
    raising: tuple

    def mode(self, i):
        return self.lowering[i]

    def mode_dagger(self, i):
        return self.raising[i]


def jordan_wigner(n):
    """Fermion chain via sign strings over the lower-indexed sites."""
    if not 1 <= n <= MAX_CHAIN_SITES:
        raise ValueError(f"chain length must be in [1, {MAX_CHAIN_SITES}]")
    labels = _lexicographic_occupations(n)
    eye = np.eye(2)
    zsign = np.diag([1.0, -1.0])
    lower = np.array([[0.0, 1.0], [0.0, 0.0]])
    lowering = []
    for i in range(n):
        mats = [zsign] * i + [lower] + [eye] * (n - 1 - i)
        op = reduce(np.kron, mats)
        lowering.append(ComplexMatrix(op, labels, labels))
    raising = tuple(
        ComplexMatrix(op.data.conj().T, labels, labels) for op in lowering
    )
    return FermionChain(n, tuple(lowering), raising)


def parity_operator(chain):
    """(-1)^(total occupation), diagonal and exact."""
    labels = _lexicographic_occupations(chain.n)
    zsign = np.diag([1.0, -1.0])
    op = reduce(np.kron, [zsign] * chain.n) if chain.n > 1 else zsign
    return ComplexMatrix(op, labels, labels)


def number_operator(chain, i):
    c = chain.lowering[i]
    return ComplexMatrix(
        chain.raising[i].data @ c.data, c.row_labels, c.col_labels
    )


def encode_boolean_state(slice_values, chain):
    """Occupation basis state with site i occupied where the sign is -1."""
    values = np.asarray(slice_values).reshape(-1)
    if values.shape[0] != chain.n:
        raise ValueError("slice length does not match the chain")
    if not np.all(np.abs(values) == 1):
        raise ValueError("slice values must be +1 or -1")
    occupation = tuple(1 if v == -1 else 0 for v in values)
    labels = _lexicographic_occupations(chain.n)
    vec = np.zeros(len(labels), dtype=complex)
    vec[labels.index(occupation)] = 1.0
    return ComplexVector(vec, labels)
