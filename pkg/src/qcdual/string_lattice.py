"""Exact integer string automaton on a world-sheet lattice.

Transverse string coordinates are integers on a periodic sigma ring,
two consecutive time slices deep, advanced by the exact recurrence
X(s, t+1) = X(s+1, t) + X(s-1, t) - X(s, t-1).  Two slices split into
left/right movers on the covering light-cone lines, and coinciding
coordinates trigger a deterministic arm-exchange reconnection.
"""

from dataclasses import dataclass
import math

import numpy as np

TWO_PI = 2.0 * math.pi
MIN_STRING_SITES = 3


@dataclass(frozen=True)
class WorldSheetLattice:
    """Periodic sigma ring, integer lattice step, transverse dimensions."""

    length: int
    transverse_dims: int = 1
    step: int = 1

    def __post_init__(self):
        if self.length < MIN_STRING_SITES:
            raise ValueError("periodic sheets need length >= 3")
        if self.transverse_dims < 1:
            raise ValueError("need at least one transverse dimension")
        if self.step < 1:
            raise ValueError("lattice step must be a positive integer")


def _int_slice(values, lattice):
    arr = np.array(values)
    if not np.issubdtype(arr.dtype, np.integer):
        if not np.all(arr == np.round(arr)):
            raise ValueError("string coordinates must be integers")
        arr = arr.astype(np.int64)
    else:
        arr = arr.astype(np.int64)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.shape != (lattice.length, lattice.transverse_dims):
        raise ValueError(
            f"slice shape {arr.shape} does not match lattice "
            f"({lattice.length}, {lattice.transverse_dims})"
        )
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class StringConfiguration:
    """Two consecutive integer slices of one closed string.

    `bottom` is the slice at time tau0 - step, `top` the slice at tau0.
    Orientation only matters for the arm exchange.
    """

    lattice: WorldSheetLattice
    bottom: np.ndarray
    top: np.ndarray
    tau0: int = 0
    orientation: int = 1

    def __post_init__(self):
        object.__setattr__(self, "bottom", _int_slice(self.bottom, self.lattice))
        object.__setattr__(self, "top", _int_slice(self.top, self.lattice))
        if self.orientation not in (-1, 1):
            raise ValueError("orientation must be +1 or -1")


def step(config):
    """One exact update: new top = roll(top, -a) + roll(top, a) - bottom."""
    a = config.lattice.step
    new_top = np.roll(config.top, -a, axis=0) + np.roll(config.top, a, axis=0) - config.bottom
    return StringConfiguration(
        config.lattice, config.top, new_top, config.tau0 + a, config.orientation
    )


def step_back(config):
    """Inverse update, solving the recurrence for the bottom slice."""
    a = config.lattice.step
    new_bottom = (
        np.roll(config.bottom, -a, axis=0)
        + np.roll(config.bottom, a, axis=0)
        - config.top
    )
    return StringConfiguration(
        config.lattice, new_bottom, config.bottom, config.tau0 - a, config.orientation
    )


def wave_residual(prev_slice, cur_slice, next_slice, periodic=True):
    """Residual X(s,t+1) + X(s,t-1) - X(s+1,t) - X(s-1,t) per site.

    With periodic=False only interior sites are evaluated (one site
    trimmed at each end).
    """
    prev_slice = np.asarray(prev_slice)
    cur_slice = np.asarray(cur_slice)
    next_slice = np.asarray(next_slice)
    if periodic:
        neighbors = np.roll(cur_slice, -1, axis=0) + np.roll(cur_slice, 1, axis=0)
        return next_slice + prev_slice - neighbors
    neighbors = cur_slice[2:] + cur_slice[:-2]
    return next_slice[1:-1] + prev_slice[1:-1] - neighbors


class StringMovers:
    """Left/right movers of one string on the covering light-cone lines.

    The decomposition X(s, t) = left(s + t) + right(s - t) is solved
    from the two slices; the recursion for `right` advances in steps of
    two, so the gauge pins both parity chains: right(0) = right(1) = 0.
    The anchors are fixed covering-line positions, independent of tau0,
    which makes the split of a stepped configuration reproduce the same
    mover functions.  Values are integer vectors of the transverse
    dimension; evaluation is lazy with memoization and exact.
    """

    def __init__(self, config):
        if config.lattice.step != 1:
            raise ValueError("mover splitting is defined for unit lattice step")
        self._bottom = config.bottom
        self._top = config.top
        self._tau0 = int(config.tau0)
        self._length = config.lattice.length
        self._dims = config.lattice.transverse_dims
        zero = np.zeros(self._dims, dtype=np.int64)
        self._right_memo = {0: zero, 1: zero.copy()}

    def _gtilde(self, v):
        length = self._length
        b = self._bottom[(v + self._tau0 - 1) % length]
        t = self._top[(v + self._tau0 - 2) % length]
        return b - t

    def right(self, v):
        """Right mover at covering-line position v = sigma - tau."""
        v = int(v)
        memo = self._right_memo
        if v not in memo:
            if v >= 2:
                known = max(k for k in memo if k % 2 == v % 2 and k <= v)
                for w in range(known + 2, v + 1, 2):
                    memo[w] = memo[w - 2] + self._gtilde(w)
            else:
                known = min(k for k in memo if k % 2 == v % 2 and k >= v)
                for w in range(known - 2, v - 1, -2):
                    memo[w] = memo[w + 2] - self._gtilde(w + 2)
        return memo[v]

    def left(self, u):
        """Left mover at covering-line position u = sigma + tau."""
        u = int(u)
        return self._top[(u - self._tau0) % self._length] - self.right(u - 2 * self._tau0)

    def value(self, sigma, tau):
        """Recomposed coordinate X(sigma, tau) = left(sigma+tau) + right(sigma-tau)."""
        return self.left(sigma + tau) + self.right(sigma - tau)

    def left_window(self, start, count):
        return np.array([self.left(u) for u in range(start, start + count)])

    def right_window(self, start, count):
        return np.array([self.right(v) for v in range(start, start + count)])


def split_string_movers(config):
    return StringMovers(config)


def config_from_movers(left_values, right_values, lattice, tau0=0, orientation=1):
    """Configuration whose movers are the given periodic arrays.

    left_values and right_values are one period each (shape (L, dims)),
    read periodically, so the resulting configuration has zero winding:
    its one-period mover multisets are rotation invariant.
    """
    left_values = np.asarray(left_values)
    right_values = np.asarray(right_values)
    if left_values.ndim == 1:
        left_values = left_values[:, None]
    if right_values.ndim == 1:
        right_values = right_values[:, None]
    length = lattice.length
    sigma = np.arange(length)
    top = left_values[(sigma + tau0) % length] + right_values[(sigma - tau0) % length]
    bottom = (
        left_values[(sigma + tau0 - 1) % length]
        + right_values[(sigma - tau0 + 1) % length]
    )
    return StringConfiguration(lattice, bottom, top, tau0, orientation)


def spacetime_lattice_constant(alpha_prime):
    """Spacetime lattice constant 2*pi*sqrt(alpha')."""
    if alpha_prime <= 0:
        raise ValueError("alpha' must be positive")
    return TWO_PI * math.sqrt(alpha_prime)


@dataclass(frozen=True)
class ExchangeEvent:
    """One arm exchange: where, when, and which sites reconnected.

    Sites are (string_index, sigma) pairs in pre-exchange labels.
    """

    tau: int
    coordinate: tuple
    site_a: tuple
    site_b: tuple
    merged: bool


def _ensemble_successors(configs):
    succ = {}
    for s, config in enumerate(configs):
        length = config.lattice.length
        for sigma in range(length):
            succ[(s, sigma)] = (s, (sigma + 1) % length)
    return succ


def _walk_cycle(succ, start):
    cycle = [start]
    cur = succ[start]
    while cur != start:
        cycle.append(cur)
        cur = succ[cur]
    return cycle


def _rebuild(configs, succ):
    """New ensemble from a successor map, cycles keyed by smallest member."""
    starts = []
    seen = set()
    for key in sorted(succ):
        if key in seen:
            continue
        cycle = _walk_cycle(succ, key)
        seen.update(cycle)
        starts.append(cycle)
    out = []
    for cycle in starts:
        src = configs[cycle[0][0]]
        bottom = np.array([configs[s].bottom[sig] for s, sig in cycle])
        top = np.array([configs[s].top[sig] for s, sig in cycle])
        lattice = WorldSheetLattice(
            len(cycle), src.lattice.transverse_dims, src.lattice.step
        )
        out.append(
            StringConfiguration(lattice, bottom, top, src.tau0, src.orientation)
        )
    return out


def swap_arms(configs, site_a, site_b):
    """Reconnect two strings (or one with itself) at coinciding sites.

    The successors of the two sites are exchanged: distinct strings
    merge into one cycle, a self-exchange splits one string in two.
    Requires equal orientations and coinciding top-slice coordinates,
    and refuses a reconnection that would leave a cycle shorter than 3
    sites.
    """
    site_a = tuple(site_a)
    site_b = tuple(site_b)
    if site_a == site_b:
        raise ValueError("cannot exchange a site with itself")
    sa, siga = site_a
    sb, sigb = site_b
    if configs[sa].orientation != configs[sb].orientation:
        raise ValueError("arm exchange requires equal orientations")
    if configs[sa].tau0 != configs[sb].tau0:
        raise ValueError("strings are not on the same time slice")
    if not np.array_equal(configs[sa].top[siga], configs[sb].top[sigb]):
        raise ValueError("sites do not coincide on the top slice")
    succ = _ensemble_successors(configs)
    succ[site_a], succ[site_b] = succ[site_b], succ[site_a]
    cycle = _walk_cycle(succ, site_a)
    if site_b in cycle:
        if len(cycle) < 2 * MIN_STRING_SITES:
            raise ValueError("exchange would create a string shorter than 3 sites")
    else:
        other = _walk_cycle(succ, site_b)
        if len(cycle) < MIN_STRING_SITES or len(other) < MIN_STRING_SITES:
            raise ValueError("exchange would create a string shorter than 3 sites")
    return _rebuild(configs, succ)


def scan_exchanges(configs, allow_pair=True, allow_self=False):
    """Deterministic list of exchange pairs on the current top slices.

    Sites are grouped by their full transverse coordinate; each
    coordinate value hosting two or more sites contributes one exchange
    between its two lowest (string, sigma) sites, subject to the pair /
    self flags and equal orientation.  The list is ordered by the lower
    site of each pair.
    """
    by_coord = {}
    for s, config in enumerate(configs):
        for sigma in range(config.lattice.length):
            key = tuple(int(x) for x in config.top[sigma])
            by_coord.setdefault(key, []).append((s, sigma))
    pairs = []
    for coord, sites in by_coord.items():
        if len(sites) < 2:
            continue
        sites.sort()
        a, b = sites[0], sites[1]
        same_string = a[0] == b[0]
        if same_string and not allow_self:
            continue
        if not same_string and not allow_pair:
            continue
        if configs[a[0]].orientation != configs[b[0]].orientation:
            continue
        pairs.append((a, b, coord))
    pairs.sort()
    return pairs


def _try_swap(succ, site_a, site_b):
    """Swap successors if no resulting cycle drops below 3 sites."""
    succ[site_a], succ[site_b] = succ[site_b], succ[site_a]
    cycle = _walk_cycle(succ, site_a)
    if site_b in cycle:
        ok = len(cycle) >= 2 * MIN_STRING_SITES
    else:
        ok = (
            len(cycle) >= MIN_STRING_SITES
            and len(_walk_cycle(succ, site_b)) >= MIN_STRING_SITES
        )
    if not ok:
        succ[site_a], succ[site_b] = succ[site_b], succ[site_a]
    return ok


def apply_exchanges(configs, pairs):
    """Apply scanned exchange pairs on the shared successor map.

    Site keys refer to pre-exchange labels, so sequential rewiring stays
    well defined while connectivity changes.  A swap that would leave a
    cycle shorter than 3 sites is skipped.  Returns (new_configs,
    events).
    """
    if not pairs:
        return list(configs), []
    tau = configs[0].tau0
    succ = _ensemble_successors(configs)
    events = []
    for a, b, coord in pairs:
        merged = a[0] != b[0]
        if _try_swap(succ, a, b):
            events.append(ExchangeEvent(tau, coord, a, b, merged))
    if not events:
        return list(configs), []
    return _rebuild(configs, succ), events


def step_with_interactions(configs, allow_pair=True, allow_self=False):
    """Advance every string one step, then resolve coincidences.

    Returns (configs, events).  All strings must share tau0.
    """
    taus = {c.tau0 for c in configs}
    if len(taus) > 1:
        raise ValueError("all strings must share the same time slice")
    stepped = [step(c) for c in configs]
    pairs = scan_exchanges(stepped, allow_pair=allow_pair, allow_self=allow_self)
    return apply_exchanges(stepped, pairs)


def canonical_ensemble_form(configs):
    """Rotation- and order-independent form for connectivity comparison.

    Each string becomes the tuple of (bottom, top) coordinate columns
    rotated to its lexicographically smallest phase; the ensemble is the
    sorted tuple of those.  Two ensembles are equal iff they contain the
    same closed strings regardless of labeling.
    """
    canon = []
    for config in configs:
        length = config.lattice.length
        cols = tuple(
            (tuple(int(x) for x in config.bottom[i]), tuple(int(x) for x in config.top[i]))
            for i in range(length)
        )
        rotations = [cols[i:] + cols[:i] for i in range(length)]
        canon.append(min(rotations))
    return tuple(sorted(canon))
