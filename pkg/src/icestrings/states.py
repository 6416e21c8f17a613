"""Lattice geometry, edge colourings, and the string-state families.

Conventions used throughout the package: sites (i, j) with row i counted
upward and column j to the right, h[i, j] the horizontal edge to the right
of site (i, j), v[i, j] the vertical edge above it.  At a vertex the four
ports are L = h[i, j-1], R = h[i, j], U = v[i, j], D = v[i-1, j], indices
taken mod (m, n) on the torus.  A vertex pattern is the integer
L*8 + R*4 + U*2 + D.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from enum import Enum
from itertools import combinations_with_replacement
from math import comb

import numpy as np

from .errors import CapacityError, DimensionError, InvalidStateError

DEFAULT_BASIS_CAP = 10**6

# The six admissible vertex patterns: empty, vertical through, right+down
# corner, left+up corner, horizontal through, all four edges.  The all-four
# vertex pairs L with U and R with D, so two strings kiss without crossing.
ALLOWED_VERTEX_PATTERNS = frozenset({0b0000, 0b0011, 0b0101, 0b1010, 0b1100, 0b1111})

ALLOWED_LUT = np.zeros(16, dtype=bool)
for _p in ALLOWED_VERTEX_PATTERNS:
    ALLOWED_LUT[_p] = True

# EXT_LUT[mask, pattern] is True when the known bits (pattern, restricted to
# mask) extend to an allowed pattern by some assignment of the missing bits.
# Boundary vertices of a strip have missing ports and are checked this way.
EXT_LUT = np.zeros((16, 16), dtype=bool)
for _mask in range(16):
    for _p in ALLOWED_VERTEX_PATTERNS:
        EXT_LUT[_mask, _p & _mask] = True


def basis_cap() -> int:
    """Enumeration size cap, overridable through STRINGS_MAX_BASIS."""
    raw = os.environ.get("STRINGS_MAX_BASIS")
    if raw is None:
        return DEFAULT_BASIS_CAP
    try:
        value = int(raw)
    except ValueError as exc:
        raise CapacityError(f"STRINGS_MAX_BASIS={raw!r} is not an integer") from exc
    if value <= 0:
        raise CapacityError(f"STRINGS_MAX_BASIS={raw!r} must be positive")
    return value


class Topology(Enum):
    TORUS = "torus"
    STRIP = "strip"


@dataclass(frozen=True)
class LatticeSpec:
    """Lattice dimensions, boundary topology, and the flip amplitude e."""

    m: int
    n: int
    topology: Topology = Topology.TORUS
    e: float = 1.0

    def __post_init__(self) -> None:
        if self.m < 1 or self.n < 1:
            raise DimensionError(f"lattice {self.m}x{self.n} must be at least 1x1")
        if not isinstance(self.topology, Topology):
            raise InvalidStateError(f"bad topology {self.topology!r}")


@dataclass(frozen=True, eq=False)
class EdgeColouring:
    """Binary occupation of horizontal (h) and vertical (v) edges, m x n each.

    On a strip the wrap entries h[:, n-1] and v[m-1, :] do not correspond to
    edges; any colouring that marks them simply fails the ice check.
    """

    h: np.ndarray
    v: np.ndarray

    def __post_init__(self) -> None:
        for name in ("h", "v"):
            arr = np.asarray(getattr(self, name))
            if arr.ndim != 2:
                raise DimensionError(f"{name} must be a 2-d array, got shape {arr.shape}")
            if not np.isin(arr, (0, 1)).all():
                raise InvalidStateError(f"{name} entries must be 0 or 1")
            arr = arr.astype(np.uint8)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if self.h.shape != self.v.shape:
            raise DimensionError(f"h {self.h.shape} and v {self.v.shape} differ in shape")

    @property
    def shape(self) -> tuple[int, int]:
        return self.h.shape

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EdgeColouring):
            return NotImplemented
        return np.array_equal(self.h, other.h) and np.array_equal(self.v, other.v)

    def __hash__(self) -> int:
        return hash((self.h.tobytes(), self.v.tobytes(), self.h.shape))


def colouring_to_json(colouring: EdgeColouring, spec: LatticeSpec) -> str:
    _require_shape(colouring, spec)
    record = {
        "m": spec.m,
        "n": spec.n,
        "topology": spec.topology.value,
        "h": colouring.h.tolist(),
        "v": colouring.v.tolist(),
    }
    return json.dumps(record, sort_keys=True, indent=2) + "\n"


def colouring_from_json(text: str) -> tuple[EdgeColouring, LatticeSpec]:
    try:
        record = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidStateError(f"not valid JSON: {exc}") from exc
    try:
        m, n = int(record["m"]), int(record["n"])
        topology = Topology(record["topology"])
        h, v = record["h"], record["v"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidStateError(f"malformed colouring record: {exc}") from exc
    spec = LatticeSpec(m=m, n=n, topology=topology)
    colouring = EdgeColouring(h=np.array(h), v=np.array(v))
    _require_shape(colouring, spec)
    return colouring, spec


@dataclass(frozen=True)
class FixedEndsState:
    """Fixed-ends string: M corner heights, weakly increasing in [0, N]."""

    N: int
    M: int
    lam: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.N < 1 or self.M < 1:
            raise DimensionError(f"need N >= 1 and M >= 1, got N={self.N} M={self.M}")
        lam = tuple(int(x) for x in self.lam)
        object.__setattr__(self, "lam", lam)
        if len(lam) != self.M:
            raise InvalidStateError(f"expected {self.M} coordinates, got {len(lam)}")
        if any(b < a for a, b in zip(lam, lam[1:])):
            raise InvalidStateError(f"coordinates not weakly increasing: {lam}")
        if lam and (lam[0] < 0 or lam[-1] > self.N):
            raise InvalidStateError(f"coordinates outside [0, {self.N}]: {lam}")


@dataclass(frozen=True)
class Torus11State:
    """Single-winding torus string: crossing row alpha plus climb columns lam.

    The upper bounds on alpha and lam depend on the lattice, so they are
    checked by the operations that receive the lattice dimensions.
    """

    alpha: int
    lam: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "lam", tuple(int(x) for x in self.lam))
        if self.alpha < 0:
            raise InvalidStateError(f"alpha must be non-negative, got {self.alpha}")
        if any(b < a for a, b in zip(self.lam, self.lam[1:])):
            raise InvalidStateError(f"coordinates not weakly increasing: {self.lam}")
        if self.lam and self.lam[0] < 1:
            raise InvalidStateError(f"coordinates must be >= 1: {self.lam}")


@dataclass(frozen=True)
class Torus12State:
    """Doubly-wound string as a single-winding state on the doubled lattice.

    base lives on the lattice with 2m rows; the exclusion rule forbids any
    coordinate from repeating more than m times.
    """

    m: int
    n: int
    base: Torus11State

    def __post_init__(self) -> None:
        if self.m < 1 or self.n < 2:
            raise DimensionError(f"need m >= 1 and n >= 2, got m={self.m} n={self.n}")
        lam = self.base.lam
        if len(lam) != 2 * self.m:
            raise InvalidStateError(f"expected {2 * self.m} coordinates, got {len(lam)}")
        if not 0 <= self.base.alpha < 2 * self.m:
            raise InvalidStateError(f"alpha {self.base.alpha} outside [0, {2 * self.m})")
        if lam[-1] > self.n:
            raise InvalidStateError(f"coordinates outside [1, {self.n}]: {lam}")
        if has_forbidden_run(lam, self.m):
            raise InvalidStateError(f"coordinate repeated more than {self.m} times: {lam}")

    @property
    def N(self) -> int:
        return self.n + 2 * self.m

    @property
    def nbar(self) -> tuple[int, ...]:
        """Strictly increasing coordinates lam[i] + i, all inside (0, N)."""
        return tuple(x + i for i, x in enumerate(self.base.lam))

    @property
    def diffs(self) -> tuple[int, ...]:
        """Offsets of nbar against its first entry."""
        nb = self.nbar
        return tuple(x - nb[0] for x in nb[1:])


@dataclass(frozen=True)
class WindingClass:
    """Homology class of a closed string: (horizontal, vertical) wrap counts."""

    mbar: int
    nbar: int


def has_forbidden_run(lam: tuple[int, ...], m: int) -> bool:
    """True when some value occupies more than m consecutive slots.

    Coordinates are weakly increasing, so equal values are always adjacent
    and the run length of a value is its multiplicity.
    """
    run = 1
    for a, b in zip(lam, lam[1:]):
        run = run + 1 if a == b else 1
        if run > m:
            return True
    return False


def _require_shape(colouring: EdgeColouring, spec: LatticeSpec) -> None:
    if colouring.shape != (spec.m, spec.n):
        raise DimensionError(
            f"colouring shape {colouring.shape} does not match lattice {(spec.m, spec.n)}"
        )


def _vertex_tables(colouring: EdgeColouring, spec: LatticeSpec):
    """Per-vertex pattern and known-port mask as m x n integer arrays."""
    h, v = colouring.h.astype(np.int64), colouring.v.astype(np.int64)
    m, n = spec.m, spec.n
    left = np.roll(h, 1, axis=1)
    down = np.roll(v, 1, axis=0)
    pattern = left * 8 + h * 4 + v * 2 + down
    if spec.topology is Topology.TORUS:
        mask = np.full((m, n), 15, dtype=np.int64)
        return pattern, mask
    # Strip: the wrapped-in columns and rows reference edges that do not
    # exist.  Zero their contribution and drop them from the known mask.
    known_l = np.ones((m, n), dtype=np.int64)
    known_l[:, 0] = 0
    known_r = np.ones((m, n), dtype=np.int64)
    known_r[:, n - 1] = 0
    known_u = np.ones((m, n), dtype=np.int64)
    known_u[m - 1, :] = 0
    known_d = np.ones((m, n), dtype=np.int64)
    known_d[0, :] = 0
    pattern = left * (8 * known_l) + h * (4 * known_r) + v * (2 * known_u) + down * known_d
    mask = known_l * 8 + known_r * 4 + known_u * 2 + known_d
    return pattern, mask


def check_ice_condition(colouring: EdgeColouring, spec: LatticeSpec) -> bool:
    """Every vertex pattern allowed, or extendable to allowed on a strip."""
    _require_shape(colouring, spec)
    if spec.topology is Topology.STRIP:
        if colouring.h[:, spec.n - 1].any() or colouring.v[spec.m - 1, :].any():
            return False
    pattern, mask = _vertex_tables(colouring, spec)
    return bool(EXT_LUT[mask, pattern].all())


# Exit port keyed by (entry port, pattern).  Entry L means the walk arrived
# moving right, entry D means it arrived moving up.
_EXIT = {
    ("L", 0b1111): "U",
    ("L", 0b1010): "U",
    ("L", 0b1100): "R",
    ("D", 0b1111): "R",
    ("D", 0b0101): "R",
    ("D", 0b0011): "U",
}


def _walk_strings(colouring: EdgeColouring, spec: LatticeSpec):
    """Decompose a colouring into strings.

    Returns a list of (closed, right_moves, up_moves) triples, one per
    string, where closed marks a loop.  Raises InvalidStateError when the
    colouring is not an ice state.
    """
    if not check_ice_condition(colouring, spec):
        raise InvalidStateError("colouring violates the ice condition")
    m, n = spec.m, spec.n
    torus = spec.topology is Topology.TORUS
    h, v = colouring.h, colouring.v
    unvisited = {("h", i, j) for i in range(m) for j in range(n) if h[i, j]}
    unvisited |= {("v", i, j) for i in range(m) for j in range(n) if v[i, j]}

    def step(edge):
        """Traverse edge, then return the next edge out of its head or None."""
        kind, i, j = edge
        if kind == "h":
            head, entry = ((i, (j + 1) % n) if torus else (i, j + 1)), "L"
        else:
            head, entry = (((i + 1) % m, j) if torus else (i + 1, j)), "D"
        hi, hj = head
        left = h[hi, hj - 1] if (torus or hj >= 1) else 0
        right = h[hi, hj] if (torus or hj <= n - 2) else 0
        up = v[hi, hj] if (torus or hi <= m - 2) else 0
        dwn = v[hi - 1, hj] if (torus or hi >= 1) else 0
        pattern = left * 8 + right * 4 + up * 2 + dwn
        port = _EXIT.get((entry, pattern))
        if port is None:
            # Open end: the remaining known ports cannot continue the walk.
            return None
        if port == "R":
            return ("h", hi, hj)
        return ("v", hi, hj)

    strings = []

    def walk(first):
        right_moves = up_moves = 0
        edge = first
        while True:
            unvisited.discard(edge)
            if edge[0] == "h":
                right_moves += 1
            else:
                up_moves += 1
            edge = step(edge)
            if edge is None:
                return False, right_moves, up_moves
            if edge == first:
                return True, right_moves, up_moves

    if not torus:
        # Open strings start where an outgoing port has no incoming partner.
        for i in range(m):
            for j in range(n):
                out_r = h[i, j] if j <= n - 2 else 0
                out_u = v[i, j] if i <= m - 2 else 0
                if not (out_r or out_u):
                    continue
                inc_l = h[i, j - 1] if j >= 1 else 0
                inc_d = v[i - 1, j] if i >= 1 else 0
                if inc_l or inc_d:
                    continue
                first = ("h", i, j) if out_r else ("v", i, j)
                strings.append(walk(first))
    # Whatever remains belongs to closed loops.
    while unvisited:
        strings.append(walk(min(unvisited)))
    return strings


def count_strings(colouring: EdgeColouring, spec: LatticeSpec) -> int:
    """Number of strings (open paths plus closed loops) in an ice state."""
    return len(_walk_strings(colouring, spec))


def winding_class(colouring: EdgeColouring, spec: LatticeSpec) -> WindingClass:
    """Wrap counts of the single closed string in a torus ice state."""
    if spec.topology is not Topology.TORUS:
        raise InvalidStateError("winding is defined on the torus only")
    strings = _walk_strings(colouring, spec)
    if len(strings) != 1:
        raise InvalidStateError(f"expected exactly one string, found {len(strings)}")
    closed, right_moves, up_moves = strings[0]
    if not closed:
        raise InvalidStateError("torus string did not close")
    if right_moves % spec.n or up_moves % spec.m:
        raise InvalidStateError("walk did not return to its starting site")
    return WindingClass(mbar=right_moves // spec.n, nbar=up_moves // spec.m)


def string_signature(colouring: EdgeColouring, spec: LatticeSpec):
    """(string count, sorted winding multiset) fingerprint of a torus state."""
    strings = _walk_strings(colouring, spec)
    windings = []
    for closed, right_moves, up_moves in strings:
        if closed:
            windings.append((right_moves // spec.n, up_moves // spec.m))
        else:
            windings.append(None)
    return len(strings), tuple(sorted(w if w is not None else (-1, -1) for w in windings))


def _check_cap(count: int, cap: int | None) -> None:
    limit = basis_cap() if cap is None else cap
    if count > limit:
        raise CapacityError(f"basis of size {count} exceeds cap {limit}")


def enumerate_fixed_ends(N: int, M: int, cap: int | None = None) -> list[FixedEndsState]:
    """All fixed-ends states for the given width, lexicographically ordered."""
    if N < 1 or M < 1:
        raise DimensionError(f"need N >= 1 and M >= 1, got N={N} M={M}")
    _check_cap(comb(N + M, M), cap)
    return [
        FixedEndsState(N=N, M=M, lam=lam)
        for lam in combinations_with_replacement(range(N + 1), M)
    ]


def enumerate_torus11(m: int, n: int, cap: int | None = None) -> list[Torus11State]:
    """All single-winding torus states, ordered by (alpha, lam)."""
    if m < 1 or n < 1:
        raise DimensionError(f"need m >= 1 and n >= 1, got m={m} n={n}")
    _check_cap(m * comb(m + n - 1, m), cap)
    return [
        Torus11State(alpha=alpha, lam=lam)
        for alpha in range(m)
        for lam in combinations_with_replacement(range(1, n + 1), m)
    ]


def enumerate_torus12(m: int, n: int, cap: int | None = None) -> list[Torus12State]:
    """Doubly-wound states: doubled-lattice states passing the exclusion rule."""
    if m < 1:
        raise DimensionError(f"need m >= 1, got m={m}")
    if n < 2:
        raise DimensionError(f"need n >= 2, got n={n}")
    _check_cap(2 * m * comb(n + 2 * m - 1, 2 * m), cap)
    out = []
    for alpha in range(2 * m):
        for lam in combinations_with_replacement(range(1, n + 1), 2 * m):
            if has_forbidden_run(lam, m):
                continue
            out.append(Torus12State(m=m, n=n, base=Torus11State(alpha=alpha, lam=lam)))
    return out


def fixed_ends_colouring(state: FixedEndsState) -> tuple[EdgeColouring, LatticeSpec]:
    """Embed a fixed-ends state on its minimal strip.

    The strip has M+1 rows and N+1 columns; the string runs from vertex
    (0, 0) to vertex (M, N), climbing at column lam[t] between rows t and
    t+1.  Both end vertices sit on the open boundary, which is what lets a
    lone string terminate without breaking the ice rule.
    """
    N, M, lam = state.N, state.M, state.lam
    h = np.zeros((M + 1, N + 1), dtype=np.uint8)
    v = np.zeros((M + 1, N + 1), dtype=np.uint8)
    for t in range(M):
        v[t, lam[t]] = 1
    stops = (0,) + lam + (N,)
    for row in range(M + 1):
        for c in range(stops[row], stops[row + 1]):
            h[row, c] = 1
    spec = LatticeSpec(m=M + 1, n=N + 1, topology=Topology.STRIP)
    return EdgeColouring(h=h, v=v), spec


def torus11_colouring(m: int, n: int, state: Torus11State) -> tuple[EdgeColouring, LatticeSpec]:
    """Embed a single-winding state on the m x n torus."""
    alpha, lam = state.alpha, state.lam
    if len(lam) != m:
        raise InvalidStateError(f"expected {m} coordinates, got {len(lam)}")
    if not 0 <= alpha < m:
        raise InvalidStateError(f"alpha {alpha} outside [0, {m})")
    if lam and lam[-1] > n:
        raise InvalidStateError(f"coordinates outside [1, {n}]: {lam}")
    h = np.zeros((m, n), dtype=np.uint8)
    v = np.zeros((m, n), dtype=np.uint8)
    for t in range(m):
        v[(alpha + t) % m, lam[t] % n] = 1
        nxt = lam[t + 1] if t + 1 < m else lam[0] + n
        for c in range(lam[t], nxt):
            h[(alpha + t + 1) % m, c % n] = 1
    spec = LatticeSpec(m=m, n=n, topology=Topology.TORUS)
    return EdgeColouring(h=h, v=v), spec


def torus11_state_from_colouring(colouring: EdgeColouring, spec: LatticeSpec) -> Torus11State:
    """Read (alpha, lam) back off a single-winding torus colouring."""
    if spec.topology is not Topology.TORUS:
        raise InvalidStateError("single-winding decoding needs a torus")
    _require_shape(colouring, spec)
    m, n = spec.m, spec.n
    climbs = {}
    for i in range(m):
        for j in range(n):
            if colouring.v[i, j]:
                if i in climbs:
                    raise InvalidStateError(f"two climbs in row {i}")
                climbs[i] = j
    if len(climbs) != m:
        raise InvalidStateError(f"expected {m} climbs, found {len(climbs)}")
    # The starting row is whichever cyclic reading of the climb columns is
    # weakly increasing and reproduces the colouring.
    for alpha in range(m):
        lam = []
        for t in range(m):
            col = climbs[(alpha + t) % m]
            lam.append(col if col >= 1 else n)
        if any(b < a for a, b in zip(lam, lam[1:])):
            continue
        state = Torus11State(alpha=alpha, lam=tuple(lam))
        rebuilt, _ = torus11_colouring(m, n, state)
        if rebuilt == colouring:
            return state
    raise InvalidStateError("colouring is not a single-winding string state")
