"""Independent oracles and frozen fixtures for the test suite.

Everything here is deliberately written without reusing package internals:
counts come from their own recursions, determinants from cofactor expansion
or exact cyclotomic-ring arithmetic, and the hand-drawn colourings are
frozen edge lists.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations, product

import numpy as np

from icestrings.states import EdgeColouring, LatticeSpec, Topology

# (L, R, U, D) tuples of the admissible vertex neighbourhoods.
ALLOWED_TUPLES = (
    (0, 0, 0, 0),
    (1, 1, 1, 1),
    (0, 0, 1, 1),
    (1, 1, 0, 0),
    (0, 1, 0, 1),
    (1, 0, 1, 0),
)


@lru_cache(maxsize=None)
def weak_chain_count(top: int, length: int) -> int:
    """Number of weakly increasing tuples of the given length in [0, top]."""
    if length == 0:
        return 1
    if top < 0:
        return 0
    # Split on whether the first coordinate is 0 or everything is >= 1.
    return weak_chain_count(top, length - 1) + weak_chain_count(top - 1, length)


@lru_cache(maxsize=None)
def capped_run_count(length: int, values: int, max_run: int) -> int:
    """Weakly increasing tuples over `values` symbols, runs capped at max_run."""
    if length == 0:
        return 1
    if values == 0:
        return 0
    total = 0
    for used in range(0, min(max_run, length) + 1):
        total += capped_run_count(length - used, values - 1, max_run)
    return total


def charpoly_eigs(a: np.ndarray) -> np.ndarray:
    """Eigenvalues via Faddeev-LeVerrier coefficients plus polynomial roots."""
    a = np.asarray(a, dtype=complex)
    dim = a.shape[0]
    coeffs = [1.0 + 0j]
    m = np.eye(dim, dtype=complex)
    for k in range(1, dim + 1):
        am = a @ m
        c = -np.trace(am) / k
        coeffs.append(c)
        m = am + c * np.eye(dim, dtype=complex)
    roots = np.roots(coeffs)
    return np.sort(roots.real)


def perm_sign(perm: tuple[int, ...]) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def cyc_det(exponents: np.ndarray, modulus: int) -> np.ndarray:
    """Exact determinant of a matrix of monomials x^e over Z[x]/(x^N - 1).

    Returns the integer coefficient vector of length N.  Used for the exact
    antisymmetry checks: swapping two rows negates the vector, a repeated
    row zeroes it, with no floating point involved.
    """
    exponents = np.asarray(exponents, dtype=np.int64)
    dim = exponents.shape[0]
    coeffs = np.zeros(modulus, dtype=np.int64)
    for perm in permutations(range(dim)):
        e = sum(exponents[r, perm[r]] for r in range(dim)) % modulus
        coeffs[e] += perm_sign(perm)
    return coeffs


def cyc_eval(coeffs: np.ndarray, modulus: int) -> complex:
    omega = np.exp(2j * np.pi / modulus)
    return sum(int(c) * omega**e for e, c in enumerate(coeffs))


def cofactor_det(mat) -> complex:
    """Recursive cofactor expansion along the first row."""
    mat = [list(row) for row in mat]
    dim = len(mat)
    if dim == 1:
        return mat[0][0]
    total = 0
    for col in range(dim):
        minor = [row[:col] + row[col + 1 :] for row in mat[1:]]
        total += (-1) ** col * mat[0][col] * cofactor_det(minor)
    return total


def literal_d(coords, ks, modulus) -> complex:
    """D determinant evaluated by cofactor expansion of explicit phases."""
    omega = np.exp(2j * np.pi / modulus)
    rows = [[1] + [omega ** ((n * k) % modulus) for n in coords] for k in ks]
    return cofactor_det(rows)


def literal_phi_m2(n: int, a: int, b: int) -> float:
    return b / (n * (n + 4)) - (a + 1) / (2 * n)


def literal_energy_m2(n: int, a: int, b: int, ks) -> complex:
    """Resolvent pole energy, kept in its raw two-term complex form."""
    modulus = n + 4
    rho = np.exp(2j * np.pi * literal_phi_m2(n, a, b))
    omega = np.exp(2j * np.pi / modulus)
    s_plus = sum(omega**k for k in ks)
    s_minus = sum(omega**-k for k in ks)
    return rho * s_plus + rho**-1 * s_minus


def literal_a_m2(n: int, a: int, b: int, energy: float) -> np.ndarray:
    """Secular matrix for the doubled family at m=2 by direct triple loops.

    Independent of the package path: cofactor determinants, the conjugate
    factor computed at literally negated wave numbers, and the two-term
    energy form.
    """
    modulus = n + 4
    mus = list(range(4, modulus - 1))
    out = np.zeros((len(mus), len(mus)), dtype=complex)
    for k_triple in combinations(range(modulus), 3):
        k4 = b - sum(k_triple)
        ks = k_triple + (k4,)
        ek = literal_energy_m2(n, a, b, ks)
        assert abs(ek.imag) < 1e-9
        denom = energy - ek.real
        for i, mu in enumerate(mus):
            d_i = literal_d((1, 2, mu), ks, modulus)
            for j, nu in enumerate(mus):
                d_j_neg = literal_d((1, 2, nu), tuple(-k for k in ks), modulus)
                out[i, j] += d_i * d_j_neg / denom
    return out


def naive_ice_check(colouring: EdgeColouring, spec: LatticeSpec) -> bool:
    """Vertex-by-vertex reimplementation with brute-forced missing ports."""
    m, n = spec.m, spec.n
    torus = spec.topology is Topology.TORUS
    if not torus and (colouring.h[:, n - 1].any() or colouring.v[m - 1, :].any()):
        return False
    for i in range(m):
        for j in range(n):
            ports = {}
            if torus or j >= 1:
                ports["L"] = int(colouring.h[i, j - 1])
            if torus or j <= n - 2:
                ports["R"] = int(colouring.h[i, j])
            if torus or i <= m - 2:
                ports["U"] = int(colouring.v[i, j])
            if torus or i >= 1:
                ports["D"] = int(colouring.v[i - 1, j])
            missing = [p for p in "LRUD" if p not in ports]
            ok = False
            for fill in product((0, 1), repeat=len(missing)):
                trial = dict(ports, **dict(zip(missing, fill)))
                if (trial["L"], trial["R"], trial["U"], trial["D"]) in ALLOWED_TUPLES:
                    ok = True
                    break
            if not ok:
                return False
    return True


def _colouring(m, n, topology, h_edges, v_edges):
    h = np.zeros((m, n), dtype=np.uint8)
    v = np.zeros((m, n), dtype=np.uint8)
    for i, j in h_edges:
        h[i, j] = 1
    for i, j in v_edges:
        v[i, j] = 1
    return EdgeColouring(h=h, v=v), LatticeSpec(m=m, n=n, topology=topology)


def frozen_unmovable_strip():
    """Hand-drawn 10x16 strip spin configuration with no flippable cell.

    Not an ice state (segments end in the interior); it exists to pin the
    kernel of the flip operator.
    """
    h_edges = [(5, 7), (5, 8), (5, 9)] + [(2, c) for c in range(9, 14)]
    v_edges = (
        [(r, 4) for r in range(1, 7)]
        + [(r, 5) for r in range(3, 8)]
        + [(5, 7), (6, 7)]
    )
    return _colouring(10, 16, Topology.STRIP, h_edges, v_edges)


def frozen_unmovable_clusters():
    """Frozen clusters on a 9x14 strip: a unit square, a flat rectangle, and
    a blocked staircase.  Closed contractible loops cannot satisfy the string
    ice rule, so these are plain spin configurations; the point is that no
    cell of any of them (nor of their union) is flippable."""
    square_h = [(6, 1), (7, 1)]
    square_v = [(6, 1), (6, 2)]
    rect_h = [(6, c) for c in range(3, 6)] + [(7, c) for c in range(3, 6)]
    rect_v = [(6, 3), (6, 6)]
    stair_h = [(6, c) for c in range(8, 11)] + [(7, c) for c in range(8, 12)] + [(5, 11)]
    stair_v = [(6, 8), (5, 11), (5, 12), (6, 12)]
    pieces = {
        "square": (square_h, square_v),
        "rectangle": (rect_h, rect_v),
        "staircase": (stair_h, stair_v),
    }
    out = {}
    for name, (he, ve) in pieces.items():
        out[name] = _colouring(9, 14, Topology.STRIP, he, ve)
    out["all"] = _colouring(
        9, 14, Topology.STRIP, square_h + rect_h + stair_h, square_v + rect_v + stair_v
    )
    return out


def frozen_winding_2_1():
    """5x7 torus state: one closed string wrapping twice around, once up."""
    h_edges = (
        [(1, 3), (1, 4)]
        + [(2, c) for c in range(7)]
        + [(4, 0), (4, 1), (4, 2), (4, 5), (4, 6)]
    )
    v_edges = [(0, 3), (4, 3), (1, 5), (2, 5), (3, 5)]
    return _colouring(5, 7, Topology.TORUS, h_edges, v_edges)


def frozen_column_loop():
    """5x7 torus state: a single vertical loop, winding (0, 1)."""
    return _colouring(5, 7, Topology.TORUS, [], [(r, 2) for r in range(5)])


def frozen_winding_1_1():
    """4x7 torus state matching the (alpha=1, lam=(2,3,5,6)) embedding."""
    h_edges = [(1, 0), (1, 1), (2, 2), (3, 3), (3, 4), (0, 5), (1, 6)]
    v_edges = [(1, 2), (2, 3), (3, 5), (0, 6)]
    return _colouring(4, 7, Topology.TORUS, h_edges, v_edges)


def frozen_two_loops():
    """4x4 torus state with two disjoint vertical loops."""
    return _colouring(4, 4, Topology.TORUS, [], [(r, c) for r in range(4) for c in (0, 2)])
