"""Dense Hermitian eigensolver: Householder reduction plus implicit-shift QL.

Kept in-package on purpose so the spectra this library reports do not depend
on which LAPACK happens to be linked.  numpy is used for array arithmetic
only.  The strategy is the classical one: unitary reduction to a complex
tridiagonal, a diagonal phase fold to make it real, then the QL iteration
with implicit shifts, rotations accumulated into the full transform.
"""

from __future__ import annotations

from math import copysign, hypot

import numpy as np

from .errors import InvalidOperatorError, NumericalError

OFFDIAG_TOL = 1e-13  # relative threshold below which a subdiagonal is dead
MAX_QL_STEPS = 64


def hermitian_eigh(a: np.ndarray, tol: float = OFFDIAG_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and eigenvectors of a Hermitian matrix.

    Returns (w, vec) with a @ vec[:, k] = w[k] * vec[:, k] and vec unitary.
    Input must be Hermitian to within 1e-12 of its scale; it is exactly
    symmetrized before reduction so roundoff in the caller cannot leak into
    complex eigenvalues.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidOperatorError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n == 0:
        return np.zeros(0), np.zeros((0, 0), dtype=complex)
    scale = np.abs(a).max()
    if np.abs(a - a.conj().T).max() > 1e-12 * max(scale, 1.0):
        raise InvalidOperatorError("matrix is not Hermitian")
    work = (a + a.conj().T) / 2.0

    reflectors: list[tuple[int, np.ndarray]] = []
    for k in range(n - 2):
        x = work[k + 1 :, k].copy()
        if np.abs(x[1:]).max(initial=0.0) == 0.0:
            continue  # column already tridiagonal
        norm = np.linalg.norm(x)
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        u = x.copy()
        u[0] += phase * norm
        v = u / np.linalg.norm(u)
        block = work[k + 1 :, k + 1 :]
        p = block @ v
        kappa = (v.conj() @ p).real
        block -= 2.0 * np.outer(v, p.conj()) + 2.0 * np.outer(p, v.conj())
        block += 4.0 * kappa * np.outer(v, v.conj())
        work[k + 1 :, k + 1 :] = block
        newcol = x - 2.0 * v * (v.conj() @ x)
        newcol[1:] = 0.0  # exact by construction of the reflector
        work[k + 1 :, k] = newcol
        work[k, k + 1 :] = newcol.conj()
        reflectors.append((k, v))

    transform = np.eye(n, dtype=complex)
    for k, v in reversed(reflectors):
        transform[k + 1 :, :] -= 2.0 * np.outer(v, v.conj() @ transform[k + 1 :, :])

    diag = work.diagonal().real.copy()
    sub = np.array([work[i + 1, i] for i in range(n - 1)], dtype=complex)
    # Fold the subdiagonal phases into the transform so QL sees real data.
    phases = np.ones(n, dtype=complex)
    for i in range(n - 1):
        pivot = sub[i]
        phases[i + 1] = phases[i] * (pivot / abs(pivot)) if pivot != 0 else phases[i]
    transform *= phases[None, :]
    offdiag = np.abs(sub)

    eigvals = _ql_implicit(diag, offdiag, transform, tol)
    order = np.argsort(eigvals, kind="stable")
    return eigvals[order], transform[:, order]


def _ql_implicit(d: np.ndarray, e_in: np.ndarray, z: np.ndarray, tol: float) -> np.ndarray:
    """QL sweeps with implicit Wilkinson shifts on a real tridiagonal.

    d is the diagonal, e_in the subdiagonal; z receives the rotations on the
    right, column by column.  Mutates d and z, returns d.
    """
    n = d.shape[0]
    e = np.zeros(n)
    e[: n - 1] = e_in
    for l in range(n):
        steps = 0
        while True:
            for m in range(l, n):
                if m == n - 1:
                    break
                if abs(e[m]) <= tol * (abs(d[m]) + abs(d[m + 1])):
                    break
            if m == l:
                break
            steps += 1
            if steps > MAX_QL_STEPS:
                raise NumericalError(f"QL failed to converge at index {l}")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + copysign(r, g))
            s = c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                col = z[:, i + 1].copy()
                z[:, i + 1] = s * z[:, i] + c * col
                z[:, i] = c * z[:, i] - s * col
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return d
