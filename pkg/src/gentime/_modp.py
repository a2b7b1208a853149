"""Small dense linear algebra over a prime field F_p (numpy int64)."""

from __future__ import annotations

import numpy as np

from .errors import ModelDataError


def check_prime(p: int) -> int:
    if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise ModelDataError(f"{p} is not prime")
    return p


def rref(mat: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Row-reduced echelon form and pivot columns, in place on a copy."""
    a = np.array(mat, dtype=np.int64) % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        for other in range(rows):
            if other != r and a[other, c]:
                a[other] = (a[other] - a[other, c] * a[r]) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(mat: np.ndarray, p: int) -> int:
    if mat.size == 0:
        return 0
    return len(rref(mat, p)[1])


def nullspace(mat: np.ndarray, p: int) -> np.ndarray:
    """Basis of the right kernel, one solution per row."""
    rows, cols = mat.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    reduced, pivots = rref(mat, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for r, pc in enumerate(pivots):
            basis[k, pc] = (-reduced[r, fc]) % p
    return basis


def in_row_span(mat: np.ndarray, vec: np.ndarray, p: int) -> bool:
    if mat.size == 0:
        return not np.any(vec % p)
    return rank(mat, p) == rank(np.vstack([mat, vec]), p)


def row_span_coords(mat: np.ndarray, vec: np.ndarray, p: int) -> np.ndarray | None:
    """Coefficients expressing vec in the rows of mat, or None."""
    if mat.size == 0:
        return np.zeros(0, dtype=np.int64) if not np.any(vec % p) else None
    aug = np.vstack([mat, -np.asarray(vec, dtype=np.int64)]) % p
    ker = nullspace(aug.T, p)
    for row in ker:
        if row[-1]:
            inv = pow(int(row[-1]), p - 2, p)
            return (row[:-1] * inv) % p
    return None
