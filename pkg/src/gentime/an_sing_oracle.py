"""Independent verification layer for the A_{n-1} model.

Everything here is honest linear algebra over a small prime field, sharing no
tables with the combinatorial model: cyclic modules are nilpotent matrices,
stable Homs are intertwiner spaces modulo maps that lift through the free
module, and cones are computed by forming the mapping cone of a matrix
factorization of u^n and diagonalizing it to Smith form over F_p[u].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _modp
from .errors import ModelDataError, ResourceCapError

_MAX_N = 12


# ----------------------------------------------------------------------
# dense polynomials over F_p (coefficient lists, index = degree)
# ----------------------------------------------------------------------


def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _padd(a, b, p):
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return _ptrim(out)


def _pscale(a, c, p):
    return _ptrim([(x * c) % p for x in a])


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _ptrim(out)


def _pdivmod(a, b, p):
    if not b:
        raise ZeroDivisionError
    a = list(a)
    q = [0] * max(0, len(a) - len(b) + 1)
    inv = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = (a[-1] * inv) % p
        d = len(a) - len(b)
        q[d] = c
        for i, y in enumerate(b):
            a[d + i] = (a[d + i] - c * y) % p
        _ptrim(a)
        if not a:
            break
    return _ptrim(q), a


def _monomial(deg: int, p: int, coeff: int = 1) -> list[int]:
    out = [0] * deg + [coeff % p]
    return _ptrim(out)


def smith_over_polys(matrix: list[list[list[int]]], p: int) -> list[list[int]]:
    """Smith normal form diagonal of a matrix over F_p[u] (a PID).

    Returns the invariant factors (may include zero polynomials), each
    normalized to be monic.
    """
    a = [[list(entry) for entry in row] for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    diag: list[list[int]] = []

    def deg(poly):
        return len(poly) - 1 if poly else -1

    top = 0
    while top < min(rows, cols):
        # Pick the lowest-degree nonzero entry as pivot.
        best = None
        for i in range(top, rows):
            for j in range(top, cols):
                if a[i][j] and (best is None or deg(a[i][j]) < deg(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[top], a[i] = a[i], a[top]
        for row in a:
            row[top], row[j] = row[j], row[top]
        dirty = True
        while dirty:
            dirty = False
            for i in range(top + 1, rows):
                if a[i][top]:
                    q, r = _pdivmod(a[i][top], a[top][top], p)
                    for j in range(top, cols):
                        a[i][j] = _padd(a[i][j], _pscale(_pmul(q, a[top][j], p), p - 1, p), p)
                    if r:
                        a[top], a[i] = a[i], a[top]
                        dirty = True
            for j in range(top + 1, cols):
                if a[top][j]:
                    q, r = _pdivmod(a[top][j], a[top][top], p)
                    for i in range(top, rows):
                        a[i][j] = _padd(a[i][j], _pscale(_pmul(q, a[i][top], p), p - 1, p), p)
                    if r:
                        for row in a:
                            row[top], row[j] = row[j], row[top]
                        dirty = True
        top += 1

    for k in range(min(rows, cols)):
        diag.append(a[k][k])
    # Enforce the divisibility chain d_k | d_{k+1}.
    changed = True
    while changed:
        changed = False
        for k in range(len(diag) - 1):
            if diag[k] and diag[k + 1]:
                _, r = _pdivmod(diag[k + 1], diag[k], p)
                if r:
                    prod = _pmul(diag[k], diag[k + 1], p)
                    g = _pgcd(diag[k], diag[k + 1], p)
                    diag[k] = g
                    diag[k + 1], _ = _pdivmod(prod, g, p)
                    changed = True
            elif not diag[k] and diag[k + 1]:
                diag[k], diag[k + 1] = diag[k + 1], diag[k]
                changed = True
    out = []
    for d in diag:
        if d:
            inv = pow(d[-1], p - 2, p)
            d = _pscale(d, inv, p)
        out.append(d)
    return out


def _pgcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        _, a = _pdivmod(a, b, p)
        a, b = b, a
    return a


# ----------------------------------------------------------------------
# the oracle proper
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class StableHomSpace:
    """Hom(V_i, V_j) with a basis of intertwiners and the subspace of maps
    lifting through the free module; rows are flattened matrices."""

    i: int
    j: int
    hom_basis: np.ndarray
    free_image: np.ndarray

    @property
    def stable_dim(self) -> int:
        return self.hom_basis.shape[0] - self.free_image.shape[0]


class AnModuleOracle:
    """Explicit k[u]/(u^n)-modules over F_p; exposed only to tests."""

    def __init__(self, n: int, p: int):
        if n < 2:
            raise ModelDataError(f"need n >= 2, got {n}")
        if n > _MAX_N:
            raise ResourceCapError(f"oracle capped at n <= {_MAX_N}, got {n}")
        self.n = n
        self.p = _modp.check_prime(p)
        self._hom_cache: dict[tuple[int, int], StableHomSpace] = {}

    def u_action(self, i: int) -> np.ndarray:
        """Multiplication by u on k[u]/(u^i) in the basis 1, u, ..., u^{i-1}."""
        mat = np.zeros((i, i), dtype=np.int64)
        for k in range(i - 1):
            mat[k + 1, k] = 1
        return mat

    def alpha_matrix(self, i: int, j: int, l: int) -> np.ndarray:
        """Matrix of 1 |-> u^l as a map k[u]/(u^i) -> k[u]/(u^j)."""
        mat = np.zeros((j, i), dtype=np.int64)
        for c in range(i):
            if l + c < j:
                mat[l + c, c] = 1
        return mat

    def _hom_space(self, i: int, j: int) -> StableHomSpace:
        key = (i, j)
        if key in self._hom_cache:
            return self._hom_cache[key]
        p = self.p
        hom = self._intertwiners(i, j)
        # Maps factoring through a projective are exactly those lifting along
        # the cover k[u]/(u^n) ->> V_j, i.e. projections of Hom(V_i, free).
        to_free = self._intertwiners(i, self.n)
        proj = np.zeros((j, self.n), dtype=np.int64)
        for k in range(j):
            proj[k, k] = 1
        if to_free.shape[0]:
            img = np.array(
                [(proj @ b.reshape(self.n, i) % p).reshape(-1) for b in to_free],
                dtype=np.int64,
            )
            img = _modp.rref(img, p)[0]
            img = img[np.any(img, axis=1)]
        else:
            img = np.zeros((0, j * i), dtype=np.int64)
        space = StableHomSpace(i=i, j=j, hom_basis=hom, free_image=img)
        self._hom_cache[key] = space
        return space

    def _intertwiners(self, i: int, j: int) -> np.ndarray:
        """Basis of module maps V_i -> V_j: solutions of A u_i = u_j A."""
        p = self.p
        ui, uj = self.u_action(i), self.u_action(j)
        # Unknown A is j x i; the constraint A u_i = u_j A is linear in its
        # entries, one coefficient column per entry position.
        coeff = np.zeros((j * i, j * i), dtype=np.int64)
        col = 0
        for r in range(j):
            for c in range(i):
                basis_mat = np.zeros((j, i), dtype=np.int64)
                basis_mat[r, c] = 1
                diff = (basis_mat @ ui - uj @ basis_mat) % p
                coeff[:, col] = diff.reshape(-1)
                col += 1
        return _modp.nullspace(coeff, p)

    def stable_hom_dim(self, i: int, j: int) -> int:
        return self._hom_space(i, j).stable_dim

    def is_stably_zero(self, i: int, j: int, mat: np.ndarray) -> bool:
        space = self._hom_space(i, j)
        return _modp.in_row_span(space.free_image, mat.reshape(-1), self.p)

    def compose_alpha(self, i: int, j: int, l1: int, k: int, l2: int):
        """Stable class of alpha(j,k,l2) o alpha(i,j,l1): None if zero, else
        the exponent l with the composite stably equal to alpha(i,k,l)."""
        p = self.p
        composite = (self.alpha_matrix(j, k, l2) @ self.alpha_matrix(i, j, l1)) % p
        if self.is_stably_zero(i, k, composite):
            return None
        for l in range(max(0, k - i), min(k, self.n - i)):
            diff = (composite - self.alpha_matrix(i, k, l)) % p
            if self.is_stably_zero(i, k, diff):
                return l
        raise ModelDataError(
            f"composite of alpha maps is not a monomial basis class: "
            f"({i},{j},{l1}) then ({j},{k},{l2})"
        )

    def cone_summands(self, i: int, j: int, l: int) -> tuple[int, ...]:
        """Stable summand indices of the cone over alpha(i,j,l).

        V_i corresponds to the matrix factorization (u^i, u^{n-i}) of u^n;
        the morphism lifts to the pair (u^{l+i-j}, u^l) and the mapping cone
        is the 2x2 factorization below.  Its cokernel decomposes by Smith
        normal form over F_p[u]; factors u^0 and u^n are zero stably.
        """
        n, p = self.n, self.p
        lo, hi = max(0, j - i), min(j, n - i)
        if not lo <= l < hi:
            raise ModelDataError(f"alpha({i},{j},{l}) out of range for n={n}")
        a_cone = [
            [_monomial(j, p), _monomial(l, p)],
            [[], _monomial(n - i, p, p - 1)],
        ]
        out = []
        for d in smith_over_polys(a_cone, p):
            degree = len(d) - 1 if d else None
            if degree is None:
                raise ModelDataError("cone factorization is degenerate")
            nz = [k for k, c in enumerate(d) if c]
            if nz != [degree]:
                raise ModelDataError("invariant factor of u^n is not a monomial")
            if 0 < degree < n:
                out.append(degree)
        return tuple(sorted(out))
