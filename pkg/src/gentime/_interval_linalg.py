"""Honest linear algebra for linear A_n quiver representations over F_p.

Two layers: plain vertexwise representations (dims and arrow matrices), and
bounded complexes of projectives P_a = M(a, n).  A map between sums of
projectives is a scalar matrix whose (r, c) entry may be nonzero only when
top(target_r) <= top(source_c); at vertex v exactly the generators with top
<= v are active, so vertexwise matrices are maskings of one scalar matrix.
Used by the quiver model for cones of matrix morphisms and by the
representation oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _modp
from .errors import ModelDataError

Interval = tuple[int, int]


# ----------------------------------------------------------------------
# representations
# ----------------------------------------------------------------------


@dataclass
class Rep:
    """dims[v] and maps[v]: vertex v -> v+1, vertices 1..n (index 0 unused)."""

    n: int
    p: int
    dims: list[int]
    maps: list[np.ndarray]

    def path_map(self, a: int, b: int) -> np.ndarray:
        mat = np.eye(self.dims[a], dtype=np.int64)
        for v in range(a, b):
            mat = (self.maps[v] @ mat) % self.p
        return mat

    def path_rank(self, a: int, b: int) -> int:
        if not 1 <= a <= b <= self.n:
            return 0
        return _modp.rank(self.path_map(a, b), self.p)

    def interval_multiplicities(self) -> dict[Interval, int]:
        """Decomposition multiplicities via the inclusion-exclusion rank
        formula for interval summands."""
        out: dict[Interval, int] = {}
        for a in range(1, self.n + 1):
            for b in range(a, self.n + 1):
                m = (
                    self.path_rank(a, b)
                    - self.path_rank(a - 1, b)
                    - self.path_rank(a, b + 1)
                    + self.path_rank(a - 1, b + 1)
                )
                if m:
                    out[(a, b)] = m
        return out

    @property
    def total_dim(self) -> int:
        return sum(self.dims[1:])


def interval_rep(n: int, p: int, parts: list[Interval]) -> tuple[Rep, list[list[int]]]:
    """Direct sum of interval modules; coords[k][v] is the coordinate of part
    k at vertex v, or -1 off its support."""
    dims = [0] * (n + 2)
    coords: list[list[int]] = []
    for i, j in parts:
        if not 1 <= i <= j <= n:
            raise ModelDataError(f"bad interval ({i},{j}) for n={n}")
        row = [-1] * (n + 2)
        for v in range(i, j + 1):
            row[v] = dims[v]
            dims[v] += 1
        coords.append(row)
    maps = [np.zeros((0, 0), dtype=np.int64) for _ in range(n + 2)]
    for v in range(1, n):
        mat = np.zeros((dims[v + 1], dims[v]), dtype=np.int64)
        for k, (i, j) in enumerate(parts):
            if i <= v and v + 1 <= j:
                mat[coords[k][v + 1], coords[k][v]] = 1
        maps[v] = mat
    return Rep(n, p, dims[: n + 1], maps[: n + 1]), coords


def canonical_map_matrices(
    n: int,
    p: int,
    src_parts: list[Interval],
    tgt_parts: list[Interval],
    entries: dict[tuple[int, int], int],
) -> list[np.ndarray]:
    """Vertexwise matrices of a module map whose (si, ti) component is a
    scalar multiple of the canonical identity-on-overlap map."""
    src, src_coords = interval_rep(n, p, src_parts)
    tgt, tgt_coords = interval_rep(n, p, tgt_parts)
    mats = [
        np.zeros((tgt.dims[v] if v <= n else 0, src.dims[v] if v <= n else 0), dtype=np.int64)
        for v in range(n + 1)
    ]
    for (si, ti), scalar in entries.items():
        i, j = src_parts[si]
        s, t = tgt_parts[ti]
        if not (s <= i <= t <= j):
            raise ModelDataError(f"no degree-0 canonical map M({i},{j}) -> M({s},{t})")
        for v in range(i, min(j, t) + 1):
            mats[v][tgt_coords[ti][v], src_coords[si][v]] = scalar % p
    return mats


def _row_space(rows: np.ndarray, p: int) -> np.ndarray:
    if rows.size == 0:
        return rows.reshape(0, rows.shape[1] if rows.ndim == 2 else 0)
    reduced, _ = _modp.rref(rows, p)
    return reduced[np.any(reduced, axis=1)]


def _complement_rows(sub: np.ndarray, amb: np.ndarray, p: int) -> np.ndarray:
    """Rows of `amb` (greedily) extending span(sub) to span(sub)+span(amb)."""
    chosen: list[np.ndarray] = []
    current = sub
    r = _modp.rank(current, p) if current.size else 0
    for row in amb:
        stacked = np.vstack([current, row]) if current.size else row.reshape(1, -1)
        r2 = _modp.rank(stacked, p)
        if r2 > r:
            chosen.append(row % p)
            current = stacked
            r = r2
    if not chosen:
        return np.zeros((0, amb.shape[1]), dtype=np.int64)
    return np.array(chosen, dtype=np.int64)


def subquotient_rep(
    rep: Rep,
    ker_rows: list[np.ndarray],
    img_rows: list[np.ndarray],
) -> Rep:
    """The representation (ker/img) for vertexwise subspaces of `rep` that
    are preserved by its arrows (img[v] inside ker[v])."""
    n, p = rep.n, rep.p
    img = [_row_space(img_rows[v], p) for v in range(n + 1)]
    bases = [np.zeros((0, 0), dtype=np.int64)] * (n + 1)
    dims = [0] * (n + 1)
    for v in range(1, n + 1):
        bases[v] = _complement_rows(img[v], ker_rows[v], p)
        dims[v] = bases[v].shape[0]
    maps = [np.zeros((0, 0), dtype=np.int64)] * (n + 1)
    for v in range(1, n):
        out = np.zeros((dims[v + 1], dims[v]), dtype=np.int64)
        for k in range(dims[v]):
            vec = (rep.maps[v] @ bases[v][k]) % p
            stacked = (
                np.vstack([bases[v + 1], img[v + 1]])
                if img[v + 1].size
                else bases[v + 1]
            )
            coords = _modp.row_span_coords(stacked, vec, p)
            if coords is None:
                raise ModelDataError("subquotient is not arrow-stable")
            out[:, k] = coords[: dims[v + 1]]
        maps[v] = out
    return Rep(n, p, dims, maps)


def kernel_rep(src: Rep, mats: list[np.ndarray]) -> Rep:
    n, p = src.n, src.p
    ker = [np.zeros((0, 0), dtype=np.int64)] * (n + 1)
    img = [np.zeros((0, 0), dtype=np.int64)] * (n + 1)
    for v in range(1, n + 1):
        d = src.dims[v]
        ker[v] = (
            _modp.nullspace(mats[v], p) if d else np.zeros((0, 0), dtype=np.int64)
        )
        img[v] = np.zeros((0, d), dtype=np.int64)
    return subquotient_rep(src, ker, img)


def cokernel_rep(tgt: Rep, mats: list[np.ndarray]) -> Rep:
    n, p = tgt.n, tgt.p
    ker = [np.zeros((0, 0), dtype=np.int64)] * (n + 1)
    img = [np.zeros((0, 0), dtype=np.int64)] * (n + 1)
    for v in range(1, n + 1):
        d = tgt.dims[v]
        ker[v] = np.eye(d, dtype=np.int64)
        img[v] = mats[v].T % p if mats[v].size else np.zeros((0, d), dtype=np.int64)
    return subquotient_rep(tgt, ker, img)


# ----------------------------------------------------------------------
# complexes of projectives
# ----------------------------------------------------------------------


@dataclass
class ProjComplex:
    """Bounded complex whose degree-q piece is the sum of P_a, a in tops[q].

    diff[q] is the scalar matrix of the differential C^q -> C^{q+1} in the
    canonical-inclusion bases; its (r, c) entry may be nonzero only when
    tops[q+1][r] <= tops[q][c].
    """

    n: int
    p: int
    tops: dict[int, list[int]]
    diff: dict[int, np.ndarray]

    def check(self) -> None:
        for q, mat in self.diff.items():
            for r, b in enumerate(self.tops.get(q + 1, [])):
                for c, a in enumerate(self.tops[q]):
                    if mat[r, c] and b > a:
                        raise ModelDataError("differential violates Hom support")
        for q in self.diff:
            if q + 1 in self.diff:
                prod = (self.diff[q + 1] @ self.diff[q]) % self.p
                if np.any(prod):
                    raise ModelDataError("differential does not square to zero")

    def _active(self, q: int, v: int) -> list[int]:
        return [c for c, a in enumerate(self.tops.get(q, [])) if a <= v]

    def cohomology_rep(self, q: int) -> Rep:
        """H^q as a representation, via vertexwise kernels modulo images."""
        n, p = self.n, self.p
        tops_q = self.tops.get(q, [])
        full = len(tops_q)
        # Ambient rep: sum of P_a restricted to degree q, i.e. an interval rep
        # with parts (a, n); coordinates at vertex v are the active indices.
        active = {v: self._active(q, v) for v in range(1, n + 1)}
        dims = [0] + [len(active[v]) for v in range(1, n + 1)]
        maps = [np.zeros((0, 0), dtype=np.int64)] * (n + 1)
        for v in range(1, n):
            e = np.zeros((dims[v + 1], dims[v]), dtype=np.int64)
            pos = {c: r for r, c in enumerate(active[v + 1])}
            for cc, c in enumerate(active[v]):
                e[pos[c], cc] = 1
            maps[v] = e
        ambient = Rep(n, p, dims, maps)

        ker_rows = [np.zeros((0, 0), dtype=np.int64)] * (n + 1)
        img_rows = [np.zeros((0, 0), dtype=np.int64)] * (n + 1)
        d_out = self.diff.get(q)
        d_in = self.diff.get(q - 1)
        for v in range(1, n + 1):
            act = active[v]
            dv = len(act)
            if d_out is not None and self.tops.get(q + 1):
                act_t = self._active(q + 1, v)
                mat = d_out[np.ix_(act_t, act)] if act_t and act else np.zeros(
                    (len(act_t), dv), dtype=np.int64
                )
                ker_rows[v] = _modp.nullspace(mat, p) if dv else np.zeros((0, 0), np.int64)
            else:
                ker_rows[v] = np.eye(dv, dtype=np.int64)
            if d_in is not None and self.tops.get(q - 1):
                act_s = self._active(q - 1, v)
                mat = d_in[np.ix_(act, act_s)] if act and act_s else np.zeros(
                    (dv, len(act_s)), dtype=np.int64
                )
                img_rows[v] = mat.T % p
            else:
                img_rows[v] = np.zeros((0, dv), dtype=np.int64)
        return subquotient_rep(ambient, ker_rows, img_rows)

    def all_summands(self) -> list[tuple[Interval, int]]:
        """Indecomposable summands (interval, shift) of the total object."""
        out: list[tuple[Interval, int]] = []
        degrees = set(self.tops) | {q + 1 for q in self.tops} | {q - 1 for q in self.tops}
        for q in sorted(degrees):
            h = self.cohomology_rep(q)
            if h.total_dim == 0:
                continue
            for iv, mult in h.interval_multiplicities().items():
                out.extend([(iv, -q)] * mult)
        return sorted(out)


def object_complex(
    n: int, p: int, summands: list[tuple[Interval, int]]
) -> tuple[ProjComplex, list[tuple[int, int, int]]]:
    """Total complex of a sum of shifted intervals.

    Summand (M(i,j), k) contributes P_i at degree -k and P_{j+1} at -k-1.
    Returns per summand (degree of P^0, its index, index of P^{-1} or -1).
    """
    tops: dict[int, list[int]] = {}
    place: list[tuple[int, int, int]] = []
    for (i, j), k in summands:
        q0 = -k
        row0 = tops.setdefault(q0, [])
        idx0 = len(row0)
        row0.append(i)
        if j + 1 <= n:
            row1 = tops.setdefault(q0 - 1, [])
            idx1 = len(row1)
            row1.append(j + 1)
        else:
            idx1 = -1
        place.append((q0, idx0, idx1))
    diff: dict[int, np.ndarray] = {}
    for q in list(tops):
        if q + 1 in tops:
            diff[q] = np.zeros((len(tops[q + 1]), len(tops[q])), dtype=np.int64)
    for (q0, idx0, idx1) in place:
        if idx1 >= 0:
            diff[q0 - 1][idx0, idx1] = 1
    return ProjComplex(n, p, tops, diff), place


def cone_summands(
    n: int,
    p: int,
    src: list[tuple[Interval, int]],
    tgt: list[tuple[Interval, int]],
    components: set[tuple[int, int]],
) -> list[tuple[Interval, int]]:
    """Summands (interval, shift) of the cone over the morphism src -> tgt
    whose listed components are canonical with scalar 1.

    A component (si, ti) must have shift difference 0 or 1 with a nonzero Hom
    condition; the cone is the total complex tgt (+) src[1].
    """
    src_cx, src_place = object_complex(n, p, src)
    tgt_cx, tgt_place = object_complex(n, p, tgt)

    # chain-map scalar matrices phi[q]: src^q -> tgt^q
    phi: dict[int, np.ndarray] = {}

    def phi_at(q: int) -> np.ndarray:
        if q not in phi:
            phi[q] = np.zeros(
                (len(tgt_cx.tops.get(q, [])), len(src_cx.tops.get(q, []))),
                dtype=np.int64,
            )
        return phi[q]

    for si, ti in components:
        (i, j), sk = src[si]
        (s, t), tk = tgt[ti]
        d = tk - sk
        sq0, sidx0, sidx1 = src_place[si]
        tq0, tidx0, tidx1 = tgt_place[ti]
        if d == 0:
            if not (s <= i <= t <= j):
                raise ModelDataError(f"no degree-0 component M({i},{j})->M({s},{t})")
            phi_at(sq0)[tidx0, sidx0] = 1
            if sidx1 >= 0:
                assert tidx1 >= 0  # t <= j < n
                phi_at(sq0 - 1)[tidx1, sidx1] = 1
        elif d == 1:
            if not (i + 1 <= s <= j + 1 <= t):
                raise ModelDataError(f"no degree-1 component M({i},{j})->M({s},{t})[1]")
            assert sidx1 >= 0  # j + 1 <= t <= n
            phi_at(sq0 - 1)[tidx0, sidx1] = 1
        else:
            raise ModelDataError(f"components must have degree 0 or 1, got {d}")

    # cone = tgt (+) src[1]: C^q = tgt^q (+) src^{q+1}
    tops: dict[int, list[int]] = {}
    degrees = sorted(set(tgt_cx.tops) | {q - 1 for q in src_cx.tops})
    for q in degrees:
        tops[q] = list(tgt_cx.tops.get(q, [])) + list(src_cx.tops.get(q + 1, []))
    diff: dict[int, np.ndarray] = {}
    for q in degrees:
        if q + 1 not in tops:
            continue
        rows = len(tops[q + 1])
        cols = len(tops[q])
        mat = np.zeros((rows, cols), dtype=np.int64)
        tb = len(tgt_cx.tops.get(q, []))
        tb1 = len(tgt_cx.tops.get(q + 1, []))
        if q in tgt_cx.diff:
            mat[:tb1, :tb] = tgt_cx.diff[q]
        if q + 1 in phi and phi[q + 1].size:
            mat[:tb1, tb:] = phi[q + 1]
        if q + 1 in src_cx.diff:
            mat[tb1:, tb:] = (-src_cx.diff[q + 1]) % p
        diff[q] = mat
    cone = ProjComplex(n, p, tops, diff)
    cone.check()
    return cone.all_summands()
