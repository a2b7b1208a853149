"""Stable module category of k[u]/(u^n): the A_{n-1} singularity model.

Indecomposables are V_1, ..., V_{n-1}, where V_i is the image of the cyclic
module k[u]/(u^i).  The shift acts by V_i[1] = V_{n-i}, so shift-squared is
the identity on objects and every shift-orbit class has the representative
min(i, n-i).

The stable Hom space from V_i to V_j has the monomial basis

    alpha(i, j, l) : 1 |-> u^l,     max(0, j-i) <= l < min(j, n-i).

Composition adds the exponents and truncates to zero outside that range, so
all structure constants are 1.  The cone of alpha(i, j, l) is

    V_{max(0, i-j+l)}[1]  (+)  V_l

with V_0 summands dropped; the underlying four-term exact sequence splits, so
this is exact, not just an upper bound.  The closed-form Orlov spectrum is
{ ceil(m/s) - 1 : 1 <= s <= m } with m = floor(n/2).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil

import numpy as np

from .errors import ModelDataError
from .model import CategoryModel, GhostSearchSpace
from .objects import ClassId, GeneratorSet, GhostChainState, ObjectExpr, ShiftedIndec


@dataclass(frozen=True)
class AlphaMorphism:
    """The basis morphism V_source -> V_target sending 1 to u^power."""

    source: int
    target: int
    power: int


def _members(gens) -> frozenset:
    if isinstance(gens, GeneratorSet):
        return gens.classes
    return frozenset(gens)


class AnSingularityCategory(CategoryModel):
    """Combinatorial presentation of the stable category of k[u]/(u^n)."""

    name = "an-sing"

    def __init__(self, n: int):
        if n < 2:
            raise ModelDataError(f"need n >= 2, got {n}")
        self.n = n
        self.m = n // 2
        self._cone_reach_cache: dict[tuple[int, int], frozenset[int]] = {}
        self._tables: tuple[np.ndarray, np.ndarray, np.ndarray] | None = None

    def __getstate__(self):
        return {"n": self.n}

    def __setstate__(self, state):
        self.__init__(state["n"])

    def params(self) -> dict:
        return {"n": self.n}

    # ------------------------------------------------------------------
    # orbit-class structure
    # ------------------------------------------------------------------

    def class_ids(self) -> tuple[int, ...]:
        return tuple(range(1, self.m + 1))

    def class_members(self, cls: int) -> tuple[int, ...]:
        self._check_index(cls)
        other = self.n - cls
        return (cls,) if other == cls else (cls, other)

    def class_of(self, indec: int) -> int:
        self._check_index(indec)
        return min(indec, self.n - indec)

    def shift_members(self, classes) -> tuple[int, ...]:
        """All indecomposable indices in the shift closure of the classes."""
        out: set[int] = set()
        for c in classes:
            out.update(self.class_members(c))
        return tuple(sorted(out))

    def normalize(self, obj: ShiftedIndec) -> ShiftedIndec:
        self._check_index(obj.indec)
        if obj.shift % 2 == 0:
            return ShiftedIndec(obj.indec, 0)
        return ShiftedIndec(self.n - obj.indec, 0)

    def class_label(self, cls: int) -> str:
        return f"V{cls}"

    def parse_class(self, text: str) -> int:
        text = text.strip()
        if not text.upper().startswith("V"):
            raise ModelDataError(f"cannot parse {text!r} as a V-class")
        try:
            idx = int(text[1:])
        except ValueError as exc:
            raise ModelDataError(f"cannot parse {text!r} as a V-class") from exc
        return self.class_of(idx)

    def _check_index(self, i) -> None:
        if not isinstance(i, int) or not 1 <= i <= self.n - 1:
            raise ModelDataError(
                f"index {i!r} out of range 1..{self.n - 1} for n={self.n}"
            )

    # ------------------------------------------------------------------
    # alpha calculus
    # ------------------------------------------------------------------

    def hom_range(self, i: int, j: int) -> tuple[int, int]:
        """Legal exponent range [lo, hi) of basis morphisms V_i -> V_j."""
        self._check_index(i)
        self._check_index(j)
        return max(0, j - i), min(j, self.n - i)

    def hom_basis(self, i: int, j: int) -> list[AlphaMorphism]:
        lo, hi = self.hom_range(i, j)
        return [AlphaMorphism(i, j, l) for l in range(lo, hi)]

    def compose(self, g: AlphaMorphism, f: AlphaMorphism) -> AlphaMorphism | None:
        """g after f; None is the zero morphism."""
        if f.target != g.source:
            raise ModelDataError(
                f"cannot compose: f ends at V{f.target}, g starts at V{g.source}"
            )
        power = f.power + g.power
        lo, hi = self.hom_range(f.source, g.target)
        if lo <= power < hi:
            return AlphaMorphism(f.source, g.target, power)
        return None

    def shift_morphism(self, f: AlphaMorphism) -> AlphaMorphism:
        """The shift [1] of a basis morphism, again in the alpha basis."""
        n = self.n
        return AlphaMorphism(n - f.source, n - f.target, f.power + f.target - f.source)

    def cone(self, f: AlphaMorphism) -> ObjectExpr:
        """Cone of a basis morphism: V_{max(0, i-j+l)}[1] (+) V_l, V_0 dropped."""
        self._validate(f)
        parts = []
        left = max(0, f.source - f.target + f.power)
        if left > 0:
            parts.append(ShiftedIndec(left, 1))
        if f.power > 0:
            parts.append(ShiftedIndec(f.power, 0))
        return ObjectExpr.of(self, parts)

    def _validate(self, f: AlphaMorphism) -> None:
        lo, hi = self.hom_range(f.source, f.target)
        if not lo <= f.power < hi:
            raise ModelDataError(f"{f} is outside the legal exponent range")

    def is_ghost(self, f: AlphaMorphism, gens) -> bool:
        """True iff every composite with a map out of a shifted generator dies.

        Both shift representatives of each generator class are checked, so
        this is ghostness for the full shift closure of the generator.
        """
        self._validate(f)
        for s in self.shift_members(_members(gens)):
            lo, hi = self.hom_range(s, f.source)
            for l in range(lo, hi):
                if self.compose(f, AlphaMorphism(s, f.source, l)) is not None:
                    return False
        return True

    # ------------------------------------------------------------------
    # engine hooks
    # ------------------------------------------------------------------

    def cone_reach(self, src: int, dst: int) -> frozenset[int]:
        key = (src, dst)
        cached = self._cone_reach_cache.get(key)
        if cached is not None:
            return cached
        out: set[int] = set()
        for x in self.class_members(src):
            for y in self.class_members(dst):
                lo, hi = self.hom_range(x, y)
                for l in range(lo, hi):
                    for part in self.cone(AlphaMorphism(x, y, l)).summands:
                        out.add(self.class_of(part.indec))
        result = frozenset(out)
        self._cone_reach_cache[key] = result
        return result

    def ghost_search(self, gen_classes: frozenset[int]) -> GhostSearchSpace:
        return _AnGhostSpace(self, gen_classes)

    def _ghost_tables(self):
        """Numpy tables for the ghost-edge computation, built once per model.

        THRESH[s, c, j] is the least exponent l such that alpha(c, j, l)
        composes to zero with every basis map V_s -> V_c; an edge is ghost for
        a generator iff its exponent clears the threshold of every shifted
        generator member s.
        """
        if self._tables is None:
            n = self.n
            idx = np.arange(n + 1)
            c = idx[None, :, None]
            j = idx[None, None, :]
            s = idx[:, None, None]
            thresh = np.minimum(j, n - s) - np.maximum(0, c - s)
            lower = np.maximum(0, (j - c)[0])
            upper = np.minimum(j, n - c)[0]
            self._tables = (
                thresh.astype(np.int32),
                lower.astype(np.int32),
                upper.astype(np.int32),
            )
        return self._tables

    def _ghost_edges(self, gen_classes: frozenset[int]) -> list[list[tuple[int, int]]]:
        """Per source index c, the ghost edges (target j, minimal ghost
        exponent).  Larger ghost exponents only shrink what a chain can still
        do, so the minimal one suffices for longest-chain search."""
        thresh, lower, upper = self._ghost_tables()
        members = list(self.shift_members(gen_classes))
        lmin = np.maximum(thresh[members].max(axis=0), lower)
        ok = lmin < upper
        n = self.n
        edges: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for c in range(1, n):
            js = np.nonzero(ok[c, 1:n])[0] + 1
            row = lmin[c]
            edges[c] = [(int(j), int(row[j])) for j in js]
        return edges

    def ghost_longest_batch(self, gen_classes: frozenset[int]) -> dict[int, int]:
        """Longest ghost chain out of each orbit class, all classes at once.

        A chain starting at V_s accumulates exponents; the composite from the
        start is alpha(s, current, L) and stays nonzero exactly while
        L < current at each node and L < n - s overall.  The search shares one
        table across starts: for each state (node, L) it records, per chain
        length, the minimal final exponent any continuation can achieve; a
        start then only needs its own budget n - s applied at read-off time.
        Chains out of V_{n-s} are shifts of chains out of V_s, so orbit
        representatives suffice.
        """
        edges = self._ghost_edges(gen_classes)
        memo: dict[int, tuple[int, ...]] = {}
        n = self.n

        def pareto(c: int, L: int) -> tuple[int, ...]:
            key = c * n + L
            hit = memo.get(key)
            if hit is not None:
                return hit
            best = [L]
            for j, l in edges[c]:
                L2 = L + l
                if L2 >= j:
                    continue
                for k, p in enumerate(pareto(j, L2)):
                    k += 1
                    if k == len(best):
                        best.append(p)
                    elif p < best[k]:
                        best[k] = p
            result = tuple(best)
            memo[key] = result
            return result

        out: dict[int, int] = {}
        for s in self.class_ids():
            budget = n - s
            longest = 0
            for j, l in edges[s]:
                if l >= j:
                    continue
                for k, p in enumerate(pareto(j, l)):
                    if p < budget and k + 1 > longest:
                        longest = k + 1
            out[s] = longest
        return out

    # ------------------------------------------------------------------
    # closed forms
    # ------------------------------------------------------------------

    def closed_form_spectrum(self) -> set[int]:
        return closed_form_spectrum(self.n)

    def tritime_formula(self, gen_classes) -> int:
        """Closed-form generation time of a subset of {V_1..V_m}.

        The full set generates in 0 steps; otherwise the time is
        max(ceil(m / d) - 1, 1) where d is the largest index present.  Used
        as an independent check of the search-based computation.
        """
        classes = _members(gen_classes)
        m = self.m
        if classes == set(range(1, m + 1)):
            return 0
        d = max(classes)
        return max(ceil(m / d) - 1, 1)


def closed_form_spectrum(n: int) -> set[int]:
    """The set { ceil(m/s) - 1 : 1 <= s <= m } with m = floor(n/2)."""
    if n < 2:
        raise ModelDataError(f"need n >= 2, got {n}")
    m = n // 2
    return {ceil(m / s) - 1 for s in range(1, m + 1)}


class _AnGhostSpace:
    """Exhaustive ghost-chain state space (all ghost exponents, not only the
    minimal ones); states carry the accumulated u-exponent as the composite
    token.  Used by the generic engine search and as a cross-check of the
    batched computation."""

    def __init__(self, model: AnSingularityCategory, gen_classes: frozenset[int]):
        self.model = model
        self.members = model.shift_members(gen_classes)

    def initial(self, start: int) -> GhostChainState:
        self.model._check_index(start)
        return GhostChainState(start=start, current=start, composite=0)

    def successors(self, state: GhostChainState):
        model = self.model
        n = model.n
        cap = n - state.start
        c = state.current
        L = state.composite
        for j in range(1, n):
            lo, hi = model.hom_range(c, j)
            ghost_lo = max(
                (
                    min(j, n - s) - max(0, c - s)
                    for s in self.members
                ),
                default=0,
            )
            for l in range(max(lo, ghost_lo), hi):
                L2 = L + l
                if L2 < min(j, cap):
                    yield GhostChainState(state.start, j, L2)
