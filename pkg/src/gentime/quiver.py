"""Bounded derived category of the linearly oriented A_n quiver.

Indecomposables up to shift are the interval modules M(i, j) = P_i / P_{j+1},
1 <= i <= j <= n, supported on vertices i..j; M(i, n) = P_i is projective and
M(i, i) = S_i is simple.  All orientations of the A_n graph are derived
equivalent, so the linear one stands for the whole class.

Graded Hom components between intervals are at most one-dimensional:

    degree 0:  Hom(M(i,j), M(s,t)) != 0   iff  s <= i <= t <= j
    degree 1:  Hom(M(i,j), M(s,t)[1]) != 0 iff  i+1 <= s <= j+1 <= t

and the category is hereditary, so nothing lives in other degrees.  In the
canonical bases fixed by the explicit representations (identity on shared
coordinates), the composite of two canonical maps is the canonical map of the
composite endpoints whenever that Hom component is nonzero, and zero
otherwise; all structure constants are 0 or 1.  The representation oracle
certifies these frozen rules for small n.

Cones: for a degree-0 map the cone is ker[1] (+) coker with
ker = M(t+1, j) and coker = M(s, i-1) (empty pieces dropped); for a degree-1
map it is E[1] where E = M(i, t) (+) M(s, j) is the middle term of the
corresponding nonsplit extension, a rule derived from the projective
resolution oracle.  The Serre functor sends non-projective M(i,j) to
M(i+1, j+1)[1].
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _interval_linalg
from .errors import ModelDataError
from .model import CategoryModel, GhostSearchSpace
from .objects import GeneratorSet, GhostChainState, ObjectExpr, ShiftedIndec

Interval = tuple[int, int]


@dataclass(frozen=True)
class QuiverBasisMorphism:
    """Canonical basis morphism M(source) -> M(target)[degree], scalar 1."""

    source: Interval
    target: Interval
    degree: int


def _members(gens) -> frozenset:
    if isinstance(gens, GeneratorSet):
        return gens.classes
    return frozenset(gens)


class QuiverCategory(CategoryModel):
    """Combinatorial presentation of D^b(mod kA_n), linear orientation.

    The structure constants are field-independent; `field` records the prime
    used by the representation oracle when certifying them.
    """

    name = "quiver"

    #: Saturation closes under cones of star-shaped morphisms with this many
    #: leaves against one hub; single basis morphisms alone are not exact for
    #: this model (the sandwich check against ghost chains would fail).
    star_size = 2

    def __init__(self, n: int, field: int = 2):
        if n < 1:
            raise ModelDataError(f"need n >= 1, got {n}")
        self.n = n
        self.field = field
        self._cone_reach_cache: dict[tuple[Interval, Interval], frozenset[Interval]] = {}
        self._star_cache: dict[tuple, frozenset[Interval]] = {}

    def __getstate__(self):
        return {"n": self.n, "field": self.field}

    def __setstate__(self, state):
        self.__init__(state["n"], state["field"])

    def params(self) -> dict:
        return {"n": self.n, "field": self.field}

    # ------------------------------------------------------------------
    # orbit-class structure (shifts act freely; a class is an interval)
    # ------------------------------------------------------------------

    def intervals(self) -> tuple[Interval, ...]:
        return tuple(
            (i, j) for i in range(1, self.n + 1) for j in range(i, self.n + 1)
        )

    def class_ids(self) -> tuple[Interval, ...]:
        return self.intervals()

    def class_members(self, cls: Interval) -> tuple[Interval, ...]:
        self._check_interval(cls)
        return (cls,)

    def class_of(self, indec: Interval) -> Interval:
        self._check_interval(indec)
        return indec

    def normalize(self, obj: ShiftedIndec) -> ShiftedIndec:
        self._check_interval(obj.indec)
        return ShiftedIndec(tuple(obj.indec), obj.shift)

    def projectives(self) -> tuple[Interval, ...]:
        return tuple((i, self.n) for i in range(1, self.n + 1))

    def simples(self) -> tuple[Interval, ...]:
        return tuple((i, i) for i in range(1, self.n + 1))

    def class_label(self, cls: Interval) -> str:
        return f"M({cls[0]},{cls[1]})"

    def parse_class(self, text: str) -> Interval:
        text = text.strip()
        upper = text.upper()
        try:
            if upper.startswith("M(") and text.endswith(")"):
                i, j = (int(part) for part in text[2:-1].split(","))
                return self.class_of((i, j))
            if upper.startswith("P"):
                return self.class_of((int(text[1:]), self.n))
            if upper.startswith("S"):
                i = int(text[1:])
                return self.class_of((i, i))
        except (ValueError, ModelDataError) as exc:
            raise ModelDataError(f"cannot parse {text!r} as an interval class") from exc
        raise ModelDataError(f"cannot parse {text!r} as an interval class")

    def _check_interval(self, iv) -> None:
        ok = (
            isinstance(iv, tuple)
            and len(iv) == 2
            and all(isinstance(x, int) for x in iv)
            and 1 <= iv[0] <= iv[1] <= self.n
        )
        if not ok:
            raise ModelDataError(f"{iv!r} is not an interval of 1..{self.n}")

    # ------------------------------------------------------------------
    # Hom/Ext combinatorics
    # ------------------------------------------------------------------

    def hom_dim(self, src: Interval, dst: Interval, degree: int) -> int:
        self._check_interval(src)
        self._check_interval(dst)
        i, j = src
        s, t = dst
        if degree == 0:
            return 1 if s <= i <= t <= j else 0
        if degree == 1:
            return 1 if i + 1 <= s <= j + 1 <= t else 0
        return 0

    def basis_morphism(self, src: Interval, dst: Interval, degree: int) -> QuiverBasisMorphism:
        if not self.hom_dim(src, dst, degree):
            raise ModelDataError(
                f"Hom(M{src}, M{dst}[{degree}]) is zero; no basis morphism"
            )
        return QuiverBasisMorphism(src, dst, degree)

    def compose(
        self, g: QuiverBasisMorphism, f: QuiverBasisMorphism
    ) -> QuiverBasisMorphism | None:
        """g after f; None is zero.  Degree-2 composites vanish (hereditary),
        and otherwise the composite is canonical iff its Hom component is
        nonzero."""
        if f.target != g.source:
            raise ModelDataError(
                f"cannot compose: f ends at M{f.target}, g starts at M{g.source}"
            )
        degree = f.degree + g.degree
        if degree > 1 or not self.hom_dim(f.source, g.target, degree):
            return None
        return QuiverBasisMorphism(f.source, g.target, degree)

    def cone(self, f: QuiverBasisMorphism) -> ObjectExpr:
        """Cone of a canonical basis morphism, source placed at shift 0."""
        if not self.hom_dim(f.source, f.target, f.degree):
            raise ModelDataError(f"{f} is not a nonzero basis morphism")
        i, j = f.source
        s, t = f.target
        parts: list[ShiftedIndec] = []
        if f.degree == 0:
            if t < j:
                parts.append(ShiftedIndec((t + 1, j), 1))
            if s < i:
                parts.append(ShiftedIndec((s, i - 1), 0))
        else:
            parts.append(ShiftedIndec((i, t), 1))
            if s <= j:
                parts.append(ShiftedIndec((s, j), 1))
        return ObjectExpr.of(self, parts)

    def serre(self, obj: ShiftedIndec) -> ShiftedIndec | None:
        """Serre functor M(i,j)[k] -> M(i+1,j+1)[k+1]; None on projectives,
        where the translation rule does not apply."""
        obj = self.normalize(obj)
        i, j = obj.indec
        if j == self.n:
            return None
        return ShiftedIndec((i + 1, j + 1), obj.shift + 1)

    def is_ghost(self, f: QuiverBasisMorphism, gens) -> bool:
        """True iff f kills every graded map in from the shift closure of the
        generator; degree-2 composites vanish identically and are skipped."""
        if not self.hom_dim(f.source, f.target, f.degree):
            raise ModelDataError(f"{f} is not a nonzero basis morphism")
        for s in _members(gens):
            self._check_interval(s)
            for d_in in range(0, 2 - f.degree):
                if self.hom_dim(s, f.source, d_in) and self.hom_dim(
                    s, f.target, d_in + f.degree
                ):
                    return False
        return True

    # ------------------------------------------------------------------
    # engine hooks
    # ------------------------------------------------------------------

    def cone_reach(self, src: Interval, dst: Interval) -> frozenset[Interval]:
        key = (src, dst)
        cached = self._cone_reach_cache.get(key)
        if cached is not None:
            return cached
        out: set[Interval] = set()
        for degree in (0, 1):
            if self.hom_dim(src, dst, degree):
                f = QuiverBasisMorphism(src, dst, degree)
                out.update(part.indec for part in self.cone(f).summands)
        result = frozenset(out)
        self._cone_reach_cache[key] = result
        return result

    def ghost_search(self, gen_classes: frozenset[Interval]) -> GhostSearchSpace:
        return _QuiverGhostSpace(self, gen_classes)

    # Star cones: one hub against several leaves.  Any morphism with a
    # disconnected component pattern splits off a direct summand, and scaling
    # automorphisms normalize the scalars of a tree pattern to 1, so these
    # canonical stars cover every morphism of this shape; the sandwich check
    # certifies that hub size 1 against `star_size` leaves closes levels
    # exactly.
    def _star_classes(
        self,
        src: tuple[tuple[Interval, int], ...],
        tgt: tuple[tuple[Interval, int], ...],
        components: frozenset[tuple[int, int]],
    ) -> frozenset[Interval]:
        key = (src, tgt, components)
        hit = self._star_cache.get(key)
        if hit is None:
            parts = _interval_linalg.cone_summands(
                self.n, self.field, list(src), list(tgt), set(components)
            )
            hit = frozenset(iv for iv, _ in parts)
            self._star_cache[key] = hit
        return hit

    def _leaf_options(self, hub: Interval, leaf: Interval, hub_is_source: bool):
        """Shifts k a leaf can take against a hub at shift 0, per orientation."""
        out = []
        for k in (-1, 0, 1):
            d = k if hub_is_source else -k
            if d in (0, 1):
                src, dst = (hub, leaf) if hub_is_source else (leaf, hub)
                if self.hom_dim(src, dst, d):
                    out.append(k)
        return out

    def cone_step(self, levels, frontier, gens):
        new = super().cone_step(levels, frontier, gens)
        if self.star_size < 2:
            return new
        frontier_set = set(frontier)
        reached = sorted(levels)
        known = levels
        for hub_from_gens in (False, True):
            hubs = gens if hub_from_gens else frontier
            leaf_pool = reached if hub_from_gens else list(gens)
            for hub in hubs:
                for hub_is_source in (True, False):
                    cands: list[tuple[Interval, int]] = []
                    for leaf in leaf_pool:
                        for k in self._leaf_options(hub, leaf, hub_is_source):
                            cands.append((leaf, k))
                    for a in range(len(cands)):
                        for b in range(a + 1, len(cands)):
                            leaves = (cands[a], cands[b])
                            if hub_from_gens and not (
                                leaves[0][0] in frontier_set
                                or leaves[1][0] in frontier_set
                            ):
                                continue
                            hub_part = ((hub, 0),)
                            if hub_is_source:
                                comps = frozenset({(0, 0), (0, 1)})
                                parts = self._star_classes(hub_part, leaves, comps)
                            else:
                                comps = frozenset({(0, 0), (1, 0)})
                                parts = self._star_classes(leaves, hub_part, comps)
                            via = hub if not hub_from_gens else next(
                                lv for lv, _ in leaves if lv in frontier_set
                            )
                            for cls in parts:
                                if cls not in known and cls not in new:
                                    new[cls] = via
        return new

    # ------------------------------------------------------------------
    # left twists (for mutation walks)
    # ------------------------------------------------------------------

    def left_twist(self, by: Interval, obj: ShiftedIndec) -> ObjectExpr:
        """Cone over the evaluation map of `by` into `obj`.

        For interval modules at most one graded Hom component from `by` to a
        shift of `obj` is nonzero and it is one-dimensional, so the evaluation
        map is a single canonical basis morphism (or zero, leaving `obj`
        unchanged).
        """
        self._check_interval(by)
        obj = self.normalize(obj)
        if self.hom_dim(by, obj.indec, 0):
            cone = self.cone(QuiverBasisMorphism(by, obj.indec, 0))
            return ObjectExpr(
                tuple(part.shifted(obj.shift) for part in cone.summands)
            )
        if self.hom_dim(by, obj.indec, 1):
            cone = self.cone(QuiverBasisMorphism(by, obj.indec, 1))
            # ev: A[shift-1] -> X[shift]; cone of the degree-1 map sits one
            # shift lower than the source-at-zero convention of cone().
            return ObjectExpr(
                tuple(part.shifted(obj.shift - 1) for part in cone.summands)
            )
        return ObjectExpr((obj,))

    def left_twist_object(self, by: Interval, obj: ObjectExpr) -> ObjectExpr:
        out = ObjectExpr()
        for part in obj.summands:
            out = out.direct_sum(self.left_twist(by, part))
        return ObjectExpr(tuple(sorted(out.summands)))


class _QuiverGhostSpace:
    """Ghost-chain states (start, current interval, accumulated degree).

    The composite of canonical maps from the start is the canonical map of
    (start, current, degree) when that component is nonzero, so the
    accumulated degree is a faithful composite token; hereditary vanishing
    keeps it in {0, 1}.
    """

    def __init__(self, model: QuiverCategory, gen_classes: frozenset[Interval]):
        self.model = model
        self.gens = tuple(sorted(gen_classes))
        self._edges: dict[tuple[Interval, int], list[tuple[Interval, int]]] = {}

    def initial(self, start: Interval) -> GhostChainState:
        self.model._check_interval(start)
        return GhostChainState(start=start, current=start, composite=0)

    def _edges_from(self, cur: Interval, used: int) -> list[tuple[Interval, int]]:
        key = (cur, used)
        hit = self._edges.get(key)
        if hit is not None:
            return hit
        model = self.model
        out = []
        for nxt in model.intervals():
            for d in range(0, 2 - used):
                if model.hom_dim(cur, nxt, d) and model.is_ghost(
                    QuiverBasisMorphism(cur, nxt, d), self.gens
                ):
                    out.append((nxt, d))
        self._edges[key] = out
        return out

    def successors(self, state: GhostChainState):
        model = self.model
        for nxt, d in self._edges_from(state.current, state.composite):
            total = state.composite + d
            if model.hom_dim(state.start, nxt, total):
                yield GhostChainState(state.start, nxt, total)


def loewy_length_end_algebra(n: int) -> int:
    """Loewy length of the graded endomorphism algebra of the sum of all
    indecomposables: one plus the longest nonzero chain of radical basis
    morphisms, where at most one chain step may raise the degree (hereditary
    vanishing kills longer degree patterns)."""
    model = QuiverCategory(n)
    intervals = model.intervals()
    best = 0
    for start in intervals:
        memo: dict[tuple[Interval, int], int] = {}

        def longest(cur: Interval, used: int) -> int:
            key = (cur, used)
            hit = memo.get(key)
            if hit is not None:
                return hit
            record = 0
            for nxt in intervals:
                for d in range(0, 2 - used):
                    if d == 0 and nxt == cur:
                        continue  # identities are not radical
                    if not model.hom_dim(cur, nxt, d):
                        continue
                    if not model.hom_dim(start, nxt, used + d):
                        continue  # prefix composite died
                    record = max(record, 1 + longest(nxt, used + d))
            memo[key] = record
            return record

        best = max(best, longest(start, 0))
    return best + 1
