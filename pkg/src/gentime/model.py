"""Abstract contract a finite category model supplies to the engine.

A model presents a triangulated category of finite type: finitely many
indecomposables up to shift, one-dimensional graded Hom components with known
composition, and a cone rule for basis morphisms.  The engine only ever talks
to a model through this interface.
"""

from __future__ import annotations

import abc
from typing import Hashable, Iterable, Iterator, Protocol, Sequence

from .objects import ClassId, GhostChainState, ShiftedIndec


class GhostSearchSpace(Protocol):
    """State space of the exact ghost-chain search for one generator set.

    States are hashable; `successors` yields states reachable by one more
    ghost basis morphism with the composite still nonzero.
    """

    def initial(self, start: Hashable) -> GhostChainState: ...

    def successors(self, state: GhostChainState) -> Iterator[GhostChainState]: ...


class CategoryModel(abc.ABC):
    """Finite presentation of a triangulated category, up to shift orbits."""

    #: Both built-in models certify that single-basis-morphism cone closure
    #: computes levels exactly; the engine cross-checks this against ghost
    #: chains on every tritime call and refuses to resolve a mismatch.
    exact_for_levels: bool = True

    name: str = "model"

    @abc.abstractmethod
    def class_ids(self) -> tuple[ClassId, ...]:
        """Shift-orbit classes of indecomposables, sorted."""

    @abc.abstractmethod
    def class_members(self, cls: ClassId) -> tuple[Hashable, ...]:
        """Indecomposable representatives of the orbit (all shift cosets)."""

    @abc.abstractmethod
    def class_of(self, indec: Hashable) -> ClassId:
        """Shift-orbit class of an indecomposable identifier."""

    @abc.abstractmethod
    def normalize(self, obj: ShiftedIndec) -> ShiftedIndec:
        """Model normal form of a shifted indecomposable."""

    @abc.abstractmethod
    def cone_reach(self, src: ClassId, dst: ClassId) -> frozenset[ClassId]:
        """Summand classes of cones over all basis morphisms src -> dst,
        taken over every relative shift with a nonzero Hom component."""

    @abc.abstractmethod
    def ghost_search(self, gen_classes: frozenset[ClassId]) -> GhostSearchSpace:
        """Search space of ghost chains for the given generator classes."""

    @abc.abstractmethod
    def class_label(self, cls: ClassId) -> str:
        """Human-readable label used in reports."""

    @abc.abstractmethod
    def parse_class(self, text: str) -> ClassId:
        """Inverse of class_label, accepting any shift representative."""

    # Models may additionally provide `ghost_longest_batch(gen_classes)`
    # returning {class: longest ghost chain}; the engine uses it, when
    # present, as a faster equivalent of per-class search.

    def cone_step(
        self,
        levels: dict[ClassId, float],
        frontier: Sequence[ClassId],
        gens: Sequence[ClassId],
    ) -> dict[ClassId, ClassId]:
        """One saturation round: classes first reachable by a cone over a
        morphism between the frontier and the generator, mapped to the
        frontier class that witnessed them.  Models whose closure needs more
        than single basis morphisms override this."""
        new: dict[ClassId, ClassId] = {}
        for x in frontier:
            for g in gens:
                for reached in self.cone_reach(x, g) | self.cone_reach(g, x):
                    if reached not in levels and reached not in new:
                        new[reached] = x
        return new

    def parse_generator(self, text: str) -> frozenset[ClassId]:
        parts = [p.strip() for p in text.split(",") if p.strip()]
        return frozenset(self.parse_class(p) for p in parts)

    def labels(self, classes: Iterable[ClassId]) -> tuple[str, ...]:
        return tuple(self.class_label(c) for c in sorted(classes))
