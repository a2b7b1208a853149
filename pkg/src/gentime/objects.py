"""Value types for objects, generators, level tables and spectrum reports.

Objects of a model category are represented up to isomorphism as finite
multisets of shifted indecomposables (Krull-Schmidt normal form).  The empty
multiset is the zero object.  Shift-orbit *classes* of indecomposables are the
currency of generator sets and level tables: a generator is closed under
shifts by construction, so only the orbit of each summand matters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Mapping

from .errors import GentimeError

ClassId = Hashable

INFINITY = math.inf


@dataclass(frozen=True, order=True)
class ShiftedIndec:
    """An indecomposable object together with an integer homological shift."""

    indec: Any
    shift: int = 0

    def shifted(self, k: int) -> ShiftedIndec:
        return ShiftedIndec(self.indec, self.shift + k)


@dataclass(frozen=True)
class ObjectExpr:
    """A finite multiset of shifted indecomposables; empty means zero.

    Summands are stored sorted, in the owning model's normal form, so tuple
    equality is the isomorphism test.
    """

    summands: tuple[ShiftedIndec, ...] = ()

    @staticmethod
    def of(model, parts: Iterable[ShiftedIndec]) -> ObjectExpr:
        normalized = [model.normalize(p) for p in parts]
        return ObjectExpr(tuple(sorted(normalized)))

    @property
    def is_zero(self) -> bool:
        return not self.summands

    def classes(self, model) -> frozenset[ClassId]:
        return frozenset(model.class_of(s.indec) for s in self.summands)

    def direct_sum(self, other: ObjectExpr) -> ObjectExpr:
        return ObjectExpr(tuple(sorted(self.summands + other.summands)))


@dataclass(frozen=True)
class GeneratorSet:
    """A nonempty set of shift-orbit classes of indecomposables."""

    classes: frozenset[ClassId]

    def __post_init__(self) -> None:
        if not self.classes:
            raise GentimeError("generator set must be nonempty")

    @staticmethod
    def of(classes: Iterable[ClassId]) -> GeneratorSet:
        return GeneratorSet(frozenset(classes))

    def sorted_classes(self) -> tuple[ClassId, ...]:
        return tuple(sorted(self.classes))


@dataclass(frozen=True)
class GhostChainState:
    """One node of a ghost-chain search: where we started, where we are, and
    a model-supplied token identifying the (nonzero) composite so far."""

    start: Any
    current: Any
    composite: Any


@dataclass(frozen=True)
class SaturationStep:
    """Trace entry: `new_class` first appeared at `round`, as a summand of the
    cone over a morphism between `via` (level `round - 1`) and a generator."""

    new_class: ClassId
    round: int
    via: ClassId


@dataclass(frozen=True)
class LevelTable:
    """Per-class levels with respect to a generator; INFINITY if unreached."""

    levels: Mapping[ClassId, float]
    stabilized_round: int | None
    capped: bool
    max_steps: int
    trace: tuple[SaturationStep, ...] = field(default=(), repr=False)

    def level(self, cls: ClassId) -> float:
        return self.levels[cls]

    @property
    def all_finite(self) -> bool:
        return all(v != INFINITY for v in self.levels.values())

    @property
    def max_finite(self) -> float:
        finite = [v for v in self.levels.values() if v != INFINITY]
        return max(finite) if finite else 0


def gaps(times: Iterable[int]) -> list[tuple[int, int]]:
    """All maximal gaps of a set of integers, as (start, length) pairs.

    A gap of length s at a is an integer interval [a, a+s+1] meeting the set
    exactly in its endpoints.  Output is sorted by a.
    """
    values = sorted(set(int(t) for t in times))
    out: list[tuple[int, int]] = []
    for lo, hi in zip(values, values[1:]):
        if hi - lo >= 2:
            out.append((lo, hi - lo - 1))
    return out


@dataclass(frozen=True)
class SpectrumReport:
    """Finite generation times over a candidate family, with gap analysis."""

    times: tuple[int, ...]
    gaps: tuple[tuple[int, int], ...]
    rdim: int | None
    udim: int | None
    generator_count: int
    per_generator: tuple[tuple[tuple[ClassId, ...], float], ...]

    @staticmethod
    def from_results(
        results: Iterable[tuple[tuple[ClassId, ...], float]]
    ) -> SpectrumReport:
        rows = tuple(results)
        finite = sorted({int(t) for _, t in rows if t != INFINITY})
        return SpectrumReport(
            times=tuple(finite),
            gaps=tuple(gaps(finite)),
            rdim=finite[0] if finite else None,
            udim=finite[-1] if finite else None,
            generator_count=len(rows),
            per_generator=rows,
        )
