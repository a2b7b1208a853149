"""Model-agnostic engine: level saturation, ghost-chain search, generation
time and spectrum enumeration.

Levels are computed two independent ways.  Cone saturation closes the
generator under cones of single basis morphisms round by round and yields an
upper bound witness; the exact value is the longest chain of ghost basis
morphisms with nonzero composite (Ghost Lemma, both directions, for Ext-finite
categories with indecomposable chain nodes).  `tritime` runs both and raises
InternalConsistencyError on any disagreement instead of picking a side.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Sequence

from .errors import (
    InternalConsistencyError,
    InvalidGeneratorError,
    InvalidPolicyError,
    NonTerminatingChainError,
    ResourceCapError,
)
from .model import CategoryModel
from .objects import (
    INFINITY,
    ClassId,
    GeneratorSet,
    GhostChainState,
    LevelTable,
    SaturationStep,
    ShiftedIndec,
    SpectrumReport,
    gaps,
)

__all__ = [
    "saturate_levels",
    "ghost_chain_longest",
    "ghost_chain_witness",
    "tritime",
    "orlov_spectrum",
    "all_subset_generators",
    "gaps",
]


def _gen_classes(model: CategoryModel, gens) -> frozenset[ClassId]:
    classes = gens.classes if isinstance(gens, GeneratorSet) else frozenset(gens)
    if not classes:
        raise InvalidGeneratorError("generator set must be nonempty")
    known = set(model.class_ids())
    unknown = classes - known
    if unknown:
        raise InvalidGeneratorError(
            f"unknown generator classes for {model.name}: {sorted(map(str, unknown))}"
        )
    return classes


def default_max_steps(model: CategoryModel) -> int:
    # Generous over the Loewy-length bound on finite generation times.
    return 4 * len(model.class_ids())


def saturate_levels(model: CategoryModel, gens, max_steps: int | None = None) -> LevelTable:
    """Round-by-round cone closure of the generator; levels are upper bounds,
    and exact for models that declare `exact_for_levels`.

    One round adjoins every summand class of a cone over a basis morphism
    between a reached class and a generator class (either direction, any
    relative shift).  Classes not reached once the closure stabilizes are at
    level INFINITY.
    """
    if max_steps is None:
        max_steps = default_max_steps(model)
    if max_steps < 0:
        raise InvalidGeneratorError(f"max_steps must be >= 0, got {max_steps}")
    classes = _gen_classes(model, gens)
    gen_list = sorted(classes)
    levels: dict[ClassId, float] = {c: 0 for c in gen_list}
    trace: list[SaturationStep] = []
    frontier = list(gen_list)
    total = len(model.class_ids())
    # Levels are monotone in the round count, so the closure is stable as soon
    # as everything is reached or a round adds nothing.
    stabilized: int | None = 0 if len(levels) == total else None
    rounds = 0
    while stabilized is None and rounds < max_steps:
        rounds += 1
        new = model.cone_step(levels, frontier, gen_list)
        if not new:
            stabilized = rounds - 1
            break
        for cls, via in sorted(new.items(), key=lambda kv: str(kv[0])):
            levels[cls] = rounds
            assert levels[via] == rounds - 1
            trace.append(SaturationStep(new_class=cls, round=rounds, via=via))
        if len(levels) == total:
            stabilized = rounds
            break
        frontier = sorted(new)
    capped = stabilized is None
    full = {c: levels.get(c, INFINITY) for c in model.class_ids()}
    return LevelTable(
        levels=full,
        stabilized_round=stabilized,
        capped=capped,
        max_steps=max_steps,
        trace=tuple(trace),
    )


def _as_start(model: CategoryModel, start) -> ClassId:
    if isinstance(start, ShiftedIndec):
        return model.class_of(model.normalize(start).indec)
    if start in model.class_ids():
        return start
    return model.class_of(start)


def _search_longest(space, state: GhostChainState, memo, active) -> int:
    hit = memo.get(state)
    if hit is not None:
        return hit
    if state in active:
        raise NonTerminatingChainError(
            f"ghost-chain state revisited with nonzero composite: {state}; "
            "the generator is not a strong generator or the model data is inconsistent"
        )
    active.add(state)
    best = 0
    for nxt in space.successors(state):
        length = 1 + _search_longest(space, nxt, memo, active)
        if length > best:
            best = length
    active.discard(state)
    memo[state] = best
    return best


def ghost_chain_longest(model: CategoryModel, gens, start) -> int:
    """Length of the longest chain of ghost basis morphisms out of `start`
    with nonzero composite; equals the level of `start` when finite.

    Raises NonTerminatingChainError if a state repeats with nonzero composite,
    which signals that `gens` is not a strong generator.
    """
    classes = _gen_classes(model, gens)
    space = model.ghost_search(classes)
    cls = _as_start(model, start)
    member = model.class_members(cls)[0]
    return _search_longest(space, space.initial(member), {}, set())


def ghost_chain_witness(model: CategoryModel, gens, start) -> list[GhostChainState]:
    """One longest ghost chain as a list of states (excluding the start)."""
    classes = _gen_classes(model, gens)
    space = model.ghost_search(classes)
    cls = _as_start(model, start)
    memo: dict[GhostChainState, int] = {}
    state = space.initial(model.class_members(cls)[0])
    _search_longest(space, state, memo, set())
    chain: list[GhostChainState] = []
    while True:
        target = memo[state] - 1
        if memo[state] == 0:
            return chain
        for nxt in space.successors(state):
            if memo.get(nxt) == target:
                chain.append(nxt)
                state = nxt
                break
        else:  # pragma: no cover - would contradict the memo values
            raise InternalConsistencyError("witness reconstruction failed")


def _ghost_values(model: CategoryModel, classes: frozenset[ClassId]) -> dict[ClassId, int]:
    batch = getattr(model, "ghost_longest_batch", None)
    if batch is not None:
        return batch(classes)
    return {c: ghost_chain_longest(model, classes, c) for c in model.class_ids()}


def tritime(model: CategoryModel, gens, max_steps: int | None = None) -> float:
    """Generation time of the generator set: INFINITY if it does not generate,
    else the common value of the saturation and ghost-chain computations."""
    classes = _gen_classes(model, gens)
    table = saturate_levels(model, classes, max_steps)
    if table.capped:
        raise ResourceCapError(
            f"cone closure did not stabilize within max_steps={table.max_steps}"
        )
    if not table.all_finite:
        return INFINITY
    ghost = _ghost_values(model, classes)
    for cls in model.class_ids():
        if ghost[cls] != table.levels[cls]:
            raise InternalConsistencyError(
                f"sandwich violation for {model.class_label(cls)} with generator "
                f"{model.labels(classes)}: ghost chain gives {ghost[cls]}, "
                f"cone saturation gives {table.levels[cls]}"
            )
    return max(int(v) for v in table.levels.values())


def all_subset_generators(model: CategoryModel) -> list[frozenset[ClassId]]:
    """Default candidate policy: every nonempty subset of the orbit classes.

    For the built-in models every generator is equivalent, up to shifts and
    summand closure, to such a subset.
    """
    ids = sorted(model.class_ids())
    out: list[frozenset[ClassId]] = []
    for r in range(1, len(ids) + 1):
        out.extend(frozenset(c) for c in itertools.combinations(ids, r))
    return out


def _spectrum_chunk(args) -> list[float]:
    model, candidates = args
    return [tritime(model, cand) for cand in candidates]


def orlov_spectrum(
    model: CategoryModel,
    candidates: Sequence[Iterable[ClassId]] | None = None,
    jobs: int = 1,
) -> SpectrumReport:
    """Finite generation times over a family of candidate generators.

    Candidates default to all nonempty subsets of orbit classes.  With
    jobs > 1 the candidates fan out across processes; results are merged in
    candidate order, so the report does not depend on the worker count.
    """
    if candidates is None:
        candidates = all_subset_generators(model)
    cand_list = [frozenset(c) for c in candidates]
    if not cand_list:
        raise InvalidPolicyError("candidate family is empty")
    if jobs > 1 and len(cand_list) > 1:
        chunk = max(1, len(cand_list) // (4 * jobs))
        parts = [cand_list[i : i + chunk] for i in range(0, len(cand_list), chunk)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunked = pool.map(_spectrum_chunk, [(model, part) for part in parts])
        times = [t for part in chunked for t in part]
    else:
        times = [tritime(model, cand) for cand in cand_list]
    rows = [
        (tuple(sorted(cand)), t) for cand, t in zip(cand_list, times)
    ]
    return SpectrumReport.from_results(rows)
