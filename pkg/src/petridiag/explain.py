"""Enumerate the firing sequences that explain an observation.

Two semantics are offered. :func:`explain_ordered` keeps the order of the
observed events; :func:`explain_multiset` only keeps how many times each
observable transition fired. An explanation always stops at its last
observable firing, so the empty observation has the single explanation
``()``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from . import _kernel
from .errors import ConfigurationError
from .net import NetSystem, TransitionId
from .observation import Observation, ObservationMultiset, to_multiset


class Explanation(NamedTuple):
    sequence: tuple[TransitionId, ...]
    contains_fault: bool = False

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(t.name for t in self.sequence)

    def __str__(self):
        return "[" + ",".join(self.names) + "]"


@dataclass(frozen=True)
class SearchBudget:
    """Safety limits for the explanation search.

    ``max_unobs_segment`` caps consecutive unobservable firings; ``None``
    means ten times the number of places of the net being searched.
    """

    max_unobs_segment: int | None = None
    max_explanations: int = 100_000

    def __post_init__(self):
        if self.max_unobs_segment is not None and self.max_unobs_segment < 1:
            raise ValueError("max_unobs_segment must be positive")
        if self.max_explanations < 1:
            raise ValueError("max_explanations must be positive")

    def unobs_limit(self, net: NetSystem) -> int:
        if self.max_unobs_segment is not None:
            return self.max_unobs_segment
        return max(1, 10 * len(net.places))


DEFAULT_BUDGET = SearchBudget()


def _require_acyclic(net: NetSystem) -> None:
    report = net.structure
    if not report.acyclic:
        raise ConfigurationError(
            "unobservable subnet has a cycle: " + " -> ".join(report.cycle)
        )


def _wrap(net: NetSystem, raw: Iterable[tuple[int, ...]]) -> tuple[Explanation, ...]:
    ids = [t.id for t in net.transitions].__getitem__
    fault = net.dense.fault.__getitem__
    return tuple(
        Explanation(tuple(map(ids, s)), any(map(fault, s))) for s in sorted(raw)
    )


def explain_ordered(
    net: NetSystem,
    o: Observation | Iterable,
    budget: SearchBudget | None = None,
    *,
    require_acyclic: bool = True,
) -> tuple[Explanation, ...]:
    """All explanations whose projection is exactly ``o``, sorted by index.

    An observation no run can produce yields an empty tuple.
    """
    budget = budget or DEFAULT_BUDGET
    if require_acyclic:
        _require_acyclic(net)
    if not isinstance(o, Observation):
        o = net.observation(o)
    d = net.dense
    target = tuple(t.index for t in o)
    raw = _kernel.active.explain(
        d.pre, d.post, d.initial, d.observable, target, True,
        budget.unobs_limit(net), budget.max_explanations,
    )
    return _wrap(net, raw)


def explain_multiset(
    net: NetSystem,
    ms: ObservationMultiset | Observation | Iterable,
    budget: SearchBudget | None = None,
    *,
    require_acyclic: bool = True,
) -> tuple[Explanation, ...]:
    """All explanations whose projection is some ordering of ``ms``."""
    budget = budget or DEFAULT_BUDGET
    if require_acyclic:
        _require_acyclic(net)
    if not isinstance(ms, ObservationMultiset):
        if not isinstance(ms, Observation):
            ms = net.observation(ms)
        ms = to_multiset(ms)
    d = net.dense
    counts = [0] * len(net.transitions)
    for t, n in ms.items:
        t = net.tid(t)
        if not d.observable[t.index]:
            raise ConfigurationError(f"transition {t.name!r} is not observable")
        counts[t.index] = n
    raw = _kernel.active.explain(
        d.pre, d.post, d.initial, d.observable, tuple(counts), False,
        budget.unobs_limit(net), budget.max_explanations,
    )
    return _wrap(net, raw)


def enumerate_runs(net: NetSystem, max_len: int) -> tuple[tuple[TransitionId, ...], ...]:
    """Every sequence fireable from the initial marking with length <= ``max_len``."""
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    d = net.dense
    ids = [t.id for t in net.transitions].__getitem__
    raw = _kernel.active.enumerate_runs(d.pre, d.post, d.initial, max_len)
    return tuple(tuple(map(ids, s)) for s in raw)
