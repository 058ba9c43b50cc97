"""Transition labeling, projection of runs and prefix/multiset views.

Transitions are referred to by :class:`~petridiag.net.TransitionId`; the
labeling itself stores transition *names* so it can be written before the
net it belongs to exists.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Iterator, Sequence

from .errors import NetStructureError

if TYPE_CHECKING:
    from .net import TransitionId


@dataclass(frozen=True)
class Labeling:
    """Observable and fault transition names.

    Every transition not listed as observable is unobservable. Fault
    transitions must be unobservable.
    """

    observable: frozenset[str] = frozenset()
    fault: frozenset[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "observable", frozenset(self.observable))
        object.__setattr__(self, "fault", frozenset(self.fault))
        clash = self.observable & self.fault
        if clash:
            raise NetStructureError(
                f"fault transition must be unobservable: {sorted(clash)}"
            )

    def is_observable(self, t: TransitionId) -> bool:
        return t.name in self.observable

    def is_fault(self, t: TransitionId) -> bool:
        return t.name in self.fault


@dataclass(frozen=True)
class Observation:
    """An ordered sequence of observable transition firings."""

    events: tuple[TransitionId, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))

    def __len__(self):
        return len(self.events)

    def __iter__(self) -> Iterator[TransitionId]:
        return iter(self.events)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Observation(self.events[i])
        return self.events[i]

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(t.name for t in self.events)

    def __str__(self):
        return "[" + ",".join(self.names) + "]"


@dataclass(frozen=True)
class ObservationMultiset:
    """Order-free view of an observation: transition -> positive count.

    ``items`` is kept sorted by transition index so equal multisets compare
    and hash equal.
    """

    items: tuple[tuple[TransitionId, int], ...] = ()

    def __post_init__(self):
        merged: Counter = Counter()
        for t, n in self.items:
            if n < 0:
                raise ValueError(f"negative count for {t.name!r}")
            merged[t] += n
        object.__setattr__(
            self, "items", tuple(sorted((t, n) for t, n in merged.items() if n))
        )

    @classmethod
    def of(cls, events: Iterable[TransitionId]) -> ObservationMultiset:
        return cls(tuple(Counter(events).items()))

    def __getitem__(self, t: TransitionId) -> int:
        for u, n in self.items:
            if u == t:
                return n
        return 0

    def __len__(self):
        return sum(n for _, n in self.items)

    def as_dict(self) -> dict[str, int]:
        return {t.name: n for t, n in self.items}

    def __str__(self):
        return "{" + ", ".join(f"{t.name}:{n}" for t, n in self.items) + "}"


def project(labeling: Labeling, s: Iterable[TransitionId]) -> Observation:
    """Drop unobservable transitions from ``s``, keeping order."""
    return Observation(tuple(t for t in s if labeling.is_observable(t)))


def prefixes(o: Observation | Sequence[TransitionId]) -> list[Observation]:
    """Return ``[o_0, o_1, ..., o_n]`` with ``o_0`` empty."""
    events = tuple(o)
    return [Observation(events[:i]) for i in range(len(events) + 1)]


def to_multiset(o: Observation | Sequence[TransitionId]) -> ObservationMultiset:
    return ObservationMultiset.of(o)
