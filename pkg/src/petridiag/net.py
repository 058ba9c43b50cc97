"""Ordinary Petri nets: structure, markings and the token game.

All arcs have weight one, so pre- and post-sets are plain sets of places.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

from .errors import DisabledTransitionError, NetStructureError
from .observation import Labeling, Observation


class PlaceId(NamedTuple):
    index: int
    name: str


class TransitionId(NamedTuple):
    index: int
    name: str


TransitionRef = Union[TransitionId, str]
FiringSequence = tuple  # tuple[TransitionId, ...]


@dataclass(frozen=True)
class Transition:
    id: TransitionId
    pre: frozenset[PlaceId]
    post: frozenset[PlaceId]

    @property
    def name(self) -> str:
        return self.id.name


class Marking:
    """Sparse, immutable token assignment. Absent places hold zero tokens."""

    __slots__ = ("_counts", "_hash")

    def __init__(self, counts: Mapping[PlaceId, int] | None = None):
        clean = {}
        for p, n in (counts or {}).items():
            if n < 0:
                raise NetStructureError(f"negative token count {n} in {p.name!r}")
            if n:
                clean[p] = int(n)
        self._counts = dict(sorted(clean.items()))
        self._hash = None

    def __getitem__(self, p: PlaceId) -> int:
        return self._counts.get(p, 0)

    def items(self):
        return self._counts.items()

    @property
    def support(self) -> frozenset[PlaceId]:
        return frozenset(self._counts)

    def total(self) -> int:
        return sum(self._counts.values())

    def by_name(self) -> dict[str, int]:
        return {p.name: n for p, n in self._counts.items()}

    def __le__(self, other: Marking) -> bool:
        return all(n <= other[p] for p, n in self._counts.items())

    def __eq__(self, other):
        if not isinstance(other, Marking):
            return NotImplemented
        return self._counts == other._counts

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._counts.items()))
        return self._hash

    def __repr__(self):
        body = ", ".join(f"{p.name}:{n}" for p, n in self._counts.items())
        return "{" + body + "}"


@dataclass(frozen=True)
class NetSystem:
    """A Petri net with an initial marking and a transition labeling.

    Build instances with :meth:`build` unless you already hold ids.
    """

    places: tuple[PlaceId, ...]
    transitions: tuple[Transition, ...]
    initial: Marking
    labeling: Labeling = field(default_factory=Labeling)

    def __post_init__(self):
        object.__setattr__(self, "places", tuple(self.places))
        object.__setattr__(self, "transitions", tuple(self.transitions))
        _check_ids(self.places, "place")
        _check_ids([t.id for t in self.transitions], "transition")
        declared = set(self.places)
        for t in self.transitions:
            if not t.pre:
                raise NetStructureError(f"transition {t.name!r} has an empty pre-set")
            stray = (t.pre | t.post) - declared
            if stray:
                raise NetStructureError(
                    f"transition {t.name!r} references undeclared places "
                    f"{sorted(p.name for p in stray)}"
                )
        stray = self.initial.support - declared
        if stray:
            raise NetStructureError(
                f"initial marking references undeclared places "
                f"{sorted(p.name for p in stray)}"
            )

    @classmethod
    def build(
        cls,
        places: Sequence[str],
        transitions: Sequence[tuple[str, Iterable[str], Iterable[str]]],
        initial: Mapping[str, int],
        observable: Iterable[str] = (),
        fault: Iterable[str] = (),
    ) -> NetSystem:
        """Construct a net from names.

        ``transitions`` holds ``(name, pre_places, post_places)`` triples in
        declaration order; declaration order fixes the indices.
        """
        pids = {name: PlaceId(i, name) for i, name in enumerate(places)}
        if len(pids) != len(places):
            raise NetStructureError("duplicate place name")

        def resolve(names, owner):
            try:
                return frozenset(pids[n] for n in names)
            except KeyError as exc:
                raise NetStructureError(
                    f"transition {owner!r} references unknown place {exc.args[0]!r}"
                ) from None

        trans = []
        for i, (name, pre, post) in enumerate(transitions):
            trans.append(
                Transition(TransitionId(i, name), resolve(pre, name), resolve(post, name))
            )
        try:
            m0 = Marking({pids[p]: n for p, n in initial.items()})
        except KeyError as exc:
            raise NetStructureError(
                f"initial marking references unknown place {exc.args[0]!r}"
            ) from None
        return cls(
            tuple(pids.values()),
            tuple(trans),
            m0,
            Labeling(frozenset(observable), frozenset(fault)),
        )

    # -- lookups -----------------------------------------------------------

    @cached_property
    def _place_by_name(self) -> dict[str, PlaceId]:
        return {p.name: p for p in self.places}

    @cached_property
    def _transition_by_name(self) -> dict[str, Transition]:
        return {t.name: t for t in self.transitions}

    def place(self, name: str) -> PlaceId:
        try:
            return self._place_by_name[name]
        except KeyError:
            raise NetStructureError(f"unknown place {name!r}") from None

    def transition(self, ref: TransitionRef) -> Transition:
        """Resolve a transition by name or id."""
        if isinstance(ref, TransitionId):
            if 0 <= ref.index < len(self.transitions):
                t = self.transitions[ref.index]
                if t.id == ref:
                    return t
            raise NetStructureError(f"unknown transition {ref!r}")
        try:
            return self._transition_by_name[ref]
        except KeyError:
            raise NetStructureError(f"unknown transition {ref!r}") from None

    def tid(self, ref: TransitionRef) -> TransitionId:
        return self.transition(ref).id

    def sequence(self, refs: Iterable[TransitionRef]) -> tuple[TransitionId, ...]:
        return tuple(self.tid(r) for r in refs)

    def marking(self, counts: Mapping[str, int]) -> Marking:
        return Marking({self.place(p): n for p, n in counts.items()})

    def observation(self, refs: Iterable[TransitionRef]) -> Observation:
        """Build an observation, rejecting unobservable events."""
        events = self.sequence(refs)
        for t in events:
            if not self.labeling.is_observable(t):
                raise NetStructureError(f"transition {t.name!r} is not observable")
        return Observation(events)

    @property
    def observable_ids(self) -> tuple[TransitionId, ...]:
        return tuple(t.id for t in self.transitions if self.labeling.is_observable(t.id))

    @property
    def fault_ids(self) -> tuple[TransitionId, ...]:
        return tuple(t.id for t in self.transitions if self.labeling.is_fault(t.id))

    @cached_property
    def structure(self) -> StructureReport:
        return check_structure(self)

    @cached_property
    def dense(self) -> DenseNet:
        """Index-based view consumed by the search kernels."""
        index = {p: i for i, p in enumerate(self.places)}
        return DenseNet(
            pre=tuple(tuple(sorted(index[p] for p in t.pre)) for t in self.transitions),
            post=tuple(tuple(sorted(index[p] for p in t.post)) for t in self.transitions),
            initial=tuple(self.initial[p] for p in self.places),
            observable=tuple(self.labeling.is_observable(t.id) for t in self.transitions),
            fault=tuple(self.labeling.is_fault(t.id) for t in self.transitions),
        )


class DenseNet(NamedTuple):
    pre: tuple[tuple[int, ...], ...]
    post: tuple[tuple[int, ...], ...]
    initial: tuple[int, ...]
    observable: tuple[bool, ...]
    fault: tuple[bool, ...]


def _check_ids(ids, kind):
    for i, x in enumerate(ids):
        if x.index != i:
            raise NetStructureError(f"{kind} {x.name!r} has index {x.index}, expected {i}")
    names = [x.name for x in ids]
    if len(set(names)) != len(names):
        raise NetStructureError(f"duplicate {kind} name")


# -- token game --------------------------------------------------------------


def is_enabled(net: NetSystem, m: Marking, t: TransitionRef) -> bool:
    tr = net.transition(t)
    return all(m[p] >= 1 for p in tr.pre)


def fire(net: NetSystem, m: Marking, t: TransitionRef, *, step: int = 0) -> Marking:
    """Return the marking reached by firing ``t`` at ``m``; ``m`` is untouched."""
    tr = net.transition(t)
    if not all(m[p] >= 1 for p in tr.pre):
        raise DisabledTransitionError(tr.id, m, step)
    counts = dict(m.items())
    for p in tr.pre:
        counts[p] -= 1
    for p in tr.post:
        counts[p] = counts.get(p, 0) + 1
    return Marking(counts)


def fire_sequence(
    net: NetSystem, m: Marking, s: Iterable[TransitionRef]
) -> Marking:
    for k, t in enumerate(s):
        m = fire(net, m, t, step=k)
    return m


def enabled_set(net: NetSystem, m: Marking) -> frozenset[TransitionId]:
    return frozenset(t.id for t in net.transitions if all(m[p] >= 1 for p in t.pre))


# -- structure ---------------------------------------------------------------


@dataclass(frozen=True)
class StructureReport:
    acyclic: bool
    cycle: tuple[str, ...] | None
    fault_count: int
    unknown: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        """True when the net satisfies every precondition of diagnosis."""
        return self.acyclic and self.fault_count >= 1 and not self.unknown

    @property
    def findings(self) -> list[str]:
        out = []
        if not self.acyclic:
            out.append("unobservable subnet has a cycle: " + " -> ".join(self.cycle))
        if self.fault_count == 0:
            out.append("no fault transition declared")
        out.extend(self.unknown)
        return out

    def to_dict(self) -> dict:
        return {
            "acyclic": self.acyclic,
            "cycle": list(self.cycle) if self.cycle else None,
            "fault_count": self.fault_count,
            "unknown": list(self.unknown),
            "ok": self.ok,
        }


def check_structure(net: NetSystem) -> StructureReport:
    """Check the unobservable subnet for cycles and audit the labeling.

    The graph has places and unobservable transitions as nodes, with the
    arcs of unobservable transitions as edges. A witness cycle is returned
    as alternating node names, first node repeated at the end.
    """
    names = {t.name for t in net.transitions}
    unknown = tuple(
        f"labeling references unknown transition {n!r}"
        for n in sorted((net.labeling.observable | net.labeling.fault) - names)
    )
    fault_count = sum(1 for t in net.transitions if net.labeling.is_fault(t.id))

    succ: dict[object, list] = {p: [] for p in net.places}
    for t in net.transitions:
        if net.labeling.is_observable(t.id):
            continue
        succ[t.id] = sorted(t.post)
        for p in sorted(t.pre):
            succ[p].append(t.id)

    cycle = _find_cycle(net.places, succ)
    return StructureReport(
        acyclic=cycle is None,
        cycle=tuple(x.name for x in cycle) if cycle else None,
        fault_count=fault_count,
        unknown=unknown,
    )


def _find_cycle(roots, succ):
    WHITE, GREY, BLACK = 0, 1, 2
    color = {v: WHITE for v in succ}
    for root in roots:
        if color[root] != WHITE:
            continue
        path = [root]
        stack = [iter(succ[root])]
        color[root] = GREY
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                color[path.pop()] = BLACK
                stack.pop()
            elif color[nxt] == GREY:
                return path[path.index(nxt):] + [nxt]
            elif color[nxt] == WHITE:
                color[nxt] = GREY
                path.append(nxt)
                stack.append(iter(succ[nxt]))
    return None
