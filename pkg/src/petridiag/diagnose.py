"""Exact and order-dropping (efficient) diagnosers, and precision checking.

The exact diagnoser explains every prefix of the observation under the
ordered semantics. The efficient diagnoser explains every prefix as an
unordered multiset and latches fault detection: once a prefix is certain,
the rest of the trace is reported as certain.
"""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import BudgetExceeded, ConfigurationError
from .explain import (
    DEFAULT_BUDGET,
    Explanation,
    SearchBudget,
    explain_multiset,
    explain_ordered,
)
from .net import NetSystem, TransitionId, enabled_set, fire
from .observation import Observation, prefixes, to_multiset


class Verdict(str, enum.Enum):
    NO_FAULT = "NO_FAULT"
    FAULT_POSSIBLE = "FAULT_POSSIBLE"
    FAULT_CERTAIN = "FAULT_CERTAIN"
    NO_EXPLANATION = "NO_EXPLANATION"

    def __str__(self):
        return self.value


class Mode(str, enum.Enum):
    EXACT = "EXACT"
    EFFICIENT = "EFFICIENT"

    def __str__(self):
        return self.value


def verdict_of(explanations: Sequence[Explanation]) -> Verdict:
    if not explanations:
        return Verdict.NO_EXPLANATION
    faulty = sum(1 for e in explanations if e.contains_fault)
    if faulty == len(explanations):
        return Verdict.FAULT_CERTAIN
    if faulty == 0:
        return Verdict.NO_FAULT
    return Verdict.FAULT_POSSIBLE


@dataclass(frozen=True)
class PrefixDiagnosis:
    index: int
    observation: Observation
    explanations: tuple[Explanation, ...]
    verdict: Verdict

    @property
    def n_explanations(self) -> int:
        return len(self.explanations)

    @property
    def n_faulty(self) -> int:
        return sum(1 for e in self.explanations if e.contains_fault)

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "observation": list(self.observation.names),
            "explanations": [list(e.names) for e in self.explanations],
            "n_explanations": self.n_explanations,
            "n_faulty": self.n_faulty,
            "verdict": self.verdict.value,
        }


@dataclass(frozen=True)
class DiagnosisTrace:
    """Per-prefix verdicts for one observation.

    ``anomalous`` is set when an efficient trace latched certainty at some
    prefix and a later prefix, taken alone, was not certain.
    """

    mode: Mode
    observation: Observation
    per_prefix: tuple[PrefixDiagnosis, ...]
    final: Verdict
    anomalous: bool = False

    @property
    def first_certain(self) -> int | None:
        for p in self.per_prefix:
            if p.verdict is Verdict.FAULT_CERTAIN:
                return p.index
        return None

    def to_dict(self) -> dict:
        return {
            "mode": self.mode.value,
            "observation": list(self.observation.names),
            "per_prefix": [p.to_dict() for p in self.per_prefix],
            "final": self.final.value,
            "first_certain": self.first_certain,
            "anomalous": self.anomalous,
        }


def _require_diagnosable(net: NetSystem) -> None:
    report = net.structure
    if not report.acyclic:
        raise ConfigurationError(
            "unobservable subnet has a cycle: " + " -> ".join(report.cycle)
        )
    if report.fault_count == 0:
        raise ConfigurationError("net has no fault transition")
    if report.unknown:
        raise ConfigurationError("; ".join(report.unknown))


def _as_observation(net: NetSystem, o) -> Observation:
    if isinstance(o, Observation):
        return o
    return net.observation(o)


def diagnose_exact(
    net: NetSystem, o, budget: SearchBudget | None = None
) -> DiagnosisTrace:
    _require_diagnosable(net)
    o = _as_observation(net, o)
    rows = []
    for i, oi in enumerate(prefixes(o)):
        expl = explain_ordered(net, oi, budget)
        rows.append(PrefixDiagnosis(i, oi, expl, verdict_of(expl)))
    # certainty must persist along prefixes (prefix closure of explanations)
    certain = False
    for row in rows:
        if certain and row.verdict not in (Verdict.FAULT_CERTAIN, Verdict.NO_EXPLANATION):
            raise AssertionError(
                f"exact certainty reverted at prefix {row.index} of {o}"
            )
        certain = certain or row.verdict is Verdict.FAULT_CERTAIN
    return DiagnosisTrace(Mode.EXACT, o, tuple(rows), rows[-1].verdict)


def diagnose_efficient(
    net: NetSystem, o, budget: SearchBudget | None = None
) -> DiagnosisTrace:
    _require_diagnosable(net)
    o = _as_observation(net, o)
    rows = []
    for i, oi in enumerate(prefixes(o)):
        expl = explain_multiset(net, to_multiset(oi), budget)
        rows.append(PrefixDiagnosis(i, oi, expl, verdict_of(expl)))
    latched, anomalous = False, False
    for row in rows:
        if latched and row.verdict is not Verdict.FAULT_CERTAIN:
            anomalous = True
        latched = latched or row.verdict is Verdict.FAULT_CERTAIN
    final = Verdict.FAULT_CERTAIN if latched else rows[-1].verdict
    return DiagnosisTrace(Mode.EFFICIENT, o, tuple(rows), final, anomalous)


def compare(
    net: NetSystem, o, budget: SearchBudget | None = None
) -> tuple[DiagnosisTrace, DiagnosisTrace]:
    return diagnose_exact(net, o, budget), diagnose_efficient(net, o, budget)


# -- precision checking --------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    """A prefix at which the exact diagnoser is certain and the efficient one is not."""

    run: tuple[TransitionId, ...]
    observation: Observation
    exact: Verdict
    efficient: Verdict

    def to_dict(self) -> dict:
        return {
            "run": [t.name for t in self.run],
            "observation": list(self.observation.names),
            "exact": self.exact.value,
            "efficient": self.efficient.value,
        }


@dataclass(frozen=True)
class UndetectedRun:
    """A faulty behaviour never diagnosed inside the explored window."""

    observation: Observation
    fault_after: int

    def to_dict(self) -> dict:
        return {"observation": list(self.observation.names), "fault_after": self.fault_after}


@dataclass(frozen=True)
class PrecisionReport:
    """Outcome of :func:`precision_check`.

    ``detection_delay`` is the smallest ``k`` such that every faulty
    behaviour whose fault fires after ``j`` observed events, with
    ``j + k <= bound``, is diagnosed by the exact diagnoser within ``k``
    further observed events. It is ``None`` when no fault can occur or when
    no such ``k`` exists.
    """

    bound: int
    imprecise_witnesses: tuple[Witness, ...]
    diagnosable_within_bound: bool
    detection_delay: int | None
    observations_explored: int = 0
    undetected: tuple[UndetectedRun, ...] = field(default=())

    @property
    def precise(self) -> bool:
        return not self.imprecise_witnesses

    def to_dict(self) -> dict:
        return {
            "bound": self.bound,
            "delay_metric": "observable events after the fault firing",
            "detection_delay": self.detection_delay,
            "diagnosable_within_bound": self.diagnosable_within_bound,
            "imprecise_witnesses": [w.to_dict() for w in self.imprecise_witnesses],
            "observations_explored": self.observations_explored,
            "precise": self.precise,
            "undetected": [u.to_dict() for u in self.undetected],
        }


def _unobservable_closure(net, marking, fault_after, observed, limit):
    """States reachable from ``marking`` through unobservable firings only.

    Each state is ``(marking, fault_after)`` where ``fault_after`` is the
    number of observed events preceding the first fault firing, or None.
    """
    seen = {(marking, fault_after)}
    frontier = [(marking, fault_after, 0)]
    while frontier:
        m, fa, seg = frontier.pop()
        for t in sorted(enabled_set(net, m)):
            if net.labeling.is_observable(t):
                continue
            if seg >= limit:
                raise BudgetExceeded("max_unobs_segment", limit)
            nfa = fa
            if nfa is None and net.labeling.is_fault(t):
                nfa = observed
            state = (fire(net, m, t), nfa)
            if state not in seen:
                seen.add(state)
                frontier.append((state[0], nfa, seg + 1))
    return seen


def _explore(net: NetSystem, bound: int, limit: int):
    """Map every observation of length <= bound to its reachable states."""
    start = _unobservable_closure(net, net.initial, None, 0, limit)
    layers = {(): start}
    frontier = {(): start}
    for depth in range(bound):
        nxt: dict[tuple, set] = {}
        for obs, states in frontier.items():
            for m, fa in states:
                for t in sorted(enabled_set(net, m)):
                    if not net.labeling.is_observable(t):
                        continue
                    m2 = fire(net, m, t)
                    bucket = nxt.setdefault(obs + (t,), set())
                    bucket |= _unobservable_closure(net, m2, fa, depth + 1, limit)
        layers.update(nxt)
        frontier = nxt
    return layers


def _verdict_job(args):
    net, kind, events, budget = args
    if kind == "exact":
        expl = explain_ordered(net, Observation(events), budget)
    else:
        expl = explain_multiset(net, to_multiset(events), budget)
    run = expl[0].sequence if expl else ()
    return verdict_of(expl), run


def precision_check(
    net: NetSystem,
    bound: int,
    budget: SearchBudget | None = None,
    *,
    jobs: int = 1,
) -> PrecisionReport:
    """Compare both diagnosers on every observation of length <= ``bound``.

    Observations are generated from the net's reachable behaviour and
    deduplicated. The report is only returned when the exploration finished;
    budget exhaustion raises :class:`~petridiag.errors.BudgetExceeded`.
    """
    if bound < 1:
        raise ValueError("bound must be positive")
    budget = budget or DEFAULT_BUDGET
    report = net.structure
    if not report.acyclic:
        raise ConfigurationError(
            "unobservable subnet has a cycle: " + " -> ".join(report.cycle)
        )
    limit = budget.unobs_limit(net)
    layers = _explore(net, bound, limit)
    if report.fault_count == 0:
        # certainty is impossible without a fault transition
        return PrecisionReport(bound, (), True, None, len(layers))

    observations = sorted(layers, key=lambda o: (len(o), o))
    multisets = sorted({to_multiset(o) for o in observations}, key=lambda m: m.items)
    jobs_in = [(net, "exact", o, budget) for o in observations]
    jobs_in += [(net, "multiset", tuple(_expand(ms)), budget) for ms in multisets]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_verdict_job, jobs_in, chunksize=16))
    else:
        results = [_verdict_job(j) for j in jobs_in]
    exact = dict(zip(observations, results[: len(observations)]))
    efficient = {ms: r[0] for ms, r in zip(multisets, results[len(observations):])}

    witnesses = []
    for o in observations:
        v_exact, run = exact[o]
        if v_exact is not Verdict.FAULT_CERTAIN:
            continue
        latched = any(
            efficient[to_multiset(o[:i])] is Verdict.FAULT_CERTAIN
            for i in range(len(o) + 1)
        )
        if not latched:
            witnesses.append(
                Witness(run, Observation(o), v_exact, efficient[to_multiset(o)])
            )

    # faulty behaviours that cannot be extended inside the window
    maximal = set()
    for o, states in layers.items():
        for m, fa in states:
            if fa is None:
                continue
            if len(o) == bound or not enabled_set(net, m):
                maximal.add((o, fa))
    delays = {}
    for o, fa in maximal:
        d = None
        for i in range(fa, len(o) + 1):
            if exact[o[:i]][0] is Verdict.FAULT_CERTAIN:
                d = i - fa
                break
        delays[(o, fa)] = d

    delay = None
    diagnosable = True
    if delays:
        j_min = min(fa for _, fa in delays)
        delay = next(
            (
                k
                for k in range(0, bound - j_min + 1)
                if all(fa + k > bound or (d is not None and d <= k)
                       for (_, fa), d in delays.items())
            ),
            None,
        )
        diagnosable = delay is not None
    undetected = tuple(
        UndetectedRun(Observation(o), fa)
        for (o, fa), d in sorted(delays.items(), key=lambda kv: (len(kv[0][0]), kv[0]))
        if d is None
    )
    return PrecisionReport(
        bound=bound,
        imprecise_witnesses=tuple(witnesses),
        diagnosable_within_bound=diagnosable,
        detection_delay=delay,
        observations_explored=len(observations),
        undetected=undetected,
    )


def _expand(ms) -> Iterable[TransitionId]:
    for t, n in ms.items:
        yield from [t] * n
