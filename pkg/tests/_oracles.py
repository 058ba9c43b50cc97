"""Brute-force reference computations, independent of the search kernels."""

from collections import Counter, defaultdict

from petridiag import Verdict, enabled_set, fire, project


def brute_runs(net, max_len):
    """Token-game DFS over ``net.fire``; every fireable sequence up to max_len."""
    out = [()]

    def go(m, seq):
        if len(seq) == max_len:
            return
        for t in sorted(enabled_set(net, m)):
            s = seq + (t,)
            out.append(s)
            go(fire(net, m, t), s)

    go(net.initial, ())
    return out


def ends_observable(net, run):
    return not run or net.labeling.is_observable(run[-1])


def projector(net):
    """Fast equivalent of ``project(net.labeling, run).events`` for bulk use."""
    observable = {t.id for t in net.transitions if t.name in net.labeling.observable}
    return lambda run: tuple(t for t in run if t in observable)


def explanations_by_observation(net, runs):
    """Group runs that end with an observable firing by their projection."""
    proj = projector(net)
    groups = defaultdict(set)
    for r in runs:
        if ends_observable(net, r):
            groups[proj(r)].add(r)
    return groups


def multiset_key(events):
    return frozenset(Counter(events).items())


def explanations_by_multiset(net, runs):
    groups = defaultdict(set)
    for obs, rs in explanations_by_observation(net, runs).items():
        groups[multiset_key(obs)] |= rs
    return groups


def verdict_from_runs(net, runs):
    if not runs:
        return Verdict.NO_EXPLANATION
    faulty = [any(net.labeling.is_fault(t) for t in r) for r in runs]
    if all(faulty):
        return Verdict.FAULT_CERTAIN
    if not any(faulty):
        return Verdict.NO_FAULT
    return Verdict.FAULT_POSSIBLE


def brute_detection_delay(net, bound, slack):
    """Largest delay (observed events after the fault) before exact certainty,
    over faulty runs whose observation reaches ``bound`` events.

    ``slack`` is the number of unobservable firings a run may contain; runs
    up to ``bound + slack`` transitions are enumerated. Returns (delay,
    all_detected).
    """
    runs = brute_runs(net, bound + slack)
    groups = explanations_by_observation(net, runs)
    worst, all_detected = None, True
    for r in runs:
        obs = project(net.labeling, r).events
        if len(obs) != bound or not ends_observable(net, r):
            continue
        faults = [i for i, t in enumerate(r) if net.labeling.is_fault(t)]
        if not faults:
            continue
        j = len(project(net.labeling, r[: faults[0]]))
        d = next(
            (i - j for i in range(j, bound + 1)
             if verdict_from_runs(net, groups.get(obs[:i], ())) is Verdict.FAULT_CERTAIN),
            None,
        )
        if d is None:
            all_detected = False
        else:
            worst = d if worst is None else max(worst, d)
    return worst, all_detected


def sequence_checker(net):
    """Return ``ok(seq)``: fireable from the initial marking and ending
    observable. Plain integer token game over the transition objects."""
    index = {p: i for i, p in enumerate(net.places)}
    pre = {t.id: [index[p] for p in t.pre] for t in net.transitions}
    post = {t.id: [index[p] for p in t.post] for t in net.transitions}
    m0 = [net.initial[p] for p in net.places]

    def ok(seq):
        if not ends_observable(net, seq):
            return False
        m = list(m0)
        for t in seq:
            for p in pre[t]:
                if m[p] == 0:
                    return False
                m[p] -= 1
            for p in post[t]:
                m[p] += 1
        return True

    return ok
