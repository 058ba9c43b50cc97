from hypothesis import given
from hypothesis import strategies as st

from petridiag import (
    Labeling,
    Observation,
    ObservationMultiset,
    TransitionId,
    prefixes,
    project,
    to_multiset,
)

T = {n: TransitionId(i, n) for i, n in enumerate(["f", "u_1", "u_2", "A", "B", "C", "D", "E"])}
LABELS = Labeling(frozenset("ABCDE"), frozenset({"f"}))


def seq(*names):
    return tuple(T[n] for n in names)


def test_project_examples():
    assert project(LABELS, seq("f", "A", "B", "D", "E", "E")).names == ("A", "B", "D", "E", "E")
    assert project(LABELS, ()).events == ()
    assert project(LABELS, seq("u_1", "B", "A", "D")).names == ("B", "A", "D")


def test_prefixes_examples():
    assert [p.names for p in prefixes(Observation(seq("A", "B", "D")))] == [
        (), ("A",), ("A", "B"), ("A", "B", "D"),
    ]
    assert [p.names for p in prefixes(Observation())] == [()]
    assert [p.names for p in prefixes(Observation(seq("A", "A")))] == [(), ("A",), ("A", "A")]


def test_to_multiset_examples():
    assert to_multiset(Observation(seq("A", "B"))).as_dict() == {"A": 1, "B": 1}
    assert to_multiset(Observation()).as_dict() == {}
    ms = to_multiset(Observation(seq("E", "E", "A")))
    assert ms.as_dict() == {"A": 1, "E": 2}
    assert ms[T["E"]] == 2 and ms[T["B"]] == 0
    assert len(ms) == 3


def test_multiset_equality_ignores_construction_order():
    a = ObservationMultiset(((T["B"], 1), (T["A"], 2)))
    b = ObservationMultiset(((T["A"], 1), (T["B"], 1), (T["A"], 1)))
    assert a == b and hash(a) == hash(b)


sequences = st.lists(st.sampled_from(sorted(T.values())), max_size=12)
observable_only = st.lists(st.sampled_from([T[n] for n in "ABCDE"]), max_size=12)


@given(sequences)
def test_projection_length_accounting(s):
    o = project(LABELS, s)
    hidden = sum(1 for t in s if not LABELS.is_observable(t))
    assert len(o) + hidden == len(s)


@given(sequences)
def test_projection_idempotent(s):
    o = project(LABELS, s)
    assert project(LABELS, o.events) == o


@given(observable_only, st.randoms(use_true_random=False))
def test_multiset_permutation_invariant(events, rng):
    shuffled = list(events)
    rng.shuffle(shuffled)
    assert to_multiset(events) == to_multiset(shuffled)
    assert len(to_multiset(events)) == len(events)


@given(observable_only)
def test_prefixes_are_nested(events):
    ps = prefixes(Observation(tuple(events)))
    assert len(ps) == len(events) + 1
    for i in range(len(ps)):
        for j in range(i, len(ps)):
            assert ps[j].events[:i] == ps[i].events
