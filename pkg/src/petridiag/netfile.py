"""JSON net documents (``*.net.json``, schema version "1").

Example::

    {
      "schema_version": "1",
      "places": [{"name": "p0"}, {"name": "p1"}],
      "transitions": [
        {"name": "t", "pre": ["p0"], "post": ["p1"],
         "observable": true, "fault": false}
      ],
      "initial_marking": {"p0": 1}
    }
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .errors import NetFormatError, NetStructureError
from .net import NetSystem

SCHEMA_VERSION = "1"

FIXTURES = {"fig1": "fig1.net.json"}


def _fail(code, msg):
    raise NetFormatError(code, msg)


def _expect(cond, code, msg):
    if not cond:
        _fail(code, msg)


def parse_net(text: str) -> NetSystem:
    """Parse and validate a net document.

    The returned net carries its structure report as ``net.structure``.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise NetFormatError("E_SYNTAX", exc.msg, exc.lineno, exc.colno) from None

    _expect(isinstance(doc, dict), "E_SCHEMA", "document must be a JSON object")
    unknown_keys = set(doc) - {"schema_version", "places", "transitions", "initial_marking"}
    _expect(not unknown_keys, "E_SCHEMA", f"unknown keys {sorted(unknown_keys)}")
    _expect(
        doc.get("schema_version") == SCHEMA_VERSION,
        "E_VERSION",
        f"unsupported schema_version {doc.get('schema_version')!r}",
    )
    places = doc.get("places")
    _expect(isinstance(places, list), "E_SCHEMA", "'places' must be a list")
    names = []
    for p in places:
        _expect(
            isinstance(p, dict) and set(p) == {"name"} and isinstance(p["name"], str),
            "E_SCHEMA",
            f"bad place entry {p!r}",
        )
        names.append(p["name"])
    _expect(len(set(names)) == len(names), "E_DUPLICATE_NAME", "duplicate place name")
    declared = set(names)

    transitions = doc.get("transitions", [])
    _expect(isinstance(transitions, list), "E_SCHEMA", "'transitions' must be a list")
    triples, observable, fault, tnames = [], [], [], []
    for t in transitions:
        _expect(isinstance(t, dict), "E_SCHEMA", f"bad transition entry {t!r}")
        extra = set(t) - {"name", "pre", "post", "observable", "fault"}
        _expect(not extra, "E_SCHEMA", f"unknown transition keys {sorted(extra)}")
        name = t.get("name")
        _expect(isinstance(name, str), "E_SCHEMA", f"transition without name: {t!r}")
        pre, post = t.get("pre", []), t.get("post", [])
        for arcs in (pre, post):
            _expect(
                isinstance(arcs, list) and all(isinstance(a, str) for a in arcs),
                "E_SCHEMA",
                f"arcs of {name!r} must be lists of place names",
            )
            _expect(len(set(arcs)) == len(arcs), "E_SCHEMA",
                    f"repeated arc on transition {name!r} (arc weights are 1)")
            for a in arcs:
                _expect(a in declared, "E_UNKNOWN_PLACE",
                        f"transition {name!r} references unknown place {a!r}")
        _expect(bool(pre), "E_EMPTY_PRESET", f"transition {name!r} has an empty pre-set")
        obs, flt = t.get("observable", False), t.get("fault", False)
        _expect(isinstance(obs, bool) and isinstance(flt, bool), "E_SCHEMA",
                f"flags of {name!r} must be booleans")
        _expect(not (obs and flt), "E_OBSERVABLE_FAULT",
                f"fault transition must be unobservable ({name!r})")
        triples.append((name, pre, post))
        tnames.append(name)
        if obs:
            observable.append(name)
        if flt:
            fault.append(name)
    _expect(len(set(tnames)) == len(tnames), "E_DUPLICATE_NAME", "duplicate transition name")

    initial = doc.get("initial_marking", {})
    _expect(isinstance(initial, dict), "E_SCHEMA", "'initial_marking' must be an object")
    for p, n in initial.items():
        _expect(p in declared, "E_UNKNOWN_PLACE", f"initial marking names unknown place {p!r}")
        _expect(isinstance(n, int) and not isinstance(n, bool), "E_SCHEMA",
                f"token count for {p!r} must be an integer")
        _expect(n >= 0, "E_NEGATIVE_COUNT", f"negative token count for {p!r}")

    try:
        net = NetSystem.build(names, triples, initial, observable, fault)
    except NetStructureError as exc:
        raise NetFormatError("E_STRUCTURE", str(exc)) from None
    net.structure  # attach the report
    return net


def net_to_document(net: NetSystem) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "places": [{"name": p.name} for p in net.places],
        "transitions": [
            {
                "name": t.name,
                "pre": [p.name for p in sorted(t.pre)],
                "post": [p.name for p in sorted(t.post)],
                "observable": net.labeling.is_observable(t.id),
                "fault": net.labeling.is_fault(t.id),
            }
            for t in net.transitions
        ],
        "initial_marking": net.initial.by_name(),
    }


def serialize_net(net: NetSystem) -> str:
    """Canonical text: declared order for lists, fixed key order, one
    place or transition per line."""
    doc = net_to_document(net)

    def dump(x):
        return json.dumps(x, separators=(", ", ": "))

    def block(items):
        if not items:
            return "[]"
        return "[\n" + ",\n".join("    " + dump(x) for x in items) + "\n  ]"

    return (
        "{\n"
        f'  "schema_version": {dump(doc["schema_version"])},\n'
        f'  "places": {block(doc["places"])},\n'
        f'  "transitions": {block(doc["transitions"])},\n'
        f'  "initial_marking": {dump(doc["initial_marking"])}\n'
        "}\n"
    )


def load_net(path: str | Path) -> NetSystem:
    """Read a net file; ``builtin:<name>`` loads a bundled fixture."""
    path = str(path)
    if path.startswith("builtin:"):
        return load_fixture(path.split(":", 1)[1])
    return parse_net(Path(path).read_text(encoding="utf-8"))


def fixture_text(name: str = "fig1") -> str:
    try:
        fname = FIXTURES[name]
    except KeyError:
        raise NetFormatError("E_FIXTURE", f"no bundled fixture named {name!r}") from None
    return resources.files("petridiag").joinpath("fixtures", fname).read_text("utf-8")


def load_fixture(name: str = "fig1") -> NetSystem:
    return parse_net(fixture_text(name))
