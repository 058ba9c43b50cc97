"""Fault diagnosis of labelled Petri nets.

Two diagnosers are provided: an exact one that explains the observation
with its order preserved, and the prefix-incremental "efficient" one that
drops the order of observed events. :func:`precision_check` searches a net
for observations on which the second misses a fault the first detects.
"""

from ._kernel import backend_name
from .diagnose import (
    DiagnosisTrace,
    Mode,
    PrecisionReport,
    Verdict,
    Witness,
    compare,
    diagnose_efficient,
    diagnose_exact,
    precision_check,
)
from .errors import (
    BudgetExceeded,
    ConfigurationError,
    DisabledTransitionError,
    NetFormatError,
    NetStructureError,
    PetriDiagError,
)
from .explain import (
    Explanation,
    SearchBudget,
    enumerate_runs,
    explain_multiset,
    explain_ordered,
)
from .net import (
    Marking,
    NetSystem,
    PlaceId,
    StructureReport,
    Transition,
    TransitionId,
    check_structure,
    enabled_set,
    fire,
    fire_sequence,
    is_enabled,
)
from .netfile import load_fixture, load_net, parse_net, serialize_net
from .observation import (
    Labeling,
    Observation,
    ObservationMultiset,
    prefixes,
    project,
    to_multiset,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "ConfigurationError",
    "DiagnosisTrace",
    "DisabledTransitionError",
    "Explanation",
    "Labeling",
    "Marking",
    "Mode",
    "NetFormatError",
    "NetStructureError",
    "NetSystem",
    "Observation",
    "ObservationMultiset",
    "PetriDiagError",
    "PlaceId",
    "PrecisionReport",
    "SearchBudget",
    "StructureReport",
    "Transition",
    "TransitionId",
    "Verdict",
    "Witness",
    "backend_name",
    "check_structure",
    "compare",
    "diagnose_efficient",
    "diagnose_exact",
    "enabled_set",
    "enumerate_runs",
    "explain_multiset",
    "explain_ordered",
    "fire",
    "fire_sequence",
    "is_enabled",
    "load_fixture",
    "load_net",
    "parse_net",
    "precision_check",
    "prefixes",
    "project",
    "serialize_net",
    "to_multiset",
]
