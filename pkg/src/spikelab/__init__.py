"""Exact matroid computation for echidnas, t-spikes and the extremal procedures around them."""
from .bits import elements_of, mask_of
from .connectivity import connectivity_lambda, is_n_connected
from .constructions import (
    ModularCutSpec,
    derived_matroid,
    elongation,
    extend_by_modular_cut,
    free_coextension,
    free_extension,
    is_modular_cut,
    named_matroid,
    truncation,
    uniform,
    wheel,
    whirl,
)
from .extremal import (
    SetFamily,
    bound,
    disjoint_circuits,
    disjoint_cocircuits_2t,
    profile_circuit_search,
    small_structure_audit,
    sunflower_extract,
    trapped_circuit,
)
from .isomorphism import are_isomorphic
from .matroid import Matroid, direct_sum, dual, from_circuits, minor, validate_circuit_axioms
from .report import AuditReport
from .spikes import (
    ArmPartition,
    ArmUnion,
    Broad,
    SpikeCertificate,
    audit_spike,
    classify_circuit,
    extend_echidna,
    find_spike_partition,
    has_property,
    is_t_echidna,
    is_t_spike,
    make_spike,
    one_spike,
    spike_down,
    spike_up,
    tip_extension,
)

__version__ = "0.1.0"
