"""Exact computational algebra for Weyl groups of possibly disconnected
reductive groups: invariant subspaces, adapted degrees and semistability
under change of group, and instability stratifications of linearized torus
actions. All arithmetic is rational and exact."""

from .errors import (
    CapExceeded,
    DimensionMismatch,
    GroupMismatch,
    InvariantBroken,
    NonAbelianIdentityComponent,
    NotASubgroup,
    NotPositiveDefinite,
    SeedNotPD,
    ValidationError,
    WeylstabError,
)
from .linalg import DEFAULT_CLOSURE_CAP, MatrixGroup, QMat, QSubspace, QVec, qmat, qvec
from .rootdata import (
    ComponentAction,
    GroupData,
    InvariantNorm,
    ParabolicData,
    RootDatum,
    central_cocharacters,
    connected_weyl_group,
    contragredient,
    dual_character,
    dual_gram,
    invariant_norm,
    levi_subgroup_data,
    make_group,
    make_root_datum,
    parabolic,
    rational_characters,
    trace_character,
    trace_form,
    trace_form_kernel,
    trivial_components,
    weyl_group,
)
from .changegroup import (
    DestabilizingWitness,
    HomData,
    RationalDegree,
    compose_hom,
    degrees_equivalent,
    destabilizing_witness,
    is_adapted,
    make_degree,
    make_hom,
    push_degree,
    weyl_of_subgroup,
)
from .bundles import (
    Destabilizer,
    LeviInducedBundle,
    SplitBundle,
    adjoint_degrees,
    adjoint_semistable,
    canonical_destabilizer,
    filtration_weight,
    filtration_weight_decomposed,
    levi_induced_semistable,
    make_levi_bundle,
    make_split_bundle,
    split_semistable,
    split_semistable_bruteforce,
)
from .kirwan import (
    DEFAULT_PATTERN_CAP,
    DEFAULT_SUBSET_CAP,
    LinearizedAction,
    StratumData,
    candidate_strata,
    hilbert_mumford_weight,
    instability,
    is_polystable,
    is_semistable,
    is_stable,
    make_action,
    stratify_supports,
    verify_recursion,
)

__version__ = "0.1.0"
