"""Exact computations with spike matroids over prime fields.

A spike of rank n is assembled from n three-point lines through a common
tip.  Over GF(p) every representable spike is captured, up to weak
equivalence, by a diagonal of nonzero residues; the dependent transversals
of that diagonal (its *signature*) decide which circuit-hyperplanes exist
and, through an integer certificate, over which characteristics the same
matroid can be represented at all.
"""

from .bitsets import indices_from_mask, iter_submasks, mask_from_indices, popcount
from .errors import (
    BudgetExceededError,
    CompositeModulusError,
    DependentTransversalError,
    InconclusiveError,
    MismatchedModulusError,
    MismatchedShapeError,
    NoCircuitHyperplaneError,
    NonSquareError,
    NotInSignatureError,
    NoWitnessError,
    OutOfRangeError,
    RankDeficientError,
    SpikeLabError,
    TooLargeError,
    TooSmallError,
    ZeroEntryError,
    ZeroInverseError,
)
from .field import MAX_MODULUS, FieldElem, PrimeField, balanced_lift, inv, is_prime, make_field
from .matrix import (
    BasisFamily,
    MatrixGF,
    basis_family,
    det,
    ones_plus_diag,
    rank,
    spike_det,
    verify_det_identity,
)
from .represent import (
    CharCertificate,
    CharVerdict,
    IntegerDiagonal,
    InverseIntegerDiagonal,
    LinearFact,
    build_certificate,
    characteristic_set,
    construct_char_only,
    construct_multichar,
    estimate_L,
    find_rep_over,
    propagate_facts,
    search_rep,
    threshold_interval,
    uniqueness_audit,
)
from .spikes import (
    Diagonal,
    Signature,
    SpikeRep,
    build_rep,
    canonical_form,
    change_basis_standardize,
    check_axioms,
    circuit_hyperplane,
    default_labels,
    enumerate_spikes,
    is_dependent_transversal,
    normalize,
    orbit,
    signature,
    spike_census,
    swap,
    swap_closure,
    weakly_equivalent,
)
from .zerosum import (
    ZeroSumInstance,
    subset_with_sum,
    verify_lemma_2_1,
    verify_lemma_2_2,
    zero_sum_subset,
)

__version__ = "1.0.0"

__all__ = [
    "BasisFamily",
    "BudgetExceededError",
    "CharCertificate",
    "CharVerdict",
    "CompositeModulusError",
    "DependentTransversalError",
    "Diagonal",
    "FieldElem",
    "InconclusiveError",
    "IntegerDiagonal",
    "InverseIntegerDiagonal",
    "LinearFact",
    "MAX_MODULUS",
    "MatrixGF",
    "MismatchedModulusError",
    "MismatchedShapeError",
    "NoCircuitHyperplaneError",
    "NonSquareError",
    "NotInSignatureError",
    "NoWitnessError",
    "OutOfRangeError",
    "PrimeField",
    "RankDeficientError",
    "Signature",
    "SpikeLabError",
    "SpikeRep",
    "TooLargeError",
    "TooSmallError",
    "ZeroEntryError",
    "ZeroInverseError",
    "ZeroSumInstance",
    "balanced_lift",
    "basis_family",
    "build_certificate",
    "build_rep",
    "canonical_form",
    "change_basis_standardize",
    "characteristic_set",
    "check_axioms",
    "circuit_hyperplane",
    "construct_char_only",
    "construct_multichar",
    "default_labels",
    "det",
    "enumerate_spikes",
    "estimate_L",
    "find_rep_over",
    "indices_from_mask",
    "inv",
    "is_dependent_transversal",
    "is_prime",
    "iter_submasks",
    "make_field",
    "mask_from_indices",
    "normalize",
    "ones_plus_diag",
    "orbit",
    "popcount",
    "propagate_facts",
    "rank",
    "search_rep",
    "signature",
    "spike_census",
    "spike_det",
    "subset_with_sum",
    "swap",
    "swap_closure",
    "threshold_interval",
    "uniqueness_audit",
    "verify_det_identity",
    "verify_lemma_2_1",
    "verify_lemma_2_2",
    "weakly_equivalent",
    "zero_sum_subset",
]
