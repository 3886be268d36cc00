"""Exact computations with finite Coxeter groups, their word rewriting and joint spectra."""

from .coxeter import (
    CoxeterSystem,
    WordError,
    content,
    lex_leq,
    lex_less,
    parse_system,
    parse_word,
    signature,
    typeA,
    typeB,
    typeD,
    typeI,
)
from .ctilde import CtildeElement, ClassLabel, class_label, faithful_check, mul
from .groups import (
    DihedralElement,
    EnumerationCapError,
    FiniteGroupTable,
    SignedPermutation,
    conjugacy_classes,
    conjugator_search,
    enumerate_group,
    eval_word,
    realize_generator,
    regular_representation,
)
from .polyalg import MultiPoly, Pencil, charpoly, pencil_det, tchebyshev
from .reps import Character, Representation, character, direct_sum, equivalent, irrep_table
from .rewrite import (
    EchelonForm,
    PatternMismatch,
    RewriteTrace,
    Step,
    apply_step,
    echelon_conjugacy_merge,
    is_echelon,
    tent_word,
    to_echelon,
    verify_tent_identities,
)
from .spectra import (
    DihedralSpectrumReport,
    SpectrumPolynomial,
    alpha_candidates,
    bivariate_slice,
    compare_spectra,
    curve_identity_check,
    decompose_involution_pair,
    dihedral_report,
    joint_spectrum,
    proper_spectrum,
    signature_trace_sum,
    verify_relation_chebyshev,
)

__version__ = "0.1.0"
