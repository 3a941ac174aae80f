"""Exact knot Floer complex calculator: homological invariants and unknotting-type lower bounds."""

from .builders import (
    StaircaseData,
    alternating_model,
    example_12n404_summand,
    example_cable_2_3_2_neg1,
    example_neg_cable_2_3_2_neg3,
    example_sum_summand_C,
    figure_eight,
    square,
    staircase,
    torus_alexander,
    torus_knot,
    unknot,
    virtual_Cij,
)
from .complex import (
    Arrow,
    Bigrading,
    KnotComplex,
    Monomial,
    dual,
    dump_complex,
    genus_upper,
    hat_specialize,
    infer_gradings,
    parse_complex,
    reduce,
    slice_complex,
    tensor,
    v_specialize,
    validate,
    w_map,
)
from .errors import CFKError, NotAKnotComplex, ValidationError
from .homology import (
    IdealSequence,
    hat_homology,
    ideal_sequence,
    knot_homology,
    nu_minus,
    stable_check,
    t_hat,
    t_minus,
    t_plus,
    t_pq_torsion,
    torsion_generators,
    torsion_profile,
)
from .invariants import (
    InvariantReport,
    MonomialIdeal,
    alt_lower,
    contains_check,
    ell_distance,
    ell_minus,
    ell_plus,
    frak_a,
    gordian_lower,
    ideal_of,
    torus_adjacency_check,
    torus_ideal_closed_form,
    unknotting_report,
)

__version__ = "0.1.0"
