"""Finite Stone-style dualities between Boolean algebras, right-hand skew
Boolean algebras, Boolean sets (presheaves) and etale spaces."""

from .balg import (
    BAHom,
    FilterSet,
    FinBooleanAlgebra,
    FinMeetSemilattice,
    extend_filter_avoiding_ideal,
    is_proper_hom,
    powerset_balg,
    rel_complement,
    separating_ultrafilter,
    stone_map,
    ultrafilters,
    validate_bahom,
    validate_balg,
    validate_meet_semilattice,
)
from .bset import (
    BooleanSet,
    BSetMorphism,
    Presheaf,
    RightNormalBand,
    band_to_presheaf,
    bs_bullet,
    bs_circ,
    bs_order,
    bs_setminus,
    bset_isomorphic,
    bset_struct_eq,
    compatible,
    constant_bset,
    from_skew,
    generate_boolean_set,
    is_boolean_band,
    is_covering_sieve,
    presheaf_to_band,
    sheaf_condition,
    to_skew,
    validate_band,
    validate_boolean_set,
    validate_bset_morphism,
    validate_presheaf,
)
from .duality import (
    BSetUltrafilter,
    EtaleIso,
    bset_double_dual,
    bset_to_etale,
    bset_ultrafilters,
    check_functor_laws_bset,
    check_functor_laws_relational,
    check_meet_partial_correspondence,
    check_meets_vs_hausdorff,
    check_topology,
    dual_of_bset_morphism,
    dual_of_relational,
    etale_double_dual,
    ultrafilters_containing,
)
from .etale import (
    FinEtaleSpace,
    LocalSection,
    RelationalMorphism,
    construct_section,
    dual_bset,
    join_sections,
    make_section,
    restrict_section,
    sections_over,
    validate_etale,
    validate_relational_morphism,
)
from .skew import (
    SkewAlgebra,
    SkewMorphism,
    check_consequences,
    gamma_classes,
    is_wedge_algebra,
    is_wedge_morphism,
    meet,
    natural_leq,
    skew_rel_complement,
    skew_struct_eq,
    validate_skew,
    validate_skew_morphism,
)
from .textio import Document, Stanza, build, parse, print_document
