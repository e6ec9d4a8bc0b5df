"""cycsim: exact invariants deciding topological similarity of cyclic-group
representations.

The public surface re-exports the main types and decision procedures; see
the individual modules for the full APIs.
"""

from .errors import (
    CapacityExceeded,
    CycsimError,
    DomainError,
    InternalInvariantError,
    NotDivisible,
    NotInRtilde,
)
from .reps import (
    CyclicGroup,
    Irreducible,
    R_MINUS,
    R_PLUS,
    VirtualRep,
    cyclic_group,
    fixed_set,
    galois_twist,
    homotopy_equivalent,
    induce,
    inflate,
    isotropy_index,
    k_invariant,
    parse_rep,
    rep_from_record,
    rep_to_record,
    restrict,
    split_free_parts,
)
from .groupring import (
    CyclotomicElem,
    GroupRingElem,
    Involution,
    NON_ORIENTED,
    ORIENTED,
    TorsionUnit,
    cyclotomic_divide,
    cyclotomic_polynomial,
    even_support,
    galois,
    geom_quotient,
    poly_from_json,
    poly_from_text,
    poly_to_json,
    poly_to_text,
    project,
    quotient_from_weight_lists,
    reidemeister_quotient,
    tau_induced_check,
    u_one,
    unit_quotient_5powers,
    verify_condB_unit,
    verify_identity_gamma,
    verify_identity_v,
    verify_sigma_v_factorization,
)
from .tate import (
    C2Module,
    TateGroup,
    oliver_kernel_check,
    tate,
    tate_bruteforce,
    unit_subgroup_module,
)
from .normalinv import (
    CongruenceReport,
    WeightMultiset,
    a_prime_instance,
    a_prime_sweep,
    elementary_symmetric,
    k_invariant_order,
    kernel_generator_k,
    newton_power_sum,
    nu2_binomial,
    sum_sq_defect,
    sylow_kernel_test,
)
from .classify import (
    BasisCoords,
    RtLattice,
    SimilarityVerdict,
    StdBasis,
    WSummary,
    alpha,
    basis_element,
    beta,
    canonical_w_for,
    decide_similarity,
    decide_stable,
    enumerate_unstable,
    in_rt,
    order_in_rtop,
    parity_and_depth,
    parity_torsion_crosscheck,
    rt_lattice,
    rtop_presentation,
    std_basis,
    theta,
    to_coords,
)

__version__ = "0.1.0"
