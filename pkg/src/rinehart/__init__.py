"""Exact symbolic computation for Laurent-Grassmann derivation algebras,
their smash products, and tensor modules, with zero-tolerance
verification suites over Gaussian rationals."""

from .glmatrix import GlMatrix, gl_bracket
from .glmodules import (
    GlModule,
    MuVector,
    direct_sum,
    natural_module,
    rep_check,
    weight_decompose,
    zero_action_module,
)
from .parser import ParseError, format_element, parse_element, parse_scalar_literal
from .scalars import Scalar
from .smash import (
    SmashElement,
    make_X,
    psi_map,
    smash_commutator,
    tau,
    theta_project,
    x_decompose,
)
from .superpoly import (
    Signature,
    SuperPoly,
    WeightVector,
    derive,
    filt_degree,
    shift_basis,
    splus_part,
)
from .tensorqp import (
    LoopTensor,
    QPStructure,
    TensorVec,
    degree_zero_basis,
    full_to_loop,
    induced_gl_module,
    operator_identity_check,
    loop_a_act,
    loop_g_act,
    loop_smash_act,
    loop_to_full,
    omega_extract,
    omega_greedy,
    phi_operator,
    phi_rep,
    qp_apply,
    qp_axiom_check,
    qp_axiom_suite,
    rho_of,
    shen_act,
    t_act,
    t_act_gens,
    theta_map,
    theta_transport,
    tprime_weight,
)
from .vectorfields import (
    LoopElement,
    QPElement,
    VectorField,
    degree_field,
    loop_apply_to_poly,
    loop_bracket,
    loop_der_correspond,
    qp_bracket,
    qp_product,
    special_partial,
    vf_apply,
    vf_bracket,
    weight_of,
)

__version__ = "0.1.0"
