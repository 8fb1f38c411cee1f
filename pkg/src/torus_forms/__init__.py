"""Exact quadratic-form, unitary-group and coinvariant computations
over the Laurent group ring Z[t, t^-1]."""

from .errors import (
    BadParameters,
    DimensionMismatch,
    NotAUnit,
    NotWellDefined,
    OutOfRange,
    SearchExhausted,
    SingularForm,
    TorusFormsError,
    UnknownGroup,
    UsageError,
    WindowOverflow,
    WrongParity,
)
from .laurent import FormParameter, LaurentPoly, bar, min_witness, param_membership, unit_decompose
from .snf import AbelianGroup, cokernel, map_on_cokernels, smith_normal_form
from .quadratic import QuadraticModule, QuotientClass, hyperbolize, named_form, shaneson_image
from .unitary import (
    BlockMatrix,
    GeneratorSpec,
    det_splitting,
    elementary_generators,
    membership_by_conditions,
    membership_by_form,
    random_word,
    sigma_block,
    sigma_factorization_check,
)
from .whitehead import (
    HomotopyHom,
    RawBracket,
    WhiteheadElement,
    lemma_equivalence_check,
    normalize,
    phi_omega_defect,
    rho_k,
    rho_kernel_cokernel,
)
from .coinvariants import (
    CoinvariantResult,
    SymTensorModule,
    coinvariants_H,
    coinvariants_S,
    lambda_invariant,
    phi_invariant,
)
from .frobenius import (
    CoveringMap,
    FrobeniusModule,
    frobenius_on_coinvariants,
    no_tame_submodule,
    tame_criterion_check,
    truncated_torsion_module,
)
from .tables import (
    GradedQVector,
    bp_order,
    ehp_case,
    gw_rational,
    l_symmetric_table,
    mttheta_rational_homotopy,
    stable_stem,
    theorem_a_report,
    theorem_b_report,
)

__version__ = "0.1.0"
