"""Para-orthogonal polynomials on the unit circle from a three-term recurrence with chain-sequence coefficients."""

from .chainseq import analyze, is_positive_chain, maximal_params, minimal_params, wall_from_terms, wall_sppcs_test
from .errors import (
    ConsistencyError,
    DomainError,
    Inconclusive,
    InvalidArgument,
    JNonexistence,
    LemmaViolation,
    NotAChainSequence,
    NotSelfInversive,
    PopucError,
    PVDivergence,
    SingularTransform,
    VerblunskyBound,
    ZeroIsolationError,
)
from .indexed import IndexedSeq
from .measures import (
    MeasureIntegrals,
    MomentTable,
    QuadratureRule,
    l_orthogonality_check,
    moment_table,
    nu_table,
    pv_integral,
    quadrature_hat,
    quadrature_tilde,
    t_from_I,
)
from .polycore import ComplexPoly, derivative, hyp2f1_terminating, pochhammer, star
from .recurrence import RecurrencePair, a_hat, determinant_un, gamma_sequence, generate_rq, values_at_one
from .transforms import (
    Dg1Data,
    VerblunskySeq,
    dg1_from_opuc,
    dg_symmetric_coeffs,
    divergence_series,
    opuc_from_dg1,
    opuc_tilde_from_dg2,
    rho_tau_sequence,
    szego_polys,
    t_family,
    weight_transform_forward,
    weight_transform_inverse,
)
from .zeros import ZeroSet, dg_transform, find_zeros, interlaces, wronskian_check, zero_levels

__version__ = "0.1.0"
