"""Universal Bezout certificates for the unit-content form of Gauss's Lemma.

If ``sum a_i A_i = 1`` and ``sum b_j B_j = 1`` in a commutative ring, the
polynomials ``c_k`` built here satisfy ``sum c_k C_k = 1`` where ``C_k`` are
the coefficients of ``(sum A_i X^i)(sum B_j X^j)``.
"""
from .certificate import (
    Certificate,
    CertificateGrid,
    GridKey,
    StepTrace,
    aux_d,
    aux_e,
    base_cert_m0,
    base_cert_n0,
    big_c,
    gauss_a,
    gauss_b,
    generate,
    generate_with_trace,
    step,
)
from .multipoly import (
    Monomial,
    Poly,
    ResourceLimitError,
    TermLimitError,
    VarRef,
    degree_in_family,
    poly_const,
    poly_eval,
    poly_parse,
    poly_render,
    poly_var,
    set_term_limit,
    term_limit,
)
from .ring import RingCtx, RingValue, ext_gcd_chain
from .specialize import (
    SpecializationResult,
    WitnessedSeq,
    convolve,
    random_instance,
    specialize_certificate,
    witness_integers,
    witness_mod_n,
)
from .verify import (
    DegreeReport,
    VerifyReport,
    audit_degrees,
    check_comparisons,
    swap_certificate,
    verify_identity,
)

__version__ = "0.1.0"
