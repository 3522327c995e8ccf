from math import comb

import pytest

from gausscert.certificate import Certificate, base_cert_n0, generate, generate_with_trace
from gausscert.multipoly import poly_const, poly_parse
from gausscert.verify import (
    audit_degrees,
    check_comparisons,
    fast_precheck,
    residual,
    swap_certificate,
    swap_poly,
    verify_identity,
)

KEYS_5 = [(m, s - m) for s in range(6) for m in range(s + 1)]


def test_base_case_identity():
    rep = verify_identity(generate(0, 0))
    assert rep.ok and rep.residual.is_zero()


def test_tampered_certificate_residual():
    cert = generate(0, 0)
    bad = Certificate(cert.key, cert.alpha, cert.beta, (poly_const(0),))
    rep = verify_identity(bad)
    assert not rep.ok
    assert rep.residual == poly_parse("-a0*b0*A0*B0")


def test_fast_precheck():
    assert fast_precheck(generate(2, 2))
    cert = generate(1, 1)
    bad = Certificate(cert.key, cert.alpha, cert.beta, (cert.c[0], cert.c[1], poly_const(0)))
    assert not fast_precheck(bad)


def test_audit_base_m0():
    rep = audit_degrees(generate(0, 3))
    alpha = rep.parts[0]
    assert alpha.measured == dict.fromkeys("abAB", 0)
    assert rep.coarse_bound == 1 and rep.coarse_ok


def test_audit_11():
    cert, trace = generate_with_trace(1, 1)
    rep = audit_degrees(cert, trace)
    c2 = next(p for p in rep.parts if p.name == "c2")
    assert c2.measured == {"a": 2, "b": 2, "A": 1, "B": 1}
    assert c2.fine_bound == {"a": 2, "b": 2, "A": 1, "B": 1}
    assert rep.coarse_bound == 2 and rep.coarse_ok and rep.fine_ok
    assert {p.name for p in rep.parts} >= {"d", "e"}


@pytest.mark.parametrize("m", [1, 2, 4])
def test_audit_base_n0_alpha_exception(m):
    rep = audit_degrees(base_cert_n0(m))
    assert rep.coarse_ok
    assert not rep.interior
    assert "alpha:b" in rep.fine_exceptions() and "alpha:B" in rep.fine_exceptions()
    js = rep.to_json()
    assert "fine_base_case" in js and "fine_interior" not in js


@pytest.mark.parametrize("key", KEYS_5)
def test_degree_bounds(key):
    cert, trace = generate_with_trace(*key)
    rep = audit_degrees(cert, trace)
    N = comb(key[0] + key[1], key[0])
    assert rep.coarse_bound == N
    assert rep.coarse_ok
    if rep.interior:
        assert rep.fine_ok, rep.fine_exceptions()


def test_audit_rejects_foreign_trace():
    _, trace = generate_with_trace(1, 1)
    with pytest.raises(ValueError):
        audit_degrees(generate(2, 1), trace)


@pytest.mark.parametrize("m", range(1, 5))
@pytest.mark.parametrize("n", range(1, 5))
def test_comparisons(m, n):
    assert check_comparisons(m, n)


@pytest.mark.parametrize("key", [(0, 1), (1, 0), (0, 0)])
def test_comparisons_need_positive_indices(key):
    with pytest.raises(ValueError):
        check_comparisons(*key)


def test_swap_of_m0_is_n0():
    assert swap_certificate(generate(0, 1)) == base_cert_n0(1)


def test_swap_poly():
    assert swap_poly(poly_parse("a0*B2^3 - 5*A1*b3")) == poly_parse("b0*A2^3 - 5*B1*a3")


@pytest.mark.parametrize("key", [k for k in KEYS_5 if sum(k) <= 4])
def test_swap_involution_and_validity(key):
    cert = generate(*key)
    sw = swap_certificate(cert)
    assert sw.key == (key[1], key[0])
    assert swap_certificate(sw) == cert
    assert verify_identity(sw).ok


def test_residual_is_expansion():
    cert = generate(1, 2)
    assert residual(cert).is_zero()
