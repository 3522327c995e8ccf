import json

import pytest

from conftest import random_poly
from gausscert.certificate import generate
from gausscert.serialize import (
    FormatError,
    cert_from_json,
    cert_to_json,
    dump_certificate,
    load_certificate,
    load_instance,
    poly_from_json,
    poly_to_json,
)


def test_poly_json_shape():
    from gausscert.multipoly import poly_parse

    assert poly_to_json(poly_parse("1 - a0*A0^2")) == [
        {"coeff": "1", "monomial": []},
        {"coeff": "-1", "monomial": [["a", 0, 1], ["A", 0, 2]]},
    ]


def test_poly_json_round_trip(rng):
    for _ in range(100):
        p = random_poly(rng, max_coeff=10**40)
        assert poly_from_json(json.loads(json.dumps(poly_to_json(p)))) == p


@pytest.mark.parametrize("key", [(0, 0), (1, 1), (2, 1), (2, 2)])
def test_formats_agree(key):
    cert = generate(*key)
    from_json = load_certificate(dump_certificate(cert, "json"))
    from_text = load_certificate(dump_certificate(cert, "text"))
    assert from_json == cert == from_text


def test_text_format_base_case():
    assert dump_certificate(generate(0, 0), "text") == (
        "m = 0\nn = 0\nalpha = 1\nbeta = a0*A0\nc0 = a0*b0\n"
    )


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d.pop("alpha"),
        lambda d: d["c"].pop(),
        lambda d: d.update(m=-1),
        lambda d: d["alpha"].append({"coeff": 3, "monomial": []}),
        lambda d: d["alpha"].append({"coeff": "3", "monomial": [["x", 0, 1]]}),
        lambda d: d["alpha"].append({"coeff": "3", "monomial": [["a", 0, 1], ["a", 0, 2]]}),
    ],
)
def test_bad_json_rejected(mutate):
    data = cert_to_json(generate(1, 1))
    mutate(data)
    with pytest.raises(FormatError):
        cert_from_json(data)


def test_truncated_and_bad_text():
    text = dump_certificate(generate(1, 1), "json")
    with pytest.raises(FormatError):
        load_certificate(text[: len(text) // 2])
    with pytest.raises(FormatError):
        load_certificate("m = 0\nn = 0\nalpha = 1\nbeta = a0*\nc0 = a0*b0\n")
    with pytest.raises(FormatError):
        load_certificate("m = 0\nn = 0\nalpha = 1\n")


def test_instance_files():
    wa, wb = load_instance(json.dumps({"modulus": 6, "A": [2, 3], "a": [-1, 1], "B": [3, 4], "b": [-1, 1]}))
    assert wa.ctx.modulus == 6 and len(wb) == 2
    wa, _ = load_instance(json.dumps({"modulus": "Z", "A": [2, 3], "a": [-1, 1], "B": [1], "b": [1]}))
    assert wa.ctx.is_integers
    for bad in [
        {"modulus": 1, "A": [1], "a": [1], "B": [1], "b": [1]},
        {"modulus": 6, "A": [2, 4], "a": [1, 1], "B": [1], "b": [1]},
        {"modulus": 6, "A": [1], "a": [1], "B": [1]},
    ]:
        with pytest.raises(FormatError):
            load_instance(json.dumps(bad))
    with pytest.raises(FormatError):
        load_instance("{")
