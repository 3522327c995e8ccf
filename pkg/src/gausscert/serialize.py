"""On-disk formats: certificate JSON/text and specialization instance files.

Certificate JSON::

    {"m": 1, "n": 1,
     "alpha": PolyJSON, "beta": PolyJSON, "c": [PolyJSON, ...]}

where PolyJSON is a list of ``{"coeff": "<decimal>", "monomial": [["a", 0, 1], ...]}``
in rendering order.  Coefficients are strings so no reader has to guess an
integer width.

The text format is one ``name = polynomial`` line per part after ``m`` and
``n`` header lines.
"""
from __future__ import annotations

import json
import re
from typing import Any, Dict, List

from .certificate import Certificate, GridKey
from .multipoly import FAMILIES, Monomial, Poly, PolySyntaxError, poly_parse, poly_render, var_ref
from .ring import RingCtx
from .specialize import WitnessedSeq


class FormatError(ValueError):
    """A certificate or instance file does not match its schema."""


def poly_to_json(p: Poly) -> List[Dict[str, Any]]:
    return [
        {"coeff": str(c), "monomial": [[v.family, v.index, e] for v, e in mono.items()]}
        for mono, c in p.terms()
    ]


def poly_from_json(data) -> Poly:
    if not isinstance(data, list):
        raise FormatError("polynomial must be a list of terms")
    pairs = []
    for term in data:
        try:
            coeff = term["coeff"]
            mono = term["monomial"]
        except (TypeError, KeyError) as exc:
            raise FormatError(f"bad term {term!r}") from exc
        if not isinstance(coeff, str) or not re.fullmatch(r"-?\d+", coeff):
            raise FormatError(f"coefficient must be a decimal string, got {coeff!r}")
        exps = {}
        for entry in mono:
            if not (isinstance(entry, list) and len(entry) == 3):
                raise FormatError(f"bad monomial entry {entry!r}")
            fam, idx, e = entry
            if fam not in FAMILIES or not isinstance(idx, int) or not isinstance(e, int) or e < 1:
                raise FormatError(f"bad monomial entry {entry!r}")
            v = var_ref(fam, idx)
            if v in exps:
                raise FormatError(f"variable {v} repeated in monomial")
            exps[v] = e
        pairs.append((Monomial(exps), int(coeff)))
    return Poly.from_terms(pairs)


def cert_to_json(cert: Certificate) -> Dict[str, Any]:
    return {
        "m": cert.m,
        "n": cert.n,
        "alpha": poly_to_json(cert.alpha),
        "beta": poly_to_json(cert.beta),
        "c": [poly_to_json(ck) for ck in cert.c],
    }


def cert_from_json(data) -> Certificate:
    if not isinstance(data, dict):
        raise FormatError("certificate must be a JSON object")
    try:
        m, n = data["m"], data["n"]
        alpha, beta, cs = data["alpha"], data["beta"], data["c"]
    except KeyError as exc:
        raise FormatError(f"missing field {exc.args[0]!r}") from exc
    if not all(isinstance(x, int) and not isinstance(x, bool) and x >= 0 for x in (m, n)):
        raise FormatError("m and n must be nonnegative integers")
    if not isinstance(cs, list) or len(cs) != m + n + 1:
        raise FormatError(f"expected {m + n + 1} c-entries")
    return Certificate(
        GridKey(m, n),
        poly_from_json(alpha),
        poly_from_json(beta),
        tuple(poly_from_json(ck) for ck in cs),
    )


def cert_to_text(cert: Certificate) -> str:
    lines = [f"m = {cert.m}", f"n = {cert.n}"]
    lines += [f"{name} = {poly_render(p)}" for name, p in cert.parts()]
    return "\n".join(lines) + "\n"


def cert_from_text(text: str) -> Certificate:
    fields: Dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        name, sep, value = line.partition("=")
        if not sep:
            raise FormatError(f"line {lineno}: expected 'name = value'")
        name = name.strip()
        if name in fields:
            raise FormatError(f"line {lineno}: {name} given twice")
        fields[name] = value.strip()
    try:
        m, n = int(fields.pop("m")), int(fields.pop("n"))
    except (KeyError, ValueError) as exc:
        raise FormatError("missing or bad m/n header") from exc
    names = ["alpha", "beta"] + [f"c{k}" for k in range(m + n + 1)]
    if sorted(fields) != sorted(names):
        raise FormatError(f"expected parts {names}, got {sorted(fields)}")
    try:
        polys = [poly_parse(fields[name]) for name in names]
    except PolySyntaxError as exc:
        raise FormatError(str(exc)) from exc
    return Certificate(GridKey(m, n), polys[0], polys[1], tuple(polys[2:]))


def dump_certificate(cert: Certificate, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(cert_to_json(cert), indent=1) + "\n"
    if fmt == "text":
        return cert_to_text(cert)
    raise ValueError(f"unknown format {fmt!r}")


def load_certificate(text: str) -> Certificate:
    """Read either format; JSON is recognised by a leading ``{``."""
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON: {exc}") from exc
        return cert_from_json(data)
    return cert_from_text(text)


def load_instance(text: str):
    """Parse ``{"modulus": n | "Z", "A": [...], "a": [...], "B": [...], "b": [...]}``."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise FormatError("instance must be a JSON object")
    modulus = data.get("modulus", "Z")
    if modulus == "Z":
        ctx = RingCtx.integers()
    elif isinstance(modulus, int) and not isinstance(modulus, bool) and modulus >= 2:
        ctx = RingCtx(modulus)
    else:
        raise FormatError(f'modulus must be an integer >= 2 or "Z", got {modulus!r}')
    seqs = {}
    for name in ("A", "a", "B", "b"):
        vals = data.get(name)
        if not isinstance(vals, list) or not vals:
            raise FormatError(f"field {name!r} must be a nonempty list")
        try:
            seqs[name] = [int(v) for v in vals]
        except (TypeError, ValueError) as exc:
            raise FormatError(f"field {name!r} must hold integers") from exc
    try:
        wa = WitnessedSeq(ctx, tuple(seqs["A"]), tuple(seqs["a"]))
        wb = WitnessedSeq(ctx, tuple(seqs["B"]), tuple(seqs["b"]))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    return wa, wb
