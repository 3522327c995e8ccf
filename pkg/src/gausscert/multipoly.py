"""Sparse polynomials over ℤ in the four variable families a, b, A, B.

A monomial is packed into one nonnegative Python int: the exponent of the
variable ``(family, index)`` lives in the byte at slot ``4*index + rank``,
where ``rank`` is 0..3 for a, b, A, B.  Multiplying monomials is then integer
addition, and the degree in a family is a byte sum over a mask.  Exponents
are therefore capped at 255 per variable (checked, never silently wrapped).

Polys are immutable.  Every arithmetic result is normalized (no zero
coefficients) and checked against a global term-count guard.
"""
from __future__ import annotations

import contextlib
import re
from typing import Dict, Iterable, Iterator, Mapping, NamedTuple, Optional, Tuple

from .ring import RingCtx, RingValue

FAMILIES = ("a", "b", "A", "B")
_RANK = {f: r for r, f in enumerate(FAMILIES)}

_BITS = 8
_MAX_EXP = (1 << _BITS) - 1

DEFAULT_TERM_LIMIT = 10**7
_term_limit: Optional[int] = DEFAULT_TERM_LIMIT


class ResourceLimitError(RuntimeError):
    """A configured resource guard tripped."""


class TermLimitError(ResourceLimitError):
    def __init__(self, terms: int, limit: int):
        super().__init__(f"polynomial reached {terms} terms (limit {limit})")
        self.terms = terms
        self.limit = limit


class ExponentOverflowError(ResourceLimitError):
    pass


class UnboundVariableError(KeyError):
    def __init__(self, missing):
        self.missing = sorted(missing)
        super().__init__("unbound variables: " + ", ".join(map(str, self.missing)))

    def __str__(self):
        return self.args[0]


class PolySyntaxError(ValueError):
    def __init__(self, msg: str, text: str, pos: int):
        super().__init__(f"{msg} at position {pos}: {text!r}")
        self.pos = pos
        self.text = text


def get_term_limit() -> Optional[int]:
    return _term_limit


def set_term_limit(limit: Optional[int]) -> None:
    """Set the max number of terms any Poly may reach; ``None`` disables it."""
    global _term_limit
    if limit is not None and limit < 1:
        raise ValueError("term limit must be positive or None")
    _term_limit = limit


@contextlib.contextmanager
def term_limit(limit: Optional[int]):
    old = _term_limit
    set_term_limit(limit)
    try:
        yield
    finally:
        set_term_limit(old)


def _guard(n: int) -> None:
    if _term_limit is not None and n > _term_limit:
        raise TermLimitError(n, _term_limit)


class VarRef(NamedTuple):
    """One variable, e.g. ``VarRef("A", 2)`` for A2.

    Ordered by family (a < b < A < B) and then by index.
    """

    family: str
    index: int

    def sort_key(self) -> Tuple[int, int]:
        return (_RANK[self.family], self.index)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __le__(self, other):
        return self.sort_key() <= other.sort_key()

    def __gt__(self, other):
        return self.sort_key() > other.sort_key()

    def __ge__(self, other):
        return self.sort_key() >= other.sort_key()

    @property
    def slot(self) -> int:
        return 4 * self.index + _RANK[self.family]

    def __str__(self):
        return f"{self.family}{self.index}"


def var_ref(family: str, index: int) -> VarRef:
    if family not in _RANK:
        raise ValueError(f"unknown variable family {family!r}")
    if isinstance(index, bool) or not isinstance(index, int) or index < 0:
        raise ValueError(f"variable index must be a nonnegative int, got {index!r}")
    return VarRef(family, index)


def _slot_var(slot: int) -> VarRef:
    return VarRef(FAMILIES[slot & 3], slot >> 2)


class Monomial:
    """Canonical exponent map, stored as its packed integer code."""

    __slots__ = ("code",)

    def __init__(self, exponents: Optional[Mapping[VarRef, int]] = None):
        code = 0
        for v, e in (exponents or {}).items():
            v = var_ref(*v)
            if e < 0 or e > _MAX_EXP:
                raise ExponentOverflowError(f"exponent {e} of {v} outside 0..{_MAX_EXP}")
            code += e << (_BITS * v.slot)
        self.code = code

    @classmethod
    def from_code(cls, code: int) -> "Monomial":
        m = cls.__new__(cls)
        m.code = code
        return m

    def items(self) -> Iterator[Tuple[VarRef, int]]:
        """Yield ``(var, exponent)`` pairs in canonical VarRef order."""
        return iter(_decode(self.code))

    def as_dict(self) -> Dict[VarRef, int]:
        return dict(_decode(self.code))

    def degree(self, family: Optional[str] = None) -> int:
        if family is None:
            return sum(_code_bytes(self.code))
        return _family_degree(self.code, family)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial.from_code(_code_mul(self.code, other.code))

    def __eq__(self, other):
        return isinstance(other, Monomial) and other.code == self.code

    def __hash__(self):
        return hash(self.code)

    def __str__(self):
        return _render_monomial(self.code) or "1"

    def __repr__(self):
        return f"Monomial({self})"


def _code_bytes(code: int) -> bytes:
    return code.to_bytes((code.bit_length() + 7) // 8, "little")


def _decode(code: int):
    out = []
    for slot, e in enumerate(_code_bytes(code)):
        if e:
            out.append((_slot_var(slot), e))
    out.sort(key=lambda ve: ve[0].sort_key())
    return out


_family_masks: Dict[Tuple[str, int], int] = {}


def _family_mask(family: str, nbytes: int) -> int:
    key = (family, nbytes)
    mask = _family_masks.get(key)
    if mask is None:
        rank = _RANK[family]
        mask = 0
        for slot in range(rank, nbytes, 4):
            mask |= _MAX_EXP << (_BITS * slot)
        _family_masks[key] = mask
    return mask


def _family_degree(code: int, family: str) -> int:
    nbytes = (code.bit_length() + 7) // 8
    return sum(_code_bytes(code & _family_mask(family, nbytes)))


def _max_exp(code: int) -> int:
    return max(_code_bytes(code), default=0)


def _code_mul(c1: int, c2: int) -> int:
    if _max_exp(c1) + _max_exp(c2) > _MAX_EXP:
        raise ExponentOverflowError(f"exponent exceeds {_MAX_EXP}")
    return c1 + c2


def _lex_key(code: int):
    # descending lex on exponent vectors in VarRef order; sentinel makes a
    # proper prefix sort after its extensions
    key = [(v.sort_key(), -e) for v, e in _decode(code)]
    key.append(((9, 0), 0))
    return key


def _render_monomial(code: int) -> str:
    parts = []
    for v, e in _decode(code):
        parts.append(f"{v}^{e}" if e > 1 else str(v))
    return "*".join(parts)


class Poly:
    """Sparse polynomial with integer coefficients.

    ``terms`` maps packed monomial codes to nonzero ints.  Construct with
    :func:`poly_const`, :func:`poly_var`, :func:`poly_parse`, or
    :meth:`Poly.from_terms`; combine with ``+``, ``-``, ``*``.
    """

    __slots__ = ("_terms", "_bound", "_hash", "_plan")

    def __init__(self, terms: Optional[Dict[int, int]] = None, _bound: Optional[int] = None):
        terms = {} if terms is None else terms
        _guard(len(terms))
        self._terms = terms
        self._bound = _bound  # upper bound on any single exponent, lazily set
        self._hash = None
        self._plan = None

    @classmethod
    def from_terms(cls, pairs: Iterable[Tuple[Mapping[VarRef, int], int]]) -> "Poly":
        """Build from ``(exponent map, coefficient)`` pairs, merging duplicates."""
        acc: Dict[int, int] = {}
        for exps, c in pairs:
            code = exps.code if isinstance(exps, Monomial) else Monomial(exps).code
            acc[code] = acc.get(code, 0) + int(c)
        return cls({k: c for k, c in acc.items() if c})

    # -- inspection -------------------------------------------------------
    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {0: 1}

    def terms(self) -> Iterator[Tuple[Monomial, int]]:
        """Yield ``(Monomial, coeff)`` in rendering order."""
        for code in self._sorted_codes():
            yield Monomial.from_code(code), self._terms[code]

    def coeff(self, mono) -> int:
        code = mono.code if isinstance(mono, Monomial) else Monomial(mono).code
        return self._terms.get(code, 0)

    def variables(self) -> set:
        slots = 0
        for code in self._terms:
            slots |= code
        out = set()
        for slot, byte in enumerate(_code_bytes(slots)):
            if byte:
                out.add(_slot_var(slot))
        return out

    def max_exponent(self) -> int:
        return max((_max_exp(code) for code in self._terms), default=0)

    def _exp_bound(self) -> int:
        if self._bound is None:
            # OR of codes bounds each byte by less than twice its max
            acc = 0
            for code in self._terms:
                acc |= code
            self._bound = _max_exp(acc)
        return self._bound

    def degree(self, family: str) -> int:
        return degree_in_family(self, family)

    def _sorted_codes(self):
        return sorted(self._terms, key=lambda c: (sum(_code_bytes(c)), _lex_key(c)))

    # -- arithmetic -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = poly_const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __neg__(self):
        return Poly({k: -c for k, c in self._terms.items()}, self._bound)

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return _add(self, other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return _add(self, other, -1)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return _add(other, self, -1)

    def __mul__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return addmul(None, self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result, base = poly_const(1), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __str__(self):
        return poly_render(self)

    def __repr__(self):
        text = poly_render(self)
        if len(text) > 200:
            text = text[:200] + "..."
        return f"Poly({text!r})"


def _as_poly(x):
    if isinstance(x, Poly):
        return x
    if isinstance(x, int):
        return poly_const(x)
    return NotImplemented


def _merged_bound(p: Poly, q: Poly) -> Optional[int]:
    if p._bound is None or q._bound is None:
        return None
    return max(p._bound, q._bound)


def _add(p: Poly, q: Poly, sign: int) -> Poly:
    r = dict(p._terms)
    get = r.get
    for code, c in q._terms.items():
        v = get(code, 0) + sign * c
        if v:
            r[code] = v
        else:
            del r[code]
    return Poly(r, _merged_bound(p, q))


def _check_exponents(p: Poly, q: Poly) -> int:
    bound = p._exp_bound() + q._exp_bound()
    if bound > _MAX_EXP:
        bound = p.max_exponent() + q.max_exponent()
        if bound > _MAX_EXP:
            raise ExponentOverflowError(f"product exponent would exceed {_MAX_EXP}")
    return bound


def _accumulate(r: Dict[int, int], p: Poly, q: Poly, sign: int) -> Dict[int, int]:
    """Add ``sign*p*q`` into ``r`` in place; may leave zero entries behind.

    Returns the dict holding the result (a fresh one if zeros were purged).
    """
    if len(p._terms) < len(q._terms):
        p, q = q, p
    inner = list(p._terms.items())
    limit = _term_limit
    threshold = limit
    get = r.get
    for m2, c2 in q._terms.items():
        if sign < 0:
            c2 = -c2
        if c2 == 1:
            for m1, c1 in inner:
                m = m1 + m2
                r[m] = get(m, 0) + c1
        elif c2 == -1:
            for m1, c1 in inner:
                m = m1 + m2
                r[m] = get(m, 0) - c1
        else:
            for m1, c1 in inner:
                m = m1 + m2
                r[m] = get(m, 0) + c1 * c2
        if threshold is not None and len(r) > threshold:
            # cancelled entries linger as zeros; drop them before judging
            r = {m: c for m, c in r.items() if c}
            get = r.get
            if len(r) > limit:
                raise TermLimitError(len(r), limit)
            threshold = len(r) + max(limit - len(r), limit // 4)
    return r


def addmul(acc: Optional[Poly], p: Poly, q: Poly, sign: int = 1) -> Poly:
    """Return ``acc + sign*p*q`` in a single accumulation pass."""
    bound = _check_exponents(p, q)
    if acc is not None:
        bound = max(bound, acc._exp_bound())
    r = _accumulate(dict(acc._terms) if acc is not None else {}, p, q, sign)
    return Poly({m: c for m, c in r.items() if c}, bound)


def sum_of_products(pairs: Iterable[Tuple[Poly, Poly]], const: int = 0) -> Poly:
    """``const + sum(p*q for p, q in pairs)`` expanded into one accumulator."""
    r: Dict[int, int] = {0: const} if const else {}
    bound = 0
    for p, q in pairs:
        bound = max(bound, _check_exponents(p, q))
        r = _accumulate(r, p, q, 1)
    return Poly({m: c for m, c in r.items() if c}, bound)


# -- constructors ---------------------------------------------------------
def poly_const(c: int) -> Poly:
    c = int(c)
    return Poly({0: c} if c else {}, 0)


def poly_var(v, index: Optional[int] = None) -> Poly:
    """``poly_var(VarRef("a", 0))`` or ``poly_var("a", 0)``."""
    v = var_ref(v, index) if index is not None else var_ref(*v)
    return Poly({1 << (_BITS * v.slot): 1}, 1)


def poly_add(p: Poly, q: Poly) -> Poly:
    return p + q


def poly_sub(p: Poly, q: Poly) -> Poly:
    return p - q


def poly_mul(p: Poly, q: Poly) -> Poly:
    return p * q


def degree_in_family(p: Poly, family: str) -> int:
    """Max total exponent of ``family`` variables over the terms; -1 for 0."""
    if family not in _RANK:
        raise ValueError(f"unknown variable family {family!r}")
    if not p._terms:
        return -1
    nbytes = max(c.bit_length() for c in p._terms)
    mask = _family_mask(family, (nbytes + 7) // 8)
    best = 0
    for code in p._terms:
        masked = code & mask
        if masked:
            d = sum(masked.to_bytes((masked.bit_length() + 7) // 8, "little"))
            if d > best:
                best = d
    return best


def family_degrees(p: Poly) -> Dict[str, int]:
    """``degree_in_family`` for all four families in one pass over the terms."""
    if not p._terms:
        return dict.fromkeys(FAMILIES, -1)
    width = (max(c.bit_length() for c in p._terms) + 31) // 32 * 4
    best = [0, 0, 0, 0]
    for code in p._terms:
        raw = code.to_bytes(width, "little")
        for r in range(4):
            d = sum(raw[r::4])
            if d > best[r]:
                best[r] = d
    return dict(zip(FAMILIES, best))


def poly_eval(p: Poly, ctx: RingCtx, assignment: Mapping[VarRef, RingValue]) -> RingValue:
    """Image of ``p`` under the ring map sending each variable to its assigned value."""
    needed = p.variables()
    missing = [v for v in needed if v not in assignment]
    if missing:
        raise UnboundVariableError(missing)
    values: Dict[int, int] = {}
    for v in needed:
        x = assignment[v]
        if isinstance(x, RingValue):
            if x.ctx != ctx:
                from .ring import ContextMismatchError

                raise ContextMismatchError(f"value for {v} lives in {x.ctx}, not {ctx}")
            x = x.rep
        values[v.slot] = ctx.reduce(int(x))
    n = ctx.modulus
    plan = p._plan if p._plan is not None else _eval_plan(p)
    pows: Dict[Tuple[int, int], int] = {}
    total = 0
    for c, factors in plan:
        t = c
        for key in factors:
            pw = pows.get(key)
            if pw is None:
                slot, e = key
                pw = pow(values[slot], e, n) if n else values[slot] ** e
                pows[key] = pw
            t *= pw
            if n:
                t %= n
        total += t
    return RingValue(ctx, ctx.reduce(total))


_PLAN_CACHE_TERMS = 10**6


def _eval_plan(p: Poly):
    plan = []
    for code, c in p._terms.items():
        raw = _code_bytes(code)
        plan.append((c, tuple((slot, e) for slot, e in enumerate(raw) if e)))
    if len(plan) <= _PLAN_CACHE_TERMS:
        p._plan = plan
    return plan


# -- text form ------------------------------------------------------------
def poly_render(p: Poly) -> str:
    """Canonical text: ascending total degree, ties in descending lex order."""
    if not p._terms:
        return "0"
    out = []
    for i, code in enumerate(p._sorted_codes()):
        c = p._terms[code]
        mono = _render_monomial(code)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<var>[abAB])(?P<idx>\d+)|(?P<op>[-+*^]))")


def _tokenize(text: str):
    pos = 0
    toks = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolySyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        start = pos
        if m.group("int") is not None:
            toks.append(("int", int(m.group("int")), start))
        elif m.group("var") is not None:
            toks.append(("var", VarRef(m.group("var"), int(m.group("idx"))), start))
        else:
            toks.append((m.group("op"), None, start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


def poly_parse(text: str) -> Poly:
    """Parse the polynomial grammar produced by :func:`poly_render`.

    Accepts a superset: any spacing, repeated factors, explicit ``1*`` and
    integer factors anywhere in a product.
    """
    toks = _tokenize(text)
    i = 0
    acc: Dict[int, int] = {}

    def expect_factor(j):
        kind, val, pos = toks[j]
        if kind == "int":
            return ("int", val), j + 1
        if kind == "var":
            j += 1
            e = 1
            if toks[j][0] == "^":
                if toks[j + 1][0] != "int":
                    raise PolySyntaxError("expected exponent", text, toks[j + 1][2])
                e = toks[j + 1][1]
                j += 2
            if e > _MAX_EXP:
                raise PolySyntaxError(f"exponent above {_MAX_EXP}", text, pos)
            return ("var", val, e), j
        raise PolySyntaxError("expected a coefficient or variable", text, pos)

    first = True
    while True:
        kind, _, pos = toks[i]
        sign = 1
        if kind in ("+", "-"):
            sign = -1 if kind == "-" else 1
            i += 1
        elif not first:
            raise PolySyntaxError("expected '+' or '-'", text, pos)
        if kind == "end" and first:
            raise PolySyntaxError("empty polynomial", text, pos)
        first = False
        coeff, code = sign, 0
        factor, i = expect_factor(i)
        while True:
            if factor[0] == "int":
                coeff *= factor[1]
            else:
                step = factor[2] << (_BITS * factor[1].slot)
                code = _code_mul(code, step)
            if toks[i][0] != "*":
                break
            factor, i = expect_factor(i + 1)
        acc[code] = acc.get(code, 0) + coeff
        if toks[i][0] == "end":
            break
    return Poly({k: c for k, c in acc.items() if c})
