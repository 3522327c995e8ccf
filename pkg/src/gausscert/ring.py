"""Concrete commutative rings used for specialization: the integers and ℤ/n.

Values are canonical (least nonnegative residue mod n), so ``==`` on
:class:`RingValue` is ring equality.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence


class ContextMismatchError(ValueError):
    """Raised when values from two different rings are combined."""


@dataclass(frozen=True)
class RingCtx:
    """Handle to ℤ (``modulus is None``) or ℤ/n (``modulus = n >= 2``)."""

    modulus: Optional[int] = None

    def __post_init__(self):
        if self.modulus is not None:
            if isinstance(self.modulus, bool) or not isinstance(self.modulus, int):
                raise TypeError(f"modulus must be an int, got {self.modulus!r}")
            if self.modulus < 2:
                raise ValueError(f"modulus must be >= 2, got {self.modulus}")

    @classmethod
    def integers(cls) -> "RingCtx":
        return cls(None)

    @classmethod
    def mod(cls, n: int) -> "RingCtx":
        return cls(n)

    @property
    def is_integers(self) -> bool:
        return self.modulus is None

    def reduce(self, x: int) -> int:
        return x if self.modulus is None else x % self.modulus

    def __call__(self, x: int) -> "RingValue":
        return RingValue(self, self.reduce(int(x)))

    def zero(self) -> "RingValue":
        return RingValue(self, 0)

    def one(self) -> "RingValue":
        return RingValue(self, 1)

    def _check(self, *xs: "RingValue") -> None:
        for x in xs:
            if x.ctx != self:
                raise ContextMismatchError(f"value in {x.ctx} used in {self}")

    def add(self, x: "RingValue", y: "RingValue") -> "RingValue":
        self._check(x, y)
        return RingValue(self, self.reduce(x.rep + y.rep))

    def sub(self, x: "RingValue", y: "RingValue") -> "RingValue":
        self._check(x, y)
        return RingValue(self, self.reduce(x.rep - y.rep))

    def mul(self, x: "RingValue", y: "RingValue") -> "RingValue":
        self._check(x, y)
        return RingValue(self, self.reduce(x.rep * y.rep))

    def neg(self, x: "RingValue") -> "RingValue":
        self._check(x)
        return RingValue(self, self.reduce(-x.rep))

    def eq(self, x: "RingValue", y: "RingValue") -> bool:
        self._check(x, y)
        return x.rep == y.rep

    def inverse(self, x: "RingValue") -> Optional["RingValue"]:
        """Multiplicative inverse, or None when ``x`` is not a unit."""
        self._check(x)
        if self.modulus is None:
            return x if x.rep in (1, -1) else None
        g, (s, _) = ext_gcd_chain([x.rep, self.modulus])
        if g != 1:
            return None
        return RingValue(self, s % self.modulus)

    def __str__(self):
        return "Z" if self.modulus is None else f"Z/{self.modulus}"


@dataclass(frozen=True)
class RingValue:
    """An element of ``ctx`` stored by its canonical representative."""

    ctx: RingCtx
    rep: int

    def __post_init__(self):
        if self.ctx.reduce(self.rep) != self.rep:
            raise ValueError(f"{self.rep} is not canonical in {self.ctx}")

    def __add__(self, other):
        return self.ctx.add(self, _coerce(self.ctx, other))

    __radd__ = __add__

    def __sub__(self, other):
        return self.ctx.sub(self, _coerce(self.ctx, other))

    def __rsub__(self, other):
        return self.ctx.sub(_coerce(self.ctx, other), self)

    def __mul__(self, other):
        return self.ctx.mul(self, _coerce(self.ctx, other))

    __rmul__ = __mul__

    def __neg__(self):
        return self.ctx.neg(self)

    def __int__(self):
        return self.rep

    def __repr__(self):
        return f"RingValue({self.rep} in {self.ctx})"


def _coerce(ctx: RingCtx, x) -> RingValue:
    if isinstance(x, RingValue):
        return x
    if isinstance(x, int):
        return ctx(x)
    return NotImplemented


def ring_add(ctx: RingCtx, x: RingValue, y: RingValue) -> RingValue:
    return ctx.add(x, y)


def ring_mul(ctx: RingCtx, x: RingValue, y: RingValue) -> RingValue:
    return ctx.mul(x, y)


def ring_neg(ctx: RingCtx, x: RingValue) -> RingValue:
    return ctx.neg(x)


def ring_zero(ctx: RingCtx) -> RingValue:
    return ctx.zero()


def ring_one(ctx: RingCtx) -> RingValue:
    return ctx.one()


def ring_eq(ctx: RingCtx, x: RingValue, y: RingValue) -> bool:
    return ctx.eq(x, y)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    # iterative; returns (g, s, t) with s*a + t*b = g and g >= 0
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def ext_gcd_chain(values: Sequence[int]) -> tuple[int, list[int]]:
    """Return ``(g, w)`` with ``g = gcd(values) >= 0`` and ``sum(w[i]*values[i]) == g``.

    Chains the two-argument extended Euclid left to right; earlier witnesses
    get rescaled at every step, so they can grow well past machine words.
    """
    values = [int(v) for v in values]
    if not values:
        raise ValueError("ext_gcd_chain needs at least one value")
    g = abs(values[0])
    w = [-1 if values[0] < 0 else 1]
    if values[0] == 0:
        w = [0]
    for v in values[1:]:
        g, s, t = _xgcd(g, v)
        w = [s * x for x in w]
        w.append(t)
    return g, w
