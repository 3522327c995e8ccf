"""Push a universal certificate into ℤ or ℤ/n and check ``sum c_k C_k = 1``."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .certificate import Certificate
from .multipoly import ResourceLimitError, VarRef, poly_eval
from .ring import RingCtx, RingValue, ext_gcd_chain


@dataclass(frozen=True)
class WitnessedSeq:
    """Coefficients ``A_0..A_m`` together with a Bezout witness ``a_0..a_m``."""

    ctx: RingCtx
    coeffs: Tuple[RingValue, ...]
    witness: Tuple[RingValue, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(_values(self.ctx, self.coeffs)))
        object.__setattr__(self, "witness", tuple(_values(self.ctx, self.witness)))
        if not self.coeffs:
            raise ValueError("coefficient list must be nonempty")
        if len(self.coeffs) != len(self.witness):
            raise ValueError("coefficients and witness differ in length")
        total = sum(x.rep * y.rep for x, y in zip(self.coeffs, self.witness))
        if self.ctx.reduce(total) != 1:
            raise ValueError(f"witness does not combine the coefficients to 1 in {self.ctx}")

    def __len__(self):
        return len(self.coeffs)


def _values(ctx: RingCtx, xs) -> List[RingValue]:
    out = []
    for x in xs:
        if isinstance(x, RingValue):
            if x.ctx != ctx:
                raise ValueError(f"value from {x.ctx} in a sequence over {ctx}")
            out.append(x)
        else:
            out.append(ctx(x))
    return out


@dataclass(frozen=True)
class SpecializationResult:
    ctx: RingCtx
    cvals: Tuple[RingValue, ...]
    ckvals: Tuple[RingValue, ...]
    combination: RingValue

    @property
    def ok(self) -> bool:
        return self.combination.rep == 1

    def to_json(self) -> dict:
        return {
            "ring": str(self.ctx),
            "C": [str(v.rep) for v in self.cvals],
            "c": [str(v.rep) for v in self.ckvals],
            "combination": str(self.combination.rep),
            "ok": self.ok,
        }


def convolve(ctx: RingCtx, a_coeffs: Sequence, b_coeffs: Sequence) -> List[RingValue]:
    """Coefficients of the product of two coefficient lists, in ``ctx``."""
    A = _values(ctx, a_coeffs)
    B = _values(ctx, b_coeffs)
    if not A or not B:
        raise ValueError("convolve needs two nonempty coefficient lists")
    out = [0] * (len(A) + len(B) - 1)
    for i, x in enumerate(A):
        for j, y in enumerate(B):
            out[i + j] += x.rep * y.rep
    return [ctx(v) for v in out]


def witness_mod_n(coeffs: Sequence[int], n: int) -> Optional[WitnessedSeq]:
    """A Bezout witness for ``coeffs`` in ℤ/n, or None if they generate a proper ideal."""
    if n < 2:
        raise ValueError(f"modulus must be >= 2, got {n}")
    coeffs = [int(c) for c in coeffs]
    if not coeffs:
        raise ValueError("coefficient list must be nonempty")
    ctx = RingCtx(n)
    g, xs = ext_gcd_chain(coeffs)
    ginv = ctx.inverse(ctx(g))
    if ginv is None:
        return None
    return WitnessedSeq(ctx, tuple(coeffs), tuple(x * ginv.rep for x in xs))


def witness_integers(coeffs: Sequence[int]) -> Optional[WitnessedSeq]:
    """A Bezout witness over ℤ, or None when the gcd is not 1."""
    g, xs = ext_gcd_chain(coeffs)
    if g != 1:
        return None
    return WitnessedSeq(RingCtx.integers(), tuple(coeffs), tuple(xs))


def assignment(wa: WitnessedSeq, wb: WitnessedSeq) -> Dict[VarRef, RingValue]:
    out: Dict[VarRef, RingValue] = {}
    for i, (A, a) in enumerate(zip(wa.coeffs, wa.witness)):
        out[VarRef("A", i)] = A
        out[VarRef("a", i)] = a
    for j, (B, b) in enumerate(zip(wb.coeffs, wb.witness)):
        out[VarRef("B", j)] = B
        out[VarRef("b", j)] = b
    return out


def specialize_certificate(
    cert: Certificate, wa: WitnessedSeq, wb: WitnessedSeq
) -> SpecializationResult:
    if wa.ctx != wb.ctx:
        raise ValueError(f"sequences live in different rings: {wa.ctx} vs {wb.ctx}")
    if len(wa) != cert.m + 1 or len(wb) != cert.n + 1:
        raise ValueError(
            f"certificate {tuple(cert.key)} needs sequences of length "
            f"{cert.m + 1} and {cert.n + 1}, got {len(wa)} and {len(wb)}"
        )
    ctx = wa.ctx
    cvals = convolve(ctx, wa.coeffs, wb.coeffs)
    env = assignment(wa, wb)
    ckvals = [poly_eval(ck, ctx, env) for ck in cert.c]
    total = ctx.zero()
    for x, y in zip(ckvals, cvals):
        total = total + x * y
    return SpecializationResult(ctx, tuple(cvals), tuple(ckvals), total)


def random_instance(
    ctx: RingCtx, m: int, n: int, seed: int, max_attempts: int = 1000
) -> Tuple[WitnessedSeq, WitnessedSeq]:
    """Seeded unit-content sequences of lengths m+1 and n+1 over ℤ/n.

    Coefficient lists are rejection-sampled until both generate the unit ideal.
    """
    if ctx.is_integers:
        raise ValueError("random instances are only sampled over Z/n")
    rng = random.Random(seed)
    out = []
    for length in (m + 1, n + 1):
        for _ in range(max_attempts):
            coeffs = [rng.randrange(ctx.modulus) for _ in range(length)]
            w = witness_mod_n(coeffs, ctx.modulus)
            if w is not None:
                out.append(w)
                break
        else:
            raise ResourceLimitError(
                f"no unit-content sequence of length {length} mod {ctx.modulus} "
                f"after {max_attempts} attempts"
            )
    return out[0], out[1]
