"""Universal certificates ``1 = alpha*a + beta*b + sum_k c_k*C_k`` over ℤ[a, b, A, B].

``generate(m, n)`` fills the grid ``[0..m] x [0..n]`` bottom-up: row ``m = 0``
and column ``n = 0`` come from closed forms, every interior cell combines its
left neighbour ``(m, n-1)`` and lower neighbour ``(m-1, n)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, NamedTuple, Optional, Tuple

from .multipoly import Poly, addmul, poly_const, poly_var


class GridKey(NamedTuple):
    m: int
    n: int

    @property
    def total(self) -> int:
        return self.m + self.n


def _key(m, n) -> GridKey:
    for name, v in (("m", m), ("n", n)):
        if isinstance(v, bool) or not isinstance(v, int):
            raise TypeError(f"{name} must be an int, got {v!r}")
        if v < 0:
            raise ValueError(f"{name} must be >= 0, got {v}")
    return GridKey(m, n)


@dataclass(frozen=True)
class Certificate:
    key: GridKey
    alpha: Poly
    beta: Poly
    c: Tuple[Poly, ...]

    def __post_init__(self):
        object.__setattr__(self, "key", GridKey(*self.key))
        object.__setattr__(self, "c", tuple(self.c))
        if len(self.c) != self.key.m + self.key.n + 1:
            raise ValueError(
                f"certificate for {tuple(self.key)} needs {self.key.m + self.key.n + 1} "
                f"c-entries, got {len(self.c)}"
            )

    @property
    def m(self) -> int:
        return self.key.m

    @property
    def n(self) -> int:
        return self.key.n

    def parts(self):
        """``(name, poly)`` for alpha, beta, c0, c1, ..."""
        yield "alpha", self.alpha
        yield "beta", self.beta
        for k, ck in enumerate(self.c):
            yield f"c{k}", ck

    def term_count(self) -> int:
        return sum(len(p) for _, p in self.parts())


@dataclass(frozen=True)
class StepTrace:
    """The auxiliary polynomials ``d`` and ``e`` used to build ``key``."""

    key: GridKey
    d: Poly
    e: Poly


def _v(family: str, index: int) -> Poly:
    return poly_var(family, index)


def gauss_a(m: int) -> Poly:
    """``1 - sum_{i<=m} a_i*A_i``."""
    _key(m, 0)
    p = poly_const(1)
    for i in range(m + 1):
        p = addmul(p, _v("a", i), _v("A", i), -1)
    return p


def gauss_b(n: int) -> Poly:
    """``1 - sum_{j<=n} b_j*B_j``."""
    _key(0, n)
    p = poly_const(1)
    for j in range(n + 1):
        p = addmul(p, _v("b", j), _v("B", j), -1)
    return p


def big_c(m: int, n: int, k: int) -> Poly:
    """Coefficient of X^k in ``(sum A_i X^i)(sum B_j X^j)``."""
    _key(m, n)
    if not 0 <= k <= m + n:
        raise ValueError(f"k={k} outside 0..{m + n}")
    p = poly_const(0)
    for i in range(max(0, k - n), min(m, k) + 1):
        p = addmul(p, _v("A", i), _v("B", k - i))
    return p


def base_cert_m0(n: int) -> Certificate:
    _key(0, n)
    a0 = _v("a", 0)
    return Certificate(
        GridKey(0, n),
        alpha=poly_const(1),
        beta=a0 * _v("A", 0),
        c=tuple(a0 * _v("b", k) for k in range(n + 1)),
    )


def base_cert_n0(m: int) -> Certificate:
    _key(m, 0)
    if m == 0:
        raise ValueError("key (0, 0) uses the m = 0 base case; call base_cert_m0(0)")
    b0 = _v("b", 0)
    return Certificate(
        GridKey(m, 0),
        alpha=b0 * _v("B", 0),
        beta=poly_const(1),
        c=tuple(_v("a", k) * b0 for k in range(m + 1)),
    )


def _require(cert: Certificate, want: GridKey, role: str) -> None:
    if cert.key != want:
        raise ValueError(f"{role} certificate has key {tuple(cert.key)}, expected {tuple(want)}")


def _interior(m: int, n: int) -> GridKey:
    key = _key(m, n)
    if m < 1 or n < 1:
        raise ValueError(f"the recursive step needs m, n >= 1, got ({m}, {n})")
    return key


def aux_d(m: int, n: int, cert_left: Certificate) -> Poly:
    """``b_n*beta' - sum_{k=n}^{m+n-1} c'_k*A_{k-n}`` from the (m, n-1) certificate."""
    _interior(m, n)
    _require(cert_left, GridKey(m, n - 1), "left")
    d = _v("b", n) * cert_left.beta
    for k in range(n, m + n):
        d = addmul(d, cert_left.c[k], _v("A", k - n), -1)
    return d


def aux_e(m: int, n: int, cert_down: Certificate) -> Poly:
    """``a_m*alpha' - sum_{k=m}^{m+n-1} c'_k*B_{k-m}`` from the (m-1, n) certificate."""
    _interior(m, n)
    _require(cert_down, GridKey(m - 1, n), "down")
    e = _v("a", m) * cert_down.alpha
    for k in range(m, m + n):
        e = addmul(e, cert_down.c[k], _v("B", k - m), -1)
    return e


def step(
    m: int, n: int, cert_left: Certificate, cert_down: Certificate
) -> Tuple[Certificate, StepTrace]:
    key = _interior(m, n)
    d = aux_d(m, n, cert_left)
    e = aux_e(m, n, cert_down)
    bd = _v("B", n) * d
    alpha = addmul(cert_left.alpha, bd, cert_down.alpha)
    beta = addmul(cert_left.beta, bd, cert_down.beta)
    c = [addmul(cert_left.c[k], bd, cert_down.c[k]) for k in range(m + n)]
    c.append(d * e)
    return Certificate(key, alpha, beta, tuple(c)), StepTrace(key, d, e)


class CertificateGrid:
    """Write-once memo of certificates (and step traces) keyed by GridKey.

    ``get(m, n)`` fills any missing cells of its rectangle, anti-diagonal by
    anti-diagonal.  Pass ``keep=False`` to let cells that can no longer be
    needed be dropped while filling (lower memory for a single large key).
    """

    def __init__(self, keep: bool = True):
        self.keep = keep
        self._certs: Dict[GridKey, Certificate] = {}
        self._traces: Dict[GridKey, StepTrace] = {}

    def __contains__(self, key) -> bool:
        return GridKey(*key) in self._certs

    def _store(self, cert: Certificate, trace: Optional[StepTrace]) -> None:
        if cert.key in self._certs:
            raise RuntimeError(f"cell {tuple(cert.key)} written twice")
        self._certs[cert.key] = cert
        if trace is not None:
            self._traces[cert.key] = trace

    def _cell(self, m: int, n: int) -> Tuple[Certificate, Optional[StepTrace]]:
        if m == 0:
            return base_cert_m0(n), None
        if n == 0:
            return base_cert_n0(m), None
        return step(m, n, self._certs[GridKey(m, n - 1)], self._certs[GridKey(m - 1, n)])

    def get(self, m: int, n: int) -> Certificate:
        key = _key(m, n)
        todo = self._missing(key)
        done = set()
        for cell in todo:
            self._store(*self._cell(*cell))
            done.add(cell)
            if not self.keep:
                # a cell is read only by the two cells of the next diagonal
                for old in [c for c in done if c.total < cell.total - 1 and c != key]:
                    self.discard(old)
                    done.discard(old)
        return self._certs[key]

    def _missing(self, key: GridKey):
        """Cells that must be computed for ``key``, ordered by anti-diagonal."""
        seen = set()
        stack = [key]
        while stack:
            cell = stack.pop()
            if cell in seen or cell in self._certs:
                continue
            seen.add(cell)
            if cell.m >= 1 and cell.n >= 1:
                stack.append(GridKey(cell.m, cell.n - 1))
                stack.append(GridKey(cell.m - 1, cell.n))
        return sorted(seen, key=lambda c: (c.total, c.m))

    def discard(self, key) -> None:
        key = GridKey(*key)
        self._certs.pop(key, None)
        self._traces.pop(key, None)

    def discard_totals_below(self, s: int, keep: Optional[GridKey] = None) -> None:
        """Forget every cell with ``m + n < s`` (except ``keep``)."""
        for cell in [c for c in self._certs if c.total < s and c != keep]:
            self.discard(cell)

    def trace(self, m: int, n: int) -> Optional[StepTrace]:
        """Step trace for an interior key (None for base cases)."""
        self.get(m, n)
        return self._traces.get(GridKey(m, n))

    def items(self):
        return sorted(self._certs.items())


def generate(m: int, n: int) -> Certificate:
    """The certificate for ``(m, n)``; deterministic, structurally unique."""
    return CertificateGrid(keep=False).get(m, n)


def generate_with_trace(m: int, n: int) -> Tuple[Certificate, Optional[StepTrace]]:
    grid = CertificateGrid(keep=False)
    cert = grid.get(m, n)
    return cert, grid.trace(m, n)
