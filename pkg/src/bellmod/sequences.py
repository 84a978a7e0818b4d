"""Bell, derangement, Stirling-set and Touchard-polynomial values mod p.

Every family here has at least two independent computation routes (for
example the binomial recurrence and the additive triangle for Bell
numbers), so the verification layer can cross-check one against the other
instead of trusting a single code path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .modarith import (
    DensePoly,
    IndexTooLargeError,
    PrimeContext,
    Residue,
    binomial_mod,
)

__all__ = [
    "BellRow",
    "DerangementRow",
    "bell_row",
    "bell_triangle_row",
    "bell_mod",
    "derangement_row",
    "derangement_series_mod",
    "derangement_mod",
    "signed_series_row",
    "stirling2_mod",
    "touchard_poly",
    "touchard_polys_by_recursion",
    "touchard_coeff_matrix",
    "touchard_polys_from_matrix",
    "touchard_value_table",
]

# int64 products of two residues stay below p**2; a dot product over at
# most p terms stays below p**3.  Chunk whenever that could reach 2**63.
_DOT_LIMIT = 2**62


def _mod_dot(a: np.ndarray, b: np.ndarray, p: int) -> int:
    """Exact dot product of residue vectors, reduced mod p."""
    n = a.shape[0]
    if n == 0:
        return 0
    chunk = max(1, _DOT_LIMIT // (p * p))
    if n <= chunk:
        return int(a @ b) % p
    total = 0
    for i in range(0, n, chunk):
        total = (total + int(a[i : i + chunk] @ b[i : i + chunk])) % p
    return total


def _mod_vecmat(v: np.ndarray, m: np.ndarray, p: int) -> np.ndarray:
    """Exact v @ m for residue entries, reduced mod p."""
    n = v.shape[0]
    if n == 0:
        return np.zeros(m.shape[1], dtype=np.int64)
    chunk = max(1, _DOT_LIMIT // (p * p))
    if n <= chunk:
        return (v @ m) % p
    acc = np.zeros(m.shape[1], dtype=np.int64)
    for i in range(0, n, chunk):
        acc = (acc + v[i : i + chunk] @ m[i : i + chunk]) % p
    return acc


def _mod_matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact a @ b for residue entries, reduced mod p."""
    inner = a.shape[1]
    chunk = max(1, _DOT_LIMIT // (p * p))
    if inner <= chunk:
        return (a @ b) % p
    acc = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for i in range(0, inner, chunk):
        acc = (acc + a[:, i : i + chunk] @ b[i : i + chunk]) % p
    return acc


@dataclass(frozen=True)
class BellRow:
    """Bell numbers B_0 .. B_{p-1} reduced mod p, as a read-only array."""

    ctx: PrimeContext
    values: np.ndarray

    def __post_init__(self):
        p = self.ctx.p
        assert self.values.shape == (p,)
        assert int(self.values[0]) == 1 % p and int(self.values[1]) == 1 % p


@dataclass(frozen=True)
class DerangementRow:
    """Derangement counts D_0 .. D_{p-1} reduced mod p."""

    ctx: PrimeContext
    values: np.ndarray

    def __post_init__(self):
        p = self.ctx.p
        assert self.values.shape == (p,)
        assert int(self.values[0]) == 1 % p and int(self.values[1]) == 0


def bell_row(ctx: PrimeContext) -> BellRow:
    """B_0 .. B_{p-1} mod p by the binomial recurrence.

    B_{n+1} = sum_k C(n, k) B_k, with each row's binomials taken from the
    factorial tables: C(n, k) = n! / (k! (n-k)!).
    """
    p = ctx.p
    fact, invf = ctx.fact_np, ctx.inv_fact_np
    values = np.zeros(p, dtype=np.int64)
    values[0] = 1 % p
    for n in range(p - 1):
        w = invf[: n + 1] * invf[n::-1] % p
        values[n + 1] = int(fact[n]) * _mod_dot(w, values[: n + 1], p) % p
    values.setflags(write=False)
    return BellRow(ctx, values)


def bell_triangle_row(ctx: PrimeContext) -> BellRow:
    """B_0 .. B_{p-1} mod p by the additive (Aitken) triangle.

    Row n+1 starts with the last entry of row n and accumulates partial
    sums; B_n is the first entry of row n.  Independent of the factorial
    tables, so it cross-checks bell_row.
    """
    p = ctx.p
    values = np.zeros(p, dtype=np.int64)
    values[0] = 1 % p
    row = np.array([1 % p], dtype=np.int64)
    for n in range(1, p):
        nxt = np.concatenate((row[-1:], row))
        # prefix sums never exceed p * p before each reduction
        row = np.cumsum(nxt) % p if p * p < _DOT_LIMIT else _slow_cumsum(nxt, p)
        values[n] = row[0]
    values.setflags(write=False)
    return BellRow(ctx, values)


def _slow_cumsum(v: np.ndarray, p: int) -> np.ndarray:
    out = v.copy()
    acc = 0
    for i in range(out.shape[0]):
        acc = (acc + int(out[i])) % p
        out[i] = acc
    return out


def bell_mod(n: int, ctx: PrimeContext, row: BellRow | None = None) -> Residue:
    """B_n mod p for any 0 <= n < p**2.

    Indices below p read the precomputed row.  Larger ones are folded with
    the shift congruence B_{qp+s} = sum_j C(q, j) B_{s+j} (mod p), where an
    index s+j that reaches p is folded once more through
    B_{p+t} = B_t + B_{t+1}.
    """
    if n < 0:
        raise ValueError("index must be nonnegative")
    p = ctx.p
    if n >= p * p:
        raise IndexTooLargeError(f"index {n} needs n < p**2 = {p * p}")
    if row is None:
        row = bell_row(ctx)
    vals = row.values
    if n < p:
        return Residue(int(vals[n]), ctx)
    q, s = divmod(n, p)
    total = 0
    fq = ctx.fact[q]
    for j in range(q + 1):
        t = s + j
        if t < p:
            b = int(vals[t])
        else:
            # s + j <= 2p - 2, so one extra fold always lands inside the row
            t -= p
            b = (int(vals[t]) + int(vals[t + 1])) % p
        c = fq * ctx.inv_fact[j] % p * ctx.inv_fact[q - j] % p
        total = (total + c * b) % p
    return Residue(total, ctx)


def derangement_row(ctx: PrimeContext) -> DerangementRow:
    """D_0 .. D_{p-1} mod p by D_n = n D_{n-1} + (-1)^n."""
    p = ctx.p
    values = np.zeros(p, dtype=np.int64)
    values[0] = 1 % p
    cur = 1 % p
    sign = 1
    for n in range(1, p):
        sign = -sign
        cur = (n * cur + sign) % p
        values[n] = cur
    values.setflags(write=False)
    return DerangementRow(ctx, values)


def derangement_series_mod(n: int, ctx: PrimeContext) -> Residue:
    """D_n mod p from the alternating falling-factorial series.

    (-1)^n D_n = sum_{r=0}^{n} (-1)^r n(n-1)...(n-r+1); every term is an
    integer, so the whole sum can be taken mod p directly.  Independent of
    the recurrence in derangement_row.
    """
    if n < 0:
        raise ValueError("index must be nonnegative")
    p = ctx.p
    if n >= p:
        raise IndexTooLargeError(f"index {n} needs n < p = {p}")
    acc = 0
    term = 1
    sign = 1
    for r in range(n + 1):
        acc = (acc + sign * term) % p
        term = term * ((n - r) % p) % p
        sign = -sign
    if n % 2 == 1:
        acc = -acc % p
    return Residue(acc, ctx)


def derangement_mod(n: int, ctx: PrimeContext, sigma: np.ndarray | None = None) -> Residue:
    """D_n mod p for any n >= 0.

    (-1)^n D_n mod p is periodic in n with period p, because the
    falling-factorial series picks up a factor divisible by p in every
    term beyond the residue of n.  So one signed-series row covers all
    indices.
    """
    if n < 0:
        raise ValueError("index must be nonnegative")
    p = ctx.p
    if sigma is None:
        sigma = signed_series_row(ctx)
    v = int(sigma[n % p])
    return Residue(v if n % 2 == 0 else -v % p, ctx)


def signed_series_row(ctx: PrimeContext) -> np.ndarray:
    """sigma[n] = (-1)^n D_n mod p for all n < p, vectorized.

    D_n = n! * sum_{t<=n} (-1)^t / t!, with the inner prefix sums read off
    the inverse-factorial table; a final alternating sign gives sigma.
    """
    p = ctx.p
    alt = ctx.inv_fact_np.copy()
    alt[1::2] = (p - alt[1::2]) % p
    acc = np.cumsum(alt) % p if p * p < _DOT_LIMIT else _slow_cumsum(alt, p)
    sigma = ctx.fact_np * acc % p
    sigma[1::2] = (p - sigma[1::2]) % p
    sigma.setflags(write=False)
    return sigma


def stirling2_mod(n: int, k: int, ctx: PrimeContext) -> Residue:
    """Set-partition count S(n, k) mod p by the explicit alternating sum.

    k! S(n, k) = sum_j C(k, j) (-1)^(k-j) j^n, with 0^0 = 1.  Requires
    k < p so that 1/k! exists.
    """
    if n < 0 or k < 0:
        raise ValueError("indices must be nonnegative")
    p = ctx.p
    if k >= p:
        raise IndexTooLargeError(f"block count {k} needs k < p = {p}")
    total = 0
    for j in range(k + 1):
        term = binomial_mod(k, j, ctx).value * pow(j, n, p) % p
        total = (total + term) if (k - j) % 2 == 0 else (total - term)
        total %= p
    return Residue(total * ctx.inv_fact[k] % p, ctx)


def touchard_poly(n: int, ctx: PrimeContext) -> DensePoly:
    """T_n as a polynomial: coefficient of x^k is S(n, k); needs n < p."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    if n >= ctx.p:
        raise IndexTooLargeError(f"index {n} needs n < p = {ctx.p}")
    return DensePoly(ctx, [stirling2_mod(n, k, ctx).value for k in range(n + 1)])


def touchard_polys_by_recursion(n_max: int, ctx: PrimeContext) -> list[DensePoly]:
    """[T_0 .. T_{n_max}] via T_{n+1} = x * sum_k C(n, k) T_k.

    Built entirely from DensePoly operations; independent of the explicit
    Stirling sum behind touchard_poly.
    """
    if n_max < 0:
        raise ValueError("index must be nonnegative")
    if n_max >= ctx.p:
        raise IndexTooLargeError(f"index {n_max} needs n < p = {ctx.p}")
    polys = [DensePoly(ctx, (1,))]
    for n in range(n_max):
        acc = DensePoly(ctx)
        for k, t_k in enumerate(polys):
            acc = acc.add(t_k.scale(binomial_mod(n, k, ctx)))
        polys.append(acc.mul_monomial(1))
    return polys


def touchard_coeff_matrix(ctx: PrimeContext) -> np.ndarray:
    """Matrix M with M[n, k] = S(n, k) mod p for n, k < p, vectorized.

    Rows are produced by the same weighted-sum recursion as
    touchard_polys_by_recursion, with the binomial row updated in place
    Pascal-style between steps.
    """
    p = ctx.p
    m = np.zeros((p, p), dtype=np.int64)
    m[0, 0] = 1 % p
    binrow = np.zeros(p, dtype=np.int64)
    binrow[0] = 1 % p
    for n in range(p - 1):
        acc = _mod_vecmat(binrow[: n + 1], m[: n + 1], p)
        m[n + 1, 1:] = acc[:-1]
        nxt = binrow.copy()
        nxt[1 : n + 2] = (binrow[1 : n + 2] + binrow[0 : n + 1]) % p
        binrow = nxt
    m.setflags(write=False)
    return m


def touchard_polys_from_matrix(
    ctx: PrimeContext, matrix: np.ndarray | None = None
) -> list[DensePoly]:
    """[T_0 .. T_{p-1}] as polynomials, read off the coefficient matrix."""
    if matrix is None:
        matrix = touchard_coeff_matrix(ctx)
    return [DensePoly(ctx, matrix[n, : n + 1].tolist()) for n in range(ctx.p)]


def touchard_value_table(ctx: PrimeContext, matrix: np.ndarray | None = None) -> np.ndarray:
    """Table E with E[n, x] = T_n(x) mod p for all n, x < p."""
    p = ctx.p
    if matrix is None:
        matrix = touchard_coeff_matrix(ctx)
    powers = np.zeros((p, p), dtype=np.int64)
    powers[0, :] = 1 % p
    xs = np.arange(p, dtype=np.int64)
    for k in range(1, p):
        powers[k] = powers[k - 1] * xs % p
    table = _mod_matmul(matrix, powers, p)
    table.setflags(write=False)
    return table
