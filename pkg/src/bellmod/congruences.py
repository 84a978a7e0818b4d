"""Verifiers for the congruence identities tying Bell numbers, derangement
counts and Touchard polynomials together modulo a prime.

Every public ``verify_*`` function computes both sides of one identity by
routes that share as little code as possible and returns structured
reports; nothing here ever asserts, so a false identity simply shows up as
a failing report.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from . import oracle
from .modarith import (
    DensePoly,
    IndexTooLargeError,
    PrimeContext,
    Residue,
    normalize,
)
from .sequences import (
    BellRow,
    DerangementRow,
    bell_mod,
    bell_row,
    derangement_row,
    signed_series_row,
    touchard_polys_from_matrix,
    touchard_value_table,
)

__all__ = [
    "BadModulusError",
    "BadPointError",
    "Identity",
    "VerificationReport",
    "PARAM_ORDER",
    "make_report",
    "report_sort_key",
    "s_m",
    "s_m_many",
    "s_m_chain",
    "theorem1_rhs",
    "verify_theorem1",
    "verify_intro_constant",
    "verify_corollary",
    "verify_eq4",
    "verify_bell_p",
    "verify_touchard",
    "weighted_touchard_sum",
    "theorem2_lhs",
    "theorem2_rhs",
    "verify_theorem2",
    "verify_theorem2_eval",
    "verify_special_cases",
    "proof_intermediate",
    "verify_proof_intermediate",
    "verify_factorial_lemma",
    "geometric_sum_lemma_check",
]


class BadModulusError(ValueError):
    """Raised when a weight m is a multiple of p, so 1/m does not exist."""


class BadPointError(ValueError):
    """Raised when an evaluation point x is a multiple of p."""


class Identity(Enum):
    """Stable identifiers for the identities the sweep engine can check."""

    TOUCHARD_EQ1 = "TOUCHARD_EQ1"
    THEOREM1 = "THEOREM1"
    INTRO_CONSTANT = "INTRO_CONSTANT"
    COROLLARY = "COROLLARY"
    EQ4_BASE = "EQ4_BASE"
    EQ4_STEP = "EQ4_STEP"
    BELL_P = "BELL_P"
    THEOREM2_POLY = "THEOREM2_POLY"
    THEOREM2_EVAL = "THEOREM2_EVAL"
    SPECIAL_CASE_M = "SPECIAL_CASE_M"
    PROOF_INTERMEDIATE = "PROOF_INTERMEDIATE"
    FACTORIAL_LEMMA = "FACTORIAL_LEMMA"
    GEOMETRIC_SUM = "GEOMETRIC_SUM"


_IDENTITY_RANK = {ident: i for i, ident in enumerate(Identity)}

# canonical key order for params, report sorting and serialization
PARAM_ORDER = ("m", "n", "x", "k", "l", "j", "r")


@dataclass(frozen=True, eq=False)
class VerificationReport:
    """One checked instance of one identity at one prime.

    ``lhs`` and ``rhs`` are canonical residues (ints), or tuples of them
    for polynomial-valued identities.  ``params`` always includes ``p``,
    mirrored in the dedicated field for convenience.
    """

    identity: Identity
    p: int
    params: dict[str, int]
    lhs: int | tuple[int, ...]
    rhs: int | tuple[int, ...]
    passed: bool


def make_report(
    identity: Identity,
    ctx: PrimeContext,
    params: dict[str, int],
    lhs: int | tuple[int, ...],
    rhs: int | tuple[int, ...],
) -> VerificationReport:
    full = {"p": ctx.p}
    full.update(params)
    return VerificationReport(identity, ctx.p, full, lhs, rhs, lhs == rhs)


def report_sort_key(r: VerificationReport) -> tuple:
    """Canonical total order: identity, then p, then params."""
    return (
        _IDENTITY_RANK[r.identity],
        r.p,
        tuple(r.params.get(k, -1) for k in PARAM_ORDER),
    )


def _require_unit(ctx: PrimeContext, m: int) -> None:
    if m < 1:
        raise ValueError(f"weight m must be positive, got {m}")
    if m % ctx.p == 0:
        raise BadModulusError(f"m = {m} is a multiple of p = {ctx.p}")


def _neg_inv(ctx: PrimeContext, m: int) -> int:
    """1 / (-m) mod p for a unit m."""
    return pow(-m % ctx.p, ctx.p - 2, ctx.p)


def s_m(ctx: PrimeContext, m: int, row: BellRow | None = None) -> Residue:
    """The weighted Bell sum sum_{0<k<p} B_k / (-m)^k mod p."""
    _require_unit(ctx, m)
    p = ctx.p
    if row is None:
        row = bell_row(ctx)
    vals = row.values.tolist()
    u = _neg_inv(ctx, m)
    acc = 0
    upow = 1
    for k in range(1, p):
        upow = upow * u % p
        acc = (acc + vals[k] * upow) % p
    return Residue(acc, ctx)


def s_m_many(
    ctx: PrimeContext, ms: Sequence[int], row: BellRow | None = None
) -> list[int]:
    """Vectorized s_m for many weights at once; aligned with ms."""
    p = ctx.p
    for m in ms:
        _require_unit(ctx, m)
    if not ms:
        return []
    if row is None:
        row = bell_row(ctx)
    u = np.array([_neg_inv(ctx, m) for m in ms], dtype=np.int64)
    acc = np.zeros(len(ms), dtype=np.int64)
    cur = np.ones(len(ms), dtype=np.int64)
    vals = row.values
    for k in range(1, p):
        cur = cur * u % p
        acc = (acc + int(vals[k]) * cur) % p
    return acc.tolist()


def theorem1_rhs(
    ctx: PrimeContext,
    m: int,
    drow: DerangementRow | None = None,
    sigma: np.ndarray | None = None,
) -> Residue:
    """(-1)^(m-1) D_{m-1} mod p.

    For m - 1 < p this reads the derangement row directly.  Larger weights
    use the alternating falling-factorial series, which mod p depends on
    m - 1 only through its residue; the series carries the sign itself.
    """
    _require_unit(ctx, m)
    p = ctx.p
    n0 = m - 1
    if n0 < p:
        if drow is None:
            drow = derangement_row(ctx)
        d = int(drow.values[n0])
        return Residue(d if n0 % 2 == 0 else -d % p, ctx)
    if sigma is None:
        sigma = signed_series_row(ctx)
    return Residue(int(sigma[n0 % p]), ctx)


def verify_theorem1(
    ctx: PrimeContext,
    m: int,
    row: BellRow | None = None,
    drow: DerangementRow | None = None,
    sigma: np.ndarray | None = None,
) -> VerificationReport:
    """Check sum_{0<k<p} B_k / (-m)^k = (-1)^(m-1) D_{m-1} (mod p)."""
    lhs = s_m(ctx, m, row)
    rhs = theorem1_rhs(ctx, m, drow, sigma)
    return make_report(Identity.THEOREM1, ctx, {"m": m}, lhs.value, rhs.value)


def verify_intro_constant(
    ctx: PrimeContext, m: int = 8, row: BellRow | None = None
) -> VerificationReport:
    """Check that sum_{n=0}^{p-1} B_n / (-m)^n is the same integer mod every
    prime not dividing m: 1 + (-1)^(m-1) D_{m-1}, with D taken exactly.

    At the default weight m = 8 the constant is -1853.
    """
    _require_unit(ctx, m)
    lhs = (1 + s_m(ctx, m, row).value) % ctx.p  # the n = 0 term contributes B_0 = 1
    sign = 1 if (m - 1) % 2 == 0 else -1
    rhs = normalize(1 + sign * oracle.derangement_exact(m - 1), ctx)
    return make_report(Identity.INTRO_CONSTANT, ctx, {"m": m}, lhs, rhs.value)


def verify_corollary(
    ctx: PrimeContext,
    row: BellRow | None = None,
    drow: DerangementRow | None = None,
) -> list[VerificationReport]:
    """Check the closed form B_n = sum_{0<m<p} (-1)^m D_{m-1} (-m)^n (mod p)
    for 0 < n < p, plus the power-sum kernel it rests on:
    sum_{0<m<p} (-m)^(n-k) = -[n = k] (mod p) for 0 < n, k < p.
    """
    p = ctx.p
    if row is None:
        row = bell_row(ctx)
    if drow is None:
        drow = derangement_row(ctx)
    base = (p - np.arange(1, p, dtype=np.int64)) % p  # (-m) mod p for m = 1..p-1
    weights = drow.values[: p - 1].copy()  # D_{m-1} for m = 1..p-1
    weights[::2] = (p - weights[::2]) % p  # odd m gets the minus sign
    reports = []
    cur = np.ones(p - 1, dtype=np.int64)
    for n in range(1, p):
        cur = cur * base % p
        rhs = int(weights @ cur % p) if p * p * p < 2**62 else _chunk_dot(weights, cur, p)
        lhs = int(row.values[n])
        reports.append(make_report(Identity.COROLLARY, ctx, {"n": n}, lhs, rhs))
    # kernel power sums K[e] = sum_m (-m)^e
    kernel = np.zeros(max(p - 1, 1), dtype=np.int64)
    cur = np.ones(p - 1, dtype=np.int64)
    kernel[0] = (p - 1) % p
    for e in range(1, p - 1):
        cur = cur * base % p
        kernel[e] = int(cur.sum() % p) if p * p * p < 2**62 else _chunk_sum(cur, p)
    for n in range(1, p):
        for k in range(1, p):
            lhs = int(kernel[(n - k) % (p - 1)])
            rhs = (p - 1) % p if n == k else 0
            reports.append(
                make_report(Identity.COROLLARY, ctx, {"n": n, "k": k}, lhs, rhs)
            )
    return reports


def _chunk_dot(a: np.ndarray, b: np.ndarray, p: int) -> int:
    chunk = max(1, 2**62 // (p * p))
    total = 0
    for i in range(0, a.shape[0], chunk):
        total = (total + int(a[i : i + chunk] @ b[i : i + chunk])) % p
    return total


def _chunk_sum(v: np.ndarray, p: int) -> int:
    chunk = max(1, 2**62 // p)
    total = 0
    for i in range(0, v.shape[0], chunk):
        total = (total + int(v[i : i + chunk].sum())) % p
    return total


def verify_eq4(
    ctx: PrimeContext, row: BellRow | None = None
) -> list[VerificationReport]:
    """Check the weighted-sum chain: S_1 = 1 and m S_m = S_1 - S_{m+1}
    (mod p) for 1 <= m <= p - 2.  Needs p >= 3 to have any chain step.
    """
    p = ctx.p
    if p < 3:
        raise BadModulusError("the chain needs p >= 3")
    if row is None:
        row = bell_row(ctx)
    svals = s_m_many(ctx, list(range(1, p)), row)
    s = dict(zip(range(1, p), svals))
    reports = [make_report(Identity.EQ4_BASE, ctx, {"m": 1}, s[1], 1 % p)]
    for m in range(1, p - 1):
        lhs = m * s[m] % p
        rhs = (s[1] - s[m + 1]) % p
        reports.append(make_report(Identity.EQ4_STEP, ctx, {"m": m}, lhs, rhs))
    return reports


def s_m_chain(ctx: PrimeContext) -> list[int]:
    """All S_m for m = 1..p-1 unrolled from the chain alone: S_1 = 1 and
    S_{m+1} = 1 - m S_m.  Returns a list indexed by m (slot 0 unused).
    No Bell number is ever computed; compare against s_m_many to close the
    loop.
    """
    p = ctx.p
    if p < 3:
        raise BadModulusError("the chain needs p >= 3")
    out = [0] * p
    out[1] = 1 % p
    for m in range(1, p - 1):
        out[m + 1] = (1 - m * out[m]) % p
    return out


def verify_bell_p(ctx: PrimeContext, row: BellRow | None = None) -> VerificationReport:
    """Check B_p = 2 (mod p).

    The left side extends the Bell row one step by the genuine binomial
    recurrence B_p = sum_k C(p-1, k) B_k; the right side is the constant.
    """
    p = ctx.p
    if row is None:
        row = bell_row(ctx)
    w = ctx.inv_fact_np * ctx.inv_fact_np[::-1] % p
    lhs = int(ctx.fact[p - 1]) * _chunk_dot(w, row.values, p) % p
    return make_report(Identity.BELL_P, ctx, {}, lhs, 2 % p)


def verify_touchard(
    ctx: PrimeContext, n_max: int | None = None, row: BellRow | None = None
) -> list[VerificationReport]:
    """Check B_{p+n} = B_n + B_{n+1} (mod p) for 0 <= n <= n_max.

    Both sides go through bell_mod, so indices past p exercise the
    composed index folds against the single fold.
    """
    p = ctx.p
    if n_max is None:
        n_max = p
    if p + n_max >= p * p:
        raise IndexTooLargeError(f"n_max {n_max} needs p + n < p**2")
    if row is None:
        row = bell_row(ctx)
    reports = []
    for n in range(n_max + 1):
        lhs = bell_mod(p + n, ctx, row).value
        rhs = (bell_mod(n, ctx, row).value + bell_mod(n + 1, ctx, row).value) % p
        reports.append(make_report(Identity.TOUCHARD_EQ1, ctx, {"n": n}, lhs, rhs))
    return reports


def weighted_touchard_sum(
    ctx: PrimeContext, m: int, polys: Sequence[DensePoly] | None = None
) -> DensePoly:
    """sum_{0<n<p} T_n(x) / (-m)^n as a polynomial mod p."""
    _require_unit(ctx, m)
    p = ctx.p
    if polys is None:
        polys = touchard_polys_from_matrix(ctx)
    u = _neg_inv(ctx, m)
    acc = [0] * p
    upow = 1
    for n in range(1, p):
        upow = upow * u % p
        for k, c in enumerate(polys[n].coeffs):
            acc[k] = (acc[k] + upow * c) % p
    return DensePoly(ctx, acc)


def theorem2_lhs(
    ctx: PrimeContext, m: int, polys: Sequence[DensePoly] | None = None
) -> DensePoly:
    """(-x)^m sum_{0<n<p} T_n(x) / (-m)^n as a polynomial mod p."""
    inner = weighted_touchard_sum(ctx, m, polys)
    sign = 1 if m % 2 == 0 else -1
    return inner.mul_monomial(m, sign)


def theorem2_rhs(ctx: PrimeContext, m: int) -> DensePoly:
    """-x^p sum_{l=0}^{m-1} ((m-1)!/l!) (-x)^l as a polynomial mod p.

    (m-1)!/l! is the integer product (l+1)(l+2)...(m-1), accumulated
    downward from l = m-1 with each factor reduced mod p; it is never
    formed by modular division, which would break once the factorials
    vanish.
    """
    _require_unit(ctx, m)
    p = ctx.p
    coeffs = [0] * (p + m)
    c = 1  # (m-1)!/l! at l = m-1 is the empty product
    for l in range(m - 1, -1, -1):
        coeffs[p + l] = -c % p if l % 2 == 0 else c
        if l > 0:
            c = c * (l % p) % p
    return DensePoly(ctx, coeffs)


def verify_theorem2(
    ctx: PrimeContext, m: int, polys: Sequence[DensePoly] | None = None
) -> VerificationReport:
    """Compare both sides of the polynomial congruence as coefficient
    tuples; they agree identically in x when the identity holds."""
    lhs = theorem2_lhs(ctx, m, polys)
    rhs = theorem2_rhs(ctx, m)
    return make_report(
        Identity.THEOREM2_POLY, ctx, {"m": m}, tuple(lhs.coeffs), tuple(rhs.coeffs)
    )


def verify_theorem2_eval(
    ctx: PrimeContext,
    m: int,
    x: int,
    values: np.ndarray | None = None,
) -> VerificationReport:
    """Check the evaluated form at one point x with p not dividing x:

    sum_{0<n<p} T_n(x) / (-m)^n = -x^p sum_l ((m-1)!/l!) (-x)^l / (-x)^m.

    The left side sums the tabulated T_n(x); the right side evaluates the
    closed-form polynomial and divides by (-x)^m.
    """
    _require_unit(ctx, m)
    p = ctx.p
    if x % p == 0:
        raise BadPointError(f"x = {x} is a multiple of p = {p}")
    if values is None:
        values = touchard_value_table(ctx)
    xv = x % p
    u = _neg_inv(ctx, m)
    acc = 0
    upow = 1
    for n in range(1, p):
        upow = upow * u % p
        acc = (acc + int(values[n, xv]) * upow) % p
    denom = pow(-xv % p, m, p)
    rhs = theorem2_rhs(ctx, m).eval(xv).value * pow(denom, p - 2, p) % p
    return make_report(Identity.THEOREM2_EVAL, ctx, {"m": m, "x": xv}, acc, rhs)


# numerators of the displayed low-weight cases, ascending; the denominator
# of case m is x^(m-1)
_SPECIAL_NUMERATORS = {
    2: (-1, 1),
    3: (2, -2, 1),
    4: (-6, 6, -3, 1),
}


def verify_special_cases(
    ctx: PrimeContext, x: int, values: np.ndarray | None = None
) -> list[VerificationReport]:
    """Check the displayed m = 2, 3, 4 evaluations of the weighted sum
    against their hard-coded rational forms, at one point x coprime to p.
    Weights divisible by p are skipped.
    """
    p = ctx.p
    if x % p == 0:
        raise BadPointError(f"x = {x} is a multiple of p = {p}")
    if values is None:
        values = touchard_value_table(ctx)
    xv = x % p
    reports = []
    for m, numer in _SPECIAL_NUMERATORS.items():
        if m % p == 0:
            continue
        u = _neg_inv(ctx, m)
        acc = 0
        upow = 1
        for n in range(1, p):
            upow = upow * u % p
            acc = (acc + int(values[n, xv]) * upow) % p
        num = DensePoly(ctx, numer).eval(xv).value
        rhs = num * pow(pow(xv, m - 1, p), p - 2, p) % p
        reports.append(
            make_report(Identity.SPECIAL_CASE_M, ctx, {"m": m, "x": xv}, acc, rhs)
        )
    return reports


def least_positive_residue_of_neg(ctx: PrimeContext, m: int) -> int:
    """r in [1, p-1] with r = -m (mod p); the pivot index of the proofs."""
    _require_unit(ctx, m)
    return (-m) % ctx.p


def proof_intermediate(ctx: PrimeContext, m: int) -> DensePoly:
    """The closed form the weighted Touchard sum collapses to:

    sum_{0<n<p} T_n(x) / (-m)^n = ((-1)^(r+1) / r!) sum_{k=r}^{p-1}
    (-x)^k / (k-r)!  (mod p), with r the least positive residue of -m.
    """
    p = ctx.p
    r = least_positive_residue_of_neg(ctx, m)
    coeffs = [0] * p
    for k in range(r, p):
        v = ctx.inv_fact[r] * ctx.inv_fact[k - r] % p
        coeffs[k] = v if (r + 1 + k) % 2 == 0 else -v % p
    return DensePoly(ctx, coeffs)


def verify_proof_intermediate(
    ctx: PrimeContext, m: int, polys: Sequence[DensePoly] | None = None
) -> VerificationReport:
    """Compare the direct weighted Touchard sum against its closed form."""
    r = least_positive_residue_of_neg(ctx, m)
    lhs = weighted_touchard_sum(ctx, m, polys)
    rhs = proof_intermediate(ctx, m)
    return make_report(
        Identity.PROOF_INTERMEDIATE,
        ctx,
        {"m": m, "r": r},
        tuple(lhs.coeffs),
        tuple(rhs.coeffs),
    )


def verify_factorial_lemma(ctx: PrimeContext, m: int) -> list[VerificationReport]:
    """Check the two-branch reduction of (m-1)!/l! mod p for 0 <= l < m:

    it vanishes for l < m + r - p, and otherwise equals
    (-1)^(r+1) / (r! (p + l - m - r)!), with r the least positive residue
    of -m.  The left side is the bare integer product (l+1)...(m-1) with
    factors reduced mod p.
    """
    p = ctx.p
    r = least_positive_residue_of_neg(ctx, m)
    reports = []
    c = 1
    split = m + r - p
    rows = []
    for l in range(m - 1, -1, -1):
        rows.append((l, c))
        if l > 0:
            c = c * (l % p) % p
    for l, lhs in reversed(rows):
        if l < split:
            rhs = 0
        else:
            rhs = ctx.inv_fact[r] * ctx.inv_fact[p + l - m - r] % p
            if (r + 1) % 2 == 1:
                rhs = -rhs % p
        reports.append(
            make_report(Identity.FACTORIAL_LEMMA, ctx, {"m": m, "l": l, "r": r}, lhs, rhs)
        )
    return reports


def geometric_sum_lemma_check(ctx: PrimeContext, m: int) -> list[VerificationReport]:
    """Check sum_{n=1}^{p-1} (j / (-m))^n = -[p divides m + j] (mod p)
    for every j in 1..p-1, by direct accumulation of the powers.
    """
    _require_unit(ctx, m)
    p = ctx.p
    u = _neg_inv(ctx, m)
    js = np.arange(1, p, dtype=np.int64)
    q = js * u % p
    acc = np.zeros(p - 1, dtype=np.int64)
    cur = np.ones(p - 1, dtype=np.int64)
    for _ in range(1, p):
        cur = cur * q % p
        acc = (acc + cur) % p
    reports = []
    for idx, j in enumerate(range(1, p)):
        rhs = (p - 1) % p if (m + j) % p == 0 else 0
        reports.append(
            make_report(
                Identity.GEOMETRIC_SUM, ctx, {"m": m, "j": j}, int(acc[idx]), rhs
            )
        )
    return reports
