"""Log-concavity ladder for finite nonnegative sequences, with exact root counting.

The conditions, weakest useful first:

  a0  no internal zeros (support is an interval)
  a1  unimodal, plateaus allowed
  a2  a_k^2 >= a_{k-1} a_{k+1} on the interior
  a3  log-concave after weighting by k!
  a4  log-concave after dividing by C(m,k)   (needs the ambient size m)
  a5  log-concave after dividing by C(r,k)
  a6  sum a_k t^k has only real, nonpositive roots

a6 implies a5 and a0; a5 => a4 => a3 => a2; a2 plus a0 give a1.  All checks
are exact over the rationals; a6 goes through square-free decomposition and
Sturm chains rather than numeric root finding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

from .matroids import Matroid, comb_frac, invariant_sequences

CONDITIONS = ("a0", "a1", "a2", "a3", "a4", "a5", "a6")


def _rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected a rational entry, got {type(x).__name__}")


@dataclass(frozen=True)
class Seq:
    """Nonnegative rational entries a_s .. a_r, with an optional ambient size m."""

    offset: int
    entries: tuple[Fraction, ...]
    m: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(_rational(x) for x in self.entries))
        if self.offset < 0:
            raise ValueError("offset must be nonnegative")
        if not self.entries:
            raise ValueError("empty sequence")
        if any(x < 0 for x in self.entries):
            raise ValueError("entries must be nonnegative")
        if self.m is not None and self.r > self.m:
            raise ValueError("top index exceeds the ambient size m")

    @property
    def s(self) -> int:
        return self.offset

    @property
    def r(self) -> int:
        return self.offset + len(self.entries) - 1

    def at(self, k: int) -> Fraction:
        """a_k with zero-padding outside [s, r]."""
        i = k - self.offset
        if 0 <= i < len(self.entries):
            return self.entries[i]
        return Fraction(0)


def seq_from_values(values: Iterable, m: int | None = None, offset: int = 0) -> Seq:
    return Seq(offset, tuple(_rational(v) for v in values), m)


@dataclass(frozen=True)
class ConditionVerdict:
    condition: str
    holds: bool
    witness: int | None = None

    def __bool__(self) -> bool:
        return self.holds


def _log_concavity(seq: Seq, weight) -> ConditionVerdict:
    # weighted entries b_k = weight(k) * a_k; check b_k^2 >= b_{k-1} b_{k+1}
    vals = [weight(seq.offset + i) * a for i, a in enumerate(seq.entries)]
    for i in range(1, len(vals) - 1):
        if vals[i] * vals[i] < vals[i - 1] * vals[i + 1]:
            return ConditionVerdict("a2", False, seq.offset + i)
    return ConditionVerdict("a2", True)


def check_condition(seq: Seq, cond: str) -> ConditionVerdict:
    """Exact verdict for one ladder condition, with a failing index when there is one."""
    entries = seq.entries
    n = len(entries)
    if cond == "a0":
        nz = [i for i, a in enumerate(entries) if a]
        if nz:
            for i in range(nz[0], nz[-1] + 1):
                if not entries[i]:
                    return ConditionVerdict(cond, False, seq.offset + i)
        return ConditionVerdict(cond, True)
    if cond == "a1":
        descended = False
        for i in range(1, n):
            if entries[i] < entries[i - 1]:
                descended = True
            elif entries[i] > entries[i - 1] and descended:
                return ConditionVerdict(cond, False, seq.offset + i)
        return ConditionVerdict(cond, True)
    if cond == "a2":
        v = _log_concavity(seq, lambda k: Fraction(1))
        return ConditionVerdict(cond, v.holds, v.witness)
    if cond == "a3":
        v = _log_concavity(seq, lambda k: Fraction(factorial(k)))
        return ConditionVerdict(cond, v.holds, v.witness)
    if cond == "a4":
        if seq.m is None:
            raise ValueError("condition a4 needs the ambient size m")
        m = seq.m
        v = _log_concavity(seq, lambda k: 1 / comb_frac(m, k))
        return ConditionVerdict(cond, v.holds, v.witness)
    if cond == "a5":
        r = seq.r
        v = _log_concavity(seq, lambda k: 1 / comb_frac(r, k))
        return ConditionVerdict(cond, v.holds, v.witness)
    if cond == "a6":
        p = seq_poly(seq)
        if p.is_zero:
            return ConditionVerdict(cond, True)
        real = sturm_real_roots(p)
        positive = sturm_real_roots(p, (Fraction(0), None))
        return ConditionVerdict(cond, real == p.degree and positive == 0)
    raise ValueError(f"unknown condition {cond!r}")


def check_many(seq: Seq, conds: Sequence[str]) -> dict[str, ConditionVerdict]:
    return {c: check_condition(seq, c) for c in conds}


# --- exact univariate machinery ----------------------------------------------------


class UniPoly:
    """Dense univariate polynomial over the rationals. Internal plumbing for a6."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = [_rational(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1]

    def __eq__(self, other) -> bool:
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UniPoly({list(self.coeffs)})"

    def evaluate(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def monic(self) -> "UniPoly":
        if self.is_zero:
            return self
        lead = self.lead
        return UniPoly(c / lead for c in self.coeffs)

    def scale(self, x: Fraction) -> "UniPoly":
        return UniPoly(c * x for c in self.coeffs)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] -= c
        return UniPoly(a)

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly([]), self
        quo = [Fraction(0)] * (dq + 1)
        dlead = other.lead
        for i in range(dq, -1, -1):
            c = rem[i + other.degree] / dlead
            quo[i] = c
            if c:
                for j, oc in enumerate(other.coeffs):
                    rem[i + j] -= c * oc
        return UniPoly(quo), UniPoly(rem)

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if not r.is_zero:
            raise ValueError("inexact polynomial division")
        return q

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]


def seq_poly(seq: Seq) -> UniPoly:
    coeffs = [Fraction(0)] * seq.offset + list(seq.entries)
    return UniPoly(coeffs)


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    while not b.is_zero:
        a, b = b, a % b
    return a.monic() if not a.is_zero else a


def squarefree_decompose(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: p = const * prod g_i^i with the g_i squarefree, coprime."""
    if p.is_zero:
        raise ValueError("zero polynomial")
    if p.degree < 1:
        return []
    d = poly_gcd(p, p.derivative())
    if d.degree == 0:
        return [(p.monic(), 1)]
    b = p // d
    c = p.derivative() // d
    out: list[tuple[UniPoly, int]] = []
    i = 1
    while b.degree >= 1:
        w = c - b.derivative()
        a = poly_gcd(b, w)
        if a.degree >= 1:
            out.append((a, i))
            b = b // a
            c = w // a
        else:
            c = w
        i += 1
    return out


def _sturm_chain(p: UniPoly) -> list[UniPoly]:
    chain = [p, p.derivative()]
    while not chain[-1].is_zero:
        rem = chain[-2] % chain[-1]
        chain.append(rem.scale(Fraction(-1)))
    chain.pop()
    return chain


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _variations(signs: list[int]) -> int:
    seq = [s for s in signs if s]
    return sum(1 for a, b in zip(seq, seq[1:]) if a != b)


def _variations_at(chain: list[UniPoly], point: Fraction | None, neg_infinity: bool = False) -> int:
    if point is None:
        if neg_infinity:
            signs = [_sign(f.lead) * (-1 if f.degree & 1 else 1) for f in chain]
        else:
            signs = [_sign(f.lead) for f in chain]
    else:
        signs = [_sign(f.evaluate(point)) for f in chain]
    return _variations(signs)


def _deflate(p: UniPoly, root: Fraction) -> UniPoly:
    return p // UniPoly([-root, Fraction(1)])


def _distinct_roots_in(p: UniPoly, lo: Fraction | None, hi: Fraction | None) -> int:
    """Distinct real roots of squarefree p in (lo, hi]; None means unbounded."""
    count = 0
    if hi is not None and not p.evaluate(hi):
        count += 1
        p = _deflate(p, hi)
    if lo is not None and not p.evaluate(lo):
        p = _deflate(p, lo)
    if p.degree < 1:
        return count
    chain = _sturm_chain(p)
    return count + _variations_at(chain, lo, neg_infinity=True) - _variations_at(chain, hi)


def sturm_real_roots(
    p: UniPoly, interval: tuple[Fraction | None, Fraction | None] | None = None
) -> int:
    """Real roots of p counted with multiplicity, restricted to (lo, hi] if given."""
    if p.is_zero:
        raise ValueError("zero polynomial")
    lo, hi = interval if interval is not None else (None, None)
    if lo is not None and hi is not None and lo >= hi:
        raise ValueError("empty interval")
    return sum(
        mult * _distinct_roots_in(factor, lo, hi)
        for factor, mult in squarefree_decompose(p)
    )


# --- convolution -------------------------------------------------------------------


@dataclass(frozen=True)
class ConvolutionRecord:
    n: int
    lhs: Fraction
    rhs: Fraction
    equal: bool
    c_window: tuple[Fraction, Fraction, Fraction]


def _term_view(x: "Seq | Sequence[Fraction]"):
    """(at, top_index) for a Seq or a raw list.  Raw lists may carry any signs;
    the square-difference identity does not need nonnegativity."""
    if isinstance(x, Seq):
        return x.at, x.r
    entries = [Fraction(v) for v in x]

    def at(k: int) -> Fraction:
        return entries[k] if 0 <= k < len(entries) else Fraction(0)

    return at, len(entries) - 1


def _c_term(a: "Seq | Sequence[Fraction]", b: "Seq | Sequence[Fraction]", n: int) -> Fraction:
    a_at, _ = _term_view(a)
    b_at, b_top = _term_view(b)
    return sum((a_at(n + k) * b_at(k) for k in range(b_top + 1)), Fraction(0))


def convolution_identity(
    a: "Seq | Sequence[Fraction]", b: "Seq | Sequence[Fraction]", n: int
) -> ConvolutionRecord:
    """c_n := sum_k a_{n+k} b_k.  Both sides of the exact square-difference expansion

        c_n^2 - c_{n-1} c_{n+1}
          = sum_{0<=j<=k} (a_{n+j}a_{n+k} - a_{n+j-1}a_{n+k+1})(b_j b_k - b_{j-1}b_{k+1})

    computed independently; equal must come back True on every input."""
    a_at, _ = _term_view(a)
    b_at, b_top = _term_view(b)
    c_prev, c_mid, c_next = (_c_term(a, b, n + d) for d in (-1, 0, 1))
    lhs = c_mid * c_mid - c_prev * c_next
    rhs = Fraction(0)
    top = b_top + 1
    for k in range(top + 1):
        for j in range(k + 1):
            left = a_at(n + j) * a_at(n + k) - a_at(n + j - 1) * a_at(n + k + 1)
            right = b_at(j) * b_at(k) - b_at(j - 1) * b_at(k + 1)
            rhs += left * right
    return ConvolutionRecord(n, lhs, rhs, lhs == rhs, (c_prev, c_mid, c_next))


def convolve(a: Seq, b: Seq) -> Seq:
    """The sequence c_n = sum_k a_{n+k} b_k over its full window, re-anchored at 0.

    If a and b are both log-concave with no internal zeros, c is too.
    """
    lo = a.s - b.r
    hi = a.r - b.s
    entries = [_c_term(a, b, n) for n in range(lo, hi + 1)]
    return Seq(0, tuple(entries), m=len(entries) - 1)


# --- matroid counting-sequence report -----------------------------------------------


@dataclass(frozen=True)
class MasonReport:
    m: int
    r: int
    independent: tuple[int, ...]
    flats_by_rank: tuple[int, ...]
    charpoly_magnitudes: tuple[int, ...]
    h_vector: tuple[Fraction, ...]
    h_integral: bool
    conditions: dict[str, ConditionVerdict]
    h_log_concave: bool
    h_lym_nonincreasing: bool

    @property
    def conjectured_ok(self) -> bool:
        """The conjectured conditions: ladder through a4 on I_k plus h log-concavity.

        a5 on I_k is reported but not gated; it already fails for small graphic
        matroids and nobody claims it.  h_lym_nonincreasing is likewise reported
        only: with h anchored so that h_0 = 1, the ratio h_k/C(m,k) rises again
        at the top for U(m,3) whenever m >= 5, so it cannot gate.
        """
        ladder = all(self.conditions[f"i{j}"].holds for j in range(5))
        return ladder and self.h_log_concave


def mason_report(matroid: Matroid) -> MasonReport:
    inv = invariant_sequences(matroid)
    iseq = Seq(0, tuple(Fraction(x) for x in inv.I), m=inv.m)
    conditions = {
        f"i{j}": ConditionVerdict(f"i{j}", *_strip(check_condition(iseq, f"a{j}")))
        for j in range(6)
    }
    h_ok = all(x >= 0 for x in inv.h)
    if h_ok:
        hseq = Seq(0, inv.h, m=inv.m)
        h_log = check_condition(hseq, "a0").holds and check_condition(hseq, "a2").holds
    else:
        h_log = False
    h_lym = all(
        inv.h[k] / comb_frac(inv.m, k) >= inv.h[k + 1] / comb_frac(inv.m, k + 1)
        for k in range(inv.r)
    )
    return MasonReport(
        m=inv.m,
        r=inv.r,
        independent=inv.I,
        flats_by_rank=inv.W,
        charpoly_magnitudes=inv.chi,
        h_vector=inv.h,
        h_integral=inv.h_integral,
        conditions=conditions,
        h_log_concave=h_log,
        h_lym_nonincreasing=h_lym,
    )


def _strip(v: ConditionVerdict) -> tuple[bool, int | None]:
    return v.holds, v.witness
