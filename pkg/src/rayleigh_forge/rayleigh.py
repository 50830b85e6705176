"""Verifying and refuting negative pairwise correlation, exactly.

A weight function is Rayleigh when every pair difference
rayleigh_diff(Z, e, f) is nonnegative on the positive orthant.  Sufficient
routes to Verified:

  * every coefficient of the difference is nonnegative, or
  * the difference dominates an explicit sum of squares
    sum(lambda_i (y^Ai - y^Bi)^2) coefficientwise.

Refutation is a concrete positive rational point where the difference is
negative; the stored witness value always re-evaluates exactly.  Sampling
that finds no negative point is only ever Inconclusive.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .matroids import Matroid
from .polynomials import (
    QuadPoly,
    SubsetPoly,
    SymSeq,
    canonical_ground,
    elementary_values,
    rayleigh_diff,
    size_sums,
    symmetrize,
    symseq_to_poly,
    theta,
)
from .prng import DEFAULT_SEED, SplitMix64, derive, log_uniform_fraction, sample_point, unit_fraction
from .scalars import format_rat


@dataclass(frozen=True)
class SquareCertificate:
    """Nonnegative combination sum(lambda_i (y^Ai - y^Bi)^2) with monomial A, B."""

    terms: tuple[tuple[Fraction, frozenset[str], frozenset[str]], ...]

    def __post_init__(self):
        for lam, a, b in self.terms:
            if lam <= 0:
                raise ValueError("certificate multipliers must be positive")
            if a == b:
                raise ValueError("certificate squares must be nonzero")

    def expand(self, ground) -> QuadPoly:
        total = QuadPoly.zero(ground)
        for lam, a, b in self.terms:
            wa, wb = ground.word(a), ground.word(b)
            square = QuadPoly(
                ground,
                {
                    (wa, wa): Fraction(lam),
                    (wb, wb): Fraction(lam),
                },
            )
            cross = QuadPoly(ground, {(wa | wb, wa & wb): Fraction(-2) * lam})
            total = total + square + cross
        return total


@dataclass(frozen=True)
class CoeffStrategy:
    pass


@dataclass(frozen=True)
class CertificateStrategy:
    certificates: Mapping[tuple[str, str], SquareCertificate] = field(default_factory=dict)

    def certificate_for(self, e: str, f: str) -> SquareCertificate:
        got = self.certificates.get((e, f)) or self.certificates.get((f, e))
        return got if got is not None else SquareCertificate(())


@dataclass(frozen=True)
class SampleStrategy:
    samples: int = 1000
    seed: int = DEFAULT_SEED


Strategy = CoeffStrategy | CertificateStrategy | SampleStrategy


@dataclass(frozen=True)
class RayleighVerdict:
    """Verified(method) / Refuted(pair, witness, value) / Inconclusive(samples, min)."""

    status: str
    method: str | None = None
    pair: tuple[str, str] | None = None
    witness: Mapping[str, Fraction] | None = None
    value: Fraction | None = None
    index: int | None = None
    samples: int = 0
    min_value: Fraction | None = None

    @property
    def verified(self) -> bool:
        return self.status == "verified"

    @property
    def refuted(self) -> bool:
        return self.status == "refuted"

    def describe(self) -> str:
        if self.status == "verified":
            return f"Verified ({self.method})"
        if self.status == "refuted":
            where = (
                f" at index {self.index}"
                if self.witness is None
                else " at " + _point_text(self.witness) + f" (value {format_rat(self.value)})"
            )
            pair = f" pair {self.pair}" if self.pair else ""
            return f"Refuted{pair}{where}"
        extra = "" if self.min_value is None else f", min sampled {format_rat(self.min_value)}"
        return f"Inconclusive ({self.samples} samples{extra})"


def _point_text(point: Mapping[str, Fraction]) -> str:
    inner = ", ".join(f"{k}={format_rat(v)}" for k, v in sorted(point.items()))
    return "{" + inner + "}"


def covariance(z: SubsetPoly, e: str, f: str, point: Mapping[str, Fraction]) -> Fraction:
    """Cov(X_e, X_f) under the external-field measure at a positive point.

    Computed directly from the measure: <X_e X_f> - <X_e><X_f>.  Matches
    -(y_e y_f / Z^2) * rayleigh_diff evaluated at the same point.
    """
    if not z.is_rational():
        raise TypeError("covariance needs rational coefficients")
    for lab, v in point.items():
        if v <= 0:
            raise ValueError(f"coordinate {lab!r} must be positive")
    be, bf = z.ground.bit(e), z.ground.bit(f)
    vals = [point[lab] for lab in z.ground.labels]
    total = Fraction(0)
    p_e = Fraction(0)
    p_f = Fraction(0)
    p_ef = Fraction(0)
    for w, c in z.terms.items():
        mass = c
        rest = w
        while rest:
            low = rest & -rest
            mass *= vals[low.bit_length() - 1]
            rest ^= low
        total += mass
        if w & be:
            p_e += mass
        if w & bf:
            p_f += mass
        if w & be and w & bf:
            p_ef += mass
    if total == 0:
        raise ZeroDivisionError("partition function vanishes at the point")
    return p_ef / total - (p_e / total) * (p_f / total)


def scalar_pair_diff(z: SubsetPoly, e: str, f: str, point: Mapping[str, Fraction]) -> Fraction:
    """rayleigh_diff(z, e, f) at a point, via scalar slice arithmetic only.

    Independent of the QuadPoly route; used to re-check refutation witnesses.
    """
    ze_f = z.contract(e).delete(f)
    zf_e = z.contract(f).delete(e)
    zef = z.contract(e).contract(f)
    znone = z.delete(e).delete(f)
    return ze_f.evaluate(point) * zf_e.evaluate(point) - zef.evaluate(point) * znone.evaluate(point)


def check_pair(z: SubsetPoly, e: str, f: str, strategy: Strategy) -> RayleighVerdict:
    """One pair, one strategy.  Sign decisions need rational coefficients."""
    if not z.is_rational():
        raise TypeError("pair checks need rational coefficients; evaluate q first")
    diff = rayleigh_diff(z, e, f)
    return _judge(diff, (e, f), strategy)


def _judge(diff: QuadPoly, pair: tuple[str, str], strategy: Strategy) -> RayleighVerdict:
    if isinstance(strategy, CoeffStrategy):
        if diff.is_coefficientwise_nonnegative():
            return RayleighVerdict("verified", method="coeff-positive", pair=pair)
        return RayleighVerdict("inconclusive", pair=pair, samples=0)
    if isinstance(strategy, CertificateStrategy):
        cert = strategy.certificate_for(*pair)
        residue = diff - cert.expand(diff.ground)
        if residue.is_coefficientwise_nonnegative():
            return RayleighVerdict("verified", method="certificate", pair=pair)
        return RayleighVerdict("inconclusive", pair=pair, samples=0)
    if isinstance(strategy, SampleStrategy):
        rng = SplitMix64(strategy.seed)
        labels = diff.ground.labels
        min_value: Fraction | None = None
        for i in range(strategy.samples):
            point = sample_point(rng, labels)
            value = diff.evaluate(point)
            if min_value is None or value < min_value:
                min_value = value
            if value < 0:
                return RayleighVerdict(
                    "refuted", pair=pair, witness=dict(point), value=value, samples=i + 1
                )
        return RayleighVerdict(
            "inconclusive", pair=pair, samples=strategy.samples, min_value=min_value
        )
    raise TypeError(f"unknown strategy {strategy!r}")


@dataclass(frozen=True)
class PairSweep:
    """check_all output: per-pair verdicts plus the aggregated summary."""

    verdicts: dict[tuple[str, str], RayleighVerdict]
    summary: str

    @property
    def all_verified(self) -> bool:
        return self.summary == "verified"

    def worst(self) -> RayleighVerdict | None:
        for v in self.verdicts.values():
            if v.refuted:
                return v
        for v in self.verdicts.values():
            if v.status == "inconclusive":
                return v
        return None


def check_all(z: SubsetPoly, strategy: Strategy, budget: int | None = None) -> PairSweep:
    """Every unordered pair.  Sampling derives one child stream per pair, so
    results do not depend on scheduling; RAYLEIGH_FORGE_THREADS > 1 fans the
    pairs out over a thread pool."""
    labels = z.ground.labels
    pairs = [(labels[i], labels[j]) for i in range(len(labels)) for j in range(i + 1, len(labels))]

    def job(idx_pair):
        idx, (e, f) = idx_pair
        strat = strategy
        if isinstance(strategy, SampleStrategy):
            n = budget if budget is not None else strategy.samples
            strat = SampleStrategy(n, derive(strategy.seed, idx).next_u64())
        return (e, f), check_pair(z, e, f, strat)

    threads = int(os.environ.get("RAYLEIGH_FORGE_THREADS", "1") or "1")
    if threads > 1 and len(pairs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(job, enumerate(pairs)))
    else:
        results = [job(item) for item in enumerate(pairs)]
    verdicts = dict(results)
    if any(v.refuted for v in verdicts.values()):
        summary = "refuted"
    elif any(v.status == "inconclusive" for v in verdicts.values()):
        summary = "inconclusive"
    else:
        summary = "verified"
    return PairSweep(verdicts=verdicts, summary=summary)


# --- exchangeable weights -------------------------------------------------------


def exchangeable_check(seq: SymSeq, find_witness: bool = True) -> RayleighVerdict:
    """Exact Rayleigh test for exchangeable weights.

    An exchangeable partition function is Rayleigh iff its coefficient
    sequence is log-concave with no internal zeros.  Refutations carry the
    violating index; for small m an explicit refuting point is also found by
    pushing the other variables toward 0/infinity along a dyadic ladder.
    """
    a = seq.entries
    m = seq.m
    for c in a:
        if c < 0:
            raise ValueError("entries must be nonnegative")
    nonzero = [k for k, c in enumerate(a) if c]
    if not nonzero:
        raise ValueError("sequence is identically zero")
    lo, hi = nonzero[0], nonzero[-1]
    bad = None
    for k in range(lo + 1, hi):
        if a[k] == 0:
            bad = k
            break
    if bad is None:
        for k in range(1, m):
            if a[k] * a[k] < a[k - 1] * a[k + 1]:
                bad = k
                break
    if bad is None:
        return RayleighVerdict("verified", method="exchangeable")
    witness = value = pair = None
    if find_witness and 2 <= m <= 8:
        found = _exchangeable_witness(seq, bad)
        if found is not None:
            pair, witness, value = found
    return RayleighVerdict("refuted", pair=pair, witness=witness, value=value, index=bad)


def _exchangeable_witness(seq: SymSeq, k: int):
    """Explicit negative point for a log-concavity violation at index k."""
    m = seq.m
    ground = canonical_ground(m)
    labels = ground.labels
    z = symseq_to_poly(seq, ground)
    if k == 0 or k == m:
        # violation from an internal zero at the boundary of the support
        k = max(1, min(m - 1, k))
    e, f = labels[k - 1], labels[k]
    diff = rayleigh_diff(z, e, f)
    others = [lab for lab in labels if lab not in (e, f)]
    for step in range(1, 41):
        t = Fraction(1, 2**step)
        point = {}
        for i, lab in enumerate(others):
            point[lab] = 1 / t if i < k - 1 else t
        value = diff.evaluate(point)
        if value < 0:
            return (e, f), point, value
    return None


@dataclass(frozen=True)
class SymmetrizationReport:
    symmetrized: SymSeq
    base_sweep: PairSweep
    symmetrized_verdict: RayleighVerdict
    counterexample: bool
    note: str


def symmetrize_and_check(z: SubsetPoly) -> SymmetrizationReport:
    """Average the weights over subset sizes, then test the symmetrized function.

    A coefficientwise-Verified input whose symmetrization refutes would be a
    counterexample to the conjecture that averaging preserves the Rayleigh
    property; the report flags that combination explicitly.
    """
    seq = symmetrize(z)
    base = check_all(z, CoeffStrategy())
    sym_verdict = exchangeable_check(seq)
    counterexample = base.all_verified and sym_verdict.refuted
    if counterexample:
        note = "counterexample: verified input, refuted symmetrization"
    elif base.all_verified:
        note = "input verified coefficientwise; symmetrization " + sym_verdict.status
    else:
        note = "input not verified coefficientwise; no conclusion about preservation"
    return SymmetrizationReport(
        symmetrized=seq,
        base_sweep=base,
        symmetrized_verdict=sym_verdict,
        counterexample=counterexample,
        note=note,
    )


@dataclass(frozen=True)
class MarginReport:
    """Sampled margins of the symmetrized-slice comparison for one pair.

    margin(y) = z_e(y) z_f(y) - z_ef(y) ztop(y) over the m-2 anonymous
    variables, where z_e symmetrizes the contraction slice at e (placed off
    the pair and restricted), z_ef symmetrizes the double contraction, and
    ztop is the doubly-deleted symmetrization of the input.  A probe, not a
    verdict: nonnegative margins prove nothing on their own.
    """

    pair: tuple[str, str]
    z_e: tuple[Fraction, ...]
    z_f: tuple[Fraction, ...]
    z_ef: tuple[Fraction, ...]
    z_top: tuple[Fraction, ...]
    margins: tuple[tuple[tuple[Fraction, ...], Fraction], ...]
    min_margin: Fraction
    nonnegative: bool


def conjecture_probe(
    z: SubsetPoly, e: str, f: str, samples: int = 100, seed: int = DEFAULT_SEED
) -> MarginReport:
    if not z.is_rational():
        raise TypeError("probe needs rational coefficients")
    m = z.ground.m
    if m < 3:
        raise ValueError("probe needs at least three elements")
    if e == f:
        raise ValueError("need two distinct elements")

    def truncated(entries: Iterable[Fraction]) -> tuple[Fraction, ...]:
        entries = tuple(entries)
        return entries[: m - 1]  # e_k over m-2 variables vanishes beyond k = m-2

    z_e = truncated(symmetrize(z.contract(e)).entries)
    z_f = truncated(symmetrize(z.contract(f)).entries)
    z_ef = truncated(symmetrize(z.contract(e).contract(f)).entries)
    z_top = truncated(symmetrize(z).entries)

    rng = SplitMix64(seed)
    margins = []
    min_margin: Fraction | None = None
    for _ in range(samples):
        coords = [log_uniform_fraction(rng) for _ in range(m - 2)]
        es = elementary_values(coords)

        def val(entries) -> Fraction:
            return sum((c * es[k] for k, c in enumerate(entries) if k < len(es)), Fraction(0))

        margin = val(z_e) * val(z_f) - val(z_ef) * val(z_top)
        margins.append((tuple(coords), margin))
        if min_margin is None or margin < min_margin:
            min_margin = margin
    return MarginReport(
        pair=(e, f),
        z_e=z_e,
        z_f=z_f,
        z_ef=z_ef,
        z_top=z_top,
        margins=tuple(margins),
        min_margin=min_margin if min_margin is not None else Fraction(0),
        nonnegative=min_margin is None or min_margin >= 0,
    )


# --- negative association over a two-block split ---------------------------------


def _upward_closed_families(universe_size: int) -> list[frozenset[int]]:
    words = list(range(1 << universe_size))
    families = []
    for pick in range(1 << len(words)):
        fam = frozenset(w for w in words if pick >> w & 1)
        ok = True
        for w in fam:
            for i in range(universe_size):
                if not w >> i & 1 and (w | 1 << i) not in fam:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            families.append(fam)
    return families


@dataclass(frozen=True)
class AssociationReport:
    pairs_checked: int
    violations: tuple[tuple[frozenset, frozenset], ...]

    @property
    def passed(self) -> bool:
        return not self.violations


def negative_association_check(
    z: SubsetPoly,
    block1: Iterable[str],
    block2: Iterable[str],
    point: Mapping[str, Fraction],
) -> AssociationReport:
    """P(A and B) <= P(A) P(B) for all upward-closed events on disjoint blocks.

    Exhaustive over every pair of upward-closed families on the two blocks
    (block sizes capped at 3: 20 families each).
    """
    if not z.is_rational():
        raise TypeError("association check needs rational coefficients")
    b1 = tuple(block1)
    b2 = tuple(block2)
    if set(b1) & set(b2):
        raise ValueError("blocks must be disjoint")
    if set(b1) | set(b2) != set(z.ground.labels):
        raise ValueError("blocks must partition the ground set")
    if len(b1) > 3 or len(b2) > 3:
        raise ValueError("block size capped at 3")
    for lab, v in point.items():
        if v <= 0:
            raise ValueError(f"coordinate {lab!r} must be positive")

    w1 = [z.ground.bit(lab) for lab in b1]
    w2 = [z.ground.bit(lab) for lab in b2]

    def trace(word: int, bits: list[int]) -> int:
        out = 0
        for i, b in enumerate(bits):
            if word & b:
                out |= 1 << i
        return out

    vals = [point[lab] for lab in z.ground.labels]
    masses: list[tuple[int, int, Fraction]] = []
    total = Fraction(0)
    for w, c in z.terms.items():
        mass = c
        rest = w
        while rest:
            low = rest & -rest
            mass *= vals[low.bit_length() - 1]
            rest ^= low
        masses.append((trace(w, w1), trace(w, w2), mass))
        total += mass

    fams1 = _upward_closed_families(len(b1))
    fams2 = _upward_closed_families(len(b2))
    violations = []
    for fam1 in fams1:
        for fam2 in fams2:
            p1 = p2 = p12 = Fraction(0)
            for t1, t2, mass in masses:
                in1 = t1 in fam1
                in2 = t2 in fam2
                if in1:
                    p1 += mass
                if in2:
                    p2 += mass
                if in1 and in2:
                    p12 += mass
            if p12 * total > p1 * p2:
                violations.append((fam1, fam2))
    return AssociationReport(pairs_checked=len(fams1) * len(fams2), violations=tuple(violations))


# --- the triple condition ---------------------------------------------------------


@dataclass(frozen=True)
class TripleReport:
    """Sampled check of theta >= -2 sqrt(diff_deleted * diff_contracted).

    Tested in squared form: wherever theta < 0, require
    theta^2 <= 4 * diff_deleted * diff_contracted.  The inequality is a
    consequence of the Rayleigh property of the two slices; the caller's
    assumption is recorded, not verified here.
    """

    triple: tuple[str, str, str]
    points: int
    holds: bool
    min_slack: Fraction
    decomposition_ok: bool
    assumption: str = "caller asserts the input is Rayleigh; not verified here"


def triple_condition_check(
    z: SubsetPoly,
    e: str,
    f: str,
    g: str,
    samples: int = 100,
    seed: int = DEFAULT_SEED,
) -> TripleReport:
    if not z.is_rational():
        raise TypeError("triple check needs rational coefficients")
    th = theta(z, e, f, g)
    diff_del = rayleigh_diff(z.delete(g), e, f)
    diff_con = rayleigh_diff(z.contract(g), e, f)
    # decomposition: diff = diff_del + y_g theta + y_g^2 diff_con
    full = rayleigh_diff(z, e, f)
    sub = full.ground
    rebuilt = (
        diff_del.embedded(sub)
        + th.embedded(sub).times_variable(g, 1)
        + diff_con.embedded(sub).times_variable(g, 2)
    )
    decomposition_ok = rebuilt == full

    rng = SplitMix64(seed)
    labels = th.ground.labels
    holds = True
    min_slack: Fraction | None = None
    for _ in range(samples):
        point = sample_point(rng, labels)
        tv = th.evaluate(point)
        if tv >= 0:
            slack = tv
        else:
            av = diff_del.evaluate(point)
            cv = diff_con.evaluate(point)
            slack = 4 * av * cv - tv * tv
            if slack < 0:
                holds = False
        if min_slack is None or slack < min_slack:
            min_slack = slack
    return TripleReport(
        triple=(e, f, g),
        points=samples,
        holds=holds,
        min_slack=min_slack if min_slack is not None else Fraction(0),
        decomposition_ok=decomposition_ok,
    )


# --- critical-q bracketing --------------------------------------------------------


@dataclass(frozen=True)
class QcBracket:
    """Empirical bracket for the largest q in (0, 1) that stays Rayleigh.

    `passed` is the largest tested q with no refutation, `refuted` the
    smallest refuted q (None if none found).  Heuristic unless `exact`:
    sampling cannot verify, only fail to refute.
    """

    passed: Fraction
    refuted: Fraction | None
    exact: bool
    tested: tuple[tuple[Fraction, str], ...]


def estimate_qc(
    matroid: Matroid,
    resolution: int = 10,
    budget: int = 128,
    seed: int = DEFAULT_SEED,
) -> QcBracket:
    from .potts import potts_poly, uniform_potts_symseq

    if matroid.provenance and matroid.provenance[0] == "uniform":
        _, m, r = matroid.provenance
        tested = []
        for num in (1, 2, 3, 4):
            q0 = Fraction(num, 4)
            verdict = exchangeable_check(uniform_potts_symseq(m, r, q0), find_witness=False)
            tested.append((q0, verdict.status))
        return QcBracket(passed=Fraction(1), refuted=None, exact=True, tested=tuple(tested))

    lo, hi = Fraction(0), Fraction(1)
    passed = Fraction(0)
    refuted: Fraction | None = None
    tested = []
    for step in range(resolution):
        q0 = (lo + hi) / 2
        sweep = check_all(
            potts_poly(matroid, q0).poly,
            SampleStrategy(budget, derive(seed, step).next_u64()),
        )
        tested.append((q0, sweep.summary))
        if sweep.summary == "refuted":
            refuted = q0 if refuted is None else min(refuted, q0)
            hi = q0
        else:
            passed = max(passed, q0)
            lo = q0
    return QcBracket(passed=passed, refuted=refuted, exact=False, tested=tuple(tested))
