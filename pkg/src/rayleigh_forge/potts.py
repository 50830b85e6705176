"""Random-cluster (Potts) partition functions and two-sum composition.

The Potts weight of a subset S is q^(-rank(S)).  With symbolic q the
coefficients are Laurent monomials; with an evaluated q0 they are exact
rationals.  The same `ModelPoly` wrapper also carries the frozen-family
models (bases / independent / spanning indicators), since two-sum
composition treats all four uniformly: it only ever needs the two slices

    P^g  (delete: y_g = 0)        P_g  (contract: the y_g coefficient,
                                        rescaled by q for non-loop g in
                                        the Potts case)

and these slices are themselves the model polynomials of the corresponding
minors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .matroids import Matroid, enumerate_family
from .polynomials import GroundSet, SubsetPoly, _popcount, multiply_disjoint
from .prng import SplitMix64, derive, sample_point, unit_fraction
from .scalars import LaurentQ

MODEL_KINDS = ("bases", "independent", "spanning", "potts")


@dataclass(frozen=True)
class Model:
    """Which partition function: a frozen family, or Potts with symbolic/fixed q."""

    kind: str
    q0: Fraction | None = None

    def __post_init__(self):
        if self.kind not in MODEL_KINDS:
            raise ValueError(f"unknown model kind {self.kind!r}")
        if self.kind != "potts" and self.q0 is not None:
            raise ValueError("q0 only makes sense for the potts model")
        if self.q0 is not None and self.q0 <= 0:
            raise ValueError("q0 must be positive")

    @property
    def symbolic(self) -> bool:
        return self.kind == "potts" and self.q0 is None


@dataclass(frozen=True)
class ModelPoly:
    """A partition function together with its model tag and source matroid."""

    poly: SubsetPoly
    model: Model
    matroid: Matroid | None = None

    @property
    def ground(self) -> GroundSet:
        return self.poly.ground


def potts_poly(matroid: Matroid, q0: Fraction | None = None) -> ModelPoly:
    """Potts partition function: every subset weighted q^(-rank(S))."""
    ground = matroid.ground
    if ground.m > 20:
        raise ValueError("potts_poly enumerates 2^m terms; m capped at 20")
    terms: dict[int, object] = {}
    if q0 is None:
        for w in ground.subsets():
            terms[w] = LaurentQ.q_power(-matroid.rank(w))
    else:
        q0 = Fraction(q0)
        if q0 <= 0:
            raise ValueError("q0 must be positive")
        powers: dict[int, Fraction] = {}
        for w in ground.subsets():
            rk = matroid.rank(w)
            if rk not in powers:
                powers[rk] = q0 ** (-rk)
            terms[w] = powers[rk]
    return ModelPoly(SubsetPoly(ground, terms), Model("potts", q0), matroid)


def model_poly(matroid: Matroid, model: Model) -> ModelPoly:
    """Partition function of a matroid under any of the four models."""
    if model.kind == "potts":
        return potts_poly(matroid, model.q0)
    family = enumerate_family(matroid, model.kind)
    terms = {w: Fraction(1) for w in family.members}
    return ModelPoly(SubsetPoly(matroid.ground, terms), model, matroid)


def uniform_potts_symseq(m: int, r: int, q0: Fraction):
    """Exchangeable shortcut for uniform matroids: a_k = q0^(-min(r, k))."""
    from .polynomials import SymSeq

    q0 = Fraction(q0)
    if q0 <= 0:
        raise ValueError("q0 must be positive")
    return SymSeq(q0 ** (-min(r, k)) for k in range(m + 1))


# --- slices -------------------------------------------------------------------


def _loop_status_from_poly(mp: ModelPoly, label: str) -> bool:
    """Is `label` a loop, judged from the polynomial alone?"""
    z = mp.poly
    kind = mp.model.kind
    bit = z.ground.bit(label)
    if kind == "potts":
        c = z.coeff(bit)
        return c == 1 if isinstance(c, Fraction) else c == LaurentQ.constant(1)
    if kind in ("bases", "independent"):
        return not z._contract_bit(bit)
    # spanning: a loop never changes spanning-ness, so the two slices agree
    return set(z._contract_bit(bit)) == set(z._delete_bit(bit))


def _coloop_status_from_poly(mp: ModelPoly, label: str) -> bool:
    z = mp.poly
    kind = mp.model.kind
    bit = z.ground.bit(label)
    if kind == "potts":
        full = z.ground.full
        ce, cf = z.coeff(full ^ bit), z.coeff(full)
        if isinstance(ce, LaurentQ) or isinstance(cf, LaurentQ):
            return LaurentQ.coerce(ce) == LaurentQ.coerce(cf) * LaurentQ.q_power(1)
        q0 = mp.model.q0
        if q0 == 1:
            raise ValueError("cannot classify elements at q0 = 1 without the matroid")
        return ce == cf * q0
    if kind == "bases":
        return not z._delete_bit(bit)
    if kind == "spanning":
        return not z._delete_bit(bit)
    # independent: deleting a coloop lowers the maximum independent size
    deleted = z._delete_bit(bit)
    return max(map(_popcount, deleted), default=0) < z.max_support_size()


def is_loop_element(mp: ModelPoly, label: str) -> bool:
    if mp.matroid is not None:
        return mp.matroid.is_loop(label)
    return _loop_status_from_poly(mp, label)


def is_coloop_element(mp: ModelPoly, label: str) -> bool:
    if mp.matroid is not None:
        return mp.matroid.is_coloop(label)
    return _coloop_status_from_poly(mp, label)


def delete_slice(mp: ModelPoly, label: str) -> SubsetPoly:
    return mp.poly.delete(label)


def contract_slice(mp: ModelPoly, label: str) -> SubsetPoly:
    """The y_label coefficient; for Potts, rescaled by q unless label is a loop.

    With that rescaling the slice is again a Potts partition function, namely
    the one of the contraction minor.
    """
    sliced = mp.poly.contract(label)
    if mp.model.kind != "potts" or is_loop_element(mp, label):
        return sliced
    if mp.model.symbolic:
        return sliced.scale(LaurentQ.q_power(1))
    return sliced.scale(mp.model.q0)


@dataclass(frozen=True)
class SliceReport:
    """Deletion/contraction slices of a Potts polynomial plus identity checks."""

    deleted: ModelPoly
    contracted: ModelPoly
    identities: dict
    sampled: dict


def potts_slices(mp: ModelPoly, label: str, samples: int = 0, seed: int = 0xD1CE) -> SliceReport:
    """Slice a Potts polynomial at one element and verify the slice algebra.

    Symbolic checks (loop-free element, symbolic q):
      reconstruction   Z = Z^g + q^-1 y_g Z_g
      spanned_excluded Z^g - q^-1 Z_g  =  (1 - q^-1) * sum over S with g
                       outside the closure of S
      spanned_sum      (Z^g - Z_g) / (1 - q)  =  sum over S with g inside
                       the closure of S
    Sampled check (requires the source matroid and 0 < q < 1, y > 0):
      q Z^g < Z_g <= Z^g, with equality exactly for coloops.
    """
    if mp.model.kind != "potts":
        raise ValueError("slice report is for Potts polynomials")
    matroid = mp.matroid
    if matroid is None:
        raise ValueError("slice report needs the source matroid")
    if matroid.is_loop(label):
        raise ValueError(f"element {label!r} is a loop")

    del_poly = delete_slice(mp, label)
    con_poly = contract_slice(mp, label)
    del_minor = matroid.delete(label)
    con_minor = matroid.contract(label)
    deleted = ModelPoly(del_poly, mp.model, del_minor)
    contracted = ModelPoly(con_poly, mp.model, con_minor)

    identities: dict = {
        "deleted_matches_minor": del_poly == potts_poly(del_minor, mp.model.q0).poly,
        "contracted_matches_minor": con_poly == potts_poly(con_minor, mp.model.q0).poly,
    }

    if mp.model.symbolic:
        z = mp.poly
        bit = z.ground.bit(label)
        sub = z.ground.without(label)
        # reconstruction: compare coefficients of Z against Z^g + q^-1 y_g Z_g
        recon = True
        for w, c in z.terms.items():
            if w & bit:
                expect = LaurentQ.q_power(-1) * con_poly.terms.get(
                    _compress(z.ground, sub, w ^ bit), LaurentQ.zero()
                )
            else:
                expect = del_poly.terms.get(_compress(z.ground, sub, w), LaurentQ.zero())
            if LaurentQ.coerce(c) != LaurentQ.coerce(expect):
                recon = False
                break
        identities["reconstruction"] = recon

        spanned: dict[int, LaurentQ] = {}
        unspanned: dict[int, LaurentQ] = {}
        for w in sub.subsets():
            orig = _expand_to(z.ground, sub, w)
            weight = LaurentQ.q_power(-matroid.rank(orig))
            if matroid.in_closure(orig, label):
                spanned[w] = weight
            else:
                unspanned[w] = weight

        one_minus_qinv = LaurentQ(-1, (Fraction(-1), Fraction(1)))  # 1 - q^-1
        lhs_b = del_poly - con_poly.scale(LaurentQ.q_power(-1))
        rhs_b = SubsetPoly(sub, {w: one_minus_qinv * c for w, c in unspanned.items()})
        identities["spanned_excluded"] = lhs_b == rhs_b

        diff = del_poly - con_poly
        quot = SubsetPoly(
            sub, {w: LaurentQ.coerce(c).divide_by_one_minus_q() for w, c in diff.terms.items()}
        )
        identities["spanned_sum"] = quot == SubsetPoly(sub, spanned)

    sampled: dict = {}
    if samples > 0:
        if not mp.model.symbolic and not 0 < mp.model.q0 < 1:
            raise ValueError("sampled slice inequalities need 0 < q < 1")
        rng = derive(seed, 17)
        strict_ok = weak_ok = True
        equality_seen = False
        coloop = matroid.is_coloop(label)
        sub = mp.poly.ground.without(label)
        for _ in range(samples):
            q0 = unit_fraction(rng) if mp.model.symbolic else mp.model.q0
            pt = sample_point(rng, sub.labels)
            dv = _eval_at_q(del_poly, q0, pt)
            cv = _eval_at_q(con_poly, q0, pt)
            if not q0 * dv < cv:
                strict_ok = False
            if not cv <= dv:
                weak_ok = False
            if cv == dv:
                equality_seen = True
        sampled = {
            "points": samples,
            "strict_lower_ok": strict_ok,
            "weak_upper_ok": weak_ok,
            "equality_seen": equality_seen,
            "is_coloop": coloop,
            "equality_matches_coloop": equality_seen == coloop,
        }
    return SliceReport(deleted=deleted, contracted=contracted, identities=identities, sampled=sampled)


@dataclass(frozen=True)
class SliceScan:
    """Sampled slice-inequality record for one element at shared random points."""

    label: str
    is_loop: bool
    is_coloop: bool
    points: int
    strict_lower_ok: bool
    weak_upper_ok: bool
    equality_count: int

    @property
    def consistent(self) -> bool:
        """q Z^g < Z_g <= Z^g at every point, equality exactly for coloops."""
        if self.is_loop:
            return True
        expected_eq = self.points if self.is_coloop else 0
        return self.strict_lower_ok and self.weak_upper_ok and self.equality_count == expected_eq


def slice_inequality_scan(
    matroid: Matroid, samples: int = 100, seed: int = 0xD1CE
) -> list[SliceScan]:
    """The sampled slice inequalities for every non-loop element at once.

    Monomial values and q-powers are shared across elements per point, so the
    cost is samples * 2^m * m rather than per-element re-evaluation.
    """
    ground = matroid.ground
    m = ground.m
    if m > 20:
        raise ValueError("scan enumerates 2^m terms; m capped at 20")
    labels = ground.labels
    full = ground.full
    loop = [matroid.is_loop(lab) for lab in labels]
    coloop = [matroid.is_coloop(lab) for lab in labels]
    rank = [matroid.rank(w) for w in range(full + 1)]
    rng = derive(seed, 29)

    strict_ok = [True] * m
    weak_ok = [True] * m
    eq_count = [0] * m
    for _ in range(samples):
        q0 = unit_fraction(rng)
        point = sample_point(rng, labels)
        yval = [point[lab] for lab in labels]
        mono = [Fraction(1)] * (full + 1)
        for w in range(1, full + 1):
            low = w & -w
            mono[w] = mono[w ^ low] * yval[low.bit_length() - 1]
        qpow = [q0**-k for k in range(matroid.r + 1)]
        del_sum = [Fraction(0)] * m
        con_sum = [Fraction(0)] * m
        for w in range(full + 1):
            base = qpow[rank[w]] * mono[w]
            rest = full & ~w
            while rest:
                low = rest & -rest
                rest ^= low
                i = low.bit_length() - 1
                if loop[i]:
                    continue
                del_sum[i] += base
                con_sum[i] += qpow[rank[w | low] - 1] * mono[w]
        for i in range(m):
            if loop[i]:
                continue
            if not q0 * del_sum[i] < con_sum[i]:
                strict_ok[i] = False
            if not con_sum[i] <= del_sum[i]:
                weak_ok[i] = False
            if con_sum[i] == del_sum[i]:
                eq_count[i] += 1
    return [
        SliceScan(
            label=labels[i],
            is_loop=loop[i],
            is_coloop=coloop[i],
            points=samples,
            strict_lower_ok=strict_ok[i],
            weak_upper_ok=weak_ok[i],
            equality_count=eq_count[i],
        )
        for i in range(m)
    ]


def _compress(big: GroundSet, small: GroundSet, word: int) -> int:
    out = 0
    for j, lab in enumerate(small.labels):
        if word >> big.index(lab) & 1:
            out |= 1 << j
    return out


def _expand_to(big: GroundSet, small: GroundSet, word: int) -> int:
    out = 0
    for j, lab in enumerate(small.labels):
        if word >> j & 1:
            out |= 1 << big.index(lab)
    return out


def _eval_at_q(poly: SubsetPoly, q0: Fraction, point: Mapping[str, Fraction]) -> Fraction:
    vals = [point[lab] for lab in poly.ground.labels]
    total = Fraction(0)
    for w, c in poly.terms.items():
        v = c.evaluate(q0) if isinstance(c, LaurentQ) else c
        rest = w
        while rest:
            low = rest & -rest
            v *= vals[low.bit_length() - 1]
            rest ^= low
        total += v
    return total


# --- two-sum composition --------------------------------------------------------


def twosum_compose(left: ModelPoly, right: ModelPoly, glue: str, model: Model) -> ModelPoly:
    """Partition function of a two-sum, assembled from slices of the parts.

    With L^g, L_g the deletion/contraction slices at the glue element:

      bases        N = L^g R_g + L_g R^g
      independent  N = L^g R_g + L_g R^g - L_g R_g
      spanning     N = L^g R_g + L_g R^g - L^g R^g
      potts        N = (1/(1-q)) (-q L^g R^g + L^g R_g + L_g R^g - L_g R_g)
                     = L^g R^g - (1/(1-q)) (L^g - L_g)(R^g - R_g)

    Both Potts forms are computed and must agree; q = 1 is rejected.
    """
    if left.model != model or right.model != model:
        raise ValueError("model tags of the parts and the request must agree")
    lset, rset = set(left.ground.labels), set(right.ground.labels)
    if lset & rset != {glue}:
        raise ValueError("parts must share exactly the glue element")
    for side, mp in (("left", left), ("right", right)):
        if is_loop_element(mp, glue):
            raise ValueError(f"glue element is a loop on the {side} side")
        if is_coloop_element(mp, glue):
            raise ValueError(f"glue element is a coloop on the {side} side")
    if model.kind == "potts" and model.q0 == 1:
        raise ValueError("two-sum composition is undefined at q = 1")

    ld, lc = delete_slice(left, glue), contract_slice(left, glue)
    rd, rc = delete_slice(right, glue), contract_slice(right, glue)

    cross = multiply_disjoint(ld, rc) + multiply_disjoint(lc, rd)
    if model.kind == "bases":
        out = cross
    elif model.kind == "independent":
        out = cross - multiply_disjoint(lc, rc)
    elif model.kind == "spanning":
        out = cross - multiply_disjoint(ld, rd)
    else:
        numerator = (
            cross
            - multiply_disjoint(lc, rc)
            - multiply_disjoint(ld, rd).scale(_q_scalar(model))
        )
        form2 = _divide_one_minus_q(numerator, model)
        gap_l = _divide_one_minus_q(ld - lc, model)
        gap_r = _divide_one_minus_q(rd - rc, model)
        form1 = multiply_disjoint(ld, rd) - multiply_disjoint(gap_l, gap_r).scale(
            _one_minus_q_scalar(model)
        )
        if form1 != form2:
            raise ArithmeticError("the two Potts two-sum forms disagree")
        out = form2
    return ModelPoly(out, model, None)


def _q_scalar(model: Model):
    return LaurentQ.q_power(1) if model.symbolic else model.q0


def _one_minus_q_scalar(model: Model):
    if model.symbolic:
        return LaurentQ(0, (Fraction(1), Fraction(-1)))
    return 1 - model.q0


def _divide_one_minus_q(poly: SubsetPoly, model: Model) -> SubsetPoly:
    if model.symbolic:
        return SubsetPoly(
            poly.ground,
            {w: LaurentQ.coerce(c).divide_by_one_minus_q() for w, c in poly.terms.items()},
        )
    scale = 1 / (1 - model.q0)
    return poly.scale(scale)


# --- q -> 0 scaling limits -------------------------------------------------------


def scaling_limit_support(matroid: Matroid, alpha: Fraction) -> frozenset[int]:
    """Subsets whose Potts weight dominates under y -> q^alpha y, Z -> q^((1-alpha) r) Z.

    The exponent of q on the term of S is (1-alpha)(r - rank S) + alpha(|S| - rank S);
    the q -> 0 limit keeps exactly the exponent-zero terms.  alpha = 0, 1/2, 1
    recover the spanning-set, basis and independent-set indicators.
    """
    alpha = Fraction(alpha)
    if not (0 <= alpha <= 1):
        raise ValueError("alpha must lie in [0, 1]")
    r = matroid.r
    best: Fraction | None = None
    arg: list[int] = []
    for w in matroid.ground.subsets():
        rk = matroid.rank(w)
        expo = (1 - alpha) * (r - rk) + alpha * (_popcount(w) - rk)
        if best is None or expo < best:
            best = expo
            arg = [w]
        elif expo == best:
            arg.append(w)
    return frozenset(arg)
