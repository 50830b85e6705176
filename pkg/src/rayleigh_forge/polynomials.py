"""Multiaffine partition functions and their degree-two difference polynomials.

A ground set of at most 30 labeled elements is fixed per polynomial; subsets
are machine words with bit i standing for the i-th label.  `SubsetPoly` is a
sparse multiaffine polynomial (one term per subset); `QuadPoly` allows each
variable to reach degree two and keys its terms by the pair
(support word, squared word) with squared <= support bitwise.  Coefficients
are exact: `Fraction`, or `LaurentQ` for symbolic-q work.

The central construction is the Rayleigh difference

    rayleigh_diff(Z, e, f) = Z_e^f * Z_f^e - Z_ef * Z^ef

where subscripts are y-derivative slices and superscripts are y=0 slices.
Nonnegativity of this polynomial on the positive orthant is exactly the
negative-correlation inequality for the pair {e, f}.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping

from .scalars import LaurentQ, format_rat

MAX_GROUND = 30


def _popcount(word: int) -> int:
    return word.bit_count()


class GroundSet:
    """Ordered tuple of distinct element labels; subsets are bit words."""

    __slots__ = ("labels", "_index")

    def __init__(self, labels: Iterable[str]):
        labels = tuple(str(x) for x in labels)
        if len(labels) > MAX_GROUND:
            raise ValueError(f"ground set larger than {MAX_GROUND} elements")
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate element labels")
        if any(not lab for lab in labels):
            raise ValueError("empty element label")
        self.labels = labels
        self._index = {lab: i for i, lab in enumerate(labels)}

    @property
    def m(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << len(self.labels)) - 1

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise ValueError(f"unknown element {label!r}") from None

    def bit(self, label: str) -> int:
        return 1 << self.index(label)

    def word(self, labels: Iterable[str]) -> int:
        w = 0
        for lab in labels:
            b = self.bit(lab)
            if w & b:
                raise ValueError(f"repeated element {lab!r} in subset")
            w |= b
        return w

    def labels_of(self, word: int) -> tuple[str, ...]:
        return tuple(lab for i, lab in enumerate(self.labels) if word >> i & 1)

    def subsets(self) -> range:
        return range(1 << len(self.labels))

    def without(self, *labels: str) -> "GroundSet":
        drop = {self.index(lab) for lab in labels}
        return GroundSet(lab for i, lab in enumerate(self.labels) if i not in drop)

    def __eq__(self, other) -> bool:
        return isinstance(other, GroundSet) and self.labels == other.labels

    def __hash__(self):
        return hash(self.labels)

    def __repr__(self):
        return f"GroundSet({list(self.labels)!r})"


def canonical_ground(m: int) -> GroundSet:
    """Labels "1".."m"."""
    return GroundSet(str(i) for i in range(1, m + 1))


def _compress_word(word: int, keep_positions: tuple[int, ...]) -> int:
    out = 0
    for j, pos in enumerate(keep_positions):
        if word >> pos & 1:
            out |= 1 << j
    return out


def _expand_word(word: int, keep_positions: tuple[int, ...]) -> int:
    out = 0
    for j, pos in enumerate(keep_positions):
        if word >> j & 1:
            out |= 1 << pos
    return out


def _keep_positions(ground: GroundSet, sub: GroundSet) -> tuple[int, ...]:
    return tuple(ground.index(lab) for lab in sub.labels)


class SubsetPoly:
    """Sparse multiaffine polynomial: word -> coefficient, zeros dropped."""

    __slots__ = ("ground", "terms")

    def __init__(self, ground: GroundSet, terms: Mapping[int, object]):
        self.ground = ground
        clean: dict[int, object] = {}
        full = ground.full
        for word, coeff in terms.items():
            if word & ~full:
                raise ValueError("subset word outside the ground set")
            if isinstance(coeff, int):
                coeff = Fraction(coeff)
            if coeff:
                clean[word] = coeff
        self.terms = clean

    @classmethod
    def zero(cls, ground: GroundSet) -> "SubsetPoly":
        return cls(ground, {})

    def coeff(self, word: int):
        return self.terms.get(word, Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.terms.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubsetPoly):
            return NotImplemented
        return self.ground == other.ground and self.terms == other.terms

    __hash__ = None  # mutable dict inside; structural equality only

    def __add__(self, other: "SubsetPoly") -> "SubsetPoly":
        if self.ground != other.ground:
            raise ValueError("ground sets differ")
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, Fraction(0)) + c
        return SubsetPoly(self.ground, out)

    def __sub__(self, other: "SubsetPoly") -> "SubsetPoly":
        return self + other.scale(-1)

    def scale(self, c) -> "SubsetPoly":
        return SubsetPoly(self.ground, {w: c * x for w, x in self.terms.items()})

    # slices ----------------------------------------------------------------

    def _delete_bit(self, bit: int) -> dict[int, object]:
        return {w: c for w, c in self.terms.items() if not w & bit}

    def _contract_bit(self, bit: int) -> dict[int, object]:
        return {w ^ bit: c for w, c in self.terms.items() if w & bit}

    def delete(self, label: str) -> "SubsetPoly":
        """Set y_label = 0 and drop the variable from the ground set."""
        bit = self.ground.bit(label)
        sub = self.ground.without(label)
        keep = _keep_positions(self.ground, sub)
        terms = {_compress_word(w, keep): c for w, c in self._delete_bit(bit).items()}
        return SubsetPoly(sub, terms)

    def contract(self, label: str) -> "SubsetPoly":
        """d/dy_label, dropping the variable from the ground set."""
        bit = self.ground.bit(label)
        sub = self.ground.without(label)
        keep = _keep_positions(self.ground, sub)
        terms = {_compress_word(w, keep): c for w, c in self._contract_bit(bit).items()}
        return SubsetPoly(sub, terms)

    # evaluation and transforms ----------------------------------------------

    def evaluate(self, point: Mapping[str, Fraction]):
        vals = [point[lab] for lab in self.ground.labels]
        total = None
        for w, c in self.terms.items():
            prod = c
            rest = w
            while rest:
                low = rest & -rest
                prod = prod * vals[low.bit_length() - 1]
                rest ^= low
            total = prod if total is None else total + prod
        if total is None:
            return Fraction(0)
        return total

    def dualize(self) -> "SubsetPoly":
        """Swap the coefficient of y^S with the coefficient of y^(E \\ S)."""
        full = self.ground.full
        return SubsetPoly(self.ground, {full ^ w: c for w, c in self.terms.items()})

    def aligned_to(self, ground: GroundSet) -> "SubsetPoly":
        """Re-key onto a ground set with the same labels in another order."""
        if set(ground.labels) != set(self.ground.labels):
            raise ValueError("ground sets hold different labels")
        pos = tuple(ground.index(lab) for lab in self.ground.labels)
        return SubsetPoly(ground, {_expand_word_positions(w, pos): c for w, c in self.terms.items()})

    def as_quad(self) -> "QuadPoly":
        return QuadPoly(self.ground, {(w, 0): c for w, c in self.terms.items()})

    def support_words(self) -> list[int]:
        return sorted(self.terms)

    def max_support_size(self) -> int:
        return max((_popcount(w) for w in self.terms), default=0)

    def min_support_size(self) -> int:
        return min((_popcount(w) for w in self.terms), default=0)

    def __repr__(self):
        return f"SubsetPoly({poly_text(self)})"


def _expand_word_positions(word: int, positions: tuple[int, ...]) -> int:
    out = 0
    i = 0
    while word:
        if word & 1:
            out |= 1 << positions[i]
        word >>= 1
        i += 1
    return out


def poly_text(poly: "SubsetPoly") -> str:
    if not poly.terms:
        return "0"
    parts = []
    for w in sorted(poly.terms, key=lambda w: (_popcount(w), w)):
        c = poly.terms[w]
        mono = "*".join(f"y[{lab}]" for lab in poly.ground.labels_of(w)) or "1"
        cs = format_rat(c) if isinstance(c, Fraction) else f"({c})"
        parts.append(mono if cs == "1" else f"{cs}*{mono}")
    return " + ".join(parts)


def from_weights(ground: GroundSet, weights: Mapping[int, Fraction]) -> SubsetPoly:
    """Partition function of a nonnegative weight function with some support."""
    for w, c in weights.items():
        c = Fraction(c) if isinstance(c, int) else c
        if not isinstance(c, Fraction):
            raise TypeError("weights must be exact rationals")
        if c < 0:
            raise ValueError(f"negative weight on subset {ground.labels_of(w)}")
    poly = SubsetPoly(ground, dict(weights))
    if poly.is_zero():
        raise ValueError("weight function has empty support")
    return poly


class QuadPoly:
    """Polynomial of per-variable degree at most two.

    Term keys are (support, squared): variables in `squared` carry exponent
    two, the rest of `support` exponent one.  squared is always a subset of
    support.
    """

    __slots__ = ("ground", "terms")

    def __init__(self, ground: GroundSet, terms: Mapping[tuple[int, int], object]):
        self.ground = ground
        clean: dict[tuple[int, int], object] = {}
        full = ground.full
        for (sup, sq), coeff in terms.items():
            if sup & ~full or sq & ~sup:
                raise ValueError("malformed quadratic term key")
            if isinstance(coeff, int):
                coeff = Fraction(coeff)
            if coeff:
                clean[(sup, sq)] = coeff
        self.terms = clean

    @classmethod
    def zero(cls, ground: GroundSet) -> "QuadPoly":
        return cls(ground, {})

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.terms.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuadPoly):
            return NotImplemented
        return self.ground == other.ground and self.terms == other.terms

    __hash__ = None  # mutable dict inside; structural equality only

    def __add__(self, other: "QuadPoly") -> "QuadPoly":
        if self.ground != other.ground:
            raise ValueError("ground sets differ")
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return QuadPoly(self.ground, out)

    def __sub__(self, other: "QuadPoly") -> "QuadPoly":
        return self + other.scale(-1)

    def scale(self, c) -> "QuadPoly":
        return QuadPoly(self.ground, {k: c * x for k, x in self.terms.items()})

    def coeff(self, sup: int, sq: int):
        return self.terms.get((sup, sq), Fraction(0))

    def evaluate(self, point: Mapping[str, Fraction]):
        vals = [point[lab] for lab in self.ground.labels]
        total = None
        for (sup, sq), c in self.terms.items():
            prod = c
            rest = sup
            while rest:
                low = rest & -rest
                v = vals[low.bit_length() - 1]
                prod = prod * (v * v if sq & low else v)
                rest ^= low
            total = prod if total is None else total + prod
        if total is None:
            return Fraction(0)
        return total

    def restricted(self, sub: GroundSet) -> "QuadPoly":
        """Move to a smaller ground set; the dropped variables must be absent."""
        keep = _keep_positions(self.ground, sub)
        keep_mask = 0
        for pos in keep:
            keep_mask |= 1 << pos
        out = {}
        for (sup, sq), c in self.terms.items():
            if sup & ~keep_mask:
                raise ValueError("restriction drops a variable still in use")
            out[(_compress_word(sup, keep), _compress_word(sq, keep))] = c
        return QuadPoly(sub, out)

    def embedded(self, ground: GroundSet) -> "QuadPoly":
        """Re-key onto a larger (or reordered) ground set containing our labels."""
        pos = tuple(ground.index(lab) for lab in self.ground.labels)
        out = {}
        for (sup, sq), c in self.terms.items():
            out[(_expand_word_positions(sup, pos), _expand_word_positions(sq, pos))] = c
        return QuadPoly(ground, out)

    def times_variable(self, label: str, power: int) -> "QuadPoly":
        """Multiply by y_label or y_label^2; the variable must be absent."""
        if power not in (1, 2):
            raise ValueError("power must be 1 or 2")
        bit = self.ground.bit(label)
        out = {}
        for (sup, sq), c in self.terms.items():
            if sup & bit:
                raise ValueError(f"variable {label!r} already present")
            out[(sup | bit, sq | (bit if power == 2 else 0))] = c
        return QuadPoly(self.ground, out)

    def delete(self, label: str) -> "QuadPoly":
        bit = self.ground.bit(label)
        sub = self.ground.without(label)
        keep = _keep_positions(self.ground, sub)
        out = {}
        for (sup, sq), c in self.terms.items():
            if sup & bit:
                continue
            out[(_compress_word(sup, keep), _compress_word(sq, keep))] = c
        return QuadPoly(sub, out)

    def contract(self, label: str) -> "QuadPoly":
        """Coefficient-of-y slice; rejects terms where the variable is squared."""
        bit = self.ground.bit(label)
        sub = self.ground.without(label)
        keep = _keep_positions(self.ground, sub)
        out = {}
        for (sup, sq), c in self.terms.items():
            if sq & bit:
                raise ValueError(
                    f"variable {label!r} appears squared; contraction here would "
                    "be a formal derivative, not a slice"
                )
            if not sup & bit:
                continue
            out[(_compress_word(sup ^ bit, keep), _compress_word(sq, keep))] = c
        return QuadPoly(sub, out)

    def min_coefficient(self) -> Fraction:
        if not self.is_rational():
            raise TypeError("sign queries need rational coefficients")
        return min(self.terms.values(), default=Fraction(0))

    def is_coefficientwise_nonnegative(self) -> bool:
        return self.min_coefficient() >= 0

    def collapse_equal_variables(self) -> list[Fraction]:
        """Coefficient list of P(t,...,t) in t; exact."""
        degree = 0
        for sup, sq in self.terms:
            degree = max(degree, _popcount(sup) + _popcount(sq))
        out = [Fraction(0)] * (degree + 1)
        for (sup, sq), c in self.terms.items():
            out[_popcount(sup) + _popcount(sq)] += c
        return out

    def __repr__(self):
        if not self.terms:
            return "QuadPoly(0)"
        parts = []
        for (sup, sq) in sorted(self.terms):
            c = self.terms[(sup, sq)]
            factors = []
            for i, lab in enumerate(self.ground.labels):
                b = 1 << i
                if sq & b:
                    factors.append(f"y[{lab}]^2")
                elif sup & b:
                    factors.append(f"y[{lab}]")
            mono = "*".join(factors) or "1"
            cs = format_rat(c) if isinstance(c, Fraction) else f"({c})"
            parts.append(f"{cs}*{mono}")
        return "QuadPoly(" + " + ".join(parts) + ")"


def multiply(p: SubsetPoly, q: SubsetPoly) -> QuadPoly:
    """Product of two multiaffine polynomials on one ground set."""
    if p.ground != q.ground:
        raise ValueError("ground sets differ")
    out: dict[tuple[int, int], object] = {}
    for w1, c1 in p.terms.items():
        for w2, c2 in q.terms.items():
            key = (w1 | w2, w1 & w2)
            c = c1 * c2
            if key in out:
                out[key] = out[key] + c
            else:
                out[key] = c
    return QuadPoly(p.ground, out)


def multiply_disjoint(p: SubsetPoly, q: SubsetPoly) -> SubsetPoly:
    """Product of multiaffine polynomials on disjoint ground sets."""
    if set(p.ground.labels) & set(q.ground.labels):
        raise ValueError("ground sets overlap")
    ground = GroundSet(p.ground.labels + q.ground.labels)
    shift = p.ground.m
    out: dict[int, object] = {}
    for w1, c1 in p.terms.items():
        for w2, c2 in q.terms.items():
            key = w1 | (w2 << shift)
            c = c1 * c2
            if key in out:
                out[key] = out[key] + c
            else:
                out[key] = c
    return SubsetPoly(ground, out)


def quad_multiply_disjoint(p: QuadPoly, q: QuadPoly) -> QuadPoly:
    """Product of degree-two polynomials on disjoint ground sets."""
    if set(p.ground.labels) & set(q.ground.labels):
        raise ValueError("ground sets overlap")
    ground = GroundSet(p.ground.labels + q.ground.labels)
    shift = p.ground.m
    out: dict[tuple[int, int], object] = {}
    for (s1, q1), c1 in p.terms.items():
        for (s2, q2), c2 in q.terms.items():
            key = (s1 | (s2 << shift), q1 | (q2 << shift))
            c = c1 * c2
            if key in out:
                out[key] = out[key] + c
            else:
                out[key] = c
    return QuadPoly(ground, out)


def rayleigh_diff(z: SubsetPoly, e: str, f: str) -> QuadPoly:
    """The pair difference Z_e^f Z_f^e - Z_ef Z^ef on the ground set minus {e, f}.

    Nonnegative on the positive orthant iff the pair {e, f} is negatively
    correlated for every positive external field.
    """
    if e == f:
        raise ValueError("the two elements must be distinct")
    be, bf = z.ground.bit(e), z.ground.bit(f)
    g = z.ground
    ze_f = SubsetPoly(g, _slice_bits(z.terms, keep=be, zero=bf))
    zf_e = SubsetPoly(g, _slice_bits(z.terms, keep=bf, zero=be))
    zef = SubsetPoly(g, _slice_bits(z.terms, keep=be | bf, zero=0))
    z_no = SubsetPoly(g, _slice_bits(z.terms, keep=0, zero=be | bf))
    diff = multiply(ze_f, zf_e) - multiply(zef, z_no)
    return diff.restricted(g.without(e, f))


def _slice_bits(terms: Mapping[int, object], keep: int, zero: int) -> dict[int, object]:
    """Take d/dy on `keep` bits and set `zero` bits to zero, staying word-keyed."""
    out = {}
    for w, c in terms.items():
        if w & zero:
            continue
        if (w & keep) != keep:
            continue
        out[w ^ keep] = c
    return out


def theta(z: SubsetPoly, e: str, f: str, g: str) -> QuadPoly:
    """Linear-in-y_g part of rayleigh_diff(z, e, f):

        Z_e^{fg} Z_{fg}^e + Z_f^{eg} Z_{eg}^f - Z_g^{ef} Z_{ef}^g - Z_{efg} Z^{efg}

    so that  diff = diff^g + y_g * theta + y_g^2 * diff_g  holds exactly.
    """
    if len({e, f, g}) != 3:
        raise ValueError("need three distinct elements")
    gr = z.ground
    be, bf, bg = gr.bit(e), gr.bit(f), gr.bit(g)
    T = z.terms

    def s(keep: int, zero: int) -> SubsetPoly:
        return SubsetPoly(gr, _slice_bits(T, keep, zero))

    part = (
        multiply(s(be, bf | bg), s(bf | bg, be))
        + multiply(s(bf, be | bg), s(be | bg, bf))
        - multiply(s(bg, be | bf), s(be | bf, bg))
        - multiply(s(be | bf | bg, 0), s(0, be | bf | bg))
    )
    return part.restricted(gr.without(e, f, g))


# --- exchangeable machinery --------------------------------------------------


class SymSeq:
    """Coefficient sequence of an exchangeable polynomial sum(a_k e_k(y), k=0..m)."""

    __slots__ = ("m", "entries")

    def __init__(self, entries: Iterable[Fraction]):
        entries = tuple(Fraction(c) if isinstance(c, int) else c for c in entries)
        if not entries:
            raise ValueError("empty sequence")
        for c in entries:
            if not isinstance(c, Fraction):
                raise TypeError("entries must be exact rationals")
        self.entries = entries
        self.m = len(entries) - 1

    def __eq__(self, other):
        return isinstance(other, SymSeq) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"SymSeq({[format_rat(c) for c in self.entries]})"


def symmetrize(z: SubsetPoly) -> SymSeq:
    """Averaged size-k weights a_k = f_k / C(m, k) of the symmetrized polynomial."""
    if not z.is_rational():
        raise TypeError("symmetrization needs rational coefficients")
    m = z.ground.m
    sums = [Fraction(0)] * (m + 1)
    for w, c in z.terms.items():
        sums[_popcount(w)] += c
    return SymSeq(sums[k] / comb(m, k) for k in range(m + 1))


def size_sums(z: SubsetPoly) -> list[Fraction]:
    """f_k: total weight on size-k subsets."""
    m = z.ground.m
    sums = [Fraction(0)] * (m + 1)
    for w, c in z.terms.items():
        sums[_popcount(w)] += c
    return sums


def symseq_to_poly(seq: SymSeq, ground: GroundSet | None = None) -> SubsetPoly:
    """Expand sum(a_k e_k) into an explicit multiaffine polynomial."""
    if ground is None:
        ground = canonical_ground(seq.m)
    if ground.m != seq.m:
        raise ValueError("ground set size does not match the sequence")
    terms = {}
    for w in ground.subsets():
        c = seq.entries[_popcount(w)]
        if c:
            terms[w] = c
    return SubsetPoly(ground, terms)


def elementary_values(values: list[Fraction]) -> list[Fraction]:
    """e_0..e_n evaluated at the given coordinates."""
    es = [Fraction(1)]
    for v in values:
        nxt = [Fraction(1)]
        for k in range(1, len(es) + 1):
            prev = es[k] if k < len(es) else Fraction(0)
            nxt.append(prev + v * es[k - 1])
        es = nxt
    return es


def _swap_bits(word: int, i: int, j: int) -> int:
    bi, bj = word >> i & 1, word >> j & 1
    if bi == bj:
        return word
    return word ^ (1 << i) ^ (1 << j)


def monomial_symmetric_expand(p: QuadPoly) -> dict[tuple[int, int], Fraction]:
    """Coefficients of a symmetric QuadPoly over monomial symmetric polynomials.

    Returns {(j, k): c} meaning c times the monomial symmetric polynomial whose
    monomials have j squared variables and k - j linear ones.  The input must
    be symmetric under all variable transpositions; adjacent transpositions
    are checked (they generate the full symmetric group).
    """
    m = p.ground.m
    for i in range(m - 1):
        swapped = {
            (_swap_bits(sup, i, i + 1), _swap_bits(sq, i, i + 1)): c
            for (sup, sq), c in p.terms.items()
        }
        if swapped != p.terms:
            raise ValueError("polynomial is not symmetric in its variables")
    out: dict[tuple[int, int], Fraction] = {}
    for k in range(m + 1):
        sup = (1 << k) - 1
        for j in range(k + 1):
            c = p.terms.get((sup, (1 << j) - 1))
            if c:
                out[(j, k)] = c
    return out


def monomial_symmetric_assemble(
    ground: GroundSet, coeffs: Mapping[tuple[int, int], Fraction]
) -> QuadPoly:
    """Inverse of monomial_symmetric_expand: rebuild the full polynomial."""
    m = ground.m
    terms: dict[tuple[int, int], Fraction] = {}
    for (j, k), c in coeffs.items():
        if not (0 <= j <= k <= m):
            raise ValueError(f"bad shape ({j}, {k}) for {m} variables")
        if not c:
            continue
        for sup_elems in itertools.combinations(range(m), k):
            sup = 0
            for i in sup_elems:
                sup |= 1 << i
            for sq_elems in itertools.combinations(sup_elems, j):
                sq = 0
                for i in sq_elems:
                    sq |= 1 << i
                key = (sup, sq)
                terms[key] = terms.get(key, Fraction(0)) + c
    return QuadPoly(ground, terms)


# --- determinantal weights ---------------------------------------------------


def det_exact(matrix: list[list[Fraction]]) -> Fraction:
    """Determinant by exact Gaussian elimination over the rationals."""
    n = len(matrix)
    a = [[Fraction(x) for x in row] for row in matrix]
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col]:
                factor = a[r][col] * inv
                for c2 in range(col, n):
                    a[r][c2] -= factor * a[col][c2]
    return det


def invert_exact(matrix: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def mmatrix_weights(matrix: list[list[Fraction]], labels: Iterable[str] | None = None) -> SubsetPoly:
    """Principal-minor weight function of a symmetric M-matrix.

    Requires: symmetric, every principal minor positive, and all off-diagonal
    entries of the matrix or of its inverse nonpositive.  The weight of a
    subset is the corresponding principal minor (empty minor = 1).
    """
    n = len(matrix)
    a = [[Fraction(x) for x in row] for row in matrix]
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    if n == 0 or n > 12:
        raise ValueError("matrix size out of range")
    for i in range(n):
        for j in range(i):
            if a[i][j] != a[j][i]:
                raise ValueError("matrix is not symmetric")

    def offdiag_nonpositive(mat) -> bool:
        return all(mat[i][j] <= 0 for i in range(n) for j in range(n) if i != j)

    ground = GroundSet(labels if labels is not None else (str(i + 1) for i in range(n)))
    if ground.m != n:
        raise ValueError("label count does not match the matrix")

    terms: dict[int, Fraction] = {}
    for w in ground.subsets():
        rows = [i for i in range(n) if w >> i & 1]
        minor = det_exact([[a[i][j] for j in rows] for i in rows]) if rows else Fraction(1)
        if minor <= 0:
            raise ValueError(f"principal minor on {ground.labels_of(w)} is not positive")
        terms[w] = minor

    if not offdiag_nonpositive(a) and not offdiag_nonpositive(invert_exact(a)):
        raise ValueError("neither the matrix nor its inverse has nonpositive off-diagonal entries")
    return SubsetPoly(ground, terms)
