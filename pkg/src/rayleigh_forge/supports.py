"""What the support of a negatively-correlated weight function must look like.

Pair-verified weight functions have supports that are convex delta-matroids,
log-submodular values, and flattenings that satisfy basis exchange.  Each
check here is exhaustive and returns an explicit witness on failure, so the
test suite can treat "verified polynomial with a bad support" as a hard bug.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .matroids import SetSystem, exchange_axiom_witness
from .polynomials import GroundSet, SubsetPoly, _popcount
from .prng import SplitMix64


@dataclass(frozen=True)
class SupportProfile:
    ground: GroundSet
    support: SetSystem
    r: int
    s: int


def support(z: SubsetPoly) -> SupportProfile:
    """Exact support of a weight function with nonnegative coefficients."""
    words = []
    for w, c in z.terms.items():
        if not isinstance(c, Fraction):
            raise TypeError("support extraction needs rational coefficients")
        if c < 0:
            raise ValueError("negative coefficient")
        if c:
            words.append(w)
    if not words:
        raise ValueError("empty support")
    system = SetSystem(z.ground, tuple(words))
    sizes = [_popcount(w) for w in system.members]
    return SupportProfile(ground=z.ground, support=system, r=max(sizes), s=min(sizes))


def convexity_witness(system: SetSystem) -> tuple[int, int, int] | None:
    """A triple (S, T, S') with S, S' members, S ⊆ T ⊆ S', T missing; None if convex.

    It is enough to test one-element insertions T = S ∪ {x} over member pairs
    S ⊆ S': if all of those land in the system, induction on |T∖S| fills in
    every intermediate set.
    """
    members = system.members
    member_set = system.member_set()
    if len(member_set) == 1 << system.ground.m:
        return None
    by_size = sorted(members, key=_popcount)
    for i, small in enumerate(by_size):
        for big in by_size[i + 1 :]:
            if small & big != small or small == big:
                continue
            gap = big & ~small
            while gap:
                bit = gap & -gap
                gap ^= bit
                if small | bit not in member_set:
                    return (small, small | bit, big)
    return None


def is_convex(system: SetSystem) -> bool:
    return convexity_witness(system) is None


def symmetric_exchange_witness(system: SetSystem) -> tuple[int, int, int] | None:
    """A violating (A, B, e-bit) of the symmetric exchange axiom; None if it holds.

    The axiom: for members A, B and e in the symmetric difference there is an
    f in the symmetric difference (f = e allowed) with A △ {e,f} a member.
    """
    member_set = system.member_set()
    m = system.ground.m
    if len(member_set) == 1 << m:
        return None
    # toggles[w] = bitmask of positions whose single flip lands in the system
    toggles: dict[int, int] = {}

    def toggle_mask(word: int) -> int:
        got = toggles.get(word)
        if got is None:
            got = 0
            for i in range(m):
                if word ^ (1 << i) in member_set:
                    got |= 1 << i
            toggles[word] = got
        return got

    members = system.members
    for a in members:
        for b in members:
            diff = a ^ b
            rest = diff
            while rest:
                ebit = rest & -rest
                rest ^= ebit
                flipped = a ^ ebit
                if flipped in member_set:
                    continue
                if toggle_mask(flipped) & diff & ~ebit:
                    continue
                return (a, b, ebit)
    return None


def sea_check(system: SetSystem) -> bool:
    return symmetric_exchange_witness(system) is None


def is_convex_delta_matroid(system: SetSystem) -> bool:
    return is_convex(system) and sea_check(system)


LOG_SUBMODULAR_EXHAUSTIVE_LIMIT = 10


def log_submodular_witness(
    z: SubsetPoly, seed: int = 0xD1CE, random_pairs: int = 20000
) -> tuple[int, int] | None:
    """A pair (S, T) with coeff(S)coeff(T) < coeff(S∩T)coeff(S∪T); None if none found.

    Exhaustive for m <= 10.  A violation needs positive weight on both the
    meet and the join, so it suffices to scan member pairs C ⊆ U of the
    support and every split of U∖C into the two private parts; every subset
    pair (S, T) arises exactly once this way.  Above the limit, seeded random
    subset pairs only (result then one-sided: None is not a proof).
    """
    weights = {}
    for w, c in z.terms.items():
        if not isinstance(c, Fraction):
            raise TypeError("log-submodularity needs rational coefficients")
        if c < 0:
            raise ValueError("negative coefficient")
        if c:
            weights[w] = c
    m = z.ground.m
    if m <= LOG_SUBMODULAR_EXHAUSTIVE_LIMIT:
        for cw, base in weights.items():
            for uw, top in weights.items():
                if cw & uw != cw:
                    continue
                rhs = base * top
                free = uw & ~cw
                sub = free
                while True:
                    s_word = cw | sub
                    t_word = uw ^ sub
                    lhs = weights.get(s_word, Fraction(0)) * weights.get(t_word, Fraction(0))
                    if lhs < rhs:
                        return (s_word, t_word)
                    if sub == 0:
                        break
                    sub = (sub - 1) & free
        return None
    rng = SplitMix64(seed)
    full = z.ground.full
    for _ in range(random_pairs):
        s_word = rng.next_u64() & full
        t_word = rng.next_u64() & full
        lhs = weights.get(s_word, Fraction(0)) * weights.get(t_word, Fraction(0))
        rhs = weights.get(s_word & t_word, Fraction(0)) * weights.get(s_word | t_word, Fraction(0))
        if lhs < rhs:
            return (s_word, t_word)
    return None


def log_submodular_check(z: SubsetPoly) -> bool:
    return log_submodular_witness(z) is None


# --- flattening ------------------------------------------------------------------


@dataclass(frozen=True)
class FlattenRecord:
    """A support made homogeneous of degree r by adjoining r-s free elements."""

    ground: GroundSet
    fresh: tuple[str, ...]
    system: SetSystem
    weights: SubsetPoly | None
    exchange_ok: bool
    exchange_witness: tuple | None


def _fresh_labels(ground: GroundSet, count: int) -> tuple[str, ...]:
    prefix = "~"
    existing = set(ground.labels)
    while any(f"{prefix}{i}" in existing for i in range(1, count + 1)):
        prefix += "~"
    return tuple(f"{prefix}{i}" for i in range(1, count + 1))


def flatten(source: SubsetPoly | SetSystem) -> FlattenRecord:
    """Pad every member up to the maximum size r with fresh elements.

    The flattened system { S ∪ F : |S ∪ F| = r, S a member } is homogeneous;
    for a convex delta-matroid it satisfies basis exchange.  From a weight
    function, the padded weights keep the original coefficient on every
    completion, which matches multiplying each size-k layer by the
    elementary symmetric polynomial e_{r-k} of the fresh variables.
    """
    weights_in: SubsetPoly | None = source if isinstance(source, SubsetPoly) else None
    if weights_in is not None:
        profile = support(weights_in)
        system, ground = profile.support, profile.ground
        r, s = profile.r, profile.s
    else:
        system, ground = source, source.ground
        sizes = [_popcount(w) for w in system.members]
        r, s = max(sizes), min(sizes)
    ell = r - s
    if ground.m + ell > 30:
        raise ValueError("flattening overflows the 30-element ground cap")
    fresh = _fresh_labels(ground, ell)
    flat_ground = GroundSet(ground.labels + fresh)

    flat_terms: dict[int, Fraction] = {}
    flat_members: list[int] = []
    fresh_bits = [flat_ground.bit(lab) for lab in fresh]
    for w in system.members:
        need = r - _popcount(w)
        coeff = weights_in.coeff(w) if weights_in is not None else Fraction(1)
        for pick in _bit_combinations(fresh_bits, need):
            padded = w | pick
            flat_members.append(padded)
            flat_terms[padded] = coeff
    flat_system = SetSystem(flat_ground, tuple(flat_members))
    witness = exchange_axiom_witness(flat_system.members)
    return FlattenRecord(
        ground=flat_ground,
        fresh=fresh,
        system=flat_system,
        weights=SubsetPoly(flat_ground, flat_terms) if weights_in is not None else None,
        exchange_ok=witness is None,
        exchange_witness=witness,
    )


def _bit_combinations(bits: list[int], k: int) -> list[int]:
    if k < 0 or k > len(bits):
        return []
    if k == 0:
        return [0]
    out = []

    def rec(start: int, left: int, acc: int):
        if left == 0:
            out.append(acc)
            return
        for i in range(start, len(bits) - left + 1):
            rec(i + 1, left - 1, acc | bits[i])

    rec(0, k, 0)
    return out


def size_window_sums(z: SubsetPoly) -> tuple[int, int, list[Fraction]]:
    """(s, r, [f_s..f_r]): total weight per support size over the support window."""
    profile = support(z)
    sums = [Fraction(0)] * (profile.r - profile.s + 1)
    for w, c in z.terms.items():
        if c:
            sums[_popcount(w) - profile.s] += c
    return profile.s, profile.r, sums


def flattened_fresh_profile(z: SubsetPoly):
    """The flattening with every original variable set to 1, as an exchangeable
    sequence over the fresh variables: entry j is the size-(r-j) layer sum."""
    from .polynomials import SymSeq

    s, r, sums = size_window_sums(z)
    return SymSeq(sums[r - s - j] for j in range(r - s + 1))


# --- layers and exchange consequences ----------------------------------------------


@dataclass(frozen=True)
class LayerVerdict:
    k: int
    system: SetSystem
    exchange_ok: bool
    exchange_witness: tuple | None


def layers(system: SetSystem) -> list[LayerVerdict]:
    """Members grouped by size; each layer gets a basis-exchange verdict."""
    by_size: dict[int, list[int]] = {}
    for w in system.members:
        by_size.setdefault(_popcount(w), []).append(w)
    out = []
    for k in sorted(by_size):
        layer = SetSystem(system.ground, tuple(by_size[k]))
        witness = exchange_axiom_witness(layer.members)
        out.append(
            LayerVerdict(k=k, system=layer, exchange_ok=witness is None, exchange_witness=witness)
        )
    return out


@dataclass(frozen=True)
class ExchangeReport:
    """Size-exchange consequences of being a convex delta-matroid.

    vacuous: the input was not a convex delta-matroid, so nothing is claimed.
    Otherwise each field must be True; any witness is a disproof of the
    corresponding consequence and fails the build.
    """

    vacuous: bool
    augment_up: bool
    shrink_down: bool
    exchange_from_equal: bool
    exchange_into_equal: bool
    max_equicardinal: bool
    min_equicardinal: bool
    witnesses: dict

    @property
    def all_hold(self) -> bool:
        return not self.vacuous and all(
            (
                self.augment_up,
                self.shrink_down,
                self.exchange_from_equal,
                self.exchange_into_equal,
                self.max_equicardinal,
                self.min_equicardinal,
            )
        )


def exchange_props_check(system: SetSystem) -> ExchangeReport:
    if not is_convex_delta_matroid(system):
        return ExchangeReport(True, False, False, False, False, False, False, {})
    members = system.members
    member_set = system.member_set()
    witnesses: dict = {}

    augment = shrink = out_ok = in_ok = True
    for a in members:
        ca = _popcount(a)
        for b in members:
            cb = _popcount(b)
            if ca < cb:
                # some element of B∖A extends A; some drops B back toward A
                gain = b & ~a
                if not any(a | (1 << i) in member_set for i in _bit_positions(gain)):
                    augment = False
                    witnesses.setdefault("augment_up", (a, b))
                if not any(b ^ (1 << i) in member_set for i in _bit_positions(gain)):
                    shrink = False
                    witnesses.setdefault("shrink_down", (a, b))
            elif ca == cb:
                for i in _bit_positions(a & ~b):
                    abit = 1 << i
                    swap_out = any(
                        (a ^ abit) | (1 << j) in member_set for j in _bit_positions(b & ~a)
                    )
                    if not swap_out:
                        out_ok = False
                        witnesses.setdefault("exchange_from_equal", (a, b, abit))
                    swap_in = any(
                        (b ^ (1 << j)) | abit in member_set for j in _bit_positions(b & ~a)
                    )
                    if not swap_in:
                        in_ok = False
                        witnesses.setdefault("exchange_into_equal", (a, b, abit))

    maximal = [w for w in members if not any(w != v and w & v == w for v in members)]
    minimal = [w for w in members if not any(w != v and w & v == v for v in members)]
    max_eq = len({_popcount(w) for w in maximal}) == 1
    min_eq = len({_popcount(w) for w in minimal}) == 1
    if not max_eq:
        witnesses["max_equicardinal"] = tuple(maximal)
    if not min_eq:
        witnesses["min_equicardinal"] = tuple(minimal)
    return ExchangeReport(
        vacuous=False,
        augment_up=augment,
        shrink_down=shrink,
        exchange_from_equal=out_ok,
        exchange_into_equal=in_ok,
        max_equicardinal=max_eq,
        min_equicardinal=min_eq,
        witnesses=witnesses,
    )


def _bit_positions(word: int):
    while word:
        low = word & -word
        yield low.bit_length() - 1
        word ^= low


def disjoint_pair_exchange_witness(system: SetSystem) -> tuple | None:
    """Hunt for disjoint members A, B and {e,f} ⊆ B, g ∈ A such that no member
    contains e and g but not f, nor f and g but not e.  None if no such
    configuration exists (a necessary condition on supports of pair-verified
    weight functions)."""
    members = system.members
    for a in members:
        for b in members:
            if a & b or _popcount(b) < 2:
                continue
            b_positions = list(_bit_positions(b))
            for gi in _bit_positions(a):
                gbit = 1 << gi
                for x in range(len(b_positions)):
                    ebit = 1 << b_positions[x]
                    for y in range(x + 1, len(b_positions)):
                        fbit = 1 << b_positions[y]
                        ok = any(
                            (w & (ebit | gbit)) == (ebit | gbit) and not w & fbit for w in members
                        ) or any(
                            (w & (fbit | gbit)) == (fbit | gbit) and not w & ebit for w in members
                        )
                        if not ok:
                            return (a, b, ebit, fbit, gbit)
    return None


def full_support_check(z: SubsetPoly) -> bool | None:
    """True/False: does the support contain ∅ and E and equal all of B(E)?
    None when ∅ or E is missing (the premise fails, nothing to check)."""
    profile = support(z)
    member_set = profile.support.member_set()
    if 0 not in member_set or z.ground.full not in member_set:
        return None
    return len(member_set) == 1 << z.ground.m


def completion_counts(system: SetSystem) -> dict[int, int]:
    """Member count per size; the LYM-style profile sum(count_k / C(m,k))."""
    counts: dict[int, int] = {}
    for w in system.members:
        counts[_popcount(w)] = counts.get(_popcount(w), 0) + 1
    return counts


def lym_sum(system: SetSystem) -> Fraction:
    m = system.ground.m
    return sum(
        (Fraction(c, comb(m, k)) for k, c in completion_counts(system).items()), Fraction(0)
    )
