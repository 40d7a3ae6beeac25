"""Commutator equidistribution on class-two groups.

For a group K with K' <= Z(K), the commutator map K x K -> K' is
bimultiplicative.  Given homomorphisms phi, psi: K -> K', this module computes
the exact distribution f of phi(k) [k, l] psi(l) over (k, l) in K^2, its
Fourier coefficients against the characters of K', and the subgroups

    zbar(K, H) = {k in K : [k, l] in H for all l}

whose indices control those coefficients.  It also holds the group families
used to watch f flatten out as the index grows, and the twist maps
l -> l^g l^-1 on K/K' that measure how far G acts nontrivially on K.

Character values are kept as exact phases (fractions of a turn); only the
Fourier inner products are evaluated in floating point.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Optional, Sequence

import numpy as np

from .groups import (
    AbelianStructure,
    Group,
    GroupError,
    Subgroup,
    abelian_structure,
    center,
    commutator,
    commutator_subgroup,
    cyclic,
    dihedral,
    direct_product,
    extraspecial,
    normal_core,
    quotient,
    subgroup_generated,
    subgroups_of_abelian,
    whole,
)
from .probability import PAIR_LIMIT, commuting_probability, coset_pair_counts, fmt_rational, quotient_probability, twist


class NotClassTwoError(GroupError):
    pass


def _require_class_two(K: Group) -> Subgroup:
    Kp = commutator_subgroup(K)
    if not Kp <= center(K):
        raise NotClassTwoError(f"{K.descriptor} is not nilpotent of class <= 2")
    return Kp


# ---------------------------------------------------------------------------
# identification of K' with a fixed abelian group


@dataclass(frozen=True, eq=False)
class KPrime:
    """A fixed abelian group together with its embedding onto K' inside K."""

    group: Group
    embed: np.ndarray  # fixed index -> element of K

    def locator(self, order: int) -> np.ndarray:
        """Array over the elements of K: fixed index on K', -1 elsewhere."""
        loc = np.full(order, -1, dtype=np.int64)
        loc[self.embed] = np.arange(self.group.order)
        return loc

    def pullback(self, K: Group, H: Subgroup) -> Subgroup:
        """The subgroup of K matching a subgroup H of the fixed group."""
        return Subgroup.from_elements(K, self.embed[H.elements])


def default_kprime(K: Group) -> KPrime:
    Kp = commutator_subgroup(K)
    group = Kp.as_group()
    return KPrime(group, Kp.elements.copy())


def validate_kprime(K: Group, kprime: KPrime) -> None:
    Kp = commutator_subgroup(K)
    embed = kprime.embed
    if np.unique(embed).size != kprime.group.order or not np.array_equal(np.sort(embed), Kp.elements):
        raise GroupError("K' identification is not a bijection onto the commutator subgroup")
    A = kprime.group
    for a in A.elements:
        if not np.array_equal(embed[A.mul(a, A.elements)], K.mul(embed[a], embed)):
            raise GroupError("K' identification is not a homomorphism")


# ---------------------------------------------------------------------------
# characters


@dataclass(frozen=True, eq=False)
class Character:
    """``a -> exp(2 pi i sum_j e_j x_j / d_j)`` for coordinates x of a."""

    structure: AbelianStructure
    exponents: tuple[int, ...]

    @property
    def group(self) -> Group:
        return self.structure.group

    @cached_property
    def modulus(self) -> int:
        """Common denominator of all phases (the exponent of the group)."""
        return self.structure.invariant_factors[-1] if self.structure.invariant_factors else 1

    @cached_property
    def numerators(self) -> np.ndarray:
        """Phase of every element as a numerator over ``modulus``."""
        N = self.modulus
        scale = np.array([e * (N // d) for e, d in zip(self.exponents, self.structure.invariant_factors)], dtype=np.int64)
        return (self.structure.coordinates @ scale) % N if scale.size else np.zeros(self.group.order, dtype=np.int64)

    def phase(self, a: int) -> Fraction:
        return Fraction(int(self.numerators[a]), self.modulus)

    def value(self, a: int) -> complex:
        return cmath.exp(2j * math.pi * float(self.phase(a)))

    @property
    def values(self) -> np.ndarray:
        return np.exp(2j * np.pi * self.numerators / self.modulus)

    @property
    def is_trivial(self) -> bool:
        return not any(self.exponents)

    @cached_property
    def order(self) -> int:
        g = math.gcd(self.modulus, *(int(x) for x in self.numerators))
        return self.modulus // g

    def kernel(self) -> Subgroup:
        return Subgroup(self.group, self.numerators == 0)

    def __mul__(self, other: "Character") -> "Character":
        d = self.structure.invariant_factors
        return Character(self.structure, tuple((a + b) % m for a, b, m in zip(self.exponents, other.exponents, d)))


def characters(A: Group, structure: Optional[AbelianStructure] = None) -> list[Character]:
    """All characters of an abelian group, trivial character first."""
    if structure is None:
        structure = abelian_structure(A)
    return [Character(structure, e) for e in itertools.product(*(range(d) for d in structure.invariant_factors))]


def _cyclotomic(n: int, _cache={}) -> list[int]:
    """Integer coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    if n not in _cache:
        poly = [-1] + [0] * (n - 1) + [1]
        for d in range(1, n):
            if n % d == 0:
                poly = _divide(poly, _cyclotomic(d))[0]
        _cache[n] = poly
    return _cache[n]


def _divide(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Division by a monic integer polynomial."""
    num = list(num)
    q = [0] * max(1, len(num) - len(den) + 1)
    for shift in range(len(num) - len(den), -1, -1):
        c = num[shift + len(den) - 1]
        q[shift] = c
        for j, dj in enumerate(den):
            num[shift + j] -= c * dj
    return q, num[: len(den) - 1]


def character_sum(chi: Character) -> int:
    """Exact value of sum_a chi(a), reduced in the cyclotomic field.

    The sum is a polynomial in a primitive N-th root of unity with the phase
    counts as coefficients; reducing it modulo the N-th cyclotomic polynomial
    leaves a constant.
    """
    N = chi.modulus
    counts = np.bincount(chi.numerators, minlength=N).tolist()
    if N == 1:
        return counts[0]
    _, rem = _divide(counts, _cyclotomic(N))
    if any(rem[1:]):
        raise ArithmeticError("character sum is not rational")
    return rem[0] if rem else 0


# ---------------------------------------------------------------------------
# distributions


@dataclass(frozen=True, eq=False)
class Distribution:
    support_group: Group
    mass: tuple[Fraction, ...]  # indexed by element of support_group

    def __post_init__(self):
        if len(self.mass) != self.support_group.order:
            raise ValueError("mass vector does not match the support group")
        if any(m < 0 for m in self.mass) or sum(self.mass) != 1:
            raise ValueError("masses must be nonnegative and sum to 1")

    @classmethod
    def from_counts(cls, group: Group, counts) -> "Distribution":
        total = int(sum(int(c) for c in counts))
        return cls(group, tuple(Fraction(int(c), total) for c in counts))

    def __getitem__(self, a: int) -> Fraction:
        return self.mass[a]


@dataclass(frozen=True, eq=False)
class HomPair:
    """Homomorphisms phi, psi: K -> K', stored as element tables of K."""

    phi: np.ndarray
    psi: np.ndarray

    @classmethod
    def trivial(cls, K: Group) -> "HomPair":
        zeros = np.zeros(K.order, dtype=np.int64)
        return cls(zeros, zeros)

    def validate(self, K: Group, Kp: Optional[Subgroup] = None) -> None:
        if Kp is None:
            Kp = commutator_subgroup(K)
        for name, table in (("phi", self.phi), ("psi", self.psi)):
            table = np.asarray(table)
            if table.shape != (K.order,) or not Kp.mask[table].all():
                raise GroupError(f"{name} does not map K into K'")
            # checking against the generators covers every product
            for g in K.gens:
                if not np.array_equal(table[K.mul(K.elements, g)], K.mul(table, table[g])):
                    raise GroupError(f"{name} is not a homomorphism")


def hom_pair_from_images(K: Group, kprime: KPrime, phi_images, psi_images) -> HomPair:
    """Homomorphisms K -> K' factoring through K/K', given by images of a basis.

    ``phi_images[j]`` is the fixed-K' image of the j-th basis element of the
    abelianization's coordinate decomposition.
    """
    Kp = commutator_subgroup(K)
    Kab = quotient(K, Kp)
    structure = abelian_structure(Kab, limit=Kab.order)
    A = kprime.group

    def build(images):
        images = [int(x) for x in images]
        for x, d in zip(images, structure.invariant_factors):
            if A.power(x, d) != 0:
                raise GroupError("image order does not divide the basis order")
        on_quotient = np.zeros(Kab.order, dtype=np.int64)
        for c in range(Kab.order):
            y = 0
            for x, e in zip(images, structure.coordinates[c]):
                y = A.mul(y, A.power(x, int(e)))
            on_quotient[c] = y
        return kprime.embed[on_quotient[Kab.projection]]

    return HomPair(build(phi_images), build(psi_images))


def f_distribution_pairs(
    K: Group, homs: Optional[HomPair] = None, kprime: Optional[KPrime] = None, limit: int = PAIR_LIMIT
) -> Distribution:
    """Distribution of phi(k)[k,l]psi(l) by enumerating all |K|^2 pairs."""
    if K.order > limit:
        raise GroupError(f"pair enumeration is limited to order <= {limit}")
    kprime = kprime or default_kprime(K)
    homs = homs or HomPair.trivial(K)
    loc = kprime.locator(K.order)
    counts = np.zeros(kprime.group.order, dtype=np.int64)
    step = max(1, (1 << 22) // K.order)
    for start in range(0, K.order, step):
        k = np.arange(start, min(start + step, K.order))[:, None]
        l = K.elements[None, :]
        values = K.mul(K.mul(homs.phi[k], commutator(K, k, l)), homs.psi[l])
        fixed = loc[values]
        if (fixed < 0).any():
            raise GroupError("a value fell outside K'; is K of class two?")
        counts += np.bincount(fixed.ravel(), minlength=counts.size)
    return Distribution.from_counts(kprime.group, counts)


def f_distribution(K: Group, homs: Optional[HomPair] = None, kprime: Optional[KPrime] = None) -> Distribution:
    """Exact distribution of phi(k)[k,l]psi(l) over (k, l) in K^2.

    For fixed k the map l -> [k,l]psi(l) is a homomorphism into K', so the
    values over l are uniform on the coset phi(k)*image, and the image is
    generated by the values at the generators of K.  Cost is O(|K| |gens|).
    """
    Kp = _require_class_two(K)
    kprime = kprime or default_kprime(K)
    homs = homs or HomPair.trivial(K)
    homs.validate(K, Kp)
    A = kprime.group
    loc = kprime.locator(K.order)
    e = K.elements
    columns = [loc[homs.phi]]
    for g in K.gens:
        columns.append(loc[K.mul(commutator(K, e, g), homs.psi[g])])
    signatures, multiplicity = np.unique(np.stack(columns, axis=1), axis=0, return_counts=True)
    counts = np.zeros(A.order, dtype=object)
    images: dict[tuple[int, ...], Subgroup] = {}
    for sig, mult in zip(signatures, multiplicity):
        key = tuple(int(v) for v in sig[1:])
        if key not in images:
            images[key] = subgroup_generated(A, key)
        image = images[key]
        coset = A.mul(int(sig[0]), image.elements)
        counts[coset] += int(mult) * (K.order // image.order)
    return Distribution.from_counts(A, counts)


def fourier_coefficient(f: Distribution, chi: Character) -> complex:
    """``(1/|K'|) sum_a f(a) conj(chi(a))``."""
    if f.support_group is not chi.group:
        raise ValueError("distribution and character live on different groups")
    mass = np.array([float(m) for m in f.mass])
    return complex(np.sum(mass * np.conj(chi.values)) / chi.group.order)


def fourier_coefficient_real(f: Distribution, chi: Character) -> Fraction:
    """Exact coefficient for a real-valued character (values +-1)."""
    if f.support_group is not chi.group:
        raise ValueError("distribution and character live on different groups")
    if chi.order > 2:
        raise ValueError("character is not real-valued")
    total = sum((m if chi.numerators[a] == 0 else -m for a, m in enumerate(f.mass)), Fraction(0))
    return total / chi.group.order


def reconstruct(f: Distribution, chars: Sequence[Character]) -> np.ndarray:
    """``sum_chi <f, chi> chi`` evaluated at every element."""
    return sum(fourier_coefficient(f, chi) * chi.values for chi in chars)


# ---------------------------------------------------------------------------
# zbar and the magnitude law


def bar_Z(K: Group, H: Subgroup) -> Subgroup:
    """``{k : [k, l] in H for every l}`` for a subgroup H of K'.

    Since l -> [k, l] is a homomorphism in a class-two group, testing the
    generators of K suffices.
    """
    Kp = _require_class_two(K)
    if H.parent is not K or not H <= Kp:
        raise GroupError("H must be a subgroup of the commutator subgroup of K")
    mask = np.ones(K.order, dtype=bool)
    for g in K.gens:
        mask &= H.mask[commutator(K, K.elements, g)]
    return Subgroup(K, mask)


def zbar_index(K: Group, H: Subgroup) -> int:
    return bar_Z(K, H).index


def coefficient_branch(K: Group, chi: Character, kprime: KPrime, homs: HomPair) -> str:
    """``'witness'`` if some k and some l make the partial characters trivial, else ``'vanishing'``.

    Witness k: chi([k, l] psi(l)) = 1 for all l.  Witness l: chi(phi(k) [k, l]) = 1
    for all k.  Without both the Fourier coefficient is exactly zero.
    """
    loc = kprime.locator(K.order)
    e = K.elements
    k_ok = np.ones(K.order, dtype=bool)
    l_ok = np.ones(K.order, dtype=bool)
    for g in K.gens:
        k_ok &= chi.numerators[loc[K.mul(commutator(K, e, g), homs.psi[g])]] == 0
        l_ok &= chi.numerators[loc[K.mul(homs.phi[g], commutator(K, g, e))]] == 0
    return "witness" if k_ok.any() and l_ok.any() else "vanishing"


def fourier_magnitude_predicted(
    K: Group, chi: Character, kprime: Optional[KPrime] = None, homs: Optional[HomPair] = None
) -> Fraction:
    """``(1/|K'|) / [K : zbar(K, ker chi)]``, or 0 on the vanishing branch."""
    kprime = kprime or default_kprime(K)
    if homs is not None and coefficient_branch(K, chi, kprime, homs) == "vanishing":
        return Fraction(0)
    kernel = kprime.pullback(K, chi.kernel())
    return Fraction(1, chi.group.order * zbar_index(K, kernel))


def equidist_deviation(f: Distribution, H0: Subgroup) -> Fraction:
    """``max over a in H0 of |f(a) - mean of f over H0|``."""
    masses = [f.mass[a] for a in H0.elements]
    mean = sum(masses, Fraction(0)) / len(masses)
    return max(abs(m - mean) for m in masses)


# ---------------------------------------------------------------------------
# twist maps on K/K'


@dataclass(frozen=True, eq=False)
class TwistMap:
    """The endomorphism l -> g^-1 l g l^-1 of K/K'."""

    abelianization: Group
    table: np.ndarray  # K/K' index -> K/K' index
    image: Subgroup

    @property
    def image_size(self) -> int:
        return self.image.order


def abelianization(K: Subgroup) -> Group:
    cached = getattr(K, "_abelianization", None)
    if cached is None:
        group = K.as_group()
        cached = quotient(group, commutator_subgroup(group), suffix="G'")
        K._abelianization = cached
    return cached


def twist_homomorphism(G: Group, K: Subgroup, g: int) -> TwistMap:
    K.require_normal()
    Kab = abelianization(K)
    position = np.full(G.order, -1, dtype=np.int64)
    position[K.elements] = np.arange(K.order)
    reps = K.elements[Kab.representatives]
    images = position[twist(G, g, reps)]
    table = Kab.projection[images]
    return TwistMap(Kab, table, Subgroup.from_elements(Kab, table))


def coset_term_bound(G: Group, K: Subgroup, g: int, h: int) -> Fraction:
    """``|im phi_C ∩ im phi_D| / (|im phi_C| |im phi_D|)`` for C = gK, D = hK."""
    a = twist_homomorphism(G, K, g).image
    b = twist_homomorphism(G, K, h).image
    return Fraction((a & b).order, a.order * b.order)


def q_split(G: Group, K: Subgroup, q_cosets: Sequence[int]) -> tuple[Fraction, Fraction]:
    """Split P(G) over coset pairs inside Q x Q and the rest.

    Returns ``(P(pi^-1(Q)) / [G/K : Q]^2, remainder)``; the two add up to P(G).
    ``q_cosets`` are coset labels as numbered by ``coset_labels``.
    """
    counts, labels, reps = coset_pair_counts(G, K)
    q = reps.size
    inside = np.zeros(q, dtype=bool)
    inside[list(q_cosets)] = True
    preimage = Subgroup(G, inside[labels])
    index = q // int(inside.sum())
    head = commuting_probability(preimage.as_group()) / index**2
    outside = ~np.logical_and.outer(inside, inside)
    remainder = Fraction(int(counts[outside].sum()), K.order**2 * q * q)
    return head, remainder


def limit_value(G: Group, K: Subgroup) -> Fraction:
    """``P(G/K') / |K'|`` for K' the commutator subgroup of K."""
    Kp_local = commutator_subgroup(K.as_group())
    embedding = K.elements[Kp_local.elements]
    Kp = Subgroup.from_elements(G, embedding)
    return quotient_probability(G, Kp) / Kp.order


def reduced_subgroup(G: Group, K: Subgroup, H0_in_K: Subgroup) -> Subgroup:
    """Normal core in G of zbar(K, H0), as a subgroup of G."""
    group = K.as_group()
    zbar = bar_Z(group, H0_in_K)
    L = Subgroup.from_elements(G, K.elements[zbar.elements])
    return normal_core(G, L)


# ---------------------------------------------------------------------------
# families


@dataclass(frozen=True, eq=False)
class FamilyMember:
    index: int
    G: Group
    K: Subgroup
    kprime: KPrime
    quotient_map: np.ndarray  # element of G -> element of the family's fixed G/K

    @property
    def K_group(self) -> Group:
        return self.K.as_group()


@dataclass(frozen=True, eq=False)
class GroupFamily:
    name: str
    generator: Callable[[int], FamilyMember]
    valid_range: tuple[int, int]
    kprime_group: Group
    quotient_group: Group
    _members: dict = field(default_factory=dict, repr=False)

    def member(self, i: int) -> FamilyMember:
        lo, hi = self.valid_range
        if not lo <= i <= hi:
            raise GroupError(f"family {self.name} is defined for indices {lo}..{hi}")
        if i not in self._members:
            self._members[i] = self.generator(i)
        return self._members[i]


def validate_member(member: FamilyMember, quotient_group: Group) -> None:
    """Check normality, class two, and both identifications."""
    G, K = member.G, member.K
    K.require_normal()
    group = member.K_group
    _require_class_two(group)
    validate_kprime(group, member.kprime)
    qmap = member.quotient_map
    Q = quotient_group
    for g in G.gens:
        if not np.array_equal(qmap[G.mul(G.elements, g)], Q.mul(qmap, qmap[g])):
            raise GroupError("quotient identification is not a homomorphism")
    if not np.array_equal(np.flatnonzero(qmap == 0), K.elements):
        raise GroupError("quotient identification does not have kernel K")
    if np.unique(qmap).size != Q.order:
        raise GroupError("quotient identification is not onto")


_C1 = cyclic(1)
_C2 = cyclic(2)
_V4 = direct_product(_C2, _C2)


def _extraspecial2(i: int) -> FamilyMember:
    G = extraspecial(2, i)
    return FamilyMember(i, G, whole(G), KPrime(_C2, np.array([0, 1])), np.zeros(G.order, dtype=np.int64))


def _mixed(i: int) -> FamilyMember:
    G = direct_product(extraspecial(2, i), extraspecial(2, 1), order_cap=None)
    # fixed (u, v) at index 2u + v  <->  ((0,0,u), (0,0,v)) at index 8u + v
    embed = np.array([0, 1, 8, 9])
    return FamilyMember(i, G, whole(G), KPrime(_V4, embed), np.zeros(G.order, dtype=np.int64))


def _dihedral_odd(i: int) -> FamilyMember:
    m = 2 * i + 1
    G = dihedral(m)
    K = subgroup_generated(G, [1])
    return FamilyMember(i, G, K, KPrime(_C1, np.array([0])), (G.elements >= m).astype(np.int64))


def _abelian(i: int) -> FamilyMember:
    G = cyclic(2**i)
    return FamilyMember(i, G, whole(G), KPrime(_C1, np.array([0])), np.zeros(G.order, dtype=np.int64))


FAMILIES: dict[str, GroupFamily] = {}


def register(family: GroupFamily) -> GroupFamily:
    FAMILIES[family.name] = family
    return family


register(GroupFamily("extraspecial2", _extraspecial2, (1, 6), _C2, _C1))
register(GroupFamily("mixed", _mixed, (1, 5), _V4, _C1))
register(GroupFamily("dihedral_odd", _dihedral_odd, (1, 2000), _C1, _C2))
register(GroupFamily("abelian", _abelian, (1, 13), _C1, _C1))


def get_family(name: str) -> GroupFamily:
    try:
        return FAMILIES[name]
    except KeyError:
        raise GroupError(f"unknown family {name!r}; known: {', '.join(sorted(FAMILIES))}") from None


def _classify(values: Sequence[int], bound: int) -> bool:
    # bounded: last value within the bound and unchanged from the one before
    return values[-1] <= bound and values[-1] == values[-2]


@dataclass(frozen=True, eq=False)
class H0Estimate:
    subgroup: Subgroup  # of the family's fixed K'
    indices: tuple[int, ...]
    classification: tuple[tuple[Subgroup, tuple[int, ...], bool], ...]
    heuristic: bool = True

    @property
    def bounded(self) -> list[Subgroup]:
        return [H for H, _, ok in self.classification if ok]


def h0_estimate(family: GroupFamily, indices: Sequence[int], bound: int) -> H0Estimate:
    """Smallest subgroup H of K' whose zbar-index looks bounded along the samples.

    A subgroup counts as bounded when its index at the largest sampled index is
    at most ``bound`` and equal to the index at the second largest.  The answer
    is the intersection of all bounded subgroups, which is itself bounded.
    """
    indices = tuple(sorted(indices))
    if len(indices) < 3:
        raise ValueError("h0_estimate needs at least three sample indices")
    A = family.kprime_group
    members = [family.member(i) for i in indices]
    rows = []
    for H in subgroups_of_abelian(A):
        seq = tuple(zbar_index(m.K_group, m.kprime.pullback(m.K_group, H)) for m in members)
        rows.append((H, seq, _classify(seq, bound)))
    bounded = [H for H, _, ok in rows if ok]
    if not bounded:
        raise GroupError("no subgroup of K' classified as bounded")
    mask = np.logical_and.reduce([H.mask for H in bounded])
    H0 = next(H for H, _, _ in rows if np.array_equal(H.mask, mask))
    if not next(ok for H, _, ok in rows if H is H0):
        raise GroupError("bounded subgroups are not closed under intersection")
    return H0Estimate(H0, indices, tuple(rows))


def _twist_image_sizes(member: FamilyMember, Q: Group) -> list[int]:
    G = member.G
    sizes = []
    for c in range(Q.order):
        g = int(np.flatnonzero(member.quotient_map == c)[0])
        sizes.append(twist_homomorphism(G, member.K, g).image_size)
    return sizes


@dataclass(frozen=True, eq=False)
class QEstimate:
    subgroup: Subgroup  # of the family's fixed G/K
    indices: tuple[int, ...]
    image_sizes: tuple[tuple[int, ...], ...]  # per coset, along the indices
    heuristic: bool = True

    @property
    def index(self) -> int:
        return self.subgroup.index


def q_subgroup_estimate(family: GroupFamily, bound: int, indices: Sequence[int]) -> QEstimate:
    """Cosets C whose twist image |im phi^C| looks bounded along the samples."""
    indices = tuple(sorted(indices))
    if len(indices) < 2:
        raise ValueError("q_subgroup_estimate needs at least two sample indices")
    Q = family.quotient_group
    per_index = []
    for i in indices:
        member = family.member(i)
        validate_member(member, Q)
        per_index.append(_twist_image_sizes(member, Q))
    sizes = tuple(tuple(row[c] for row in per_index) for c in range(Q.order))
    mask = np.array([_classify(seq, bound) for seq in sizes])
    S = Subgroup(Q, mask)
    if not mask[0] or not np.all(mask[Q.mul(S.elements[:, None], S.elements[None, :])]):
        raise GroupError("bounded cosets do not form a subgroup")
    return QEstimate(S, indices, sizes)


# ---------------------------------------------------------------------------
# reports


def fourier_report(member: FamilyMember, f: Optional[Distribution] = None) -> list[dict]:
    K = member.K_group
    if f is None:
        f = f_distribution(K, kprime=member.kprime)
    report = []
    for chi in characters(member.kprime.group):
        c = fourier_coefficient(f, chi)
        report.append(
            {
                "character_exponents": list(chi.exponents),
                "coefficient_re": c.real,
                "coefficient_im": c.imag,
                "predicted_magnitude": fmt_rational(fourier_magnitude_predicted(K, chi, member.kprime)),
            }
        )
    return report


def experiment_rows(family: GroupFamily, indices: Sequence[int], bound: int):
    """Per-index, per-element rows of the equidistribution experiment.

    Returns ``(estimate, rows, fourier)`` where ``fourier`` maps index to its
    Fourier report.
    """
    estimate = h0_estimate(family, indices, bound)
    H0 = estimate.subgroup
    h0_text = ";".join(str(int(a)) for a in H0.elements)
    rows, fourier = [], {}
    for i in estimate.indices:
        member = family.member(i)
        f = f_distribution(member.K_group, kprime=member.kprime)
        dev = equidist_deviation(f, H0)
        for a, m in enumerate(f.mass):
            rows.append(
                {
                    "family": family.name,
                    "index": i,
                    "group_order": member.G.order,
                    "kprime_order": member.kprime.group.order,
                    "H0": h0_text,
                    "element": a,
                    "mass_num": m.numerator,
                    "mass_den": m.denominator,
                    "deviation_num": dev.numerator,
                    "deviation_den": dev.denominator,
                }
            )
        fourier[i] = fourier_report(member, f)
    return estimate, rows, fourier
