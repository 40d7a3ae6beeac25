"""Finite samples of the set of commuting probabilities and operations on them."""

from __future__ import annotations

import bisect
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .descriptors import build
from .groups import GroupError, center, is_prime
from .probability import commuting_probability, fmt_rational, parse_rational

CORPUS_LIMIT = 2048
RUSIN_FLOOR = Fraction(7, 16)


@dataclass(frozen=True, order=True)
class SpectrumEntry:
    value: Fraction
    witness: str
    order: int

    def to_dict(self) -> dict:
        return {"value": fmt_rational(self.value), "witness": self.witness, "order": self.order}

    @classmethod
    def from_dict(cls, d: dict) -> "SpectrumEntry":
        return cls(parse_rational(d["value"]), d["witness"], int(d["order"]))


class RationalSet:
    """Sorted, duplicate-free finite set of rationals in [0, 1]."""

    __slots__ = ("elements",)

    def __init__(self, values: Iterable = ()):
        elements = sorted({Fraction(v) for v in values})
        if elements and (elements[0] < 0 or elements[-1] > 1):
            raise ValueError("rational sets live in [0, 1]")
        self.elements: tuple[Fraction, ...] = tuple(elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        i = bisect.bisect_left(self.elements, Fraction(x))
        return i < len(self.elements) and self.elements[i] == x

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalSet) and self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def __le__(self, other: "RationalSet") -> bool:
        return all(x in other for x in self.elements)

    def __or__(self, other: "RationalSet") -> "RationalSet":
        return RationalSet(self.elements + other.elements)

    def __repr__(self) -> str:
        shown = ", ".join(str(x) for x in self.elements[:8])
        more = ", ..." if len(self.elements) > 8 else ""
        return f"RationalSet({{{shown}{more}}})"

    @property
    def max(self) -> Fraction:
        return self.elements[-1]

    def scaled(self, factor) -> "RationalSet":
        return RationalSet(x * factor for x in self.elements)

    def descending(self) -> list[Fraction]:
        return list(reversed(self.elements))


# ---------------------------------------------------------------------------
# corpus


def _base_descriptors(max_order: int) -> list[str]:
    out = [f"C{n}" for n in range(1, max_order + 1)]
    out += [f"D{m}" for m in range(2, max_order // 2 + 1)]
    for p in range(2, max_order + 1):
        if not is_prime(p):
            continue
        n = 1
        while p ** (2 * n + 1) <= max_order:
            out.append(f"E({p},{n})")
            n += 1
    out += [f"S{n}" for n in (3, 4, 5) if math.factorial(n) <= max_order]
    return out


@lru_cache(maxsize=8)
def _corpus(max_order: int) -> tuple[SpectrumEntry, ...]:
    base = []
    for d in _base_descriptors(max_order):
        G = build(d)
        base.append((d, G))
    groups = list(base)
    for i, (da, A) in enumerate(base):
        if A.order == 1:
            continue
        for db, B in base[i:]:
            if B.order > 1 and A.order * B.order <= max_order:
                groups.append((f"{da}x{db}", None))
    entries = []
    seen = set()
    for d, G in groups:
        if G is None:
            G = build(d)
        entries.append(SpectrumEntry(commuting_probability(G), d, G.order))
        seen.add(d)
        if G.is_abelian:
            continue
        Z = center(G)
        if Z.order > 1:
            Q = build(f"{d}/Z")
            entries.append(SpectrumEntry(commuting_probability(Q), f"{d}/Z", Q.order))
    return tuple(entries)


def corpus(max_order: int) -> list[SpectrumEntry]:
    """Deterministic sample of groups up to ``max_order`` with exact values.

    Covers cyclic, dihedral, extraspecial and small symmetric groups, every
    direct product of two nontrivial members within the bound, and the central
    quotient of every nonabelian group with nontrivial center.
    """
    if max_order > CORPUS_LIMIT:
        raise GroupError(f"corpus is limited to order <= {CORPUS_LIMIT}")
    if max_order < 1:
        raise ValueError("max_order must be positive")
    return list(_corpus(max_order))


def snapshot_json(entries: Sequence[SpectrumEntry]) -> str:
    ordered = sorted(entries, key=lambda e: (-e.value, e.order, e.witness))
    return json.dumps([e.to_dict() for e in ordered], indent=1)


def load_snapshot(text: str) -> list[SpectrumEntry]:
    data = json.loads(text)
    if not isinstance(data, list):
        raise ValueError("snapshot must be a JSON array")
    return [SpectrumEntry.from_dict(d) for d in data]


def spectrum_set(entries: Iterable[SpectrumEntry], with_zero: bool = True) -> RationalSet:
    values = [e.value for e in entries]
    return RationalSet(values + [Fraction(0)] if with_zero else values)


# ---------------------------------------------------------------------------
# the top of the spectrum


def joseph_value(n: int) -> Fraction:
    """``(1 + 4^-n) / 2``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return (1 + Fraction(1, 4**n)) / 2


def joseph_index(v: Fraction) -> Optional[int]:
    """The n >= 1 with ``joseph_value(n) == v``, if any."""
    if v <= Fraction(1, 2):
        return None
    q = 1 / (2 * v - 1)
    if q.denominator != 1:
        return None
    k = q.numerator
    n = 0
    while k % 4 == 0:
        k //= 4
        n += 1
    return n if k == 1 and n >= 1 else None


_LISTED = (Fraction(7, 16), Fraction(1, 2), Fraction(1))


@dataclass(frozen=True)
class RusinReport:
    conforming: tuple[tuple[SpectrumEntry, str], ...]
    violations: tuple[SpectrumEntry, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def rusin_interval_check(entries: Iterable[SpectrumEntry]) -> RusinReport:
    """Every value >= 7/16 must be 7/16, 1/2, 1, or (1 + 4^-n)/2 with n >= 1."""
    conforming, violations = [], []
    for e in entries:
        if e.value < RUSIN_FLOOR:
            continue
        if e.value in _LISTED:
            conforming.append((e, "listed"))
        else:
            n = joseph_index(e.value)
            if n is None:
                violations.append(e)
            else:
                conforming.append((e, f"n={n}"))
    return RusinReport(tuple(conforming), tuple(violations))


# ---------------------------------------------------------------------------
# P = 1/n from products of odd dihedral groups


class SearchExhausted(RuntimeError):
    pass


def dihedral_factor(m: int) -> Fraction:
    """Commuting probability of the dihedral group of order 2m, m odd."""
    return Fraction(m + 3, 4 * m)


def _min_terms(target: Fraction) -> int:
    # every factor exceeds 1/4, so j factors give a product above 4^-j
    j = 0
    while Fraction(1, 4**j) >= target:
        j += 1
    return j


def dihedral_product_search(n: int, max_depth: int = 8, max_m: int = 10**5) -> tuple[int, ...]:
    """Lexicographically smallest odd m_1 <= ... <= m_k >= 3 with prod (m_i+3)/(4m_i) = 1/n."""
    if not 1 <= n <= 64:
        raise ValueError("n must lie in 1..64")

    @lru_cache(maxsize=None)
    def search(target: Fraction, depth: int, m_min: int) -> Optional[tuple[int, ...]]:
        if target == 1:
            return ()
        j = _min_terms(target)
        if j == 0 or j > depth:
            return None
        # the first factor must satisfy f(m)^j >= target
        root = float(target) ** (1.0 / j)
        m_hi = max_m if 4 * root <= 1 else min(max_m, int(3 / (4 * root - 1)) + 2)
        start = m_min if m_min % 2 else m_min + 1
        for m in range(start, m_hi + 1, 2):
            fm = dihedral_factor(m)
            if fm < target:
                break
            if depth == 1 and fm != target:
                continue
            rest = search(target / fm, depth - 1, m)
            if rest is not None:
                return (m,) + rest
        return None

    result = search(Fraction(1, n), max_depth, 3)
    if result is None:
        raise SearchExhausted(f"no product of at most {max_depth} odd dihedral factors gives 1/{n}")
    if product_certificate(result) != Fraction(1, n):
        raise AssertionError("certificate does not verify")
    return result


def product_certificate(ms: Sequence[int]) -> Fraction:
    out = Fraction(1)
    for m in ms:
        out *= dihedral_factor(m)
    return out


def dihedral_product_descriptor(ms: Sequence[int]) -> str:
    return "x".join(f"D{m}" for m in ms) if ms else "C1"


# ---------------------------------------------------------------------------
# derived sets


def derived_step(X: RationalSet, primes: Sequence[int]) -> RationalSet:
    """``union over p of (1/p) X``."""
    if not primes:
        raise ValueError("need at least one prime")
    return RationalSet(x / p for p in primes for x in X)


def big_omega(k: int) -> int:
    """Number of prime factors of k counted with multiplicity."""
    count, p = 0, 2
    while p * p <= k:
        while k % p == 0:
            k //= p
            count += 1
        p += 1
    return count + (k > 1)


def primes_upto(bound: int) -> list[int]:
    return [p for p in range(2, bound + 1) if is_prime(p)]


def omega_layer(X: RationalSet, n: int, k_bound: int) -> RationalSet:
    """``union over k <= k_bound with Omega(k) = n of (1/k) X``."""
    if k_bound < 2**n:
        raise ValueError("k_bound must be at least 2^n")
    return RationalSet(x / k for k in range(1, k_bound + 1) if big_omega(k) == n for x in X)


# ---------------------------------------------------------------------------
# accumulation near candidate limits


@dataclass(frozen=True)
class Cluster:
    limit: Fraction
    k: int
    source: str  # witness of H in limit = P(H)/k
    members: tuple[SpectrumEntry, ...]

    @property
    def from_above(self) -> bool:
        return all(e.value > self.limit for e in self.members)

    @property
    def below(self) -> tuple[SpectrumEntry, ...]:
        return tuple(e for e in self.members if e.value < self.limit)


def limit_membership_scan(
    entries: Sequence[SpectrumEntry],
    epsilon: Fraction = Fraction(1, 64),
    max_k: int = 16,
    candidates: Optional[Sequence[SpectrumEntry]] = None,
) -> list[Cluster]:
    """Group values lying within epsilon (but not equal to) a candidate P(H)/k.

    Candidates default to the entries themselves plus the trivial group, so
    every 1/k is a candidate.  Each cluster records whether its members all
    lie strictly above the candidate.  Comparisons are exact.
    """
    if not entries:
        raise ValueError("entries must be nonempty")
    if candidates is None:
        candidates = [SpectrumEntry(Fraction(1), "C1", 1)] + list(entries)
    ordered = sorted(entries, key=lambda e: (e.value, e.order, e.witness))
    values = [e.value for e in ordered]
    limits: dict[Fraction, tuple[int, str]] = {}
    for k in range(1, max_k + 1):
        for h in sorted(candidates, key=lambda e: (e.order, e.witness)):
            limits.setdefault(h.value / k, (k, h.witness))
    clusters = []
    for limit in sorted(limits):
        lo = bisect.bisect_left(values, limit - epsilon)
        hi = bisect.bisect_right(values, limit + epsilon)
        members = tuple(e for e in ordered[lo:hi] if e.value != limit)
        if members:
            k, source = limits[limit]
            clusters.append(Cluster(limit, k, source, members))
    return clusters


def cluster_at(clusters: Sequence[Cluster], limit) -> Optional[Cluster]:
    for c in clusters:
        if c.limit == limit:
            return c
    return None
