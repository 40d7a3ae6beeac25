"""Exact commuting probabilities and the coset-pair decomposition.

All probabilities are ``fractions.Fraction``.  For a normal subgroup K of G
with quotient order q, the commuting probability splits as the mean of the
q*q coset-pair terms

    term(C, D) = #{(g, h) in C x D : gh = hg} / |K|^2,

and each term can be recomputed from fixed representatives (g, h) as the
fraction of (k, l) in K^2 with  phi_h(k) [k, l] phi_g(l)^-1 = h^-1 g^-1 h g,
where phi_g(l) = g^-1 l g l^-1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .groups import (
    Group,
    GroupError,
    Subgroup,
    centralizer,
    commutator,
    commutator_subgroup,
    conjugacy_classes,
    coset_labels,
    quotient,
)

PAIR_LIMIT = 2048
_CHUNK = 1 << 22


def fmt_rational(q: Fraction) -> str:
    """``num/den`` with the denominator always present."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def commuting_probability(G: Group) -> Fraction:
    """c(G)/|G| from the conjugacy class count."""
    return Fraction(G.class_count, G.order)


def _row_chunks(G: Group) -> Iterator[np.ndarray]:
    step = max(1, _CHUNK // G.order)
    for start in range(0, G.order, step):
        yield np.arange(start, min(start + step, G.order), dtype=np.int64)


def _commuting_rows(G: Group, rows: np.ndarray) -> np.ndarray:
    g = rows[:, None]
    h = G.elements[None, :]
    return G.mul(g, h) == G.mul(h, g)


def commuting_pair_count(G: Group, limit: int = PAIR_LIMIT) -> int:
    if G.order > limit:
        raise GroupError(f"pair enumeration is limited to order <= {limit}")
    return sum(int(_commuting_rows(G, rows).sum()) for rows in _row_chunks(G))


def commuting_pairs_bruteforce(G: Group, limit: int = PAIR_LIMIT) -> Fraction:
    """Fraction of ordered pairs (g, h) with gh = hg, by direct enumeration."""
    return Fraction(commuting_pair_count(G, limit), G.order**2)


def centralizer_sum(G: Group) -> int:
    """Sum of |C(g)| over all g, from one centralizer per conjugacy class.

    Equals c(G)*|G| by orbit-stabilizer; used as an independent cross-check.
    """
    return sum(len(cls) * centralizer(G, cls[0]).order for cls in conjugacy_classes(G))


@dataclass(frozen=True)
class CosetPairTable:
    quotient_order: int
    terms: tuple[tuple[Fraction, ...], ...]
    representatives: tuple[tuple[int, int], ...]  # row-major (g, h) per coset pair
    commutes_in_Kprime: tuple[tuple[bool, ...], ...]

    @property
    def mean(self) -> Fraction:
        q = self.quotient_order
        return sum((t for row in self.terms for t in row), Fraction(0)) / (q * q)

    def to_json(self) -> str:
        return json.dumps(
            {
                "quotient_order": self.quotient_order,
                "terms": [fmt_rational(t) for row in self.terms for t in row],
                "representatives": [list(r) for r in self.representatives],
                "commutes_in_Kprime": [b for row in self.commutes_in_Kprime for b in row],
            }
        )


def coset_pair_counts(G: Group, K: Subgroup, limit: int = PAIR_LIMIT) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Commuting-pair counts per coset pair, plus coset labels and representatives."""
    K.require_normal()
    if G.order > limit:
        raise GroupError(f"pair enumeration is limited to order <= {limit}")
    labels, reps = coset_labels(G, K)
    q = reps.size
    counts = np.zeros(q * q, dtype=np.int64)
    for rows in _row_chunks(G):
        mask = _commuting_rows(G, rows)
        pair_index = labels[rows][:, None] * q + labels[None, :]
        counts += np.bincount(pair_index[mask], minlength=q * q)
    return counts.reshape(q, q), labels, reps


def coset_pair_table(G: Group, K: Subgroup, limit: int = PAIR_LIMIT) -> CosetPairTable:
    counts, _, reps = coset_pair_counts(G, K, limit)
    q = reps.size
    k2 = K.order**2
    Kp = commutator_subgroup(K.as_group())
    kp_mask = np.zeros(G.order, dtype=bool)
    kp_mask[_embed(K, Kp.elements)] = True
    terms, inside, representatives = [], [], []
    for c in range(q):
        g = int(reps[c])
        terms.append(tuple(Fraction(int(counts[c, d]), k2) for d in range(q)))
        row = []
        for d in range(q):
            h = int(reps[d])
            representatives.append((g, h))
            row.append(bool(kp_mask[_twisted_commutator(G, g, h)]))
        inside.append(tuple(row))
    return CosetPairTable(q, tuple(terms), tuple(representatives), tuple(inside))


def _embed(K: Subgroup, sub_indices) -> np.ndarray:
    group = K.as_group()
    if group is K.parent:
        return np.asarray(sub_indices)
    return group.embedding[np.asarray(sub_indices)]


def _twisted_commutator(G: Group, g, h):
    """``h^-1 g^-1 h g``."""
    return commutator(G, G.inv(h), G.inv(g))


def twist(G: Group, g, x):
    """``g^-1 x g x^-1``."""
    return G.mul(G.mul(G.inv(g), G.mul(x, g)), G.inv(x))


def twisted_term(G: Group, K: Subgroup, g: int, h: int) -> Fraction:
    """Coset-pair term of gK x hK via the twisted-commutator form.

    Counts (k, l) in K^2 with phi_h(k) [k, l] phi_g(l)^-1 = h^-1 g^-1 h g.
    """
    k = K.elements[:, None]
    l = K.elements[None, :]
    lhs = G.mul(G.mul(twist(G, h, k), commutator(G, k, l)), G.inv(twist(G, g, l)))
    target = _twisted_commutator(G, g, h)
    return Fraction(int(np.count_nonzero(lhs == target)), K.order**2)


def quotient_bound_report(G: Group, N: Subgroup) -> tuple[Fraction, Fraction]:
    """``(P(G), P(G/N)/|N|)``; the first is never smaller."""
    return commuting_probability(G), quotient_probability(G, N) / N.order


def quotient_probability(G: Group, N: Subgroup) -> Fraction:
    return commuting_probability(quotient(G, N))
