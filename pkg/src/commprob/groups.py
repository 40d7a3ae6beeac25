"""Finite groups on element indices 0..order-1.

Every group here is a `Group`: a vectorized multiplication on numpy index
arrays, an inverse array, a generating set and a descriptor string.  The
identity is always index 0.  Small groups built from cosets carry an explicit
Cayley table; the named families (cyclic, dihedral, symmetric, extraspecial
and their direct products) compute products from coordinates, so they never
need the ``order**2`` table in memory.

Index layouts
-------------
``cyclic(n)``           k  <->  g^k
``dihedral(m)``         k  <->  r^k,  m + k  <->  s r^k   (0 <= k < m)
``symmetric(n)``        lexicographic rank of the permutation tuple
``extraspecial(p, n)``  mixed radix over (x_1..x_n, y_1..y_n, z), z least significant
``direct_product(G,H)`` a * |H| + b  <->  (a, b)
``quotient(G, N)``      cosets numbered by their smallest element
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Optional, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

ORDER_CAP = 8192
ABELIAN_LIMIT = 64

MulFn = Callable[[np.ndarray, np.ndarray], np.ndarray]


class GroupError(ValueError):
    pass


class OrderCapError(GroupError):
    def __init__(self, order: int, cap: int):
        super().__init__(f"group order {order} exceeds order cap {cap}")
        self.order = order
        self.cap = cap


class NotNormalError(GroupError):
    """Raised with a witness pair (g, n) such that g n g^-1 is not in N."""

    def __init__(self, g: int, n: int):
        super().__init__(f"subgroup is not normal: conjugating {n} by {g} leaves it")
        self.witness = (g, n)


class NotAbelianError(GroupError):
    def __init__(self, a: int, b: int):
        super().__init__(f"group is not abelian: elements {a} and {b} do not commute")
        self.witness = (a, b)


def _check_cap(order: int, cap: Optional[int]) -> None:
    if cap is not None and order > cap:
        raise OrderCapError(order, cap)


class Group:
    """A finite group whose elements are the integers ``0..order-1``."""

    def __init__(
        self,
        order: int,
        mul: MulFn,
        inverse: np.ndarray,
        gens: Optional[Sequence[int]] = None,
        descriptor: str = "",
        labeler: Optional[Callable[[int], str]] = None,
        table: Optional[np.ndarray] = None,
        factors: tuple["Group", ...] = (),
    ):
        self.order = int(order)
        self._mul = mul
        self.inverse = np.asarray(inverse, dtype=np.int64)
        self.inverse.setflags(write=False)
        self.descriptor = descriptor
        self._labeler = labeler
        self._table = table
        self.factors = factors
        if gens is not None:
            self.gens = tuple(int(g) for g in gens if g != 0)
        else:
            self.gens = _greedy_generators(self)

    @classmethod
    def from_table(cls, table, descriptor: str = "", gens=None, labeler=None) -> "Group":
        """Wrap a Cayley table whose row and column 0 are the identity."""
        table = np.asarray(table, dtype=np.int64)
        n = table.shape[0]
        if table.shape != (n, n):
            raise GroupError("Cayley table must be square")
        table.setflags(write=False)
        inverse = np.argmin(table, axis=1)
        if not np.all(table[np.arange(n), inverse] == 0):
            raise GroupError("Cayley table has an element without inverse")
        return cls(
            n,
            lambda a, b: table[a, b],
            inverse,
            gens=gens,
            descriptor=descriptor,
            labeler=labeler,
            table=table,
        )

    def __repr__(self) -> str:
        return f"Group({self.descriptor or '?'}, order={self.order})"

    def __len__(self) -> int:
        return self.order

    @property
    def identity(self) -> int:
        return 0

    @property
    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def mul(self, a, b):
        """Product ``a*b``; accepts ints or broadcastable index arrays."""
        if isinstance(a, (int, np.integer)) and isinstance(b, (int, np.integer)):
            return int(self._mul(np.asarray([a]), np.asarray([b]))[0])
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        return self._mul(a, b)

    def inv(self, a):
        if isinstance(a, (int, np.integer)):
            return int(self.inverse[a])
        return self.inverse[np.asarray(a, dtype=np.int64)]

    def power(self, a: int, k: int) -> int:
        k %= self.element_order(a)
        result, base = 0, a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def conjugate(self, g, x):
        """``g x g^-1``."""
        return self.mul(self.mul(g, x), self.inv(g))

    def label(self, i: int) -> str:
        if self._labeler is None:
            return str(i)
        return self._labeler(int(i))

    def find(self, label: str) -> int:
        """Element whose label is ``label``; plain integers are taken as indices."""
        for i in range(self.order):
            if self.label(i) == label:
                return i
        if label.isdigit() and int(label) < self.order:
            return int(label)
        raise GroupError(f"no element labelled {label!r} in {self.descriptor}")

    @property
    def table(self) -> np.ndarray:
        """Full Cayley table, built on demand within the order cap."""
        if self._table is None:
            _check_cap(self.order, ORDER_CAP)
            a = np.repeat(self.elements, self.order)
            b = np.tile(self.elements, self.order)
            table = self._mul(a, b).reshape(self.order, self.order)
            table.setflags(write=False)
            self._table = table
        return self._table

    @cached_property
    def is_abelian(self) -> bool:
        return self.noncommuting_pair() is None

    def noncommuting_pair(self) -> Optional[tuple[int, int]]:
        for g, h in itertools.combinations(self.gens, 2):
            if self.mul(g, h) != self.mul(h, g):
                return g, h
        return None

    def conjugation_perm(self, g: int) -> np.ndarray:
        """The permutation ``x -> g x g^-1`` of all elements."""
        return self.conjugate(np.full(self.order, g, dtype=np.int64), self.elements)

    @cached_property
    def element_orders(self) -> np.ndarray:
        orders = np.zeros(self.order, dtype=np.int64)
        orders[0] = 1
        cur = self.elements.copy()
        k = 1
        pending = orders == 0
        while pending.any():
            cur = self.mul(cur, self.elements)
            k += 1
            hit = pending & (cur == 0)
            orders[hit] = k
            pending &= ~hit
        orders.setflags(write=False)
        return orders

    def element_order(self, a: int) -> int:
        return int(self.element_orders[a])

    @cached_property
    def _class_labels(self) -> tuple[int, np.ndarray]:
        n = self.order
        if not self.gens:
            return n, np.arange(n)
        src = np.concatenate([self.elements] * len(self.gens))
        dst = np.concatenate([self.conjugation_perm(g) for g in self.gens])
        graph = coo_matrix((np.ones(src.size, dtype=np.int8), (src, dst)), shape=(n, n))
        count, labels = connected_components(graph, directed=True, connection="weak")
        return int(count), labels

    @property
    def class_count(self) -> int:
        return self._class_labels[0]


def _greedy_generators(G: Group) -> tuple[int, ...]:
    gens: list[int] = []
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    for x in range(G.order):
        if not mask[x]:
            gens.append(x)
            mask = _closure_mask(G, gens)
            if mask.all():
                break
    return tuple(gens)


def _closure_mask(G: Group, seeds: Iterable[int], mask: Optional[np.ndarray] = None) -> np.ndarray:
    seeds = [int(s) for s in seeds]
    if mask is None:
        mask = np.zeros(G.order, dtype=bool)
        mask[0] = True
        frontier = np.array([0], dtype=np.int64)
    else:
        mask = mask.copy()
        frontier = np.flatnonzero(mask)
    while frontier.size and seeds:
        new = np.concatenate([G.mul(frontier, s) for s in seeds])
        new = np.unique(new[~mask[new]])
        mask[new] = True
        frontier = new
    return mask


class Subgroup:
    """A subset of ``parent`` closed under the group operations."""

    def __init__(self, parent: Group, mask: np.ndarray, gens: Optional[Sequence[int]] = None):
        self.parent = parent
        self.mask = np.asarray(mask, dtype=bool)
        self.mask.setflags(write=False)
        self.elements = np.flatnonzero(self.mask)
        self.elements.setflags(write=False)
        self._gens = None if gens is None else tuple(int(g) for g in gens if g != 0)

    @classmethod
    def from_elements(cls, parent: Group, elements: Iterable[int]) -> "Subgroup":
        mask = np.zeros(parent.order, dtype=bool)
        mask[np.fromiter((int(e) for e in elements), dtype=np.int64)] = True
        return cls(parent, mask)

    @property
    def order(self) -> int:
        return int(self.elements.size)

    def __len__(self) -> int:
        return self.order

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    def __contains__(self, x) -> bool:
        return bool(self.mask[int(x)])

    @cached_property
    def key(self) -> tuple[int, ...]:
        return tuple(int(e) for e in self.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and np.array_equal(self.mask, other.mask)

    def __hash__(self) -> int:
        return hash((id(self.parent), self.key))

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, of {self.parent!r})"

    def __le__(self, other: "Subgroup") -> bool:
        return bool(np.all(other.mask[self.elements]))

    def __and__(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.parent, self.mask & other.mask)

    @property
    def is_whole(self) -> bool:
        return self.order == self.parent.order

    @property
    def gens(self) -> tuple[int, ...]:
        if self._gens is None:
            self._gens = tuple(int(self.elements[g]) for g in self.as_group().gens)
        return self._gens

    def normality_witness(self) -> Optional[tuple[int, int]]:
        G = self.parent
        for g in G.gens:
            images = G.conjugate(np.full(self.order, g), self.elements)
            bad = ~self.mask[images]
            if bad.any():
                return g, int(self.elements[np.argmax(bad)])
        return None

    @property
    def is_normal(self) -> bool:
        return self.normality_witness() is None

    def require_normal(self) -> None:
        witness = self.normality_witness()
        if witness is not None:
            raise NotNormalError(*witness)

    def as_group(self) -> Group:
        """The subgroup as a group in its own right (element j <-> elements[j])."""
        cached = getattr(self, "_as_group", None)
        if cached is not None:
            return cached
        if self.is_whole:
            self._as_group = self.parent
            return self.parent
        parent = self.parent
        elements = self.elements
        position = np.full(parent.order, -1, dtype=np.int64)
        position[elements] = np.arange(self.order)

        def mul(a, b):
            return position[parent.mul(elements[a], elements[b])]

        gens = None if self._gens is None else [int(position[g]) for g in self._gens]
        group = Group(
            self.order,
            mul,
            position[parent.inverse[elements]],
            gens=gens,
            descriptor=f"<{self.order}≤{parent.descriptor}>",
            labeler=lambda j: parent.label(int(elements[j])),
        )
        group.embedding = elements
        self._as_group = group
        return group


def whole(G: Group) -> Subgroup:
    return Subgroup(G, np.ones(G.order, dtype=bool), gens=G.gens)


def trivial_subgroup(G: Group) -> Subgroup:
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    return Subgroup(G, mask, gens=())


# ---------------------------------------------------------------------------
# constructors


def cyclic(n: int, order_cap: Optional[int] = ORDER_CAP) -> Group:
    if n < 1:
        raise GroupError("cyclic group needs n >= 1")
    _check_cap(n, order_cap)
    return Group(
        n,
        lambda a, b: (a + b) % n,
        (-np.arange(n)) % n,
        gens=[1] if n > 1 else [],
        descriptor=f"C{n}",
        labeler=lambda k: "e" if k == 0 else ("g" if k == 1 else f"g^{k}"),
    )


def dihedral(m: int, order_cap: Optional[int] = ORDER_CAP) -> Group:
    """Dihedral group of order 2m: r^k at index k, s r^k at index m + k."""
    if m < 1:
        raise GroupError("dihedral group needs m >= 1")
    _check_cap(2 * m, order_cap)

    def mul(a, b):
        fa, ka = np.divmod(a, m)
        fb, kb = np.divmod(b, m)
        # s r^a s = r^-a
        k = np.where(fb == 0, ka + kb, kb - ka) % m
        return (fa ^ fb) * m + k

    k = np.arange(m)
    inverse = np.concatenate([(-k) % m, m + k])

    def labeler(i):
        f, k = divmod(i, m)
        rot = "" if k == 0 else ("r" if k == 1 else f"r^{k}")
        if f:
            return "s" + rot
        return rot or "e"

    gens = [1, m] if m > 1 else [m]
    return Group(2 * m, mul, inverse, gens=gens, descriptor=f"D{m}", labeler=labeler)


def symmetric(n: int, order_cap: Optional[int] = ORDER_CAP) -> Group:
    """Symmetric group on n letters; ``mul(a, b)`` applies b first, then a."""
    if n < 1:
        raise GroupError("symmetric group needs n >= 1")
    if n > 7:
        raise GroupError("symmetric(n) is limited to n <= 7")
    order = math.factorial(n)
    _check_cap(order, order_cap)
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(order, n)
    weights = n ** np.arange(n, dtype=np.int64)
    rank = np.full(n**n, -1, dtype=np.int64)
    rank[perms @ weights] = np.arange(order)

    def mul(a, b):
        composed = np.take_along_axis(perms[a], perms[b], axis=-1)
        return rank[composed @ weights]

    inverse = rank[np.argsort(perms, axis=1) @ weights]
    gens = []
    if n > 1:
        swap = list(range(n))
        swap[0], swap[1] = 1, 0
        cycle = list(range(1, n)) + [0]
        gens = [int(rank[np.array(swap) @ weights]), int(rank[np.array(cycle) @ weights])]
    return Group(
        order,
        mul,
        inverse,
        gens=gens,
        descriptor=f"S{n}",
        labeler=lambda i: "[" + "".join(str(v) for v in perms[i]) + "]",
    )


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, math.isqrt(p) + 1))


def extraspecial(p: int, n: int, order_cap: Optional[int] = ORDER_CAP) -> Group:
    """Heisenberg group of order p^(2n+1).

    Elements are (x, y, z) in (Z/p)^n x (Z/p)^n x Z/p with
    (x, y, z)(x', y', z') = (x + x', y + y', z + z' + x.y').
    """
    if not is_prime(p):
        raise GroupError(f"extraspecial group needs a prime, got {p}")
    if n < 1:
        raise GroupError("extraspecial group needs n >= 1")
    order = p ** (2 * n + 1)
    _check_cap(order, order_cap)
    width = 2 * n + 1
    weights = p ** np.arange(width - 1, -1, -1, dtype=np.int64)

    def decode(a):
        return (a[..., None] // weights) % p

    def mul(a, b):
        ca, cb = decode(a), decode(b)
        c = (ca + cb) % p
        dot = np.sum(ca[..., :n] * cb[..., n : 2 * n], axis=-1)
        c[..., -1] = (c[..., -1] + dot) % p
        return c @ weights

    coords = decode(np.arange(order))
    inv = (-coords) % p
    # (x,y,z)^-1 = (-x, -y, -z + x.y)
    inv[:, -1] = (-coords[:, -1] + np.sum(coords[:, :n] * coords[:, n : 2 * n], axis=1)) % p
    gens = [int(weights[j]) for j in range(2 * n)]

    def labeler(i):
        c = decode(np.asarray(i, dtype=np.int64))
        xs = "".join(str(v) for v in c[:n])
        ys = "".join(str(v) for v in c[n : 2 * n])
        return f"({xs},{ys},{c[-1]})"

    return Group(order, mul, inv @ weights, gens=gens, descriptor=f"E({p},{n})", labeler=labeler)


def direct_product(G: Group, H: Group, order_cap: Optional[int] = ORDER_CAP) -> Group:
    """Componentwise product; element a*|H| + b is the pair (a, b)."""
    order = G.order * H.order
    _check_cap(order, order_cap)
    m = H.order

    def mul(a, b):
        a1, a2 = np.divmod(a, m)
        b1, b2 = np.divmod(b, m)
        return G.mul(a1, b1) * m + H.mul(a2, b2)

    a1, a2 = np.divmod(np.arange(order), m)
    inverse = G.inverse[a1] * m + H.inverse[a2]
    gens = [g * m for g in G.gens] + list(H.gens)
    return Group(
        order,
        mul,
        inverse,
        gens=gens,
        descriptor=f"{G.descriptor}x{H.descriptor}",
        labeler=lambda i: f"({G.label(i // m)},{H.label(i % m)})",
        factors=(G, H),
    )


def coset_labels(G: Group, N: Subgroup) -> tuple[np.ndarray, np.ndarray]:
    """Label each element by its coset xN; cosets are numbered by smallest element.

    Returns ``(labels, representatives)`` with ``representatives[c]`` the
    smallest element of coset ``c``.
    """
    smallest = G.elements.copy()
    for n in N.elements[1:]:
        np.minimum(smallest, G.mul(G.elements, n), out=smallest)
    reps, labels = np.unique(smallest, return_inverse=True)
    return labels.astype(np.int64), reps.astype(np.int64)


def quotient(G: Group, N: Subgroup, suffix: Optional[str] = None) -> Group:
    """The group of cosets of a normal subgroup, with an explicit table."""
    N.require_normal()
    labels, reps = coset_labels(G, N)
    q = reps.size
    _check_cap(q, ORDER_CAP)
    table = labels[G.mul(np.repeat(reps, q), np.tile(reps, q))].reshape(q, q)
    if suffix is None:
        suffix = "" if N.order == 1 else f"<{N.order}>"
    group = Group.from_table(
        table,
        descriptor=f"{G.descriptor}/{suffix}" if suffix else G.descriptor,
        gens=sorted({int(labels[g]) for g in G.gens}),
        labeler=lambda c: G.label(int(reps[c])) + ("" if N.order == 1 else "N"),
    )
    group.projection = labels
    group.representatives = reps
    return group


# ---------------------------------------------------------------------------
# subgroup algebra


def commutator(G: Group, a, b):
    """``[a, b] = a b a^-1 b^-1``."""
    return G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b)))


def subgroup_generated(G: Group, seeds: Iterable[int]) -> Subgroup:
    seeds = sorted({int(s) for s in seeds} - {0})
    return Subgroup(G, _closure_mask(G, seeds), gens=seeds)


def normal_closure(G: Group, seeds: Iterable[int]) -> Subgroup:
    S = subgroup_generated(G, seeds)
    while True:
        extra = set()
        for g in G.gens:
            images = G.conjugate(np.full(S.order, g), S.elements)
            extra.update(int(x) for x in images[~S.mask[images]][:1])
        if not extra:
            return S
        S = subgroup_generated(G, set(S.gens) | extra)


def conjugacy_classes(G: Group) -> list[tuple[int, ...]]:
    """Conjugacy classes as sorted tuples, ordered by smallest element."""
    _, labels = G._class_labels
    order = np.argsort(labels, kind="stable")
    bounds = np.flatnonzero(np.diff(labels[order])) + 1
    classes = [tuple(int(x) for x in chunk) for chunk in np.split(order, bounds)]
    classes.sort(key=lambda c: c[0])
    return classes


def center(G: Group) -> Subgroup:
    mask = np.ones(G.order, dtype=bool)
    for g in G.gens:
        mask &= G.mul(G.elements, g) == G.mul(g, G.elements)
    return Subgroup(G, mask)


def commutator_subgroup(G: Group) -> Subgroup:
    seeds = {commutator(G, a, b) for a, b in itertools.combinations(G.gens, 2)}
    return normal_closure(G, seeds)


def centralizer(G: Group, x: int) -> Subgroup:
    return Subgroup(G, G.mul(G.elements, x) == G.mul(x, G.elements))


def normal_core(G: Group, H: Subgroup) -> Subgroup:
    """Largest normal subgroup of G inside H.

    Iterates ``C <- C ∩ g^-1 C g`` over the generators until stable; the fixed
    point is the intersection of all conjugates of H.
    """
    mask = H.mask.copy()
    changed = True
    while changed:
        changed = False
        for g in G.gens:
            kept = mask & mask[G.conjugation_perm(g)]
            if not np.array_equal(kept, mask):
                mask, changed = kept, True
    return Subgroup(G, mask)


def is_class_two(G: Group) -> bool:
    """Whether G' <= Z(G)."""
    return commutator_subgroup(G) <= center(G)


# ---------------------------------------------------------------------------
# abelian groups


@dataclass(frozen=True, eq=False)
class AbelianStructure:
    """An explicit isomorphism ``A -> Z/d_1 x ... x Z/d_r`` with d_1 | ... | d_r."""

    group: Group
    invariant_factors: tuple[int, ...]
    coordinates: np.ndarray  # (order, r)

    @cached_property
    def _weights(self) -> np.ndarray:
        w = np.ones(len(self.invariant_factors), dtype=np.int64)
        for j in range(len(w) - 2, -1, -1):
            w[j] = w[j + 1] * self.invariant_factors[j + 1]
        return w

    @cached_property
    def _lookup(self) -> np.ndarray:
        lookup = np.empty(self.group.order, dtype=np.int64)
        lookup[self.coordinates @ self._weights] = np.arange(self.group.order)
        return lookup

    def coords(self, x: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self.coordinates[x])

    def element(self, coords: Sequence[int]) -> int:
        c = np.mod(np.asarray(coords, dtype=np.int64), self.invariant_factors)
        return int(self._lookup[c @ self._weights])


def abelian_structure(A: Group, limit: int = ABELIAN_LIMIT) -> AbelianStructure:
    """Invariant factors of an abelian group and a coordinate isomorphism.

    A cyclic factor generated by an element of maximal order is split off and
    the quotient is decomposed recursively; each basis element of the quotient
    is lifted by scanning its coset for an element of the same order.
    """
    witness = A.noncommuting_pair()
    if witness is not None:
        raise NotAbelianError(*witness)
    if A.order > limit:
        raise GroupError(f"abelian_structure is limited to order <= {limit}")
    if A.order == 1:
        return AbelianStructure(A, (), np.zeros((1, 0), dtype=np.int64))
    orders = A.element_orders
    a = int(np.argmax(orders))
    n = int(orders[a])
    cyclic_part = subgroup_generated(A, [a])
    if cyclic_part.is_whole:
        basis, factors = [a], [n]
    else:
        Q = quotient(A, cyclic_part)
        sub = abelian_structure(Q, limit)
        basis, factors = [], []
        for j, d in enumerate(sub.invariant_factors):
            unit = [0] * len(sub.invariant_factors)
            unit[j] = 1
            target = sub.element(unit)
            candidates = np.flatnonzero((Q.projection == target) & (orders == d))
            basis.append(int(candidates[0]))
            factors.append(d)
        basis.append(a)
        factors.append(n)
    coordinates = np.full((A.order, len(factors)), -1, dtype=np.int64)
    for coords in itertools.product(*(range(d) for d in factors)):
        x = 0
        for b, e in zip(basis, coords):
            x = A.mul(x, A.power(b, e))
        coordinates[x] = coords
    if (coordinates < 0).any():
        raise GroupError("coordinate map is not a bijection")
    return AbelianStructure(A, tuple(factors), coordinates)


def subgroups_of_abelian(A: Group, limit: int = ABELIAN_LIMIT) -> list[Subgroup]:
    """Every subgroup of an abelian group, ordered by size then element set."""
    witness = A.noncommuting_pair()
    if witness is not None:
        raise NotAbelianError(*witness)
    if A.order > limit:
        raise GroupError(f"subgroups_of_abelian is limited to order <= {limit}")
    table = A.table
    cyclic_masks = {}
    for x in range(A.order):
        m = _closure_mask(A, [x])
        cyclic_masks.setdefault(m.tobytes(), m)
    cyclics = list(cyclic_masks.values())

    def join(mask, cyc):
        # in an abelian group S v <c> = union of the translates c^k S
        members = np.flatnonzero(mask)
        out = np.zeros(A.order, dtype=bool)
        for c in np.flatnonzero(cyc):
            out[table[c, members]] = True
        return out

    start = np.zeros(A.order, dtype=bool)
    start[0] = True
    found = {start.tobytes(): start}
    frontier = [start]
    while frontier:
        nxt = []
        for mask in frontier:
            for cyc in cyclics:
                if np.all(mask[cyc]):
                    continue
                joined = join(mask, cyc)
                key = joined.tobytes()
                if key not in found:
                    found[key] = joined
                    nxt.append(joined)
        frontier = nxt
    subs = [Subgroup(A, m) for m in found.values()]
    subs.sort(key=lambda s: (s.order, s.key))
    return subs


# ---------------------------------------------------------------------------
# validation


def check_axioms(G: Group, samples: int = 100_000, exhaustive_limit: int = 256, seed: int = 0) -> None:
    """Raise GroupError if identity, inverse, Latin-square or associativity laws fail."""
    e = G.elements
    if not (np.array_equal(G.mul(0, e), e) and np.array_equal(G.mul(e, 0), e)):
        raise GroupError("index 0 is not an identity")
    if not np.all(G.mul(e, G.inverse) == 0):
        raise GroupError("inverse array is wrong")
    if G.order <= exhaustive_limit:
        T = G.table
        if not all(np.array_equal(np.sort(T[i]), e) and np.array_equal(np.sort(T[:, i]), e) for i in e):
            raise GroupError("Cayley table is not a Latin square")
        for a in e:
            if not np.array_equal(T[T[a]], T[a][T]):
                raise GroupError(f"associativity fails with first factor {a}")
        return
    rng = np.random.default_rng(seed)
    a, b, c = rng.integers(0, G.order, size=(3, samples))
    if not np.array_equal(G.mul(G.mul(a, b), c), G.mul(a, G.mul(b, c))):
        raise GroupError("associativity fails on a sampled triple")
    x = rng.integers(0, G.order, size=min(G.order, 64))
    for row in x:
        if np.unique(G.mul(row, e)).size != G.order or np.unique(G.mul(e, row)).size != G.order:
            raise GroupError("a row or column of the table is not a permutation")


def isomorphism(G: Group, H: Group, limit: int = 12) -> Optional[np.ndarray]:
    """Brute-force isomorphism search for small groups; returns the map or None."""
    if G.order != H.order:
        return None
    if G.order > limit:
        raise GroupError(f"isomorphism search is limited to order <= {limit}")
    if not np.array_equal(np.sort(G.element_orders), np.sort(H.element_orders)):
        return None
    gens = G.gens
    choices = [np.flatnonzero(H.element_orders == G.element_orders[g]) for g in gens]
    for images in itertools.product(*choices):
        phi = _extend(G, H, gens, images)
        if phi is not None:
            return phi
    return None


def _extend(G: Group, H: Group, gens, images) -> Optional[np.ndarray]:
    phi = np.full(G.order, -1, dtype=np.int64)
    phi[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g, h in zip(gens, images):
                y, v = G.mul(x, g), H.mul(int(phi[x]), int(h))
                if phi[y] < 0:
                    phi[y] = v
                    nxt.append(y)
                elif phi[y] != v:
                    return None
        frontier = nxt
    if np.unique(phi).size != G.order:
        return None
    e = G.elements
    for a in e:
        if not np.array_equal(phi[G.mul(a, e)], H.mul(phi[a], phi[e])):
            return None
    return phi
