import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracle
from commprob.descriptors import DescriptorError, build, parse
from commprob.groups import (
    GroupError,
    NotAbelianError,
    NotNormalError,
    OrderCapError,
    abelian_structure,
    center,
    centralizer,
    check_axioms,
    commutator,
    commutator_subgroup,
    conjugacy_classes,
    cyclic,
    dihedral,
    direct_product,
    extraspecial,
    is_class_two,
    isomorphism,
    normal_closure,
    normal_core,
    quotient,
    subgroup_generated,
    subgroups_of_abelian,
    symmetric,
)

SMALL = ["C1", "C2", "C6", "D3", "D4", "D5", "S3", "S4", "E(2,1)", "E(3,1)", "E(2,2)", "D3xC2", "D4xD3", "E(2,1)/Z", "S4/G'"]

atoms = st.one_of(
    st.integers(1, 12).map(lambda n: f"C{n}"),
    st.integers(2, 8).map(lambda m: f"D{m}"),
    st.sampled_from(["S3", "S4", "E(2,1)", "E(3,1)"]),
)
descriptors = st.builds(lambda a, b: a if b is None else f"{a}x{b}", atoms, st.one_of(st.none(), atoms)).filter(
    lambda d: build(d, order_cap=None).order <= 200
)


@pytest.mark.parametrize("d", SMALL)
def test_axioms(d):
    check_axioms(build(d))


def test_orders():
    assert [build(d).order for d in ("C7", "D5", "S4", "E(2,2)", "E(3,1)", "D3xC4")] == [7, 10, 24, 32, 27, 24]


def test_identity_is_zero():
    for d in SMALL:
        G = build(d)
        assert np.array_equal(G.mul(0, G.elements), G.elements)


def test_dihedral_relations():
    G = dihedral(4)
    r, s = G.find("r"), G.find("s")
    assert G.element_order(r) == 4 and G.element_order(s) == 2
    assert G.mul(G.mul(s, r), s) == G.inv(r)
    assert commutator(G, r, s) == G.power(r, 2)


def test_extraspecial_commutator_is_central():
    E = extraspecial(2, 1)
    x, y = E.find("(1,0,0)"), E.find("(0,1,0)")
    assert E.label(commutator(E, x, y)) == "(0,0,1)"
    assert E.order == 8 and center(E).order == 2


@pytest.mark.parametrize("p,n", [(2, 1), (2, 2), (3, 1), (5, 1)])
def test_extraspecial_center_equals_derived(p, n):
    E = extraspecial(p, n)
    assert E.order == p ** (2 * n + 1)
    assert center(E) == commutator_subgroup(E)
    assert center(E).order == p


def test_symmetric_classes():
    S3 = symmetric(3)
    assert conjugacy_classes(S3) == [(0,), (1, 2, 5), (3, 4)]
    assert symmetric(4).class_count == 5
    assert symmetric(5).class_count == 7


@pytest.mark.parametrize("d", SMALL)
def test_classes_partition_and_class_equation(d):
    G = build(d)
    classes = conjugacy_classes(G)
    flat = sorted(x for c in classes for x in c)
    assert flat == list(range(G.order))
    for c in classes:
        # orbit-stabilizer
        assert len(c) * centralizer(G, c[0]).order == G.order
    assert sum(1 for c in classes if len(c) == 1) == center(G).order


@pytest.mark.parametrize("m", [3, 4, 5, 6, 9])
def test_class_count_against_permutation_model(m):
    perms = oracle.dihedral_perms(m)
    assert dihedral(m).class_count == oracle.class_count(perms, oracle.compose, oracle.perm_inverse)


@given(descriptors)
@settings(max_examples=40, deadline=None)
def test_random_groups_lagrange_and_axioms(d):
    G = build(d)
    check_axioms(G, samples=2000)
    for H in (center(G), commutator_subgroup(G), subgroup_generated(G, [G.order - 1])):
        assert G.order % H.order == 0
    assert center(G).is_normal and commutator_subgroup(G).is_normal
    assert quotient(G, commutator_subgroup(G)).is_abelian


def test_subgroup_generated():
    G = dihedral(6)
    assert subgroup_generated(G, [G.find("r")]).order == 6
    assert subgroup_generated(G, [G.find("r^3"), G.find("s")]).order == 4
    assert subgroup_generated(G, []).order == 1


def test_normality_witness():
    G = dihedral(4)
    S = subgroup_generated(G, [G.find("s")])
    assert not S.is_normal
    with pytest.raises(NotNormalError) as err:
        S.require_normal()
    g, n = err.value.witness
    assert n in S and G.conjugate(g, n) not in S


def test_normal_core_and_closure():
    G = dihedral(4)
    s = G.find("s")
    assert normal_core(G, subgroup_generated(G, [s])).order == 1
    assert normal_closure(G, [s]).order == 4
    S4 = symmetric(4)
    assert commutator_subgroup(S4).order == 12
    assert normal_core(S4, commutator_subgroup(S4)) == commutator_subgroup(S4)


def test_core_is_largest_normal_inside():
    G = symmetric(4)
    rng = np.random.default_rng(1)
    for _ in range(10):
        H = subgroup_generated(G, rng.integers(0, 24, size=2))
        core = normal_core(G, H)
        assert core.is_normal and core <= H
        # brute-force intersection of conjugates
        mask = np.ones(G.order, dtype=bool)
        for g in G.elements:
            mask &= np.isin(G.elements, G.conjugate(g, H.elements))
        assert np.array_equal(mask, core.mask)


def test_quotients():
    D4 = dihedral(4)
    Q = quotient(D4, center(D4))
    assert Q.order == 4 and Q.is_abelian
    assert isomorphism(Q, direct_product(cyclic(2), cyclic(2))) is not None
    assert np.array_equal(Q.projection[D4.elements[center(D4).elements]], [0, 0])
    assert build("E(2,1)/Z").order == 4
    with pytest.raises(NotNormalError):
        quotient(D4, subgroup_generated(D4, [D4.find("s")]))


def test_projection_is_homomorphism():
    G = build("D3xC4")
    N = commutator_subgroup(G)
    Q = quotient(G, N)
    pi = Q.projection
    a, b = np.meshgrid(G.elements, G.elements)
    assert np.array_equal(pi[G.mul(a, b)], Q.mul(pi[a], pi[b]))


def test_class_two():
    assert is_class_two(extraspecial(3, 1)) and is_class_two(dihedral(4)) and is_class_two(cyclic(5))
    assert not is_class_two(symmetric(3))
    assert not is_class_two(dihedral(3))


def test_isomorphisms():
    assert isomorphism(symmetric(3), dihedral(3)) is not None
    assert isomorphism(extraspecial(2, 1), dihedral(4)) is not None
    assert isomorphism(cyclic(4), direct_product(cyclic(2), cyclic(2))) is None
    assert isomorphism(cyclic(6), direct_product(cyclic(2), cyclic(3))) is not None


def test_abelian_structure():
    A = direct_product(cyclic(2), cyclic(6))
    s = abelian_structure(A)
    assert s.invariant_factors == (2, 6)
    for x in A.elements:
        assert s.element(s.coords(x)) == x
    assert abelian_structure(cyclic(12)).invariant_factors == (12,)
    assert abelian_structure(cyclic(1)).invariant_factors == ()
    with pytest.raises(NotAbelianError):
        abelian_structure(dihedral(3))


@given(st.lists(st.integers(2, 6), min_size=1, max_size=3).filter(lambda ns: math.prod(ns) <= 64))
@settings(max_examples=25, deadline=None)
def test_abelian_structure_roundtrip(ns):
    A = cyclic(ns[0])
    for n in ns[1:]:
        A = direct_product(A, cyclic(n))
    s = abelian_structure(A)
    assert math.prod(s.invariant_factors) == A.order
    assert all(b % a == 0 for a, b in zip(s.invariant_factors, s.invariant_factors[1:]))
    for x in A.elements:
        assert s.element(s.coords(x)) == x
    # coordinates add under the group law
    x, y = A.order - 1, A.order // 2
    lhs = s.coords(A.mul(x, y))
    rhs = tuple((a + b) % d for a, b, d in zip(s.coords(x), s.coords(y), s.invariant_factors))
    assert lhs == rhs


def test_subgroup_counts():
    V4 = direct_product(cyclic(2), cyclic(2))
    assert len(subgroups_of_abelian(V4)) == 5
    assert len(subgroups_of_abelian(cyclic(4))) == 3
    assert len(subgroups_of_abelian(cyclic(12))) == 6  # one per divisor
    # C2^3 has 1 + 7 + 7 + 1 subgroups
    C2 = cyclic(2)
    assert len(subgroups_of_abelian(direct_product(direct_product(C2, C2), C2))) == 16


def test_subgroups_are_distinct_subgroups():
    A = direct_product(cyclic(2), cyclic(4))
    subs = subgroups_of_abelian(A)
    assert len({H.key for H in subs}) == len(subs)
    for H in subs:
        assert subgroup_generated(A, H.elements) == H


def test_order_cap():
    with pytest.raises(OrderCapError):
        cyclic(10, order_cap=5)
    with pytest.raises(OrderCapError):
        build("E(2,5)xE(2,1)")
    G = build("E(2,5)xE(2,1)", order_cap=None)
    assert G.order == 16384
    assert G.class_count == 1025 * 5  # product of class counts


def test_bad_constructor_arguments():
    for bad in ("C0", "E(4,1)", "S9"):
        with pytest.raises(GroupError):
            build(bad)


# descriptor language


def test_parse_shapes():
    node = parse("D3xC2/Z")
    assert type(node).__name__ == "Quotient" and node.by == "Z"
    assert build("D3xD3").order == 36
    assert build("E(2,2)xC3").order == 96
    assert build("D4/G'").order == 4
    assert build("D4/G'").descriptor == "D4/G'"


def test_products_are_left_associative():
    assert build("C2xC3xC4").descriptor == "C2xC3xC4"
    G = build("D4xC2/Z")  # quotient applies to the whole product
    assert G.order == 4


@pytest.mark.parametrize(
    "text,offset",
    [("", 0), ("C", 1), ("d4", 0), ("C2 x C3", 2), ("C2/", 3), ("E(2,1", 5), ("D4xQ", 3), ("C2/Q", 3)],
)
def test_descriptor_errors_report_offset(text, offset):
    with pytest.raises(DescriptorError) as err:
        parse(text)
    assert err.value.position == offset
    assert err.value.expected
