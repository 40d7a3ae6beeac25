"""Acceptance criteria 1-11.

Each ``test_criterion_N`` checks one criterion at its stated tolerance; the
conftest hook prints one PASS/FAIL line per criterion at the end of the run.
"""

import itertools
from fractions import Fraction

import numpy as np

from commprob import checks
from commprob.descriptors import build
from commprob.equidist import (
    bar_Z,
    character_sum,
    characters,
    default_kprime,
    equidist_deviation,
    f_distribution,
    fourier_coefficient,
    fourier_coefficient_real,
    fourier_magnitude_predicted,
    get_family,
    h0_estimate,
    q_subgroup_estimate,
    zbar_index,
)
from commprob.groups import (
    center,
    commutator,
    commutator_subgroup,
    dihedral,
    extraspecial,
    is_class_two,
    subgroup_generated,
    subgroups_of_abelian,
    symmetric,
    whole,
)
from commprob.probability import commuting_probability, coset_pair_table
from commprob.spectrum import (
    RationalSet,
    cluster_at,
    corpus,
    derived_step,
    joseph_value,
    limit_membership_scan,
    omega_layer,
    primes_upto,
    rusin_interval_check,
    spectrum_set,
    SpectrumEntry,
)
from test_equidist import _abelian_group, _abelian_types


def test_criterion_1():
    assert commuting_probability(dihedral(4)) == Fraction(5, 8)
    for m in range(3, 100, 2):
        assert commuting_probability(dihedral(m)) == Fraction(m + 3, 4 * m), m


def test_criterion_2():
    listed = [Fraction(5, 8), Fraction(17, 32), Fraction(65, 128), Fraction(257, 512), Fraction(1025, 2048)]
    values = []
    for n in range(1, 6):
        E = extraspecial(2, n)
        assert E.order == 2 ** (2 * n + 1)
        values.append(commuting_probability(E))
    assert values == listed == [joseph_value(n) for n in range(1, 6)]
    assert all(a > b for a, b in zip(values, values[1:]))
    assert all(v > Fraction(1, 2) for v in values)


def test_criterion_3():
    nonabelian = [e for e in corpus(200) if e.value < 1]
    assert nonabelian
    assert [e.witness for e in nonabelian if e.value > Fraction(5, 8)] == []
    assert any(e.value == Fraction(5, 8) for e in nonabelian)


def test_criterion_4():
    report = rusin_interval_check(corpus(256))
    assert report.ok, report.violations
    assert len(report.conforming) > 0


def test_criterion_5():
    results = {r.name: r for r in checks.props_suite(max_order=64)}
    assert results["product law"].checked >= 200 and results["product law"].passed
    assert results["quotient bound"].checked > 0 and results["quotient bound"].passed
    dp = results["dihedral products"]
    assert dp.checked == 12 and dp.passed, dp.detail


def test_criterion_6():
    cases = []
    for d in ["C12", "C2xC6", "D4xC3"]:  # abelian K
        G = build(d)
        cases.append((G, center(G)))
    for d in ["E(2,1)", "E(2,2)", "E(3,1)", "E(2,1)xE(2,1)", "D4xS3", "E(2,2)xC3"]:  # class-two K
        G = build(d)
        cases.append((G, whole(G)))
        cases.append((G, commutator_subgroup(G)))
    for m in (3, 4, 5, 6, 7, 8, 9, 10, 12, 15):  # rotations in a dihedral group
        G = dihedral(m)
        cases.append((G, subgroup_generated(G, [1])))
    for d in ["S4", "D3xD3", "S3xC4"]:
        G = build(d)
        cases.append((G, commutator_subgroup(G)))
    assert len(cases) >= 20
    for G, K in cases:
        assert coset_pair_table(G, K).mean == commuting_probability(G), G.descriptor
    G = dihedral(4)
    half = Fraction(1, 2)
    assert coset_pair_table(G, subgroup_generated(G, [1])).terms == ((1, half), (half, half))


def test_criterion_7():
    for d in ["E(2,1)", "E(2,2)", "E(2,2)xE(2,1)"]:
        K = build(d)
        kp = default_kprime(K)
        subs = [kp.pullback(K, H) for H in subgroups_of_abelian(kp.group)]
        assert bar_Z(K, commutator_subgroup(K)) == whole(K)
        for H1, H2 in itertools.product(subs, repeat=2):
            assert bar_Z(K, H1 & H2) == bar_Z(K, H1) & bar_Z(K, H2)
            if H1 <= H2:
                assert bar_Z(K, H1) <= bar_Z(K, H2)

    checked = 0
    for e in corpus(64):
        G = build(e.witness)
        if G.is_abelian or not is_class_two(G):
            continue
        a, b, c = (G.elements.reshape(s) for s in [(-1, 1, 1), (1, -1, 1), (1, 1, -1)])
        assert np.array_equal(commutator(G, a, G.mul(b, c)), G.mul(commutator(G, a, b), commutator(G, a, c)))
        assert np.array_equal(commutator(G, G.mul(a, b), c), G.mul(commutator(G, a, c), commutator(G, b, c)))
        checked += 1
    assert checked > 0
    S3 = symmetric(3)
    assert any(
        commutator(S3, k, S3.mul(l1, l2)) != S3.mul(commutator(S3, k, l1), commutator(S3, k, l2))
        for k, l1, l2 in itertools.product(range(6), repeat=3)
    )

    for factors in _abelian_types(32):
        A = _abelian_group(factors)
        for chi in characters(A):
            assert character_sum(chi) == (A.order if chi.is_trivial else 0)


def test_criterion_8():
    for d in ["E(2,1)", "E(3,1)", "E(2,2)", "E(2,2)xE(2,1)"]:
        K = build(d)
        f = f_distribution(K)
        for chi in characters(f.support_group):
            predicted = fourier_magnitude_predicted(K, chi)
            assert predicted == Fraction(1, len(f.mass) * zbar_index(K, default_kprime(K).pullback(K, chi.kernel())))
            assert abs(abs(fourier_coefficient(f, chi)) - float(predicted)) <= 1e-9
    f = f_distribution(extraspecial(2, 1))
    sign = characters(f.support_group)[1]
    assert fourier_coefficient_real(f, sign) == Fraction(1, 8)


def test_criterion_9():
    fam = get_family("mixed")
    est = h0_estimate(fam, range(1, 6), bound=16)
    first_factor = (0, 2)  # fixed K' = C2 x C2 with (u, v) at 2u + v
    assert est.subgroup.key == first_factor
    # only C2 x 1 and the whole of K' keep a bounded zbar-index (4 and 1)
    assert {H.key for H in est.bounded} == {first_factor, (0, 1, 2, 3)}
    assert dict((H.key, seq) for H, seq, _ in est.classification)[first_factor] == (4,) * 5
    devs = []
    for i in range(1, 6):
        m = fam.member(i)
        f = f_distribution(m.K_group, kprime=m.kprime)
        devs.append(equidist_deviation(f, est.subgroup))
    assert all(a > b for a, b in zip(devs, devs[1:])), devs
    assert devs[-1] <= Fraction(1, 512)

    fam = get_family("extraspecial2")
    for i in range(1, 6):
        m = fam.member(i)
        f = f_distribution(m.K_group, kprime=m.kprime)
        assert equidist_deviation(f, whole(f.support_group)) == Fraction(1, 2 ** (2 * i + 1))


def test_criterion_10():
    fam = get_family("dihedral_odd")
    est = q_subgroup_estimate(fam, bound=16, indices=range(1, 11))
    assert fam.quotient_group.order == 2
    assert est.subgroup.order == 1
    limit_factor = Fraction(1, est.index**2)
    assert limit_factor == Fraction(1, 4)

    odd = [
        e
        for e in corpus(256)
        if e.witness[0] == "D" and e.witness[1:].isdigit() and int(e.witness[1:]) % 2
    ]
    assert len(odd) >= 60
    values = [e.value for e in sorted(odd, key=lambda e: e.order)]
    assert all(v > limit_factor for v in values)
    assert all(a > b for a, b in zip(values, values[1:]))
    clusters = limit_membership_scan(odd, candidates=[SpectrumEntry(Fraction(1), "C1", 1)])
    c = cluster_at(clusters, limit_factor)
    assert c is not None and c.from_above and len(c.members) >= 20


def test_criterion_11():
    X = RationalSet([0, 1])
    for n in range(1, 11):
        X = derived_step(X, [2, 3])
        assert 0 in X
        assert all(0 <= x <= Fraction(1, 2**n) for x in X)
        assert Fraction(1, 2**n) in X

    X = spectrum_set(corpus(64))
    primes = primes_upto(64)
    for n in range(0, 4):
        assert omega_layer(X, n + 1, 64) <= derived_step(omega_layer(X, n, 64), primes)
    for n in range(0, 5):
        assert all(x <= X.max / 2**n for x in omega_layer(X, n, 64))
