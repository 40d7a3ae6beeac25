"""Invariant suites run by ``commprob check``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .descriptors import build
from .equidist import (
    characters,
    equidist_deviation,
    f_distribution,
    fourier_coefficient,
    fourier_magnitude_predicted,
    get_family,
    h0_estimate,
)
from .groups import Subgroup, center, commutator_subgroup, normal_core, quotient, subgroup_generated
from .probability import commuting_pairs_bruteforce, commuting_probability
from .spectrum import (
    _base_descriptors,
    corpus,
    dihedral_product_descriptor,
    dihedral_product_search,
    product_certificate,
    rusin_interval_check,
)

GUSTAFSON = Fraction(5, 8)


@dataclass(frozen=True)
class CheckResult:
    name: str
    checked: int
    failures: int
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.failures == 0


def gustafson_suite(max_order: int = 200) -> list[CheckResult]:
    entries = corpus(max_order)
    nonabelian = [e for e in entries if e.value < 1]
    bad = [e for e in nonabelian if e.value > GUSTAFSON]
    return [CheckResult("gustafson", len(nonabelian), len(bad), ", ".join(e.witness for e in bad[:5]))]


def rusin_suite(max_order: int = 256) -> list[CheckResult]:
    report = rusin_interval_check(corpus(max_order))
    detail = ", ".join(f"{e.witness}={e.value}" for e in report.violations[:5])
    return [CheckResult("rusin", len(report.conforming) + len(report.violations), len(report.violations), detail)]


def _quotient_bound_cases(G, rng, cores: int = 2):
    yield center(G)
    yield commutator_subgroup(G)
    for _ in range(cores):
        seeds = rng.integers(0, G.order, size=rng.integers(1, 3))
        yield normal_core(G, subgroup_generated(G, seeds))


def props_suite(max_order: int = 64, seed: int = 0) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    base = [d for d in _base_descriptors(max_order) if d != "C1"]
    built = {d: build(d) for d in base}
    values = {d: commuting_probability(G) for d, G in built.items()}

    pairs = [(a, b) for i, a in enumerate(base) for b in base[i:] if built[a].order * built[b].order <= 4 * max_order]
    bad = [f"{a}x{b}" for a, b in pairs if commuting_probability(build(f"{a}x{b}")) != values[a] * values[b]]
    results = [CheckResult("product law", len(pairs), len(bad), ", ".join(bad[:5]))]

    checked, bad = 0, []
    for d, G in built.items():
        P = values[d]
        for N in _quotient_bound_cases(G, rng):
            Q = quotient(G, N)
            checked += 1
            if P < commuting_probability(Q) / N.order or G.class_count < Q.class_count:
                bad.append(f"{d}/<{N.order}>")
    results.append(CheckResult("quotient bound", checked, len(bad), ", ".join(bad[:5])))

    bad = []
    for n in range(1, 13):
        ms = dihedral_product_search(n)
        if product_certificate(ms) != Fraction(1, n):
            bad.append(str(n))
        elif n <= 4 and commuting_pairs_bruteforce(build(dihedral_product_descriptor(ms))) != Fraction(1, n):
            bad.append(f"{n} (group)")
    results.append(CheckResult("dihedral products", 12, len(bad), ", ".join(bad)))
    return results


def equidist_suite() -> list[CheckResult]:
    results = []
    fam = get_family("extraspecial2")
    bad = []
    for i in range(1, 6):
        m = fam.member(i)
        f = f_distribution(m.K_group, kprime=m.kprime)
        whole_kp = Subgroup(m.kprime.group, np.ones(2, dtype=bool))
        if equidist_deviation(f, whole_kp) != Fraction(1, 2 ** (2 * i + 1)):
            bad.append(str(i))
    results.append(CheckResult("extraspecial2 deviation", 5, len(bad), ", ".join(bad)))

    fam = get_family("mixed")
    est = h0_estimate(fam, range(1, 6), bound=16)
    devs = []
    for i in range(1, 6):
        m = fam.member(i)
        devs.append(equidist_deviation(f_distribution(m.K_group, kprime=m.kprime), est.subgroup))
    failures = int(est.subgroup.key != (0, 2)) + int(any(b >= a for a, b in zip(devs, devs[1:]))) + int(devs[-1] > Fraction(1, 512))
    results.append(CheckResult("mixed family decay", 3, failures, " ".join(str(d) for d in devs)))

    checked, bad = 0, []
    for d in ("E(2,1)", "E(3,1)", "E(2,2)", "E(2,2)xE(2,1)"):
        K = build(d)
        f = f_distribution(K)
        for chi in characters(f.support_group):
            checked += 1
            if abs(abs(fourier_coefficient(f, chi)) - float(fourier_magnitude_predicted(K, chi))) > 1e-9:
                bad.append(f"{d}:{chi.exponents}")
    results.append(CheckResult("fourier magnitude", checked, len(bad), ", ".join(bad[:5])))
    return results


SUITES = {
    "props": props_suite,
    "rusin": rusin_suite,
    "gustafson": gustafson_suite,
    "equidist": equidist_suite,
}


def run_suite(name: str) -> list[CheckResult]:
    if name == "all":
        return [r for suite in SUITES.values() for r in suite()]
    return SUITES[name]()
