"""Command-line front end.

Usage::

    commprob prob D4
    commprob decompose D4 --normal gens:r
    commprob corpus --max-order 64 --format json --out snapshot.json
    commprob equidist mixed 1..4
    commprob egyptian 12
    commprob derived snapshot.json --steps 2 --prime-bound 5
    commprob check all

Exit status: 0 success, 1 failed assertion, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import checks
from .descriptors import DescriptorError, build
from .equidist import experiment_rows, get_family
from .groups import ORDER_CAP, GroupError, Subgroup, center, commutator_subgroup, subgroup_generated
from .probability import coset_pair_table, commuting_probability, fmt_rational
from .spectrum import (
    SearchExhausted,
    corpus,
    derived_step,
    dihedral_product_descriptor,
    dihedral_product_search,
    load_snapshot,
    primes_upto,
    product_certificate,
    snapshot_json,
    spectrum_set,
)

GUSTAFSON = Fraction(5, 8)


class UsageError(Exception):
    pass


def _approx(q: Fraction) -> str:
    return f"{q}  ≈ {float(q):.6f}"


def _csv(rows: Sequence[dict], fields: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(fields), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _build(args, descriptor: str):
    try:
        return build(descriptor, order_cap=args.order_cap)
    except DescriptorError as exc:
        raise UsageError(str(exc)) from exc


def cmd_prob(args) -> tuple[str, int]:
    G = _build(args, args.descriptor)
    P = commuting_probability(G)
    info = {
        "descriptor": G.descriptor,
        "order": G.order,
        "classes": G.class_count,
        "P": fmt_rational(P),
        "abelian": P == 1,
        "gustafson_binds": P == GUSTAFSON,
    }
    if args.format == "json":
        return json.dumps(info) + "\n", 0
    if args.format == "csv":
        return _csv([info], list(info)), 0
    if P == 1:
        bound = "abelian"
    elif P == GUSTAFSON:
        bound = "binds (P = 5/8)"
    else:
        bound = "slack (P < 5/8)"
    text = (
        f"group: {G.descriptor}\norder: {G.order}\nclasses: {G.class_count}\n"
        f"P = {_approx(P)}\ngustafson bound: {bound}\n"
    )
    return text, 0


def _resolve_normal(G, choice: str) -> Subgroup:
    if choice == "Z":
        return center(G)
    if choice == "G'":
        return commutator_subgroup(G)
    if choice.startswith("gens:"):
        names = [s for s in choice[5:].split(",") if s]
        try:
            return subgroup_generated(G, [G.find(s) for s in names])
        except GroupError as exc:
            raise UsageError(str(exc)) from exc
    raise UsageError(f"--normal must be Z, G' or gens:<labels>, got {choice!r}")


def cmd_decompose(args) -> tuple[str, int]:
    G = _build(args, args.descriptor)
    K = _resolve_normal(G, args.normal)
    witness = K.normality_witness()
    if witness is not None:
        g, n = witness
        raise UsageError(f"selected subgroup is not normal: {G.label(g)} conjugates {G.label(n)} outside it")
    table = coset_pair_table(G, K)
    P = commuting_probability(G)
    status = 0 if table.mean == P else 1
    if args.format == "json":
        data = json.loads(table.to_json())
        data.update({"mean": fmt_rational(table.mean), "P": fmt_rational(P), "descriptor": G.descriptor})
        return json.dumps(data) + "\n", status
    if args.format == "csv":
        rows = [
            {"C": c, "D": d, "term": fmt_rational(t), "commutes_in_Kprime": table.commutes_in_Kprime[c][d]}
            for c, row in enumerate(table.terms)
            for d, t in enumerate(row)
        ]
        return _csv(rows, ["C", "D", "term", "commutes_in_Kprime"]), status
    width = max(len(str(t)) for row in table.terms for t in row)
    lines = [f"group: {G.descriptor}  |K| = {K.order}  |G/K| = {table.quotient_order}"]
    lines += ["  ".join(str(t).rjust(width) for t in row) for row in table.terms]
    lines.append(f"mean = {_approx(table.mean)}")
    lines.append(f"P(G) = {P}  ({'equal' if status == 0 else 'MISMATCH'})")
    return "\n".join(lines) + "\n", status


def cmd_corpus(args) -> tuple[str, int]:
    try:
        entries = corpus(args.max_order)
    except GroupError as exc:
        raise UsageError(str(exc)) from exc
    if args.format == "json":
        return snapshot_json(entries) + "\n", 0
    ordered = sorted(entries, key=lambda e: (-e.value, e.order, e.witness))
    if args.format == "csv":
        return _csv([e.to_dict() for e in ordered], ["value", "witness", "order"]), 0
    return "".join(f"{str(e.value):>12}  {e.witness:<20} {e.order}\n" for e in ordered), 0


def _parse_range(text: str) -> list[int]:
    try:
        lo, hi = text.split("..")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise UsageError(f"range must look like 1..4, got {text!r}") from None
    if lo > hi:
        raise UsageError("empty index range")
    return list(range(lo, hi + 1))


CSV_FIELDS = [
    "family",
    "index",
    "group_order",
    "kprime_order",
    "H0",
    "element",
    "mass_num",
    "mass_den",
    "deviation_num",
    "deviation_den",
]


def cmd_equidist(args) -> tuple[str, int]:
    try:
        family = get_family(args.family)
    except GroupError as exc:
        raise UsageError(str(exc)) from exc
    indices = _parse_range(args.range)
    if len(indices) < 3:
        raise UsageError("equidist needs at least three indices")
    try:
        estimate, rows, fourier = experiment_rows(family, indices, args.bound)
    except GroupError as exc:
        raise UsageError(str(exc)) from exc
    devs = []
    for row in rows:
        if row["element"] == 0:
            devs.append(Fraction(row["deviation_num"], row["deviation_den"]))
    status = 0 if all(b <= a for a, b in zip(devs, devs[1:])) else 1
    if args.fourier_out:
        report = [dict(index=i, **entry) for i, entries in fourier.items() for entry in entries]
        with open(args.fourier_out, "w") as fh:
            json.dump(report, fh, indent=1)
            fh.write("\n")
    if args.format == "json":
        data = {
            "family": family.name,
            "H0": [int(a) for a in estimate.subgroup.elements],
            "heuristic": estimate.heuristic,
            "rows": rows,
            "fourier": {str(i): entries for i, entries in fourier.items()},
        }
        return json.dumps(data) + "\n", status
    return _csv(rows, CSV_FIELDS), status


def cmd_egyptian(args) -> tuple[str, int]:
    if not 1 <= args.n <= 64:
        raise UsageError("n must lie in 1..64")
    try:
        ms = dihedral_product_search(args.n)
    except SearchExhausted as exc:
        return f"search exhausted: {exc}\n", 1
    cert = product_certificate(ms)
    descriptor = dihedral_product_descriptor(ms)
    if args.format == "json":
        data = {"n": args.n, "tuple": list(ms), "descriptor": descriptor, "certificate": fmt_rational(cert)}
        return json.dumps(data) + "\n", 0
    if args.format == "csv":
        return _csv([{"n": args.n, "tuple": " ".join(map(str, ms)), "descriptor": descriptor, "certificate": fmt_rational(cert)}], ["n", "tuple", "descriptor", "certificate"]), 0
    factors = " * ".join(f"{m + 3}/{4 * m}" for m in ms) or "1"
    text = f"tuple: ({', '.join(map(str, ms))})\ndescriptor: {descriptor}\ncertificate: {factors} = {cert}\n"
    return text, 0


def cmd_derived(args) -> tuple[str, int]:
    try:
        with open(args.snapshot) as fh:
            entries = load_snapshot(fh.read())
        X = spectrum_set(entries)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"malformed snapshot: {exc}") from exc
    primes = primes_upto(args.prime_bound)
    if not primes:
        raise UsageError("--prime-bound must be at least 2")
    levels = [X]
    for _ in range(args.steps):
        levels.append(derived_step(levels[-1], primes))
    status = 0
    if 1 in X and 2 in primes:
        for n, level in enumerate(levels):
            if level.max > Fraction(1, 2**n):
                status = 1
    if args.format == "json":
        data = {"primes": primes, "levels": [[fmt_rational(x) for x in lv.descending()] for lv in levels]}
        return json.dumps(data) + "\n", status
    if args.format == "csv":
        rows = [{"level": n, "value": fmt_rational(x)} for n, lv in enumerate(levels) for x in lv.descending()]
        return _csv(rows, ["level", "value"]), status
    out = []
    for n, level in enumerate(levels):
        out.append(f"# X^{n}: {len(level)} values")
        out.extend(str(x) for x in level.descending())
    return "\n".join(out) + "\n", status


def cmd_check(args) -> tuple[str, int]:
    results = checks.run_suite(args.suite)
    failed = [r for r in results if not r.passed]
    if args.format == "json":
        data = [{"name": r.name, "checked": r.checked, "failures": r.failures, "detail": r.detail} for r in results]
        return json.dumps(data) + "\n", 1 if failed else 0
    lines = []
    for r in results:
        mark = "PASS" if r.passed else "FAIL"
        lines.append(f"[{mark}] {r.name}: {r.checked} checked, {r.failures} failures" + (f" ({r.detail})" if r.detail and not r.passed else ""))
    return "\n".join(lines) + "\n", 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--order-cap", type=int, default=ORDER_CAP, metavar="N")
    common.add_argument("--bound", type=int, default=16, metavar="B", help="boundedness threshold")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="commprob", description="Exact commuting probabilities of finite groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prob", parents=[common], help="commuting probability of a group")
    p.add_argument("descriptor")
    p.set_defaults(func=cmd_prob)

    p = sub.add_parser("decompose", parents=[common], help="coset-pair decomposition of P(G)")
    p.add_argument("descriptor")
    p.add_argument("--normal", required=True, help="Z, G' or gens:<labels>")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("corpus", parents=[common], help="spectrum snapshot of a group corpus")
    p.add_argument("--max-order", type=int, default=64)
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("equidist", parents=[common], help="equidistribution experiment on a family")
    p.add_argument("family")
    p.add_argument("range", help="index range such as 1..4")
    p.add_argument("--fourier-out", metavar="PATH")
    p.set_defaults(func=cmd_equidist)

    p = sub.add_parser("egyptian", parents=[common], help="odd dihedral product with P = 1/n")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_egyptian)

    p = sub.add_parser("derived", parents=[common], help="iterated derived sets of a snapshot")
    p.add_argument("snapshot")
    p.add_argument("--steps", type=int, default=1)
    p.add_argument("--prime-bound", type=int, default=3)
    p.set_defaults(func=cmd_derived)

    p = sub.add_parser("check", parents=[common], help="run an invariant suite")
    p.add_argument("suite", choices=["props", "rusin", "gustafson", "equidist", "all"])
    p.set_defaults(func=cmd_check)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, status = args.func(args)
    except UsageError as exc:
        print(f"commprob: error: {exc}", file=sys.stderr)
        return 2
    except GroupError as exc:
        print(f"commprob: error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
