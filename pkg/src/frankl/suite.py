"""The full verification battery behind ``frankl suite``."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

from . import groups as gr
from .analysis import (frankl_brute_force, frankl_via_left_modular_coatom,
                       has_left_modular_maximal_chain, is_comodernistic, is_dually_semimodular,
                       is_left_modular)
from .certificates import (build_certificate, build_certificate_generalized,
                           generalized_modularity_holds, verify_certificate)
from .enumeration import KNOWN_LATTICE_COUNTS, enumerate_lattices, lattice_count
from .lattice import coatoms, join_irreducibles, parse, serialize
from .oracles import LABELED_ORACLE_MAX, labeled_lattice_count, subgroups_by_subset_closure
from .subgroups import (CrossCheckFailed, HypothesisFailed, build_subgroup_lattice,
                        certify_via_normal_quotient, frankl_full, join_irreducible_subgroups,
                        verify_complemented, verify_solvable_intervals)


@dataclass
class CriterionResult:
    key: str
    title: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} [{self.key}] {self.title}: {self.detail}"


def catalogue(max_order: int = 24) -> list[str]:
    """Catalogue group specs of order at most ``max_order``, deterministic order."""
    specs = [f"cyclic:{n}" for n in range(1, max_order + 1)]
    specs += [f"dihedral:{n}" for n in range(1, max_order // 2 + 1)]
    specs += [f"dicyclic:{n}" for n in range(1, max_order // 4 + 1)]
    for p in (p for p in range(2, max_order + 1) if gr.is_prime(p)):
        k = 1
        while p ** k <= max_order:
            specs.append(f"elem:{p}^{k}")
            k += 1
    specs += [s for s, order in (("sym:3", 6), ("alt:4", 12), ("sym:4", 24)) if order <= max_order]
    factors = [(f"cyclic:{n}", n) for n in range(2, 13)]
    factors += [(f"dihedral:{n}", 2 * n) for n in range(2, 7)]
    factors += [("dicyclic:2", 8), ("dicyclic:3", 12), ("elem:2^2", 4), ("elem:2^3", 8),
                ("elem:3^2", 9), ("sym:3", 6), ("alt:4", 12)]
    for i, (a, na) in enumerate(factors):
        for b, nb in factors[i:]:
            if na * nb <= max_order:
                specs.append(f"direct:({a},{b})")
    return specs


def lattices_up_to(n_max: int):
    out = []
    for n in range(1, n_max + 1):
        out.extend(enumerate_lattices(n))
    return out


def check_frankl_sweep(lattices, n_max):
    counts = [sum(1 for L in lattices if L.n == n) for n in range(1, n_max + 1)]
    expected = list(KNOWN_LATTICE_COUNTS[1:n_max + 1])
    bad = [L for L in lattices if L.n >= 2 and not frankl_brute_force(L).satisfied]
    ok = counts == expected and not bad
    return ok, f"{len(lattices)} lattices, counts {counts}, {len(bad)} counterexamples"


def check_modular_triples(lattices):
    triples = failures = 0
    for L in lattices:
        irreducibles = join_irreducibles(L)
        for m in range(L.n - 1):
            if not is_left_modular(L, m):
                continue
            for x in irreducibles:
                for y in irreducibles:
                    if L.join(m, L.join(x, y)) != L.top:
                        continue
                    triples += 1
                    cert = build_certificate(L, m, x, y)
                    if not verify_certificate(L, cert) or 2 * L.up_size(cert.witness) > L.n:
                        failures += 1
    return failures == 0 and triples > 0, f"{triples} triples, {failures} failures"


def check_relaxed_triples(lattices):
    triples = failures = 0
    for L in lattices:
        irreducibles = join_irreducibles(L)
        for m in range(L.n - 1):
            for x in irreducibles:
                if L.leq(x, m):
                    continue
                for y in irreducibles:
                    if L.leq(y, m) or L.join(m, L.join(x, y)) != L.top:
                        continue
                    if not generalized_modularity_holds(L, m, x, y):
                        continue
                    triples += 1
                    cert = build_certificate_generalized(L, m, x, y)
                    if not verify_certificate(L, cert):
                        failures += 1
    return failures == 0 and triples > 0, f"{triples} triples, {failures} failures"


def check_dual_semimodular(lattices):
    seen = exceptions = 0
    for L in lattices:
        if L.n < 2 or not is_dually_semimodular(L):
            continue
        seen += 1
        if not all(is_left_modular(L, c) for c in coatoms(L)):
            exceptions += 1
            continue
        report = frankl_via_left_modular_coatom(L)
        if report is None or not report.satisfied:
            exceptions += 1
    return exceptions == 0, f"{seen} dually semimodular lattices, {exceptions} exceptions"


def check_comodernistic(lattices):
    chain = dsm = comod = exceptions = 0
    for L in lattices:
        if L.n < 2:
            continue
        is_comod = is_comodernistic(L)
        if has_left_modular_maximal_chain(L) is not None:
            chain += 1
            exceptions += not is_comod
        if is_dually_semimodular(L):
            dsm += 1
            exceptions += not is_comod
        if is_comod:
            comod += 1
            report = frankl_via_left_modular_coatom(L)
            if not frankl_brute_force(L).satisfied or report is None:
                exceptions += 1
    detail = (f"{chain} with left-modular chain, {dsm} dually semimodular, "
              f"{comod} comodernistic, {exceptions} exceptions")
    return exceptions == 0, detail


def _catalogue_entry(spec):
    G = gr.from_catalogue(spec)
    SL = build_subgroup_lattice(G)
    try:
        join_irreducible_subgroups(SL)
        agree = True
    except CrossCheckFailed:
        agree = False
    if G.n < 2:
        return spec, True, False, agree
    report = frankl_full(G, SL)
    return spec, report.satisfied, report.critical, agree


def check_catalogue(max_order, jobs=None):
    specs = catalogue(max_order) + ["alt:5", "sym:5"]
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_catalogue_entry, specs))
    else:
        rows = [_catalogue_entry(s) for s in specs]
    unsatisfied = [s for s, ok, _, _ in rows if not ok]
    critical = [s for s, _, crit, _ in rows if crit]
    disagree = [s for s, _, _, agree in rows if not agree]
    ok = not unsatisfied and not critical and not disagree
    return ok, (f"{len(rows)} groups, {len(unsatisfied)} unsatisfied, {len(critical)} critical, "
                f"{len(disagree)} join-irreducible disagreements")


def check_normal_quotient(specs=("sym:3", "cyclic:6", "sym:4", "alt:4", "alt:5")):
    problems = []
    for spec in specs:
        G = gr.from_catalogue(spec)
        report = certify_via_normal_quotient(G)
        if report is None:
            problems.append(f"{spec}: no certificate")
            continue
        x, y = report.generator_pair
        N = report.normal_subgroup_used
        if not (gr.is_prime_power(G.element_order[x]) and gr.is_prime_power(G.element_order[y])):
            problems.append(f"{spec}: lifted generators not of prime-power order")
        if gr.generated_subgroup(G, list(N.elements) + [x, y]) != G.whole:
            problems.append(f"{spec}: lifted generators and N do not generate G")
    return not problems, "; ".join(problems) or f"{len(specs)} groups certified"


def check_solvable_intervals(max_order):
    total = failing = 0
    groups_checked = 0
    for spec in catalogue(max_order):
        G = gr.from_catalogue(spec)
        if not gr.is_solvable(G):
            continue
        groups_checked += 1
        sweep = verify_solvable_intervals(G)
        total += sweep.intervals
        failing += not sweep.passed
    return failing == 0, f"{groups_checked} groups, {total} intervals, {failing} groups failing"


def check_complemented():
    problems = []
    for spec in ("sym:3", "elem:2^2", "elem:3^2", "dihedral:5"):
        report = verify_complemented(gr.from_catalogue(spec))
        if not report.all_witnesses:
            problems.append(f"{spec}: not every join-irreducible is a witness")
    try:
        verify_complemented(gr.from_catalogue("cyclic:4"))
        problems.append("cyclic:4 accepted")
    except HypothesisFailed:
        pass
    return not problems, "; ".join(problems) or "4 complemented groups pass, cyclic:4 rejected"


def check_generation():
    problems = []
    if gr.pq_generated(gr.from_catalogue("alt:5"), 2, 5) is None:
        problems.append("alt:5 not (2,5)-generated")
    if gr.pq_generated(gr.from_catalogue("alt:4"), 2, 3) is None:
        problems.append("alt:4 not (2,3)-generated")
    if gr.two_prime_power_generated(gr.from_catalogue("elem:2^3")) is not None:
        problems.append("elem:2^3 reported 2-generated")
    return not problems, "; ".join(problems) or "alt:5 (2,5), alt:4 (2,3), elem:2^3 absent"


def check_oracles(lattices, seed):
    problems = []
    for spec in ("cyclic:12", "sym:3", "dicyclic:2", "alt:4"):
        G = gr.from_catalogue(spec)
        if gr.all_subgroups(G) != subgroups_by_subset_closure(G):
            problems.append(f"subgroups of {spec}")
    for n in range(1, LABELED_ORACLE_MAX + 1):
        if lattice_count(n) != labeled_lattice_count(n):
            problems.append(f"enumeration disagrees with the labeled-poset oracle at n={n}")
    for L in lattices:
        text = serialize(L)
        if serialize(parse(text)) != text or parse(text).covers != L.covers:
            problems.append(f"round trip of a {L.n}-element lattice")
            break
    rng = random.Random(seed)
    G = gr.from_catalogue("sym:4")
    text = gr.serialize_cayley(G)
    if gr.serialize_cayley(gr.parse_group_text(text)) != text:
        problems.append("cayley round trip")
    for L in rng.sample(lattices, min(20, len(lattices))):
        if L.n >= 2 and frankl_brute_force(parse(serialize(L))).witness != frankl_brute_force(L).witness:
            problems.append("verdict changed after round trip")
    return not problems, "; ".join(problems) or "subgroup, lattice-count and round-trip oracles agree"


def run_suite(max_lattice: int = 8, max_group: int = 24, jobs: Optional[int] = None,
              seed: int = 0, progress: Optional[Callable[[CriterionResult], None]] = None
              ) -> list[CriterionResult]:
    lattices = lattices_up_to(max_lattice)
    plan = [
        ("1", "exhaustive Frankl sweep", lambda: check_frankl_sweep(lattices, max_lattice)),
        ("2", "left-modular triple certificates", lambda: check_modular_triples(lattices)),
        ("3", "relaxed triple certificates", lambda: check_relaxed_triples(lattices)),
        ("4", "dually semimodular coatoms", lambda: check_dual_semimodular(lattices)),
        ("5", "comodernistic closure", lambda: check_comodernistic(lattices)),
        ("6", "subgroup lattice catalogue", lambda: check_catalogue(max_group, jobs)),
        ("7", "normal quotient pipeline", check_normal_quotient),
        ("8", "solvable interval sweep", lambda: check_solvable_intervals(max_group)),
        ("9", "complemented groups", check_complemented),
        ("10", "generation spot checks", check_generation),
        ("11", "oracle agreements", lambda: check_oracles(lattices, seed)),
    ]
    results = []
    for key, title, run in plan:
        ok, detail = run()
        result = CriterionResult(key, title, ok, detail)
        results.append(result)
        if progress:
            progress(result)
    return results
