"""
Subgroup lattices L(G), upper intervals [H, G], and the group-theoretic
routes to Frankl's condition.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional

from .analysis import (CertificationPath, FranklReport, averaged_frankl, frankl_brute_force,
                       frankl_via_left_modular_coatom, frankl_witnesses, is_left_modular,
                       left_modular_coatom_in)
from .certificates import (InternalCheckFailed, PreconditionViolated, build_certificate,
                           build_certificate_generalized)
from .groups import (FiniteGroup, GroupError, Subgroup, _closure, all_subgroups, cyclic_subgroup,
                     is_complemented_group, is_cyclic, is_normal, is_prime_power, is_solvable,
                     normal_subgroups, product_set, quotient_with_cosets, subgroup_join,
                     two_prime_power_generated)
from .lattice import FiniteLattice, bits, interval, join_irreducibles


class CrossCheckFailed(RuntimeError):
    pass


class TrivialInterval(GroupError):
    pass


class HypothesisFailed(GroupError):
    pass


class NotSolvable(GroupError):
    pass


class GroupPath(str, Enum):
    NORMAL_QUOTIENT = "normal-quotient"
    INTERVAL_NORMAL = "interval-normal"
    INTERVAL_PRODUCT = "interval-product"
    LEFT_MODULAR_COATOM = "left-modular-coatom"
    SOLVABLE_SWEEP = "solvable-sweep"
    COMPLEMENTED = "complemented"
    BRUTE_FORCE = "brute-force"


@dataclass
class GroupFranklReport(FranklReport):
    group_path: GroupPath = GroupPath.BRUTE_FORCE
    witness_subgroup: Optional[Subgroup] = None
    normal_subgroup_used: Optional[Subgroup] = None
    generator_pair: Optional[tuple[int, int]] = None
    critical: bool = False

    def __post_init__(self):
        super().__post_init__()
        if self.group_path is GroupPath.NORMAL_QUOTIENT and self.satisfied:
            assert self.normal_subgroup_used is not None and self.generator_pair is not None


@dataclass
class SubgroupLattice:
    group: FiniteGroup
    lattice: FiniteLattice
    labels: tuple[Subgroup, ...]
    index: dict = field(repr=False, default_factory=dict)

    def __post_init__(self):
        self.index = {H.mask: i for i, H in enumerate(self.labels)}

    def __len__(self):
        return self.lattice.n

    def element_of(self, H: Subgroup) -> int:
        return self.index[H.mask]


def _lattice_from_subgroups(subgroups):
    down = []
    for i, H in enumerate(subgroups):
        d = 0
        for j in range(i + 1):
            if subgroups[j].mask & ~H.mask == 0:
                d |= 1 << j
        down.append(d)
    return FiniteLattice.from_down_sets(down)


def build_subgroup_lattice(G: FiniteGroup, validate: bool = True) -> SubgroupLattice:
    subgroups = all_subgroups(G)
    L = _lattice_from_subgroups(subgroups)
    SL = SubgroupLattice(G, L, tuple(subgroups))
    if validate:
        check_subgroup_lattice(SL)
    return SL


def check_subgroup_lattice(SL: SubgroupLattice) -> None:
    """Meets are intersections and joins are generated subgroups, for every pair."""
    L, labels, G = SL.lattice, SL.labels, SL.group
    if labels[L.bottom].order != 1 or labels[L.top].order != G.n:
        raise CrossCheckFailed("bottom/top labels are not 1 and G")
    for a in range(L.n):
        for b in range(a + 1, L.n):
            if labels[L.meet(a, b)].mask != labels[a].mask & labels[b].mask:
                raise CrossCheckFailed(f"meet of {a}, {b} is not the intersection")
            if L.leq(a, b) or L.leq(b, a):
                continue
            if labels[L.join(a, b)] != subgroup_join(G, labels[a], labels[b]):
                raise CrossCheckFailed(f"join of {a}, {b} is not the generated subgroup")


def join_irreducible_subgroups(SL: SubgroupLattice) -> list[int]:
    """Join-irreducibles of L(G), cross-checked against cyclic subgroups of prime-power order."""
    lattice_side = join_irreducibles(SL.lattice)
    group_side = [i for i, H in enumerate(SL.labels)
                  if is_prime_power(H.order) and is_cyclic(SL.group, H)]
    if lattice_side != group_side:
        raise CrossCheckFailed(
            f"join-irreducibles {lattice_side} differ from cyclic prime-power subgroups {group_side}")
    return lattice_side


def _report_from_cert(L, cert, path, group_path, labels, **extra):
    w = cert.witness
    return GroupFranklReport(True, L.n, w, L.up_size(w), path, cert, group_path=group_path,
                             witness_subgroup=labels[w], **extra)


def _maximal_first(normals, G):
    proper = [N for N in normals if N.order < G.n]
    maximal = [N for N in proper
               if not any(M != N and N.issubset(M) for M in proper)]
    rest = [N for N in proper if N not in maximal]
    key = lambda N: (-N.order, N.mask)
    return sorted(maximal, key=key) + sorted(rest, key=key)


def lift_prime_power(G: FiniteGroup, coset: int) -> Optional[int]:
    """Smallest-index element of prime-power order in a coset mask."""
    for g in bits(coset):
        if is_prime_power(G.element_order[g]):
            return g
    return None


def certify_via_normal_quotient(G: FiniteGroup, SL: Optional[SubgroupLattice] = None
                                ) -> Optional[GroupFranklReport]:
    """
    Find a proper normal ``N`` with ``G/N`` generated by at most two
    prime-power-order elements, lift them to prime-power-order ``x, y`` in
    ``G`` and certify L(G) with the triple ``(N, <x>, <y>)``.
    """
    if G.n < 2:
        raise GroupError("Frankl's condition needs a nontrivial group")
    SL = build_subgroup_lattice(G) if SL is None else SL
    L = SL.lattice
    for N in _maximal_first(normal_subgroups(G), G):
        Q, classes = quotient_with_cosets(G, N)
        pair = two_prime_power_generated(Q)
        if pair is None:
            continue
        x = lift_prime_power(G, classes[pair[0]])
        y = lift_prime_power(G, classes[pair[1]])
        if x is None or y is None:
            raise CrossCheckFailed("a prime-power coset has no prime-power preimage")
        if _closure(G, list(N.elements) + [x, y]) != G.whole.mask:
            raise CrossCheckFailed("lifted generators do not generate G together with N")
        m = SL.element_of(N)
        X = SL.element_of(cyclic_subgroup(G, x))
        Y = SL.element_of(cyclic_subgroup(G, y))
        cert = build_certificate(L, m, X, Y)
        return _report_from_cert(L, cert, CertificationPath.MODULAR_INJECTION,
                                 GroupPath.NORMAL_QUOTIENT, SL.labels,
                                 normal_subgroup_used=N, generator_pair=(x, y))
    return None


def frankl_full(G: FiniteGroup, SL: Optional[SubgroupLattice] = None) -> GroupFranklReport:
    if G.n < 2:
        raise GroupError("Frankl's condition needs a nontrivial group")
    SL = build_subgroup_lattice(G) if SL is None else SL
    L = SL.lattice
    try:
        report = certify_via_normal_quotient(G, SL)
        if report is not None:
            return report
        via_coatom = frankl_via_left_modular_coatom(L)
    except (PreconditionViolated, InternalCheckFailed, CrossCheckFailed):
        report = _brute_force_report(L, SL.labels)
        report.critical = True
        return report
    if via_coatom is not None:
        return GroupFranklReport(
            True, L.n, via_coatom.witness, via_coatom.upper_interval_size,
            via_coatom.certification_path, via_coatom.certificate,
            group_path=GroupPath.LEFT_MODULAR_COATOM,
            witness_subgroup=SL.labels[via_coatom.witness])
    report = _brute_force_report(L, SL.labels)
    report.critical = not report.satisfied
    return report


def _brute_force_report(L, labels):
    base = frankl_brute_force(L)
    return GroupFranklReport(
        base.satisfied, L.n, base.witness, base.upper_interval_size,
        group_path=GroupPath.BRUTE_FORCE,
        witness_subgroup=labels[base.witness] if base.witness is not None else None)


@dataclass
class IntervalLattice:
    """``[H, G]`` re-indexed as a lattice, with subgroup labels."""
    lattice: FiniteLattice
    labels: tuple[Subgroup, ...]

    def element_of(self, H: Subgroup) -> Optional[int]:
        for i, K in enumerate(self.labels):
            if K == H:
                return i
        return None


def upper_interval(SL: SubgroupLattice, H: Subgroup) -> IntervalLattice:
    lo = SL.element_of(H)
    iv = interval(SL.lattice, lo, SL.lattice.top)
    L, members = iv.as_lattice()
    return IntervalLattice(L, tuple(SL.labels[e] for e in members))


def certify_interval(G: FiniteGroup, H: Subgroup, SL: Optional[SubgroupLattice] = None
                     ) -> GroupFranklReport:
    """
    Certify Frankl's condition on ``[H, G]``: first through a normal ``N``
    (``HN`` is left-modular in the interval), then through an intermediate
    ``K`` whose product with ``X | Y`` is all of ``G``, then by brute force.
    """
    if H.order == G.n:
        raise TrivialInterval("interval [G, G] has a single element")
    SL = build_subgroup_lattice(G) if SL is None else SL
    if H.mask not in SL.index:
        raise GroupError("H is not a subgroup of G")
    IL = upper_interval(SL, H)
    L, labels = IL.lattice, IL.labels
    irreducibles = join_irreducibles(L)
    pairs = [(x, y) for x, y in itertools.combinations_with_replacement(irreducibles, 2)]

    try:
        for N in sorted(normal_subgroups(G), key=lambda s: s.sort_key):
            HN = Subgroup(product_set(G, H, N))
            if HN.order == G.n:
                continue
            m = IL.element_of(HN)
            if m is None:
                raise CrossCheckFailed("HN is not a subgroup above H")
            for x, y in pairs:
                if L.join(m, L.join(x, y)) == L.top:
                    cert = build_certificate(L, m, x, y)
                    return _report_from_cert(L, cert, CertificationPath.MODULAR_INJECTION,
                                             GroupPath.INTERVAL_NORMAL, labels,
                                             normal_subgroup_used=N)

        whole = G.whole.mask
        for k in range(1, L.n - 1):
            K = labels[k]
            for x, y in pairs:
                if L.leq(x, k) or L.leq(y, k):
                    continue
                if product_set(G, K, labels[L.join(x, y)]) != whole:
                    continue
                cert = build_certificate_generalized(L, k, x, y)
                return _report_from_cert(L, cert, CertificationPath.RELAXED_INJECTION,
                                         GroupPath.INTERVAL_PRODUCT, labels)
    except (PreconditionViolated, InternalCheckFailed):
        report = _brute_force_report(L, labels)
        report.critical = True
        return report

    report = _brute_force_report(L, labels)
    report.critical = not report.satisfied
    return report


@dataclass
class ComplementedReport:
    group: str
    lattice_size: int
    join_irreducibles: list
    witnesses: list
    all_witnesses: bool
    averaged: Fraction
    averaged_satisfied: bool

    def to_dict(self):
        return {
            "group": self.group,
            "lattice_size": self.lattice_size,
            "join_irreducibles": self.join_irreducibles,
            "witnesses": self.witnesses,
            "all_witnesses": self.all_witnesses,
            "averaged": str(self.averaged),
            "averaged_satisfied": self.averaged_satisfied,
        }


def verify_complemented(G: FiniteGroup, SL: Optional[SubgroupLattice] = None) -> ComplementedReport:
    """Every join-irreducible of L(G) is a witness when every subgroup has a complement."""
    SL = build_subgroup_lattice(G) if SL is None else SL
    if not is_complemented_group(G, SL.labels):
        raise HypothesisFailed(f"{G.name} has a subgroup without a complement")
    L = SL.lattice
    irreducibles = join_irreducible_subgroups(SL)
    witnesses = frankl_witnesses(L)
    average, ok = averaged_frankl(L)
    return ComplementedReport(G.name, L.n, irreducibles, witnesses,
                              witnesses == irreducibles, average, ok)


@dataclass
class IntervalSweep:
    group: str
    intervals: int = 0
    failures: list = field(default_factory=list)
    with_left_modular_coatom: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures and self.with_left_modular_coatom == self.intervals

    def to_dict(self):
        return {
            "group": self.group,
            "intervals": self.intervals,
            "failures": [list(f) for f in self.failures],
            "with_left_modular_coatom": self.with_left_modular_coatom,
            "passed": self.passed,
        }


def verify_solvable_intervals(G: FiniteGroup, SL: Optional[SubgroupLattice] = None) -> IntervalSweep:
    if not is_solvable(G):
        raise NotSolvable(f"{G.name} is not solvable")
    SL = build_subgroup_lattice(G) if SL is None else SL
    L = SL.lattice
    sweep = IntervalSweep(G.name)
    for lo in range(L.n):
        for hi in bits(L.up[lo] & ~(1 << lo)):
            sweep.intervals += 1
            if left_modular_coatom_in(L, lo, hi) is not None:
                sweep.with_left_modular_coatom += 1
            sub, _ = interval(L, lo, hi).as_lattice()
            if not frankl_brute_force(sub).satisfied:
                sweep.failures.append((lo, hi))
    return sweep


def averaged_ratio(SL: SubgroupLattice) -> Fraction:
    """Mean up-set size over join-irreducibles, divided by ``|L(G)|``."""
    average, _ = averaged_frankl(SL.lattice)
    return average / SL.lattice.n


def normal_subgroups_left_modular(SL: SubgroupLattice) -> bool:
    return all(is_left_modular(SL.lattice, SL.element_of(N))
               for N in SL.labels if is_normal(SL.group, N))
