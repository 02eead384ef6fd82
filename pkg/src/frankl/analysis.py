"""Structural predicates and direct Frankl checks on finite lattices."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import TYPE_CHECKING, Optional

from .lattice import FiniteLattice, LatticeError, bits, coatoms, join_irreducibles

if TYPE_CHECKING:
    from .certificates import InjectionCertificate


class TooSmall(LatticeError):
    pass


class NoJoinIrreducibles(LatticeError):
    pass


class CertificationPath(str, Enum):
    BRUTE_FORCE = "brute-force"
    MODULAR_INJECTION = "modular-injection"
    RELAXED_INJECTION = "relaxed-injection"
    LEFT_MODULAR_COATOM = "left-modular-coatom"
    COMODERNISTIC = "comodernistic"
    TOP_JOIN_IRREDUCIBLE = "top-join-irreducible"


@dataclass
class FranklReport:
    satisfied: bool
    lattice_size: int
    witness: Optional[int] = None
    upper_interval_size: Optional[int] = None
    certification_path: CertificationPath = CertificationPath.BRUTE_FORCE
    certificate: Optional["InjectionCertificate"] = None

    def __post_init__(self):
        if self.satisfied and self.witness is not None:
            assert 2 * self.upper_interval_size <= self.lattice_size


def is_left_modular(L: FiniteLattice, m: int, within: Optional[int] = None) -> bool:
    """
    True iff ``a | (m & b) == (a | m) & b`` for all ``a < b``.

    ``within`` restricts the check to a sublattice given as a member
    bitmask (an interval, say); meets and joins of an interval agree with
    the ambient ones, so the ambient tables are reused.
    """
    meet, join = L.meet_table, L.join_table
    members = range(L.n) if within is None else list(bits(within))
    for b in members:
        mb = meet[m][b]
        below = L.down[b] & ~(1 << b)
        if within is not None:
            below &= within
        for a in bits(below):
            if join[a][mb] != meet[join[a][m]][b]:
                return False
    return True


def left_modular_elements(L: FiniteLattice) -> list[int]:
    return [m for m in range(L.n) if is_left_modular(L, m)]


def frankl_brute_force(L: FiniteLattice) -> FranklReport:
    """First join-irreducible (by index) whose up-set holds at most half of L."""
    if L.n < 2:
        raise TooSmall("Frankl's condition needs at least two elements")
    for a in join_irreducibles(L):
        size = L.up_size(a)
        if 2 * size <= L.n:
            return FranklReport(True, L.n, a, size)
    return FranklReport(False, L.n)


def frankl_witnesses(L: FiniteLattice) -> list[int]:
    return [a for a in join_irreducibles(L) if 2 * L.up_size(a) <= L.n]


def averaged_frankl(L: FiniteLattice) -> tuple[Fraction, bool]:
    irreducibles = join_irreducibles(L)
    if not irreducibles:
        raise NoJoinIrreducibles("lattice has no join-irreducible elements")
    average = Fraction(sum(L.up_size(a) for a in irreducibles), len(irreducibles))
    return average, 2 * average <= L.n


def dual_semimodularity_failure(L: FiniteLattice) -> Optional[tuple[int, int]]:
    """Return a pair ``(a, b)`` with ``a`` covered by ``a | b`` but ``a & b`` not covered by ``b``."""
    for a in range(L.n):
        for b in range(L.n):
            j = L.join_table[a][b]
            if a in L.lower_covers[j] and L.meet_table[a][b] not in L.lower_covers[b]:
                return a, b
    return None


def is_dually_semimodular(L: FiniteLattice) -> bool:
    return dual_semimodularity_failure(L) is None


def has_left_modular_maximal_chain(L: FiniteLattice) -> Optional[list[int]]:
    """A maximal chain of left-modular elements from bottom to top, or None."""
    modular = {m for m in range(L.n) if is_left_modular(L, m)}
    dead = set()

    def extend(path):
        last = path[-1]
        if last == L.top:
            return path
        for nxt in L.upper_covers[last]:
            if nxt in modular and nxt not in dead:
                found = extend(path + [nxt])
                if found:
                    return found
                dead.add(nxt)
        return None

    if L.bottom not in modular:
        return None
    return extend([L.bottom])


def left_modular_coatom_in(L: FiniteLattice, lo: int, hi: int) -> Optional[int]:
    """A coatom of ``[lo, hi]`` that is left-modular inside that interval."""
    members = L.up[lo] & L.down[hi]
    for c in L.lower_covers[hi]:
        if (members >> c) & 1 and is_left_modular(L, c, within=members):
            return c
    return None


def is_comodernistic(L: FiniteLattice) -> bool:
    for lo in range(L.n):
        for hi in bits(L.up[lo] & ~(1 << lo)):
            if left_modular_coatom_in(L, lo, hi) is None:
                return False
    return True


def frankl_via_left_modular_coatom(L: FiniteLattice) -> Optional[FranklReport]:
    from .certificates import build_certificate

    if L.n < 2:
        raise TooSmall("Frankl's condition needs at least two elements")
    if len(L.lower_covers[L.top]) == 1:
        return FranklReport(True, L.n, L.top, 1, CertificationPath.TOP_JOIN_IRREDUCIBLE)
    irreducibles = join_irreducibles(L)
    for m in coatoms(L):
        if not is_left_modular(L, m):
            continue
        for x in irreducibles:
            if L.join_table[m][x] == L.top:
                cert = build_certificate(L, m, x, x)
                return FranklReport(True, L.n, cert.witness, L.up_size(cert.witness),
                                    CertificationPath.LEFT_MODULAR_COATOM, cert)
    return None
