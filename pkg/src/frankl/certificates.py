"""
Explicit injection certificates for Frankl's condition.

Given a modular-enough element ``m != top`` and join-irreducibles ``x, y``
with ``m | x | y == top``, the up-set of the smaller of ``x, y`` injects
into its complement: the part below ``x | y`` maps into the partner's
up-set, and everything above ``s = x | y`` maps to ``m & alpha``.  The
second map is injective because ``s | (m & alpha) == alpha``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .analysis import (CertificationPath, FranklReport, frankl_brute_force,
                       frankl_via_left_modular_coatom, is_left_modular)
from .lattice import FiniteLattice, LatticeError, bits, join_irreducibles


class PreconditionViolated(LatticeError):
    pass


class InternalCheckFailed(RuntimeError):
    pass


@dataclass(frozen=True)
class InjectionCertificate:
    witness: int
    partner: int
    modular_element: int
    phi1: dict = field(hash=False)
    phi2: dict = field(hash=False)

    @property
    def combined(self) -> dict:
        return {**self.phi1, **self.phi2}

    def to_dict(self) -> dict:
        return {
            "witness": self.witness,
            "partner": self.partner,
            "modular_element": self.modular_element,
            "phi1": [[k, v] for k, v in sorted(self.phi1.items())],
            "phi2": [[k, v] for k, v in sorted(self.phi2.items())],
        }


def _check_common(L, m, x, y):
    if m == L.top:
        raise PreconditionViolated("modular element must differ from top")
    for e in (x, y):
        if len(L.lower_covers[e]) != 1:
            raise PreconditionViolated(f"element {e} is not join-irreducible")
    if L.join_table[m][L.join_table[x][y]] != L.top:
        raise PreconditionViolated("m | x | y is not top")


def _order_by_up_size(L, x, y):
    key = lambda e: (L.up_size(e), e)
    return (x, y) if key(x) <= key(y) else (y, x)


def normalize_triple(L: FiniteLattice, m: int, x: int, y: int) -> tuple[int, int, int]:
    """
    Move to a triple with neither ``x`` nor ``y`` below ``m`` and
    ``|[x, top]| <= |[y, top]|`` (ties: smaller index becomes ``x``).
    """
    _check_common(L, m, x, y)
    x_low, y_low = L.leq(x, m), L.leq(y, m)
    if x_low and y_low:
        raise PreconditionViolated("both x and y lie below m; inconsistent input")
    if x_low:
        x = y
    elif y_low:
        y = x
    x, y = _order_by_up_size(L, x, y)
    return m, x, y


def _assemble(L, m, x, y):
    s = L.join_table[x][y]
    above_s = L.up[s]
    domain1 = list(bits(L.up[x] & ~above_s))
    target1 = list(bits(L.up[y] & ~above_s))
    if len(domain1) > len(target1):
        raise InternalCheckFailed("first map has no room: partner up-set is smaller")
    phi1 = dict(zip(domain1, target1))
    phi2 = {alpha: L.meet_table[m][alpha] for alpha in bits(above_s)}
    cert = InjectionCertificate(x, y, m, phi1, phi2)
    problem = certificate_problem(L, cert)
    if problem is not None:
        raise InternalCheckFailed(problem)
    return cert


def build_certificate(L: FiniteLattice, m: int, x: int, y: int) -> InjectionCertificate:
    if not is_left_modular(L, m):
        raise PreconditionViolated(f"element {m} is not left-modular")
    m, x, y = normalize_triple(L, m, x, y)
    return _assemble(L, m, x, y)


def generalized_modularity_holds(L: FiniteLattice, m: int, x: int, y: int) -> bool:
    """``(s | m) & alpha == s | (m & alpha)`` for every ``alpha`` above ``s = x | y``."""
    meet, join = L.meet_table, L.join_table
    s = join[x][y]
    sm = join[s][m]
    return all(meet[sm][alpha] == join[s][meet[m][alpha]] for alpha in bits(L.up[s]))


def build_certificate_generalized(L: FiniteLattice, m: int, x: int, y: int) -> InjectionCertificate:
    _check_common(L, m, x, y)
    if L.leq(x, m) or L.leq(y, m):
        raise PreconditionViolated("x and y must not lie below m")
    if not generalized_modularity_holds(L, m, x, y):
        raise PreconditionViolated(f"element {m} fails the relaxed modular identity above x | y")
    x, y = _order_by_up_size(L, x, y)
    return _assemble(L, m, x, y)


def certificate_problem(L: FiniteLattice, c: InjectionCertificate) -> Optional[str]:
    """Re-check a certificate from scratch; return the first failed obligation."""
    if not 0 <= c.witness < L.n:
        return "witness out of range"
    if len(L.lower_covers[c.witness]) != 1:
        return "witness is not join-irreducible"
    up = L.up[c.witness]
    d1 = set(c.phi1)
    d2 = set(c.phi2)
    if d1 & d2:
        return "domains overlap"
    domain = 0
    for e in d1 | d2:
        if not 0 <= e < L.n:
            return "domain element out of range"
        domain |= 1 << e
    if domain != up:
        return "domains do not partition the up-set"
    images = list(c.phi1.values()) + list(c.phi2.values())
    if len(set(images)) != len(images):
        return "not injective"
    for v in images:
        if not 0 <= v < L.n:
            return "image element out of range"
        if (up >> v) & 1:
            return "image intersects up-set"
    if 2 * up.bit_count() > L.n:
        return "up-set exceeds half the lattice"
    return None


def verify_certificate(L: FiniteLattice, c: InjectionCertificate) -> bool:
    return certificate_problem(L, c) is None


def find_modular_triple(L: FiniteLattice, relaxed: bool = False) -> Optional[tuple[int, int, int]]:
    """
    First ``(m, x, y)`` by index meeting the certificate hypotheses.

    With ``relaxed`` the relaxed identity replaces left-modularity and
    ``x, y`` must avoid the down-set of ``m``.
    """
    irreducibles = join_irreducibles(L)
    for m in range(L.n - 1):
        modular = relaxed or is_left_modular(L, m)
        if not modular:
            continue
        for i, x in enumerate(irreducibles):
            for y in irreducibles[i:]:
                if L.join_table[m][L.join_table[x][y]] != L.top:
                    continue
                if not relaxed:
                    return m, x, y
                if L.leq(x, m) or L.leq(y, m):
                    continue
                if generalized_modularity_holds(L, m, x, y):
                    return m, x, y
    return None


def certify_lattice(L: FiniteLattice) -> FranklReport:
    """
    Certify Frankl's condition by the most structural route available:
    top join-irreducible or a left-modular coatom, then any left-modular
    triple, then a relaxed triple, and finally brute force.
    """
    report = frankl_via_left_modular_coatom(L)
    if report is not None:
        return report
    for relaxed, path, build in ((False, CertificationPath.MODULAR_INJECTION, build_certificate),
                                 (True, CertificationPath.RELAXED_INJECTION,
                                  build_certificate_generalized)):
        triple = find_modular_triple(L, relaxed)
        if triple is not None:
            cert = build(L, *triple)
            return FranklReport(True, L.n, cert.witness, L.up_size(cert.witness), path, cert)
    return frankl_brute_force(L)
