"""
Exhaustive generation of unlabeled finite lattices.

A lattice on ``n`` elements is a meet-semilattice on ``n - 1`` elements
with a top adjoined, and removing a maximal element from a finite
meet-semilattice leaves a meet-semilattice (it is an order ideal).  So we
grow isomorphism classes of meet-semilattices one maximal element at a
time, rejecting duplicates by canonical form at every level.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .lattice import FiniteLattice, LatticeError, bits

MAX_ENUMERATION_SIZE = 10

# unlabeled lattice counts for n = 0..10
KNOWN_LATTICE_COUNTS = (0, 1, 1, 1, 2, 5, 15, 53, 222, 1078, 5994)


class CapExceeded(LatticeError):
    pass


def _refine(n, up, down, cell):
    """Iterate to the coarsest equitable refinement, keeping cell order."""
    while True:
        keys = []
        for v in range(n):
            ups = tuple(sorted(cell[u] for u in bits(up[v])))
            downs = tuple(sorted(cell[d] for d in bits(down[v])))
            keys.append((cell[v], ups, downs))
        ranking = {k: i for i, k in enumerate(sorted(set(keys)))}
        new = [ranking[k] for k in keys]
        if len(ranking) == len(set(cell)):
            return new
        cell = new


def _code(order, down):
    position = {v: i for i, v in enumerate(order)}
    code = 0
    for v in order:
        row = 0
        for d in bits(down[v]):
            row |= 1 << position[d]
        code = (code << len(order)) | row
    return code


def canonical_labeling(down: list[int]) -> tuple[int, list[int]]:
    """
    Canonical form of a finite poset given by strict-or-not down-set masks.

    Returns ``(code, order)`` where ``order[i]`` is the original element
    placed at canonical position ``i``.  Isomorphic posets get equal codes,
    and ``order`` is always a linear extension.
    """
    n = len(down)
    sdown = [d & ~(1 << v) for v, d in enumerate(down)]
    sup = [0] * n
    for v in range(n):
        for d in bits(sdown[v]):
            sup[d] |= 1 << v
    depth = [0] * n
    for v in sorted(range(n), key=lambda v: sdown[v].bit_count()):
        depth[v] = max((depth[d] + 1 for d in bits(sdown[v])), default=0)
    initial = [(depth[v], sdown[v].bit_count(), sup[v].bit_count()) for v in range(n)]
    ranking = {k: i for i, k in enumerate(sorted(set(initial)))}
    cell = _refine(n, sup, sdown, [ranking[k] for k in initial])

    best = None

    def search(cell):
        nonlocal best
        counts = Counter(cell)
        target = next((c for c in sorted(counts) if counts[c] > 1), None)
        if target is None:
            order = sorted(range(n), key=cell.__getitem__)
            code = _code(order, down)
            if best is None or code < best[0]:
                best = (code, order)
            return
        tried = []
        for v in range(n):
            if cell[v] != target:
                continue
            # swapping twins is an automorphism that fixes the partition
            if any(sup[u] == sup[v] and sdown[u] == sdown[v] for u in tried):
                continue
            tried.append(v)
            split = [c + 1 if c > target or (c == target and u != v) else c
                     for u, c in enumerate(cell)]
            search(_refine(n, sup, sdown, split))

    search(cell)
    return best


def _relabel(down, order):
    position = {v: i for i, v in enumerate(order)}
    out = []
    for v in order:
        row = 0
        for d in bits(down[v]):
            row |= 1 << position[d]
        out.append(row)
    return out


def _ideals(down, size):
    """All nonempty order ideals of a linearly-extended poset, as masks."""
    strict = [d & ~(1 << v) for v, d in enumerate(down[:size])]

    def walk(v, mask):
        if v == size:
            yield mask
            return
        yield from walk(v + 1, mask)
        if strict[v] & ~mask == 0:
            yield from walk(v + 1, mask | (1 << v))

    # element 0 is the bottom and belongs to every nonempty ideal
    yield from walk(1, 1)


def _is_meet_extension(down, ideal):
    """Adding a new element with strict down-set ``ideal`` keeps all meets."""
    for a, d in enumerate(down):
        lower = d & ideal
        g = lower.bit_length() - 1
        if down[g] != lower:
            return False
    return True


def _extend_level(level):
    seen = {}
    for down in level:
        k = len(down)
        for ideal in _ideals(down, k):
            if not _is_meet_extension(down, ideal):
                continue
            grown = down + [ideal | (1 << k)]
            code, order = canonical_labeling(grown)
            if code not in seen:
                seen[code] = _relabel(grown, order)
    return [seen[c] for c in sorted(seen)]


def meet_semilattices(k: int) -> list[list[int]]:
    """Canonical down-set lists of all meet-semilattices on ``k`` elements."""
    level = [[1]]
    for _ in range(k - 1):
        level = _extend_level(level)
    return level


def _check_size(n):
    if n < 1:
        raise LatticeError("lattice size must be positive")
    if n > MAX_ENUMERATION_SIZE:
        raise CapExceeded(f"enumeration is capped at {MAX_ENUMERATION_SIZE} elements")


def enumerate_lattices(n: int) -> Iterator[FiniteLattice]:
    """Yield each unlabeled lattice on ``n`` elements once, in canonical-code order."""
    _check_size(n)
    if n == 1:
        yield FiniteLattice.from_down_sets([1])
        return
    full = (1 << n) - 1
    found = []
    for down in meet_semilattices(n - 1):
        code, order = canonical_labeling(down + [full])
        found.append((code, _relabel(down + [full], order)))
    found.sort()
    for _, down in found:
        yield FiniteLattice.from_down_sets(down)


def lattice_count(n: int) -> int:
    return sum(1 for _ in enumerate_lattices(n))


@dataclass
class ScanSummary:
    sizes: dict = field(default_factory=dict)
    checked: int = 0
    counterexamples: list = field(default_factory=list)
    paths: Counter = field(default_factory=Counter)
    comodernistic: int = 0
    dually_semimodular: int = 0
    left_modular_chain: int = 0
    averaged_satisfied: int = 0
    too_small: int = 0

    def merge(self, other: "ScanSummary") -> "ScanSummary":
        for n, c in other.sizes.items():
            self.sizes[n] = self.sizes.get(n, 0) + c
        self.checked += other.checked
        self.counterexamples.extend(other.counterexamples)
        self.paths.update(other.paths)
        self.comodernistic += other.comodernistic
        self.dually_semimodular += other.dually_semimodular
        self.left_modular_chain += other.left_modular_chain
        self.averaged_satisfied += other.averaged_satisfied
        self.too_small += other.too_small
        return self

    def to_dict(self) -> dict:
        return {
            "sizes": {str(n): c for n, c in sorted(self.sizes.items())},
            "checked": self.checked,
            "counterexamples": len(self.counterexamples),
            "paths": {p: self.paths[p] for p in sorted(self.paths)},
            "comodernistic": self.comodernistic,
            "dually_semimodular": self.dually_semimodular,
            "left_modular_chain": self.left_modular_chain,
            "averaged_satisfied": self.averaged_satisfied,
        }


def strongest_path(L: FiniteLattice) -> str:
    """Name the most structural certification route available for ``L``."""
    from .certificates import certify_lattice

    return certify_lattice(L).certification_path.value


def scan_lattice(L: FiniteLattice, summary: ScanSummary) -> None:
    from .analysis import (averaged_frankl, frankl_brute_force, has_left_modular_maximal_chain,
                           is_comodernistic, is_dually_semimodular)

    summary.sizes[L.n] = summary.sizes.get(L.n, 0) + 1
    if L.n < 2:
        summary.too_small += 1
        return
    summary.checked += 1
    if not frankl_brute_force(L).satisfied:
        summary.counterexamples.append(L)
    summary.paths[strongest_path(L)] += 1
    summary.comodernistic += is_comodernistic(L)
    summary.dually_semimodular += is_dually_semimodular(L)
    summary.left_modular_chain += has_left_modular_maximal_chain(L) is not None
    summary.averaged_satisfied += averaged_frankl(L)[1]


def _scan_size(n):
    summary = ScanSummary()
    for L in enumerate_lattices(n):
        scan_lattice(L, summary)
    return summary


def scan_frankl(n_max: int, n_min: int = 1, jobs: Optional[int] = None) -> ScanSummary:
    """Brute-force Frankl over every lattice with ``n_min <= n <= n_max`` elements."""
    _check_size(n_max)
    sizes = range(max(n_min, 1), n_max + 1)
    summary = ScanSummary()
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_scan_size, sizes))
    else:
        parts = [_scan_size(n) for n in sizes]
    for part in parts:
        summary.merge(part)
    return summary
