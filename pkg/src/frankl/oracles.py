"""
Slow, independent reference computations.

Nothing here touches the fast paths (canonical labeling, semilattice
growth, cyclic-join subgroup search); they exist to cross-check them.
"""

from __future__ import annotations

import itertools

from .groups import FiniteGroup, Subgroup

LABELED_ORACLE_MAX = 7
NATURAL_ORACLE_MAX = 8
SUBSET_ORACLE_MAX = 16


def _is_lattice(rel, n):
    """``rel[a][b]`` means a <= b; brute-force lub/glb existence."""
    for a in range(n):
        for b in range(a + 1, n):
            uppers = [c for c in range(n) if rel[a][c] and rel[b][c]]
            if len([c for c in uppers if all(rel[c][d] for d in uppers)]) != 1:
                return False
            lowers = [c for c in range(n) if rel[c][a] and rel[c][b]]
            if len([c for c in lowers if all(rel[d][c] for d in lowers)]) != 1:
                return False
    return True


def _with_bounds(inner, m):
    """Wrap an inner poset on ``m`` points with a new bottom and top."""
    n = m + 2
    rel = [[False] * n for _ in range(n)]
    for a in range(n):
        rel[0][a] = True
        rel[a][n - 1] = True
        rel[a][a] = True
    for i in range(m):
        for j in range(m):
            if inner[i][j]:
                rel[i + 1][j + 1] = True
    return rel


def _count_orbits(posets, m):
    """Count isomorphism classes by marking the full relabeling orbit of each new poset."""
    seen = set()
    classes = 0
    perms = list(itertools.permutations(range(m)))
    for inner in posets:
        code = tuple(inner[i][j] for i in range(m) for j in range(m))
        if code in seen:
            continue
        classes += 1
        for p in perms:
            seen.add(tuple(inner[p[i]][p[j]] for i in range(m) for j in range(m)))
    return classes


def labeled_posets(m: int):
    """Every partial order on the labeled points ``0..m-1`` (as boolean matrices)."""
    def grow(rel, k):
        if k == m:
            yield [row[:] for row in rel]
            return
        for choice in itertools.product((0, 1, 2), repeat=k):
            below = {i for i, c in enumerate(choice) if c == 1}
            above = {i for i, c in enumerate(choice) if c == 2}
            # below down-closed, above up-closed, and below <= above already
            if any(rel[j][i] for i in below for j in range(k) if j not in below):
                continue
            if any(rel[i][j] for i in above for j in range(k) if j not in above):
                continue
            if not all(rel[b][a] for a in above for b in below):
                continue
            for row in rel:
                row.append(False)
            rel.append([False] * (k + 1))
            rel[k][k] = True
            for i in below:
                rel[i][k] = True
            for i in above:
                rel[k][i] = True
            yield from grow(rel, k + 1)
            rel.pop()
            for row in rel:
                row.pop()

    yield from grow([], 0)


def natural_posets(m: int):
    """Posets on ``0..m-1`` where ``i <= j`` implies ``i <= j`` as integers."""
    def grow(rel, k):
        if k == m:
            yield [row[:] for row in rel]
            return
        for r in range(k + 1):
            for below in itertools.combinations(range(k), r):
                bset = set(below)
                if any(rel[j][i] for i in bset for j in range(k) if j not in bset):
                    continue
                for row in rel:
                    row.append(False)
                rel.append([False] * (k + 1))
                rel[k][k] = True
                for i in bset:
                    rel[i][k] = True
                yield from grow(rel, k + 1)
                rel.pop()
                for row in rel:
                    row.pop()

    yield from grow([], 0)


def _lattice_class_count(n, posets):
    if n == 1:
        return 1
    if n == 2:
        return 1
    m = n - 2
    inner_lattices = [inner for inner in posets(m) if _is_lattice(_with_bounds(inner, m), n)]
    return _count_orbits(inner_lattices, m)


def labeled_lattice_count(n: int) -> int:
    """Unlabeled lattices on ``n`` elements via all labeled posets on the inner points."""
    if n > LABELED_ORACLE_MAX:
        raise ValueError(f"labeled-poset oracle is limited to n <= {LABELED_ORACLE_MAX}")
    return _lattice_class_count(n, labeled_posets)


def natural_lattice_count(n: int) -> int:
    """Same count via naturally labeled posets only, a differently ordered generation."""
    if n > NATURAL_ORACLE_MAX:
        raise ValueError(f"natural-poset oracle is limited to n <= {NATURAL_ORACLE_MAX}")
    return _lattice_class_count(n, natural_posets)


def lattices_isomorphic(A, B) -> bool:
    """Brute-force order isomorphism between two FiniteLattices."""
    if A.n != B.n:
        return False
    n = A.n
    if sorted(A.up_size(e) for e in range(n)) != sorted(B.up_size(e) for e in range(n)):
        return False
    for p in itertools.permutations(range(n)):
        if all(A.leq(a, b) == B.leq(p[a], p[b]) for a in range(n) for b in range(n)):
            return True
    return False


def subgroups_by_subset_closure(G: FiniteGroup) -> list[Subgroup]:
    """Every subset containing the identity that is closed under the table."""
    if G.n > SUBSET_ORACLE_MAX:
        raise ValueError(f"subset oracle is limited to order <= {SUBSET_ORACLE_MAX}")
    found = []
    others = range(1, G.n)
    for r in range(G.n):
        for rest in itertools.combinations(others, r):
            members = (0,) + rest
            mask = sum(1 << g for g in members)
            if all((mask >> G.mul[a][b]) & 1 for a in members for b in members):
                found.append(Subgroup(mask))
    return sorted(found, key=lambda s: s.sort_key)
