"""
Finite groups as multiplication tables.

Elements are indices ``0..n-1`` with ``0`` the identity.  Subgroups are
bitmasks over element indices, so intersection is ``&`` and containment is
a mask test.
"""

from __future__ import annotations

import itertools
import os
import random
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .lattice import bits

DEFAULT_MAX_ORDER = 2000
FULL_ASSOCIATIVITY_CHECK = 64


class GroupError(ValueError):
    pass


class BadSpec(GroupError):
    pass


class OrderTooLarge(GroupError):
    pass


class NotAGroup(GroupError):
    pass


class NotNormal(GroupError):
    pass


class GroupFormatError(GroupError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def max_order() -> int:
    value = os.environ.get("FRANKL_MAX_ORDER")
    if value:
        try:
            cap = int(value)
        except ValueError:
            raise GroupError(f"FRANKL_MAX_ORDER must be an integer, got {value!r}") from None
        if cap < 1:
            raise GroupError("FRANKL_MAX_ORDER must be positive")
        return cap
    return DEFAULT_MAX_ORDER


def _check_order(n, what="group"):
    cap = max_order()
    if n > cap:
        raise OrderTooLarge(f"{what} of order {n} exceeds the cap of {cap}")


def prime_factors(k: int) -> list[int]:
    out, p = [], 2
    while p * p <= k:
        if k % p == 0:
            out.append(p)
            while k % p == 0:
                k //= p
        p += 1
    if k > 1:
        out.append(k)
    return out


def is_prime(k: int) -> bool:
    return k > 1 and prime_factors(k) == [k]


def is_prime_power(k: int) -> bool:
    return k > 1 and len(prime_factors(k)) == 1


class FiniteGroup:
    """A group given by its full multiplication table; index 0 is the identity."""

    def __init__(self, mul: Sequence[Sequence[int]], labels=None, name: str = "group",
                 validate: bool = True):
        n = len(mul)
        if n < 1:
            raise NotAGroup("a group needs at least one element")
        _check_order(n)
        self.n = n
        self.mul = tuple(tuple(row) for row in mul)
        self.name = name
        self.labels = tuple(labels) if labels is not None else None
        if validate:
            self._validate()
        inv = [0] * n
        for a in range(n):
            inv[a] = self.mul[a].index(0)
        self.inv = tuple(inv)
        self.element_order = tuple(self._order_of(a) for a in range(n))

    @property
    def identity(self) -> int:
        return 0

    @property
    def order(self) -> int:
        return self.n

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, n={self.n})"

    def _validate(self):
        n, mul = self.n, self.mul
        full = set(range(n))
        for a, row in enumerate(mul):
            if len(row) != n:
                raise NotAGroup(f"row {a} has {len(row)} entries, expected {n}")
            if set(row) != full:
                raise NotAGroup(f"row {a} is not a permutation of the elements")
        for b in range(n):
            if {mul[a][b] for a in range(n)} != full:
                raise NotAGroup(f"column {b} is not a permutation of the elements")
        if list(mul[0]) != list(range(n)) or [mul[a][0] for a in range(n)] != list(range(n)):
            raise NotAGroup("element 0 is not the identity")
        if n <= FULL_ASSOCIATIVITY_CHECK:
            triples = itertools.product(range(n), repeat=3)
        else:
            rng = random.Random(n)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n))
                       for _ in range(20000))
        for a, b, c in triples:
            if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                raise NotAGroup(f"associativity fails on ({a}, {b}, {c})")

    def _order_of(self, a):
        k, x = 1, a
        while x != 0:
            x = self.mul[x][a]
            k += 1
        return k

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels is not None else str(a)

    def power(self, a: int, k: int) -> int:
        x = 0
        for _ in range(k % self.element_order[a]):
            x = self.mul[x][a]
        return x

    @property
    def whole(self) -> "Subgroup":
        return Subgroup((1 << self.n) - 1)

    @property
    def trivial(self) -> "Subgroup":
        return Subgroup(1)


@dataclass(frozen=True)
class Subgroup:
    mask: int

    @property
    def order(self) -> int:
        return self.mask.bit_count()

    def __len__(self):
        return self.mask.bit_count()

    def __contains__(self, g):
        return bool((self.mask >> g) & 1)

    @property
    def elements(self) -> tuple[int, ...]:
        return tuple(bits(self.mask))

    @property
    def sort_key(self):
        return (self.order, self.mask)

    def issubset(self, other: "Subgroup") -> bool:
        return self.mask & ~other.mask == 0

    def __and__(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.mask & other.mask)


def _closure(G: FiniteGroup, gens: Iterable[int]) -> int:
    """Mask of the subgroup generated by ``gens``."""
    gens = [g for g in dict.fromkeys(gens) if g != 0]
    mul = G.mul
    mask = 1
    found = [0]
    i = 0
    while i < len(found):
        row = mul[found[i]]
        i += 1
        for g in gens:
            p = row[g]
            if not (mask >> p) & 1:
                mask |= 1 << p
                found.append(p)
    return mask


def _closure_of_mask(G: FiniteGroup, seed: int) -> int:
    """Smallest subgroup containing the element set ``seed``, via a greedy generating set."""
    gens = []
    mask = 1
    for e in bits(seed):
        if not (mask >> e) & 1:
            gens.append(e)
            mask = _closure(G, gens)
    return mask


def generated_subgroup(G: FiniteGroup, seed: Iterable[int]) -> Subgroup:
    seed_mask = 0
    for g in seed:
        if not 0 <= g < G.n:
            raise GroupError(f"element {g} out of range for a group of order {G.n}")
        seed_mask |= 1 << g
    return Subgroup(_closure_of_mask(G, seed_mask))


def subgroup_join(G: FiniteGroup, H: Subgroup, K: Subgroup) -> Subgroup:
    return Subgroup(_closure_of_mask(G, H.mask | K.mask))


def cyclic_subgroup(G: FiniteGroup, g: int) -> Subgroup:
    mask, x = 1, g
    while x != 0:
        mask |= 1 << x
        x = G.mul[x][g]
    return Subgroup(mask)


def is_cyclic(G: FiniteGroup, H: Subgroup) -> bool:
    return any(G.element_order[h] == H.order for h in H.elements)


def all_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """
    Every subgroup once, sorted by ``(order, mask)``.

    Each subgroup is a join of cyclic subgroups, so closing the cyclic
    subgroups under "join with one more cyclic subgroup" reaches them all.
    """
    _check_order(G.n, "subgroup enumeration for a group")
    cyclic = {}
    for g in range(G.n):
        cyclic.setdefault(cyclic_subgroup(G, g).mask, g)
    known = {mask: [g] for mask, g in cyclic.items()}
    queue = list(known)
    while queue:
        nxt = []
        for h in queue:
            gens = known[h]
            for c, g in cyclic.items():
                if c & ~h == 0:
                    continue
                j = _closure(G, gens + [g])
                if j not in known:
                    known[j] = gens + [g]
                    nxt.append(j)
        queue = nxt
    return sorted((Subgroup(m) for m in known), key=lambda s: s.sort_key)


def conjugate(G: FiniteGroup, g: int, h: int) -> int:
    return G.mul[G.mul[g][h]][G.inv[g]]


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    mask = H.mask
    for g in range(G.n):
        for h in H.elements:
            if not (mask >> conjugate(G, g, h)) & 1:
                return False
    return True


def normal_subgroups(G: FiniteGroup) -> list[Subgroup]:
    return [H for H in all_subgroups(G) if is_normal(G, H)]


def product_set(G: FiniteGroup, A: Subgroup, B: Subgroup) -> int:
    """Mask of the element set ``AB``."""
    mask = 0
    for a in A.elements:
        row = G.mul[a]
        for b in B.elements:
            mask |= 1 << row[b]
    return mask


def cosets(G: FiniteGroup, N: Subgroup) -> list[int]:
    """Left cosets ``gN`` as masks, ordered by smallest element (identity coset first)."""
    seen = 0
    out = []
    for g in range(G.n):
        if (seen >> g) & 1:
            continue
        coset = 0
        for h in N.elements:
            coset |= 1 << G.mul[g][h]
        seen |= coset
        out.append(coset)
    return out


def quotient_with_cosets(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, list[int]]:
    if not is_normal(G, N):
        raise NotNormal("quotient requires a normal subgroup")
    classes = cosets(G, N)
    where = [0] * G.n
    for i, c in enumerate(classes):
        for g in bits(c):
            where[g] = i
    reps = [(c & -c).bit_length() - 1 for c in classes]
    mul = [[where[G.mul[a][b]] for b in reps] for a in reps]
    Q = FiniteGroup(mul, name=f"{G.name}/N{N.order}")
    return Q, classes


def quotient(G: FiniteGroup, N: Subgroup) -> FiniteGroup:
    return quotient_with_cosets(G, N)[0]


def prime_power_elements(G: FiniteGroup) -> list[int]:
    return [g for g in range(G.n) if is_prime_power(G.element_order[g])]


def two_prime_power_generated(G: FiniteGroup) -> Optional[tuple[int, int]]:
    """
    A pair of prime-power-order elements generating ``G``, or None.

    A single generator ``g`` is reported as ``(g, g)``; the trivial group is
    generated by nothing and reported as ``(0, 0)``.
    """
    if G.n == 1:
        return (0, 0)
    candidates = prime_power_elements(G)
    for g in candidates:
        if G.element_order[g] == G.n:
            return (g, g)
    full = (1 << G.n) - 1
    for i, a in enumerate(candidates):
        for b in candidates[i + 1:]:
            if _closure(G, [a, b]) == full:
                return (a, b)
    return None


def pq_generated(G: FiniteGroup, p: int, q: int) -> Optional[tuple[int, int]]:
    if not (is_prime(p) and is_prime(q)):
        raise GroupError(f"({p}, {q}) are not both prime")
    full = (1 << G.n) - 1
    of_p = [g for g in range(G.n) if G.element_order[g] == p]
    of_q = [g for g in range(G.n) if G.element_order[g] == q]
    for a in of_p:
        for b in of_q:
            if _closure(G, [a, b]) == full:
                return (a, b)
    return None


def commutator_subgroup(G: FiniteGroup, H: Optional[Subgroup] = None) -> Subgroup:
    H = G.whole if H is None else H
    mul, inv = G.mul, G.inv
    seed = 0
    elements = H.elements
    for a in elements:
        for b in elements:
            seed |= 1 << mul[mul[inv[a]][inv[b]]][mul[a][b]]
    return Subgroup(_closure_of_mask(G, seed))


def derived_series(G: FiniteGroup) -> list[Subgroup]:
    series = [G.whole]
    while True:
        nxt = commutator_subgroup(G, series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)


def is_solvable(G: FiniteGroup) -> bool:
    return derived_series(G)[-1].order == 1


def complement_of(G: FiniteGroup, H: Subgroup, subgroups: Sequence[Subgroup]) -> Optional[Subgroup]:
    full = (1 << G.n) - 1
    for K in subgroups:
        if (H.mask & K.mask) == 1 and H.order * K.order == G.n \
                and product_set(G, K, H) == full:
            return K
    return None


def is_complemented_group(G: FiniteGroup, subgroups: Optional[Sequence[Subgroup]] = None) -> bool:
    subgroups = all_subgroups(G) if subgroups is None else subgroups
    return all(complement_of(G, H, subgroups) is not None for H in subgroups)


# -- permutations ---------------------------------------------------------

def compose(p: tuple, q: tuple) -> tuple:
    """``p o q``: apply ``q`` first."""
    return tuple(p[i] for i in q)


def cycle_string(p: tuple, one_based: bool = True) -> str:
    seen = set()
    parts = []
    shift = 1 if one_based else 0
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc = []
        i = start
        while i not in seen:
            seen.add(i)
            cyc.append(str(i + shift))
            i = p[i]
        parts.append("(" + " ".join(cyc) + ")")
    return "".join(parts) or "()"


def from_permutations(perms: Iterable[tuple], name: str) -> FiniteGroup:
    perms = sorted(set(perms))
    _check_order(len(perms))
    index = {p: i for i, p in enumerate(perms)}
    mul = [[index[compose(p, q)] for q in perms] for p in perms]
    return FiniteGroup(mul, labels=[cycle_string(p) for p in perms], name=name)


def permutation_closure(generators: Sequence[tuple], degree: int, name: str = "perm") -> FiniteGroup:
    identity = tuple(range(degree))
    found = {identity}
    frontier = [identity]
    cap = max_order()
    while frontier:
        nxt = []
        for p in frontier:
            for g in generators:
                r = compose(p, g)
                if r not in found:
                    found.add(r)
                    nxt.append(r)
                    if len(found) > cap:
                        raise OrderTooLarge(f"permutation group exceeds the cap of {cap}")
        frontier = nxt
    return from_permutations(found, name)


def parse_cycles(text: str, degree: int) -> tuple:
    """Parse disjoint-cycle notation with points ``1..degree``."""
    text = text.strip()
    if not re.fullmatch(r"(\(\s*(\d+(\s+\d+)*)?\s*\))+", text):
        raise GroupError(f"malformed cycle notation {text!r}")
    perm = list(range(degree))
    moved = set()
    for body in re.findall(r"\(([^)]*)\)", text):
        points = [int(t) - 1 for t in body.split()]
        for pt in points:
            if not 0 <= pt < degree:
                raise GroupError(f"point {pt + 1} outside 1..{degree}")
            if pt in moved:
                raise GroupError(f"point {pt + 1} appears twice; cycles must be disjoint")
            moved.add(pt)
        for a, b in zip(points, points[1:] + points[:1]):
            perm[a] = b
    return tuple(perm)


# -- catalogue -------------------------------------------------------------

def _split_args(body: str) -> list[str]:
    depth, start, parts = 0, 0, []
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise BadSpec(f"unbalanced parentheses in {body!r}")
        elif ch == "," and depth == 0:
            parts.append(body[start:i])
            start = i + 1
    if depth != 0:
        raise BadSpec(f"unbalanced parentheses in {body!r}")
    parts.append(body[start:])
    return [p.strip() for p in parts]


def _positive(arg, spec):
    try:
        value = int(arg)
    except ValueError:
        raise BadSpec(f"expected an integer in {spec!r}") from None
    if value < 1:
        raise BadSpec(f"parameter must be positive in {spec!r}")
    return value


def cyclic_group(n: int) -> FiniteGroup:
    _check_order(n)
    return FiniteGroup([[(i + j) % n for j in range(n)] for i in range(n)],
                       labels=[f"a^{i}" for i in range(n)], name=f"cyclic:{n}")


def dihedral_group(n: int) -> FiniteGroup:
    """Order ``2n``: rotations ``r^i`` are indices ``0..n-1``, reflections ``r^i s`` follow."""
    _check_order(2 * n)

    def mul(x, y):
        (a, i), (b, j) = divmod(x, n), divmod(y, n)
        k = (i + (j if a == 0 else -j)) % n
        return ((a + b) % 2) * n + k

    size = 2 * n
    labels = [f"r^{i}" for i in range(n)] + [f"r^{i}s" for i in range(n)]
    return FiniteGroup([[mul(x, y) for y in range(size)] for x in range(size)],
                       labels=labels, name=f"dihedral:{n}")


def dicyclic_group(n: int) -> FiniteGroup:
    """Order ``4n``: ``a`` of order ``2n``, ``x^2 = a^n``, ``x a x^-1 = a^-1``."""
    _check_order(4 * n)
    m = 2 * n

    def mul(u, v):
        (e, i), (f, j) = divmod(u, m), divmod(v, m)
        if e == 0:
            return f * m + (i + j) % m
        if f == 0:
            return m + (i - j) % m
        return (i - j + n) % m

    size = 4 * n
    labels = [f"a^{i}" for i in range(m)] + [f"a^{i}x" for i in range(m)]
    return FiniteGroup([[mul(u, v) for v in range(size)] for u in range(size)],
                       labels=labels, name=f"dicyclic:{n}")


def _parity(p):
    sign, seen = 0, set()
    for s in range(len(p)):
        if s in seen:
            continue
        i, length = s, 0
        while i not in seen:
            seen.add(i)
            i = p[i]
            length += 1
        sign ^= (length - 1) & 1
    return sign


def symmetric_group(n: int) -> FiniteGroup:
    size = 1
    for k in range(2, n + 1):
        size *= k
    _check_order(size)
    return from_permutations(itertools.permutations(range(n)), f"sym:{n}")


def alternating_group(n: int) -> FiniteGroup:
    size = 1
    for k in range(2, n + 1):
        size *= k
    _check_order(max(1, size // 2))
    return from_permutations((p for p in itertools.permutations(range(n)) if _parity(p) == 0),
                             f"alt:{n}")


def elementary_abelian(p: int, k: int) -> FiniteGroup:
    if not is_prime(p):
        raise BadSpec(f"{p} is not prime")
    size = p ** k
    _check_order(size)
    vectors = list(itertools.product(range(p), repeat=k))
    index = {v: i for i, v in enumerate(vectors)}
    mul = [[index[tuple((a + b) % p for a, b in zip(u, v))] for v in vectors] for u in vectors]
    labels = ["(" + ",".join(map(str, v)) + ")" for v in vectors]
    return FiniteGroup(mul, labels=labels, name=f"elem:{p}^{k}")


def direct_product(A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
    _check_order(A.n * B.n)
    nb = B.n
    size = A.n * nb
    mul = [[A.mul[x // nb][y // nb] * nb + B.mul[x % nb][y % nb] for y in range(size)]
           for x in range(size)]
    labels = [f"({A.label(x // nb)},{B.label(x % nb)})" for x in range(size)]
    return FiniteGroup(mul, labels=labels, name=f"direct:({A.name},{B.name})")


def from_catalogue(spec: str) -> FiniteGroup:
    spec = spec.strip()
    kind, sep, arg = spec.partition(":")
    if not sep:
        raise BadSpec(f"group spec {spec!r} lacks ':'")
    kind, arg = kind.strip(), arg.strip()
    if kind == "cyclic":
        return cyclic_group(_positive(arg, spec))
    if kind == "dihedral":
        return dihedral_group(_positive(arg, spec))
    if kind == "dicyclic":
        return dicyclic_group(_positive(arg, spec))
    if kind == "sym":
        return symmetric_group(_positive(arg, spec))
    if kind == "alt":
        return alternating_group(_positive(arg, spec))
    if kind == "elem":
        p, caret, k = arg.partition("^")
        if not caret:
            raise BadSpec(f"elementary abelian spec must look like elem:p^k, got {spec!r}")
        return elementary_abelian(_positive(p, spec), _positive(k, spec))
    if kind == "direct":
        if not (arg.startswith("(") and arg.endswith(")")):
            raise BadSpec(f"direct product spec must look like direct:(A,B), got {spec!r}")
        parts = _split_args(arg[1:-1])
        if len(parts) != 2:
            raise BadSpec(f"direct product takes exactly two factors, got {spec!r}")
        return direct_product(from_catalogue(parts[0]), from_catalogue(parts[1]))
    raise BadSpec(f"unknown group family {kind!r}")


# -- files -----------------------------------------------------------------

def _content_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_group_text(text: str, name: str = "file") -> FiniteGroup:
    lines = list(_content_lines(text))
    if not lines:
        raise GroupFormatError("empty group file")
    lineno, header = lines[0]
    fields = header.split()
    if len(fields) != 3 or fields[0] != "group" or fields[1] not in ("cayley", "perm"):
        raise GroupFormatError("expected 'group cayley <n>' or 'group perm <degree>'", lineno)
    try:
        size = int(fields[2])
    except ValueError:
        raise GroupFormatError(f"bad size {fields[2]!r}", lineno) from None
    if size < 1:
        raise GroupFormatError("size must be positive", lineno)

    if fields[1] == "cayley":
        _check_order(size)
        rows = lines[1:]
        if len(rows) != size:
            raise GroupFormatError(f"expected {size} table rows, found {len(rows)}",
                                   rows[-1][0] if rows else lineno)
        table = []
        for ln, line in rows:
            try:
                row = [int(t) for t in line.split()]
            except ValueError:
                raise GroupFormatError("table entries must be integers", ln) from None
            if len(row) != size or any(not 0 <= v < size for v in row):
                raise GroupFormatError(f"row must hold {size} indices in 0..{size - 1}", ln)
            table.append(row)
        try:
            return FiniteGroup(table, name=name)
        except NotAGroup as exc:
            raise GroupFormatError(f"table is not a group: {exc}") from None

    gens = []
    for ln, line in lines[1:]:
        try:
            gens.append(parse_cycles(line, size))
        except GroupError as exc:
            raise GroupFormatError(str(exc), ln) from None
    return permutation_closure(gens, size, name=name)


def load_group(source: str) -> FiniteGroup:
    """A catalogue spec, or a path to a group file."""
    path = Path(source)
    if path.is_file():
        return parse_group_text(path.read_text(), name=path.name)
    return from_catalogue(source)


def serialize_cayley(G: FiniteGroup) -> str:
    lines = [f"group cayley {G.n}"]
    lines.extend(" ".join(map(str, row)) for row in G.mul)
    return "\n".join(lines) + "\n"
