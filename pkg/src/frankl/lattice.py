"""
Finite lattices stored as dense integer ids in a linear extension.

Every element ``e`` carries two bitmasks: ``down[e]`` (all ``d <= e``) and
``up[e]`` (all ``u >= e``).  Because ids follow a linear extension, the
greatest lower bound of ``a, b`` is the highest set bit of
``down[a] & down[b]`` (and it is a glb exactly when its own down-set equals
that intersection), and dually for joins.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


class LatticeError(ValueError):
    pass


class NotALattice(LatticeError):
    pass


class NoBound(NotALattice):
    """No global bottom or top element."""


class NotLinearExtension(LatticeError):
    pass


class NotComparable(LatticeError):
    pass


class LatticeFormatError(LatticeError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def top_bit(mask: int) -> int:
    return mask.bit_length() - 1


def low_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


class FiniteLattice:
    """
    An immutable finite lattice with precomputed meet and join tables.

    Build instances with :func:`build_from_covers` or
    :meth:`FiniteLattice.from_down_sets`; both validate the lattice axioms.
    """

    __slots__ = ("n", "down", "up", "covers", "meet_table", "join_table",
                 "lower_covers", "upper_covers")

    def __init__(self, n, down, up, covers, meet_table, join_table):
        self.n = n
        self.down = down
        self.up = up
        self.covers = covers
        self.meet_table = meet_table
        self.join_table = join_table
        lower = [[] for _ in range(n)]
        upper = [[] for _ in range(n)]
        for a, b in covers:
            lower[b].append(a)
            upper[a].append(b)
        self.lower_covers = tuple(tuple(c) for c in lower)
        self.upper_covers = tuple(tuple(c) for c in upper)

    @classmethod
    def from_down_sets(cls, down: list[int]) -> "FiniteLattice":
        """
        Validate and build a lattice from principal down-set bitmasks.

        ``down[e]`` must contain ``e`` and ids must form a linear extension.
        """
        n = len(down)
        if n < 1:
            raise LatticeError("a lattice needs at least one element")
        full = (1 << n) - 1
        for e, d in enumerate(down):
            if not (d >> e) & 1:
                raise LatticeError(f"element {e} is missing from its own down-set")
            if d >> (e + 1):
                raise NotLinearExtension(f"element {e} lies below a lower index")
        up = [0] * n
        for e, d in enumerate(down):
            for f in bits(d):
                up[f] |= 1 << e
        for e in range(n):
            for f in bits(down[e]):
                if down[f] & ~down[e]:
                    raise LatticeError("order relation is not transitive")
        if up[0] != full or down[n - 1] != full:
            raise NoBound("poset has no global bottom and top")

        meet = [[0] * n for _ in range(n)]
        join = [[0] * n for _ in range(n)]
        for a in range(n):
            meet[a][a] = join[a][a] = a
            for b in range(a + 1, n):
                lower = down[a] & down[b]
                g = top_bit(lower)
                if down[g] != lower:
                    raise NotALattice(f"elements {a} and {b} have no greatest lower bound")
                upper = up[a] & up[b]
                if not upper:
                    raise NotALattice(f"elements {a} and {b} have no upper bound")
                j = low_bit(upper)
                if up[j] != upper:
                    raise NotALattice(f"elements {a} and {b} have no least upper bound")
                meet[a][b] = meet[b][a] = g
                join[a][b] = join[b][a] = j

        covers = []
        for b in range(n):
            strict = down[b] & ~(1 << b)
            rest = strict
            for a in bits(strict):
                rest &= ~(down[a] & ~(1 << a))
            covers.extend((a, b) for a in bits(rest))
        covers.sort()
        return cls(n, tuple(down), tuple(up), tuple(covers),
                   tuple(map(tuple, meet)), tuple(map(tuple, join)))

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return self.n - 1

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"FiniteLattice(n={self.n}, covers={list(self.covers)!r})"

    def __eq__(self, other):
        if not isinstance(other, FiniteLattice):
            return NotImplemented
        return self.n == other.n and self.covers == other.covers

    def __hash__(self):
        return hash((self.n, self.covers))

    def leq(self, a: int, b: int) -> bool:
        return bool((self.down[b] >> a) & 1)

    def lt(self, a: int, b: int) -> bool:
        return a != b and self.leq(a, b)

    def covered_by(self, a: int, b: int) -> bool:
        """True when ``b`` covers ``a``."""
        return a in self.lower_covers[b]

    def meet(self, a: int, b: int) -> int:
        return self.meet_table[a][b]

    def join(self, a: int, b: int) -> int:
        return self.join_table[a][b]

    def join_all(self, elements: Iterable[int]) -> int:
        result = self.bottom
        for e in elements:
            result = self.join_table[result][e]
        return result

    def up_set(self, a: int) -> list[int]:
        return list(bits(self.up[a]))

    def up_size(self, a: int) -> int:
        return self.up[a].bit_count()


def build_from_covers(n: int, cover_pairs: Iterable[tuple[int, int]]) -> FiniteLattice:
    """
    Build a validated lattice from its Hasse diagram.

    Pairs ``(a, b)`` mean ``a < b`` and must satisfy ``a < b`` as integers.
    Redundant (non-cover) pairs are accepted; the stored ``covers`` are the
    transitive reduction.
    """
    if n < 1:
        raise LatticeError("a lattice needs at least one element")
    below = [0] * n
    for a, b in cover_pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise LatticeError(f"cover pair ({a}, {b}) out of range for n={n}")
        if a >= b:
            raise NotLinearExtension(f"cover pair ({a}, {b}) does not go upward in index order")
        below[b] |= 1 << a
    down = [0] * n
    for e in range(n):
        d = 1 << e
        for a in bits(below[e]):
            d |= down[a]
        down[e] = d
    return FiniteLattice.from_down_sets(down)


@dataclass(frozen=True)
class Interval:
    lattice: FiniteLattice
    lo: int
    hi: int
    members: tuple[int, ...]

    @property
    def mask(self) -> int:
        return self.lattice.up[self.lo] & self.lattice.down[self.hi]

    def __len__(self):
        return len(self.members)

    def __contains__(self, e):
        return e in self.members

    def as_lattice(self) -> tuple[FiniteLattice, tuple[int, ...]]:
        """
        Re-index the interval as a lattice of its own.

        Returns the lattice and the tuple mapping new ids to ambient ids.
        Members are already in ambient index order, so that order is a
        linear extension of the interval.
        """
        position = {e: i for i, e in enumerate(self.members)}
        mask = self.mask
        down = []
        for e in self.members:
            d = 0
            for f in bits(self.lattice.down[e] & mask):
                d |= 1 << position[f]
            down.append(d)
        return FiniteLattice.from_down_sets(down), self.members


def interval(L: FiniteLattice, lo: int, hi: int) -> Interval:
    if not L.leq(lo, hi):
        raise NotComparable(f"{lo} is not below {hi}")
    return Interval(L, lo, hi, tuple(bits(L.up[lo] & L.down[hi])))


def join_irreducibles(L: FiniteLattice) -> list[int]:
    return [e for e in range(L.n) if len(L.lower_covers[e]) == 1]


def coatoms(L: FiniteLattice) -> list[int]:
    if L.n < 2:
        raise LatticeError("coatoms need at least two elements")
    return list(L.lower_covers[L.top])


def serialize(L: FiniteLattice) -> str:
    lines = [f"lattice {L.n}"]
    lines.extend(f"{a} {b}" for a, b in L.covers)
    return "\n".join(lines) + "\n"


def parse(text: str) -> FiniteLattice:
    n = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 2 or fields[0] != "lattice":
                raise LatticeFormatError("expected header 'lattice <n>'", lineno)
            try:
                n = int(fields[1])
            except ValueError:
                raise LatticeFormatError(f"bad element count {fields[1]!r}", lineno) from None
            if n < 1:
                raise LatticeFormatError("element count must be positive", lineno)
            continue
        if len(fields) != 2:
            raise LatticeFormatError("expected a cover pair '<i> <j>'", lineno)
        try:
            a, b = int(fields[0]), int(fields[1])
        except ValueError:
            raise LatticeFormatError(f"bad cover pair {line!r}", lineno) from None
        if not (0 <= a < n and 0 <= b < n):
            raise LatticeFormatError(f"index out of range in {line!r}", lineno)
        if a >= b:
            raise LatticeFormatError(f"cover pair {line!r} must satisfy i < j", lineno)
        pairs.append((a, b))
    if n is None:
        raise LatticeFormatError("empty lattice file")
    return build_from_covers(n, pairs)


def chain(n: int) -> FiniteLattice:
    return build_from_covers(n, [(i, i + 1) for i in range(n - 1)])
