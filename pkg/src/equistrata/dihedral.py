"""Exact arithmetic in the dihedral group D_n.

Elements are words rho^a sigma^e in the presentation
<rho, sigma | rho^n = sigma^2 = (sigma rho)^2 = 1>, kept canonical with
0 <= a < n and e in {0, 1}.  The defining relation gives
rho^a sigma * rho^b sigma^f = rho^(a-b) sigma^(1-f) and everything else
follows.  Elements of groups with different n never mix.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterator, Mapping, Sequence


def _check_same_n(a: "GroupElement", b: "GroupElement") -> None:
    if a.n != b.n:
        raise ValueError(f"mixed group parameters: n={a.n} vs n={b.n}")


@dataclass(frozen=True)
class GroupElement:
    """One element rho^rot sigma^flip of D_n, canonicalized on construction."""

    rot: int
    flip: bool
    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"group parameter n must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "rot", self.rot % self.n)
        object.__setattr__(self, "flip", bool(self.flip))

    @property
    def is_rotation(self) -> bool:
        return not self.flip

    @property
    def is_identity(self) -> bool:
        return self.rot == 0 and not self.flip

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        _check_same_n(self, other)
        if self.flip:
            return GroupElement(self.rot - other.rot, not other.flip, self.n)
        return GroupElement(self.rot + other.rot, other.flip, self.n)

    def inverse(self) -> "GroupElement":
        if self.flip:
            return self
        return GroupElement(-self.rot, False, self.n)

    def __pow__(self, k: int) -> "GroupElement":
        if self.flip:
            return self if k % 2 else GroupElement(0, False, self.n)
        return GroupElement(self.rot * k, False, self.n)

    def conjugated_by(self, g: "GroupElement") -> "GroupElement":
        """g * self * g^-1."""
        return g * self * g.inverse()

    def order(self) -> int:
        if self.flip:
            return 2
        if self.rot == 0:
            return 1
        return self.n // gcd(self.n, self.rot)

    def sort_key(self) -> tuple[int, int]:
        """Rotations before symmetries, ascending exponent."""
        return (1 if self.flip else 0, self.rot)

    def __str__(self) -> str:
        if self.rot == 0:
            return "s" if self.flip else "1"
        r = "r" if self.rot == 1 else f"r^{self.rot}"
        return r + "s" if self.flip else r

    __repr__ = __str__

    def to_json(self) -> dict:
        return {"rot": self.rot, "flip": self.flip, "n": self.n}

    @classmethod
    def from_json(cls, obj: Mapping) -> "GroupElement":
        return cls(int(obj["rot"]), bool(obj["flip"]), int(obj["n"]))


_ELEMENT_RE = re.compile(r"^(?:1|e)?\s*(?:r(?:\s*\^\s*\{?(-?\d+)\}?)?)?\s*(s)?$")


def parse_element(text: str, n: int) -> GroupElement:
    """Parse 'r^3s', 'r^3 s', 'r', 's', '1' into an element of D_n."""
    m = _ELEMENT_RE.match(text.strip())
    if m is None or not text.strip():
        raise ValueError(f"cannot parse group element {text!r}")
    rot = 0
    if "r" in text:
        rot = 1 if m.group(1) is None else int(m.group(1))
    return GroupElement(rot, m.group(2) is not None, n)


@dataclass(frozen=True)
class DihedralGroup:
    """The dihedral group D_n of order 2n."""

    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"group parameter n must be a positive integer, got {self.n!r}")

    @property
    def order(self) -> int:
        return 2 * self.n

    def identity(self) -> GroupElement:
        return GroupElement(0, False, self.n)

    def rho(self, a: int = 1) -> GroupElement:
        return GroupElement(a, False, self.n)

    def sigma(self, a: int = 0) -> GroupElement:
        """The symmetry rho^a sigma."""
        return GroupElement(a, True, self.n)

    def elements(self) -> Iterator[GroupElement]:
        for a in range(self.n):
            yield GroupElement(a, False, self.n)
        for a in range(self.n):
            yield GroupElement(a, True, self.n)

    def rotations(self) -> Iterator[GroupElement]:
        for a in range(self.n):
            yield GroupElement(a, False, self.n)

    def symmetries(self) -> Iterator[GroupElement]:
        for a in range(self.n):
            yield GroupElement(a, True, self.n)

    def __contains__(self, g: GroupElement) -> bool:
        return isinstance(g, GroupElement) and g.n == self.n


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of D_n, stored extensionally."""

    members: frozenset
    n: int

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, g: GroupElement) -> bool:
        return g in self.members

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.sorted_members())

    def sorted_members(self) -> list[GroupElement]:
        return sorted(self.members, key=GroupElement.sort_key)

    def rotation_members(self) -> frozenset:
        return frozenset(g for g in self.members if not g.flip)

    def index_in(self, group: DihedralGroup) -> int:
        if group.n != self.n:
            raise ValueError(f"mixed group parameters: n={self.n} vs n={group.n}")
        return group.order // self.order

    def is_closed(self) -> bool:
        mem = self.members
        return all(a * b in mem for a in mem for b in mem)

    @classmethod
    def from_members(cls, members, n: int) -> "Subgroup":
        sub = cls(frozenset(members), n)
        if not sub.members:
            raise ValueError("a subgroup cannot be empty")
        if any(g.n != n for g in sub.members):
            raise ValueError("subgroup members must share the group parameter n")
        if not sub.is_closed():
            raise ValueError("the given set is not closed under multiplication")
        return sub


def multiply(a: GroupElement, b: GroupElement) -> GroupElement:
    return a * b


def element_order(g: GroupElement) -> int:
    return g.order()


@lru_cache(maxsize=None)
def _closure(gens: frozenset, n: int) -> frozenset:
    elems = {GroupElement(0, False, n)}
    frontier = set(gens) - elems
    elems |= frontier
    while frontier:
        new = set()
        for g in frontier:
            for h in gens:
                for prod in (g * h, h * g):
                    if prod not in elems:
                        new.add(prod)
                        elems.add(prod)
        frontier = new
    return frozenset(elems)


def subgroup_generated(gens: Sequence[GroupElement], group: DihedralGroup) -> Subgroup:
    """Closure of gens inside D_n (the trivial subgroup for empty gens)."""
    for g in gens:
        if g.n != group.n:
            raise ValueError(f"generator {g} does not live in D_{group.n}")
    return Subgroup(_closure(frozenset(gens), group.n), group.n)


@dataclass(frozen=True)
class Coset:
    """A left coset g*H with its canonically minimal representative."""

    rep: GroupElement
    members: frozenset

    def __contains__(self, g: GroupElement) -> bool:
        return g in self.members


@lru_cache(maxsize=None)
def _coset_partition(sub: Subgroup, n: int) -> tuple:
    group = DihedralGroup(n)
    seen: set = set()
    cosets = []
    for g in group.elements():
        if g in seen:
            continue
        members = frozenset(g * h for h in sub.members)
        seen |= members
        cosets.append(Coset(min(members, key=GroupElement.sort_key), members))
    cosets.sort(key=lambda c: c.rep.sort_key())
    return tuple(cosets)


def left_cosets(sub: Subgroup, group: DihedralGroup) -> list[Coset]:
    """All left cosets of sub in D_n, ordered by canonical representative."""
    if sub.n != group.n:
        raise ValueError(f"mixed group parameters: n={sub.n} vs n={group.n}")
    if group.order % sub.order:
        raise ValueError("subgroup order does not divide the group order")
    return list(_coset_partition(sub, group.n))


def quotient_coset_order(r: GroupElement, sub: Subgroup) -> int:
    """Order of the coset r*C in C_n/C, C the rotation part of sub.

    Smallest d >= 1 with r^d in sub; r must be a rotation.
    """
    if r.flip:
        raise ValueError(f"{r} is a symmetry, not a rotation")
    if r.n != sub.n:
        raise ValueError(f"mixed group parameters: n={r.n} vs n={sub.n}")
    rotations = sub.rotation_members()
    acc = r
    for d in range(1, r.n + 1):
        if acc in rotations:
            return d
        acc = acc * r
    raise ValueError("subgroup contains no power of r, so it is not a subgroup")


@dataclass(frozen=True)
class Word:
    """A word in abstract symbols with integer exponents.

    Stored as syllables ((symbol, exponent), ...).  Words only acquire group
    meaning through evaluate() with an assignment of symbols to elements.
    """

    syllables: tuple = ()

    @classmethod
    def sym(cls, symbol: str, exponent: int = 1) -> "Word":
        return cls(((symbol, exponent),)) if exponent else cls()

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.syllables + other.syllables)

    def __pow__(self, k: int) -> "Word":
        if k < 0:
            return self.inverse() ** (-k)
        return Word(self.syllables * k)

    def inverse(self) -> "Word":
        return Word(tuple((sym, -e) for sym, e in reversed(self.syllables)))

    def reduced(self) -> "Word":
        """Free reduction: merge adjacent equal symbols, drop zero exponents."""
        out: list = []
        for sym, e in self.syllables:
            if e == 0:
                continue
            if out and out[-1][0] == sym:
                merged = out[-1][1] + e
                out.pop()
                if merged:
                    out.append((sym, merged))
            else:
                out.append((sym, e))
        return Word(tuple(out))

    def evaluate(self, assignment: Mapping[str, GroupElement], group: DihedralGroup) -> GroupElement:
        acc = group.identity()
        for sym, e in self.syllables:
            if sym not in assignment:
                raise ValueError(f"word symbol {sym!r} has no assigned element")
            g = assignment[sym]
            if g.n != group.n:
                raise ValueError(f"assignment for {sym!r} lives in D_{g.n}, not D_{group.n}")
            acc = acc * g ** e
        return acc

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        return ".".join(sym if e == 1 else f"{sym}^{e}" for sym, e in self.syllables)


def evaluate_word(word: Word, assignment: Mapping[str, GroupElement], group: DihedralGroup) -> GroupElement:
    return word.evaluate(assignment, group)
