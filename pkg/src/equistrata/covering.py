"""Dual graphs of group coverings, computed exactly from covering data.

The input is combinatorial: the group G = D_n, a list of quotient pieces
(each with the orbifold Euler characteristic chi of its quotient and the
image subgroup of its fundamental group), and a list of cutting curves
(interior to a piece or separating two pieces, each with its image subgroup
and the holonomy of its crossing element).

The dual graph of the covered stable surface then has

  - one vertex per left coset g*H_j of each piece image H_j,
  - one edge per left coset g*K of each curve image K, joining the vertices
    of g and g*c where c is the curve's holonomy,
  - vertex degree D_j = |H_j| * (sum over incident separating curves of
    1/|K| + 2 * sum over interior curves of 1/|K|), the same for every
    vertex of piece j,
  - vertex weight w_j = 1 - (|H_j|*chi_j + D_j)/2.

All arithmetic is exact (fractions.Fraction); any non-integral or negative
weight, degree mismatch, or genus mismatch raises ConsistencyError because
it falsifies the input data rather than the arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Optional, Union

from .dihedral import (
    DihedralGroup,
    GroupElement,
    Subgroup,
    left_cosets,
    parse_element,
)
from .stable_graphs import StableGraph, genus as graph_genus


from .errors import ConsistencyError


class CoveringDataError(ValueError):
    """The covering data failed structural validation."""


@dataclass(frozen=True)
class Interior:
    piece: int

    def to_json(self) -> dict:
        return {"interior": self.piece}


@dataclass(frozen=True)
class Separating:
    piece_a: int
    piece_b: int

    def to_json(self) -> dict:
        return {"separating": [self.piece_a, self.piece_b]}


CurveKind = Union[Interior, Separating]


@dataclass(frozen=True)
class PieceData:
    id: int
    chi: Fraction
    image: Subgroup


@dataclass(frozen=True)
class CurveData:
    id: str
    kind: CurveKind
    image: Subgroup
    holonomy: GroupElement


@dataclass(frozen=True)
class CoveringData:
    group: DihedralGroup
    pieces: tuple
    curves: tuple
    expected_genus: Optional[int] = None

    def piece(self, pid: int) -> PieceData:
        for p in self.pieces:
            if p.id == pid:
                return p
        raise KeyError(pid)

    def to_json(self) -> dict:
        out = {
            "group": {"type": "dihedral", "n": self.group.n},
            "pieces": [
                {
                    "id": p.id,
                    "chi": str(p.chi),
                    "image": [str(g) for g in p.image.sorted_members()],
                }
                for p in self.pieces
            ],
            "curves": [
                {
                    "id": c.id,
                    "kind": c.kind.to_json(),
                    "image": [str(g) for g in c.image.sorted_members()],
                    "holonomy": str(c.holonomy),
                }
                for c in self.curves
            ],
        }
        if self.expected_genus is not None:
            out["expected_genus"] = self.expected_genus
        return out

    @classmethod
    def from_json(cls, obj: Mapping) -> "CoveringData":
        grp = obj.get("group", {})
        if grp.get("type") != "dihedral":
            raise CoveringDataError(f"unsupported group type {grp.get('type')!r}")
        n = int(grp["n"])
        group = DihedralGroup(n)
        pieces = tuple(
            PieceData(
                id=int(p["id"]),
                chi=Fraction(str(p["chi"])),
                image=Subgroup(frozenset(parse_element(s, n) for s in p["image"]), n),
            )
            for p in obj.get("pieces", ())
        )
        curves = []
        for c in obj.get("curves", ()):
            kind_obj = c["kind"]
            if "interior" in kind_obj:
                kind: CurveKind = Interior(int(kind_obj["interior"]))
            elif "separating" in kind_obj:
                a, b = kind_obj["separating"]
                kind = Separating(int(a), int(b))
            else:
                raise CoveringDataError(f"curve {c.get('id')!r} has unknown kind {kind_obj!r}")
            curves.append(
                CurveData(
                    id=str(c["id"]),
                    kind=kind,
                    image=Subgroup(frozenset(parse_element(s, n) for s in c["image"]), n),
                    holonomy=parse_element(c["holonomy"], n),
                )
            )
        eg = obj.get("expected_genus")
        return cls(group, pieces, tuple(curves), None if eg is None else int(eg))


@lru_cache(maxsize=None)
def _closed_subgroup(sub: Subgroup) -> bool:
    return GroupElement(0, False, sub.n) in sub.members and sub.is_closed()


def validate(data: CoveringData) -> list[str]:
    """Structural diagnostics; an empty list means the data is well formed."""
    diags: list[str] = []
    n = data.group.n
    ids = [p.id for p in data.pieces]
    if not ids:
        diags.append("no pieces")
    if len(set(ids)) != len(ids):
        diags.append("duplicate piece ids")
    for p in data.pieces:
        if p.chi >= 0:
            diags.append(f"piece {p.id}: chi={p.chi} is not negative")
        if p.image.n != n:
            diags.append(f"piece {p.id}: image lives in D_{p.image.n}, group is D_{n}")
            continue
        if not _closed_subgroup(p.image):
            diags.append(f"piece {p.id}: image is not a subgroup")
    cids = [c.id for c in data.curves]
    if len(set(cids)) != len(cids):
        diags.append("duplicate curve ids")
    piece_ids = set(ids)
    for c in data.curves:
        if c.image.n != n or c.holonomy.n != n:
            diags.append(f"curve {c.id}: group parameter mismatch")
            continue
        if not _closed_subgroup(c.image):
            diags.append(f"curve {c.id}: image is not a subgroup")
            continue
        if isinstance(c.kind, Interior):
            if c.kind.piece not in piece_ids:
                diags.append(f"curve {c.id}: unknown piece {c.kind.piece}")
                continue
            h_j = data.piece(c.kind.piece).image
            hol = c.holonomy
            hol_inv = hol.inverse()
            for h in c.image.members:
                same = h in h_j and hol_inv * h * hol in h_j
                swapped = hol_inv * h in h_j and h * hol in h_j
                if not (same or swapped):
                    diags.append(
                        f"curve {c.id}: element {h} breaks edge attachment "
                        f"in piece {c.kind.piece}"
                    )
                    break
        elif isinstance(c.kind, Separating):
            a, b = c.kind.piece_a, c.kind.piece_b
            if a == b:
                diags.append(
                    f"curve {c.id}: separating curve with equal pieces "
                    f"({a}); declare it interior instead"
                )
                continue
            if a not in piece_ids or b not in piece_ids:
                diags.append(f"curve {c.id}: unknown piece in ({a}, {b})")
                continue
            h_a = data.piece(a).image
            h_b = data.piece(b).image
            hol = c.holonomy
            hol_inv = hol.inverse()
            for h in c.image.members:
                if h not in h_a or hol_inv * h * hol not in h_b:
                    diags.append(
                        f"curve {c.id}: element {h} breaks edge attachment "
                        f"between pieces {a} and {b}"
                    )
                    break
        else:
            diags.append(f"curve {c.id}: unknown kind {c.kind!r}")
    return diags


def riemann_hurwitz_genus(data: CoveringData) -> int:
    """Genus of the covering surface: 1 - |G| * sum(chi_j) / 2."""
    total = sum((p.chi for p in data.pieces), Fraction(0))
    g = 1 - Fraction(data.group.order, 2) * total
    if g.denominator != 1:
        raise ConsistencyError(f"Riemann-Hurwitz genus {g} is not an integer")
    if g < 0:
        raise ConsistencyError(f"Riemann-Hurwitz genus {g} is negative")
    return int(g)


def _piece_degree(data: CoveringData, pid: int) -> Fraction:
    h_order = data.piece(pid).image.order
    acc = Fraction(0)
    for c in data.curves:
        if isinstance(c.kind, Interior) and c.kind.piece == pid:
            acc += 2 * Fraction(1, c.image.order)
        elif isinstance(c.kind, Separating):
            incidences = (c.kind.piece_a == pid) + (c.kind.piece_b == pid)
            acc += incidences * Fraction(1, c.image.order)
    return h_order * acc


def dual_graph(data: CoveringData) -> StableGraph:
    """The stable dual graph of the covering described by data.

    Raises CoveringDataError when validate() finds problems, and
    ConsistencyError when exact cross-checks (integral nonnegative weights,
    uniform degrees, Riemann-Hurwitz genus, expected genus) fail.
    """
    diags = validate(data)
    if diags:
        raise CoveringDataError("; ".join(diags))

    group = data.group
    vertex_ids: dict = {}
    vertices: list = []
    rep_of: dict = {}
    degrees: dict = {}
    for p in data.pieces:
        deg = _piece_degree(data, p.id)
        if deg.denominator != 1:
            raise ConsistencyError(f"piece {p.id}: degree {deg} is not an integer")
        weight = 1 - Fraction(p.image.order * p.chi + deg, 2)
        if weight.denominator != 1:
            raise ConsistencyError(f"piece {p.id}: weight {weight} is not an integer")
        if weight < 0:
            raise ConsistencyError(f"piece {p.id}: negative weight {weight}")
        lookup: dict = {}
        for coset in left_cosets(p.image, group):
            vid = len(vertices)
            vertex_ids[(p.id, coset.rep)] = vid
            vertices.append((vid, int(weight)))
            degrees[vid] = int(deg)
            for member in coset.members:
                lookup[member] = coset.rep
        rep_of[p.id] = lookup

    edges: list = []
    for c in data.curves:
        if isinstance(c.kind, Interior):
            pa = pb = c.kind.piece
        else:
            pa, pb = c.kind.piece_a, c.kind.piece_b
        for coset in left_cosets(c.image, group):
            g = coset.rep
            va = vertex_ids[(pa, rep_of[pa][g])]
            vb = vertex_ids[(pb, rep_of[pb][g * c.holonomy])]
            edges.append((va, vb, 1))

    graph = StableGraph.build(vertices, edges)
    for vid, _ in graph.vertices:
        if graph.degree(vid) != degrees[vid]:
            raise ConsistencyError(
                f"vertex {vid}: graph degree {graph.degree(vid)} != "
                f"predicted degree {degrees[vid]}"
            )
    rh = riemann_hurwitz_genus(data)
    try:
        gg = graph_genus(graph)
    except ValueError:
        raise ConsistencyError("dual graph is disconnected") from None
    if gg != rh:
        raise ConsistencyError(f"graph genus {gg} != Riemann-Hurwitz genus {rh}")
    if data.expected_genus is not None and gg != data.expected_genus:
        raise ConsistencyError(
            f"graph genus {gg} != expected genus {data.expected_genus}"
        )
    return graph