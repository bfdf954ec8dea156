"""Zero-twist Dehn-Thurston coordinates on pants-decomposed genus-0 surfaces.

A multicurve with zero twists is determined by one nonnegative intersection
number per pants curve, subject to the parity condition that the three
numbers around each pair of pants have even sum.  Inside one pair of pants
the standard representative is forced: with slot values (x_i, x_j, x_k),
either the triangle inequalities hold and there are t_ij = (x_i+x_j-x_k)/2
arcs between each pair of slots, or one value dominates and the excess
returns to its own slot, t_ii = (x_i-x_j-x_k)/2.

The gluing convention is fixed once and for all:

  * pants triples are ordered; along slot i the strand ends appear as
      [returning arcs R_0..R_{u-1}] [chords to prev(i)] [R_{u-1}..R_0]
      [chords to next(i)]
    where prev/next follow the cyclic order of the triple, so the returning
    arcs at slot i wrap around the chords that leave toward prev(i);
  * a chord family between slots a and b = next(a) is numbered ascending
    along a and descending along b;
  * two slot copies of an interior curve carrying x ends are glued by
    matching position p on one side with position x-1-p on the other.

trace_components follows strands through the gluing with union-find and
reports closed components and arcs with their boundary endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .errors import ConsistencyError


@dataclass(frozen=True)
class PantsDecomposition:
    """Ordered pants triples over interior and boundary curve labels."""

    interior: tuple
    boundary: tuple
    pants: tuple

    def __post_init__(self) -> None:
        labels = self.interior + self.boundary
        if len(set(labels)) != len(labels):
            raise ValueError("curve labels must be unique across interior and boundary")
        occurrences: dict = {lab: 0 for lab in labels}
        for triple in self.pants:
            if len(triple) != 3:
                raise ValueError(f"pants {triple!r} is not a triple")
            for lab in triple:
                if lab not in occurrences:
                    raise ValueError(f"pants slot {lab!r} is not a declared curve")
                occurrences[lab] += 1
        for lab in self.interior:
            if occurrences[lab] != 2:
                raise ValueError(f"interior curve {lab!r} must fill exactly two slots")
        for lab in self.boundary:
            if occurrences[lab] != 1:
                raise ValueError(f"boundary curve {lab!r} must fill exactly one slot")
        if len(self.boundary) != len(self.interior) + 3:
            raise ValueError("a genus-0 decomposition needs #boundary = #interior + 3")
        self._check_tree()

    def _check_tree(self) -> None:
        n = len(self.pants)
        adj: dict = {i: set() for i in range(n)}
        for lab in self.interior:
            where = [i for i, triple in enumerate(self.pants) if lab in triple]
            if len(where) == 1:
                raise ValueError(f"interior curve {lab!r} returns to one pants; not genus 0")
            a, b = where
            adj[a].add(b)
            adj[b].add(a)
        seen = {0} if n else set()
        stack = [0] if n else []
        while stack:
            for u in adj[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        if len(seen) != n or len(self.interior) != n - 1:
            raise ValueError("pants adjacency graph must be a tree for genus 0")

    @property
    def labels(self) -> tuple:
        """Coordinate order: interior curves first, then boundary."""
        return self.interior + self.boundary


def five_holed_sphere() -> PantsDecomposition:
    """Five-holed sphere: q1 bounds {p2,p3}, q2 bounds {p4,p5}."""
    return PantsDecomposition(
        interior=("q1", "q2"),
        boundary=("p1", "p2", "p3", "p4", "p5"),
        pants=(("q1", "p2", "p3"), ("q2", "p4", "p5"), ("q1", "q2", "p1")),
    )


def four_holed_sphere() -> PantsDecomposition:
    """Four-holed sphere: q separates {g1, p2} from {p1, p3}."""
    return PantsDecomposition(
        interior=("q",),
        boundary=("p1", "p2", "p3", "g1"),
        pants=(("q", "p2", "g1"), ("q", "p1", "p3")),
    )


PRESETS = {"O5": five_holed_sphere, "Oprime4": four_holed_sphere}


@dataclass(frozen=True)
class DTCoordinates:
    """Zero-twist coordinates: one nonnegative integer per pants curve."""

    entries: tuple

    @classmethod
    def from_mapping(cls, decomp: PantsDecomposition, values: Mapping) -> "DTCoordinates":
        missing = [lab for lab in decomp.labels if lab not in values]
        if missing:
            raise ValueError(f"coordinates missing for {missing}")
        extra = [lab for lab in values if lab not in decomp.labels]
        if extra:
            raise ValueError(f"coordinates given for unknown curves {extra}")
        return cls.from_vector(decomp, [values[lab] for lab in decomp.labels])

    @classmethod
    def from_vector(cls, decomp: PantsDecomposition, vec: Sequence) -> "DTCoordinates":
        vec = tuple(int(v) for v in vec)
        if len(vec) != len(decomp.labels):
            raise ValueError(
                f"expected {len(decomp.labels)} coordinates ({', '.join(decomp.labels)}), "
                f"got {len(vec)}"
            )
        if any(v < 0 for v in vec):
            raise ValueError("intersection numbers must be nonnegative")
        return cls(tuple(zip(decomp.labels, vec)))

    def __getitem__(self, label: str) -> int:
        for lab, v in self.entries:
            if lab == label:
                return v
        raise KeyError(label)

    def vector(self) -> tuple:
        return tuple(v for _, v in self.entries)

    def mapping(self) -> dict:
        return dict(self.entries)

    def to_json(self) -> dict:
        return {"coords": list(self.vector())}


def check_admissible(decomp: PantsDecomposition, coords: DTCoordinates) -> list[int]:
    """Indices of pants whose slot values have odd sum; empty means admissible."""
    values = coords.mapping()
    return [
        i
        for i, triple in enumerate(decomp.pants)
        if sum(values[lab] for lab in triple) % 2
    ]


_PAIRS = ((0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2))


def standard_model_in_pants(x1: int, x2: int, x3: int) -> dict:
    """Arc counts of the standard representative in one pair of pants.

    Keys are slot pairs (i, j) with i <= j; (i, i) counts returning arcs.
    """
    xs = (x1, x2, x3)
    if any(x < 0 for x in xs):
        raise ValueError(f"negative intersection number in {xs}")
    if sum(xs) % 2:
        raise ValueError(f"inadmissible pants values {xs}: odd sum")
    counts = dict.fromkeys(_PAIRS, 0)
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        if xs[i] > xs[j] + xs[k]:
            counts[(i, i)] = (xs[i] - xs[j] - xs[k]) // 2
            counts[(min(i, j), max(i, j))] = xs[j]
            counts[(min(i, k), max(i, k))] = xs[k]
            return counts
    counts[(0, 1)] = (xs[0] + xs[1] - xs[2]) // 2
    counts[(0, 2)] = (xs[0] + xs[2] - xs[1]) // 2
    counts[(1, 2)] = (xs[1] + xs[2] - xs[0]) // 2
    return counts


def _slot_layouts(counts: Mapping) -> tuple:
    """Per-slot strand order under the fixed convention.

    Strands are keyed locally: ('r', s, c) for the c-th returning arc at
    slot s, ('c', a, b, c) for the c-th chord between slots a < b.  Returns
    one tuple per slot listing strand keys outermost-first.
    """
    layouts = []
    for s in range(3):
        prev, nxt = (s + 2) % 3, (s + 1) % 3
        u = counts[(s, s)]
        p = counts[(min(s, prev), max(s, prev))]
        q = counts[(min(s, nxt), max(s, nxt))]
        lay: list = [("r", s, c) for c in range(u)]
        pa, pb = min(s, prev), max(s, prev)
        lay += [("c", pa, pb, c) for c in range(p - 1, -1, -1)]
        lay += [("r", s, c) for c in range(u - 1, -1, -1)]
        na, nb = min(s, nxt), max(s, nxt)
        lay += [("c", na, nb, c) for c in range(q)]
        layouts.append(tuple(lay))
    return tuple(layouts)


def _chord_is_ascending(s: int, other: int) -> bool:
    return other == (s + 1) % 3


class _Compiled:
    """Preprocessed decomposition for repeated tracing."""

    __slots__ = ("decomp", "labels", "index", "pants_slots", "interior", "boundary")

    def __init__(self, decomp: PantsDecomposition):
        self.decomp = decomp
        self.labels = decomp.labels
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        self.pants_slots = tuple(
            tuple(self.index[lab] for lab in triple) for triple in decomp.pants
        )
        interior: dict = {}
        boundary: dict = {}
        for pi, triple in enumerate(decomp.pants):
            for si, lab in enumerate(triple):
                if lab in decomp.interior:
                    interior.setdefault(lab, []).append((pi, si))
                else:
                    boundary[lab] = (pi, si)
        self.interior = tuple(
            (self.index[lab], tuple(slots)) for lab, slots in interior.items()
        )
        self.boundary = tuple((self.index[lab], pos) for lab, pos in boundary.items())


_COMPILED_CACHE: dict = {}


def _compiled(decomp: PantsDecomposition) -> _Compiled:
    comp = _COMPILED_CACHE.get(decomp)
    if comp is None:
        comp = _COMPILED_CACHE[decomp] = _Compiled(decomp)
    return comp


# Per-pants layout cache: coordinate triple -> (strand count, layouts as
# tuples of local strand ids, strand keys).  The sweep revisits the same
# triples constantly.
_LAYOUT_CACHE: dict = {}


def _local_layouts(triple: tuple) -> tuple:
    cached = _LAYOUT_CACHE.get(triple)
    if cached is None:
        counts = standard_model_in_pants(*triple)
        layouts = _slot_layouts(counts)
        ids: dict = {}
        for lay in layouts:
            for key in lay:
                if key not in ids:
                    ids[key] = len(ids)
        local = tuple(tuple(ids[key] for key in lay) for lay in layouts)
        keys = tuple(sorted(ids, key=ids.get))
        cached = _LAYOUT_CACHE[triple] = (len(ids), local, keys, counts)
    return cached


@dataclass(frozen=True)
class Component:
    """One traced component: a closed curve or an arc between boundaries."""

    closed: bool
    endpoints: tuple
    crossings: tuple

    def to_json(self) -> dict:
        return {
            "closed": self.closed,
            "endpoints": list(self.endpoints),
            "crossings": {lab: c for lab, c in self.crossings},
        }


@dataclass(frozen=True)
class CurveSystem:
    """Standard-position multicurve: per-pants counts, gluing, components."""

    decomp: PantsDecomposition
    coords: DTCoordinates
    pants_counts: tuple
    matching: tuple
    components: tuple

    @property
    def arcs(self) -> tuple:
        return tuple(c for c in self.components if not c.closed)

    @property
    def closed_components(self) -> tuple:
        return tuple(c for c in self.components if c.closed)

    def to_json(self) -> dict:
        return {
            "coords": {lab: v for lab, v in self.coords.entries},
            "pants_counts": [
                {f"t{a}{b}": m for (a, b), m in counts.items()}
                for counts in self.pants_counts
            ],
            "matching": [
                {
                    "curve": lab,
                    "pairs": [[list(x), list(y)] for x, y in pairs],
                }
                for lab, pairs in self.matching
            ],
            "components": [c.to_json() for c in self.components],
        }


def _find(parent: list, a: int) -> int:
    while parent[a] != a:
        parent[a] = parent[parent[a]]
        a = parent[a]
    return a


def trace_components(decomp: PantsDecomposition, coords: DTCoordinates) -> CurveSystem:
    """Standard model in every pants, glued with zero twist."""
    failing = check_admissible(decomp, coords)
    if failing:
        raise ValueError(f"inadmissible coordinates: odd sum in pants {failing}")
    comp = _compiled(decomp)
    vec = coords.vector()

    bases: list = []
    total = 0
    pants_layouts: list = []
    pants_counts: list = []
    for slots in comp.pants_slots:
        triple = (vec[slots[0]], vec[slots[1]], vec[slots[2]])
        nstrands, local, _keys, counts = _local_layouts(triple)
        bases.append(total)
        total += nstrands
        pants_layouts.append(local)
        pants_counts.append(dict(counts))

    parent = list(range(total))
    matching: list = []
    for ci, sides in comp.interior:
        x = vec[ci]
        (pa, sa), (pb, sb) = sides
        la = pants_layouts[pa][sa]
        lb = pants_layouts[pb][sb]
        if len(la) != x or len(lb) != x:
            raise ConsistencyError(
                f"curve {comp.labels[ci]}: {len(la)} and {len(lb)} strand ends "
                f"for coordinate {x}"
            )
        pairs = []
        for i in range(x):
            a = bases[pa] + la[i]
            b = bases[pb] + lb[x - 1 - i]
            ra, rb = _find(parent, a), _find(parent, b)
            if ra != rb:
                parent[rb] = ra
            pairs.append(((pa, sa, i), (pb, sb, x - 1 - i)))
        matching.append((comp.labels[ci], tuple(pairs)))

    endpoints: dict = {}
    for ci, (pi, si) in comp.boundary:
        lay = pants_layouts[pi][si]
        if len(lay) != vec[ci]:
            raise ConsistencyError(
                f"boundary {comp.labels[ci]}: {len(lay)} strand ends "
                f"for coordinate {vec[ci]}"
            )
        for sid in lay:
            endpoints.setdefault(_find(parent, bases[pi] + sid), []).append(
                comp.labels[ci]
            )

    crossings: dict = {}
    for ci, sides in comp.interior:
        lab = comp.labels[ci]
        (pa, sa), _ = sides
        for sid in pants_layouts[pa][sa]:
            root = _find(parent, bases[pa] + sid)
            crossings.setdefault(root, {}).setdefault(lab, 0)
            crossings[root][lab] += 1
    for root, labs in endpoints.items():
        for lab in labs:
            crossings.setdefault(root, {}).setdefault(lab, 0)
            crossings[root][lab] += 1

    roots = sorted({_find(parent, s) for s in range(total)})
    components = []
    for root in roots:
        ends = tuple(sorted(endpoints.get(root, ())))
        if ends and len(ends) != 2:
            raise ConsistencyError(f"component with {len(ends)} endpoints")
        components.append(
            Component(
                closed=not ends,
                endpoints=ends,
                crossings=tuple(sorted(crossings.get(root, {}).items())),
            )
        )
    components.sort(key=lambda c: (c.closed, c.endpoints, c.crossings))
    return CurveSystem(
        decomp=decomp,
        coords=coords,
        pants_counts=tuple(pants_counts),
        matching=tuple(matching),
        components=tuple(components),
    )


def component_summary(decomp: PantsDecomposition, vec: Sequence) -> tuple:
    """Fast path: (sorted arc endpoint pairs, closed component count).

    Same tracing core as trace_components with the bookkeeping stripped;
    used by large agreement sweeps.
    """
    comp = _compiled(decomp)
    bases = []
    total = 0
    pants_layouts = []
    for slots in comp.pants_slots:
        nstrands, local, _keys, _counts = _local_layouts(
            (vec[slots[0]], vec[slots[1]], vec[slots[2]])
        )
        bases.append(total)
        total += nstrands
        pants_layouts.append(local)

    parent = list(range(total))
    for ci, sides in comp.interior:
        x = vec[ci]
        (pa, sa), (pb, sb) = sides
        la = pants_layouts[pa][sa]
        lb = pants_layouts[pb][sb]
        ba, bb = bases[pa], bases[pb]
        for i in range(x):
            a = _find(parent, ba + la[i])
            b = _find(parent, bb + lb[x - 1 - i])
            if a != b:
                parent[b] = a

    endpoints: dict = {}
    for ci, (pi, si) in comp.boundary:
        base = bases[pi]
        for sid in pants_layouts[pi][si]:
            endpoints.setdefault(_find(parent, base + sid), []).append(ci)

    arcs = []
    for root, labs in endpoints.items():
        labs.sort()
        arcs.append((labs[0], labs[1]))
    arcs.sort()
    closed = len({_find(parent, s) for s in range(total)}) - len(endpoints)
    return tuple(arcs), closed