"""The four families of genus-n boundary strata and their enumeration.

Each constructor returns a stable graph of genus exactly n:

  G1(n, m): one vertex of weight n - n/m carrying n/m loops.
  G2(n, k): two vertices of equal weight w joined by E parallel edges,
            E = gcd(n, k) + gcd(n, k+1) and 2w + E - 1 = n.
  G3(n, m): a weight-0 hub joined to n/m weight-1 leaves by m parallel
            edges each.
  G4(n, m, d): a weight-0 hub joined to n/m weight-0 outer vertices by m
            parallel edges each, the outer vertices arranged in (n/m)/d
            cycles of length d (a loop when d = 1, a doubled edge when
            d = 2).

enumerate_boundary collects every parameter choice for one n and merges
isomorphic results, keeping all the parameter tags that hit each stratum.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Mapping

from .stable_graphs import StableGraph, invariant_key, is_isomorphic

FAMILIES = ("G1", "G2", "G3", "G4")


@dataclass(frozen=True)
class FamilyTag:
    family: str
    params: tuple

    def __str__(self) -> str:
        return f"{self.family}({', '.join(str(p) for p in self.params)})"

    def sort_key(self):
        return (FAMILIES.index(self.family), self.params)

    def to_json(self) -> dict:
        return {"family": self.family, "params": list(self.params)}

    @classmethod
    def from_json(cls, obj: Mapping) -> "FamilyTag":
        fam = str(obj["family"])
        if fam not in FAMILIES:
            raise ValueError(f"unknown family {fam!r}")
        return cls(fam, tuple(int(p) for p in obj["params"]))


def _check_divisor(n: int, m: int, name: str) -> None:
    if n < 3:
        raise ValueError(f"genus must be at least 3, got n={n}")
    if m < 1 or n % m:
        raise ValueError(f"{name}={m} must be a positive divisor of n={n}")


def make_g1(n: int, m: int) -> StableGraph:
    _check_divisor(n, m, "m")
    loops = n // m
    return StableGraph.build([(0, n - loops)], [(0, 0, loops)])


def make_g2(n: int, k: int) -> StableGraph:
    if n < 3:
        raise ValueError(f"genus must be at least 3, got n={n}")
    if not 1 <= k <= n:
        raise ValueError(f"k={k} must satisfy 1 <= k <= n={n}")
    e = gcd(n, k) + gcd(n, k + 1)
    if (n + 1 - e) % 2:
        raise ValueError(f"non-integral weight for (n, k)=({n}, {k})")
    w = (n + 1 - e) // 2
    return StableGraph.build([(0, w), (1, w)], [(0, 1, e)])


def make_g3(n: int, m: int) -> StableGraph:
    _check_divisor(n, m, "m")
    leaves = n // m
    vertices = [(0, 0)] + [(i, 1) for i in range(1, leaves + 1)]
    edges = [(0, i, m) for i in range(1, leaves + 1)]
    return StableGraph.build(vertices, edges)


def make_g4(n: int, m: int, d: int) -> StableGraph:
    _check_divisor(n, m, "m")
    k = n // m
    if d < 1 or k % d:
        raise ValueError(f"d={d} must be a positive divisor of n/m={k}")
    vertices = [(0, 0)] + [(i, 0) for i in range(1, k + 1)]
    edges = [(0, i, m) for i in range(1, k + 1)]
    for block in range(k // d):
        cycle = [block * d + 1 + j for j in range(d)]
        if d == 1:
            edges.append((cycle[0], cycle[0], 1))
        elif d == 2:
            edges.append((cycle[0], cycle[1], 2))
        else:
            edges.extend((cycle[j], cycle[(j + 1) % d], 1) for j in range(d))
    return StableGraph.build(vertices, edges)


def g4_structure(graph: StableGraph) -> Mapping | None:
    """Recognize a hub-and-cycles graph, returning its shape or None.

    The shape is {"n": hub degree, "m": hub multiplicity, "k": outer count,
    "cycles": sorted outer cycle lengths}. Any all-weight-0 vertex adjacent
    to every other vertex with one uniform multiplicity and no loop counts
    as a hub; the rest must split into disjoint cycles.
    """
    if any(w for _, w in graph.vertices) or graph.num_vertices < 2:
        return None
    adj: dict = {v: {} for v, _ in graph.vertices}
    for a, b, mult in graph.edges:
        adj[a][b] = adj[a].get(b, 0) + mult
        if a != b:
            adj[b][a] = adj[b].get(a, 0) + mult
    for hub, _ in graph.vertices:
        if adj[hub].get(hub):
            continue
        others = [v for v, _ in graph.vertices if v != hub]
        mults = {adj[hub].get(v, 0) for v in others}
        if len(mults) != 1 or 0 in mults:
            continue
        m = mults.pop()
        cycles = _outer_cycles(adj, others, hub)
        if cycles is not None:
            return {"n": m * len(others), "m": m, "k": len(others), "cycles": cycles}
    return None


def _outer_cycles(adj: Mapping, others: list, hub) -> tuple | None:
    """Cycle lengths of the hub-deleted subgraph, or None if not 2-regular."""
    for v in others:
        deg = sum(mult for u, mult in adj[v].items() if u not in (hub, v))
        deg += 2 * adj[v].get(v, 0)
        if deg != 2:
            return None
    seen: set = set()
    lengths = []
    for start in others:
        if start in seen:
            continue
        component = {start}
        frontier = [start]
        while frontier:
            v = frontier.pop()
            for u in adj[v]:
                if u != hub and u not in component:
                    component.add(u)
                    frontier.append(u)
        seen |= component
        size = len(component)
        if size == 1 and adj[start].get(start) != 1:
            return None
        if size == 2 and not all(adj[v].get(u) == 2 for v in component for u in component if u != v):
            return None
        lengths.append(size)
    return tuple(sorted(lengths))


def make_family(tag: FamilyTag) -> StableGraph:
    maker = {"G1": make_g1, "G2": make_g2, "G3": make_g3, "G4": make_g4}[tag.family]
    return maker(*tag.params)


@dataclass(frozen=True)
class CatalogEntry:
    graph: StableGraph
    tags: tuple

    def to_json(self) -> dict:
        return {"tags": [t.to_json() for t in self.tags], "graph": self.graph.to_json()}


def family_tags_for(n: int) -> list[FamilyTag]:
    """Every valid parameter tag for genus n, in deterministic order."""
    divisors = [m for m in range(1, n + 1) if n % m == 0]
    tags = [FamilyTag("G1", (n, m)) for m in divisors]
    tags += [FamilyTag("G2", (n, k)) for k in range(1, n + 1)]
    tags += [FamilyTag("G3", (n, m)) for m in divisors]
    tags += [
        FamilyTag("G4", (n, m, d))
        for m in divisors
        for d in range(1, n // m + 1)
        if (n // m) % d == 0
    ]
    return tags


def enumerate_boundary(n: int) -> list[CatalogEntry]:
    """All genus-n strata from the four families, isomorphic ones merged."""
    if n < 3:
        raise ValueError(f"genus must be at least 3, got n={n}")
    buckets: dict = {}
    for tag in family_tags_for(n):
        g = make_family(tag)
        bucket = buckets.setdefault(invariant_key(g), [])
        for entry in bucket:
            if is_isomorphic(entry[0], g):
                entry[1].append(tag)
                break
        else:
            bucket.append((g, [tag]))
    entries = [
        CatalogEntry(g, tuple(sorted(tags, key=FamilyTag.sort_key)))
        for bucket in buckets.values()
        for g, tags in bucket
    ]
    entries.sort(key=lambda e: e.tags[0].sort_key())
    return entries


def catalog_to_json(n: int, entries: Iterable[CatalogEntry]) -> dict:
    return {"genus": n, "strata": [e.to_json() for e in entries]}


def catalog_from_json(obj: Mapping) -> list[CatalogEntry]:
    return [
        CatalogEntry(
            StableGraph.from_json(e["graph"]),
            tuple(FamilyTag.from_json(t) for t in e["tags"]),
        )
        for e in obj["strata"]
    ]


def catalog_to_table(n: int, entries: list[CatalogEntry]) -> str:
    from .stable_graphs import genus as graph_genus

    header = f"genus {n} boundary strata ({len(entries)} up to isomorphism)"
    lines = [header, ""]
    for family in FAMILIES:
        rows = [e for e in entries if e.tags[0].family == family]
        if not rows:
            continue
        lines.append(f"family {family}:")
        for e in rows:
            tags = ", ".join(str(t) for t in e.tags)
            weights = [w for _, w in e.graph.vertices]
            lines.append(
                f"  {tags:<40} V={e.graph.num_vertices:<3} E={e.graph.num_edges:<3} "
                f"genus={graph_genus(e.graph)} weights={weights}"
            )
        lines.append("")
    return "\n".join(lines).rstrip() + "\n"


def catalog_to_dot(entries: list[CatalogEntry]) -> str:
    blocks = []
    for i, e in enumerate(entries):
        name = str(e.tags[0]).replace("(", "_").replace(")", "").replace(", ", "_")
        blocks.append(f"// stratum {i}: {', '.join(str(t) for t in e.tags)}")
        blocks.append(e.graph.to_dot(name=f"s{i}_{name}"))
    return "\n".join(blocks) + "\n"