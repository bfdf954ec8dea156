"""Stable weighted multigraphs and exact isomorphism.

A stable graph is a connected multigraph (loops and parallel edges allowed)
with a nonnegative integer weight per vertex; every weight-0 vertex needs
degree >= 3, loops counting twice.  Its genus is sum(weights) + E - V + 1.

Isomorphism is weight-preserving.  Small graphs (<= CANONICAL_LIMIT vertices)
go through a canonical relabeling, larger ones through an exact
color-refinement backtracking matcher.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

CANONICAL_LIMIT = 12
_CANONICAL_BUDGET = 500_000


@dataclass(frozen=True)
class StableGraph:
    """Immutable weighted multigraph, vertices (id, weight), edges (a, b, mult)."""

    vertices: tuple
    edges: tuple

    @classmethod
    def build(cls, vertices: Iterable, edges: Iterable) -> "StableGraph":
        """Normalize and validate: sorted ids, a <= b, parallel entries merged."""
        vs = []
        for vid, w in vertices:
            if not isinstance(vid, int) or not isinstance(w, int):
                raise ValueError(f"vertex ({vid!r}, {w!r}) must be a pair of integers")
            if w < 0:
                raise ValueError(f"vertex {vid} has negative weight {w}")
            vs.append((vid, w))
        vs.sort()
        ids = [vid for vid, _ in vs]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate vertex ids")
        idset = set(ids)
        merged: Counter = Counter()
        for a, b, m in edges:
            if a not in idset or b not in idset:
                raise ValueError(f"edge ({a}, {b}) references a missing vertex")
            if not isinstance(m, int) or m < 1:
                raise ValueError(f"edge ({a}, {b}) has invalid multiplicity {m!r}")
            merged[(min(a, b), max(a, b))] += m
        es = tuple((a, b, merged[(a, b)]) for a, b in sorted(merged))
        return cls(tuple(vs), es)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return sum(m for _, _, m in self.edges)

    def weight(self, vid: int) -> int:
        for v, w in self.vertices:
            if v == vid:
                return w
        raise KeyError(vid)

    def total_weight(self) -> int:
        return sum(w for _, w in self.vertices)

    def degree(self, vid: int) -> int:
        deg = 0
        for a, b, m in self.edges:
            if a == vid:
                deg += m
            if b == vid:
                deg += m
        return deg

    def loop_count(self, vid: int) -> int:
        return sum(m for a, b, m in self.edges if a == vid and b == vid)

    def to_json(self) -> dict:
        return {
            "vertices": [{"id": v, "weight": w} for v, w in self.vertices],
            "edges": [{"a": a, "b": b, "mult": m} for a, b, m in self.edges],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "StableGraph":
        return cls.build(
            [(int(v["id"]), int(v["weight"])) for v in obj["vertices"]],
            [(int(e["a"]), int(e["b"]), int(e.get("mult", 1))) for e in obj["edges"]],
        )

    def to_dot(self, name: str = "stratum") -> str:
        lines = [f"graph {name} {{"]
        for v, w in self.vertices:
            lines.append(f'  {v} [label="w={w}"];')
        for a, b, m in self.edges:
            lines.extend(f"  {a} -- {b};" for _ in range(m))
        lines.append("}")
        return "\n".join(lines)


@lru_cache(maxsize=4096)
def _adjacency(g: StableGraph) -> dict:
    adj: dict = {v: {} for v, _ in g.vertices}
    for a, b, m in g.edges:
        adj[a][b] = m
        if a != b:
            adj[b][a] = m
    return adj


def is_connected(g: StableGraph) -> bool:
    if not g.vertices:
        return False
    adj = _adjacency(g)
    start = g.vertices[0][0]
    seen = {start}
    stack = [start]
    while stack:
        for u in adj[stack.pop()]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == g.num_vertices


def genus(g: StableGraph) -> int:
    """sum(weights) + E - V + 1; defined for connected graphs only."""
    if not is_connected(g):
        raise ValueError("genus is defined for connected graphs only")
    return g.total_weight() + g.num_edges - g.num_vertices + 1


@dataclass(frozen=True)
class StabilityReport:
    ok: bool
    connected: bool
    unstable_vertices: tuple

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "connected": self.connected,
            "unstable_vertices": list(self.unstable_vertices),
        }


def validate_stability(g: StableGraph) -> StabilityReport:
    """Connectivity plus the weight-0 => degree >= 3 condition per vertex."""
    bad = tuple(v for v, w in g.vertices if w == 0 and g.degree(v) < 3)
    conn = is_connected(g)
    return StabilityReport(ok=conn and not bad, connected=conn, unstable_vertices=bad)


def _wl_signatures(g: StableGraph) -> dict:
    """Iterated neighborhood refinement; signatures are isomorphism-invariant."""
    adj = _adjacency(g)
    sig = {v: (w, g.degree(v), adj[v].get(v, 0)) for v, w in g.vertices}
    for _ in range(g.num_vertices):
        nxt = {
            v: (sig[v], tuple(sorted((sig[u], m) for u, m in adj[v].items() if u != v)))
            for v in sig
        }
        if len(set(nxt.values())) == len(set(sig.values())):
            break
        sig = nxt
    return sig


def invariant_key(g: StableGraph):
    """Hashable isomorphism invariant, suitable for bucketing."""
    sigs = _wl_signatures(g)
    return (
        g.num_vertices,
        g.num_edges,
        tuple(sorted(Counter(sigs.values()).items())),
    )


def _ordered_classes(g: StableGraph) -> list:
    """Vertex classes in a canonical (invariant) order."""
    sigs = _wl_signatures(g)
    by_sig: dict = {}
    for v, s in sigs.items():
        by_sig.setdefault(s, []).append(v)
    return [sorted(by_sig[s]) for s in sorted(by_sig)]


def _are_twins(adj: dict, u: int, v: int) -> bool:
    """True when transposing u and v is an automorphism."""
    if adj[u].get(u, 0) != adj[v].get(v, 0):
        return False
    nu = {w: m for w, m in adj[u].items() if w not in (u, v)}
    nv = {w: m for w, m in adj[v].items() if w not in (u, v)}
    return nu == nv and adj[u].get(v, 0) == adj[v].get(u, 0)


def canonical_form(g: StableGraph) -> StableGraph:
    """Canonically relabeled copy: equal outputs iff isomorphic inputs.

    Minimizes the row encoding over all orders that respect the refinement
    classes, branching only on ties.  Intended for graphs up to
    CANONICAL_LIMIT vertices; raises beyond that.
    """
    if g.num_vertices > CANONICAL_LIMIT:
        raise ValueError(
            f"canonical form supports up to {CANONICAL_LIMIT} vertices, got {g.num_vertices}"
        )
    adj = _adjacency(g)
    weight_of = dict(g.vertices)
    classes = _ordered_classes(g)
    slots: list = []
    for ci, cls_vertices in enumerate(classes):
        slots.extend([ci] * len(cls_vertices))

    best: list = []
    budget = [_CANONICAL_BUDGET]

    def rec(depth: int, order: list, used: set, rows: list) -> None:
        if budget[0] <= 0:
            raise RuntimeError("canonical form search budget exceeded")
        budget[0] -= 1
        if depth == len(slots):
            if not best or rows < best[0]:
                best[:] = [list(rows), list(order)]
            return
        cands = [v for v in classes[slots[depth]] if v not in used]
        scored = []
        for v in cands:
            row = (weight_of[v], adj[v].get(v, 0)) + tuple(
                adj[v].get(u, 0) for u in order
            )
            scored.append((row, v))
        min_row = min(r for r, _ in scored)
        if best and depth < len(best[0]):
            prefix_cmp = rows + [min_row]
            if prefix_cmp > best[0][: depth + 1]:
                return
        picked: list = []
        for row, v in scored:
            if row != min_row:
                continue
            if any(_are_twins(adj, v, p) for p in picked):
                continue
            picked.append(v)
            order.append(v)
            used.add(v)
            rows.append(row)
            rec(depth + 1, order, used, rows)
            rows.pop()
            used.remove(v)
            order.pop()

    rec(0, [], set(), [])
    rows, order = best
    relabel = {v: i for i, v in enumerate(order)}
    return StableGraph.build(
        [(relabel[v], weight_of[v]) for v in order],
        [(relabel[a], relabel[b], m) for a, b, m in g.edges],
    )


def _match(ga: StableGraph, gb: StableGraph) -> bool:
    """Exact backtracking search for a weight-preserving isomorphism.

    Picks the most constrained unmapped vertex at every step, so forced
    chains (cycles, pendant structure) collapse without branching.
    """
    sa, sb = _wl_signatures(ga), _wl_signatures(gb)
    if Counter(sa.values()) != Counter(sb.values()):
        return False
    by_sig_b: dict = {}
    for v, s in sb.items():
        by_sig_b.setdefault(s, []).append(v)
    adja, adjb = _adjacency(ga), _adjacency(gb)
    vertices_a = [v for v, _ in ga.vertices]
    mapping: dict = {}
    used: set = set()

    def candidates(v: int) -> list:
        out = []
        for cand in by_sig_b[sa[v]]:
            if cand in used:
                continue
            if adja[v].get(v, 0) != adjb[cand].get(cand, 0):
                continue
            if all(adja[v].get(u, 0) == adjb[cand].get(img, 0) for u, img in mapping.items()):
                out.append(cand)
        return out

    def rec() -> bool:
        if len(mapping) == len(vertices_a):
            return True
        pick_v, pick_cands = None, None
        for v in vertices_a:
            if v in mapping:
                continue
            cands = candidates(v)
            if not cands:
                return False
            if pick_cands is None or len(cands) < len(pick_cands):
                pick_v, pick_cands = v, cands
                if len(cands) == 1:
                    break
        for cand in pick_cands:
            mapping[pick_v] = cand
            used.add(cand)
            if rec():
                return True
            used.remove(cand)
            del mapping[pick_v]
        return False

    return rec()


def is_isomorphic(a: StableGraph, b: StableGraph) -> bool:
    """Weight-preserving multigraph isomorphism, exact at any size."""
    if a.num_vertices != b.num_vertices or a.num_edges != b.num_edges:
        return False
    if sorted(w for _, w in a.vertices) != sorted(w for _, w in b.vertices):
        return False
    if invariant_key(a) != invariant_key(b):
        return False
    return _match(a, b)
