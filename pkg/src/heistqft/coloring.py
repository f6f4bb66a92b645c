"""Admissible colorings, the cycle action on them, and cycle-based graph surgery.

A coloring is a tuple of ints indexed like the graph's edges (ascending edge
id). Enumeration fixes the boundary colors and any caller-supplied edges,
then assigns the rest by depth-first search, checking each vertex as soon as
its last edge is colored.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import EmptyCycle
from .ribbon import (
    CycleClass,
    Edge,
    MeridianClass,
    RibbonGraph,
    Vertex,
    WalkStep,
    cycle_walks,
)

Coloring = tuple[int, ...]

__all__ = [
    "Coloring",
    "is_admissible",
    "vertex_triple",
    "check_coloring",
    "enumerate_colorings",
    "count_colorings",
    "search_count",
    "pattern_counts",
    "expand_pattern",
    "act_cycle",
    "meridian_exponent",
    "EdgeClassification",
    "classify_edges",
    "fixed_colorings",
    "LambdaDecomposition",
    "decompose",
]


def is_admissible(triple: Sequence[int], k: int) -> bool:
    """Parity, triangle and level conditions on a color triple."""
    a, b, c = triple
    if min(a, b, c) < 0:
        return False
    s = a + b + c
    return s % 2 == 0 and abs(a - b) <= c <= a + b and s <= 2 * k


def vertex_triple(graph: RibbonGraph, vertex: int, j: Sequence[int]) -> tuple[int, int, int]:
    """Colors at a trivalent vertex in ribbon order (a loop contributes its color twice)."""
    a, b, c = graph.vertex_edges[vertex]
    return j[a], j[b], j[c]


def check_coloring(graph: RibbonGraph, j: Sequence[int]) -> bool:
    if len(j) != graph.n_edges or any(not 0 <= x <= graph.k for x in j):
        return False
    for i in graph.boundary_edges:
        if j[i] != graph.boundary_colors[graph.edge_ids[i]]:
            return False
    return all(is_admissible(vertex_triple(graph, v, j), graph.k) for v in graph.trivalent)


# ---------------------------------------------------------------------------
# enumeration


def _plan(graph: RibbonGraph, preset: Mapping[int, int], late: int = 0) -> tuple[list[int], list[list[int]]]:
    """Greedy edge order plus, per position, the vertices completed there.

    Edges in the ``late`` mask are scheduled after all others.
    """
    n = graph.n_edges
    assigned = set(preset)
    touching: dict[int, list[int]] = {i: [] for i in range(n)}
    for v in graph.trivalent:
        for i in set(graph.vertex_edges[v]):
            touching[i].append(v)

    def score(i: int) -> tuple:
        done = sum(
            all(x in assigned or x == i for x in graph.vertex_edges[v]) for v in touching[i]
        )
        near = sum(sum(x in assigned for x in graph.vertex_edges[v]) for v in touching[i])
        return (late >> i & 1, -done, -near, i)

    order: list[int] = []
    while len(assigned) < n:
        i = min((x for x in range(n) if x not in assigned), key=score)
        order.append(i)
        assigned.add(i)

    # vertices already complete from the preset are checked once up front
    seen_done: set[int] = set()
    completes: list[list[int]] = []
    assigned = set(preset)
    for i in order:
        assigned.add(i)
        now = [
            v
            for v in touching[i]
            if v not in seen_done and all(x in assigned for x in graph.vertex_edges[v])
        ]
        seen_done.update(now)
        completes.append(now)
    return order, completes


def _candidates(graph: RibbonGraph, v: int, edge: int, col: list[int], k: int) -> range:
    es = graph.vertex_edges[v]
    others = list(es)
    others.remove(edge)
    if edge in others:  # edge is a loop at v; the remaining entry is the bar
        bar = col[[x for x in es if x != edge][0]]
        if bar % 2:
            return range(0)
        return range(bar // 2, k - bar // 2 + 1)
    a, b = col[others[0]], col[others[1]]
    return range(abs(a - b), min(a + b, 2 * k - a - b) + 1, 2)


def _search(graph: RibbonGraph, preset: Mapping[int, int], count_only: bool):
    k = graph.k
    col = [-1] * graph.n_edges
    for i, c in preset.items():
        col[i] = c
    for v in graph.trivalent:
        if all(col[x] >= 0 for x in graph.vertex_edges[v]):
            if not is_admissible(vertex_triple(graph, v, col), k):
                return 0 if count_only else []
    order, completes = _plan(graph, preset)
    depth_max = len(order)
    found: list[Coloring] = []
    total = 0

    def rec(depth: int) -> None:
        nonlocal total
        if depth == depth_max:
            if count_only:
                total += 1
            else:
                found.append(tuple(col))
            return
        e = order[depth]
        done = completes[depth]
        if done:
            cand = _candidates(graph, done[0], e, col, k)
            rest = done[1:]
        else:
            cand = range(k + 1)
            rest = ()
        for c in cand:
            col[e] = c
            if all(is_admissible(vertex_triple(graph, v, col), k) for v in rest):
                rec(depth + 1)
        col[e] = -1

    rec(0)
    if count_only:
        return total
    found.sort()
    return found


def _preset(graph: RibbonGraph, fixed: Mapping[int, int] | None) -> dict[int, int] | None:
    """Boundary colors merged with ``fixed``; None when the two disagree."""
    preset = {i: graph.boundary_colors[graph.edge_ids[i]] for i in graph.boundary_edges}
    for i, c in (fixed or {}).items():
        if preset.get(i, c) != c or not 0 <= c <= graph.k:
            return None
        preset[i] = c
    return preset


def enumerate_colorings(graph: RibbonGraph, fixed: Mapping[int, int] | None = None) -> list[Coloring]:
    """All admissible colorings compatible with the boundary, sorted lexicographically.

    ``fixed`` maps edge indices to prescribed colors.
    """
    preset = _preset(graph, fixed)
    if preset is None:
        return []
    return _search(graph, preset, count_only=False)


def pattern_counts(
    graph: RibbonGraph,
    keep: int = 0,
    fixed: Mapping[int, int] | None = None,
) -> dict[tuple[int, ...], int]:
    """Multiplicity of each restriction of an admissible coloring to the edges in ``keep``.

    Dynamic programming over an edge frontier: edges are colored in the
    enumeration order and the state holds only the colors of edges that a
    later vertex check still needs, plus the kept edges. Keys list the kept
    colors in ascending edge order. ``keep = 0`` gives ``{(): count}``.
    """
    preset = _preset(graph, fixed)
    if preset is None:
        return {}
    k = graph.k
    col = [-1] * graph.n_edges
    for i, c in preset.items():
        col[i] = c
    for v in graph.trivalent:
        if all(col[x] >= 0 for x in graph.vertex_edges[v]):
            if not is_admissible(vertex_triple(graph, v, col), k):
                return {}
    order, completes = _plan(graph, preset, late=keep)
    last_use = {i: -1 for i in range(graph.n_edges)}
    for pos, done in enumerate(completes):
        for v in done:
            for x in graph.vertex_edges[v]:
                last_use[x] = max(last_use[x], pos)
    big = len(order)
    for i in range(graph.n_edges):
        if keep >> i & 1:
            last_use[i] = big

    frontier: tuple[int, ...] = ()
    states: dict[tuple[int, ...], int] = {(): 1}
    for pos, e in enumerate(order):
        new_frontier = tuple(x for x in frontier + (e,) if last_use[x] > pos)
        slot = {x: n for n, x in enumerate(frontier)}
        nxt: dict[tuple[int, ...], int] = {}
        done = completes[pos]
        for state, mult in states.items():
            for x, n in slot.items():
                col[x] = state[n]
            if done:
                cand = _candidates(graph, done[0], e, col, k)
                rest = done[1:]
            else:
                cand = range(k + 1)
                rest = ()
            for c in cand:
                col[e] = c
                if rest and not all(is_admissible(vertex_triple(graph, v, col), k) for v in rest):
                    continue
                key = tuple(col[x] for x in new_frontier)
                nxt[key] = nxt.get(key, 0) + mult
        frontier, states = new_frontier, nxt

    kept = [i for i in range(graph.n_edges) if keep >> i & 1]
    pos_of = {x: n for n, x in enumerate(frontier)}
    out: dict[tuple[int, ...], int] = {}
    for state, mult in states.items():
        key = tuple(state[pos_of[i]] if i in pos_of else preset[i] for i in kept)
        out[key] = out.get(key, 0) + mult
    return out


def search_count(graph: RibbonGraph, fixed: Mapping[int, int] | None = None) -> int:
    """Number of admissible colorings by exhaustive search, without storing them."""
    preset = _preset(graph, fixed)
    if preset is None:
        return 0
    return _search(graph, preset, count_only=True)


def count_colorings(graph: RibbonGraph, fixed: Mapping[int, int] | None = None) -> int:
    """Number of admissible colorings (dynamic programming, no enumeration)."""
    return sum(pattern_counts(graph, 0, fixed).values())


def expand_pattern(graph: RibbonGraph, keep: int, pattern: Sequence[int]) -> list[int]:
    """Full-length color list carrying ``pattern`` on the kept edges and 0 elsewhere."""
    col = [0] * graph.n_edges
    it = iter(pattern)
    for i in range(graph.n_edges):
        if keep >> i & 1:
            col[i] = next(it)
    return col


# ---------------------------------------------------------------------------
# cycle action and meridian exponent


def act_cycle(lam: CycleClass, j: Sequence[int], k: int) -> Coloring:
    """Replace j by k - j on the edges of ``lam``."""
    bits = lam.bits
    return tuple(k - x if bits >> i & 1 else x for i, x in enumerate(j))


def meridian_exponent(mu: MeridianClass, j: Sequence[int], use_rep: bool = False) -> int:
    """Sum of colors over the meridian's edges (canonical form unless ``use_rep``)."""
    bits = mu.rep if use_rep else mu.bits
    return sum(x for i, x in enumerate(j) if bits >> i & 1)


def fixed_colorings(graph: RibbonGraph, lam: CycleClass) -> list[Coloring]:
    """Colorings with lam . j = j, i.e. k/2 on every edge of the cycle."""
    if not lam:
        return enumerate_colorings(graph)
    if graph.k % 2:
        return []
    fixed = {i: graph.k // 2 for i in range(graph.n_edges) if lam.bits >> i & 1}
    return enumerate_colorings(graph, fixed)


# ---------------------------------------------------------------------------
# classification relative to a cycle


@dataclass(frozen=True)
class EdgeClassification:
    on_cycle: int
    external: int
    internal: int
    walks: tuple[tuple[WalkStep, ...], ...]

    @property
    def n_on_cycle(self) -> int:
        return self.on_cycle.bit_count()


def _cycle_vertices(graph: RibbonGraph, bits: int) -> set[int]:
    out = set()
    for i, (a, b) in enumerate(graph.edge_ends):
        if bits >> i & 1:
            out.update((a, b))
    return out


def classify_edges(graph: RibbonGraph, lam: CycleClass, reverse: bool = False) -> EdgeClassification:
    """Split the edges off ``lam`` into external (one end on it) and internal (both ends)."""
    if not lam:
        raise EmptyCycle("classification needs a nonzero cycle")
    on = lam.bits
    verts = _cycle_vertices(graph, on)
    ext = inn = 0
    for i, (a, b) in enumerate(graph.edge_ends):
        if on >> i & 1:
            continue
        hits = (a in verts) + (b in verts)
        if hits == 2:
            inn |= 1 << i
        elif hits == 1:
            ext |= 1 << i
    walks = tuple(tuple(w) for w in cycle_walks(graph, lam, reverse=reverse))
    return EdgeClassification(on, ext, inn, walks)


# ---------------------------------------------------------------------------
# decomposition along a cycle


@dataclass(frozen=True)
class LambdaDecomposition:
    """Pieces of the graph cut along a cycle, plus the cut of the meridian part.

    Edge-id fields refer to the original graph except ``mu_cut_edges``,
    which lists both halves of each cut edge as edge ids of
    ``gamma_prime_mu``. Boundary colors on edges that become univalent
    through the surgery are placeholders (0) to be set by the caller.
    """

    gamma_lambda: RibbonGraph
    gamma_prime: RibbonGraph
    gamma_prime_mu: RibbonGraph
    e_u_lambda: tuple[int, ...]
    e_t_lambda: tuple[int, ...]
    e_u_complement: tuple[int, ...]
    internal: tuple[int, ...]
    mu_lambda: tuple[int, ...]
    mu_cut_edges: tuple[int, ...]
    cut_pairs: tuple[tuple[int, int], ...]
    n1: int
    n2: int
    m: int
    m_prime: int
    g1: int
    g2: int


def _subgraph(
    graph: RibbonGraph,
    keep_edges: set[int],
    keep_vertices: set[int],
    boundary_colors: Mapping[int, int],
) -> RibbonGraph:
    """Restrict to the given edges; each half-edge at a dropped vertex gets a new univalent vertex."""
    next_vid = max(v.id for v in graph.vertices) + 1
    vertices = [graph.vertex_by_id[v] for v in sorted(keep_vertices)]
    edges = []
    colors = dict(boundary_colors)
    for i in sorted(keep_edges):
        e = graph.edges[i]
        edges.append(e)
        for h in e.half_edges:
            if graph.he_vertex[h] not in keep_vertices:
                vertices.append(Vertex(next_vid, (h,)))
                next_vid += 1
                colors.setdefault(e.id, 0)
    return RibbonGraph(graph.k, vertices, edges, colors, require_connected=False)


def _cut(graph: RibbonGraph, cut_ids: Sequence[int]) -> tuple[RibbonGraph, tuple[tuple[int, int], ...]]:
    """Cut each listed edge into two edges ending at new univalent vertices."""
    next_vid = max((v.id for v in graph.vertices), default=0) + 1
    next_eid = max((e.id for e in graph.edges), default=0) + 1
    next_he = max(graph.he_vertex, default=0) + 1
    vertices = list(graph.vertices)
    edges = [e for e in graph.edges if e.id not in cut_ids]
    colors = dict(graph.boundary_colors)
    pairs = []
    for eid in cut_ids:
        h1, h2 = graph.edges[graph.edge_index[eid]].half_edges
        a, b = next_he, next_he + 1
        next_he += 2
        edges.append(Edge(eid, (h1, a)))
        edges.append(Edge(next_eid, (b, h2)))
        vertices.append(Vertex(next_vid, (a,)))
        vertices.append(Vertex(next_vid + 1, (b,)))
        colors[eid] = 0
        colors[next_eid] = 0
        pairs.append((eid, next_eid))
        next_vid += 2
        next_eid += 1
    return RibbonGraph(graph.k, vertices, edges, colors, require_connected=False), tuple(pairs)


def decompose(graph: RibbonGraph, lam: CycleClass, mu: MeridianClass) -> LambdaDecomposition:
    """Split the graph along ``lam`` and cut the remainder along the meridian.

    The meridian enters through the representative it was built from; the
    part of it that is cut is its restriction to the interior edges of the
    complement piece.
    """
    cls = classify_edges(graph, lam)
    on, ext, inn = cls.on_cycle, cls.external, cls.internal
    verts_on = _cycle_vertices(graph, on)
    e_u_mask = ext & graph.boundary_mask
    e_t_mask = ext & ~graph.boundary_mask
    comp_u_mask = graph.boundary_mask & ~e_u_mask

    lam_edges = {i for i in range(graph.n_edges) if (on | ext | inn) >> i & 1}
    bc = {graph.edge_ids[i]: graph.boundary_colors[graph.edge_ids[i]] for i in range(graph.n_edges) if e_u_mask >> i & 1}
    gamma_lambda = _subgraph(graph, lam_edges, verts_on, bc)

    rest_mask = ((1 << graph.n_edges) - 1) & ~(on | inn | e_u_mask)
    rest_edges = {i for i in range(graph.n_edges) if rest_mask >> i & 1}
    rest_vertices = {v.id for v in graph.vertices if v.id not in verts_on and any(
        i in rest_edges for i in graph.vertex_edges[v.id])}
    bc2 = {graph.edge_ids[i]: graph.boundary_colors[graph.edge_ids[i]] for i in range(graph.n_edges) if comp_u_mask >> i & 1}
    gamma_prime = _subgraph(graph, rest_edges, rest_vertices, bc2)

    cut_mask = mu.rep & rest_mask & ~e_t_mask & ~graph.boundary_mask
    cut_ids = graph.edges_of(cut_mask)
    gamma_prime_mu, pairs = _cut(gamma_prime, cut_ids)

    return LambdaDecomposition(
        gamma_lambda=gamma_lambda,
        gamma_prime=gamma_prime,
        gamma_prime_mu=gamma_prime_mu,
        e_u_lambda=graph.edges_of(e_u_mask),
        e_t_lambda=graph.edges_of(e_t_mask),
        e_u_complement=graph.edges_of(comp_u_mask),
        internal=graph.edges_of(inn),
        mu_lambda=cut_ids,
        mu_cut_edges=tuple(x for p in pairs for x in p),
        cut_pairs=pairs,
        n1=e_u_mask.bit_count(),
        n2=comp_u_mask.bit_count(),
        m=e_t_mask.bit_count(),
        m_prime=len(cut_ids),
        g1=gamma_lambda.formal_genus(),
        g2=gamma_prime.formal_genus(),
    )
