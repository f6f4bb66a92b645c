"""Ribbon unitrivalent graphs, their Z/2 homology, and meridian/longitude classes.

Edge vectors over Z/2 are Python ints used as bitmasks: bit ``i`` stands for
the ``i``-th edge in ascending edge-id order. Longitude classes are cycles of
the graph (no quotient is needed). Meridian classes live in the quotient of
Z/2-vectors on all edges by the vertex relations ``e_1 + e_2 + e_3``; a vertex
carrying a loop contributes the relation ``e_bar``.
"""

from __future__ import annotations

import hashlib
import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .errors import InputNotInLattice, ParseError, ValidationError

__all__ = [
    "Vertex",
    "Edge",
    "RibbonGraph",
    "CycleClass",
    "MeridianClass",
    "MeridianSpace",
    "WalkStep",
    "parse_graph",
    "load_graph",
    "genus",
    "cycle_basis",
    "all_cycle_classes",
    "cycle_from_edges",
    "meridian_from_edges",
    "meridian_canonicalize",
    "vertex_generator",
    "pairing",
    "geometric_intersection",
    "boundary_subgroup_contains",
    "cycle_walks",
    "longitude_intersection",
    "face_count",
    "surface_genus",
    "parse_edge_literal",
]


@dataclass(frozen=True)
class Vertex:
    id: int
    half_edges: tuple[int, ...]


@dataclass(frozen=True)
class Edge:
    id: int
    half_edges: tuple[int, int]


class RibbonGraph:
    """Validated ribbon graph with trivalent and univalent vertices.

    Half-edge order at a vertex is counterclockwise. ``boundary_colors`` maps
    each edge meeting a univalent vertex to its fixed color.
    """

    def __init__(
        self,
        k: int,
        vertices: Iterable[Vertex],
        edges: Iterable[Edge],
        boundary_colors: Mapping[int, int],
        *,
        require_connected: bool = True,
    ):
        self.k = k
        self.vertices = tuple(sorted(vertices, key=lambda v: v.id))
        self.edges = tuple(sorted(edges, key=lambda e: e.id))
        self.boundary_colors = MappingProxyType(dict(sorted(boundary_colors.items())))
        self._build(require_connected)

    # construction ---------------------------------------------------------
    def _build(self, require_connected: bool) -> None:
        if not isinstance(self.k, int) or isinstance(self.k, bool) or self.k < 0:
            raise ValidationError(f"level must be a non-negative integer, got {self.k!r}")
        vids = [v.id for v in self.vertices]
        if len(set(vids)) != len(vids):
            raise ValidationError("duplicate vertex id")
        eids = [e.id for e in self.edges]
        if len(set(eids)) != len(eids):
            raise ValidationError("duplicate edge id")

        self.edge_ids: tuple[int, ...] = tuple(eids)
        self.edge_index: dict[int, int] = {e: i for i, e in enumerate(eids)}
        self.he_vertex: dict[int, int] = {}
        self.he_pos: dict[int, int] = {}
        for v in self.vertices:
            if len(v.half_edges) not in (1, 3):
                raise ValidationError(f"vertex {v.id} has valence {len(v.half_edges)}; expected 1 or 3")
            for pos, h in enumerate(v.half_edges):
                if h in self.he_vertex:
                    raise ValidationError(f"half-edge {h} appears in more than one vertex slot")
                self.he_vertex[h] = v.id
                self.he_pos[h] = pos
        self.he_edge: dict[int, int] = {}
        self.partner: dict[int, int] = {}
        for e in self.edges:
            if len(e.half_edges) != 2 or e.half_edges[0] == e.half_edges[1]:
                raise ValidationError(f"edge {e.id} must join two distinct half-edges")
            for h in e.half_edges:
                if h in self.he_edge:
                    raise ValidationError(f"half-edge {h} used by more than one edge")
                if h not in self.he_vertex:
                    raise ValidationError(f"half-edge {h} of edge {e.id} is not attached to a vertex")
                self.he_edge[h] = e.id
            h1, h2 = e.half_edges
            self.partner[h1] = h2
            self.partner[h2] = h1
        unused = set(self.he_vertex) - set(self.he_edge)
        if unused:
            raise ValidationError(f"half-edges {sorted(unused)} belong to no edge")

        self.vertex_by_id = {v.id: v for v in self.vertices}
        self.trivalent = tuple(v.id for v in self.vertices if len(v.half_edges) == 3)
        self.univalent = tuple(v.id for v in self.vertices if len(v.half_edges) == 1)
        self.edge_ends: tuple[tuple[int, int], ...] = tuple(
            (self.he_vertex[e.half_edges[0]], self.he_vertex[e.half_edges[1]]) for e in self.edges
        )
        # edge indices around each vertex, in ribbon order (a loop appears twice)
        self.vertex_edges: dict[int, tuple[int, ...]] = {
            v.id: tuple(self.edge_index[self.he_edge[h]] for h in v.half_edges) for v in self.vertices
        }
        uni = set(self.univalent)
        self.boundary_edges: tuple[int, ...] = tuple(
            i for i, (a, b) in enumerate(self.edge_ends) if a in uni or b in uni
        )
        self.boundary_mask = 0
        for i in self.boundary_edges:
            self.boundary_mask |= 1 << i

        expected = {self.edge_ids[i] for i in self.boundary_edges}
        given = set(self.boundary_colors)
        if given != expected:
            missing, extra = sorted(expected - given), sorted(given - expected)
            raise ValidationError(f"boundary colors mismatch: missing {missing}, extra {extra}")
        for eid, c in self.boundary_colors.items():
            if not isinstance(c, int) or isinstance(c, bool) or not 0 <= c <= self.k:
                raise ValidationError(f"boundary color {c!r} on edge {eid} outside 0..{self.k}")

        self.n_components = self._count_components()
        if require_connected and self.vertices and self.n_components != 1:
            raise ValidationError("graph is disconnected")

    def _count_components(self) -> int:
        adj: dict[int, list[int]] = {v.id: [] for v in self.vertices}
        for a, b in self.edge_ends:
            adj[a].append(b)
            adj[b].append(a)
        seen: set[int] = set()
        comps = 0
        for v in adj:
            if v in seen:
                continue
            comps += 1
            stack = [v]
            seen.add(v)
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
        return comps

    # basic data -----------------------------------------------------------
    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_boundary(self) -> int:
        return len(self.univalent)

    @property
    def interior_mask(self) -> int:
        return ((1 << self.n_edges) - 1) & ~self.boundary_mask

    def other_end(self, h: int) -> int:
        return self.partner[h]

    def ccw_next(self, h: int) -> int:
        """Half-edge following ``h`` counterclockwise at its vertex."""
        v = self.vertex_by_id[self.he_vertex[h]]
        return v.half_edges[(self.he_pos[h] + 1) % len(v.half_edges)]

    def formal_genus(self) -> int:
        """(E + 3 - 2N)/3 with N univalent vertices, i.e. E - V + 1; the cycle rank when connected."""
        return self.n_edges - len(self.vertices) + 1

    def with_level(self, k: int) -> "RibbonGraph":
        return RibbonGraph(k, self.vertices, self.edges, self.boundary_colors, require_connected=self.n_components <= 1)

    def with_boundary_colors(self, colors: Mapping[int, int]) -> "RibbonGraph":
        return RibbonGraph(self.k, self.vertices, self.edges, colors, require_connected=self.n_components <= 1)

    def boundary_color_vector(self) -> tuple[int, ...]:
        return tuple(self.boundary_colors[self.edge_ids[i]] for i in self.boundary_edges)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "vertices": [{"id": v.id, "half_edges": list(v.half_edges)} for v in self.vertices],
            "edges": [{"id": e.id, "half_edges": list(e.half_edges)} for e in self.edges],
            "boundary_colors": {str(e): c for e, c in self.boundary_colors.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def graph_hash(self) -> str:
        return hashlib.sha256(self.to_json().encode()).hexdigest()[:16]

    # vector helpers -------------------------------------------------------
    def mask_of(self, edge_ids: Iterable[int]) -> int:
        m = 0
        for e in edge_ids:
            try:
                m ^= 1 << self.edge_index[e]
            except KeyError:
                raise ValidationError(f"unknown edge id {e}") from None
        return m

    def edges_of(self, mask: int) -> tuple[int, ...]:
        return tuple(self.edge_ids[i] for i in range(self.n_edges) if mask >> i & 1)

    def __repr__(self) -> str:
        return (
            f"RibbonGraph(k={self.k}, g={self.formal_genus()}, n={self.n_boundary}, "
            f"edges={self.n_edges})"
        )


# ---------------------------------------------------------------------------
# parsing


def _as_int(x, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ParseError(f"{what} must be an integer, got {x!r}")
    return x


def graph_from_dict(data: Mapping) -> RibbonGraph:
    if not isinstance(data, Mapping):
        raise ParseError("graph must be a JSON object")
    for key in ("k", "vertices", "edges"):
        if key not in data:
            raise ParseError(f"missing key {key!r}")
    k = _as_int(data["k"], "k")
    try:
        vertices = [
            Vertex(_as_int(v["id"], "vertex id"), tuple(_as_int(h, "half-edge") for h in v["half_edges"]))
            for v in data["vertices"]
        ]
        edges = [
            Edge(_as_int(e["id"], "edge id"), tuple(_as_int(h, "half-edge") for h in e["half_edges"]))
            for e in data["edges"]
        ]
        raw_colors = data.get("boundary_colors", {}) or {}
        colors = {int(key): _as_int(c, "boundary color") for key, c in raw_colors.items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed graph record: {exc}") from None
    return RibbonGraph(k, vertices, edges, colors)


def parse_graph(text: bytes | str) -> RibbonGraph:
    """Parse and validate a graph from its JSON text."""
    try:
        data = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return graph_from_dict(data)


def load_graph(path: str, level: int | None = None) -> RibbonGraph:
    with open(path, "rb") as fh:
        graph = parse_graph(fh.read())
    return graph if level is None else graph.with_level(level)


def genus(graph: RibbonGraph) -> int:
    """Cycle rank E - V + 1 of a connected graph."""
    return graph.n_edges - len(graph.vertices) + 1


# ---------------------------------------------------------------------------
# longitude classes


@dataclass(frozen=True)
class CycleClass:
    """Element of H_1(graph; Z/2) as an edge bitmask with even degree at every vertex."""

    bits: int
    edge_ids: tuple[int, ...] = field(compare=False, repr=False)

    def __add__(self, other: "CycleClass") -> "CycleClass":
        return CycleClass(self.bits ^ other.bits, self.edge_ids)

    def __bool__(self) -> bool:
        return self.bits != 0

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.bits >> i & 1 for i in range(len(self.edge_ids)))

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(e for i, e in enumerate(self.edge_ids) if self.bits >> i & 1)

    def literal(self) -> str:
        return "+".join(f"f{e}" for e in self.support) or "0"

    def __repr__(self) -> str:
        return f"CycleClass({self.literal()})"


def _check_cycle(graph: RibbonGraph, bits: int) -> None:
    if bits & graph.boundary_mask:
        raise ValidationError("a longitude cannot use an edge ending at a univalent vertex")
    for v in graph.trivalent:
        deg = sum(bits >> i & 1 for i in graph.vertex_edges[v])
        if deg % 2:
            raise ValidationError(f"edge set has odd degree at vertex {v}; not a cycle")


def cycle_from_edges(graph: RibbonGraph, edge_ids: Iterable[int]) -> CycleClass:
    bits = graph.mask_of(edge_ids)
    _check_cycle(graph, bits)
    return CycleClass(bits, graph.edge_ids)


def _spanning_tree(graph: RibbonGraph, root: int | None) -> tuple[set[int], dict[int, tuple[int, int]]]:
    """BFS tree: (tree edge indices, parent map vertex -> (parent vertex, edge index))."""
    adj: dict[int, list[tuple[int, int]]] = {v.id: [] for v in graph.vertices}
    for i, (a, b) in enumerate(graph.edge_ends):
        adj[a].append((b, i))
        if a != b:
            adj[b].append((a, i))
    start = graph.vertices[0].id if root is None else root
    parent: dict[int, tuple[int, int]] = {start: (start, -1)}
    tree: set[int] = set()
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y, i in sorted(adj[x], key=lambda t: graph.edge_ids[t[1]]):
            if y not in parent:
                parent[y] = (x, i)
                tree.add(i)
                queue.append(y)
    return tree, parent


def cycle_basis(graph: RibbonGraph, root: int | None = None) -> list[CycleClass]:
    """Fundamental cycles of a BFS spanning tree, one per non-tree edge in id order."""
    tree, parent = _spanning_tree(graph, root)

    def path_to_root(v: int) -> int:
        bits = 0
        while parent[v][1] != -1:
            v, i = parent[v][0], parent[v][1]
            bits ^= 1 << i
        return bits

    basis = []
    for i in range(graph.n_edges):
        if i in tree:
            continue
        a, b = graph.edge_ends[i]
        bits = (1 << i) ^ path_to_root(a) ^ path_to_root(b)
        basis.append(CycleClass(bits, graph.edge_ids))
    return basis


def all_cycle_classes(graph: RibbonGraph, basis: Sequence[CycleClass] | None = None) -> list[CycleClass]:
    """All 2^g classes, in the binary order of combinations of the basis."""
    basis = cycle_basis(graph) if basis is None else list(basis)
    out = []
    for mask in range(1 << len(basis)):
        bits = 0
        for i, c in enumerate(basis):
            if mask >> i & 1:
                bits ^= c.bits
        out.append(CycleClass(bits, graph.edge_ids))
    return out


# ---------------------------------------------------------------------------
# meridian classes


@dataclass(frozen=True)
class MeridianClass:
    """Element of the meridian group; equality is equality of canonical forms.

    ``rep`` keeps the representative the class was built from, ``bits`` the
    canonical one. Geometric quantities that depend on a representative use
    ``bits`` unless a caller explicitly asks for ``rep``.
    """

    bits: int
    rep: int = field(compare=False)
    space: "MeridianSpace" = field(compare=False, repr=False)

    @property
    def edge_ids(self) -> tuple[int, ...]:
        return self.space.graph.edge_ids

    def __add__(self, other: "MeridianClass") -> "MeridianClass":
        return self.space.make(self.rep ^ other.rep)

    def __bool__(self) -> bool:
        return self.bits != 0

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.bits >> i & 1 for i in range(len(self.edge_ids)))

    def literal(self, use_rep: bool = False) -> str:
        mask = self.rep if use_rep else self.bits
        return "+".join(f"e{e}" for i, e in enumerate(self.edge_ids) if mask >> i & 1) or "0"

    def __repr__(self) -> str:
        return f"MeridianClass({self.literal()})"


def _echelon(vectors: Iterable[int], priority: Sequence[int]) -> list[tuple[int, int]]:
    """Fully reduced Z/2 echelon basis as (pivot bit index, row) pairs."""
    rows: list[tuple[int, int]] = []
    for v in vectors:
        for p, r in rows:
            if v >> p & 1:
                v ^= r
        if not v:
            continue
        pivot = next(i for i in priority if v >> i & 1)
        rows = [(p, r ^ v) if r >> pivot & 1 else (p, r) for p, r in rows]
        rows.append((pivot, v))
    return rows


def _reduce(v: int, rows: Sequence[tuple[int, int]]) -> int:
    for p, r in rows:
        if v >> p & 1:
            v ^= r
    return v


class MeridianSpace:
    """Quotient of Z/2 edge vectors by the vertex relations, with a fixed reduction.

    ``descending=True`` (default) eliminates high edge ids first, so canonical
    representatives prefer low ids. The other choice gives a second, equally
    valid set of representatives; it is used for re-basing checks.
    """

    def __init__(self, graph: RibbonGraph, descending: bool = True):
        self.graph = graph
        self.descending = descending
        n = graph.n_edges
        priority = list(range(n - 1, -1, -1)) if descending else list(range(n))
        rels = []
        for v in graph.trivalent:
            r = 0
            for i in graph.vertex_edges[v]:
                r ^= 1 << i
            rels.append(r)
        self.relations = rels
        self.rows = _echelon(rels, priority)
        self.boundary_rows = _echelon(rels + [1 << i for i in graph.boundary_edges], priority)

    @property
    def relation_rank(self) -> int:
        return len(self.rows)

    @property
    def rank(self) -> int:
        return self.graph.n_edges - len(self.rows)

    def canonical(self, bits: int) -> int:
        return _reduce(bits, self.rows)

    def make(self, rep: int) -> MeridianClass:
        return MeridianClass(self.canonical(rep), rep, self)

    def zero(self) -> MeridianClass:
        return self.make(0)

    def in_boundary_subgroup(self, mu: MeridianClass) -> bool:
        return _reduce(mu.rep, self.boundary_rows) == 0

    def basis(self) -> list[MeridianClass]:
        """Single-edge classes e_l for the non-pivot edges: a basis of the quotient."""
        pivots = {p for p, _ in self.rows}
        return [self.make(1 << i) for i in range(self.graph.n_edges) if i not in pivots]

    def nonboundary_basis(self) -> list[MeridianClass]:
        """Single-edge classes spanning the quotient modulo the boundary subgroup."""
        pivots = {p for p, _ in self.boundary_rows}
        return [self.make(1 << i) for i in range(self.graph.n_edges) if i not in pivots]


def meridian_from_edges(graph: RibbonGraph, edge_ids: Iterable[int], space: MeridianSpace | None = None) -> MeridianClass:
    space = space or MeridianSpace(graph)
    return space.make(graph.mask_of(edge_ids))


def vertex_generator(graph: RibbonGraph, vertex: int, slot: int) -> list[Fraction]:
    """Half-integer vector (e_1 + e_2 + e_3)/2 - e_slot at a trivalent vertex."""
    vec = [Fraction(0)] * graph.n_edges
    edges = graph.vertex_edges[vertex]
    for i in edges:
        vec[i] += Fraction(1, 2)
    vec[edges[slot]] -= 1
    return vec


def meridian_canonicalize(graph: RibbonGraph, raw: Sequence, space: MeridianSpace | None = None) -> MeridianClass:
    """Reduce an integer edge vector to its canonical meridian class.

    Entries may be ints or Fractions; the vector must be integral, otherwise
    it is not in the lattice spanned by the single-edge meridians.
    """
    if len(raw) != graph.n_edges:
        raise InputNotInLattice(f"expected {graph.n_edges} entries, got {len(raw)}")
    bits = 0
    for i, x in enumerate(raw):
        x = Fraction(x)
        if x.denominator != 1:
            raise InputNotInLattice(f"entry {i} = {x} is not an integer")
        if x.numerator % 2:
            bits |= 1 << i
    space = space or MeridianSpace(graph)
    return space.make(bits)


def pairing(mu: MeridianClass, lam: CycleClass) -> int:
    """Mod-2 pairing sum_l mu_l lambda_l."""
    return (mu.bits & lam.bits).bit_count() & 1


def geometric_intersection(mu: MeridianClass, lam: CycleClass) -> int:
    """Number of edges shared by the canonical meridian and the cycle."""
    return (mu.bits & lam.bits).bit_count()


def boundary_subgroup_contains(space: MeridianSpace, mu: MeridianClass) -> bool:
    return space.in_boundary_subgroup(mu)


# ---------------------------------------------------------------------------
# cycle walks and ribbon topology


@dataclass(frozen=True)
class WalkStep:
    """Passage of a cycle through a vertex.

    ``edge_in``/``edge_out`` are edge indices; ``he_in``/``he_out`` the
    half-edges at the vertex; ``third`` the half-edge not used by the cycle.
    """

    vertex: int
    edge_in: int
    he_in: int
    edge_out: int
    he_out: int
    third: int


def third_on_left(graph: RibbonGraph, step: WalkStep) -> bool:
    """True when the counterclockwise order at the vertex is (in, out, third)."""
    return graph.ccw_next(step.he_in) == step.he_out


def _walk_from(graph: RibbonGraph, bits: int, start_he: int) -> list[WalkStep]:
    """Walk the cycle component leaving through ``start_he``."""
    steps: list[WalkStep] = []
    h = start_he
    while True:
        arrive = graph.partner[h]
        v = graph.vertex_by_id[graph.he_vertex[arrive]]
        others = [x for x in v.half_edges if x != arrive]
        nxt = [x for x in others if bits >> graph.edge_index[graph.he_edge[x]] & 1]
        third = [x for x in others if x not in nxt]
        if len(nxt) != 1 or len(third) != 1:
            raise ValidationError(f"cycle is not a disjoint union of simple closed curves at vertex {v.id}")
        out = nxt[0]
        steps.append(
            WalkStep(
                v.id,
                graph.edge_index[graph.he_edge[arrive]],
                arrive,
                graph.edge_index[graph.he_edge[out]],
                out,
                third[0],
            )
        )
        h = out
        if h == start_he:
            return steps


def cycle_walks(graph: RibbonGraph, lam: CycleClass, reverse: bool = False) -> list[list[WalkStep]]:
    """Traverse every component of ``lam``.

    Each component starts at its lowest-id edge and is traversed toward the
    endpoint where the next cycle edge sits immediately counterclockwise of
    the incoming half-edge; if both or neither endpoint qualifies, the edge
    is traversed from its first half-edge to its second. ``reverse`` flips
    every component. Each walk lists steps starting at the vertex reached
    through the lowest-id edge.
    """
    remaining = lam.bits
    walks = []
    while remaining:
        i = (remaining & -remaining).bit_length() - 1
        h1, h2 = graph.edges[i].half_edges
        # candidate directions: leave through h1 (arrive at h2's vertex) or through h2
        fwd = _walk_from(graph, lam.bits, h1)
        bwd = _walk_from(graph, lam.bits, h2)
        ok_f = third_on_left(graph, fwd[0])
        ok_b = third_on_left(graph, bwd[0])
        walk = bwd if ok_b and not ok_f else fwd
        if reverse:
            walk = bwd if walk is fwd else fwd
        comp = 0
        for s in walk:
            comp |= 1 << s.edge_in
        remaining &= ~comp
        walks.append(walk)
    return walks


def longitude_intersection(graph: RibbonGraph, x: CycleClass, y: CycleClass) -> int:
    """Mod-2 intersection of two cycles on the ribbon surface.

    Push ``y`` off to the right of its traversal. The push-off crosses the
    third half-edge at a vertex exactly when that half-edge lies on the
    right, and ``x`` meets the push-off there iff it uses that half-edge.
    """
    total = 0
    for walk in cycle_walks(graph, y):
        for s in walk:
            if not third_on_left(graph, s) and x.bits >> graph.edge_index[graph.he_edge[s.third]] & 1:
                total += 1
    return total & 1


def face_count(graph: RibbonGraph) -> int:
    """Number of boundary circles of the thickened graph."""
    seen: set[int] = set()
    faces = 0
    for h in graph.he_vertex:
        if h in seen:
            continue
        faces += 1
        x = h
        while x not in seen:
            seen.add(x)
            x = graph.ccw_next(graph.partner[x])
    return faces


def surface_genus(graph: RibbonGraph) -> int:
    """Genus of the thickened surface; zero exactly for planar ribbon structures."""
    chi = len(graph.vertices) - graph.n_edges
    return (2 * graph.n_components - chi - face_count(graph)) // 2


def parse_edge_literal(graph: RibbonGraph, text: str, prefix: str) -> list[int]:
    """Parse ``"f1+f4"`` / ``"e2+e3"`` into edge ids; ``"0"`` or empty means none."""
    text = text.strip()
    if text in ("", "0"):
        return []
    out = []
    for tok in text.split("+"):
        tok = tok.strip()
        if not tok.startswith(prefix) or not tok[len(prefix):].isdigit():
            raise ParseError(f"bad term {tok!r}; expected {prefix}<edge id>")
        eid = int(tok[len(prefix):])
        if eid not in graph.edge_index:
            raise ValidationError(f"unknown edge id {eid}")
        out.append(eid)
    return out
