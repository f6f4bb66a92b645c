"""The finite Heisenberg group of a ribbon graph and its action on colorings.

An element is stored as ``u^m tau(mu, lam)`` with ``m`` mod 4, a meridian
class ``mu`` and a cycle class ``lam``. On the coloring basis it acts by

    |j>  ->  rho^(m + mu o lam) (-1)^(j_mu) delta_j(lam) |lam . j>,

where ``rho = A^((k+2)^2) (-1)^(k+1)`` is the image of ``u`` and ``mu o lam``
counts the edges shared by the canonical meridian and the cycle. Matrices are
stored by columns since every column has a single nonzero entry.

Whole-matrix constructions need the full coloring list. The trace and the two
condition checks only look at colors near the cycle, so they run on
:func:`~heistqft.coloring.pattern_counts` and stay cheap on large graphs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .coloring import act_cycle, classify_edges, enumerate_colorings, expand_pattern, pattern_counts
from .cyclo import CycNum, QMonomial, make_ring
from .errors import ParseError
from .ribbon import (
    CycleClass,
    MeridianClass,
    MeridianSpace,
    RibbonGraph,
    all_cycle_classes,
    cycle_basis,
    cycle_from_edges,
    geometric_intersection,
    longitude_intersection,
    parse_edge_literal,
)
from .skein import delta_monomial, rescale_monomial

__all__ = [
    "DeltaFn",
    "HeisenbergElement",
    "rho_u",
    "make_element",
    "parse_element",
    "symplectic_pairing",
    "longitude_cocycle",
    "compose",
    "ColoringBasis",
    "RepMatrix",
    "meridian_matrix",
    "longitude_matrix",
    "rep_matrix",
    "trace",
    "trace_fixed",
    "ConditionReport",
    "verify_external_edge_condition",
    "verify_cocycle",
    "verify_involution",
]

DeltaFn = Callable[[RibbonGraph, CycleClass, Sequence[int]], QMonomial]


def _default_delta(graph: RibbonGraph, lam: CycleClass, j: Sequence[int]) -> QMonomial:
    return delta_monomial(graph, lam, j)


def rho_u(k: int) -> QMonomial:
    """Image of the central generator: A^((k+2)^2) (-1)^(k+1)."""
    ring = make_ring(k)
    return QMonomial(ring, (k + 2) ** 2 + (k + 1) * (ring.order // 2))


# ---------------------------------------------------------------------------
# group elements


@dataclass(frozen=True)
class HeisenbergElement:
    m: int
    mu: MeridianClass
    lam: CycleClass

    def __post_init__(self) -> None:
        object.__setattr__(self, "m", self.m % 4)

    @property
    def space(self) -> MeridianSpace:
        return self.mu.space

    @property
    def graph(self) -> RibbonGraph:
        return self.mu.space.graph

    def literal(self) -> str:
        return f"u^{self.m};mu={self.mu.literal()};lambda={self.lam.literal()}"


def make_element(
    space: MeridianSpace,
    m: int = 0,
    mu: Iterable[int] = (),
    lam: Iterable[int] = (),
) -> HeisenbergElement:
    """Element from edge id lists for the meridian and the cycle."""
    graph = space.graph
    return HeisenbergElement(m, space.make(graph.mask_of(mu)), cycle_from_edges(graph, lam))


def parse_element(graph: RibbonGraph, text: str, space: MeridianSpace | None = None) -> HeisenbergElement:
    """Parse ``"u^1;mu=e1+e3;lambda=f2+f4"``; every part may be left out."""
    space = space or MeridianSpace(graph)
    m, mu, lam = 0, [], []
    for part in filter(None, (p.strip() for p in text.split(";"))):
        if part.startswith("u"):
            power = part[1:].lstrip("^") or "1"
            try:
                m = int(power)
            except ValueError:
                raise ParseError(f"bad central power {part!r}") from None
        elif "=" in part:
            key, _, value = part.partition("=")
            key = key.strip()
            if key == "mu":
                mu = parse_edge_literal(graph, value, "e")
            elif key in ("lambda", "lam"):
                lam = parse_edge_literal(graph, value, "f")
            else:
                raise ParseError(f"unknown element part {key!r}")
        else:
            raise ParseError(f"cannot parse element part {part!r}")
    return make_element(space, m, mu, lam)


def symplectic_pairing(a: HeisenbergElement, b: HeisenbergElement) -> int:
    """Mod-2 intersection of the underlying homology classes."""
    graph = a.graph
    cross = (a.mu.bits & b.lam.bits).bit_count() + (b.mu.bits & a.lam.bits).bit_count()
    if a.lam and b.lam:
        cross += longitude_intersection(graph, a.lam, b.lam)
    return cross & 1


def longitude_cocycle(
    graph: RibbonGraph,
    lam1: CycleClass,
    lam2: CycleClass,
    delta: DeltaFn | None = None,
) -> int:
    """Exponent c with tau(lam1) tau(lam2) = rho^c tau(lam1 + lam2).

    Zero when the cycles do not cross on the surface. Otherwise the ratio is
    a constant power of ``rho``, read off from any single coloring.
    """
    if not lam1 or not lam2:
        return 0
    omega = longitude_intersection(graph, lam1, lam2)
    if not omega:
        return 0
    keep = _region(graph, lam1.bits) | _region(graph, lam2.bits)
    pattern = next(iter(pattern_counts(graph, keep)), None)
    if pattern is None:
        return omega
    j = expand_pattern(graph, keep, pattern)
    delta = delta or _default_delta
    k = graph.k
    lam12 = lam1 + lam2
    lhs = delta(graph, lam1, act_cycle(lam2, j, k)) * delta(graph, lam2, j)
    rhs = delta(graph, lam12, j) if lam12 else QMonomial.one(make_ring(k))
    ratio = lhs / rhs
    rho = rho_u(k)
    for c in range(4):
        if ratio == rho**c:
            return c
    raise ArithmeticError("longitude product is not a central multiple")


def compose(g: HeisenbergElement, h: HeisenbergElement, delta: DeltaFn | None = None) -> HeisenbergElement:
    """Product ``g h`` in normal form, matching the representation exactly."""
    graph = g.graph
    mu = g.mu + h.mu
    lam = g.lam + h.lam
    m = (
        g.m
        + h.m
        + geometric_intersection(g.mu, g.lam)
        + geometric_intersection(h.mu, h.lam)
        + 2 * (g.mu.bits & h.lam.bits).bit_count()
        + longitude_cocycle(graph, g.lam, h.lam, delta)
        - geometric_intersection(mu, lam)
    )
    return HeisenbergElement(m, mu, lam)


# ---------------------------------------------------------------------------
# matrices


@dataclass
class ColoringBasis:
    """The admissible colorings of a graph in lexicographic order."""

    graph: RibbonGraph
    colorings: list[tuple[int, ...]] = field(default_factory=list)
    index: dict[tuple[int, ...], int] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if not self.colorings:
            self.colorings = enumerate_colorings(self.graph)
        self.index = {j: n for n, j in enumerate(self.colorings)}

    @property
    def dim(self) -> int:
        return len(self.colorings)


class RepMatrix:
    """Monomial matrix: column ``c`` has the single entry ``cols[c] = (row, value)``."""

    __slots__ = ("k", "cols")

    def __init__(self, k: int, cols: Sequence[tuple[int, QMonomial]]):
        self.k = k
        self.cols = tuple(cols)

    @property
    def dim(self) -> int:
        return len(self.cols)

    @classmethod
    def identity(cls, k: int, dim: int) -> "RepMatrix":
        one = QMonomial.one(make_ring(k))
        return cls(k, [(c, one) for c in range(dim)])

    def __matmul__(self, other: "RepMatrix") -> "RepMatrix":
        out = []
        for r, v in other.cols:
            r2, w = self.cols[r]
            out.append((r2, w * v))
        return RepMatrix(self.k, out)

    def scaled(self, s: QMonomial) -> "RepMatrix":
        return RepMatrix(self.k, [(r, v * s) for r, v in self.cols])

    def __eq__(self, other) -> bool:
        if not isinstance(other, RepMatrix):
            return NotImplemented
        return self.k == other.k and self.dim == other.dim and all(
            r1 == r2 and v1 == v2 for (r1, v1), (r2, v2) in zip(self.cols, other.cols)
        )

    __hash__ = None  # mutable-looking value type; not hashable

    def is_permutation_like(self) -> bool:
        """One nonzero entry per row as well as per column."""
        return len({r for r, _ in self.cols}) == self.dim

    def trace(self) -> CycNum:
        ring = make_ring(self.k)
        counts: dict[tuple, list] = {}
        for c, (r, v) in enumerate(self.cols):
            if r == c:
                slot = counts.setdefault(v.key(), [v, 0])
                slot[1] += 1
        total = ring.zero()
        for v, n in counts.values():
            total = total + v.value() * n
        return total

    def rescaled(self, basis: ColoringBasis) -> "RepMatrix":
        """Entries g(row) * value / g(col), with g the rescaling factor of a coloring."""
        graph = basis.graph
        cache: dict[int, QMonomial] = {}

        def g(i: int) -> QMonomial:
            if i not in cache:
                cache[i] = rescale_monomial(graph, basis.colorings[i])
            return cache[i]

        return RepMatrix(self.k, [(r, v * g(r) / g(c)) for c, (r, v) in enumerate(self.cols)])

    def entry_values(self) -> set[CycNum]:
        return {v.value() for _, v in self.cols}

    def to_json(self) -> dict:
        return {"dim": self.dim, "cols": [{"row": r, "val": v.value().to_json()} for r, v in self.cols]}

    def __repr__(self) -> str:
        return f"RepMatrix(dim={self.dim}, k={self.k})"


def meridian_matrix(basis: ColoringBasis, mu: MeridianClass) -> RepMatrix:
    ring = make_ring(basis.graph.k)
    bits = mu.bits
    cols = []
    for c, j in enumerate(basis.colorings):
        e = sum(x for i, x in enumerate(j) if bits >> i & 1)
        cols.append((c, QMonomial.sign(ring, e)))
    return RepMatrix(basis.graph.k, cols)


def longitude_matrix(basis: ColoringBasis, lam: CycleClass, delta: DeltaFn | None = None) -> RepMatrix:
    graph = basis.graph
    if not lam:
        return RepMatrix.identity(graph.k, basis.dim)
    delta = delta or _default_delta
    cols = []
    for j in basis.colorings:
        cols.append((basis.index[act_cycle(lam, j, graph.k)], delta(graph, lam, j)))
    return RepMatrix(graph.k, cols)


def rep_matrix(basis: ColoringBasis, g: HeisenbergElement, delta: DeltaFn | None = None) -> RepMatrix:
    k = basis.graph.k
    phase = rho_u(k) ** (g.m + geometric_intersection(g.mu, g.lam))
    lon = longitude_matrix(basis, g.lam, delta)
    mer = meridian_matrix(basis, g.mu)
    return (lon @ mer).scaled(phase)


def trace(basis: ColoringBasis, g: HeisenbergElement, delta: DeltaFn | None = None) -> CycNum:
    """Trace by summing the diagonal of the full matrix."""
    return rep_matrix(basis, g, delta).trace()


# ---------------------------------------------------------------------------
# pattern-based evaluation


def _region(graph: RibbonGraph, bits: int) -> int:
    """Edges of the cycle together with every edge at one of its vertices."""
    mask = bits
    for v in graph.trivalent:
        edges = graph.vertex_edges[v]
        if any(bits >> i & 1 for i in edges):
            for i in edges:
                mask |= 1 << i
    return mask


def _fixed_on(graph: RibbonGraph, lam: CycleClass) -> dict[int, int]:
    return {i: graph.k // 2 for i in range(graph.n_edges) if lam.bits >> i & 1}


def trace_fixed(graph: RibbonGraph, g: HeisenbergElement, delta: DeltaFn | None = None) -> CycNum:
    """Trace as a sum over colorings fixed by the cycle, grouped by local pattern."""
    k = graph.k
    ring = make_ring(k)
    delta = delta or _default_delta
    lam, mu = g.lam, g.mu
    if lam and k % 2:
        return ring.zero()
    keep = (_region(graph, lam.bits) if lam else 0) | mu.bits
    patterns = pattern_counts(graph, keep, _fixed_on(graph, lam) if lam else None)
    phase = rho_u(k) ** (g.m + geometric_intersection(mu, lam))
    grouped: dict[tuple, list] = {}
    for pattern, mult in patterns.items():
        j = expand_pattern(graph, keep, pattern)
        val = QMonomial.sign(ring, sum(x for i, x in enumerate(j) if mu.bits >> i & 1))
        if lam:
            val = val * delta(graph, lam, j)
        slot = grouped.setdefault(val.key(), [val, 0])
        slot[1] += mult
    total = ring.zero()
    for val, n in grouped.values():
        total = total + val.value() * n
    return total * phase.value()


@dataclass
class ConditionReport:
    name: str
    passed: bool
    checked: int
    witness: dict | None = None
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "checked": self.checked, "witness": self.witness, "notes": self.notes}


def _classes(graph: RibbonGraph, classes: Sequence[CycleClass] | None) -> list[CycleClass]:
    if classes is None:
        classes = all_cycle_classes(graph)
    return [c for c in classes if c]


def verify_external_edge_condition(
    graph: RibbonGraph,
    classes: Sequence[CycleClass] | None = None,
    delta: DeltaFn | None = None,
) -> ConditionReport:
    """On colorings fixed by a cycle, delta equals (-1)^(half the external colors)."""
    report = ConditionReport("external_edge", True, 0)
    k = graph.k
    if k % 2:
        report.notes.append("odd level: no fixed colorings")
        return report
    ring = make_ring(k)
    delta = delta or _default_delta
    for lam in _classes(graph, classes):
        region = _region(graph, lam.bits)
        ext_bits = classify_edges(graph, lam).external
        ext = [i for i in range(graph.n_edges) if ext_bits >> i & 1]
        for pattern in pattern_counts(graph, region, _fixed_on(graph, lam)):
            j = expand_pattern(graph, region, pattern)
            want = QMonomial.sign(ring, sum(j[i] for i in ext) // 2)
            got = delta(graph, lam, j)
            report.checked += 1
            if got != want:
                report.passed = False
                report.witness = {"lambda": lam.literal(), "coloring": list(j), "delta": got.value().to_json()}
                return report
    return report


def verify_cocycle(
    graph: RibbonGraph,
    classes: Sequence[CycleClass] | None = None,
    delta: DeltaFn | None = None,
) -> ConditionReport:
    """delta_j(l1 + l2) = delta_(l2 . j)(l1) delta_j(l2) for all pairs from ``classes``.

    ``classes`` defaults to the cycle basis, pairs include a class with
    itself. Pairs that cross on the surface cannot satisfy the identity;
    for them the ratio must be one fixed power of rho, and such pairs are
    listed in the notes.
    """
    report = ConditionReport("cocycle", True, 0)
    k = graph.k
    ring = make_ring(k)
    one = QMonomial.one(ring)
    delta = delta or _default_delta
    rho = rho_u(k)
    basis = _classes(graph, classes if classes is not None else cycle_basis(graph))
    for a, l1 in enumerate(basis):
        for l2 in basis[a:]:
            l12 = l1 + l2
            omega = longitude_intersection(graph, l1, l2)
            keep = _region(graph, l1.bits) | _region(graph, l2.bits)
            target = None
            for pattern in pattern_counts(graph, keep):
                j = expand_pattern(graph, keep, pattern)
                lhs = delta(graph, l12, j) if l12 else one
                rhs = delta(graph, l1, act_cycle(l2, j, k)) * delta(graph, l2, j)
                ratio = rhs / lhs
                report.checked += 1
                if omega:
                    if target is None:
                        target = ratio
                        ok = ratio == rho or ratio == rho.inverse()
                    else:
                        ok = ratio == target
                else:
                    ok = ratio == one
                if not ok:
                    report.passed = False
                    report.witness = {
                        "lambda1": l1.literal(),
                        "lambda2": l2.literal(),
                        "coloring": list(j),
                        "ratio": ratio.value().to_json(),
                    }
                    return report
            if omega:
                report.notes.append(f"{l1.literal()} x {l2.literal()} cross; central ratio checked")
    return report


def verify_involution(
    graph: RibbonGraph,
    classes: Sequence[CycleClass] | None = None,
    delta: DeltaFn | None = None,
) -> ConditionReport:
    """delta_(lam . j)(lam) delta_j(lam) = 1, i.e. each longitude squares to the identity."""
    report = ConditionReport("involution", True, 0)
    k = graph.k
    one = QMonomial.one(make_ring(k))
    delta = delta or _default_delta
    for lam in _classes(graph, classes if classes is not None else cycle_basis(graph)):
        keep = _region(graph, lam.bits)
        for pattern in pattern_counts(graph, keep):
            j = expand_pattern(graph, keep, pattern)
            prod = delta(graph, lam, act_cycle(lam, j, k)) * delta(graph, lam, j)
            report.checked += 1
            if prod != one:
                report.passed = False
                report.witness = {"lambda": lam.literal(), "coloring": list(j), "product": prod.value().to_json()}
                return report
    return report
