"""Skein coefficients and the scalar by which a longitude acts on a coloring.

``fusion_coeff``, ``tetrahedron`` and ``half_twist`` evaluate the closed
recoupling formulas in the cyclotomic field. The longitude coefficient is
assembled as a :class:`~heistqft.cyclo.QMonomial`: up to a sign and a power of
A it is the ratio ``g(j) / g(lam . j)`` of the rescaling factors

    g(j) = prod_edges 1/[j_f]!  *  prod_vertices [j(v) + 1]!,

where j(v) is half the color sum at the vertex.

Sign conventions
----------------
Walking a cycle component, a vertex has incoming color ``a``, outgoing color
``b`` and third color ``c``. With the cycle pushed off to the right of the
walk, a vertex whose third edge lies on the right must be crossed (type II)
and contributes the phase ``A^{(a-b)(k+2)}``; the others (type I) contribute
nothing. Since ``a - b`` sums to zero around a component this is unchanged
by reversing the walk. Each component carries the sign
``(-1)^{k + sum_v c_v / 2}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .coloring import act_cycle, is_admissible
from .cyclo import CycNum, QMonomial, RingCtx, factorial_exponents, loop_value, make_ring, quantum_factorial, quantum_int
from .errors import EmptyCycle, NotAdmissible
from .ribbon import CycleClass, RibbonGraph, cycle_walks, third_on_left

__all__ = [
    "InternalColors",
    "internal_colors",
    "fusion_coeff",
    "tetrahedron",
    "half_twist",
    "VertexType",
    "vertex_types",
    "vertex_halfsum",
    "delta_monomial",
    "delta_coeff",
    "rescale_monomial",
    "rescale_factor",
    "rescaled_delta",
    "SIGN_RULES",
    "check_identities",
]

SIGN_RULES = ("component", "edge")


@dataclass(frozen=True)
class InternalColors:
    i: int
    j: int
    k_int: int


def internal_colors(a: int, b: int, c: int) -> InternalColors:
    return InternalColors((-a + b + c) // 2, (a - b + c) // 2, (a + b - c) // 2)


def _require(triple: Sequence[int], k: int) -> None:
    if not is_admissible(triple, k):
        raise NotAdmissible(f"{tuple(triple)} is not admissible at level {k}")


def _fact(ring: RingCtx, n: int) -> CycNum:
    return quantum_factorial(ring, n)


def fusion_coeff(ring: RingCtx, a: int, b: int, c: int) -> CycNum:
    """Theta-graph evaluation <a, b, c>."""
    _require((a, b, c), ring.level)
    t = internal_colors(a, b, c)
    i, j, kk = t.i, t.j, t.k_int
    num = _fact(ring, i + j + kk + 1) * _fact(ring, i) * _fact(ring, j) * _fact(ring, kk)
    den = _fact(ring, i + j) * _fact(ring, j + kk) * _fact(ring, kk + i)
    val = num / den
    return -val if (i + j + kk) % 2 else val


def tetrahedron(ring: RingCtx, a: int, b: int, c: int, d: int, e: int, f: int) -> CycNum:
    """Tetrahedral evaluation with vertex triples (a,b,c), (b,d,f), (c,d,e), (a,e,f)."""
    k = ring.level
    for t in ((a, b, c), (b, d, f), (c, d, e), (a, e, f)):
        _require(t, k)
    lows = [(a + b + c) // 2, (b + d + f) // 2, (c + d + e) // 2, (a + e + f) // 2]
    highs = [(b + c + e + f) // 2, (a + b + d + e) // 2, (a + c + d + f) // 2]
    prefactor = ring.one()
    for hi in highs:
        for lo in lows:
            prefactor = prefactor * _fact(ring, hi - lo)
    for x in (a, b, c, d, e, f):
        prefactor = prefactor / _fact(ring, x)
    total = ring.zero()
    for z in range(max(lows), min(highs) + 1):
        den = ring.one()
        for hi in highs:
            den = den * _fact(ring, hi - z)
        for lo in lows:
            den = den * _fact(ring, z - lo)
        term = _fact(ring, z + 1) / den
        total = total - term if z % 2 else total + term
    return prefactor * total


def half_twist(ring: RingCtx, c: int, a: int, b: int) -> CycNum:
    """Eigenvalue of the half twist exchanging strands a and b fused into c."""
    _require((a, b, c), ring.level)
    t = internal_colors(a, b, c)
    exponent = t.i * t.j - t.k_int * (t.i + t.j + t.k_int + 2)
    val = ring.a_power(exponent)
    return -val if t.k_int % 2 else val


def vertex_halfsum(j: Sequence[int], edges: Sequence[int]) -> int:
    """Half the color sum over the (three) edge slots of a vertex."""
    s = sum(j[x] for x in edges)
    if s % 2:
        raise NotAdmissible("odd color sum at a vertex")
    return s // 2


# ---------------------------------------------------------------------------
# vertices along a cycle


@dataclass(frozen=True)
class VertexType:
    vertex: int
    kind: str  # "I" or "II"
    a: int
    b: int
    c: int
    epsilon: int


@lru_cache(maxsize=4096)
def _walk_plan(graph: RibbonGraph, bits: int, reverse: bool) -> tuple[tuple[tuple[int, int, int, int, bool], ...], ...]:
    """Per component: (vertex, in edge, out edge, third edge, third on left) per step."""
    lam = CycleClass(bits, graph.edge_ids)
    plan = []
    for walk in cycle_walks(graph, lam, reverse=reverse):
        plan.append(
            tuple(
                (s.vertex, s.edge_in, s.edge_out, graph.edge_index[graph.he_edge[s.third]], third_on_left(graph, s))
                for s in walk
            )
        )
    return tuple(plan)


def vertex_types(
    graph: RibbonGraph,
    lam: CycleClass,
    j: Sequence[int],
    reverse: bool = False,
    twist_sign: int = 1,
) -> list[list[VertexType]]:
    """Type each vertex of every component walk of ``lam``.

    ``twist_sign = -1`` selects the mirror convention (phase A^{(b-a)(k+2)}),
    kept only to compare conventions.
    """
    if not lam:
        raise EmptyCycle("vertex typing needs a nonzero cycle")
    out = []
    for comp in _walk_plan(graph, lam.bits, reverse):
        types = []
        for v, ein, eout, third, left in comp:
            a, b, c = j[ein], j[eout], j[third]
            if left:
                types.append(VertexType(v, "I", a, b, c, 0))
            else:
                types.append(VertexType(v, "II", a, b, c, twist_sign * (a - b)))
        out.append(types)
    return out


def rescale_monomial(graph: RibbonGraph, j: Sequence[int]) -> QMonomial:
    """g(j) as a factored monomial."""
    ring = make_ring(graph.k)
    acc = [0] * len(QMonomial.one(ring).qexp)
    for x in j:
        for n, e in enumerate(factorial_exponents(ring, x)):
            acc[n] -= e
    for v in graph.trivalent:
        for n, e in enumerate(factorial_exponents(ring, vertex_halfsum(j, graph.vertex_edges[v]) + 1)):
            acc[n] += e
    return QMonomial(ring, 0, tuple(acc))


def rescale_factor(graph: RibbonGraph, j: Sequence[int]) -> CycNum:
    return rescale_monomial(graph, j).value()


def delta_monomial(
    graph: RibbonGraph,
    lam: CycleClass,
    j: Sequence[int],
    *,
    reverse: bool = False,
    sign_rule: str = "component",
    twist_sign: int = 1,
) -> QMonomial:
    """Scalar of the longitude ``lam`` on basis vector ``j`` (as a monomial).

    Reads only the colors of edges on ``lam`` and of the third edges at its
    vertices. ``sign_rule="edge"`` replaces the per-component sign (-1)^k by
    (-1)^{k * #edges}; the two agree for even k. It exists to compare
    against the per-edge bookkeeping, which fails the cocycle condition for
    odd k.
    """
    if not lam:
        raise EmptyCycle("longitude coefficient needs a nonzero cycle")
    if sign_rule not in SIGN_RULES:
        raise ValueError(f"sign_rule must be one of {SIGN_RULES}")
    k = graph.k
    ring = make_ring(k)
    acc = [0] * len(QMonomial.one(ring).qexp)
    sign = 0
    phase = 0
    for comp in _walk_plan(graph, lam.bits, reverse):
        csum = 0
        for _, ein, eout, third, left in comp:
            a, b, c = j[ein], j[eout], j[third]
            csum += c
            if not left:
                phase += twist_sign * (a - b)
            # the edge entering this vertex, then the vertex itself
            for sgn, n in ((1, k - a), (-1, a), (1, (a + b + c) // 2 + 1), (-1, (2 * k - a - b + c) // 2 + 1)):
                for idx, e in enumerate(factorial_exponents(ring, n)):
                    if e:
                        acc[idx] += sgn * e
        if csum % 2:
            raise NotAdmissible("third-edge colors around a cycle component sum to an odd number")
        sign += csum // 2 + (k if sign_rule == "component" else k * len(comp))
    a_exp = (sign % 2) * (ring.order // 2) + phase * (k + 2)
    return QMonomial(ring, a_exp, tuple(acc))


def delta_coeff(graph: RibbonGraph, lam: CycleClass, j: Sequence[int], **kw) -> CycNum:
    return delta_monomial(graph, lam, j, **kw).value()


def rescaled_delta(graph: RibbonGraph, lam: CycleClass, j: Sequence[int], **kw) -> QMonomial:
    """delta_j(lam) * g(lam . j) / g(j): the entry after rescaling the basis by 1/g."""
    d = delta_monomial(graph, lam, j, **kw)
    lj = act_cycle(lam, j, graph.k)
    return d * rescale_monomial(graph, lj) / rescale_monomial(graph, j)


# ---------------------------------------------------------------------------
# identities for an edge colored k


def check_identities(k: int) -> dict[str, tuple[int, int]]:
    """Evaluate the closed-form identities involving an edge of color k.

    Returns ``{name: (cases checked, failures)}``. Every comparison is an
    exact field equality.
    """
    ring = make_ring(k)
    out: dict[str, tuple[int, int]] = {}

    def record(name: str, results) -> None:
        results = list(results)
        out[name] = (len(results), results.count(False))

    record("qint_symmetry", (quantum_int(ring, k + 2 - a) == quantum_int(ring, a) for a in range(0, k + 3)))
    record(
        "factorial_complement",
        (_fact(ring, k - a) * _fact(ring, a + 1) == _fact(ring, k + 1) for a in range(0, k + 1)),
    )

    def loop_ratio(a: int) -> bool:
        lhs = loop_value(ring, k - a) / fusion_coeff(ring, a, k, k - a)
        alt = quantum_int(ring, a + 1)
        alt = -alt if a % 2 else alt
        tail = loop_value(ring, k - a)
        tail = -tail if k % 2 else tail
        return lhs == alt == loop_value(ring, a) == tail

    record("loop_ratio", (loop_ratio(a) for a in range(0, k + 1)))

    def twist(a: int) -> bool:
        want = ring.a_power(-a * (k + 2))
        return half_twist(ring, k - a, k, a) == (-want if a % 2 else want)

    record("half_twist_k", (twist(a) for a in range(0, k + 1)))

    def tet(a_: int, b_: int, c_: int) -> bool:
        lhs = tetrahedron(ring, k - a_, k - b_, c_, b_, a_, k) / fusion_coeff(ring, k - a_, k - b_, c_)
        h = (a_ + b_ - c_) // 2
        rhs = (
            _fact(ring, k - a_) * _fact(ring, k - b_) * _fact(ring, (a_ + b_ + c_) // 2 + 1)
            / (_fact(ring, k + 1) * _fact(ring, k + 1 - h))
        )
        return lhs == (-rhs if h % 2 else rhs)

    record(
        "tetrahedron_k",
        (
            tet(a_, b_, c_)
            for a_ in range(k + 1)
            for b_ in range(k + 1)
            for c_ in range(k + 1)
            if is_admissible((c_, b_, a_), k) and is_admissible((k - a_, k - b_, c_), k)
        ),
    )
    return out
