"""Reference graphs used by the tests, scripts and the CLI ``verify`` suites.

Each builder lists, per vertex, the incident edge ids in counterclockwise
order; half-edge ids are generated as ``2*edge`` and ``2*edge + 1`` in order
of appearance. Orders were read off planar drawings, so every graph here
except the two marked twisted has a planar ribbon structure.
"""

from __future__ import annotations

from typing import Callable, Mapping, Sequence

from .ribbon import Edge, RibbonGraph, Vertex

__all__ = ["build_graph", "CORPUS", "NONPLANAR", "corpus_graph", "corpus_names"]


def build_graph(
    k: int,
    rotation: Mapping[int, Sequence[int]],
    boundary_colors: Mapping[int, int] | None = None,
) -> RibbonGraph:
    """Build a graph from counterclockwise edge-id lists at each vertex."""
    slots: dict[int, list[int]] = {}
    vertices = []
    for vid, eids in rotation.items():
        hes = []
        for e in eids:
            used = slots.setdefault(e, [])
            h = 2 * e + len(used)
            used.append(h)
            hes.append(h)
        vertices.append(Vertex(vid, tuple(hes)))
    edges = [Edge(e, tuple(hs)) for e, hs in sorted(slots.items())]
    return RibbonGraph(k, vertices, edges, dict(boundary_colors or {}))


def _fit(colors: Mapping[int, int], k: int) -> dict[int, int]:
    """Use the nominal boundary colors when the level allows them, else all zero."""
    if all(c <= k for c in colors.values()):
        return dict(colors)
    return {e: 0 for e in colors}


def theta(k: int) -> RibbonGraph:
    # two vertices joined by a top arc 1, a middle edge 2 and a bottom arc 3
    return build_graph(k, {1: [3, 2, 1], 2: [1, 2, 3]})


def dumbbell(k: int) -> RibbonGraph:
    # loop 1 on the left, bar 2, loop 3 on the right
    return build_graph(k, {1: [2, 1, 1], 2: [3, 2, 3]})


def tetrahedron(k: int) -> RibbonGraph:
    # K4 drawn as a triangle a, b, d with centre c
    return build_graph(
        k,
        {
            0: [1, 2, 3],  # centre
            1: [4, 1, 6],  # a (top)
            2: [5, 2, 4],  # b (bottom left)
            3: [6, 3, 5],  # d (bottom right)
        },
    )


def loop_leg(k: int) -> RibbonGraph:
    # one trivalent vertex with a loop and a leg to a univalent vertex
    return build_graph(k, {1: [2, 1, 1], 2: [2]}, _fit({2: 2}, k))


def _theta_legs(k: int, colors: Mapping[int, int]) -> RibbonGraph:
    # theta with a leg on the top arc (edges 1,2) and on the bottom arc (4,5)
    return build_graph(
        k,
        {
            1: [4, 3, 1],  # v, left
            2: [2, 3, 5],  # w, right
            3: [6, 1, 2],  # x, on the top arc
            4: [5, 4, 7],  # y, on the bottom arc
            5: [6],
            6: [7],
        },
        _fit(colors, k),
    )


def theta_legs_even(k: int) -> RibbonGraph:
    return _theta_legs(k, {6: 2, 7: 0})


def theta_legs_odd(k: int) -> RibbonGraph:
    return _theta_legs(k, {6: 1, 7: 1})


def two_circles(k: int) -> RibbonGraph:
    """Genus 5 with three boundary edges: two chorded circles joined by two bars.

    Left circle (ccw): 1-vertex, 5, bottom, 9, lower, 8, upper, 7, top, 4;
    chord 6 joins top and bottom inside it. Bars 10 (upper) and 11 (lower)
    join it to the right circle, which has chord 15 and legs 2 and 3.
    """
    return build_graph(
        k,
        {
            1: [1, 5, 4],  # left
            2: [9, 6, 5],  # bottom
            3: [11, 8, 9],  # lower right
            4: [10, 7, 8],  # upper right
            5: [4, 6, 7],  # top
            6: [10, 13, 12],  # right circle, upper left
            7: [14, 15, 13],  # left
            8: [11, 16, 14],  # lower left
            9: [3, 18, 16],  # lower right
            10: [17, 15, 18],  # right
            11: [2, 12, 17],  # upper right
            12: [1],
            13: [2],
            14: [3],
        },
        _fit({1: 2, 2: 0, 3: 2}, k),
    )


def twisted_theta(k: int) -> RibbonGraph:
    # same incidence as theta, equal rotations at both ends: a one-holed torus
    return build_graph(k, {1: [1, 2, 3], 2: [1, 2, 3]})


def chord_across(k: int) -> RibbonGraph:
    """Circle 4,7,8,9,5 with legs 1,2,3 and a chord 6 leaving inside at the top
    and arriving from outside at the bottom (non-planar)."""
    return build_graph(
        k,
        {
            1: [1, 5, 4],
            2: [9, 5, 6],  # chord enters from outside
            3: [3, 8, 9],
            4: [2, 7, 8],
            5: [4, 6, 7],  # chord leaves inside
            6: [1],
            7: [2],
            8: [3],
        },
        _fit({1: 2, 2: 2, 3: 0}, k),
    )


CORPUS: dict[str, Callable[[int], RibbonGraph]] = {
    "theta": theta,
    "dumbbell": dumbbell,
    "tetrahedron": tetrahedron,
    "loop_leg": loop_leg,
    "theta_legs_even": theta_legs_even,
    "theta_legs_odd": theta_legs_odd,
    "two_circles": two_circles,
}

NONPLANAR: dict[str, Callable[[int], RibbonGraph]] = {
    "twisted_theta": twisted_theta,
    "chord_across": chord_across,
}


def corpus_names(include_nonplanar: bool = False) -> list[str]:
    return list(CORPUS) + (list(NONPLANAR) if include_nonplanar else [])


def corpus_graph(name: str, k: int) -> RibbonGraph:
    builder = CORPUS.get(name) or NONPLANAR[name]
    return builder(k)
