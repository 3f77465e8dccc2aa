"""Leaf re-attachment surgeries on trees.

``sigma`` pulls an off-path leaf onto a maximal path, ``tau`` slides pendant
leaves along a caterpillar spine, and ``move_leaf`` re-hangs any leaf.
Every surgery keeps the vertex labels and the order.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .tree import SpineDecomposition, Tree, TreeError, _check_vertex, build_tree, is_caterpillar


class SurgeryError(TreeError):
    pass


def _rehang(t: Tree, leaf: int, old: int, new: int) -> Tree:
    edges = [e for e in t.edges if e != (min(leaf, old), max(leaf, old))]
    edges.append((leaf, new))
    return build_tree(t.n, edges)


def _check_maximal_path(t: Tree, path: Sequence[int]) -> None:
    if len(path) < 2:
        raise SurgeryError("path must have at least two vertices")
    for v in path:
        _check_vertex(t, v)
    if len(set(path)) != len(path):
        raise SurgeryError("path repeats a vertex")
    for a, b in zip(path, path[1:]):
        if not t.has_edge(a, b):
            raise SurgeryError(f"path is broken: ({a}, {b}) is not an edge")
    # a path in a tree is maximal iff it cannot be extended at either end
    if t.degree(path[0]) != 1 or t.degree(path[-1]) != 1:
        raise SurgeryError("path is not maximal: an endpoint is not a leaf")


def sigma(t: Tree, path: Sequence[int], y: int) -> Tree:
    """Move leaf ``y`` (not on, not adjacent to ``path``) to its closest path vertex."""
    _check_maximal_path(t, path)
    _check_vertex(t, y)
    on_path = set(path)
    if y in on_path:
        raise SurgeryError(f"vertex {y} lies on the path")
    if t.degree(y) != 1:
        raise SurgeryError(f"vertex {y} is not a leaf")
    (parent,) = t.adjacency[y]
    if parent in on_path:
        raise SurgeryError(f"leaf {y} is already adjacent to the path")
    dist = t.distance_matrix[y]
    best = min(dist[p] for p in path)
    closest = [p for p in path if dist[p] == best]
    # projection onto a path in a tree is unique
    assert len(closest) == 1
    return _rehang(t, y, parent, closest[0])


def sigma_candidates(t: Tree, path: Sequence[int]) -> list[int]:
    """Leaves that ``sigma`` may move for this path."""
    on_path = set(path)
    return [
        y
        for y in t.leaves
        if y not in on_path and t.adjacency[y][0] not in on_path
    ]


def caterpillarize(t: Tree, path: Sequence[int]) -> Tree:
    """Apply ``sigma`` to the smallest eligible leaf until none is left."""
    while True:
        cands = sigma_candidates(t, path)
        if not cands:
            return t
        t = sigma(t, path, cands[0])


def _leaves_at(t: Tree, spine: SpineDecomposition, i: int) -> tuple[int, ...]:
    on_spine = set(spine.spine)
    return tuple(y for y in t.adjacency[spine.spine[i]] if y not in on_spine and t.degree(y) == 1)


def tau(
    t: Tree,
    spine: SpineDecomposition,
    move1: tuple[int, int],
    move2: Optional[tuple[int, int]] = None,
) -> Tree:
    """Slide one (or two) pendant leaves along the spine of a caterpillar.

    ``move1 = (i, j)`` takes the smallest-labeled pendant leaf at ``v_i`` to
    ``v_j``; ``move2 = (k, l)`` does the same with a second, distinct leaf.
    Targets must be interior spine vertices so the diameter is unchanged.
    """
    if not is_caterpillar(t):
        raise SurgeryError("tau needs a caterpillar")
    d = spine.d
    if any(not t.has_edge(a, b) for a, b in zip(spine.spine, spine.spine[1:])):
        raise SurgeryError("spine does not belong to this tree")
    moves = [move1] if move2 is None else [move1, move2]
    taken: list[int] = []
    plan = []
    for i, j in moves:
        if not 1 <= j <= d - 1:
            raise SurgeryError(f"target index {j} is off the spine interior 1..{d - 1}")
        if not 1 <= i <= d - 1:
            raise SurgeryError(f"source index {i} is off the spine interior 1..{d - 1}")
        free = [x for x in _leaves_at(t, spine, i) if x not in taken]
        if not free:
            raise SurgeryError(f"no pendant leaf left at spine vertex v_{i}")
        taken.append(free[0])
        plan.append((free[0], i, j))
    edges = set(t.edges)
    for x, i, j in plan:
        a, b = spine.spine[i], spine.spine[j]
        edges.discard((min(x, a), max(x, a)))
        edges.add((min(x, b), max(x, b)))
    return build_tree(t.n, sorted(edges))


def tau_pair_sites(t: Tree, spine: SpineDecomposition) -> list[tuple[int, int]]:
    """All ``(i, k)`` with ``2 <= i <= k <= d-2`` admitting the outward pair move
    ``(i, i-1)`` and ``(k, k+1)``."""
    d = spine.d
    counts = {i: len(_leaves_at(t, spine, i)) for i in range(1, d)}
    out = []
    for i in range(2, d - 1):
        for k in range(i, d - 1):
            need_same = i == k
            if counts[i] >= (2 if need_same else 1) and counts[k] >= 1:
                out.append((i, k))
    return out


def move_leaf(t: Tree, z: int, x: int) -> Tree:
    """Detach leaf ``z`` from its neighbor and attach it to ``x``."""
    _check_vertex(t, z)
    _check_vertex(t, x)
    if t.degree(z) != 1:
        raise SurgeryError(f"vertex {z} is not a leaf")
    if x == z:
        raise SurgeryError("cannot attach a leaf to itself")
    (y,) = t.adjacency[z]
    if x == y:
        raise SurgeryError(f"leaf {z} is already adjacent to {x}")
    return _rehang(t, z, y, x)
