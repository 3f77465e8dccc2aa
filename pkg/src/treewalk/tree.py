"""Labeled trees: validation, metric structure, edge splits, spines, canonical forms."""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence


class TreeError(ValueError):
    """Raised for malformed trees and invalid vertex/edge arguments."""


class NotACaterpillar(TreeError):
    pass


@dataclass(frozen=True)
class Tree:
    """Immutable tree on vertices ``0 .. n-1``.

    Use :func:`build_tree` to construct one; the constructor itself does not
    validate.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adjacency)

    @cached_property
    def leaves(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.n) if len(self.adjacency[v]) == 1)

    @cached_property
    def distance_matrix(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(bfs_distances(self, s)) for s in range(self.n))

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and v in self.adjacency[u]

    def to_text(self) -> str:
        lines = [str(self.n)] + [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"


def build_tree(n: int, edges: Iterable[Sequence[int]]) -> Tree:
    """Validate ``edges`` as a spanning tree on ``n`` labeled vertices."""
    if n < 1:
        raise TreeError(f"vertex count must be >= 1, got {n}")
    normalized = []
    seen = set()
    for e in edges:
        u, v = int(e[0]), int(e[1])
        for x in (u, v):
            if not 0 <= x < n:
                raise TreeError(f"label {x} out of range 0..{n - 1}")
        if u == v:
            raise TreeError(f"self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise TreeError(f"duplicate edge {key}")
        seen.add(key)
        normalized.append(key)
    if len(normalized) != n - 1:
        raise TreeError(f"wrong edge count: a tree on {n} vertices has {n - 1} edges, got {len(normalized)}")
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in normalized:
        adj[u].append(v)
        adj[v].append(u)
    # n-1 edges + connected => acyclic
    reached = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in reached:
                reached.add(y)
                queue.append(y)
    if len(reached) != n:
        raise TreeError("not a tree: cycle/disconnection")
    return Tree(n, tuple(sorted(normalized)), tuple(tuple(sorted(a)) for a in adj))


def from_pruefer(seq: Sequence[int], n: int) -> Tree:
    """Decode a Prüfer sequence of length ``n - 2`` into a labeled tree."""
    if n < 2:
        raise TreeError(f"Prüfer decoding needs n >= 2, got {n}")
    if len(seq) != n - 2:
        raise TreeError(f"Prüfer sequence for n={n} must have length {n - 2}, got {len(seq)}")
    remaining = [0] * n
    for x in seq:
        if not 0 <= x < n:
            raise TreeError(f"Prüfer entry {x} out of range 0..{n - 1}")
        remaining[x] += 1
    heap = [v for v in range(n) if remaining[v] == 0]
    heapq.heapify(heap)
    edges = []
    for x in seq:
        leaf = heapq.heappop(heap)
        edges.append((leaf, x))
        remaining[x] -= 1
        if remaining[x] == 0:
            heapq.heappush(heap, x)
    edges.append((heapq.heappop(heap), heapq.heappop(heap)))
    return build_tree(n, edges)


def read_tree(text: str) -> Tree:
    """Parse the plain-text tree format (``n`` then one ``u v`` edge per line)."""
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise TreeError("empty tree file")
    try:
        n = int(lines[0])
        edges = [tuple(int(x) for x in ln.split()) for ln in lines[1:]]
    except ValueError as exc:
        raise TreeError(f"malformed tree file: {exc}") from None
    for e in edges:
        if len(e) != 2:
            raise TreeError(f"malformed edge line: {' '.join(map(str, e))!r}")
    return build_tree(n, edges)


def _check_vertex(t: Tree, v: int) -> None:
    if not 0 <= v < t.n:
        raise TreeError(f"unknown vertex {v} (tree has vertices 0..{t.n - 1})")


def bfs_distances(t: Tree, source: int) -> list[int]:
    dist = [-1] * t.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in t.adjacency[x]:
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def bfs_parents(t: Tree, root: int) -> tuple[list[int], list[int]]:
    """Return ``(order, parent)`` for a BFS rooted at ``root``; parent[root] = -1."""
    parent = [-2] * t.n
    parent[root] = -1
    order = [root]
    for x in order:
        for y in t.adjacency[x]:
            if parent[y] == -2:
                parent[y] = x
                order.append(y)
    return order, parent


def distances(t: Tree) -> list[list[int]]:
    return [list(row) for row in t.distance_matrix]


def tree_path(t: Tree, a: int, b: int) -> list[int]:
    """The unique path from ``a`` to ``b``."""
    _, parent = bfs_parents(t, b)
    path = [a]
    while path[-1] != b:
        path.append(parent[path[-1]])
    return path


def diameter_and_geodesic(t: Tree) -> tuple[int, list[int]]:
    """Diameter and a canonical geodesic.

    The geodesic runs from the smallest-labeled diameter endpoint ``a`` to the
    smallest ``b`` at distance ``d`` from ``a``.  The path between two vertices
    of a tree is unique, so no further tie-break is needed.
    """
    if t.n < 2:
        raise TreeError("diameter undefined for single vertex")
    # double BFS for the value
    first = bfs_distances(t, 0)
    far = max(range(t.n), key=lambda v: (first[v], -v))
    d = max(bfs_distances(t, far))
    dm = t.distance_matrix
    a = next(v for v in range(t.n) if max(dm[v]) == d)
    b = next(v for v in range(t.n) if dm[a][v] == d)
    return d, tree_path(t, a, b)


def diameter(t: Tree) -> int:
    if t.n == 1:
        return 0
    return max(max(row) for row in t.distance_matrix)


@dataclass(frozen=True)
class EdgeCut:
    side_u: frozenset[int]
    side_v: frozenset[int]
    deg_u: int
    deg_v: int


def split_side(t: Tree, u: int, v: int) -> list[int]:
    """Vertices of the component containing ``u`` after deleting edge (u, v)."""
    side = [u]
    seen = {u, v}
    for x in side:
        for y in t.adjacency[x]:
            if y not in seen:
                seen.add(y)
                side.append(y)
    return side


def split_at_edge(t: Tree, u: int, v: int) -> EdgeCut:
    _check_vertex(t, u)
    _check_vertex(t, v)
    if not t.has_edge(u, v):
        raise TreeError(f"({u}, {v}) is not an edge")
    su = split_side(t, u, v)
    sv = split_side(t, v, u)
    return EdgeCut(frozenset(su), frozenset(sv), degree_sum(t, su), degree_sum(t, sv))


def degree_sum(t: Tree, subset: Iterable[int]) -> int:
    total = 0
    for w in subset:
        _check_vertex(t, w)
        total += len(t.adjacency[w])
    return total


def path_overlap(t: Tree, u: int, v: int, w: int) -> int:
    """Length of the common part of the u-w and v-w paths."""
    dm = t.distance_matrix
    twice = dm[u][w] + dm[v][w] - dm[u][v]
    assert twice % 2 == 0
    return twice // 2


# -- caterpillars ---------------------------------------------------------


def is_caterpillar(t: Tree) -> bool:
    """True iff deleting all leaves leaves a path (or nothing)."""
    if t.n <= 2:
        return True
    inner = {v for v in range(t.n) if len(t.adjacency[v]) > 1}
    # the inner vertices induce a subtree; a subtree with max degree 2 is a path
    return all(sum(1 for y in t.adjacency[v] if y in inner) <= 2 for v in inner)


@dataclass(frozen=True)
class SpineDecomposition:
    """Geodesic spine ``v_0 .. v_d`` of a caterpillar plus its pendant leaves.

    ``attachments[i]`` lists the non-spine leaves adjacent to ``v_i`` for
    ``1 <= i <= d-1`` (ascending labels).
    """

    spine: tuple[int, ...]
    attachments: dict[int, tuple[int, ...]]
    left_count: int
    right_count: int

    @property
    def d(self) -> int:
        return len(self.spine) - 1

    def left_set(self, i: int) -> frozenset[int]:
        """``L_i``: the side of ``v_i`` when cutting edge (v_i, v_{i+1})."""
        if not 0 <= i <= self.d - 1:
            raise IndexError(i)
        out = set(self.spine[: i + 1])
        for j in range(1, i + 1):
            out.update(self.attachments.get(j, ()))
        return frozenset(out)

    def right_set(self, j: int) -> frozenset[int]:
        """``R_j``: the side of ``v_j`` when cutting edge (v_j, v_{j-1})."""
        if not 1 <= j <= self.d:
            raise IndexError(j)
        out = set(self.spine[j:])
        for i in range(j, self.d):
            out.update(self.attachments.get(i, ()))
        return frozenset(out)

    def index_of(self, v: int) -> int:
        return self.spine.index(v)


def spine_decompose(t: Tree) -> SpineDecomposition:
    if not is_caterpillar(t):
        raise NotACaterpillar("not a caterpillar: some vertex lies at distance >= 2 from every geodesic")
    d, path = diameter_and_geodesic(t)
    on_spine = set(path)
    attachments = {}
    for i in range(1, d):
        attachments[i] = tuple(y for y in t.adjacency[path[i]] if y not in on_spine)
    if d >= 2:
        left = len(attachments[1]) + 1
        right = len(attachments[d - 1]) + 1
    else:
        left = right = 0
    return SpineDecomposition(tuple(path), attachments, left, right)


# -- canonical forms --------------------------------------------------------


def centers(t: Tree) -> list[int]:
    """One or two central vertices, found by repeated leaf stripping."""
    if t.n <= 2:
        return list(range(t.n))
    deg = list(t.degrees)
    layer = [v for v in range(t.n) if deg[v] == 1]
    left = t.n
    while left > 2:
        left -= len(layer)
        nxt = []
        for x in layer:
            for y in t.adjacency[x]:
                deg[y] -= 1
                if deg[y] == 1:
                    nxt.append(y)
        layer = nxt
    return sorted(layer)


def rooted_code(t: Tree, root: int) -> bytes:
    """AHU parenthesis code of ``t`` rooted at ``root``."""
    order, parent = bfs_parents(t, root)
    codes: list[bytes] = [b""] * t.n
    for x in reversed(order):
        kids = sorted(codes[y] for y in t.adjacency[x] if y != parent[x])
        codes[x] = b"(" + b"".join(kids) + b")"
    return codes[root]


def canonical_code(t: Tree) -> bytes:
    """Isomorphism-invariant code: AHU rooted at the center (smaller of two if bicentral)."""
    return min(rooted_code(t, c) for c in centers(t))


def tree_from_code(code: bytes) -> Tree:
    """Rebuild a tree from a rooted AHU code, labeling vertices in preorder."""
    edges = []
    stack: list[int] = []
    nxt = 0
    for ch in code:
        if ch == ord("("):
            if stack:
                edges.append((stack[-1], nxt))
            stack.append(nxt)
            nxt += 1
        elif ch == ord(")"):
            if not stack:
                raise TreeError("unbalanced tree code")
            stack.pop()
        else:
            raise TreeError(f"invalid character in tree code: {chr(ch)!r}")
    if stack or nxt == 0:
        raise TreeError("unbalanced tree code")
    return build_tree(nxt, edges)
