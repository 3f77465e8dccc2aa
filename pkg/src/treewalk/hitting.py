"""Hitting, return, joining and meeting times of simple random walks on trees.

Hitting and joining times on trees are integers and are returned as ``int``;
``Fraction`` appears only once a quantity is divided by ``2|E|``.  All times
are for the non-lazy walk.  The lazy walk (hold with probability 1/2) doubles
every time; use :func:`lazy` to convert.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .tree import Tree, TreeError, _check_vertex, bfs_parents, path_overlap, split_side


@dataclass(frozen=True)
class StationaryDistribution:
    weights: tuple[Fraction, ...]

    def __getitem__(self, v: int) -> Fraction:
        return self.weights[v]


@dataclass(frozen=True)
class HittingProfile:
    """``times[v]`` is the expected hitting time from ``v`` to ``target``."""

    target: int
    times: tuple[Fraction, ...]


def lazy(value):
    """Convert a non-lazy walk time to the corresponding lazy-walk time."""
    return 2 * value


def return_time(t: Tree, u: int) -> Fraction:
    _check_vertex(t, u)
    if t.n == 1:
        raise TreeError("return time undefined on a single vertex")
    return Fraction(2 * (t.n - 1), t.degree(u))


def hit_adjacent(t: Tree, u: int, v: int) -> int:
    """H(u, v) for an edge (u, v): the degree sum of u's side of the cut."""
    _check_vertex(t, u)
    _check_vertex(t, v)
    if not t.has_edge(u, v):
        raise TreeError(f"vertices {u} and {v} are not adjacent")
    return 2 * len(split_side(t, u, v)) - 1


def hit_formula(t: Tree, u: int, v: int) -> int:
    """H(u, v) as the sum over w of overlap(u, w; v) * deg(w)."""
    _check_vertex(t, u)
    _check_vertex(t, v)
    deg = t.degrees
    return sum(path_overlap(t, u, w, v) * deg[w] for w in range(t.n))


def hitting_to(t: Tree, target: int) -> list[int]:
    """All hitting times to ``target`` in O(n), by summing adjacent hits along paths."""
    _check_vertex(t, target)
    order, parent = bfs_parents(t, target)
    size = [1] * t.n
    for x in reversed(order[1:]):
        size[parent[x]] += size[x]
    h = [0] * t.n
    for x in order[1:]:
        h[x] = h[parent[x]] + 2 * size[x] - 1
    return h


def hitting_matrix(t: Tree) -> list[list[int]]:
    """``H[u][v]`` for all pairs."""
    cols = [hitting_to(t, v) for v in range(t.n)]
    return [[cols[v][u] for v in range(t.n)] for u in range(t.n)]


def _solve_exact(a: list[list[int]], b: list[int]) -> list[Fraction]:
    """Solve ``a x = b`` over the rationals with Bareiss fraction-free elimination."""
    m = len(a)
    rows = [list(a[i]) + [b[i]] for i in range(m)]
    prev = 1
    for k in range(m):
        pivot = next((i for i in range(k, m) if rows[i][k] != 0), None)
        if pivot is None:
            raise ArithmeticError("singular system")
        if pivot != k:
            rows[k], rows[pivot] = rows[pivot], rows[k]
        pk = rows[k][k]
        for i in range(k + 1, m):
            rik = rows[i][k]
            ri = rows[i]
            rk = rows[k]
            for j in range(k + 1, m + 1):
                # exact division is guaranteed by Sylvester's identity
                ri[j] = (pk * ri[j] - rik * rk[j]) // prev
            ri[k] = 0
        prev = pk
    x = [Fraction(0)] * m
    for i in range(m - 1, -1, -1):
        acc = Fraction(rows[i][m])
        for j in range(i + 1, m):
            acc -= rows[i][j] * x[j]
        x[i] = acc / rows[i][i]
    return x


def hit_oracle(t: Tree, target: int) -> HittingProfile:
    """Hitting times to ``target`` from first-step analysis, solved exactly.

    For ``u != target``: ``deg(u) H(u) - sum_{w ~ u, w != target} H(w) = deg(u)``.
    This never touches the tree-specific path formulas.
    """
    _check_vertex(t, target)
    others = [v for v in range(t.n) if v != target]
    index = {v: i for i, v in enumerate(others)}
    m = len(others)
    a = [[0] * m for _ in range(m)]
    b = [0] * m
    for v in others:
        i = index[v]
        a[i][i] = t.degree(v)
        b[i] = t.degree(v)
        for w in t.adjacency[v]:
            if w != target:
                a[i][index[w]] -= 1
    x = _solve_exact(a, b) if m else []
    times = [Fraction(0)] * t.n
    for v in others:
        times[v] = x[index[v]]
    return HittingProfile(target, tuple(times))


def stationary(t: Tree) -> StationaryDistribution:
    if t.n < 2:
        raise TreeError("stationary distribution needs at least one edge")
    total = 2 * (t.n - 1)
    return StationaryDistribution(tuple(Fraction(d, total) for d in t.degrees))


def joining_time(t: Tree, v: int) -> int:
    """J(v) = sum_u deg(u) H(u, v), i.e. 2|E| times the meeting time at v."""
    h = hitting_to(t, v)
    return sum(d * x for d, x in zip(t.degrees, h))


def joining_times(t: Tree) -> list[int]:
    return [joining_time(t, v) for v in range(t.n)]


def joining_from_set(t: Tree, s: Iterable[int], v: int) -> int:
    h = hitting_to(t, v)
    total = 0
    for w in set(s):
        _check_vertex(t, w)
        total += t.degree(w) * h[w]
    return total


def jmax(t: Tree) -> tuple[int, list[int]]:
    """Maximum joining time and every vertex achieving it (ascending)."""
    if t.n < 2:
        raise TreeError("joining times need at least one edge")
    js = joining_times(t)
    best = max(js)
    return best, [v for v, j in enumerate(js) if j == best]


def t_meet(t: Tree) -> Fraction:
    value, _ = jmax(t)
    return Fraction(value, 2 * (t.n - 1))


def t_bestmeet(t: Tree) -> tuple[Fraction, list[int]]:
    """Minimum over targets of the meeting time, with its minimizers."""
    if t.n < 2:
        raise TreeError("joining times need at least one edge")
    js = joining_times(t)
    best = min(js)
    return Fraction(best, 2 * (t.n - 1)), [v for v, j in enumerate(js) if j == best]


def random_target_time(t: Tree, v: int) -> Fraction:
    """sum_w pi_w H(v, w); the same for every start v (Kemeny's constant)."""
    pi = stationary(t)
    total = Fraction(0)
    for w in range(t.n):
        total += pi[w] * hitting_to(t, w)[v]
    return total


def kemeny_constant(t: Tree) -> Fraction:
    pi = stationary(t)
    h = hitting_matrix(t)
    return sum((pi[u] * pi[v] * h[u][v] for u in range(t.n) for v in range(t.n)), Fraction(0))


# -- Monte Carlo ------------------------------------------------------------


def _walk_stream(seed: int, u: int, v: int, shard: int) -> np.random.Generator:
    # PCG64 fed by SeedSequence(seed) with spawn key (u, v, shard):
    # one reproducible, independent stream per (seed, source, target, shard)
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(u, v, shard))))


def _simulate_shard(t: Tree, u: int, v: int, walks: int, rng: np.random.Generator) -> tuple[int, int]:
    deg = np.array(t.degrees, dtype=np.int64)
    nbr = np.zeros((t.n, int(deg.max())), dtype=np.int64)
    for x, row in enumerate(t.adjacency):
        nbr[x, : len(row)] = row
    pos = np.full(walks, u, dtype=np.int64)
    steps = np.zeros(walks, dtype=np.int64)
    active = np.arange(walks)
    while active.size:
        here = pos[active]
        pick = rng.integers(0, deg[here])
        pos[active] = nbr[here, pick]
        steps[active] += 1
        active = active[pos[active] != v]
    return int(steps.sum()), int((steps * steps).sum())


def mc_hitting(
    t: Tree, u: int, v: int, walks: int, seed: int, shards: int = 1
) -> tuple[float, float]:
    """Monte Carlo estimate of H(u, v): sample mean and its standard error.

    Walks are split over ``shards`` independent substreams; only the step
    count sums are merged, so the result does not depend on shard order.
    """
    _check_vertex(t, u)
    _check_vertex(t, v)
    if walks < 1:
        raise ValueError("walks must be >= 1")
    if seed < 0:
        raise ValueError("seed must be non-negative")
    if shards < 1:
        raise ValueError("shards must be >= 1")
    if u == v:
        return 0.0, 0.0
    total = sq = 0
    for i in range(shards):
        k = walks // shards + (1 if i < walks % shards else 0)
        if k == 0:
            continue
        s1, s2 = _simulate_shard(t, u, v, k, _walk_stream(seed, u, v, i))
        total += s1
        sq += s2
    mean = Fraction(total, walks)
    if walks == 1:
        return float(mean), 0.0
    var = (Fraction(sq) - walks * mean * mean) / (walks - 1)
    return float(mean), math.sqrt(var / walks)


def commute_time(t: Tree, u: int, v: int) -> int:
    return hit_formula(t, u, v) + hit_formula(t, v, u)

