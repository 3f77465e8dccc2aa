"""Isomorph-free tree enumeration and exhaustive checks of the extremal results."""

from __future__ import annotations

import itertools
import json
import os
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional

from . import hitting
from .families import FamilySpec, generate, jmax_broom_formula, tmeet_min_closed
from .surgery import move_leaf, sigma, sigma_candidates, tau, tau_pair_sites
from .tree import (
    Tree,
    build_tree,
    canonical_code,
    diameter,
    diameter_and_geodesic,
    from_pruefer,
    is_caterpillar,
    rooted_code,
    spine_decompose,
    split_side,
    tree_from_code,
)

DEFAULT_ENUM_CAP = 16
# decode every labeled tree up to this order; beyond it, grow by leaf extension
PRUEFER_MAX_N = 8


class VerificationError(ValueError):
    pass


def enum_cap() -> int:
    raw = os.environ.get("TREEWALK_ENUM_CAP")
    if raw is None:
        return DEFAULT_ENUM_CAP
    try:
        return int(raw)
    except ValueError:
        raise VerificationError(f"TREEWALK_ENUM_CAP must be an integer, got {raw!r}") from None


def _check_order(n: int, cap: Optional[int] = None) -> None:
    cap = enum_cap() if cap is None else cap
    if n < 1:
        raise VerificationError(f"n must be >= 1, got {n}")
    if n > cap:
        raise VerificationError(f"n={n} exceeds the enumeration cap {cap} (set TREEWALK_ENUM_CAP to raise it)")


# -- enumeration ------------------------------------------------------------


@lru_cache(maxsize=None)
def codes_by_pruefer(n: int) -> tuple[bytes, ...]:
    """Canonical codes of all free trees on n vertices, by deduplicating all n^(n-2) labeled trees."""
    if n == 1:
        return (b"()",)
    found = {canonical_code(from_pruefer(seq, n)) for seq in itertools.product(range(n), repeat=n - 2)}
    return tuple(sorted(found))


@lru_cache(maxsize=None)
def codes_by_extension(n: int) -> tuple[bytes, ...]:
    """Canonical codes of all free trees on n vertices, grown leaf by leaf from smaller classes.

    Every tree on n >= 2 vertices arises from a tree on n-1 vertices by
    hanging a leaf somewhere, so extending one representative per class at
    every vertex and deduplicating reaches every class exactly once.
    """
    if n == 1:
        return (b"()",)
    found = set()
    for code in codes_by_extension(n - 1):
        base = tree_from_code(code)
        for v in range(base.n):
            found.add(canonical_code(build_tree(base.n + 1, base.edges + ((v, base.n),))))
    return tuple(sorted(found))


def tree_codes(n: int, method: str = "auto") -> tuple[bytes, ...]:
    if method == "auto":
        method = "pruefer" if n <= PRUEFER_MAX_N else "extension"
    if method == "pruefer":
        return codes_by_pruefer(n)
    if method == "extension":
        return codes_by_extension(n)
    raise VerificationError(f"unknown enumeration method {method!r}")


@lru_cache(maxsize=None)
def _representatives(n: int) -> tuple[Tree, ...]:
    return tuple(tree_from_code(c) for c in tree_codes(n))


def enumerate_trees(n: int, cap: Optional[int] = None) -> Iterator[Tree]:
    """One tree per isomorphism class, in canonical-code order.

    Each representative is labeled in preorder of its canonical code, so the
    output does not depend on which generation route produced the classes.
    """
    _check_order(n, cap)
    yield from _representatives(n)


@lru_cache(maxsize=None)
def _profile(t: Tree) -> tuple[int, int, tuple[int, ...]]:
    """(diameter, jmax, joining times) of a representative."""
    js = tuple(hitting.joining_times(t)) if t.n >= 2 else (0,)
    return diameter(t), max(js), js


def enumerate_trees_diameter(n: int, d: int, cap: Optional[int] = None) -> Iterator[Tree]:
    if not 2 <= d <= n - 1:
        raise VerificationError(f"need 2 <= d <= n-1, got n={n}, d={d}")
    for t in enumerate_trees(n, cap):
        if _profile(t)[0] == d:
            yield t


# -- reports ----------------------------------------------------------------


@dataclass
class VerificationReport:
    """Outcome of one exhaustive scan.  Values are on the joining-time scale (2|E| x meeting time)."""

    kind: str
    n: int
    d: Optional[int]
    extremal_value: int
    optimal_codes: list[str]
    expected_code: str
    expected_family: str
    formula_value: int
    agrees: bool
    unique: bool
    trees_scanned: int
    r: Optional[int] = None
    extra: dict = field(default_factory=dict)

    @property
    def expected_is_optimal(self) -> bool:
        return self.optimal_codes == [self.expected_code]

    @property
    def passed(self) -> bool:
        return self.agrees and self.unique and self.expected_is_optimal

    @property
    def meeting_time(self) -> Fraction:
        return Fraction(self.extremal_value, 2 * (self.n - 1))

    def to_dict(self) -> dict:
        out = asdict(self)
        out.pop("extra")
        out.update(self.extra)
        out["tmeet"] = _frac(self.meeting_time)
        out["tmeet_decimal"] = float(self.meeting_time)
        out["passed"] = self.passed
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _scan(trees, key, want_max: bool) -> tuple[int, list[str], int]:
    best = None
    codes: list[str] = []
    scanned = 0
    for t in trees:
        scanned += 1
        value = key(t)
        if best is None or (value > best if want_max else value < best):
            best, codes = value, [canonical_code(t).decode()]
        elif value == best:
            codes.append(canonical_code(t).decode())
    if best is None:
        raise VerificationError("empty scan")
    return best, sorted(codes), scanned


def _report(kind, n, d, scan, family: FamilySpec, formula: int, extra=None) -> VerificationReport:
    value, codes, scanned = scan
    tree, _ = generate(family)
    return VerificationReport(
        kind=kind,
        n=n,
        d=d,
        extremal_value=value,
        optimal_codes=codes,
        expected_code=canonical_code(tree).decode(),
        expected_family=family.kind,
        formula_value=formula,
        agrees=value == formula,
        unique=len(codes) == 1,
        trees_scanned=scanned,
        extra=extra or {},
    )


def _check_nd(n: int, d: int, cap: Optional[int]) -> None:
    _check_order(n, cap)
    if not 3 <= d < n:
        raise VerificationError(f"need 3 <= d < n, got n={n}, d={d}")


def verify_max(n: int, d: int, cap: Optional[int] = None) -> VerificationReport:
    """Scan all trees of order n and diameter d for the largest maximum joining time."""
    _check_nd(n, d, cap)
    scan = _scan(enumerate_trees_diameter(n, d, cap), lambda t: _profile(t)[1], want_max=True)
    return _report("max", n, d, scan, FamilySpec("broom", n, d), jmax_broom_formula(n, d))


def verify_min(n: int, d: int, cap: Optional[int] = None) -> VerificationReport:
    """Scan all trees of order n and diameter d for the smallest maximum joining time."""
    _check_nd(n, d, cap)
    scan = _scan(enumerate_trees_diameter(n, d, cap), lambda t: _profile(t)[1], want_max=False)
    value, family = tmeet_min_closed(n, d)
    scaled = value * 2 * (n - 1)
    assert scaled.denominator == 1
    return _report("min", n, d, scan, family, int(scaled))


def verify_fixed_order(n: int, cap: Optional[int] = None) -> tuple[VerificationReport, VerificationReport]:
    """(min report, max report) over every tree of order n."""
    _check_order(n, cap)
    if n < 4:
        raise VerificationError(f"need n >= 4, got {n}")
    trees = list(enumerate_trees(n, cap))
    key = lambda t: _profile(t)[1]  # noqa: E731
    lo = _report("order-min", n, None, _scan(trees, key, False), FamilySpec("star", n), (n - 1) * (4 * n - 7))
    path_j = Fraction(2 * (n - 1) * (4 * n * n - 8 * n + 3), 6)
    assert path_j.denominator == 1
    hi = _report("order-max", n, None, _scan(trees, key, True), FamilySpec("path", n), int(path_j))
    return lo, hi


def rooted_classes(n: int, r: int, cap: Optional[int] = None) -> dict[bytes, tuple[Tree, int]]:
    """One (tree, root) per rooted-isomorphism class whose root has eccentricity r."""
    out: dict[bytes, tuple[Tree, int]] = {}
    for t in enumerate_trees(n, cap):
        dm = t.distance_matrix
        for z in range(t.n):
            if max(dm[z]) == r:
                code = rooted_code(t, z)
                out.setdefault(code, (t, z))
    return out


def verify_rooted_broom(n: int, r: int, cap: Optional[int] = None) -> VerificationReport:
    """Among rooted trees (G, z) of order n with ecc(z) = r, maximize J(z)."""
    _check_order(n, cap)
    if not 2 <= r <= n - 1:
        raise VerificationError(f"need 2 <= r <= n-1, got n={n}, r={r}")
    classes = rooted_classes(n, r, cap)
    best = None
    codes: list[str] = []
    for code, (t, z) in classes.items():
        value = _profile(t)[2][z]
        if best is None or value > best:
            best, codes = value, [code.decode()]
        elif value == best:
            codes.append(code.decode())
    broom, marks = generate(FamilySpec("broom", n, r))
    return VerificationReport(
        kind="rooted",
        n=n,
        d=None,
        r=r,
        extremal_value=best,
        optimal_codes=sorted(codes),
        expected_code=rooted_code(broom, marks[f"v{r}"]).decode(),
        expected_family="broom",
        formula_value=jmax_broom_formula(n, r),
        agrees=best == jmax_broom_formula(n, r),
        unique=len(codes) == 1,
        trees_scanned=len(classes),
    )


# -- per-tree lemma checks --------------------------------------------------


@dataclass(frozen=True)
class Check:
    name: str
    status: str  # "pass", "fail" or "not applicable"
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status != "fail"


def _result(name: str, failures: list[str]) -> Check:
    if failures:
        return Check(name, "fail", "; ".join(failures[:5]))
    return Check(name, "pass")


def lemma_suite(t: Tree) -> list[Check]:
    """Evaluate the joining-time identities on one tree."""
    if t.n < 2:
        raise VerificationError("lemma checks need n >= 2")
    n = t.n
    js = hitting.joining_times(t)
    h = hitting.hitting_matrix(t)
    dm = t.distance_matrix
    checks = []

    bad = []
    for z in t.leaves:
        (y,) = t.adjacency[z]
        if js[z] != js[y] + 4 * (n * n - 3 * n + 2):
            bad.append(f"leaf {z}: J={js[z]}, J(neighbor)={js[y]}")
    checks.append(_result("leaf-shift", bad))

    bad = []
    for u, v in t.edges:
        du = 2 * len(split_side(t, u, v)) - 1
        dv = 2 * (n - 1) - du
        if (js[u] > js[v]) != (du < dv) or (js[v] > js[u]) != (dv < du):
            bad.append(f"edge ({u},{v})")
    checks.append(_result("adjacent-comparison", bad))

    top = max(js)
    bad = [f"vertex {v} of degree {t.degree(v)}" for v in range(n) if js[v] == top and t.degree(v) != 1]
    checks.append(_result("leaf-is-max", bad))

    if is_caterpillar(t):
        sp = spine_decompose(t)
        ends = max(js[sp.spine[0]], js[sp.spine[-1]])
        checks.append(_result("caterpillar-endpoints", [] if ends == top else [f"max {top} != endpoint max {ends}"]))
    else:
        checks.append(Check("caterpillar-endpoints", "not applicable", "not a caterpillar"))

    bad = []
    for u in range(n):
        for v in range(u + 1, n):
            if h[u][v] + h[v][u] != 2 * (n - 1) * dm[u][v]:
                bad.append(f"pair ({u},{v})")
    checks.append(_result("commute-time", bad))

    bad = []
    for u in range(n):
        for v in range(n):
            x = h[u][v]
            if x < dm[u][v] or (x - dm[u][v]) % 2:
                bad.append(f"H({u},{v})={x}")
    checks.append(_result("hitting-parity", bad))

    pi = hitting.stationary(t)
    targets = [sum((pi[w] * h[v][w] for w in range(n)), Fraction(0)) for v in range(n)]
    checks.append(_result("random-target-constant", [] if len(set(targets)) == 1 else [str(sorted(set(targets)))]))
    return checks


# -- surgery monotonicity checks ---------------------------------------------


def sigma_violations(t: Tree) -> list[str]:
    """Check sigma on the canonical geodesic of a non-caterpillar, for every eligible leaf."""
    d, path = diameter_and_geodesic(t)
    h = hitting.hitting_matrix(t)
    out = []
    for y in sigma_candidates(t, path):
        s = sigma(t, path, y)
        hs = hitting.hitting_matrix(s)
        if diameter(s) != d:
            out.append(f"y={y}: diameter changed")
        for vj in path:
            if any(hs[v][vj] > h[v][vj] for v in range(t.n)):
                out.append(f"y={y}, v_j={vj}: some hitting time increased")
            if not hs[y][vj] < h[y][vj]:
                out.append(f"y={y}, v_j={vj}: no strict decrease at y")
            if any(hs[vi][vj] != h[vi][vj] for vi in path):
                out.append(f"y={y}, v_j={vj}: spine-to-spine time changed")
            j_old = sum(t.degree(v) * h[v][vj] for v in range(t.n))
            j_new = sum(s.degree(v) * hs[v][vj] for v in range(t.n))
            if not j_new < j_old:
                out.append(f"y={y}, v_j={vj}: joining time did not drop ({j_old} -> {j_new})")
    return out


def tau_violations(t: Tree) -> tuple[int, list[str]]:
    """Check the outward pair move at every eligible site; returns (sites checked, violations)."""
    sp = spine_decompose(t)
    v0, vd = sp.spine[0], sp.spine[-1]
    j0, jd = hitting.joining_time(t, v0), hitting.joining_time(t, vd)
    sites = tau_pair_sites(t, sp)
    out = []
    for i, k in sites:
        s = tau(t, sp, (i, i - 1), (k, k + 1))
        if diameter(s) != sp.d:
            out.append(f"(i,k)=({i},{k}): diameter changed")
        if not hitting.joining_time(s, v0) < j0:
            out.append(f"(i,k)=({i},{k}): J(v_0) did not drop")
        if not hitting.joining_time(s, vd) < jd:
            out.append(f"(i,k)=({i},{k}): J(v_d) did not drop")
    return len(sites), out


def move_leaf_violations(t: Tree, z: int, x: int) -> list[str]:
    s = move_leaf(t, z, x)
    h_old = hitting.hitting_to(t, x)
    h_new = hitting.hitting_to(s, x)
    out = []
    if any(a > b for a, b in zip(h_new, h_old)):
        out.append("a hitting time to x increased")
    if not hitting.joining_time(s, x) < hitting.joining_time(t, x):
        out.append("J(x) did not drop")
    return out


def random_tree(rng: random.Random, n: int) -> Tree:
    if n == 1:
        return build_tree(1, [])
    return from_pruefer([rng.randrange(n) for _ in range(n - 2)], n)


def random_move_triples(count: int, seed: int, min_n: int = 3, max_n: int = 12) -> Iterator[tuple[Tree, int, int]]:
    """Seeded stream of (tree, leaf z, new neighbor x) with x distinct from z and its neighbor."""
    rng = random.Random(seed)
    for _ in range(count):
        t = random_tree(rng, rng.randint(min_n, max_n))
        z = rng.choice(t.leaves)
        (y,) = t.adjacency[z]
        x = rng.choice([v for v in range(t.n) if v not in (z, y)])
        yield t, z, x
