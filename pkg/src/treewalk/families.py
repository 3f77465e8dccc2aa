"""Named tree families (stars, paths, brooms, double and near double brooms)
and closed-form joining/meeting times for them.

Generated trees use a fixed labeling: spine ``v_0 .. v_d`` gets labels
``0 .. d``, then the extra left leaves, the extra right leaves, and finally
the singleton leaf.  Landmarks follow the conventions ``v_0 = u_1`` and
``v_d = w_1``.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Optional

from .tree import Tree, build_tree

KINDS = (
    "star",
    "path",
    "broom",
    "double_broom",
    "near_double_broom",
    "balanced_double_broom",
    "balanced_near_double_broom",
    "double_star",
)


class FamilyError(ValueError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    n: int
    d: Optional[int] = None
    l: Optional[int] = None  # noqa: E741
    r: Optional[int] = None
    k: Optional[int] = None

    def to_json(self) -> str:
        return json.dumps({k: v for k, v in asdict(self).items() if v is not None})

    @classmethod
    def from_json(cls, text: str) -> "FamilySpec":
        data = json.loads(text)
        return cls(**data)

    def resolved(self) -> "FamilySpec":
        """Validate and fill in every derived parameter.

        The result has ``kind`` reduced to one of star, path, broom,
        double_broom or near_double_broom.
        """
        kind, n, d, l, r, k = self.kind, self.n, self.d, self.l, self.r, self.k
        if kind not in KINDS:
            raise FamilyError(f"unknown family kind {kind!r}; expected one of {', '.join(KINDS)}")
        if n is None or n < 1:
            raise FamilyError("n must be a positive integer")
        if kind == "star":
            if n < 2:
                raise FamilyError("star needs n >= 2")
            if d not in (None, min(2, n - 1)):
                raise FamilyError(f"a star on {n} vertices has diameter {min(2, n - 1)}")
            return FamilySpec("star", n, min(2, n - 1))
        if kind == "path":
            if n < 2:
                raise FamilyError("path needs n >= 2")
            if d not in (None, n - 1):
                raise FamilyError(f"a path on {n} vertices has diameter {n - 1}")
            return FamilySpec("path", n, n - 1)
        if kind == "broom":
            if d is None or not 2 <= d <= n - 1:
                raise FamilyError(f"broom needs 2 <= d <= n-1, got n={n}, d={d}")
            return FamilySpec("broom", n, d)
        if kind == "double_star":
            if d not in (None, 3):
                raise FamilyError("a double star has diameter 3")
            return FamilySpec("double_broom", n, 3, l, r).resolved()
        if kind == "balanced_double_broom":
            if d is None or not 3 <= d < n:
                raise FamilyError(f"balanced double broom needs 3 <= d < n, got n={n}, d={d}")
            return FamilySpec("double_broom", n, d, (n - d + 1) // 2, (n - d + 2) // 2).resolved()
        if kind == "balanced_near_double_broom":
            if d is None or d < 4:
                raise FamilyError(f"balanced near double broom needs d >= 4, got d={d}")
            if n < d + 2:
                raise FamilyError(f"balanced near double broom needs n >= d + 2, got n={n}, d={d}")
            return FamilySpec("near_double_broom", n, d, (n - d) // 2, (n - d + 1) // 2, d // 2).resolved()
        if kind == "double_broom":
            if d is None or d < 3:
                raise FamilyError(f"double broom needs d >= 3, got d={d}")
            if l is None or r is None or l < 1 or r < 1:
                raise FamilyError(f"double broom needs l >= 1 and r >= 1, got l={l}, r={r}")
            if n != l + r + d - 1:
                raise FamilyError(f"double broom needs n = l + r + d - 1, got n={n}, l={l}, r={r}, d={d}")
            return FamilySpec("double_broom", n, d, l, r)
        # near_double_broom
        if d is None or d < 4:
            raise FamilyError(f"near double broom needs d >= 4, got d={d}")
        if l is None or r is None or l < 1 or r < 1:
            raise FamilyError(f"near double broom needs l >= 1 and r >= 1, got l={l}, r={r}")
        if k is None or not 2 <= k <= d - 2:
            raise FamilyError(f"near double broom needs singleton index 2 <= k <= d-2, got k={k}")
        if n != l + r + d:
            raise FamilyError(f"near double broom needs n = l + r + d, got n={n}, l={l}, r={r}, d={d}")
        return FamilySpec("near_double_broom", n, d, l, r, k)


def generate(spec: FamilySpec) -> tuple[Tree, dict[str, int]]:
    """Build the tree for ``spec`` together with named landmark vertices."""
    s = spec.resolved()
    marks: dict[str, int] = {}
    if s.kind in ("star", "broom", "path"):
        d = s.d
        edges = [(i, i + 1) for i in range(d)]
        marks.update({f"v{i}": i for i in range(d + 1)})
        if s.kind == "path":
            return build_tree(s.n, edges), marks
        bristles = [0] + list(range(d + 1, s.n))
        edges += [(1, b) for b in bristles[1:]]
        marks.update({f"u{i + 1}": b for i, b in enumerate(bristles)})
        if s.kind == "star":
            marks["center"] = 1 if s.n > 2 else 0
        return build_tree(s.n, edges), marks

    d, l, r = s.d, s.l, s.r
    edges = [(i, i + 1) for i in range(d)]
    marks.update({f"v{i}": i for i in range(d + 1)})
    left = [0] + list(range(d + 1, d + l))
    right = [d] + list(range(d + l, d + l + r - 1))
    edges += [(1, x) for x in left[1:]]
    edges += [(d - 1, x) for x in right[1:]]
    marks.update({f"u{i + 1}": x for i, x in enumerate(left)})
    marks.update({f"w{i + 1}": x for i, x in enumerate(right)})
    if s.kind == "near_double_broom":
        z = s.n - 1
        edges.append((s.k, z))
        marks["z"] = z
    return build_tree(s.n, edges), marks


def optimal_min_family(n: int, d: int) -> FamilySpec:
    """The family minimizing the meeting time over trees of order n, diameter d."""
    if not 3 <= d < n:
        raise FamilyError(f"need 3 <= d < n, got n={n}, d={d}")
    if d == 3 or (n - d) % 2 == 1:
        return FamilySpec("balanced_double_broom", n, d)
    return FamilySpec("balanced_near_double_broom", n, d)


# -- closed forms -----------------------------------------------------------


def _check_broom(n: int, d: int) -> None:
    if not 2 <= d <= n - 1:
        raise FamilyError(f"need 2 <= d <= n-1, got n={n}, d={d}")


def jmax_broom_formula(n: int, d: int) -> int:
    """Maximum joining time of the broom B(n, d), attained at the handle tip."""
    _check_broom(n, d)
    tail, rem = divmod(4 * d**3 - 4 * d - 3, 3)
    assert rem == 0
    return 4 * (d - 1) * n**2 + (5 - 4 * d**2) * n + tail


def tmeet_broom_formula(n: int, d: int) -> Fraction:
    _check_broom(n, d)
    return (
        (2 * d - 2) * n
        + Fraction(2 * d**3 - 6 * d**2 + 4 * d, 3 * (n - 1))
        - 2 * d**2
        + 2 * d
        + Fraction(1, 2)
    )


def _endpoint_base(n: int, d: int) -> int:
    return 4 * n**2 - 11 * n - d + 9


def j_double_broom_endpoints(n: int, d: int, l: int, r: int) -> tuple[int, int]:  # noqa: E741
    """(J(v_0), J(v_d)) for the double broom with l left and r right leaves."""
    FamilySpec("double_broom", n, d, l, r).resolved()
    base = _endpoint_base(n, d)
    j0 = base + sum((2 * r + 2 * i - 1) ** 2 for i in range(1, d - 1))
    jd = base + sum((2 * l + 2 * i - 1) ** 2 for i in range(1, d - 1))
    return j0, jd


def j_near_double_broom_endpoints(n: int, d: int, l: int, r: int, k: int) -> tuple[int, int]:  # noqa: E741
    """(J(v_0), J(v_d)) for the near double broom with its singleton leaf at v_k."""
    FamilySpec("near_double_broom", n, d, l, r, k).resolved()
    base = _endpoint_base(n, d)
    j0 = (
        base
        + sum((2 * r + 2 * i - 1) ** 2 for i in range(1, d - k))
        + sum((2 * r + 2 * i + 1) ** 2 for i in range(d - k, d - 1))
    )
    jd = (
        base
        + sum((2 * l + 2 * i - 1) ** 2 for i in range(1, k))
        + sum((2 * l + 2 * i + 1) ** 2 for i in range(k, d - 1))
    )
    return j0, jd


def tmeet_min_closed(n: int, d: int) -> tuple[Fraction, FamilySpec]:
    """Minimum meeting time over trees of order n and diameter d, and the optimal family.

    Same-parity case: the leading term is (d+2)n/2, and for odd d the
    constant in the numerator of the 1/(n-1) term is 3, not 6.  Both follow
    from the endpoint sums for the balanced near double broom.
    """
    family = optimal_min_family(n, d)
    if d == 3:
        if n % 2 == 0:
            value = Fraction(5, 2) * n - 4 - Fraction(1, 2 * (n - 1))
        else:
            value = Fraction(5, 2) * n - 3
    elif (n - d) % 2 == 1:
        value = Fraction(d + 2, 2) * n + Fraction(d**3 - 6 * d**2 + 8 * d, 6 * (n - 1)) - Fraction(d + 5, 2)
    else:
        if d % 2 == 0:
            tail, shift = d**3 - 3 * d**2 - d + 6, Fraction(d + 5, 2)
        else:
            tail, shift = d**3 - 3 * d**2 - d + 3, Fraction(d + 3, 2)
        value = Fraction(d + 2, 2) * n + Fraction(tail, 6 * (n - 1)) - shift
    return value, family


def tmeet_fixed_order_bounds(n: int) -> tuple[Fraction, Fraction]:
    """(star value, path value): the min and max meeting time over all trees of order n."""
    if n < 2:
        raise FamilyError(f"need n >= 2, got {n}")
    return 2 * n - Fraction(7, 2), Fraction(4 * n**2 - 8 * n + 3, 6)
