import random
from fractions import Fraction

import pytest
from hypothesis import given

from treewalk import verify
from treewalk.tree import build_tree, canonical_code, diameter, is_caterpillar

from conftest import trees


def otter_free_tree_counts(limit: int) -> list[int]:
    """Free-tree counts t_1..t_limit from rooted-tree counts via Otter's dissimilarity formula."""
    a = [0, 1]
    for m in range(1, limit):
        total = 0
        for k in range(1, m + 1):
            total += sum(d * a[d] for d in range(1, k + 1) if k % d == 0) * a[m - k + 1]
        a.append(total // m)
    out = []
    for n in range(1, limit + 1):
        pairs = sum(a[i] * a[n - i] for i in range(1, n))
        if n % 2 == 0:
            pairs -= a[n // 2]
        out.append(a[n] - pairs // 2)
    return out


def test_otter_oracle_matches_known_prefix():
    # rooted counts 1, 1, 2, 4, 9, 20 are easy to check by hand
    assert otter_free_tree_counts(7) == [1, 1, 1, 2, 3, 6, 11]


@pytest.mark.parametrize("n", range(1, 12))
def test_enumeration_counts(n):
    assert len(list(verify.enumerate_trees(n))) == otter_free_tree_counts(11)[n - 1]


@pytest.mark.parametrize("n", range(1, 9))
def test_enumeration_routes_agree(n):
    assert verify.codes_by_pruefer(n) == verify.codes_by_extension(n)


@pytest.mark.slow
def test_enumeration_routes_agree_at_nine():
    assert verify.codes_by_pruefer(9) == verify.codes_by_extension(9)


def test_enumeration_classes_are_distinct_and_labeled_canonically():
    ts = list(verify.enumerate_trees(10))
    assert len({canonical_code(t) for t in ts}) == len(ts) == 106
    assert sum(1 for t in ts if diameter(t) == 3) == 4
    assert len(list(verify.enumerate_trees_diameter(10, 3))) == 4


def test_enumeration_cap(monkeypatch):
    with pytest.raises(verify.VerificationError, match="cap"):
        list(verify.enumerate_trees(17))
    monkeypatch.setenv("TREEWALK_ENUM_CAP", "5")
    with pytest.raises(verify.VerificationError):
        list(verify.enumerate_trees(6))
    monkeypatch.setenv("TREEWALK_ENUM_CAP", "many")
    with pytest.raises(verify.VerificationError, match="integer"):
        verify.enum_cap()
    with pytest.raises(verify.VerificationError):
        verify.tree_codes(4, method="magic")


def test_verify_reports():
    r = verify.verify_max(8, 3)
    assert (r.extremal_value, r.formula_value, r.passed) == (295, 295, True)
    assert r.optimal_codes == [r.expected_code]
    m = verify.verify_min(8, 4)
    assert m.expected_family == "balanced_near_double_broom"
    assert m.unique and m.extremal_value == 279
    assert m.to_dict()["tmeet"] == "279/14"
    lo, hi = verify.verify_fixed_order(8)
    assert lo.meeting_time == Fraction(25, 2) and hi.meeting_time == Fraction(65, 2)
    rooted = verify.verify_rooted_broom(6, 3)
    assert rooted.passed and rooted.extremal_value == 133
    for bad in ((5, 5), (5, 2)):
        with pytest.raises(verify.VerificationError):
            verify.verify_max(*bad)
    with pytest.raises(verify.VerificationError):
        verify.verify_fixed_order(3)


def test_lemma_suite_on_spider_skips_caterpillar_rule():
    spider = build_tree(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
    checks = {c.name: c for c in verify.lemma_suite(spider)}
    assert checks["caterpillar-endpoints"].status == "not applicable"
    assert all(c.status == "pass" for n, c in checks.items() if n != "caterpillar-endpoints")


@given(trees())
def test_lemma_suite_holds(t):
    assert all(c.ok for c in verify.lemma_suite(t))


@given(trees(min_n=5))
def test_surgery_checks_hold(t):
    if is_caterpillar(t):
        if diameter(t) >= 4:
            assert verify.tau_violations(t)[1] == []
    else:
        assert verify.sigma_violations(t) == []


def test_random_triples_are_seeded():
    a = [(t.edges, z, x) for t, z, x in verify.random_move_triples(20, 11)]
    b = [(t.edges, z, x) for t, z, x in verify.random_move_triples(20, 11)]
    assert a == b
    for edges, z, x in a:
        t = build_tree(len(edges) + 1, edges)
        assert t.degree(z) == 1 and x != z and not t.has_edge(z, x)
    assert verify.random_tree(random.Random(0), 1).n == 1
