import pytest
from hypothesis import given, strategies as st

from treewalk import hitting
from treewalk.families import FamilySpec, generate
from treewalk.surgery import SurgeryError, caterpillarize, move_leaf, sigma, sigma_candidates, tau, tau_pair_sites
from treewalk.tree import build_tree, canonical_code, diameter, is_caterpillar, spine_decompose

from conftest import trees

# spider: legs 0-1-2, 0-3-4, 0-5-6 plus a leaf 7 hanging from 6
SPIDER = build_tree(8, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6), (6, 7)])


def test_sigma_moves_leaf_to_projection():
    path = [2, 1, 0, 5, 6, 7]
    assert sigma_candidates(SPIDER, path) == [4]
    s = sigma(SPIDER, path, 4)
    assert s.has_edge(4, 0) and not s.has_edge(4, 3)
    assert is_caterpillar(s) and diameter(s) == 5
    assert caterpillarize(SPIDER, path) == s


@pytest.mark.parametrize(
    "path, y, fragment",
    [
        ([2, 1, 0, 5, 6], 4, "not maximal"),
        ([2, 1, 5, 6, 7], 4, "broken"),
        ([2, 1, 0, 5, 6, 7], 7, "lies on the path"),
        ([2, 1, 0, 5, 6, 7], 3, "not a leaf"),
        ([2], 4, "at least two"),
    ],
)
def test_sigma_rejects(path, y, fragment):
    with pytest.raises(SurgeryError, match=fragment):
        sigma(SPIDER, path, y)


def test_sigma_rejects_adjacent_leaf():
    t = build_tree(5, [(0, 1), (1, 2), (2, 3), (1, 4)])
    with pytest.raises(SurgeryError, match="already adjacent"):
        sigma(t, [0, 1, 2, 3], 4)


def test_tau_single_and_pair_moves():
    t, _ = generate(FamilySpec("near_double_broom", 9, 5, 2, 2, 2))
    sp = spine_decompose(t)
    moved = tau(t, sp, (2, 1))
    assert canonical_code(moved) == canonical_code(generate(FamilySpec("double_broom", 9, 5, 3, 2))[0])
    pair = tau(t, sp, (1, 2), (4, 2))
    assert pair.degree(1) == 2 and pair.degree(4) == 2 and pair.degree(2) == 5
    with pytest.raises(SurgeryError, match="no pendant leaf left"):
        tau(t, sp, (1, 2), (1, 3))
    with pytest.raises(SurgeryError, match="off the spine"):
        tau(t, sp, (2, 5))
    with pytest.raises(SurgeryError, match="caterpillar"):
        tau(SPIDER, sp, (1, 2))


def test_tau_pair_sites():
    t, _ = generate(FamilySpec("near_double_broom", 10, 6, 2, 2, 3))
    sp = spine_decompose(t)
    # only v_3 carries an interior pendant leaf, and one leaf cannot make a same-site pair
    assert tau_pair_sites(t, sp) == []
    t2 = build_tree(11, list(t.edges) + [(3, 10)])
    assert tau_pair_sites(t2, spine_decompose(t2)) == [(3, 3)]


def test_move_leaf_errors(p4):
    with pytest.raises(SurgeryError, match="not a leaf"):
        move_leaf(p4, 1, 3)
    with pytest.raises(SurgeryError, match="itself"):
        move_leaf(p4, 0, 0)
    with pytest.raises(SurgeryError, match="already adjacent"):
        move_leaf(p4, 0, 1)
    assert move_leaf(p4, 0, 2).degree(2) == 3


@given(trees(min_n=3), st.data())
def test_move_leaf_lowers_joining_time_at_new_neighbor(t, data):
    z = data.draw(st.sampled_from(t.leaves))
    (y,) = t.adjacency[z]
    x = data.draw(st.sampled_from([v for v in range(t.n) if v not in (y, z)]))
    s = move_leaf(t, z, x)
    assert s.n == t.n and s.has_edge(z, x)
    assert hitting.joining_time(s, x) < hitting.joining_time(t, x)
