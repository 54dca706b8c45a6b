import pytest
from hypothesis import given, settings, strategies as st

from mmspace.hypertree import (
    FoldError,
    Hypertree,
    HypertreeError,
    all_permutations,
    brute_force_hypertrees,
    classify4,
    enumerate_hypertrees,
    fold,
    fold_closure,
    hasse_edges,
    is_hypertree,
    leq,
    line_tree,
    nuclear,
    omega_tree,
    parse_tree_name,
    relabel,
    star_tree,
    tree_from_class,
)

TREES4 = enumerate_hypertrees(4)
PERMS4 = all_permutations(4)


@pytest.mark.parametrize("n,count", [(2, 1), (3, 4), (4, 29), (5, 311), (6, 4447)])
def test_census(n, count):
    assert len(enumerate_hypertrees(n)) == count


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_enumeration_matches_brute_force(n):
    assert set(enumerate_hypertrees(n)) == set(brute_force_hypertrees(n))


def test_rank_range_is_checked():
    with pytest.raises(HypertreeError):
        enumerate_hypertrees(1)
    with pytest.raises(HypertreeError):
        enumerate_hypertrees(7)


def test_enumeration_is_deterministic_and_sorted_by_height():
    assert enumerate_hypertrees(5) == enumerate_hypertrees(5)
    heights = [t.height for t in enumerate_hypertrees(5)]
    assert heights == sorted(heights)


def test_is_hypertree_examples():
    assert is_hypertree(4, [{1, 2, 3, 4}])
    assert is_hypertree(4, [{1, 2}, {2, 3}, {3, 4}])
    assert not is_hypertree(4, [{1, 2, 3}, {2, 3, 4}])  # two shared vertices
    assert not is_hypertree(4, [{1, 2}, {3, 4}])  # disconnected
    assert not is_hypertree(3, [{1, 2}, {2, 3}, {1, 3}])  # cycle
    with pytest.raises(HypertreeError):
        is_hypertree(3, [{1}])
    with pytest.raises(HypertreeError):
        is_hypertree(3, [{1, 5}])


def test_constructor_rejects_non_hypertrees():
    with pytest.raises(HypertreeError):
        Hypertree.of(3, (1, 2), (2, 3), (1, 3))


def test_fold_examples():
    t = fold(Hypertree.of(4, (1, 2), (2, 3), (3, 4)), {1, 2}, {2, 3})
    assert t == Hypertree.of(4, (1, 2, 3), (3, 4))
    with pytest.raises(FoldError):
        fold(Hypertree.of(4, (1, 2), (2, 3), (3, 4)), {1, 2}, {3, 4})
    with pytest.raises(FoldError):
        fold(nuclear(4), {1, 2}, {2, 3})


def test_rank4_classes_and_names():
    for t in TREES4:
        tag = classify4(t)
        assert tree_from_class(tag) == t
        assert parse_tree_name(tag.name) == t
    assert classify4(line_tree(1, 3, 2, 4)).name == "L13_24"
    assert line_tree(1, 3, 2, 4) == line_tree(2, 4, 1, 3)
    assert omega_tree(1, 3).edges == (frozenset({1, 2, 4}), frozenset({1, 3}))
    assert star_tree(1) == Hypertree.of(4, (1, 2), (1, 3), (1, 4))
    with pytest.raises(HypertreeError):
        parse_tree_name("X12")


def test_hasse_diagram_of_rank4():
    covers = hasse_edges(TREES4)
    # Omega lies under two lines and one star; each line covers two omegas, a star three.
    assert len(covers) == 12 + 12 * 3
    up = {}
    for lo, hi in covers:
        up.setdefault(lo, []).append(hi)
    assert all(len(up[t]) == 3 for t in TREES4 if t.height == 1)


def test_json_round_trip():
    for t in TREES4:
        assert Hypertree.from_json(t.to_json()) == t


@st.composite
def tree_pairs(draw):
    n = draw(st.sampled_from([4, 5]))
    trees = enumerate_hypertrees(n)
    return draw(st.sampled_from(trees)), draw(st.sampled_from(trees))


@settings(max_examples=200, deadline=None)
@given(tree_pairs(), st.permutations([1, 2, 3, 4]))
def test_relabel_is_order_automorphism(pair, perm):
    a, b = pair
    n = a.rank
    sigma = dict(zip(range(1, 5), perm)) | {k: k for k in range(5, n + 1)}
    assert leq(a, b) == leq(relabel(a, sigma), relabel(b, sigma))
    assert relabel(a, sigma).height == a.height


@settings(max_examples=150, deadline=None)
@given(tree_pairs())
def test_leq_matches_fold_closure(pair):
    a, b = pair
    assert leq(a, b) == (a in fold_closure(b))


def test_leq_is_partial_order_on_rank4():
    for a in TREES4:
        assert leq(a, a) and leq(nuclear(4), a)
        for b in TREES4:
            if a != b and leq(a, b):
                assert not leq(b, a) and a.height < b.height
