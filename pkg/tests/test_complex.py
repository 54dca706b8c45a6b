import json

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from mmspace.complex import (
    OUT,
    OUT0,
    LinkGraph,
    MMVertex,
    RepresentationError,
    act,
    all_orbits,
    coset_label,
    fundamental_domain,
    is_fixed_by,
    link,
    simplex_orbit,
    vertex_equal,
    vertex_equal_oracle,
    vertex_leq,
)
from mmspace.cycles import girth, simple_cycles
from mmspace.export import link_to_dot, poset_to_dot
from mmspace.hypertree import (
    Hypertree,
    HypertreeError,
    all_permutations,
    classify4,
    enumerate_hypertrees,
    line_tree,
    nuclear,
    omega_tree,
    star_tree,
)
from mmspace.pc import CommutingProduct, generators, pc

TREES4 = enumerate_hypertrees(4)
GENS4 = generators(4)


def V(label, tree):
    xs = [] if label is None else [label] if not isinstance(label, list) else label
    return MMVertex(CommutingProduct.of(4, *xs), tree)


def test_vertex_equality_examples():
    assert V(pc(4, 1, 3), omega_tree(1, 3)) == V(None, omega_tree(1, 3))
    assert V(pc(4, 1, 3), nuclear(4)) != V(None, nuclear(4))
    assert vertex_equal(V(pc(4, 2, 4), star_tree(1)), V(pc(4, 2, 4), star_tree(1)))


def test_canonical_labels_agree_with_oracle_equality():
    trees = [nuclear(4), omega_tree(1, 3), star_tree(1), line_tree(1, 3, 2, 4)]
    labels = [None] + GENS4
    verts = [V(g, t) for t in trees for g in labels]
    for a in verts:
        for b in verts:
            assert (a == b) == vertex_equal_oracle(a, b)


def test_vertex_leq_examples():
    assert vertex_leq(V(None, nuclear(4)), V(pc(4, 1, 3), omega_tree(1, 3)))
    assert vertex_leq(V(None, omega_tree(1, 3)), V(None, star_tree(1)))
    assert not vertex_leq(V(None, omega_tree(1, 3)), V(pc(4, 2, 4), star_tree(1)))


def test_act_examples():
    sigma = {1: 2, 2: 1, 3: 3, 4: 4}
    line_1234 = Hypertree.of(4, (1, 2), (2, 3), (3, 4))
    line_2134 = Hypertree.of(4, (2, 1), (1, 3), (3, 4))
    moved = act(pc(4, 1, 3), sigma, V(pc(4, 2, 4), line_1234))
    assert moved == V(pc(4, 1, 3, 4), line_2134)
    v = V(pc(4, 2, 4), star_tree(3))
    assert act(None, None, v) == v
    assert act(pc(4, 1, 3), None, V(None, omega_tree(1, 3))) == V(None, omega_tree(1, 3))


def test_non_representable_label_is_flagged():
    with pytest.raises(RepresentationError):
        coset_label([pc(4, 1, 3), pc(4, 3, 1)], nuclear(4))


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(GENS4), st.sampled_from(all_permutations(4)),
       st.sampled_from(TREES4), st.sampled_from(TREES4))
def test_act_preserves_order(g, sigma, a, b):
    u, v = V(None, a), V(None, b)
    assert vertex_leq(u, v) == vertex_leq(act(g, sigma, u), act(g, sigma, v))


def test_link_counts():
    om = link(omega_tree(1, 3))
    assert (len(om.vertices), len(om.edges)) == (5, 6)
    kinds = sorted(classify4(v.tree).kind for v in om.vertices)
    assert kinds == ["line", "line", "nuclear", "nuclear", "star"]
    ln = link(line_tree(1, 3, 2, 4))
    assert len(ln.vertices) == 8 and sorted(ln.degrees()) == [2] * 8
    assert [len(c) for c in simple_cycles(ln.adjacency())] == [8]
    st_ = link(star_tree(1))
    assert (len(st_.vertices), len(st_.edges)) == (10, 12)
    assert girth(st_.adjacency()) == 6
    # Three hexagons drawn pairwise glued along 2-paths close up a fourth:
    # the graph is K4 with every edge subdivided once.
    k4 = nx.complete_graph(4)
    subdivided = nx.Graph([(a, (a, b)) for a, b in k4.edges] + [(b, (a, b)) for a, b in k4.edges])
    mine = nx.Graph([(a, b) for a, b, _ in st_.edges])
    assert nx.is_isomorphic(mine, subdivided)
    assert sorted(len(c) for c in simple_cycles(st_.adjacency())) == [6] * 4 + [8] * 3
    nu = link(nuclear(4))
    assert len(nu.vertices) == 28 and girth(nu.adjacency()) == 8


def test_every_link_edge_names_its_simplex():
    for t in TREES4:
        g = link(t)
        for a, b, c in g.edges:
            tri = [g.center, g.vertices[a], g.vertices[b]]
            assert simplex_orbit(tri, OUT0) == c.orbit
            assert c.role == ("alpha", "beta", "gamma")[t.height]


def test_link_equivariance_under_generators():
    checked = unrepresentable = 0
    for t in TREES4:
        base = link(t)
        for g in GENS4:
            try:
                direct = link(MMVertex(CommutingProduct.of(4, g), t))
                moved = [act(g, None, u) for u in base.vertices]
            except RepresentationError:
                unrepresentable += 1
                continue
            idx = {u: k for k, u in enumerate(direct.vertices)}
            assert sorted(idx[m] for m in moved) == list(range(len(direct.vertices)))
            mapped = {frozenset((idx[moved[a]], idx[moved[b]])): c for a, b, c in base.edges}
            assert mapped == {frozenset((a, b)): c for a, b, c in direct.edges}
            checked += 1
    assert (checked, unrepresentable) == (108, 240)


def test_fundamental_domain_and_orbits():
    l_simplex, s_simplex = fundamental_domain()
    assert set(l_simplex) & set(s_simplex) == {V(None, nuclear(4)), V(None, omega_tree(1, 3))}
    assert simplex_orbit(l_simplex, OUT).shape == "L"
    assert simplex_orbit(s_simplex, OUT).shape == "S"
    assert simplex_orbit(l_simplex, OUT0).name == "L(1,3|2,4)"
    shifted = [V(pc(4, 1, 3), nuclear(4)), l_simplex[1], l_simplex[2]]
    assert simplex_orbit(shifted, OUT0) == simplex_orbit(l_simplex, OUT0)
    assert len(all_orbits(OUT0)) == 36 and len(all_orbits(OUT)) == 2
    with pytest.raises(HypertreeError):
        simplex_orbit([V(None, nuclear(4)), V(None, omega_tree(1, 3)), V(pc(4, 2, 4), star_tree(1))])


def test_link_json_and_dot():
    g = link(star_tree(1))
    data = json.loads(json.dumps(g.to_json()))
    assert LinkGraph.from_json(data) == g
    dot = link_to_dot(g)
    assert dot.count("class=") == 10 and dot.count(" -- ") == 12
    assert poset_to_dot(TREES4).count(" -> ") == 48


def test_fixed_by_matches_action():
    for t in TREES4:
        for lab in [None] + GENS4:
            v = V(lab, t)
            for x in GENS4:
                try:
                    moved = act(x, None, v)
                except RepresentationError:
                    continue
                assert is_fixed_by(x, v) == (moved == v)


def test_links_only_at_rank4():
    with pytest.raises(NotImplementedError):
        link(nuclear(5))
