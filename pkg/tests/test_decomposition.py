import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weakcolor.decomposition import (ConstructionParams, RootedTreeDecomposition, adhesion,
                                     make_tw_construction, reroot, restrict_bags, torso,
                                     truncation, validate_construction,
                                     validate_tree_decomposition, width)
from weakcolor.errors import InputError
from weakcolor.generators import path_graph, random_ktree
from weakcolor.graph import Graph, induced_subgraph

TD = RootedTreeDecomposition


def path_td(n):
    return TD.build(0, range(n - 1), [(i, i + 1) for i in range(n - 2)], {i: {i, i + 1} for i in range(n - 1)})


def test_single_bag_is_valid():
    g = path_graph(4)
    assert validate_tree_decomposition(g, TD.single(range(4))).ok


def test_edge_coverage_violation():
    g = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    td = TD.build(0, [0, 1], [(0, 1)], {0: {0, 1}, 1: {1, 2}})
    assert validate_tree_decomposition(g, td).rules() == {"edge-coverage"}


def test_connectivity_violation():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    td = TD.build(0, [0, 1, 2], [(0, 1), (1, 2)], {0: {0, 1}, 1: {1, 2}, 2: {0, 2}})
    assert "connectivity" in validate_tree_decomposition(g, td).rules()


def test_shape_and_coverage_violations():
    g = Graph.empty(2)
    assert validate_tree_decomposition(g, TD.build(0, [0], [], {0: {0}})).rules() == {"vertex-coverage"}
    assert "tree-shape" in validate_tree_decomposition(g, TD.build(0, [0, 1], [], {0: {0}, 1: {1}})).rules()
    assert "tree-shape" in validate_tree_decomposition(g, TD.build(0, [0, 1], [(1, 0)], {0: {0}, 1: {1}})).rules()
    assert "bag-vertex" in validate_tree_decomposition(g, TD.build(0, [0], [], {0: {0, 1, 7}})).rules()
    rep = validate_tree_decomposition(g, TD.build(0, [0], [], {0: {0}}))
    assert not rep.ok and rep.to_json()["violations"][0]["rule"] == "vertex-coverage"


def test_adhesion_and_width():
    assert (adhesion(path_td(3)), width(path_td(3))) == (1, 1)
    assert (adhesion(TD.single(range(4))), width(TD.single(range(4)))) == (0, 3)
    assert adhesion(TD.build(0, [0, 1], [(0, 1)], {0: {0, 1}, 1: {2, 3}})) == 0


def test_restrict_bags_examples():
    td = path_td(4)
    assert restrict_bags(td, range(4)) == td
    assert all(not b for b in restrict_bags(td, []).bags.values())
    r = restrict_bags(td, [0, 1, 3])
    assert r.bags == {0: {0, 1}, 1: {1}, 2: {3}}


def test_torso_examples():
    a, b, c, d = 0, 1, 2, 3
    g = Graph.from_edges(4, [(a, b), (c, d)])
    td = TD.build(0, [0, 1], [(0, 1)], {0: {a, b, c}, 1: {b, c, d}})
    assert torso(g, td, 0).edges == ((0, 1), (1, 2))
    # adhesion of size 1 adds nothing
    g2 = path_graph(3)
    assert torso(g2, path_td(3), 0).edges == ((0, 1),)
    assert torso(g2, TD.single(range(3)), 0) == g2
    with pytest.raises(InputError):
        torso(g2, path_td(3), 9)


def test_truncation_examples():
    td = TD.build(0, [0, 1], [(0, 1)], {0: {0, 1}, 1: {1, 2}})
    t, new = truncation(td, (0, 1))
    assert new == 2 and t.root == 2 and set(t.nodes) == {1, 2}
    assert t.bags[2] == {1}
    p = path_td(6)
    t, new = truncation(p, (3, 4))
    assert len(t.nodes) == 2 and t.bags[new] == p.bags[3] & p.bags[4]
    with pytest.raises(InputError):
        truncation(td, (1, 0))


def test_validate_construction_examples():
    g, td = random_ktree(30, 2, 1)
    assert validate_construction(g, td, ConstructionParams(3, 3)).ok
    assert validate_construction(g, td, ConstructionParams(1, 1)).rules() >= {"adhesion"}
    g1 = path_graph(3)
    empty_root = TD.build(9, [9, 0, 1], [(9, 0), (0, 1)], {9: set(), 0: {0, 1}, 1: {1, 2}})
    assert validate_construction(g1, empty_root, ConstructionParams(1, 1)).rules() == {"C2"}
    assert validate_construction(g1, empty_root, ConstructionParams(0, 1)).ok  # leaf end, private part {2}
    g4 = path_graph(4)
    assert validate_construction(g4, path_td(4), ConstructionParams(0, 2)).rules() == {"C1"}
    with pytest.raises(InputError):
        ConstructionParams(2, 1)


def test_c1_childless_end_with_small_components():
    # adhesion 2 > eta = 1 is fine on a leaf whose private part is an edge
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 2)])
    td = TD.build(0, [0, 1], [(0, 1)], {0: {0, 1}, 1: {0, 1, 2, 3}})
    assert validate_construction(g, td, ConstructionParams(1, 2)).ok
    g3 = Graph.from_edges(5, [(0, 2), (2, 3), (3, 4)])
    td3 = TD.build(0, [0, 1], [(0, 1)], {0: {0, 1}, 1: {0, 1, 2, 3, 4}})
    assert validate_construction(g3, td3, ConstructionParams(1, 2)).rules() == {"C1"}


def test_make_tw_construction_reroots_and_prunes():
    g = path_graph(3)
    td = TD.build(0, [0, 1, 2, 3], [(0, 1), (1, 2), (0, 3)], {0: set(), 1: {0, 1}, 2: {1, 2}, 3: set()})
    ctd, params = make_tw_construction(g, td)
    assert params == ConstructionParams(2, 2)
    assert ctd.bags[ctd.root] and validate_construction(g, ctd, params).ok
    assert validate_tree_decomposition(g, ctd).ok
    e, pe = make_tw_construction(Graph.empty(0), TD.single([]), 1)
    assert pe == ConstructionParams(2, 2)
    with pytest.raises(InputError):
        make_tw_construction(g, TD.single(range(3)), 1)


def test_reroot_keeps_validity():
    g, td = random_ktree(25, 2, 4)
    for t in td.nodes[::5]:
        r = reroot(td, t)
        assert r.root == t and validate_tree_decomposition(g, r).ok


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 100), st.integers(1, 3), st.integers(0, 10 ** 6), st.data())
def test_restrict_truncate_torso_properties(n, w, seed, data):
    n = max(n, w + 1)
    g, td = random_ktree(n, w, seed, drop=data.draw(st.sampled_from([0.0, 0.3])))
    assert validate_tree_decomposition(g, td).ok and width(td) <= w
    s = data.draw(st.sets(st.integers(0, n - 1)))
    sub, mp = induced_subgraph(g, s)
    assert validate_tree_decomposition(sub, restrict_bags(td, s, mp)).ok
    if td.edges:
        e = data.draw(st.sampled_from(td.edges))
        tt, new = truncation(td, e)
        covered = tt.vertices()
        h, mp2 = induced_subgraph(g, covered)
        assert validate_tree_decomposition(h, restrict_bags(tt, covered, mp2)).ok
        assert tt.bags[new] == td.bags[e[0]] & td.bags[e[1]]
    t = data.draw(st.sampled_from(td.nodes))
    bag = sorted(td.bags[t])
    tor = torso(g, td, t)
    base, _ = induced_subgraph(g, bag)
    assert set(base.edges) <= set(tor.edges)
    nbrs = list(td.children[t]) + ([td.parent[t]] if td.parent[t] is not None else [])
    cliques = {(bag.index(a), bag.index(b)) for o in nbrs for a in td.bags[t] & td.bags[o]
               for b in td.bags[t] & td.bags[o] if a < b}
    assert set(tor.edges) - set(base.edges) <= cliques
    ctd, params = make_tw_construction(g, td, w)
    assert validate_construction(g, ctd, params).ok


def test_random_ktree_examples():
    g, td = random_ktree(4, 3, 0)
    assert g.m == 6 and len(td.nodes) == 1
    assert random_ktree(50, 2, 9) == random_ktree(50, 2, 9)
    g, td = random_ktree(60, 3, 2, window=2, hub=True, drop=0.2)
    assert validate_tree_decomposition(g, td).ok and width(td) <= 3
