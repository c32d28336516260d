import pytest

import kanon


def test_path_of_three():
    g = kanon.path_graph(3)
    assert kanon.residual(g, 2)["total"] == 4
    plan = kanon.anonymize_weak_21(g)
    assert plan.added_edges == [(0, 2)]
    assert kanon.is_anonymous(plan.result, 2, 1)
    assert plan.residual_before == 4 and plan.residual_after == 0


def test_graph_basics():
    g = kanon.Graph(4, [(0, 1), (1, 2)])
    assert g.vertex_count == 4 and g.edge_count == 2
    assert g.edges() == [(0, 1), (1, 2)]
    assert kanon.common_neighbor_count(g, 0, 2) == 1
    assert kanon.two_neighborhood(g, 0) == [2]
    h = g.copy()
    h.add_edge(2, 3)
    assert h != g


def test_errors_carry_codes():
    g = kanon.Graph(4, [(0, 1), (1, 2)])
    with pytest.raises(kanon.KanonError) as info:
        kanon.anonymize_strong_21(g)
    assert info.value.code == "IsolatedVertex"
    assert info.value.vertices == [3]
    with pytest.raises(ValueError):
        kanon.anonymize(g, k=3, algo="exact21")


def test_dispatch_matches_direct_calls():
    g = kanon.random_graph(15, 0.25, seed=3)
    plan, name = kanon.anonymize(g, k=3, algo="any", seed=4)
    assert name == "weak_any"
    assert plan.added_edges == kanon.weak_any(g, 3, seed=4).added_edges
    plan, name = kanon.anonymize(g, k=4, ell=2, seed=1)
    assert name == "weak_expander"
    assert kanon.is_anonymous(plan.result, 4, 2)


def test_oracle_and_strong_check():
    g = kanon.Graph(7, [(a, b) for a in range(5) for b in range(a + 1, 5)] + [(5, 6)])
    minimum, witness = kanon.oracle(g, 4, 1, mode="strong")
    assert minimum == 8
    result = g.copy()
    for u, v in witness:
        result.add_edge(u, v)
    assert kanon.is_strong_transformation(g, result, 4, 1)
    assert kanon.oracle(kanon.Graph(3, [(0, 1)]), 1, 1, mode="strong") is None


def test_edge_list_text_round_trip():
    g, labels = kanon.parse_edge_list("alice bob\nbob carol\n")
    assert labels == ["alice", "bob", "carol"]
    text = kanon.format_edge_list(g, labels)
    again, _ = kanon.parse_edge_list(text)
    assert again == g


def test_reduction_graph_profile():
    g, meta = kanon.reduction_graph(12, seed=1)
    assert meta["m"] == 2
    counts = kanon.residual(g, 7)["sharer_count"]
    u = set(meta["u_vertices"])
    assert all((counts[v] == 6) if v in u else (counts[v] >= 7) for v in range(g.vertex_count))
