import networkx as nx
import pytest

from src.network.errors import ParameterError, PreconditionError
from src.network.topology.butterfly import NodeId, build_butterfly, distance, undirected_neighbors
from src.network.topology.generic_graph import GenericGraph, load_graph
from src.network.trust.redundancy import (
    TrustRadius,
    cut_disconnects,
    effective_redundancy,
    graph_redundancy,
    min_vertex_cut,
    redundancy_profile,
    redundancy_record,
    trust_boundary,
    trust_context,
    trusted_neighborhood,
)


def from_networkx(graph: nx.Graph) -> GenericGraph:
    mapping = {u: i for i, u in enumerate(graph.nodes())}
    labels = [str(u) for u in graph.nodes()]
    return GenericGraph(labels, [(mapping[a], mapping[b]) for a, b in graph.edges()])


def brute_force_redundancy(g, v, w, h):
    """Máximo número de caminos simples que no comparten nodos fuera de la región confiable"""
    ctx = trust_context(g, v, w, h)
    footprints = {
        frozenset(path) - ctx.trusted
        for path in nx.all_simple_paths(g.undirected, v, w)
    }
    if frozenset() in footprints:
        return None
    minimal = [s for s in footprints if not any(other < s for other in footprints)]
    if not minimal:
        return 0
    compatible = nx.Graph()
    compatible.add_nodes_from(range(len(minimal)))
    for i in range(len(minimal)):
        for j in range(i + 1, len(minimal)):
            if not minimal[i] & minimal[j]:
                compatible.add_edge(i, j)
    clique, size = nx.max_weight_clique(compatible, weight=None)
    return size


def check_witnesses(g, result):
    ctx = result.context
    assert len(result.witness_paths) == result.delta
    footprints = []
    for path in result.witness_paths:
        assert path[0] == result.v
        assert path[-1] == result.w
        for a, b in zip(path, path[1:]):
            assert g.undirected.has_edge(a, b)
        footprints.append(set(path) - ctx.trusted)
    for i in range(len(footprints)):
        for j in range(i + 1, len(footprints)):
            assert not footprints[i] & footprints[j]


def test_radius_one_trusts_only_the_node(wbf5, origin):
    assert trusted_neighborhood(wbf5, origin, 1) == {origin}
    assert trust_boundary(wbf5, origin, 1) == undirected_neighbors(wbf5, origin)


def test_radius_two_on_butterfly(wbf5, origin):
    assert trusted_neighborhood(wbf5, origin, 2) == {origin} | undirected_neighbors(wbf5, origin)
    lengths = nx.single_source_shortest_path_length(wbf5.undirected, origin)
    assert trust_boundary(wbf5, origin, 2) == {u for u, d in lengths.items() if d == 2}


def test_neighborhood_on_path(path4):
    v = path4.resolve("v")
    trusted = trusted_neighborhood(path4, v, 3)
    assert {path4.label(u) for u in trusted} == {"v", "a", "b"}
    assert {path4.label(u) for u in trust_boundary(path4, v, 3)} == {"w"}


@pytest.mark.parametrize("h", [0, -1, 1.5, True])
def test_invalid_radius(h):
    with pytest.raises(ParameterError):
        TrustRadius(h)


def test_radius_limit_on_butterfly():
    assert TrustRadius(3).check_butterfly(7).h == 3
    with pytest.raises(ParameterError):
        TrustRadius(4).check_butterfly(7)


def test_butterfly_redundancy_enforces_radius_limit(origin):
    g = build_butterfly(4)
    with pytest.raises(ParameterError):
        effective_redundancy(g, origin, NodeId(2, 0b1111), 3)
    with pytest.raises(ParameterError):
        graph_redundancy(g, 3)
    assert effective_redundancy(g, origin, NodeId(2, 0b1111), 2).delta is not None


def test_unknown_node(path4):
    with pytest.raises(ParameterError):
        trusted_neighborhood(path4, 99, 1)


def test_single_path_redundancy(path4):
    v, w = path4.resolve("v"), path4.resolve("w")
    result = effective_redundancy(path4, v, w, 1)
    assert result.delta == 1
    assert len(result.min_cut) == 1
    assert {path4.label(u) for u in result.min_cut} <= {"a", "b"}
    assert cut_disconnects(path4, result.context, result.min_cut)
    check_witnesses(path4, result)


def test_cycle_redundancy(cycle4):
    v, w = cycle4.resolve("v"), cycle4.resolve("w")
    result = effective_redundancy(cycle4, v, w, 1)
    assert result.delta == 2
    assert {cycle4.label(u) for u in result.min_cut} == {"a", "b"}
    check_witnesses(cycle4, result)


def test_butterfly_pair_bounds(wbf7, origin, far_target):
    result = effective_redundancy(wbf7, origin, far_target, 2)
    assert not result.flagged
    assert 4 <= result.delta <= result.boundary_bound
    assert len(result.min_cut) == result.delta
    assert not result.min_cut & result.context.trusted
    assert cut_disconnects(wbf7, result.context, result.min_cut)
    check_witnesses(wbf7, result)


def test_mutually_trusted_pair_is_flagged():
    g = load_graph("v a\na w\n")
    v, w = g.resolve("v"), g.resolve("w")
    result = effective_redundancy(g, v, w, 2)
    assert result.mutually_trusted
    assert result.delta is None
    with pytest.raises(PreconditionError):
        min_vertex_cut(g, v, w, 2)


def test_adjacent_trusted_regions_are_flagged(path4):
    result = effective_redundancy(path4, path4.resolve("v"), path4.resolve("w"), 2)
    assert result.trusted_link
    assert not result.mutually_trusted
    assert result.delta is None


def test_disconnected_pair_has_zero_redundancy():
    g = load_graph("v a\nb w\n")
    result = effective_redundancy(g, g.resolve("v"), g.resolve("w"), 1)
    assert result.delta == 0
    assert result.min_cut == frozenset()
    assert result.witness_paths == []


def test_petersen_is_three_connected():
    g = from_networkx(nx.petersen_graph())
    result = effective_redundancy(g, 0, 7, 1)
    assert result.delta == 3
    assert brute_force_redundancy(g, 0, 7, 1) == 3


@pytest.mark.parametrize("seed", range(8))
@pytest.mark.parametrize("h", [1, 2])
def test_flow_matches_path_enumeration(seed, h):
    g = from_networkx(nx.gnp_random_graph(8, 0.4, seed=seed))
    v, w = 0, 7
    expected = brute_force_redundancy(g, v, w, h)
    result = effective_redundancy(g, v, w, h)
    if expected is None:
        assert result.flagged
        return
    assert result.delta == expected
    assert len(result.min_cut) == expected
    assert cut_disconnects(g, result.context, result.min_cut)
    check_witnesses(g, result)


def test_grid_matches_path_enumeration():
    g = from_networkx(nx.grid_2d_graph(3, 4))
    v, w = 0, g.num_nodes - 1
    for h in (1, 2):
        assert effective_redundancy(g, v, w, h).delta == brute_force_redundancy(g, v, w, h)


def test_profile_is_monotone(wbf6, origin):
    lengths = nx.single_source_shortest_path_length(wbf6.undirected, origin)
    w = max(sorted(lengths), key=lambda u: lengths[u])
    assert lengths[w] >= 6
    deltas = [result.delta for result in redundancy_profile(wbf6, origin, w, [1, 2, 3])]
    assert None not in deltas
    assert deltas == sorted(deltas)
    assert deltas[0] >= 2


def test_cycle_graph_redundancy():
    g = load_graph("".join(f"{i} {(i + 1) % 8}\n" for i in range(8)))
    summary = graph_redundancy(g, 1)
    assert summary.delta == 2
    assert summary.pairs_evaluated == 28
    assert summary.excluded == 8
    assert summary.exact


def test_star_graph_redundancy():
    g = load_graph("c x\nc y\nc z\n")
    summary = graph_redundancy(g, 1)
    assert summary.delta == 1
    assert summary.excluded == 3


def test_butterfly_graph_redundancy_fixes_the_source(wbf5):
    summary = graph_redundancy(wbf5, 1)
    assert summary.pairs_evaluated == wbf5.num_nodes - 1
    assert summary.excluded == 4
    assert 2 <= summary.delta <= 4
    assert summary.worst_pair[0] == NodeId(0, 0)


def test_sampled_mode_is_an_upper_bound():
    g = load_graph("".join(f"{i} {(i + 1) % 8}\n" for i in range(8)))
    summary = graph_redundancy(g, 1, mode="sampled", samples=30, seed=3)
    assert not summary.exact
    assert summary.pairs_evaluated == 30
    assert summary.delta >= 2


def test_unknown_mode(path4):
    with pytest.raises(ParameterError):
        graph_redundancy(path4, 1, mode="aproximado")


def test_worker_count_does_not_change_result():
    g = build_butterfly(4)
    serial = graph_redundancy(g, 1, max_workers=1)
    threaded = graph_redundancy(g, 1, max_workers=4)
    assert (serial.delta, serial.excluded, serial.worst_pair) == (
        threaded.delta,
        threaded.excluded,
        threaded.worst_pair,
    )


def test_redundancy_record(wbf7, origin, far_target):
    record = redundancy_record(effective_redundancy(wbf7, origin, far_target, 2), wbf7)
    assert record["v"] == "(0,0000000)"
    assert record["w"] == "(6,0110111)"
    assert record["h"] == 2
    assert len(record["cut"]) == record["delta"]
    assert record["flags"] == {"mutually_trusted": False, "trusted_link": False}
    assert distance(wbf7, origin, far_target) >= 4
