import random

import pytest

from planarcc import (
    Matching,
    NoPerfectMatchingError,
    RewarmMismatchError,
    WeightedMatchGraph,
    WeightRangeError,
    min_weight_perfect_matching,
    rewarm_solve,
    solve_with_state,
)
from planarcc.matching import (
    available_engines,
    to_dimacs,
    verify_min_weight_perfect_matching,
)
from planarcc.oracle import brute_force_mwpm

from conftest import random_match_graph

FOUR_CYCLE = WeightedMatchGraph(4, ((0, 1, 1), (1, 2, 2), (2, 3, 3), (0, 3, 4)))


def test_single_edge(engine):
    g = WeightedMatchGraph(2, ((0, 1, -5),))
    m = min_weight_perfect_matching(g, engine)
    assert m.pairs == ((0, 1),)
    assert m.total_weight == -5


def test_four_cycle(engine):
    m = min_weight_perfect_matching(FOUR_CYCLE, engine)
    assert m.total_weight == 4
    assert set(m.pairs) == {(0, 1), (2, 3)}


def test_k4_with_cheap_pair(engine):
    g = WeightedMatchGraph(
        4, ((0, 1, 1), (2, 3, 1), (0, 2, 10), (0, 3, 10), (1, 2, 10), (1, 3, 10))
    )
    m = min_weight_perfect_matching(g, engine)
    assert m.total_weight == 2


def test_random_vs_brute_force(engine):
    rng = random.Random(12345)
    checked = 0
    while checked < 250:
        n = rng.choice([2, 4, 6, 8, 10, 12])
        edges = random_match_graph(rng, n, rng.uniform(0.3, 1.0))
        if not edges:
            continue
        g = WeightedMatchGraph(n, tuple(edges))
        try:
            want = brute_force_mwpm(g)
        except NoPerfectMatchingError:
            with pytest.raises(NoPerfectMatchingError):
                min_weight_perfect_matching(g, engine)
            continue
        got = min_weight_perfect_matching(g, engine)
        verify_min_weight_perfect_matching(g, got)
        assert got.total_weight == want.total_weight
        checked += 1


def test_engines_agree_exactly():
    engines = available_engines()
    if len(engines) < 2:
        pytest.skip("compiled kernel not built")
    rng = random.Random(99)
    for _ in range(100):
        n = rng.choice([6, 8, 10, 12, 14])
        edges = random_match_graph(rng, n, 0.5)
        if not edges:
            continue
        g = WeightedMatchGraph(n, tuple(edges))
        results = []
        for engine in engines:
            try:
                results.append(min_weight_perfect_matching(g, engine))
            except NoPerfectMatchingError:
                results.append(None)
        first = results[0]
        for other in results[1:]:
            if first is None:
                assert other is None
            else:
                assert other is not None
                assert other.total_weight == first.total_weight
                assert other.pairs == first.pairs


def test_odd_vertex_count_rejected(engine):
    g = WeightedMatchGraph(3, ((0, 1, 1),))
    with pytest.raises(NoPerfectMatchingError):
        min_weight_perfect_matching(g, engine)


def test_no_perfect_matching_detected(engine):
    # star: three leaves share one center
    g = WeightedMatchGraph(4, ((0, 1, 1), (0, 2, 1), (0, 3, 1)))
    with pytest.raises(NoPerfectMatchingError):
        min_weight_perfect_matching(g, engine)


def test_graph_validation():
    with pytest.raises(ValueError):
        WeightedMatchGraph(2, ((0, 0, 1),))
    with pytest.raises(ValueError):
        WeightedMatchGraph(2, ((0, 1, 1), (1, 0, 2)))
    with pytest.raises(ValueError):
        WeightedMatchGraph(2, ((0, 1, 1.5),))
    with pytest.raises(WeightRangeError):
        WeightedMatchGraph(2, ((0, 1, 2**60),))


def test_empty_graph():
    assert min_weight_perfect_matching(WeightedMatchGraph(0, ())) == Matching((), 0)


def test_rewarm_noop_identical(engine):
    matching, state = solve_with_state(FOUR_CYCLE, engine)
    again, _ = rewarm_solve(FOUR_CYCLE, state, [], engine)
    assert again == matching


def test_rewarm_weight_flip(engine):
    matching, state = solve_with_state(FOUR_CYCLE, engine)
    assert matching.total_weight == 4
    flipped = WeightedMatchGraph(4, ((0, 1, 1), (1, 2, 2), (2, 3, 3), (0, 3, -4)))
    m2, _ = rewarm_solve(flipped, state, [3], engine)
    assert m2.total_weight == -2
    assert set(m2.pairs) == {(1, 2), (0, 3)}


def test_rewarm_matches_cold_over_perturbations(engine):
    rng = random.Random(7)
    edges = random_match_graph(rng, 20, 0.35)
    g = WeightedMatchGraph(20, tuple(edges))
    matching, state = solve_with_state(g, engine)
    for _ in range(50):
        k = rng.randrange(len(edges))
        i, j, _ = edges[k]
        edges[k] = (i, j, rng.randint(-20, 20))
        g = WeightedMatchGraph(20, tuple(edges))
        warm, state = rewarm_solve(g, state, [k], engine)
        cold = min_weight_perfect_matching(g, engine)
        assert warm.total_weight == cold.total_weight
        verify_min_weight_perfect_matching(g, warm)


def test_rewarm_topology_mismatch(engine):
    _, state = solve_with_state(FOUR_CYCLE, engine)
    other = WeightedMatchGraph(4, ((0, 1, 1), (1, 2, 2), (2, 3, 3), (1, 3, 4)))
    with pytest.raises(RewarmMismatchError):
        rewarm_solve(other, state, None, engine)
    bigger = WeightedMatchGraph(6, FOUR_CYCLE.edges)
    with pytest.raises(RewarmMismatchError):
        rewarm_solve(bigger, state, None, engine)


def test_rewarm_undeclared_change(engine):
    _, state = solve_with_state(FOUR_CYCLE, engine)
    changed = WeightedMatchGraph(4, ((0, 1, 9), (1, 2, 2), (2, 3, 3), (0, 3, 4)))
    with pytest.raises(RewarmMismatchError):
        rewarm_solve(changed, state, [], engine)
    # declaring it is fine
    m, _ = rewarm_solve(changed, state, [0], engine)
    assert m.total_weight == 6


def test_total_weight_unique_across_engines_and_orders():
    # weight is contractual even when the pair set is not unique
    g = WeightedMatchGraph(4, ((0, 1, 1), (2, 3, 1), (0, 2, 1), (1, 3, 1)))
    weights = {
        min_weight_perfect_matching(g, e).total_weight
        for e in available_engines()
    }
    assert weights == {2}


def test_dimacs_dump():
    text = to_dimacs(FOUR_CYCLE)
    lines = text.strip().splitlines()
    assert lines[0] == "p edge 4 4"
    assert lines[1] == "e 1 2 1"
    assert lines[-1] == "e 1 4 4"


def test_cross_check_against_networkx():
    nx = pytest.importorskip("networkx")
    rng = random.Random(2718)
    checked = 0
    while checked < 25:
        n = rng.choice([10, 14, 18])
        edges = random_match_graph(rng, n, 0.45, -50, 50)
        if not edges:
            continue
        g = WeightedMatchGraph(n, tuple(edges))
        G = nx.Graph()
        G.add_nodes_from(range(n))
        for (i, j, w) in edges:
            G.add_edge(i, j, weight=-w)
        pairs = nx.max_weight_matching(G, maxcardinality=True)
        if 2 * len(pairs) < n:
            with pytest.raises(NoPerfectMatchingError):
                min_weight_perfect_matching(g)
            continue
        want = sum(-G[u][v]["weight"] for (u, v) in pairs)
        assert min_weight_perfect_matching(g).total_weight == want
        checked += 1
