import random

import pytest

from planarcc import (
    NotPlanarEmbeddingError,
    PlanarEmbedding,
    SymmetricIsing,
    build_expanded_dual,
    cycle,
    grid,
    ground_state,
    ising_energy,
    min_weight_perfect_matching,
)
from planarcc import faces as faces_of
from planarcc.ising import decode_matching
from planarcc.oracle import brute_force_map_ising

from conftest import random_grid_ising, random_tree

SINGLE_EDGE_EMB = PlanarEmbedding(((1,), (0,)))


def test_single_edge_positive():
    ising = SymmetricIsing(2, ((0, 1, 3),))
    gs = ground_state(ising, SINGLE_EDGE_EMB)
    assert gs.energy == 0
    assert gs.labels == (0, 0)


def test_single_edge_negative():
    ising = SymmetricIsing(2, ((0, 1, -3),))
    gs = ground_state(ising, SINGLE_EDGE_EMB)
    assert gs.energy == -3
    assert gs.labels == (0, 1)


def test_gadget_size_regression_3x3():
    # one port per (face, dart): 24 ports for the 3x3 grid; edges are the 12
    # port pairs plus the per-face cliques (4 faces of K4, one outer K8).
    edges, emb = grid(3, 3)
    ising = SymmetricIsing(9, tuple((i, j, 1) for (i, j) in edges))
    dual = build_expanded_dual(ising, emb)
    assert dual.num_ports == 24
    assert len(dual.match_graph.edges) == 64
    assert len(dual.gadget_map) == 5


def test_triangle_examples():
    edges, emb = cycle(3)
    gs = ground_state(SymmetricIsing(3, tuple((i, j, -1) for (i, j) in edges)), emb)
    assert gs.energy == -2
    gs = ground_state(SymmetricIsing(3, tuple((i, j, 1) for (i, j) in edges)), emb)
    assert gs.energy == 0
    assert gs.labels == (0, 0, 0)


def test_four_cycle_fully_cut():
    edges, emb = cycle(4)
    gs = ground_state(SymmetricIsing(4, tuple((i, j, -1) for (i, j) in edges)), emb)
    assert gs.energy == -4
    assert gs.labels == (0, 1, 0, 1)


def test_ground_state_vs_oracle_random():
    rng = random.Random(2024)
    checked = 0
    for _ in range(120):
        kind = rng.randrange(3)
        if kind == 0:
            rows, cols = rng.choice([(2, 2), (2, 3), (3, 3), (3, 4)])
            ising, emb = random_grid_ising(rng, rows, cols)
        elif kind == 1:
            k = rng.randint(3, 10)
            edges, emb = cycle(k)
            ising = SymmetricIsing(
                k, tuple((i, j, rng.randint(-10, 10)) for (i, j) in edges)
            )
        else:
            k = rng.randint(2, 10)
            edges, rotations = random_tree(rng, k)
            emb = PlanarEmbedding(rotations)
            ising = SymmetricIsing(
                k,
                tuple(
                    (min(i, j), max(i, j), rng.randint(-10, 10))
                    for (i, j) in edges
                ),
            )
        gs = ground_state(ising, emb)
        want = brute_force_map_ising(ising)
        assert gs.energy == want.energy
        assert gs.labels[0] == 0
        # cut consistency: evaluating the labels reproduces the energy
        assert ising_energy(ising, gs.labels) == gs.energy
        checked += 1
    assert checked == 120


def test_ground_state_on_polygon_triangulations():
    from conftest import random_polygon_triangulation

    rng = random.Random(909)
    for _ in range(60):
        n = rng.randint(4, 12)
        edges, rotations = random_polygon_triangulation(rng, n)
        emb = PlanarEmbedding(tuple(rotations))
        fs = faces_of(emb)
        assert len(fs) == (n - 2) + 1
        ising = SymmetricIsing(
            n, tuple((i, j, rng.randint(-10, 10)) for (i, j) in edges)
        )
        gs = ground_state(ising, emb)
        assert gs.energy == brute_force_map_ising(ising).energy


def test_pcc_on_polygon_triangulations():
    from conftest import random_polygon_triangulation
    from planarcc import BinaryMRF, optimize
    from planarcc.oracle import brute_force_map

    rng = random.Random(911)
    for _ in range(15):
        n = rng.randint(4, 10)
        edges, rotations = random_polygon_triangulation(rng, n)
        model = BinaryMRF(
            n,
            tuple((i, j, rng.randint(-500, 500)) for (i, j) in edges),
            tuple(rng.randint(-400, 400) for _ in range(n)),
            0,
        )
        res = optimize(model, PlanarEmbedding(tuple(rotations)), max_iters=600)
        want = brute_force_map(model).energy
        assert res.best_lower <= want + 1e-6
        assert res.best_upper >= want
        if res.certificate == "optimal":
            assert res.best_upper == want


def test_matching_feasibility_and_decode():
    rng = random.Random(6)
    for _ in range(30):
        ising, emb = random_grid_ising(rng, 3, 3)
        dual = build_expanded_dual(ising, emb)
        matching = min_weight_perfect_matching(dual.match_graph)
        gs = decode_matching(ising, dual, matching)
        assert gs.energy == matching.total_weight + dual.offset


def test_zero_weight_edges_kept():
    edges, emb = grid(2, 2)
    ising = SymmetricIsing(4, tuple((i, j, 0) for (i, j) in edges))
    gs = ground_state(ising, emb)
    assert gs.energy == 0


def test_non_integer_weights_rejected():
    ising = SymmetricIsing(2, ((0, 1, 0.5),))
    with pytest.raises(ValueError):
        build_expanded_dual(ising, SINGLE_EDGE_EMB)


def test_embedding_model_mismatch():
    ising = SymmetricIsing(2, ((0, 1, 1),))
    _, emb = grid(2, 2)
    with pytest.raises(NotPlanarEmbeddingError):
        build_expanded_dual(ising, emb)
    # same vertex count, different edges
    edges, emb = cycle(4)
    other = SymmetricIsing(4, ((0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 2, 1)))
    with pytest.raises(NotPlanarEmbeddingError):
        build_expanded_dual(other, emb)


def test_engine_choice_passthrough(engine):
    edges, emb = cycle(5)
    ising = SymmetricIsing(5, tuple((i, j, (-1) ** i * (i + 1)) for (i, j) in edges))
    want = brute_force_map_ising(ising)
    assert ground_state(ising, emb, engine=engine).energy == want.energy
