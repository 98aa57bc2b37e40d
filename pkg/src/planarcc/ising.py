"""Exact ground states of symmetric planar Ising models.

A labeling of a planar graph cuts a set of edges; cut sets correspond
exactly to even-degree edge subsets of the dual graph.  Minimum-weight even
subgraphs are found by perfect matching on a port graph: each face gets one
port per boundary dart, ports of a face form a zero-weight clique, and the
two ports of each edge are joined by an edge carrying minus the edge weight.
A port pair matched across an edge means "uncut"; leftover (cut) ports pair
up inside their face's clique, which enforces even cut parity around every
face.

A bridge borders the same face twice, so its dual edge is a self-loop and
its cut state is parity-free: its two ports get a single merged edge with
weight min(-w, 0), and the bridge is decoded as cut exactly when w < 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .embedding import PlanarEmbedding, faces
from .errors import NotPlanarEmbeddingError
from .matching import (
    Matching,
    WeightedMatchGraph,
    min_weight_perfect_matching,
)
from .model import Labels, SymmetricIsing


@dataclass(frozen=True)
class ExpandedDual:
    """Matching reduction of a symmetric planar model.

    match_graph holds the port graph for the model's current weights;
    min-matching weight plus ``offset`` equals the ground-state energy.
    edge_map[t] is the index (into match_graph.edges) of the port edge
    representing the model's t-th edge; bridge[t] marks merged bridge edges.
    gadget_map[f] lists the port vertices of face f.
    """

    match_graph: WeightedMatchGraph
    offset: int
    edge_map: tuple[int, ...]
    bridge: tuple[bool, ...]
    gadget_map: tuple[tuple[int, ...], ...]
    num_ports: int
    _structure: tuple  # (num_vertices, endpoint pairs, clique edge count)

    def reweighted(self, weights: Sequence[int]) -> WeightedMatchGraph:
        """Port graph for new weights on the same embedded topology."""
        num_edges = len(self.edge_map)
        if len(weights) != num_edges:
            raise ValueError(f"expected {num_edges} weights, got {len(weights)}")
        dual_w = [0] * len(self._structure[1])
        for t in range(num_edges):
            w = weights[t]
            if self.bridge[t]:
                dual_w[self.edge_map[t]] = min(-w, 0)
            else:
                dual_w[self.edge_map[t]] = -w
        edges = tuple(
            (u, v, dual_w[k]) for k, (u, v) in enumerate(self._structure[1])
        )
        return WeightedMatchGraph(self._structure[0], edges)


@dataclass(frozen=True)
class GroundState:
    """A global minimizer of a symmetric model, with exact energy."""

    labels: Labels
    energy: int


def build_expanded_dual(
    ising: SymmetricIsing, embedding: PlanarEmbedding
) -> ExpandedDual:
    """Construct the port graph whose minimum perfect matching encodes the
    minimum cut of the embedded symmetric model."""
    if not ising.is_integer:
        raise ValueError("matching reduction requires integer weights; scale first")
    if embedding.num_vertices != ising.num_nodes:
        raise NotPlanarEmbeddingError(
            f"embedding has {embedding.num_vertices} vertices, model has {ising.num_nodes}"
        )
    model_edges = {(i, j) for (i, j, _) in ising.edges}
    if embedding.edge_set() != model_edges:
        raise NotPlanarEmbeddingError("embedding edge set differs from model edge set")

    face_list = faces(embedding)

    # One port per (face, dart).
    port_of_dart: dict[tuple[int, int], int] = {}
    gadget_map = []
    for f in face_list:
        ports = []
        for dart in f.boundary:
            port_of_dart[dart] = len(port_of_dart)
            ports.append(port_of_dart[dart])
        gadget_map.append(tuple(ports))
    num_ports = len(port_of_dart)

    edge_index = {(i, j): t for t, (i, j, _) in enumerate(ising.edges)}
    face_of_dart = {}
    for f in face_list:
        for dart in f.boundary:
            face_of_dart[dart] = f.id

    dual_edges: list[tuple[int, int]] = []
    dual_weights: list[int] = []
    edge_map = [-1] * len(ising.edges)
    bridge = [False] * len(ising.edges)
    skip_clique: set[tuple[int, int]] = set()
    for (i, j, w) in ising.edges:
        t = edge_index[(i, j)]
        p1 = port_of_dart[(i, j)]
        p2 = port_of_dart[(j, i)]
        edge_map[t] = len(dual_edges)
        if face_of_dart[(i, j)] == face_of_dart[(j, i)]:
            bridge[t] = True
            dual_weights.append(min(-w, 0))
            skip_clique.add((min(p1, p2), max(p1, p2)))
        else:
            dual_weights.append(-w)
        dual_edges.append((p1, p2))
    for ports in gadget_map:
        for a in range(len(ports)):
            for b in range(a + 1, len(ports)):
                u, v = ports[a], ports[b]
                key = (min(u, v), max(u, v))
                if key in skip_clique:
                    continue
                dual_edges.append((u, v))
                dual_weights.append(0)

    structure = (num_ports, tuple(dual_edges), len(dual_edges) - len(ising.edges))
    match_graph = WeightedMatchGraph(
        num_ports,
        tuple((u, v, w) for (u, v), w in zip(dual_edges, dual_weights)),
    )
    return ExpandedDual(
        match_graph=match_graph,
        offset=sum(w for (_, _, w) in ising.edges),
        edge_map=tuple(edge_map),
        bridge=tuple(bridge),
        gadget_map=tuple(gadget_map),
        num_ports=num_ports,
        _structure=structure,
    )


def decode_matching(
    ising: SymmetricIsing, dual: ExpandedDual, matching: Matching
) -> GroundState:
    """Recover a minimum-energy labeling from a minimum perfect matching."""
    mate = {}
    for (u, v) in matching.pairs:
        mate[u] = v
        mate[v] = u

    cut = [False] * len(ising.edges)
    for t, (i, j, w) in enumerate(ising.edges):
        p1, p2 = dual._structure[1][dual.edge_map[t]]
        if dual.bridge[t]:
            cut[t] = w < 0
        else:
            cut[t] = mate.get(p1) != p2

    # Propagate labels across the cut from node 0.
    n = ising.num_nodes
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for t, (i, j, _) in enumerate(ising.edges):
        adj[i].append((j, t))
        adj[j].append((i, t))
    labels = [-1] * n
    labels[0] = 0
    stack = [0]
    while stack:
        v = stack.pop()
        for (w_, t) in adj[v]:
            want = labels[v] ^ (1 if cut[t] else 0)
            if labels[w_] == -1:
                labels[w_] = want
                stack.append(w_)
            elif labels[w_] != want:
                raise AssertionError(
                    "matching produced an inconsistent cut; this is a bug"
                )
    if any(l == -1 for l in labels):
        raise NotPlanarEmbeddingError("model graph is disconnected")

    value = 0
    for (i, j, w) in ising.edges:
        if labels[i] != labels[j]:
            value += w
    expected = matching.total_weight + dual.offset
    if value != expected:
        raise AssertionError(
            f"decoded energy {value} != matching weight + offset {expected}"
        )
    return GroundState(tuple(labels), value)


def ground_state(
    ising: SymmetricIsing, embedding: PlanarEmbedding, engine: str | None = None
) -> GroundState:
    """Exact global minimizer of a symmetric planar model.

    Labels are normalized so node 0 has label 0 (any labeling and its
    complement have equal energy).
    """
    dual = build_expanded_dual(ising, embedding)
    matching = min_weight_perfect_matching(dual.match_graph, engine)
    return decode_matching(ising, dual, matching)
