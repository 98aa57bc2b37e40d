"""Certified bounds for planar binary MRFs via per-face unary splitting.

The unary term of each node is split across auxiliary nodes, one placed
inside every face of the embedding (outer face included) and connected to
the distinct vertices on that face's boundary.  Because the copies may
disagree, the augmented model's exact ground state (computable by matching,
the graph stays planar) is a lower bound on the original minimum energy.
The split weights are then improved by projected subgradient steps with
Polyak's step size, while each iterate's restriction to the original nodes
supplies an upper bound; on integer-scaled models a gap below 1 certifies
optimality.
"""

from __future__ import annotations

import time
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .embedding import PlanarEmbedding, faces
from .errors import WeightRangeError
from .ising import ExpandedDual, build_expanded_dual
from .matching import MAX_ABS_WEIGHT, _ENGINES, DEFAULT_ENGINE
from .model import BinaryMRF, Labels, SymmetricIsing, complement, energy

DEFAULT_MATCHING_SCALE = 10**6


@dataclass(frozen=True)
class PCCGraph:
    """The augmented graph: one auxiliary vertex per face of the base model.

    Incidences are (node, face) pairs in face order (walk order within each
    face); node_incidences[i] indexes the incidences of node i (its N_i).
    ``embedding`` is the combined rotation system of the augmented graph,
    which is planar by construction.
    """

    model: BinaryMRF
    base_embedding: PlanarEmbedding
    num_faces: int
    face_vertex: tuple[int, ...]
    inc_node: tuple[int, ...]
    inc_face: tuple[int, ...]
    node_incidences: tuple[tuple[int, ...], ...]
    embedding: PlanarEmbedding

    @property
    def num_vertices(self) -> int:
        return self.model.num_nodes + self.num_faces

    @property
    def num_edges(self) -> int:
        return len(self.model.edges) + len(self.inc_node)

    def augmented_edges(self) -> list[tuple[int, int]]:
        """Edge endpoints of the augmented graph: base edges first, then one
        edge per incidence, in incidence order."""
        out = [(i, j) for (i, j, _) in self.model.edges]
        for t in range(len(self.inc_node)):
            out.append((self.inc_node[t], self.face_vertex[self.inc_face[t]]))
        return out


@dataclass
class VariationalParams:
    """Split unary weights, one value per (node, face) incidence.

    The splits of node i always sum to its unary weight; updates go through
    ``apply_step`` which re-projects onto that constraint subspace.
    """

    pcc: PCCGraph
    values: np.ndarray

    def node_sums(self) -> np.ndarray:
        n = self.pcc.model.num_nodes
        return np.bincount(
            np.asarray(self.pcc.inc_node), weights=self.values, minlength=n
        )

    def max_sum_violation(self) -> float:
        """max_i |sum_f theta_i^f - theta_i|, absolute."""
        unary = np.asarray(self.pcc.model.unary, dtype=np.float64)
        return float(np.max(np.abs(self.node_sums() - unary), initial=0.0))

    def apply_step(self, step: float, direction: np.ndarray) -> None:
        self.values += step * direction
        # Exact re-projection: distribute each node's residual uniformly.
        counts = np.bincount(
            np.asarray(self.pcc.inc_node), minlength=self.pcc.model.num_nodes
        )
        unary = np.asarray(self.pcc.model.unary, dtype=np.float64)
        residual = unary - self.node_sums()
        inc_node = np.asarray(self.pcc.inc_node)
        self.values += residual[inc_node] / counts[inc_node]


@dataclass(frozen=True)
class TraceRow:
    iteration: int
    lower_bound: float
    upper_bound: float
    best_upper: float
    step_size: float
    subgrad_norm2: float
    elapsed_ms: float


@dataclass
class BoundTrace:
    rows: list[TraceRow] = field(default_factory=list)

    def to_csv(self, path: str | Path, timed: bool = False) -> None:
        """Write the trace.

        By default elapsed_ms is written as 0 so that identical inputs give
        byte-identical files; pass timed=True for measured wall-clock times.
        """
        lines = ["iter,lower_bound,upper_bound,best_upper,step_size,subgrad_norm2,elapsed_ms"]
        for r in self.rows:
            ms = r.elapsed_ms if timed else 0.0
            lines.append(
                f"{r.iteration},{r.lower_bound!r},{r.upper_bound!r},"
                f"{r.best_upper!r},{r.step_size!r},{r.subgrad_norm2!r},{ms!r}"
            )
        Path(path).write_text("\n".join(lines) + "\n")


@dataclass(frozen=True)
class SolveResult:
    best_assignment: Labels
    best_upper: float
    best_lower: float
    certificate: str  # "optimal" or "gap"
    gap: float
    iterations: int
    trace: BoundTrace


def build_pcc(model: BinaryMRF, embedding: PlanarEmbedding) -> PCCGraph:
    """Attach one auxiliary vertex per face (outer face included) to the
    distinct vertices on that face's boundary, and build the combined
    planar embedding."""
    if embedding.num_vertices != model.num_nodes:
        raise ValueError(
            f"embedding has {embedding.num_vertices} vertices, model has {model.num_nodes}"
        )
    if embedding.edge_set() != {(i, j) for (i, j, _) in model.edges}:
        raise ValueError("embedding edge set differs from model edge set")
    face_list = faces(embedding)
    n = model.num_nodes
    num_faces = len(face_list)
    face_vertex = tuple(n + f.id for f in face_list)

    inc_node: list[int] = []
    inc_face: list[int] = []
    node_incidences: list[list[int]] = [[] for _ in range(n)]
    # Corner at which each face connects to each boundary vertex: the
    # departure dart of the vertex's first visit on the face walk.
    corner: dict[tuple[int, int], tuple[int, int]] = {}
    for f in face_list:
        for dart in f.boundary:
            u = dart[0]
            if (f.id, u) not in corner:
                corner[(f.id, u)] = dart
        for u in f.boundary_vertices:
            node_incidences[u].append(len(inc_node))
            inc_node.append(u)
            inc_face.append(f.id)

    face_of_dart = {}
    for f in face_list:
        for dart in f.boundary:
            face_of_dart[dart] = f.id

    rotations: list[tuple[int, ...]] = []
    if n == 1:
        # Single vertex: no darts; its one face connects to it directly.
        rotations.append((face_vertex[0],))
    else:
        for v in range(n):
            rot = embedding.rotations[v]
            new_rot: list[int] = []
            for t, u in enumerate(rot):
                new_rot.append(u)
                w = rot[(t + 1) % len(rot)]
                fid = face_of_dart[(v, w)]
                if corner[(fid, v)] == (v, w):
                    new_rot.append(face_vertex[fid])
            rotations.append(tuple(new_rot))
    for f in face_list:
        # Face walks run clockwise under the traversal rule, so a vertex
        # placed inside the face sees the boundary counterclockwise in
        # reversed walk order.
        rotations.append(tuple(reversed(f.boundary_vertices)))

    return PCCGraph(
        model=model,
        base_embedding=embedding,
        num_faces=num_faces,
        face_vertex=face_vertex,
        inc_node=tuple(inc_node),
        inc_face=tuple(inc_face),
        node_incidences=tuple(tuple(t) for t in node_incidences),
        embedding=PlanarEmbedding(tuple(rotations)),
    )


def init_params(model: BinaryMRF, pcc: PCCGraph) -> VariationalParams:
    """Uniform split: theta_i^f = theta_i / |N_i|."""
    inc_node = np.asarray(pcc.inc_node)
    counts = np.bincount(inc_node, minlength=model.num_nodes)
    if any(counts[i] == 0 and model.unary[i] != 0 for i in range(model.num_nodes)):
        raise ValueError("a node with nonzero unary weight lies on no face")
    unary = np.asarray(model.unary, dtype=np.float64)
    values = unary[inc_node] / counts[inc_node]
    return VariationalParams(pcc, values)


class _PCCSolveContext:
    """Per-solve cache: the expanded dual's topology, the scaled base edge
    weights, and the decode tree are fixed; only the incidence edge weights
    change between iterations."""

    def __init__(
        self,
        pcc: PCCGraph,
        matching_scale: int = DEFAULT_MATCHING_SCALE,
        engine: str | None = None,
    ):
        if matching_scale < 1:
            raise ValueError("matching_scale must be >= 1")
        self.pcc = pcc
        self.scale = int(matching_scale)
        self.impl = _ENGINES[engine or DEFAULT_ENGINE]

        model = pcc.model
        aug_edges = pcc.augmented_edges()
        self.num_base = len(model.edges)
        self.num_inc = len(pcc.inc_node)
        self.num_aug_vertices = pcc.num_vertices

        # Scaled base weights; exact integers when the model is integral.
        base_scaled: list[int] = []
        self.base_err_units = 0.0
        for (_, _, w) in model.edges:
            if isinstance(w, int):
                sw = w * self.scale
            else:
                sw = int(np.rint(w * self.scale))
                self.base_err_units += abs(w * self.scale - sw)
            if abs(sw) > MAX_ABS_WEIGHT:
                raise WeightRangeError(
                    "scaled edge weight exceeds safe range; lower matching_scale"
                )
            base_scaled.append(sw)
        self.base_scaled = base_scaled

        # Expanded dual of the augmented graph (weights refreshed per solve).
        dummy = SymmetricIsing(
            self.num_aug_vertices,
            tuple((i, j, 0) for (i, j) in aug_edges),
        )
        self.dual: ExpandedDual = build_expanded_dual(dummy, pcc.embedding)
        self.dual_eu = [u for (u, v) in self.dual._structure[1]]
        self.dual_ev = [v for (u, v) in self.dual._structure[1]]
        self.dual_eu_arr = np.asarray(self.dual_eu, dtype=np.int64)
        self.dual_ev_arr = np.asarray(self.dual_ev, dtype=np.int64)
        self.num_dual_edges = len(self.dual_eu)

        # Position of each augmented edge's port edge, split by bridge flag.
        em = np.asarray(self.dual.edge_map)
        br = np.asarray(self.dual.bridge, dtype=bool)
        self.edge_pos_plain = em[~br]
        self.aug_idx_plain = np.nonzero(~br)[0]
        self.edge_pos_bridge = em[br]
        self.aug_idx_bridge = np.nonzero(br)[0]
        self.ends_u = np.asarray([i for (i, _) in aug_edges], dtype=np.int64)
        self.ends_v = np.asarray([j for (_, j) in aug_edges], dtype=np.int64)

        # Spanning tree of the augmented graph for label propagation.
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.num_aug_vertices)]
        for t, (i, j) in enumerate(aug_edges):
            adj[i].append((j, t))
            adj[j].append((i, t))
        order = [0]
        parent_edge = [-1] * self.num_aug_vertices
        parent_vertex = [-1] * self.num_aug_vertices
        seen = [False] * self.num_aug_vertices
        seen[0] = True
        head = 0
        while head < len(order):
            v = order[head]
            head += 1
            for (w, t) in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    parent_edge[w] = t
                    parent_vertex[w] = v
                    order.append(w)
        if not all(seen):
            raise ValueError("augmented graph is disconnected")
        self.bfs_order = order
        self.parent_edge = parent_edge
        self.parent_vertex = parent_vertex
        self.aug_edges = aug_edges

    def scaled_weights(self, params: VariationalParams) -> tuple[np.ndarray, float]:
        """Integer weights (in matching-scale units) for all augmented edges
        plus the total absolute rounding error in those units."""
        inc_scaled_f = params.values * self.scale
        inc_rounded = np.rint(inc_scaled_f)
        err = self.base_err_units + float(np.abs(inc_scaled_f - inc_rounded).sum())
        w = np.empty(self.num_base + self.num_inc, dtype=np.int64)
        w[: self.num_base] = self.base_scaled
        w[self.num_base:] = inc_rounded.astype(np.int64)
        if np.abs(w).max(initial=0) > MAX_ABS_WEIGHT:
            raise WeightRangeError(
                "scaled split weight exceeds safe range; lower matching_scale"
            )
        return w, err

    def solve(self, params: VariationalParams) -> tuple[float, Labels]:
        """One exact solve of the augmented model at the current splits."""
        w, err_units = self.scaled_weights(params)

        dual_w = np.zeros(self.num_dual_edges, dtype=np.int64)
        dual_w[self.edge_pos_plain] = -w[self.aug_idx_plain]
        dual_w[self.edge_pos_bridge] = np.minimum(-w[self.aug_idx_bridge], 0)

        # Kernel maximizes, so hand it the negated (already-negated) weights.
        # Cold solves: subgradient steps perturb most incidence weights, so
        # seeding from the previous matching repairs more than it reuses.
        mate, _ = self.impl.solve_max_weight_matching(
            self.dual.num_ports,
            self.dual_eu,
            self.dual_ev,
            (-dual_w).tolist(),
        )
        mate_arr = np.asarray(mate, dtype=np.int64)

        matched = mate_arr[self.dual_eu_arr] == self.dual_ev_arr
        matched_total = int(dual_w[matched].sum())

        cut = np.zeros(self.num_base + self.num_inc, dtype=bool)
        cut[self.aug_idx_plain] = ~matched[self.edge_pos_plain]
        cut[self.aug_idx_bridge] = w[self.aug_idx_bridge] < 0

        offset = int(w.sum())
        gs_energy = matched_total + offset

        labels = [0] * self.num_aug_vertices
        for v in self.bfs_order[1:]:
            labels[v] = labels[self.parent_vertex[v]] ^ int(cut[self.parent_edge[v]])

        # The labeling must reproduce the matching's energy exactly.
        labels_arr = np.asarray(labels, dtype=np.int64)
        value_check = int(
            (w[labels_arr[self.ends_u] != labels_arr[self.ends_v]]).sum()
        )
        if value_check != gs_energy:
            raise AssertionError(
                f"decoded energy {value_check} != matching energy {gs_energy}"
            )

        value = gs_energy / self.scale + self.pcc.model.constant - err_units / self.scale
        return value, tuple(int(v) for v in labels)


def lower_bound(
    model: BinaryMRF,
    pcc: PCCGraph,
    params: VariationalParams,
    matching_scale: int = DEFAULT_MATCHING_SCALE,
    engine: str | None = None,
) -> tuple[float, Labels]:
    """Exact minimum of the augmented model at the given splits: a valid
    lower bound on the original minimum energy.

    Returns (value, config); config labels the original nodes followed by
    the face nodes.  Split weights are quantized to matching-scale units for
    the solver and the worst-case quantization error is subtracted from the
    reported value, so validity never depends on rounding luck.
    """
    ctx = _PCCSolveContext(pcc, matching_scale, engine)
    return ctx.solve(params)


def subgradient(pcc: PCCGraph, config: Sequence[int]) -> np.ndarray:
    """Projected subgradient of the lower bound in the split weights.

    For incidence (i, f): [X_i != X_0^f] minus the mean disagreement of node
    i's copies; each node's coordinates sum to zero, so steps preserve the
    split-sum constraint.
    """
    cfg = np.asarray(config, dtype=np.int64)
    if len(cfg) != pcc.num_vertices:
        raise ValueError(
            f"config has {len(cfg)} labels, expected {pcc.num_vertices}"
        )
    inc_node = np.asarray(pcc.inc_node)
    face_vert = np.asarray(pcc.face_vertex)[np.asarray(pcc.inc_face)]
    disagree = (cfg[inc_node] != cfg[face_vert]).astype(np.float64)
    counts = np.bincount(inc_node, minlength=pcc.model.num_nodes)
    sums = np.bincount(inc_node, weights=disagree, minlength=pcc.model.num_nodes)
    return disagree - (sums / counts)[inc_node]


def polyak_step(best_upper: float, lower: float, grad_sq_norm: float) -> float:
    """Polyak's rule with factor 1/2: (best upper - current lower) / 2|g|^2."""
    if grad_sq_norm <= 0:
        raise ValueError("zero subgradient: no step possible (bound is stationary)")
    return 0.5 * (best_upper - lower) / grad_sq_norm


def decode_upper(model: BinaryMRF, config: Sequence[int]) -> tuple[Labels, float]:
    """Candidate solution from a relaxed configuration: restrict to the
    original nodes and take the better of the restriction and its complement."""
    x = tuple(int(v) for v in config[: model.num_nodes])
    e = energy(model, x)
    xbar = complement(x)
    ebar = energy(model, xbar)
    if ebar < e:
        return xbar, ebar
    return x, e


def optimize(
    model: BinaryMRF,
    embedding: PlanarEmbedding,
    max_iters: int = 1000,
    tol: float = 1.0,
    seed: int = 0,
    matching_scale: int = DEFAULT_MATCHING_SCALE,
    engine: str | None = None,
    on_iteration: Callable[[int, VariationalParams, float, float], None] | None = None,
) -> SolveResult:
    """Full solve: iterate exact lower bounds and decoded upper bounds,
    improving the splits by projected subgradient with Polyak steps.

    Stops when best_upper - best_lower < tol, at max_iters, or on a zero
    subgradient.  The certificate reads "optimal" only for integer-weight
    models (energies are then exact).  ``seed`` is accepted for interface
    compatibility; the solver itself is deterministic.
    """
    del seed
    if not model.is_integer:
        warnings.warn(
            "model weights are not integers; the gap is reported but no "
            "optimality certificate will be issued",
            stacklevel=2,
        )
    pcc = build_pcc(model, embedding)
    params = init_params(model, pcc)
    ctx = _PCCSolveContext(pcc, matching_scale, engine)

    trace = BoundTrace()
    best_upper: float | None = None
    best_assignment: Labels = ()
    best_lower = -np.inf
    start = time.perf_counter()
    limit = max(1, max_iters)
    iteration = 0
    while iteration < limit:
        iteration += 1
        lb, config = ctx.solve(params)
        x, ub = decode_upper(model, config)
        if best_upper is None or ub < best_upper:
            best_upper = ub
            best_assignment = x
        best_lower = max(best_lower, lb)
        gap = best_upper - best_lower

        g = subgradient(pcc, config)
        gn2 = float(g @ g)
        stop = gap < tol or iteration == limit or gn2 == 0.0
        lam = 0.0
        if not stop:
            lam = polyak_step(best_upper, lb, gn2)
            params.apply_step(lam, g)
        trace.rows.append(
            TraceRow(
                iteration,
                lb,
                float(ub),
                float(best_upper),
                lam,
                gn2,
                (time.perf_counter() - start) * 1000.0,
            )
        )
        if on_iteration is not None:
            on_iteration(iteration, params, lb, float(ub))
        if stop:
            break

    gap = float(best_upper - best_lower)
    # "optimal" is a proof, not a stopping decision: it needs the gap below
    # the integer quantum on an exact-integer model, whatever tol was.
    certificate = "optimal" if (gap < 1.0 and model.is_integer) else "gap"
    return SolveResult(
        best_assignment=best_assignment,
        best_upper=best_upper,
        best_lower=best_lower,
        certificate=certificate,
        gap=gap,
        iterations=iteration,
        trace=trace,
    )
