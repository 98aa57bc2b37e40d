"""Binary MRFs in disagreement-cost form.

A model is parameterized by pairwise disagreement costs ``theta_ij`` (paid
when two neighbors take different labels), unary costs ``theta_i`` (paid when
a variable takes label 1), and an additive constant accumulated by
reparameterization.  Any pairwise binary MRF can be rewritten this way, and
the unary terms can in turn be absorbed into pairwise edges to an auxiliary
variable, giving a fully symmetric (flip-invariant) Ising model.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import SizeMismatchError, WeightRangeError

# Hard cap on |weight| after integer scaling.  Keeps plenty of headroom for
# edge sums and dual variables inside the matching solver's 64-bit arithmetic.
MAX_ABS_WEIGHT = 2**52

Labels = tuple[int, ...]


def _check_binary_labels(x: Sequence[int], n: int) -> Labels:
    if len(x) != n:
        raise SizeMismatchError(f"assignment has {len(x)} labels, model has {n} nodes")
    out = tuple(int(v) for v in x)
    if any(v not in (0, 1) for v in out):
        raise ValueError("labels must be 0 or 1")
    return out


@dataclass(frozen=True)
class BinaryMRF:
    """Pairwise binary MRF with disagreement costs and unary terms.

    Fields:
        num_nodes: number of variables.
        edges: tuple of (i, j, theta_ij) with i < j, no duplicates.
        unary: per-node theta_i, length num_nodes.
        constant: additive energy offset.
    """

    num_nodes: int
    edges: tuple[tuple[int, int, float], ...]
    unary: tuple[float, ...]
    constant: float = 0

    def __post_init__(self):
        if self.num_nodes < 0:
            raise ValueError("num_nodes must be non-negative")
        if len(self.unary) != self.num_nodes:
            raise SizeMismatchError(
                f"unary has {len(self.unary)} entries, expected {self.num_nodes}"
            )
        seen = set()
        for (i, j, w) in self.edges:
            if i == j:
                raise ValueError(f"self-loop at node {i}")
            if not (0 <= i < j < self.num_nodes):
                raise ValueError(f"edge ({i},{j}) out of range or not i<j")
            if (i, j) in seen:
                raise ValueError(f"duplicate edge ({i},{j})")
            seen.add((i, j))
            if not math.isfinite(w):
                raise ValueError(f"edge ({i},{j}) has non-finite weight")
        for i, w in enumerate(self.unary):
            if not math.isfinite(w):
                raise ValueError(f"unary {i} is non-finite")
        if not math.isfinite(self.constant):
            raise ValueError("constant is non-finite")

    @property
    def is_integer(self) -> bool:
        """True when every weight (and the constant) is an exact integer."""
        return all(isinstance(w, int) for (_, _, w) in self.edges) and all(
            isinstance(w, int) for w in self.unary
        ) and isinstance(self.constant, int)

    def degree(self, i: int) -> int:
        return sum(1 for (u, v, _) in self.edges if i in (u, v))


@dataclass(frozen=True)
class SymmetricIsing:
    """Unary-free binary model: only pairwise disagreement costs.

    Its energy is invariant under flipping all labels.  ``symmetrize`` places
    the auxiliary variable absorbing the unary terms at index 0.
    """

    num_nodes: int
    edges: tuple[tuple[int, int, float], ...]

    def __post_init__(self):
        seen = set()
        for (i, j, w) in self.edges:
            if i == j:
                raise ValueError(f"self-loop at node {i}")
            if not (0 <= i < j < self.num_nodes):
                raise ValueError(f"edge ({i},{j}) out of range or not i<j")
            if (i, j) in seen:
                raise ValueError(f"duplicate edge ({i},{j})")
            seen.add((i, j))
            if not math.isfinite(w):
                raise ValueError(f"edge ({i},{j}) has non-finite weight")

    @property
    def is_integer(self) -> bool:
        return all(isinstance(w, int) for (_, _, w) in self.edges)


@dataclass(frozen=True)
class PairwisePotentialTable:
    """2x2 table of energies phi(x_i, x_j) for one edge."""

    i: int
    j: int
    table: tuple[tuple[float, float], tuple[float, float]]

    def __post_init__(self):
        for row in self.table:
            for v in row:
                if not math.isfinite(v):
                    raise ValueError("potential table entries must be finite")


def energy(model: BinaryMRF, x: Sequence[int]) -> float:
    """Energy of an assignment: sum of violated disagreement costs, unary
    costs of label-1 nodes, and the model constant.

    Exact (integer arithmetic) when the model weights are integers.
    """
    labels = _check_binary_labels(x, model.num_nodes)
    total = model.constant
    for (i, j, w) in model.edges:
        if labels[i] != labels[j]:
            total += w
    for i, w in enumerate(model.unary):
        if labels[i] != 0:
            total += w
    return total


def ising_energy(ising: SymmetricIsing, x: Sequence[int]) -> float:
    """Energy of an assignment under a symmetric (unary-free) model."""
    labels = _check_binary_labels(x, ising.num_nodes)
    total = 0
    for (i, j, w) in ising.edges:
        if labels[i] != labels[j]:
            total += w
    return total


def complement(x: Sequence[int]) -> Labels:
    """Flip every label."""
    return tuple(1 - int(v) for v in x)


def reparameterize(
    tables: Iterable[PairwisePotentialTable], node_count: int
) -> BinaryMRF:
    """Convert a sum of 2x2 pairwise potential tables to disagreement form.

    The returned model's energy equals the summed table entries exactly for
    every assignment.  Contributions from multiple tables on the same edge or
    node accumulate; edges whose accumulated disagreement cost is zero are
    still kept (they may matter for the embedding).
    """
    edge_theta: dict[tuple[int, int], float] = {}
    unary = [0] * node_count
    constant = 0
    for t in tables:
        i, j = t.i, t.j
        if i == j:
            raise ValueError(f"self-loop table at node {i}")
        if not (0 <= i < node_count and 0 <= j < node_count):
            raise ValueError(f"table references invalid pair ({i},{j})")
        tab = t.table
        if i > j:
            i, j = j, i
            tab = ((tab[0][0], tab[1][0]), (tab[0][1], tab[1][1]))
        p00, p01 = tab[0]
        p10, p11 = tab[1]
        # phi(xi,xj) = theta*[xi!=xj] + a_i*[xi!=0] + a_j*[xj!=0] + c
        theta = (p01 + p10 - p00 - p11) / 2
        if isinstance(theta, float) and theta.is_integer():
            theta = int(theta)
        a_i = p10 - theta - p00
        a_j = p01 - theta - p00
        edge_theta[(i, j)] = edge_theta.get((i, j), 0) + theta
        unary[i] += a_i
        unary[j] += a_j
        constant += p00
    edges = tuple((i, j, w) for (i, j), w in sorted(edge_theta.items()))
    return BinaryMRF(node_count, edges, tuple(unary), constant)


def symmetrize(model: BinaryMRF) -> SymmetricIsing:
    """Absorb unary terms into pairwise edges to a new auxiliary node 0.

    Original node i becomes node i+1.  A nonzero theta_i becomes the edge
    (0, i+1, theta_i); zero-weight unary edges are omitted.  Fixing the
    auxiliary to label 0 recovers the original energy minus the constant.
    """
    edges = []
    for i, w in enumerate(model.unary):
        if w != 0:
            edges.append((0, i + 1, w))
    for (i, j, w) in model.edges:
        edges.append((i + 1, j + 1, w))
    return SymmetricIsing(model.num_nodes + 1, tuple(edges))


def _round_half_away(value: float) -> int:
    if value >= 0:
        return int(math.floor(value + 0.5))
    return -int(math.floor(-value + 0.5))


def scale_to_integer(model: BinaryMRF, factor: float) -> BinaryMRF:
    """Scale all weights by ``factor`` and round half away from zero.

    The result carries exact integer weights, so energies of assignments are
    exact integers and a duality gap below 1 certifies optimality.
    """
    if factor <= 0:
        raise ValueError("scale factor must be positive")

    def scale(w):
        s = _round_half_away(factor * w)
        if abs(s) > MAX_ABS_WEIGHT:
            raise WeightRangeError(f"scaled weight {s} exceeds safe integer range")
        return s

    return BinaryMRF(
        model.num_nodes,
        tuple((i, j, scale(w)) for (i, j, w) in model.edges),
        tuple(scale(w) for w in model.unary),
        scale(model.constant),
    )


# ---------------------------------------------------------------------------
# Model JSON format
#
# {
#   "num_nodes": int,
#   "edges": [[i, j, theta], ...],          # i < j
#   "unary": [theta_0, ...],                # length num_nodes
#   "constant": number,                     # optional, default 0
#   "embedding": {"rotations": [[...], ...]},  # optional rotation system
#   "meta": {...}                           # optional generator metadata
# }
# ---------------------------------------------------------------------------


def _num(x):
    """JSON numbers: keep ints exact, pass floats through."""
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ValueError(f"expected a number, got {x!r}")
    return x


def model_to_dict(
    model: BinaryMRF,
    rotations: Sequence[Sequence[int]] | None = None,
    meta: dict | None = None,
) -> dict:
    doc: dict = {
        "num_nodes": model.num_nodes,
        "edges": [[i, j, w] for (i, j, w) in model.edges],
        "unary": list(model.unary),
    }
    if model.constant != 0:
        doc["constant"] = model.constant
    if rotations is not None:
        doc["embedding"] = {"rotations": [list(r) for r in rotations]}
    if meta:
        doc["meta"] = dict(meta)
    return doc


def model_from_dict(doc: dict) -> tuple[BinaryMRF, list[list[int]] | None, dict]:
    """Parse a model document; returns (model, rotations or None, meta).

    Edge endpoints are normalized to i < j and parallel entries are merged
    by summing their weights; self-loops are rejected by the model type.
    """
    n = doc["num_nodes"]
    if not isinstance(n, int) or n < 0:
        raise ValueError("num_nodes must be a non-negative integer")
    merged: dict[tuple[int, int], float] = {}
    order: list[tuple[int, int]] = []
    for e in doc.get("edges", []):
        i, j, w = int(e[0]), int(e[1]), _num(e[2])
        if i > j:
            i, j = j, i
        if (i, j) not in merged:
            merged[(i, j)] = w
            order.append((i, j))
        else:
            merged[(i, j)] += w
    edges = tuple((i, j, merged[(i, j)]) for (i, j) in order)
    unary = tuple(_num(v) for v in doc.get("unary", [0] * n))
    constant = _num(doc.get("constant", 0))
    model = BinaryMRF(n, edges, unary, constant)
    rotations = None
    if "embedding" in doc:
        rotations = [list(map(int, r)) for r in doc["embedding"]["rotations"]]
    meta = doc.get("meta", {}) or {}
    return model, rotations, meta


def save_model(
    path: str | Path,
    model: BinaryMRF,
    rotations: Sequence[Sequence[int]] | None = None,
    meta: dict | None = None,
) -> None:
    Path(path).write_text(
        json.dumps(model_to_dict(model, rotations, meta)) + "\n"
    )


def load_model(path: str | Path) -> tuple[BinaryMRF, list[list[int]] | None, dict]:
    with open(path) as fh:
        return model_from_dict(json.load(fh))
