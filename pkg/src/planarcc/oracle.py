"""Brute-force reference solvers.

These are deliberately dumb: exhaustive enumeration with hard size caps.
They exist so every fast path in the library can be checked against an
implementation that is obviously correct.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoPerfectMatchingError, TooLargeError
from .matching import Matching, WeightedMatchGraph
from .model import BinaryMRF, Labels, SymmetricIsing

MAX_MAP_NODES = 24
MAX_MWPM_VERTICES = 12

_CHUNK_BITS = 20


@dataclass(frozen=True)
class OracleResult:
    assignment: Labels
    energy: float


def _enumerate_min(
    n: int,
    edges: tuple[tuple[int, int, float], ...],
    unary: tuple[float, ...],
    constant: float,
) -> OracleResult:
    """Exhaustive minimum over all 2^n assignments.

    Assignments are encoded with x_0 as the most significant bit, so the
    first minimizer found (smallest code) is the lexicographically smallest
    assignment.
    """
    if n == 0:
        return OracleResult((), constant)
    integer = all(isinstance(w, int) for (_, _, w) in edges) and all(
        isinstance(w, int) for w in unary
    )
    dtype = np.int64 if integer else np.float64

    best_val = None
    best_code = -1
    total = 1 << n
    chunk = 1 << min(_CHUNK_BITS, n)
    for start in range(0, total, chunk):
        codes = np.arange(start, min(start + chunk, total), dtype=np.uint64)
        bits = [
            ((codes >> np.uint64(n - 1 - i)) & np.uint64(1)).astype(np.int64)
            for i in range(n)
        ]
        e = np.zeros(len(codes), dtype=dtype)
        for (i, j, w) in edges:
            e += np.asarray(w, dtype=dtype) * (bits[i] ^ bits[j])
        for i, w in enumerate(unary):
            if w != 0:
                e += np.asarray(w, dtype=dtype) * bits[i]
        k = int(np.argmin(e))
        val = e[k]
        if best_val is None or val < best_val:
            best_val = val
            best_code = start + k
    assignment = tuple((best_code >> (n - 1 - i)) & 1 for i in range(n))
    value = int(best_val) if integer else float(best_val)
    return OracleResult(assignment, value + constant)


def brute_force_map(model: BinaryMRF) -> OracleResult:
    """Global minimum-energy assignment by exhaustive enumeration."""
    if model.num_nodes > MAX_MAP_NODES:
        raise TooLargeError(
            f"{model.num_nodes} nodes exceeds brute-force cap {MAX_MAP_NODES}"
        )
    return _enumerate_min(model.num_nodes, model.edges, model.unary, model.constant)


def brute_force_map_ising(ising: SymmetricIsing) -> OracleResult:
    """Exhaustive ground state of a symmetric (unary-free) model."""
    if ising.num_nodes > MAX_MAP_NODES:
        raise TooLargeError(
            f"{ising.num_nodes} nodes exceeds brute-force cap {MAX_MAP_NODES}"
        )
    return _enumerate_min(
        ising.num_nodes, ising.edges, (0,) * ising.num_nodes, 0
    )


def brute_force_mwpm(g: WeightedMatchGraph) -> Matching:
    """Exhaustive minimum-weight perfect matching."""
    n = g.num_vertices
    if n > MAX_MWPM_VERTICES:
        raise TooLargeError(
            f"{n} vertices exceeds brute-force cap {MAX_MWPM_VERTICES}"
        )
    if n % 2 != 0:
        raise NoPerfectMatchingError(f"odd vertex count {n}")
    if n == 0:
        return Matching((), 0)
    adj: dict[int, dict[int, int]] = {v: {} for v in range(n)}
    for (u, v, w) in g.edges:
        adj[u][v] = w
        adj[v][u] = w

    best: list = [None, None]  # [weight, pairs]

    def recurse(unmatched: list[int], weight: int, pairs: list[tuple[int, int]]):
        if not unmatched:
            if best[0] is None or weight < best[0]:
                best[0] = weight
                best[1] = [*pairs]
            return
        u = unmatched[0]
        rest = unmatched[1:]
        for idx, v in enumerate(rest):
            if v in adj[u]:
                pairs.append((u, v))
                recurse(rest[:idx] + rest[idx + 1:], weight + adj[u][v], pairs)
                pairs.pop()

    recurse(list(range(n)), 0, [])
    if best[0] is None:
        raise NoPerfectMatchingError("graph admits no perfect matching")
    return Matching(tuple(best[1]), best[0])
