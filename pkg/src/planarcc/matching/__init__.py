"""Exact minimum-weight perfect matching on general graphs, integer weights.

Two interchangeable kernels implement the blossom algorithm: a compiled
Cython extension (built at install time) and a pure-Python fallback.  The
compiled kernel is selected automatically when present; set
PLANARCC_MATCHING=python (or =compiled) to force one. Both kernels are
deterministic and produce identical matchings.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

from ..errors import (
    NoPerfectMatchingError,
    RewarmMismatchError,
    WeightRangeError,
)
from . import _blossom_py

try:
    from . import _blossom_cy
except ImportError:
    _blossom_cy = None

#: largest |weight| accepted; leaves headroom for doubled weights, dual
#: variables and total-weight sums in 64-bit arithmetic.
MAX_ABS_WEIGHT = 2**52

_ENGINES = {"python": _blossom_py}
if _blossom_cy is not None:
    _ENGINES["compiled"] = _blossom_cy

DEFAULT_ENGINE = os.environ.get(
    "PLANARCC_MATCHING", "compiled" if _blossom_cy is not None else "python"
)
if DEFAULT_ENGINE not in _ENGINES:
    raise ImportError(
        f"matching engine {DEFAULT_ENGINE!r} unavailable; "
        f"have: {sorted(_ENGINES)}"
    )


def available_engines() -> list[str]:
    return sorted(_ENGINES)


def has_compiled_kernel() -> bool:
    return _blossom_cy is not None


@dataclass(frozen=True)
class WeightedMatchGraph:
    """Undirected graph with integer edge weights for matching."""

    num_vertices: int
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        seen = set()
        for (u, v, w) in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise ValueError(f"edge ({u},{v}) out of range")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
            if isinstance(w, bool) or not isinstance(w, int):
                raise ValueError(f"edge ({u},{v}) weight must be an integer")
            if abs(w) > MAX_ABS_WEIGHT:
                raise WeightRangeError(
                    f"edge ({u},{v}) weight {w} outside safe range"
                )


@dataclass(frozen=True)
class Matching:
    """A perfect matching: vertex pairs plus the exact total weight."""

    pairs: tuple[tuple[int, int], ...]
    total_weight: int

    def mate_of(self, v: int) -> int:
        for (a, b) in self.pairs:
            if a == v:
                return b
            if b == v:
                return a
        raise KeyError(v)


@dataclass(frozen=True)
class MatchingState:
    """Solver state from a finished solve: the topology it belongs to plus
    the matching and dual variables that seed a warm re-solve."""

    num_vertices: int
    endpoints: tuple[tuple[int, int], ...]
    weights: tuple[int, ...]
    mate: tuple[int, ...]
    duals: tuple[int, ...]


def _solve(
    g: WeightedMatchGraph,
    engine: str | None,
    warm: tuple[list[int], list[int]] | None = None,
) -> tuple[list[int], list[int]]:
    impl = _ENGINES[engine or DEFAULT_ENGINE]
    eu = [u for (u, v, w) in g.edges]
    ev = [v for (u, v, w) in g.edges]
    ew = [w for (u, v, w) in g.edges]
    if g.num_vertices % 2 != 0:
        raise NoPerfectMatchingError(
            f"odd vertex count {g.num_vertices}: no perfect matching exists"
        )
    # Maximum-weight maximum-cardinality matching on negated weights is a
    # minimum-weight perfect matching whenever a perfect matching exists.
    mate, duals = impl.solve_max_weight_matching(
        g.num_vertices, eu, ev, [-w for w in ew], warm
    )
    if any(m < 0 for m in mate):
        raise NoPerfectMatchingError("graph admits no perfect matching")
    return mate, duals


def _matching_from_mate(g: WeightedMatchGraph, mate: list[int]) -> Matching:
    pairs = tuple((v, mate[v]) for v in range(g.num_vertices) if v < mate[v])
    matched = {(u, v) for (u, v) in pairs}
    total = 0
    for (u, v, w) in g.edges:
        key = (u, v) if u < v else (v, u)
        if key in matched:
            total += w
            matched.discard(key)
    if matched:
        raise AssertionError(f"matching used non-edges: {sorted(matched)}")
    return Matching(pairs, total)


def min_weight_perfect_matching(
    g: WeightedMatchGraph, engine: str | None = None
) -> Matching:
    """Exact minimum-weight perfect matching.

    Raises NoPerfectMatchingError when the vertex count is odd or no perfect
    matching exists.  total_weight is computed in exact integer arithmetic.
    """
    if g.num_vertices == 0:
        return Matching((), 0)
    return _matching_from_mate(g, _solve(g, engine)[0])


def solve_with_state(
    g: WeightedMatchGraph, engine: str | None = None
) -> tuple[Matching, MatchingState]:
    """Like min_weight_perfect_matching, but also returns the solver state
    that rewarm_solve uses for subsequent weight-only re-solves."""
    if g.num_vertices == 0:
        return Matching((), 0), MatchingState(0, (), (), (), ())
    mate, duals = _solve(g, engine)
    matching = _matching_from_mate(g, mate)
    state = MatchingState(
        g.num_vertices,
        tuple((u, v) for (u, v, _) in g.edges),
        tuple(w for (_, _, w) in g.edges),
        tuple(mate),
        tuple(duals),
    )
    return matching, state


def rewarm_solve(
    g: WeightedMatchGraph,
    previous: MatchingState,
    changed_edges: list[int] | None = None,
    engine: str | None = None,
) -> tuple[Matching, MatchingState]:
    """Re-solve after weight changes on a fixed topology.

    The previous matching and duals seed the solve, so only pairs broken by
    the weight changes are re-augmented; the result is exactly what a cold
    solve on the new weights would return (total weight is unique).

    Raises RewarmMismatchError if the topology differs from ``previous`` or
    if weights changed outside ``changed_edges``.
    """
    if g.num_vertices != previous.num_vertices:
        raise RewarmMismatchError(
            f"vertex count changed: {previous.num_vertices} -> {g.num_vertices}"
        )
    endpoints = tuple((u, v) for (u, v, _) in g.edges)
    if endpoints != previous.endpoints:
        raise RewarmMismatchError("edge endpoints changed between solves")
    if changed_edges is not None:
        changed = set(changed_edges)
        for k, (_, _, w) in enumerate(g.edges):
            if k not in changed and w != previous.weights[k]:
                raise RewarmMismatchError(
                    f"edge {k} weight changed but was not declared"
                )
    if g.num_vertices == 0:
        return Matching((), 0), previous
    mate, duals = _solve(g, engine, (list(previous.mate), list(previous.duals)))
    matching = _matching_from_mate(g, mate)
    state = MatchingState(
        g.num_vertices,
        previous.endpoints,
        tuple(w for (_, _, w) in g.edges),
        tuple(mate),
        tuple(duals),
    )
    return matching, state


def to_dimacs(g: WeightedMatchGraph) -> str:
    """DIMACS-like edge list (1-based vertex ids), for external cross-checks."""
    lines = [f"p edge {g.num_vertices} {len(g.edges)}"]
    for (u, v, w) in g.edges:
        lines.append(f"e {u + 1} {v + 1} {w}")
    return "\n".join(lines) + "\n"


def verify_min_weight_perfect_matching(
    g: WeightedMatchGraph, matching: Matching
) -> None:
    """Cheap structural validation: perfectness and exact weight."""
    covered = [0] * g.num_vertices
    for (u, v) in matching.pairs:
        covered[u] += 1
        covered[v] += 1
    if any(c != 1 for c in covered):
        raise AssertionError("matching is not perfect")
    weights = {}
    for (u, v, w) in g.edges:
        weights[(min(u, v), max(u, v))] = w
    total = sum(weights[(min(u, v), max(u, v))] for (u, v) in matching.pairs)
    if total != matching.total_weight:
        raise AssertionError(
            f"total weight mismatch: {total} != {matching.total_weight}"
        )
