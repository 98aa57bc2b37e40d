"""Combinatorial planar embeddings as rotation systems.

An embedding is given by the counterclockwise cyclic order of each vertex's
neighbors.  Faces are recovered by the next-dart rule: after traversing the
directed edge i->j, continue with (j, k) where k follows i in the rotation of
j.  For a rotation system that corresponds to a plane drawing this partitions
all directed edges into face boundaries and V - E + F = 2 holds; rotation
systems of non-planar graphs fail that check.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotPlanarEmbeddingError


@dataclass(frozen=True)
class PlanarEmbedding:
    """Rotation system: rotations[i] lists the neighbors of vertex i in
    counterclockwise order."""

    rotations: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.rotations)
        for i, rot in enumerate(self.rotations):
            seen = set()
            for j in rot:
                if j == i:
                    raise NotPlanarEmbeddingError(f"vertex {i} appears in its own rotation")
                if not (0 <= j < n):
                    raise NotPlanarEmbeddingError(f"rotation of {i} mentions invalid vertex {j}")
                if j in seen:
                    raise NotPlanarEmbeddingError(f"vertex {j} repeated in rotation of {i}")
                seen.add(j)
        for i, rot in enumerate(self.rotations):
            for j in rot:
                if i not in self.rotations[j]:
                    raise NotPlanarEmbeddingError(
                        f"rotations not symmetric: {j} lists {i}? "
                        f"edge ({i},{j}) present only one way"
                    )

    @property
    def num_vertices(self) -> int:
        return len(self.rotations)

    @property
    def num_edges(self) -> int:
        return sum(len(r) for r in self.rotations) // 2

    def edge_set(self) -> set[tuple[int, int]]:
        return {(min(i, j), max(i, j)) for i, rot in enumerate(self.rotations) for j in rot}


@dataclass(frozen=True)
class Face:
    """One face of an embedded graph.

    boundary is the cyclic sequence of directed edges (darts) around the
    face; boundary_vertices deduplicates the walk's vertices in first-visit
    order (a face may visit a cut vertex, or both sides of a bridge, more
    than once).
    """

    id: int
    boundary: tuple[tuple[int, int], ...]
    boundary_vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.boundary)


def euler_check(num_vertices: int, num_edges: int, num_faces: int) -> bool:
    """Euler's formula for a connected plane graph."""
    return num_vertices - num_edges + num_faces == 2


def _check_connected(embedding: PlanarEmbedding) -> None:
    n = embedding.num_vertices
    if n == 0:
        raise NotPlanarEmbeddingError("empty embedding")
    seen = [False] * n
    stack = [0]
    seen[0] = True
    count = 1
    while stack:
        v = stack.pop()
        for w in embedding.rotations[v]:
            if not seen[w]:
                seen[w] = True
                count += 1
                stack.append(w)
    if count != n:
        raise NotPlanarEmbeddingError("graph is disconnected; split components first")


def faces(embedding: PlanarEmbedding) -> list[Face]:
    """Enumerate the faces of a connected embedded graph.

    Deterministic: faces are numbered in order of their smallest starting
    dart (vertex id, then rotation position).  Raises
    NotPlanarEmbeddingError when the rotation system does not describe a
    plane graph (Euler check fails).
    """
    _check_connected(embedding)
    rotations = embedding.rotations
    n = embedding.num_vertices
    if n == 1:
        # A single vertex has no darts but lies on the one (outer) face.
        return [Face(0, (), (0,))]

    # Position of i within rotations[j], for O(1) next-dart steps.
    pos = [{v: k for k, v in enumerate(rot)} for rot in rotations]

    visited: set[tuple[int, int]] = set()
    result: list[Face] = []
    for i in range(n):
        for j in rotations[i]:
            if (i, j) in visited:
                continue
            walk = []
            a, b = i, j
            while (a, b) not in visited:
                visited.add((a, b))
                walk.append((a, b))
                rot = rotations[b]
                a, b = b, rot[(pos[b][a] + 1) % len(rot)]
            if (a, b) != (i, j):
                raise NotPlanarEmbeddingError("face walk did not close on its first dart")
            verts = []
            seen_v = set()
            for (u, _) in walk:
                if u not in seen_v:
                    seen_v.add(u)
                    verts.append(u)
            result.append(Face(len(result), tuple(walk), tuple(verts)))

    if not euler_check(n, embedding.num_edges, len(result)):
        raise NotPlanarEmbeddingError(
            f"Euler check failed: V={n} E={embedding.num_edges} F={len(result)}; "
            "rotation system is not a planar embedding"
        )
    return result


def grid(rows: int, cols: int) -> tuple[list[tuple[int, int]], PlanarEmbedding]:
    """4-connected grid with row-major vertex ids and a canonical embedding.

    Rotations list the present neighbors in the cyclic order up, left, down,
    right.  Returns (edge list, embedding); edges are emitted all horizontal
    ones row-major, then all vertical ones row-major.
    """
    if rows < 1 or cols < 1:
        raise ValueError("grid dimensions must be >= 1")
    edges = []
    for r in range(rows):
        for c in range(cols - 1):
            v = r * cols + c
            edges.append((v, v + 1))
    for r in range(rows - 1):
        for c in range(cols):
            v = r * cols + c
            edges.append((v, v + cols))
    rotations = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            rot = []
            if r > 0:
                rot.append(v - cols)
            if c > 0:
                rot.append(v - 1)
            if r < rows - 1:
                rot.append(v + cols)
            if c < cols - 1:
                rot.append(v + 1)
            rotations.append(tuple(rot))
    return edges, PlanarEmbedding(tuple(rotations))


def cycle(length: int) -> tuple[list[tuple[int, int]], PlanarEmbedding]:
    """Simple cycle 0-1-...-(k-1)-0 with its (unique) embedding."""
    if length < 3:
        raise ValueError("cycle length must be >= 3")
    edges = [(i, i + 1) for i in range(length - 1)] + [(0, length - 1)]
    rotations = tuple(
        ((i - 1) % length, (i + 1) % length) for i in range(length)
    )
    return edges, PlanarEmbedding(rotations)
