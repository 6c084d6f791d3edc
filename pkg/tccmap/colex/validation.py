from collections import Counter, defaultdict
from typing import Dict, List, Set, Tuple

from tccmap.colex.types import Colex2, LatticeReport


def _boundary_pairs(colex: Colex2) -> Dict[Tuple[int, int], Set[int]]:
    """Map every consecutive vertex pair on a face boundary to the faces it borders."""
    pairs: Dict[Tuple[int, int], Set[int]] = defaultdict(set)
    for idx, face in enumerate(colex.faces):
        verts = face.verts
        steps = len(verts) if not face.partial else len(verts) - 1
        if len(verts) < 2:
            continue
        for i in range(steps):
            a, b = verts[i], verts[(i + 1) % len(verts)]
            pairs[(min(a, b), max(a, b))].add(idx)
    return pairs


def validate(colex: Colex2) -> LatticeReport:
    """
    Check the colex invariants and count its cells.

    Checks
    ------
    indices
        Edge and face vertices are in range.
    trivalent
        Every vertex has degree 3 (at most 3 on bordered colexes).
    vertex_faces
        Every vertex lies on three faces, one of each color.
    face_coloring
        Faces sharing an edge have different colors.
    edge_coloring
        An edge of color c ends on faces of color c and borders none.
    even_faces
        Every complete face has an even number of vertices.
    face_boundaries
        Consecutive vertices of a face boundary are joined by an edge.

    Failures are reported, never raised.
    """
    n = colex.n_vertices
    checks: List[Tuple[str, bool]] = []

    in_range = all(0 <= e.a < n and 0 <= e.b < n and e.a != e.b for e in colex.edges) and all(
        0 <= v < n for f in colex.faces for v in f.verts
    )
    checks.append(('indices', in_range))
    if not in_range:
        return _report(colex, checks)

    degree = Counter()
    for e in colex.edges:
        degree[e.a] += 1
        degree[e.b] += 1
    if colex.closed:
        trivalent = all(degree[v] == 3 for v in range(n))
    else:
        trivalent = all(degree[v] <= 3 for v in range(n))
    checks.append(('trivalent', trivalent))

    vertex_faces = all(
        sorted(colex.faces[f].color for f in faces) == [0, 1, 2]
        for faces in colex.vertex_faces
    )
    checks.append(('vertex_faces', vertex_faces))

    pairs = _boundary_pairs(colex)
    face_coloring = True
    edge_coloring = True
    for e in colex.edges:
        bordered = pairs.get((min(e.a, e.b), max(e.a, e.b)), set())
        colors = [colex.faces[f].color for f in bordered]
        if len(set(colors)) != len(colors):
            face_coloring = False
        if e.color in colors:
            edge_coloring = False
        for v in (e.a, e.b):
            if not any(colex.faces[f].color == e.color for f in colex.vertex_faces[v]):
                edge_coloring = False
    checks.append(('face_coloring', face_coloring))
    checks.append(('edge_coloring', edge_coloring))

    checks.append(('even_faces', all(len(f) % 2 == 0 for f in colex.faces if not f.partial)))

    edge_pairs = {(min(e.a, e.b), max(e.a, e.b)) for e in colex.edges}
    checks.append(('face_boundaries', all(p in edge_pairs for p in pairs)))

    return _report(colex, checks)


def _report(colex: Colex2, checks: List[Tuple[str, bool]]) -> LatticeReport:
    chi = colex.euler_characteristic
    return LatticeReport(
        n_vertices=colex.n_vertices,
        n_edges=colex.n_edges,
        n_faces=colex.n_faces,
        euler_characteristic=chi,
        betti_1=2 - chi if colex.closed else None,
        checks=tuple(checks),
        closed=colex.closed,
    )
