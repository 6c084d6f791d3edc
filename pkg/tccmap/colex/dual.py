from collections import defaultdict
from typing import Dict, List, Sequence, Tuple

from tccmap.colex.types import BorderedColex, Color, Colex2, DualTriangulation, Edge, Face
from tccmap.colex.validation import validate
from tccmap.exceptions import LatticeStructureException


def build_dual(colex: Colex2) -> DualTriangulation:
    """
    Dual triangulation of a colex.

    Site ``i`` is face ``i`` of the colex (color inherited) and triangle ``t``
    is vertex ``t``, with its three faces ordered red, green, blue.
    """
    report = validate(colex)
    if not report.passed:
        raise LatticeStructureException(
            f"Cannot dualize an invalid colex, failed checks: {', '.join(report.failures)}"
        )
    triangles = []
    for v, faces in enumerate(colex.vertex_faces):
        triangles.append(tuple(sorted(faces, key=lambda f: colex.faces[f].color)))
    return DualTriangulation(
        tuple(f.color for f in colex.faces),
        tuple(triangles),  # type: ignore
        border=not colex.closed,
    )


def _fan_order(site: int, tris: Sequence[int], triangles, spoke_tris) -> Tuple[List[int], bool]:
    """
    Walk the triangles around ``site``. Returns the boundary order and
    whether the fan closes into a cycle.
    """
    def spokes(t):
        return [s for s in triangles[t] if s != site]

    open_spokes = [(t, x) for t in tris for x in spokes(t) if len(spoke_tris[(site, x)]) == 1]
    if open_spokes:
        start, came_in = min(open_spokes)
        complete = False
    else:
        start = min(tris)
        came_in = sorted(spokes(start))[0]
        complete = True

    order = [start]
    current = start
    while True:
        out = [x for x in spokes(current) if x != came_in][0]
        nxt = [t for t in spoke_tris[(site, out)] if t != current]
        if not nxt or nxt[0] == start:
            break
        current, came_in = nxt[0], out
        order.append(current)

    if len(order) != len(tris):
        raise LatticeStructureException(
            "Triangles around the site do not form a single fan", ("site", site)
        )
    return order, complete


def build_bordered(dual: DualTriangulation) -> BorderedColex:
    """
    Colex of a bordered triangulation.

    Every triangle becomes a kept vertex (same index). Every site becomes a
    face (same index): complete when its triangles close around it, partial
    otherwise, in which case the face keeps only the vertices of the
    triangles that exist. Colex edges join triangles sharing a dual edge.

    Arguments
    ---------
    dual : DualTriangulation
        Finite patch with border, simplicial and 3-colored.

    Returns
    -------
    BorderedColex
    """
    if not dual.border:
        raise LatticeStructureException(
            "build_bordered expects a bordered patch, closed triangulations use build_dual"
        )
    if dual.n_triangles == 0 or dual.n_sites == 0:
        raise LatticeStructureException("Cannot build a colex from an empty patch")
    if not dual.is_three_colored():
        raise LatticeStructureException("Every triangle needs one site of each color")

    spoke_tris: Dict[Tuple[int, int], List[int]] = defaultdict(list)
    site_tris: Dict[int, List[int]] = defaultdict(list)
    for t, tri in enumerate(dual.triangles):
        if len(set(tri)) != 3:
            raise LatticeStructureException("Degenerate triangle", ("triangle", t))
        for s in tri:
            site_tris[s].append(t)
            for x in tri:
                if x != s:
                    spoke_tris[(s, x)].append(t)
    for (s, x), tris in spoke_tris.items():
        if len(tris) > 2:
            raise LatticeStructureException(
                f"Dual edge ({s}, {x}) is shared by {len(tris)} triangles, patch is not simplicial"
            )

    faces = []
    for s in range(dual.n_sites):
        if not site_tris[s]:
            raise LatticeStructureException("Site belongs to no triangle", ("site", s))
        order, complete = _fan_order(s, site_tris[s], dual.triangles, spoke_tris)
        faces.append(Face(tuple(order), dual.colors[s], partial=not complete))

    edges = []
    for (s, x), tris in sorted(spoke_tris.items()):
        if s < x and len(tris) == 2:
            third = set(dual.triangles[tris[0]]) - {s, x}
            edges.append(Edge(tris[0], tris[1], Color(dual.colors[third.pop()])))

    return BorderedColex(dual.n_triangles, tuple(edges), tuple(faces), closed=False)
