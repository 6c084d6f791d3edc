"""
Lattice builders.

Closed colexes are built directly from their dual triangulation on a torus.
Sites of the dual (= colex faces) live on a rhombic fundamental domain
``0 <= r < rows, 0 <= c < cols`` and are identified under the translations
``(0, cols)`` and ``(rows, shift)``. Colex vertices are the dual triangles.

Bordered patches are returned as ``DualTriangulation`` objects, the input of
``build_bordered``.
"""
from typing import Dict, List, Tuple

from tccmap.colex.types import Color, Colex2, DualTriangulation, Edge, Face
from tccmap.exceptions import ColoringException, InvalidParameter

Site = Tuple[int, int]


def _canonical_triangle(colors, sites) -> Tuple[int, int, int]:
    ordered = sorted(sites, key=lambda s: colors[s])
    return tuple(ordered)  # type: ignore


class _TorusDomain:

    def __init__(self, rows: int, cols: int, shift: int) -> None:
        self.rows = rows
        self.cols = cols
        self.shift = shift

    def wrap(self, r: int, c: int) -> Site:
        q = r // self.rows
        return r - q * self.rows, (c - q * self.shift) % self.cols

    def index(self, r: int, c: int) -> int:
        r, c = self.wrap(r, c)
        return r * self.cols + c


def _check_positive(rows: int, cols: int) -> None:
    if rows < 1 or cols < 1:
        raise InvalidParameter(f"Torus dimensions must be positive, got {rows}x{cols}")


def _check_distinct(faces: List[Face], family: str, rows: int, cols: int) -> None:
    for idx, face in enumerate(faces):
        if len(set(face.verts)) != len(face.verts):
            raise ColoringException(
                f"{family} torus {rows}x{cols}: fundamental domain too small, "
                f"face boundary revisits a vertex",
                ("face", idx),
            )


def build_hex_torus(rows: int, cols: int) -> Colex2:
    """
    Hexagonal 2-colex on a torus with ``rows * cols`` hexagonal faces.

    Face ``(r, c)`` has color ``(r + c) mod 3`` and the second translation is
    ``(rows, -rows mod 3)``. This coloring is consistent around both cycles of
    the torus iff ``cols`` is a multiple of 3, which is the admissible set:
    ``rows >= 1`` and ``cols % 3 == 0``. The minimal instance is 1x3 (3 faces)
    and 3x3 gives 9 faces.

    Arguments
    ---------
    rows : int
        Rows of faces in the fundamental domain.
    cols : int
        Faces per row. Must be a multiple of 3.

    Returns
    -------
    Colex2
        Closed colex with ``2 * rows * cols`` vertices.
    """
    _check_positive(rows, cols)
    if cols % 3:
        raise ColoringException(
            f"Hexagonal torus {rows}x{cols} has no proper 3-face-coloring: "
            f"cols must be a multiple of 3"
        )
    dom = _TorusDomain(rows, cols, (-rows) % 3)

    def up(r, c):
        return 2 * dom.index(r, c)

    def down(r, c):
        return 2 * dom.index(r, c) + 1

    def color(r, c):
        r, c = dom.wrap(r, c)
        return Color((r + c) % 3)

    edges = []
    faces = []
    for r in range(rows):
        for c in range(cols):
            # colex edges cross the dual edges (r,c)-(r,c+1), (r,c)-(r+1,c), (r,c)-(r+1,c+1)
            edges.append(Edge(up(r, c), down(r - 1, c), color(r + 1, c + 1)))
            edges.append(Edge(down(r, c), up(r, c - 1), color(r + 1, c + 1)))
            edges.append(Edge(up(r, c), down(r, c), color(r, c + 1)))
            cycle = (
                up(r, c), down(r, c), up(r, c - 1),
                down(r - 1, c - 1), up(r - 1, c - 1), down(r - 1, c),
            )
            faces.append(Face(cycle, color(r, c)))

    _check_distinct(faces, "Hexagonal", rows, cols)
    return Colex2(2 * rows * cols, tuple(edges), tuple(faces), closed=True)


def build_48_torus(rows: int, cols: int) -> Colex2:
    """
    Square-octagon (4-8) 2-colex on a torus.

    Octagons sit on the ``rows x cols`` corners of a square grid and are
    colored red/green in a checkerboard; squares sit on the cell centers and
    are blue. The checkerboard closes around the torus iff both dimensions are
    even, so the admissible set is ``rows, cols`` even and at least 2.
    """
    _check_positive(rows, cols)
    if rows % 2 or cols % 2:
        raise ColoringException(
            f"4-8 torus {rows}x{cols} has no proper 3-face-coloring: "
            f"rows and cols must both be even"
        )

    def cell(r, c):
        return (r % rows) * cols + (c % cols)

    def tri(r, c, k):
        # k: 0 = (M,A,B), 1 = (M,B,C), 2 = (M,C,D), 3 = (M,D,A)
        return 4 * cell(r, c) + k

    def corner_color(r, c):
        return Color((r + c) % 2)

    edges = []
    for r in range(rows):
        for c in range(cols):
            edges.append(Edge(tri(r, c, 0), tri(r - 1, c, 2), Color.BLUE))
            edges.append(Edge(tri(r, c, 3), tri(r, c - 1, 1), Color.BLUE))
            # center spokes M-A, M-B, M-C, M-D
            edges.append(Edge(tri(r, c, 0), tri(r, c, 3), corner_color(r, c + 1)))
            edges.append(Edge(tri(r, c, 0), tri(r, c, 1), corner_color(r, c)))
            edges.append(Edge(tri(r, c, 1), tri(r, c, 2), corner_color(r, c + 1)))
            edges.append(Edge(tri(r, c, 2), tri(r, c, 3), corner_color(r, c)))

    faces = []
    for r in range(rows):
        for c in range(cols):
            cycle = (
                tri(r, c, 0), tri(r, c, 3), tri(r, c - 1, 1), tri(r, c - 1, 0),
                tri(r - 1, c - 1, 2), tri(r - 1, c - 1, 1), tri(r - 1, c, 3), tri(r - 1, c, 2),
            )
            faces.append(Face(cycle, corner_color(r, c)))
    for r in range(rows):
        for c in range(cols):
            faces.append(Face(tuple(tri(r, c, k) for k in range(4)), Color.BLUE))

    _check_distinct(faces, "4-8", rows, cols)
    return Colex2(4 * rows * cols, tuple(edges), tuple(faces), closed=True)


def _patch(colors: List[Color], triangles: List[Tuple[int, int, int]]) -> DualTriangulation:
    tris = tuple(_canonical_triangle(colors, t) for t in triangles)
    return DualTriangulation(tuple(colors), tris, border=True)


def hexagon_patch() -> DualTriangulation:
    """One red center site surrounded by six alternating green/blue sites."""
    colors = [Color.RED] + [Color.GREEN, Color.BLUE] * 3
    triangles = [(0, i, i % 6 + 1) for i in range(1, 7)]
    return _patch(colors, triangles)


def single_triangle_patch() -> DualTriangulation:
    return _patch([Color.RED, Color.GREEN, Color.BLUE], [(0, 1, 2)])


def triangular_patch(rows: int, cols: int) -> DualTriangulation:
    """
    Parallelogram of the triangular lattice with ``rows x cols`` rhombi,
    ``(rows + 1) * (cols + 1)`` sites and ``2 * rows * cols`` triangles.
    """
    _check_positive(rows, cols)
    site: Dict[Site, int] = {}
    colors = []
    for r in range(rows + 1):
        for c in range(cols + 1):
            site[(r, c)] = len(colors)
            colors.append(Color((r + c) % 3))
    triangles = []
    for r in range(rows):
        for c in range(cols):
            triangles.append((site[(r, c)], site[(r, c + 1)], site[(r + 1, c + 1)]))
            triangles.append((site[(r, c)], site[(r + 1, c)], site[(r + 1, c + 1)]))
    return _patch(colors, triangles)


def union_jack_patch(rows: int, cols: int) -> DualTriangulation:
    """
    ``rows x cols`` square cells, each split by a blue center site into four
    triangles. Corner sites are colored red/green in a checkerboard.
    """
    _check_positive(rows, cols)
    corner: Dict[Site, int] = {}
    colors = []
    for r in range(rows + 1):
        for c in range(cols + 1):
            corner[(r, c)] = len(colors)
            colors.append(Color((r + c) % 2))
    triangles = []
    for r in range(rows):
        for c in range(cols):
            m = len(colors)
            colors.append(Color.BLUE)
            a, b = corner[(r, c)], corner[(r, c + 1)]
            cc, d = corner[(r + 1, c + 1)], corner[(r + 1, c)]
            triangles.extend([(m, a, b), (m, b, cc), (m, cc, d), (m, d, a)])
    return _patch(colors, triangles)
