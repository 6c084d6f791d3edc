import enum
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from tccmap.exceptions import InvalidParameter
from tccmap.typing import FaceCycle, Mask, SiteTriple
from tccmap.utils import mask_from_indices


class Color(enum.IntEnum):
    """Face, edge and site colors. The integer order is the canonical order."""

    RED = 0
    GREEN = 1
    BLUE = 2

    @property
    def letter(self) -> str:
        return 'rgb'[self.value]

    @classmethod
    def from_letter(cls, letter: str) -> 'Color':
        try:
            return cls('rgb'.index(letter))
        except ValueError:
            raise InvalidParameter(f"Unknown color '{letter}', expected one of r, g, b")

    def others(self) -> Tuple['Color', 'Color']:
        a, b = (c for c in Color if c != self)
        return a, b


@dataclass(frozen=True)
class Edge:
    a: int
    b: int
    color: Color


@dataclass(frozen=True)
class Face:
    """
    A colex face. ``verts`` lists the face vertices in boundary order: cyclic
    for complete faces, along the path of kept vertices for partial faces.
    """
    verts: FaceCycle
    color: Color
    partial: bool = False

    @property
    def mask(self) -> Mask:
        return mask_from_indices(self.verts)

    def __len__(self) -> int:
        return len(self.verts)


@dataclass(frozen=True)
class Colex2:
    """
    A 2-colex: trivalent lattice with 3-colorable faces.

    Attributes
    ----------
    n_vertices : int
        Number of vertices (qubits). Vertex ``v`` is qubit ``v``.
    edges : Tuple[Edge, ...]
        Colored edges as vertex pairs.
    faces : Tuple[Face, ...]
        Colored faces with their boundary vertex lists.
    closed : bool
        True for colexes without border (tori).
    """
    n_vertices: int
    edges: Tuple[Edge, ...]
    faces: Tuple[Face, ...]
    closed: bool = True
    face_masks: Tuple[Mask, ...] = field(init=False, repr=False, compare=False)
    vertex_faces: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'face_masks', tuple(f.mask for f in self.faces))
        incidence: Dict[int, list] = {v: [] for v in range(self.n_vertices)}
        for idx, face in enumerate(self.faces):
            for v in face.verts:
                if 0 <= v < self.n_vertices:
                    incidence[v].append(idx)
        object.__setattr__(
            self, 'vertex_faces', tuple(tuple(incidence[v]) for v in range(self.n_vertices))
        )

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    @property
    def n_qubits(self) -> int:
        return self.n_vertices

    @property
    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + self.n_faces

    def complete_faces(self) -> Tuple[int, ...]:
        return tuple(i for i, f in enumerate(self.faces) if not f.partial)

    def partial_faces(self) -> Tuple[int, ...]:
        return tuple(i for i, f in enumerate(self.faces) if f.partial)

    def vertex_face_mask(self, vertex: int) -> Mask:
        """Faces containing ``vertex``, as a mask over face indices."""
        return mask_from_indices(self.vertex_faces[vertex])


@dataclass(frozen=True)
class BorderedColex(Colex2):
    """
    A colex cut out of a bordered triangulation.

    Vertex ``v`` corresponds to triangle ``v`` of the source triangulation and
    face ``f`` to its site ``f``. Complete faces carry X and Z stabilizers,
    partial faces carry a Z stabilizer on their kept vertices only.
    """
    closed: bool = False


@dataclass(frozen=True)
class DualTriangulation:
    """
    Triangulation with 3-colorable sites.

    Attributes
    ----------
    colors : Tuple[Color, ...]
        Color of every site.
    triangles : Tuple[SiteTriple, ...]
        Triangles as site triples ordered red, green, blue.
    border : bool
        True when the triangulation has a border.
    face_of_site : Tuple[int, ...]
        Colex face dual to every site.
    vertex_of_triangle : Tuple[int, ...]
        Colex vertex dual to every triangle.
    """
    colors: Tuple[Color, ...]
    triangles: Tuple[SiteTriple, ...]
    border: bool = False
    face_of_site: Tuple[int, ...] = ()
    vertex_of_triangle: Tuple[int, ...] = ()

    def __post_init__(self):
        if not self.face_of_site:
            object.__setattr__(self, 'face_of_site', tuple(range(len(self.colors))))
        if not self.vertex_of_triangle:
            object.__setattr__(self, 'vertex_of_triangle', tuple(range(len(self.triangles))))

    @property
    def n_sites(self) -> int:
        return len(self.colors)

    @property
    def n_triangles(self) -> int:
        return len(self.triangles)

    @property
    def site_of_face(self) -> Dict[int, int]:
        return {f: s for s, f in enumerate(self.face_of_site)}

    @property
    def triangle_of_vertex(self) -> Dict[int, int]:
        return {v: t for t, v in enumerate(self.vertex_of_triangle)}

    def triangle_masks(self) -> Tuple[Mask, ...]:
        """Sites of every triangle, as masks over site indices."""
        return tuple(mask_from_indices(t) for t in self.triangles)

    def site_triangles(self, site: int) -> Tuple[int, ...]:
        return tuple(t for t, tri in enumerate(self.triangles) if site in tri)

    def is_three_colored(self) -> bool:
        return all(
            sorted(self.colors[s] for s in tri) == [Color.RED, Color.GREEN, Color.BLUE]
            for tri in self.triangles
        )


@dataclass(frozen=True)
class LatticeReport:
    n_vertices: int
    n_edges: int
    n_faces: int
    euler_characteristic: int
    betti_1: Optional[int]
    checks: Tuple[Tuple[str, bool], ...]
    closed: bool = True

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)

    @property
    def failures(self) -> Tuple[str, ...]:
        return tuple(name for name, ok in self.checks if not ok)

    def as_dict(self) -> dict:
        return {
            'vertices': self.n_vertices,
            'edges': self.n_edges,
            'faces': self.n_faces,
            'chi': self.euler_characteristic,
            'h1': self.betti_1,
            'closed': self.closed,
            'checks': {name: ok for name, ok in self.checks},
            'passed': self.passed,
        }
