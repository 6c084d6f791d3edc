import pytest

from tccmap.colex import (
    Color,
    Colex2,
    DualTriangulation,
    Edge,
    Face,
    build_bordered,
    build_dual,
    hexagon_patch,
)
from tccmap.exceptions import LatticeStructureException


def test_torus_dual(torus):
    dual = build_dual(torus)
    assert not dual.border
    assert dual.n_sites == torus.n_faces
    assert dual.n_triangles == torus.n_vertices
    assert dual.colors == tuple(f.color for f in torus.faces)
    assert dual.is_three_colored()


def test_torus_dual_triangles_are_vertex_faces(torus):
    dual = build_dual(torus)
    for v, tri in enumerate(dual.triangles):
        assert sorted(tri) == sorted(torus.vertex_faces[v])


def test_hexagon_bordered(hexagon):
    assert not hexagon.closed
    assert hexagon.n_vertices == 6
    assert hexagon.n_edges == 6
    assert hexagon.n_faces == 7
    assert hexagon.complete_faces() == (0,)
    assert hexagon.partial_faces() == (1, 2, 3, 4, 5, 6)
    assert len(hexagon.faces[0]) == 6
    assert all(len(hexagon.faces[f]) == 2 for f in range(1, 7))
    assert hexagon.euler_characteristic == 7


def test_single_triangle_bordered(single_triangle):
    assert single_triangle.n_vertices == 1
    assert single_triangle.n_edges == 0
    assert single_triangle.partial_faces() == (0, 1, 2)


def test_patch_dual_round_trip(patch_colex):
    patch = build_dual(patch_colex)
    assert patch.border
    again = build_dual(build_bordered(patch))
    assert again.triangles == patch.triangles
    assert again.colors == patch.colors


def test_bordered_rejects_closed_dual(minimal_torus):
    with pytest.raises(LatticeStructureException):
        build_bordered(build_dual(minimal_torus))


def test_bordered_rejects_empty_patch():
    with pytest.raises(LatticeStructureException):
        build_bordered(DualTriangulation((), (), border=True))


def test_bordered_rejects_miscolored_triangle():
    dual = DualTriangulation((Color.RED, Color.RED, Color.BLUE), ((0, 1, 2),), border=True)
    with pytest.raises(LatticeStructureException):
        build_bordered(dual)


def test_bordered_rejects_non_simplicial():
    colors = (Color.RED, Color.GREEN, Color.BLUE, Color.BLUE, Color.BLUE)
    dual = DualTriangulation(colors, ((0, 1, 2), (0, 1, 3), (0, 1, 4)), border=True)
    with pytest.raises(LatticeStructureException, match="simplicial"):
        build_bordered(dual)


def test_bordered_rejects_lonely_site():
    patch = hexagon_patch()
    dual = DualTriangulation(patch.colors + (Color.RED,), patch.triangles, border=True)
    with pytest.raises(LatticeStructureException):
        build_bordered(dual)


def test_dual_rejects_invalid_colex():
    broken = Colex2(
        2,
        (Edge(0, 1, Color.RED),),
        (Face((0, 1), Color.GREEN), Face((0, 1), Color.GREEN)),
        closed=True,
    )
    with pytest.raises(LatticeStructureException, match="failed checks"):
        build_dual(broken)
