import pytest

from tccmap.colex.builders import (
    build_48_torus,
    build_hex_torus,
    hexagon_patch,
    single_triangle_patch,
    triangular_patch,
    union_jack_patch,
)
from tccmap.colex.types import Color
from tccmap.exceptions import ColoringException, InvalidParameter


@pytest.mark.parametrize("rows,cols,vertices,edges,faces", [
    (1, 3, 6, 9, 3),
    (3, 3, 18, 27, 9),
])
def test_hex_torus_counts(rows, cols, vertices, edges, faces):
    colex = build_hex_torus(rows, cols)
    assert colex.n_vertices == vertices
    assert colex.n_edges == edges
    assert colex.n_faces == faces
    assert colex.euler_characteristic == 0
    assert colex.closed


def test_hex_torus_face_colors():
    colex = build_hex_torus(3, 3)
    for r in range(3):
        for c in range(3):
            assert colex.faces[r * 3 + c].color == Color((r + c) % 3)
    assert all(len(f) == 6 for f in colex.faces)


def test_minimal_torus_faces_hold_every_vertex():
    colex = build_hex_torus(1, 3)
    assert all(mask == 0b111111 for mask in colex.face_masks)


@pytest.mark.parametrize("rows,cols", [(1, 1), (1, 2), (2, 4), (3, 5)])
def test_hex_torus_inadmissible(rows, cols):
    with pytest.raises(ColoringException):
        build_hex_torus(rows, cols)


@pytest.mark.parametrize("builder", [build_hex_torus, build_48_torus])
def test_torus_nonpositive(builder):
    with pytest.raises(InvalidParameter):
        builder(0, 3)


def test_four8_torus_counts():
    colex = build_48_torus(2, 2)
    assert colex.n_vertices == 16
    assert colex.n_edges == 24
    assert colex.n_faces == 8
    assert colex.euler_characteristic == 0
    octagons = [f for f in colex.faces if len(f) == 8]
    squares = [f for f in colex.faces if len(f) == 4]
    assert len(octagons) == 4 and len(squares) == 4
    assert all(f.color == Color.BLUE for f in squares)
    assert {f.color for f in octagons} == {Color.RED, Color.GREEN}


@pytest.mark.parametrize("rows,cols", [(1, 2), (2, 3), (3, 3)])
def test_four8_torus_inadmissible(rows, cols):
    with pytest.raises(ColoringException):
        build_48_torus(rows, cols)


@pytest.mark.parametrize("patch,sites,triangles", [
    (hexagon_patch(), 7, 6),
    (single_triangle_patch(), 3, 1),
    (triangular_patch(2, 2), 9, 8),
    (triangular_patch(2, 3), 12, 12),
    (union_jack_patch(1, 1), 5, 4),
    (union_jack_patch(2, 2), 13, 16),
])
def test_patch_counts(patch, sites, triangles):
    assert patch.n_sites == sites
    assert patch.n_triangles == triangles
    assert patch.border
    assert patch.is_three_colored()


def test_patch_triangles_in_color_order():
    patch = union_jack_patch(2, 2)
    for tri in patch.triangles:
        assert [patch.colors[s] for s in tri] == [Color.RED, Color.GREEN, Color.BLUE]


def test_hexagon_patch_center():
    patch = hexagon_patch()
    assert patch.colors[0] == Color.RED
    assert all(0 in tri for tri in patch.triangles)
    assert len(patch.site_triangles(0)) == 6
