import dataclasses

import pytest

from tccmap.colex import BorderedColex, Color, Colex2, Face, validate


def test_tori_pass(torus):
    report = validate(torus)
    assert report.passed
    assert report.failures == ()
    assert report.euler_characteristic == 0
    assert report.betti_1 == 2


def test_patches_pass(patch_colex):
    report = validate(patch_colex)
    assert report.passed
    assert report.betti_1 is None
    assert not report.closed


def test_report_as_dict(hexagon):
    data = validate(hexagon).as_dict()
    assert data['vertices'] == 6
    assert data['edges'] == 6
    assert data['faces'] == 7
    assert data['chi'] == 7
    assert data['h1'] is None
    assert data['passed'] is True
    assert set(data['checks']) == {
        'indices',
        'trivalent',
        'vertex_faces',
        'face_coloring',
        'edge_coloring',
        'even_faces',
        'face_boundaries',
    }


def test_missing_edge_breaks_boundaries(hexagon):
    broken = BorderedColex(hexagon.n_vertices, hexagon.edges[1:], hexagon.faces)
    report = validate(broken)
    assert not report.passed
    assert 'face_boundaries' in report.failures


def test_recolored_face(minimal_torus):
    faces = list(minimal_torus.faces)
    faces[0] = dataclasses.replace(faces[0], color=faces[1].color)
    report = validate(Colex2(minimal_torus.n_vertices, minimal_torus.edges, tuple(faces)))
    assert not report.passed
    assert 'vertex_faces' in report.failures
    assert 'face_coloring' in report.failures


def test_closed_colex_needs_degree_three(minimal_torus):
    broken = Colex2(minimal_torus.n_vertices, minimal_torus.edges[1:], minimal_torus.faces)
    assert 'trivalent' in validate(broken).failures


def test_out_of_range_vertex_short_circuits():
    broken = Colex2(2, (), (Face((0, 5), Color.RED),))
    report = validate(broken)
    assert report.checks == (('indices', False),)


@pytest.mark.parametrize("length", [3, 5])
def test_odd_complete_face(length):
    face = Face(tuple(range(length)), Color.RED)
    report = validate(Colex2(length, (), (face,)))
    assert 'even_faces' in report.failures
