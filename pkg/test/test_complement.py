from collections import Counter
from fractions import Fraction

import pytest

import reebcomp
from reebcomp import InclusionLabel, export, geom2
from reebcomp.complement import _avoid_values
from reebcomp.geom2 import RPoint

from _test_util import graphs_and_complement


@pytest.fixture(scope='module')
def diamond_pair():
    mesh = reebcomp.build_builtin(reebcomp.BuiltinField('diamond-pair', resolution=6))
    return (mesh,) + graphs_and_complement(mesh)


@pytest.fixture(scope='module')
def eq2():
    mesh = reebcomp.build_builtin(reebcomp.BuiltinField('eq2', resolution=6))
    return (mesh,) + graphs_and_complement(mesh)


def test_identical_fields_leave_two_cells(diamond_pair):
    mesh, g1, g2, cg = diamond_pair
    assert list(cg.rectangles) == [(0, 0)]
    rect = cg.rectangle(0, 0)
    assert rect.bounds == (0, 0, 6, 6)
    # the projected Reeb space is the diagonal: no area, but it cuts
    assert rect.projected_reeb.area == 0
    assert len(rect.cells) == 2
    rect.check_area()
    for cell in rect.cells:
        assert cell.area == 18
        x, y = cell.sample
        expected = InclusionLabel.FIRST_INSIDE_SECOND if y > x else InclusionLabel.SECOND_INSIDE_FIRST
        assert cell.label is expected
    assert cg.adjacency_pairs() == [(rect.cells[0].id, rect.cells[1].id)]


def test_two_basins_against_a_diamond(eq2):
    mesh, g1, g2, cg = eq2
    assert len(g1.arcs) == 1
    assert len(g2.arcs) == 3
    assert sorted(cg.rectangles) == [(0, 0), (0, 1), (0, 2)]
    for key in [(0, 0), (0, 1)]:
        rect = cg.rectangles[key]
        assert rect.bounds == (0, 0, 6, 1)
        # the image of a basin's minimum sits on the rectangle's lower edge
        assert rect.projected_reeb.closure_contains(RPoint(1, 0))
        assert len(geom2.faces(rect.projected_reeb)) >= 1
    assert cg.rectangles[(0, 2)].bounds == (0, 1, 6, 5)


def test_common_simplices(eq2):
    mesh, g1, g2, cg = eq2
    shared = [reebcomp.common_simplices(g1, g2, 0, a.id) for a in g2.arcs]
    assert all(shared)
    for a, ids in zip(g2.arcs, shared):
        assert ids <= a.simplices and ids <= g1.arc(0).simplices


def test_area_identity_and_samples(eq2):
    mesh, g1, g2, cg = eq2
    assert cg.cells
    for rect in cg.rectangles.values():
        rect.check_area()
        assert rect.area == rect.projected_reeb.area + sum(c.area for c in rect.cells)
    for cell in cg.cells:
        assert cell.label is not None
        assert cg.cell_at(cell.arc1, cell.arc2, cell.sample) is cell
        assert not cg.rectangle(cell.arc1, cell.arc2).projected_reeb.closure_contains(RPoint(*cell.sample))


def test_adjacency_is_symmetric(eq2):
    mesh, g1, g2, cg = eq2
    for a, neighbours in cg.adjacency.items():
        assert a not in neighbours
        for b in neighbours:
            assert a in cg.adjacency[b]
    cell = cg.cells[0]
    around = cg.neighbourhood(cell.id)
    assert around[0] is cell
    assert [c.id for c in around[1:]] == cg.neighbours(cell.id)


@pytest.mark.parametrize('fixture', ['diamond_pair', 'eq2'])
def test_labels_are_constant_on_cells(fixture, request):
    mesh, g1, g2, cg = request.getfixturevalue(fixture)
    avoid_x, avoid_y = _avoid_values(mesh, g1), _avoid_values(mesh, g2)
    for cell in cg.cells:
        xs = set(avoid_x)
        for _ in range(10):
            p = geom2.representative_point(cell.face, xs, avoid_y)
            label = reebcomp.classify_pair(mesh, g1, g2, cell.arc1, cell.arc2, p)
            assert label is cell.label
            xs.add(p.x)


def test_cell_at_outside_any_cell(diamond_pair):
    mesh, g1, g2, cg = diamond_pair
    assert cg.cell_at(0, 0, (Fraction(5, 2), Fraction(5, 2))) is None


def test_process_pool_gives_the_same_complement(eq2):
    mesh, g1, g2, cg = eq2
    parallel = reebcomp.compute_complement(mesh, g1, g2, workers=2)
    assert export.dumps(parallel) == export.dumps(cg)


def test_compute_rectangle_leaves_cells_unlabelled(eq2):
    mesh, g1, g2, _ = eq2
    rect = reebcomp.compute_rectangle(mesh, g1, g2, g1.ref(0), g2.ref(1))
    assert rect.key == (0, 1)
    assert all(c.label is None for c in rect.cells)


def test_tetrahedral_complement_has_no_labels(caplog):
    coords = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]
    mesh = reebcomp.SimplicialMesh(3, coords, [0, 1, 2, 3], [3, 2, 1, 0], [(0, 1, 2, 3)])
    g1, g2, cg = graphs_and_complement(mesh)
    rect = cg.rectangle(0, 0)
    assert rect.bounds == (0, 0, 3, 3)
    assert rect.projected_reeb.area == 0
    assert len(rect.cells) == 2
    assert all(c.label is None for c in rect.cells)
    assert 'triangle meshes' in caplog.text


def test_cells_are_glued_across_rectangles(eq2):
    mesh, g1, g2, cg = eq2
    across = [(a, b) for a, b in cg.adjacency_pairs() if cg.cell(a).rectangle != cg.cell(b).rectangle]
    assert across
    # the basins meet the upper arc of the second field at its saddle
    assert any((0, 2) in (cg.cell(a).rectangle, cg.cell(b).rectangle) for a, b in across)
    for a, b in across:
        assert {cg.cell(a).rectangle, cg.cell(b).rectangle} <= {(0, 0), (0, 1), (0, 2)}


_SWAPPED = {
    InclusionLabel.FIRST_INSIDE_SECOND: InclusionLabel.SECOND_INSIDE_FIRST,
    InclusionLabel.SECOND_INSIDE_FIRST: InclusionLabel.FIRST_INSIDE_SECOND,
    InclusionLabel.DISJOINT: InclusionLabel.DISJOINT,
    InclusionLabel.UNDETERMINED_BOUNDARY: InclusionLabel.UNDETERMINED_BOUNDARY,
}


def test_swapping_the_fields_transposes_the_complement(eq2):
    mesh, g1, g2, cg = eq2
    swapped = reebcomp.SimplicialMesh(2, mesh.coords, mesh.f2, mesh.f1, mesh.simplices,
                                      compactified=mesh.compactified)
    h1, h2, transposed = graphs_and_complement(swapped)
    assert sorted(transposed.rectangles) == sorted((b, a) for a, b in cg.rectangles)
    for (a, b), rect in cg.rectangles.items():
        other = transposed.rectangle(b, a)
        x0, y0, x1, y1 = rect.bounds
        assert other.bounds == (y0, x0, y1, x1)
        assert other.projected_reeb.area == rect.projected_reeb.area
        expected = Counter((c.area, _SWAPPED[c.label]) for c in rect.cells)
        assert Counter((c.area, c.label) for c in other.cells) == expected
