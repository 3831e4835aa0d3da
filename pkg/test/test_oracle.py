import csv
from fractions import Fraction

import pytest

import reebcomp
from reebcomp import Relation, SamplePlan, classify, geom2, oracle

from _test_util import graphs_and_complement, grid_mesh, random_grid_mesh


@pytest.fixture(scope='module')
def diamond_pair():
    mesh = reebcomp.build_builtin(reebcomp.BuiltinField('diamond-pair', resolution=6))
    return (mesh,) + graphs_and_complement(mesh)


def test_contours_at_counts_components():
    mesh = reebcomp.build_builtin(reebcomp.BuiltinField('eq2_f2', resolution=6))
    low = reebcomp.contours_at(mesh, 1, Fraction(1, 2))
    assert len(low) == 2
    assert all(c.closed and not c.through_infinity for c in low)
    assert len(reebcomp.contours_at(mesh, 1, Fraction(3, 2))) == 1
    far, = reebcomp.contours_at(mesh, 1, Fraction(9, 2))
    assert far.through_infinity
    with pytest.raises(reebcomp.NonGenericValue):
        reebcomp.contours_at(mesh, 1, 1)


def test_pair_relation(diamond_pair):
    mesh = diamond_pair[0]
    c1, = reebcomp.contours_at(mesh, 1, Fraction(1, 2))
    c2, = reebcomp.contours_at(mesh, 2, Fraction(3, 2))
    assert reebcomp.pair_relation(mesh, c1, c2) is Relation.FIRST_INSIDE_SECOND
    assert reebcomp.pair_relation(mesh, c2, c1) is Relation.SECOND_INSIDE_FIRST
    same, = reebcomp.contours_at(mesh, 2, Fraction(1, 2))
    assert reebcomp.pair_relation(mesh, c1, same) is Relation.INTERSECTING


def test_diamond_pair_agrees_with_the_oracle(diamond_pair):
    mesh, g1, g2, cg = diamond_pair
    empirical = reebcomp.empirical_cells(mesh, g1, g2, SamplePlan(resolution=16))
    assert empirical.cluster_count((0, 0)) == 2
    grid = empirical.samples[(0, 0)]
    # samples on the diagonal see the same contour twice
    assert all(grid[(i, i)].relation is Relation.INTERSECTING for i in range(16))
    assert reebcomp.check_agreement(cg, empirical) == []


def test_disagreement_is_reported(diamond_pair):
    mesh, g1, g2, cg = diamond_pair
    empirical = reebcomp.empirical_cells(mesh, g1, g2, SamplePlan(resolution=4))
    cell = cg.cells[0]
    saved = cell.label
    cell.label = reebcomp.InclusionLabel.DISJOINT
    try:
        problems = reebcomp.check_agreement(cg, empirical)
    finally:
        cell.label = saved
    assert problems
    assert all('DISJOINT' in p for p in problems)


def test_samples_csv(tmp_path, diamond_pair):
    mesh, g1, g2, _ = diamond_pair
    empirical = reebcomp.empirical_cells(mesh, g1, g2, SamplePlan(resolution=4))
    path = tmp_path / 'samples.csv'
    oracle.write_samples_csv(path, empirical)
    with open(path, newline='') as f:
        rows = list(csv.reader(f))
    assert rows[0] == ['arc1', 'arc2', 'i', 'j', 'l1', 'l2', 'relation']
    assert len(rows) == 1 + 16
    assert rows[1][:4] == ['0', '0', '0', '0']
    assert rows[1][4:6] == ['3/4', '3/4']
    assert rows[1][6] == 'intersecting'


def test_random_pairs_are_reproducible(diamond_pair):
    mesh, g1, g2, _ = diamond_pair
    plan = SamplePlan(seed=7)
    first = oracle.random_pairs(g1, g2, plan, 5)
    assert first == oracle.random_pairs(g1, g2, plan, 5)
    for a1, a2, (l1, l2) in first:
        assert (a1, a2) == (0, 0)
        assert 0 < l1 < 6 and 0 < l2 < 6


@pytest.mark.slow
def test_eq2_agrees_with_the_oracle():
    mesh = reebcomp.build_builtin(reebcomp.BuiltinField('eq2', resolution=6))
    g1, g2, cg = graphs_and_complement(mesh)
    empirical = reebcomp.empirical_cells(mesh, g1, g2, SamplePlan(resolution=48))
    assert reebcomp.check_agreement(cg, empirical) == []


@pytest.mark.slow
@pytest.mark.parametrize('seed', range(20))
def test_random_meshes_agree_with_the_oracle(seed):
    mesh = random_grid_mesh(seed, n=11, high=10)
    g1, g2, cg = graphs_and_complement(mesh)
    for rect in cg.rectangles.values():
        rect.check_area()
    empirical = reebcomp.empirical_cells(mesh, g1, g2, SamplePlan(resolution=32))
    assert reebcomp.check_agreement(cg, empirical) == []
    for key, rect in cg.rectangles.items():
        assert empirical.cluster_count(key) == len(rect.cells)

    cache = oracle._ContourCache(mesh, {1: g1, 2: g2})
    levels = {f: set(mesh.complex.level_values(f)) for f in (1, 2)}
    for a1, a2, (l1, l2) in oracle.random_pairs(g1, g2, SamplePlan(seed=seed), 40):
        if l1 in levels[1] or l2 in levels[2]:
            continue
        expected = reebcomp.pair_relation(mesh, cache.contour(1, l1, a1), cache.contour(2, l2, a2))
        cell = cg.cell_at(a1, a2, (l1, l2))
        if expected is Relation.INTERSECTING:
            assert cell is None
        else:
            assert cell.label.name == expected.name


def test_colouring_agrees_with_rays_across_components():
    walls = [[0, 10, 10, 10, 0] for _ in range(3)]
    basin = [[abs(i - 2) + abs(j - 1) for i in range(5)] for j in range(3)]
    mesh = grid_mesh(walls, basin)
    inner, = reebcomp.contours_at(mesh, 2, Fraction(1, 2))
    band, = reebcomp.contours_at(mesh, 2, Fraction(3, 2))
    assert band.through_infinity
    for wall in reebcomp.contours_at(mesh, 1, 1):
        for c2 in (inner, band):
            expected = classify.relation(mesh, wall, c2)
            assert reebcomp.pair_relation(mesh, wall, c2).name == expected.name
        assert reebcomp.pair_relation(mesh, wall, inner) is Relation.DISJOINT
        assert reebcomp.pair_relation(mesh, wall, band) is Relation.DISJOINT


@pytest.mark.slow
def test_fine_eq2_structure_and_oracle():
    spec = reebcomp.BuiltinField('eq2', resolution=64)
    mesh = reebcomp.build_builtin(spec)
    g1, g2, cg = graphs_and_complement(mesh)
    assert len(g1.arcs) == 1
    assert len(g2.arcs) == 3
    merge, = [n for n in g2.nodes if n.kind is reebcomp.NodeKind.MERGE]
    assert abs(merge.value - 1) <= Fraction(2 * spec.extent, spec.resolution - 1)
    assert len(cg.rectangles) == 3
    for arc in g2.arcs:
        if arc.upper != merge.id:
            continue
        rect = cg.rectangle(0, arc.id)
        rect.check_area()
        # one triangle-like region standing on the rectangle's lower edge
        assert len(geom2.faces(rect.projected_reeb)) == 1
        assert min(p.y for p in rect.projected_reeb.arrangement.vertices) == rect.bounds[1]
    empirical = reebcomp.empirical_cells(mesh, g1, g2, SamplePlan(resolution=48))
    assert reebcomp.check_agreement(cg, empirical) == []
    for key, rect in cg.rectangles.items():
        assert empirical.cluster_count(key) == len(rect.cells)


@pytest.mark.slow
def test_fine_diamond_pair_has_two_cells():
    mesh = reebcomp.build_builtin(reebcomp.BuiltinField('diamond-pair', resolution=64))
    g1, g2, cg = graphs_and_complement(mesh)
    rect, = cg.rectangles.values()
    assert rect.projected_reeb.area == 0
    rect.check_area()
    labels = {}
    for cell in rect.cells:
        x, y = cell.sample
        labels[y > x] = cell.label
    assert labels == {True: reebcomp.InclusionLabel.FIRST_INSIDE_SECOND,
                      False: reebcomp.InclusionLabel.SECOND_INSIDE_FIRST}
