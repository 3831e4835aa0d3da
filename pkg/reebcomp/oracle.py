"""
Brute-force ground truth, independent of the Reeb graph sweep.

Contours are found by growing regions over the simplices that cross a level,
and the relation of a contour pair is decided directly from the contours.
:func:`empirical_cells` samples every rectangle on a grid and clusters the
non-intersecting samples, which approximates the partition cells from below:
thin cells can be missed at low resolution.

"""

import bisect
import csv
import enum
import logging
import weakref
from collections import namedtuple
from fractions import Fraction

import numpy as np

from ._unionfind import DisjointSet
from .classify import contours_intersect, march, check_generic
from .exceptions import ComputationError
from .options import IntOption, RationalOption, to_rational


logger = logging.getLogger(__name__)


class Relation(enum.Enum):
    INTERSECTING = 'intersecting'
    FIRST_INSIDE_SECOND = 'first_inside_second'
    SECOND_INSIDE_FIRST = 'second_inside_first'
    DISJOINT = 'disjoint'
    UNDETERMINED_BOUNDARY = 'undetermined_boundary'


class SamplePlan:
    """
    Sampling parameters of the oracle.

    Args:
        resolution (int): samples per rectangle side, at least 2.
        seed (int): seed of the random generator used for random samples.
        margin: samples closer than this to a vertex value are skipped.

    """
    resolution = IntOption(default=32, minimum=2)
    seed = IntOption(default=0, minimum=0)
    margin = RationalOption(default=Fraction(1, 10 ** 9), minimum=0, strict=True)

    def __init__(self, *, resolution=None, seed=None, margin=None):
        self.resolution = resolution
        self.seed = seed
        self.margin = margin

    def __repr__(self):
        return 'SamplePlan(resolution={}, seed={}, margin={})'.format(self.resolution, self.seed, self.margin)

    def rng(self):
        return np.random.default_rng(self.seed)


def contours_at(mesh, field, isovalue):
    """
    All contours of ``field`` at a generic ``isovalue``: the simplices
    crossing the level, grouped by shared crossing edges, each group marched
    separately.  Ordered by their smallest simplex id.
    """
    isovalue = to_rational(isovalue)
    check_generic(mesh, field, isovalue)
    cx = mesh.complex
    values = cx.values[field - 1]

    def crosses(e):
        u, w = cx.edges[e]
        return (values[u] < isovalue) != (values[w] < isovalue)

    crossing = [sid for sid, s in enumerate(cx.simplices)
                if min(values[v] for v in s) < isovalue < max(values[v] for v in s)]
    ds = DisjointSet(crossing)
    members = set(crossing)
    for sid in crossing:
        for e in cx.simplex_edges[sid]:
            if not crosses(e):
                continue
            for other in cx.edge_simplices[e]:
                if other != sid and other in members:
                    ds.union(sid, other)
    return [march(mesh, field, isovalue, group) for group in ds.groups()]


_colourings = weakref.WeakKeyDictionary()


def _colouring(mesh, contour):
    """
    Two-colour the vertices so that an edge changes colour exactly when the
    contour crosses it.  Returns ``(colour, outside)``, where ``outside[v]``
    is the colour of the side of infinity in ``v``'s component: that of the
    apex on a compactified mesh, else that of the leftmost real vertex.
    """
    if contour in _colourings:
        return _colourings[contour]
    cx = mesh.complex
    crossed = set(contour.points)
    colour = [None] * cx.nverts
    outside = [None] * cx.nverts
    for start in range(cx.nverts):
        if colour[start] is not None:
            continue
        colour[start] = 0
        members = [start]
        stack = [start]
        while stack:
            v = stack.pop()
            for e in cx.vertex_edges[v]:
                a, b = cx.edges[e]
                w = b if a == v else a
                c = colour[v] ^ (e in crossed)
                if colour[w] is None:
                    colour[w] = c
                    members.append(w)
                    stack.append(w)
                elif colour[w] != c:
                    raise ComputationError('{} does not separate the mesh'.format(contour))
        apexes = [v for v in members if cx.is_virtual(v)]
        if apexes:
            ref = apexes[0]
        else:
            ref = min(members, key=lambda v: mesh.coords[v])
        for v in members:
            outside[v] = colour[ref]
    _colourings[contour] = (colour, outside)
    return colour, outside


def _inside(mesh, c, other):
    # the point of ``c`` on its first crossed edge, against ``other``
    cx = mesh.complex
    e = min(c.points)
    u, w = cx.edges[e]
    colour, outside = _colouring(mesh, other)
    v = u
    if e in other.points:
        t = _edge_parameter(cx.values[c.field - 1], u, w, c.isovalue)
        t_other = _edge_parameter(cx.values[other.field - 1], u, w, other.isovalue)
        if t == t_other:
            raise ComputationError('{} and {} meet on edge {}'.format(c, other, (u, w)))
        if t > t_other:
            v = w
    return colour[v] != outside[v]


def _edge_parameter(values, u, w, isovalue):
    return (isovalue - values[u]) / (values[w] - values[u])


def pair_relation(mesh, c1, c2):
    """
    The :class:`Relation` of a field-1 contour and a field-2 contour.

    Inclusion is read off a vertex colouring by each contour rather than from
    rays through the plane, so it holds for contours lying partly or wholly in
    the cone over the boundary.
    """
    if contours_intersect(mesh, c1, c2):
        return Relation.INTERSECTING
    if not (c1.closed and c2.closed):
        return Relation.UNDETERMINED_BOUNDARY
    first_in = _inside(mesh, c1, c2)
    second_in = _inside(mesh, c2, c1)
    if first_in and second_in:
        raise ComputationError('contours {} and {} are inside each other'.format(c1, c2))
    if first_in:
        return Relation.FIRST_INSIDE_SECOND
    if second_in:
        return Relation.SECOND_INSIDE_FIRST
    return Relation.DISJOINT


Sample = namedtuple('Sample', 'rectangle i j point relation')


class EmpiricalCells:
    """
    Grid samples of every rectangle and their clusters.

    Attributes:
        samples: ``{(arc1, arc2): {(i, j): Sample}}``.
        clusters: ``{(arc1, arc2): [[(i, j), ...], ...]}``, the 4-connected
            groups of non-intersecting samples.

    """

    def __init__(self, samples, clusters):
        self.samples = samples
        self.clusters = clusters

    def cluster_count(self, key):
        return len(self.clusters.get(key, ()))

    def all_samples(self):
        for key in sorted(self.samples):
            grid = self.samples[key]
            for ij in sorted(grid):
                yield grid[ij]


class _ContourCache:
    """Contours per (field, value), with the arc each belongs to."""

    def __init__(self, mesh, graphs):
        self.mesh = mesh
        self.graphs = graphs
        self._cache = {}
        self._simplex_arcs = {}
        for field, graph in graphs.items():
            owner = {}
            for arc in graph.arcs:
                for sid in arc.simplices:
                    owner.setdefault(sid, []).append(arc.id)
            self._simplex_arcs[field] = owner

    def contour(self, field, value, arc_id):
        key = (field, value)
        if key not in self._cache:
            graph = self.graphs[field]
            by_arc = {}
            owner = self._simplex_arcs[field]
            for c in contours_at(self.mesh, field, value):
                # a contour lies on one arc, which every simplex it crosses is assigned to
                common = set.intersection(*(set(owner.get(sid, ())) for sid in c.simplices))
                arcs = sorted(a for a in common if graph.interval(a)[0] < value < graph.interval(a)[1])
                if len(arcs) != 1:
                    raise ComputationError('contour of field {} at {} maps to arcs {}'.format(field, value, arcs))
                by_arc[arcs[0]] = c
            self._cache[key] = by_arc
        return self._cache[key].get(arc_id)


def _near(sorted_values, x, margin):
    k = bisect.bisect_left(sorted_values, x - margin)
    return k < len(sorted_values) and sorted_values[k] <= x + margin


def empirical_cells(mesh, g1, g2, plan=None):
    """
    Sample every rectangle at the centres of a ``plan.resolution`` square grid,
    decide each sample's relation by brute force and cluster the
    non-intersecting samples with 4-connectivity.
    """
    plan = plan or SamplePlan()
    cache = _ContourCache(mesh, {1: g1, 2: g2})
    levels = {f: sorted(mesh.complex.level_values(f)) for f in (1, 2)}
    n = plan.resolution
    samples, clusters = {}, {}
    for a1 in g1.arcs:
        x0, x1 = g1.interval(a1.id)
        for a2 in g2.arcs:
            y0, y1 = g2.interval(a2.id)
            key = (a1.id, a2.id)
            if x1 <= x0 or y1 <= y0:
                continue
            grid = {}
            for i in range(n):
                l1 = x0 + (x1 - x0) * Fraction(2 * i + 1, 2 * n)
                if _near(levels[1], l1, plan.margin):
                    continue
                c1 = cache.contour(1, l1, a1.id)
                for j in range(n):
                    l2 = y0 + (y1 - y0) * Fraction(2 * j + 1, 2 * n)
                    if _near(levels[2], l2, plan.margin):
                        continue
                    c2 = cache.contour(2, l2, a2.id)
                    if c1 is None or c2 is None:
                        raise ComputationError('no contour for arcs {} at ({}, {})'.format(key, l1, l2))
                    grid[(i, j)] = Sample(key, i, j, (l1, l2), pair_relation(mesh, c1, c2))
            ds = DisjointSet(ij for ij, s in grid.items() if s.relation is not Relation.INTERSECTING)
            for (i, j) in list(ds):
                for nb in ((i + 1, j), (i, j + 1)):
                    if nb in ds:
                        ds.union((i, j), nb)
            samples[key] = grid
            clusters[key] = ds.groups()
            logger.debug('oracle rectangle {}: {} samples, {} clusters'.format(key, len(grid), len(clusters[key])))
    return EmpiricalCells(samples, clusters)


def random_pairs(g1, g2, plan, count):
    """
    ``count`` random isovalue pairs ``(arc1, arc2, (l1, l2))`` drawn with the
    plan's generator, as exact rationals on a fine grid inside each rectangle.
    """
    rng = plan.rng()
    keys = [(a.id, b.id) for a in g1.arcs for b in g2.arcs
            if g1.interval(a.id)[0] < g1.interval(a.id)[1] and g2.interval(b.id)[0] < g2.interval(b.id)[1]]
    out = []
    denominator = 2 ** 20
    for _ in range(count):
        a1, a2 = keys[int(rng.integers(len(keys)))]
        (x0, x1), (y0, y1) = g1.interval(a1), g2.interval(a2)
        u, v = (Fraction(int(k) * 2 + 1, 2 * denominator) for k in rng.integers(denominator, size=2))
        out.append((a1, a2, (x0 + (x1 - x0) * u, y0 + (y1 - y0) * v)))
    return out


def check_agreement(cg, empirical):
    """
    Compare a complement with the oracle.  Returns a list of human-readable
    disagreements; an empty list means full agreement.  Checked per
    rectangle: cluster count equals cell count, every non-intersecting sample
    lies in a cell with the sample's label, intersecting samples lie in no
    cell, and no cluster spans two cells.
    """
    problems = []
    for key, grid in sorted(empirical.samples.items()):
        rect = cg.rectangles.get(key)
        if rect is None:
            problems.append('rectangle {} is missing'.format(key))
            continue
        if empirical.cluster_count(key) != len(rect.cells):
            problems.append('rectangle {}: {} clusters but {} cells'.format(
                key, empirical.cluster_count(key), len(rect.cells)))
        for cluster in empirical.clusters[key]:
            found = set()
            for ij in cluster:
                sample = grid[ij]
                cell = cg.cell_at(key[0], key[1], sample.point)
                if cell is None:
                    problems.append('sample {} at {} is in no cell'.format(ij, _fmt(sample.point)))
                    continue
                found.add(cell.id)
                if cell.label is not None and cell.label.name != sample.relation.name:
                    problems.append('sample {} at {}: cell {} is {} but the contours are {}'.format(
                        ij, _fmt(sample.point), cell.id, cell.label.name, sample.relation.name))
            if len(found) > 1:
                problems.append('rectangle {}: one cluster spans cells {}'.format(key, sorted(found)))
        for ij, sample in sorted(grid.items()):
            if sample.relation is Relation.INTERSECTING and cg.cell_at(key[0], key[1], sample.point) is not None:
                problems.append('sample {} at {} intersects but lies in a cell'.format(ij, _fmt(sample.point)))
    return problems


def _fmt(point):
    return '({}, {})'.format(*point)


def write_samples_csv(path, empirical):
    """Write every oracle sample as one CSV row, for debugging."""
    with open(path, 'w', newline='') as f:
        writer = csv.writer(f)
        writer.writerow(['arc1', 'arc2', 'i', 'j', 'l1', 'l2', 'relation'])
        for s in empirical.all_samples():
            writer.writerow([s.rectangle[0], s.rectangle[1], s.i, s.j, s.point[0], s.point[1], s.relation.value])
