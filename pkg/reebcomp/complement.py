"""
The Reeb complement of two fields.

For every pair of arcs ``(e1, e2)`` the value rectangle of the pair is cut by
the image of the simplices assigned to both arcs; what remains splits into
partition cells, each an equivalence class of contour pairs with the same
inclusion relation.  Cells are then glued into one graph: within a rectangle
across the projected Reeb space, and across rectangles that meet at a Reeb
graph node.

The rectangle map is embarrassingly parallel and runs in a process pool when
more than one worker is requested.

"""

import concurrent.futures
import itertools
import logging

from . import geom2
from .classify import classify_cell
from .exceptions import ComputationError, ReebComplementException
from .geom2 import RPoint
from .options import default_workers


logger = logging.getLogger(__name__)


def common_simplices(g1, g2, e1, e2):
    """Ids of the simplices assigned to both ``e1`` (of ``g1``) and ``e2`` (of ``g2``)."""
    return g1.arc(e1).simplices & g2.arc(e2).simplices


def simplex_image(mesh, vertices):
    cx = mesh.complex
    return [RPoint(cx.values[0][v], cx.values[1][v]) for v in vertices]


def project_reeb(mesh, simplex_ids, bounds, graph=None):
    """
    The union of the images of ``simplex_ids`` under the field pair, clipped
    to ``bounds`` ``(x0, y0, x1, y1)``.  Zero-area images are kept.  Pass the
    graph the ids come from when it assigns faces rather than full simplices.
    """
    vertices_of = graph.cell_vertices if graph is not None else (lambda sid: mesh.complex.simplices[sid])
    images = (simplex_image(mesh, vertices_of(sid)) for sid in sorted(simplex_ids))
    return geom2.intersect(geom2.union_of_hulls(images), geom2.box(*bounds))


def rectangle_bounds(g1, g2, e1, e2):
    x0, x1 = g1.interval(e1)
    y0, y1 = g2.interval(e2)
    return x0, y0, x1, y1


class Rectangle:
    """
    The part of the Reeb product over one arc pair.

    Attributes:
        e1, e2: the :class:`~reebcomp.ArcRef` of each side.
        bounds: ``(x0, y0, x1, y1)``.
        projected_reeb: the projected Reeb space inside ``bounds``.
        complement: ``bounds`` minus the closure of ``projected_reeb``.
        cells: the :class:`PartitionCell` objects, one per face of the
            complement.

    """

    def __init__(self, e1, e2, bounds, projected_reeb, complement, cells):
        self.e1 = e1
        self.e2 = e2
        self.bounds = bounds
        self.projected_reeb = projected_reeb
        self.complement = complement
        self.cells = cells

    def __repr__(self):
        return '<Rectangle ({}, {}) cells={}>'.format(self.e1.arc, self.e2.arc, len(self.cells))

    @property
    def key(self):
        return self.e1.arc, self.e2.arc

    @property
    def area(self):
        x0, y0, x1, y1 = self.bounds
        return (x1 - x0) * (y1 - y0)

    def check_area(self):
        """Raise :class:`~reebcomp.ComputationError` unless the rectangle's area splits exactly."""
        total = self.projected_reeb.area + sum(c.area for c in self.cells)
        if total != self.area:
            raise ComputationError('rectangle {}: area {} != {} + {}'.format(
                self.key, self.area, self.projected_reeb.area, total - self.projected_reeb.area))


class PartitionCell:
    """One face of a rectangle's complement, labelled with its inclusion relation."""

    def __init__(self, id, arc1, arc2, face, sample, label=None):
        self.id = id
        self.arc1 = arc1
        self.arc2 = arc2
        self.face = face
        self.sample = sample
        self.label = label

    def __repr__(self):
        return '<PartitionCell {} area={} label={}>'.format(
            self.id, self.area, None if self.label is None else self.label.name)

    @property
    def area(self):
        return self.face.area

    @property
    def rectangle(self):
        return self.arc1.arc, self.arc2.arc


def _avoid_values(mesh, graph):
    values = set(mesh.complex.level_values(graph.field))
    values.update(n.value for n in graph.nodes)
    return values


def rectangle_from_projection(mesh, g1, g2, e1, e2, projected):
    """Build a :class:`Rectangle` (cells unlabelled) from an already projected Reeb space."""
    e1, e2 = g1.ref(g1.arc(e1).id), g2.ref(g2.arc(e2).id)
    bounds = rectangle_bounds(g1, g2, e1, e2)
    x0, y0, x1, y1 = bounds
    if x1 <= x0 or y1 <= y0:
        # zero-width arcs: nothing to partition
        return Rectangle(e1, e2, bounds, geom2.empty(), geom2.empty(), [])
    complement = geom2.subtract(geom2.box(*bounds), projected)
    avoid_x, avoid_y = _avoid_values(mesh, g1), _avoid_values(mesh, g2)
    cells = []
    for face in geom2.faces(complement):
        sample = geom2.representative_point(face, avoid_x, avoid_y)
        cells.append(PartitionCell((e1.arc, e2.arc, face.index), e1, e2, face, sample))
    return Rectangle(e1, e2, bounds, projected, complement, cells)


def compute_rectangle(mesh, g1, g2, e1, e2):
    """
    Run the per-rectangle algorithm for one arc pair: bounds, projected Reeb
    space of the common simplices, complement and its cells.  Cells are not
    classified; see :func:`label_cells`.
    """
    common = common_simplices(g1, g2, e1, e2)
    bounds = rectangle_bounds(g1, g2, e1, e2)
    if bounds[2] <= bounds[0] or bounds[3] <= bounds[1]:
        projected = geom2.empty()
    else:
        projected = project_reeb(mesh, common, bounds, graph=g1)
    rect = rectangle_from_projection(mesh, g1, g2, e1, e2, projected)
    logger.debug('rectangle {}: {} common simplices, {} cells'.format(rect.key, len(common), len(rect.cells)))
    return rect


def label_cells(mesh, g1, g2, rect):
    """Classify every cell of ``rect`` in place.  Returns the rectangle."""
    for cell in rect.cells:
        cell.label = classify_cell(mesh, g1, g2, cell)
    return rect


_worker_state = {}


def _init_worker(mesh, g1, g2, classify):
    _worker_state['args'] = (mesh, g1, g2)
    _worker_state['classify'] = classify


def _rectangle_task(pair):
    mesh, g1, g2 = _worker_state['args']
    rect = compute_rectangle(mesh, g1, g2, *pair)
    if _worker_state['classify']:
        label_cells(mesh, g1, g2, rect)
    return rect


def _map_rectangles(mesh, g1, g2, pairs, classify, workers):
    if workers <= 1 or len(pairs) <= 1:
        _init_worker(mesh, g1, g2, classify)
        try:
            return [_rectangle_task(pair) for pair in pairs]
        finally:
            _worker_state.clear()
    logger.info('computing {} rectangles with {} workers'.format(len(pairs), workers))
    with concurrent.futures.ProcessPoolExecutor(
            max_workers=workers, initializer=_init_worker, initargs=(mesh, g1, g2, classify)) as pool:
        futures = [pool.submit(_rectangle_task, pair) for pair in pairs]
        results = []
        for pair, future in zip(pairs, futures):
            try:
                results.append(future.result())
            except ReebComplementException:
                raise
            except Exception as e:
                logger.exception('worker failed on rectangle {}'.format(pair))
                raise ComputationError('rectangle {} failed: {}'.format(pair, e)) from e
        return results


class ComplementGraph:
    """
    All partition cells of the Reeb complement and their adjacency.

    Attributes:
        mesh: the mesh.
        g1, g2: the Reeb graphs of the two fields.
        rectangles: ``{(arc1, arc2): Rectangle}``.
        adjacency: ``{cell id: set of adjacent cell ids}``; symmetric.

    """

    def __init__(self, mesh, g1, g2, rectangles):
        self.mesh = mesh
        self.g1 = g1
        self.g2 = g2
        self.rectangles = {r.key: r for r in rectangles}
        self._cells = {c.id: c for r in rectangles for c in r.cells}
        self.adjacency = glue(g1, g2, self.rectangles)

    def __repr__(self):
        return '<ComplementGraph rectangles={} cells={}>'.format(len(self.rectangles), len(self._cells))

    @property
    def cells(self):
        return [self._cells[k] for k in sorted(self._cells)]

    def cell(self, cell_id):
        return self._cells[tuple(cell_id)]

    def rectangle(self, arc1, arc2):
        return self.rectangles[(getattr(arc1, 'arc', arc1), getattr(arc2, 'arc', arc2))]

    def neighbours(self, cell_id):
        return sorted(self.adjacency.get(tuple(cell_id), ()))

    def adjacency_pairs(self):
        return sorted((a, b) for a, nb in self.adjacency.items() for b in nb if a < b)

    def cell_at(self, arc1, arc2, point):
        """The cell of rectangle ``(arc1, arc2)`` containing isovalue pair ``point``, or ``None``."""
        rect = self.rectangle(arc1, arc2)
        if not rect.cells:
            return None
        face = geom2.locate(rect.complement, RPoint(*point))
        if face is None:
            return None
        return rect.cells[face.index]

    def neighbourhood(self, cell_id):
        """The cell and the cells adjacent to it, for browsing nearby partitions."""
        cell = self.cell(cell_id)
        return [cell] + [self.cell(n) for n in self.neighbours(cell.id)]


def _line_spans(cell, rect, other_rect, axis, value):
    spans = cell.face.boundary_on_line(axis, value)
    covered = rect.projected_reeb.intervals_on_line(axis, value) + \
        other_rect.projected_reeb.intervals_on_line(axis, value)
    return geom2.subtract_intervals(spans, geom2.merge_intervals(covered))


def glue(g1, g2, rectangles):
    """
    Adjacency between cells.  Cells of one rectangle are adjacent across the
    projected Reeb space.  Cells of two rectangles whose arcs on one side
    meet at a node are adjacent when their boundaries share a stretch of
    positive length on that node's value line, outside both projected Reeb
    spaces.
    """
    adjacency = {c.id: set() for r in rectangles.values() for c in r.cells}

    def link(a, b):
        adjacency[a].add(b)
        adjacency[b].add(a)

    for rect in rectangles.values():
        for cell in rect.cells:
            for k in cell.face.neighbours:
                link(cell.id, rect.cells[k].id)

    for side, graph, other in ((1, g1, g2), (2, g2, g1)):
        axis = side - 1
        for node in graph.nodes:
            for a, b in itertools.combinations(graph.incident(node.id), 2):
                for partner in other.arcs:
                    key_a = (a, partner.id) if side == 1 else (partner.id, a)
                    key_b = (b, partner.id) if side == 1 else (partner.id, b)
                    ra, rb = rectangles.get(key_a), rectangles.get(key_b)
                    if ra is None or rb is None or not ra.cells or not rb.cells:
                        continue
                    spans_b = [(cb, _line_spans(cb, rb, ra, axis, node.value)) for cb in rb.cells]
                    for ca in ra.cells:
                        spans_a = _line_spans(ca, ra, rb, axis, node.value)
                        if not spans_a:
                            continue
                        for cb, sb in spans_b:
                            if geom2.overlap_length(spans_a, sb) > 0:
                                link(ca.id, cb.id)
    return adjacency


def compute_complement(mesh, g1, g2, workers=None, classify=True):
    """
    Compute every rectangle, classify the cells and glue them into a
    :class:`ComplementGraph`.

    Args:
        workers (int): size of the process pool; defaults to
            ``REEBCOMP_WORKERS`` (serial when unset).
        classify (bool): label the cells.  Labels stay ``None`` when the
            mesh is not a triangle mesh.

    """
    if workers is None:
        workers = default_workers()
    if classify and mesh.dim != 2:
        logger.warning('inclusion labels are only computed for triangle meshes; leaving them empty')
        classify = False
    pairs = [(g1.ref(a.id), g2.ref(b.id)) for a in g1.arcs for b in g2.arcs]
    rectangles = _map_rectangles(mesh, g1, g2, pairs, classify, workers)
    cg = ComplementGraph(mesh, g1, g2, rectangles)
    logger.info('Reeb complement: {} rectangles, {} cells, {} adjacencies'.format(
        len(cg.rectangles), len(cg.cells), len(cg.adjacency_pairs())))
    return cg
