"""
Level-of-detail simplification.

A leaf arc whose importance is below the threshold is cancelled: the arc and
its leaf node go away, and the two arcs left at its saddle are merged into
one.  The merged arc keeps the simplices of both; in ``CONSIDER`` mode it also
takes over the simplices of the cancelled arc, so intersections of the
cancelled contours still count, while ``IGNORE`` mode forgets them.

The same result can be reached from an existing complement without
recomputing it: :func:`simplify_complement` replays the cancellations on the
rectangles, merging rows and re-mapping only the simplices that the merged
rectangle needs beyond the two it replaces.  Which arcs are cancelled, and in
what order, is decided by :func:`simplify_graph` on the graph of the side
being simplified; only the geometry is replayed.

"""

import enum
import logging
from collections import namedtuple

from . import geom2
from .complement import ComplementGraph, label_cells, project_reeb, rectangle_from_projection
from .exceptions import ConfigError
from .options import ChoiceOption, RationalOption
from .reeb import Arc


logger = logging.getLogger(__name__)


class Measure(enum.Enum):
    PERSISTENCE = 'persistence'
    SIZE = 'size'


class Mode(enum.Enum):
    CONSIDER = 'consider'
    IGNORE = 'ignore'


class ImportanceMeasure:
    """
    How arcs are weighed for cancellation.

    Args:
        kind: :class:`Measure` (or its name); ``PERSISTENCE`` is the value
            span of an arc, ``SIZE`` its number of assigned simplices.
        threshold: arcs strictly less important than this are cancelled.

    """
    kind = ChoiceOption(default=Measure.PERSISTENCE, choices=Measure)
    threshold = RationalOption(default=0, minimum=0)

    def __init__(self, kind=None, threshold=None):
        self.kind = kind
        self.threshold = threshold

    def __repr__(self):
        return 'ImportanceMeasure({}, {})'.format(self.kind.name, self.threshold)

    def importance(self, graph, arc):
        if self.kind is Measure.SIZE:
            return len(arc.simplices)
        lo, hi = graph.interval(arc.id)
        return hi - lo


Cancellation = namedtuple('Cancellation', 'removed leaf saddle kept_below kept_above merged importance '
                                          'removed_simplices merged_simplices')
Cancellation.__doc__ = """
One arc cancellation.  ``removed`` is the cancelled leaf arc, ``kept_below``
and ``kept_above`` the arcs merged at the saddle into arc ``merged``, and the
simplex sets are those of the cancelled and the merged arc.
"""


def _candidates(graph, measure):
    for arc in graph.arcs:
        for leaf, saddle in ((arc.lower, arc.upper), (arc.upper, arc.lower)):
            if graph.degree(leaf) != 1 or graph.degree(saddle) != 3:
                continue
            others = [graph.arc(a) for a in graph.incident(saddle) if a != arc.id]
            below = [a for a in others if a.upper == saddle]
            above = [a for a in others if a.lower == saddle]
            if len(below) != 1 or len(above) != 1:
                continue
            importance = measure.importance(graph, arc)
            if importance < measure.threshold:
                yield importance, arc.id, leaf, saddle, below[0], above[0]
            break


def _cancel(graph, mode, importance, arc_id, leaf, saddle, below, above):
    removed = graph.arc(arc_id)
    merged_id = min(below.id, above.id)
    simplices = below.simplices | above.simplices
    if mode is Mode.CONSIDER:
        simplices |= removed.simplices
    merged = Arc(merged_id, below.lower, above.upper, frozenset(simplices))

    nodes = [n for n in graph.nodes if n.id not in (leaf, saddle)]
    arcs = [a for a in graph.arcs if a.id not in (arc_id, below.id, above.id)] + [merged]

    renamed = {below.id: merged_id, above.id: merged_id}
    if mode is Mode.CONSIDER:
        renamed[arc_id] = merged_id
    edge_arcs = []
    for seq in graph._edge_arcs:
        out = []
        for a in seq:
            if a == arc_id and mode is Mode.IGNORE:
                continue
            a = renamed.get(a, a)
            if not out or out[-1] != a:
                out.append(a)
        edge_arcs.append(out)
    vertex_map = {}
    for v, where in graph.vertex_map.items():
        if where in (('node', leaf), ('node', saddle), ('arc', arc_id)):
            vertex_map[v] = ('arc', merged_id)
        elif where[0] == 'arc':
            vertex_map[v] = ('arc', renamed.get(where[1], where[1]))
        else:
            vertex_map[v] = where
    step = Cancellation(arc_id, leaf, saddle, below.id, above.id, merged_id, importance,
                        removed.simplices, merged.simplices)
    logger.debug('field {}: cancelled arc {} (importance {}), merged {} and {} into {}'.format(
        graph.field, arc_id, importance, below.id, above.id, merged_id))
    return graph._derive(nodes=nodes, arcs=arcs, vertex_map=vertex_map, edge_arcs=edge_arcs,
                         cancellations=graph.cancellations + (step,))


def simplify_graph(graph, measure, mode=Mode.CONSIDER):
    """
    Cancel leaf arcs below ``measure.threshold``, least important first and
    ties by arc id, until none is left.  A leaf is only cancelled at a saddle
    where it leaves exactly one arc below and one above, which are then
    merged.  The cancellations are recorded in ``cancellations`` of the
    returned graph.

    """
    if not isinstance(mode, Mode):
        raise ConfigError('Invalid value {} of type {} for mode'.format(mode, type(mode)))
    while True:
        found = min(_candidates(graph, measure), key=lambda c: (c[0], c[1]), default=None)
        if found is None:
            break
        graph = _cancel(graph, mode, *found)
    logger.info('field {}: simplified to {} arcs after {} cancellations'.format(
        graph.field, len(graph.arcs), len(graph.cancellations)))
    return graph


def _replay(cg_rects, mesh, graph_side, partner, side, step, bounds_of):
    """Apply one cancellation to the projected Reeb spaces of one side's rows."""
    saddle = graph_side.node(step.saddle).value
    below = graph_side.arc(step.kept_below).simplices
    above = graph_side.arc(step.kept_above).simplices
    # kept simplices reaching across the saddle were clipped away on the side they are not assigned to
    crossing = {sid for sid in below - above if graph_side.span(sid)[1] > saddle}
    crossing |= {sid for sid in above - below if graph_side.span(sid)[0] < saddle}

    def key(mine, theirs):
        return (mine, theirs) if side == 1 else (theirs, mine)

    updated = dict(cg_rects)
    for k in [k for k in updated if k[side - 1] in (step.removed, step.kept_below, step.kept_above)]:
        del updated[k]
    for e4 in partner.arcs:
        bounds = bounds_of(step.merged, e4.id)
        remapped = ((step.removed_simplices & step.merged_simplices) | crossing) & e4.simplices
        pieces = [cg_rects[key(step.kept_below, e4.id)], cg_rects[key(step.kept_above, e4.id)]]
        if remapped:
            pieces.append(project_reeb(mesh, remapped, bounds, graph=graph_side))
        updated[key(step.merged, e4.id)] = geom2.union_all(pieces)
    return updated


def simplify_complement(cg, side, measure, mode=Mode.CONSIDER, classify=True):
    """
    Simplify the complement directly.  The cancellations are the ones
    :func:`simplify_graph` makes on the side-``side`` graph carried by ``cg``.
    For every one of them the rectangles of the cancelled arc are dropped,
    the two rows being merged are joined, and the simplices the joined rows do not
    already cover (those taken over from the cancelled arc, and kept ones
    reaching across the saddle) are re-mapped into the merged rectangles.
    Cells are then re-enumerated and, unless ``classify`` is false,
    re-classified.

    ``side`` is 1, 2 or ``'both'`` (side 1, then side 2).  The result is the
    complement of the simplified graphs.

    """
    if side == 'both':
        return simplify_complement(simplify_complement(cg, 1, measure, mode, classify), 2, measure, mode, classify)
    if side not in (1, 2):
        raise ConfigError('Invalid value {} of type {} for side'.format(side, type(side)))
    mesh = cg.mesh
    graphs = {1: cg.g1, 2: cg.g2}
    simplified = simplify_graph(graphs[side], measure, mode)
    steps = simplified.cancellations[len(graphs[side].cancellations):]
    if not steps:
        return cg
    partner = graphs[3 - side]
    projected = {k: r.projected_reeb for k, r in cg.rectangles.items()}

    # intervals of the merged arcs as the cancellations happen
    current = graphs[side]
    for step in steps:
        below, above = current.arc(step.kept_below), current.arc(step.kept_above)
        lo = current.node(below.lower).value
        hi = current.node(above.upper).value

        def bounds_of(mine, theirs, lo=lo, hi=hi):
            plo, phi = partner.interval(theirs)
            return (lo, plo, hi, phi) if side == 1 else (plo, lo, phi, hi)

        projected = _replay(projected, mesh, current, partner, side, step, bounds_of)
        current = _advance(current, step)

    g1 = simplified if side == 1 else cg.g1
    g2 = simplified if side == 2 else cg.g2
    rectangles = []
    for (a1, a2) in sorted(projected):
        rect = rectangle_from_projection(mesh, g1, g2, g1.ref(a1), g2.ref(a2), projected[(a1, a2)])
        if classify and mesh.dim == 2:
            label_cells(mesh, g1, g2, rect)
        rectangles.append(rect)
    result = ComplementGraph(mesh, g1, g2, rectangles)
    logger.info('simplified complement side {}: {} rectangles, {} cells'.format(
        side, len(result.rectangles), len(result.cells)))
    return result


def _advance(graph, step):
    # the graph right after ``step``: structure from ``graph``, merged arc from the step
    lower = graph.arc(step.kept_below).lower
    upper = graph.arc(step.kept_above).upper
    merged = Arc(step.merged, lower, upper, step.merged_simplices)
    gone = (step.removed, step.kept_below, step.kept_above)
    arcs = [a for a in graph.arcs if a.id not in gone] + [merged]
    nodes = [n for n in graph.nodes if n.id not in (step.leaf, step.saddle)]
    return graph._derive(nodes=nodes, arcs=arcs)
