"""
Contour extraction and the inclusion relation between two contours.

Contours are extracted by marching triangles.  On a compactified mesh a
contour may pass through the cone over the boundary; its points on cone edges
have no position in the domain and are kept as *virtual* points.  Such a
contour still closes up, around the point at infinity, and point-in-contour
tests account for the part outside the domain.

"""

import enum
import logging

from . import geom2
from ._unionfind import DisjointSet
from .exceptions import (
    ComputationError, IntersectingContours, NonGenericValue, OpenContour, OutsideArc,
    UnsupportedDimension,
)
from .geom2 import RPoint
from .options import to_rational


logger = logging.getLogger(__name__)


class InclusionLabel(enum.Enum):
    FIRST_INSIDE_SECOND = 'first_inside_second'
    SECOND_INSIDE_FIRST = 'second_inside_first'
    DISJOINT = 'disjoint'
    UNDETERMINED_BOUNDARY = 'undetermined_boundary'


class Location(enum.Enum):
    INSIDE = 'inside'
    OUTSIDE = 'outside'


class Contour:
    """
    One connected component of a level set.

    Attributes:
        field: 1 or 2.
        isovalue: exact level.
        arc: the :class:`~reebcomp.ArcRef` it was extracted for, or ``None``.
        points: edge id -> crossing point, ``None`` for a virtual point.
        segments: ``(edge_a, edge_b, simplex id)`` per crossed simplex.
        simplices: ids of the crossed simplices.
        closed: every point joins exactly two segments.
        through_infinity: some point is virtual.

    """

    def __init__(self, mesh, field, isovalue, arc, points, segments):
        self.mesh = mesh
        self.field = field
        self.isovalue = isovalue
        self.arc = arc
        self.points = points
        self.segments = segments
        self.simplices = frozenset(sid for _, _, sid in segments)
        degree = dict.fromkeys(points, 0)
        for a, b, _ in segments:
            degree[a] += 1
            degree[b] += 1
        self.closed = bool(segments) and all(d == 2 for d in degree.values())
        self.through_infinity = any(p is None for p in points.values())
        self.real_segments = [(points[a], points[b]) for a, b, _ in segments
                              if points[a] is not None and points[b] is not None]

    def __repr__(self):
        return '<Contour field={} isovalue={} segments={}{}{}>'.format(
            self.field, self.isovalue, len(self.segments),
            ' closed' if self.closed else ' open',
            ' through-infinity' if self.through_infinity else '')

    @property
    def polylines(self):
        """The real part of the contour as chains of points."""
        adj = {}
        for p, q in self.real_segments:
            adj.setdefault(p, []).append(q)
            adj.setdefault(q, []).append(p)
        seen = set()
        chains = []
        # open chains start at their ends, then whatever remains is a cycle
        starts = sorted(p for p, nb in adj.items() if len(nb) == 1) + sorted(adj)
        for start in starts:
            if start in seen:
                continue
            chain = [start]
            seen.add(start)
            prev, cur = None, start
            while True:
                nxt = [q for q in adj[cur] if q != prev and q not in seen]
                if not nxt:
                    if len(chain) > 2 and start in adj[cur]:
                        chain.append(start)
                    break
                prev, cur = cur, nxt[0]
                chain.append(cur)
                seen.add(cur)
            chains.append(chain)
        return chains

    def components(self):
        """
        The connected pieces of the contour as contours of their own, the
        piece holding the first real segment first.
        """
        ds = DisjointSet(range(len(self.segments)))
        by_edge = {}
        for k, (a, b, _) in enumerate(self.segments):
            for e in (a, b):
                if e in by_edge:
                    ds.union(k, by_edge[e])
                else:
                    by_edge[e] = k
        first_real = next((k for k, (a, b, _) in enumerate(self.segments)
                           if self.points[a] is not None and self.points[b] is not None), 0)
        groups = sorted(ds.groups(), key=lambda g: first_real not in g)
        if len(groups) == 1:
            return [self]
        pieces = []
        for group in groups:
            segments = [self.segments[k] for k in group]
            points = {e: self.points[e] for a, b, _ in segments for e in (a, b)}
            pieces.append(Contour(self.mesh, self.field, self.isovalue, self.arc, points, segments))
        return pieces

    def first_point(self):
        """Midpoint of the first segment lying in the domain, or ``None``."""
        if not self.real_segments:
            return None
        p, q = self.real_segments[0]
        return RPoint((p.x + q.x) / 2, (p.y + q.y) / 2)


def check_generic(mesh, field, isovalue):
    if isovalue in mesh.complex.level_values(field):
        raise NonGenericValue('isovalue {} equals a vertex value of field {}'.format(isovalue, field))


def march(mesh, field, isovalue, simplex_ids, arc=None):
    """
    Marching triangles over ``simplex_ids`` at a generic ``isovalue``.
    Simplices that do not cross the level are skipped.
    """
    cx = mesh.complex
    if cx.dim != 2:
        raise UnsupportedDimension('contour extraction is implemented for triangle meshes only')
    values = cx.values[field - 1]
    points = {}
    segments = []
    for sid in sorted(simplex_ids):
        crossing = []
        for e in cx.simplex_edges[sid]:
            u, w = cx.edges[e]
            if (values[u] < isovalue) != (values[w] < isovalue):
                crossing.append(e)
                if e not in points:
                    points[e] = _edge_point(mesh, values, u, w, isovalue)
        if not crossing:
            continue
        if len(crossing) != 2:
            raise ComputationError('simplex {} crosses level {} on {} edges'.format(sid, isovalue, len(crossing)))
        segments.append((crossing[0], crossing[1], sid))
    return Contour(mesh, field, isovalue, arc, points, segments)


def _edge_point(mesh, values, u, w, isovalue):
    cx = mesh.complex
    if cx.is_virtual(u) or cx.is_virtual(w):
        return None
    pu, pw = mesh.coords[u], mesh.coords[w]
    t = (isovalue - values[u]) / (values[w] - values[u])
    return RPoint(pu[0] + t * (pw[0] - pu[0]), pu[1] + t * (pw[1] - pu[1]))


def extract_contour(mesh, graph, arc, isovalue):
    """
    The contour of ``graph``'s field at ``isovalue`` that belongs to ``arc``.
    Only the simplices assigned to the arc are visited.

    Raises :class:`~reebcomp.OutsideArc` unless the isovalue is strictly
    inside the arc's interval, and :class:`~reebcomp.NonGenericValue` if it
    equals a vertex value.

    """
    isovalue = to_rational(isovalue)
    lo, hi = graph.interval(arc)
    if not lo < isovalue < hi:
        raise OutsideArc('isovalue {} is outside arc {} ({}, {})'.format(isovalue, getattr(arc, 'arc', arc), lo, hi))
    check_generic(mesh, graph.field, isovalue)
    if graph.face_dim != mesh.dim:
        raise UnsupportedDimension('contours need an assignment of full simplices')
    ids = graph.arc(arc).simplices
    contour = march(mesh, graph.field, isovalue, ids, arc=graph.ref(graph.arc(arc).id))
    if not contour.segments:
        raise ComputationError('arc {} of field {} has no simplices crossing {}'.format(
            graph.arc(arc).id, graph.field, isovalue))
    return contour


def _first_exit(mesh, p):
    """Where the ray from ``p`` along +x first leaves the domain, and the edge it leaves through."""
    cx = mesh.complex
    best = None
    for facet in cx.boundary_facets:
        u, w = facet
        a, b = RPoint(*mesh.coords[u]), RPoint(*mesh.coords[w])
        if (a.y > p.y) != (b.y > p.y):
            x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y)
            if x > p.x and (best is None or x < best[0]):
                best = (x, u, w, a, b)
    return best


def _cone_over(cx, u, w):
    """The cone simplex over boundary edge ``(u, w)``."""
    for sid in cx.edge_simplices[cx.edge_index[(u, w)]]:
        if sid >= cx.nreal_simplices:
            return sid
    raise ComputationError('boundary edge {} has no cone simplex'.format((u, w)))


def point_in_contour(contour, p):
    """
    Even-odd test of domain point ``p`` against a closed contour.

    On a compactified mesh the ray runs from ``p`` to where it first leaves
    the domain and on to the apex, so ``INSIDE`` means the side away from
    infinity.  The cone part of the path crosses the contour iff the cone
    simplex over the exit edge belongs to the contour and the field at the
    exit point is below the level.

    Raises :class:`~reebcomp.OpenContour` for an open contour and
    :class:`~reebcomp.NonGenericValue` when ``p`` lies on the contour.

    """
    if not contour.closed:
        raise OpenContour('point-in-contour needs a closed contour')
    p = RPoint(*p)
    for a, b in contour.real_segments:
        if geom2.on_segment(p, a, b):
            raise NonGenericValue('{} lies on the contour'.format(p))
    if not contour.real_segments:
        # the whole contour lies outside the domain, around it
        return Location.INSIDE

    limit = None
    extra = False
    mesh = contour.mesh
    if mesh.compactified:
        exit_point = _first_exit(mesh, p)
        if exit_point is not None:
            x, u, w, a, b = exit_point
            limit = x
            # other components at the same level may cross the exit edge's cone
            if _cone_over(mesh.complex, u, w) in contour.simplices:
                values = mesh.complex.values[contour.field - 1]
                t = (p.y - a.y) / (b.y - a.y)
                fq = values[u] + t * (values[w] - values[u])
                extra = fq < contour.isovalue

    inside = extra
    for a, b in contour.real_segments:
        if (a.y > p.y) != (b.y > p.y):
            x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y)
            if p.x < x and (limit is None or x < limit):
                inside = not inside
    return Location.INSIDE if inside else Location.OUTSIDE


def contours_intersect(mesh, c1, c2):
    """
    True when the two contours share a point: for some simplex crossed by
    both, the isovalue pair lies in the image of the simplex.
    """
    cx = mesh.complex
    target = RPoint(c1.isovalue, c2.isovalue)
    for sid in sorted(c1.simplices & c2.simplices):
        image = [RPoint(cx.values[0][v], cx.values[1][v]) for v in cx.simplices[sid]]
        if geom2.convex_hull(image).contains(target):
            return True
    return False


def _cone_position(mesh, contour):
    # where a contour lying entirely in the cone crosses the cone edge of its
    # first boundary vertex, as a fraction of the way to the apex
    cx = mesh.complex
    values = cx.values[contour.field - 1]
    for e in sorted(contour.points):
        u, w = cx.edges[e]
        if cx.is_virtual(w) and not cx.is_virtual(u):
            return u, (contour.isovalue - values[u]) / (values[w] - values[u])
    raise ComputationError('contour {} has no cone edge'.format(contour))


def relation(mesh, c1, c2):
    """
    Inclusion label of two disjoint contours.  Open contours give
    ``UNDETERMINED_BOUNDARY``.  A contour with several components, as a
    merged arc may carry, is represented by the one holding its first real
    segment.
    """
    c1 = c1.components()[0]
    c2 = c2.components()[0]
    if not (c1.closed and c2.closed):
        return InclusionLabel.UNDETERMINED_BOUNDARY
    p1, p2 = c1.first_point(), c2.first_point()
    if p1 is None and p2 is None:
        _, t1 = _cone_position(mesh, c1)
        _, t2 = _cone_position(mesh, c2)
        return InclusionLabel.SECOND_INSIDE_FIRST if t1 > t2 else InclusionLabel.FIRST_INSIDE_SECOND
    first_in = p1 is not None and point_in_contour(c2, p1) is Location.INSIDE
    second_in = p2 is not None and point_in_contour(c1, p2) is Location.INSIDE
    if first_in and second_in:
        raise ComputationError('contours {} and {} are inside each other'.format(c1, c2))
    if first_in:
        return InclusionLabel.FIRST_INSIDE_SECOND
    if second_in:
        return InclusionLabel.SECOND_INSIDE_FIRST
    return InclusionLabel.DISJOINT


def classify_pair(mesh, g1, g2, arc1, arc2, point):
    """Label of the contour pair on ``arc1``, ``arc2`` at isovalue pair ``point``."""
    if mesh.dim != 2:
        raise UnsupportedDimension('inclusion classification is implemented for triangle meshes only')
    c1 = extract_contour(mesh, g1, arc1, point[0])
    c2 = extract_contour(mesh, g2, arc2, point[1])
    if contours_intersect(mesh, c1, c2):
        raise IntersectingContours('contours of arcs {} and {} intersect at {}'.format(
            c1.arc, c2.arc, tuple(point)))
    return relation(mesh, c1, c2)


def classify_cell(mesh, g1, g2, cell):
    """
    Classify a partition cell by extracting the contour pair at its sample.
    Intersecting contours inside a cell mean the complement is wrong, so
    :class:`~reebcomp.IntersectingContours` propagates.
    """
    label = classify_pair(mesh, g1, g2, cell.arc1, cell.arc2, cell.sample)
    logger.debug('cell {} at {} is {}'.format(cell.id, tuple(cell.sample), label.name))
    return label
