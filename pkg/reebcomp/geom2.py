"""
Exact planar geometry over rationals.

Regions are stored as :class:`PolygonSet` objects: a segment arrangement plus
the set of open faces, open edges and vertices that belong to the region.
This makes lower-dimensional pieces first-class; a region can consist of a
square, a stray segment and a point, and subtracting a zero-area segment from
a square still splits it into two faces.

Every boolean operation overlays the two arrangements, decides membership of
each feature of the overlay from a sample point, and then normalizes: edges
and vertices that do not separate anything are dropped and collinear chains
are merged.  Normalized sets are canonical, so ``==`` compares point sets.

No floats are used anywhere in this module.

"""

import bisect
import functools
import itertools
import logging
import math
from collections import namedtuple
from fractions import Fraction

from more_itertools import pairwise

from ._unionfind import DisjointSet
from .exceptions import MeshStateError, ZeroArea
from .options import to_rational


logger = logging.getLogger(__name__)

UNBOUNDED = -1


class RPoint(namedtuple('RPoint', 'x y')):
    """A point with exact rational coordinates."""
    __slots__ = ()

    def __new__(cls, x, y):
        return super().__new__(cls, to_rational(x), to_rational(y))

    def __repr__(self):
        return 'RPoint({}, {})'.format(self.x, self.y)


def _cross(o, a, b):
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def _bbox(points):
    xs = [p.x for p in points]
    ys = [p.y for p in points]
    return min(xs), min(ys), max(xs), max(ys)


def _in_bbox(p, box):
    return box[0] <= p.x <= box[2] and box[1] <= p.y <= box[3]


def on_segment(p, a, b):
    """True if p lies on the closed segment ab."""
    if _cross(a, b, p) != 0:
        return False
    return min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(a.y, b.y) <= p.y <= max(a.y, b.y)


def signed_area(ring):
    """Shoelace area of a closed ring given without the repeated first point."""
    total = Fraction(0)
    for a, b in pairwise(itertools.chain(ring, ring[:1])):
        total += a.x * b.y - b.x * a.y
    return total / 2


def ring_contains(ring, p):
    """
    Even-odd test of ``p`` against a closed ring.  Edges are half-open in y,
    so a ray through a ring vertex is counted exactly once.  ``p`` must not
    lie on the ring.

    """
    inside = False
    for a, b in pairwise(itertools.chain(ring, ring[:1])):
        if (a.y > p.y) != (b.y > p.y):
            x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y)
            if p.x < x:
                inside = not inside
    return inside


def _intersections(segments):
    """
    Split points of every segment against every other.  Returns one set of
    points per segment, each including the segment's own endpoints.
    """
    splits = [{a, b} for a, b in segments]
    # segments are stored with a < b, so a.x is the left end
    order = sorted(range(len(segments)), key=lambda i: segments[i][0].x)
    for pos, i in enumerate(order):
        a, b = segments[i]
        ylo, yhi = min(a.y, b.y), max(a.y, b.y)
        for j in order[pos + 1:]:
            c, d = segments[j]
            if c.x > b.x:
                break
            if max(c.y, d.y) < ylo or min(c.y, d.y) > yhi:
                continue
            rx, ry = b.x - a.x, b.y - a.y
            sx, sy = d.x - c.x, d.y - c.y
            denom = rx * sy - ry * sx
            qx, qy = c.x - a.x, c.y - a.y
            if denom != 0:
                t = (qx * sy - qy * sx) / denom
                u = (qx * ry - qy * rx) / denom
                if 0 <= t <= 1 and 0 <= u <= 1:
                    p = RPoint(a.x + t * rx, a.y + t * ry)
                    splits[i].add(p)
                    splits[j].add(p)
            elif qx * ry - qy * rx == 0:
                # collinear: every endpoint inside the other segment splits it
                for p in (c, d):
                    if on_segment(p, a, b):
                        splits[i].add(p)
                for p in (a, b):
                    if on_segment(p, c, d):
                        splits[j].add(p)
    return splits


def _half(dx, dy):
    return 0 if dy > 0 or (dy == 0 and dx > 0) else 1


def _direction_cmp(d1, d2):
    h1, h2 = _half(*d1), _half(*d2)
    if h1 != h2:
        return h1 - h2
    c = d1[0] * d2[1] - d1[1] * d2[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


class _FaceRecord:
    __slots__ = ('outer', 'holes', 'points', 'outer_area', 'area', 'bbox', 'edges', 'slits')

    def __init__(self, outer):
        self.outer = outer
        self.holes = []
        self.points = []
        self.outer_area = signed_area(outer)
        self.area = self.outer_area
        self.bbox = _bbox(outer)
        self.edges = set()
        self.slits = set()


class Arrangement:
    """
    The planar subdivision induced by a set of segments and points.

    Attributes:
        vertices: sorted tuple of RPoints.
        edges: sorted tuple of ``(p, q)`` pairs with ``p < q``; no two edges
            cross or overlap.
        faces: bounded faces, in a deterministic order.  Face ``UNBOUNDED``
            (-1) is the outside.

    """

    def __init__(self, segments=(), points=()):
        cleaned = set()
        loose = set(points)
        for a, b in segments:
            if a == b:
                loose.add(a)
            else:
                cleaned.add((a, b) if a < b else (b, a))
        cleaned = sorted(cleaned)
        splits = _intersections(cleaned)
        for p in list(loose):
            for k, (a, b) in enumerate(cleaned):
                if on_segment(p, a, b):
                    splits[k].add(p)
                    loose.discard(p)
        edges = set()
        for pts in splits:
            for p, q in pairwise(sorted(pts)):
                edges.add((p, q))
        self.edges = tuple(sorted(edges))
        self.edge_set = frozenset(self.edges)
        verts = set(loose)
        for p, q in self.edges:
            verts.add(p)
            verts.add(q)
        self.vertices = tuple(sorted(verts))
        self.isolated = frozenset(loose)
        self._slabs = None
        self._build_faces()

    def _build_faces(self):
        nbrs = {v: [] for v in self.vertices}
        for p, q in self.edges:
            nbrs[p].append(q)
            nbrs[q].append(p)
        out = {}
        position = {}
        for v, adj in nbrs.items():
            key = functools.cmp_to_key(
                lambda a, b, v=v: _direction_cmp((a.x - v.x, a.y - v.y), (b.x - v.x, b.y - v.y)))
            adj = sorted(adj, key=key)
            out[v] = adj
            for i, w in enumerate(adj):
                position[(v, w)] = i
        self._out = out

        seen = set()
        cycles = []
        for p, q in self.edges:
            for start in ((p, q), (q, p)):
                if start in seen:
                    continue
                cycle = []
                he = start
                while he not in seen:
                    seen.add(he)
                    cycle.append(he)
                    u, v = he
                    adj = out[v]
                    he = (v, adj[(position[(v, u)] - 1) % len(adj)])
                cycles.append(cycle)

        comps = DisjointSet(self.vertices)
        for p, q in self.edges:
            comps.union(p, q)

        bounded = []
        outer_of = {}
        for cycle in cycles:
            ring = [u for u, _ in cycle]
            if signed_area(ring) > 0:
                bounded.append((min(cycle), ring, cycle))
            else:
                outer_of[comps.find(ring[0])] = cycle
        bounded.sort(key=lambda item: item[0])
        self.faces = [_FaceRecord(ring) for _, ring, _ in bounded]
        face_of = {}
        for idx, (_, _, cycle) in enumerate(bounded):
            for he in cycle:
                face_of[he] = idx
        face_comp = [comps.find(ring[0]) for _, ring, _ in bounded]

        # place every component inside the smallest bounded face of another
        # component that contains it
        self._isolated_face = {}
        for group in comps.groups():
            root = comps.find(group[0])
            first = group[0]
            host = self._smallest_face_containing(first, lambda idx: face_comp[idx] != root)
            if root in outer_of:
                cycle = outer_of[root]
                for he in cycle:
                    face_of[he] = host
                if host != UNBOUNDED:
                    self.faces[host].holes.append([u for u, _ in cycle])
            else:
                self._isolated_face[first] = host
                if host != UNBOUNDED:
                    self.faces[host].points.append(first)
        self.face_of = face_of
        for face in self.faces:
            face.area = face.area + sum(signed_area(h) for h in face.holes)
        for (u, v), f in face_of.items():
            if f == UNBOUNDED:
                continue
            e = (u, v) if u < v else (v, u)
            rec = self.faces[f]
            if e in rec.edges:
                rec.slits.add(e)
            rec.edges.add(e)

    def _smallest_face_containing(self, p, eligible=None):
        best, best_area = UNBOUNDED, None
        for idx, face in enumerate(self.faces):
            if eligible is not None and not eligible(idx):
                continue
            if not _in_bbox(p, face.bbox):
                continue
            if best_area is not None and face.outer_area >= best_area:
                continue
            if ring_contains(face.outer, p):
                best, best_area = idx, face.outer_area
        return best

    def edge_faces(self, e):
        p, q = e
        return self.face_of[(p, q)], self.face_of[(q, p)]

    def vertex_faces(self, v):
        if v in self._isolated_face:
            return {self._isolated_face[v]}
        return {self.face_of[(v, w)] for w in self._out[v]}

    def vertex_edges(self, v):
        return [(v, w) if v < w else (w, v) for w in self._out.get(v, ())]

    def _edges_near(self, x):
        """The edges whose x-range contains ``x``, from vertical slabs built on first use."""
        if self._slabs is None:
            xs = sorted({v.x for v in self.vertices})
            step = max(1, len(xs) // max(1, math.isqrt(len(self.edges))))
            cuts = xs[::step]
            slabs = [[] for _ in cuts]
            for e in self.edges:
                a, b = e
                lo = bisect.bisect_right(cuts, a.x) - 1
                hi = bisect.bisect_right(cuts, b.x) - 1
                for k in range(max(lo, 0), hi + 1):
                    slabs[k].append(e)
            self._slabs = (cuts, slabs)
        cuts, slabs = self._slabs
        k = bisect.bisect_right(cuts, x) - 1
        if k < 0:
            return ()
        return [e for e in slabs[k] if e[0].x <= x <= e[1].x]

    def feature_at(self, p):
        """
        The feature of the subdivision containing ``p``: ``('vertex', p)``,
        ``('edge', (a, b))`` or ``('face', index)``.
        """
        if p in self._out or p in self.isolated:
            return 'vertex', p
        for e in self._edges_near(p.x):
            if on_segment(p, *e):
                return 'edge', e
        return 'face', self._smallest_face_containing(p)

    def face_sample(self, index, avoid_x=(), avoid_y=()):
        """
        A point strictly inside face ``index``.  A horizontal line is placed
        in the widest gap between the face's vertex heights (and ``avoid_y``),
        and the point is centred in the widest stretch of that line inside the
        face, away from every value in ``avoid_x``.

        """
        face = self.faces[index]
        if face.area <= 0:
            raise ZeroArea('face {} has no interior'.format(index))
        ys = set()
        for a, b in face.edges:
            ys.add(a.y)
            ys.add(b.y)
        ys.update(p.y for p in face.points)
        lo, hi = min(ys), max(ys)
        ys.update(y for y in avoid_y if lo < y < hi)
        y0 = _widest_gap_midpoint(sorted(ys))

        crossings = []
        for e in face.edges:
            a, b = e
            if (a.y > y0) != (b.y > y0):
                x = a.x + (y0 - a.y) * (b.x - a.x) / (b.y - a.y)
                crossings.append((x, e not in face.slits))
        crossings.sort()
        inside = False
        best = None
        for (x, toggles), (x_next, _) in pairwise(crossings):
            if toggles:
                inside = not inside
            if inside and x < x_next and (best is None or x_next - x > best[1] - best[0]):
                best = (x, x_next)
        if best is None:
            raise ZeroArea('no interior found for face {}'.format(index))
        xs = sorted({best[0], best[1], *(x for x in avoid_x if best[0] < x < best[1])})
        return RPoint(_widest_gap_midpoint(xs), y0)


def _widest_gap_midpoint(values):
    lo, hi = max(pairwise(values), key=lambda pair: pair[1] - pair[0])
    return (lo + hi) / 2


class PolygonSet:
    """
    An exact planar region: the included faces, edges and vertices of an
    :class:`Arrangement`.  Instances are immutable; build them with
    :func:`convex_hull`, :func:`box`, :func:`empty` and the boolean
    operations.

    """

    def __init__(self, arrangement, face_in=(), edge_in=(), vertex_in=()):
        object.__setattr__(self, 'arrangement', arrangement)
        object.__setattr__(self, 'face_in', frozenset(face_in))
        object.__setattr__(self, 'edge_in', frozenset(edge_in))
        object.__setattr__(self, 'vertex_in', frozenset(vertex_in))
        object.__setattr__(self, 'degenerate', False)
        object.__setattr__(self, '_faces', None)

    def __setattr__(self, name, value):
        raise MeshStateError('PolygonSet is immutable; cannot set {!r}'.format(name))

    def __eq__(self, other):
        if not isinstance(other, PolygonSet):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def _key(self):
        faces = frozenset(min(self.arrangement.faces[f].outer) for f in self.face_in)
        return (self.arrangement.edges, self.arrangement.vertices, faces, self.edge_in, self.vertex_in)

    def __repr__(self):
        return '<PolygonSet faces={} edges={} vertices={} area={}>'.format(
            len(self.face_in), len(self.edge_in), len(self.vertex_in), self.area)

    def __bool__(self):
        return bool(self.face_in or self.edge_in or self.vertex_in)

    @property
    def area(self):
        return sum((self.arrangement.faces[f].area for f in self.face_in), Fraction(0))

    def contains(self, p):
        kind, key = self.arrangement.feature_at(p)
        if kind == 'vertex':
            return key in self.vertex_in
        if kind == 'edge':
            return key in self.edge_in
        return key in self.face_in

    def closure_contains(self, p):
        arr = self.arrangement
        kind, key = arr.feature_at(p)
        if kind == 'face':
            return key in self.face_in
        if kind == 'edge':
            return key in self.edge_in or any(f in self.face_in for f in arr.edge_faces(key))
        return (key in self.vertex_in
                or any(e in self.edge_in for e in arr.vertex_edges(key))
                or any(f in self.face_in for f in arr.vertex_faces(key)))

    def segments(self):
        return self.arrangement.edges

    def intervals_on_line(self, axis, value):
        """
        Maximal intervals of the line ``x = value`` (``axis`` 0) or
        ``y = value`` (``axis`` 1) covered by edges in the closure of the set.
        Only edges lying on the line are considered.
        """
        other = 1 - axis
        covered = []
        for e in self.arrangement.edges:
            a, b = e
            if a[axis] != value or b[axis] != value:
                continue
            if e in self.edge_in or any(f in self.face_in for f in self.arrangement.edge_faces(e)):
                covered.append((a[other], b[other]))
        return merge_intervals(covered)


def merge_intervals(intervals):
    merged = []
    for lo, hi in sorted((min(i), max(i)) for i in intervals):
        if merged and lo <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(hi, merged[-1][1]))
        else:
            merged.append((lo, hi))
    return merged


def subtract_intervals(intervals, removed):
    result = []
    for lo, hi in merge_intervals(intervals):
        pieces = [(lo, hi)]
        for rlo, rhi in removed:
            next_pieces = []
            for plo, phi in pieces:
                if rhi <= plo or rlo >= phi:
                    next_pieces.append((plo, phi))
                    continue
                if plo < rlo:
                    next_pieces.append((plo, rlo))
                if rhi < phi:
                    next_pieces.append((rhi, phi))
            pieces = next_pieces
        result.extend(pieces)
    return result


def overlap_length(first, second):
    total = Fraction(0)
    for alo, ahi in first:
        for blo, bhi in second:
            lo, hi = max(alo, blo), min(ahi, bhi)
            if hi > lo:
                total += hi - lo
    return total


class Face:
    """
    One maximal open face of a :class:`PolygonSet`.

    Attributes:
        index: position in :func:`faces` of the owning set.
        outer: outer boundary ring, counter-clockwise.
        holes: rings of the components lying inside the face, clockwise.
        area: exact area.
        neighbours: indices of faces of the same set separated from this one
            by an excluded edge.

    """

    def __init__(self, owner, fid, index):
        record = owner.arrangement.faces[fid]
        self.owner = owner
        self.fid = fid
        self.index = index
        self.outer = tuple(record.outer)
        self.holes = tuple(tuple(h) for h in record.holes)
        self.area = record.area
        self.neighbours = ()

    def __repr__(self):
        return '<Face {} area={} vertices={}>'.format(self.index, self.area, len(self.outer))

    def boundary_on_line(self, axis, value):
        """Intervals of this face's boundary that lie on an axis-parallel line."""
        other = 1 - axis
        record = self.owner.arrangement.faces[self.fid]
        spans = [(a[other], b[other]) for a, b in record.edges - record.slits
                 if a[axis] == value and b[axis] == value]
        return merge_intervals(spans)


def faces(s):
    """
    The included faces of ``s`` as :class:`Face` objects, ordered by their
    lowest-leftmost vertex.  Their areas add up to ``area(s)``.
    """
    if s._faces is None:
        arr = s.arrangement
        fids = sorted(s.face_in, key=lambda f: min(arr.faces[f].outer))
        result = [Face(s, fid, k) for k, fid in enumerate(fids)]
        index_of = {fid: k for k, fid in enumerate(fids)}
        neighbours = {k: set() for k in range(len(result))}
        for e in arr.edges:
            if e in s.edge_in:
                continue
            f, g = arr.edge_faces(e)
            if f != g and f in index_of and g in index_of:
                neighbours[index_of[f]].add(index_of[g])
                neighbours[index_of[g]].add(index_of[f])
        for face in result:
            face.neighbours = tuple(sorted(neighbours[face.index]))
        object.__setattr__(s, '_faces', result)
    return list(s._faces)


def representative_point(face, avoid_x=(), avoid_y=()):
    """
    A point strictly inside ``face`` whose x is not in ``avoid_x`` and whose y
    is not in ``avoid_y``.  Raises :class:`~reebcomp.ZeroArea` for a face
    without interior.
    """
    return face.owner.arrangement.face_sample(face.fid, avoid_x, avoid_y)


def locate(s, p):
    """
    The :class:`Face` of ``s`` containing ``p``, or ``None`` when ``p`` is not
    in ``s``.  A point on an included edge or vertex reports an adjacent
    included face.
    """
    arr = s.arrangement
    kind, key = arr.feature_at(p)
    if kind == 'face':
        candidates = [key] if key in s.face_in else []
    elif kind == 'edge':
        candidates = sorted(f for f in arr.edge_faces(key) if f in s.face_in) if key in s.edge_in else []
    else:
        candidates = sorted(f for f in arr.vertex_faces(key) if f in s.face_in) if key in s.vertex_in else []
    if not candidates:
        return None
    by_fid = {face.fid: face for face in faces(s)}
    return by_fid[candidates[0]]


def empty():
    return PolygonSet(Arrangement())


def _hull_ring(pts):
    # monotone chain over sorted distinct points: 1 point, 2 ends of a segment, or a ccw ring
    if len(pts) == 1:
        return pts

    def chain(seq):
        hull = []
        for p in seq:
            while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
                hull.pop()
            hull.append(p)
        return hull

    ring = chain(pts)[:-1] + chain(reversed(pts))[:-1]
    if len(ring) < 3:
        return [pts[0], pts[-1]]
    return ring


def convex_hull(points):
    """
    Exact convex hull (monotone chain).  Collinear or coincident input gives a
    segment or a single point; such sets have zero area and are flagged
    ``degenerate``.
    """
    pts = sorted(set(RPoint(*p) for p in points))
    if not pts:
        raise ValueError('convex_hull needs at least one point')
    ring = _hull_ring(pts)
    if len(ring) == 1:
        result = PolygonSet(Arrangement(points=ring), vertex_in=ring)
        object.__setattr__(result, 'degenerate', True)
        return result
    if len(ring) == 2:
        arr = Arrangement(segments=[tuple(ring)])
        result = PolygonSet(arr, edge_in=arr.edges, vertex_in=arr.vertices)
        object.__setattr__(result, 'degenerate', True)
        return result
    arr = Arrangement(segments=list(pairwise(ring + ring[:1])))
    return PolygonSet(arr, face_in=range(len(arr.faces)), edge_in=arr.edges, vertex_in=arr.vertices)


def _piece_contains(piece, p):
    if len(piece) == 1:
        return p == piece[0]
    if len(piece) == 2:
        return on_segment(p, *piece)
    return all(_cross(a, b, p) >= 0 for a, b in pairwise(piece + piece[:1]))


class _PieceIndex:
    """Closed convex pieces bucketed on a square grid, for point membership."""

    def __init__(self, pieces):
        self.pieces = pieces
        x0, y0, x1, y1 = _bbox([p for piece in pieces for p in piece])
        self.origin = (x0, y0)
        per_side = max(1, math.isqrt(len(pieces)))
        self.cell = max(x1 - x0, y1 - y0, Fraction(1)) / per_side
        self.buckets = {}
        for k, piece in enumerate(pieces):
            bx0, by0, bx1, by1 = _bbox(piece)
            (i0, j0), (i1, j1) = self._bucket(bx0, by0), self._bucket(bx1, by1)
            for i in range(i0, i1 + 1):
                for j in range(j0, j1 + 1):
                    self.buckets.setdefault((i, j), []).append(k)

    def _bucket(self, x, y):
        return math.floor((x - self.origin[0]) / self.cell), math.floor((y - self.origin[1]) / self.cell)

    def contains(self, p):
        return any(_piece_contains(self.pieces[k], p) for k in self.buckets.get(self._bucket(p.x, p.y), ()))


def union_of_hulls(point_sets):
    """
    The union of the convex hulls of many point sets, in one overlay.  A hull
    edge that two hulls border from opposite sides is interior to the union
    and is left out of the overlay.  Equal to folding :func:`union` over the
    hulls.
    """
    pieces = []
    seen = set()
    for points in point_sets:
        ring = _hull_ring(sorted(set(RPoint(*p) for p in points)))
        if tuple(ring) not in seen:
            seen.add(tuple(ring))
            pieces.append(ring)
    if not pieces:
        return empty()
    sides = {}
    loose = []
    for ring in pieces:
        if len(ring) == 1:
            loose.append(ring[0])
        elif len(ring) == 2:
            sides.setdefault(tuple(ring), set()).add(0)
        else:
            # the interior lies left of every ring edge
            for a, b in pairwise(ring + ring[:1]):
                sides.setdefault((a, b) if a < b else (b, a), set()).add(1 if a < b else -1)
    segments = [e for e, s in sides.items() if not {1, -1} <= s]
    index = _PieceIndex(pieces)
    overlay = Arrangement(segments, loose)
    return _normalize(_classify(overlay, index.contains), index.contains)


def box(x0, y0, x1, y1):
    """The closed axis-parallel rectangle ``[x0, x1] × [y0, y1]``."""
    return convex_hull([RPoint(x0, y0), RPoint(x1, y0), RPoint(x1, y1), RPoint(x0, y1)])


def _samples(arr):
    for fid in range(len(arr.faces)):
        yield 'face', fid, arr.face_sample(fid)
    for e in arr.edges:
        a, b = e
        yield 'edge', e, RPoint((a.x + b.x) / 2, (a.y + b.y) / 2)
    for v in arr.vertices:
        yield 'vertex', v, v


def _classify(arr, predicate):
    member = {'face': set(), 'edge': set(), 'vertex': set()}
    for kind, key, sample in _samples(arr):
        if predicate(sample):
            member[kind].add(key)
    return PolygonSet(arr, member['face'], member['edge'], member['vertex'])


def _normalize(raw, predicate=None):
    """Drop features that separate nothing, merge collinear chains, rebuild."""
    arr = raw.arrangement

    def face_in(f):
        return f in raw.face_in

    kept = set()
    for e in arr.edges:
        f, g = arr.edge_faces(e)
        inc = e in raw.edge_in
        if not (inc == face_in(f) == face_in(g)):
            kept.add(e)

    adj = {}
    for p, q in kept:
        adj.setdefault(p, []).append(q)
        adj.setdefault(q, []).append(p)

    loose = []
    for v in arr.vertices:
        if v in adj:
            continue
        surrounding = next(iter(arr.vertex_faces(v)))
        if (v in raw.vertex_in) != face_in(surrounding):
            loose.append(v)

    edge_in = {e: e in raw.edge_in for e in kept}

    def mergeable(v):
        nb = adj.get(v, ())
        if len(nb) != 2:
            return False
        a, b = nb
        if _cross(v, a, b) != 0:
            return False
        e1 = (a, v) if a < v else (v, a)
        e2 = (b, v) if b < v else (v, b)
        return edge_in[e1] == edge_in[e2] == (v in raw.vertex_in)

    changed = len(kept) != len(arr.edges) or len(loose) != len(arr.isolated)
    for v in sorted(adj):
        if not mergeable(v):
            continue
        a, b = adj[v]
        e1 = (a, v) if a < v else (v, a)
        e2 = (b, v) if b < v else (v, b)
        inc = edge_in.pop(e1)
        edge_in.pop(e2)
        merged = (a, b) if a < b else (b, a)
        edge_in[merged] = inc
        adj[a][adj[a].index(v)] = b
        adj[b][adj[b].index(v)] = a
        del adj[v]
        changed = True
    if not changed:
        return raw
    rebuilt = Arrangement(segments=list(edge_in), points=loose)
    return _classify(rebuilt, predicate or raw.contains)


def _combine(a, b, op):
    segments = list(a.arrangement.edges) + list(b.arrangement.edges)
    points = list(a.arrangement.isolated) + list(b.arrangement.isolated)
    overlay = Arrangement(segments, points)
    return _normalize(_classify(overlay, lambda p: op(a, b, p)))


def union(a, b):
    if not a:
        return b
    if not b:
        return a
    return _combine(a, b, lambda a, b, p: a.contains(p) or b.contains(p))


def intersect(a, b):
    if not a or not b:
        return empty()
    return _combine(a, b, lambda a, b, p: a.contains(p) and b.contains(p))


def subtract(a, b):
    """
    ``a`` minus the closure of ``b``.  Subtracting a zero-area set removes no
    area but still cuts ``a`` along it.
    """
    if not a or not b:
        return a
    return _combine(a, b, lambda a, b, p: a.contains(p) and not b.closure_contains(p))


def union_all(sets):
    """Union of many sets, merged pairwise in a balanced tree."""
    sets = [s for s in sets if s]
    if not sets:
        return empty()
    while len(sets) > 1:
        merged = [union(x, y) for x, y in zip(sets[::2], sets[1::2])]
        if len(sets) % 2:
            merged.append(sets[-1])
        sets = merged
    return sets[0]


def area(s):
    return s.area
