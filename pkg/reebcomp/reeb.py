"""
Reeb graphs of one piecewise-linear field.

:func:`compute_reeb_graph` sweeps the vertices in simulation-of-simplicity
order and tracks the *active* edges, the edges whose lower endpoint has been
swept and whose upper endpoint has not.  Every active edge belongs to exactly
one contour, and so to exactly one open arc.  A node is emitted only when the
number of contours changes (or, optionally, when a contour starts or stops
touching the domain boundary).

Arcs remember which full-simplices their contours pass through; see
:func:`assign_simplices`.

"""

import enum
import logging
from collections import namedtuple

from ._unionfind import DisjointSet
from .exceptions import ComputationError, OutsideArc
from .options import to_rational


logger = logging.getLogger(__name__)


class NodeKind(enum.Enum):
    MIN = 'min'
    MAX = 'max'
    MERGE = 'merge'
    SPLIT = 'split'
    BOUNDARY_EVENT = 'boundary_event'
    SUBDIVISION = 'subdivision'


Node = namedtuple('Node', 'id value vertex kind')
Arc = namedtuple('Arc', 'id lower upper simplices')
Arc.__doc__ = 'An arc from node ``lower`` to node ``upper`` and the simplex ids assigned to it.'

ArcRef = namedtuple('ArcRef', 'side arc')
ArcRef.__doc__ = 'Names arc ``arc`` of the graph of field ``side`` (1 or 2).'


class ReebGraph:
    """
    The Reeb graph of one field of a mesh.  Graphs are never modified in
    place; :func:`assign_simplices`, :func:`subdivide_arc` and the
    simplification functions return new graphs.

    Attributes:
        mesh: the :class:`~reebcomp.SimplicialMesh` the graph was built from.
        field: 1 or 2.
        face_dim: dimension of the faces the arcs' simplex ids refer to.
        vertex_map: vertex index -> ``('node', id)`` or ``('arc', id)``.
        cancellations: the arc cancellations that produced this graph, oldest
            first; empty for an unsimplified graph.

    """

    def __init__(self, mesh, field, nodes, arcs, vertex_map, edge_arcs, face_dim=None, cancellations=()):
        self.mesh = mesh
        self.field = field
        self._nodes = {n.id: n for n in nodes}
        self._arcs = {a.id: a for a in arcs}
        self.vertex_map = dict(vertex_map)
        self._edge_arcs = tuple(tuple(x) for x in edge_arcs)
        self.face_dim = mesh.dim if face_dim is None else face_dim
        self.cancellations = tuple(cancellations)
        incident = {n: [] for n in self._nodes}
        for a in self._arcs.values():
            incident[a.lower].append(a.id)
            incident[a.upper].append(a.id)
        self._incident = {n: tuple(sorted(ids)) for n, ids in incident.items()}

    def __repr__(self):
        return '<ReebGraph field={} nodes={} arcs={}>'.format(self.field, len(self._nodes), len(self._arcs))

    def _derive(self, nodes=None, arcs=None, vertex_map=None, edge_arcs=None, face_dim=None, cancellations=None):
        return ReebGraph(
            self.mesh, self.field,
            self.nodes if nodes is None else nodes,
            self.arcs if arcs is None else arcs,
            self.vertex_map if vertex_map is None else vertex_map,
            self._edge_arcs if edge_arcs is None else edge_arcs,
            self.face_dim if face_dim is None else face_dim,
            self.cancellations if cancellations is None else cancellations,
        )

    @property
    def nodes(self):
        return [self._nodes[k] for k in sorted(self._nodes)]

    @property
    def arcs(self):
        return [self._arcs[k] for k in sorted(self._arcs)]

    def node(self, node_id):
        return self._nodes[node_id]

    def arc(self, arc):
        return self._arcs[getattr(arc, 'arc', arc)]

    def ref(self, arc_id):
        return ArcRef(self.field, arc_id)

    def has_arc(self, arc):
        return getattr(arc, 'arc', arc) in self._arcs

    def interval(self, arc):
        a = self.arc(arc)
        return self._nodes[a.lower].value, self._nodes[a.upper].value

    def incident(self, node_id):
        return self._incident[node_id]

    def degree(self, node_id):
        return len(self._incident[node_id])

    def edge_arcs(self, edge_id):
        return self._edge_arcs[edge_id]

    def arcs_at(self, value):
        """Ids of the arcs whose open value interval contains ``value``."""
        value = to_rational(value)
        return [a.id for a in self.arcs if self._nodes[a.lower].value < value < self._nodes[a.upper].value]

    def leaf_arcs(self):
        """Arcs with an endpoint of degree one, in id order."""
        return [a.id for a in self.arcs if self.degree(a.lower) == 1 or self.degree(a.upper) == 1]

    def branch_count(self):
        """Number of branches of a branch decomposition: leaves minus one, per component."""
        ds = DisjointSet(self._nodes)
        for a in self._arcs.values():
            ds.union(a.lower, a.upper)
        leaves = {}
        for n in self._nodes:
            if self.degree(n) == 1:
                root = ds.find(n)
                leaves[root] = leaves.get(root, 0) + 1
        return sum(max(count - 1, 0) for count in leaves.values())

    def fresh_ids(self):
        """The next unused node id and arc id.  Ids of cancelled nodes and arcs stay retired."""
        node_ids = set(self._nodes)
        arc_ids = set(self._arcs)
        for step in self.cancellations:
            node_ids.update((step.leaf, step.saddle))
            arc_ids.update((step.removed, step.kept_below, step.kept_above))
        return max(node_ids) + 1, max(arc_ids) + 1

    def kind_count(self, kind):
        return sum(1 for n in self._nodes.values() if n.kind is kind)

    def cell_vertices(self, sid):
        """Vertex tuple of simplex (or face) ``sid`` as used by the arc assignment."""
        cx = self.mesh.complex
        if self.face_dim == cx.dim:
            return cx.simplices[sid]
        return cx.faces(self.face_dim)[sid]

    def span(self, sid):
        values = self.mesh.complex.values[self.field - 1]
        vals = [values[v] for v in self.cell_vertices(sid)]
        return min(vals), max(vals)


def compute_reeb_graph(mesh, order, boundary_events=False):
    """
    Compute the Reeb graph of field ``order.field`` by a sweep in ``order``.

    Args:
        mesh: a :class:`~reebcomp.SimplicialMesh`.
        order: the :class:`~reebcomp.SoSOrder` of the field to sweep.
        boundary_events (bool): also emit ``BOUNDARY_EVENT`` nodes where a
            contour starts or stops touching the domain boundary.

    Node and arc ids follow the sweep.  The result has no simplex
    assignment yet; pass it to :func:`assign_simplices`.

    """
    cx = mesh.complex
    values = cx.values[order.field - 1]
    sweep = order.sorted_vertices(mesh)
    rank = {v: i for i, v in enumerate(sweep)}

    edge_arcs = [[] for _ in cx.edges]
    arc_edges = {}
    arc_of_edge = {}
    nodes = []
    arc_lower = {}
    arc_upper = {}
    vertex_map = {}

    def other(e, v):
        a, b = cx.edges[e]
        return b if a == v else a

    def local_components(edge_ids):
        # components of v's edges, joined through shared simplices
        ds = DisjointSet(edge_ids)
        members = set(edge_ids)
        for e in edge_ids:
            for sid in cx.edge_simplices[e]:
                for f in cx.simplex_edges[sid]:
                    if f != e and f in members:
                        ds.union(e, f)
        return len(ds.groups())

    def open_arc(node_id, edges):
        arc_id = len(arc_lower)
        arc_lower[arc_id] = node_id
        arc_edges[arc_id] = set(edges)
        for e in edges:
            arc_of_edge[e] = arc_id
            edge_arcs[e].append(arc_id)
        return arc_id

    def close_arc(arc_id, node_id):
        arc_upper[arc_id] = node_id
        for e in arc_edges.pop(arc_id):
            arc_of_edge.pop(e, None)

    def touches_boundary(edges):
        return any(e in cx.boundary_edges for e in edges)

    for v in sweep:
        incident = cx.vertex_edges[v]
        if not incident:
            continue
        lower = [e for e in incident if rank[other(e, v)] < rank[v]]
        upper = [e for e in incident if rank[other(e, v)] > rank[v]]
        affected = sorted({arc_of_edge[e] for e in lower})

        if (len(affected) == 1 and lower and upper
                and local_components(lower) == 1 and local_components(upper) == 1):
            arc_id = affected[0]
            edges = arc_edges[arc_id]
            before = boundary_events and touches_boundary(edges)
            edges.difference_update(lower)
            for e in lower:
                del arc_of_edge[e]
            edges.update(upper)
            for e in upper:
                arc_of_edge[e] = arc_id
                edge_arcs[e].append(arc_id)
            if boundary_events and v < cx.nreal and before != touches_boundary(edges):
                node_id = len(nodes)
                nodes.append(Node(node_id, values[v], v, NodeKind.BOUNDARY_EVENT))
                vertex_map[v] = ('node', node_id)
                kept = set(edges)
                for e in upper:
                    edge_arcs[e].pop()
                close_arc(arc_id, node_id)
                new_id = open_arc(node_id, ())
                arc_edges[new_id] = kept
                for e in kept:
                    arc_of_edge[e] = new_id
                    edge_arcs[e].append(new_id)
            else:
                vertex_map[v] = ('arc', arc_id)
            continue

        pool = set()
        for arc_id in affected:
            pool |= arc_edges[arc_id]
        pool.difference_update(lower)
        pool.update(upper)
        ds = DisjointSet(pool)
        for e in pool:
            for sid in cx.edge_simplices[e]:
                for f in cx.simplex_edges[sid]:
                    if f != e and f in pool:
                        ds.union(e, f)
        groups = ds.groups()
        k, m = len(affected), len(groups)

        if k == 1 and m == 1:
            arc_id = affected[0]
            for e in lower:
                del arc_of_edge[e]
            arc_edges[arc_id] = set(pool)
            for e in upper:
                arc_of_edge[e] = arc_id
                edge_arcs[e].append(arc_id)
            vertex_map[v] = ('arc', arc_id)
            continue

        if k == 0:
            kind = NodeKind.MIN
        elif m == 0:
            kind = NodeKind.MAX
        elif k < m:
            kind = NodeKind.SPLIT
        else:
            kind = NodeKind.MERGE
        node_id = len(nodes)
        nodes.append(Node(node_id, values[v], v, kind))
        vertex_map[v] = ('node', node_id)
        for arc_id in affected:
            close_arc(arc_id, node_id)
        # continuing edges keep the closed arc in their history and add the new one
        for group in groups:
            open_arc(node_id, group)
        logger.debug('field {}: {} node {} at vertex {} (value {}), {} -> {} contours'.format(
            order.field, kind.name, node_id, v, values[v], k, m))

    if arc_edges:
        raise ComputationError('sweep ended with {} open arcs'.format(len(arc_edges)))
    arcs = [Arc(a, arc_lower[a], arc_upper[a], frozenset()) for a in sorted(arc_lower)]
    graph = ReebGraph(mesh, order.field, nodes, arcs, vertex_map, edge_arcs)
    logger.info('field {}: Reeb graph with {} nodes and {} arcs'.format(order.field, len(nodes), len(arcs)))
    return graph


def assign_simplices(mesh, graph, face_dim=None):
    """
    Assign every full-simplex (or every ``face_dim``-face) to the arcs whose
    contours pass through it.  Because the field is linear on a simplex, the
    arcs of one simplex form a monotone path; it is read off the arcs that
    each of the simplex's edges was active on.

    """
    cx = mesh.complex
    face_dim = cx.dim if face_dim is None else face_dim
    if face_dim == cx.dim:
        cells = cx.simplices
        cell_edges = cx.simplex_edges
    else:
        cells = cx.faces(face_dim)
        cell_edges = [[cx.edge_index[(s[i], s[j])] for i in range(len(s)) for j in range(i + 1, len(s))]
                      for s in cells]
    assigned = {a.id: set() for a in graph.arcs}
    for sid, edges in enumerate(cell_edges):
        found = set()
        for e in edges:
            found.update(graph.edge_arcs(e))
        if not found:
            raise ComputationError('simplex {} {} is not assigned to any arc'.format(sid, cells[sid]))
        for arc_id in found:
            assigned[arc_id].add(sid)
    arcs = [a._replace(simplices=frozenset(assigned[a.id])) for a in graph.arcs]
    return graph._derive(arcs=arcs, face_dim=face_dim)


def subdivide_arc(graph, arc, value):
    """
    Split ``arc`` at ``value`` with a new ``SUBDIVISION`` node.  The lower
    half keeps the arc id; the upper half gets a fresh one.  Raises
    :class:`~reebcomp.OutsideArc` unless ``value`` is strictly inside the
    arc's value interval.

    """
    value = to_rational(value)
    old = graph.arc(arc)
    lo, hi = graph.interval(old.id)
    if not lo < value < hi:
        raise OutsideArc('value {} is not inside arc {} ({}, {})'.format(value, old.id, lo, hi))
    node_id, new_id = graph.fresh_ids()
    lower_simplices, upper_simplices = set(), set()
    for sid in old.simplices:
        smin, smax = graph.span(sid)
        if smin < value or smin == smax == value:
            lower_simplices.add(sid)
        if smax > value or smin == smax == value:
            upper_simplices.add(sid)
    nodes = graph.nodes + [Node(node_id, value, None, NodeKind.SUBDIVISION)]
    arcs = [a for a in graph.arcs if a.id != old.id]
    arcs.append(Arc(old.id, old.lower, node_id, frozenset(lower_simplices)))
    arcs.append(Arc(new_id, node_id, old.upper, frozenset(upper_simplices)))

    cx = graph.mesh.complex
    values = cx.values[graph.field - 1]
    edge_arcs = []
    for e, seq in enumerate(graph._edge_arcs):
        if old.id not in seq:
            edge_arcs.append(seq)
            continue
        a, b = cx.edges[e]
        fa, fb = sorted((values[a], values[b]))
        parts = []
        if fa < value:
            parts.append(old.id)
        if fb > value:
            parts.append(new_id)
        i = seq.index(old.id)
        edge_arcs.append(seq[:i] + tuple(parts) + seq[i + 1:])
    vertex_map = dict(graph.vertex_map)
    for v, where in graph.vertex_map.items():
        if where == ('arc', old.id) and values[v] > value:
            vertex_map[v] = ('arc', new_id)
    logger.debug('subdivided arc {} of field {} at {}'.format(old.id, graph.field, value))
    return graph._derive(nodes=nodes, arcs=arcs, vertex_map=vertex_map, edge_arcs=edge_arcs)


def check_graph(graph):
    """
    Check the structural invariants of a graph: arcs go up in value, the
    arcs below and above each node match its kind, and assigned simplices
    form monotone paths.  Raises :class:`~reebcomp.ComputationError` on the
    first violation.
    """
    def key(node):
        return (node.value, -1 if node.vertex is None else node.vertex)

    down = {n.id: 0 for n in graph.nodes}
    up = dict(down)
    for a in graph.arcs:
        lower, upper = graph.node(a.lower), graph.node(a.upper)
        if lower.vertex is None or upper.vertex is None:
            rising = lower.value < upper.value
        else:
            rising = key(lower) < key(upper)
        if not rising:
            raise ComputationError('arc {} does not go up: {} -> {}'.format(a.id, lower, upper))
        up[a.lower] += 1
        down[a.upper] += 1
    for n in graph.nodes:
        d, u = down[n.id], up[n.id]
        if n.kind is NodeKind.MIN:
            ok = d == 0 and u >= 1
        elif n.kind is NodeKind.MAX:
            ok = u == 0 and d >= 1
        elif n.kind is NodeKind.MERGE:
            # a simple merge is two arcs in and one out
            ok = d >= 2 and 1 <= u <= d
        elif n.kind is NodeKind.SPLIT:
            ok = u >= 2 and 1 <= d < u
        else:
            ok = d == u == 1
        if not ok:
            raise ComputationError('{} node {} has {} arcs below and {} above'.format(n.kind.name, n.id, d, u))
    by_simplex = {}
    for a in graph.arcs:
        for sid in a.simplices:
            by_simplex.setdefault(sid, set()).add(a.id)
    for sid, arc_ids in by_simplex.items():
        ds = DisjointSet(arc_ids)
        for x in arc_ids:
            ax = graph.arc(x)
            for y in arc_ids:
                if x < y and {ax.lower, ax.upper} & {graph.arc(y).lower, graph.arc(y).upper}:
                    ds.union(x, y)
        if len(ds.groups()) != 1:
            raise ComputationError('simplex {} is assigned to disconnected arcs {}'.format(sid, sorted(arc_ids)))
