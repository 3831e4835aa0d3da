"""
Triangulated domains carrying two scalar fields.

A :class:`SimplicialMesh` is immutable once built.  All coordinates and field
values are exact :class:`fractions.Fraction` instances; decimals read from an
RCM file are converted losslessly, so everything downstream can use exact
arithmetic.

Meshes may be *compactified*: every connected component with boundary is
closed off by a virtual cone vertex (the point at infinity) whose field values
are the global maxima of the fields.  The builtin analytic fields are defined
on the whole plane and grow without bound, so the builtin grids are
compactified; their contours then behave like contours in the plane instead of
breaking up where they leave the truncated square.

"""

import enum
import itertools
import logging
import os
from fractions import Fraction

from ._unionfind import DisjointSet
from .exceptions import MeshStateError, ParseError, ValidationError
from .options import ChoiceOption, IntOption, RationalOption, format_rational, to_rational


logger = logging.getLogger(__name__)

__all__ = '''
SimplicialMesh
SoSOrder
Comparison
BuiltinField
BUILTIN_FIELDS
build_builtin
load_mesh
save_mesh
parse_mesh
vertex_compare
mesh_components
boundary_facets
'''.split()


class Comparison(enum.Enum):
    LESS = -1
    GREATER = 1


class SoSOrder:
    """
    The symbolic-perturbation order on the vertices of a mesh for one field:
    ``u < v`` iff ``(f(u), u) < (f(v), v)`` lexicographically.  Ties in the
    field value are broken by vertex index, so no two vertices compare equal.

    Args:
        field (int): 1 or 2, selecting which field of the mesh is ordered.

    """

    def __init__(self, field):
        if field not in (1, 2):
            raise ValueError('field must be 1 or 2, not {!r}'.format(field))
        self.field = field

    def __repr__(self):
        return 'SoSOrder({})'.format(self.field)

    def __eq__(self, other):
        return isinstance(other, SoSOrder) and other.field == self.field

    def __hash__(self):
        return hash(('SoSOrder', self.field))

    def key(self, mesh, v):
        return (mesh.complex.values[self.field - 1][v], v)

    def sorted_vertices(self, mesh):
        values = mesh.complex.values[self.field - 1]
        return sorted(range(mesh.complex.nverts), key=lambda v: (values[v], v))


def vertex_compare(mesh, order, u, v):
    """Compare two distinct vertices under ``order``.  Never returns "equal"."""
    if u == v:
        raise ValueError('vertex_compare needs two distinct vertices, got {} twice'.format(u))
    if order.key(mesh, u) < order.key(mesh, v):
        return Comparison.LESS
    return Comparison.GREATER


class _Complex:
    """
    Combinatorial view of a mesh used by every algorithm: vertex values
    (including any cone vertices), full simplices (real ones first, then the
    cone simplices), and the edge incidence tables.

    """

    def __init__(self, mesh):
        self.dim = mesh.dim
        self.nreal = len(mesh.coords)
        simplices = [tuple(sorted(s)) for s in mesh.simplices]
        self.nreal_simplices = len(simplices)

        facet_count = {}
        for s in simplices:
            for facet in itertools.combinations(s, self.dim):
                facet_count[facet] = facet_count.get(facet, 0) + 1
        self.boundary_facets = tuple(sorted(f for f, n in facet_count.items() if n == 1))

        values = [list(mesh.f1), list(mesh.f2)]
        self.apexes = ()
        if mesh.compactified and self.boundary_facets:
            top = (max(mesh.f1), max(mesh.f2))
            components = mesh_components(mesh)
            component_of = {}
            for k, comp in enumerate(components):
                for sid in comp:
                    component_of[sid] = k
            facet_owner = {}
            for sid, s in enumerate(simplices):
                for facet in itertools.combinations(s, self.dim):
                    if facet_count[facet] == 1:
                        facet_owner[facet] = component_of[sid]
            apex_of = {}
            for facet in self.boundary_facets:
                k = facet_owner[facet]
                if k not in apex_of:
                    apex_of[k] = self.nreal + len(apex_of)
                    values[0].append(top[0])
                    values[1].append(top[1])
                simplices.append(facet + (apex_of[k],))
            self.apexes = tuple(sorted(apex_of.values()))
        self.values = (tuple(values[0]), tuple(values[1]))
        self.nverts = len(self.values[0])
        self.simplices = tuple(simplices)

        edge_index = {}
        simplex_edges = []
        for s in self.simplices:
            ids = []
            for pair in itertools.combinations(s, 2):
                if pair not in edge_index:
                    edge_index[pair] = len(edge_index)
                ids.append(edge_index[pair])
            simplex_edges.append(tuple(ids))
        self.edge_index = edge_index
        self.edges = tuple(edge_index)
        self.simplex_edges = tuple(simplex_edges)

        vertex_edges = [[] for _ in range(self.nverts)]
        for eid, (a, b) in enumerate(self.edges):
            vertex_edges[a].append(eid)
            vertex_edges[b].append(eid)
        self.vertex_edges = tuple(tuple(v) for v in vertex_edges)

        edge_simplices = [[] for _ in self.edges]
        for sid, ids in enumerate(self.simplex_edges):
            for eid in ids:
                edge_simplices[eid].append(sid)
        self.edge_simplices = tuple(tuple(e) for e in edge_simplices)

        boundary_edges = set()
        for facet in self.boundary_facets:
            for pair in itertools.combinations(facet, 2):
                boundary_edges.add(edge_index[pair])
        self.boundary_edges = frozenset(boundary_edges)
        self._cache = {self.dim: self.simplices}

    def is_virtual(self, v):
        return v >= self.nreal

    def faces(self, d):
        """The distinct ``d``-faces of the complex, sorted, as vertex tuples."""
        if d not in self._cache:
            if not 2 <= d <= self.dim:
                raise ValueError('face dimension must be between 2 and {}'.format(self.dim))
            found = set()
            for s in self.simplices:
                found.update(itertools.combinations(s, d + 1))
            self._cache[d] = tuple(sorted(found))
        return self._cache[d]

    def level_values(self, field):
        """The distinct vertex values of field ``field``, as a frozenset."""
        key = ('levels', field)
        if key not in self._cache:
            self._cache[key] = frozenset(self.values[field - 1])
        return self._cache[key]


class SimplicialMesh:
    """
    A triangulated domain with two piecewise-linear scalar fields.

    Args:
        dim (int): 2 or 3.
        coords: one sequence of ``dim`` numbers per vertex.
        f1: the first field, one value per vertex.
        f2: the second field, one value per vertex.
        simplices: the full simplices, each a sequence of ``dim + 1`` distinct
            zero-based vertex indices.
        compactified (bool): close every component with boundary by a
            virtual cone vertex at infinity.

    Numbers may be given as ints, Fractions, floats or decimal strings; they
    are stored as Fractions.  Raises :class:`~reebcomp.ValidationError` when
    an invariant does not hold.

    """

    def __init__(self, dim, coords, f1, f2, simplices, *, compactified=False):
        if dim not in (2, 3):
            raise ValidationError('dim must be 2 or 3, not {!r}'.format(dim))
        try:
            coords = tuple(tuple(to_rational(c) for c in p) for p in coords)
            f1 = tuple(to_rational(v) for v in f1)
            f2 = tuple(to_rational(v) for v in f2)
        except (TypeError, ValueError, ZeroDivisionError) as e:
            raise ValidationError('coordinates and field values must be finite numbers: {}'.format(e)) from None
        nverts = len(coords)
        if len(f1) != nverts or len(f2) != nverts:
            raise ValidationError('expected {} values per field, got {} and {}'.format(
                nverts, len(f1), len(f2)))
        for i, p in enumerate(coords):
            if len(p) != dim:
                raise ValidationError('vertex {} has {} coordinates, expected {}'.format(i, len(p), dim))
        checked = []
        for sid, s in enumerate(simplices):
            s = tuple(s)
            if len(s) != dim + 1:
                raise ValidationError('simplex {} has {} vertices, expected {}'.format(sid, len(s), dim + 1))
            for v in s:
                if isinstance(v, bool) or not isinstance(v, int) and int(v) != v:
                    raise ValidationError('simplex {} has a non-integer vertex index {!r}'.format(sid, v))
                if not 0 <= v < nverts:
                    raise ValidationError('simplex {} references vertex {}, which is out of range [0, {})'.format(
                        sid, v, nverts))
            if len(set(s)) != len(s):
                raise ValidationError('simplex {} has repeated vertices {}'.format(sid, s))
            checked.append(tuple(int(v) for v in s))
        if not checked:
            raise ValidationError('a mesh needs at least one simplex')

        object.__setattr__(self, 'dim', dim)
        object.__setattr__(self, 'coords', coords)
        object.__setattr__(self, 'f1', f1)
        object.__setattr__(self, 'f2', f2)
        object.__setattr__(self, 'simplices', tuple(checked))
        object.__setattr__(self, 'compactified', bool(compactified))
        object.__setattr__(self, '_cache', {})

    def __setattr__(self, name, value):
        raise MeshStateError('SimplicialMesh is immutable; cannot set {!r}'.format(name))

    def __repr__(self):
        return '<SimplicialMesh dim={} vertices={} simplices={}{}>'.format(
            self.dim, len(self.coords), len(self.simplices),
            ' compactified' if self.compactified else '')

    def __eq__(self, other):
        if not isinstance(other, SimplicialMesh):
            return NotImplemented
        return (self.dim, self.coords, self.f1, self.f2, self.simplices, self.compactified) == \
            (other.dim, other.coords, other.f1, other.f2, other.simplices, other.compactified)

    def __hash__(self):
        return hash((self.dim, len(self.coords), self.simplices))

    def __getstate__(self):
        return (self.dim, self.coords, self.f1, self.f2, self.simplices, self.compactified)

    def __setstate__(self, state):
        names = ('dim', 'coords', 'f1', 'f2', 'simplices', 'compactified')
        for name, value in zip(names, state):
            object.__setattr__(self, name, value)
        object.__setattr__(self, '_cache', {})

    @property
    def nverts(self):
        return len(self.coords)

    def field(self, which):
        """Values of field ``which`` (1 or 2) at the real vertices."""
        return self.f1 if which == 1 else self.f2

    @property
    def complex(self):
        if 'complex' not in self._cache:
            self._cache['complex'] = _Complex(self)
        return self._cache['complex']


def mesh_components(mesh):
    """
    Connected components of the simplex adjacency graph, where two full
    simplices are adjacent when they share a (dim-1)-face.  Returns a list of
    sorted simplex-id lists, ordered by their smallest id.

    """
    ds = DisjointSet(range(len(mesh.simplices)))
    owner = {}
    for sid, s in enumerate(mesh.simplices):
        for facet in itertools.combinations(sorted(s), mesh.dim):
            if facet in owner:
                ds.union(owner[facet], sid)
            else:
                owner[facet] = sid
    return ds.groups()


def boundary_facets(mesh):
    """The (dim-1)-faces used by exactly one full simplex, as sorted vertex tuples."""
    return mesh.complex.boundary_facets


# the analytic fields of the builtin meshes

def _diamond(x, y):
    return abs(x) + abs(y)


def _two_basins_merging_at_half(x, y):
    if x >= Fraction(1, 2):
        return abs(x - 1) + abs(y)
    return abs(x + 1) + abs(y) - 1


def _two_basins(x, y):
    if x >= 0:
        return abs(x - 1) + abs(y)
    return abs(x + 1) + abs(y)


# builtin name -> (first field, second field).  Single-field builtins store
# the same field twice.
BUILTIN_FIELDS = {
    'eq1': (_two_basins_merging_at_half, _two_basins_merging_at_half),
    'eq2': (_diamond, _two_basins),
    'eq2_f1': (_diamond, _diamond),
    'eq2_f2': (_two_basins, _two_basins),
    'diamond': (_diamond, _diamond),
    'diamond-pair': (_diamond, _diamond),
}


class BuiltinField:
    """
    Parameters of a synthesized grid mesh.

    Args:
        name (str): one of the keys of :data:`BUILTIN_FIELDS`.
        extent: half-width of the square ``[-extent, extent]²``; must be
            positive.
        resolution (int): number of grid cells per side; at least 2.

    """
    name = ChoiceOption(choices=tuple(BUILTIN_FIELDS))
    extent = RationalOption(default=Fraction(3), minimum=0, strict=True)
    resolution = IntOption(default=64, minimum=2)

    def __init__(self, name, *, extent=None, resolution=None):
        self.name = name
        self.extent = extent
        self.resolution = resolution

    def __repr__(self):
        return 'BuiltinField({!r}, extent={}, resolution={})'.format(
            self.name, self.extent, self.resolution)


def build_builtin(spec):
    """
    Sample a builtin analytic field pair on a regular grid over
    ``[-extent, extent]²``.  Each grid square is split into two triangles by
    its lower-left to upper-right diagonal; vertices are numbered row by row
    from the lower-left corner.  The result is compactified.

    """
    if isinstance(spec, str):
        spec = BuiltinField(spec)
    n = spec.resolution
    extent = spec.extent
    step = 2 * extent / n
    ticks = [-extent + i * step for i in range(n + 1)]
    first, second = BUILTIN_FIELDS[spec.name]
    coords = [(x, y) for y in ticks for x in ticks]
    f1 = [first(x, y) for x, y in coords]
    f2 = [second(x, y) for x, y in coords]
    simplices = []
    row = n + 1
    for j in range(n):
        for i in range(n):
            ll = j * row + i
            lr = ll + 1
            ul = ll + row
            ur = ul + 1
            simplices.append((ll, lr, ur))
            simplices.append((ll, ur, ul))
    logger.debug('built {} with {} vertices and {} triangles'.format(spec, len(coords), len(simplices)))
    return SimplicialMesh(2, coords, f1, f2, simplices, compactified=True)


def _meaningful_lines(lines):
    for lineno, line in enumerate(lines, 1):
        line = line.split('#', 1)[0].strip()
        if line:
            yield lineno, line.split()


def _parse_number(token, lineno, path):
    try:
        return to_rational(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError('{!r} is not a finite number'.format(token), lineno, path) from None


def _parse_index(token, lineno, path):
    try:
        return int(token)
    except ValueError:
        raise ParseError('{!r} is not a vertex index'.format(token), lineno, path) from None


def parse_mesh(lines, path=None):
    """
    Parse RCM text (an iterable of lines) into a :class:`SimplicialMesh`.

    The header is ``rcm <dim> <nverts> <nsimplices> [compactified]``,
    followed by one ``<x> <y> [<z>] <f1> <f2>`` line per vertex and one line
    of ``dim + 1`` zero-based vertex indices per simplex.  ``#`` starts a
    comment.

    """
    rows = _meaningful_lines(lines)
    try:
        lineno, header = next(rows)
    except StopIteration:
        raise ParseError('empty file; expected an "rcm" header', 1, path) from None
    if header[0] != 'rcm' or len(header) not in (4, 5):
        raise ParseError('expected "rcm <dim> <nverts> <nsimplices>", got {!r}'.format(' '.join(header)),
                         lineno, path)
    if len(header) == 5 and header[4] != 'compactified':
        raise ParseError('unknown header flag {!r}'.format(header[4]), lineno, path)
    try:
        dim, nverts, nsimplices = (int(t) for t in header[1:4])
    except ValueError:
        raise ParseError('header counts must be integers', lineno, path) from None
    if dim not in (2, 3):
        raise ParseError('dimension must be 2 or 3, not {}'.format(dim), lineno, path)
    if nverts < 0 or nsimplices < 0:
        raise ParseError('header counts must not be negative', lineno, path)

    coords, f1, f2, simplices = [], [], [], []
    last = lineno
    for _ in range(nverts):
        try:
            lineno, tokens = next(rows)
        except StopIteration:
            raise ParseError('expected {} vertices, found {}'.format(nverts, len(coords)), last + 1, path) from None
        last = lineno
        if len(tokens) != dim + 2:
            raise ParseError('vertex line needs {} numbers, got {}'.format(dim + 2, len(tokens)), lineno, path)
        numbers = [_parse_number(t, lineno, path) for t in tokens]
        coords.append(numbers[:dim])
        f1.append(numbers[dim])
        f2.append(numbers[dim + 1])
    for _ in range(nsimplices):
        try:
            lineno, tokens = next(rows)
        except StopIteration:
            raise ParseError('expected {} simplices, found {}'.format(nsimplices, len(simplices)),
                             last + 1, path) from None
        last = lineno
        if len(tokens) != dim + 1:
            raise ParseError('simplex line needs {} indices, got {}'.format(dim + 1, len(tokens)), lineno, path)
        simplex = [_parse_index(t, lineno, path) for t in tokens]
        for v in simplex:
            if not 0 <= v < nverts:
                raise ValidationError('line {}: simplex references vertex {}, which is out of range [0, {})'.format(
                    lineno, v, nverts))
        simplices.append(simplex)
    for lineno, tokens in rows:
        raise ParseError('unexpected data after the last simplex', lineno, path)

    return SimplicialMesh(dim, coords, f1, f2, simplices, compactified=len(header) == 5)


def load_mesh(path):
    """Load an RCM file.  See :func:`parse_mesh` for the format."""
    with open(path, 'r', encoding='utf-8') as f:
        mesh = parse_mesh(f, path=os.fspath(path))
    logger.info('loaded {} from {}'.format(mesh, path))
    return mesh


def save_mesh(mesh, path):
    """
    Write ``mesh`` as an RCM file.  Values are written as exact literals, so
    :func:`load_mesh` gives back an equal mesh.

    """
    with open(path, 'w', encoding='utf-8') as f:
        header = 'rcm {} {} {}'.format(mesh.dim, mesh.nverts, len(mesh.simplices))
        if mesh.compactified:
            header += ' compactified'
        f.write(header + '\n')
        for p, a, b in zip(mesh.coords, mesh.f1, mesh.f2):
            f.write(' '.join(format_rational(v) for v in (*p, a, b)) + '\n')
        for s in mesh.simplices:
            f.write(' '.join(str(v) for v in s) + '\n')
