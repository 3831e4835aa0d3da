"""
Writers for computed complements: JSON for other tools, DOT for the Reeb
graphs and SVG drawings of the rectangles.

Exact values are written to JSON as ``{"decimal": ..., "num": ..., "den":
...}``; the decimal string is exact whenever the denominator allows it.  The
output depends only on the complement, so two runs give identical bytes.

"""

import decimal
import json
import logging
import os
from fractions import Fraction

from . import geom2
from .classify import InclusionLabel
from .options import format_rational


logger = logging.getLogger(__name__)

FORMAT = 'reebcomp-complement'
FORMAT_VERSION = 1

LABELS = frozenset(label.value for label in InclusionLabel)

LABEL_FILLS = {
    InclusionLabel.FIRST_INSIDE_SECOND: '#d62728',
    InclusionLabel.SECOND_INSIDE_FIRST: '#1f77b4',
    InclusionLabel.DISJOINT: '#2ca02c',
    InclusionLabel.UNDETERMINED_BOUNDARY: '#ff7f0e',
    None: '#c7c7c7',
}
PROJECTED_FILL = '#808080'


def _decimal_string(value):
    text = format_rational(value)
    if '/' not in text:
        return text
    with decimal.localcontext() as ctx:
        ctx.prec = 20
        return str(decimal.Decimal(value.numerator) / decimal.Decimal(value.denominator))


def rational_json(value):
    value = Fraction(value)
    return {'decimal': _decimal_string(value), 'num': value.numerator, 'den': value.denominator}


def rational_from_json(obj):
    return Fraction(int(obj['num']), int(obj['den']))


def _point_json(p):
    return [rational_json(p[0]), rational_json(p[1])]


def _cell_id_json(cell_id):
    return list(cell_id)


def graph_json(graph):
    return {
        'field': graph.field,
        'nodes': [{'id': n.id, 'value': rational_json(n.value), 'vertex': n.vertex, 'kind': n.kind.value}
                  for n in sorted(graph.nodes, key=lambda n: n.id)],
        'arcs': [{'id': a.id, 'lower': a.lower, 'upper': a.upper, 'simplices': sorted(a.simplices)}
                 for a in sorted(graph.arcs, key=lambda a: a.id)],
    }


def complement_json(cg):
    """The whole complement as a JSON-ready dict."""
    rectangles = []
    cells = []
    for key in sorted(cg.rectangles):
        rect = cg.rectangles[key]
        rectangles.append({
            'arc1': key[0],
            'arc2': key[1],
            'bounds': [rational_json(b) for b in rect.bounds],
            'area': rational_json(rect.area),
            'projected_reeb_area': rational_json(rect.projected_reeb.area),
            'cells': [_cell_id_json(c.id) for c in rect.cells],
        })
        for cell in rect.cells:
            cells.append({
                'id': _cell_id_json(cell.id),
                'outer': [_point_json(p) for p in cell.face.outer],
                'holes': [[_point_json(p) for p in ring] for ring in cell.face.holes],
                'area': rational_json(cell.area),
                'sample': _point_json(cell.sample),
                'label': None if cell.label is None else cell.label.value,
            })
    adjacency = [{'cell': _cell_id_json(c.id), 'neighbours': [_cell_id_json(n) for n in cg.neighbours(c.id)]}
                 for c in cg.cells]
    return {
        'format': FORMAT,
        'version': FORMAT_VERSION,
        'mesh': {'dim': cg.mesh.dim, 'vertices': cg.mesh.nverts, 'simplices': len(cg.mesh.simplices),
                 'compactified': cg.mesh.compactified},
        'graphs': [graph_json(cg.g1), graph_json(cg.g2)],
        'rectangles': rectangles,
        'cells': cells,
        'adjacency': adjacency,
    }


def dumps(cg):
    return json.dumps(complement_json(cg), sort_keys=True, indent=1) + '\n'


def write_json(cg, path):
    with open(path, 'w') as f:
        f.write(dumps(cg))
    logger.info('wrote {}'.format(path))


def read_json(path):
    with open(path) as f:
        return json.load(f)


def validate_document(doc):
    """
    Re-check a complement document.  Returns ``(code, message)`` pairs, one
    per problem found; an empty list means the document is consistent.

    Checked: every rectangle's area equals its projected Reeb area plus the
    areas of its cells, adjacency is symmetric, cell ids are unique, every
    sample lies inside its cell's rings and every label is a known one.

    """
    problems = []
    if doc.get('format') != FORMAT:
        return [('EINVAL', 'not a {} document'.format(FORMAT))]

    cells = {}
    for cell in doc['cells']:
        cid = tuple(cell['id'])
        if cid in cells:
            problems.append(('EINVAL', 'duplicate cell id {}'.format(cid)))
        cells[cid] = cell
        label = cell['label']
        if label is not None and label not in LABELS:
            problems.append(('EINVAL', 'cell {} has unknown label {!r}'.format(cid, label)))
        sample = geom2.RPoint(*(rational_from_json(v) for v in cell['sample']))
        outer = [geom2.RPoint(*(rational_from_json(v) for v in p)) for p in cell['outer']]
        holes = [[geom2.RPoint(*(rational_from_json(v) for v in p)) for p in ring] for ring in cell['holes']]
        if not geom2.ring_contains(outer, sample) or any(geom2.ring_contains(h, sample) for h in holes):
            problems.append(('EINTERNAL', 'sample of cell {} lies outside its rings'.format(cid)))

    for rect in doc['rectangles']:
        key = (rect['arc1'], rect['arc2'])
        total = rational_from_json(rect['projected_reeb_area'])
        for cid in rect['cells']:
            cell = cells.get(tuple(cid))
            if cell is None:
                problems.append(('EINVAL', 'rectangle {} lists unknown cell {}'.format(key, tuple(cid))))
                continue
            total += rational_from_json(cell['area'])
        if total != rational_from_json(rect['area']):
            problems.append(('EINTERNAL', 'rectangle {}: areas add up to {} instead of {}'.format(
                key, total, rational_from_json(rect['area']))))

    adjacency = {tuple(entry['cell']): {tuple(n) for n in entry['neighbours']} for entry in doc['adjacency']}
    for cid, neighbours in sorted(adjacency.items()):
        for n in sorted(neighbours):
            if cid not in adjacency.get(n, ()):
                problems.append(('EINVAL', 'adjacency {} -> {} is not symmetric'.format(cid, n)))
    return problems


def graph_dot(graph, name=None):
    """DOT source of a Reeb graph."""
    name = name or 'reeb_f{}'.format(graph.field)
    lines = ['digraph {} {{'.format(name), '  rankdir=BT;']
    for n in sorted(graph.nodes, key=lambda n: n.id):
        lines.append('  n{} [label="{}:{}:{}"];'.format(n.id, n.id, format_rational(n.value), n.kind.value))
    for a in sorted(graph.arcs, key=lambda a: a.id):
        lines.append('  n{} -> n{} [label="a{} ({})"];'.format(a.lower, a.upper, a.id, len(a.simplices)))
    lines.append('}')
    return '\n'.join(lines) + '\n'


def write_dot(cg, path):
    with open(path, 'w') as f:
        f.write(graph_dot(cg.g1))
        f.write(graph_dot(cg.g2))
    logger.info('wrote {}'.format(path))


def _fmt(value):
    return '{:.12g}'.format(float(value))


def _ring_path(ring, to_px):
    points = [to_px(p) for p in ring]
    return 'M ' + ' L '.join('{} {}'.format(_fmt(x), _fmt(y)) for x, y in points) + ' Z'


def rectangle_svg(rect, size=400):
    """
    SVG drawing of one rectangle: the projected Reeb space in gray and each
    cell filled by its label.  Values are scaled to a ``size`` square with
    the first field along x and the second upwards.
    """
    x0, y0, x1, y1 = rect.bounds
    margin = 10

    def to_px(p):
        sx = (p[0] - x0) / (x1 - x0) if x1 > x0 else Fraction(0)
        sy = (p[1] - y0) / (y1 - y0) if y1 > y0 else Fraction(0)
        return margin + sx * size, margin + (1 - sy) * size

    extent = size + 2 * margin
    out = ['<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{0}" viewBox="0 0 {0} {0}">'.format(extent)]
    out.append('  <title>arcs {} x {}</title>'.format(*rect.key))
    out.append('  <rect x="{0}" y="{0}" width="{1}" height="{1}" fill="none" stroke="black"/>'.format(margin, size))
    for face in geom2.faces(rect.projected_reeb):
        d = ' '.join(_ring_path(r, to_px) for r in (face.outer,) + face.holes)
        out.append('  <path d="{}" fill="{}" fill-rule="evenodd"/>'.format(d, PROJECTED_FILL))
    for a, b in rect.projected_reeb.segments():
        (ax, ay), (bx, by) = to_px(a), to_px(b)
        out.append('  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}"/>'.format(
            _fmt(ax), _fmt(ay), _fmt(bx), _fmt(by), PROJECTED_FILL))
    for cell in rect.cells:
        d = ' '.join(_ring_path(r, to_px) for r in (cell.face.outer,) + cell.face.holes)
        label = 'unlabelled' if cell.label is None else cell.label.value
        out.append('  <path d="{}" fill="{}" fill-opacity="0.6" fill-rule="evenodd"><title>{} {}</title></path>'.format(
            d, LABEL_FILLS[cell.label], '/'.join(str(k) for k in cell.id), label))
    out.append('</svg>')
    return '\n'.join(out) + '\n'


def write_svgs(cg, directory):
    """Write ``rect_<arc1>_<arc2>.svg`` for every rectangle.  Returns the paths written."""
    os.makedirs(directory, exist_ok=True)
    paths = []
    for key in sorted(cg.rectangles):
        path = os.path.join(directory, 'rect_{}_{}.svg'.format(*key))
        with open(path, 'w') as f:
            f.write(rectangle_svg(cg.rectangles[key]))
        paths.append(path)
    logger.info('wrote {} SVG files to {}'.format(len(paths), directory))
    return paths
