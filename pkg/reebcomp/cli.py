"""
Command line driver.

``reebcomp [run flags]`` loads or synthesizes a mesh, computes both Reeb
graphs and their complement, optionally simplifies it and writes the
requested artifacts.  Two subcommands work on existing results:

* ``reebcomp validate FILE.json`` re-checks a written complement.
* ``reebcomp locate (--mesh PATH | --builtin NAME) L1 L2`` prints the cells
  holding the isovalue pair ``(L1, L2)`` and their neighbours.

Exit status is 0 on success, 1 for bad input or I/O errors and 2 when a
consistency check fails.

"""

import argparse
import logging
import sys

from . import export
from ._version import __version__
from .complement import compute_complement
from .exceptions import INTERNAL_ERRORS, ComputationError, ConfigError, ReebComplementException, raise_for
from .mesh_io import BUILTIN_FIELDS, BuiltinField, SoSOrder, build_builtin, load_mesh
from .options import (
    BooleanOption, ChoiceOption, IntOption, PathOption, RationalOption, default_workers, format_rational,
    to_rational,
)
from .oracle import SamplePlan, check_agreement, empirical_cells, write_samples_csv
from .reeb import assign_simplices, compute_reeb_graph
from .simplify import ImportanceMeasure, Measure, Mode, simplify_complement


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INTERNAL = 2


class RunConfig:
    """
    Settings of one pipeline run.  Exactly one of ``mesh`` and ``builtin``
    must be set; :meth:`check` enforces that.
    """
    mesh = PathOption()
    builtin = ChoiceOption(choices=tuple(BUILTIN_FIELDS))
    resolution = IntOption(default=64, minimum=2)
    extent = RationalOption(default=to_rational(3), minimum=0, strict=True)
    boundary_events = BooleanOption(default=False)

    simplify = RationalOption(minimum=0)
    measure = ChoiceOption(default=Measure.PERSISTENCE, choices=Measure)
    mode = ChoiceOption(default=Mode.CONSIDER, choices=Mode)
    side = ChoiceOption(default='both', choices=('1', '2', 'both'))

    output = PathOption()
    svg = PathOption()
    dot = PathOption()
    oracle_check = IntOption(minimum=2)
    oracle_csv = PathOption()
    workers = IntOption(minimum=0)

    def __init__(self, **kwargs):
        for name, value in kwargs.items():
            if not isinstance(getattr(type(self), name, None), (PathOption, ChoiceOption, IntOption,
                                                                 RationalOption, BooleanOption)):
                raise ConfigError('unknown setting {!r}'.format(name))
            setattr(self, name, value)

    def check(self):
        if (self.mesh is None) == (self.builtin is None):
            raise ConfigError('exactly one of --mesh and --builtin is required')
        if self.oracle_csv is not None and self.oracle_check is None:
            raise ConfigError('--oracle-csv needs --oracle-check')

    def load(self):
        """The input mesh."""
        if self.mesh is not None:
            return load_mesh(self.mesh)
        return build_builtin(BuiltinField(self.builtin, extent=self.extent, resolution=self.resolution))


def compute_graphs(mesh, boundary_events=False):
    """Both Reeb graphs of ``mesh``, with simplices assigned."""
    return tuple(
        assign_simplices(mesh, compute_reeb_graph(mesh, SoSOrder(field), boundary_events=boundary_events))
        for field in (1, 2)
    )


def _oracle_check(config, cg):
    plan = SamplePlan(resolution=config.oracle_check)
    empirical = empirical_cells(cg.mesh, cg.g1, cg.g2, plan)
    if config.oracle_csv is not None:
        write_samples_csv(config.oracle_csv, empirical)
    problems = check_agreement(cg, empirical)
    for problem in problems:
        logger.error('oracle: {}'.format(problem))
    if problems:
        raise ComputationError('oracle disagrees with the complement in {} places'.format(len(problems)))
    logger.info('oracle agrees at resolution {}'.format(config.oracle_check))


def run(config):
    """
    Run the pipeline for ``config`` and write its artifacts.  Returns the
    :class:`~reebcomp.ComplementGraph`.  The oracle check runs on the
    unsimplified complement.
    """
    config.check()
    mesh = config.load()
    g1, g2 = compute_graphs(mesh, config.boundary_events)
    workers = default_workers() if config.workers is None else config.workers
    cg = compute_complement(mesh, g1, g2, workers=workers)
    for rect in cg.rectangles.values():
        rect.check_area()
    if config.oracle_check is not None:
        _oracle_check(config, cg)
    if config.simplify is not None:
        measure = ImportanceMeasure(config.measure, config.simplify)
        side = config.side if config.side == 'both' else int(config.side)
        cg = simplify_complement(cg, side, measure, config.mode)

    if config.output is not None:
        export.write_json(cg, config.output)
    if config.svg is not None:
        export.write_svgs(cg, config.svg)
    if config.dot is not None:
        export.write_dot(cg, config.dot)
    return cg


def _add_input_args(parser):
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument('--mesh', help='RCM mesh file')
    source.add_argument('--builtin', help='builtin field pair: {}'.format(', '.join(sorted(BUILTIN_FIELDS))))
    parser.add_argument('--resolution', type=int, help='grid cells per side of a builtin mesh (default 64)')
    parser.add_argument('--extent', help='half-width of a builtin domain (default 3)')
    parser.add_argument('--boundary-events', action='store_true',
                        help='emit a node where a contour starts or stops touching the boundary')


def _add_verbosity(parser):
    parser.add_argument('-v', '--verbose', action='count', default=0, help='more logging; repeat for debug')
    parser.add_argument('-q', '--quiet', action='store_true', help='only log errors')


def run_parser():
    parser = argparse.ArgumentParser(
        prog='reebcomp',
        description='Compute the Reeb complement of two scalar fields on a triangulated domain.',
        epilog='Subcommands: "reebcomp validate FILE" and "reebcomp locate ... L1 L2".')
    parser.add_argument('--version', action='version', version='%(prog)s ' + __version__)
    _add_input_args(parser)
    parser.add_argument('--simplify', metavar='T', help='cancel leaf arcs less important than T')
    parser.add_argument('--measure', help='importance measure: persistence (default) or size')
    parser.add_argument('--mode', help='consider (default) or ignore the cancelled contours')
    parser.add_argument('--side', help='graph to simplify: 1, 2 or both (default)')
    parser.add_argument('--output', '-o', help='write the complement as JSON')
    parser.add_argument('--svg', metavar='DIR', help='write one SVG drawing per rectangle')
    parser.add_argument('--dot', help='write both Reeb graphs as DOT')
    parser.add_argument('--oracle-check', type=int, metavar='N',
                        help='compare with a brute-force sampling of N x N points per rectangle')
    parser.add_argument('--oracle-csv', help='write the oracle samples as CSV')
    parser.add_argument('--workers', type=int, help='worker processes (default $REEBCOMP_WORKERS or 1)')
    _add_verbosity(parser)
    return parser


def validate_parser():
    parser = argparse.ArgumentParser(prog='reebcomp validate', description='Re-check a complement JSON file.')
    parser.add_argument('path')
    _add_verbosity(parser)
    return parser


def locate_parser():
    parser = argparse.ArgumentParser(
        prog='reebcomp locate', description='Find the cells holding an isovalue pair and their neighbours.')
    _add_input_args(parser)
    parser.add_argument('l1', help='value of the first field')
    parser.add_argument('l2', help='value of the second field')
    _add_verbosity(parser)
    return parser


def _config_from_args(args, names):
    return RunConfig(**{name: getattr(args, name) for name in names})


_INPUT_NAMES = ('mesh', 'builtin', 'resolution', 'extent', 'boundary_events')
_RUN_NAMES = _INPUT_NAMES + ('simplify', 'measure', 'mode', 'side', 'output', 'svg', 'dot',
                             'oracle_check', 'oracle_csv', 'workers')


def validate(path, out=None):
    out = out or sys.stdout
    doc = export.read_json(path)
    problems = export.validate_document(doc)
    for code, message in problems:
        logger.error('{}: {}'.format(code, message))
    if problems:
        # an internal inconsistency outranks bad input
        codes = [code for code, _ in problems]
        code = 'EINTERNAL' if 'EINTERNAL' in codes else codes[0]
        raise_for(code, '{}: {} problems'.format(path, len(problems)))
    print('{}: {} rectangles, {} cells, ok'.format(path, len(doc['rectangles']), len(doc['cells'])), file=out)


def locate(config, l1, l2, out=None):
    """Print the cells of every rectangle whose arcs span ``(l1, l2)``."""
    out = out or sys.stdout
    config.check()
    l1, l2 = to_rational(l1), to_rational(l2)
    mesh = config.load()
    g1, g2 = compute_graphs(mesh, config.boundary_events)
    cg = compute_complement(mesh, g1, g2, workers=default_workers())
    found = 0
    for a1 in g1.arcs_at(l1):
        for a2 in g2.arcs_at(l2):
            cell = cg.cell_at(a1, a2, (l1, l2))
            if cell is None:
                print('arcs {} x {}: in the projected Reeb space'.format(a1, a2), file=out)
                continue
            found += 1
            for k, c in enumerate(cg.neighbourhood(cell.id)):
                print('{}cell {} area {} label {}'.format(
                    '' if k == 0 else '  neighbour ', '/'.join(map(str, c.id)), format_rational(c.area),
                    None if c.label is None else c.label.value), file=out)
    if not found:
        print('no cell holds ({}, {})'.format(format_rational(l1), format_rational(l2)), file=out)
    return found


def _setup_logging(args):
    level = logging.ERROR if args.quiet else (logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose, 2)]
    logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s')


def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]
    argv = list(argv)
    command = argv[0] if argv and argv[0] in ('validate', 'locate') else 'run'
    if command != 'run':
        argv = argv[1:]
    parser = {'run': run_parser, 'validate': validate_parser, 'locate': locate_parser}[command]()
    args = parser.parse_args(argv)
    _setup_logging(args)
    try:
        if command == 'validate':
            validate(args.path)
        elif command == 'locate':
            locate(_config_from_args(args, _INPUT_NAMES), args.l1, args.l2)
        else:
            run(_config_from_args(args, _RUN_NAMES))
    except INTERNAL_ERRORS as e:
        print('reebcomp: internal error: {}'.format(e), file=sys.stderr)
        return EXIT_INTERNAL
    except (ReebComplementException, OSError) as e:
        print('reebcomp: {}'.format(e), file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK
