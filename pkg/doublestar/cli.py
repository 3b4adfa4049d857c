import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass, field

from doublestar.checks import growth_checks, theorem_checks
from doublestar.config import DEFAULT_CAPS, CapExceededException, Caps, ParseException
from doublestar.construct import (HypothesisViolatedException, NotArcTransitiveOrbitException,
                                  NotSelfPairedException, RTooSmallException, double_star_graph)
from doublestar.graph import (Graph, InvalidPartitionException, NotArcTransitiveException, Partition,
                              VertexOutOfRangeException, catalog, is_arc_regular, is_x_symmetric,
                              s_arc_transitivity)
from doublestar.perm import DegreeMismatchException, closure, named_group, parse_cycles
from doublestar.quotient import (EmptyQuotientException, NotInScriptGException, NotInvariantException,
                                 block_arc_check, block_valency_check, params, reconstruct, refinement_series)
from doublestar.report import AnalysisReport, Check
from doublestar.stars import (InvalidStarException, NotADoubleStarException, Star, StarParams,
                              enumerate_double_star_orbits, theta_orbit)
from doublestar.worked_examples import EXAMPLES, verify_paper

logger = logging.getLogger(__name__)

TASKS = ('analyze', 'construct', 'decompose', 'search', 'verify-paper')
EMITS = ('json', 'graph6', 'dot')

# Raised when an input violates a hypothesis; recorded as a failed check.
DIAGNOSES = (HypothesisViolatedException, NotArcTransitiveException, NotInScriptGException,
             NotADoubleStarException, NotSelfPairedException, NotArcTransitiveOrbitException,
             NotInvariantException, EmptyQuotientException, RTooSmallException)

# Raised on malformed input; exit status 4.
INPUT_ERRORS = (ParseException, DegreeMismatchException, InvalidPartitionException, InvalidStarException,
                VertexOutOfRangeException)


@dataclass
class InstanceSpec(object):
    """
    A parsed instance file. See README.md for the JSON schema.
    """
    task: str
    graph: Graph = None
    generators: list = field(default_factory=list)
    left: tuple = None
    right: tuple = None
    r: int = None
    partition: tuple = None
    params: StarParams = None
    levels: tuple = (1,)
    which: str = 'all'
    caps: Caps = DEFAULT_CAPS
    inputs: dict = field(default_factory=dict)


def _parse_graph(data, caps):
    if 'catalog' in data:
        graph, groups = catalog(data['catalog'], caps.vertices)
        return graph, groups
    return Graph.from_json(data), {}


def _parse_group(data, graph, defaults):
    if data is None:
        if not defaults:
            raise ParseException('The instance names no group.')
        return next(iter(defaults.values()))
    if 'named' in data:
        try:
            name, n = data['named'].split()
            return named_group(name, int(n))
        except ValueError:
            raise ParseException('Group names look like "alternating 5", got %r' % data['named'])
    if 'generators' in data:
        return [parse_cycles(text, graph.point_degree) for text in data['generators']]
    raise ParseException('A group needs "named" or "generators".')


def _rows(rows):
    if not isinstance(rows, list) or not rows:
        raise ParseException('Expected a nonempty list of arcs, got %r' % (rows,))
    return tuple(tuple(str(v) for v in row) for row in rows)


def parse_instance(data, caps=None):
    """
    Builds an InstanceSpec from decoded JSON.

    Raises
    ------
        ParseException on malformed or inconsistent input
    """
    if not isinstance(data, dict):
        raise ParseException('An instance is a JSON object.')
    task = data.get('task', 'analyze')
    if task not in TASKS:
        raise ParseException('Unknown task %r; choose from %s' % (task, ', '.join(TASKS)))
    caps = caps or Caps.from_mapping(data.get('caps', {}))
    spec = InstanceSpec(task, caps=caps, inputs=data, which=data.get('which', 'all'))
    if task == 'verify-paper':
        return spec
    if 'graph' not in data:
        raise ParseException('The instance has no graph.')
    spec.graph, defaults = _parse_graph(data['graph'], caps)
    spec.generators = _parse_group(data.get('group'), spec.graph, defaults)
    degrees = {x.size for x in spec.generators}
    if degrees and degrees != {spec.graph.point_degree}:
        raise ParseException('Group degree %s does not match the %d points of the graph.'
                             % (sorted(degrees), spec.graph.point_degree))
    seeds = data.get('seeds')
    if seeds is not None:
        spec.left, spec.right = _rows(seeds.get('left')), _rows(seeds.get('right'))
        spec.r = seeds.get('r')
    if 'partition' in data:
        spec.partition = tuple(_rows(data['partition']))
    if 'params' in data:
        try:
            spec.params = StarParams(int(data['params']['l']), int(data['params']['r']))
        except (KeyError, TypeError, ValueError) as error:
            raise ParseException('Bad star parameters: %s' % error)
    try:
        spec.levels = tuple(int(s) for s in data.get('s', [1]))
    except (TypeError, ValueError):
        raise ParseException('"s" must be a list of integers, got %r' % (data.get('s'),))
    return spec


def load_instance(path, caps=None):
    try:
        with open(path) as f:
            data = json.load(f)
    except json.JSONDecodeError as error:
        raise ParseException('%s is not valid JSON: %s' % (path, error))
    except OSError as error:
        raise ParseException('Cannot read %s: %s' % (path, error))
    return parse_instance(data, caps)


def _seeds(spec):
    if spec.left is None:
        raise ParseException('Task %s needs "seeds" with "left" and "right" stars.' % spec.task)
    left = Star.from_labels(spec.graph, spec.left, spec.r)
    right = Star.from_labels(spec.graph, spec.right, spec.r)
    return left, right


def _analyze(report, spec, group, caps):
    graph = spec.graph
    symmetric = is_x_symmetric(graph, group)
    report.add(Check.of('X-symmetric', symmetric, '|X| = %d' % group.order))
    if not symmetric:
        raise NotArcTransitiveException('The group is not transitive on the arcs.')
    levels = [s for s in range(1, 4) if s_arc_transitivity(graph, group, s)]
    report.section('symmetry', {
        'group_order': group.order,
        'arc_transitivity': max(levels) if levels else 0,
        'arc_regular': is_arc_regular(graph, group),
    })
    if spec.left is not None:
        theta = theta_orbit(group, *_seeds(spec))
        report.section('theta', theta.flags())
        report.extend(growth_checks(theta))


def _construct(report, spec, group, caps):
    theta = theta_orbit(group, *_seeds(spec))
    report.section('theta', theta.flags())
    dsg = double_star_graph(theta)
    report.graphs['pi'] = dsg.graph
    report.section('vertex_map', dsg.vertex_map_json())
    case, checks = theorem_checks(dsg, caps)
    report.section('structure', case.to_json())
    report.extend(checks)
    return dsg


def _decompose(report, spec, group, caps):
    if spec.partition is not None:
        graph = spec.graph
        blocks = [[graph.index_of(name) for name in block] for block in spec.partition]
        partition = Partition(graph.vertex_count, blocks)
    else:
        dsg = _construct(report, spec, group, caps)
        graph, partition = dsg.graph, dsg.block_partition
    report.section('params', params(graph, group, partition).to_json())
    series = refinement_series(graph, group, partition, caps)
    report.section('series', series.to_json())
    report.extend(series.checks)
    report.add(*block_arc_check(series, 1, 0))
    for j in range(1, series.m + 1):
        report.add(block_valency_check(series, j))
    for s in spec.levels:
        rebuilt = reconstruct(graph, group, partition, s, caps, series)
        report.section('reconstruct s=%d' % s, {'l': rebuilt.l, 'target_level': rebuilt.target_level,
                                                 'theta': rebuilt.theta.flags()})
        report.extend(rebuilt.checks)
        report.graphs['reconstructed-s%d' % s] = rebuilt.pi.graph


def _search(report, spec, group, caps):
    if spec.params is None:
        raise ParseException('Task search needs "params" with "l" and "r".')
    orbits = enumerate_double_star_orbits(spec.graph, group, spec.params, caps)
    found = []
    for index, theta in enumerate(orbits):
        entry = theta.flags()
        entry['representative'] = theta.representative.encode()
        if theta.x_symmetric:
            dsg = double_star_graph(theta)
            entry['pi'] = {'vertices': dsg.graph.vertex_count, 'valency': dsg.graph.valency,
                           'connected': dsg.graph.is_connected}
            report.graphs['pi-%d' % index] = dsg.graph
        found.append(entry)
    report.section('orbits', found)
    report.add(Check.of('orbits found', bool(orbits), '%d orbits' % len(orbits)))


_HANDLERS = {
    'analyze': _analyze,
    'construct': _construct,
    'decompose': _decompose,
    'search': _search,
}


def run(spec, caps=None):
    """
    Dispatches an instance to its task.

    Hypothesis violations and cap overruns are recorded in the report; parse
    errors propagate.

    Returns
    -------
        AnalysisReport
    """
    caps = caps or spec.caps
    if spec.task == 'verify-paper':
        try:
            return verify_paper(spec.which, caps)
        except CapExceededException as error:
            report = AnalysisReport(spec.task, inputs={'which': spec.which})
            report.error(type(error).__name__, str(error))
            report.cap_exceeded = True
            return report
    report = AnalysisReport(spec.task, inputs=spec.inputs)
    report.graphs['input'] = spec.graph
    try:
        group = closure(spec.generators, caps.group, spec.graph.point_degree)
        _HANDLERS[spec.task](report, spec, group, caps)
    except DIAGNOSES as error:
        report.add(Check.of(type(error).__name__, False, str(error)))
        report.error(type(error).__name__, str(error))
    except CapExceededException as error:
        report.error(type(error).__name__, str(error))
        report.cap_exceeded = True
    return report


def _parser():
    parser = argparse.ArgumentParser(prog='doublestar',
                                     description='Double-star graphs of finite symmetric graphs.')
    parser.add_argument('--instance', help='instance JSON file')
    parser.add_argument('--task', choices=TASKS, help='overrides the task of the instance')
    parser.add_argument('--which', choices=sorted(EXAMPLES) + ['all'],
                        help='worked example for verify-paper')
    parser.add_argument('--out', default='out', help='output directory')
    parser.add_argument('--cap-group', type=int, help='maximal group order')
    parser.add_argument('--cap-stars', type=int, help='maximal number of stars per vertex')
    parser.add_argument('--cap-iso', type=int, help='maximal vertices per isomorphism call')
    parser.add_argument('--emit', default='json', help='comma-separated subset of json,graph6,dot')
    parser.add_argument('-v', '--verbose', action='count', default=0)
    return parser


def main(argv=None):
    parser = _parser()
    args = parser.parse_args(argv)
    level = (logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose, 2)]
    logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s')
    emit = tuple(e.strip() for e in args.emit.split(',') if e.strip())
    unknown = set(emit) - set(EMITS)
    if unknown:
        parser.error('unknown --emit formats: %s' % ', '.join(sorted(unknown)))
    overrides = {name: value for name, value in
                 (('group', args.cap_group), ('stars', args.cap_stars), ('iso', args.cap_iso)) if value is not None}
    start = time.perf_counter()
    try:
        if args.instance:
            spec = load_instance(args.instance)
            if args.task:
                spec.task = args.task
            spec.which = args.which or spec.which
        elif args.task in (None, 'verify-paper'):
            spec = InstanceSpec('verify-paper', which=args.which or 'all')
        else:
            parser.error('--task %s needs --instance' % args.task)
        caps = spec.caps.override(**overrides)
        if spec.task != 'verify-paper' and spec.graph is None:
            raise ParseException('Task %s needs a graph.' % spec.task)
        report = run(spec, caps)
    except INPUT_ERRORS as error:
        logger.error('%s', error)
        return 4
    logger.info('task %s finished in %.2f s', spec.task, time.perf_counter() - start)
    report.write(args.out, emit)
    counts = report.status_counts
    logger.info('%d passed, %d failed, %d warnings, %d skipped', counts['PASS'], counts['FAIL'],
                counts['WARN'], counts['SKIP'])
    return report.exit_status


if __name__ == '__main__':
    sys.exit(main())
