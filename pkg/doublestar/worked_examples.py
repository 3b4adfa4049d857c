import logging
from dataclasses import dataclass
from functools import cached_property
from math import factorial

from doublestar.checks import growth_checks, theorem_checks
from doublestar.config import DEFAULT_CAPS
from doublestar.construct import (HypothesisViolatedException, double_star_graph, grow_theta,
                                  stabilizer_chain_h, truncate)
from doublestar.graph import (CompleteBipartiteGraph, CompleteGraph, CycleGraph, Graph, OddGraph, Partition,
                              are_isomorphic, bipartite_double_cover, components, is_arc_regular,
                              lift_to_double_cover, s_arc_transitivity)
from doublestar.perm import PermGroup, UnknownNameException, closure, format_cycles, named_group, parse_cycles
from doublestar.quotient import (block_arc_check, block_valency_check, in_script_g, kernel_on, params,
                                 quotient_graph, reconstruct, refinement_series)
from doublestar.report import AnalysisReport, Check
from doublestar.stars import DoubleStar, Star, StarParams, is_double_star, is_star, theta_orbit

logger = logging.getLogger(__name__)

TASK = 'verify-paper'

O4_LEFT = (
    ('123', '456', '127'),
    ('123', '456', '137'),
    ('123', '457', '126'),
    ('123', '457', '136'),
    ('123', '567', '124'),
    ('123', '567', '134'),
)

# Row 4 reads (456, 127, 356); with (456, 123, 356) the pair is not a double-star.
O4_RIGHT = (
    ('456', '123', '457'),
    ('456', '123', '567'),
    ('456', '127', '345'),
    ('456', '127', '356'),
    ('456', '137', '245'),
    ('456', '137', '256'),
)


@dataclass
class WorkedExample(object):
    """
    A base graph with its group, a seed double-star and optionally the element
    stated to swap the two stars.
    """
    name: str
    graph: Graph
    group: PermGroup
    left: Star
    right: Star
    z: object = None

    @cached_property
    def theta(self):
        return theta_orbit(self.group, self.left, self.right)


def _power_star(graph, center, x, level):
    """
    Returns {(c, c^y, ..., c^(y^level)) | y in {x, x^-1}}.
    """
    arcs = []
    for y in (x, ~x):
        images = graph.images(y)
        arc = [center]
        for _ in range(level):
            arc.append(images[arc[-1]])
        arcs.append(tuple(arc))
    return Star.of(graph, arcs, r=2)


def example_1(symmetric=False, caps=None):
    caps = caps or DEFAULT_CAPS
    graph = CompleteGraph(5)
    group = closure(named_group('symmetric' if symmetric else 'alternating', 5), caps.group)
    left = Star.from_labels(graph, [('1', '5'), ('1', '4'), ('1', '3')], r=3)
    right = Star.from_labels(graph, [('5', '1'), ('5', '2'), ('5', '3')], r=3)
    name = 'example-1-symmetric' if symmetric else 'example-1'
    return WorkedExample(name, graph, group, left, right, parse_cycles('(1 5)(2 4)', 5))


def example_2(level=1, caps=None, graph=None):
    caps = caps or DEFAULT_CAPS
    graph = graph or OddGraph(3)
    group = closure(named_group('alternating', 5), caps.group)
    x = parse_cycles('(13524)', 5)
    left = _power_star(graph, graph.index_of('12'), x, level)
    right = _power_star(graph, graph.index_of('34'), x, level)
    return WorkedExample('example-2', graph, group, left, right)


def example_3(caps=None):
    caps = caps or DEFAULT_CAPS
    graph = OddGraph(4, cap=caps.vertices)
    group = closure(named_group('alternating', 7), caps.group)
    left = Star.from_labels(graph, O4_LEFT, r=3)
    right = Star.from_labels(graph, O4_RIGHT, r=3)
    return WorkedExample('example-3', graph, group, left, right)


def example_4(n=3, caps=None):
    """
    K_{n,n} under Sym([n]) wr Sym(2); iota_i is vertex i - 1 and gamma_i is vertex n + i - 1.
    """
    caps = caps or DEFAULT_CAPS
    if n < 3:
        raise ValueError('The complete bipartite family starts at n = 3.')
    graph = CompleteBipartiteGraph(n)
    group = closure(named_group('wreath', n), caps.group)

    def iota(i):
        return i - 1

    def gamma(i):
        return n + i - 1

    points = range(1, n + 1)
    left = Star.of(graph, [(iota(1), gamma(i), iota(j)) for i in points if i != 1 for j in points if j not in (1, i)],
                   r=n - 1)
    right = Star.of(graph, [(gamma(2), iota(i), gamma(j)) for i in points if i != 2 for j in points if j not in (2, i)],
                    r=n - 1)
    swaps = [(iota(1), gamma(2)), (iota(2), gamma(1))] + [(iota(k), gamma(k)) for k in range(3, n + 1)]
    z = parse_cycles(''.join('(%d %d)' % (a + 1, b + 1) for a, b in swaps), 2 * n)
    return WorkedExample('example-4', graph, group, left, right, z)


def matching_complement(n):
    """
    K_{n,n} minus a perfect matching.
    """
    return Graph(2 * n, [(i, n + j) for i in range(n) for j in range(n) if i != j])


def double_cover_instance(caps=None):
    """
    The bipartite double cover of the cubic graph of the first example, with the
    group lifted to it and the blocks S_sigma x {0, 1}.

    Returns
    -------
        (Graph, PermGroup, Partition)
    """
    caps = caps or DEFAULT_CAPS
    base = example_1(caps=caps)
    dsg = double_star_graph(base.theta)
    n = dsg.graph.vertex_count
    cover = bipartite_double_cover(dsg.graph)
    group = closure(lift_to_double_cover(dsg.graph, base.group.generators), caps.group)
    partition = Partition(2 * n, [block + tuple(v + n for v in block) for block in dsg.block_partition.blocks])
    return cover, group, partition


def petersen_cover_instance(caps=None):
    caps = caps or DEFAULT_CAPS
    base = OddGraph(3)
    cover = bipartite_double_cover(base)
    group = closure(lift_to_double_cover(base, named_group('alternating', 5)), caps.group)
    return cover, group, Partition(20, [(v, v + 10) for v in range(10)])


def _elements_check(name, group, cycles):
    expected = {parse_cycles(c, group.degree) for c in cycles}
    return Check.of(name, set(group.elements) == expected, evidence=group.cycle_strings())


def _construct(report, example, caps):
    theta = example.theta
    report.section('theta', theta.flags())
    if example.z is not None:
        pair = DoubleStar(example.left, example.right)
        act = example.graph.action('star-pair')
        report.add(Check.of('stated z swaps the two stars',
                            act(pair.action_object(), example.z) == pair.reversed().action_object(),
                            format_cycles(example.z)))
    dsg = double_star_graph(theta)
    report.graphs['pi'] = dsg.graph
    report.section('vertex_map', dsg.vertex_map_json())
    case, checks = theorem_checks(dsg, caps)
    report.section('structure', case.to_json())
    report.extend(checks)
    return dsg, case


def _decompose(report, dsg, caps, levels=(1,)):
    series = refinement_series(dsg.graph, dsg.group, dsg.block_partition, caps)
    report.section('series', series.to_json())
    report.extend(series.checks)
    for j in range(series.m):
        report.add(*block_arc_check(series, 1, j))
    for j in range(1, series.m + 1):
        report.add(block_valency_check(series, j))
    for s in levels:
        rebuilt = reconstruct(dsg.graph, dsg.group, dsg.block_partition, s, caps, series)
        report.extend(rebuilt.checks)
    return series


def _series_shape_check(report, series, depth, quintuples):
    got = [q.quintuple() for q in series.params]
    report.add(Check.of('series: m = h = %d, case 5.1' % depth,
                        (series.m, series.h, series.terminal_case) == (depth, depth, '5.1')))
    report.add(Check.of('series parameters', got == quintuples, evidence=[list(q) for q in got]))


def _component_check(report, graph, model, caps, stated=None):
    parts = components(graph)
    shapes = all(are_isomorphic(graph.induced_subgraph(c), model, caps.iso) for c in parts.components)
    report.section('components', {'count': parts.count, 'sizes': sorted(set(parts.sizes))})
    report.add(Check.of('every component has the expected shape', shapes, '%d components' % parts.count))
    if stated is not None:
        report.add(Check.claim('stated component count %d' % stated, parts.count == stated,
                               'computed %d' % parts.count))
    return parts


def verify_example_1(caps=None):
    """
    K_5 under A_5: the cubic arc-regular graph on 20 stars, decomposed and
    rebuilt; the S_5 variant gives a 6-valent graph with d = 2.
    """
    caps = caps or DEFAULT_CAPS
    report = AnalysisReport(TASK, inputs={'example': 'example-1'})
    example = example_1(caps=caps)
    theta = example.theta
    dsg, case = _construct(report, example, caps)
    graph = dsg.graph
    report.add(
        Check.of('20 vertices', graph.vertex_count == 20),
        Check.of('cubic', graph.valency == 3),
        Check.of('connected', graph.is_connected),
        Check.of('arc-regular', is_arc_regular(graph, example.group),
                 '%d arcs, |X| = %d' % (2 * graph.edge_count, example.group.order)),
        Check.of('|X_S| = 3', theta.star_stabilizer(example.left).order == 3),
        Check.of('X_S and X_5 meet trivially',
                 theta.star_stabilizer(example.left).intersection(theta.vertex_stabilizer(4)).order == 1),
        Check.of('X_T and X_1 meet trivially',
                 theta.star_stabilizer(example.right).intersection(theta.vertex_stabilizer(0)).order == 1),
    )
    p = params(graph, example.group, dsg.block_partition)
    report.add(Check.of('parameters (4, 3, 3, 4, 1)', p.quintuple() == (4, 3, 3, 4, 1), str(p.quintuple())))
    series = _decompose(report, dsg, caps)
    report.add(Check.of('series: m = 1, h = 1, case 5.1',
                        (series.m, series.h, series.terminal_case) == (1, 1, '5.1')))
    report.extend(growth_checks(theta))

    symmetric = AnalysisReport(TASK)
    variant = example_1(symmetric=True, caps=caps)
    sdsg, scase = _construct(symmetric, variant, caps)
    symmetric.add(
        Check.of('|X_S| = 6', variant.theta.star_stabilizer(variant.left).order == 6),
        Check.of('20 vertices of valency 6', (sdsg.graph.vertex_count, sdsg.graph.valency) == (20, 6)),
        Check.of('d = 2 and the criterion fails', scase.d == 2 and not scase.criterion),
    )
    sseries = _decompose(symmetric, sdsg, caps)
    symmetric.add(Check.of('series: m = 1, case 5.1', (sseries.m, sseries.terminal_case) == (1, '5.1')))
    try:
        reconstruct(sdsg.graph, sdsg.group, sdsg.block_partition, 2, caps, sseries)
        rejected = False
    except HypothesisViolatedException:
        rejected = True
    symmetric.add(Check.of('reconstruction at s = 2 rejected for d = 2', rejected))
    symmetric.extend(growth_checks(variant.theta))
    report.merge('symmetric', symmetric)
    return report


def verify_example_2(caps=None):
    """
    The Petersen graph under A_5 with 2-stars along the powers of (13524): six
    pentagons, and growth through levels 2 and 3.
    """
    caps = caps or DEFAULT_CAPS
    report = AnalysisReport(TASK, inputs={'example': 'example-2'})
    example = example_2(1, caps)
    theta = example.theta
    graph = example.graph
    sigma, tau = example.left.center, example.right.center
    report.add(
        _elements_check('X_sigma', theta.vertex_stabilizer(sigma),
                        ['(1)', '(345)', '(543)', '(12)(34)', '(12)(35)', '(12)(45)']),
        _elements_check('X_S1', theta.star_stabilizer(example.left), ['(1)', '(12)(35)']),
        _elements_check('X_tau', theta.vertex_stabilizer(tau),
                        ['(1)', '(125)', '(521)', '(34)(12)', '(34)(15)', '(34)(25)']),
        _elements_check('X_T1', theta.star_stabilizer(example.right), ['(1)', '(34)(25)']),
    )
    dsg, case = _construct(report, example, caps)
    report.add(Check.of('30 vertices', dsg.graph.vertex_count == 30))
    _component_check(report, dsg.graph, CycleGraph(5), caps, stated=6)
    grown = [theta]
    for level in (2, 3):
        grown.append(grow_theta(grown[-1]))
        expected = example_2(level, caps, graph)
        rep = grown[-1].representative
        report.add(Check.of('level %d orbit grows from the powers of x' % level,
                            (rep.left.arcs, rep.right.arcs) == (expected.left.arcs, expected.right.arcs)))
        report.add(Check.of('level %d orbit self-paired and (X, %d)-arc-transitive' % (level, level),
                            grown[-1].self_paired and grown[-1].level >= level))
    h, orders = stabilizer_chain_h(grown[-1])
    report.section('chain', {'h': h, 'orders': list(orders)})
    report.add(Check.of('stabilizer chain (6, 2, 2, 2) with h = 1', (h, orders) == (1, (6, 2, 2, 2))))
    report.add(Check.of('level 3 truncated to level 1 is the seed orbit', truncate(grown[-1], 1) == theta))
    series = _decompose(report, dsg, caps)
    p = series.params[0]
    report.add(Check.of('series: v = 3, k = 2, m = 1', (p.v, p.k, series.m) == (3, 2, 1)))
    report.extend(growth_checks(theta))
    return report


def verify_example_3(caps=None):
    """
    O_4 under A_7 with (3, 2)-stars: components are double covers of the
    Petersen graph.
    """
    caps = caps or DEFAULT_CAPS
    report = AnalysisReport(TASK, inputs={'example': 'example-3'})
    example = example_3(caps)
    theta = example.theta
    graph, group = example.graph, example.group
    left, right = example.left, example.right
    stab = theta.star_stabilizer(left)
    report.add(
        _elements_check('X_S', stab, ['(1)', '(467)', '(764)', '(46)(23)', '(47)(23)', '(67)(23)']),
        Check.of('S is a (2, 3)-star', is_star(graph, left.center, StarParams(2, 3), left.arcs)),
        Check.of('S is (X_S, 2)-arc-transitive', theta.star_level(left) >= 2),
        Check.of('(S, T) is a double-star', is_double_star(left, right)),
        Check.of('orbit self-paired', theta.self_paired),
    )
    meet = ['(1)', '(23)(46)']
    report.add(
        _elements_check('X_S meets X_456', stab.intersection(theta.vertex_stabilizer(right.center)), meet),
        _elements_check('X_T meets X_123',
                        theta.star_stabilizer(right).intersection(theta.vertex_stabilizer(left.center)), meet),
    )
    h, orders = stabilizer_chain_h(theta)
    report.section('chain', {'h': h, 'orders': list(orders)})
    report.add(Check.of('stabilizer chain (72, 18, 6) with h = 2', (h, orders) == (2, (72, 18, 6))))
    dsg, case = _construct(report, example, caps)
    report.add(Check.of('vertex total |A_7| / |X_S|', dsg.graph.vertex_count == group.order // stab.order,
                        '%d vertices' % dsg.graph.vertex_count))
    model = bipartite_double_cover(OddGraph(3))
    report.add(Check.of('model is cubic, bipartite, 20 vertices, girth 6',
                        (model.valency, model.is_bipartite, model.vertex_count, model.girth) == (3, True, 20, 6)))
    _component_check(report, dsg.graph, model, caps, stated=12)
    truncated = truncate(theta, 1)
    report.add(Check.of('level 1 truncation self-paired', truncated.self_paired))
    series = _decompose(report, dsg, caps, levels=(1, 2))
    p = series.params[0]
    report.add(Check.of('series: v = 12, k = 9, m = 2', (p.v, p.k, series.m) == (12, 9, 2)))
    _series_shape_check(report, series, 2, [(12, 9, 3, 4, 1), (3, 1, 3, 9, 1), (1, 1, 3, 3, 1)])
    report.add(Check.of('first refinement is the level-1 star partition',
                        series.partitions[1] == dsg.star_partition(1)))
    report.extend(growth_checks(theta))
    return report


def verify_example_4(n=3, caps=None):
    """
    K_{n,n} under the wreath product: components are K_{n,n} minus a perfect matching.
    """
    caps = caps or DEFAULT_CAPS
    report = AnalysisReport(TASK, inputs={'example': 'example-4', 'n': n})
    example = example_4(n, caps)
    theta = example.theta
    stab = theta.star_stabilizer(example.left)
    diagonal = all(x.array_form[k] + n == x.array_form[n + k] for x in stab for k in range(n))
    report.add(Check.of('X_S is the diagonal Sym(n - 1)', stab.order == factorial(n - 1) and diagonal,
                        '|X_S| = %d' % stab.order))
    meet = stab.intersection(theta.vertex_stabilizer(example.right.center))
    report.add(Check.of('X_S meets the partner stabilizer in Sym(n - 2)', meet.order == factorial(n - 2)))
    dsg, case = _construct(report, example, caps)
    graph = dsg.graph
    report.add(Check.of('vertex total 2 n! n', graph.vertex_count == 2 * factorial(n) * n,
                        '%d vertices' % graph.vertex_count))
    report.add(Check.of('(X, 2)-arc-transitive', s_arc_transitivity(graph, example.group, 2)))
    _component_check(report, graph, matching_complement(n), caps, stated=n)
    series = _decompose(report, dsg, caps, levels=(1, 2))
    h, orders = stabilizer_chain_h(theta)
    report.section('chain', {'h': h, 'orders': list(orders)})
    if n == 3:
        p = series.params[0]
        report.add(Check.of('stabilizer chain (12, 4, 2) with h = 2', (h, orders) == (2, (12, 4, 2))))
        report.add(Check.of('case 5.2 with v = 6, k = 4', (case.case, p.v, p.k) == ('5.2', 6, 4)))
        _series_shape_check(report, series, 2, [(6, 4, 2, 3, 1), (2, 1, 2, 4, 1), (1, 1, 2, 2, 1)])
    report.extend(growth_checks(theta))
    return report


def verify_cover(caps=None):
    """
    Multicover instances: the lifted double cover stops the series at a
    multicover; the Petersen double cover over its fibers is a cover.
    """
    caps = caps or DEFAULT_CAPS
    report = AnalysisReport(TASK, inputs={'example': 'cover'})
    cover, group, partition = double_cover_instance(caps)
    report.graphs['cover'] = cover
    report.add(Check.of('lifted group has order 120', group.order == 120))
    p = params(cover, group, partition)
    report.add(Check.of('v = 8, k = 6', (p.v, p.k) == (8, 6), str(p.quintuple())))
    series = refinement_series(cover, group, partition, caps)
    report.section('series', series.to_json())
    report.extend(series.checks)
    fibers = Partition(cover.vertex_count, [(v, v + cover.vertex_count // 2) for v in range(cover.vertex_count // 2)])
    report.add(
        Check.of('refinement is the fibers', series.partitions[1] == fibers),
        Check.of('case b with terminal multicover, m = 1',
                 (series.steps[0].case, series.terminal_case, series.m) == ('b', '5.2', 1)),
    )
    upper = quotient_graph(cover, fibers)
    report.add(Check.of('quotient by the fibers carries (4, 3, 3, 4, 1)',
                        params(upper, group, partition.over(fibers)).quintuple() == (4, 3, 3, 4, 1)))
    kernels = [kernel_on(cover, group, part).order for part in series.partitions]
    report.add(Check.of('kernel of order 2 on both levels', kernels == [2, 2], evidence=kernels))

    petersen, pgroup, pfibers = petersen_cover_instance(caps)
    q = params(petersen, pgroup, pfibers)
    report.add(
        Check.of('Petersen double cover is a cover of its fiber quotient', q.is_cover, str(q.quintuple())),
        Check.of('covers are not admissible triples', in_script_g(petersen, pgroup, pfibers) != ''),
    )
    return report


def verify_example_4_family(caps=None):
    report = AnalysisReport(TASK, inputs={'example': 'example-4'})
    for n in (3, 4):
        report.merge('n%d' % n, verify_example_4(n, caps))
    return report


EXAMPLES = {
    'example-1': verify_example_1,
    'example-2': verify_example_2,
    'example-3': verify_example_3,
    'example-4': verify_example_4_family,
    'cover': verify_cover,
}


def verify_paper(which='all', caps=None):
    """
    Runs one worked example, or all of them merged into one report.
    """
    caps = caps or DEFAULT_CAPS
    if which != 'all' and which not in EXAMPLES:
        raise UnknownNameException('Unknown example %r; choose from %s or all' % (which, sorted(EXAMPLES)))
    names = sorted(EXAMPLES) if which == 'all' else [which]
    report = AnalysisReport(TASK, inputs={'which': which})
    for name in names:
        logger.info('verifying %s', name)
        report.merge(name, EXAMPLES[name](caps))
    return report
