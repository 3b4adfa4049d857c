import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import gcd

import networkx as nx
import numpy as np
from sympy import factorint

from doublestar.config import DEFAULT_CAPS
from doublestar.construct import HypothesisViolatedException, criterion_holds, double_star_graph
from doublestar.graph import (Graph, IsomorphismCapExceededException, Partition, are_isomorphic,
                              is_x_symmetric, s_arc_transitivity)
from doublestar.perm import Action, ActionObject, stabilizer
from doublestar.report import Check
from doublestar.stars import Star, theta_orbit

logger = logging.getLogger(__name__)


class NotInvariantException(Exception):
    pass


class EmptyQuotientException(Exception):
    pass


class NotAQuotientStarException(Exception):
    pass


class NotInScriptGException(Exception):
    pass


class LevelNotComputedException(Exception):
    pass


class QuotientGraph(Graph):
    """
    The graph on the blocks of a partition, blocks adjacent when some edge
    joins them. The group acting on the parent acts on the blocks.
    """

    def __init__(self, parent, partition):
        block_of = partition.block_of
        edges = {(min(block_of[u], block_of[v]), max(block_of[u], block_of[v]))
                 for u, v in parent.edges if block_of[u] != block_of[v]}
        self.parent = parent
        self.partition = partition
        self.internal_edges = sum(1 for u, v in parent.edges if block_of[u] == block_of[v])
        blocks = partition.blocks

        def image_factory(x):
            images = parent.images(x)
            return lambda b: block_of[images[blocks[b][0]]]

        super(QuotientGraph, self).__init__(len(blocks), sorted(edges),
                                            labels=[('B', b) for b in range(len(blocks))],
                                            image_factory=image_factory, point_degree=parent.point_degree)


def quotient_graph(graph, partition):
    return QuotientGraph(graph, partition)


def block_counts(graph, partition):
    """
    Returns the matrix M with M[v, C] = |Gamma(v) & C|.
    """
    n = graph.vertex_count
    indicator = np.zeros((n, len(partition)), dtype=int)
    indicator[np.arange(n), list(partition.block_of)] = 1
    return graph.adjacency_matrix() @ indicator


@dataclass(frozen=True)
class ParamVector(object):
    """
    Parameters of an imprimitive triple (graph, group, partition).

    v: block size; k: |Gamma(B) & C|; r: number of blocks met by Gamma(v);
    b: valency of the quotient; d: valency of Gamma[B, C]; c: number of
    components of Gamma[B, C]; m and h come from the refinement series.
    """
    v: int
    k: int
    r: int
    b: int
    d: int
    c: int
    m: int = None
    h: int = None

    @property
    def is_trivial(self):
        return self.v == 1

    @property
    def is_multicover(self):
        return self.v >= 2 and self.v == self.k

    @property
    def is_cover(self):
        return self.is_multicover and self.d == 1

    def quintuple(self):
        return self.v, self.k, self.r, self.b, self.d

    def to_json(self):
        data = {'v': self.v, 'k': self.k, 'r': self.r, 'b': self.b, 'd': self.d, 'c': self.c}
        if self.m is not None:
            data.update(m=self.m, h=self.h)
        return data


def _single(values, name):
    values = {int(x) for x in np.ravel(values)}
    if len(values) != 1:
        raise NotInvariantException('%s depends on the choice of arc: %s' % (name, sorted(values)))
    return values.pop()


def cross_components(graph, block, other):
    """
    Returns the components of Gamma[B, C] as frozensets of vertices.
    """
    targets = set(other)
    g = nx.Graph()
    g.add_edges_from((u, w) for u in block for w in graph.adjacency[u] if w in targets)
    return frozenset(frozenset(c) for c in nx.connected_components(g))


def params(graph, group, partition):
    """
    Computes (v, k, r, b, d) and c, each checked over every vertex and every arc
    of the quotient.

    Raises
    ------
        NotInvariantException if the partition is not invariant or a parameter
        depends on the choice of vertex or arc

        EmptyQuotientException if no edge joins two blocks
    """
    if not partition.is_invariant(graph, group):
        raise NotInvariantException('The partition is not invariant under the group.')
    n = graph.vertex_count
    counts = block_counts(graph, partition)
    rows = np.arange(n)
    own = counts[rows, list(partition.block_of)].copy()
    cross = counts.copy()
    cross[rows, list(partition.block_of)] = 0
    if not cross.any():
        raise EmptyQuotientException('The quotient has no edges.')
    if own.any():
        raise NotInvariantException('A block contains an edge while the quotient is nonempty.')
    meets = cross > 0
    indicator = np.zeros((n, len(partition)), dtype=int)
    indicator[rows, list(partition.block_of)] = 1
    block_meets = indicator.T @ meets.astype(int)
    v = _single([len(b) for b in partition.blocks], 'v')
    k = _single(block_meets[block_meets > 0], 'k')
    r = _single(meets.sum(axis=1), 'r')
    b = _single((block_meets > 0).sum(axis=1), 'b')
    d = _single(cross[meets], 'd')
    arcs = np.argwhere(block_meets > 0)
    c = _single([len(cross_components(graph, partition.blocks[i], partition.blocks[j]))
                 for i, j in arcs if i < j], 'c')
    return ParamVector(v, k, r, b, d, c)


def in_script_g(graph, group, partition):
    """
    Returns the empty string iff the partition is nontrivial and invariant, the
    graph is X-symmetric with a nonempty quotient and not a multicover of it;
    otherwise the reason.
    """
    if len(partition) < 2:
        return 'fewer than two blocks'
    if not is_x_symmetric(graph, group):
        return 'the graph is not X-symmetric'
    try:
        p = params(graph, group, partition)
    except (NotInvariantException, EmptyQuotientException) as error:
        return str(error)
    if p.is_trivial:
        return 'the partition is trivial'
    if p.is_multicover:
        return 'the graph is a multicover of the quotient'
    return ''


def require_script_g(graph, group, partition):
    reason = in_script_g(graph, group, partition)
    if reason:
        raise NotInScriptGException(reason)


def quotient_star(quotient, v):
    """
    Returns the star of quotient arcs (B(v), C) with v adjacent to some vertex of C.
    """
    parent, block_of = quotient.parent, quotient.partition.block_of
    own = block_of[v]
    arcs = sorted({(own, block_of[w]) for w in parent.adjacency[v] if block_of[w] != own})
    return Star.of(quotient, arcs, r=len(arcs))


def center_intersection(quotient, star):
    """
    Returns the vertices of the center block adjacent to every block the star points to.
    """
    if not isinstance(quotient, QuotientGraph) or star.graph is not quotient or star.l != 1:
        raise NotAQuotientStarException('Expected a 1-star of the quotient graph.')
    parent, partition = quotient.parent, quotient.partition
    result = set(partition.blocks[star.center])
    for _, target in star.arcs:
        block = set(partition.blocks[target])
        result = {u for u in result if block.intersection(parent.adjacency[u])}
    return tuple(sorted(result))


def kernel_on(graph, group, partition=None):
    """
    Returns the kernel of the group on the vertices, or on the blocks of a partition.
    """
    if partition is None:
        return group.kernel(graph.action('point'), [ActionObject.point(v) for v in range(graph.vertex_count)])
    return group.kernel(Action('partition-block', graph.images),
                        [ActionObject.block(block) for block in partition.blocks])


def _witness(verdict):
    if verdict.witness is None:
        return None
    return sorted([int(u), int(w)] for u, w in verdict.witness.items())


def compare(name, g1, g2, caps, claim=False):
    """
    Runs an isomorphism test and records it as a check carrying the witness.
    """
    try:
        verdict = are_isomorphic(g1, g2, caps.iso)
    except IsomorphismCapExceededException as error:
        return Check.skip(name, str(error), cap_hit=True)
    make = Check.claim if claim else Check.of
    return make(name, verdict.isomorphic, verdict.reason, _witness(verdict))


@dataclass
class RefinementStep(object):
    level: int
    partition: Partition
    refined: Partition
    params: ParamVector
    refined_params: ParamVector
    theta: object
    case: str
    pi: object
    checks: list

    def to_json(self):
        return {
            'level': self.level,
            'case': self.case,
            'params': self.params.to_json(),
            'refined_params': self.refined_params.to_json(),
            'theta_pairs': len(self.theta),
            'pi_vertices': self.pi.graph.vertex_count,
        }


def refine_once(graph, group, partition, caps=None, level=0):
    """
    Refines B to B1, the partition into center intersections of the quotient
    stars, and classifies the result.

    Returns
    -------
        RefinementStep with case 'a' (B1 trivial), 'b' (multicover of the
        quotient by B1) or 'c' (the triple with B1 is again imprimitive)
    """
    caps = caps or DEFAULT_CAPS
    require_script_g(graph, group, partition)
    quotient = quotient_graph(graph, partition)
    p = params(graph, group, partition)
    stars = [quotient_star(quotient, v) for v in range(graph.vertex_count)]
    centers = {center_intersection(quotient, star) for star in stars}
    refined = Partition(graph.vertex_count, centers)
    p1 = params(graph, group, refined)
    if p1.v == 1:
        case = 'a'
    elif p1.v == p1.k:
        case = 'b'
    else:
        case = 'c'
    sigma, tau = graph.arcs(1)[0]
    theta = theta_orbit(group, stars[sigma], stars[tau])
    pi = double_star_graph(theta)
    tag = 'refine[%d]' % level
    valency = graph.valency
    checks = [
        Check.of(tag + '/proper refinement', refined.refines(partition) and len(refined) > len(partition)),
        Check.of(tag + '/v1 divides gcd(v, k)', gcd(p.v, p.k) % p1.v == 0, '%d | %d' % (p1.v, gcd(p.v, p.k))),
        Check.of(tag + '/r divides gcd(r1, b1)', gcd(p1.r, p1.b) % p.r == 0, '%d | %d' % (p.r, gcd(p1.r, p1.b))),
        Check.of(tag + '/d1 divides d', p.d % p1.d == 0, '%d | %d' % (p1.d, p.d)),
        Check.of(tag + '/v1 r1 = b1 k1', p1.v * p1.r == p1.b * p1.k),
        Check.of(tag + '/r1 d1 = r d = valency', p1.r * p1.d == p.r * p.d == valency),
        Check.of(tag + '/theta self-paired and X-symmetric', theta.x_symmetric),
        compare(tag + '/refined quotient is the double-star graph', pi.graph, quotient_graph(graph, refined), caps),
    ]
    logger.info('refinement level %d: %s -> v1 = %d, k1 = %d, case %s', level, p.quintuple(), p1.v, p1.k, case)
    return RefinementStep(level, partition, refined, p, p1, theta, case, pi, checks)


@dataclass
class RefinementSeries(object):
    graph: Graph
    group: object
    partitions: list
    params: list
    steps: list
    terminal_case: str
    m: int
    h: int
    checks: list
    _quotients: dict = field(default_factory=dict, repr=False)

    @property
    def hat(self):
        return replace(self.params[0], m=self.m, h=self.h)

    def partition_at(self, level):
        """
        Returns B_level; the series is constant from B_m on.
        """
        if level < 0:
            raise LevelNotComputedException('Negative level %d.' % level)
        return self.partitions[min(level, self.m)]

    def quotient_at(self, level):
        partition = self.partition_at(level)
        if partition not in self._quotients:
            self._quotients[partition] = quotient_graph(self.graph, partition)
        return self._quotients[partition]

    def to_json(self):
        return {
            'm': self.m,
            'h': self.h,
            'terminal_case': self.terminal_case,
            'hat': self.hat.to_json(),
            'levels': [p.to_json() for p in self.params],
            'steps': [s.to_json() for s in self.steps],
        }


def _divides(a, b):
    return a != 0 and b % a == 0


def _series_checks(graph, group, partitions, plist, steps, m, h, caps):
    checks = []
    valency = graph.valency
    for i, p in enumerate(plist):
        checks.append(Check.of('level %d: v r = k b' % i, p.v * p.r == p.k * p.b, str(p.quintuple())))
        checks.append(Check.of('level %d: r d = valency' % i, p.r * p.d == valency))
    for i in range(m):
        p, q = plist[i], plist[i + 1]
        checks.append(Check.of('level %d: imprimitive' % i, p.v >= 2 and 1 <= p.k <= p.v - 1))
        checks.append(Check.of('level %d: divisibility' % i,
                               _divides(q.v, gcd(p.v, p.k)) and _divides(p.r, gcd(q.r, q.b)) and _divides(q.d, p.d)))
        checks.append(Check.of('level %d: strictly decreasing' % i, p.v > q.v and _divides(q.v, p.v)))
    p0 = plist[0]
    exponents = sum(factorint(gcd(p0.v, p0.k)).values())
    checks.append(Check.of('series length bound', 1 <= m <= exponents + 1, 'm = %d, bound %d' % (m, exponents + 1)))
    for j in range(1, m + 1):
        upper = quotient_graph(graph, partitions[j])
        for i in range(j):
            name = 'quotient of level %d over level %d' % (i, j)
            pi_, pj = plist[i], plist[j]
            expected = (pi_.v // pj.v, pi_.k // pj.v, pi_.r, pi_.b, pj.b // pi_.r)
            try:
                got = params(upper, group, partitions[i].over(partitions[j])).quintuple()
            except (NotInvariantException, EmptyQuotientException) as error:
                checks.append(Check.of(name, False, str(error)))
                continue
            checks.append(Check.of(name, got == expected, 'computed %s, expected %s' % (got, expected)))
    last = plist[m]
    kernels = [kernel_on(graph, group, partition) for partition in partitions]
    vertex_kernel = kernel_on(graph, group)
    orders = {'vertices': vertex_kernel.order, 'levels': [k.order for k in kernels]}
    if last.v == 1:
        checks.append(Check.of('terminal: trivial partition', last.k == 1))
        checks.append(Check.of('terminal: faithful on blocks iff faithful on vertices',
                               all((k.order == 1) == (vertex_kernel.order == 1) for k in kernels)
                               and kernels[m - 1] == vertex_kernel, evidence=orders))
    else:
        checks.append(Check.of('terminal: multicover', last.v == last.k >= 2))
        checks.append(Check.of('terminal: faithfulness agrees on all levels',
                               len({k.order == 1 for k in kernels}) == 1, evidence=orders))
    u, w = graph.edges[0]
    nested = [cross_components(graph, partitions[i].block(u), partitions[i].block(w)) for i in range(h)]
    checks.append(Check.of('components nest strictly through level h - 1',
                           all(nested[i + 1] < nested[i] for i in range(h - 1)),
                           evidence=[len(c) for c in nested]))
    ratios = [Fraction(plist[i].k, plist[i].c) for i in range(h)]
    checks.append(Check.of('k / c constant through level h - 1 and at least d',
                           len(set(ratios)) == 1 and ratios[0] >= p0.d, evidence=[str(x) for x in ratios]))
    return checks


def refinement_series(graph, group, partition, caps=None):
    """
    Iterates refine_once from B = B0 until the refined partition is trivial or
    the graph is a multicover of its quotient.

    Returns
    -------
        RefinementSeries with m, h, per-level parameters and the checks of the
        parameter identities
    """
    caps = caps or DEFAULT_CAPS
    steps = []
    current = partition
    while True:
        step = refine_once(graph, group, current, caps, level=len(steps))
        steps.append(step)
        if step.case != 'c' or len(step.refined) <= len(current):
            break
        current = step.refined
    partitions = [s.partition for s in steps] + [steps[-1].refined]
    plist = [s.params for s in steps] + [steps[-1].refined_params]
    m = len(steps)
    h = max(j for j in range(1, m + 1) if plist[j - 1].d == plist[0].d)
    terminal = '5.1' if steps[-1].case == 'a' else '5.2'
    checks = [c for s in steps for c in s.checks]
    checks.extend(_series_checks(graph, group, partitions, plist, steps, m, h, caps))
    logger.info('refinement series: m = %d, h = %d, terminal case %s', m, h, terminal)
    return RefinementSeries(graph, group, partitions, plist, steps, terminal, m, h, checks)


def block_arcs(series, v, i, j):
    """
    Returns Arc_i of the quotient by B_j seen from v: the block sequences of the
    i-arcs of the graph starting at v that are arcs of the quotient.
    """
    if j > series.m or j < 0:
        raise LevelNotComputedException('Level %d not computed; the series has m = %d.' % (j, series.m))
    quotient = series.quotient_at(j)
    block_of = quotient.partition.block_of
    arcs = {tuple(block_of[u] for u in arc) for arc in series.graph.l_arcs_from(i, v)}
    return quotient, tuple(sorted(a for a in arcs if quotient.is_arc(a)))


def block_arc_check(series, i, j):
    """
    Checks that Arc_i of the quotient by B_j agrees for two vertices of one
    B_j-block exactly when they share a B_{i+j}-block, and that its stabilizer
    is the stabilizer of that block.
    """
    graph, group = series.graph, series.group
    finer = series.partition_at(i + j)
    coarse = series.partitions[j]
    quotient = None
    agree = True
    seen = {}
    for block in coarse.blocks:
        by_arcs = {}
        for v in block:
            quotient, arcs = block_arcs(series, v, i, j)
            seen[v] = arcs
            by_arcs.setdefault(arcs, set()).add(v)
        by_block = {}
        for v in block:
            by_block.setdefault(finer.block_of[v], set()).add(v)
        agree &= {frozenset(s) for s in by_arcs.values()} == {frozenset(s) for s in by_block.values()}
    left = stabilizer(group, ActionObject('star', seen[0]), quotient.action('star'))
    right = stabilizer(group, ActionObject.block(finer.block(0)), Action('partition-block', graph.images))
    tag = 'block arcs i = %d, j = %d' % (i, j)
    return [Check.of(tag + ': equal iff same block', agree),
            Check.of(tag + ': stabilizer equals block stabilizer', left == right,
                     evidence=[left.order, right.order])]


def block_valency_check(series, j):
    """
    Scans every arc (s, t) and every arc (i, g) of Gamma[B(s), B(t)] with
    B_j(s) = B_j(i); when d_{j-1} = d the ends t and g share a B_{j-1}-block.
    """
    name = 'block valency at level %d' % j
    if not 1 <= j <= series.m:
        raise LevelNotComputedException('Level %d outside 1..%d.' % (j, series.m))
    if series.params[j - 1].d != series.params[0].d:
        return Check.skip(name, 'd_%d differs from d' % (j - 1))
    graph = series.graph
    base, level, previous = series.partitions[0], series.partitions[j], series.partitions[j - 1]
    violations = 0
    for s, t in graph.arcs(1):
        target = set(base.block(t))
        for i in base.block(s):
            if level.block_of[i] != level.block_of[s]:
                continue
            for g in graph.adjacency[i]:
                if g in target and previous.block_of[g] != previous.block_of[t]:
                    violations += 1
    return Check.of(name, violations == 0, '%d violations' % violations)


@dataclass
class Reconstruction(object):
    theta: object
    pi: object
    l: int
    target_level: int
    checks: list


def reconstruct(graph, group, partition, s, caps=None, series=None):
    """
    Rebuilds the quotient by B_target as a double-star graph of the quotient by B.

    For s = 1 the stars are Arc_h(Gamma_B, v) and the target level is h. For
    s >= 2 the graph must be (X, s)-arc-transitive with r >= 2 and d = 1; the
    stars are Arc_l(Gamma_B, v) with l = max(s, m) and the target level is m.

    Raises
    ------
        HypothesisViolatedException if the s >= 2 preconditions fail
    """
    caps = caps or DEFAULT_CAPS
    if s < 1:
        raise HypothesisViolatedException('s must be at least 1.')
    series = series or refinement_series(graph, group, partition, caps)
    p = series.params[0]
    if s >= 2:
        if p.r < 2 or p.d != 1:
            raise HypothesisViolatedException('Needs r >= 2 and d = 1, got r = %d, d = %d.' % (p.r, p.d))
        if not s_arc_transitivity(graph, group, s):
            raise HypothesisViolatedException('The graph is not (X, %d)-arc-transitive.' % s)
        l, target = max(s, series.m), series.m
    else:
        l, target = series.h, series.h
    sigma, tau = graph.arcs(1)[0]
    quotient, left_arcs = block_arcs(series, sigma, l, 0)
    _, right_arcs = block_arcs(series, tau, l, 0)
    left = Star.of(quotient, left_arcs, r=p.r)
    right = Star.of(quotient, right_arcs, r=p.r)
    theta = theta_orbit(group, left, right)
    checks = [
        Check.of('reconstruct: orbit self-paired', theta.self_paired),
        Check.of('reconstruct: orbit (X, %d)-arc-transitive' % s, theta.level >= min(s, l), 'level %d' % theta.level),
    ]
    if s >= 2:
        checks.append(Check.of('reconstruct: stabilizer equality', criterion_holds(theta, left, right)))
    pi = double_star_graph(theta)
    checks.append(compare('reconstruct: double-star graph is the quotient by B_%d' % target, pi.graph,
                          series.quotient_at(target), caps))
    if s >= 2:
        checks.append(Check.of('reconstruct: (X, %d)-arc-transitive' % s, s_arc_transitivity(pi.graph, group, s)))
    return Reconstruction(theta, pi, l, target, checks)
