import logging
from dataclasses import dataclass

from doublestar.config import DEFAULT_CAPS
from doublestar.construct import (chain_h, coset_graph, criterion_holds, double_star_graph, grow,
                                  stabilizer_chain, star_partitions, truncate)
from doublestar.graph import is_isomorphism, s_arc_transitivity
from doublestar.quotient import (center_intersection, compare, in_script_g, kernel_on, params,
                                 quotient_graph, quotient_star)
from doublestar.report import Check
from doublestar.stars import project

logger = logging.getLogger(__name__)


@dataclass
class StructureCase(object):
    """
    Which of the two structure cases a double-star graph falls in, with the
    quantities deciding it.
    """
    case: str
    d: int
    c: int
    h: int
    l: int
    criterion: bool
    level: int
    s_arc_transitive: bool
    chain: tuple
    checks: list

    def to_json(self):
        return {
            'case': self.case,
            'd': self.d,
            'c': self.c,
            'h': self.h,
            'l': self.l,
            'criterion': self.criterion,
            'level': self.level,
            's_arc_transitive': self.s_arc_transitive,
            'chain': list(self.chain),
        }


def structure_case(dsg, caps=None):
    """
    Classifies the double-star graph with its center partition.

    Case 5.1 has d >= 2, h = l and the stabilizer criterion failing; case 5.2
    has d = 1, the criterion holding and the graph (X, s)-arc-transitive for the
    level s of the orbit. Each level i < l is also compared with the quotient by S_i.
    """
    caps = caps or DEFAULT_CAPS
    theta = dsg.theta
    graph, group = dsg.graph, dsg.group
    left, right = theta.representative.left, theta.representative.right
    l = theta.params.l
    p = params(graph, group, dsg.block_partition)
    chain = stabilizer_chain(theta, left)
    h = chain_h(chain)
    criterion = criterion_holds(theta, left, right)
    level = theta.level
    transitive = s_arc_transitivity(graph, group, level) if level >= 1 else False
    checks = []
    if p.d >= 2:
        case = '5.1'
        checks.append(Check.of('structure 5.1: h = l', h == l, 'h = %d, l = %d' % (h, l)))
        checks.append(Check.of('structure 5.1: stabilizer criterion fails', not criterion))
    else:
        case = '5.2'
        checks.append(Check.of('structure 5.2: stabilizer criterion holds', criterion))
        checks.append(Check.of('structure 5.2: h <= l', 1 <= h <= l))
        checks.append(Check.of('structure 5.2: (X, %d)-arc-transitive' % level, transitive))
    partitions = star_partitions(dsg)
    checks.append(Check.of('star partitions strictly finer through level h',
                           all(len(partitions[i]) < len(partitions[i + 1]) for i in range(h)),
                           evidence=[len(part) for part in partitions]))
    if case == '5.2':
        checks.append(Check.of('star partition at level h is trivial', partitions[h].is_trivial))
    valency = graph.valency
    for i in range(1, l):
        tag = 'truncation level %d' % i
        if partitions[i].is_trivial:
            continue
        quotient = quotient_graph(graph, partitions[i])
        truncated = double_star_graph(truncate(theta, i))
        checks.append(compare(tag + ': truncated double-star graph is the quotient', truncated.graph, quotient, caps))
        pi = params(graph, group, partitions[i])
        checks.append(Check.of(tag + ': r_i = r', pi.r == p.r, 'r_i = %d, r = %d' % (pi.r, p.r)))
        checks.append(Check.claim(tag + ': d_i = valency / r', pi.d * p.r == valency,
                                  'd_i = %d, valency %d, r = %d' % (pi.d, valency, p.r)))
    sigma = theta.graph
    checks.append(Check.of('kernel on the double-star graph equals kernel on the base graph',
                           kernel_on(graph, group) == kernel_on(sigma, group)))
    logger.info('structure case %s with d = %d, h = %d, l = %d', case, p.d, h, l)
    return StructureCase(case, p.d, p.c, h, l, criterion, level, transitive,
                         tuple(g.order for g in chain), checks)


def theorem_checks(dsg, caps=None):
    """
    Runs the construction property suite on a double-star graph.

    Returns
    -------
        (StructureCase, list of Check)
    """
    caps = caps or DEFAULT_CAPS
    theta = dsg.theta
    graph, group, sigma = dsg.graph, dsg.group, theta.graph
    partition = dsg.block_partition
    quotient = quotient_graph(graph, partition)
    centers = {b: dsg.stars[block[0]].center for b, block in enumerate(partition.blocks)}
    checks = [Check.of('quotient by centers is the base graph', is_isomorphism(quotient, sigma, centers),
                       evidence=sorted(centers.items()))]
    finer = dsg.star_partition(1)
    stars_ok = True
    centers_ok = True
    for v, star in enumerate(dsg.stars):
        q = quotient_star(quotient, v)
        stars_ok &= tuple(sorted((centers[a], centers[b]) for a, b in q.arcs)) == project(star, 1).arcs
        centers_ok &= center_intersection(quotient, q) == finer.block(v)
    checks.append(Check.of('quotient stars follow the first steps', stars_ok))
    checks.append(Check.of('center intersection is the level-1 star block', centers_ok))
    reason = in_script_g(graph, group, partition)
    checks.append(Check.of('imprimitive triple is admissible', not reason, reason))
    case = structure_case(dsg, caps)
    checks.extend(case.checks)
    witness = theta.pairing_witness
    if witness is not None:
        cosets = coset_graph(group, theta.star_stabilizer(theta.representative.left), witness)
        checks.append(compare('coset graph is the double-star graph', graph, cosets, caps))
    else:
        checks.append(Check.skip('coset graph is the double-star graph', 'no pairing witness'))
    return case, checks


def _map(arcs, images):
    return tuple(sorted(tuple(images[v] for v in arc) for arc in arcs))


def growth_checks(theta, stars=None):
    """
    Checks growth of the given stars, by default both stars of the representative:
    prefixes and stabilizer are kept, the criterion holds exactly when a grown side
    is a star, both sides agree for self-paired orbits, and growth commutes with
    the generators.
    """
    stars = stars or (theta.representative.left, theta.representative.right)
    if theta.params.r < 2:
        return [Check.skip('growth', 'r = 1')]
    checks = []
    for star in stars:
        tag = 'growth at %s' % star.graph.label(star.center)
        result = grow(theta, star)
        checks.append(Check.of(tag + ': prefixes kept', result.prefixes_preserved))
        checks.append(Check.of(tag + ': stabilizer kept', result.stabilizer_preserved))
        checks.append(Check.of(tag + ': criterion iff grown star', result.grows == result.criterion,
                               'criterion %s, plus %s, minus %s'
                               % (result.criterion, result.plus_is_star, result.minus_is_star)))
        if theta.self_paired:
            checks.append(Check.of(tag + ': both sides agree', result.extended_plus == result.extended_minus))
        commutes = True
        for x in theta.group.generators:
            moved = grow(theta, star.image(x))
            commutes &= moved.extended_plus == _map(result.extended_plus, star.graph.images(x))
        checks.append(Check.of(tag + ': commutes with the group', commutes))
    return checks
