import logging
from dataclasses import dataclass

from doublestar.graph import Graph, Partition
from doublestar.perm import format_cycles
from doublestar.stars import (IndexOutOfRangeException, Star, StarParams, is_star, project,
                              theta_orbit)

logger = logging.getLogger(__name__)


class NotSelfPairedException(Exception):
    pass


class NotArcTransitiveOrbitException(Exception):
    pass


class RTooSmallException(Exception):
    pass


class HypothesisViolatedException(Exception):
    pass


class NotSubgroupException(Exception):
    pass


class NotAnElementException(Exception):
    pass


class DegenerateDoubleCosetException(Exception):
    pass


class AsymmetricDoubleCosetException(Exception):
    pass


class DoubleStarGraph(object):
    """
    The graph on St(Theta) with an edge {L, R} for every (L, R) in Theta.

    The group acting on the underlying graph acts on the stars, hence on the
    vertices of the constructed graph.
    """

    def __init__(self, theta):
        self.theta = theta
        self.stars = theta.stars()
        self._index = {star.arcs: v for v, star in enumerate(self.stars)}
        edges = {tuple(sorted((self._index[left], self._index[right]))) for left, right in theta.pairs}
        sigma = theta.graph
        stars, index = self.stars, self._index

        def image_factory(x):
            images = sigma.images(x)
            return lambda v: index[tuple(sorted(tuple(images[p] for p in arc) for arc in stars[v].arcs))]

        self.graph = Graph(len(stars), sorted(edges), labels=[star.display() for star in stars],
                           image_factory=image_factory, point_degree=sigma.point_degree)
        logger.info('double-star graph with %d vertices and %d edges', self.graph.vertex_count,
                    self.graph.edge_count)

    def __repr__(self):
        return 'DoubleStarGraph(vertices=%d, valency=%s)' % (self.graph.vertex_count, self.graph.valency)

    @property
    def group(self):
        return self.theta.group

    @property
    def vertex_map(self):
        return self.stars

    def index_of_star(self, star):
        return self._index[star.arcs]

    @property
    def block_partition(self):
        return self.star_partition(0)

    def star_partition(self, i):
        """
        Groups the stars by their projection to level i; level 0 groups by center.
        """
        if not 0 <= i <= self.theta.params.l:
            raise IndexOutOfRangeException('Level %d outside 0..%d.' % (i, self.theta.params.l))
        return Partition.from_key(len(self.stars), lambda v: project(self.stars[v], i).arcs)

    def vertex_map_json(self):
        return [star.encode() for star in self.stars]


def double_star_graph(theta):
    if not theta.self_paired:
        raise NotSelfPairedException('The orbit is not self-paired.')
    if not theta.is_arc_transitive:
        raise NotArcTransitiveOrbitException('The orbit is not (X, 1)-arc-transitive.')
    return DoubleStarGraph(theta)


def _assemble(star, partners):
    """
    Joins each arc of S with the arcs of a partner T that continue it one step.
    """
    graph = star.graph
    prefixes = star.arc_set
    arcs = set()
    for partner in partners:
        for arc in partner.arcs:
            candidate = (star.center,) + arc
            if candidate[:-1] in prefixes and graph.is_arc(candidate):
                arcs.add(candidate)
    return tuple(sorted(arcs))


def stabilizer_chain(theta, star):
    """
    Returns the subgroups X_{S(0)} >= X_{S(1)} >= ... >= X_{S(l)}.
    """
    return [theta.star_stabilizer(project(star, i)) for i in range(star.l + 1)]


def chain_h(chain):
    """
    Returns the first index i >= 1 whose subgroup equals the last one.
    """
    last = chain[-1]
    for i in range(1, len(chain)):
        if chain[i] == last:
            return i
    return len(chain) - 1


def criterion_holds(theta, star, partner):
    """
    Tests X_S and X_tau meet where X_T and X_sigma meet, with sigma, tau the centers.
    """
    left = theta.star_stabilizer(star).intersection(theta.vertex_stabilizer(partner.center))
    right = theta.star_stabilizer(partner).intersection(theta.vertex_stabilizer(star.center))
    return left == right


@dataclass
class GrowthResult(object):
    star: Star
    theta_plus: tuple
    theta_minus: tuple
    extended_plus: tuple
    extended_minus: tuple
    plus_is_star: bool
    minus_is_star: bool
    criterion: bool
    prefixes_preserved: bool
    stabilizer_preserved: bool
    chain: tuple
    h: int

    @property
    def grows(self):
        return self.plus_is_star or self.minus_is_star

    def grown(self, side='+'):
        arcs = self.extended_plus if side == '+' else self.extended_minus
        return Star(self.star.center, StarParams(self.star.l + 1, self.star.r), arcs, self.star.graph)


def grow(theta, star):
    """
    Extends a star of St(Theta) by one level through its Theta-partners.

    Parameters
    ----------
    theta: ThetaOrbit

    star: Star
        a member of St(Theta)

    Returns
    -------
        GrowthResult
    """
    if star.r < 2:
        raise RTooSmallException('Growth needs r >= 2; with r = 1 the extension is empty.')
    plus, minus = theta.plus(star), theta.minus(star)
    extended_plus, extended_minus = _assemble(star, plus), _assemble(star, minus)
    grown_params = StarParams(star.l + 1, star.r)
    graph = star.graph
    flags = [bool(arcs) and is_star(graph, star.center, grown_params, arcs)
             for arcs in (extended_plus, extended_minus)]
    criterion = any(criterion_holds(theta, star, partner) for partner in set(plus) | set(minus))
    prefixes = True
    stabilizers = True
    base = theta.star_stabilizer(star)
    for arcs in (extended_plus, extended_minus):
        if not arcs:
            continue
        grown = Star(star.center, grown_params, arcs, graph)
        prefixes &= all(project(grown, i).arcs == project(star, i).arcs for i in range(star.l + 1))
        stabilizers &= theta.star_stabilizer(grown) == base
    chain = stabilizer_chain(theta, star)
    return GrowthResult(star, plus, minus, extended_plus, extended_minus, flags[0], flags[1], criterion,
                        prefixes, stabilizers, tuple(g.order for g in chain), chain_h(chain))


def grow_theta(theta):
    """
    Returns the orbit of (Theta+[S], Theta-[T]) one level up.

    Raises
    ------
        HypothesisViolatedException unless Theta is self-paired and the growth
        criterion holds
    """
    if not theta.self_paired:
        raise HypothesisViolatedException('Growth of the orbit needs a self-paired orbit.')
    left, right = theta.representative.left, theta.representative.right
    if not criterion_holds(theta, left, right):
        raise HypothesisViolatedException('X_S and X_tau meet differently from X_T and X_sigma.')
    grown_left = grow(theta, left).grown('+')
    grown_right = grow(theta, right).grown('-')
    return theta_orbit(theta.group, grown_left, grown_right)


def stabilizer_chain_h(theta):
    """
    Returns h and the stabilizer orders |X_{S(0)}|, ..., |X_{S(l)}|, where h is
    the first level whose stabilizer equals X_S.
    """
    b = theta.graph.valency
    if b is None or b < 3 or theta.params.r < 2:
        raise HypothesisViolatedException('The stabilizer chain needs valency >= 3 and r >= 2.')
    chain = stabilizer_chain(theta, theta.representative.left)
    return chain_h(chain), tuple(g.order for g in chain)


def truncate(theta, i):
    l = theta.params.l
    if not 1 <= i <= l:
        raise IndexOutOfRangeException('Truncation level %d outside 1..%d.' % (i, l))
    if i == l:
        return theta
    rep = theta.representative
    return theta_orbit(theta.group, project(rep.left, i), project(rep.right, i))


def coset_graph(group, subgroup, z):
    """
    Builds Cos(X, G, GzG) on the right cosets of G, with Gx ~ Gy iff x y^-1 lies in GzG.

    Parameters
    ----------
    group: PermGroup
        X

    subgroup: PermGroup
        a proper subgroup G

    z: sympy Permutation
        an element of X outside G with GzG = Gz^-1G

    Returns
    -------
        Graph whose vertex images follow right multiplication by X
    """
    if not subgroup.is_subgroup_of(group):
        raise NotSubgroupException('G is not a subgroup of X.')
    if subgroup.order == group.order:
        raise NotSubgroupException('G = X has a single coset.')
    if z not in group:
        raise NotAnElementException('z = %s is not in X.' % format_cycles(z))
    if z in subgroup:
        raise DegenerateDoubleCosetException('z lies in G; the double coset GzG is G itself.')
    double_coset = {g * z * h for g in subgroup for h in subgroup}
    if {~d for d in double_coset} != double_coset:
        raise AsymmetricDoubleCosetException('GzG differs from Gz^-1G.')
    coset_of = {}
    representatives = []
    for x in group.elements:
        if x in coset_of:
            continue
        for g in subgroup:
            coset_of[g * x] = len(representatives)
        representatives.append(x)
    edges = set()
    for v, x in enumerate(representatives):
        for d in double_coset:
            w = coset_of[d * x]
            edges.add((min(v, w), max(v, w)))

    def image_factory(p):
        return lambda v: coset_of[representatives[v] * p]

    graph = Graph(len(representatives), sorted(edges), labels=[format_cycles(x) for x in representatives],
                  image_factory=image_factory, point_degree=group.degree)
    logger.info('coset graph on %d cosets of a subgroup of order %d, valency %d',
                len(representatives), subgroup.order, len(double_coset) // subgroup.order)
    return graph


def star_partitions(dsg):
    """
    Returns the partitions S_0, ..., S_l of the vertices of a double-star graph,
    S_i grouping the stars by their projection to level i.
    """
    return [dsg.star_partition(i) for i in range(dsg.theta.params.l + 1)]
