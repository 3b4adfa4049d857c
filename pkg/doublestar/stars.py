import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product

from doublestar.config import DEFAULT_CAPS, CapExceededException
from doublestar.graph import is_x_symmetric, require_symmetric
from doublestar.perm import ActionObject, format_cycles, is_transitive_on, orbit, stabilizer

logger = logging.getLogger(__name__)


class IndexOutOfRangeException(Exception):
    pass


class NotAPrefixException(Exception):
    pass


class NotANeighborInStarException(Exception):
    pass


class NotADoubleStarException(Exception):
    pass


class InvalidStarException(Exception):
    pass


class StarCapExceededException(CapExceededException):
    pass


class OrbitCapExceededException(CapExceededException):
    pass


@dataclass(frozen=True, order=True)
class StarParams(object):
    """
    Shape of a star: arcs of length l, branching r.
    """
    l: int
    r: int

    def __post_init__(self):
        if self.l < 0 or self.r < 1:
            raise InvalidStarException('Star parameters need l >= 0 and r >= 1, got (%d, %d).' % (self.l, self.r))


@dataclass(frozen=True, order=True)
class Star(object):
    """
    A set of l-arcs of one graph, all starting at `center`.

    The arcs are stored sorted; two stars are equal iff their arc sets are.
    """
    center: int
    params: StarParams
    arcs: tuple
    graph: object = field(compare=False, repr=False, default=None)

    @classmethod
    def of(cls, graph, arcs, r=None):
        """
        Builds a star from arcs given as vertex tuples; r defaults to the
        number of distinct first steps.
        """
        arcs = tuple(sorted(set(tuple(arc) for arc in arcs)))
        if not arcs:
            raise InvalidStarException('A star needs at least one arc.')
        center = arcs[0][0]
        l = len(arcs[0]) - 1
        for arc in arcs:
            if arc[0] != center or len(arc) != l + 1:
                raise InvalidStarException('Arcs %r and %r do not share center and length.' % (arcs[0], arc))
            if not graph.is_arc(arc):
                raise InvalidStarException('%r is not an arc.' % (arc,))
        if r is None:
            r = len({arc[:2] for arc in arcs}) if l >= 1 else 1
        return cls(center, StarParams(l, r), arcs, graph)

    @classmethod
    def from_labels(cls, graph, rows, r=None):
        return cls.of(graph, [tuple(graph.index_of(name) for name in row) for row in rows], r)

    @property
    def l(self):
        return self.params.l

    @property
    def r(self):
        return self.params.r

    def __len__(self):
        return len(self.arcs)

    def __contains__(self, arc):
        return tuple(arc) in self.arc_set

    @cached_property
    def arc_set(self):
        return frozenset(self.arcs)

    def action_object(self):
        return ActionObject.star(self.arcs)

    def image(self, x):
        images = self.graph.images(x)
        arcs = tuple(sorted(tuple(images[v] for v in arc) for arc in self.arcs))
        return Star(images[self.center], self.params, arcs, self.graph)

    def encode(self):
        return [[self.graph.label(v) for v in arc] for arc in self.arcs]

    def display(self):
        return '{' + ', '.join('(' + ','.join(self.graph.label(v) for v in arc) + ')' for arc in self.arcs) + '}'


def project(star, i):
    """
    Returns S(i), the star of first i steps of every arc.

    Examples
    --------

    >>> from doublestar.graph import CompleteGraph
    >>> s = Star.of(CompleteGraph(5), [(0, 4), (0, 3), (0, 2)])
    >>> project(s, 0).arcs
    ((0,),)

    """
    if not 0 <= i <= star.l:
        raise IndexOutOfRangeException('Projection level %d outside 0..%d.' % (i, star.l))
    if i == star.l:
        return star
    arcs = tuple(sorted({arc[:i + 1] for arc in star.arcs}))
    return Star(star.center, StarParams(i, star.r), arcs, star.graph)


def residual(star, alpha):
    """
    Returns the arcs of the star extending the prefix alpha.
    """
    alpha = tuple(alpha)
    i = len(alpha) - 1
    if i < 0 or i > star.l or alpha not in project(star, i):
        raise NotAPrefixException('%r is not a prefix of the star.' % (alpha,))
    return tuple(arc for arc in star.arcs if arc[:i + 1] == alpha)


def branch(star, tau):
    """
    Returns the branch S_tau: the continuations of S through tau, joined by the
    arcs that turn back from tau into the center.

    Returns
    -------
        sorted tuple of (l - 1)-arcs starting at tau
    """
    sigma = star.center
    if star.l < 1 or (sigma, tau) not in project(star, 1):
        raise NotANeighborInStarException('(%d, %d) is not a first step of the star.' % (sigma, tau))
    if star.l == 1:
        return ((tau,),)
    forward = {arc[1:] for arc in star.arcs if arc[1] == tau}
    backward = {(tau,) + alpha for alpha in project(star, star.l - 2).arcs}
    graph = star.graph
    return tuple(sorted(arc for arc in forward | backward if graph.is_arc(arc)))


def is_star(graph, center, params, arcs):
    """
    Tests the recursive star definition.
    """
    arcs = {tuple(arc) for arc in arcs}
    l, r = params.l, params.r
    if not arcs or any(len(arc) != l + 1 or arc[0] != center or not graph.is_arc(arc) for arc in arcs):
        return False
    if l == 0:
        return arcs == {(center,)}
    if l == 1:
        return len(arcs) == r
    prefixes = {arc[:-1] for arc in arcs}
    if not is_star(graph, center, StarParams(l - 1, r), prefixes):
        return False
    counts = {}
    for arc in arcs:
        counts[arc[:-1]] = counts.get(arc[:-1], 0) + 1
    return all(count == r - 1 for count in counts.values())


def _is_valid(star):
    return is_star(star.graph, star.center, star.params, star.arcs)


def is_double_star(left, right):
    if left.params != right.params or left.l < 1 or left.graph is not right.graph:
        return False
    if not (_is_valid(left) and _is_valid(right)):
        return False
    sigma, tau = left.center, right.center
    if (sigma, tau) not in project(left, 1) or (tau, sigma) not in project(right, 1):
        return False
    return (branch(left, tau) == project(right, left.l - 1).arcs
            and branch(right, sigma) == project(left, left.l - 1).arcs)


@dataclass(frozen=True)
class DoubleStar(object):
    left: Star
    right: Star

    def action_object(self):
        return ActionObject.star_pair(self.left.arcs, self.right.arcs)

    def reversed(self):
        return DoubleStar(self.right, self.left)

    def encode(self):
        return {'left': self.left.encode(), 'right': self.right.encode()}


class ThetaOrbit(object):
    """
    The X-orbit of an ordered pair of stars (S, T).
    """

    def __init__(self, group, representative, members):
        self.group = group
        self.representative = representative
        self.members = frozenset(members)
        self.graph = representative.left.graph
        self._stabilizers = {}
        self._vertex_stabilizers = {}

    def __len__(self):
        return len(self.members)

    def __contains__(self, pair):
        if isinstance(pair, DoubleStar):
            pair = pair.action_object()
        return pair in self.members

    def __eq__(self, other):
        return isinstance(other, ThetaOrbit) and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __repr__(self):
        return 'ThetaOrbit(l=%d, r=%d, pairs=%d)' % (self.params.l, self.params.r, len(self.members))

    @property
    def params(self):
        return self.representative.left.params

    def _star(self, arcs):
        return Star(arcs[0][0], self.params, arcs, self.graph)

    @cached_property
    def pairs(self):
        return tuple(sorted(obj.payload for obj in self.members))

    @cached_property
    def _plus(self):
        table = {}
        for left, right in self.pairs:
            table.setdefault(left, []).append(right)
        return table

    @cached_property
    def _minus(self):
        table = {}
        for left, right in self.pairs:
            table.setdefault(right, []).append(left)
        return table

    def stars(self):
        """
        Returns St(Theta), the union of first and second components.
        """
        arcs = sorted({left for left, _ in self.pairs} | {right for _, right in self.pairs})
        return tuple(self._star(a) for a in arcs)

    def plus(self, star):
        return tuple(self._star(a) for a in self._plus.get(star.arcs, ()))

    def minus(self, star):
        return tuple(self._star(a) for a in self._minus.get(star.arcs, ()))

    def star_stabilizer(self, star):
        group = self._stabilizers.get(star.arcs)
        if group is None:
            group = stabilizer(self.group, star.action_object(), self.graph.action('star'))
            self._stabilizers[star.arcs] = group
        return group

    def vertex_stabilizer(self, v):
        group = self._vertex_stabilizers.get(v)
        if group is None:
            group = stabilizer(self.group, ActionObject.point(v), self.graph.action('point'))
            self._vertex_stabilizers[v] = group
        return group

    @cached_property
    def self_paired(self):
        return self.representative.reversed().action_object() in self.members

    @cached_property
    def pairing_witness(self):
        """
        Returns the first group element swapping the representative pair, or None.
        """
        target = self.representative.reversed().action_object()
        if target not in self.members:
            return None
        act = self.graph.action('star-pair')
        seed = self.representative.action_object()
        for x in self.group.elements:
            if act(seed, x) == target:
                return x
        return None

    def star_level(self, star):
        """
        Largest s <= l with X_S transitive on S(s); 0 when even s = 1 fails.
        """
        group = self.star_stabilizer(star)
        act = self.graph.action('arc-sequence')
        level = 0
        for s in range(1, star.l + 1):
            arcs = [ActionObject.arc(a) for a in project(star, s).arcs]
            if not is_transitive_on(group, arcs, act):
                break
            level = s
        return level

    @cached_property
    def level(self):
        """
        The s-arc-transitivity level of the orbit: the minimum star level over
        St(Theta). Both components are checked since the orbit may not be self-paired.
        """
        return min(self.star_level(self.representative.left), self.star_level(self.representative.right))

    @property
    def is_arc_transitive(self):
        return self.level >= 1

    @property
    def x_symmetric(self):
        return self.self_paired and self.is_arc_transitive

    @cached_property
    def full_valency(self):
        return self.params.r == self.graph.valency

    @cached_property
    def in_double_star_family(self):
        """
        True iff the graph has valency b >= 2, is X-symmetric, 1 <= r <= b - 1
        and the orbit is X-symmetric.
        """
        b = self.graph.valency
        return (b is not None and b >= 2 and 1 <= self.params.r <= b - 1
                and is_x_symmetric(self.graph, self.group) and self.x_symmetric)

    def flags(self):
        witness = self.pairing_witness
        return {
            'pairs': len(self.members),
            'stars': len(self.stars()),
            'self_paired': self.self_paired,
            'level': self.level,
            'x_symmetric': self.x_symmetric,
            'full_valency': self.full_valency,
            'in_double_star_family': self.in_double_star_family,
            'pairing_witness': format_cycles(witness) if witness is not None else None,
        }


def theta_orbit(group, left, right):
    """
    Computes Theta = {(S, T)^x | x in X}.

    Raises
    ------
        NotADoubleStarException if (S, T) is not a double-star
    """
    if not is_double_star(left, right):
        raise NotADoubleStarException('(S, T) is not a double-star.')
    pair = DoubleStar(left, right)
    members = orbit(group, pair.action_object(), left.graph.action('star-pair'))
    logger.debug('double-star orbit with %d pairs', len(members))
    return ThetaOrbit(group, pair, members)


def st_of(theta):
    return theta.stars()


def _extend(graph, prefix_arcs, r):
    """
    Yields every arc set obtained by giving each prefix exactly r - 1 one-step
    extensions.
    """
    options = []
    for arc in prefix_arcs:
        candidates = [arc + (w,) for w in graph.adjacency[arc[-1]] if len(arc) < 2 or w != arc[-2]]
        options.append(list(combinations(candidates, r - 1)))
    for choice in product(*options):
        yield tuple(sorted(a for chosen in choice for a in chosen))


def stars_at(graph, center, params, cap=None):
    """
    Enumerates the (l, r)-stars with the given center in lexicographic order.

    Parameters
    ----------
    graph: Graph

    center: int

    params: StarParams

    cap: int
        maximal number of stars, defaults to Caps.stars

    Returns
    -------
        list of Star
    """
    cap = cap if cap is not None else DEFAULT_CAPS.stars
    levels = [((center,),)]
    if params.l >= 1:
        levels = [tuple((center, w) for w in chosen)
                  for chosen in combinations(graph.adjacency[center], params.r)]
    for _ in range(2, params.l + 1):
        grown = []
        for arcs in levels:
            for extended in _extend(graph, arcs, params.r):
                if extended:
                    grown.append(extended)
                    if len(grown) > cap:
                        raise StarCapExceededException('More than %d stars at vertex %d.' % (cap, center))
        levels = grown
    if len(levels) > cap:
        raise StarCapExceededException('More than %d stars at vertex %d.' % (cap, center))
    logger.debug('%d (%d, %d)-stars at vertex %d', len(levels), params.l, params.r, center)
    return [Star(center, params, arcs, graph) for arcs in sorted(levels)]


def _partners(star, tau, cap):
    graph = star.graph
    if star.l == 1:
        return stars_at(graph, tau, star.params, cap)
    base = branch(star, tau)
    if not is_star(graph, tau, StarParams(star.l - 1, star.r), base):
        return []
    return [Star(tau, star.params, arcs, graph) for arcs in _extend(graph, base, star.r) if arcs]


def enumerate_double_star_orbits(graph, group, params, caps=None):
    """
    Finds every X-orbit of (l, r)-double-stars.

    Every orbit meets the pairs whose first star is centered at vertex 0, so
    only those are generated and the rest are reached through orbits.

    Returns
    -------
        list of ThetaOrbit, in order of their first generated pair
    """
    caps = caps or DEFAULT_CAPS
    if params.l < 1:
        raise InvalidStarException('Double-stars need l >= 1.')
    require_symmetric(graph, group)
    found = []
    seen = set()
    for left in stars_at(graph, 0, params, caps.stars):
        for tau in sorted({arc[1] for arc in left.arcs}):
            for right in _partners(left, tau, caps.stars):
                pair = DoubleStar(left, right)
                if pair.action_object() in seen or not is_double_star(left, right):
                    continue
                theta = theta_orbit(group, left, right)
                seen |= theta.members
                found.append(theta)
                if len(found) > caps.orbits:
                    raise OrbitCapExceededException('More than %d double-star orbits.' % caps.orbits)
    logger.info('%d orbits of (%d, %d)-double-stars', len(found), params.l, params.r)
    return found
