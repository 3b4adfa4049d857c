import logging
import re
from collections import deque
from dataclasses import dataclass

from sympy.combinatorics import Permutation
from sympy.combinatorics.named_groups import AlternatingGroup, CyclicGroup, DihedralGroup, SymmetricGroup

from doublestar.config import DEFAULT_CAPS, CapExceededException, ParseException, settings

logger = logging.getLogger(__name__)

KINDS = ('point', 'point-set', 'tuple', 'arc-sequence', 'star', 'star-pair', 'partition-block')

_CYCLE = re.compile(r'\(([^()]*)\)')


class DegreeMismatchException(Exception):
    pass


class ClosureCapExceededException(CapExceededException):
    pass


class ActionKindMismatchException(Exception):
    pass


class UnknownNameException(ParseException):
    pass


class OrbitStabilizerException(Exception):
    pass


def identity(degree):
    return Permutation(list(range(degree)))


def sort_key(p):
    return tuple(p.array_form)


def parse_cycles(text, degree):
    """
    Reads a permutation written in 1-indexed cycle notation.

    Parameters
    ----------
    text: str
        disjoint cycles like "(1 5)(2 4)"; a cycle without blanks such as "(345)"
        is read digit by digit when the degree is below 10; "(1)" is the identity

    degree: int
        the number of points

    Returns
    -------
        sympy.combinatorics.Permutation of size `degree`

    Examples
    --------

    >>> parse_cycles('(1 5)(2 4)', 5).array_form
    [4, 3, 2, 1, 0]

    """
    text = text.strip()
    if not text or _CYCLE.sub('', text).strip():
        raise ParseException('Not a product of cycles: %r' % text)
    cycles = []
    used = set()
    for body in _CYCLE.findall(text):
        tokens = body.replace(',', ' ').split()
        if degree < 10 and len(tokens) == 1 and tokens[0].isdigit() and len(tokens[0]) > 1:
            tokens = list(tokens[0])
        try:
            points = [int(token) - 1 for token in tokens]
        except ValueError:
            raise ParseException('Bad point in cycle %r' % body)
        if not points:
            raise ParseException('Empty cycle in %r' % text)
        for p in points:
            if p < 0 or p >= degree:
                raise ParseException('Point %d out of range 1..%d' % (p + 1, degree))
            if p in used:
                raise ParseException('Cycles in %r are not disjoint.' % text)
            used.add(p)
        if len(points) > 1:
            cycles.append(points)
    if not cycles:
        return identity(degree)
    return Permutation(cycles, size=degree)


def format_cycles(p):
    cycles = p.cyclic_form
    if not cycles:
        return '(1)'
    return ''.join('(' + ' '.join(str(point + 1) for point in cycle) + ')' for cycle in cycles)


def wreath_generators(n):
    """
    Generators of Sym([n]) wr Sym(2) on 2n points: the first n points form one
    side, the last n the other.
    """
    generators = []
    for offset in (0, n):
        for g in SymmetricGroup(n).generators:
            images = list(range(2 * n))
            for i, j in enumerate(g.array_form):
                images[offset + i] = offset + j
            generators.append(Permutation(images))
    generators.append(Permutation([(i + n) % (2 * n) for i in range(2 * n)]))
    return generators


def named_group(name, n):
    """
    Generators of a named permutation group.

    Parameters
    ----------
    name: str
        one of "alternating", "symmetric", "dihedral", "cyclic", "wreath"

    n: int
        the parameter; the degree is n, or 2n for "wreath"

    Returns
    -------
        list of sympy.combinatorics.Permutation
    """
    if n < 1:
        raise ParseException('Group parameter must be positive, got %d' % n)
    if name == 'alternating':
        if n < 3:
            return [identity(n)]
        return list(AlternatingGroup(n).generators)
    if name == 'symmetric':
        if n < 2:
            return [identity(n)]
        return list(SymmetricGroup(n).generators)
    if name == 'dihedral':
        if n < 3:
            raise ParseException('Dihedral groups are taken on n >= 3 points.')
        return list(DihedralGroup(n).generators)
    if name == 'cyclic':
        return list(CyclicGroup(n).generators)
    if name == 'wreath':
        return wreath_generators(n)
    raise UnknownNameException('Unknown group %r' % name)


def _close(degree, generators, cap):
    one = identity(degree)
    seen = {one}
    queue = deque([one])
    while queue:
        g = queue.popleft()
        for s in generators:
            h = g * s
            if h not in seen:
                seen.add(h)
                if len(seen) > cap:
                    raise ClosureCapExceededException(
                        'Closure exceeds %d elements; instance is beyond desk scale.' % cap)
                queue.append(h)
    return tuple(sorted(seen, key=sort_key))


def _generating_set(degree, elements):
    generators = []
    span = {identity(degree)}
    for x in elements:
        if x not in span:
            generators.append(x)
            span = set(_close(degree, generators, max(len(elements), 1)))
    return generators


class PermGroup(object):
    """
    Finite group of permutations of the points 0, ..., degree - 1.
    """

    def __init__(self, degree, generators=None, elements=None, cap=None):
        """
        At least one of `generators` and `elements` is required; a group given by
        elements only computes a small generating set on demand.

        Parameters
        ----------
        degree: int
            number of points

        generators: list of sympy Permutation

        elements: iterable of sympy Permutation
            the exact element list, if already known

        cap: int
            closure limit, defaults to Caps.group
        """
        if generators is None and elements is None:
            raise ValueError('A group needs generators or elements.')
        self.degree = degree
        self._cap = cap if cap is not None else DEFAULT_CAPS.group
        self._generators = None if generators is None else tuple(generators)
        if self._generators is not None:
            for g in self._generators:
                if g.size != degree:
                    raise DegreeMismatchException(
                        'Generator %s has degree %d, expected %d.' % (format_cycles(g), g.size, degree))
        self._elements = None if elements is None else tuple(sorted(elements, key=sort_key))
        self._element_set = None

    @property
    def generators(self):
        if self._generators is None:
            self._generators = tuple(_generating_set(self.degree, self._elements))
        return self._generators

    @property
    def elements(self):
        """
        Returns the full element list in deterministic order.

        Returns
        -------
            tuple of sympy Permutation
        """
        if self._elements is None:
            self._elements = _close(self.degree, self._generators, self._cap)
            logger.debug('closure of %d generators on %d points has order %d',
                         len(self._generators), self.degree, len(self._elements))
        return self._elements

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        if self._element_set is None:
            self._element_set = frozenset(self.elements)
        return x in self._element_set

    def __eq__(self, other):
        if not isinstance(other, PermGroup):
            return NotImplemented
        return self.degree == other.degree and self.elements == other.elements

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    __hash__ = None

    def __repr__(self):
        return 'PermGroup(degree=%d, order=%d)' % (self.degree, self.order)

    def is_subgroup_of(self, other):
        return self.degree == other.degree and all(x in other for x in self.elements)

    def intersection(self, other):
        return PermGroup(self.degree, elements=[x for x in self.elements if x in other])

    def conjugate(self, x):
        """
        Returns the subgroup x^-1 G x.
        """
        inverse = ~x
        return PermGroup(self.degree, elements=[inverse * g * x for g in self.elements])

    def kernel(self, act, objects):
        """
        Returns the elements fixing every object in `objects`.
        """
        objects = list(objects)
        kept = [x for x in self.elements if all(act(obj, x) == obj for obj in objects)]
        return PermGroup(self.degree, elements=kept)

    def cycle_strings(self):
        return sorted(format_cycles(x) for x in self.elements)


def closure(generators, cap=None, degree=None):
    """
    Materializes the group generated by `generators`.

    Parameters
    ----------
    generators: list of sympy Permutation
        all of one degree

    cap: int
        maximal group order, defaults to Caps.group

    degree: int
        required only when `generators` is empty

    Returns
    -------
        PermGroup with its element list computed
    """
    cap = cap if cap is not None else DEFAULT_CAPS.group
    if cap < 1:
        raise ValueError('Closure cap must be positive.')
    degrees = {g.size for g in generators}
    if degree is not None:
        degrees.add(degree)
    if len(degrees) != 1:
        raise DegreeMismatchException('Generators have degrees %s.' % sorted(degrees))
    group = PermGroup(degrees.pop(), generators, cap=cap)
    group.elements
    return group


@dataclass(frozen=True, order=True)
class ActionObject(object):
    """
    An object a permutation group acts on, in canonical encoding.
    """
    kind: str
    payload: object

    @classmethod
    def point(cls, v):
        return cls('point', v)

    @classmethod
    def point_set(cls, points):
        return cls('point-set', tuple(sorted(points)))

    @classmethod
    def block(cls, points):
        return cls('partition-block', tuple(sorted(points)))

    @classmethod
    def sequence(cls, points):
        return cls('tuple', tuple(points))

    @classmethod
    def arc(cls, points):
        return cls('arc-sequence', tuple(points))

    @classmethod
    def star(cls, arcs):
        return cls('star', _canonical_arcs(arcs))

    @classmethod
    def star_pair(cls, left, right):
        return cls('star-pair', (_canonical_arcs(left), _canonical_arcs(right)))


def _canonical_arcs(arcs):
    return tuple(sorted(set(tuple(arc) for arc in arcs)))


def _map_arcs(arcs, images):
    return tuple(sorted(tuple(images[p] for p in arc) for arc in arcs))


_ACTORS = {
    'point': lambda payload, images: images[payload],
    'point-set': lambda payload, images: tuple(sorted(images[p] for p in payload)),
    'partition-block': lambda payload, images: tuple(sorted(images[p] for p in payload)),
    'tuple': lambda payload, images: tuple(images[p] for p in payload),
    'arc-sequence': lambda payload, images: tuple(images[p] for p in payload),
    'star': _map_arcs,
    'star-pair': lambda payload, images: (_map_arcs(payload[0], images), _map_arcs(payload[1], images)),
}


def _array_images(x):
    return x.array_form


class Action(object):
    """
    Rule letting permutations act on objects of one kind.

    The rule maps every point through `images(x)`, which defaults to the array
    form of x; graphs supply their own induced vertex images.
    """

    def __init__(self, kind, images=None):
        if kind not in _ACTORS:
            raise ActionKindMismatchException('Unknown action kind %r' % kind)
        self.kind = kind
        self.images = images or _array_images

    def __call__(self, obj, x):
        if obj.kind != self.kind:
            raise ActionKindMismatchException('Action on %s objects applied to a %s.' % (self.kind, obj.kind))
        return ActionObject(self.kind, _ACTORS[self.kind](obj.payload, self.images(x)))


def _check_kind(obj, act):
    if obj.kind != act.kind:
        raise ActionKindMismatchException('Action on %s objects applied to a %s.' % (act.kind, obj.kind))


def orbit(group, seed, act):
    """
    Computes the orbit of `seed` by breadth-first application of the generators.

    Parameters
    ----------
    group: PermGroup

    seed: ActionObject

    act: Action
        rule for the kind of `seed`

    Returns
    -------
        frozenset of ActionObject
    """
    _check_kind(seed, act)
    seen = {seed}
    queue = deque([seed])
    while queue:
        obj = queue.popleft()
        for x in group.generators:
            image = act(obj, x)
            if image not in seen:
                seen.add(image)
                queue.append(image)
    result = frozenset(seen)
    logger.debug('orbit of a %s has size %d', seed.kind, len(result))
    if settings.check_orbit_stabilizer:
        stabilizer_order = stabilizer(group, seed, act).order
        if len(result) * stabilizer_order != group.order:
            raise OrbitStabilizerException('|orbit| * |stabilizer| = %d * %d differs from |X| = %d'
                                           % (len(result), stabilizer_order, group.order))
    return result


def stabilizer(group, obj, act):
    """
    Returns the subgroup {x in group | obj^x = obj}, computed by filtering the elements.
    """
    _check_kind(obj, act)
    return PermGroup(group.degree, elements=[x for x in group.elements if act(obj, x) == obj])


def is_transitive_on(group, objects, act):
    objects = frozenset(objects)
    if not objects:
        raise ValueError('Transitivity is undefined on an empty set.')
    for obj in objects:
        _check_kind(obj, act)
    return orbit(group, min(objects), act) == objects
