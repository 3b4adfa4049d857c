import logging
from dataclasses import dataclass
from itertools import combinations
from math import comb

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher
from sympy.combinatorics import Permutation

from doublestar.config import DEFAULT_CAPS, CapExceededException, ParseException
from doublestar.perm import (Action, ActionObject, DegreeMismatchException, UnknownNameException,
                             named_group, orbit)

logger = logging.getLogger(__name__)


class VertexOutOfRangeException(Exception):
    pass


class InvalidEdgeException(ParseException):
    pass


class InvalidPartitionException(Exception):
    pass


class VertexCapExceededException(CapExceededException):
    pass


class IsomorphismCapExceededException(CapExceededException):
    pass


class NotArcTransitiveException(Exception):
    pass


def format_label(label):
    """
    Display name of a vertex label: points are printed 1-indexed, subsets as
    digit strings like "123", (side, index) pairs as "i1" or "g2".
    """
    if isinstance(label, str):
        return label
    if isinstance(label, int):
        return str(label + 1)
    if isinstance(label, frozenset):
        points = sorted(p + 1 for p in label)
        if all(p < 10 for p in points):
            return ''.join(str(p) for p in points)
        return ','.join(str(p) for p in points)
    if isinstance(label, tuple) and label and isinstance(label[0], str):
        return '%s%d' % (label[0], label[1] + 1)
    if isinstance(label, tuple):
        return '/'.join([format_label(label[0])] + [str(part) for part in label[1:]])
    return str(label)


class _LazyImages(object):
    """
    Vertex images of one permutation, evaluated on first access.
    """
    __slots__ = ('_image', '_values')

    def __init__(self, image, n):
        self._image = image
        self._values = [None] * n

    def __getitem__(self, v):
        value = self._values[v]
        if value is None:
            value = self._values[v] = self._image(v)
        return value

    def __len__(self):
        return len(self._values)

    def __iter__(self):
        for v in range(len(self._values)):
            yield self[v]


class Graph(object):
    """
    Finite simple undirected graph on the vertices 0, ..., n - 1.
    """

    def __init__(self, vertex_count, edges, labels=None, image_factory=None, point_degree=None):
        """

        Parameters
        ----------
        vertex_count: int

        edges: iterable of vertex pairs

        labels: sequence
            one label per vertex, defaults to the vertex indices

        image_factory: callable
            maps a point permutation x to a function v -> v^x; when omitted the
            points are the vertices themselves

        point_degree: int
            degree of the permutations acting on the graph, defaults to vertex_count

        Examples
        --------

        >>> triangle = Graph(3, [(0, 1), (1, 2), (0, 2)])
        >>> triangle.valency
        2

        """
        self.vertex_count = vertex_count
        self._nx = nx.Graph()
        self._nx.add_nodes_from(range(vertex_count))
        for u, v in edges:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise VertexOutOfRangeException('Edge (%d, %d) leaves 0..%d.' % (u, v, vertex_count - 1))
            if u == v:
                raise InvalidEdgeException('Loop at vertex %d.' % u)
            if self._nx.has_edge(u, v):
                raise InvalidEdgeException('Repeated edge (%d, %d).' % (u, v))
            self._nx.add_edge(u, v)
        self.labels = tuple(labels) if labels is not None else tuple(range(vertex_count))
        if len(self.labels) != vertex_count:
            raise ParseException('Expected %d labels, got %d.' % (vertex_count, len(self.labels)))
        self.adjacency = tuple(tuple(sorted(self._nx.adj[v])) for v in range(vertex_count))
        self._neighbor_sets = tuple(frozenset(a) for a in self.adjacency)
        self._names = {format_label(label): v for v, label in enumerate(self.labels)}
        self._image_factory = image_factory
        self.point_degree = point_degree if point_degree is not None else vertex_count
        self._image_cache = {}

    def __repr__(self):
        return '%s(vertices=%d, edges=%d)' % (type(self).__name__, self.vertex_count, self.edge_count)

    def neighbors(self, v):
        self._check_vertex(v)
        return self.adjacency[v]

    def degree(self, v):
        return len(self.neighbors(v))

    def is_adjacent(self, u, v):
        return v in self._neighbor_sets[u]

    @property
    def edges(self):
        return tuple(sorted((min(u, v), max(u, v)) for u, v in self._nx.edges()))

    @property
    def edge_count(self):
        return self._nx.number_of_edges()

    @property
    def valency(self):
        """
        Returns the common degree, or None if the graph is not regular.
        """
        degrees = {len(a) for a in self.adjacency}
        return degrees.pop() if len(degrees) == 1 else None

    @property
    def girth(self):
        """
        Returns the length of a shortest cycle, or None for a forest.
        """
        g = nx.girth(self._nx)
        return None if g == float('inf') else int(g)

    @property
    def is_bipartite(self):
        return nx.is_bipartite(self._nx)

    @property
    def is_connected(self):
        return self.vertex_count > 0 and nx.is_connected(self._nx)

    def label(self, v):
        return format_label(self.labels[v])

    def index_of(self, name):
        """
        Translates a display name like "123" (or a vertex index) to a vertex index.
        """
        if isinstance(name, int) and not isinstance(name, bool):
            self._check_vertex(name)
            return name
        try:
            return self._names[str(name)]
        except KeyError:
            raise ParseException('Unknown vertex label %r' % name)

    def _check_vertex(self, v):
        if not 0 <= v < self.vertex_count:
            raise VertexOutOfRangeException('Vertex %r outside 0..%d.' % (v, self.vertex_count - 1))

    def is_arc(self, seq):
        seq = tuple(seq)
        if not seq or any(not 0 <= v < self.vertex_count for v in seq):
            return False
        for i in range(1, len(seq)):
            if not self.is_adjacent(seq[i - 1], seq[i]):
                return False
            if i >= 2 and seq[i] == seq[i - 2]:
                return False
        return True

    def l_arcs_from(self, l, v):
        """
        Returns all l-arcs starting at v.

        Parameters
        ----------
        l: int
            the arc length

        v: int
            the start vertex

        Returns
        -------
            tuple of vertex tuples in lexicographic order
        """
        self._check_vertex(v)
        arcs = [(v,)]
        for _ in range(l):
            arcs = [arc + (w,) for arc in arcs for w in self.adjacency[arc[-1]]
                    if len(arc) < 2 or w != arc[-2]]
        return tuple(arcs)

    def arcs(self, l=1):
        return tuple(arc for v in range(self.vertex_count) for arc in self.l_arcs_from(l, v))

    def images(self, x):
        """
        Returns the images of all vertices under the point permutation x.
        """
        cached = self._image_cache.get(x)
        if cached is None:
            if self._image_factory is None:
                if x.size != self.vertex_count:
                    raise DegreeMismatchException('Permutation of degree %d on a graph with %d vertices.'
                                                  % (x.size, self.vertex_count))
                cached = tuple(x.array_form)
            else:
                if x.size != self.point_degree:
                    raise DegreeMismatchException('Permutation of degree %d, graph expects %d points.'
                                                  % (x.size, self.point_degree))
                cached = _LazyImages(self._image_factory(x), self.vertex_count)
            self._image_cache[x] = cached
        return cached

    def action(self, kind):
        return Action(kind, self.images)

    def to_networkx(self):
        return self._nx.copy()

    def adjacency_matrix(self):
        return nx.to_numpy_array(self._nx, nodelist=list(range(self.vertex_count)), dtype=int)

    def induced_subgraph(self, vertices):
        vertices = sorted(vertices)
        position = {v: i for i, v in enumerate(vertices)}
        edges = [(position[u], position[v]) for u, v in self.edges if u in position and v in position]
        return Graph(len(vertices), edges, labels=[self.labels[v] for v in vertices])

    def to_json(self):
        return {
            'n': self.vertex_count,
            'edges': [list(e) for e in self.edges],
            'labels': [self.label(v) for v in range(self.vertex_count)],
        }

    @classmethod
    def from_json(cls, data):
        try:
            n = int(data['n'])
            labels = data.get('labels')
            edges = [tuple(e) for e in data['edges']]
        except (KeyError, TypeError, ValueError) as error:
            raise ParseException('Malformed graph JSON: %s' % error)
        if labels is not None:
            names = {str(label): v for v, label in enumerate(labels)}
            try:
                edges = [tuple(names[str(u)] if isinstance(u, str) else u for u in e) for e in edges]
            except KeyError as error:
                raise ParseException('Edge mentions unknown label %s' % error)
            labels = [str(label) for label in labels]
        for e in edges:
            if len(e) != 2:
                raise ParseException('Edge %r is not a pair.' % (e,))
        return cls(n, edges, labels=labels)

    def to_graph6(self):
        return nx.to_graph6_bytes(self._nx, nodes=list(range(self.vertex_count)), header=False).decode().strip()

    def to_dot(self, name='G'):
        g = nx.Graph(name=name)
        for v in range(self.vertex_count):
            g.add_node(v, label=self.label(v))
        g.add_edges_from(self.edges)
        return nx.nx_pydot.to_pydot(g).to_string()


class CompleteGraph(Graph):
    """
    Complete graph K_n on the points 1, ..., n.
    """

    def __init__(self, n):
        super(CompleteGraph, self).__init__(n, nx.complete_graph(n).edges())


class CompleteBipartiteGraph(Graph):
    """
    Complete bipartite graph K_{n,n}; vertices i1..in come first, then g1..gn.
    """

    def __init__(self, n):
        labels = [('i', k) for k in range(n)] + [('g', k) for k in range(n)]
        super(CompleteBipartiteGraph, self).__init__(2 * n, nx.complete_bipartite_graph(n, n).edges(),
                                                     labels=labels)


class CycleGraph(Graph):
    """
    Cycle C_n.
    """

    def __init__(self, n):
        super(CycleGraph, self).__init__(n, nx.cycle_graph(n).edges())


class OddGraph(Graph):
    """
    Odd graph O_n: the (n-1)-subsets of [2n-1], adjacent when disjoint.
    The points 1..2n-1 carry the group action.
    """

    def __init__(self, n, cap=None):
        if n < 2:
            raise ValueError('Odd graphs start at n = 2.')
        cap = cap if cap is not None else DEFAULT_CAPS.vertices
        size = comb(2 * n - 1, n - 1)
        if size > cap:
            raise VertexCapExceededException('O_%d has %d vertices, cap is %d.' % (n, size, cap))
        labels = [frozenset(c) for c in combinations(range(2 * n - 1), n - 1)]
        edges = [(u, v) for u, v in combinations(range(size), 2) if not labels[u] & labels[v]]
        index = {label: v for v, label in enumerate(labels)}

        def image_factory(x):
            points = x.array_form
            return lambda v: index[frozenset(points[p] for p in labels[v])]

        super(OddGraph, self).__init__(size, edges, labels=labels, image_factory=image_factory,
                                       point_degree=2 * n - 1)


def odd_graph(n, cap=None):
    return OddGraph(n, cap=cap)


_CATALOG = {
    'complete': (CompleteGraph, ('alternating', 'symmetric'), lambda n: n),
    'complete-bipartite': (CompleteBipartiteGraph, ('wreath',), lambda n: n),
    'cycle': (CycleGraph, ('dihedral', 'cyclic'), lambda n: n),
    'odd': (OddGraph, ('alternating', 'symmetric'), lambda n: 2 * n - 1),
}


def catalog(name, cap=None):
    """
    Builds a named example graph with the generators of its natural groups.

    Parameters
    ----------
    name: str
        "complete n", "complete-bipartite n", "cycle n" or "odd n"

    cap: int
        vertex cap, defaults to Caps.vertices

    Returns
    -------
        (Graph, dict mapping group names to generator lists)

    Examples
    --------

    >>> graph, groups = catalog('complete 5')
    >>> graph.edge_count, sorted(groups)
    (10, ['alternating', 'symmetric'])

    """
    cap = cap if cap is not None else DEFAULT_CAPS.vertices
    try:
        kind, n = name.split()
        n = int(n)
    except ValueError:
        raise UnknownNameException('Catalog names look like "odd 4", got %r' % name)
    if kind not in _CATALOG:
        raise UnknownNameException('Unknown catalog graph %r' % kind)
    cls, group_names, group_parameter = _CATALOG[kind]
    if kind == 'odd':
        graph = cls(n, cap=cap)
    else:
        count = 2 * n if kind == 'complete-bipartite' else n
        if count > cap:
            raise VertexCapExceededException('%s has %d vertices, cap is %d.' % (name, count, cap))
        graph = cls(n)
    groups = {}
    for group_name in group_names:
        if group_name == 'dihedral' and n < 3:
            continue
        groups[group_name] = named_group(group_name, group_parameter(n))
    return graph, groups


def bipartite_double_cover(g):
    """
    Returns the cover on V x {0, 1} with (u, 0) ~ (v, 1) whenever u ~ v.
    Vertex (v, a) gets index v + a * |V|.
    """
    n = g.vertex_count
    product = nx.tensor_product(g.to_networkx(), nx.complete_graph(2))
    edges = [(u + a * n, v + b * n) for (u, a), (v, b) in product.edges()]
    labels = [(g.labels[v], a) for a in (0, 1) for v in range(n)]
    return Graph(2 * n, edges, labels=labels)


def lift_to_double_cover(g, generators):
    """
    Generators of X x Z_2 on the bipartite double cover of g: each generator of X
    acts on the first coordinate and one extra generator swaps the layers.
    """
    n = g.vertex_count
    lifted = []
    for x in generators:
        images = g.images(x)
        lifted.append(Permutation([images[v] + a * n for a in (0, 1) for v in range(n)]))
    lifted.append(Permutation([(v + n) % (2 * n) for v in range(2 * n)]))
    return lifted


@dataclass(frozen=True)
class ComponentDecomposition(object):
    components: tuple

    @property
    def count(self):
        return len(self.components)

    @property
    def sizes(self):
        return tuple(len(c) for c in self.components)


def components(g):
    found = sorted(tuple(sorted(c)) for c in nx.connected_components(g.to_networkx()))
    return ComponentDecomposition(tuple(found))


@dataclass(frozen=True)
class IsomorphismVerdict(object):
    """
    Outcome of an isomorphism test; the witness maps vertices of the first graph
    to vertices of the second.
    """
    isomorphic: bool
    witness: dict = None
    reason: str = ''

    def __bool__(self):
        return self.isomorphic


def is_isomorphism(g1, g2, mapping):
    if g1.vertex_count != g2.vertex_count or g1.edge_count != g2.edge_count:
        return False
    if sorted(mapping) != list(range(g1.vertex_count)):
        return False
    if sorted(mapping.values()) != list(range(g2.vertex_count)):
        return False
    return all(g2.is_adjacent(mapping[u], mapping[v]) for u, v in g1.edges)


def _invariant_mismatch(g1, g2):
    if g1.vertex_count != g2.vertex_count:
        return 'orders differ: %d vs %d' % (g1.vertex_count, g2.vertex_count)
    if g1.edge_count != g2.edge_count:
        return 'sizes differ: %d vs %d' % (g1.edge_count, g2.edge_count)
    if sorted(map(len, g1.adjacency)) != sorted(map(len, g2.adjacency)):
        return 'degree sequences differ'
    if g1.is_bipartite != g2.is_bipartite:
        return 'bipartiteness differs'
    if g1.girth != g2.girth:
        return 'girths differ: %s vs %s' % (g1.girth, g2.girth)
    if nx.weisfeiler_lehman_graph_hash(g1.to_networkx()) != nx.weisfeiler_lehman_graph_hash(g2.to_networkx()):
        return 'colour refinement separates the graphs'
    return ''


def _match_connected(g1, g2):
    matcher = GraphMatcher(g1.to_networkx(), g2.to_networkx())
    if matcher.is_isomorphic():
        return dict(matcher.mapping)
    return None


def are_isomorphic(g1, g2, cap=None):
    """
    Tests two graphs for isomorphism.

    Cheap invariants are compared first. Graphs above the size cap are compared
    component by component, each component pair within the cap.

    Returns
    -------
        IsomorphismVerdict, truthy iff the graphs are isomorphic
    """
    cap = cap if cap is not None else DEFAULT_CAPS.iso
    reason = _invariant_mismatch(g1, g2)
    if reason:
        return IsomorphismVerdict(False, None, reason)
    if g1.vertex_count <= cap:
        mapping = _match_connected(g1, g2)
        if mapping is None:
            return IsomorphismVerdict(False, None, 'no edge-preserving bijection')
        return IsomorphismVerdict(True, mapping)
    parts1, parts2 = components(g1), components(g2)
    if parts1.count == 1:
        raise IsomorphismCapExceededException('Connected graph with %d vertices exceeds isomorphism cap %d.'
                                              % (g1.vertex_count, cap))
    if sorted(parts1.sizes) != sorted(parts2.sizes):
        return IsomorphismVerdict(False, None, 'component sizes differ')
    unused = [g2.induced_subgraph(c) for c in parts2.components]
    unused_vertices = list(parts2.components)
    witness = {}
    for c in parts1.components:
        sub = g1.induced_subgraph(c)
        for position, candidate in enumerate(unused):
            if candidate is None or candidate.vertex_count != sub.vertex_count:
                continue
            verdict = are_isomorphic(sub, candidate, cap)
            if verdict:
                target = unused_vertices[position]
                for u, w in verdict.witness.items():
                    witness[c[u]] = target[w]
                unused[position] = None
                break
        else:
            return IsomorphismVerdict(False, None, 'component at vertex %d has no partner' % c[0])
    logger.debug('matched %d components', parts1.count)
    return IsomorphismVerdict(True, witness)


def s_arc_transitivity(graph, group, s):
    """
    Tests whether the group acts transitively on the s-arcs of the graph.
    """
    arcs = graph.arcs(s)
    if not arcs:
        return False
    found = orbit(group, ActionObject.arc(arcs[0]), graph.action('arc-sequence'))
    return len(found) == len(arcs)


def is_x_symmetric(graph, group):
    return graph.edge_count > 0 and s_arc_transitivity(graph, group, 1)


def require_symmetric(graph, group):
    if not is_x_symmetric(graph, group):
        raise NotArcTransitiveException('The group does not act transitively on the arcs.')


def is_arc_regular(graph, group):
    return is_x_symmetric(graph, group) and group.order == 2 * graph.edge_count


class Partition(object):
    """
    Partition of the vertex set {0, ..., n - 1} into blocks.
    """

    def __init__(self, vertex_count, blocks):
        blocks = sorted(tuple(sorted(b)) for b in blocks)
        block_of = [None] * vertex_count
        for index, block in enumerate(blocks):
            if not block:
                raise InvalidPartitionException('Empty block.')
            for v in block:
                if not 0 <= v < vertex_count:
                    raise InvalidPartitionException('Vertex %r out of range.' % v)
                if block_of[v] is not None:
                    raise InvalidPartitionException('Vertex %d lies in two blocks.' % v)
                block_of[v] = index
        if None in block_of:
            raise InvalidPartitionException('Vertex %d lies in no block.' % block_of.index(None))
        self.vertex_count = vertex_count
        self.blocks = tuple(blocks)
        self.block_of = tuple(block_of)

    @classmethod
    def trivial(cls, vertex_count):
        return cls(vertex_count, [(v,) for v in range(vertex_count)])

    @classmethod
    def from_key(cls, vertex_count, key):
        """
        Groups the vertices by the value of key(v).
        """
        groups = {}
        for v in range(vertex_count):
            groups.setdefault(key(v), []).append(v)
        return cls(vertex_count, groups.values())

    def __len__(self):
        return len(self.blocks)

    def __eq__(self, other):
        return isinstance(other, Partition) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        return 'Partition(blocks=%d, sizes=%s)' % (len(self.blocks), sorted({len(b) for b in self.blocks}))

    def block(self, v):
        return self.blocks[self.block_of[v]]

    @property
    def v(self):
        """
        Returns the common block size, or None if the sizes differ.
        """
        sizes = {len(b) for b in self.blocks}
        return sizes.pop() if len(sizes) == 1 else None

    @property
    def is_trivial(self):
        return all(len(b) == 1 for b in self.blocks)

    def refines(self, other):
        return all(len({other.block_of[v] for v in block}) == 1 for block in self.blocks)

    def is_invariant(self, graph, group):
        known = set(self.blocks)
        for x in group.generators:
            images = graph.images(x)
            for block in self.blocks:
                if tuple(sorted(images[v] for v in block)) not in known:
                    return False
        return True

    def over(self, finer):
        """
        Returns this partition seen on the blocks of `finer`, a partition of the
        vertex set of the quotient by `finer`.
        """
        if not finer.refines(self):
            raise InvalidPartitionException('Partition does not refine the coarser one.')
        return Partition.from_key(len(finer), lambda b: self.block_of[finer.blocks[b][0]])
