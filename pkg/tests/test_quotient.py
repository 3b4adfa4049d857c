import unittest

from doublestar.config import Caps
from doublestar.construct import HypothesisViolatedException, double_star_graph
from doublestar.graph import CycleGraph, OddGraph, Partition
from doublestar.perm import closure, named_group
from doublestar.quotient import (EmptyQuotientException, LevelNotComputedException, NotAQuotientStarException,
                                 NotInScriptGException, NotInvariantException, ParamVector, block_arc_check,
                                 block_arcs, block_counts, block_valency_check, center_intersection, compare,
                                 cross_components, in_script_g, kernel_on, params, quotient_graph, quotient_star,
                                 reconstruct, refine_once, refinement_series)
from doublestar.report import PASS, SKIP, AnalysisReport, failed
from doublestar.stars import Star
from doublestar.worked_examples import double_cover_instance, example_1, example_4, petersen_cover_instance


def hexagon():
    return CycleGraph(6), closure(named_group('dihedral', 6)), Partition(6, [(0, 3), (1, 4), (2, 5)])


def cubic_instance(symmetric=False):
    dsg = double_star_graph(example_1(symmetric=symmetric).theta)
    return dsg.graph, dsg.group, dsg.block_partition


class TestQuotientGraph(unittest.TestCase):

    def test_antipodal_quotient_of_a_hexagon_is_a_triangle(self):
        # Arrange
        c6, _, antipodes = hexagon()
        # Act
        quotient = quotient_graph(c6, antipodes)
        # Assert
        self.assertEqual(quotient.vertex_count, 3)
        self.assertEqual(quotient.edge_count, 3)
        self.assertEqual(quotient.internal_edges, 0)

    def test_block_counts(self):
        # Arrange
        c6, _, antipodes = hexagon()
        # Act
        counts = block_counts(c6, antipodes)
        # Assert
        self.assertEqual(counts.shape, (6, 3))
        self.assertEqual(list(counts[0]), [0, 1, 1])

    def test_cross_components_of_two_blocks(self):
        # Arrange
        c6, _, _ = hexagon()
        # Act
        parts = cross_components(c6, (0, 3), (1, 4))
        # Assert
        self.assertEqual(parts, frozenset({frozenset({0, 1}), frozenset({3, 4})}))


class TestParams(unittest.TestCase):

    def test_hexagon_covers_the_triangle(self):
        # Arrange
        c6, d6, antipodes = hexagon()
        # Act
        p = params(c6, d6, antipodes)
        # Assert
        self.assertEqual(p, ParamVector(2, 2, 2, 2, 1, 2))
        assert p.is_cover

    def test_center_blocks_of_the_cubic_graph(self):
        # Arrange
        graph, group, partition = cubic_instance()
        # Act
        p = params(graph, group, partition)
        # Assert
        self.assertEqual(p.quintuple(), (4, 3, 3, 4, 1))
        assert not p.is_trivial
        assert not p.is_multicover

    def test_non_invariant_partition_raises_exception(self):
        # Arrange
        c6, d6, _ = hexagon()
        # Act / Assert
        with self.assertRaises(NotInvariantException):
            params(c6, d6, Partition(6, [(0, 1, 2), (3, 4, 5)]))

    def test_single_block_raises_exception(self):
        # Arrange
        c6, d6, _ = hexagon()
        # Act / Assert
        with self.assertRaises(EmptyQuotientException):
            params(c6, d6, Partition(6, [range(6)]))

    def test_petersen_double_cover_is_a_cover(self):
        # Arrange
        cover, group, fibers = petersen_cover_instance()
        # Act
        p = params(cover, group, fibers)
        # Assert
        self.assertEqual(p, ParamVector(2, 2, 3, 3, 1, 2))
        assert p.is_cover
        self.assertEqual(in_script_g(cover, group, fibers), 'the graph is a multicover of the quotient')

    def test_admissible_triple(self):
        self.assertEqual(in_script_g(*cubic_instance()), '')

    def test_kernels_of_the_lifted_group(self):
        # Arrange
        cover, group, fibers = petersen_cover_instance()
        # Act / Assert
        self.assertEqual(kernel_on(cover, group).order, 1)
        self.assertEqual(kernel_on(cover, group, fibers).order, 2)


class TestQuotientStars(unittest.TestCase):

    def test_center_intersection_is_a_single_star(self):
        # Arrange
        graph, _, partition = cubic_instance()
        quotient = quotient_graph(graph, partition)
        # Act
        found = [center_intersection(quotient, quotient_star(quotient, v)) for v in range(graph.vertex_count)]
        # Assert
        self.assertEqual(found, [(v,) for v in range(graph.vertex_count)])

    def test_quotient_star_reaches_r_blocks(self):
        # Arrange
        graph, _, partition = cubic_instance()
        quotient = quotient_graph(graph, partition)
        # Act
        star = quotient_star(quotient, 0)
        # Assert
        self.assertEqual(star.l, 1)
        self.assertEqual(star.r, 3)
        self.assertEqual(star.center, partition.block_of[0])

    def test_star_of_another_graph_raises_exception(self):
        # Arrange
        graph, _, partition = cubic_instance()
        quotient = quotient_graph(graph, partition)
        petersen = OddGraph(3)
        # Act / Assert
        with self.assertRaises(NotAQuotientStarException):
            center_intersection(quotient, Star.of(petersen, [(0, petersen.adjacency[0][0])]))


class TestCompare(unittest.TestCase):

    def test_isomorphic_graphs_pass_with_witness(self):
        # Act
        check = compare('pentagons', CycleGraph(5), CycleGraph(5), Caps())
        # Assert
        self.assertEqual(check.status, PASS)
        self.assertEqual(len(check.evidence), 5)

    def test_large_connected_graphs_are_skipped(self):
        # Act
        check = compare('decagons', CycleGraph(10), CycleGraph(10), Caps(iso=6))
        # Assert
        self.assertEqual(check.status, SKIP)
        assert check.cap_hit

    def test_skipped_comparison_marks_the_report_as_capped(self):
        # Arrange
        report = AnalysisReport('construct')
        # Act
        report.add(compare('decagons', CycleGraph(10), CycleGraph(10), Caps(iso=6)))
        # Assert
        assert report.cap_exceeded
        self.assertEqual(report.exit_status, 3)


class TestRefinement(unittest.TestCase):

    def test_cubic_graph_refines_to_singletons(self):
        # Arrange
        graph, group, partition = cubic_instance()
        # Act
        step = refine_once(graph, group, partition)
        # Assert
        self.assertEqual(step.case, 'a')
        assert step.refined.is_trivial
        self.assertEqual(step.pi.graph.vertex_count, 20)
        self.assertEqual(failed(step.checks), [])

    def test_cover_raises_exception(self):
        with self.assertRaises(NotInScriptGException):
            refine_once(*petersen_cover_instance())

    def test_series_of_the_cubic_graph(self):
        # Arrange
        graph, group, partition = cubic_instance()
        # Act
        series = refinement_series(graph, group, partition)
        # Assert
        self.assertEqual((series.m, series.h, series.terminal_case), (1, 1, '5.1'))
        self.assertEqual(series.hat.to_json()['m'], 1)
        self.assertEqual(failed(series.checks), [])
        assert series.partition_at(5).is_trivial

    def test_series_of_the_lifted_double_cover_stops_at_a_multicover(self):
        # Arrange
        cover, group, partition = double_cover_instance()
        # Act
        series = refinement_series(cover, group, partition)
        # Assert
        self.assertEqual(series.steps[0].case, 'b')
        self.assertEqual((series.m, series.terminal_case), (1, '5.2'))
        self.assertEqual((series.params[0].v, series.params[0].k), (8, 6))
        self.assertEqual(failed(series.checks), [])


class TestTwoLevelSeries(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        dsg = double_star_graph(example_4(3).theta)
        cls.series = refinement_series(dsg.graph, dsg.group, dsg.block_partition)

    def status(self, name):
        return {c.name: c.status for c in self.series.checks}[name]

    def test_complete_bipartite_graph_refines_twice(self):
        # Act
        series = self.series
        # Assert
        self.assertEqual((series.m, series.h, series.terminal_case), (2, 2, '5.1'))
        self.assertEqual([p.quintuple() for p in series.params], [(6, 4, 2, 3, 1), (2, 1, 2, 4, 1), (1, 1, 2, 2, 1)])
        self.assertEqual(failed(series.checks), [])

    def test_quotients_of_quotients_and_nesting_are_checked(self):
        for name in ['quotient of level 0 over level 1', 'quotient of level 0 over level 2',
                     'quotient of level 1 over level 2', 'level 1: strictly decreasing',
                     'components nest strictly through level h - 1',
                     'k / c constant through level h - 1 and at least d']:
            self.assertEqual(self.status(name), PASS)

    def test_block_arcs_at_the_first_level(self):
        # Act
        checks = block_arc_check(self.series, 1, 1) + [block_valency_check(self.series, 2)]
        # Assert
        self.assertEqual([c.status for c in checks], [PASS, PASS, PASS])


class TestBlockArcs(unittest.TestCase):

    def setUp(self):
        graph, group, partition = cubic_instance()
        self.series = refinement_series(graph, group, partition)

    def test_block_arcs_follow_the_first_steps(self):
        # Act
        quotient, arcs = block_arcs(self.series, 0, 1, 0)
        # Assert
        self.assertEqual(len(arcs), 3)
        assert all(arc[0] == quotient.partition.block_of[0] for arc in arcs)

    def test_block_arc_and_valency_checks_pass(self):
        # Act
        checks = block_arc_check(self.series, 1, 0) + [block_valency_check(self.series, 1)]
        # Assert
        self.assertEqual([c.status for c in checks], [PASS, PASS, PASS])

    def test_level_beyond_the_series_raises_exception(self):
        with self.assertRaises(LevelNotComputedException):
            block_arcs(self.series, 0, 1, 5)
        with self.assertRaises(LevelNotComputedException):
            block_valency_check(self.series, 0)


class TestReconstruct(unittest.TestCase):

    def test_single_arc_reconstruction_of_the_cubic_graph(self):
        # Arrange
        graph, group, partition = cubic_instance()
        # Act
        rebuilt = reconstruct(graph, group, partition, 1)
        # Assert
        self.assertEqual((rebuilt.l, rebuilt.target_level), (1, 1))
        self.assertEqual(rebuilt.pi.graph.vertex_count, 20)
        self.assertEqual(failed(rebuilt.checks), [])

    def test_two_arc_reconstruction_with_two_edges_per_block_pair_raises_exception(self):
        # Arrange
        graph, group, partition = cubic_instance(symmetric=True)
        # Act / Assert
        with self.assertRaises(HypothesisViolatedException):
            reconstruct(graph, group, partition, 2)

    def test_zero_arc_reconstruction_raises_exception(self):
        with self.assertRaises(HypothesisViolatedException):
            reconstruct(*cubic_instance(), 0)
