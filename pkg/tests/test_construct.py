import unittest

from doublestar.construct import (DegenerateDoubleCosetException, HypothesisViolatedException,
                                  NotAnElementException, NotArcTransitiveOrbitException, NotSelfPairedException,
                                  NotSubgroupException, RTooSmallException, coset_graph, criterion_holds,
                                  double_star_graph, grow, grow_theta, stabilizer_chain_h, star_partitions, truncate)
from doublestar.graph import CompleteGraph, CycleGraph, are_isomorphic, is_arc_regular
from doublestar.perm import closure, named_group, parse_cycles
from doublestar.stars import IndexOutOfRangeException, Star, theta_orbit
from doublestar.worked_examples import example_1, example_2


def edge_orbit(group_name):
    c5 = CycleGraph(5)
    group = closure(named_group(group_name, 5))
    return theta_orbit(group, Star.of(c5, [(0, 1)]), Star.of(c5, [(1, 0)]))


class TestDoubleStarGraph(unittest.TestCase):

    def test_stars_of_k5_give_a_cubic_arc_regular_graph(self):
        # Arrange
        example = example_1()
        # Act
        dsg = double_star_graph(example.theta)
        # Assert
        self.assertEqual(dsg.graph.vertex_count, 20)
        self.assertEqual(dsg.graph.valency, 3)
        assert dsg.graph.is_connected
        assert is_arc_regular(dsg.graph, example.group)

    def test_center_blocks_hold_four_stars(self):
        # Arrange
        dsg = double_star_graph(example_1().theta)
        # Act
        partitions = star_partitions(dsg)
        # Assert
        self.assertEqual(len(partitions), 2)
        self.assertEqual(len(partitions[0]), 5)
        self.assertEqual(partitions[0].v, 4)
        assert partitions[1].is_trivial
        self.assertEqual(dsg.block_partition, partitions[0])

    def test_vertex_map_lists_every_star(self):
        # Arrange
        example = example_1()
        dsg = double_star_graph(example.theta)
        # Act
        v = dsg.index_of_star(example.left)
        # Assert
        self.assertEqual(dsg.vertex_map[v], example.left)
        self.assertEqual(len(dsg.vertex_map_json()), 20)

    def test_star_partition_out_of_range_raises_exception(self):
        # Arrange
        dsg = double_star_graph(example_1().theta)
        # Act / Assert
        with self.assertRaises(IndexOutOfRangeException):
            dsg.star_partition(2)

    def test_symmetric_group_doubles_the_valency(self):
        # Act
        dsg = double_star_graph(example_1(symmetric=True).theta)
        # Assert
        self.assertEqual(dsg.graph.vertex_count, 20)
        self.assertEqual(dsg.graph.valency, 6)

    def test_orbit_without_reversal_raises_exception(self):
        with self.assertRaises(NotSelfPairedException):
            double_star_graph(edge_orbit('cyclic'))

    def test_orbit_with_trivial_star_stabilizers_raises_exception(self):
        # Arrange
        k4 = CompleteGraph(4)
        theta = theta_orbit(closure(named_group('symmetric', 4)), Star.of(k4, [(0, 1, 2), (0, 2, 3)]),
                            Star.of(k4, [(1, 0, 2), (1, 2, 3)]))
        # Act / Assert
        with self.assertRaises(NotArcTransitiveOrbitException):
            double_star_graph(theta)


class TestGrowth(unittest.TestCase):

    def test_criterion_holds_for_the_alternating_group(self):
        # Arrange
        example = example_1()
        # Act / Assert
        assert criterion_holds(example.theta, example.left, example.right)
        assert not criterion_holds(example_1(symmetric=True).theta, example.left, example.right)

    def test_growth_follows_powers_of_the_pentagon_element(self):
        # Arrange
        example = example_2(1)
        expected = example_2(2, graph=example.graph)
        # Act
        result = grow(example.theta, example.left)
        # Assert
        assert result.plus_is_star
        assert result.criterion
        assert result.prefixes_preserved
        assert result.stabilizer_preserved
        self.assertEqual(result.grown('+'), expected.left)

    def test_grown_orbit_is_the_next_power_orbit(self):
        # Arrange
        example = example_2(1)
        expected = example_2(2, graph=example.graph)
        # Act
        grown = grow_theta(example.theta)
        # Assert
        self.assertEqual(grown, expected.theta)
        assert grown.self_paired

    def test_growth_with_single_branch_raises_exception(self):
        # Arrange
        theta = edge_orbit('dihedral')
        # Act / Assert
        with self.assertRaises(RTooSmallException):
            grow(theta, theta.representative.left)

    def test_growth_of_orbit_without_reversal_raises_exception(self):
        with self.assertRaises(HypothesisViolatedException):
            grow_theta(edge_orbit('cyclic'))

    def test_growth_where_stabilizers_meet_differently_raises_exception(self):
        with self.assertRaises(HypothesisViolatedException):
            grow_theta(example_1(symmetric=True).theta)


class TestStabilizerChain(unittest.TestCase):

    def test_chain_of_the_pentagon_orbit(self):
        # Act
        h, orders = stabilizer_chain_h(example_2(1).theta)
        # Assert
        self.assertEqual(h, 1)
        self.assertEqual(orders, (6, 2))

    def test_chain_on_a_cycle_raises_exception(self):
        with self.assertRaises(HypothesisViolatedException):
            stabilizer_chain_h(edge_orbit('dihedral'))


class TestTruncate(unittest.TestCase):

    def test_truncation_recovers_the_seed_orbit(self):
        # Arrange
        example = example_2(1)
        deep = example_2(2, graph=example.graph)
        # Act
        truncated = truncate(deep.theta, 1)
        # Assert
        self.assertEqual(truncated, example.theta)
        assert truncate(deep.theta, 2) is deep.theta

    def test_truncation_to_zero_raises_exception(self):
        with self.assertRaises(IndexOutOfRangeException):
            truncate(example_2(1).theta, 0)


class TestCosetGraph(unittest.TestCase):

    def setUp(self):
        self.example = example_1()
        self.group = self.example.group
        self.subgroup = self.example.theta.star_stabilizer(self.example.left)

    def test_coset_graph_is_the_double_star_graph(self):
        # Act
        cosets = coset_graph(self.group, self.subgroup, self.example.z)
        # Assert
        self.assertEqual(cosets.vertex_count, 20)
        self.assertEqual(cosets.valency, 3)
        assert are_isomorphic(cosets, double_star_graph(self.example.theta).graph)

    def test_foreign_subgroup_raises_exception(self):
        with self.assertRaises(NotSubgroupException):
            coset_graph(self.group, closure([parse_cycles('(1 2)', 5)]), self.example.z)

    def test_whole_group_raises_exception(self):
        with self.assertRaises(NotSubgroupException):
            coset_graph(self.group, self.group, self.example.z)

    def test_odd_element_raises_exception(self):
        with self.assertRaises(NotAnElementException):
            coset_graph(self.group, self.subgroup, parse_cycles('(1 2)', 5))

    def test_element_of_the_subgroup_raises_exception(self):
        with self.assertRaises(DegenerateDoubleCosetException):
            coset_graph(self.group, self.subgroup, parse_cycles('(3 4 5)', 5))
