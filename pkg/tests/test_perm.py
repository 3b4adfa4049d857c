import unittest

from sympy.combinatorics import Permutation

from doublestar.config import ParseException
from doublestar.perm import (Action, ActionKindMismatchException, ActionObject, ClosureCapExceededException,
                             DegreeMismatchException, PermGroup, UnknownNameException, closure, format_cycles,
                             is_transitive_on, named_group, orbit, parse_cycles, stabilizer)


class TestCycleNotation(unittest.TestCase):

    def test_parse_spaced_cycles_is_one_indexed(self):
        # Act
        p = parse_cycles('(1 5)(2 4)', 5)
        # Assert
        self.assertEqual(p.array_form, [4, 3, 2, 1, 0])

    def test_parse_compact_digits_reads_single_points(self):
        # Act
        p = parse_cycles('(13524)', 5)
        # Assert
        self.assertEqual(p.array_form[0], 2)
        self.assertEqual(p.array_form[3], 0)

    def test_parse_multi_digit_points_above_degree_nine(self):
        # Act
        p = parse_cycles('(10)(11 12)', 13)
        # Assert
        self.assertEqual(p.cyclic_form, [[10, 11]])
        self.assertEqual(parse_cycles('(12 13)', 13).cyclic_form, [[11, 12]])

    def test_parse_identity(self):
        self.assertEqual(parse_cycles('(1)', 4).array_form, [0, 1, 2, 3])

    def test_parse_overlapping_cycles_raises_exception(self):
        with self.assertRaises(ParseException):
            parse_cycles('(1 2)(2 3)', 4)

    def test_parse_point_out_of_range_raises_exception(self):
        with self.assertRaises(ParseException):
            parse_cycles('(1 6)', 5)

    def test_parse_garbage_raises_exception(self):
        with self.assertRaises(ParseException):
            parse_cycles('1 2', 5)

    def test_format_cycles_round_trips_identity(self):
        # Arrange
        p = parse_cycles('(12)(35)', 5)
        # Act
        text = format_cycles(p)
        # Assert
        self.assertEqual(text, '(1 2)(3 5)')
        self.assertEqual(format_cycles(parse_cycles('(1)', 5)), '(1)')


class TestNamedGroups(unittest.TestCase):

    def test_orders_of_named_groups(self):
        # Act
        orders = {name: closure(named_group(name, n)).order
                  for name, n in [('alternating', 5), ('symmetric', 5), ('dihedral', 5), ('cyclic', 6),
                                  ('wreath', 3)]}
        # Assert
        self.assertEqual(orders, {'alternating': 60, 'symmetric': 120, 'dihedral': 10, 'cyclic': 6, 'wreath': 72})

    def test_unknown_group_raises_exception(self):
        with self.assertRaises(UnknownNameException):
            named_group('monster', 5)


class TestPermGroup(unittest.TestCase):

    def test_closure_over_cap_raises_exception(self):
        with self.assertRaises(ClosureCapExceededException):
            closure(named_group('alternating', 5), cap=10)

    def test_closure_of_mixed_degrees_raises_exception(self):
        with self.assertRaises(DegreeMismatchException):
            closure([Permutation([1, 0, 2]), Permutation([1, 0])])

    def test_elements_are_sorted_and_contain_identity(self):
        # Arrange
        group = closure(named_group('symmetric', 3))
        # Act
        elements = group.elements
        # Assert
        self.assertEqual(len(elements), 6)
        self.assertEqual(elements[0].array_form, [0, 1, 2])
        self.assertEqual([list(x.array_form) for x in elements], sorted(list(x.array_form) for x in elements))

    def test_group_from_elements_recovers_generators(self):
        # Arrange
        group = closure(named_group('alternating', 4))
        # Act
        copy = PermGroup(4, elements=group.elements)
        # Assert
        self.assertEqual(closure(list(copy.generators)), group)

    def test_intersection_and_subgroup(self):
        # Arrange
        s4 = closure(named_group('symmetric', 4))
        a4 = closure(named_group('alternating', 4))
        # Act
        meet = s4.intersection(a4)
        # Assert
        self.assertEqual(meet, a4)
        assert a4.is_subgroup_of(s4)
        assert not s4.is_subgroup_of(a4)

    def test_conjugate_keeps_order(self):
        # Arrange
        s4 = closure(named_group('symmetric', 4))
        point = stabilizer(s4, ActionObject.point(0), Action('point'))
        x = parse_cycles('(1 2)', 4)
        # Act
        moved = point.conjugate(x)
        # Assert
        self.assertEqual(moved.order, 6)
        self.assertEqual(moved, stabilizer(s4, ActionObject.point(1), Action('point')))

    def test_kernel_on_all_points_is_trivial(self):
        # Arrange
        a5 = closure(named_group('alternating', 5))
        # Act
        kernel = a5.kernel(Action('point'), [ActionObject.point(v) for v in range(5)])
        # Assert
        self.assertEqual(kernel.order, 1)


class TestOrbits(unittest.TestCase):

    def test_orbit_and_stabilizer_of_a_point(self):
        # Arrange
        a5 = closure(named_group('alternating', 5))
        act = Action('point')
        # Act
        found = orbit(a5, ActionObject.point(0), act)
        fixed = stabilizer(a5, ActionObject.point(0), act)
        # Assert
        self.assertEqual(len(found), 5)
        self.assertEqual(fixed.order, 12)

    def test_orbit_of_a_pair_of_points(self):
        # Arrange
        a5 = closure(named_group('alternating', 5))
        # Act
        found = orbit(a5, ActionObject.point_set([0, 1]), Action('point-set'))
        # Assert
        self.assertEqual(len(found), 10)

    def test_transitivity_on_ordered_pairs(self):
        # Arrange
        a4 = closure(named_group('alternating', 4))
        pairs = [ActionObject.sequence((u, v)) for u in range(4) for v in range(4) if u != v]
        # Act
        transitive = is_transitive_on(a4, pairs, Action('tuple'))
        # Assert
        assert transitive

    def test_generator_orbit_equals_images_under_every_element(self):
        # Arrange
        s4 = closure(named_group('symmetric', 4))
        a5 = closure(named_group('alternating', 5))
        cases = [
            (a5, ActionObject.point_set([0, 1]), Action('point-set')),
            (a5, ActionObject.sequence((0, 1, 2)), Action('tuple')),
            (s4, ActionObject.sequence((0, 1)), Action('tuple')),
        ]
        for group, seed, act in cases:
            # Act
            found = orbit(group, seed, act)
            # Assert
            self.assertEqual(found, frozenset(act(seed, x) for x in group.elements))

    def test_action_on_wrong_kind_raises_exception(self):
        # Arrange
        a4 = closure(named_group('alternating', 4))
        # Act / Assert
        with self.assertRaises(ActionKindMismatchException):
            orbit(a4, ActionObject.point(0), Action('point-set'))

    def test_unknown_action_kind_raises_exception(self):
        with self.assertRaises(ActionKindMismatchException):
            Action('flag')
