import unittest

from doublestar.perm import UnknownNameException
from doublestar.report import FAIL, PASS, WARN
from doublestar.worked_examples import (example_4, verify_cover, verify_example_1, verify_example_2, verify_example_3,
                                        verify_example_4, verify_paper)


def status_of(report, name):
    return {c.name: c.status for c in report.checks}[name]


class TestUseCases(unittest.TestCase):

    def test_cubic_graph_from_k5(self):
        # Act
        report = verify_example_1()
        # Assert
        self.assertEqual(status_of(report, 'symmetric/growth at 1: criterion iff grown star'), PASS)
        self.assertEqual(report.exit_status, 0)
        self.assertEqual(report.status_counts[FAIL], 0)
        self.assertEqual(status_of(report, 'parameters (4, 3, 3, 4, 1)'), PASS)
        self.assertEqual(status_of(report, 'symmetric/reconstruction at s = 2 rejected for d = 2'), PASS)

    def test_pentagons_from_the_petersen_graph(self):
        # Act
        report = verify_example_2()
        # Assert
        self.assertEqual(report.exit_status, 0)
        self.assertEqual(report.sections['components'], {'count': 6, 'sizes': [5]})
        self.assertEqual(status_of(report, 'stated component count 6'), PASS)
        self.assertEqual(report.sections['chain'], {'h': 1, 'orders': [6, 2, 2, 2]})

    def test_complete_bipartite_family(self):
        # Act
        report = verify_example_4(3)
        # Assert
        self.assertEqual(report.exit_status, 0)
        self.assertEqual(report.sections['components']['count'], 6)
        self.assertEqual(status_of(report, 'stated component count 3'), WARN)
        self.assertEqual(status_of(report, 'case 5.2 with v = 6, k = 4'), PASS)
        self.assertEqual(status_of(report, 'series: m = h = 2, case 5.1'), PASS)
        self.assertEqual(status_of(report, 'series parameters'), PASS)

    def test_complete_bipartite_family_at_four(self):
        # Act
        report = verify_example_4(4)
        # Assert
        self.assertEqual(report.exit_status, 0)
        self.assertEqual(report.sections['components']['count'], 24)
        self.assertEqual([c.name for c in report.checks if c.status != PASS], ['stated component count 4'])
        self.assertEqual(status_of(report, 'stated component count 4'), WARN)

    def test_complete_bipartite_family_starts_at_three(self):
        with self.assertRaises(ValueError):
            example_4(2)

    def test_multicovers(self):
        # Act
        report = verify_cover()
        # Assert
        self.assertEqual(report.exit_status, 0)
        self.assertEqual(status_of(report, 'kernel of order 2 on both levels'), PASS)

    def test_double_covers_of_the_petersen_graph_inside_o4(self):
        # Act
        report = verify_example_3()
        # Assert
        self.assertEqual(report.exit_status, 0)
        self.assertEqual(report.sections['components'], {'count': 21, 'sizes': [20]})
        self.assertEqual(status_of(report, 'stated component count 12'), WARN)
        self.assertEqual(status_of(report, 'series: v = 12, k = 9, m = 2'), PASS)
        self.assertEqual(status_of(report, 'series: m = h = 2, case 5.1'), PASS)
        self.assertEqual(status_of(report, 'series parameters'), PASS)

    def test_unknown_example_raises_exception(self):
        with self.assertRaises(UnknownNameException):
            verify_paper('example-9')

    def test_single_example_is_prefixed(self):
        # Act
        report = verify_paper('example-2')
        # Assert
        self.assertEqual(report.exit_status, 0)
        assert all(c.name.startswith('example-2/') for c in report.checks)
        assert 'example-2/components' in report.sections
