import json
import unittest

from mock import Mock

from solitonca.automaton import parse_state
from solitonca.crystal import RowElement
from solitonca.natural import CheckResult
from solitonca.output import (FormatError, check_format, checks_lines, conserved_lines, label_text, labels_lines,
                              rmatrix_lines, scatter_lines, suite_lines, trace_lines)
from solitonca.rmatrix import AffineElement
from solitonca.verification import SuiteReport

class FormatTest(unittest.TestCase):
    def test_known_formats(self):
        for fmt in ('trace', 'labels', 'json-lines'):
            self.assertEqual(check_format(fmt), fmt)

    def test_unknown_format(self):
        with self.assertRaises(FormatError):
            check_format('xml')

class LinesTest(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.label = AffineElement(3, RowElement(2, (1, 1, 0)))

    def test_label(self):
        self.assertEqual(label_text(self.label), "z^3 B[2](1,1,0)")

    def test_trace(self):
        states = [parse_state("alg=C1:3 | 2b 1"), parse_state("alg=C1:3 | 1 2b")]
        self.assertEqual(trace_lines(states), ["0: 2b 1", "1: 1 2b"])

    def test_trace_json(self):
        lines = trace_lines([parse_state("alg=C1:3 | 2b 1")], 'json-lines')
        self.assertEqual(json.loads(lines[0]), {'t': 0, 'cells': "2b 1"})

    def test_labels(self):
        self.assertEqual(labels_lines([None, [self.label]]), ["0: -", "1: z^3 B[2](1,1,0)"])

    def test_rmatrix(self):
        lines = rmatrix_lines(RowElement(3, (0, 0, 0, 0, 1, 0)), RowElement(5, (0, 1, 0, 2, 0, 2)), 4)
        self.assertEqual(lines, ["(0,0,0,0,1,0)|(0,1,0,2,0,2) ; H=4"])

    def test_conserved(self):
        lines = conserved_lines([0, 1, 2, 2], {2: 1})
        self.assertEqual(lines, ["l=1 E=1 N=0", "l=2 E=2 N=1", "l=3 E=2 N=0"])

    def test_scatter(self):
        outcome = Mock(incoming_affine=[self.label], normalized=[self.label], predicted=[self.label], steps=4,
                       energies=[0, 3], match=True)
        self.assertEqual(scatter_lines(outcome), ["in: z^3 B[2](1,1,0)", "out: z^3 B[2](1,1,0)",
                                                  "predicted: z^3 B[2](1,1,0)", "steps: 4 energies: 0 3", "MATCH"])

    def test_scatter_mismatch_json(self):
        outcome = Mock(incoming_affine=[], normalized=[], predicted=[], steps=1, energies=[], match=False)
        lines = scatter_lines(outcome, 'json-lines')
        self.assertEqual(json.loads(lines[-1]), {'verdict': 'MISMATCH'})

    def test_checks(self):
        self.assertEqual(checks_lines([CheckResult('R-matrix A1:2', 3)]), ["PASS R-matrix A1:2 (3 checked)"])

    def test_suite(self):
        report = SuiteReport('golden', 7, [CheckResult('golden a1', 2, ['row 1 differs'])])
        lines = suite_lines(report, 'json-lines')
        self.assertEqual(json.loads(lines[0]), {'name': 'golden', 'seed': 7, 'status': 'FAIL'})
        self.assertEqual(json.loads(lines[1])['failures'], ['row 1 differs'])
