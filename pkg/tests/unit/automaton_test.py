import os
import unittest

from mock import patch

from solitonca.automaton import (AutomatonState, ExcitedSiteError, SpectrumError, StateParseError, WindowOverflowError,
                                 conserved_E, energy_sequence, evolve_inhomogeneous, evolve_inverse_Tl, evolve_T,
                                 evolve_Tl, parse_state, parse_state_file, soliton_spectrum, trace)
from solitonca.crystal import make_algebra, parse_element, u

def state_of(text, alg):
    return AutomatonState(alg, [parse_element(alg, token) for token in text.split()])

class AutomatonStateTest(unittest.TestCase):
    def setUp(self):
        self.alg = make_algebra('A1', 2)

    def test_phases(self):
        state = state_of("1 B[2](1,1,0) 2", self.alg)
        self.assertEqual(state.slots, 4)
        self.assertEqual([gamma for gamma, _ in state.phases()], [4, 3, 1])
        self.assertFalse(state.is_homogeneous)

    def test_vacuum_padding_is_ignored(self):
        self.assertEqual(state_of("2 1 1", self.alg), state_of("1 2 1 1", self.alg))
        self.assertEqual(hash(state_of("2 1 1", self.alg)), hash(state_of("1 2 1 1", self.alg)))
        self.assertNotEqual(state_of("2 1 1", self.alg), state_of("2 1 1 1", self.alg))

    def test_occupied(self):
        state = state_of("1 1 B[2](2,0,0) 3 1", self.alg)
        self.assertEqual([gamma for gamma, _ in state.occupied()], [4, 2])

class EvolutionTest(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.alg = make_algebra('A1', 2)

    def test_single_ball(self):
        report = evolve_Tl(state_of("2 1 1", self.alg), 1)
        self.assertEqual(report.state.text(), "1 2 1")
        self.assertEqual(report.energies, (1, 2, 2))
        self.assertEqual(report.e_bar, -5)
        self.assertEqual(report.energy, 1)
        self.assertEqual(report.carrier, u(self.alg, 1))

    def test_soliton_moves_by_carrier_capacity(self):
        state = state_of("2 2 1 1 1 1", self.alg)
        self.assertEqual(evolve_Tl(state, 1).state.text(), "1 2 2 1 1 1")
        self.assertEqual(evolve_Tl(state, 2).state.text(), "1 1 2 2 1 1")
        self.assertEqual(evolve_Tl(state, 2).energy, 2)

    def test_window_extends_right(self):
        moved = evolve_Tl(state_of("1 1 2", self.alg), 1).state
        self.assertEqual(moved.text(), "1 1 1 2")
        self.assertEqual(moved.anchor, 3)

    def test_window_overflow(self):
        with patch('solitonca.automaton._slack', return_value=0):
            with self.assertRaises(WindowOverflowError):
                evolve_Tl(state_of("1 1 2", self.alg), 1)

    def test_non_positive_carrier(self):
        with self.assertRaises(ValueError):
            evolve_Tl(state_of("2 1 1", self.alg), 0)

    def test_inverse(self):
        back = evolve_inverse_Tl(state_of("1 2 1", self.alg), 1)
        self.assertEqual(back, state_of("2 1 1", self.alg))

    def test_inverse_extends_left(self):
        state = state_of("2 1 1", self.alg)
        back = evolve_inverse_Tl(state, 2)
        self.assertEqual(evolve_Tl(back, 2).state, state)
        self.assertGreaterEqual(back.anchor, state.anchor)

    def test_trace(self):
        states = trace(state_of("2 1 1", self.alg), 1, 2)
        self.assertEqual([state.text() for state in states], ["2 1 1", "1 2 1", "1 1 2"])
        backwards = trace(states[-1], 1, 2, inverse=True)
        self.assertEqual(backwards[-1], states[0])

    def test_evolve_T(self):
        report = evolve_T(state_of("2 2 1 1 1 1", self.alg))
        self.assertEqual(report.state.text(), "1 1 2 2 1 1")

    def test_inhomogeneous_capacities_are_kept(self):
        state = state_of("2 1 B[2](2,0,0) 1", self.alg)
        moved = evolve_Tl(state, 3).state
        self.assertEqual(moved.capacities[:4], [1, 1, 2, 1])

    def test_inhomogeneous(self):
        state = state_of("2 1 B[2](2,0,0) 1", self.alg)
        self.assertEqual(evolve_inhomogeneous(state, 3, 2), trace(state, 3, 2)[-1])

    def test_inhomogeneous_needs_vacuum_sites(self):
        with self.assertRaises(ExcitedSiteError):
            evolve_inhomogeneous(state_of("2 1 B[2](1,1,0) 1", self.alg), 3, 1)

class ConservedTest(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.alg = make_algebra('A1', 2)
        cls.state = state_of("2 2 1 1 1 1", cls.alg)

    def test_energy_sequence(self):
        self.assertEqual(energy_sequence(self.state), [0, 1, 2, 2])
        self.assertEqual(energy_sequence(self.state, 4), [0, 1, 2, 2, 2])
        self.assertEqual(conserved_E(self.state, 0), 0)

    def test_spectrum(self):
        self.assertEqual(soliton_spectrum(self.state), {2: 1})
        self.assertEqual(soliton_spectrum(state_of("2 1 2 2 1 1 1 1 1", self.alg)), {1: 1, 2: 1})

    @patch('solitonca.automaton.energy_sequence', return_value=[0, 2, 2, 5])
    def test_negative_count(self, energy_sequence_mock):
        with self.assertRaises(SpectrumError):
            soliton_spectrum(self.state)

    def test_conserved_under_evolution(self):
        moved = evolve_Tl(self.state, 1).state
        self.assertEqual(energy_sequence(moved), energy_sequence(self.state))

class ParseStateTest(unittest.TestCase):
    def test_with_header(self):
        state = parse_state("alg=C1:3 | 1 1 2b 3")
        self.assertEqual(state.alg, make_algebra('C1', 3))
        self.assertEqual(state.text(), "1 1 2b 3")

    def test_with_given_algebra(self):
        alg = make_algebra('A1', 2)
        self.assertEqual(parse_state("2 1", alg).alg, alg)

    def test_without_algebra(self):
        with self.assertRaises(StateParseError):
            parse_state("2 1")

    def test_bad_header(self):
        with self.assertRaises(StateParseError):
            parse_state("C1:3 | 2 1")

    def test_bad_cell(self):
        with self.assertRaises(StateParseError):
            parse_state("alg=A1:2 | 2 7")

    def test_empty(self):
        with self.assertRaises(StateParseError):
            parse_state("alg=A1:2 |  ")

    def test_file(self):
        states = parse_state_file(os.path.join('tests', 'fixtures', 'states.txt'), make_algebra('A1', 2))
        self.assertEqual(len(states), 2)
        self.assertEqual(states[0].text(), "2 2 1 1 1 1")
        self.assertEqual(states[1].alg, make_algebra('A1', 3))
