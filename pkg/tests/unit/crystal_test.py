import unittest

from solitonca.crystal import (Algebra, AlgebraError, ElementError, NodeError, RowElement, classical_e, classical_f,
                               enumerate_B1, enumerate_Bl, eps_phi, format_element, from_letters, is_highest_weight,
                               is_member, is_vacuum, letter_element, letter_of, lower_along, make_algebra,
                               notation_element, notation_of, parse_algebra, parse_element, phi, raise_to_hw, row_word,
                               simple_root, u, weight)

class AlgebraTest(unittest.TestCase):
    def test_parse(self):
        self.assertEqual(parse_algebra("C1:3"), Algebra('C1', 3))
        self.assertEqual(str(parse_algebra("D2: 4")), "D2:4")

    def test_parse_non_valid_descriptor(self):
        with self.assertRaises(AlgebraError):
            parse_algebra("C13")

    def test_unknown_family(self):
        with self.assertRaises(AlgebraError):
            make_algebra('E8', 3)

    def test_rank_below_minimum(self):
        with self.assertRaises(AlgebraError):
            make_algebra('C1', 1)

    def test_n_coords(self):
        self.assertEqual(make_algebra('A1', 3).n_coords, 4)
        self.assertEqual(make_algebra('C1', 3).n_coords, 6)
        self.assertEqual(make_algebra('B1', 3).n_coords, 7)
        self.assertEqual(make_algebra('D2', 2).n_coords, 5)

    def test_letters(self):
        self.assertEqual(make_algebra('B1', 3).letters, (1, 2, 3, 0, -3, -2, -1))
        self.assertEqual(make_algebra('A1', 2).letters, (1, 2, 3))

    def test_j_key(self):
        alg = make_algebra('B1', 3)
        self.assertEqual(alg.j_key(0), 3.5)
        self.assertEqual(alg.j_key(-3), 4)
        self.assertEqual(alg.j_key(-1), 6)

    def test_index_round_trip(self):
        alg = make_algebra('B1', 3)
        for letter in alg.letters:
            self.assertEqual(alg.letter_at(alg.index_of(letter)), letter)

    def test_rank_lowered(self):
        self.assertEqual(make_algebra('C1', 3).rank_lowered(), Algebra('C1', 2))
        with self.assertRaises(AlgebraError):
            Algebra('A1', 1).rank_lowered()

class ElementTest(unittest.TestCase):
    def test_enumeration_sizes(self):
        self.assertEqual(len(enumerate_Bl(make_algebra('A1', 2), 2)), 6)
        self.assertEqual(len(enumerate_Bl(make_algebra('C1', 2), 2)), 11)
        self.assertEqual(len(enumerate_Bl(make_algebra('B1', 3), 1)), 7)
        self.assertEqual(len(enumerate_Bl(make_algebra('A2even', 2), 1)), 5)
        self.assertEqual(len(enumerate_Bl(make_algebra('D2', 2), 1)), 6)
        self.assertEqual(len(enumerate_Bl(make_algebra('D1', 4), 2)), 35)

    def test_enumeration_non_positive_capacity(self):
        with self.assertRaises(ElementError):
            enumerate_Bl(make_algebra('A1', 2), 0)

    def test_membership(self):
        self.assertFalse(is_member(make_algebra('D1', 4), RowElement(2, (0, 0, 0, 1, 1, 0, 0, 0))))
        self.assertFalse(is_member(make_algebra('B1', 3), RowElement(2, (0, 0, 0, 2, 0, 0, 0))))
        self.assertFalse(is_member(make_algebra('C1', 3), RowElement(3, (1, 1, 0, 0, 0, 0))))
        self.assertTrue(is_member(make_algebra('C1', 3), RowElement(3, (0, 1, 0, 1, 0, 1))))

    def test_enumerate_B1(self):
        alg = make_algebra('A2even', 2)
        self.assertEqual(len(enumerate_B1(alg)), 5)
        self.assertIn(phi(alg), enumerate_B1(alg))

    def test_no_phi(self):
        with self.assertRaises(ElementError):
            phi(make_algebra('C1', 3))

    def test_vacuum(self):
        alg = make_algebra('C1', 3)
        self.assertEqual(u(alg, 3).coords, (3, 0, 0, 0, 0, 0))
        self.assertTrue(is_vacuum(alg, letter_element(alg, 1)))
        self.assertFalse(is_vacuum(alg, letter_element(alg, 2)))

    def test_letter_of(self):
        alg = make_algebra('A2even', 2)
        self.assertEqual(letter_of(alg, letter_element(alg, -2)), -2)
        self.assertIsNone(letter_of(alg, phi(alg)))
        with self.assertRaises(ElementError):
            letter_of(alg, u(alg, 2))

    def test_row_word(self):
        alg = make_algebra('C1', 3)
        b = RowElement(3, (0, 1, 0, 1, 0, 1))
        self.assertEqual(row_word(alg, b), [-1, -3, 2])
        self.assertEqual(from_letters(alg, 3, [-1, -3, 2]), b)

    def test_notation(self):
        alg = make_algebra('C1', 3)
        b = notation_element(alg, 4, 1, 2, 1)
        self.assertEqual(b.coords, (1, 2, 0, 0, 0, 1))
        self.assertEqual(notation_of(alg, b), (1, 2, 1))
        self.assertIsNone(notation_of(alg, letter_element(alg, 3)))

    def test_notation_without_xbar1(self):
        with self.assertRaises(ElementError):
            notation_element(make_algebra('A1', 2), 2, 1, 0, 1)

class KashiwaraTest(unittest.TestCase):
    def test_letters_type_c(self):
        alg = make_algebra('C1', 3)
        self.assertEqual(classical_f(alg, letter_element(alg, 1), 1), letter_element(alg, 2))
        self.assertEqual(classical_f(alg, letter_element(alg, -2), 1), letter_element(alg, -1))
        self.assertEqual(classical_f(alg, letter_element(alg, 3), 3), letter_element(alg, -3))
        self.assertIsNone(classical_f(alg, letter_element(alg, 2), 1))
        self.assertEqual(classical_e(alg, letter_element(alg, -3), 3), letter_element(alg, 3))

    def test_spin_nodes(self):
        b_alg = make_algebra('B1', 3)
        self.assertEqual(classical_f(b_alg, letter_element(b_alg, 3), 3), letter_element(b_alg, 0))
        self.assertEqual(classical_f(b_alg, letter_element(b_alg, 0), 3), letter_element(b_alg, -3))
        d_alg = make_algebra('D1', 4)
        self.assertEqual(classical_f(d_alg, letter_element(d_alg, 3), 4), letter_element(d_alg, -4))
        self.assertEqual(classical_f(d_alg, letter_element(d_alg, 4), 4), letter_element(d_alg, -3))

    def test_unknown_node(self):
        alg = make_algebra('C1', 3)
        with self.assertRaises(NodeError):
            classical_f(alg, letter_element(alg, 1), 4)

    def test_weight_drops_by_simple_root(self):
        for alg in (make_algebra('B1', 3), make_algebra('C1', 3), make_algebra('D1', 4)):
            for x in enumerate_B1(alg):
                for i in alg.nodes:
                    image = classical_f(alg, x, i)
                    if image is None:
                        continue
                    expected = tuple(a - b for a, b in zip(weight(alg, x), simple_root(alg, i)))
                    self.assertEqual(weight(alg, image), expected)

    def test_row_element(self):
        alg = make_algebra('A1', 2)
        b = u(alg, 2)
        b = classical_f(alg, b, 1)
        self.assertEqual(b.coords, (1, 1, 0))
        b = classical_f(alg, b, 1)
        self.assertEqual(b.coords, (0, 2, 0))
        self.assertIsNone(classical_f(alg, b, 1))

    def test_tensor_signature(self):
        alg = make_algebra('A1', 2)
        one, two = letter_element(alg, 1), letter_element(alg, 2)
        self.assertEqual(classical_e(alg, (two, one), 1), (one, one))
        self.assertEqual(classical_f(alg, (one, one), 1), (two, one))
        self.assertIsNone(classical_e(alg, (one, two), 1))

    def test_eps_phi(self):
        alg = make_algebra('C1', 3)
        self.assertEqual(eps_phi(alg, u(alg, 3), 1), (0, 3))
        self.assertEqual(eps_phi(alg, u(alg, 3), 2), (0, 0))

    def test_weight(self):
        alg = make_algebra('C1', 3)
        self.assertEqual(weight(alg, RowElement(3, (0, 1, 0, 1, 0, 1))), (-1, 1, -1))

    def test_simple_roots(self):
        self.assertEqual(simple_root(make_algebra('C1', 3), 3), (0, 0, 2))
        self.assertEqual(simple_root(make_algebra('B1', 3), 3), (0, 0, 1))
        self.assertEqual(simple_root(make_algebra('D1', 4), 4), (0, 0, 1, 1))
        self.assertEqual(simple_root(make_algebra('A1', 2), 1), (1, -1, 0))

    def test_raise_and_lower(self):
        alg = make_algebra('A1', 3)
        hw, path = raise_to_hw(alg, letter_element(alg, 3))
        self.assertEqual(hw, letter_element(alg, 1))
        self.assertEqual(path, [2, 1])
        self.assertEqual(lower_along(alg, hw, path), letter_element(alg, 3))

    def test_highest_weight(self):
        alg = make_algebra('A1', 2)
        self.assertTrue(is_highest_weight(alg, (u(alg, 2), letter_element(alg, 2))))
        self.assertFalse(is_highest_weight(alg, (letter_element(alg, 2), letter_element(alg, 1))))

class TextTest(unittest.TestCase):
    def setUp(self):
        self.alg = make_algebra('C1', 3)

    def test_format(self):
        self.assertEqual(format_element(self.alg, letter_element(self.alg, -2)), "2b")
        self.assertEqual(format_element(self.alg, RowElement(3, (0, 1, 0, 1, 0, 1))), "B[3](0,1,0,1,0,1)")
        alg = make_algebra('A2even', 2)
        self.assertEqual(format_element(alg, phi(alg)), "phi")

    def test_parse(self):
        self.assertEqual(parse_element(self.alg, "2b"), letter_element(self.alg, -2))
        self.assertEqual(parse_element(self.alg, "B[3](0,1,0,1,0,1)"), RowElement(3, (0, 1, 0, 1, 0, 1)))
        self.assertEqual(parse_element(self.alg, "(0,1,0,1,0,1)", 3), RowElement(3, (0, 1, 0, 1, 0, 1)))

    def test_parse_coordinates_without_capacity(self):
        with self.assertRaises(ElementError):
            parse_element(self.alg, "(0,1,0,1,0,1)")

    def test_parse_wrong_capacity(self):
        with self.assertRaises(ElementError):
            parse_element(self.alg, "B[3](0,1,0,1,0,1)", 5)

    def test_parse_non_valid_letters(self):
        for token in ("0b", "x", "5", "phi"):
            with self.assertRaises(ElementError):
                parse_element(self.alg, token)

    def test_parse_non_member(self):
        with self.assertRaises(ElementError):
            parse_element(self.alg, "B[3](1,1,0,0,0,0)")
