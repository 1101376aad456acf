import unittest
import sys
import os
from collections import Counter

# Add project root to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.bounds import BoundExceededError
from src.config import Config
from src.degflag import enumerate_degflag, zeta
from src.permgroup import DimensionVector, length, sigma_n, word_to_perm
from src.quiver_bs import (
    QuiverVertex, beta_lookup, build_quiver, enumerate_Bn, enumerate_Rn, lemma_check, lookup_identities_check,
    pn, psi, quiver_table, reduced_word_sigma, rho_of_psi, theta, truncation_fibers, validate_Bn, validate_Rn,
    validate_bs, zeta_quiver,
)


class TestQuiver(unittest.TestCase):

    def test_beta_order_n2(self):
        quiver = build_quiver(2)
        self.assertEqual([v.label for v in quiver.order], ["a_1_2", "a_1_1", "a_2_2"])
        self.assertEqual(quiver.N, 3)
        self.assertEqual(quiver.beta(0), QuiverVertex(0, 1))
        self.assertEqual(quiver.beta(-4), QuiverVertex(2, 3))

    def test_sizes(self):
        for n in range(1, 9):
            quiver = build_quiver(n)
            self.assertEqual(quiver.N, n * (n + 1) // 2)
            self.assertEqual(len(quiver.decorated), 2 * n + 1)
            self.assertEqual(len(quiver.edges), n * (n - 1))
            self.assertEqual(len(quiver.decorated_edges), 2 * n)
            self.assertEqual(quiver.beta(1), QuiverVertex(1, n))
            self.assertEqual(quiver.beta(quiver.N), QuiverVertex(n, n))

    def test_decorated_columns(self):
        quiver = build_quiver(4)
        for t in range(0, 9):
            self.assertEqual(quiver.beta(-t).column, t)
            self.assertTrue(quiver.beta(-t).is_decorated(4))

    def test_edges(self):
        quiver = build_quiver(4)
        self.assertIn((QuiverVertex(1, 3), QuiverVertex(2, 3)), quiver.edges)
        self.assertIn((QuiverVertex(1, 3), QuiverVertex(1, 4)), quiver.edges)
        self.assertIn((QuiverVertex(0, 3), QuiverVertex(1, 3)), quiver.decorated_edges)
        self.assertIn((QuiverVertex(2, 4), QuiverVertex(2, 5)), quiver.decorated_edges)

    def test_out_of_range(self):
        quiver = build_quiver(2)
        with self.assertRaises(ValueError):
            quiver.beta(4)
        with self.assertRaises(ValueError):
            quiver.beta(-5)
        with self.assertRaises(ValueError):
            quiver.index_of(QuiverVertex(3, 3))
        with self.assertRaises(ValueError):
            build_quiver(0)

    def test_reduced_word(self):
        self.assertEqual(reduced_word_sigma(2), (2, 1, 3))
        for n in range(1, 9):
            word = reduced_word_sigma(n)
            tau, reduced = word_to_perm(word, 2 * n)
            self.assertEqual(tau, sigma_n(n))
            self.assertTrue(reduced)
            self.assertEqual(len(word), length(sigma_n(n)))


class TestLookup(unittest.TestCase):

    def test_closed_forms(self):
        quiver = build_quiver(3)
        for k in range(1, quiver.N + 1):
            self.assertEqual(beta_lookup(quiver, k, quiver.beta(k).column), k)
        self.assertEqual(beta_lookup(quiver, 0, 0), 0)
        for k in range(1, 4):
            self.assertEqual(beta_lookup(quiver, quiver.N, 2 * k - 1), quiver.N - (3 - k))

    def test_range(self):
        quiver = build_quiver(2)
        with self.assertRaises(ValueError):
            beta_lookup(quiver, 4, 1)
        with self.assertRaises(ValueError):
            beta_lookup(quiver, 1, 5)

    def test_lemma(self):
        for n in range(1, 7):
            self.assertTrue(lemma_check(n), f"n={n}")
            self.assertTrue(lookup_identities_check(n), f"n={n}")

    def test_table(self):
        table = quiver_table(2)
        self.assertEqual(table["reduced_word"], [2, 1, 3])
        self.assertEqual(sorted(table["lookup"]), ["a_0_1", "a_1_1", "a_1_2", "a_2_2"])
        self.assertEqual(table["lookup"]["a_2_2"], ["a_1_1", "a_1_2", "a_2_2"])


class TestRn(unittest.TestCase):

    def test_counts(self):
        self.assertEqual(sum(1 for _ in enumerate_Rn(1, 2)), 3)
        self.assertEqual(sum(1 for _ in enumerate_Rn(2, 2)), 27)
        self.assertEqual(sum(1 for _ in enumerate_Rn(2, 3)), 64)

    @unittest.skipUnless(Config.SLOW_TESTS, "set DEGFLAG_SLOW_TESTS=1")
    def test_count_n3(self):
        self.assertEqual(sum(1 for _ in enumerate_Rn(3, 2)), 729)

    def test_points_validate(self):
        points = list(enumerate_Rn(2, 3))
        self.assertTrue(all(validate_Rn(pt, 3) for pt in points))
        self.assertEqual(len(set(points)), len(points))

    def test_truncation_fibers_are_lines(self):
        for s in range(0, 3):
            histogram, onto = truncation_fibers(2, 2, s)
            self.assertTrue(onto)
            self.assertEqual(histogram, Counter({3: 3 ** s}))

    def test_depth_range(self):
        with self.assertRaises(ValueError):
            next(enumerate_Rn(2, 2, depth=4))

    def test_bound(self):
        with self.assertRaises(BoundExceededError):
            next(enumerate_Rn(4, 2))

    def test_json_labels(self):
        pt = next(enumerate_Rn(2, 2))
        self.assertEqual(sorted(pt.to_json()), ["a_1_1", "a_1_2", "a_2_2"])


class TestBnAndMaps(unittest.TestCase):

    def setUp(self):
        self.rn = list(enumerate_Rn(2, 2))
        self.bn = list(enumerate_Bn(2, 2))

    def test_bn_count_and_validity(self):
        self.assertEqual(len(self.bn), 27)
        self.assertTrue(all(validate_Bn(pt, 2) for pt in self.bn))

    def test_zeta_quiver_is_a_bijection(self):
        images = [zeta_quiver(pt) for pt in self.rn]
        self.assertEqual(len(set(images)), len(images))
        self.assertEqual(set(images), set(self.bn))

    def test_commuting_square(self):
        for pt in self.rn:
            self.assertEqual(zeta(pn(pt)), rho_of_psi(zeta_quiver(pt)))

    def test_pn_is_onto(self):
        images = {pn(pt) for pt in self.rn}
        self.assertEqual(images, set(enumerate_degflag(DimensionVector.complete(2), 2)))

    def test_psi_lands_in_bott_samelson(self):
        for u in self.bn:
            flags = psi(u)
            self.assertEqual(len(flags), 4)
            self.assertTrue(validate_bs(2, flags))
            self.assertEqual(theta(2, flags), u)

    def test_theta_rejects_wrong_length(self):
        with self.assertRaises(ValueError):
            theta(2, psi(self.bn[0])[:2])
        self.assertFalse(validate_bs(2, psi(self.bn[0])[:2]))


@unittest.skipUnless(Config.SLOW_TESTS, "set DEGFLAG_SLOW_TESTS=1")
class TestDesingN3(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.rn = list(enumerate_Rn(3, 2))
        cls.bn = list(enumerate_Bn(3, 2))

    def test_counts(self):
        self.assertEqual(len(self.rn), 729)
        self.assertEqual(len(self.bn), 729)

    def test_commuting_square(self):
        for pt in self.rn:
            self.assertEqual(zeta(pn(pt)), rho_of_psi(zeta_quiver(pt)))

    def test_pn_is_onto(self):
        images = {pn(pt) for pt in self.rn}
        self.assertEqual(images, set(enumerate_degflag(DimensionVector.complete(3), 2)))

    def test_stream_is_stable(self):
        self.assertEqual(self.rn, list(enumerate_Rn(3, 2)))
        self.assertEqual(self.bn, list(enumerate_Bn(3, 2)))


if __name__ == '__main__':
    unittest.main()
