import unittest
import sys
import os
import itertools

import numpy as np

# Add project root to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.bounds import BoundExceededError
from src.bruhat import interval_poincare, iota_fixed_count
from src.config import Config
from src.degflag import (
    SchubertFlagPoint, adjoint_projection_check, coordinate_collections, coordinate_point, enumerate_degflag,
    enumerate_yn, fixed_point_bijection, fixed_point_bijection_holds, fixed_points_count, flag_to_minimal_rep,
    form_V, form_partner, iota_fixed_coordinate_count, partner_index, iota_flag, metric_preserving_check,
    metric_preserving_failures, perp_identity_check, pi_map, pr, pr_range, scan_schubert_equivalence,
    schubert_conditions, section_index, symplectic_fixed, torus_act_degflag, torus_act_flag,
    torus_equivariance_check, torus_on_component, transport_well_defined, yn_membership, zeta, zeta_inverse,
)
from src.gf_linalg import TorusElement, coordinate_subspace, kernel, rref, standard_flag_space
from src.permgroup import DimensionVector, is_minimal_rep, sigma_d, sigma_n


class TestMaps(unittest.TestCase):

    def test_pr_kills_one_basis_vector(self):
        f = pr(2, 3, 5)
        self.assertEqual(f.apply([1, 2, 3, 4]).tolist(), [1, 0, 3, 4])
        self.assertEqual(kernel(f), coordinate_subspace({2}, 4, 5))
        with self.assertRaises(ValueError):
            pr(5, 3, 5)

    def test_pr_range(self):
        self.assertTrue(pr_range(2, 3, 3, 2).equals(pr(2, 3, 2)))
        self.assertTrue(pr_range(1, 3, 3, 2).equals(pr(1, 3, 2).then(pr(2, 3, 2))))
        with self.assertRaises(ValueError):
            pr_range(2, 2, 3, 2)

    def test_pi_map(self):
        # pi_2 on U_5 for n = 3: e_1 -> 0, e_2..e_4 -> f_2..f_4, e_5 -> f_1
        m = pi_map(3, 2, 2).matrix
        self.assertEqual(m.shape, (5, 4))
        self.assertEqual(m.tolist(), [[0, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0]])

    def test_pi_kernel(self):
        for n in range(1, 5):
            for i in range(1, n + 1):
                self.assertEqual(kernel(pi_map(n, i, 3)).dim, i - 1)

    def test_pi_compatible_with_pr(self):
        for n in range(1, 5):
            for i in range(1, n):
                restricted = pi_map(n, i + 1, 3).matrix[:n + i]
                composed = pi_map(n, i, 3).then(pr(i, n, 3)).matrix
                self.assertTrue(np.array_equal(restricted, composed), f"n={n}, i={i}")


class TestEnumeration(unittest.TestCase):

    def test_point_counts(self):
        self.assertEqual(sum(1 for _ in enumerate_degflag(DimensionVector.complete(1), 2)), 3)
        self.assertEqual(sum(1 for _ in enumerate_degflag(DimensionVector.complete(1), 3)), 4)
        self.assertEqual(sum(1 for _ in enumerate_degflag(DimensionVector.complete(2), 2)), 25)
        self.assertEqual(sum(1 for _ in enumerate_degflag(DimensionVector.complete(2), 3)), 61)

    def test_points_are_valid_and_distinct(self):
        points = list(enumerate_degflag(DimensionVector.complete(2), 3))
        self.assertTrue(all(pt.is_valid() for pt in points))
        self.assertEqual(len(set(points)), len(points))

    def test_partial_count_matches_poincare(self):
        dv = DimensionVector(3, (1, 3))
        expected = interval_poincare(sigma_d(dv), dv).evaluate(2)
        self.assertEqual(sum(1 for _ in enumerate_degflag(dv, 2)), expected)

    def test_enumeration_order_is_stable(self):
        dv = DimensionVector.complete(3)
        first = list(enumerate_degflag(dv, 2))
        second = list(enumerate_degflag(dv, 2))
        self.assertEqual(len(first), 531)
        self.assertEqual(first, second)
        self.assertEqual(list(enumerate_yn(dv, 2)), list(enumerate_yn(dv, 2)))

    def test_invalid_point_detected(self):
        dv = DimensionVector.complete(2)
        # pr_1(<f_2>) = <f_2> is not inside <f_1, f_3>
        pt = coordinate_point((frozenset({2}), frozenset({1, 3})), dv, 2)
        self.assertFalse(pt.is_valid())

    def test_bound(self):
        with self.assertRaises(BoundExceededError):
            next(enumerate_degflag(DimensionVector.complete(5), 2))


class TestZeta(unittest.TestCase):

    def test_dimensions(self):
        dv = DimensionVector.complete(2)
        for pt in enumerate_degflag(dv, 2):
            fl = zeta(pt)
            self.assertEqual([w.dim for w in fl.components], [1, 3])
            self.assertTrue(all(w.ambient_dim == 4 for w in fl.components))

    def test_image_is_yn(self):
        for n, p in ((1, 2), (1, 3), (2, 2), (2, 3)):
            dv = DimensionVector.complete(n)
            images = [zeta(pt) for pt in enumerate_degflag(dv, p)]
            yn = set(enumerate_yn(dv, p))
            self.assertEqual(len(set(images)), len(images), f"n={n}, p={p}")
            self.assertEqual(set(images), yn, f"n={n}, p={p}")

    @unittest.skipUnless(Config.SLOW_TESTS, "set DEGFLAG_SLOW_TESTS=1")
    def test_image_is_yn_n3(self):
        dv = DimensionVector.complete(3)
        images = {zeta(pt) for pt in enumerate_degflag(dv, 2)}
        self.assertEqual(images, set(enumerate_yn(dv, 2)))

    def test_inverse(self):
        dv = DimensionVector.complete(2)
        for pt in enumerate_degflag(dv, 3):
            self.assertEqual(zeta_inverse(zeta(pt)), pt)


class TestSchubertConditions(unittest.TestCase):

    def test_coordinate_flag_in_yn(self):
        dv = DimensionVector.complete(3)
        fl = SchubertFlagPoint(dv, tuple(standard_flag_space(2 * i - 1, 6, 2) for i in range(1, 4)))
        self.assertTrue(yn_membership(fl))
        self.assertTrue(schubert_conditions(fl, sigma_n(3)))

    def test_flag_outside_yn(self):
        dv = DimensionVector.complete(2)
        fl = SchubertFlagPoint(dv, (coordinate_subspace({4}, 4, 2), coordinate_subspace({2, 3, 4}, 4, 2)))
        self.assertFalse(yn_membership(fl))
        self.assertFalse(schubert_conditions(fl, sigma_n(2)))

    def test_non_nested_chain(self):
        dv = DimensionVector.complete(2)
        fl = SchubertFlagPoint(dv, (coordinate_subspace({2}, 4, 2), coordinate_subspace({1, 3, 4}, 4, 2)))
        self.assertFalse(yn_membership(fl))
        self.assertFalse(schubert_conditions(fl, sigma_n(2)))

    def test_shape_checked(self):
        dv = DimensionVector.complete(2)
        fl = SchubertFlagPoint(dv, (coordinate_subspace({1}, 4, 2),))
        with self.assertRaises(ValueError):
            yn_membership(fl)

    def test_equivalence_on_yn(self):
        dv = DimensionVector.complete(2)
        for fl in enumerate_yn(dv, 3):
            self.assertTrue(schubert_conditions(fl, sigma_n(2)))

    def test_full_scan(self):
        for n in (1, 2):
            checked, disagreements = scan_schubert_equivalence(DimensionVector.complete(n), 2)
            self.assertGreater(checked, 0)
            self.assertEqual(disagreements, 0)
        self.assertEqual(scan_schubert_equivalence(DimensionVector.complete(2), 2)[0], 15 * 7)

    def test_partial_scan(self):
        checked, disagreements = scan_schubert_equivalence(DimensionVector(3, (2,)), 2)
        self.assertGreater(checked, 0)
        self.assertEqual(disagreements, 0)

    def test_scan_bound(self):
        with self.assertRaises(ValueError):
            scan_schubert_equivalence(DimensionVector.complete(4), 2)


class TestTorus(unittest.TestCase):

    def test_component_action(self):
        lam = TorusElement((1, 2, 3, 4), 5)
        # n = 2: on the second copy of V, f_1 is the image of e_{n+2}
        self.assertEqual(torus_on_component(lam, 2, 2).entries, (4, 2, 3))
        self.assertEqual(torus_on_component(lam, 1, 2).entries, (1, 2, 3))
        with self.assertRaises(ValueError):
            torus_on_component(TorusElement((1, 2), 5), 1, 2)

    def test_equivariance(self):
        self.assertTrue(torus_equivariance_check(DimensionVector.complete(2), 3))
        self.assertTrue(torus_equivariance_check(DimensionVector(3, (2,)), 2, samples=4, seed=5))


class TestFixedPoints(unittest.TestCase):

    def test_counts_are_genocchi(self):
        for n, h in ((1, 2), (2, 7), (3, 38), (4, 295)):
            self.assertEqual(fixed_points_count(DimensionVector.complete(n)), h)

    def test_collections_give_valid_coordinate_points(self):
        dv = DimensionVector.complete(2)
        for c in coordinate_collections(dv):
            pt = coordinate_point(c, dv, 3)
            self.assertTrue(pt.is_valid())
            self.assertTrue(pt.is_coordinate())
            self.assertTrue(zeta(pt).is_coordinate())

    def test_coordinate_points_are_the_fixed_points(self):
        dv = DimensionVector.complete(2)
        lam = TorusElement((1, 2, 3, 4), 5)
        coordinate = {coordinate_point(c, dv, 5) for c in coordinate_collections(dv)}
        self.assertEqual(len(coordinate), 7)
        for pt in coordinate:
            self.assertEqual(torus_act_degflag(lam, pt), pt)
            self.assertEqual(torus_act_flag(lam, zeta(pt)), zeta(pt))
        moved = [pt for pt in enumerate_degflag(dv, 5) if torus_act_degflag(lam, pt) != pt]
        self.assertEqual(len(moved), sum(1 for _ in enumerate_degflag(dv, 5)) - 7)

    def test_bijection(self):
        for n in (1, 2, 3):
            self.assertTrue(fixed_point_bijection_holds(DimensionVector.complete(n)))
        self.assertTrue(fixed_point_bijection_holds(DimensionVector(3, (1, 3))))

    def test_bijection_images_are_minimal(self):
        dv = DimensionVector.complete(2)
        images = fixed_point_bijection(dv).values()
        self.assertTrue(all(is_minimal_rep(tau, dv) for tau in images))

    def test_flag_to_minimal_rep(self):
        dv = DimensionVector.complete(2)
        fl = SchubertFlagPoint(dv, (coordinate_subspace({3}, 4, 2), coordinate_subspace({1, 3, 4}, 4, 2)))
        self.assertEqual(flag_to_minimal_rep(fl), sigma_n(2))
        with self.assertRaises(ValueError):
            flag_to_minimal_rep(SchubertFlagPoint(dv, (rref([[1, 1, 0, 0]], p=2), standard_flag_space(3, 4, 2))))


class TestSymplectic(unittest.TestCase):

    def test_section_index(self):
        self.assertEqual([section_index(k, 2) for k in range(1, 5)], [5, 2, 3, 4])

    def test_transported_form(self):
        for signs in ("constant", "alternating"):
            for m in (1, 2, 3):
                self.assertTrue(transport_well_defined(m, 3, signs))
                b = form_V(m, 3, signs)
                self.assertTrue(b.is_alternating())
                self.assertTrue(b.is_nondegenerate())

    def test_partner(self):
        self.assertEqual(form_partner(form_V(2, 3)), {1: 2, 2: 1, 3: 4, 4: 3})
        self.assertEqual(partner_index(2), {1: 2, 2: 1, 3: 4, 4: 3})
        self.assertEqual(partner_index(3), {1: 4, 2: 3, 3: 2, 4: 1, 5: 6, 6: 5})
        for m in (1, 2, 3):
            for p in (2, 3, 5):
                self.assertEqual(partner_index(m), form_partner(form_V(m, p, "alternating")))
        with self.assertRaises(ValueError):
            partner_index(0)

    def test_metric_identity(self):
        self.assertTrue(metric_preserving_check(2, 3, "alternating"))
        self.assertTrue(metric_preserving_check(3, 5, "alternating"))
        self.assertFalse(metric_preserving_check(2, 3, "constant"))
        self.assertIn((1, 1, 6), metric_preserving_failures(2, 3, "constant"))
        # signs are invisible in characteristic 2
        self.assertEqual(metric_preserving_failures(2, 2, "constant"), [])

    def test_perp_identity_and_adjoints(self):
        self.assertTrue(perp_identity_check(2, 3, "alternating"))
        self.assertTrue(perp_identity_check(2, 2, "constant"))
        self.assertTrue(adjoint_projection_check(2, 3, "alternating"))

    def test_m1_everything_fixed(self):
        dv = DimensionVector.complete(1)
        self.assertEqual(sum(1 for _ in symplectic_fixed(dv, 2)), 3)
        self.assertEqual(sum(1 for _ in symplectic_fixed(dv, 3)), 4)

    def test_iota_is_an_involution(self):
        dv = DimensionVector.complete(3)
        form = form_V(2, 2)
        for pt in itertools.islice(enumerate_degflag(dv, 2), 200):
            image_pt = iota_flag(pt, form)
            self.assertTrue(image_pt.is_valid())
            self.assertEqual(iota_flag(image_pt, form), pt)

    def test_iota_needs_symplectic_shape(self):
        dv = DimensionVector.complete(2)
        pt = next(enumerate_degflag(dv, 2))
        with self.assertRaises(ValueError):
            iota_flag(pt, form_V(1, 2))

    def test_fixed_coordinate_count_matches_iota_fixed_cells(self):
        for n in (1, 3):
            dv = DimensionVector.complete(n)
            self.assertEqual(iota_fixed_coordinate_count(dv), iota_fixed_count(sigma_n(n), dv))


if __name__ == '__main__':
    unittest.main()
