#!/usr/bin/env python3
"""
Verification suites and counting targets.

Each suite runs two independent computations of the same quantity (a direct
enumeration and a Bruhat-side or combinatorial count) and records the outcome
as checks on a RunReport.
"""

import itertools
import logging
import time
from typing import Dict, List, Optional

from src.bounds import get_bounds
from src.bruhat import (
    bruhat_leq, enumerate_quotient, genocchi_numbers, interval_members, interval_poincare, iota_fixed_count,
    subword_products,
)
from src.config import Config
from src.degflag import (
    coordinate_collections, coordinate_point, enumerate_degflag, enumerate_yn, fixed_point_bijection_holds,
    fixed_points_count, flag_to_minimal_rep, form_V, form_partner, iota_coordinate, iota_fixed_coordinate_count,
    iota_flag, iota_schubert, metric_preserving_failures, perp_identity_check, adjoint_projection_check,
    scan_schubert_equivalence, schubert_conditions, torus_equivariance_check, transport_well_defined,
    yn_membership, zeta, zeta_inverse,
)
from src.gf_linalg import symplectic_form_E
from src.permgroup import (
    DimensionVector, Permutation, iota_perm, is_minimal_rep, length, sigma_d, sigma_n, word_to_perm,
)
from src.quiver_bs import (
    build_quiver, enumerate_Bn, enumerate_Rn, lemma_check, lookup_identities_check, pn, psi,
    reduced_word_sigma, rho_of_psi, theta, truncation_fibers, validate_Bn, validate_bs, validate_Rn,
    zeta_quiver,
)
from src.report_store import RunReport

logger = logging.getLogger(__name__)

SUITES = ("iso", "partial", "torus", "symplectic", "desing", "lemma", "genocchi")
COUNT_TARGETS = ("degflag", "yn", "rn", "bn", "quotient", "interval", "fixed")


def _timed(report: RunReport, started: float) -> RunReport:
    report.wall_time = round(time.perf_counter() - started, 3)
    status = "passed" if report.passed else "FAILED"
    logger.info(f"{report.command} {report.parameters}: {status} in {report.wall_time}s")
    return report


def _iso_checks(report: RunReport, dv: DimensionVector, p: int, threads: Optional[int], prefix: str = ""):
    """Point counts, the image of zeta and the Schubert description for one dimension vector"""
    sigma = sigma_d(dv)
    points = list(enumerate_degflag(dv, p))
    poly = interval_poincare(sigma, dv, threads)
    images = [zeta(pt) for pt in points]
    yn = list(enumerate_yn(dv, p))
    yn_set = set(yn)

    report.results[f"{prefix}point_count"] = len(points)
    report.results[f"{prefix}yn_count"] = len(yn)
    report.results[f"{prefix}poincare"] = poly.to_json()["coeffs"]
    report.results[f"{prefix}bruhat_count"] = poly.evaluate(p)
    report.results[f"{prefix}sigma"] = sigma.to_json()

    report.add_check(f"{prefix}point_count_matches_poincare", len(points) == poly.evaluate(p),
                     f"{len(points)} points vs P({p}) = {poly.evaluate(p)}")
    report.add_check(f"{prefix}zeta_injective", len(set(images)) == len(points))
    report.add_check(f"{prefix}zeta_dims", all(
        w.dim == k for fl in images for w, k in zip(fl.components, dv.flag_dims)))
    report.add_check(f"{prefix}zeta_image_is_yn", set(images) == yn_set,
                     f"{len(set(images))} images vs {len(yn_set)} points of Y")
    report.add_check(f"{prefix}yn_points_satisfy_schubert", all(yn_membership(fl) and schubert_conditions(fl, sigma) for fl in yn))
    report.add_check(f"{prefix}zeta_inverse", all(zeta(zeta_inverse(fl)) == fl for fl in yn))

    if get_bounds().allows_schubert_scan(2 * dv.n, p):
        checked, disagreements = scan_schubert_equivalence(dv, p)
        report.results[f"{prefix}scanned_flags"] = checked
        report.add_check(f"{prefix}full_scan_yn_iff_schubert", disagreements == 0,
                         f"{disagreements} of {checked} flags disagree")

    fixed = fixed_points_count(dv)
    cells = poly.evaluate(1)
    report.results[f"{prefix}fixed_points"] = fixed
    report.add_check(f"{prefix}fixed_points_match_cells", fixed == cells, f"{fixed} vs {cells}")
    report.add_check(f"{prefix}fixed_point_bijection", fixed_point_bijection_holds(dv, threads))


def run_iso(n: int, p: int, d: Optional[List[int]] = None, threads: Optional[int] = None) -> RunReport:
    started = time.perf_counter()
    dv = DimensionVector(n, tuple(d)) if d else DimensionVector.complete(n)
    report = RunReport(command="verify iso", parameters={"n": n, "p": p, "d": list(dv.d)})
    _iso_checks(report, dv, p, threads)
    return _timed(report, started)


def proper_dimension_vectors(n: int) -> List[DimensionVector]:
    """Every non-empty d other than (1, ..., n)"""
    vectors = []
    for size in range(1, n + 1):
        for d in itertools.combinations(range(1, n + 1), size):
            dv = DimensionVector(n, d)
            if not dv.is_complete:
                vectors.append(dv)
    return vectors


def run_partial(n: int, p: int, threads: Optional[int] = None) -> RunReport:
    started = time.perf_counter()
    report = RunReport(command="verify partial", parameters={"n": n, "p": p})
    vectors = proper_dimension_vectors(n)
    report.results["dimension_vectors"] = [dv.label() for dv in vectors]
    for dv in vectors:
        _iso_checks(report, dv, p, threads, prefix=f"d={dv.label()}:")
    return _timed(report, started)


def run_torus(n: int, p: int, d: Optional[List[int]] = None) -> RunReport:
    started = time.perf_counter()
    dv = DimensionVector(n, tuple(d)) if d else DimensionVector.complete(n)
    report = RunReport(command="verify torus", parameters={
        "n": n, "p": p, "d": list(dv.d), "samples": Config.TORUS_SAMPLES, "seed": Config.TORUS_SEED})
    report.add_check("zeta_torus_equivariant", torus_equivariance_check(dv, p))
    return _timed(report, started)


def run_symplectic(m: int, p: int, d: Optional[List[int]] = None, threads: Optional[int] = None) -> RunReport:
    started = time.perf_counter()
    n = 2 * m - 1
    dv = DimensionVector(n, tuple(d)) if d else DimensionVector.complete(n)
    signs = Config.SYMPLECTIC_SIGNS
    report = RunReport(command="verify symplectic", parameters={"m": m, "p": p, "d": list(dv.d), "signs": signs})
    if not dv.is_symplectic():
        raise ValueError(f"d=({dv.label()}) is not preserved by d -> {2 * m} - d")
    get_bounds().check_symplectic(m, p)

    e = symplectic_form_E(n, p, signs)
    b = form_V(m, p, signs)
    report.add_check("transport_well_defined", transport_well_defined(m, p, signs))
    failures = metric_preserving_failures(m, p, signs)
    report.add_check("metric_preserving", not failures, f"{len(failures)} failing basis pairs")
    report.add_check("perp_identity", perp_identity_check(m, p, signs))
    report.add_check("projections_adjoint", adjoint_projection_check(m, p, signs))
    # the all-ones antidiagonal block, reported for comparison only
    report.results["constant_signs_metric_failures"] = len(metric_preserving_failures(m, p, "constant"))

    points = list(enumerate_degflag(dv, p))
    involutive, commutes = True, True
    sp_count = 0
    for pt in points:
        ipt = iota_flag(pt, b)
        if ipt == pt:
            sp_count += 1
        if iota_flag(ipt, b) != pt:
            involutive = False
        if zeta(ipt) != iota_schubert(zeta(pt), e):
            commutes = False
    sp_yn = sum(1 for fl in enumerate_yn(dv, p) if iota_schubert(fl, e) == fl)
    report.results["degflag_points"] = len(points)
    report.results["symplectic_points"] = sp_count
    report.results["iota_fixed_yn_points"] = sp_yn
    report.add_check("iota_involution", involutive)
    report.add_check("zeta_commutes_with_iota", commutes)
    report.add_check("symplectic_count_matches_yn", sp_count == sp_yn, f"{sp_count} vs {sp_yn}")

    sigma = sigma_d(dv)
    fixed_cells = iota_fixed_count(sigma, dv, threads)
    fixed_coords = iota_fixed_coordinate_count(dv)
    report.results["iota_fixed_cells"] = fixed_cells
    report.results["iota_fixed_coordinate_points"] = fixed_coords
    report.add_check("iota_fixed_counts_agree", fixed_cells == fixed_coords, f"{fixed_cells} vs {fixed_coords}")

    partner = form_partner(b)
    compatible = True
    for c in coordinate_collections(dv):
        tau = flag_to_minimal_rep(zeta(coordinate_point(c, dv, p)))
        image_tau = flag_to_minimal_rep(zeta(coordinate_point(iota_coordinate(c, m, partner), dv, p)))
        if image_tau != iota_perm(tau, n):
            compatible = False
            logger.error(f"iota on coordinate point {sorted(map(sorted, c))} does not match iota on {tau}")
    report.add_check("fixed_point_map_commutes_with_iota", compatible)
    return _timed(report, started)


def run_desing(n: int, p: int) -> RunReport:
    started = time.perf_counter()
    report = RunReport(command="verify desing", parameters={"n": n, "p": p})
    quiver = build_quiver(n)
    N = quiver.N

    word = reduced_word_sigma(n)
    product, reduced = word_to_perm(word, 2 * n)
    report.results["reduced_word"] = list(word)
    report.add_check("reduced_word_gives_sigma", product == sigma_n(n) and reduced)

    rn = list(enumerate_Rn(n, p))
    bn = list(enumerate_Bn(n, p))
    report.results["rn_count"] = len(rn)
    report.results["bn_count"] = len(bn)
    report.add_check("rn_count", len(rn) == (1 + p) ** N, f"{len(rn)} vs {(1 + p) ** N}")
    report.add_check("bn_count", len(bn) == len(rn), f"{len(bn)} vs {len(rn)}")
    report.add_check("rn_valid", all(validate_Rn(pt, p) for pt in rn))
    report.add_check("bn_valid", all(validate_Bn(pt, p) for pt in bn))

    images = [zeta_quiver(pt) for pt in rn]
    report.add_check("zeta_quiver_bijective", len(set(images)) == len(rn) and set(images) == set(bn))
    report.add_check("square_commutes", all(zeta(pn(pt)) == rho_of_psi(u) for pt, u in zip(rn, images)))

    degflag_points = set(enumerate_degflag(DimensionVector.complete(n), p))
    report.add_check("pn_surjective", {pn(pt) for pt in rn} == degflag_points,
                     f"image of size {len({pn(pt) for pt in rn})} vs {len(degflag_points)} points")

    bs_ok, inverse_ok = True, True
    for u in bn:
        flags = psi(u)
        bs_ok = bs_ok and validate_bs(n, flags)
        inverse_ok = inverse_ok and theta(n, flags) == u
    report.add_check("psi_lands_in_bs", bs_ok)
    report.add_check("theta_inverts_psi", inverse_ok)

    histograms: Dict[str, Dict[str, int]] = {}
    towers_ok = True
    for s in range(1, N):
        histogram, onto = truncation_fibers(n, p, s)
        histograms[str(s)] = {str(k): v for k, v in sorted(histogram.items())}
        towers_ok = towers_ok and onto and set(histogram) == {p + 1}
    report.results["truncation_fibers"] = histograms
    report.add_check("truncations_are_projective_line_bundles", towers_ok)
    return _timed(report, started)


def run_lemma(n: int) -> RunReport:
    started = time.perf_counter()
    report = RunReport(command="verify lemma", parameters={"n": n})
    quiver = build_quiver(n)
    report.results["N"] = quiver.N
    report.add_check("vertex_count", quiver.N == n * (n + 1) // 2)
    report.add_check("decorated_count", len(quiver.decorated) == 2 * n + 1)
    report.add_check("beta_anchors", quiver.beta(1).label == f"a_1_{n}" and all(
        quiver.beta(quiver.N - k).label == f"a_{n - k}_{n - k}" for k in range(n)))
    report.add_check("lookup_lemma", lemma_check(n))
    report.add_check("lookup_identities", lookup_identities_check(n))
    product, reduced = word_to_perm(reduced_word_sigma(n), 2 * n)
    report.add_check("reduced_word_gives_sigma", product == sigma_n(n) and reduced)
    return _timed(report, started)


def run_genocchi(max_n: int, threads: Optional[int] = None) -> RunReport:
    started = time.perf_counter()
    report = RunReport(command="verify genocchi", parameters={"max_n": max_n})
    bruhat_side = genocchi_numbers(max_n, threads)
    fixed_side = [fixed_points_count(DimensionVector.complete(n)) for n in range(1, max_n + 1)]
    report.results["h"] = bruhat_side
    report.results["fixed_points"] = fixed_side
    for n, (h, f) in enumerate(zip(bruhat_side, fixed_side), start=1):
        report.add_check(f"n={n}:oracles_agree", h == f, f"{h} vs {f}")
    for n in range(1, min(max_n, 3) + 1):
        sigma = sigma_n(n)
        oracle = subword_products(reduced_word_sigma(n), 2 * n)
        group = (Permutation(images) for images in itertools.permutations(range(1, 2 * n + 1)))
        below = {tau for tau in group if bruhat_leq(tau, sigma)}
        report.add_check(f"n={n}:subword_oracle", below == oracle, f"{len(below)} vs {len(oracle)}")
        dv = DimensionVector.complete(n)
        minimal = {tau for tau in oracle if is_minimal_rep(tau, dv)}
        report.add_check(f"n={n}:subword_oracle_quotient", minimal == set(interval_members(sigma, dv, threads)))
    return _timed(report, started)


def run_count(target: str, n: int, p: int = 2, d: Optional[List[int]] = None,
              threads: Optional[int] = None) -> RunReport:
    started = time.perf_counter()
    dv = DimensionVector(n, tuple(d)) if d else DimensionVector.complete(n)
    parameters = {"n": n, "d": list(dv.d)}
    if target in ("degflag", "yn", "rn", "bn"):
        parameters["p"] = p
    report = RunReport(command=f"count {target}", parameters=parameters)

    if target == "degflag":
        report.results["count"] = sum(1 for _ in enumerate_degflag(dv, p))
    elif target == "yn":
        report.results["count"] = sum(1 for _ in enumerate_yn(dv, p))
    elif target == "rn":
        report.results["count"] = sum(1 for _ in enumerate_Rn(n, p))
    elif target == "bn":
        report.results["count"] = sum(1 for _ in enumerate_Bn(n, p))
    elif target == "quotient":
        report.results["count"] = sum(1 for _ in enumerate_quotient(dv))
    elif target == "interval":
        sigma = sigma_d(dv)
        poly = interval_poincare(sigma, dv, threads)
        report.results["coeffs"] = list(poly.coeffs)
        report.results["count"] = poly.evaluate(1)
        report.results["sigma_length"] = length(sigma)
    elif target == "fixed":
        report.results["count"] = fixed_points_count(dv)
    else:
        raise ValueError(f"unknown count target {target!r}; choose from {', '.join(COUNT_TARGETS)}")
    return _timed(report, started)

