"""
Degenerate flag varieties and their Schubert models over F_p.

V = F_p^{n+1} with basis f_1..f_{n+1}; W = F_p^{2n} with basis e_1..e_{2n};
E_k = <e_1, ..., e_k>. A point of Fl^a_d is a tuple (V_1, ..., V_s) with
dim V_l = d_l and pr_{d_l, d_{l+1}}(V_l) <= V_{l+1}. The embedding zeta sends it
to the partial flag W_l = pi_{d_l}^{-1}(V_l) in W.

The type C half works with n = 2m - 1, the form E on W, and the form b_V on V
obtained from E by transport through pi_m.
"""

import itertools
import logging
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple
from dataclasses import dataclass

import numpy as np

from src.bounds import get_bounds
from src.bruhat import interval_members, rank_matrix
from src.config import Config
from src.gf_linalg import (
    FormMatrix, LinearMapMatrix, Subspace, TorusElement, check_prime, contains, coordinate_subspace,
    embed, enumerate_partial_flags, form_matrix, full_space, grassmannian, image, linear_map, perp,
    preimage, restrict, sample_torus_elements,
    standard_flag_space, standard_intersection_dims, subspace_sum, subspaces_between, symplectic_form_E,
    torus_act, zero_subspace,
)
from src.permgroup import DimensionVector, Permutation, sigma_d

logger = logging.getLogger(__name__)

CoordinateCollection = Tuple[FrozenSet[int], ...]


@dataclass(frozen=True)
class DegFlagPoint:
    dv: DimensionVector
    components: Tuple[Subspace, ...]

    @property
    def p(self) -> int:
        return self.components[0].p

    def is_valid(self) -> bool:
        n = self.dv.n
        if len(self.components) != self.dv.s:
            return False
        for x, d in zip(self.components, self.dv.d):
            if x.ambient_dim != n + 1 or x.dim != d:
                return False
        for l in range(self.dv.s - 1):
            step = pr_range(self.dv.d[l], self.dv.d[l + 1], n, self.p)
            if not contains(self.components[l + 1], image(step, self.components[l])):
                return False
        return True

    def is_coordinate(self) -> bool:
        return all(x.is_coordinate() for x in self.components)

    def to_json(self) -> List[List[List[int]]]:
        return [x.to_rows() for x in self.components]


@dataclass(frozen=True)
class SchubertFlagPoint:
    dv: DimensionVector
    components: Tuple[Subspace, ...]

    @property
    def p(self) -> int:
        return self.components[0].p

    def is_coordinate(self) -> bool:
        return all(x.is_coordinate() for x in self.components)

    def to_json(self) -> List[List[List[int]]]:
        return [x.to_rows() for x in self.components]


def _check_flag_shape(fl: SchubertFlagPoint):
    dv = fl.dv
    if len(fl.components) != dv.s:
        raise ValueError(f"flag has {len(fl.components)} components, d=({dv.label()}) needs {dv.s}")
    for w, k in zip(fl.components, dv.flag_dims):
        if w.ambient_dim != dv.size:
            raise ValueError(f"flag component lives in F^{w.ambient_dim}, expected F^{dv.size}")
        if w.dim != k:
            raise ValueError(f"flag component has dim {w.dim}, expected {k}")


# Maps

def pr(k: int, n: int, p: int) -> LinearMapMatrix:
    """Projection of V along f_k"""
    if not 1 <= k <= n + 1:
        raise ValueError(f"projection index {k} out of range [1, {n + 1}]")
    m = np.eye(n + 1, dtype=np.int64)
    m[k - 1, k - 1] = 0
    return linear_map(m, p)


def pr_range(i: int, j: int, n: int, p: int) -> LinearMapMatrix:
    """pr_{j-1} o ... o pr_{i+1} o pr_i"""
    if not i < j:
        raise ValueError(f"pr_range needs i < j, got i={i}, j={j}")
    result = pr(i, n, p)
    for k in range(i + 1, j):
        result = result.then(pr(k, n, p))
    return result


def pi_map(n: int, i: int, p: int) -> LinearMapMatrix:
    """pi_i : U_{n+i} -> V as an (n+i) x (n+1) matrix"""
    if not 1 <= i <= n:
        raise ValueError(f"pi index {i} out of range [1, {n}]")
    m = np.zeros((n + i, n + 1), dtype=np.int64)
    for k in range(1, n + i + 1):
        if i <= k <= n + 1:
            m[k - 1, k - 1] = 1
        elif k >= n + 2:
            m[k - 1, k - n - 2] = 1
    return linear_map(m, p)


def zeta_component(v: Subspace, i: int, n: int) -> Subspace:
    """pi_i^{-1}(V) as a subspace of W"""
    return embed(preimage(pi_map(n, i, v.p), v), 2 * n)


def zeta(pt: DegFlagPoint) -> SchubertFlagPoint:
    n = pt.dv.n
    return SchubertFlagPoint(pt.dv, tuple(zeta_component(v, d, n) for v, d in zip(pt.components, pt.dv.d)))


def zeta_inverse(fl: SchubertFlagPoint) -> DegFlagPoint:
    """V_l = pi_{d_l}(W_l) for a flag with W_l <= U_{n+d_l}"""
    n = fl.dv.n
    components = []
    for w, d in zip(fl.components, fl.dv.d):
        components.append(image(pi_map(n, d, w.p), restrict(w, n + d)))
    return DegFlagPoint(fl.dv, tuple(components))


# Enumeration

def enumerate_degflag(dv: DimensionVector, p: int) -> Iterator[DegFlagPoint]:
    check_prime(p)
    n = dv.n
    get_bounds().check_degflag(n, p)
    ambient = full_space(n + 1, p)

    def extend(prefix: Tuple[Subspace, ...]) -> Iterator[DegFlagPoint]:
        level = len(prefix)
        if level == dv.s:
            yield DegFlagPoint(dv, prefix)
            return
        if level == 0:
            lower = zero_subspace(n + 1, p)
        else:
            lower = image(pr_range(dv.d[level - 1], dv.d[level], n, p), prefix[-1])
        for v in subspaces_between(lower, ambient, dv.d[level]):
            yield from extend(prefix + (v,))

    yield from extend(())


def yn_membership(fl: SchubertFlagPoint) -> bool:
    _check_flag_shape(fl)
    n = fl.dv.n
    ws = fl.components
    for a, b in zip(ws, ws[1:]):
        if not contains(b, a):
            return False
    for w, d in zip(ws, fl.dv.d):
        if not contains(w, standard_flag_space(d - 1, 2 * n, w.p)):
            return False
        if not contains(standard_flag_space(n + d, 2 * n, w.p), w):
            return False
    return True


def schubert_conditions(fl: SchubertFlagPoint, sigma: Permutation) -> bool:
    """dim(W_l cap E_k) >= #{t <= 2 d_l - 1 : sigma(t) <= k} for all l, k, on a nested chain"""
    _check_flag_shape(fl)
    if sigma.size != fl.dv.size:
        raise ValueError(f"size mismatch: permutation of {sigma.size} letters, flag in F^{fl.dv.size}")
    ws = fl.components
    for a, b in zip(ws, ws[1:]):
        if not contains(b, a):
            return False
    r = rank_matrix(sigma).entries
    for w, row in zip(ws, fl.dv.flag_dims):
        dims = np.array(standard_intersection_dims(w)[1:])
        if np.any(dims < r[row - 1]):
            return False
    return True


def enumerate_yn(dv: DimensionVector, p: int) -> Iterator[SchubertFlagPoint]:
    """Points of Y_n through the quotients E_{n+d}/E_{d-1}"""
    check_prime(p)
    n = dv.n
    get_bounds().check_degflag(n, p)

    def extend(prefix: Tuple[Subspace, ...]) -> Iterator[SchubertFlagPoint]:
        level = len(prefix)
        if level == dv.s:
            yield SchubertFlagPoint(dv, prefix)
            return
        d = dv.d[level]
        lower = standard_flag_space(d - 1, 2 * n, p)
        if prefix:
            lower = subspace_sum(lower, prefix[-1])
        upper = standard_flag_space(n + d, 2 * n, p)
        for w in subspaces_between(lower, upper, 2 * d - 1):
            yield from extend(prefix + (w,))

    yield from extend(())


def scan_schubert_equivalence(dv: DimensionVector, p: int) -> Tuple[int, int]:
    """Compare yn_membership with schubert_conditions(sigma_d) on every partial flag of W.

    Returns (flags checked, disagreements).
    """
    n = dv.n
    if not get_bounds().allows_schubert_scan(2 * n, p):
        raise ValueError(f"full-chain scan of F_{p}^{2 * n} is beyond the configured scan bound")

    sigma = sigma_d(dv)
    checked, disagreements = 0, 0
    for chain in enumerate_partial_flags(dv.flag_dims, 2 * n, p):
        fl = SchubertFlagPoint(dv, chain)
        checked += 1
        if yn_membership(fl) != schubert_conditions(fl, sigma):
            disagreements += 1
            logger.error(f"Y_n and Schubert conditions disagree on {fl.to_json()}")
    logger.info(f"Scanned {checked} partial flags of F_{p}^{2 * n} for d=({dv.label()}): {disagreements} disagreements")
    return checked, disagreements


# Torus

def torus_on_component(lam: TorusElement, i: int, n: int) -> TorusElement:
    """Action of lambda on the i-th copy of V"""
    if len(lam.entries) != 2 * n:
        raise ValueError(f"torus element of rank {len(lam.entries)}, expected {2 * n}")
    entries = []
    for k in range(1, n + 2):
        entries.append(lam.entries[k - 1] if k >= i else lam.entries[n + k])
    return TorusElement(tuple(entries), lam.p)


def torus_act_degflag(lam: TorusElement, pt: DegFlagPoint) -> DegFlagPoint:
    n = pt.dv.n
    return DegFlagPoint(pt.dv, tuple(
        torus_act(torus_on_component(lam, d, n), v) for v, d in zip(pt.components, pt.dv.d)))


def torus_act_flag(lam: TorusElement, fl: SchubertFlagPoint) -> SchubertFlagPoint:
    return SchubertFlagPoint(fl.dv, tuple(torus_act(lam, w) for w in fl.components))


def torus_equivariance_check(dv: DimensionVector, p: int, samples: Optional[int] = None,
                             seed: Optional[int] = None) -> bool:
    """zeta(lambda . pt) == lambda . zeta(pt) for every point and each sampled lambda"""
    samples = samples or Config.TORUS_SAMPLES
    seed = Config.TORUS_SEED if seed is None else seed
    torus = sample_torus_elements(2 * dv.n, p, samples, seed)
    checked = 0
    for pt in enumerate_degflag(dv, p):
        image_pt = zeta(pt)
        for lam in torus:
            checked += 1
            if zeta(torus_act_degflag(lam, pt)) != torus_act_flag(lam, image_pt):
                logger.error(f"Torus equivariance fails at lambda={lam.entries}, point={pt.to_json()}")
                return False
        if pt.is_coordinate() and not image_pt.is_coordinate():
            logger.error(f"Coordinate point {pt.to_json()} maps to a non-coordinate flag")
            return False
    logger.info(f"Torus equivariance: {checked} (point, lambda) pairs checked for d=({dv.label()}), p={p}")
    return True


# Torus-fixed points

def coordinate_collections(dv: DimensionVector) -> List[CoordinateCollection]:
    """Index-set tuples (S_1, ..., S_s) with |S_l| = d_l and pr-containment"""
    n = dv.n
    results: List[CoordinateCollection] = []

    def extend(prefix: Tuple[FrozenSet[int], ...]):
        level = len(prefix)
        if level == dv.s:
            results.append(prefix)
            return
        d = dv.d[level]
        for chosen in itertools.combinations(range(1, n + 2), d):
            s = frozenset(chosen)
            if prefix:
                killed = set(range(dv.d[level - 1], d))
                if not (prefix[-1] - killed) <= s:
                    continue
            extend(prefix + (s,))

    extend(())
    return results


def coordinate_point(collection: CoordinateCollection, dv: DimensionVector, p: int) -> DegFlagPoint:
    return DegFlagPoint(dv, tuple(coordinate_subspace(s, dv.n + 1, p) for s in collection))


def fixed_points_count(dv: DimensionVector) -> int:
    return len(coordinate_collections(dv))


def flag_to_minimal_rep(fl: SchubertFlagPoint) -> Permutation:
    """The minimal representative whose coordinate flag is fl"""
    if not fl.is_coordinate():
        raise ValueError("flag is not torus-fixed")
    images: List[int] = []
    seen: set = set()
    for w in fl.components:
        support = w.coordinate_support()
        images.extend(sorted(support - seen))
        seen |= support
    images.extend(sorted(set(range(1, fl.dv.size + 1)) - seen))
    return Permutation(tuple(images))


def fixed_point_bijection(dv: DimensionVector) -> Dict[CoordinateCollection, Permutation]:
    """Coordinate degenerate flags to minimal representatives below sigma_d, through zeta"""
    mapping = {}
    for collection in coordinate_collections(dv):
        mapping[collection] = flag_to_minimal_rep(zeta(coordinate_point(collection, dv, 2)))
    return mapping


def fixed_point_bijection_holds(dv: DimensionVector, threads: Optional[int] = None) -> bool:
    mapping = fixed_point_bijection(dv)
    images = set(mapping.values())
    cells = set(interval_members(sigma_d(dv), dv, threads))
    if len(images) != len(mapping):
        logger.error(f"Fixed-point map is not injective for d=({dv.label()})")
        return False
    if images != cells:
        logger.error(f"Fixed-point images differ from the Bruhat interval for d=({dv.label()}): "
                     f"{len(images)} vs {len(cells)}")
        return False
    return True


# Type C

def _symplectic_m(dv: DimensionVector) -> int:
    if not dv.is_symplectic():
        raise ValueError(f"d=({dv.label()}) with n={dv.n} is not preserved by d -> 2m - d (or n is even)")
    return (dv.n + 1) // 2


def section_index(k: int, m: int) -> int:
    """Index of the chosen pi_m-preimage e_{s(k)} of f_k"""
    return k if k >= m else 2 * m + k


def form_V(m: int, p: int, signs: str = "constant") -> FormMatrix:
    """b_V[f_a, f_b] := E[e_{s(a)}, e_{s(b)}] for the section s of pi_m"""
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    n = 2 * m - 1
    e = symplectic_form_E(n, p, signs)
    idx = [section_index(k, m) - 1 for k in range(1, 2 * m + 1)]
    b = form_matrix(e.matrix[np.ix_(idx, idx)], p)
    if not transport_well_defined(m, p, signs):
        raise ValueError("ker pi_m does not pair to zero with U_{n+m}")
    if not (b.is_alternating() and b.is_nondegenerate()):
        raise ValueError(f"transported form on F_{p}^{2 * m} is not symplectic")
    return b


def transport_well_defined(m: int, p: int, signs: str = "constant") -> bool:
    """ker pi_m = <e_1..e_{m-1}> pairs to zero with U_{n+m}"""
    n = 2 * m - 1
    e = symplectic_form_E(n, p, signs).matrix
    return not np.any(e[:m - 1, :n + m] % p)


def partner_index(m: int) -> Dict[int, int]:
    """a -> b with E[e_{s(a)}, e_{s(b)}] != 0; e_j pairs with e_{4m-1-j} on F_p^{4m-2}"""
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    preimage = {section_index(k, m): k for k in range(1, 2 * m + 1)}
    return {k: preimage[4 * m - 1 - section_index(k, m)] for k in range(1, 2 * m + 1)}


def form_partner(form: FormMatrix) -> Dict[int, int]:
    """a -> b with b(f_a, f_b) != 0, for a monomial form"""
    partner = {}
    for a in range(form.dim):
        cols = np.nonzero(form.matrix[a] % form.p)[0]
        if cols.size != 1:
            raise ValueError("form is not monomial")
        partner[a + 1] = int(cols[0]) + 1
    return partner


def iota_flag(pt: DegFlagPoint, form: FormMatrix) -> DegFlagPoint:
    """Component l goes to the b_V-orthogonal of component s + 1 - l"""
    _symplectic_m(pt.dv)
    comps = pt.components
    return DegFlagPoint(pt.dv, tuple(perp(comps[len(comps) - 1 - l], form) for l in range(len(comps))))


def iota_schubert(fl: SchubertFlagPoint, form: FormMatrix) -> SchubertFlagPoint:
    _symplectic_m(fl.dv)
    comps = fl.components
    return SchubertFlagPoint(fl.dv, tuple(perp(comps[len(comps) - 1 - l], form) for l in range(len(comps))))


def iota_coordinate(collection: CoordinateCollection, m: int, partner: Dict[int, int]) -> CoordinateCollection:
    """iota on coordinate collections: S^perp is the complement of partner(S)"""
    everything = frozenset(range(1, 2 * m + 1))
    s = len(collection)
    return tuple(everything - frozenset(partner[a] for a in collection[s - 1 - l]) for l in range(s))


def symplectic_fixed(dv: DimensionVector, p: int, signs: Optional[str] = None) -> Iterator[DegFlagPoint]:
    m = _symplectic_m(dv)
    get_bounds().check_symplectic(m, p)
    form = form_V(m, p, signs or Config.SYMPLECTIC_SIGNS)
    for pt in enumerate_degflag(dv, p):
        if iota_flag(pt, form) == pt:
            yield pt


def iota_fixed_coordinate_count(dv: DimensionVector) -> int:
    m = _symplectic_m(dv)
    partner = partner_index(m)
    return sum(1 for c in coordinate_collections(dv) if iota_coordinate(c, m, partner) == c)


def metric_preserving_failures(m: int, p: int, signs: str = "constant") -> List[Tuple[int, int, int]]:
    """(i, a, b) with b_V[pi_{m-i} e_a, pi_{m+i} e_b] != E[e_a, e_b]"""
    n = 2 * m - 1
    e = symplectic_form_E(n, p, signs)
    b = form_V(m, p, signs)
    failures = []
    for i in range(m):
        left = pi_map(n, m - i, p).matrix
        right = pi_map(n, m + i, p).matrix
        transported = (left @ b.matrix @ right.T) % p
        direct = e.matrix[:n + m - i, :n + m + i] % p
        for a, c in zip(*np.nonzero(transported != direct)):
            failures.append((i, int(a) + 1, int(c) + 1))
    return failures


def metric_preserving_check(m: int, p: int, signs: Optional[str] = None) -> bool:
    signs = signs or Config.SYMPLECTIC_SIGNS
    failures = metric_preserving_failures(m, p, signs)
    if failures:
        logger.error(f"Metric identity fails for m={m}, p={p}, signs={signs} on {len(failures)} basis pairs, "
                     f"first (i, a, b) = {failures[0]}")
    return not failures


def perp_identity_check(m: int, p: int, signs: Optional[str] = None) -> bool:
    """zeta_{m-i}(U)^perp == zeta_{m+i}(U^perp) for every U in Gr_{m-i}(V)"""
    signs = signs or Config.SYMPLECTIC_SIGNS
    get_bounds().check_symplectic(m, p)
    n = 2 * m - 1
    e = symplectic_form_E(n, p, signs)
    b = form_V(m, p, signs)
    checked = 0
    for i in range(m):
        for u in grassmannian(m - i, 2 * m, p):
            checked += 1
            if perp(zeta_component(u, m - i, n), e) != zeta_component(perp(u, b), m + i, n):
                logger.error(f"Perp identity fails at i={i}, U={u.to_rows()}")
                return False
    logger.info(f"Perp identity: {checked} subspaces checked for m={m}, p={p}, signs={signs}")
    return True


def adjoint_projection_check(m: int, p: int, signs: Optional[str] = None) -> bool:
    """b_V[pr_i v, w] == b_V[v, pr_{i*} w] on basis vectors, i* the b_V-partner of i"""
    b = form_V(m, p, signs or Config.SYMPLECTIC_SIGNS)
    partner = form_partner(b)
    n = 2 * m - 1
    for i in range(1, 2 * m + 1):
        left = (pr(i, n, p).matrix @ b.matrix) % p
        right = (b.matrix @ pr(partner[i], n, p).matrix.T) % p
        if np.any(left != right):
            logger.error(f"pr_{i} is not adjoint to pr_{partner[i]} for m={m}, p={p}")
            return False
    return True
