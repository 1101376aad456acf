"""
Quiver combinatorics and the two resolutions of the complete degenerate flag variety.

Gamma_n has vertices a_{i,j} (1 <= i <= j <= n) on column i + j - 1 and row
j - i + 1. Vertices are ordered beta_1 < ... < beta_N row by row from the top,
each row left to right; the decorated quiver adds a_{0,k+1} = beta_{-k} and
a_{k,n+1} = beta_{-n-k}, so that beta_{-t} sits on column t.

R_n collections (Z_beta) live in V = F_p^{n+1}; B_n collections (U_beta) live in
W = F_p^{2n}. Both are enumerated in beta-order, where each new subspace ranges
over a projective line fixed by its predecessors beta^- and beta^+.
"""

import logging
from collections import Counter
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Tuple
from dataclasses import dataclass, field

from src.bounds import get_bounds
from src.degflag import DegFlagPoint, SchubertFlagPoint, pr, zeta_component
from src.gf_linalg import (
    Subspace, check_prime, contains, coordinate_subspace, full_space, intersect, preimage,
    standard_flag_space, subspaces_between, zero_subspace,
)
from src.permgroup import DimensionVector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuiverVertex:
    i: int
    j: int

    @property
    def column(self) -> int:
        return self.i + self.j - 1

    @property
    def row(self) -> int:
        return self.j - self.i + 1

    @property
    def minus(self) -> "QuiverVertex":
        return QuiverVertex(self.i - 1, self.j)

    @property
    def plus(self) -> "QuiverVertex":
        return QuiverVertex(self.i, self.j + 1)

    @property
    def label(self) -> str:
        return f"a_{self.i}_{self.j}"

    def is_decorated(self, n: int) -> bool:
        return self.i == 0 or self.j == n + 1


@dataclass(frozen=True)
class Quiver:
    n: int
    order: Tuple[QuiverVertex, ...]
    decorated: Tuple[QuiverVertex, ...]
    edges: Tuple[Tuple[QuiverVertex, QuiverVertex], ...]
    decorated_edges: Tuple[Tuple[QuiverVertex, QuiverVertex], ...]
    _index: Dict[QuiverVertex, int] = field(default_factory=dict, compare=False, repr=False)

    @property
    def N(self) -> int:
        return len(self.order)

    def beta(self, k: int) -> QuiverVertex:
        """beta_k for -2n <= k <= N"""
        if 1 <= k <= self.N:
            return self.order[k - 1]
        if -2 * self.n <= k <= 0:
            return self.decorated[-k]
        raise ValueError(f"beta index {k} out of range [{-2 * self.n}, {self.N}]")

    def index_of(self, vertex: QuiverVertex) -> int:
        if vertex not in self._index:
            raise ValueError(f"{vertex.label} is not a vertex of the decorated quiver for n={self.n}")
        return self._index[vertex]

    def word(self) -> Tuple[int, ...]:
        return tuple(v.column for v in self.order)


@lru_cache(maxsize=None)
def build_quiver(n: int) -> Quiver:
    if n < 1:
        raise ValueError(f"quiver needs n >= 1, got {n}")
    order = [QuiverVertex(1, n)]
    while True:
        last = order[-1]
        if last.j < n:
            order.append(QuiverVertex(last.i + 1, last.j + 1))
        elif n - last.i >= 1:
            order.append(QuiverVertex(1, n - last.i))
        else:
            break

    decorated = [QuiverVertex(0, 1)]
    decorated += [QuiverVertex(0, k + 1) for k in range(1, n + 1)]
    decorated += [QuiverVertex(k, n + 1) for k in range(1, n + 1)]

    edges = []
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            if i < j:
                edges.append((QuiverVertex(i, j), QuiverVertex(i + 1, j)))
            if j < n:
                edges.append((QuiverVertex(i, j), QuiverVertex(i, j + 1)))
    decorated_edges = [(QuiverVertex(0, i), QuiverVertex(1, i)) for i in range(1, n + 1)]
    decorated_edges += [(QuiverVertex(i, n), QuiverVertex(i, n + 1)) for i in range(1, n + 1)]

    quiver = Quiver(n, tuple(order), tuple(decorated), tuple(edges), tuple(decorated_edges))
    for k in range(-2 * n, quiver.N + 1):
        quiver._index[quiver.beta(k)] = k
    return quiver


@lru_cache(maxsize=None)
def _lookup_table(n: int) -> Dict[Tuple[int, int], int]:
    quiver = build_quiver(n)
    latest = {quiver.beta(-t).column: -t for t in range(2 * n + 1)}
    table = {}
    for k in range(0, quiver.N + 1):
        if k >= 1:
            latest[quiver.beta(k).column] = k
        for ell, s in latest.items():
            table[(k, ell)] = s
    return table


def beta_lookup(quiver: Quiver, k: int, ell: int) -> int:
    """(beta_k : ell), the largest s <= k with beta_s on column ell"""
    if not 0 <= k <= quiver.N:
        raise ValueError(f"beta index {k} out of range [0, {quiver.N}]")
    if not 0 <= ell <= 2 * quiver.n:
        raise ValueError(f"column {ell} out of range [0, {2 * quiver.n}]")
    return _lookup_table(quiver.n)[(k, ell)]


def lemma_check(n: int) -> bool:
    """(beta_k:t+1) = (beta_k:t)^+ or (beta_k:t+1)^- = (beta_k:t), together with
    (beta_k:t) = (beta_{k-1}:t) off column ell_k"""
    quiver = build_quiver(n)
    for k in range(1, quiver.N + 1):
        for t in range(1, 2 * n - 1):
            a = quiver.beta(beta_lookup(quiver, k, t))
            b = quiver.beta(beta_lookup(quiver, k, t + 1))
            if b != a.plus and b.minus != a:
                logger.error(f"Lookup lemma fails for n={n}, k={k}, t={t}: {a.label}, {b.label}")
                return False
        ell_k = quiver.beta(k).column
        for t in range(1, 2 * n):
            if t != ell_k and beta_lookup(quiver, k, t) != beta_lookup(quiver, k - 1, t):
                logger.error(f"(beta_{k}:{t}) differs from (beta_{k - 1}:{t}) for n={n}")
                return False
    return True


def lookup_identities_check(n: int) -> bool:
    """Closed-form values of the (beta:ell) lookup"""
    quiver = build_quiver(n)
    N = quiver.N
    for k in range(1, N + 1):
        v = quiver.beta(k)
        if beta_lookup(quiver, k, v.column) != k:
            return False
        if quiver.beta(beta_lookup(quiver, k, v.column - 1)) != v.minus:
            return False
        if quiver.beta(beta_lookup(quiver, k, v.column + 1)) != v.plus:
            return False
    for j in range(1, n + 1):
        k = quiver.index_of(QuiverVertex(1, j))
        if any(beta_lookup(quiver, k, ell) != -ell for ell in range(j)):
            return False
    return all(beta_lookup(quiver, N, 2 * k - 1) == N - (n - k) for k in range(1, n + 1))


def reduced_word_sigma(n: int) -> Tuple[int, ...]:
    """Columns of beta_1, ..., beta_N; a reduced word for sigma_n"""
    return build_quiver(n).word()


def quiver_table(n: int) -> Dict:
    quiver = build_quiver(n)
    return {
        "n": n,
        "N": quiver.N,
        "beta_order": [v.label for v in quiver.order],
        "columns": [v.column for v in quiver.order],
        "reduced_word": list(reduced_word_sigma(n)),
        "lookup": {
            quiver.beta(k).label: [quiver.beta(beta_lookup(quiver, k, ell)).label
                                   for ell in range(1, 2 * n)]
            for k in range(0, quiver.N + 1)
        },
    }


@dataclass(frozen=True)
class QuiverCollection:
    """One subspace per vertex beta_1, ..., beta_s (s = N unless truncated)"""
    n: int
    values: Tuple[Subspace, ...]

    def __getitem__(self, vertex: QuiverVertex) -> Subspace:
        return self.values[build_quiver(self.n).index_of(vertex) - 1]

    def truncate(self, s: int) -> "QuiverCollection":
        return QuiverCollection(self.n, self.values[:s])

    def to_json(self) -> Dict[str, List[List[int]]]:
        quiver = build_quiver(self.n)
        return {quiver.beta(k + 1).label: v.to_rows() for k, v in enumerate(self.values)}


# R_n

def v_beta(vertex: QuiverVertex, n: int, p: int) -> Subspace:
    """<f_1, ..., f_{i-1}, f_j, ..., f_{n+1}>"""
    return coordinate_subspace(list(range(1, vertex.i)) + list(range(vertex.j, n + 2)), n + 1, p)


def _z_value(values: Tuple[Subspace, ...], quiver: Quiver, vertex: QuiverVertex, p: int) -> Subspace:
    n = quiver.n
    if vertex.i == 0:
        return zero_subspace(n + 1, p)
    if vertex.j == n + 1:
        return full_space(n + 1, p)
    return values[quiver.index_of(vertex) - 1]


def _rn_fiber(values: Tuple[Subspace, ...], quiver: Quiver, vertex: QuiverVertex, p: int) -> Iterator[Subspace]:
    n = quiver.n
    lower = _z_value(values, quiver, vertex.minus, p)
    upper = intersect(preimage(pr(vertex.j, n, p), _z_value(values, quiver, vertex.plus, p)), v_beta(vertex, n, p))
    yield from subspaces_between(lower, upper, vertex.i)


def enumerate_Rn(n: int, p: int, depth: Optional[int] = None) -> Iterator[QuiverCollection]:
    """All R_n collections over F_p, truncated to the first `depth` vertices when given"""
    check_prime(p)
    get_bounds().check_quiver(n, p)
    quiver = build_quiver(n)
    depth = quiver.N if depth is None else depth
    if not 0 <= depth <= quiver.N:
        raise ValueError(f"depth {depth} out of range [0, {quiver.N}]")

    def extend(values: Tuple[Subspace, ...]) -> Iterator[QuiverCollection]:
        k = len(values)
        if k == depth:
            yield QuiverCollection(n, values)
            return
        for z in _rn_fiber(values, quiver, quiver.beta(k + 1), p):
            yield from extend(values + (z,))

    yield from extend(())


def validate_Rn(pt: QuiverCollection, p: int) -> bool:
    quiver = build_quiver(pt.n)
    n = pt.n
    for k, z in enumerate(pt.values, start=1):
        v = quiver.beta(k)
        if z.dim != v.i or not contains(v_beta(v, n, p), z):
            return False
        if not contains(z, _z_value(pt.values, quiver, v.minus, p)):
            return False
        if not contains(preimage(pr(v.j, n, p), _z_value(pt.values, quiver, v.plus, p)), z):
            return False
    return True


def truncation_fibers(n: int, p: int, s: int) -> Tuple[Counter, bool]:
    """Fiber-size histogram of R_n(s+1) -> R_n(s), and whether the map is onto"""
    fibers: Counter = Counter()
    for pt in enumerate_Rn(n, p, s + 1):
        fibers[pt.truncate(s)] += 1
    base = list(enumerate_Rn(n, p, s))
    histogram = Counter(fibers[b] for b in base)
    onto = all(fibers[b] > 0 for b in base)
    return histogram, onto


# B_n

def _u_value(values: Tuple[Subspace, ...], quiver: Quiver, vertex: QuiverVertex, p: int) -> Subspace:
    n = quiver.n
    k = quiver.index_of(vertex)
    if k <= 0:
        return standard_flag_space(-k, 2 * n, p)
    return values[k - 1]


def enumerate_Bn(n: int, p: int) -> Iterator[QuiverCollection]:
    check_prime(p)
    get_bounds().check_quiver(n, p)
    quiver = build_quiver(n)

    def extend(values: Tuple[Subspace, ...]) -> Iterator[QuiverCollection]:
        k = len(values)
        if k == quiver.N:
            yield QuiverCollection(n, values)
            return
        v = quiver.beta(k + 1)
        lower = _u_value(values, quiver, v.minus, p)
        upper = intersect(_u_value(values, quiver, v.plus, p), standard_flag_space(n + v.i, 2 * n, p))
        for u in subspaces_between(lower, upper, v.column):
            yield from extend(values + (u,))

    yield from extend(())


def validate_Bn(pt: QuiverCollection, p: int) -> bool:
    quiver = build_quiver(pt.n)
    n = pt.n
    for k, u in enumerate(pt.values, start=1):
        v = quiver.beta(k)
        if u.ambient_dim != 2 * n or u.dim != v.column:
            return False
        if not contains(standard_flag_space(n + v.i, 2 * n, p), u):
            return False
        if not contains(u, _u_value(pt.values, quiver, v.minus, p)):
            return False
        if not contains(_u_value(pt.values, quiver, v.plus, p), u):
            return False
    return True


# Maps between the models

def zeta_quiver(pt: QuiverCollection) -> QuiverCollection:
    """U_beta = pi_j^{-1}(Z_beta)"""
    quiver = build_quiver(pt.n)
    return QuiverCollection(pt.n, tuple(
        zeta_component(z, quiver.beta(k).j, pt.n) for k, z in enumerate(pt.values, start=1)))


def pn(pt: QuiverCollection) -> DegFlagPoint:
    """(Z_{a_k_k})_k, a point of the complete degenerate flag variety"""
    n = pt.n
    return DegFlagPoint(DimensionVector.complete(n), tuple(pt[QuiverVertex(k, k)] for k in range(1, n + 1)))


def rho_of_psi(pt: QuiverCollection) -> SchubertFlagPoint:
    """(U_{(beta_N : 2k-1)})_k"""
    quiver = build_quiver(pt.n)
    n = pt.n
    comps = []
    for k in range(1, n + 1):
        comps.append(_u_value(pt.values, quiver, quiver.beta(beta_lookup(quiver, quiver.N, 2 * k - 1)), pt.values[0].p))
    return SchubertFlagPoint(DimensionVector.complete(n), tuple(comps))


def psi(pt: QuiverCollection) -> List[Tuple[Subspace, ...]]:
    """Complete flags U^{beta_k}, k = 0..N, with U^{beta_k}_t = U_{(beta_k : t)}"""
    quiver = build_quiver(pt.n)
    p = pt.values[0].p
    flags = []
    for k in range(0, quiver.N + 1):
        flags.append(tuple(_u_value(pt.values, quiver, quiver.beta(beta_lookup(quiver, k, t)), p)
                           for t in range(1, 2 * pt.n)))
    return flags


def theta(n: int, flags: List[Tuple[Subspace, ...]]) -> QuiverCollection:
    """U_{beta_k} = U^{beta_k}_{ell_k}"""
    quiver = build_quiver(n)
    if len(flags) != quiver.N + 1:
        raise ValueError(f"expected {quiver.N + 1} flags, got {len(flags)}")
    return QuiverCollection(n, tuple(flags[k][quiver.beta(k).column - 1] for k in range(1, quiver.N + 1)))


def validate_bs(n: int, flags: List[Tuple[Subspace, ...]]) -> bool:
    """Complete flags starting at the standard flag, consecutive ones in relative position ell_{k+1}"""
    quiver = build_quiver(n)
    if len(flags) != quiver.N + 1:
        return False
    for flag in flags:
        if len(flag) != 2 * n - 1:
            return False
        for t, u in enumerate(flag, start=1):
            if u.dim != t:
                return False
        for a, b in zip(flag, flag[1:]):
            if not contains(b, a):
                return False
    p = flags[0][0].p
    if any(u != standard_flag_space(t, 2 * n, p) for t, u in enumerate(flags[0], start=1)):
        return False
    for k in range(quiver.N):
        ell = quiver.beta(k + 1).column
        for t in range(1, 2 * n):
            if t != ell and flags[k][t - 1] != flags[k + 1][t - 1]:
                return False
    return True
