"""
Bruhat order on Sym_2n and the parabolic quotients Sym_2n^J.

Comparison uses full rank-matrix dominance: u <= v iff r_u(i, j) >= r_v(i, j)
for all i, j. Intervals below sigma are obtained by filtering the quotient
stream, in batches of numpy rank matrices.
"""

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, Iterator, List, Optional, Sequence, Set
from dataclasses import dataclass

import numpy as np

from src.bounds import get_bounds
from src.config import Config
from src.permgroup import (
    DimensionVector, Permutation, compose, identity, iota_perm, is_minimal_rep,
    length, sigma_n, simple_reflection,
)

logger = logging.getLogger(__name__)

CHUNK_SIZE = 4096


@dataclass(frozen=True)
class RankMatrix:
    """entries[i-1, j-1] = #{l <= i : tau(l) <= j}"""
    entries: np.ndarray

    def __call__(self, i: int, j: int) -> int:
        return int(self.entries[i - 1, j - 1])

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    def dominates(self, other: "RankMatrix") -> bool:
        return bool(np.all(self.entries >= other.entries))


@dataclass(frozen=True)
class PoincarePolynomial:
    coeffs: tuple

    def evaluate(self, q: int) -> int:
        return sum(c * q ** m for m, c in enumerate(self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs)}

    def __str__(self) -> str:
        terms = []
        for m, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if m == 0:
                terms.append(str(c))
            else:
                power = "q" if m == 1 else f"q^{m}"
                terms.append(power if c == 1 else f"{c}{power}")
        return " + ".join(terms) if terms else "0"


def _rank_entries(perms: np.ndarray) -> np.ndarray:
    """Batched rank matrices for an array of 0-based one-line permutations"""
    batch, size = perms.shape
    ind = np.zeros((batch, size, size), dtype=np.int16)
    ind[np.arange(batch)[:, None], np.arange(size)[None, :], perms] = 1
    return ind.cumsum(axis=1).cumsum(axis=2)


def rank_matrix(tau: Permutation) -> RankMatrix:
    entries = _rank_entries(np.array([tau.zero_based()], dtype=np.int64))[0].astype(np.int64)
    entries.setflags(write=False)
    return RankMatrix(entries)


def sigma_rank_formula(n: int, i: int, k: int) -> int:
    """Closed form of #{l <= 2i-1 : sigma_n(l) <= k}"""
    if not (1 <= i <= n and 1 <= k <= 2 * n):
        raise ValueError(f"need 1 <= i <= {n} and 1 <= k <= {2 * n}, got i={i}, k={k}")
    if k <= i - 1:
        return k
    if k <= n:
        return i - 1
    if k <= n + i:
        return i - 1 + k - n
    return 2 * i - 1


def bruhat_leq(u: Permutation, v: Permutation) -> bool:
    if u.size != v.size:
        raise ValueError(f"size mismatch: {u.size} != {v.size}")
    return rank_matrix(u).dominates(rank_matrix(v))


def enumerate_quotient(dv: DimensionVector) -> Iterator[Permutation]:
    """Minimal coset representatives of Sym_2n / W_J in lexicographic order"""
    size = dv.size
    get_bounds().check_quotient(size)
    ascents = set(dv.K)
    used = [False] * (size + 1)
    prefix: List[int] = []

    def extend() -> Iterator[Permutation]:
        k = len(prefix)
        if k == size:
            yield Permutation(tuple(prefix))
            return
        lower = prefix[-1] if k in ascents else 0
        for x in range(lower + 1, size + 1):
            if used[x]:
                continue
            used[x] = True
            prefix.append(x)
            yield from extend()
            prefix.pop()
            used[x] = False

    yield from extend()


def coset(tau: Permutation, dv: DimensionVector) -> Iterator[Permutation]:
    """All elements of tau W_J"""
    if tau.size != dv.size:
        raise ValueError(f"size mismatch: permutation of {tau.size} letters, expected {dv.size}")
    starts = (0,) + dv.flag_dims
    ends = dv.flag_dims + (dv.size,)
    blocks = [tau.images[a:b] for a, b in zip(starts, ends)]
    for choice in itertools.product(*(itertools.permutations(block) for block in blocks)):
        yield Permutation(tuple(x for block in choice for x in block))


def _chunks(stream: Iterable[Permutation], size: int) -> Iterator[List[Permutation]]:
    stream = iter(stream)
    while True:
        chunk = list(itertools.islice(stream, size))
        if not chunk:
            return
        yield chunk


def _filter_below(chunk: List[Permutation], target: np.ndarray) -> List[Permutation]:
    perms = np.array([tau.zero_based() for tau in chunk], dtype=np.int64)
    mask = np.all(_rank_entries(perms) >= target, axis=(1, 2))
    return [tau for tau, keep in zip(chunk, mask) if keep]


def interval_members(sigma: Permutation, dv: DimensionVector, threads: Optional[int] = None) -> List[Permutation]:
    """Minimal representatives tau <= sigma, in lexicographic order"""
    if not is_minimal_rep(sigma, dv):
        raise ValueError(f"{sigma} is not a minimal representative for d=({dv.label()})")
    threads = threads or Config.THREADS
    target = rank_matrix(sigma).entries
    chunks = _chunks(enumerate_quotient(dv), CHUNK_SIZE)
    members: List[Permutation] = []
    if threads <= 1:
        for chunk in chunks:
            members.extend(_filter_below(chunk, target))
    else:
        # map() yields in submission order, so the merged stream stays lexicographic
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for kept in pool.map(lambda c: _filter_below(c, target), chunks):
                members.extend(kept)
    logger.debug(f"Interval below {sigma} (d={dv.label()}): {len(members)} minimal representatives")
    return members


def interval_poincare(sigma: Permutation, dv: DimensionVector, threads: Optional[int] = None) -> PoincarePolynomial:
    members = interval_members(sigma, dv, threads)
    coeffs = [0] * (length(sigma) + 1)
    for tau in members:
        coeffs[length(tau)] += 1
    return PoincarePolynomial(tuple(coeffs))


def genocchi_numbers(max_n: int, threads: Optional[int] = None) -> List[int]:
    """h_1, ..., h_max_n as interval cardinalities below sigma_n"""
    if max_n < 1:
        raise ValueError(f"max_n must be positive, got {max_n}")
    get_bounds().check_genocchi(max_n)
    values = []
    for n in range(1, max_n + 1):
        h = interval_poincare(sigma_n(n), DimensionVector.complete(n), threads).evaluate(1)
        logger.info(f"h_{n} = {h}")
        values.append(h)
    return values


def iota_fixed_members(sigma: Permutation, dv: DimensionVector, threads: Optional[int] = None) -> List[Permutation]:
    if not dv.is_symplectic():
        raise ValueError(f"d=({dv.label()}) with n={dv.n} is not preserved by d -> 2m - d")
    if iota_perm(sigma, dv.n) != sigma:
        raise ValueError(f"{sigma} is not fixed by iota")
    return [tau for tau in interval_members(sigma, dv, threads) if iota_perm(tau, dv.n) == tau]


def iota_fixed_count(sigma: Permutation, dv: DimensionVector, threads: Optional[int] = None) -> int:
    return len(iota_fixed_members(sigma, dv, threads))


def subword_products(word: Sequence[int], size: int) -> Set[Permutation]:
    """Products of all subwords of word, an oracle for the interval below a reduced word's product"""
    products = {identity(size)}
    for k in word:
        s = simple_reflection(int(k), size)
        products |= {compose(x, s) for x in products}
    return products
