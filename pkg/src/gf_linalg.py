"""
Exact linear algebra over prime fields F_p.

Vectors are rows. A Subspace is stored by its reduced row-echelon basis, so two
subspaces are equal exactly when their canonical bases are equal. A linear map
is an (dim domain) x (dim codomain) matrix acting on row vectors: x -> x M.
"""

import itertools
import logging
from typing import Iterator, List, Optional, Sequence, Tuple
from dataclasses import dataclass

import numpy as np

from src.bounds import get_bounds

logger = logging.getLogger(__name__)

PRIMES = (2, 3, 5, 7, 11, 13)


def check_prime(p: int):
    if p not in PRIMES:
        raise ValueError(f"field characteristic must be one of {PRIMES}, got {p}")


@dataclass(frozen=True)
class PrimeFieldScalar:
    residue: int
    p: int

    def __post_init__(self):
        check_prime(self.p)
        object.__setattr__(self, 'residue', int(self.residue) % self.p)

    def __add__(self, other: "PrimeFieldScalar") -> "PrimeFieldScalar":
        return PrimeFieldScalar(self.residue + other.residue, self.p)

    def __mul__(self, other: "PrimeFieldScalar") -> "PrimeFieldScalar":
        return PrimeFieldScalar(self.residue * other.residue, self.p)

    def __neg__(self) -> "PrimeFieldScalar":
        return PrimeFieldScalar(-self.residue, self.p)

    def inverse(self) -> "PrimeFieldScalar":
        if self.residue == 0:
            raise ValueError("zero has no inverse")
        return PrimeFieldScalar(pow(self.residue, -1, self.p), self.p)


def _as_matrix(rows, ncols: int, p: int) -> np.ndarray:
    m = np.array(rows, dtype=np.int64)
    if m.size == 0:
        return np.zeros((0, ncols), dtype=np.int64)
    return m.reshape(-1, ncols) % p


def _rref_rows(matrix: np.ndarray, p: int) -> Tuple[np.ndarray, Tuple[int, ...]]:
    a = matrix.copy() % p
    nrows, ncols = a.shape
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pivot = r + int(nz[0])
        if pivot != r:
            a[[r, pivot], :] = a[[pivot, r], :]
        inv = pow(int(a[r, c]), -1, p)
        a[r, :] = (a[r, :] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            a[rows, :] = (a[rows, :] - np.outer(col[rows], a[r, :])) % p
        pivots.append(c)
        r += 1
    return a[:r], tuple(pivots)


def null_space(matrix: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of {x : matrix @ x = 0}"""
    ncols = matrix.shape[1]
    reduced, pivots = _rref_rows(matrix, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for r, c in enumerate(pivots):
            basis[t, c] = (-reduced[r, f]) % p
    return basis


class Subspace:
    """Row space of a matrix over F_p in canonical RREF."""

    __slots__ = ('p', 'ambient_dim', 'basis', 'pivots', '_key')

    def __init__(self, basis: np.ndarray, ambient_dim: int, p: int, pivots: Tuple[int, ...]):
        self.p = p
        self.ambient_dim = ambient_dim
        basis = basis.astype(np.uint8)
        basis.setflags(write=False)
        self.basis = basis
        self.pivots = pivots
        self._key = (p, ambient_dim, basis.shape[0], self.packed_rows())

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"Subspace(p={self.p}, ambient={self.ambient_dim}, rows={self.to_rows()})"

    def packed_rows(self) -> bytes:
        """Canonical bytes of the basis: one bit per entry at p=2, one byte per entry otherwise"""
        if self.p == 2:
            return np.packbits(self.basis, axis=1).tobytes()
        return self.basis.tobytes()

    def matrix(self) -> np.ndarray:
        return self.basis.astype(np.int64)

    def to_rows(self) -> List[List[int]]:
        return self.basis.astype(int).tolist()

    def to_json(self) -> dict:
        return {"p": self.p, "ambient_dim": self.ambient_dim, "basis": self.to_rows()}

    def is_coordinate(self) -> bool:
        return bool(np.all(np.count_nonzero(self.basis, axis=1) == 1))

    def coordinate_support(self) -> frozenset:
        """1-based basis indices of a coordinate subspace"""
        if not self.is_coordinate():
            raise ValueError("subspace is not a coordinate subspace")
        return frozenset(c + 1 for c in self.pivots)


def rref(matrix, ambient_dim: Optional[int] = None, p: int = 2) -> Subspace:
    check_prime(p)
    if ambient_dim is None:
        ambient_dim = np.asarray(matrix).shape[-1]
    m = _as_matrix(matrix, ambient_dim, p)
    reduced, pivots = _rref_rows(m, p)
    return Subspace(reduced, ambient_dim, p, pivots)


def zero_subspace(ambient_dim: int, p: int) -> Subspace:
    return rref(np.zeros((0, ambient_dim), dtype=np.int64), ambient_dim, p)


def full_space(ambient_dim: int, p: int) -> Subspace:
    return rref(np.eye(ambient_dim, dtype=np.int64), ambient_dim, p)


def coordinate_subspace(indices, ambient_dim: int, p: int) -> Subspace:
    """Span of the basis vectors with the given 1-based indices"""
    rows = np.zeros((len(indices), ambient_dim), dtype=np.int64)
    for t, k in enumerate(sorted(indices)):
        if not 1 <= k <= ambient_dim:
            raise ValueError(f"basis index {k} out of range [1, {ambient_dim}]")
        rows[t, k - 1] = 1
    return rref(rows, ambient_dim, p)


def standard_flag_space(t: int, ambient_dim: int, p: int) -> Subspace:
    """F_t = <e_1, ..., e_t>"""
    return coordinate_subspace(range(1, t + 1), ambient_dim, p)


def _check_compatible(u: Subspace, v: Subspace):
    if u.p != v.p or u.ambient_dim != v.ambient_dim:
        raise ValueError(f"dimension mismatch: F_{u.p}^{u.ambient_dim} vs F_{v.p}^{v.ambient_dim}")


def annihilator(u: Subspace) -> np.ndarray:
    return null_space(u.matrix(), u.p)


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    _check_compatible(u, v)
    return rref(np.vstack([u.matrix(), v.matrix()]), u.ambient_dim, u.p)


def intersect(u: Subspace, v: Subspace) -> Subspace:
    _check_compatible(u, v)
    constraints = np.vstack([annihilator(u), annihilator(v)])
    return rref(null_space(constraints, u.p), u.ambient_dim, u.p)


def contains(u: Subspace, v: Subspace) -> bool:
    """True iff v is a subspace of u"""
    _check_compatible(u, v)
    if v.dim == 0:
        return True
    ann = annihilator(u)
    if ann.shape[0] == 0:
        return True
    return not np.any((v.matrix() @ ann.T) % u.p)


def standard_intersection_dims(u: Subspace) -> Tuple[int, ...]:
    """dims of U cap <e_1, ..., e_k> for k = 0, ..., ambient_dim"""
    # echelon form from the right: each row's last nonzero coordinate is distinct
    reversed_basis = rref(u.matrix()[:, ::-1], u.ambient_dim, u.p)
    lasts = sorted(u.ambient_dim - c for c in reversed_basis.pivots)
    dims = []
    t = 0
    for k in range(u.ambient_dim + 1):
        while t < len(lasts) and lasts[t] <= k:
            t += 1
        dims.append(t)
    return tuple(dims)


def contains_vector(u: Subspace, x: Sequence[int]) -> bool:
    return contains(u, rref([list(x)], u.ambient_dim, u.p))


@dataclass(frozen=True)
class LinearMapMatrix:
    matrix: np.ndarray
    p: int

    @property
    def domain_dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def codomain_dim(self) -> int:
        return self.matrix.shape[1]

    def apply(self, x: Sequence[int]) -> np.ndarray:
        return (np.asarray(x, dtype=np.int64) @ self.matrix) % self.p

    def then(self, other: "LinearMapMatrix") -> "LinearMapMatrix":
        """other after self"""
        if self.codomain_dim != other.domain_dim:
            raise ValueError(f"cannot compose {self.codomain_dim}-dim codomain with {other.domain_dim}-dim domain")
        return LinearMapMatrix((self.matrix @ other.matrix) % self.p, self.p)

    def equals(self, other: "LinearMapMatrix") -> bool:
        return self.matrix.shape == other.matrix.shape and bool(np.all(self.matrix % self.p == other.matrix % other.p))


def linear_map(matrix, p: int) -> LinearMapMatrix:
    check_prime(p)
    m = np.array(matrix, dtype=np.int64) % p
    m.setflags(write=False)
    return LinearMapMatrix(m, p)


def image(f: LinearMapMatrix, u: Subspace) -> Subspace:
    if u.ambient_dim != f.domain_dim or u.p != f.p:
        raise ValueError(f"dimension mismatch: subspace of F_{u.p}^{u.ambient_dim}, map from F_{f.p}^{f.domain_dim}")
    return rref((u.matrix() @ f.matrix) % f.p, f.codomain_dim, f.p)


def preimage(f: LinearMapMatrix, z: Subspace) -> Subspace:
    if z.ambient_dim != f.codomain_dim or z.p != f.p:
        raise ValueError(f"dimension mismatch: subspace of F_{z.p}^{z.ambient_dim}, map into F_{f.p}^{f.codomain_dim}")
    ann = annihilator(z)
    constraints = (ann @ f.matrix.T) % f.p
    if constraints.shape[0] == 0:
        return full_space(f.domain_dim, f.p)
    return rref(null_space(constraints, f.p), f.domain_dim, f.p)


def kernel(f: LinearMapMatrix) -> Subspace:
    return preimage(f, zero_subspace(f.codomain_dim, f.p))


def embed(u: Subspace, ambient_dim: int) -> Subspace:
    """View a subspace of F^k as a subspace of F^ambient via the first k coordinates"""
    if ambient_dim < u.ambient_dim:
        raise ValueError(f"cannot embed F^{u.ambient_dim} into F^{ambient_dim}")
    padded = np.zeros((u.dim, ambient_dim), dtype=np.int64)
    padded[:, :u.ambient_dim] = u.matrix()
    return Subspace(padded, ambient_dim, u.p, u.pivots)


def restrict(u: Subspace, k: int) -> Subspace:
    """Inverse of embed for a subspace inside <e_1, ..., e_k>"""
    if u.dim and np.any(u.basis[:, k:]):
        raise ValueError(f"subspace is not contained in the first {k} coordinates")
    return Subspace(u.matrix()[:, :k], k, u.p, u.pivots)


def gaussian_binomial(m: int, k: int, q: int) -> int:
    if k < 0 or k > m:
        return 0
    num, den = 1, 1
    for i in range(k):
        num *= q ** (m - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def grassmannian(k: int, m: int, p: int) -> Iterator[Subspace]:
    """All k-dimensional subspaces of F_p^m, ordered by pivot set then free entries"""
    check_prime(p)
    if not 0 <= k <= m:
        raise ValueError(f"need 0 <= k <= m, got k={k}, m={m}")
    get_bounds().check_grassmannian(m, p)
    for pivots in itertools.combinations(range(m), k):
        pivot_set = set(pivots)
        free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, m) if c not in pivot_set]
        for values in itertools.product(range(p), repeat=len(free)):
            basis = np.zeros((k, m), dtype=np.int64)
            for r, pc in enumerate(pivots):
                basis[r, pc] = 1
            for (r, c), x in zip(free, values):
                basis[r, c] = x
            yield Subspace(basis, m, p, pivots)


def complement_basis(a: Subspace, b: Subspace) -> np.ndarray:
    """Rows of b's canonical basis whose pivots extend a to a basis of b"""
    _check_compatible(a, b)
    current = a
    chosen = []
    for row in b.matrix():
        extended = rref(np.vstack([current.matrix(), row[None, :]]), a.ambient_dim, a.p)
        if extended.dim > current.dim:
            chosen.append(row)
            current = extended
    return np.array(chosen, dtype=np.int64).reshape(-1, a.ambient_dim)


def subspaces_between(a: Subspace, b: Subspace, k: int) -> Iterator[Subspace]:
    """All k-dimensional X with a <= X <= b, enumerated through the quotient b/a"""
    _check_compatible(a, b)
    if not contains(b, a):
        return
    if not a.dim <= k <= b.dim:
        return
    c = complement_basis(a, b)
    base = a.matrix()
    for s in grassmannian(k - a.dim, c.shape[0], a.p):
        rows = np.vstack([base, (s.matrix() @ c) % a.p]) if s.dim else base
        yield rref(rows, a.ambient_dim, a.p)


def enumerate_partial_flags(dims: Sequence[int], ambient_dim: int, p: int) -> Iterator[Tuple[Subspace, ...]]:
    """Chains X_1 < ... < X_s in F_p^ambient with dim X_i = dims[i]"""
    full = full_space(ambient_dim, p)

    def extend(prefix: Tuple[Subspace, ...], lower: Subspace):
        level = len(prefix)
        if level == len(dims):
            yield prefix
            return
        for x in subspaces_between(lower, full, dims[level]):
            yield from extend(prefix + (x,), x)

    yield from extend((), zero_subspace(ambient_dim, p))


@dataclass(frozen=True)
class FormMatrix:
    matrix: np.ndarray
    p: int

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def pair(self, v: Sequence[int], w: Sequence[int]) -> int:
        return int(np.asarray(v, dtype=np.int64) @ self.matrix @ np.asarray(w, dtype=np.int64)) % self.p

    def is_skew(self) -> bool:
        return not np.any((self.matrix + self.matrix.T) % self.p)

    def is_alternating(self) -> bool:
        return self.is_skew() and not np.any(np.diag(self.matrix) % self.p)

    def is_nondegenerate(self) -> bool:
        return rref(self.matrix, self.dim, self.p).dim == self.dim


def form_matrix(matrix, p: int) -> FormMatrix:
    check_prime(p)
    m = np.array(matrix, dtype=np.int64) % p
    m.setflags(write=False)
    return FormMatrix(m, p)


def antidiagonal_signs(n: int, signs: str = "constant") -> List[int]:
    """Entries of the n x n antidiagonal block J, row by row"""
    if signs == "constant":
        return [1] * n
    if signs == "alternating":
        return [(-1) ** k for k in range(n)]
    raise ValueError(f"unknown sign convention {signs!r}")


def symplectic_form_E(n: int, p: int, signs: str = "constant") -> FormMatrix:
    """E = [[0, J], [-J^T, 0]] on F_p^{2n}; signs="constant" is J = antidiag(1, ..., 1)"""
    check_prime(p)
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    eps = antidiagonal_signs(n, signs)
    block = np.zeros((n, n), dtype=np.int64)
    for r in range(n):
        block[r, n - 1 - r] = eps[r]
    e = np.zeros((2 * n, 2 * n), dtype=np.int64)
    e[:n, n:] = block
    e[n:, :n] = -block.T
    form = form_matrix(e, p)
    if not form.is_alternating():
        raise ValueError("constructed form is not alternating")
    return form


def perp(u: Subspace, form: FormMatrix) -> Subspace:
    """{w : b(u, w) = 0 for all u in U}"""
    if form.dim != u.ambient_dim or form.p != u.p:
        raise ValueError(f"dimension mismatch: form on F_{form.p}^{form.dim}, subspace of F_{u.p}^{u.ambient_dim}")
    if not form.is_nondegenerate():
        raise ValueError("perp needs a nondegenerate form")
    if u.dim == 0:
        return full_space(u.ambient_dim, u.p)
    return rref(null_space((u.matrix() @ form.matrix) % u.p, u.p), u.ambient_dim, u.p)


@dataclass(frozen=True)
class TorusElement:
    entries: Tuple[int, ...]
    p: int

    def __post_init__(self):
        check_prime(self.p)
        entries = tuple(int(x) % self.p for x in self.entries)
        if any(x == 0 for x in entries):
            raise ValueError(f"torus element {entries} has a non-invertible entry")
        object.__setattr__(self, 'entries', entries)

    def __mul__(self, other: "TorusElement") -> "TorusElement":
        if len(self.entries) != len(other.entries):
            raise ValueError("torus elements of different rank")
        return TorusElement(tuple(a * b for a, b in zip(self.entries, other.entries)), self.p)

    def diagonal(self) -> np.ndarray:
        return np.diag(np.array(self.entries, dtype=np.int64))


def torus_act(lam: TorusElement, u: Subspace) -> Subspace:
    if len(lam.entries) != u.ambient_dim or lam.p != u.p:
        raise ValueError(f"torus of rank {len(lam.entries)} cannot act on F_{u.p}^{u.ambient_dim}")
    return rref((u.matrix() * np.array(lam.entries, dtype=np.int64)) % u.p, u.ambient_dim, u.p)


def all_torus_elements(rank: int, p: int) -> Iterator[TorusElement]:
    for entries in itertools.product(range(1, p), repeat=rank):
        yield TorusElement(entries, p)


def sample_torus_elements(rank: int, p: int, count: int, seed: int) -> List[TorusElement]:
    """Every element when there are at most `count`, otherwise a seeded sample"""
    total = (p - 1) ** rank
    if total <= count:
        return list(all_torus_elements(rank, p))
    rng = np.random.default_rng(seed)
    draws = rng.integers(1, p, size=(count, rank))
    return [TorusElement(tuple(int(x) for x in row), p) for row in draws]
