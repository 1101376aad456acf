"""
Permutations of Sym_2n in one-line notation.

Images are stored 1-based exactly as they are read and printed; the only
0-based view is `Permutation.zero_based()`, used where numpy indexing needs it.
Composition is right-to-left: compose(u, v)(i) = u(v(i)).
"""

import logging
from typing import List, Optional, Sequence, Tuple
from dataclasses import dataclass

logger = logging.getLogger(__name__)

MAX_SIZE = 64


@dataclass(frozen=True)
class Permutation:
    images: Tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        size = len(images)
        if size > MAX_SIZE:
            raise ValueError(f"Permutation size {size} exceeds {MAX_SIZE}")
        if sorted(images) != list(range(1, size + 1)):
            raise ValueError(f"{list(images)} is not a permutation of 1..{size}")
        object.__setattr__(self, 'images', images)

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, r: int) -> int:
        return self.images[r - 1]

    def __len__(self) -> int:
        return len(self.images)

    def zero_based(self) -> Tuple[int, ...]:
        return tuple(x - 1 for x in self.images)

    def to_json(self) -> List[int]:
        return list(self.images)

    def __str__(self) -> str:
        return " ".join(str(x) for x in self.images)


@dataclass(frozen=True)
class DimensionVector:
    """Strictly increasing d = (d_1 < ... < d_s) with 1 <= d_i <= n."""
    n: int
    d: Tuple[int, ...]

    def __post_init__(self):
        d = tuple(int(x) for x in self.d)
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        if not d:
            raise ValueError("dimension vector must be non-empty")
        if any(b <= a for a, b in zip(d, d[1:])):
            raise ValueError(f"dimension vector {d} is not strictly increasing")
        if d[0] < 1 or d[-1] > self.n:
            raise ValueError(f"dimension vector {d} must lie in [1, {self.n}]")
        object.__setattr__(self, 'd', d)

    @classmethod
    def complete(cls, n: int) -> "DimensionVector":
        return cls(n, tuple(range(1, n + 1)))

    @property
    def s(self) -> int:
        return len(self.d)

    @property
    def size(self) -> int:
        return 2 * self.n

    @property
    def is_complete(self) -> bool:
        return self.d == tuple(range(1, self.n + 1))

    def padded(self) -> Tuple[int, ...]:
        """d with the conventions d_0 = 0 and d_{s+1} = n + 1"""
        return (0,) + self.d + (self.n + 1,)

    @property
    def flag_dims(self) -> Tuple[int, ...]:
        """Dimensions 2 d_i - 1 of the flag components in W"""
        return tuple(2 * x - 1 for x in self.d)

    @property
    def K(self) -> Tuple[int, ...]:
        cuts = set(self.flag_dims)
        return tuple(k for k in range(1, 2 * self.n) if k not in cuts)

    @property
    def J(self) -> Tuple[Tuple[int, int], ...]:
        return tuple((k, k + 1) for k in self.K)

    def is_symplectic(self) -> bool:
        """n = 2m - 1 and d is preserved by d_i -> 2m - d_i"""
        if self.n % 2 == 0:
            return False
        two_m = self.n + 1
        return set(two_m - x for x in self.d) == set(self.d)

    def label(self) -> str:
        return ",".join(str(x) for x in self.d)


def identity(size: int) -> Permutation:
    return Permutation(tuple(range(1, size + 1)))


def simple_reflection(k: int, size: int) -> Permutation:
    if not 1 <= k <= size - 1:
        raise ValueError(f"simple reflection index {k} out of range [1, {size - 1}]")
    images = list(range(1, size + 1))
    images[k - 1], images[k] = images[k], images[k - 1]
    return Permutation(tuple(images))


def sigma_n(n: int) -> Permutation:
    if n < 1:
        raise ValueError(f"sigma_n needs n >= 1, got {n}")
    images = []
    for r in range(1, 2 * n + 1):
        k = r // 2
        images.append(k if r % 2 == 0 else n + 1 + k)
    return Permutation(tuple(images))


def sigma_d(dv: DimensionVector) -> Permutation:
    """Minimal length representative of the coset sigma_n W_J"""
    n = dv.n
    pd = dv.padded()
    images = [0] * (2 * n)
    for i in range(len(pd) - 1):
        lo, hi = pd[i], pd[i + 1]
        for k in range(2 * lo, lo + hi):
            if 1 <= k <= 2 * n:
                images[k - 1] = k - lo
        for k in range(lo + hi, 2 * hi):
            if 1 <= k <= 2 * n:
                images[k - 1] = n + 1 + k - hi
    return Permutation(tuple(images))


def _check_same_size(u: Permutation, v: Permutation):
    if u.size != v.size:
        raise ValueError(f"size mismatch: {u.size} != {v.size}")


def compose(u: Permutation, v: Permutation) -> Permutation:
    _check_same_size(u, v)
    return Permutation(tuple(u.images[x - 1] for x in v.images))


def inverse(u: Permutation) -> Permutation:
    images = [0] * u.size
    for r, x in enumerate(u.images, start=1):
        images[x - 1] = r
    return Permutation(tuple(images))


def iota_perm(tau: Permutation, n: int) -> Permutation:
    size = 2 * n
    if tau.size != size:
        raise ValueError(f"size mismatch: permutation of {tau.size} letters, expected {size}")
    return Permutation(tuple(size + 1 - tau(size + 1 - r) for r in range(1, size + 1)))


def length(tau: Permutation) -> int:
    images = tau.images
    return sum(1 for i in range(len(images)) for j in range(i + 1, len(images)) if images[i] > images[j])


def descents(tau: Permutation) -> Tuple[int, ...]:
    return tuple(k for k in range(1, tau.size) if tau(k) > tau(k + 1))


def is_minimal_rep(tau: Permutation, dv: DimensionVector) -> bool:
    if tau.size != dv.size:
        raise ValueError(f"size mismatch: permutation of {tau.size} letters, expected {dv.size}")
    return all(tau(k) < tau(k + 1) for k in dv.K)


def minimal_rep(tau: Permutation, dv: DimensionVector) -> Permutation:
    """Sort the values of tau inside each W_J block"""
    if tau.size != dv.size:
        raise ValueError(f"size mismatch: permutation of {tau.size} letters, expected {dv.size}")
    images = list(tau.images)
    starts = (0,) + dv.flag_dims
    ends = dv.flag_dims + (dv.size,)
    for a, b in zip(starts, ends):
        images[a:b] = sorted(images[a:b])
    return Permutation(tuple(images))


def word_to_perm(word: Sequence[int], size: int) -> Tuple[Permutation, bool]:
    result = identity(size)
    for k in word:
        result = compose(result, simple_reflection(int(k), size))
    return result, len(word) == length(result)


def parse_permutation(text: str) -> Permutation:
    """Accept '3 1 4 2', '3,1,4,2' or '[3,1,4,2]'"""
    cleaned = text.strip().strip('[]').replace(',', ' ')
    try:
        return Permutation(tuple(int(x) for x in cleaned.split()))
    except (TypeError, ValueError) as e:
        raise ValueError(f"cannot parse permutation from {text!r}: {e}")


def parse_dimension_vector(n: int, text: Optional[str]) -> DimensionVector:
    if not text:
        return DimensionVector.complete(n)
    try:
        d = tuple(int(x) for x in text.split(',') if x.strip())
    except ValueError:
        raise ValueError(f"cannot parse dimension vector from {text!r}")
    return DimensionVector(n, d)
