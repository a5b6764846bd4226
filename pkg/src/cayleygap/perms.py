"""Permutations of {1, ..., n} and nonnegative elements of the group algebra of S_n.

Points are labelled 1..n everywhere a caller can see them.  Composition is
right-to-left: ``compose(p, q)(i) == p(q(i))``.
"""

from __future__ import annotations

import itertools
import math
import numbers
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from functools import lru_cache
from types import MappingProxyType

from .errors import CapExceededError, DegreeMismatchError

DEFAULT_ENUM_CAP = 8


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of {1, ..., n}; ``images[i - 1]`` is the image of point ``i``."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(int(v) for v in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {list(self.images)}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, i: int, j: int, n: int) -> Permutation:
        images = list(range(1, n + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.images, start=1))

    def largest_moved_point(self) -> int:
        """Largest point not fixed by the permutation, or 0 for the identity."""
        for i in range(self.n, 0, -1):
            if self.images[i - 1] != i:
                return i
        return 0

    def to_json(self) -> list[int]:
        return list(self.images)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return p∘q, i.e. the map i -> p(q(i))."""
    if p.n != q.n:
        raise DegreeMismatchError(f"cannot compose degrees {p.n} and {q.n}")
    return Permutation(tuple(p.images[j - 1] for j in q.images))


def inverse(p: Permutation) -> Permutation:
    images = [0] * p.n
    for i, v in enumerate(p.images, start=1):
        images[v - 1] = i
    return Permutation(tuple(images))


def initial_reversal(k: int, n: int) -> Permutation:
    """The prefix reversal r_k of S_n: 1..k -> k..1, every point above k fixed."""
    if not 1 <= k <= n:
        raise ValueError(f"reversal length k={k} outside 1..{n}")
    return Permutation(tuple(range(k, 0, -1)) + tuple(range(k + 1, n + 1)))


def extend(p: Permutation, n: int) -> Permutation:
    """View p in S_m as an element of S_n fixing m+1..n."""
    if p.n > n:
        raise DegreeMismatchError(f"cannot embed degree {p.n} into degree {n}")
    return Permutation(p.images + tuple(range(p.n + 1, n + 1)))


def enumerate_group(n: int, cap: int | None = DEFAULT_ENUM_CAP) -> list[Permutation]:
    """All n! permutations of degree n in lexicographic order of their images.

    Pass ``cap=None`` to lift the size guard.
    """
    if cap is not None and n > cap:
        raise CapExceededError(f"enumerating S_{n} exceeds the cap n <= {cap}")
    return [Permutation(t) for t in itertools.permutations(range(1, n + 1))]


def _check_weight(value) -> float:
    if isinstance(value, complex) or not isinstance(value, numbers.Real):
        raise TypeError(f"weights must be real numbers, got {value!r}")
    value = float(value)
    if math.isnan(value) or math.isinf(value) or value < 0:
        raise ValueError(f"weights must be finite and nonnegative, got {value}")
    return value


@dataclass(frozen=True)
class GroupAlgebraElement:
    """A finitely supported nonnegative weighting w = sum_g w_g g of S_n.

    Zero weights are dropped, so ``support`` lists exactly the permutations
    carrying positive weight.
    """

    n: int
    weights: Mapping[Permutation, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"degree must be positive, got {self.n}")
        clean: dict[Permutation, float] = {}
        for perm, value in self.weights.items():
            if not isinstance(perm, Permutation):
                perm = Permutation(tuple(perm))
            if perm.n != self.n:
                raise DegreeMismatchError(f"term {perm} does not have degree {self.n}")
            value = _check_weight(value)
            if value > 0:
                clean[perm] = clean.get(perm, 0.0) + value
        ordered = dict(sorted(clean.items()))
        object.__setattr__(self, "weights", MappingProxyType(ordered))

    @classmethod
    def zero(cls, n: int) -> GroupAlgebraElement:
        return cls(n, {})

    @classmethod
    def from_generators(cls, gens: Iterable[Permutation], weight: float = 1.0) -> GroupAlgebraElement:
        gens = list(gens)
        if not gens:
            raise ValueError("need at least one generator to infer the degree")
        return cls(gens[0].n, {g: weight for g in gens})

    def weight(self, p: Permutation) -> float:
        return self.weights.get(p, 0.0)

    @property
    def support(self) -> list[Permutation]:
        return list(self.weights)

    def items(self) -> Iterator[tuple[Permutation, float]]:
        return iter(self.weights.items())

    def __add__(self, other: GroupAlgebraElement) -> GroupAlgebraElement:
        if self.n != other.n:
            raise DegreeMismatchError(f"cannot add degrees {self.n} and {other.n}")
        total = dict(self.weights)
        for p, v in other.items():
            total[p] = total.get(p, 0.0) + v
        return GroupAlgebraElement(self.n, total)

    def __len__(self) -> int:
        return len(self.weights)


@dataclass(frozen=True)
class GeneratingSet:
    """A set of permutations closed under inversion."""

    n: int
    elements: frozenset[Permutation]

    def __post_init__(self) -> None:
        elements = frozenset(self.elements)
        if any(z.n != self.n for z in elements):
            raise DegreeMismatchError(f"all generators must have degree {self.n}")
        missing = [z for z in elements if inverse(z) not in elements]
        if missing:
            raise ValueError(f"generating set is not closed under inversion: {missing[0]} lacks its inverse")
        object.__setattr__(self, "elements", elements)

    @classmethod
    def reversals(cls, n: int) -> GeneratingSet:
        return cls(n, frozenset(initial_reversal(k, n) for k in range(1, n + 1)))

    def sorted(self) -> list[Permutation]:
        return sorted(self.elements)

    def element(self, weight: float = 1.0) -> GroupAlgebraElement:
        return GroupAlgebraElement(self.n, {z: weight for z in self.elements})


def reversal_element(n: int) -> GroupAlgebraElement:
    """The sum r_1 + ... + r_n of all initial reversals (r_1 is the identity)."""
    if n < 1:
        raise ValueError(f"degree must be positive, got {n}")
    return GroupAlgebraElement(n, {initial_reversal(k, n): 1.0 for k in range(1, n + 1)})


def adjacent_transpositions_element(n: int) -> GroupAlgebraElement:
    return GroupAlgebraElement(n, {Permutation.transposition(i, i + 1, n): 1.0 for i in range(1, n)})


def all_transpositions_element(n: int) -> GroupAlgebraElement:
    return GroupAlgebraElement(
        n, {Permutation.transposition(i, j, n): 1.0 for i, j in itertools.combinations(range(1, n + 1), 2)}
    )


def star_transpositions_element(n: int) -> GroupAlgebraElement:
    return GroupAlgebraElement(n, {Permutation.transposition(1, j, n): 1.0 for j in range(2, n + 1)})


def random_symmetric_element(n: int, rng, terms: int = 4) -> GroupAlgebraElement:
    """Random weights in (0, 1] on ``terms`` random permutations, each paired with its inverse."""
    weights: dict[Permutation, float] = {}
    for _ in range(terms):
        p = Permutation(tuple(int(v) + 1 for v in rng.permutation(n)))
        v = float(1.0 - rng.random())
        weights[p] = weights[inverse(p)] = v
    return GroupAlgebraElement(n, weights)


def l1_norm(w: GroupAlgebraElement) -> float:
    return math.fsum(w.weights.values())


def is_symmetric(w: GroupAlgebraElement, tol: float = 0.0) -> bool:
    """True iff w_g == w_{g^-1} for every g (up to ``tol``)."""
    return all(abs(v - w.weight(inverse(p))) <= tol for p, v in w.items())


def embed(w: GroupAlgebraElement, n: int) -> GroupAlgebraElement:
    """Push w from S_m into S_n (m <= n) by letting every term fix m+1..n."""
    if w.n > n:
        raise DegreeMismatchError(f"cannot embed degree {w.n} into degree {n}")
    if w.n == n:
        return w
    return GroupAlgebraElement(n, {extend(p, n): v for p, v in w.items()})


def generates_symmetric_group(w: GroupAlgebraElement, cap: int | None = DEFAULT_ENUM_CAP) -> bool:
    """Whether the support of w generates all of S_n, by breadth-first closure."""
    return _closure_size(w.n, frozenset(p.images for p in w.support), cap) == math.factorial(w.n)


@lru_cache(maxsize=64)
def _closure_size(n: int, gens: frozenset[tuple[int, ...]], cap: int | None) -> int:
    if n <= 1:
        return 1
    # A generating set of S_n must act transitively; this is cheap and catches most failures.
    reach, frontier = {1}, [1]
    while frontier:
        i = frontier.pop()
        for g in gens:
            j = g[i - 1]
            if j not in reach:
                reach.add(j)
                frontier.append(j)
    if len(reach) < n:
        return 0
    if cap is not None and n > cap:
        raise CapExceededError(f"closure of a subset of S_{n} exceeds the cap n <= {cap}")
    ident = tuple(range(1, n + 1))
    seen = {ident}
    frontier = [ident]
    moves = [g for g in gens if g != ident]
    while frontier:
        nxt = []
        for h in frontier:
            for g in moves:
                gh = tuple(g[j - 1] for j in h)
                if gh not in seen:
                    seen.add(gh)
                    nxt.append(gh)
        frontier = nxt
    return len(seen)
