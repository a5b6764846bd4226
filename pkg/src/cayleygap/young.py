"""Partitions, standard Young tableaux and Young's orthogonal form for S_n.

Partitions are plain tuples of positive nonincreasing ints.  Tableaux are
tuples of rows.  The irreducible representation indexed by a partition is
realized on the span of its standard tableaux, with each adjacent
transposition s_i = (i, i+1) acting through the axial distance between i and
i + 1.  The resulting matrices are real orthogonal, so T(w) is symmetric
whenever w is.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DegreeMismatchError
from .perms import GroupAlgebraElement, Permutation, is_symmetric

Partition = tuple[int, ...]
StandardTableau = tuple[tuple[int, ...], ...]

SYT_ENUM_MAX = 10


def check_partition(alpha) -> Partition:
    alpha = tuple(int(a) for a in alpha)
    if not alpha or any(a < 1 for a in alpha) or any(a < b for a, b in zip(alpha, alpha[1:])):
        raise ValueError(f"not a partition: {list(alpha)}")
    return alpha


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple[Partition, ...]:
    """All partitions of n in reverse lexicographic order, starting with (n,)."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")

    def parts(remaining: int, largest: int):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in parts(remaining - first, first):
                yield (first, *rest)

    return tuple(parts(n, n))


def branch_down(alpha: Partition) -> list[Partition]:
    """Partitions of n - 1 obtained by removing one corner box, top row first."""
    alpha = check_partition(alpha)
    if sum(alpha) < 2:
        raise ValueError("branching needs n >= 2")
    out = []
    for i, a in enumerate(alpha):
        below = alpha[i + 1] if i + 1 < len(alpha) else 0
        if a > below:
            beta = alpha[:i] + (a - 1,) + alpha[i + 1:]
            out.append(beta[:-1] if beta[-1] == 0 else beta)
    return out


def _removed_row(alpha: Partition, beta: Partition) -> int:
    for i, a in enumerate(alpha):
        if i >= len(beta) or beta[i] != a:
            return i
    raise ValueError(f"{beta} is not obtained from {alpha} by removing a box")


@lru_cache(maxsize=None)
def standard_tableaux(alpha: Partition) -> tuple[StandardTableau, ...]:
    """Standard tableaux of shape alpha in last-letter order.

    Tableaux are grouped by the row holding n (top row first), recursively,
    so the restriction to S_{n-1} is block diagonal in this basis.
    """
    alpha = check_partition(alpha)
    n = sum(alpha)
    if n == 1:
        return (((1,),),)
    out = []
    for beta in branch_down(alpha):
        row = _removed_row(alpha, beta)
        for t in standard_tableaux(beta):
            rows = [list(r) for r in t]
            if row == len(rows):
                rows.append([])
            rows[row].append(n)
            out.append(tuple(tuple(r) for r in rows))
    return tuple(out)


def is_standard(t: StandardTableau) -> bool:
    n = sum(len(r) for r in t)
    if sorted(v for r in t for v in r) != list(range(1, n + 1)):
        return False
    if any(len(a) < len(b) for a, b in zip(t, t[1:])):
        return False
    rows_ok = all(a < b for r in t for a, b in zip(r, r[1:]))
    cols_ok = all(t[i][j] < t[i + 1][j] for i in range(len(t) - 1) for j in range(len(t[i + 1])))
    return rows_ok and cols_ok


def hook_length_dimension(alpha: Partition) -> int:
    alpha = check_partition(alpha)
    conj = [sum(1 for a in alpha if a > j) for j in range(alpha[0])]
    hooks = 1
    for i, a in enumerate(alpha):
        for j in range(a):
            hooks *= (a - j - 1) + (conj[j] - i - 1) + 1
    return math.factorial(sum(alpha)) // hooks


def dimension(alpha: Partition) -> int:
    """Number of standard tableaux of shape alpha."""
    alpha = check_partition(alpha)
    if sum(alpha) <= SYT_ENUM_MAX:
        return len(standard_tableaux(alpha))
    return hook_length_dimension(alpha)


@dataclass(frozen=True, eq=False)
class OrthogonalRep:
    """Young's orthogonal form of the irreducible representation [shape]."""

    shape: Partition
    tableaux: tuple[StandardTableau, ...]
    generator_matrices: tuple[np.ndarray, ...]
    # sparse form of each generator: row r of T(s_i) @ M is diag[r]*M[r] + off[r]*M[partner[r]]
    _sparse: tuple[tuple[np.ndarray, np.ndarray, np.ndarray], ...] = field(repr=False)

    @property
    def n(self) -> int:
        return sum(self.shape)

    @property
    def dimension(self) -> int:
        return len(self.tableaux)

    def apply_generator(self, i: int, m: np.ndarray) -> np.ndarray:
        """T(s_i) @ m without forming the product densely."""
        diag, partner, off = self._sparse[i - 1]
        return diag[:, None] * m + off[:, None] * m[partner]

    def matrix(self, p: Permutation) -> np.ndarray:
        return rep_matrix(self, p)

    def apply(self, w: GroupAlgebraElement) -> np.ndarray:
        return rep_apply(self, w)


def _positions(t: StandardTableau) -> dict[int, tuple[int, int]]:
    return {v: (r, c) for r, row in enumerate(t) for c, v in enumerate(row)}


@lru_cache(maxsize=None)
def build_orthogonal_rep(alpha: Partition) -> OrthogonalRep:
    alpha = check_partition(alpha)
    n = sum(alpha)
    tabs = standard_tableaux(alpha)
    index = {t: k for k, t in enumerate(tabs)}
    pos = [_positions(t) for t in tabs]
    d = len(tabs)
    dense, sparse = [], []
    for i in range(1, n):
        diag = np.empty(d)
        off = np.zeros(d)
        partner = np.arange(d)
        for k, t in enumerate(tabs):
            (r1, c1), (r2, c2) = pos[k][i], pos[k][i + 1]
            rho = (c2 - r2) - (c1 - r1)
            diag[k] = 1.0 / rho
            if abs(rho) > 1:
                swapped = tuple(tuple(i + 1 if v == i else i if v == i + 1 else v for v in row) for row in t)
                partner[k] = index[swapped]
                off[k] = math.sqrt(1.0 - 1.0 / rho**2)
        m = np.diag(diag)
        m[np.arange(d), partner] += off
        dense.append(m)
        sparse.append((diag, partner, off))
    for m in dense:
        m.setflags(write=False)
    return OrthogonalRep(alpha, tabs, tuple(dense), tuple(sparse))


@lru_cache(maxsize=4096)
def adjacent_factorization(p: Permutation) -> tuple[int, ...]:
    """Indices a_1..a_k with p∘s_{a_1}∘...∘s_{a_k} = id, found by bubble sort.

    Equivalently p = s_{a_k}∘...∘s_{a_1}; the length is the inversion count.
    """
    images = list(p.images)
    steps = []
    swapped = True
    while swapped:
        swapped = False
        for i in range(len(images) - 1):
            if images[i] > images[i + 1]:
                images[i], images[i + 1] = images[i + 1], images[i]
                steps.append(i + 1)
                swapped = True
    return tuple(steps)


def rep_matrix(rep: OrthogonalRep, p: Permutation) -> np.ndarray:
    """The matrix T(p), built from an adjacent-transposition word for p."""
    if p.n != rep.n:
        raise DegreeMismatchError(f"permutation of degree {p.n} given to a representation of S_{rep.n}")
    m = np.eye(rep.dimension)
    for a in adjacent_factorization(p):
        m = rep.apply_generator(a, m)
    return m


def rep_apply(rep: OrthogonalRep, w: GroupAlgebraElement, check_symmetric: bool = True) -> np.ndarray:
    """T(w) = sum_g w_g T(g)."""
    if w.n != rep.n:
        raise DegreeMismatchError(f"element of degree {w.n} given to a representation of S_{rep.n}")
    if check_symmetric and not is_symmetric(w, tol=1e-12):
        raise ValueError("group algebra element is not symmetric")
    out = np.zeros((rep.dimension, rep.dimension))
    for p, v in w.items():
        out += v * rep_matrix(rep, p)
    return out


def defining_rep_matrix(w: GroupAlgebraElement, n: int | None = None) -> np.ndarray:
    """n x n matrix D(w) with entry (i, j) equal to the sum of w_g over g with g(j) = i."""
    if n is not None and n != w.n:
        raise DegreeMismatchError(f"element has degree {w.n}, not {n}")
    out = np.zeros((w.n, w.n))
    cols = np.arange(w.n)
    for p, v in w.items():
        out[np.asarray(p.images) - 1, cols] += v
    return out
