"""Laplacian spectra of weighted Cayley graphs on S_n and of the (n-2,2) Schreier graph.

Two independent routes compute the Cayley spectrum: a dense n! x n! Laplacian
built from the left regular action, and the decomposition over irreducible
representations, where [alpha] contributes dimension(alpha) copies of the
spectrum of |w| I - T^alpha(w).
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from .errors import CapExceededError, DegreeMismatchError
from .perms import (
    GeneratingSet,
    GroupAlgebraElement,
    Permutation,
    enumerate_group,
    generates_symmetric_group,
    is_symmetric,
    l1_norm,
)
from .young import Partition, build_orthogonal_rep, check_partition, dimension, partitions_of, rep_apply

DEFAULT_DENSE_CAP = 7
SYMMETRY_TOL = 1e-8
SPECTRUM_TOL = 1e-7
INTEGER_TOL = 1e-6
TIE_TOL = 1e-9


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues with multiplicity, plus the slack used to compare them."""

    values: tuple[float, ...]
    tolerance: float = SPECTRUM_TOL
    method: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(sorted(float(v) for v in self.values)))

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values)

    @property
    def gap(self) -> float:
        """Second-smallest value (the spectral gap of a Laplacian spectrum)."""
        if len(self.values) < 2:
            raise ValueError("a spectrum needs at least two values to have a gap")
        return self.values[1]

    def multiplicity(self, x: float) -> int:
        return sum(1 for v in self.values if abs(v - x) <= self.tolerance)

    def distinct(self) -> list[float]:
        """Cluster representatives: values closer than the tolerance are merged."""
        out: list[float] = []
        for v in self.values:
            if not out or v - out[-1] > self.tolerance:
                out.append(v)
        return out

    def multiset_equal(self, other: Spectrum, tol: float | None = None) -> bool:
        tol = max(self.tolerance, other.tolerance) if tol is None else tol
        return len(self) == len(other) and bool(np.all(np.abs(self.as_array() - other.as_array()) <= tol))


def sym_eigenvalues(m: np.ndarray, tolerance: float = SPECTRUM_TOL, method: str = "") -> Spectrum:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if m.size and np.max(np.abs(m - m.T)) > SYMMETRY_TOL:
        raise ValueError("matrix is not symmetric")
    vals = np.linalg.eigvalsh((m + m.T) / 2) if m.size else np.empty(0)
    return Spectrum(tuple(vals), tolerance, method)


def lambda_max(m: np.ndarray) -> float:
    return sym_eigenvalues(m).values[-1]


def psi(alpha: Partition, w: GroupAlgebraElement) -> float:
    """|w| - lambda_max(T^alpha(w)); nonnegative for nonnegative w."""
    alpha = check_partition(alpha)
    if sum(alpha) != w.n:
        raise DegreeMismatchError(f"partition of {sum(alpha)} paired with an element of S_{w.n}")
    return l1_norm(w) - lambda_max(rep_apply(build_orthogonal_rep(alpha), w))


class IrrepRow(NamedTuple):
    partition: Partition
    lambda_max: float
    psi: float


class IrrepGap(NamedTuple):
    gap: float
    argmin: Partition
    table: tuple[IrrepRow, ...]
    generates: bool


def irrep_table(w: GroupAlgebraElement) -> tuple[IrrepRow, ...]:
    """(alpha, lambda_max(T^alpha(w)), psi) for every alpha of n, in partition order."""
    norm = l1_norm(w)
    rows = []
    for alpha in partitions_of(w.n):
        lm = lambda_max(rep_apply(build_orthogonal_rep(alpha), w))
        rows.append(IrrepRow(alpha, lm, norm - lm))
    return tuple(rows)


def cayley_gap_irrep(w: GroupAlgebraElement, check_generation: bool = True) -> IrrepGap:
    """Spectral gap of X(S_n, w) as the minimum of psi over nontrivial irreps.

    Ties (within ``TIE_TOL``) go to the partition listed first.  If the
    support does not generate S_n the formula value is still returned, with a
    warning and ``generates=False``; the true gap is then 0.
    """
    if w.n < 2:
        raise ValueError("S_1 has no nontrivial representation, so no gap")
    table = irrep_table(w)
    gap = min(row.psi for row in table[1:])
    best = next(row for row in table[1:] if row.psi <= gap + TIE_TOL)
    generates = generates_symmetric_group(w, cap=None) if check_generation else True
    if not generates:
        warnings.warn(f"support does not generate S_{w.n}; the Cayley graph is disconnected", stacklevel=2)
    return IrrepGap(gap, best.partition, table, generates)


def _check_dense_cap(n: int, cap: int | None) -> None:
    if cap is not None and n > cap:
        raise CapExceededError(f"dense regular representation of S_{n} exceeds the cap n <= {cap}")


def cayley_laplacian_dense(w: GroupAlgebraElement, cap: int | None = DEFAULT_DENSE_CAP) -> np.ndarray:
    """|w| I - R(w) on the group elements in ``enumerate_group`` order.

    R(w) has entry (h', h) equal to the total weight of the g with g∘h = h'.
    """
    _check_dense_cap(w.n, cap)
    n = w.n
    group = np.array([p.images for p in enumerate_group(n, cap=None)], dtype=np.int64) - 1
    size = len(group)
    # base-n codes are increasing in lexicographic order, so searchsorted ranks them
    radix = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
    codes = group @ radix
    cols = np.arange(size)
    reg = np.zeros((size, size))
    for p, v in w.items():
        g = np.asarray(p.images, dtype=np.int64) - 1
        rows = np.searchsorted(codes, g[group] @ radix)
        np.add.at(reg, (rows, cols), v)
    return l1_norm(w) * np.eye(size) - reg


def dense_spectrum(w: GroupAlgebraElement, cap: int | None = DEFAULT_DENSE_CAP) -> Spectrum:
    return sym_eigenvalues(cayley_laplacian_dense(w, cap), method="dense")


def cayley_gap_dense(w: GroupAlgebraElement, cap: int | None = DEFAULT_DENSE_CAP) -> float:
    return dense_spectrum(w, cap).gap


def full_spectrum_irrep(w: GroupAlgebraElement) -> Spectrum:
    """Union over alpha of dimension(alpha) copies of spec(|w| I - T^alpha(w))."""
    if not is_symmetric(w, tol=1e-12):
        raise ValueError("group algebra element is not symmetric")
    norm = l1_norm(w)
    values: list[float] = []
    for alpha in partitions_of(w.n):
        block = sym_eigenvalues(rep_apply(build_orthogonal_rep(alpha), w)).values
        values.extend([norm - v for v in block] * dimension(alpha))
    return Spectrum(tuple(values), method="irrep")


Pair = tuple[int, int]


@dataclass(frozen=True)
class SchreierGraph:
    """Schreier graph of S_n on the cosets of the Young subgroup S_(n-2,2).

    The coset gH is labelled by the pair {g(n-1), g(n)}; ``actions[k]`` lists,
    for each vertex index, the index of its image under generator ``generators[k]``.
    """

    n: int
    vertices: tuple[Pair, ...]
    generators: tuple[Permutation, ...]
    weights: tuple[float, ...]
    actions: tuple[tuple[int, ...], ...]

    @property
    def total_weight(self) -> float:
        return math.fsum(self.weights)

    def adjacency(self) -> np.ndarray:
        size = len(self.vertices)
        a = np.zeros((size, size))
        cols = np.arange(size)
        for weight, action in zip(self.weights, self.actions):
            np.add.at(a, (np.asarray(action), cols), weight)
        return a

    def laplacian(self) -> np.ndarray:
        return self.total_weight * np.eye(len(self.vertices)) - self.adjacency()

    def edges(self) -> list[tuple[Pair, Pair, Permutation, float]]:
        return [
            (self.vertices[src], self.vertices[dst], z, weight)
            for z, weight, action in zip(self.generators, self.weights, self.actions)
            for src, dst in enumerate(action)
        ]


def schreier_graph_n22(gens: Union[GeneratingSet, GroupAlgebraElement]) -> SchreierGraph:
    """Build X(S_n, S_(n-2,2), Z); a group algebra element supplies per-generator weights."""
    if isinstance(gens, GeneratingSet):
        terms = [(z, 1.0) for z in gens.sorted()]
    else:
        terms = list(gens.items())
    n = gens.n
    if n < 3:
        raise ValueError("the (n-2,2) Schreier graph needs n >= 3")
    vertices = tuple(itertools.combinations(range(1, n + 1), 2))
    index = {v: k for k, v in enumerate(vertices)}
    actions = []
    for z, _ in terms:
        actions.append(tuple(index[tuple(sorted((z(i), z(j))))] for i, j in vertices))
    return SchreierGraph(
        n,
        vertices,
        tuple(z for z, _ in terms),
        tuple(v for _, v in terms),
        tuple(actions),
    )


def schreier_spectrum(g: SchreierGraph) -> Spectrum:
    return sym_eigenvalues(g.laplacian(), method="schreier")


def spectrum_subset(a: Spectrum, b: Spectrum, tol: float | None = None) -> bool:
    """Set containment: every value of a lies within tol of some value of b.

    Multiplicities are ignored.
    """
    tol = max(a.tolerance, b.tolerance) if tol is None else tol
    if not len(a):
        return True
    if not len(b):
        return False
    bvals = b.as_array()
    for x in a.values:
        k = np.searchsorted(bvals, x)
        near = [bvals[j] for j in (k - 1, k) if 0 <= j < len(bvals)]
        if min(abs(x - y) for y in near) > tol:
            return False
    return True


def integer_check(spec: Spectrum, n: int, tol: float = INTEGER_TOL) -> tuple[bool, list[int]]:
    """Whether every value is within tol of an integer in [0, n], and the sorted set of those integers."""
    rounded = [round(v) for v in spec.values]
    ok = all(abs(v - r) <= tol and 0 <= r <= n for v, r in zip(spec.values, rounded))
    return ok, sorted(set(rounded))
