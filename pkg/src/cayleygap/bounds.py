"""Branching-rule lower bound on Cayley graph gaps, property (A), and the unit-gap check for prefix reversals."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.linalg

from .errors import CapExceededError, DegreeMismatchError, VerificationError
from .perms import (
    GroupAlgebraElement,
    Permutation,
    embed,
    is_symmetric,
    l1_norm,
    reversal_element,
)
from .spectra import (
    DEFAULT_DENSE_CAP,
    TIE_TOL,
    IrrepRow,
    cayley_gap_dense,
    cayley_gap_irrep,
    irrep_table,
    psi,
)
from .young import Partition, defining_rep_matrix

DEFAULT_IRREP_CAP = 8
DEFINING_MAX_DEFAULT = 12
GAP_TOL = 1e-7
PROPERTY_A_TOL = 1e-9


def hook(n: int) -> Partition:
    """The partition (n-1, 1)."""
    if n < 2:
        raise ValueError("(n-1,1) needs n >= 2")
    return (n - 1, 1)


@dataclass(frozen=True)
class Decomposition:
    """Pieces z_1, ..., z_n with z_k an element of S_k, summing (after embedding) to an element of S_n."""

    pieces: tuple[GroupAlgebraElement, ...]

    def __post_init__(self) -> None:
        for k, z in enumerate(self.pieces, start=1):
            if z.n != k:
                raise DegreeMismatchError(f"piece {k} has degree {z.n}")
            if not is_symmetric(z, tol=1e-12):
                raise ValueError(f"piece z_{k} is not symmetric")

    @property
    def n(self) -> int:
        return len(self.pieces)

    def partial_sum(self, k: int) -> GroupAlgebraElement:
        """w_k = z_1 + ... + z_k, as an element of S_k."""
        total = GroupAlgebraElement.zero(k)
        for z in self.pieces[:k]:
            total = total + embed(z, k)
        return total

    def total(self) -> GroupAlgebraElement:
        return self.partial_sum(self.n)


def default_decomposition(w: GroupAlgebraElement) -> Decomposition:
    """Split w by the largest point each term moves; the identity goes to z_1.

    A term whose largest moved point is k fixes k+1..n, so it is restricted to S_k.
    """
    if not is_symmetric(w, tol=1e-12):
        raise ValueError("group algebra element is not symmetric")
    buckets: list[dict[Permutation, float]] = [{} for _ in range(w.n)]
    for p, v in w.items():
        k = max(p.largest_moved_point(), 1)
        buckets[k - 1][Permutation(p.images[:k])] = v
    return Decomposition(tuple(GroupAlgebraElement(k, b) for k, b in enumerate(buckets, start=1)))


def branching_lower_bound(d: Decomposition) -> float:
    """min over k = 2..n of psi((k-1,1), w_k)."""
    if d.n < 2:
        raise ValueError("the branching bound needs n >= 2")
    return min(psi(hook(k), d.partial_sum(k)) for k in range(2, d.n + 1))


def gap_s2(w: GroupAlgebraElement) -> float:
    """Gap of a weighted Cayley graph on S_2: twice the weight of (1 2)."""
    if w.n != 2:
        raise DegreeMismatchError(f"expected an element of S_2, got degree {w.n}")
    return 2.0 * w.weight(Permutation((2, 1)))


def _gap(w: GroupAlgebraElement) -> float:
    if w.n == 2:
        return gap_s2(w)
    return cayley_gap_irrep(w, check_generation=False).gap


@dataclass(frozen=True)
class RecursionStep:
    n: int
    lhs: float
    rhs: float

    @property
    def holds(self) -> bool:
        return self.lhs >= self.rhs - GAP_TOL


def recursion_check(d: Decomposition, cap: int = DEFAULT_IRREP_CAP) -> list[RecursionStep]:
    """Evaluate gap(w_m) >= min(gap(w_{m-1}), psi((m-1,1), w_m)) for m = 3..n.

    Raises VerificationError if any level violates the inequality.
    """
    if d.n > cap:
        raise CapExceededError(f"recursion check on S_{d.n} exceeds the cap n <= {cap}")
    steps = []
    gaps = {2: _gap(d.partial_sum(2))} if d.n >= 2 else {}
    for m in range(3, d.n + 1):
        wm = d.partial_sum(m)
        gaps[m] = _gap(wm)
        rhs = min(gaps[m - 1], psi(hook(m), wm))
        steps.append(RecursionStep(m, gaps[m], rhs))
    bad = [s for s in steps if not s.holds]
    if bad:
        raise VerificationError(f"recursive gap inequality fails at n={bad[0].n}: {bad[0].lhs} < {bad[0].rhs}")
    return steps


def has_property_A(w: GroupAlgebraElement, tol: float = PROPERTY_A_TOL) -> tuple[bool, Partition]:
    """Whether lambda_max over nontrivial irreps is attained at (n-1,1).

    Also returns the nontrivial partition with the largest lambda_max (first in
    partition order on ties).
    """
    if w.n < 2:
        raise ValueError("property (A) needs n >= 2")
    return _property_A_from_table(irrep_table(w), w.n, tol)


def _property_A_from_table(table, n: int, tol: float) -> tuple[bool, Partition]:
    nontrivial = table[1:]
    top = max(row.lambda_max for row in nontrivial)
    worst = next(row for row in nontrivial if row.lambda_max >= top - TIE_TOL)
    ref = next(row.lambda_max for row in nontrivial if row.partition == hook(n))
    return top <= ref + tol, worst.partition


def psi_n11_via_defining(w: GroupAlgebraElement) -> float:
    """psi((n-1,1), w) from the n x n defining representation.

    The defining representation is [n] + [n-1,1], with [n] on the constant
    vectors, so [n-1,1] is D(w) restricted to the complement of the ones vector.
    """
    if w.n < 2:
        raise ValueError("psi((n-1,1), .) needs n >= 2")
    basis = scipy.linalg.null_space(np.ones((1, w.n)))
    block = basis.T @ defining_rep_matrix(w) @ basis
    return l1_norm(w) - float(np.linalg.eigvalsh((block + block.T) / 2)[-1])


@dataclass
class GapReport:
    n: int
    gap_irrep: float
    psi_n11: float
    lower_bound: float
    argmin_partition: Partition
    property_A: bool
    table: tuple[IrrepRow, ...]
    gap_dense: Optional[float] = None
    generates: bool = True
    recursion: list[RecursionStep] = field(default_factory=list)

    def failures(self, expected_gap: float = 1.0, tol: float = GAP_TOL) -> list[str]:
        """Checks of the unit-gap claim that this report fails."""
        out = []
        if not self.generates:
            out.append(f"n={self.n}: support does not generate S_n")
        for name, value in (("gap_irrep", self.gap_irrep), ("psi_n11", self.psi_n11), ("lower_bound", self.lower_bound)):
            if abs(value - expected_gap) > tol:
                out.append(f"n={self.n}: {name}={value!r}, expected {expected_gap}")
        if self.gap_dense is not None and abs(self.gap_dense - self.gap_irrep) > tol:
            out.append(f"n={self.n}: dense gap {self.gap_dense!r} disagrees with irrep gap {self.gap_irrep!r}")
        if not self.property_A:
            out.append(f"n={self.n}: property (A) fails")
        if self.lower_bound > self.gap_irrep + tol:
            out.append(f"n={self.n}: lower bound exceeds the gap")
        if self.gap_irrep > self.psi_n11 + tol:
            out.append(f"n={self.n}: gap exceeds psi((n-1,1))")
        return out


def gap_report(
    w: GroupAlgebraElement,
    use_dense_oracle: bool = False,
    dense_cap: int = DEFAULT_DENSE_CAP,
    with_recursion: bool = True,
) -> GapReport:
    result = cayley_gap_irrep(w)
    d = default_decomposition(w)
    prop, _ = _property_A_from_table(result.table, w.n, PROPERTY_A_TOL)
    psi_n11 = next(row.psi for row in result.table if row.partition == hook(w.n))
    gap_dense = None
    if use_dense_oracle and w.n <= dense_cap:
        gap_dense = cayley_gap_dense(w, cap=dense_cap)
    return GapReport(
        n=w.n,
        gap_irrep=result.gap,
        psi_n11=psi_n11,
        lower_bound=branching_lower_bound(d),
        argmin_partition=result.argmin,
        property_A=prop,
        table=result.table,
        gap_dense=gap_dense,
        generates=result.generates,
        recursion=recursion_check(d, cap=w.n) if with_recursion else [],
    )


def verify_unit_gap(
    n_max: int,
    use_dense_oracle: bool = True,
    irrep_cap: int = DEFAULT_IRREP_CAP,
    dense_cap: int = DEFAULT_DENSE_CAP,
    tol: float = GAP_TOL,
) -> list[GapReport]:
    """Reports for the prefix-reversal element at every n = 3..n_max.

    Raises VerificationError listing every failed check.
    """
    if n_max < 3:
        raise ValueError("the unit-gap claim starts at n = 3")
    if n_max > irrep_cap:
        raise CapExceededError(f"n_max={n_max} exceeds the irrep cap {irrep_cap}")
    reports = [gap_report(reversal_element(n), use_dense_oracle, dense_cap) for n in range(3, n_max + 1)]
    failures = [msg for r in reports for msg in r.failures(1.0, tol)]
    if failures:
        raise VerificationError("; ".join(failures))
    return reports


def top_defining_eigenvalues(w: GroupAlgebraElement, k: int = 3) -> list[float]:
    """The k largest eigenvalues of D(w), descending."""
    vals = np.linalg.eigvalsh(defining_rep_matrix(w))
    return [float(v) for v in vals[::-1][:k]]


def reversal_defining_checks(n_max: int = DEFINING_MAX_DEFAULT, tol: float = 1e-8) -> list[dict]:
    """For n = 3..n_max: psi((n-1,1)) via D_n equals 1, and D_n(w_n) has simple top eigenvalues n, n-1."""
    rows = []
    for n in range(3, n_max + 1):
        w = reversal_element(n)
        top = top_defining_eigenvalues(w, 3)
        value = psi_n11_via_defining(w)
        ok = (
            abs(value - 1.0) <= tol
            and math.isclose(top[0], n, abs_tol=tol)
            and math.isclose(top[1], n - 1, abs_tol=tol)
            and top[0] - top[1] > 1e-6
            and top[1] - top[2] > 1e-6
        )
        rows.append({"n": n, "psi_n11": value, "top_eigenvalues": top, "ok": ok})
    return rows
