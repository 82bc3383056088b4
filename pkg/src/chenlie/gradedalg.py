"""Degree-by-degree presentation of the infinitesimal Alexander invariant.

For ``E = L(y_1..y_n)/ideal(J)`` with J in degree two, ``B(E) = E'/E''`` is
the cokernel of

    S (x) (Lambda^3 + J)  --d3 + (id (x) incl)-->  S (x) Lambda^2

over ``S = Z[s_1..s_n]``, graded with ``deg Lambda^k = k`` and
``deg J = 2``.  The degree-d piece of that map is a finite integer matrix
(a :class:`GradedBlock`); its cokernel has rank theta_d and the torsion read
off from its Smith form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Sequence

from .holonomy import QuadraticPresentation, wedge_pairs
from .intlinalg import (
    check_size,
    invariant_factors,
    is_prime,
    prime_factors,
    rank_mod_p,
    rank_q,
)
from .words import GroupPresentation, epsilon_matrix

DEFAULT_KMAX = 8
DEFAULT_CAP = 200_000
DEFAULT_PRIMES = (2, 3, 5)
INTERPRETATION_FLAG = "requires 1-formality"


@lru_cache(maxsize=None)
def monomials(n: int, d: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of degree-d monomials in n variables, lex-descending."""
    if d < 0:
        return ()
    if n == 0:
        return ((),) if d == 0 else ()
    out = []
    for a in range(d, -1, -1):
        for rest in monomials(n - 1, d - a):
            out.append((a,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(n: int, d: int) -> dict[tuple[int, ...], int]:
    return {m: k for k, m in enumerate(monomials(n, d))}


def _times_var(mono: tuple[int, ...], i: int) -> tuple[int, ...]:
    m = list(mono)
    m[i] += 1
    return tuple(m)


@dataclass(frozen=True)
class GradedBlock:
    """Degree-d component of the presentation map, stored by columns."""

    n: int
    degree: int
    row_labels: tuple
    col_labels: tuple
    columns: tuple  # tuple of {row: value}

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_labels), len(self.col_labels)

    def to_dense(self) -> list[list[int]]:
        rows, cols = self.shape
        out = [[0] * cols for _ in range(rows)]
        for c, col in enumerate(self.columns):
            for r, x in col.items():
                out[r][c] = x
        return out


def _row_labels(n: int, d: int) -> tuple:
    return tuple((u, p) for u in monomials(n, d - 2) for p in wedge_pairs(n))


def koszul_d3_block(n: int, d: int) -> list[dict[int, int]]:
    """Columns of d3 from S_{d-3} (x) Lambda^3 into S_{d-2} (x) Lambda^2.

    d3(y_i^y_j^y_k) = s_i (y_j^y_k) - s_j (y_i^y_k) + s_k (y_i^y_j).
    """
    if d < 3:
        return []
    npairs = n * (n - 1) // 2
    pidx = {p: k for k, p in enumerate(wedge_pairs(n))}
    target = monomial_index(n, d - 2)
    cols = []
    for u in monomials(n, d - 3):
        for i, j, k in combinations(range(1, n + 1), 3):
            col = {
                target[_times_var(u, i - 1)] * npairs + pidx[(j, k)]: 1,
                target[_times_var(u, j - 1)] * npairs + pidx[(i, k)]: -1,
                target[_times_var(u, k - 1)] * npairs + pidx[(i, j)]: 1,
            }
            cols.append(col)
    return cols


def relation_block(q: QuadraticPresentation, d: int) -> list[dict[int, int]]:
    """Columns of id (x) incl from S_{d-2} (x) J into S_{d-2} (x) Lambda^2."""
    if d < 2:
        raise ValueError("relation block needs d >= 2")
    npairs = q.n * (q.n - 1) // 2
    rels = q.sparse_relations()
    cols = []
    for ui in range(len(monomials(q.n, d - 2))):
        base = ui * npairs
        for rel in rels:
            cols.append({base + k: c for k, c in rel.items()})
    return cols


def graded_block(q: QuadraticPresentation, d: int) -> GradedBlock:
    n = q.n
    col_labels = tuple(
        [("triple", u, t) for u in monomials(n, d - 3) for t in combinations(range(1, n + 1), 3)]
        if d >= 3 else []
    ) + tuple(("relation", u, k) for u in monomials(n, d - 2) for k in range(q.m))
    cols = koszul_d3_block(n, d) + relation_block(q, d)
    return GradedBlock(n, d, _row_labels(n, d), col_labels, tuple(cols))


def block_shape(n: int, m: int, d: int) -> tuple[int, int]:
    rows = comb(n + d - 3, d - 2) * comb(n, 2)
    cols = (comb(n + d - 4, d - 3) * comb(n, 3) if d >= 3 else 0) + comb(n + d - 3, d - 2) * m
    return rows, cols


@dataclass(frozen=True)
class DegreeReport:
    """One degree of B(E).

    ``rank_q`` and ``rank_fp`` are dimensions of ``B_d (x) Q`` and
    ``B_d (x) F_p``; the matrix ranks they come from are kept alongside.
    ``elementary_divisors`` is None when torsion was not requested.
    """

    degree: int
    rows: int
    cols: int
    matrix_rank_q: int
    matrix_rank_fp: dict
    elementary_divisors: tuple | None

    @property
    def free_rank(self) -> int:
        return self.rows - self.matrix_rank_q

    @property
    def rank_q(self) -> int:
        return self.free_rank

    @property
    def rank_fp(self) -> dict:
        return {p: self.rows - r for p, r in self.matrix_rank_fp.items()}

    def check_consistency(self) -> None:
        for p, r in self.matrix_rank_fp.items():
            if r > self.matrix_rank_q:
                raise AssertionError(f"degree {self.degree}: F_{p} rank exceeds Q rank")
            if self.elementary_divisors is not None:
                k = sum(1 for x in self.elementary_divisors if x % p == 0)
                if self.matrix_rank_q - r != k:
                    raise AssertionError(
                        f"degree {self.degree}: rank drop mod {p} is {self.matrix_rank_q - r}, "
                        f"but {k} divisors are divisible by {p}"
                    )


def degree_report(
    q: QuadraticPresentation,
    d: int,
    primes: Sequence[int] = DEFAULT_PRIMES,
    torsion: bool = True,
    cap: int | None = DEFAULT_CAP,
) -> DegreeReport:
    if d < 2:
        raise ValueError("degree must be at least 2")
    for p in primes:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
    rows, _ = block_shape(q.n, q.m, d)
    cols = koszul_d3_block(q.n, d) + relation_block(q, d)
    check_size(cols, cap)
    rq = rank_q(cols)
    rfp = {p: rank_mod_p(cols, p) for p in sorted(set(primes))}
    divisors = None
    if torsion:
        rank_z, divs = invariant_factors(cols)
        if rank_z != rq:
            raise AssertionError(f"degree {d}: Smith rank {rank_z} != rational rank {rq}")
        divisors = tuple(divs)
    report = DegreeReport(d, rows, len(cols), rq, rfp, divisors)
    report.check_consistency()
    return report


@dataclass(frozen=True)
class ChenTable:
    n: int
    kmax: int
    reports: tuple
    primes: tuple
    flags: dict = field(default_factory=lambda: {"interpretation": INTERPRETATION_FLAG})

    @property
    def theta(self) -> list[int]:
        return [self.n] + [r.free_rank for r in self.reports]

    def b_series(self) -> list[int]:
        """Coefficients of t^0..t^kmax of Hilb(B (x) Q)."""
        out = [0] * (self.kmax + 1)
        for r in self.reports:
            out[r.degree] = r.rank_q
        return out

    def check_bookkeeping(self) -> None:
        # Hilb(E/E'') = Hilb(E'/E'') + Hilb(E/E') with E/E' = Z^n in degree 1.
        total = self.b_series()
        total[1] += self.n
        if total[1:] != self.theta:
            raise AssertionError("theta series does not split as n*t + Hilb(B)")

    def torsion(self) -> dict[int, tuple]:
        return {r.degree: r.elementary_divisors for r in self.reports}


def default_primes(q: QuadraticPresentation, extra: Sequence[int] = ()) -> tuple[int, ...]:
    ps = set(DEFAULT_PRIMES) | set(extra)
    for x in q.integers():
        ps.update(prime_factors(x))
    return tuple(sorted(ps))


def chen_table(
    q: QuadraticPresentation,
    kmax: int = DEFAULT_KMAX,
    primes: Sequence[int] | None = None,
    torsion: bool = True,
    cap: int | None = DEFAULT_CAP,
) -> ChenTable:
    if kmax < 2:
        raise ValueError("kmax must be at least 2")
    primes = default_primes(q) if primes is None else tuple(sorted(set(primes)))
    reports = tuple(degree_report(q, d, primes, torsion, cap) for d in range(2, kmax + 1))
    table = ChenTable(q.n, kmax, reports, primes)
    table.check_bookkeeping()
    return table


def torsion_primes(
    q: QuadraticPresentation, kmax: int = DEFAULT_KMAX, cap: int | None = DEFAULT_CAP
) -> set[int]:
    """Primes dividing some elementary divisor of B in degrees 2..kmax."""
    if kmax < 2:
        raise ValueError("kmax must be at least 2")
    out: set[int] = set()
    for d in range(2, kmax + 1):
        rep = degree_report(q, d, (), True, cap)
        for x in rep.elementary_divisors:
            out.update(prime_factors(x))
    return out


def linearized_matrix_columns(p: GroupPresentation, d: int) -> list[dict[int, int]]:
    """Degree-d piece of D^(1): S_{d-2}^m -> S_{d-1}^n, by columns.

    Target coordinate ``mono_index * n + (j - 1)`` is the monomial times the
    j-th generator of S^n.
    """
    n = p.n
    eps = epsilon_matrix(p)
    src = monomials(n, d - 2)
    target = monomial_index(n, d - 1)
    cols = []
    for u in src:
        for entries in eps:
            col: dict[int, int] = {}
            for (i, j), e in entries.items():
                # entry (k, j) has s_i coefficient eps_ij, entry (k, i) has s_j coefficient -eps_ij
                a = target[_times_var(u, i - 1)] * n + (j - 1)
                col[a] = col.get(a, 0) + e
                b = target[_times_var(u, j - 1)] * n + (i - 1)
                col[b] = col.get(b, 0) - e
            cols.append({k: v for k, v in col.items() if v})
    return cols


def linearized_B_dims(p: GroupPresentation, d: int, characteristic: int = 0) -> int:
    """dim of the degree-d piece of coker(D^(1)) minus dim S_d.

    ``characteristic`` 0 means Q, otherwise a prime p.
    """
    if d < 2:
        raise ValueError("degree must be at least 2")
    n = p.n
    cols = linearized_matrix_columns(p, d)
    if characteristic == 0:
        r = rank_q(cols)
    else:
        r = rank_mod_p(cols, characteristic)
    dim_a = n * comb(n + d - 2, d - 1) - r
    return dim_a - comb(n + d - 1, d)
