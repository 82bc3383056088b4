"""Exact linear algebra over Z, Q and F_p on sparse integer vectors.

Every routine here takes a list of *generators*: sparse vectors given as
``dict[int, int]`` (coordinate -> nonzero integer).  The generators span a
sublattice of Z^N; ``rank_q`` and ``rank_mod_p`` report the dimension of the
span over Q and F_p, and ``invariant_factors`` reports the torsion of the
cokernel Z^N / span.  Orientation does not matter for any of these, so a
presentation matrix can be fed in column-by-column.

Integers are Python ints throughout, so nothing overflows.
"""

from __future__ import annotations

import heapq
from math import gcd
from typing import Iterable, Mapping

Vector = dict[int, int]


class ResourceLimitError(RuntimeError):
    """Raised when a matrix exceeds the configured size cap."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def prime_factors(m: int) -> list[int]:
    """Distinct prime divisors of ``|m|`` in increasing order."""
    m = abs(m)
    out = []
    f = 2
    while f * f <= m:
        if m % f == 0:
            out.append(f)
            while m % f == 0:
                m //= f
        f += 1 if f == 2 else 2
    if m > 1:
        out.append(m)
    return out


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def _clean(vectors: Iterable[Mapping[int, int]]) -> list[Vector]:
    out = []
    for v in vectors:
        w = {k: x for k, x in v.items() if x}
        if w:
            out.append(w)
    return out


def _axpy(v: Vector, c: int, u: Mapping[int, int]) -> None:
    """In place ``v += c*u`` dropping zeros."""
    for k, x in u.items():
        y = v.get(k, 0) + c * x
        if y:
            v[k] = y
        else:
            v.pop(k, None)


def nnz(vectors: Iterable[Mapping[int, int]]) -> int:
    return sum(len(v) for v in vectors)


def check_size(vectors: list[Mapping[int, int]], cap: int | None) -> None:
    if cap is not None:
        total = nnz(vectors)
        if total > cap:
            raise ResourceLimitError(
                f"matrix has {total} nonzero entries, cap is {cap}"
            )


def rank_mod_p(vectors: Iterable[Mapping[int, int]], p: int) -> int:
    """Rank of the span of ``vectors`` over F_p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    pivots: dict[int, Vector] = {}
    for v in vectors:
        w = {k: x % p for k, x in v.items() if x % p}
        while w:
            lead = min(w)
            u = pivots.get(lead)
            if u is None:
                inv = pow(w[lead], -1, p)
                pivots[lead] = {k: x * inv % p for k, x in w.items()}
                break
            c = w[lead]
            for k, x in u.items():
                y = (w.get(k, 0) - c * x) % p
                if y:
                    w[k] = y
                else:
                    w.pop(k, None)
    return len(pivots)


def _primitive(v: Vector) -> Vector:
    g = 0
    for x in v.values():
        g = gcd(g, x)
        if g == 1:
            return v
    return {k: x // g for k, x in v.items()}


def rank_q(vectors: Iterable[Mapping[int, int]]) -> int:
    """Rank over Q by fraction-free elimination.

    Each reduction step is ``v <- a*v - b*u`` followed by removal of the
    content of ``v``, so no rationals ever appear.
    """
    pivots: dict[int, Vector] = {}
    for v in vectors:
        w = {k: x for k, x in v.items() if x}
        while w:
            lead = min(w)
            u = pivots.get(lead)
            if u is None:
                pivots[lead] = _primitive(w)
                break
            a, b = u[lead], w[lead]
            g = gcd(a, b)
            a, b = a // g, b // g
            if a != 1:
                for k in w:
                    w[k] *= a
            _axpy(w, -b, u)
            w = _primitive(w) if w else w
    return len(pivots)


def _balanced_mod(x: int, a: int) -> tuple[int, int]:
    """Return ``(q, r)`` with ``x == q*a + r`` and ``|r| <= |a|/2``."""
    q, r = divmod(x, a)
    if 2 * abs(r) > abs(a):
        r -= a
        q += 1
    return q, r


def invariant_factors(vectors: Iterable[Mapping[int, int]]) -> tuple[int, list[int]]:
    """Smith normal form data of the lattice spanned by ``vectors``.

    Returns ``(rank, divisors)`` where ``divisors`` lists the invariant
    factors greater than one in divisibility order.  These are exactly the
    torsion orders of the cokernel ``Z^N / span(vectors)``.

    Sparse unimodular elimination: columns holding a unit entry are visited
    first (then by entry count), the pivot is the entry of smallest absolute
    value, and a Euclid loop runs on the pivot row/column until both are
    cleared.  Eliminating on units first avoids most coefficient growth.
    """
    rows: dict[int, Vector] = {}
    cols: dict[int, set[int]] = {}
    for rid, v in enumerate(_clean(vectors)):
        rows[rid] = dict(v)
        for c in v:
            cols.setdefault(c, set()).add(rid)

    def set_entry(r: int, c: int, x: int) -> None:
        row = rows[r]
        if x:
            if c not in row:
                cols.setdefault(c, set()).add(r)
            row[c] = x
        elif c in row:
            del row[c]
            cols[c].discard(r)

    def row_axpy(r: int, q: int, src: Vector) -> None:
        for c, x in src.items():
            set_entry(r, c, rows[r].get(c, 0) - q * x)

    def drop(r: int, c: int) -> None:
        for cc in rows.pop(r):
            cols[cc].discard(r)
        del cols[c]

    def key(c: int) -> tuple[int, int, int]:
        s = cols[c]
        unit = any(abs(rows[r][c]) == 1 for r in s)
        return (0 if unit else 1, len(s), c)

    diag: list[int] = []
    heap = [key(c) for c in cols]
    heapq.heapify(heap)
    while heap:
        entry = heapq.heappop(heap)
        c = entry[2]
        if not cols.get(c):
            continue
        fresh = key(c)
        if fresh != entry:
            heapq.heappush(heap, fresh)
            continue
        touched = [c]
        while True:
            r = min(cols[c], key=lambda rr: (abs(rows[rr][c]), len(rows[rr]), rr))
            a = rows[r][c]
            prow = rows[r]
            for r2 in list(cols[c]):
                if r2 == r:
                    continue
                q, _ = _balanced_mod(rows[r2][c], a)
                if q:
                    row_axpy(r2, q, prow)
            if len(cols[c]) > 1:
                continue
            # Column c now meets only row r; column ops touch only row r.
            for c2 in [k for k in prow if k != c]:
                _, rem = _balanced_mod(prow[c2], a)
                set_entry(r, c2, rem)
            if len(prow) == 1:
                diag.append(abs(a))
                drop(r, c)
                break
            c = min((k for k in prow if k != c), key=lambda k: (abs(prow[k]), k))
            touched.append(c)
        # A column left behind by a pivot switch can pick up fill later.
        for k in touched:
            if cols.get(k):
                heapq.heappush(heap, key(k))
    return len(diag), _chain(diag)


def _chain(values: list[int]) -> list[int]:
    """Normalize diagonal entries to an invariant-factor chain (drop ones)."""
    d = sorted(x for x in values if x != 1)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = gcd(d[i], d[j])
            d[i], d[j] = g, d[i] * d[j] // g
    return sorted(x for x in d if x != 1)


def hermite_basis(vectors: Iterable[Mapping[int, int]], reduce: bool = True) -> list[Vector]:
    """Row Hermite normal form of the lattice spanned by ``vectors``.

    Rows are returned sorted by pivot (leading coordinate), pivots positive,
    and each entry above a pivot reduced into ``[0, pivot)``.  With
    ``reduce=False`` that last step is skipped: the rows are still a lattice
    basis in echelon form, and usually much sparser.  Columns are
    cleared one at a time by a Euclid loop on the smallest leading entry,
    which keeps intermediate entries small in practice.
    """
    buckets: dict[int, list[Vector]] = {}
    heap: list[int] = []

    def push(w: Vector) -> None:
        lead = min(w)
        b = buckets.get(lead)
        if b is None:
            buckets[lead] = [w]
            heapq.heappush(heap, lead)
        else:
            b.append(w)

    for v in _clean(vectors):
        push(v)
    rows: list[Vector] = []
    while heap:
        c = heapq.heappop(heap)
        group = buckets.pop(c)
        while len(group) > 1:
            k = min(range(len(group)), key=lambda i: abs(group[i][c]))
            u = group.pop(k)
            a = u[c]
            keep = [u]
            for w in group:
                q, _ = _balanced_mod(w[c], a)
                _axpy(w, -q, u)
                if c in w:
                    keep.append(w)
                elif w:
                    push(w)
            group = keep
        u = group[0]
        if u[c] < 0:
            u = {k: -x for k, x in u.items()}
        rows.append(u)
    if not reduce:
        return rows
    for i in range(len(rows) - 1, -1, -1):
        row = rows[i]
        for later in rows[i + 1:]:
            lj = min(later)
            x = row.get(lj)
            if x is None:
                continue
            q = x // later[lj]
            if q:
                _axpy(row, -q, later)
    return rows


def to_dense(vectors: list[Mapping[int, int]], dim: int) -> list[list[int]]:
    """Dense matrix whose rows are ``vectors`` padded to length ``dim``."""
    return [[v.get(k, 0) for k in range(dim)] for v in vectors]
