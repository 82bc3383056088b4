"""Free Lie ring over Z in the Lyndon basis, and quotients of it.

This is the brute-force side of the package: it never uses the Koszul
presentation.  Elements of ``L_d`` are sparse integer vectors indexed by the
Lyndon words of length d (letters 0..n-1 stand for y_1..y_n).  Brackets are
computed by expanding into the free associative ring and reading the result
back in the Lyndon basis, which is triangular: the standard bracketing of a
Lyndon word w equals w plus lexicographically larger words.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Mapping, Sequence

from .closedforms import witt_rank
from .gradedalg import DEFAULT_PRIMES
from .holonomy import QuadraticPresentation, wedge_pairs
from .intlinalg import hermite_basis, invariant_factors, rank_mod_p

Vector = dict[int, int]
Poly = dict[tuple[int, ...], int]

DEFAULT_ORACLE_KMAX = 7


class CutoffError(ValueError):
    pass


def lyndon_words(n: int, max_len: int) -> list[tuple[int, ...]]:
    """All Lyndon words of length <= max_len over 0..n-1 (Duval's generator)."""
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        out.append(tuple(w))
        m = len(w)
        while len(w) < max_len:
            w.append(w[len(w) - m])
        while w and w[-1] == n - 1:
            w.pop()
    return out


def standard_factorization(w: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Split a Lyndon word as u v with v its longest proper Lyndon suffix."""
    for k in range(1, len(w)):
        if _is_lyndon(w[k:]):
            return w[:k], w[k:]
    raise ValueError(f"{w} has length 1")


def _is_lyndon(w: tuple[int, ...]) -> bool:
    return all(w < w[k:] for k in range(1, len(w)))


def _poly_bracket(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for u, x in a.items():
        for v, y in b.items():
            uv, vu = u + v, v + u
            out[uv] = out.get(uv, 0) + x * y
            out[vu] = out.get(vu, 0) - x * y
    return {k: c for k, c in out.items() if c}


class LyndonBasis:
    """Lyndon words per degree, their brackets and tensor expansions."""

    def __init__(self, n: int, kmax: int):
        if n < 1 or kmax < 1:
            raise ValueError("need n >= 1 and kmax >= 1")
        self.n = n
        self.kmax = kmax
        words = lyndon_words(n, kmax)
        self.words: dict[int, list[tuple[int, ...]]] = {d: [] for d in range(1, kmax + 1)}
        for w in sorted(words):
            self.words[len(w)].append(w)
        self.index = {d: {w: k for k, w in enumerate(ws)} for d, ws in self.words.items()}
        self._expansion: dict[tuple[int, ...], Poly] = {}

    def dim(self, d: int) -> int:
        return len(self.words[d])

    def bracketing(self, w: tuple[int, ...]):
        """Nested-list standard bracketing of a Lyndon word."""
        if len(w) == 1:
            return w[0]
        u, v = standard_factorization(w)
        return [self.bracketing(u), self.bracketing(v)]

    def expansion(self, w: tuple[int, ...]) -> Poly:
        """The standard bracket of ``w`` as a polynomial in words."""
        e = self._expansion.get(w)
        if e is None:
            if len(w) == 1:
                e = {w: 1}
            else:
                u, v = standard_factorization(w)
                e = _poly_bracket(self.expansion(u), self.expansion(v))
            self._expansion[w] = e
        return e

    def to_poly(self, vec: Mapping[int, int], d: int) -> Poly:
        out: Poly = {}
        ws = self.words[d]
        for k, c in vec.items():
            for word, x in self.expansion(ws[k]).items():
                out[word] = out.get(word, 0) + c * x
        return {k: c for k, c in out.items() if c}

    def from_poly(self, poly: Poly, d: int) -> Vector:
        """Lyndon coordinates of a Lie polynomial (triangular elimination)."""
        poly = dict(poly)
        index = self.index[d]
        out: Vector = {}
        while poly:
            w = min(poly)
            c = poly[w]
            k = index.get(w)
            if k is None:
                raise ValueError(f"not a Lie element: leading word {w} is not Lyndon")
            out[k] = c
            for word, x in self.expansion(w).items():
                y = poly.get(word, 0) - c * x
                if y:
                    poly[word] = y
                else:
                    poly.pop(word, None)
        return out

    def bracket(self, a: Mapping[int, int], da: int, b: Mapping[int, int], db: int) -> Vector:
        """Lyndon coordinates of [a, b] for a in L_da, b in L_db."""
        if da + db > self.kmax:
            raise CutoffError(f"bracket degree {da + db} exceeds cutoff {self.kmax}")
        return self.from_poly(_poly_bracket(self.to_poly(a, da), self.to_poly(b, db)), da + db)

    def generator(self, g: int) -> Vector:
        """y_{g+1} as a degree-1 vector."""
        return {self.index[1][(g,)]: 1}


@lru_cache(maxsize=16)
def basis(n: int, kmax: int) -> LyndonBasis:
    return LyndonBasis(n, kmax)


def bracket_expand(B: LyndonBasis, a: Mapping[int, int], da: int, b: Mapping[int, int], db: int) -> Vector:
    """[a, b] written in the Lyndon basis of degree da + db."""
    return B.bracket(a, da, b, db)


@dataclass(frozen=True)
class GradedSubspace:
    """Per-degree sublattices of L_d, each as rows in Hermite form."""

    n: int
    kmax: int
    pieces: dict  # degree -> tuple of row vectors

    def rank(self, d: int) -> int:
        return len(self.pieces.get(d, ()))

    def is_saturated(self, d: int) -> bool:
        """Whether L_d / piece_d is torsion-free (one Smith form, can be slow)."""
        return not invariant_factors(self.pieces.get(d, ()))[1]


def _embed_relation(B: LyndonBasis, rel: Mapping[int, int]) -> Vector:
    pairs = wedge_pairs(B.n)
    idx2 = B.index[2]
    return {idx2[(pairs[k][0] - 1, pairs[k][1] - 1)]: c for k, c in rel.items()}


def ideal_degree_pieces(q: QuadraticPresentation, kmax: int) -> GradedSubspace:
    """The ideal generated by the relations, degree by degree up to kmax.

    I_2 is spanned by the relations; I_{d+1} by [v, y_g] with v spanning I_d.
    """
    if kmax < 2:
        raise ValueError("kmax must be at least 2")
    B = basis(q.n, kmax)
    pieces = {1: ()}
    current = hermite_basis(_embed_relation(B, r) for r in q.sparse_relations())
    pieces[2] = tuple(current)
    for d in range(3, kmax + 1):
        gens = [B.bracket(v, d - 1, B.generator(g), 1) for v in current for g in range(q.n)]
        current = hermite_basis(gens)
        pieces[d] = tuple(current)
    return GradedSubspace(q.n, kmax, pieces)


def _bracket_span(B: LyndonBasis, left: Sequence[Vector], dl: int, right: Sequence[Vector], dr: int) -> list[Vector]:
    out = []
    if dl == dr:
        for i, j in combinations(range(len(left)), 2):
            out.append(B.bracket(left[i], dl, left[j], dr))
    else:
        for a in left:
            for b in right:
                out.append(B.bracket(a, dl, b, dr))
    return [v for v in out if v]


@lru_cache(maxsize=64)
def _free_second_derived(n: int, d: int) -> tuple:
    """Spanning vectors of L''_d: brackets of basis elements of L_a, L_b (a+b=d, a,b>=2)."""
    B = basis(n, max(d, 2))
    out = []
    for a in range(2, d // 2 + 1):
        b = d - a
        left = [{k: 1} for k in range(B.dim(a))]
        right = [{k: 1} for k in range(B.dim(b))]
        out.extend(_bracket_span(B, left, a, right, b))
    return tuple(out)


@dataclass(frozen=True)
class QuotientDegree:
    degree: int
    rank: int
    divisors: tuple
    rank_fp: dict


def derived_preimages(q: QuadraticPresentation, i: int, kmax: int) -> dict[int, list[Vector]]:
    """Spanning sets, per degree, of the preimage of H^(i) in L.

    H^(1) = H_{>=2}; H^(j+1) = [H^(j), H^(j)].  Every preimage contains I.
    """
    if i < 1:
        raise ValueError("derived index must be at least 1")
    I = ideal_degree_pieces(q, kmax)
    B = basis(q.n, kmax)
    level = {1: [], **{d: [{k: 1} for k in range(B.dim(d))] for d in range(2, kmax + 1)}}
    for _ in range(i - 1):
        nxt = {1: []}
        for d in range(2, kmax + 1):
            gens = list(I.pieces[d])
            for a in range(1, d // 2 + 1):
                b = d - a
                if level[a] and level[b]:
                    gens.extend(_bracket_span(B, level[a], a, level[b], b))
            nxt[d] = hermite_basis(gens)
        level = nxt
    return level


def derived_quotient_ranks(
    q: QuadraticPresentation,
    i: int,
    kmax: int = DEFAULT_ORACLE_KMAX,
    primes: Sequence[int] = DEFAULT_PRIMES,
) -> dict:
    """Rank, torsion and F_p-dimensions of (H/H^(i))_d for d = 1..kmax."""
    if kmax < 2:
        raise ValueError("kmax must be at least 2")
    B = basis(q.n, kmax)
    pre = derived_preimages(q, i, kmax)
    degrees = []
    for d in range(1, kmax + 1):
        gens = pre[d]
        rank, divs = invariant_factors(gens)
        dim = B.dim(d)
        degrees.append(QuotientDegree(
            d, dim - rank, tuple(divs),
            {p: dim - rank_mod_p(gens, p) for p in primes},
        ))
    return {
        "n": q.n,
        "i": i,
        "kmax": kmax,
        "degrees": degrees,
        "stable": 2 ** i > kmax,
    }


def oracle_infinitesimal_alexander(
    q: QuadraticPresentation, d: int, ideal: GradedSubspace | None = None
) -> tuple[int, tuple]:
    """(rank, torsion) of H'_d / H''_d, computed in the Lyndon basis.

    ``ideal`` may be a precomputed :func:`ideal_degree_pieces` result
    reaching at least degree d.
    """
    if d < 2:
        raise ValueError("degree must be at least 2")
    I = ideal if ideal is not None and ideal.kmax >= d else ideal_degree_pieces(q, d)
    gens = list(I.pieces[d]) + list(_free_second_derived(q.n, d))
    rank, divs = invariant_factors(gens)
    return witt_rank(q.n, d) - rank, tuple(divs)
