"""Quadratic presentations of integral holonomy Lie algebras.

A :class:`QuadraticPresentation` records the degree-2 relations of
``L(y_1..y_n) / ideal(J)`` as integer vectors in the basis
``y_i ^ y_j`` (i < j, lexicographic).  Three constructors cover the inputs
handled here: commutator-relators groups, link linking matrices and central
hyperplane arrangements (through their rank-2 flats).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .intlinalg import is_prime, rank_mod_p, rank_q
from .words import GroupPresentation, Word, commutator, epsilon_matrix


@lru_cache(maxsize=None)
def wedge_pairs(n: int) -> tuple[tuple[int, int], ...]:
    """Basis ``(i, j)``, 1 <= i < j <= n, of the wedge square, in lex order."""
    return tuple(combinations(range(1, n + 1), 2))


@lru_cache(maxsize=None)
def pair_index(n: int) -> dict[tuple[int, int], int]:
    return {p: k for k, p in enumerate(wedge_pairs(n))}


def bracket_vector(n: int, terms: Iterable[tuple[int, int, int]]) -> tuple[int, ...]:
    """Vector of ``sum c * [y_i, y_j]`` given triples ``(c, i, j)``."""
    idx = pair_index(n)
    v = [0] * len(idx)
    for c, i, j in terms:
        if i == j:
            continue
        if i < j:
            v[idx[(i, j)]] += c
        else:
            v[idx[(j, i)]] -= c
    return tuple(v)


@dataclass(frozen=True)
class QuadraticPresentation:
    n: int
    relations: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        rels = tuple(tuple(int(x) for x in r) for r in self.relations)
        size = self.n * (self.n - 1) // 2
        for r in rels:
            if len(r) != size:
                raise ValueError(f"relation vector has length {len(r)}, expected {size}")
        object.__setattr__(self, "relations", rels)

    @property
    def m(self) -> int:
        return len(self.relations)

    @classmethod
    def free(cls, n: int) -> "QuadraticPresentation":
        return cls(n, ())

    @classmethod
    def from_pair_dicts(cls, n: int, relations: Iterable[Mapping[tuple[int, int], int]]):
        """Build from ``{(i, j): coeff}`` dicts with ``i < j`` (1-based)."""
        idx = pair_index(n)
        rows = []
        for rel in relations:
            v = [0] * len(idx)
            for (i, j), c in rel.items():
                if not (1 <= i < j <= n):
                    raise ValueError(f"bad wedge index ({i},{j}) for n={n}")
                v[idx[(i, j)]] += c
            rows.append(tuple(v))
        return cls(n, tuple(rows))

    def as_pair_dicts(self) -> list[dict[tuple[int, int], int]]:
        pairs = wedge_pairs(self.n)
        return [{pairs[k]: c for k, c in enumerate(r) if c} for r in self.relations]

    def sparse_relations(self) -> list[dict[int, int]]:
        return [{k: c for k, c in enumerate(r) if c} for r in self.relations]

    def integers(self) -> set[int]:
        return {abs(c) for r in self.relations for c in r if c}


def from_group(p: GroupPresentation) -> QuadraticPresentation:
    """Relations are the classes of the relators modulo the third LCS term."""
    idx = pair_index(p.n)
    rows = []
    for entries in epsilon_matrix(p):
        v = [0] * len(idx)
        for (i, j), e in entries.items():
            v[idx[(i, j)]] = e
        rows.append(tuple(v))
    return QuadraticPresentation(p.n, tuple(rows))


def realizing_group(q: QuadraticPresentation) -> GroupPresentation:
    """A commutator-relators group whose holonomy relations are exactly ``q``.

    Each relation ``sum c_ij y_i^y_j`` becomes the relator ``prod (x_i, x_j)^c_ij``.
    """
    pairs = wedge_pairs(q.n)
    relators = []
    for rel in q.relations:
        w = Word(())
        for (i, j), c in zip(pairs, rel):
            if c:
                w = w * commutator(Word.gen(i), Word.gen(j)) ** c
        relators.append(w)
    return GroupPresentation(q.n, tuple(relators))


def validate_linking_matrix(L: Sequence[Sequence[int]]) -> int:
    n = len(L)
    for i, row in enumerate(L):
        if len(row) != n:
            raise ValueError("linking matrix must be square")
        if row[i] != 0:
            raise ValueError(f"linking matrix has nonzero diagonal entry at {i + 1}")
        for j in range(n):
            if row[j] != L[j][i]:
                raise ValueError(f"linking matrix is not symmetric at ({i + 1},{j + 1})")
    return n


def from_link(L: Sequence[Sequence[int]]) -> QuadraticPresentation:
    """One relation ``[y_i, sum_j l_ij y_j]`` for each i < n."""
    n = validate_linking_matrix(L)
    rows = []
    for i in range(1, n):
        rows.append(bracket_vector(n, ((L[i - 1][j - 1], i, j) for j in range(1, n + 1))))
    return QuadraticPresentation(n, tuple(rows))


@dataclass(frozen=True)
class LinkingGraph:
    n: int
    edges: Mapping[frozenset, int]

    def __post_init__(self):
        clean = {}
        for e, w in self.edges.items():
            e = frozenset(e)
            if len(e) != 2 or not all(1 <= v <= self.n for v in e):
                raise ValueError(f"bad edge {sorted(e)}")
            if w:
                clean[e] = int(w)
        object.__setattr__(self, "edges", clean)

    @classmethod
    def from_matrix(cls, L: Sequence[Sequence[int]]) -> "LinkingGraph":
        n = validate_linking_matrix(L)
        edges = {
            frozenset((i + 1, j + 1)): L[i][j]
            for i in range(n) for j in range(i + 1, n) if L[i][j]
        }
        return cls(n, edges)

    def weight(self, i: int, j: int) -> int:
        return self.edges.get(frozenset((i, j)), 0)


@dataclass(frozen=True)
class MatroidLines:
    n: int
    lines: frozenset

    def __post_init__(self):
        object.__setattr__(self, "lines", frozenset(frozenset(d) for d in self.lines))
        for d in self.lines:
            if len(d) < 2 or not all(1 <= i <= self.n for i in d):
                raise ValueError(f"bad line {sorted(d)}")

    def sorted_lines(self) -> list[list[int]]:
        return sorted(sorted(d) for d in self.lines)

    def check_partition(self) -> None:
        """Every pair of points must lie on exactly one line."""
        cover: dict[tuple[int, int], int] = {}
        for d in self.lines:
            for pair in combinations(sorted(d), 2):
                cover[pair] = cover.get(pair, 0) + 1
        for pair in combinations(range(1, self.n + 1), 2):
            c = cover.get(pair, 0)
            if c == 0:
                raise ValueError(f"pair {pair} lies on no line")
            if c > 1:
                raise ValueError(f"pair {pair} lies on {c} lines")


def _rank_of(vectors: Sequence[Sequence[int]]) -> int:
    return rank_q([{k: x for k, x in enumerate(v) if x} for v in vectors])


def rank2_flats(normals: Sequence[Sequence[int]]) -> MatroidLines:
    """Lines of the matroid of a central arrangement, from its normal vectors."""
    n = len(normals)
    for i, v in enumerate(normals):
        if not any(v):
            raise ValueError(f"normal {i + 1} is zero")
    for i, j in combinations(range(n), 2):
        if _rank_of([normals[i], normals[j]]) < 2:
            raise ValueError(f"normals {i + 1} and {j + 1} are proportional (repeated hyperplane)")
    lines = set()
    for i, j in combinations(range(n), 2):
        line = frozenset(
            k + 1 for k in range(n)
            if k in (i, j) or _rank_of([normals[i], normals[j], normals[k]]) == 2
        )
        lines.add(line)
    out = MatroidLines(n, frozenset(lines))
    out.check_partition()
    return out


def from_arrangement(lines: MatroidLines) -> QuadraticPresentation:
    """One relation ``[y_j, sum_{i in d} y_i]`` per line d and j in d."""
    lines.check_partition()
    n = lines.n
    rows = []
    for d in lines.sorted_lines():
        for j in d:
            rows.append(bracket_vector(n, ((1, j, i) for i in d)))
    return QuadraticPresentation(n, tuple(rows))


def cup_rank(q: QuadraticPresentation, characteristic: int = 0) -> int:
    """Rank of the span of the relations over Q (0) or F_p."""
    rels = q.sparse_relations()
    if characteristic == 0:
        return rank_q(rels)
    if not is_prime(characteristic):
        raise ValueError(f"{characteristic} is not prime")
    return rank_mod_p(rels, characteristic)

