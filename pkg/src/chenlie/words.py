"""Free-group words, Fox calculus and the linearized Alexander matrix.

A word in F_n is a tuple of nonzero signed generator indices: ``+i`` stands
for x_i and ``-i`` for x_i^{-1}, with ``1 <= i <= n``.  Words are freely
reduced when constructed, so tuple equality is group equality.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Mapping


class WordSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NotCommutatorError(ValueError):
    """A relator does not lie in the commutator subgroup."""


def reduce_letters(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for a in letters:
        if a == 0:
            raise ValueError("generator index 0 is not allowed")
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


@dataclass(frozen=True, order=True)
class Word:
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", reduce_letters(self.letters))

    @classmethod
    def gen(cls, i: int, e: int = 1) -> "Word":
        return cls((i if e > 0 else -i,) * abs(e))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple(-a for a in reversed(self.letters)))

    def __pow__(self, e: int) -> "Word":
        base = self if e >= 0 else self.inverse()
        return Word(base.letters * abs(e))

    def __len__(self) -> int:
        return len(self.letters)

    def max_generator(self) -> int:
        return max((abs(a) for a in self.letters), default=0)

    def exponent_sums(self, n: int) -> list[int]:
        sums = [0] * n
        for a in self.letters:
            sums[abs(a) - 1] += 1 if a > 0 else -1
        return sums

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        parts = []
        i = 0
        while i < len(self.letters):
            a = self.letters[i]
            j = i
            while j < len(self.letters) and self.letters[j] == a:
                j += 1
            e = (j - i) * (1 if a > 0 else -1)
            parts.append(f"x{abs(a)}" if e == 1 else f"x{abs(a)}^{e}")
            i = j
        return " ".join(parts)


def commutator(a: Word, b: Word) -> Word:
    """The group commutator (a, b) = a b a^-1 b^-1."""
    return a * b * a.inverse() * b.inverse()


# Grammar:
#   word   := factor*
#   factor := atom ('^' int)?
#   atom   := 'x' digits | '[' word ',' word ']'
_TOKEN = re.compile(r"\s*(?:(x\d+)|(\^[+-]?\d+)|([\[\],]))")


def parse_word(text: str, n: int) -> Word:
    """Parse ``x1 x2^-3 [x1,[x2,x3]]`` style input into a reduced Word."""
    pos = 0

    def peek() -> tuple[str, str, int] | None:
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise WordSyntaxError(f"unexpected character {text[pos:].lstrip()[0]!r}",
                                      pos + len(text[pos:]) - len(text[pos:].lstrip()))
            return None
        if m.group(1):
            return "gen", m.group(1), m.end()
        if m.group(2):
            return "pow", m.group(2), m.end()
        return m.group(3), m.group(3), m.end()

    def start_of(tok_end: int, tok: str) -> int:
        return tok_end - len(tok)

    def parse_seq(closers: str) -> Word:
        nonlocal pos
        w = Word()
        while True:
            t = peek()
            if t is None or t[0] in closers:
                return w
            w = w * parse_factor()

    def parse_factor() -> Word:
        nonlocal pos
        kind, tok, end = peek()
        if kind == "gen":
            i = int(tok[1:])
            if not 1 <= i <= n:
                raise WordSyntaxError(f"generator x{i} out of range 1..{n}", start_of(end, tok))
            pos = end
            atom = Word((i,))
        elif kind == "[":
            pos = end
            a = parse_seq(",]")
            t = peek()
            if t is None or t[0] != ",":
                raise WordSyntaxError("expected ','", pos if t is None else start_of(t[2], t[1]))
            pos = t[2]
            b = parse_seq(",]")
            t = peek()
            if t is None or t[0] != "]":
                raise WordSyntaxError("expected ']'", pos if t is None else start_of(t[2], t[1]))
            pos = t[2]
            atom = commutator(a, b)
        else:
            raise WordSyntaxError(f"unexpected {tok!r}", start_of(end, tok))
        t = peek()
        if t is not None and t[0] == "pow":
            e = int(t[1][1:])
            if e == 0:
                raise WordSyntaxError("exponent must be nonzero", start_of(t[2], t[1]))
            pos = t[2]
            atom = atom ** e
        return atom

    w = parse_seq("")
    t = peek()
    if t is not None:
        raise WordSyntaxError(f"unexpected {t[1]!r}", start_of(t[2], t[1]))
    return w


def is_commutator_word(w: Word) -> bool:
    """True iff every generator has exponent sum zero in ``w``."""
    return not any(w.exponent_sums(max(w.max_generator(), 1)))


@dataclass(frozen=True)
class GroupRingElement:
    """Element of Z F_n: a finite map from reduced words to nonzero ints."""

    terms: Mapping[Word, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "terms", {w: c for w, c in self.terms.items() if c})

    @classmethod
    def of(cls, w: Word, c: int = 1) -> "GroupRingElement":
        return cls({w: c})

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return GroupRingElement(out)

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + (-other)

    def __mul__(self, other: "GroupRingElement") -> "GroupRingElement":
        out: dict[Word, int] = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = u * v
                out[w] = out.get(w, 0) + a * b
        return GroupRingElement(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return dict(self.terms) == dict(other.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def augmentation(self) -> int:
        return sum(self.terms.values())

    def abelianize(self, n: int) -> dict[tuple[int, ...], int]:
        """Image in Z[t_1^{+-1}, ..., t_n^{+-1}] as ``{exponent vector: coeff}``."""
        out: dict[tuple[int, ...], int] = {}
        for w, c in self.terms.items():
            key = tuple(w.exponent_sums(n))
            out[key] = out.get(key, 0) + c
        return {k: c for k, c in out.items() if c}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0])):
            parts.append(f"{c:+d}*{w}")
        return " ".join(parts)


def fox_derivative(w: Word | GroupRingElement, i: int) -> GroupRingElement:
    """The Fox derivative d/dx_i, extended linearly to the group ring."""
    if i < 1:
        raise ValueError(f"generator index {i} out of range")
    if isinstance(w, GroupRingElement):
        out = GroupRingElement()
        for u, c in w.terms.items():
            d = fox_derivative(u, i)
            out = out + GroupRingElement({v: c * a for v, a in d.terms.items()})
        return out
    terms: dict[Word, int] = {}
    letters = w.letters
    for k, a in enumerate(letters):
        if a == i:
            p = Word(letters[:k])
            terms[p] = terms.get(p, 0) + 1
        elif a == -i:
            p = Word(letters[:k + 1])
            terms[p] = terms.get(p, 0) - 1
    return GroupRingElement(terms)


@dataclass(frozen=True)
class GroupPresentation:
    n: int
    relators: tuple[Word, ...]

    def __post_init__(self):
        object.__setattr__(self, "relators", tuple(self.relators))
        for r in self.relators:
            if r.max_generator() > self.n:
                raise ValueError(f"relator {r} uses a generator beyond x{self.n}")

    @classmethod
    def parse(cls, n: int, relators: Iterable[str]) -> "GroupPresentation":
        return cls(n, tuple(parse_word(t, n) for t in relators))

    def is_commutator_relators(self) -> bool:
        return all(is_commutator_word(r) for r in self.relators)

    def require_commutator_relators(self) -> None:
        for k, r in enumerate(self.relators):
            sums = r.exponent_sums(self.n)
            if any(sums):
                raise NotCommutatorError(
                    f"relator {k + 1} ({r}) has abelianization {sums}, not zero"
                )


def epsilon(r: Word, i: int, j: int) -> int:
    """The coefficient eps(d_i(d_j(r))) (augmentation of the second Fox derivative)."""
    return fox_derivative(fox_derivative(r, j), i).augmentation()


def epsilon_matrix(p: GroupPresentation) -> list[dict[tuple[int, int], int]]:
    """Per relator, the nonzero ``eps_ij`` for ``i < j`` (1-based)."""
    p.require_commutator_relators()
    out = []
    for r in p.relators:
        entries = {}
        for j in range(1, p.n + 1):
            dj = fox_derivative(r, j)
            if not dj.terms:
                continue
            for i in range(1, j):
                e = fox_derivative(dj, i).augmentation()
                if e:
                    entries[(i, j)] = e
        out.append(entries)
    return out


def _full_epsilon(entries: Mapping[tuple[int, int], int], i: int, j: int) -> int:
    if i < j:
        return entries.get((i, j), 0)
    if i > j:
        return -entries.get((j, i), 0)
    return 0


def linearized_alexander_matrix(p: GroupPresentation) -> list[list[list[int]]]:
    """The m x n matrix of linear forms; entry ``[k][j]`` lists the coefficients of s_1..s_n.

    Indices in the returned nested lists are 0-based positions.
    """
    eps = epsilon_matrix(p)
    n = p.n
    return [
        [[_full_epsilon(e, i, j) for i in range(1, n + 1)] for j in range(1, n + 1)]
        for e in eps
    ]


def _series_power(a: int, q: int) -> list[int]:
    """Coefficients of (1+s)^a up to s^q, for any integer a."""
    if a >= 0:
        return [comb(a, k) for k in range(q + 1)]
    return [(-1) ** k * comb(-a + k - 1, k) for k in range(q + 1)]


def magnus_truncate(element: Mapping[tuple[int, ...], int], q: int) -> dict[tuple[int, ...], int]:
    """Apply t_i -> 1 + s_i to a Laurent polynomial and drop total degree > q.

    ``element`` is an abelianized group-ring element ``{exponents: coeff}``;
    the result maps exponent tuples of s-monomials to coefficients.
    """
    if q < 0:
        raise ValueError("truncation order must be nonnegative")
    out: dict[tuple[int, ...], int] = {}
    for expo, c in element.items():
        poly: dict[tuple[int, ...], int] = {tuple(0 for _ in expo): c}
        for idx, a in enumerate(expo):
            if a == 0:
                continue
            ser = _series_power(a, q)
            nxt: dict[tuple[int, ...], int] = {}
            for mono, v in poly.items():
                deg = sum(mono)
                for k in range(q - deg + 1):
                    if ser[k] == 0:
                        continue
                    m = list(mono)
                    m[idx] += k
                    key = tuple(m)
                    nxt[key] = nxt.get(key, 0) + v * ser[k]
            poly = nxt
        for mono, v in poly.items():
            out[mono] = out.get(mono, 0) + v
    return {k: v for k, v in out.items() if v}


def fox_jacobian_linear_part(p: GroupPresentation) -> list[list[list[int]]]:
    """Degree-one Magnus truncation of the abelianized Fox Jacobian.

    Same shape as :func:`linearized_alexander_matrix`, computed the long way
    (Fox derivative, abelianize, expand, truncate).
    """
    n = p.n
    out = []
    for r in p.relators:
        row = []
        for j in range(1, n + 1):
            trunc = magnus_truncate(fox_derivative(r, j).abelianize(n), 1)
            lin = [0] * n
            for mono, v in trunc.items():
                if sum(mono) == 1:
                    lin[mono.index(1)] += v
                elif sum(mono) == 0 and v:
                    raise NotCommutatorError(f"relator {r} has nonzero constant Fox term")
            row.append(lin)
        out.append(row)
    return out
