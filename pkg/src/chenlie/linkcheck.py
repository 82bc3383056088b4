"""Connectivity tests on linking graphs and the Murasugi condition battery."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .closedforms import free_chen_rank
from .gradedalg import DEFAULT_CAP, INTERPRETATION_FLAG, chen_table
from .holonomy import (
    LinkingGraph,
    cup_rank,
    from_link,
    pair_index,
    validate_linking_matrix,
)
from .intlinalg import invariant_factors, is_prime, prime_factors

VERIFIED_LABEL = "verified to degree {kmax}"


def _components(n: int, edges) -> int:
    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    count = n
    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            count -= 1
    return count


def is_connected(g: LinkingGraph) -> bool:
    return _components(g.n, (tuple(e) for e in g.edges)) <= 1


def connected_mod_p(g: LinkingGraph, p: int) -> bool:
    """Whether the edges with weight nonzero mod p span a connected graph."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    kept = (tuple(e) for e, w in g.edges.items() if w % p)
    return _components(g.n, kept) <= 1


def witness_primes(g: LinkingGraph) -> list[int]:
    """Primes dividing some edge weight; every other prime keeps all edges."""
    ps: set[int] = set()
    for w in g.edges.values():
        ps.update(prime_factors(w))
    return sorted(ps)


def strongly_connected(g: LinkingGraph) -> tuple[bool, int | None]:
    """``(True, None)``, or ``(False, p)`` with p a prime where connectivity fails."""
    if not is_connected(g):
        return False, 2
    for p in witness_primes(g):
        if not connected_mod_p(g, p):
            return False, p
    return True, None


def z_generic_component(L: Sequence[Sequence[int]]) -> int | None:
    """First component c (1-based) for which the relation lattice of the link
    projects onto the span of the ``y_i ^ y_c`` coordinates, else None.
    """
    n = validate_linking_matrix(L)
    if n == 1:
        return 1
    rels = from_link(L).sparse_relations()
    idx = pair_index(n)
    for c in range(1, n + 1):
        others = [i for i in range(1, n + 1) if i != c]
        coords = {idx[(min(i, c), max(i, c))]: k for k, i in enumerate(others)}
        proj = [{coords[k]: x for k, x in r.items() if k in coords} for r in rels]
        rank, divisors = invariant_factors(proj)
        if rank == n - 1 and not divisors:
            return c
    return None


def is_z_generic(L: Sequence[Sequence[int]]) -> bool:
    return z_generic_component(L) is not None


@dataclass
class MurasugiReport:
    n: int
    kmax: int
    connected: bool
    cup_rank: int
    theta: list
    free_theta: list
    strongly_connected: bool
    strong_witness: int | None
    torsion: dict | None  # None when not computed
    z_generic: bool
    z_component: int | None
    conditions: dict = field(default_factory=dict)

    @property
    def equivalent(self) -> bool:
        return len(set(self.conditions.values())) <= 1

    @property
    def torsion_free(self) -> bool | None:
        if self.torsion is None:
            return None
        return not any(self.torsion.values())

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "kmax": self.kmax,
            "label": VERIFIED_LABEL.format(kmax=self.kmax),
            "conditions": dict(self.conditions),
            "equivalent": self.equivalent,
            "cup_rank": self.cup_rank,
            "theta": list(self.theta),
            "free_theta": list(self.free_theta),
            "strongly_connected": self.strongly_connected,
            "strong_witness": self.strong_witness,
            "torsion": None if self.torsion is None else {
                str(d): [str(x) for x in divs] for d, divs in sorted(self.torsion.items())
            },
            "torsion_free": self.torsion_free,
            "z_generic": self.z_generic,
            "z_component": self.z_component,
            "flags": {"interpretation": INTERPRETATION_FLAG},
        }


class ConsistencyError(AssertionError):
    pass


def murasugi_report(
    L: Sequence[Sequence[int]],
    kmax: int,
    torsion: bool = True,
    cap: int | None = DEFAULT_CAP,
    strict: bool = False,
) -> MurasugiReport:
    """Check the Murasugi conditions up to degree ``kmax``.

    (a) the linking graph is connected; (b) the rational cup-product rank is
    n - 1; (d) theta_k equals the free Chen rank on n - 1 generators for
    2 <= k <= kmax; (e) the same for k = 2 only.  These four should agree;
    with ``strict`` a disagreement raises :class:`ConsistencyError`.
    """
    if kmax < 2:
        raise ValueError("kmax must be at least 2")
    n = validate_linking_matrix(L)
    g = LinkingGraph.from_matrix(L)
    q = from_link(L)
    table = chen_table(q, kmax, primes=(), torsion=torsion, cap=cap)
    theta = table.theta
    free_theta = [free_chen_rank(n - 1, k) for k in range(1, kmax + 1)]
    cr = cup_rank(q)
    strong, witness = strongly_connected(g)
    zc = z_generic_component(L)
    tors = {d: tuple(v) for d, v in table.torsion().items()} if torsion else None
    report = MurasugiReport(
        n, kmax, is_connected(g), cr, theta, free_theta, strong, witness, tors, zc is not None, zc,
    )
    report.conditions = {
        "a_connected": report.connected,
        "b_cup_rank": cr == n - 1,
        "d_chen_ranks": theta[1:] == free_theta[1:],
        "e_theta2": theta[1] == free_theta[1],
    }
    if strict and not report.equivalent:
        raise ConsistencyError(f"Murasugi conditions disagree: {report.conditions}")
    return report
