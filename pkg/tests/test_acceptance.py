"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py`` (the lines appear in the terminal
summary) or ``python tests/test_acceptance.py``.
"""

import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

from chenlie.closedforms import (  # noqa: E402
    free_chen_rank,
    invert_lcs_product,
    one_relator_series,
    pure_braid_series,
    surface_lcs_poly,
    witt_rank,
)
from chenlie.gradedalg import chen_table, degree_report, linearized_B_dims  # noqa: E402
from chenlie.holonomy import (  # noqa: E402
    QuadraticPresentation,
    from_arrangement,
    from_group,
    from_link,
    rank2_flats,
    realizing_group,
)
from chenlie.liecore import (  # noqa: E402
    derived_quotient_ranks,
    ideal_degree_pieces,
    oracle_infinitesimal_alexander,
)
from chenlie.linkcheck import murasugi_report  # noqa: E402
from chenlie.words import GroupPresentation, Word, commutator  # noqa: E402

from conftest import random_linking_matrix, random_quadratic  # noqa: E402

BRAID_A3 = [[1, -1, 0, 0], [1, 0, -1, 0], [1, 0, 0, -1], [0, 1, -1, 0], [0, 1, 0, -1], [0, 0, 1, -1]]


def test_criterion_01_free_chen_ranks():
    t = time.perf_counter()
    for n in (2, 3, 4):
        table = chen_table(QuadraticPresentation.free(n), 8)
        assert table.theta == [free_chen_rank(n, k) for k in range(1, 9)]
        assert all(divs == () for divs in table.torsion().values())
    assert time.perf_counter() - t < 30


def test_criterion_02_genus_two():
    t = time.perf_counter()
    q = from_group(GroupPresentation.parse(4, ["[x1,x2][x3,x4]"]))
    table = chen_table(q, 8)
    assert table.theta == one_relator_series(4, 8).as_list()
    assert all(divs == () for divs in table.torsion().values())
    assert time.perf_counter() - t < 60


def test_criterion_03_power_commutator_torsion():
    for p in (2, 3, 5):
        q = from_group(GroupPresentation.parse(2, [f"[x1,x2^{p}]"]))
        for k in range(2, 9):
            rep = degree_report(q, k, (p,))
            # coefficient of t^k in (t / (1 - t))^2 is k - 1
            assert rep.rank_q == 0
            assert rep.rank_fp[p] == k - 1
            assert rep.elementary_divisors == (p,) * (k - 1)


def test_criterion_04_pure_braid():
    t = time.perf_counter()
    q = from_arrangement(rank2_flats(BRAID_A3))
    theta = chen_table(q, 6, primes=()).theta
    assert theta == [6, 4, 10, 15, 20, 25]
    assert theta == pure_braid_series(4, 6).as_list()
    assert all(theta[k - 1] == (k - 1) * 5 for k in range(3, 7))
    assert time.perf_counter() - t < 60


def test_criterion_05_two_component_link():
    q = from_link([[0, 6], [6, 0]])
    table = chen_table(q, 8, primes=(2, 3))
    for rep in table.reports:
        assert rep.elementary_divisors == (6,) * (rep.degree - 1)


def test_criterion_06_murasugi():
    for L in ([[0, 1, 1], [1, 0, 1], [1, 1, 0]],
              [[0, 1, -1, 1], [1, 0, 1, -1], [-1, 1, 0, 1], [1, -1, 1, 0]]):
        n = len(L)
        r = murasugi_report(L, 6)
        assert r.theta[1:] == [free_chen_rank(n - 1, k) for k in range(2, 7)]
        assert r.torsion_free and r.strongly_connected and r.z_generic
        assert r.equivalent
    rng = random.Random(6)
    for _ in range(200):
        L = random_linking_matrix(rng, n_max=4, bound=5)
        r = murasugi_report(L, 5, torsion=False)
        assert r.equivalent, (L, r.conditions)


def test_criterion_07_non_quadratic_relator():
    p = GroupPresentation.parse(2, ["[[x1,x2],x2]"])
    assert linearized_B_dims(p, 3) == 2
    assert linearized_B_dims(p, 4) == 3


def test_criterion_08_oracle_equivalence():
    t = time.perf_counter()
    rng = random.Random(8)
    extra = commutator(commutator(Word.gen(1), Word.gen(2)), Word.gen(2))
    for _ in range(100):
        q = random_quadratic(rng, n_max=4, m_max=3)
        ideal = ideal_degree_pieces(q, 6)
        g = realizing_group(q)
        g = GroupPresentation(g.n, tuple(r * extra for r in g.relators))
        for d in range(2, 7):
            rep = degree_report(q, d, (2, 3))
            assert oracle_infinitesimal_alexander(q, d, ideal) == (rep.free_rank, rep.elementary_divisors)
            assert linearized_B_dims(g, d) == rep.rank_q
            assert linearized_B_dims(g, d, 2) == rep.rank_fp[2]
            assert linearized_B_dims(g, d, 3) == rep.rank_fp[3]
    assert time.perf_counter() - t < 300


def test_criterion_09_higher_derived_quotients():
    res = derived_quotient_ranks(QuadraticPresentation.free(2), 3, 7)
    assert [x.rank for x in res["degrees"]] == [witt_rank(2, d) for d in range(1, 8)]
    for n in (2, 3, 4):
        res = derived_quotient_ranks(QuadraticPresentation.free(n), 2, 6)
        assert [x.rank for x in res["degrees"]] == [free_chen_rank(n, k) for k in range(1, 7)]
        assert all(x.divisors == () for x in res["degrees"])


def test_criterion_10_lcs_inversion():
    assert invert_lcs_product([1, -6, 11, -6], 3).as_list() == [6, 4, 10]
    assert invert_lcs_product(surface_lcs_poly(2), 3).as_list() == [4, 5, 16]


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted((k, v) for k, v in globals().items() if k.startswith("test_criterion_")):
        num = int(name.split("_")[2])
        t = time.perf_counter()
        try:
            fn()
            status = "PASS"
        except AssertionError as e:
            status, failed = f"FAIL ({e})", failed + 1
        print(f"criterion {num:2d}: {status}  [{time.perf_counter() - t:.1f}s]  {name[18:]}")
    sys.exit(1 if failed else 0)
