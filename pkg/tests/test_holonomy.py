"""Quadratic presentations built from groups, links and arrangements."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chenlie.holonomy import (
    LinkingGraph,
    MatroidLines,
    QuadraticPresentation,
    bracket_vector,
    cup_rank,
    from_arrangement,
    from_group,
    from_link,
    rank2_flats,
    realizing_group,
    validate_linking_matrix,
    wedge_pairs,
)
from chenlie.words import GroupPresentation

BRAID_A3 = [[1, -1, 0, 0], [1, 0, -1, 0], [1, 0, 0, -1], [0, 1, -1, 0], [0, 1, 0, -1], [0, 0, 1, -1]]


def test_wedge_basis_order():
    assert wedge_pairs(4) == ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))
    assert bracket_vector(3, [(1, 2, 1), (5, 1, 3), (7, 2, 2)]) == (-1, 5, 0)


def test_from_group():
    q = from_group(GroupPresentation.parse(4, ["[x1,x2][x3,x4]"]))
    assert q.relations == ((1, 0, 0, 0, 0, 1),)
    assert from_group(GroupPresentation.parse(2, ["[[x1,x2],x2]"])).relations == ((0,),)


def test_pair_dict_round_trip():
    q = QuadraticPresentation.from_pair_dicts(4, [{(1, 2): 1, (3, 4): 1}, {(2, 4): -3}])
    assert q.as_pair_dicts() == [{(1, 2): 1, (3, 4): 1}, {(2, 4): -3}]
    with pytest.raises(ValueError):
        QuadraticPresentation.from_pair_dicts(3, [{(2, 1): 1}])
    with pytest.raises(ValueError):
        QuadraticPresentation(3, ((1, 2),))


@given(st.integers(2, 4).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.lists(st.integers(-3, 3), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2),
             max_size=3))))
def test_realizing_group_round_trip(data):
    n, rels = data
    q = QuadraticPresentation(n, tuple(tuple(r) for r in rels))
    assert from_group(realizing_group(q)) == q


def test_from_link():
    q = from_link([[0, 6], [6, 0]])
    assert q.relations == ((6,),)
    q = from_link([[0, 1, 2], [1, 0, 3], [2, 3, 0]])
    # [y1, y2 + 2 y3] and [y2, y1 + 3 y3]
    assert q.relations == ((1, 2, 0), (-1, 0, 3))


@pytest.mark.parametrize("L", [[[0, 1], [2, 0]], [[1, 1], [1, 0]], [[0, 1, 2], [1, 0]]])
def test_bad_linking_matrix(L):
    with pytest.raises(ValueError):
        validate_linking_matrix(L)


def _unit_link(n, signs):
    L = [[0] * n for _ in range(n)]
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            L[i][j] = L[j][i] = signs[k % len(signs)]
            k += 1
    return L


@pytest.mark.parametrize("n", [2, 3, 4, 5])
@pytest.mark.parametrize("signs", [[1], [-1], [1, -1, -1]])
def test_unit_links_have_full_cup_rank_everywhere(n, signs):
    q = from_link(_unit_link(n, signs))
    for ch in (0, 2, 3, 5, 7):
        assert cup_rank(q, ch) == n - 1


def test_linking_graph():
    g = LinkingGraph.from_matrix([[0, 2, 0], [2, 0, -1], [0, -1, 0]])
    assert g.weight(1, 2) == 2 and g.weight(2, 1) == 2 and g.weight(1, 3) == 0
    assert len(g.edges) == 2
    with pytest.raises(ValueError):
        LinkingGraph(2, {frozenset((1, 3)): 1})


def test_braid_flats():
    lines = rank2_flats(BRAID_A3)
    assert lines.sorted_lines() == [[1, 2, 4], [1, 3, 5], [1, 6], [2, 3, 6], [2, 5], [3, 4], [4, 5, 6]]
    q = from_arrangement(lines)
    assert q.m == 4 * 3 + 3 * 2
    assert cup_rank(q) == 11


def test_generic_arrangement_is_abelian_in_degree_two():
    lines = rank2_flats([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]])
    assert all(len(d) == 2 for d in lines.sorted_lines())
    # a two-point line {i, j} kills [y_i, y_j]
    assert cup_rank(from_arrangement(lines)) == 6


def test_arrangement_relations_sum_to_zero_per_line():
    lines = rank2_flats(BRAID_A3)
    q = from_arrangement(lines)
    k = 0
    for d in lines.sorted_lines():
        block = q.relations[k:k + len(d)]
        k += len(d)
        assert all(sum(col) == 0 for col in zip(*block))


def test_arrangement_errors():
    with pytest.raises(ValueError):
        rank2_flats([[1, 0], [2, 0]])
    with pytest.raises(ValueError):
        rank2_flats([[1, 0], [0, 0]])
    with pytest.raises(ValueError):
        MatroidLines(3, [[1, 2]]).check_partition()
    with pytest.raises(ValueError):
        MatroidLines(3, [[1, 2, 3], [1, 2]]).check_partition()


@pytest.mark.parametrize("g", [1, 2, 3])
def test_surface_relation_is_nondegenerate(g):
    from sympy import Matrix

    rel = "".join(f"[x{2 * k + 1},x{2 * k + 2}]" for k in range(g))
    q = from_group(GroupPresentation.parse(2 * g, [rel]))
    n = 2 * g
    M = [[0] * n for _ in range(n)]
    for (i, j), c in q.as_pair_dicts()[0].items():
        M[i - 1][j - 1], M[j - 1][i - 1] = c, -c
    assert Matrix(M).rank() == n


def test_link_examples():
    assert from_link([[0, 1, 1], [1, 0, 1], [1, 1, 0]]).relations == ((1, 1, 0), (-1, 0, 1))
    assert from_link([[0] * 3 for _ in range(3)]).relations == ((0, 0, 0), (0, 0, 0))
    assert cup_rank(from_link([[0, 1, 1], [1, 0, 1], [1, 1, 0]])) == 2
    assert cup_rank(from_link([[0, 5], [5, 0]]), 5) == 0
    assert cup_rank(QuadraticPresentation.free(3)) == 0
    with pytest.raises(ValueError):
        cup_rank(from_link([[0, 5], [5, 0]]), 6)


def test_small_arrangements():
    assert rank2_flats([[1, 0], [0, 1]]).sorted_lines() == [[1, 2]]
    q = from_arrangement(MatroidLines(2, [[1, 2]]))
    assert q.relations == ((1,), (-1,))
    assert cup_rank(from_arrangement(MatroidLines(3, [[1, 2, 3]]))) == 2
