"""Evaluation-rank oracle: word enumeration, exact rank, component
certification, independence certificates."""

from fractions import Fraction
from math import factorial

import pytest

from grasgk.scalar import FieldSpec, Scalar
from grasgk.grassmann import GradingSpec, TruncationError
from grasgk.freealg import MultiDegree, y, z
from grasgk.oracle import (
    EvalMatrix,
    component_dimension,
    evaluation_matrix,
    independence_check,
    make_points,
    rank,
    required_truncation,
    words_of_multidegree,
)
from grasgk.spanning import enumerate_spanning, spanning_for_multidegree

Q = FieldSpec(0)
F5 = FieldSpec(5)


def multiset_permutations(counts):
    total = factorial(sum(counts))
    for c in counts:
        total //= factorial(c)
    return total


def test_words_of_multidegree_counts_and_degree():
    d = MultiDegree((2, 0), (1, 1))
    words = words_of_multidegree(d)
    assert len(words) == multiset_permutations([2, 1, 1])
    assert len(set(words)) == len(words)
    for word in words:
        assert MultiDegree.of_word(word, 2) == d


def test_words_empty_multidegree():
    assert words_of_multidegree(MultiDegree((0,), (0,))) == [()]


def mk_matrix(field, columns):
    cols = [
        {key: Scalar(field, val) for key, val in col.items()} for col in columns
    ]
    return EvalMatrix(cols, field, 1)


def test_rank_simple_cases():
    assert rank(mk_matrix(Q, [])) == 0
    assert rank(mk_matrix(Q, [{}])) == 0
    assert rank(mk_matrix(Q, [{(0, 1): 1}])) == 1
    # two independent columns
    assert rank(mk_matrix(Q, [{(0, 1): 1}, {(0, 2): 1}])) == 2
    # duplicate column does not raise the rank
    assert rank(mk_matrix(Q, [{(0, 1): 2}, {(0, 1): Fraction(1, 3)}])) == 1
    # dependent combination
    cols = [
        {(0, 1): 1, (0, 2): 1},
        {(0, 1): 1, (0, 2): -1},
        {(0, 1): 2},
    ]
    assert rank(mk_matrix(Q, cols)) == 2


def test_rank_modular():
    # columns equal mod 5 but not over Z
    assert rank(mk_matrix(F5, [{(0, 1): 1}, {(0, 1): 6 % 5}])) == 1
    assert rank(mk_matrix(F5, [{(0, 1): 1}, {(0, 2): 4}])) == 2


def test_make_points_requires_truncation():
    g = GradingSpec("kstar", 2)
    d = MultiDegree((1,), (1,))
    need = required_truncation(1, d, g)
    with pytest.raises(TruncationError):
        make_points(g, Q, 1, d, need - 1, 4, seed=0)
    points = make_points(g, Q, 1, d, need, 8, seed=0)
    assert len(points) == 8
    for pt in points:
        for v, elem in pt.assignment.items():
            assert elem.is_homogeneous(g, v.parity)


def test_rank_monotone_in_points():
    g = GradingSpec("inf")
    d = MultiDegree((1,), (2,))
    n = required_truncation(1, d, g)
    polys = [m.to_freepoly(Q) for m in spanning_for_multidegree(g, Q, d)]
    points = make_points(g, Q, 1, d, n, 10, seed=3)
    prev = 0
    for used in range(1, len(points) + 1):
        r = rank(evaluation_matrix(polys, points[:used], g, Q, n))
        assert r >= prev
        prev = r
    assert prev == len(polys)


def test_degree_four_basis_is_independent():
    # all 8 canonical monomials of total degree 4 (inf, char 0, m=1)
    g = GradingSpec("inf")
    monos = enumerate_spanning(g, Q, 1, 4)
    assert len(monos) == 8
    verdict = independence_check(monos, g, Q, 24, points_budget=24, seed=1)
    assert verdict.independent
    assert verdict.rank == 8


def test_dependent_family_yields_kernel_certificate():
    # duplicate a monomial: the kernel certificate must surface
    g = GradingSpec("inf")
    monos = enumerate_spanning(g, Q, 1, 2)
    family = list(monos) + [monos[0]]
    verdict = independence_check(family, g, Q, 20, points_budget=16, seed=1)
    assert not verdict.independent
    assert verdict.rank == len(monos)
    assert verdict.kernel is not None
    assert len(verdict.kernel) == len(family)
    nonzero = [c for c in verdict.kernel if c not in ("0", "0/1")]
    assert nonzero and nonzero[0] == "1"


def test_component_dimension_certifies_buckets():
    cases = [
        ("kstar:2", 0, MultiDegree((1,), (2,))),
        ("kstar:2", 5, MultiDegree((1,), (2,))),
        ("inf", 0, MultiDegree((1, 1), (1, 0))),
        ("k:2", 0, MultiDegree((0, 1), (2, 1))),
        ("k:2", 5, MultiDegree((1, 0), (1, 1))),
    ]
    for label, p, d in cases:
        g = GradingSpec.parse(label)
        field = FieldSpec(p)
        m = d.m
        n = required_truncation(m, d, g) + 2
        res = component_dimension(g, field, m, d, n, points_budget=32, seed=7)
        assert res.exact, (label, p, d.to_dict(), res.lower, res.upper)
        assert res.lower == res.upper == len(spanning_for_multidegree(g, field, d))


def test_component_dimension_reproducible():
    g = GradingSpec("inf")
    d = MultiDegree((1,), (2,))
    n = required_truncation(1, d, g)
    a = component_dimension(g, Q, 1, d, n, points_budget=16, seed=11)
    b = component_dimension(g, Q, 1, d, n, points_budget=16, seed=11)
    assert (a.lower, a.upper, a.points) == (b.lower, b.upper, b.points)


def test_zero_multidegree_component():
    g = GradingSpec("inf")
    d = MultiDegree((0,), (0,))
    n = required_truncation(1, d, g)
    res = component_dimension(g, Q, 1, d, n, points_budget=8, seed=0)
    assert res.exact and res.lower == res.upper == 1
