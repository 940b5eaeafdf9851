import random
from fractions import Fraction

from liesub.linalg import Span, nullspace, rank, rref, solve


def F(x):
    return Fraction(x)


def test_rref_pivots():
    rows = [[F(2), F(4)], [F(1), F(2)]]
    assert rref(rows, 2) == [0]
    assert rows[0] == [F(1), F(2)]


def test_rank():
    assert rank([[F(1), F(2)], [F(2), F(4)]], 2) == 1
    assert rank([[F(1), F(0)], [F(0), F(1)]], 2) == 2


def test_solve_consistent_and_inconsistent():
    A = [[F(1), F(1)], [F(1), F(-1)]]
    sol = solve(A, [F(3), F(1)], 2)
    assert sol == [F(2), F(1)]
    assert solve([[F(1), F(1)], [F(2), F(2)]], [F(1), F(3)], 2) is None


def test_nullspace_zeroes_matrix():
    rng = random.Random(3)
    for _ in range(25):
        m, n = rng.randint(1, 5), rng.randint(1, 6)
        A = [[F(rng.randint(-3, 3)) for _ in range(n)] for _ in range(m)]
        for v in nullspace(A, n):
            for row in A:
                assert sum(a * b for a, b in zip(row, v)) == 0
        assert rank(A, n) + len(nullspace(A, n)) == n


def test_span_incremental():
    span = Span(3)
    assert span.add([F(1), F(1), F(0)])
    assert not span.add([F(2), F(2), F(0)])
    assert span.add([F(0), F(1), F(1)])
    assert span.dim == 2
    assert span.contains([F(1), F(0), F(-1)])
    assert not span.contains([F(0), F(0), F(1)])
