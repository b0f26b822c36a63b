from fractions import Fraction as F
from itertools import combinations

from hypothesis import given, settings, strategies as st

from strata.lp import feasible_point, maximise


def _solve(a, b):
    # Gauss-Jordan on a square system; None if singular
    n = len(a)
    rows = [list(map(F, r)) + [F(v)] for r, v in zip(a, b)]
    for c in range(n):
        piv = next((r for r in range(c, n) if rows[r][c] != 0), None)
        if piv is None:
            return None
        rows[c], rows[piv] = rows[piv], rows[c]
        rows[c] = [x / rows[c][c] for x in rows[c]]
        for r in range(n):
            if r != c and rows[r][c]:
                f = rows[r][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
    return [rows[r][n] for r in range(n)]


def brute_force(cost, a, b):
    """Best basic feasible solution by trying every column basis."""
    k, n = len(a), len(cost)
    best = None
    for cols in combinations(range(n), k):
        sub = [[a[r][c] for c in cols] for r in range(k)]
        sol = _solve(sub, b)
        if sol is None or any(x < 0 for x in sol):
            continue
        val = sum(cost[c] * x for c, x in zip(cols, sol))
        if best is None or val > best:
            best = val
    return best


def test_small_cases():
    assert maximise([1, 1], [[1, 1]], [3])[2] == 3
    assert maximise([1, 0], [[1, -1]], [0])[0] == "unbounded"
    assert maximise([1, 1], [[1, 1]], [-1])[0] == "infeasible"
    assert feasible_point([[1, 2]], [4], 2) in ([4, 0], [0, 2])


small = st.integers(-3, 3)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 3).flatmap(lambda k: st.integers(k, 5).flatmap(lambda n: st.tuples(
    st.lists(st.integers(0, 3), min_size=n, max_size=n),
    st.lists(st.lists(small, min_size=n, max_size=n), min_size=k, max_size=k),
    st.lists(st.integers(0, 6), min_size=k, max_size=k)))))
def test_against_vertex_enumeration(problem):
    cost, a, b = problem
    # a box row keeps the problem bounded
    a = a + [[1] * len(cost)]
    b = b + [10]
    a = [row + [0] * i + [1] + [0] * (len(a) - 1 - i) for i, row in enumerate(a)]
    cost = cost + [0] * len(b)
    status, x, value = maximise(cost, a, b)
    expected = brute_force(cost, a, b)
    if expected is None:
        assert status == "infeasible"
        return
    assert status == "optimal" and value == expected
    assert all(v >= 0 for v in x)
    assert all(sum(F(c) * v for c, v in zip(row, x)) == rhs for row, rhs in zip(a, b))
