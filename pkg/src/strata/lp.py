"""Small exact linear programs over the rationals.

Dense tableau simplex with Bland's rule, so it terminates without any
perturbation.  Sizes here are tens of variables, so nothing cleverer is
needed.
"""

from fractions import Fraction


class _Tableau:
    def __init__(self, rows, rhs, basis):
        self.rows = rows  # list of lists of Fraction
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r, c):
        row = self.rows[r]
        piv = row[c]
        self.rows[r] = row = [x / piv for x in row]
        self.rhs[r] /= piv
        for k in range(len(self.rows)):
            if k != r and self.rows[k][c] != 0:
                f = self.rows[k][c]
                self.rows[k] = [a - f * b for a, b in zip(self.rows[k], row)]
                self.rhs[k] -= f * self.rhs[r]
        self.basis[r] = c

    def reduced_costs(self, cost):
        # z_j - c_j style: maximise cost.x, entering column has positive value
        out = list(cost)
        for r, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                out = [o - cb * a for o, a in zip(out, self.rows[r])]
        return out

    def value(self, cost):
        return sum((cost[b] * self.rhs[r] for r, b in enumerate(self.basis)), Fraction(0))

    def optimise(self, cost, allowed):
        """Maximise ``cost . x``; returns False if unbounded."""
        while True:
            red = self.reduced_costs(cost)
            enter = next((j for j in allowed if red[j] > 0), None)  # Bland: lowest index
            if enter is None:
                return True
            best = None
            for r, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = self.rhs[r] / a
                    key = (ratio, self.basis[r])
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is None:
                return False
            self.pivot(best[1], enter)


def maximise(cost, a_eq, b_eq):
    """Maximise ``cost . x`` subject to ``a_eq x = b_eq``, ``x >= 0``.

    Returns ``(status, x, value)`` with status one of ``"optimal"``,
    ``"infeasible"``, ``"unbounded"``.
    """
    n = len(cost)
    rows, rhs = [], []
    for row, b in zip(a_eq, b_eq):
        row = [Fraction(x) for x in row]
        b = Fraction(b)
        if b < 0:
            row, b = [-x for x in row], -b
        rows.append(row)
        rhs.append(b)
    k = len(rows)
    # phase one: artificial variable per row
    for r in range(k):
        rows[r] = rows[r] + [Fraction(int(i == r)) for i in range(k)]
    tab = _Tableau(rows, rhs, [n + r for r in range(k)])
    phase1 = [Fraction(0)] * n + [Fraction(-1)] * k
    tab.optimise(phase1, range(n + k))
    if tab.value(phase1) != 0:
        return "infeasible", None, None
    # drive remaining artificials out of the basis where possible
    for r in range(k):
        if tab.basis[r] >= n:
            col = next((j for j in range(n) if tab.rows[r][j] != 0), None)
            if col is not None:
                tab.pivot(r, col)
    keep = [r for r in range(k) if tab.basis[r] < n]
    tab.rows = [tab.rows[r][:n] for r in keep]
    tab.rhs = [tab.rhs[r] for r in keep]
    tab.basis = [tab.basis[r] for r in keep]
    full = [Fraction(c) for c in cost]
    if not tab.optimise(full, range(n)):
        return "unbounded", None, None
    x = [Fraction(0)] * n
    for r, b in enumerate(tab.basis):
        x[b] = tab.rhs[r]
    return "optimal", x, tab.value(full)


def feasible_point(a_eq, b_eq, n):
    status, x, _ = maximise([0] * n, a_eq, b_eq)
    return x if status == "optimal" else None
