"""Dense Gaussian elimination for the small steady-state systems."""

from fractions import Fraction

from .exceptions import NumericalError


def solve_dense(a, b, exact=False):
    """Solve ``a @ x = b`` by Gaussian elimination with partial pivoting.

    Rows are swapped so that the pivot is the largest remaining entry in its
    column; the column order of ``a`` is kept, so callers decide which unknown
    is eliminated first.

    With ``exact=True`` every coefficient is converted to a ``Fraction`` (float
    inputs are represented exactly) and the elimination is carried out in
    rational arithmetic.  The returned entries are then Fractions.

    Raises NumericalError when no nonzero pivot exists.
    """
    conv = Fraction if exact else float
    m = [[conv(v) for v in row] for row in a]
    x = [conv(v) for v in b]
    n = len(m)
    if any(len(row) != n for row in m) or len(x) != n:
        raise ValueError("expected a square system")

    for k in range(n):
        p = max(range(k, n), key=lambda i: abs(m[i][k]))
        if m[p][k] == 0:
            raise NumericalError(f"singular system: no pivot in column {k}")
        if p != k:
            m[k], m[p] = m[p], m[k]
            x[k], x[p] = x[p], x[k]
        pivot_row = m[k]
        for i in range(k + 1, n):
            factor = m[i][k] / pivot_row[k]
            if factor:
                row = m[i]
                for j in range(k, n):
                    row[j] -= factor * pivot_row[j]
                x[i] -= factor * x[k]

    for k in range(n - 1, -1, -1):
        acc = x[k]
        for j in range(k + 1, n):
            acc -= m[k][j] * x[j]
        x[k] = acc / m[k][k]
    return x
