"""Dense linear solves that stay exact over Fraction / GaussRat entries.

Floating (mpmath) entries use partial pivoting on absolute value; exact entries
pivot on the first nonzero entry, which keeps the arithmetic exact.
"""

from __future__ import annotations

from .scalar import is_exact


class SingularSystem(ArithmeticError):
    def __init__(self, column):
        super().__init__(f"singular system at column {column}")
        self.column = column


def solve(A, b, tol=None):
    """Solve ``A x = b`` by Gaussian elimination; ``A`` is a list of rows."""
    n = len(A)
    if n == 0:
        return []
    M = [list(row) + [rhs] for row, rhs in zip(A, b)]
    exact = all(is_exact(v) for row in M for v in row)
    for col in range(n):
        if exact:
            piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        else:
            piv = max(range(col, n), key=lambda r: abs(M[r][col]))
            if tol is not None and abs(M[piv][col]) <= tol:
                piv = None
            elif M[piv][col] == 0:
                piv = None
        if piv is None:
            raise SingularSystem(col)
        M[col], M[piv] = M[piv], M[col]
        pivot_row = M[col]
        p = pivot_row[col]
        for r in range(col + 1, n):
            f = M[r][col]
            if f == 0:
                continue
            f = f / p
            row = M[r]
            for c in range(col, n + 1):
                row[c] = row[c] - f * pivot_row[c]
    x = [0] * n
    for r in range(n - 1, -1, -1):
        s = M[r][n]
        for c in range(r + 1, n):
            s = s - M[r][c] * x[c]
        x[r] = s / M[r][r]
    return x
