"""Exact integer linear algebra: Smith and Hermite normal forms.

Matrices are plain lists of rows of Python ints, so nothing overflows.
"""
from __future__ import annotations

from dataclasses import dataclass

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def copy(a: Matrix) -> Matrix:
    return [list(row) for row in a]


def transpose(a: Matrix, ncols: int | None = None) -> Matrix:
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Matrix, x: list[int]) -> list[int]:
    return [sum(r * v for r, v in zip(row, x)) for row in a]


@dataclass
class SmithForm:
    """U @ A @ V == D with U, V unimodular; inverses are tracked as well."""

    diagonal: list[int]
    U: Matrix
    V: Matrix
    U_inv: Matrix
    V_inv: Matrix
    rows: int
    cols: int

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def smith_normal_form(a: Matrix, ncols: int | None = None) -> SmithForm:
    """Smith normal form with transforms.

    Args:
        a: m x n integer matrix as a list of rows.
        ncols: column count, needed only when m == 0.

    Returns:
        SmithForm whose diagonal entries satisfy d_1 | d_2 | ... (zeros last).
    """
    m = len(a)
    n = len(a[0]) if m else (ncols or 0)
    A = copy(a)
    U, Ui = identity(m), identity(m)
    V, Vi = identity(n), identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for row in Ui:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for M in (A, V):
            for row in M:
                row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(src, dst, q):
        # row_dst += q * row_src
        if q == 0:
            return
        A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]
        for row in Ui:
            row[src] -= q * row[dst]

    def add_col(src, dst, q):
        if q == 0:
            return
        for M in (A, V):
            for row in M:
                row[dst] += q * row[src]
        Vi[src] = [x - q * y for x, y in zip(Vi[src], Vi[dst])]

    def negate_row(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]
        for row in Ui:
            row[i] = -row[i]

    t = 0
    while t < min(m, n):
        # smallest nonzero pivot in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < best[0]):
                    best = (abs(A[i][j]), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(t, i, -(A[i][t] // p))
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(t, j, -(A[t][j] // p))
                    if A[t][j]:
                        done = False
            if done:
                # divisibility d_t | rest
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if A[i][j] % p), None)
                if bad is None:
                    break
                add_row(bad[0], t, 1)
                continue
            # move the smallest remaining entry of row/column t into the pivot
            cand = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
            cand += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
            _, i, j = min(cand)
            swap_rows(t, i)
            swap_cols(t, j)
        if A[t][t] < 0:
            negate_row(t)
        t += 1
    diag = [A[i][i] for i in range(min(m, n))]
    return SmithForm(diag, U, V, Ui, Vi, m, n)


def kernel_basis(a: Matrix, ncols: int | None = None) -> Matrix:
    """Integer basis of {x : a x = 0}, returned as a list of column vectors."""
    snf = smith_normal_form(a, ncols)
    r = snf.rank
    return [[snf.V[i][j] for i in range(snf.cols)] for j in range(r, snf.cols)]


def solve_integer(a: Matrix, b: list[int], ncols: int | None = None) -> list[int] | None:
    """One integer solution of a x = b, or None if there is none."""
    snf = smith_normal_form(a, ncols)
    c = matvec(snf.U, b) if snf.rows else []
    y = [0] * snf.cols
    for i, ci in enumerate(c):
        d = snf.diagonal[i] if i < len(snf.diagonal) else 0
        if d == 0:
            if ci != 0:
                return None
        elif ci % d:
            return None
        else:
            y[i] = ci // d
    return matvec(snf.V, y) if snf.cols else []


def hermite_rows(gens: Matrix, n: int) -> Matrix:
    """Row-style Hermite normal form of the lattice spanned by `gens` in Z^n.

    Returns nonzero rows only, echelon with positive pivots and entries
    above each pivot reduced into [0, pivot).
    """
    rows = [list(g) for g in gens if any(g)]
    out: Matrix = []
    col = 0
    while rows and col < n:
        active = [r for r in rows if r[col]]
        if not active:
            col += 1
            continue
        rest = [r for r in rows if not r[col]]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            piv = active[0]
            nxt = [piv]
            for r in active[1:]:
                q = r[col] // piv[col]
                r = [x - q * y for x, y in zip(r, piv)]
                if r[col]:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            active = nxt
        piv = active[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        out.append(piv)
        rows = rest
        col += 1
    # reduce entries above pivots
    for i in range(len(out)):
        pc = next(j for j, x in enumerate(out[i]) if x)
        for k in range(i):
            q = out[k][pc] // out[i][pc]
            if q:
                out[k] = [x - q * y for x, y in zip(out[k], out[i])]
    return out
