from hypothesis import given, settings, strategies as st
import sympy

from pgon_lattices.intlinalg import (hermite_rows, identity, kernel_basis, matmul, matvec,
                                     smith_normal_form, solve_integer)

matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_smith_form(a):
    s = smith_normal_form(a)
    d = matmul(matmul(s.U, a), s.V)
    for i, row in enumerate(d):
        for j, x in enumerate(row):
            assert x == (s.diagonal[i] if i == j and i < len(s.diagonal) else 0)
    nz = [x for x in s.diagonal if x]
    assert all(x > 0 for x in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert matmul(s.U, s.U_inv) == identity(len(a))
    assert matmul(s.V, s.V_inv) == identity(len(a[0]))
    assert s.rank == sympy.Matrix(a).rank()


def test_smith_matches_sympy():
    from sympy.matrices.normalforms import smith_normal_form as snf
    a = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    ours = smith_normal_form(a).diagonal
    theirs = [abs(x) for x in snf(sympy.Matrix(a)).diagonal()]
    assert ours == theirs == [2, 6, 12]


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_kernel_basis(a):
    basis = kernel_basis(a)
    assert len(basis) == len(a[0]) - sympy.Matrix(a).rank()
    for v in basis:
        assert not any(matvec(a, v))


@settings(max_examples=100, deadline=None)
@given(matrices, st.data())
def test_solve_integer_finds_planted_solution(a, data):
    x = data.draw(st.lists(st.integers(-5, 5), min_size=len(a[0]), max_size=len(a[0])))
    b = matvec(a, x)
    y = solve_integer(a, b)
    assert y is not None and matvec(a, y) == b


def test_solve_integer_rejects_non_integral():
    assert solve_integer([[2, 4]], [3]) is None


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_hermite_rows_span(a):
    n = len(a[0])
    h = hermite_rows(a, n)
    assert sympy.Matrix(h).rank() == len(h) if h else True
    # same row lattice: both reduce to the same Hermite form
    assert hermite_rows(h, n) == h
    assert hermite_rows(a + h, n) == h
