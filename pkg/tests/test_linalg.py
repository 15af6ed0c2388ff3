import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import determinantal_divisors, int_det, row_lattice_contains, simple_hnf
from toruskit.exceptions import RankDeficientError, ShapeError
from toruskit.linalg import (
    Lattice,
    Matrix,
    determinant,
    hnf,
    integer_kernel,
    is_unimodular,
    preimage_lattice,
    rational_kernel_lattice,
    snf,
    solve_integer_linear,
    unimodular_inverse,
    xgcd,
)

F = Fraction


def small_matrices(max_dim=4, bound=9):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(st.lists(st.integers(-bound, bound), min_size=c, max_size=c),
                               min_size=r, max_size=r)))


def test_xgcd():
    for a, b in [(12, 18), (0, 5), (-4, 6), (7, 0), (0, 0)]:
        g, s, t = xgcd(a, b)
        assert g >= 0 and s * a + t * b == g


class TestMatrix:
    def test_fractions_normalised(self):
        m = Matrix.from_rows([[F(4, 2), F(1, 3)]])
        assert m[0, 0] == 2 and isinstance(m[0, 0], int)
        assert m[0, 1] == F(1, 3)

    def test_shape_checks(self):
        with pytest.raises(ShapeError):
            Matrix.from_rows([[1, 2], [3]])
        with pytest.raises(ShapeError):
            Matrix.identity(2) @ Matrix.identity(3)

    def test_arithmetic(self):
        a = Matrix.from_rows([[1, 2], [3, 4]])
        assert (a @ Matrix.identity(2)) == a
        assert (a - a).tolist() == [[0, 0], [0, 0]]
        assert a.T.tolist() == [[1, 3], [2, 4]]
        assert a.scale(F(1, 2)).tolist() == [[F(1, 2), 1], [F(3, 2), 2]]
        assert a.vstack(a).shape == (4, 2) and a.hstack(a).shape == (2, 4)

    def test_empty(self):
        z = Matrix.zeros(0, 3)
        assert z.shape == (0, 3) and z.tolist() == []


class TestHNF:
    def test_example(self):
        m = Matrix.from_rows([[2, 4], [1, 1]])
        h, u = hnf(m)
        assert h.tolist() == [[1, 1], [0, 2]]
        assert (u @ m).tolist() == [[1, 1], [0, 2]]
        # span equality: lattice points of [-6, 6]^2 reachable from either basis
        box = list(itertools.product(range(-6, 7), repeat=2))
        assert [p for p in box if row_lattice_contains(m.tolist(), p)] == \
            [p for p in box if row_lattice_contains(h.tolist(), p)]

    def test_identity(self):
        h, u = hnf(Matrix.identity(2))
        assert h == Matrix.identity(2) and u == Matrix.identity(2)

    def test_zero_rows_removed(self):
        h, u = hnf(Matrix.from_rows([[0, 0]]))
        assert h.shape == (0, 2)
        assert u.shape == (1, 1) and is_unimodular(u)

    def test_rejects_fractions(self):
        with pytest.raises(ValueError):
            hnf(Matrix.from_rows([[F(1, 2)]]))

    @settings(max_examples=150, deadline=None)
    @given(small_matrices())
    def test_matches_independent_hnf(self, rows):
        h, u = hnf(Matrix.from_rows(rows))
        assert h.tolist() == simple_hnf(rows)
        assert is_unimodular(u)


class TestSNF:
    def test_example(self):
        d, u, v = snf(Matrix.from_rows([[2, 0], [0, 3]]))
        assert d.tolist() == [[1, 0], [0, 6]]
        assert determinantal_divisors([[2, 0], [0, 3]]) == [1, 6]

    def test_identity(self):
        d, u, v = snf(Matrix.identity(3))
        assert d == u == v == Matrix.identity(3)

    def test_zero(self):
        d, _, _ = snf(Matrix.from_rows([[0]]))
        assert d.tolist() == [[0]]

    @settings(max_examples=150, deadline=None)
    @given(small_matrices())
    def test_postconditions(self, rows):
        m = Matrix.from_rows(rows)
        d, u, v = snf(m)
        assert (u @ m @ v) == d
        assert is_unimodular(u) and is_unimodular(v)
        diag = [d[i, i] for i in range(min(m.shape))]
        dk = determinantal_divisors(rows)
        prod = 1
        for k, x in enumerate(diag):
            prod *= x
            assert prod == dk[k]


class TestDeterminant:
    @settings(max_examples=100, deadline=None)
    @given(st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n),
                           min_size=n, max_size=n)))
    def test_against_laplace(self, rows):
        assert determinant(Matrix.from_rows(rows)) == int_det(rows)

    def test_rational(self):
        assert determinant(Matrix.from_rows([[F(1, 2), 1], [0, F(2, 3)]])) == F(1, 3)

    def test_unimodular(self):
        assert is_unimodular(Matrix.from_rows([[1, 1], [2, 1]]))
        assert is_unimodular(Matrix.identity(2))
        assert not is_unimodular(Matrix.from_rows([[2, 0], [0, 1]]))
        with pytest.raises(ShapeError):
            is_unimodular(Matrix.from_rows([[1, 0]]))

    def test_inverse(self):
        p = Matrix.from_rows([[2, 1], [1, 1]])
        assert p @ unimodular_inverse(p) == Matrix.identity(2)


def _brute_kernel(rows, bound):
    n = len(rows[0])
    out = []
    for u in itertools.product(range(-bound, bound + 1), repeat=n):
        if all(sum(F(a) * b for a, b in zip(r, u)) == 0 for r in rows):
            out.append(list(u))
    return out


class TestKernels:
    def test_example(self):
        lat = rational_kernel_lattice(Matrix.from_rows([[1, F(-1, 2)]]))
        assert lat.rows() == [[1, 2]]
        assert simple_hnf([u for u in _brute_kernel([[1, F(-1, 2)]], 10) if any(u)]) == [[1, 2]]

    def test_zero_row(self):
        assert rational_kernel_lattice(Matrix.zeros(1, 3)).basis == Matrix.identity(3)

    def test_injective(self):
        assert rational_kernel_lattice(Matrix.identity(2)).is_trivial()

    def test_saturated_against_scaled_rows(self):
        # kernel of [2, 4] is spanned by (2, -1), primitive
        lat = integer_kernel(Matrix.from_rows([[2, 4]]))
        assert lat.rows() == [[2, -1]]

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 2).flatmap(lambda r: st.lists(
        st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=3, max_size=3),
        min_size=r, max_size=r)))
    def test_contains_brute_force(self, rows):
        lat = rational_kernel_lattice(Matrix.from_rows(rows))
        for u in lat.rows():
            assert all(sum(a * b for a, b in zip(r, u)) == 0 for r in rows)
        for u in _brute_kernel(rows, 4):
            assert lat.contains(u)


class TestPreimage:
    def test_example(self):
        lat = preimage_lattice(Matrix.from_rows([[F(2, 3)]]), Lattice.full(1))
        assert lat.rows() == [[3]]

    def test_integral(self):
        sub = Lattice.from_generators([[1, 1]])
        assert preimage_lattice(Matrix.from_rows([[2, 5]]), sub) == sub

    def test_two_generators(self):
        lat = preimage_lattice(Matrix.from_rows([[F(1, 2), F(1, 3)]]), Lattice.full(2))
        assert lat.index_in_saturation() == 6
        assert lat.contains([2, 0]) and lat.contains([0, 3])
        brute = [list(u) for u in itertools.product(range(-12, 13), repeat=2)
                 if (F(u[0], 2) + F(u[1], 3)).denominator == 1 and any(u)]
        assert lat.rows() == simple_hnf(brute)

    def test_sublattice_restriction(self):
        sub = Lattice.from_generators([[1, 1, 0], [0, 0, 1]])
        b = Matrix.from_rows([[F(1, 4), F(1, 4), F(1, 3)]])
        lat = preimage_lattice(b, sub)
        brute = [list(u) for u in itertools.product(range(-8, 9), repeat=3)
                 if sub.contains(u) and (sum(F(x) * y for x, y in zip(b.row(0), u))).denominator == 1
                 and any(u)]
        assert lat.rows() == simple_hnf(brute)


class TestLattice:
    def test_membership(self):
        lat = Lattice.from_generators([[2, 0], [0, 3]])
        assert lat.contains([4, -3]) and not lat.contains([1, 0])
        assert not lat.contains([F(1, 2), 0])
        assert lat.contains_lattice(Lattice.from_generators([[4, 6]]))

    def test_trivial(self):
        t = Lattice.trivial(3)
        assert t.rank == 0 and t.contains([0, 0, 0]) and not t.contains([1, 0, 0])


class TestSolve:
    def test_identity(self):
        rhs = Matrix.from_rows([[1, 2], [3, 4]])
        res = solve_integer_linear(Matrix.identity(2), rhs)
        assert res.status == "integral" and res.solution == rhs

    def test_column(self):
        res = solve_integer_linear(Matrix.from_rows([[1], [2]]), Matrix.from_rows([[3], [6]]))
        assert res.status == "integral" and res.solution.tolist() == [[3]]

    def test_non_integral(self):
        res = solve_integer_linear(Matrix.from_rows([[2]]), Matrix.from_rows([[1]]))
        assert res.status == "non-integral" and res.solution is None
        assert res.rational_solution.tolist() == [[F(1, 2)]]

    def test_inconsistent(self):
        res = solve_integer_linear(Matrix.from_rows([[1], [1]]), Matrix.from_rows([[1], [2]]))
        assert res.status == "inconsistent"

    def test_rank_deficient(self):
        with pytest.raises(RankDeficientError):
            solve_integer_linear(Matrix.from_rows([[1, 1]]), Matrix.from_rows([[1]]))
