"""Smith normal form and cokernel presentations, exactly over Z."""

import random
from math import gcd

import pytest
from sympy import Matrix as SymMatrix
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from milnor_lab import IntMatrix, cokernel, determinant, smith_normal_form


def _check_decomposition(matrix, dec):
    assert dec.U.matmul(dec.S).matmul(dec.V) == matrix
    assert abs(determinant(dec.U)) == 1
    assert abs(determinant(dec.V)) == 1
    diag = dec.diagonal()
    assert all(d >= 0 for d in diag)
    nonzero = [d for d in diag if d]
    assert diag[:len(nonzero)] == tuple(nonzero)  # zeros trail
    for a, b in zip(nonzero, nonzero[1:]):
        assert b % a == 0
    # off-diagonal entries vanish
    for i in range(dec.S.rows):
        for j in range(dec.S.cols):
            if i != j:
                assert dec.S.entries[i][j] == 0


def test_snf_diag_2_3():
    dec = smith_normal_form(IntMatrix.from_rows([[2, 0], [0, 3]]))
    assert dec.diagonal() == (1, 6)
    _check_decomposition(IntMatrix.from_rows([[2, 0], [0, 3]]), dec)


def test_snf_zero_matrix():
    matrix = IntMatrix.zeros(2, 3)
    dec = smith_normal_form(matrix)
    assert dec.diagonal() == (0, 0)
    _check_decomposition(matrix, dec)


def test_snf_2x2_example():
    matrix = IntMatrix.from_rows([[2, 4], [6, 8]])
    dec = smith_normal_form(matrix)
    # d1 = gcd of entries = 2, d1*d2 = |det| = 8
    assert dec.diagonal() == (2, 4)
    _check_decomposition(matrix, dec)


@pytest.mark.parametrize("rows,cols", [(0, 0), (0, 3), (3, 0), (1, 1)])
def test_snf_degenerate_shapes(rows, cols):
    matrix = IntMatrix.zeros(rows, cols)
    dec = smith_normal_form(matrix)
    _check_decomposition(matrix, dec)


def test_snf_random_reconstruction():
    rng = random.Random(2024)
    for _ in range(500):
        rows = rng.randint(1, 6)
        cols = rng.randint(1, 6)
        matrix = IntMatrix.from_rows([
            [rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)
        ])
        dec = smith_normal_form(matrix)
        _check_decomposition(matrix, dec)
        if rows == cols:
            product = 1
            for d in dec.diagonal():
                product *= d
            assert abs(determinant(matrix)) == product


def test_snf_matches_sympy_invariant_factors():
    rng = random.Random(99)
    for _ in range(60):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        data = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
        ours = smith_normal_form(IntMatrix.from_rows(data)).diagonal()
        theirs = sympy_snf(SymMatrix(data))
        theirs_diag = [abs(int(theirs[i, i])) for i in range(min(rows, cols))]
        assert [d for d in ours if d] == [d for d in theirs_diag if d]


def test_snf_deterministic():
    rng = random.Random(5)
    for _ in range(50):
        data = [[rng.randint(-9, 9) for _ in range(4)] for _ in range(4)]
        first = smith_normal_form(IntMatrix.from_rows(data))
        second = smith_normal_form(IntMatrix.from_rows(data))
        assert first == second


def test_coefficient_growth_handled_exactly():
    # ill-conditioned integer matrix; everything must stay exact
    matrix = IntMatrix.from_rows([
        [998, 999, 997, 996],
        [995, 994, 993, 992],
        [991, 990, 989, 988],
        [987, 986, 985, 984],
    ])
    dec = smith_normal_form(matrix)
    _check_decomposition(matrix, dec)


def test_cokernel_shift_minus_identity():
    coker = cokernel(IntMatrix.from_rows([[-1, 1], [1, -1]]))
    assert (coker.free_rank, coker.torsion) == (1, ())


def test_cokernel_zero_map():
    coker = cokernel(IntMatrix.zeros(4, 4))
    assert (coker.free_rank, coker.torsion) == (4, ())


def test_cokernel_shift_by_two_on_z4():
    perm = [[0] * 4 for _ in range(4)]
    for a in range(4):
        perm[(a + 2) % 4][a] = 1
        perm[a][a] -= 1
    coker = cokernel(IntMatrix.from_rows(perm))
    assert (coker.free_rank, coker.torsion) == (2, ())


def test_cokernel_with_torsion():
    coker = cokernel(IntMatrix.from_rows([[2, 0], [0, 3]]))
    assert (coker.free_rank, coker.torsion) == (0, (6,))


def test_cyclic_shift_cokernels():
    # orbit oracle: residue classes mod gcd(m, k)
    for m in range(1, 31):
        for k in range(m):
            mat = [[0] * m for _ in range(m)]
            for a in range(m):
                mat[(a + k) % m][a] += 1
                mat[a][a] -= 1
            coker = cokernel(IntMatrix.from_rows(mat))
            assert coker.free_rank == gcd(m, k)  # gcd(m, 0) = m
            assert coker.torsion == ()
