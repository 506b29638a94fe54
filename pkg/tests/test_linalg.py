import pytest
import numpy as np
from fractions import Fraction
import sys
import os

# Add src to path
sys.path.append(os.path.join(os.path.dirname(__file__), '..', 'src'))

from cohom_config import LinalgError
from cohom_linalg import (
    SparseRationalMatrix,
    Subspace,
    intersect,
    kernel_basis,
    rank,
    rank_mod_p,
    solve,
    subspace_sum,
)


def random_matrix(rng, nrows, ncols, density=0.4, low=-3, high=4):
    dense = rng.integers(low, high, size=(nrows, ncols))
    mask = rng.random((nrows, ncols)) < density
    dense = dense * mask
    triples = [(r, c, int(dense[r, c])) for r in range(nrows) for c in range(ncols) if dense[r, c]]
    return SparseRationalMatrix.from_triples(nrows, ncols, triples), dense


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def test_from_triples_sums_duplicates():
    A = SparseRationalMatrix.from_triples(2, 2, [(0, 1, 1), (0, 1, Fraction(1, 2)), (1, 0, 3), (1, 0, -3)])
    assert A.get(0, 1) == Fraction(3, 2)
    assert A.get(1, 0) == 0
    assert A.nnz == 1


def test_rank_matches_numpy(rng):
    for _ in range(20):
        A, dense = random_matrix(rng, 7, 9)
        assert rank(A) == np.linalg.matrix_rank(dense.astype(float))
        assert rank(A, modular_prepass=False) == rank(A, modular_prepass=True)


def test_rank_of_low_rank_product(rng):
    B, b = random_matrix(rng, 8, 3, density=1.0)
    C, c = random_matrix(rng, 3, 8, density=1.0)
    A = B @ C
    assert rank(A) == np.linalg.matrix_rank((b @ c).astype(float))
    assert rank(A) <= 3


def test_rank_mod_p_never_exceeds_rank():
    # det 6 vanishes mod 2 and mod 3
    A = SparseRationalMatrix.from_triples(2, 2, [(0, 0, 2), (0, 1, 1), (1, 1, 3)])
    assert rank(A) == 2
    assert rank_mod_p(A, 2) == 1
    assert rank_mod_p(A, 3) == 1
    assert rank_mod_p(A, 5) == 2
    half = SparseRationalMatrix.from_triples(1, 1, [(0, 0, Fraction(1, 2))])
    assert rank_mod_p(half, 2) is None


def test_kernel_vectors_are_annihilated(rng):
    for _ in range(10):
        A, dense = random_matrix(rng, 5, 8)
        K = kernel_basis(A)
        assert K.dim == 8 - rank(A)
        for v in K.basis():
            assert not A.apply(v)


def test_solve_consistent_and_inconsistent():
    A = SparseRationalMatrix.from_triples(3, 2, [(0, 0, 1), (1, 1, 2), (2, 0, 1), (2, 1, 2)])
    x = solve(A, {0: Fraction(1), 1: Fraction(4), 2: Fraction(5)})
    assert x is not None
    assert A.apply(x) == {0: 1, 1: 4, 2: 5}
    assert solve(A, {0: Fraction(1), 1: Fraction(4), 2: Fraction(0)}) is None


def test_solve_rejects_bad_index():
    A = SparseRationalMatrix.identity(2)
    with pytest.raises(LinalgError):
        solve(A, {5: Fraction(1)})


def test_subspace_rref_and_membership():
    S = Subspace(4, [{0: 2, 1: 2}, {1: 1, 2: 1}])
    assert S.dim == 2
    assert S.pivots == [0, 1]
    assert S.contains({0: 1, 2: -1})
    assert not S.contains({3: 1})
    assert S.complement_indices() == [2, 3]
    assert S.coordinates({0: 1, 1: 2, 2: 1}) == [1, 2]


def test_intersect_and_sum():
    S = Subspace(3, [{0: 1}, {1: 1}])
    T = Subspace(3, [{1: 1}, {2: 1}])
    I = intersect(S, T)
    assert I.dim == 1
    assert I.contains({1: 1})
    assert subspace_sum(S, T).dim == 3
    assert I.is_subspace_of(S) and I.is_subspace_of(T)


def test_kron_and_transpose():
    A = SparseRationalMatrix.from_triples(2, 2, [(0, 1, 1)])
    B = SparseRationalMatrix.from_triples(2, 2, [(1, 0, 2)])
    K = A.kron(B)
    assert K.shape == (4, 4)
    assert K.get(0 * 2 + 1, 1 * 2 + 0) == 2
    assert A.transpose().get(1, 0) == 1
    assert (A @ B).get(0, 0) == 2


def test_dump_load_rationals():
    A = SparseRationalMatrix.from_triples(2, 3, [(0, 2, Fraction(-3, 7)), (1, 0, 5)])
    text = A.dump()
    assert "-3/7" in text
    assert SparseRationalMatrix.load(text) == A
