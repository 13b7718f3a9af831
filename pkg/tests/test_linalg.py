"""Exact sparse linear algebra: elimination, kernels, images, intersections,
quotients.  Everything here must hold exactly; there are no tolerances."""

import random

import pytest

from almostcomplex.coeffring import GaussianRational, rat
from almostcomplex.errors import NotASubspace
from almostcomplex.linalg import (
    ExactMatrix,
    Subspace,
    image_basis,
    kernel_and_image,
    kernel_basis,
    quotient_dim,
    quotient_info,
    rref,
    subspace_intersect,
)


def random_sparse(rng, rows, cols, fill=0.15):
    entries = {}
    for r in range(rows):
        for c in range(cols):
            if rng.random() < fill:
                entries[(r, c)] = rat(rng.randint(-5, 5), rng.randint(1, 3))
    return ExactMatrix(rows, cols, entries)


class TestRref:
    def test_identity(self):
        I = ExactMatrix.identity(4, rat(1))
        R, pivots = rref(I)
        assert R == I
        assert pivots == [0, 1, 2, 3]

    def test_zero(self):
        Z = ExactMatrix.zeros(3, 5)
        R, pivots = rref(Z)
        assert R.is_zero()
        assert pivots == []

    def test_gaussian_rank_one(self):
        i = GaussianRational(0, 1)
        M = ExactMatrix.from_dense(
            [[GaussianRational(1), i], [-i, GaussianRational(1)]]
        )
        _, pivots = rref(M)
        assert len(pivots) == 1

    def test_idempotent(self):
        rng = random.Random(1)
        for _ in range(5):
            M = random_sparse(rng, 8, 10)
            R, p1 = rref(M)
            R2, p2 = rref(R)
            assert R == R2 and p1 == p2


class TestKernelImage:
    def test_kernel_of_identity(self):
        assert kernel_basis(ExactMatrix.identity(5, rat(1))).dim == 0

    def test_kernel_of_row(self):
        M = ExactMatrix.from_dense([[rat(1), rat(1)]])
        ker = kernel_basis(M)
        assert ker.dim == 1
        (col,) = ker.columns()
        assert col[0] == -col[1]

    def test_rank_nullity_and_exact_annihilation(self):
        rng = random.Random(42)
        M = random_sparse(rng, 20, 30, fill=0.12)
        ker, im = kernel_and_image(M)
        assert ker.dim + im.dim == 30
        for col in ker.columns():
            assert M.apply(col) == {}

    def test_image_columns_come_from_matrix(self):
        M = ExactMatrix.from_dense([[rat(1), rat(2)], [rat(2), rat(4)]])
        im = image_basis(M)
        assert im.dim == 1
        (col,) = im.columns()
        assert col == {0: rat(1), 1: rat(2)}


def span(ambient, *vectors):
    return Subspace.from_spanning_columns(ambient, list(vectors))


class TestSubspaces:
    def test_self_intersection(self):
        A = span(4, {0: rat(1)}, {1: rat(1)})
        B = span(4, {0: rat(1), 1: rat(1)}, {1: rat(1)})
        got = subspace_intersect(A, B)
        assert got.dim == 2
        assert A.contains_all(got) and got.contains_all(A)

    def test_coordinate_planes(self):
        A = span(3, {0: rat(1)}, {1: rat(1)})
        B = span(3, {1: rat(1)}, {2: rat(1)})
        got = subspace_intersect(A, B)
        assert got.dim == 1
        (col,) = got.columns()
        keys = set(col)
        assert keys == {1}

    def test_random_dimension_bound_and_membership(self):
        rng = random.Random(9)
        for _ in range(5):
            A = Subspace.from_spanning_columns(
                8, [random_sparse(rng, 8, 1, 0.5).column(0) for _ in range(4)]
            )
            B = Subspace.from_spanning_columns(
                8, [random_sparse(rng, 8, 1, 0.5).column(0) for _ in range(4)]
            )
            got = subspace_intersect(A, B)
            assert got.dim >= A.dim + B.dim - 8
            assert A.contains_all(got)
            assert B.contains_all(got)

    def test_dependent_basis_rejected(self):
        M = ExactMatrix.from_dense([[rat(1), rat(2)], [rat(2), rat(4)]])
        with pytest.raises(ValueError):
            Subspace(2, M)


class TestQuotients:
    def test_space_by_itself(self):
        A = span(3, {0: rat(1)}, {2: rat(1)})
        assert quotient_dim(A, A) == 0

    def test_by_zero(self):
        A = span(3, {0: rat(1)}, {2: rat(1)})
        assert quotient_dim(A, Subspace.zero(3)) == 2

    def test_three_by_diagonal(self):
        A = span(4, {0: rat(1)}, {1: rat(1)}, {2: rat(1)})
        B = span(4, {0: rat(1), 1: rat(1)})
        assert quotient_dim(A, B) == 2

    def test_not_a_subspace(self):
        A = span(3, {0: rat(1)})
        B = span(3, {1: rat(1)})
        with pytest.raises(NotASubspace):
            quotient_dim(A, B)

    def test_representatives_are_independent_mod_denominator(self):
        A = span(4, {0: rat(1)}, {1: rat(1)}, {2: rat(1)})
        B = span(4, {0: rat(1), 1: rat(1)})
        q, reps = quotient_info(A, B)
        assert q == 2 and len(reps) == 2
        cols = A.columns()
        chosen = Subspace.from_spanning_columns(4, [cols[i] for i in reps])
        assert quotient_dim(chosen.sum_with(B), B) == 2
