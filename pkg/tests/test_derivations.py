"""The derivation calculus: algebraic and Lie-type derivations, the Nijenhuis
tensor, the J action on forms, the twist of d, and the identity suite.

Expected tensors for the twisted torus models were derived by hand from the
bracket formula evaluated on frame pairs and are frozen here term for term.
"""

import random
from itertools import combinations

import pytest

from almostcomplex.coeffring import GaussianRational, TrigPoly, rat
from almostcomplex.derivations import (
    dc,
    form_J_action,
    identity_suite,
    iota_vform,
    jn_twist_tensor,
    lie_vform,
    nijenhuis,
    random_form,
)
from almostcomplex.errors import NotAlmostComplex
from almostcomplex.frames import Form, Model, VectorField, VectorForm, ext_d, wedge
from almostcomplex.models import example27_torus, t4_nonstandard

T4 = Model.torus(4)
SIN1 = TrigPoly.sin_mode(4, (1, 0, 0, 0))
COS1 = TrigPoly.cos_mode(4, (1, 0, 0, 0))
SINCOS = SIN1 * COS1


def two_form(model, table):
    """VectorForm of degree 2 from {(i, j, l): coefficient} with i < j."""
    comps = [dict() for _ in range(model.n)]
    for (i, j, l), f in table.items():
        comps[l][(i, j)] = f
    return VectorForm(model, 2, [Form(model, 2, c) for c in comps])


class TestIota:
    def test_vanishes_on_functions(self, ex27):
        f = Form.function(T4, TrigPoly.cos_mode(4, (0, 1, 0, 0)))
        assert iota_vform(ex27.J, f).is_zero()
        assert iota_vform(ex27.N, f).is_zero()

    def test_one_form_contraction_formula(self, ex27):
        # (iota_J dx1)(X) = dx1(J X), evaluated against every frame vector.
        dx1 = Form.coframe(T4, 0)
        got = iota_vform(ex27.J, dx1)
        frames = [VectorField.frame(T4, i) for i in range(4)]
        for X in frames:
            lhs = got.evaluate([X])
            rhs = dx1.evaluate([ex27.J.apply_vector(X)])
            assert lhs == rhs
        # Row 1 of J read as covector coefficients: dx2 + p dx3.
        assert got == Form(T4, 1, {(1,): T4.one_fn(), (2,): SIN1})

    def test_identity_acts_as_degree(self):
        rng = random.Random(4)
        I = VectorForm.identity(T4)
        a = random_form(rng, T4, 1)
        assert iota_vform(I, a) == a
        b = random_form(rng, T4, 3)
        assert (iota_vform(I, b) - b.scale(3)).is_zero()


class TestLie:
    def test_identity_gives_d(self):
        rng = random.Random(6)
        I = VectorForm.identity(T4)
        for degree in range(5):
            a = random_form(rng, T4, degree)
            assert (lie_vform(I, a) - ext_d(a)).is_zero()

    def test_degree_special_cases(self, ex27):
        rng = random.Random(7)
        f = random_form(rng, T4, 0)
        assert (lie_vform(ex27.J, f) - iota_vform(ex27.J, ext_d(f))).is_zero()
        top = random_form(rng, T4, 4)
        assert (lie_vform(ex27.J, top) + ext_d(iota_vform(ex27.J, top))).is_zero()

    def test_constant_function_killed(self, ex27):
        c = Form.function(T4, rat(5, 7))
        assert lie_vform(ex27.J, c).is_zero()


class TestNijenhuis:
    def test_example27_fixture(self, ex27):
        # p = sin x1, p' = cos x1, p p' = sin(2 x1)/2.
        expected = two_form(
            T4,
            {
                (0, 2, 1): -COS1,
                (0, 3, 0): COS1,
                (1, 2, 0): -COS1,
                (1, 3, 1): -COS1,
                (2, 3, 1): -SINCOS,
            },
        )
        assert ex27.N == expected

    def test_t4_fixture(self, t4):
        # f = sin x1, g = 0 gives A = 0, B = cos x1, fB + gA = sin x1 cos x1.
        expected = two_form(
            T4,
            {
                (0, 2, 1): -COS1,
                (1, 3, 1): -COS1,
                (0, 3, 0): COS1,
                (1, 2, 0): -COS1,
                (2, 3, 1): -SINCOS,
            },
        )
        assert t4.N == expected

    def test_constant_structure_integrable(self, flat4, ex27_const):
        assert flat4.N.is_zero()
        assert ex27_const.N.is_zero()

    def test_rejects_non_almost_complex(self):
        bad = VectorForm.from_matrix(T4, [[1 if i == j else 0 for j in range(4)] for i in range(4)])
        with pytest.raises(NotAlmostComplex):
            nijenhuis(bad)


class TestJNTwist:
    def test_integrable_gives_zero(self, flat4):
        assert jn_twist_tensor(flat4.J).is_zero()

    def test_example27_fixture(self, ex27):
        # Hand evaluation of J(N(J e_i, J e_j)) over all frame pairs.
        expected = two_form(
            T4,
            {
                (0, 2, 0): COS1,
                (0, 3, 1): COS1,
                (1, 2, 1): -COS1,
                (1, 3, 0): COS1,
                (2, 3, 0): SINCOS,
            },
        )
        assert ex27.JN == expected

    def test_double_twist_negates(self, ex27, t4):
        for s in (ex27, t4):
            again = jn_twist_tensor(s.J, s.JN)
            assert again == -s.N


class TestFormJAction:
    def test_degree_zero_fixed(self, ex27):
        f = Form.function(T4, TrigPoly.sin_mode(4, (0, 0, 1, 0)))
        assert form_J_action(ex27.J, f) == f

    def test_automorphism(self, ex27):
        rng = random.Random(12)
        for p, q in ((1, 1), (1, 2), (2, 2)):
            a, b = random_form(rng, T4, p), random_form(rng, T4, q)
            lhs = form_J_action(ex27.J, wedge(a, b))
            rhs = wedge(form_J_action(ex27.J, a), form_J_action(ex27.J, b))
            assert (lhs - rhs).is_zero()

    def test_involution_up_to_sign(self, ex27):
        for k in range(5):
            for I in combinations(range(4), k):
                a = Form.basis(T4, I)
                twice = form_J_action(ex27.J, form_J_action(ex27.J, a))
                sign = -1 if k % 2 else 1
                assert (twice - a.scale(sign)).is_zero()


class TestDc:
    def test_decomposition_nonintegrable(self, ex27, t4):
        rng = random.Random(19)
        for s in (ex27, t4):
            for degree in range(5):
                a = random_form(rng, T4, degree)
                rhs = -lie_vform(s.J, a) - iota_vform(s.JN, a)
                assert (dc(s.J, a) - rhs).is_zero()

    def test_integrable_torus(self, flat4):
        rng = random.Random(20)
        for degree in range(5):
            a = random_form(rng, flat4.model, degree)
            assert (dc(flat4.J, a) + lie_vform(flat4.J, a)).is_zero()

    def test_constant_killed(self, ex27):
        assert dc(ex27.J, Form.function(T4, rat(1, 3))).is_zero()


class TestIdentitySuite:
    def test_flat_torus_all_pass(self, flat4):
        rep = identity_suite(flat4.model, flat4.J, samples=20, seed=2017)
        assert rep.all_passed
        assert rep.seed == 2017
        assert len(rep.checks) == 7

    def test_nonintegrable_all_pass(self, ex27):
        rep = identity_suite(ex27.model, ex27.J, samples=10, seed=1)
        assert rep.all_passed

    def test_corrupted_tensor_is_flagged(self, ex27):
        # Flip the sign of one component of N: the square identity must fail
        # and carry a counterexample.
        parts = list(ex27.N.parts)
        bad = dict(parts[0].comps)
        key = next(iter(bad))
        bad[key] = -bad[key]
        parts[0] = Form(T4, 2, bad)
        corrupted = VectorForm(T4, 2, parts)
        rep = identity_suite(
            ex27.model, ex27.J, samples=10, seed=3, nijenhuis_override=corrupted
        )
        assert not rep.all_passed
        failed = {c.name for c in rep.checks if not c.passed}
        assert "LJ_squared_is_minus_LN" in failed
        (check,) = [c for c in rep.checks if c.name == "LJ_squared_is_minus_LN"]
        assert check.counterexample
