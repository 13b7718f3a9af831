"""Models, forms, wedge, brackets, and the exterior derivative.

The structure-equation sign convention is pinned here by the exact duality
test (d e^k)(e_i, e_j) = -e^k([e_i, e_j]) on every Lie algebra model."""

import random

import pytest

from almostcomplex.coeffring import TrigPoly, rat, trig_eval
from almostcomplex.errors import (
    JacobiViolation,
    MixedRing,
    ModelMismatch,
    ModelValidationError,
    OddDimension,
)
from almostcomplex.frames import (
    Form,
    Model,
    VectorField,
    ext_d,
    interior_vector,
    merge_signed,
    validate_model,
    vf_bracket,
    wedge,
)

T4 = Model.torus(4)


def rand_form(rng, model, degree, max_mode=1):
    from almostcomplex.derivations import random_form

    return random_form(rng, model, degree, comps=2, max_mode=max_mode)


class TestModelValidation:
    def test_abelian_valid(self):
        m = validate_model({"name": "a", "kind": "lie", "dim": 4})
        assert m.n == 4 and not m.is_torus

    def test_kodaira_thurston_constants(self):
        raw = {
            "name": "kt",
            "kind": "lie",
            "dim": 4,
            "structure_constants": [{"i": 1, "j": 2, "k": 4, "c": "-1"}],
        }
        m = validate_model(raw)
        # Brute-force Jacobi oracle over every triple and output index.
        for i in range(4):
            for j in range(i + 1, 4):
                for k in range(j + 1, 4):
                    acc = {}
                    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                        for mm, cm in m.bracket_frame(a, b).items():
                            for l, cl in m.bracket_frame(mm, c).items():
                                acc[l] = acc.get(l, rat(0)) + cm * cl
                    assert all(not v for v in acc.values())

    def test_jacobi_violation_identifies_triple(self):
        constants = {
            (0, 1, 2): rat(1),
            (1, 2, 0): rat(1),
            (2, 0, 1): rat(1),
            (0, 3, 0): rat(1),  # deliberately breaks Jacobi
        }
        with pytest.raises(JacobiViolation) as exc:
            Model.lie_algebra(4, constants)
        assert len(exc.value.triple) == 3

    def test_odd_dimension(self):
        with pytest.raises(OddDimension):
            Model.torus(3)
        with pytest.raises(ModelValidationError):
            validate_model({"name": "x", "kind": "lie", "dim": 3})

    def test_mixed_ring_rejected(self):
        raw = {
            "name": "bad",
            "kind": "torus",
            "dim": 4,
            "structure_constants": [{"i": 1, "j": 2, "k": 3, "c": 1}],
        }
        with pytest.raises(ModelValidationError):
            validate_model(raw)
        lie = Model.lie_algebra(4, {(0, 1, 3): rat(1)})
        with pytest.raises(MixedRing):
            Form.function(lie, TrigPoly.sin_mode(4, (1, 0, 0, 0)))


class TestMergeSigned:
    def test_disjoint_and_collision(self):
        assert merge_signed((0,), (1,)) == ((0, 1), 1)
        assert merge_signed((1,), (0,)) == ((0, 1), -1)
        assert merge_signed((0, 2), (1,)) == ((0, 1, 2), -1)
        assert merge_signed((0,), (0,)) == (None, 0)


class TestWedge:
    def test_unit(self):
        rng = random.Random(3)
        one = Form.function(T4, 1)
        a = rand_form(rng, T4, 2)
        assert wedge(a, one) == a and wedge(one, a) == a

    def test_coframe_antisymmetry(self):
        dx1, dx2 = Form.coframe(T4, 0), Form.coframe(T4, 1)
        e12 = wedge(dx1, dx2)
        assert e12.comps == {(0, 1): T4.one_fn()}
        assert wedge(dx2, dx1) == -e12

    def test_mixed_coefficients_fixture(self):
        s1 = TrigPoly.sin_mode(4, (1, 0, 0, 0))
        c1 = TrigPoly.cos_mode(4, (1, 0, 0, 0))
        a = Form(T4, 1, {(0,): s1, (1,): T4.one_fn()})
        b = Form(T4, 1, {(2,): c1})
        got = wedge(a, b)
        assert got == Form(T4, 2, {(0, 2): s1 * c1, (1, 2): c1})

    def test_graded_commutativity(self):
        rng = random.Random(8)
        for p, q in ((1, 1), (1, 2), (2, 2), (1, 3), (2, 3)):
            a, b = rand_form(rng, T4, p), rand_form(rng, T4, q)
            sign = -1 if (p * q) % 2 else 1
            assert (wedge(a, b) - wedge(b, a).scale(sign)).is_zero()

    def test_sampling_oracle_on_vectors(self):
        rng = random.Random(21)
        a, b = rand_form(rng, T4, 1), rand_form(rng, T4, 1)
        w = wedge(a, b)
        X = VectorField.frame(T4, 0)
        Y = VectorField(T4, [TrigPoly.cos_mode(4, (0, 1, 0, 0)),
                             T4.one_fn(), T4.zero_fn(), T4.zero_fn()])
        lhs = w.evaluate([X, Y])
        rhs = a.evaluate([X]) * b.evaluate([Y]) - a.evaluate([Y]) * b.evaluate([X])
        assert lhs == rhs

    def test_model_mismatch(self):
        with pytest.raises(ModelMismatch):
            wedge(Form.coframe(T4, 0), Form.coframe(Model.torus(2), 0))


class TestBracket:
    def test_coordinate_fields_commute(self):
        X, Y = VectorField.frame(T4, 0), VectorField.frame(T4, 1)
        assert vf_bracket(X, Y).is_zero()

    def test_function_coefficient(self):
        f = TrigPoly.sin_mode(4, (0, 1, 0, 0))  # sin(x2)
        X = VectorField(T4, [f, T4.zero_fn(), T4.zero_fn(), T4.zero_fn()])
        Y = VectorField.frame(T4, 1)
        got = vf_bracket(X, Y)
        expected = VectorField(
            T4,
            [-f.partial(1), T4.zero_fn(), T4.zero_fn(), T4.zero_fn()],
        )
        assert got == expected

    def test_kodaira_thurston_duality(self):
        m = Model.lie_algebra(4, {(0, 1, 3): rat(-1)})
        e1, e2 = VectorField.frame(m, 0), VectorField.frame(m, 1)
        got = vf_bracket(e1, e2)
        assert got == -VectorField.frame(m, 3)
        # duality oracle: (d e^4)(e1, e2) = -e^4([e1, e2])
        de4 = ext_d(Form.coframe(m, 3))
        assert de4.evaluate([e1, e2]) == -Form.coframe(m, 3).evaluate([got])

    def test_antisymmetry_and_jacobi_random(self):
        rng = random.Random(5)

        def rand_vf():
            return VectorField(
                T4,
                [  # mode bound 1, small rationals
                    TrigPoly.cos_mode(4, tuple(rng.randint(-1, 1) for _ in range(4))).scale(
                        rat(rng.randint(-2, 2), rng.randint(1, 2))
                    )
                    for _ in range(4)
                ],
            )

        for _ in range(3):
            X, Y, Z = rand_vf(), rand_vf(), rand_vf()
            assert (vf_bracket(X, Y) + vf_bracket(Y, X)).is_zero()
            jac = (
                vf_bracket(X, vf_bracket(Y, Z))
                + vf_bracket(Y, vf_bracket(Z, X))
                + vf_bracket(Z, vf_bracket(X, Y))
            )
            assert jac.is_zero()


class TestExteriorDerivative:
    def test_constant(self):
        assert ext_d(Form.function(T4, rat(3, 2))).is_zero()

    def test_coordinate_formula(self):
        s1 = TrigPoly.sin_mode(4, (1, 0, 0, 0))
        c1 = TrigPoly.cos_mode(4, (1, 0, 0, 0))
        a = Form(T4, 1, {(1,): s1})  # sin(x1) dx2
        assert ext_d(a) == Form(T4, 2, {(0, 1): c1})

    def test_d_squared_zero_both_kinds(self, iw):
        rng = random.Random(31)
        for degree in range(5):
            a = rand_form(rng, T4, degree)
            assert ext_d(ext_d(a)).is_zero()
        for degree in range(7):
            b = rand_form(rng, iw.model, degree)
            assert ext_d(ext_d(b)).is_zero()

    def test_iwasawa_structure_equations(self, iw):
        m = iw.model
        de5 = ext_d(Form.coframe(m, 4))
        de6 = ext_d(Form.coframe(m, 5))
        one = m.one_fn()
        assert de5 == Form(m, 2, {(0, 2): -one, (1, 3): one})
        assert de6 == Form(m, 2, {(0, 3): -one, (1, 2): -one})
        for i in range(4):
            assert ext_d(Form.coframe(m, i)).is_zero()

    def test_duality_all_lie_models(self, iw, kt, ab):
        for s in (iw, kt, ab):
            m = s.model
            frames = [VectorField.frame(m, i) for i in range(m.n)]
            for k in range(m.n):
                dek = ext_d(Form.coframe(m, k))
                ek = Form.coframe(m, k)
                for i in range(m.n):
                    for j in range(i + 1, m.n):
                        lhs = dek.evaluate([frames[i], frames[j]])
                        rhs = -ek.evaluate([vf_bracket(frames[i], frames[j])])
                        assert lhs == rhs


class TestInteriorProduct:
    def test_degree_zero(self):
        X = VectorField.frame(T4, 0)
        assert interior_vector(X, Form.function(T4, 5)).is_zero()

    def test_sign_convention(self):
        e12 = Form.basis(T4, (0, 1))
        assert interior_vector(VectorField.frame(T4, 0), e12) == Form.coframe(T4, 1)
        assert interior_vector(VectorField.frame(T4, 1), e12) == -Form.coframe(T4, 0)

    def test_bilinear_expansion(self):
        f = TrigPoly.cos_mode(4, (0, 1, 0, 0))
        X = VectorField(T4, [f, T4.zero_fn(), T4.one_fn(), T4.zero_fn()])
        e13 = Form.basis(T4, (0, 2))
        got = interior_vector(X, e13)
        assert got == Form(T4, 1, {(2,): f, (0,): -T4.one_fn()})

    def test_antiderivation(self):
        rng = random.Random(17)
        X = VectorField(
            T4,
            [TrigPoly.sin_mode(4, (0, 0, 1, 0)), T4.one_fn(), T4.zero_fn(), T4.zero_fn()],
        )
        for p, q in ((1, 1), (1, 2), (2, 1), (2, 2)):
            a, b = rand_form(rng, T4, p), rand_form(rng, T4, q)
            lhs = interior_vector(X, wedge(a, b))
            sign = -1 if p % 2 else 1
            rhs = wedge(interior_vector(X, a), b) + wedge(a, interior_vector(X, b)).scale(sign)
            assert (lhs - rhs).is_zero()
