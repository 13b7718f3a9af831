"""Exact trigonometric-polynomial arithmetic, checked against a floating
point sampling oracle and exact ring axioms."""

import math
import random

import pytest

from almostcomplex.coeffring import (
    GaussianRational,
    TrigPoly,
    rat,
    rat_str,
    trig_eval,
    trig_mul,
    trig_partial,
)
from almostcomplex.errors import DimensionMismatch

S1 = TrigPoly.sin_mode(4, (1, 0, 0, 0))
C1 = TrigPoly.cos_mode(4, (1, 0, 0, 0))


def random_trig(rng, dim=4, max_mode=2, terms=5):
    total = TrigPoly.zero(dim)
    for _ in range(rng.randint(1, terms)):
        mode = tuple(rng.randint(-max_mode, max_mode) for _ in range(dim))
        c = rat(rng.randint(-4, 4), rng.randint(1, 4))
        base = TrigPoly.cos_mode(dim, mode) if rng.random() < 0.5 else TrigPoly.sin_mode(dim, mode)
        total = total + base.scale(c)
    return total


def sample_points(rng, dim, count):
    return [[rng.uniform(0, 2 * math.pi) for _ in range(dim)] for _ in range(count)]


class TestGaussianRational:
    def test_field_operations(self):
        a = GaussianRational(rat(1, 2), rat(-3, 4))
        b = GaussianRational(2, 5)
        assert (a + b) - b == a
        assert a * b == b * a
        assert (a * b) / b == a
        assert a * a.inverse() == GaussianRational(1)
        assert a.conjugate().conjugate() == a
        assert (a * a.conjugate()).is_real()

    def test_zero_inverse_raises(self):
        with pytest.raises(ZeroDivisionError):
            GaussianRational(0).inverse()

    def test_mixed_scalars(self):
        a = GaussianRational(0, 1)
        assert 1 + a == GaussianRational(1, 1)
        assert rat(1, 2) * a == GaussianRational(0, rat(1, 2))
        assert a * a == GaussianRational(-1)

    def test_rendering(self):
        assert rat_str(rat(-3, 6)) == "-1/2"
        assert repr(GaussianRational(1, -2)) == "1-2*i"


class TestTrigMul:
    def test_identity(self):
        rng = random.Random(7)
        for _ in range(5):
            f = random_trig(rng)
            assert trig_mul(TrigPoly.one(4), f) == f

    def test_sin_cos_product(self):
        expected = TrigPoly.sin_mode(4, (2, 0, 0, 0)).scale(rat(1, 2))
        assert trig_mul(S1, C1) == expected

    def test_sin_squared(self):
        expected = TrigPoly.constant(4, rat(1, 2)) - TrigPoly.cos_mode(
            4, (2, 0, 0, 0)
        ).scale(rat(1, 2))
        assert trig_mul(S1, S1) == expected

    def test_product_against_sampling_oracle(self):
        rng = random.Random(11)
        for _ in range(3):
            a, b = random_trig(rng), random_trig(rng)
            prod = trig_mul(a, b)
            for x in sample_points(rng, 4, 100):
                direct = trig_eval(a, x) * trig_eval(b, x)
                assert abs(trig_eval(prod, x) - direct) < 1e-10

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            trig_mul(S1, TrigPoly.one(2))


class TestTrigPartial:
    def test_constant(self):
        assert trig_partial(TrigPoly.constant(4, rat(5, 3)), 0).is_zero()

    def test_sin_to_cos(self):
        assert trig_partial(S1, 0) == C1

    def test_mode_arithmetic(self):
        f = TrigPoly.cos_mode(4, (0, 0, 2, -1))
        expected = TrigPoly.sin_mode(4, (0, 0, 2, -1)).scale(-2)
        df = trig_partial(f, 2)
        assert df == expected
        rng = random.Random(3)
        h = 1e-6
        for x in sample_points(rng, 4, 20):
            xp = list(x)
            xm = list(x)
            xp[2] += h
            xm[2] -= h
            fd = (trig_eval(f, xp) - trig_eval(f, xm)) / (2 * h)
            assert abs(trig_eval(df, x) - fd) < 1e-6

    def test_axis_out_of_range(self):
        with pytest.raises(IndexError):
            trig_partial(S1, 4)
        with pytest.raises(IndexError):
            trig_partial(S1, -1)


class TestTrigEval:
    def test_zero(self):
        assert trig_eval(TrigPoly.zero(4), [1.0, 2.0, 3.0, 4.0]) == 0

    def test_sin_at_half_pi(self):
        v = trig_eval(S1, [math.pi / 2, 0.0, 0.0, 0.0])
        assert abs(v - 1.0) < 1e-12

    def test_length_mismatch(self):
        with pytest.raises(DimensionMismatch):
            trig_eval(S1, [0.0, 0.0])


class TestRingAxioms:
    def test_exact_axioms_on_random_triples(self):
        rng = random.Random(2017)
        for _ in range(6):
            a, b, c = (random_trig(rng) for _ in range(3))
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a * b == b * a
            assert (a + b) + c == a + (b + c)

    def test_partials_commute(self):
        rng = random.Random(5)
        for _ in range(5):
            f = random_trig(rng)
            for i in range(4):
                for j in range(i + 1, 4):
                    assert f.partial(i).partial(j) == f.partial(j).partial(i)

    def test_leibniz(self):
        rng = random.Random(13)
        for _ in range(5):
            a, b = random_trig(rng), random_trig(rng)
            for axis in range(4):
                lhs = (a * b).partial(axis)
                rhs = a.partial(axis) * b + a * b.partial(axis)
                assert lhs == rhs

    def test_reality_preserved(self):
        rng = random.Random(23)
        a, b = random_trig(rng), random_trig(rng)
        assert a.reality and b.reality
        assert (a + b).reality
        assert (a * b).reality
        assert a.partial(1).reality
        assert a.scale(rat(7, 3)).reality
        assert not a.scale(GaussianRational(0, 1)).reality


class TestCanonicalForm:
    def test_no_zero_terms_stored(self):
        f = S1 - S1
        assert f.terms == {}
        g = S1 + TrigPoly.sin_mode(4, (1, 0, 0, 0)).scale(-1)
        assert g.is_zero()

    def test_constant_value_and_max_mode(self):
        f = TrigPoly.constant(4, rat(2)) + TrigPoly.cos_mode(4, (1, 0, -2, 0))
        assert f.constant_value() == GaussianRational(2)
        assert f.max_mode() == 2

    def test_conjugate_symmetry_detection(self):
        real = TrigPoly(4, {(1, 0, 0, 0): GaussianRational(rat(1, 2)),
                            (-1, 0, 0, 0): GaussianRational(rat(1, 2))})
        assert real.reality
        skew = TrigPoly(4, {(1, 0, 0, 0): GaussianRational(1)})
        assert not skew.reality

    def test_render_sorted_and_deterministic(self):
        # Terms print in lexicographic mode order: (0,1,0,0) before (1,0,0,0).
        f = TrigPoly.cos_mode(4, (0, 1, 0, 0)) + TrigPoly.sin_mode(4, (1, 0, 0, 0))
        assert f.render() == "cos(x2) + sin(x1)"
        assert f.render() == f.render()
