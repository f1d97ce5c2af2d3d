"""持ち上げ関数と F 値積分のテスト。"""

import random
from fractions import Fraction

import pytest

from src.errors import DivisionByZero
from src.measure import (
    IntegrableFunctionF,
    Lifted2Term,
    LiftedTerm,
    RatFunc,
    SBFunction,
    SBFunction2,
    abs_value,
    abs_value_ratfunc,
    char_O_F,
    evaluate,
    integral_F,
    repeated_integral_2,
    scale,
    translate,
)
from src.tower import Ball, FieldTowerSpec, Level, TwoElement, digit_grid, parse_element


def _unit_ball(field: FieldTowerSpec) -> SBFunction:
    return SBFunction.indicator(Ball(field.mid(0), 0))


def _random_function(rng: random.Random, field: FieldTowerSpec) -> IntegrableFunctionF:
    """ランダムな持ち上げ関数の線形結合。"""
    grid = digit_grid(field, Level.F, 2, 1)
    terms = []
    for _ in range(rng.randint(1, 3)):
        ball = Ball(field.digit(rng.randrange(field.q)), rng.randint(0, 2))
        f = SBFunction.indicator(ball, rng.randint(-3, 3) or 1)
        term = LiftedTerm(f, rng.choice(grid), rng.randint(-2, 2))
        coeff = RatFunc.monomial(rng.randint(1, 4), rng.randint(-1, 1))
        terms.append((coeff, term))
    return IntegrableFunctionF(field, tuple(terms))


def _random_unit_multiple(rng: random.Random, field: FieldTowerSpec) -> TwoElement:
    lead = field.digit(rng.randrange(1, field.q))
    tail = field.digit(rng.randrange(field.q))
    m = rng.randint(-2, 2)
    return TwoElement(field, {m: lead, m + 1: tail})


class TestAbsValue:
    """abs_value のテスト。"""

    def test_t(self, q5: FieldTowerSpec) -> None:
        """|t| = X。"""
        assert abs_value(q5.t(1)) == (1, 1)

    def test_p_over_t_squared(self, q5: FieldTowerSpec) -> None:
        """|5 t^{-2}| = X^{-2}/5。"""
        assert abs_value(parse_element("5*t^-2", q5)) == (Fraction(1, 5), -2)
        assert abs_value_ratfunc(parse_element("5*t^-2", q5)) == RatFunc.monomial(
            Fraction(1, 5), -2
        )

    def test_inverse_u_over_f4(self) -> None:
        """F_4((u)) で |u^{-1}| = 4。"""
        f4 = FieldTowerSpec.laurent(2, 2)
        assert abs_value(parse_element("u^-1", f4)) == (4, 0)

    def test_zero(self, q5: FieldTowerSpec) -> None:
        """零の絶対値は DivisionByZero。"""
        with pytest.raises(DivisionByZero):
            abs_value(q5.two(0))


class TestIntegralF:
    """integral_F のテスト。"""

    def test_null_measure_of_O_F(self, q5: FieldTowerSpec) -> None:
        """∫ Char_{O_F} = 0。"""
        g = IntegrableFunctionF.of(char_O_F(q5))
        assert integral_F(g) == RatFunc.zero()
        assert evaluate(g, q5.t(1)) == 1
        assert evaluate(g, q5.t(-1)) == 0

    def test_lift_at_origin(self, q5: FieldTowerSpec) -> None:
        """∫ f^{0,0} = ∫ f。"""
        g = IntegrableFunctionF.of(LiftedTerm(_unit_ball(q5), q5.two(0), 0))
        assert integral_F(g) == RatFunc.constant(1)

    def test_minus_two_x(self, q3: FieldTowerSpec) -> None:
        """g1 = Char_{tO_F}、g2 = -2·Char_{t{x: x̄ ∈ S}} の和の積分は -2X。"""
        g1 = IntegrableFunctionF.of(
            LiftedTerm(SBFunction.point_mass(q3.mid(0)), q3.two(0), 0)
        )
        g2 = IntegrableFunctionF.of(LiftedTerm(_unit_ball(q3), q3.two(0), 1), -2)
        assert integral_F(g1) == RatFunc.zero()
        assert integral_F(g1 + g2) == RatFunc.parse("-2*X")

    def test_lift_formula(self, q5: FieldTowerSpec) -> None:
        """∫f = 1/5 なら ∫ f^{a,n} = X^n/5。"""
        f = SBFunction.indicator(Ball(q5.mid(2), 1))
        a = parse_element("1 + 3*t", q5)
        for n in (-1, 0, 3):
            g = IntegrableFunctionF.of(LiftedTerm(f, a, n))
            assert integral_F(g) == RatFunc.monomial(Fraction(1, 5), n)

    def test_lift_values(self, q5: FieldTowerSpec) -> None:
        """f^{0,1}(t x) = f(x̄)。"""
        f = SBFunction.indicator(Ball(q5.mid(2), 1))
        term = LiftedTerm(f, q5.two(0), 1)
        assert term.evaluate(parse_element("2*t + t^3", q5)) == 1
        assert term.evaluate(parse_element("3*t", q5)) == 0
        assert term.evaluate(q5.two(1)) == 0

    def test_center_digit_absorbed(self, q5: FieldTowerSpec) -> None:
        """中心の t^n の桁は f の平行移動として吸収される。"""
        f = SBFunction.indicator(Ball(q5.mid(0), 1))
        term = LiftedTerm(f, parse_element("1 + 2*t", q5), 1)
        assert term.a == q5.two(1)
        assert term.evaluate(parse_element("1 + 2*t", q5)) == 1
        assert term.evaluate(parse_element("1 + t", q5)) == 0


class TestIntegralLaws:
    """平行移動・拡大・線形性のテスト。"""

    def test_translate_examples(self, q5: FieldTowerSpec) -> None:
        """f^{0,0} の t による平行移動と往復。"""
        term = LiftedTerm(_unit_ball(q5), q5.two(0), 0)
        g = IntegrableFunctionF.of(term)
        expected = LiftedTerm(_unit_ball(q5), q5.t(1), 0)
        assert translate(g, q5.t(1)).terms[0][1] == expected
        a = parse_element("2 + t^-1", q5)
        assert translate(translate(g, a), -a).terms[0][1] == term

    def test_scale_example(self, q5: FieldTowerSpec) -> None:
        """x ↦ g(tx) の積分は X^{-1} 倍。"""
        g = IntegrableFunctionF.of(LiftedTerm(_unit_ball(q5), q5.two(0), 1))
        h = scale(g, q5.t(1))
        assert h.terms[0][1].n == 0
        assert integral_F(h) == RatFunc.monomial(1, -1) * integral_F(g)

    @pytest.mark.parametrize("field_name", ["q3", "f3"])
    def test_random_laws(self, field_name: str, request: pytest.FixtureRequest) -> None:
        """ランダムな関数で平行移動不変性・拡大則・線形性が厳密に成り立つ。"""
        field = request.getfixturevalue(field_name)
        rng = random.Random(0)
        grid = digit_grid(field, Level.F, 3, 1)
        for _ in range(100):
            g = _random_function(rng, field)
            h = _random_function(rng, field)
            a = rng.choice(grid)
            alpha = _random_unit_multiple(rng, field)
            assert integral_F(translate(g, a)) == integral_F(g)
            scaled = integral_F(scale(g, alpha))
            assert scaled == integral_F(g) / abs_value_ratfunc(alpha)
            assert integral_F(g + h * 3) == integral_F(g) + 3 * integral_F(h)

    def test_scale_moves_points(self, q5: FieldTowerSpec) -> None:
        """拡大した関数の値は g(αx)。"""
        rng = random.Random(1)
        grid = digit_grid(q5, Level.F, 3, 1)
        for _ in range(20):
            g = _random_function(rng, q5)
            alpha = _random_unit_multiple(rng, q5)
            h = scale(g, alpha)
            for x in rng.sample(grid, 5):
                assert evaluate(h, x) == evaluate(g, alpha * x)


class TestRepeatedIntegral:
    """repeated_integral_2 のテスト。"""

    def test_unit_square(self, q5: FieldTowerSpec) -> None:
        """Char(O_K×O_K) の (0,0) での持ち上げは両順序で 1。"""
        f = SBFunction2.rectangle(Ball(q5.mid(0), 0), Ball(q5.mid(0), 0))
        g = Lifted2Term(f, (q5.two(0), q5.two(0)), (0, 0))
        assert repeated_integral_2(g, "dxdy") == RatFunc.constant(1)
        assert repeated_integral_2(g, "dydx") == RatFunc.constant(1)

    def test_exponents(self, q5: FieldTowerSpec) -> None:
        """(n1, n2) = (1, 2) なら X^3。"""
        f = SBFunction2.rectangle(Ball(q5.mid(0), 0), Ball(q5.mid(0), 0))
        g = Lifted2Term(f, (q5.two(0), q5.two(0)), (1, 2))
        assert repeated_integral_2(g, "dxdy") == RatFunc.monomial(1, 3)
        assert repeated_integral_2(g, "dydx") == RatFunc.monomial(1, 3)

    def test_zero_mass(self, q5: FieldTowerSpec) -> None:
        """∫∫f = 0 なら 0。"""
        f = SBFunction2.rectangle(Ball(q5.mid(0), 0), Ball(q5.mid(0), 0)) + (
            SBFunction2.rectangle(Ball(q5.mid(1), 0), Ball(q5.mid(0), 0), -1)
        )
        g = Lifted2Term(f, (q5.two(0), q5.t(1)), (2, -1))
        assert repeated_integral_2(g, "dxdy").is_zero
        assert repeated_integral_2(g, "dydx").is_zero

    def test_pointwise(self, q5: FieldTowerSpec) -> None:
        """f^{(a1,a2),(n1,n2)} の値。"""
        f = SBFunction2.rectangle(Ball(q5.mid(1), 1), Ball(q5.mid(0), 0), 7)
        g = Lifted2Term(f, (q5.two(0), q5.two(0)), (1, 0))
        assert g.evaluate(parse_element("t", q5), parse_element("3", q5)) == 7
        assert g.evaluate(parse_element("2*t", q5), parse_element("3", q5)) == 0
