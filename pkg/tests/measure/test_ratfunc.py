"""RatFunc のテスト。"""

from fractions import Fraction

import pytest

from src.errors import DivisionByZero, ParseError
from src.measure import RatFunc


class TestRatFunc:
    """有理関数の標準形と演算のテスト。"""

    def test_canonical_form(self) -> None:
        """約分され分母はモニック。"""
        r = RatFunc.parse("(2*X^2 - 2)/(4*X - 4)")
        assert r == RatFunc.parse("(X + 1)/2")
        assert str(r) == "X/2 + 1/2"

    def test_monomial_negative_power(self) -> None:
        """X^-1 は 1/X。"""
        r = RatFunc.monomial(3, -2)
        assert str(r) == "3/X^2"
        assert r * RatFunc.monomial(1, 2) == RatFunc.constant(3)

    def test_arithmetic(self) -> None:
        """四則演算。"""
        x = RatFunc.monomial(1, 1)
        assert (x + 1) * (x - 1) == RatFunc.parse("X^2 - 1")
        assert (x**2 - 1) / (x - 1) == x + 1
        assert x**-1 == RatFunc.monomial(1, -1)

    def test_evaluate(self) -> None:
        """X = 1/5 を代入する。"""
        assert RatFunc.parse("-2*X").evaluate(Fraction(1, 5)) == Fraction(-2, 5)
        with pytest.raises(DivisionByZero):
            RatFunc.parse("1/(X - 1)").evaluate(1)

    def test_laurent_terms(self) -> None:
        """分母が X の冪なら指数ごとの係数。"""
        terms = RatFunc.parse("X^2/5 + 1/X").laurent_terms()
        assert terms == {2: Fraction(1, 5), -1: Fraction(1)}
        assert RatFunc.parse("1/(X + 1)").laurent_terms() is None
        assert RatFunc.zero().laurent_terms() == {}

    def test_round_trip(self) -> None:
        """表示と解析の往復。"""
        for text in ["-2*X", "3/X^2", "(X^2 + 1)/(X - 1)", "0"]:
            r = RatFunc.parse(text)
            assert RatFunc.parse(str(r)) == r

    def test_parse_error(self) -> None:
        """未知の記号は ParseError。"""
        with pytest.raises(ParseError):
            RatFunc.parse("Y + 1")
        with pytest.raises(ParseError):
            RatFunc.parse("(X + ")
