"""K と F の元の算術テスト。"""

import random
from fractions import Fraction

import pytest

from src.errors import (
    DivisionByZero,
    InsufficientPrecision,
    InvalidInput,
    NegativeValuation,
)
from src.tower import (
    AtLeast,
    FieldTowerSpec,
    Finite,
    LaurentElement,
    Level,
    PadicElement,
    TwoElement,
    digit_grid,
    parse_element,
    working_precision,
)


class TestFieldTowerSpec:
    """体の塔の仕様のテスト。"""

    def test_padic_requires_prime(self) -> None:
        """素数でない p は拒否される。"""
        with pytest.raises(InvalidInput):
            FieldTowerSpec.padic(4)

    def test_padic_requires_q_equal_p(self) -> None:
        """PADIC は q = p に限る。"""
        from src.tower import MiddleKind

        with pytest.raises(InvalidInput):
            FieldTowerSpec(5, 2, MiddleKind.PADIC)

    def test_characteristic(self, q5: FieldTowerSpec, f5: FieldTowerSpec) -> None:
        """Q_p は標数 0、F_q((u)) は標数 p。"""
        assert q5.char == 0
        assert f5.char == 5
        assert FieldTowerSpec.laurent(2, 2).q == 4


class TestValuation:
    """付値のテスト。"""

    def test_unknown_low_digit(self, f5: FieldTowerSpec) -> None:
        """t^1 の係数が O(u) なら ν_F は AtLeast(1) で t^2 は保持しない。"""
        x = parse_element("(u + O(u^1))*t + t^2", f5)
        assert x.valuation() == AtLeast(1)
        assert x.precision == 1
        assert str(x) == "O(t^1)"

    def test_cancellation_caps_precision(self, f5: FieldTowerSpec) -> None:
        """u 進の打ち消しで零になった桁から先は精度の外になる。"""
        x = parse_element("(1 + O(u^2))*t + t^3", f5) - f5.t(1)
        assert x.valuation() == AtLeast(1)
        assert not x.coeffs

    def test_working_precision_settles_digit(self, q5: FieldTowerSpec) -> None:
        """π_K^m を法として零の係数は作業精度 m では零の桁になる。"""
        coeffs = {0: PadicElement(q5, Fraction(0), 4), 1: q5.mid(1)}
        with working_precision(4):
            settled = TwoElement(q5, coeffs)
        with working_precision(16):
            unknown = TwoElement(q5, coeffs)
        assert settled.valuation() == Finite(1)
        assert settled.is_exact
        assert unknown.valuation() == AtLeast(0)
        assert unknown.precision == 0

    def test_laurent_monomial(self, f5: FieldTowerSpec) -> None:
        """ν_F(t^2·u) = 2。"""
        x = f5.t(2).scale(LaurentElement(f5, {1: 1}))
        assert x.valuation() == Finite(2)
        assert x.coefficient(2).valuation() == Finite(1)

    def test_padic_negative(self) -> None:
        """Q_3 で ν(3/9) = -1。"""
        q3 = FieldTowerSpec.padic(3)
        assert q3.mid(Fraction(3, 9)).valuation() == Finite(-1)

    def test_zero_up_to_precision(self, f5: FieldTowerSpec) -> None:
        """精度 4 まで零の元は AtLeast(4)。"""
        assert TwoElement(f5, {}, 4).valuation() == AtLeast(4)
        assert f5.two(0).valuation() == AtLeast(None)

    def test_padic_precision_reduces_representative(self, q5: FieldTowerSpec) -> None:
        """精度つきの p 進元は標準代表元に正規化される。"""
        x = PadicElement(q5, Fraction(26), 2)
        assert x.value == 1
        assert PadicElement(q5, Fraction(-1), 2).value == 24
        assert PadicElement(q5, Fraction(1, 2), 1).value == 3


class TestResidue:
    """剰余写像のテスト。"""

    def test_residue_of_integral(self, f5: FieldTowerSpec) -> None:
        """3 + t·u の剰余は 3。"""
        x = parse_element("3 + t*u", f5)
        assert x.residue() == f5.mid(3)

    def test_residue_negative_valuation(self, f5: FieldTowerSpec) -> None:
        """t^-1 の剰余は NegativeValuation。"""
        with pytest.raises(NegativeValuation):
            f5.t(-1).residue()

    def test_residue_keeps_middle_element(self, f5: FieldTowerSpec) -> None:
        """u + t^2 の剰余は u。"""
        assert parse_element("u + t^2", f5).residue() == LaurentElement(f5, {1: 1})

    def test_residue_undecidable(self, q5: FieldTowerSpec) -> None:
        """付値が決まらない元の剰余は InsufficientPrecision。"""
        with pytest.raises(InsufficientPrecision):
            TwoElement(q5, {}, 0).residue()

    def test_residue_is_ring_homomorphism(self, f3: FieldTowerSpec) -> None:
        """整元上で剰余は和と積を保つ。"""
        grid = digit_grid(f3, Level.F, 2, 2)
        rng = random.Random(0)
        for _ in range(50):
            x, y = rng.choice(grid), rng.choice(grid)
            assert (x + y).residue() == x.residue() + y.residue()
            assert (x * y).residue() == x.residue() * y.residue()


class TestArithmetic:
    """算術と精度伝播のテスト。"""

    def test_monomial_product(self, q5: FieldTowerSpec) -> None:
        """(t + t^2)·t^-1 = 1 + t。"""
        x = (q5.t(1) + q5.t(2)) * q5.t(-1)
        assert x == q5.two(1) + q5.t(1)

    def test_geometric_series_inverse(self, q5: FieldTowerSpec) -> None:
        """1 + t の逆元を精度 3 で求める。"""
        x = (q5.two(1) + q5.t(1)).inv(precision=3)
        assert x == parse_element("1 - t + t^2 + O(t^3)", q5)
        assert str(x) == "1 - t + t^2 + O(t^3)"

    def test_inverse_of_unknown_valuation(self, q5: FieldTowerSpec) -> None:
        """付値が AtLeast(2) の元の逆元は InsufficientPrecision。"""
        with pytest.raises(InsufficientPrecision):
            TwoElement(q5, {}, 2).inv()

    def test_inverse_of_zero(self, f5: FieldTowerSpec) -> None:
        """厳密な零の逆元は DivisionByZero。"""
        with pytest.raises(DivisionByZero):
            f5.two(0).inv()
        with pytest.raises(DivisionByZero):
            f5.mid(0).inv()

    def test_product_precision(self, q5: FieldTowerSpec) -> None:
        """積の精度は相手の付値だけずれる。"""
        x = PadicElement(q5, Fraction(1), 3) * q5.mid(5)
        assert x.precision == 4
        y = parse_element("1 + O(t^2)", q5) * q5.t(3)
        assert y.precision == 5

    def test_laurent_series_inverse(self, f5: FieldTowerSpec) -> None:
        """1 + u の逆元は 1 - u + u^2 - u^3 + O(u^4)。"""
        x = LaurentElement(f5, {0: 1, 1: 1}).inv(4)
        assert x == LaurentElement(f5, {0: 1, 1: 4, 2: 1, 3: 4}, 4)

    def test_laurent_exact_series_needs_precision(self, f5: FieldTowerSpec) -> None:
        """厳密な非単項式の逆元には精度が必要。"""
        with pytest.raises(InsufficientPrecision):
            LaurentElement(f5, {0: 1, 1: 1}).inv()

    def test_extension_field_arithmetic(self) -> None:
        """F_4 の生成元 a は a^2 = a + 1 を満たす。"""
        fq = FieldTowerSpec.laurent(2, 2).residue
        assert fq.mul(2, 2) == 3
        assert fq.inv(2) == 3
        assert fq.add(3, 2) == 1

    def test_ultrametric_inequality(self, q3: FieldTowerSpec) -> None:
        """格子上で ν(x+y) ≥ min(ν(x), ν(y))、付値が異なれば等号。"""
        grid = [x for x in digit_grid(q3, Level.F, 2, 2) if not x.is_exact_zero()]
        rng = random.Random(1)
        for _ in range(60):
            x, y = rng.choice(grid), rng.choice(grid).shift(rng.randint(-1, 1))
            s = x + y
            vx, vy = x.valuation().n, y.valuation().n
            if s.is_exact_zero():
                continue
            assert s.valuation().n >= min(vx, vy)
            if vx != vy:
                assert s.valuation().n == min(vx, vy)

    def test_multiplicativity(self, f3: FieldTowerSpec) -> None:
        """ν(xy) = ν(x) + ν(y)。"""
        grid = [x for x in digit_grid(f3, Level.F, 2, 1) if not x.is_exact_zero()]
        for x in grid:
            for y in grid:
                assert (x * y).valuation().n == x.valuation().n + y.valuation().n

    def test_precision_monotonicity(self, q5: FieldTowerSpec) -> None:
        """精度を上げても既に得た桁は変わらない。"""
        x = q5.two(1) + q5.t(1)
        low = x.inv(precision=3)
        high = x.inv(precision=6)
        assert high.truncate(3) == low

    def test_reduced_representative(self, q5: FieldTowerSpec) -> None:
        """reduced は t^n 以上の桁を落とした厳密な元を返す。"""
        x = parse_element("1 + t + t^2 + O(t^4)", q5)
        assert x.reduced(2) == q5.two(1) + q5.t(1)
        with pytest.raises(InsufficientPrecision):
            x.reduced(5)
