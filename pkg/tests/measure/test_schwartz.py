"""シュワルツ・ブリュア関数のテスト。"""

from fractions import Fraction

from src.measure import SBFunction, SBFunction2, haar_integral
from src.tower import Ball, FieldTowerSpec


class TestSBFunction:
    """K 上の階段関数のテスト。"""

    def test_unit_ball(self, q5: FieldTowerSpec) -> None:
        """μ(O_K) = 1。"""
        assert haar_integral(SBFunction.indicator(Ball(q5.mid(0), 0))) == 1

    def test_small_ball(self, q5: FieldTowerSpec) -> None:
        """a + 25Z_5 の測度は 1/25。"""
        f = SBFunction.indicator(Ball(q5.mid(3), 2))
        assert haar_integral(f) == Fraction(1, 25)

    def test_additivity(self, f2: FieldTowerSpec) -> None:
        """3·Char(O_K) - Char(uO_K) の積分は 5/2。"""
        f = SBFunction.indicator(Ball(f2.mid(0), 0), 3) - SBFunction.indicator(
            Ball(f2.mid(0), 1)
        )
        assert haar_integral(f) == Fraction(5, 2)

    def test_point_mass(self, q5: FieldTowerSpec) -> None:
        """一点は測度零だが値は持つ。"""
        f = SBFunction.point_mass(q5.mid(0))
        assert haar_integral(f) == 0
        assert f.evaluate(q5.mid(0)) == 1
        assert f.evaluate(q5.mid(5)) == 0

    def test_canonical(self, f2: FieldTowerSpec) -> None:
        """入れ子の球を分割して互いに素にする。"""
        f = SBFunction.indicator(Ball(f2.mid(0), 0)) + SBFunction.indicator(
            Ball(f2.mid(0), 1)
        )
        g = f.canonical()
        assert len(g.terms) == 2
        assert haar_integral(g) == haar_integral(f) == Fraction(3, 2)
        for x in (f2.mid(0), f2.mid(1), f2.pi(1)):
            assert g.evaluate(x) == f.evaluate(x)

    def test_scale(self, q5: FieldTowerSpec) -> None:
        """w ↦ f(5w) の積分は |5|^{-1} 倍。"""
        f = SBFunction.indicator(Ball(q5.mid(1), 1), 2)
        g = f.scale(q5.mid(5))
        assert haar_integral(g) == 5 * haar_integral(f)
        assert g.evaluate(q5.mid(Fraction(1, 5))) == 2

    def test_shift(self, q5: FieldTowerSpec) -> None:
        """w ↦ f(w + a)。"""
        f = SBFunction.indicator(Ball(q5.mid(1), 1))
        g = f.shift(q5.mid(1))
        assert g.evaluate(q5.mid(0)) == 1
        assert g.evaluate(q5.mid(1)) == 0


class TestSBFunction2:
    """K×K 上の階段関数のテスト。"""

    def test_double_integral(self, q5: FieldTowerSpec) -> None:
        """3·Char(O_K × πO_K) の積分は 3/5。"""
        f = SBFunction2.rectangle(Ball(q5.mid(0), 0), Ball(q5.mid(0), 1), 3)
        assert f.haar_integral() == Fraction(3, 5)

    def test_slices_and_marginals(self, q5: FieldTowerSpec) -> None:
        """切り口と周辺積分。"""
        f = SBFunction2.rectangle(Ball(q5.mid(0), 1), Ball(q5.mid(2), 0), 4)
        assert f.slice_at(q5.mid(5)).evaluate(q5.mid(2)) == 4
        assert f.slice_at(q5.mid(1)).is_zero
        assert f.marginal_first().evaluate(q5.mid(0)) == 4
        assert f.marginal_second().evaluate(q5.mid(7)) == Fraction(4, 5)
        assert f.marginal_first().haar_integral() == f.haar_integral()
