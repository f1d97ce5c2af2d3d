"""ヘンゼル持ち上げと根の探索のテスト。"""

import pytest

from src.errors import NotSimpleRoot, RootSearchBudgetExceeded
from src.polyarith import Poly, hensel_lift, is_purely_inseparable, roots_over_K
from src.tower import (
    AtLeast,
    FieldTowerSpec,
    LaurentElement,
    Level,
    mid_digits,
    parse_element,
    working_precision,
)


class TestHenselLift:
    """hensel_lift のテスト。"""

    def test_binomial_series(self, q5: FieldTowerSpec) -> None:
        """X^2 - (1+t) の根 1 + t/2 - t^2/8。"""
        q = Poly.parse("X^2 - (1 + t)", q5)
        a = hensel_lift(q, q5.mid(1), q5.two(0), 3)
        assert a == parse_element("1 + t/2 - t^2/8 + O(t^3)", q5)
        assert (a * a - q5.two(1) - q5.t(1)).valuation().at_least(3)

    def test_identity(self, f5: FieldTowerSpec) -> None:
        """q = X の根は 0。"""
        a = hensel_lift(Poly.parse("X", f5), f5.mid(0), f5.two(0), 4)
        assert a.reduced(4) == f5.two(0)

    def test_not_simple(self, q5: FieldTowerSpec) -> None:
        """q = X^2, ω = 0 は NotSimpleRoot。"""
        with pytest.raises(NotSimpleRoot):
            hensel_lift(Poly.parse("X^2", q5), q5.mid(0), q5.two(0), 2)

    def test_approximate_root(self, q5: FieldTowerSpec) -> None:
        """近似根 i からの持ち上げでは i^2 + 1 の打ち消しを作業精度で零とみなす。"""
        psi = Poly.parse("X^2 + 1", q5, Level.K)
        roots = roots_over_K(psi, precision=10)
        (i,) = [r.value for r in roots if r.value.residue() == 2]
        q = Poly.parse("X^2 + 1 + t", q5)
        a = hensel_lift(q, i, q5.two(0), 3, mid_precision=10)
        assert a.residue() == i
        with working_precision(10):
            assert q.evaluate(a).valuation().at_least(3)
        with working_precision(40):
            assert q.evaluate(a).valuation() == AtLeast(0)

    def test_laurent_coefficients(self, f5: FieldTowerSpec) -> None:
        """係数に u を含む場合も q(a) ≡ b が成り立つ。"""
        q = Poly.parse("X^2 + u*t*X - 1", f5)
        b = parse_element("t^2", f5)
        a = hensel_lift(q, f5.mid(1), b, 5)
        assert (q.evaluate(a) - b).valuation().at_least(5)
        assert a.residue() == f5.mid(1)


class TestRootsOverK:
    """roots_over_K のテスト。"""

    def test_square_root_of_minus_one_f5(self, f5: FieldTowerSpec) -> None:
        """F_5((u)) で X^2 + 1 の根は 2, 3。"""
        roots = roots_over_K(Poly.parse("X^2 + 1", f5, Level.K))
        assert [r.value for r in roots] == [f5.mid(2), f5.mid(3)]
        assert all(r.simple for r in roots)

    def test_no_root_f7(self) -> None:
        """F_7((u)) で X^2 + 1 は根を持たない。"""
        f7 = FieldTowerSpec.laurent(7)
        assert roots_over_K(Poly.parse("X^2 + 1", f7, Level.K)) == []

    def test_linear(self, q5: FieldTowerSpec) -> None:
        """X の根は 0（単根）。"""
        roots = roots_over_K(Poly.parse("X", q5, Level.K))
        assert len(roots) == 1
        assert roots[0].value == q5.mid(0)
        assert roots[0].simple

    def test_rational_roots_exact(self, q5: FieldTowerSpec) -> None:
        """有理根は厳密に求まる。"""
        roots = roots_over_K(Poly.parse("3*X^2 + 2*X", q5, Level.K))
        assert {str(r.value) for r in roots} == {"0", "-2/3"}

    def test_padic_irrational_roots(self, q5: FieldTowerSpec) -> None:
        """Q_5 の i は精度 m で i^2 + 1 ≡ 0。"""
        psi = Poly.parse("X^2 + 1", q5, Level.K)
        roots = roots_over_K(psi, precision=10)
        assert sorted(r.value.residue() for r in roots) == [2, 3]
        for r in roots:
            assert psi.evaluate(r.value).valuation().at_least(10)

    def test_completeness_on_grid(self, q5: FieldTowerSpec) -> None:
        """ψ(g) ≡ 0 (mod 5^3) の格子点は根から 5^3 以内にある。"""
        psi = Poly.parse("X^2 + 1", q5, Level.K)
        roots = roots_over_K(psi, precision=8)
        for g in mid_digits(q5, 3):
            if psi.evaluate(g).valuation().at_least(3):
                assert any((g - r.value).valuation().at_least(3) for r in roots)

    def test_repeated_laurent_root(self, f5: FieldTowerSpec) -> None:
        """(X - u)^2 の根 u は重根。"""
        psi = Poly.parse("(X - u)^2", f5, Level.K)
        roots = roots_over_K(psi)
        assert [r.value for r in roots] == [LaurentElement(f5, {1: 1})]
        assert not roots[0].simple

    def test_budget_exhausted(self, q5: FieldTowerSpec) -> None:
        """無理数の重根は予算切れで報告される。"""
        psi = Poly.parse("(X^2 + 1)^2", q5, Level.K)
        with pytest.raises(RootSearchBudgetExceeded) as exc:
            roots_over_K(psi, budget=3)
        assert len(exc.value.unresolved) == 2


class TestPurelyInseparable:
    """is_purely_inseparable のテスト。"""

    def test_examples(
        self, f5: FieldTowerSpec, q5: FieldTowerSpec, f2: FieldTowerSpec
    ) -> None:
        """X^5 / F_5、X^2 / Q_5、X^4 + X^2 / F_2。"""
        assert is_purely_inseparable(Poly.parse("X^5", f5, Level.K))
        assert not is_purely_inseparable(Poly.parse("X^2", q5, Level.K))
        assert is_purely_inseparable(Poly.parse("X^4 + X^2", f2, Level.K))
