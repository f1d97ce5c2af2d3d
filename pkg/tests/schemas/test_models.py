"""Pydanticモデルのテスト。"""

import pytest
from pydantic import ValidationError

from src.errors import ParseError
from src.schemas.models import (
    ConjectureDataModel,
    DecomposeRequest,
    FubiniRequest,
    LiftedTermModel,
    OracleLawsRequest,
    SB2Term,
    SBTerm,
    Scenario,
    VerdictModel,
)

UNIT_SQUARE = [{"centers": ["0", "0"], "radius_exponents": [0, 0]}]


class TestFunctionTerms:
    """階段関数の項モデルのテスト。"""

    def test_sb_term_defaults(self) -> None:
        """半径と値の既定は一点と 1。"""
        term = SBTerm(center="3")
        assert term.radius_exponent is None
        assert term.value == "1"

    def test_sb2_term_point_factor(self) -> None:
        """片方の因子だけ一点にできる。"""
        term = SB2Term(centers=("0", "1"), radius_exponents=(0, None), value="2/3")
        assert term.radius_exponents == (0, None)

    def test_lifted_term_defaults(self) -> None:
        """持ち上げの既定は a=0, n=0, 係数 1。"""
        term = LiftedTermModel(function=[SBTerm(center="0", radius_exponent=0)])
        assert (term.a, term.n, term.coeff) == ("0", 0, "1")


class TestConjectureDataModel:
    """ConjectureDataModel のテスト。"""

    def test_parse(self) -> None:
        """`a1,a2,n1,n2` を読める。"""
        data = ConjectureDataModel.parse("t, 1 + t, 2, -1")
        assert data == ConjectureDataModel(a1="t", a2="1 + t", n1=2, n2=-1)

    @pytest.mark.parametrize("text", ["0,0,0", "0,0,0,0,0", "0,0,x,0"])
    def test_parse_rejects_malformed(self, text: str) -> None:
        """項の数や指数が不正なら ParseError。"""
        with pytest.raises(ParseError):
            ConjectureDataModel.parse(text)


class TestRequests:
    """リクエストモデルのテスト。"""

    def test_decompose_depth_positive(self) -> None:
        """A は 1 以上。"""
        with pytest.raises(ValidationError):
            DecomposeRequest(field="Qp(5)((t))", q="X^2", A=0)

    def test_fubini_data_from_text(self) -> None:
        """data は文字列でも受け付ける。"""
        request = FubiniRequest(
            field="Qp(5)((t))", h="X^2", data="0,0,1,0", f=UNIT_SQUARE
        )
        assert request.data.n1 == 1
        assert request.extended is None

    def test_fubini_data_default(self) -> None:
        """data を省略すると (0, 0, 0, 0)。"""
        request = FubiniRequest(field="Qp(5)((t))", h="X^2", f=UNIT_SQUARE)
        assert request.data == ConjectureDataModel()

    def test_oracle_samples_nonnegative(self) -> None:
        """標本数は負にできない。"""
        with pytest.raises(ValidationError):
            OracleLawsRequest(field="Qp(5)((t))", samples=-1)


class TestVerdictModel:
    """VerdictModel のテスト。"""

    def test_unknown_verdict_rejected(self) -> None:
        """判定は四種類のみ。"""
        with pytest.raises(ValidationError):
            VerdictModel(verdict="MAYBE", dydx="1")

    def test_optional_fields(self) -> None:
        """NOT_INTEGRABLE では dxdy を持たない。"""
        model = VerdictModel(verdict="NOT_INTEGRABLE", dydx="1")
        assert model.dxdy is None
        assert model.divergent == []


class TestScenario:
    """Scenario のテスト。"""

    def _payload(self, **overrides: object) -> dict:
        payload = {
            "name": "demo",
            "provenance": "hand computation",
            "command": "integrate",
            "field": "Qp(5)((t))",
            "inputs": {"function": []},
            "expected": {"integral": "0"},
        }
        return {**payload, **overrides}

    def test_valid(self) -> None:
        """必要な項目がそろえば読める。"""
        scenario = Scenario.model_validate(self._payload())
        assert scenario.constants == {}

    def test_provenance_required(self) -> None:
        """出典が空のシナリオは不正。"""
        with pytest.raises(ValidationError):
            Scenario.model_validate(self._payload(provenance="  "))

    def test_unknown_command(self) -> None:
        """未知のコマンドは不正。"""
        with pytest.raises(ValidationError):
            Scenario.model_validate(self._payload(command="oracle"))

    def test_named_constant(self) -> None:
        """名前付き定数は多項式と剰余で指定する。"""
        scenario = Scenario.model_validate(
            self._payload(constants={"i": {"poly": "X^2 + 1", "residue": 2}})
        )
        assert scenario.constants["i"].residue == 2
