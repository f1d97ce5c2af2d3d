"""例外定義モジュール。

エンジン全体で共有する例外階層を定義する。
CLIの終了コードとAPIのステータスは code / resource 属性から決まる。
"""

from typing import Any


class FubiniError(Exception):
    """エンジン例外の基底クラス。"""

    code: str = "engine_error"
    resource: bool = False

    def to_dict(self) -> dict[str, Any]:
        """診断用の辞書表現を返す。"""
        return {"error": self.code, "message": str(self)}


# =============================================================================
# 精度・付値
# =============================================================================


class InsufficientPrecision(FubiniError):
    """要求された桁が現在の精度から導出できない。"""

    code = "insufficient_precision"

    def __init__(self, required: int | None = None, message: str = "") -> None:
        self.required = required
        super().__init__(message or f"insufficient precision (required={required})")

    def to_dict(self) -> dict[str, Any]:
        return {**super().to_dict(), "required": self.required}


class NegativeValuation(FubiniError):
    """付値が負の元に剰余写像を適用した。"""

    code = "negative_valuation"


class DivisionByZero(FubiniError):
    """零であることが確定した元の逆元を求めた。"""

    code = "division_by_zero"


# =============================================================================
# 多項式・分解
# =============================================================================


class NotSimpleRoot(FubiniError):
    """ヘンゼル持ち上げの初期値が単根でない。"""

    code = "not_simple_root"


class RootSearchBudgetExceeded(FubiniError):
    """重根の再帰探索が予算を使い切った。"""

    code = "root_search_budget_exceeded"
    resource = True

    def __init__(
        self,
        partial: list[Any] | None = None,
        unresolved: list[Any] | None = None,
        message: str = "",
    ) -> None:
        self.partial = partial or []
        self.unresolved = unresolved or []
        super().__init__(
            message
            or f"root search budget exceeded ({len(self.unresolved)} unresolved)"
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            **super().to_dict(),
            "partial": [str(r) for r in self.partial],
            "unresolved": [str(u) for u in self.unresolved],
        }


class NotContained(FubiniError):
    """多項式像が目標の平行移動イデアルに含まれない。"""

    code = "not_contained"


class PurelyInseparable(FubiniError):
    """剰余多項式が純非分離的で、導関数が恒等的に零。"""

    code = "purely_inseparable"


# =============================================================================
# 測度・フビニ
# =============================================================================


class UnsupportedFiberStructure(FubiniError):
    """ファイバー構造が保証クラスの外にある。"""

    code = "unsupported_fiber_structure"


class PatternNotRecognized(FubiniError):
    """拡張零測度規約が適用できる形ではない。"""

    code = "pattern_not_recognized"


class GridTooLarge(FubiniError):
    """格子の列挙サイズが上限を超える。"""

    code = "grid_too_large"
    resource = True

    def __init__(self, size: int, cap: int) -> None:
        self.size = size
        self.cap = cap
        super().__init__(f"grid of size {size} exceeds cap {cap}")


# =============================================================================
# 入力・シナリオ
# =============================================================================


class ParseError(FubiniError):
    """入力文字列の構文エラー（位置付き）。"""

    code = "parse_error"

    def __init__(
        self, message: str, position: int | None = None, text: str = ""
    ) -> None:
        self.position = position
        self.text = text
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}")

    def to_dict(self) -> dict[str, Any]:
        return {**super().to_dict(), "position": self.position, "text": self.text}


class InvalidInput(FubiniError):
    """前提条件を満たさない入力。"""

    code = "invalid_input"


class UnknownScenario(FubiniError):
    """同梱シナリオに存在しない名前。"""

    code = "unknown_scenario"

    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"unknown scenario: {name}")
