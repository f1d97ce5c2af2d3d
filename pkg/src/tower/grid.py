"""桁格子の列挙モジュール。"""

from fractions import Fraction
from itertools import product

from src.errors import GridTooLarge, InvalidInput
from src.tower.field import FieldTowerSpec, Level
from src.tower.mid import LaurentElement, MidElement, PadicElement
from src.tower.two import TwoElement


def grid_size(
    field: FieldTowerSpec,
    level: Level,
    t_depth: int,
    u_depth: int,
    u_offset: int = 0,
) -> int:
    mid_size = field.q ** (u_depth + u_offset)
    return mid_size if level == Level.K else mid_size**t_depth


def mid_digits(
    field: FieldTowerSpec, u_depth: int, u_offset: int = 0
) -> list[MidElement]:
    """π_K^{-offset}·O_K を π_K^{u_depth} を法として代表する元の一覧。"""
    if field.is_padic:
        p = field.p
        scale = Fraction(p) ** (-u_offset)
        count = p ** (u_depth + u_offset)
        return [PadicElement(field, k * scale) for k in range(count)]
    exponents = range(-u_offset, u_depth)
    return [
        LaurentElement(field, dict(zip(exponents, digits, strict=True)))
        for digits in product(field.residue.elements(), repeat=len(exponents))
    ]


def digit_grid(
    field: FieldTowerSpec,
    level: Level,
    t_depth: int,
    u_depth: int,
    cap: int | None = None,
    u_offset: int = 0,
) -> list[MidElement] | list[TwoElement]:
    """桁の深さを指定した標準代表元を列挙する。

    Args:
        field: 体の塔
        level: K なら K の元、F なら t 進桁 t_depth 個の F の元
        t_depth: t 進の桁数（F のみ）
        u_depth: π_K 進の桁数
        cap: 列挙サイズの上限（超えると GridTooLarge）
        u_offset: K の桁を π_K^{-offset} から始める

    Returns:
        list: 互いに異なる厳密な元のリスト
    """
    if t_depth < 1 or u_depth < 1:
        raise InvalidInput("grid depths must be positive")
    size = grid_size(field, level, t_depth, u_depth, u_offset)
    if cap is not None and size > cap:
        raise GridTooLarge(size, cap)
    digits = mid_digits(field, u_depth, u_offset)
    if level == Level.K:
        return digits
    return [
        TwoElement(field, dict(enumerate(coeffs)))
        for coeffs in product(digits, repeat=t_depth)
    ]
