"""元・多項式・体仕様の構文解析モジュール。

文法:
    expr  := ['+'|'-'] term (('+'|'-') term)*
    term  := unary (('*'|'/') unary)*
    unary := '-' unary | power
    power := atom ('^' exponent)?
    atom  := NUMBER | NAME | '(' expr ')' | 'O(' base ['^' exponent] ')'

NAME は t, u（LAURENT のみ）, a（f > 1 の剰余体の生成元）, X（多項式のみ）
および呼び出し側が渡す名前付き定数。
"""

import re
from collections.abc import Mapping
from dataclasses import dataclass

from src.errors import FubiniError, InvalidInput, ParseError
from src.tower.field import FieldTowerSpec, MiddleKind
from src.tower.mid import LaurentElement, MidElement
from src.tower.two import TwoElement

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")
_QP = re.compile(r"^\s*Qp\(\s*(\d+)\s*\)\(\(t\)\)\s*$")
_FQ = re.compile(r"^\s*Fq\(\s*(\d+)\s*,\s*(\d+)\s*\)\(\(u\)\)\(\(t\)\)\s*$")

PolyTerms = dict[int, TwoElement]
Constant = TwoElement | MidElement


def parse_field(text: str) -> FieldTowerSpec:
    """体の塔の仕様文字列 `Qp(5)((t))` / `Fq(5,1)((u))((t))` を解析する。"""
    if match := _QP.match(text):
        kind, groups = MiddleKind.PADIC, (match.group(1), "1")
    elif match := _FQ.match(text):
        kind, groups = MiddleKind.LAURENT, (match.group(1), match.group(2))
    else:
        raise ParseError("expected Qp(p)((t)) or Fq(p,f)((u))((t))", 0, text)
    try:
        return FieldTowerSpec(int(groups[0]), int(groups[1]), kind)
    except InvalidInput as e:
        raise ParseError(str(e), match.start(1), text) from e


@dataclass(frozen=True)
class _BigO:
    """O(t^n)（kind="t"）または O(π_K^n)（kind="mid"）。"""

    kind: str
    n: int


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    position: int


class _Parser:
    def __init__(
        self,
        text: str,
        field: FieldTowerSpec,
        constants: Mapping[str, Constant] | None,
        allow_x: bool,
        allow_t: bool = True,
    ) -> None:
        self.text = text
        self.field = field
        self.constants = dict(constants or {})
        self.allow_x = allow_x
        self.allow_t = allow_t
        self.tokens = self._tokenize()
        self.index = 0

    # =========================================================================
    # 字句解析
    # =========================================================================

    def _tokenize(self) -> list[_Token]:
        tokens = []
        pos = 0
        text = self.text
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            match = _TOKEN.match(text, pos)
            if not match or match.end() == pos:
                start = pos + len(text[pos:]) - len(text[pos:].lstrip())
                raise ParseError(f"unexpected character {text[start]!r}", start, text)
            number, name, op = match.groups()
            start = match.end() - len(number or name or op)
            if number:
                tokens.append(_Token("num", number, start))
            elif name:
                tokens.append(_Token("name", name, start))
            else:
                tokens.append(_Token("op", "^" if op == "**" else op, start))
            pos = match.end()
        tokens.append(_Token("end", "", len(text)))
        return tokens

    def _peek(self) -> _Token:
        return self.tokens[self.index]

    def _next(self) -> _Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _expect(self, text: str) -> None:
        token = self._next()
        if token.text != text:
            raise self._error(f"expected {text!r}", token)

    def _error(self, message: str, token: _Token | None = None) -> ParseError:
        token = token or self._peek()
        return ParseError(message, token.position, self.text)

    # =========================================================================
    # 多項式（X 次数 → F の元）の演算
    # =========================================================================

    def _const(self, value: Constant) -> PolyTerms:
        return {0: self.field.two(value)}

    def _add(self, a: PolyTerms, b: PolyTerms) -> PolyTerms:
        out = dict(a)
        for k, c in b.items():
            out[k] = out[k] + c if k in out else c
        return out

    def _mul(self, a: PolyTerms, b: PolyTerms) -> PolyTerms:
        out: PolyTerms = {}
        for i, c in a.items():
            for j, d in b.items():
                term = c * d
                out[i + j] = out[i + j] + term if i + j in out else term
        return out

    def _invert(self, value: PolyTerms, token: _Token) -> PolyTerms:
        if any(k != 0 for k, c in value.items() if not c.is_exact_zero()):
            raise self._error("cannot divide by a polynomial in X", token)
        try:
            return {0: value.get(0, self.field.two(0)).inv()}
        except FubiniError as e:
            raise self._error(f"cannot invert exactly: {e}", token) from e

    def _pow(self, base: PolyTerms, n: int, token: _Token) -> PolyTerms:
        if n < 0:
            base = self._invert(base, token)
            n = -n
        result = self._const(1)
        for _ in range(n):
            result = self._mul(result, base)
        return result

    # =========================================================================
    # 構文解析
    # =========================================================================

    def parse(self) -> tuple[PolyTerms, int | None, int | None]:
        value, mid_prec, t_prec = self._sum()
        if self._peek().kind != "end":
            raise self._error(f"unexpected token {self._peek().text!r}")
        return value, mid_prec, t_prec

    def _sum(self) -> tuple[PolyTerms, int | None, int | None]:
        acc: PolyTerms = {}
        mid_prec: int | None = None
        t_prec: int | None = None
        sign = 1
        if self._peek().text in "+-" and self._peek().kind == "op":
            sign = -1 if self._next().text == "-" else 1
        while True:
            term = self._term()
            if isinstance(term, _BigO):
                if term.kind == "t":
                    t_prec = term.n if t_prec is None else min(t_prec, term.n)
                else:
                    mid_prec = term.n if mid_prec is None else min(mid_prec, term.n)
            else:
                if sign < 0:
                    term = {k: -c for k, c in term.items()}
                acc = self._add(acc, term)
            token = self._peek()
            if token.kind == "op" and token.text in ("+", "-"):
                self._next()
                sign = -1 if token.text == "-" else 1
                continue
            return acc, mid_prec, t_prec

    def _term(self) -> PolyTerms | _BigO:
        left = self._unary()
        while self._peek().kind == "op" and self._peek().text in ("*", "/"):
            op = self._next()
            right = self._unary()
            if isinstance(left, _BigO) or isinstance(right, _BigO):
                raise self._error("O(...) terms cannot be multiplied", op)
            left = self._mul(left, self._invert(right, op) if op.text == "/" else right)
        return left

    def _unary(self) -> PolyTerms | _BigO:
        token = self._peek()
        if token.kind == "op" and token.text == "-":
            self._next()
            value = self._unary()
            if isinstance(value, _BigO):
                return value
            return {k: -c for k, c in value.items()}
        return self._power()

    def _power(self) -> PolyTerms | _BigO:
        base = self._atom()
        token = self._peek()
        if token.kind == "op" and token.text == "^":
            self._next()
            if isinstance(base, _BigO):
                raise self._error("O(...) cannot be raised to a power", token)
            return self._pow(base, self._exponent(), token)
        return base

    def _exponent(self) -> int:
        token = self._peek()
        if token.kind == "op" and token.text == "(":
            self._next()
            n = self._exponent()
            self._expect(")")
            return n
        sign = 1
        if token.kind == "op" and token.text in ("-", "+"):
            sign = -1 if self._next().text == "-" else 1
        number = self._next()
        if number.kind != "num":
            raise self._error("expected an integer exponent", number)
        return sign * int(number.text)

    def _atom(self) -> PolyTerms | _BigO:
        token = self._next()
        if token.kind == "num":
            return self._const(self.field.mid(int(token.text)))
        if token.kind == "op" and token.text == "(":
            value, mid_prec, t_prec = self._sum()
            self._expect(")")
            return self._apply_precision(value, mid_prec, t_prec, token)
        if token.kind == "name":
            return self._name(token)
        raise self._error(f"unexpected token {token.text!r}", token)

    def _name(self, token: _Token) -> PolyTerms | _BigO:
        name = token.text
        field = self.field
        if name == "O" and self._peek().text == "(":
            return self._big_o()
        if name in self.constants:
            return self._const(self.constants[name])
        if name == "t" and self.allow_t:
            return {0: field.t(1)}
        if name == "u" and not field.is_padic:
            return self._const(LaurentElement(field, {1: 1}))
        if name == "a" and not field.is_padic and field.f > 1:
            return self._const(LaurentElement(field, {0: field.p}))
        if name == "X" and self.allow_x:
            return {1: field.two(1)}
        raise self._error(f"unknown name {name!r}", token)

    def _big_o(self) -> _BigO:
        self._expect("(")
        base = self._next()
        if base.kind == "name" and base.text == "t" and self.allow_t:
            kind = "t"
        elif base.kind == "name" and base.text == "u" and not self.field.is_padic:
            kind = "mid"
        elif (
            base.kind == "num"
            and self.field.is_padic
            and int(base.text) == self.field.p
        ):
            kind = "mid"
        else:
            raise self._error("expected a uniformizer inside O(...)", base)
        n = 1
        if self._peek().kind == "op" and self._peek().text == "^":
            self._next()
            n = self._exponent()
        self._expect(")")
        return _BigO(kind, n)

    def _apply_precision(
        self,
        value: PolyTerms,
        mid_prec: int | None,
        t_prec: int | None,
        token: _Token,
    ) -> PolyTerms:
        if mid_prec is not None:
            mid = self._mid_value(value, token).truncate(mid_prec)
            value = {0: self.field.two(mid)}
        if t_prec is not None:
            # 桁がすべて打ち消されても O(t^N) は残す
            value = value or {0: self.field.two(0)}
            value = {k: c.truncate(t_prec) for k, c in value.items()}
        return value

    def _mid_value(self, value: PolyTerms, token: _Token) -> MidElement:
        nonzero = {k: c for k, c in value.items() if not c.is_exact_zero()}
        if not nonzero:
            return self.field.mid(0)
        if set(nonzero) != {0} or any(e != 0 for e, _ in nonzero[0].coeffs):
            raise self._error("K-precision term must apply to an element of K", token)
        return nonzero[0].coefficient(0)


def parse_element(
    text: str,
    field: FieldTowerSpec,
    constants: Mapping[str, Constant] | None = None,
) -> TwoElement:
    """F の元を解析する。例: `(3 + 2*u^2 + O(u^5))*t^-1 + 1 + O(t^3)`。"""
    parser = _Parser(text, field, constants, allow_x=False)
    value, mid_prec, t_prec = parser.parse()
    value = parser._apply_precision(value, mid_prec, t_prec, parser.tokens[0])
    return value.get(0, field.two(0)) if value else field.two(0)


def parse_mid(
    text: str,
    field: FieldTowerSpec,
    constants: Mapping[str, Constant] | None = None,
) -> MidElement:
    """K の元を解析する（t と X は使えない）。"""
    parser = _Parser(text, field, constants, allow_x=False, allow_t=False)
    value, mid_prec, _ = parser.parse()
    element = parser._mid_value(value, parser.tokens[0])
    return element if mid_prec is None else element.truncate(mid_prec)


def parse_poly_terms(
    text: str,
    field: FieldTowerSpec,
    constants: Mapping[str, Constant] | None = None,
    allow_t: bool = True,
) -> PolyTerms:
    """X の多項式を次数 → 係数の辞書として解析する。"""
    parser = _Parser(text, field, constants, allow_x=True, allow_t=allow_t)
    value, mid_prec, t_prec = parser.parse()
    if mid_prec is not None:
        raise parser._error("K-precision terms are not allowed at polynomial level")
    if t_prec is not None:
        value = {k: c.truncate(t_prec) for k, c in value.items()}
    return value
