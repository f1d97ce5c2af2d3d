"""有限体 F_q の算術モジュール。

元は 0..q-1 の整数で表す（p 進表記の各桁が多項式係数）。
f > 1 のときは辞書式最小のモニック既約多項式を法として sympy の
galoistools で計算する。
"""

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_pow_mod, gf_rem

from src.errors import DivisionByZero


@dataclass(frozen=True)
class ResidueField:
    """有限体 F_q（q = p^f）。"""

    p: int
    f: int = 1
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @property
    def q(self) -> int:
        return self.p**self.f

    @cached_property
    def modulus(self) -> list[int]:
        """F_p 上の定義多項式（降冪の係数リスト）。"""
        if self.f == 1:
            return [1, 0]
        for tail in product(range(self.p), repeat=self.f):
            candidate = [1, *tail]
            if gf_irreducible_p([ZZ(c) for c in candidate], self.p, ZZ):
                return candidate
        raise ValueError(f"no irreducible polynomial of degree {self.f} mod {self.p}")

    def elements(self) -> range:
        return range(self.q)

    # =========================================================================
    # 符号化
    # =========================================================================

    def _to_poly(self, a: int) -> list[int]:
        digits = []
        for _ in range(self.f):
            digits.append(a % self.p)
            a //= self.p
        while len(digits) > 1 and digits[-1] == 0:
            digits.pop()
        return [ZZ(d) for d in reversed(digits)]

    def _from_poly(self, coeffs: list) -> int:
        value = 0
        for c in coeffs:
            value = value * self.p + int(c) % self.p
        return value

    def from_int(self, n: int) -> int:
        """整数の F_p への像（素体への埋め込み）。"""
        return n % self.p

    # =========================================================================
    # 算術
    # =========================================================================

    def add(self, a: int, b: int) -> int:
        if self.f == 1:
            return (a + b) % self.p
        result, place = 0, 1
        for _ in range(self.f):
            result += ((a % self.p + b % self.p) % self.p) * place
            a //= self.p
            b //= self.p
            place *= self.p
        return result

    def neg(self, a: int) -> int:
        if self.f == 1:
            return (-a) % self.p
        result, place = 0, 1
        for _ in range(self.f):
            result += ((-(a % self.p)) % self.p) * place
            a //= self.p
            place *= self.p
        return result

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.f == 1:
            return (a * b) % self.p
        key = (a, b) if a <= b else (b, a)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        modulus = [ZZ(c) for c in self.modulus]
        product_poly = gf_mul(self._to_poly(a), self._to_poly(b), self.p, ZZ)
        result = self._from_poly(gf_rem(product_poly, modulus, self.p, ZZ))
        self._cache[key] = result
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero in residue field")
        if self.f == 1:
            return pow(a, self.p - 2, self.p)
        modulus = [ZZ(c) for c in self.modulus]
        return self._from_poly(
            gf_pow_mod(self._to_poly(a), self.q - 2, modulus, self.p, ZZ)
        )

    def power(self, a: int, n: int) -> int:
        if n < 0:
            return self.power(self.inv(a), -n)
        result = 1
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    # =========================================================================
    # 表示
    # =========================================================================

    def format(self, a: int) -> str:
        """元を文字列にする。f > 1 では生成元 a の多項式で書く。"""
        if self.f == 1:
            return str(a)
        digits = []
        n = a
        for _ in range(self.f):
            digits.append(n % self.p)
            n //= self.p
        terms = []
        for k in range(self.f - 1, -1, -1):
            d = digits[k]
            if d == 0:
                continue
            if k == 0:
                terms.append(str(d))
            else:
                mono = "a" if k == 1 else f"a^{k}"
                terms.append(mono if d == 1 else f"{d}*{mono}")
        if not terms:
            return "0"
        text = " + ".join(terms)
        return text if len(terms) == 1 and "*" not in text else f"({text})"
