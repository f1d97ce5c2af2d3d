"""分解の総当たり検証のテスト。"""

from dataclasses import replace

import pytest

from src.decompose import decompose_preimage
from src.errors import InvalidInput
from src.oracle import GridSpec, OracleStatus, verify_decomposition
from src.polyarith import Poly
from src.tower import FieldTowerSpec

CUBIC = "X^3 + X^2 + t^2"


class TestVerifyDecomposition:
    """verify_decomposition のテスト。"""

    @pytest.mark.parametrize("name", ["q5", "f5"])
    def test_two_piece_decomposition(
        self, name: str, request: pytest.FixtureRequest
    ) -> None:
        """A = 2 の二片の分解は格子上で正しい。"""
        field: FieldTowerSpec = request.getfixturevalue(name)
        q = Poly.parse(CUBIC, field)
        dec = decompose_preimage(q, field.two(0), 2)
        report = verify_decomposition(q, field.two(0), 2, dec, GridSpec(3, 1))
        assert report.status == OracleStatus.PASS
        assert report.checked == field.q**3
        assert report.values["pieces"] == "2"

    def test_deeper_digits(self, q5: FieldTowerSpec) -> None:
        """u 方向に二桁の格子でも PASS。"""
        q = Poly.parse(CUBIC, q5)
        dec = decompose_preimage(q, q5.two(0), 2)
        report = verify_decomposition(q, q5.two(0), 2, dec, GridSpec(3, 2))
        assert report.passed

    def test_single_piece_q7(self, q7: FieldTowerSpec) -> None:
        """Q_7 で A = 3 の一片。"""
        q = Poly.parse(CUBIC, q7)
        dec = decompose_preimage(q, q7.two(0), 3)
        report = verify_decomposition(q, q7.two(0), 3, dec, GridSpec(4, 1))
        assert report.passed
        assert report.notes == ()

    def test_irrational_centers(self, q5: FieldTowerSpec) -> None:
        """中心が有理数でない片は格子点を持たないが判定は PASS。"""
        q = Poly.parse(CUBIC, q5)
        dec = decompose_preimage(q, q5.two(0), 3)
        report = verify_decomposition(q, q5.two(0), 3, dec, GridSpec(4, 1))
        assert report.passed
        assert any("no grid point" in note for note in report.notes)

    def test_deleted_piece(self, q5: FieldTowerSpec) -> None:
        """片を一つ消すと完全性の証拠が出る。"""
        q = Poly.parse(CUBIC, q5)
        dec = decompose_preimage(q, q5.two(0), 2)
        mutated = replace(dec, pieces=dec.pieces[1:])
        report = verify_decomposition(q, q5.two(0), 2, mutated, GridSpec(3, 1))
        assert report.status == OracleStatus.FAIL
        assert "completeness" in {w.kind for w in report.witnesses}

    def test_duplicated_piece(self, q5: FieldTowerSpec) -> None:
        """片を重複させると互いに素でなくなる。"""
        q = Poly.parse(CUBIC, q5)
        dec = decompose_preimage(q, q5.two(0), 2)
        mutated = replace(dec, pieces=dec.pieces + dec.pieces[:1])
        report = verify_decomposition(q, q5.two(0), 2, mutated, GridSpec(3, 1))
        assert report.status == OracleStatus.FAIL
        assert {w.kind for w in report.witnesses} == {"disjointness"}

    def test_wrong_psi(self, q5: FieldTowerSpec) -> None:
        """ψ を取り替えると代入の検証に失敗する。"""
        q = Poly.parse(CUBIC, q5)
        dec = decompose_preimage(q, q5.two(0), 2)
        first = dec.pieces[0]
        wrong = replace(first, approx=replace(first.approx, psi=first.psi + 1))
        mutated = replace(dec, pieces=(wrong,) + dec.pieces[1:])
        report = verify_decomposition(q, q5.two(0), 2, mutated, GridSpec(3, 1))
        assert report.status == OracleStatus.FAIL
        assert {w.kind for w in report.witnesses} == {"psi"}

    def test_grid_too_shallow(self, q5: FieldTowerSpec) -> None:
        """t_depth < A + 1 は不正。"""
        q = Poly.parse(CUBIC, q5)
        dec = decompose_preimage(q, q5.two(0), 2)
        with pytest.raises(InvalidInput):
            verify_decomposition(q, q5.two(0), 2, dec, GridSpec(2, 1))
