"""コマンドラインインターフェースのテスト。"""

import json
from collections.abc import Generator
from pathlib import Path

import pytest

from src.cli.app import EXIT_MISMATCH, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE, main
from src.config.settings import get_settings
from src.schemas.models import ScenarioReport

CUBIC = "X^3 + X^2 + t^2"
UNIT_SQUARE = [{"centers": ["0", "0"], "radius_exponents": [0, 0], "value": "1"}]


@pytest.fixture(autouse=True)
def fresh_settings() -> Generator[None, None, None]:
    """--seed / --precision による設定の変更を次のテストに持ち越さない。"""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def square_file(tmp_path: Path) -> Path:
    """単位正方形の関数ファイル。"""
    path = tmp_path / "square.json"
    path.write_text(json.dumps(UNIT_SQUARE), encoding="utf-8")
    return path


class TestDecompose:
    """decompose コマンドのテスト。"""

    def test_human_output(self, capsys: pytest.CaptureFixture[str]) -> None:
        """片の一覧を表示する。"""
        assert main(["decompose", "--q", CUBIC, "--A", "2"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "2 pieces" in out
        assert "psi=X + 1" in out

    def test_json_output(self, capsys: pytest.CaptureFixture[str]) -> None:
        """--json では DecomposeResponse の JSON を出す。"""
        assert main(["--json", "decompose", "--q", CUBIC, "--A", "2"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["field"] == "Qp(5)((t))"
        assert [p["exponent"] for p in data["pieces"]] == [1, 2]

    def test_parse_error(self, capsys: pytest.CaptureFixture[str]) -> None:
        """解析できない多項式は終了コード 2。"""
        assert main(["decompose", "--q", "X^^2", "--A", "1"]) == EXIT_USAGE
        assert "error:" in capsys.readouterr().err

    def test_parse_error_json(self, capsys: pytest.CaptureFixture[str]) -> None:
        """--json では診断を JSON で標準エラーに出す。"""
        code = main(["--json", "--field", "Zp(5)", "decompose", "--q", "X", "--A", "1"])
        assert code == EXIT_USAGE
        err = capsys.readouterr().err
        error = json.loads(err.strip().splitlines()[-1])
        assert error["error"] == "parse_error"

    def test_non_prime_field(self, capsys: pytest.CaptureFixture[str]) -> None:
        """素数でない p の体は終了コード 2。"""
        args = ["--field", "Qp(4)((t))", "decompose", "--q", CUBIC, "--A", "2"]
        assert main(args) == EXIT_USAGE
        assert "not prime" in capsys.readouterr().err

    def test_missing_argument(self) -> None:
        """必須引数がなければ argparse が終了する。"""
        with pytest.raises(SystemExit) as e:
            main(["decompose", "--q", CUBIC])
        assert e.value.code == 2


class TestIntegrate:
    """integrate コマンドのテスト。"""

    def test_integrate(
        self, tmp_path: Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """単位球の n=1 の持ち上げに -2 を掛けると -2*X。"""
        path = tmp_path / "g.json"
        terms = [
            {
                "function": [{"center": "0", "radius_exponent": 0}],
                "n": 1,
                "coeff": "-2",
            }
        ]
        path.write_text(json.dumps(terms), encoding="utf-8")
        code = main(["--field", "Qp(3)((t))", "integrate", "--function", str(path)])
        assert code == EXIT_OK
        assert capsys.readouterr().out.strip() == "-2*X"

    def test_missing_file(self, tmp_path: Path) -> None:
        """読めないファイルは終了コード 2。"""
        missing = str(tmp_path / "missing.json")
        assert main(["integrate", "--function", missing]) == EXIT_USAGE

    def test_malformed_file(self, tmp_path: Path) -> None:
        """JSON でないファイルは終了コード 2。"""
        path = tmp_path / "broken.json"
        path.write_text("[{", encoding="utf-8")
        assert main(["integrate", "--function", str(path)]) == EXIT_USAGE


class TestFubini:
    """fubini コマンドのテスト。"""

    def test_counterexample(
        self, square_file: Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """標数 p の反例を判定する。"""
        code = main(
            [
                "--json",
                "--field",
                "Fq(5,1)((u))((t))",
                "fubini",
                "--h",
                "t^-1*X^5",
                "--f",
                str(square_file),
            ]
        )
        assert code == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["verdict"] == "COUNTEREXAMPLE"
        assert (data["dydx"], data["dxdy"]) == ("1", "0")

    def test_human_output(
        self, square_file: Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """判定と値を一行ずつ表示する。"""
        args = ["fubini", "--h", "X^2 + t*X", "--data", "0,0,1,0"]
        assert main([*args, "--f", str(square_file)]) == EXIT_OK
        out = capsys.readouterr().out
        assert "verdict: HOLDS" in out
        assert "dxdy: X" in out

    def test_bad_data(self, square_file: Path) -> None:
        """data の形が不正なら終了コード 2。"""
        args = ["fubini", "--h", "X", "--data", "0,0", "--f", str(square_file)]
        assert main(args) == EXIT_USAGE


class TestJIntegral:
    """j-integral コマンドのテスト。"""

    def test_j_integral(
        self, square_file: Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """∫J と ∫∫f を表示する。"""
        args = ["--json", "j-integral", "--qbar", "X^2", "--f", str(square_file)]
        assert main(args) == EXIT_OK
        assert json.loads(capsys.readouterr().out) == {
            "value": "1",
            "haar_integral": "1",
        }


class TestOracle:
    """oracle コマンドのテスト。"""

    def test_verify_decomposition(self, capsys: pytest.CaptureFixture[str]) -> None:
        """分解の検証が PASS なら終了コード 0。"""
        args = ["oracle", "verify-decomposition", "--q", CUBIC, "--A", "2"]
        assert main([*args, "--grid", "3:1"]) == EXIT_OK
        assert "verify-decomposition: PASS" in capsys.readouterr().out

    def test_grid_too_large(self, capsys: pytest.CaptureFixture[str]) -> None:
        """格子が上限を超えれば終了コード 3。"""
        args = ["oracle", "verify-decomposition", "--q", CUBIC, "--A", "2"]
        assert main([*args, "--grid", "9:9"]) == EXIT_RESOURCE
        assert "grid" in capsys.readouterr().err

    def test_verify_laws(self, capsys: pytest.CaptureFixture[str]) -> None:
        """--seed を与えると再現できる。"""
        args = ["--json", "--seed", "7", "--field", "Fq(3,1)((u))((t))"]
        code = main([*args, "oracle", "verify-laws", "--samples", "5"])
        assert code == EXIT_OK
        assert json.loads(capsys.readouterr().out)["status"] == "PASS"

    def test_verify_repeated(
        self, square_file: Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """反例でも二つの和はエンジンの値と一致する。"""
        args = ["--field", "Fq(5,1)((u))((t))", "oracle", "verify-repeated"]
        code = main(
            [*args, "--h", "t^-1*X^5", "--f", str(square_file), "--grid", "2:1"]
        )
        assert code == EXIT_OK
        out = capsys.readouterr().out
        assert "dydx_sum = 1" in out
        assert "dxdy_sum = 0" in out


class TestScenario:
    """scenario コマンドのテスト。"""

    def test_list(self, capsys: pytest.CaptureFixture[str]) -> None:
        """--list は名前を一行ずつ出す。"""
        assert main(["scenario", "--list"]) == EXIT_OK
        names = capsys.readouterr().out.split()
        assert len(names) == 10
        assert names == sorted(names)

    def test_run_one(self, capsys: pytest.CaptureFixture[str]) -> None:
        """一つのシナリオを実行する。"""
        assert main(["--json", "scenario", "minus-2X"]) == EXIT_OK
        (report,) = json.loads(capsys.readouterr().out)
        assert report["status"] == "PASS"

    def test_run_all(self, capsys: pytest.CaptureFixture[str]) -> None:
        """--all はすべてのシナリオを実行する。"""
        assert main(["scenario", "--all"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 10
        assert all(line.endswith(": PASS") for line in lines)

    def test_unknown(self) -> None:
        """存在しないシナリオは終了コード 2。"""
        assert main(["scenario", "no-such-scenario"]) == EXIT_USAGE

    def test_no_name(self) -> None:
        """名前も --all も --list もなければ終了コード 2。"""
        assert main(["scenario"]) == EXIT_USAGE

    def test_failed_scenario(
        self, monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """期待値と違うシナリオがあれば終了コード 1。"""
        report = ScenarioReport(
            name="minus-2X",
            status="FAIL",
            mismatches=["integral: expected -2*X, got 0"],
        )
        monkeypatch.setattr("src.cli.app.run_scenario", lambda name: report)
        assert main(["scenario", "minus-2X"]) == EXIT_MISMATCH
        assert "mismatch: integral" in capsys.readouterr().out
