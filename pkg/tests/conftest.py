"""pytest共通フィクスチャ。"""

import tempfile
from collections.abc import Generator
from pathlib import Path
from unittest.mock import patch

import pytest
from fastapi.testclient import TestClient

from src.tower import FieldTowerSpec


@pytest.fixture
def q5() -> FieldTowerSpec:
    """Q_5((t))。"""
    return FieldTowerSpec.padic(5)


@pytest.fixture
def q7() -> FieldTowerSpec:
    """Q_7((t))。"""
    return FieldTowerSpec.padic(7)


@pytest.fixture
def q3() -> FieldTowerSpec:
    """Q_3((t))。"""
    return FieldTowerSpec.padic(3)


@pytest.fixture
def f5() -> FieldTowerSpec:
    """F_5((u))((t))。"""
    return FieldTowerSpec.laurent(5)


@pytest.fixture
def f3() -> FieldTowerSpec:
    """F_3((u))((t))。"""
    return FieldTowerSpec.laurent(3)


@pytest.fixture
def f2() -> FieldTowerSpec:
    """F_2((u))((t))。"""
    return FieldTowerSpec.laurent(2)


@pytest.fixture
def mock_settings() -> Generator[None, None, None]:
    """設定をモックするフィクスチャ。"""
    with patch("src.config.settings.get_settings") as mock:
        mock_settings = mock.return_value
        mock_settings.log_dir = Path(tempfile.gettempdir()) / "test_logs"
        mock_settings.log_level = "DEBUG"
        mock_settings.log_file_name = "fubini.log"
        mock_settings.debug_mode = True
        mock_settings.mid_precision = 16
        mock_settings.t_precision = 8
        mock_settings.extended_mode = False
        yield


@pytest.fixture
def test_client(mock_settings: None) -> Generator[TestClient, None, None]:
    """FastAPIテストクライアントを提供するフィクスチャ。"""
    # 設定をモックした状態でアプリをインポート
    from main import app

    with TestClient(app) as client:
        yield client
