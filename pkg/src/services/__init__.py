"""services パッケージ。"""

from src.services.engine import (
    run_decompose,
    run_fubini,
    run_integrate,
    run_j_integral,
    run_oracle_decomposition,
    run_oracle_laws,
    run_oracle_repeated,
)
from src.services.scenarios import list_scenarios, load_scenario, run_all, run_scenario

__all__ = [
    "list_scenarios",
    "load_scenario",
    "run_all",
    "run_decompose",
    "run_fubini",
    "run_integrate",
    "run_j_integral",
    "run_oracle_decomposition",
    "run_oracle_laws",
    "run_oracle_repeated",
    "run_scenario",
]
