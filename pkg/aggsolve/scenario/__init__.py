from .loader import (
    LoadedConfig,
    characteristic_from_info,
    game_from_info,
    load_config,
    parse_config,
)
from .shipped import SHIPPED_CONFIG_DIR, get_shipped_configs, resolve_config_path
from .smartgrid import (
    SmartGridError,
    SmartGridScenario,
    analytic_svwe_error,
    analytic_vwe,
    build_smartgrid,
)
from .sweep import SweepResult, SweepRunner, parse_nu_list, run_sweep, vne_output_path

__all__ = [
    "SmartGridScenario",
    "SmartGridError",
    "build_smartgrid",
    "analytic_vwe",
    "analytic_svwe_error",
    "LoadedConfig",
    "parse_config",
    "load_config",
    "game_from_info",
    "characteristic_from_info",
    "SHIPPED_CONFIG_DIR",
    "get_shipped_configs",
    "resolve_config_path",
    "SweepRunner",
    "SweepResult",
    "run_sweep",
    "parse_nu_list",
    "vne_output_path",
]
