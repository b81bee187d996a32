from pathlib import Path
from typing import Union

from aggsolve.exception import FieldValidationError

SHIPPED_CONFIG_DIR = Path(__file__).parent / "configs"


def get_shipped_configs() -> dict[str, Path]:
    return {p.stem: p for p in sorted(SHIPPED_CONFIG_DIR.glob("*.json"))}


def resolve_config_path(config: Union[str, Path]) -> Path:
    """A path on disk, or the name of a shipped configuration such as ``"smartgrid"``."""
    path = Path(config)
    if path.exists():
        return path
    shipped = get_shipped_configs()
    if str(config) in shipped:
        return shipped[str(config)]
    raise FieldValidationError(
        f"configuration {config} not found; shipped configurations: {list(shipped)}"
    )
