import logging
import os

import dotenv

dotenv.load_dotenv()


def _env_int(name: str, default: int) -> int:
    value = os.environ.get(name)
    return int(value) if value not in (None, "") else default


def _env_float(name: str, default: float) -> float:
    value = os.environ.get(name)
    return float(value) if value not in (None, "") else default


class Config:
    # Worker pool
    THREADS: int = max(1, _env_int("AGGSOLVE_THREADS", os.cpu_count() or 1))

    # Logging
    LOG_DIR: str = os.environ.get("AGGSOLVE_LOG_DIR", "./logs")
    LOG_FILE_NAME: str = "aggsolve.log"
    CONSOLE_LOG_LEVEL: str = os.environ.get("AGGSOLVE_CONSOLE_LOG_LEVEL", "INFO")
    FILE_LOG_LEVEL: str = os.environ.get("AGGSOLVE_FILE_LOG_LEVEL", "INFO")

    # Solver
    TOLERANCE: float = _env_float("AGGSOLVE_TOLERANCE", 1e-8)
    MAX_ITER: int = _env_int("AGGSOLVE_MAX_ITER", 10**6)
    STEP_FACTOR: float = 0.9

    # Projection
    PROJECTION_TOLERANCE: float = _env_float("AGGSOLVE_PROJECTION_TOLERANCE", 1e-12)
    PROJECTION_MAX_ITER: int = _env_int("AGGSOLVE_PROJECTION_MAX_ITER", 100_000)
    ACTIVE_SET_MAX_CONSTRAINTS: int = _env_int("AGGSOLVE_ACTIVE_SET_MAX_CONSTRAINTS", 32)
    FEASIBILITY_TOLERANCE: float = 1e-9

    # Approximation
    THETA_SAMPLES: int = _env_int("AGGSOLVE_THETA_SAMPLES", 64)
    MESHGRID_CELL_CAP: int = _env_int("AGGSOLVE_MESHGRID_CELL_CAP", 10**6)
    MESHGRID_QUADRATURE: int = _env_int("AGGSOLVE_MESHGRID_QUADRATURE", 4096)
    EXACT_HAUSDORFF_MAX_DIM: int = 4


logger = logging.getLogger(__name__)

logger.debug(f"Worker threads: {Config.THREADS}")
