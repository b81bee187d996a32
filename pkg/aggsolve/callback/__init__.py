from .loop_callback import BaseLoopCallback
from .progress import (
    FileProgressCallback,
    ProgressCallback,
    ProgressInfo,
    TqdmProgressCallback,
)

__all__ = [
    "BaseLoopCallback",
    "ProgressInfo",
    "ProgressCallback",
    "TqdmProgressCallback",
    "FileProgressCallback",
]
