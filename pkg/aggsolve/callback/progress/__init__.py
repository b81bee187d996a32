from .file import FileProgressCallback
from .progress import ProgressCallback, ProgressInfo
from .tqdm import TqdmProgressCallback

__all__ = [
    "ProgressInfo",
    "ProgressCallback",
    "TqdmProgressCallback",
    "FileProgressCallback",
]
