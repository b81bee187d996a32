from pathlib import Path
from typing import Optional

from waffle_utils.file import io

from .progress import ProgressCallback


class FileProgressCallback(ProgressCallback):
    """Mirrors progress into a JSON file, rewritten every ``interval`` steps."""

    def __init__(self, file, interval: int = 1, *args, **kwargs):
        super().__init__(*args, **kwargs)

        self.file = file
        self.interval = max(1, int(interval))

    @property
    def file(self) -> Path:
        return self._file

    @file.setter
    def file(self, file: str):
        self._file = Path(file).absolute()

    def _dump(self):
        io.save_json(self.get_progress_info().to_dict(), self.file)

    def on_loop_start(self, total_steps: int):
        super().on_loop_start(total_steps)
        io.make_directory(self.file.parent)
        self._dump()

    def on_step_end(self, current_step: int = None, residual: Optional[float] = None):
        super().on_step_end(current_step, residual)
        if self.current_step % self.interval == 0:
            self._dump()

    def on_loop_end(self):
        super().on_loop_end()
        self._dump()
