from typing import Optional

import tqdm

from .progress import ProgressCallback


class TqdmProgressCallback(ProgressCallback):
    def __init__(self, desc: str = None, *args, **kwargs):
        super().__init__(*args, **kwargs)

        self.desc = desc or ""
        self.tqdm_bar: Optional[tqdm.tqdm] = None

    def on_loop_start(self, total_steps: int):
        super().on_loop_start(total_steps)
        self.tqdm_bar = tqdm.tqdm(total=total_steps, desc=self.desc)

    def on_loop_end(self):
        super().on_loop_end()
        self.tqdm_bar.close()
        self.tqdm_bar = None

    def on_step_end(self, current_step: int = None, residual: Optional[float] = None):
        super().on_step_end(current_step, residual)
        self.tqdm_bar.update(self.current_step - self.tqdm_bar.n)
        if self.residual is not None:
            self.tqdm_bar.set_postfix(residual=f"{self.residual:.3e}", refresh=False)
