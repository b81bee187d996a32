import math
import time
from dataclasses import asdict, dataclass
from typing import Optional

from ..loop_callback import BaseLoopCallback


@dataclass
class ProgressInfo:
    current_stage: str
    current_step: int
    total_steps: int
    start_time: float
    last_updated_time: float
    remaining_time: float
    residual: Optional[float]
    best_residual: Optional[float]
    steps_per_second: float

    def to_dict(self):
        return asdict(self)


class ProgressCallback(BaseLoopCallback):
    """Position of one iterative loop plus the last and best residual it reported.

    State lives on the instance, so solves running side by side in a worker
    pool each need their own callback.
    """

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.initialize()

    def initialize(self):
        self.current_stage: Optional[str] = None
        self.total_steps: Optional[int] = None
        self.current_step: Optional[int] = None
        self.start_time: Optional[float] = None
        self.last_updated_time: Optional[float] = None
        self.residual: Optional[float] = None
        self.best_residual: Optional[float] = None
        self.started = False

    def _advance(self, step: int):
        self.current_step = step
        self.last_updated_time = time.time()

    @property
    def elapsed_time(self) -> float:
        if self.start_time is None:
            return 0.0
        return self.last_updated_time - self.start_time

    def get_steps_per_second(self) -> float:
        if not self.current_step or self.elapsed_time <= 0:
            return 0.0
        return self.current_step / self.elapsed_time

    def get_remaining_time(self) -> float:
        """Linear extrapolation to ``total_steps``; an upper estimate for loops that stop on tolerance."""
        rate = self.get_steps_per_second()
        if self.total_steps is None or rate == 0.0:
            return math.inf
        return (self.total_steps - self.current_step) / rate

    def get_progress_info(self) -> ProgressInfo:
        return ProgressInfo(
            current_stage=self.current_stage,
            current_step=self.current_step,
            total_steps=self.total_steps,
            start_time=self.start_time,
            last_updated_time=self.last_updated_time,
            remaining_time=self.get_remaining_time(),
            residual=self.residual,
            best_residual=self.best_residual,
            steps_per_second=self.get_steps_per_second(),
        )

    def on_loop_start(self, total_steps: int):
        self.current_stage = "on_loop_start"
        if self.started:
            if self.total_steps != total_steps:
                raise ValueError(
                    f"loop already started with {self.total_steps} steps, got {total_steps}"
                )
            return
        self.started = True
        self.total_steps = total_steps
        self.start_time = time.time()
        self._advance(0)

    def on_step_start(self):
        self.current_stage = "on_step_start"

    def on_step_end(self, current_step: int = None, residual: Optional[float] = None):
        self.current_stage = "on_step_end"
        if residual is not None:
            self.residual = float(residual)
            if self.best_residual is None or self.residual < self.best_residual:
                self.best_residual = self.residual
        step = self.current_step + 1 if current_step is None else current_step
        if step == self.current_step:
            return
        if not self.current_step <= step <= self.total_steps:
            raise ValueError(
                f"step {step} outside [{self.current_step}, {self.total_steps}]"
            )
        self._advance(step)

    def on_loop_end(self):
        # a loop may stop on tolerance before total_steps
        self.current_stage = "on_loop_end"
        self.last_updated_time = time.time()
        self.started = False
