from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from aggsolve.exception import ContractViolationError

_RIGHT_NUDGE = 1e-9


def left_limit_point(lo: float, hi: float) -> float:
    """A point of [lo, hi) close enough to hi to sit on the same affine piece as hi from the left."""
    return hi - _RIGHT_NUDGE * (hi - lo)


@dataclass(frozen=True, eq=False)
class TypeCell:
    """Set of types ``Theta_i`` as a union of half-open intervals of [0, 1].

    Meshgrid cells also carry the quadrature nodes that were assigned to them.
    """

    intervals: tuple[tuple[float, float], ...]
    mass: float
    nodes: Optional[np.ndarray] = None

    def samples(self, n: int) -> np.ndarray:
        """Types used to approximate a sup over the cell."""
        if self.nodes is not None:
            return self.nodes
        widths = np.array([hi - lo for lo, hi in self.intervals])
        counts = np.maximum(2, np.round(n * widths / widths.sum()).astype(int))
        thetas = []
        for (lo, hi), k in zip(self.intervals, counts):
            # the right end belongs to the next cell unless it is 1
            right = hi if hi >= 1.0 else left_limit_point(lo, hi)
            thetas.append(np.linspace(lo, right, k))
        return np.concatenate(thetas)


@dataclass(frozen=True, eq=False)
class Partition:
    cells: tuple[TypeCell, ...]

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(self.cells))
        pieces = sorted(iv for cell in self.cells for iv in cell.intervals)
        if any(lo >= hi for lo, hi in pieces):
            raise ContractViolationError("partition intervals must have positive length")
        for (_, hi), (lo, _) in zip(pieces, pieces[1:]):
            if lo < hi - 1e-12:
                raise ContractViolationError("partition intervals must be disjoint")

    @classmethod
    def from_cut_points(cls, cuts: Sequence[float]) -> "Partition":
        cuts = list(cuts)
        return cls(
            cells=tuple(TypeCell(intervals=((lo, hi),), mass=hi - lo) for lo, hi in zip(cuts, cuts[1:]))
        )

    @property
    def I(self) -> int:
        return len(self.cells)

    @property
    def masses(self) -> np.ndarray:
        return np.array([cell.mass for cell in self.cells])

    @cached_property
    def _lookup(self) -> tuple[np.ndarray, np.ndarray]:
        pieces = sorted((lo, hi, i) for i, cell in enumerate(self.cells) for lo, hi in cell.intervals)
        return np.array([p[0] for p in pieces]), np.array([p[2] for p in pieces], dtype=int)

    def breakpoints(self) -> np.ndarray:
        return np.unique([x for cell in self.cells for iv in cell.intervals for x in iv])

    def locate(self, theta) -> np.ndarray:
        """Index of the cell holding each theta."""
        starts, owners = self._lookup
        k = np.searchsorted(starts, np.asarray(theta, dtype=float), side="right") - 1
        return owners[np.clip(k, 0, len(owners) - 1)]

    def to_list(self) -> list[list[list[float]]]:
        return [[list(iv) for iv in cell.intervals] for cell in self.cells]


@dataclass(frozen=True, eq=False)
class StepProfile:
    """Piecewise-constant nonatomic profile ``theta -> values[cell(theta)]``."""

    partition: Partition
    values: np.ndarray

    def __post_init__(self):
        values = np.atleast_2d(np.array(self.values, dtype=float))
        if values.shape[0] != self.partition.I:
            raise ContractViolationError(
                f"one action per type is required: {values.shape[0]} != {self.partition.I}"
            )
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    def __call__(self, theta) -> np.ndarray:
        return self.values[self.partition.locate(theta)]

    def aggregate(self) -> np.ndarray:
        """Integral of the step function over [0, 1]."""
        return self.partition.masses @ self.values

    def _segments(self, other_breaks: np.ndarray = None) -> tuple[np.ndarray, np.ndarray]:
        breaks = self.partition.breakpoints()
        if other_breaks is not None:
            breaks = np.union1d(breaks, other_breaks)
        return np.diff(breaks), (breaks[:-1] + breaks[1:]) / 2

    def average_over(self, partition: Partition) -> np.ndarray:
        """Cell averages ``(1/mu_i) * integral over Theta_i`` for another partition."""
        widths, mids = self._segments(partition.breakpoints())
        owners = partition.locate(mids)
        sums = np.zeros((partition.I, self.values.shape[1]))
        np.add.at(sums, owners, widths[:, None] * self(mids))
        return sums / partition.masses[:, None]

    def l2_distance(self, other: "StepProfile") -> float:
        """Exact L2([0,1]) distance between two step profiles."""
        widths, mids = self._segments(other.partition.breakpoints())
        diff = self(mids) - other(mids)
        return float(np.sqrt(np.sum(widths * np.einsum("ij,ij->i", diff, diff))))


def psi_embed(profile, partition: Partition) -> StepProfile:
    """Spread a symmetric per-type profile over the types of each cell."""
    return StepProfile(partition=partition, values=profile)
