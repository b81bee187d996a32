from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Optional, Sequence, Union

import pandas as pd
from waffle_utils.file import io

CSV_FLOAT_FORMAT = "%.17g"


@dataclass(frozen=True)
class ConvergenceRow:
    """One line of a sweep: discretization metrics, observed errors and the matching bounds."""

    nu: int
    I: int
    delta_bar: float
    eps_bar: float
    D: float
    lambda_bar: float
    L_f: float
    K_A: float
    alpha: float
    beta: float
    Omega: float
    err_agg: float
    bound_agg: Optional[float]
    err_profile: Optional[float]
    bound_profile: Optional[float]
    iterations: int
    residual: float
    applicable: bool

    def to_dict(self) -> dict:
        return asdict(self)


CSV_COLUMNS = [f.name for f in fields(ConvergenceRow)]
_INT_COLUMNS = ["nu", "I", "iterations"]
_FLOAT_COLUMNS = [c for c in CSV_COLUMNS if c not in _INT_COLUMNS + ["applicable"]]


def rows_to_frame(rows: Sequence[ConvergenceRow]) -> pd.DataFrame:
    frame = pd.DataFrame([row.to_dict() for row in rows], columns=CSV_COLUMNS)
    frame = frame.astype({c: "float64" for c in _FLOAT_COLUMNS})
    frame["applicable"] = frame["applicable"].map(lambda v: "true" if v else "false")
    return frame.astype({c: "int64" for c in _INT_COLUMNS})


def write_rows_csv(rows: Sequence[ConvergenceRow], path: Union[str, Path]) -> Path:
    """Write sweep rows with 17 significant digits; absent values are left blank."""
    path = Path(path)
    io.make_directory(path.absolute().parent)
    rows_to_frame(rows).to_csv(
        path, index=False, float_format=CSV_FLOAT_FORMAT, na_rep="", lineterminator="\n"
    )
    return path
