import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import numpy as np

from aggsolve.exception import FieldParseError, FieldValidationError
from aggsolve.field import (
    BaseField,
    CharacteristicInfo,
    ConstraintInfo,
    GameInfo,
    PiecewiseAffineInfo,
    SmartGridInfo,
)
from aggsolve.game import CostParams, FiniteTypeGame, PiecewiseAffineMap, TypeCharacteristic
from aggsolve.math import PolytopeSet
from aggsolve.type import ConfigKindType

from .shipped import resolve_config_path
from .smartgrid import SmartGridScenario

logger = logging.getLogger(__name__)

SCHEMAS = {
    ConfigKindType.GAME: GameInfo,
    ConfigKindType.CHARACTERISTIC: CharacteristicInfo,
    ConfigKindType.SMARTGRID: SmartGridInfo,
}


@dataclass(frozen=True, eq=False)
class LoadedConfig:
    kind: ConfigKindType
    info: BaseField
    game: Optional[FiniteTypeGame] = None
    characteristic: Optional[TypeCharacteristic] = None
    A: Optional[PolytopeSet] = None
    scenario: Optional[SmartGridScenario] = None


def _infer_kind(d: dict) -> str:
    if "kind" in d:
        return d["kind"]
    if "types" in d:
        return str(ConfigKindType.GAME.value)
    if "aO" in d or "aP" in d:
        return str(ConfigKindType.SMARTGRID.value)
    return str(ConfigKindType.CHARACTERISTIC.value)


def parse_config(text: str) -> BaseField:
    """Parse and validate a JSON configuration.

    Raises:
        FieldParseError: if the text is not JSON; carries line and column.
        FieldValidationError: if the document does not match its schema.
    """
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise FieldParseError(
            f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}",
            line=e.lineno,
            column=e.colno,
        )
    if not isinstance(d, dict):
        raise FieldValidationError("configuration must be a JSON object")
    kind = _infer_kind(d)
    if kind not in list(ConfigKindType):
        raise FieldValidationError(f"kind must be one of {list(ConfigKindType)}: {kind}")
    schema = SCHEMAS[ConfigKindType.from_str(kind)]
    return schema.from_dict({**d, "kind": kind})


def _polytope(info: Optional[ConstraintInfo]) -> Optional[PolytopeSet]:
    if info is None:
        return None
    return PolytopeSet(P=info.P, b=info.b, Q=info.Q, e=info.e)


def game_from_info(info: GameInfo) -> FiniteTypeGame:
    mu = np.array([t.mu for t in info.types])
    total = math.fsum(mu)
    if total != 1.0:
        logger.info(f"normalizing type masses (sum {total!r})")
        mu = mu / total
    sets = tuple(PolytopeSet(P=info.P, b=t.b, Q=info.Q, e=t.e) for t in info.types)
    costs = tuple(CostParams(C=info.C, d=info.d, S=t.S, r=t.r) for t in info.types)
    return FiniteTypeGame(mu=mu, sets=sets, costs=costs, A=_polytope(info.A))


def _map(v, size: int) -> tuple[PiecewiseAffineMap, tuple[float, ...]]:
    if v is None:
        return PiecewiseAffineMap.constant(np.zeros(size)), ()
    if isinstance(v, PiecewiseAffineInfo):
        intercepts = [p.intercept for p in v.pieces]
        slopes = [p.slope if p.slope is not None else [0.0] * v.size for p in v.pieces]
        return PiecewiseAffineMap(intercepts, slopes, v.breaks), tuple(v.breaks)
    return PiecewiseAffineMap.constant(np.array(v, dtype=float).reshape(-1)), ()


def characteristic_from_info(info: CharacteristicInfo) -> TypeCharacteristic:
    T = info.T
    b_map, b_breaks = _map(info.b, len(info.P))
    e_map, e_breaks = (None, ()) if not info.Q else _map(info.e, len(info.Q))
    S_map, S_breaks = _map(info.S, T * T)
    r_map, r_breaks = _map(info.r, T)
    return TypeCharacteristic(
        P=info.P,
        b_map=b_map,
        s_map=lambda theta: np.concatenate([S_map(theta), r_map(theta)]),
        C=info.C,
        d=info.d,
        Q=info.Q,
        e_map=e_map,
        discontinuities=tuple(sorted(set(b_breaks + e_breaks + S_breaks + r_breaks))),
        L3=info.L3,
    )


def load_config(path: Union[str, Path]) -> LoadedConfig:
    """Read a configuration file (or a shipped configuration by name) and build its domain objects."""
    path = resolve_config_path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise FieldValidationError(f"cannot read configuration {path}: {e}")
    info = parse_config(text)
    kind = ConfigKindType.from_str(info.kind)

    if kind == ConfigKindType.GAME:
        return LoadedConfig(kind=kind, info=info, game=game_from_info(info), A=_polytope(info.A))
    if kind == ConfigKindType.CHARACTERISTIC:
        return LoadedConfig(
            kind=kind,
            info=info,
            characteristic=characteristic_from_info(info),
            A=_polytope(info.A),
        )
    scenario = SmartGridScenario(a_O=info.aO, a_P=info.aP, E_max=info.Emax, N=info.N)
    return LoadedConfig(
        kind=kind, info=info, characteristic=scenario.characteristic(), scenario=scenario
    )
