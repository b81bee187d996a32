import json

import numpy as np
import pytest

from aggsolve.exception import FieldParseError, FieldValidationError
from aggsolve.field import CharacteristicInfo, GameInfo, SmartGridInfo
from aggsolve.scenario import (
    get_shipped_configs,
    load_config,
    parse_config,
    resolve_config_path,
)
from aggsolve.type import ConfigKindType


def test_shipped_configs():
    assert set(get_shipped_configs()) >= {
        "two_type_box",
        "piecewise_budget",
        "lipschitz_meshgrid",
        "smartgrid",
    }


def test_parse_error_location():
    with pytest.raises(FieldParseError) as e:
        parse_config('{\n"T": 1\n"C": [[1]]}')
    assert e.value.line == 3
    assert e.value.column == 1


@pytest.mark.parametrize(
    "text, expected_output",
    [
        ('{"aO": 1.0, "aP": 3.0}', SmartGridInfo),
        ('{"kind": "smartgrid"}', SmartGridInfo),
        (
            json.dumps(
                {
                    "T": 1,
                    "P": [[1], [-1]],
                    "types": [{"mu": 1.0, "b": [1, 0], "S": [[1]], "r": [0]}],
                    "C": [[1]],
                    "d": [0],
                }
            ),
            GameInfo,
        ),
        (
            json.dumps(
                {"T": 1, "P": [[1], [-1]], "b": [1, 0], "S": [[1]], "r": [0], "C": [[1]], "d": [0]}
            ),
            CharacteristicInfo,
        ),
    ],
)
def test_parse_config_kind(text, expected_output):
    assert isinstance(parse_config(text), expected_output)


@pytest.mark.parametrize("text", ["[1, 2]", '{"kind": "network"}', '{"kind": "smartgrid", "aO": -1}'])
def test_parse_config_invalid(text):
    with pytest.raises(FieldValidationError):
        parse_config(text)


def test_load_game_config():
    config = load_config("two_type_box")
    assert config.kind == ConfigKindType.GAME
    assert config.game.I == 2 and config.game.T == 2
    assert np.allclose(config.game.mu, [0.5, 0.5])
    assert config.A is not None and config.game.A is not None
    assert config.characteristic is None and config.scenario is None


def test_load_characteristic_config():
    config = load_config("piecewise_budget")
    assert config.kind == ConfigKindType.CHARACTERISTIC
    tc = config.characteristic
    assert tc.discontinuities == (0.5,)
    assert np.allclose(tc.e(0.25), [1.25])
    assert np.allclose(tc.e(0.75), [2.0])
    assert np.allclose(tc.e(0.5), [2.0])
    S, r = tc.unpack(tc.s(0.3))
    assert np.allclose(S, np.eye(2))
    assert np.allclose(r, [1.0, 0.0])


def test_load_meshgrid_config():
    config = load_config("lipschitz_meshgrid")
    assert config.info.builder == "meshgrid"
    assert config.A is None
    tc = config.characteristic
    assert np.allclose(tc.b(0.5), [1.5, 1.25, 0.0, 0.0])


def test_load_smartgrid_config():
    config = load_config("smartgrid")
    assert config.kind == ConfigKindType.SMARTGRID
    assert config.scenario.E_tot == pytest.approx(3e8)
    assert config.characteristic is not None


def test_load_config_from_file(tmp_path):
    path = tmp_path / "grid.json"
    path.write_text(json.dumps({"aO": 1.0, "aP": 4.0, "N": 100.0}))
    config = load_config(path)
    assert config.scenario.a_P == 4.0
    assert resolve_config_path(path) == path


def test_masses_are_normalized(tmp_path):
    path = tmp_path / "game.json"
    path.write_text(
        json.dumps(
            {
                "T": 1,
                "P": [[1], [-1]],
                "types": [
                    {"mu": 0.5000004, "b": [1, 0], "S": [[1]], "r": [0]},
                    {"mu": 0.5, "b": [2, 0], "S": [[1]], "r": [1]},
                ],
                "C": [[1]],
                "d": [0],
            }
        )
    )
    mu = load_config(path).game.mu
    assert mu.sum() == pytest.approx(1.0, abs=1e-15)
    assert mu[0] > mu[1]


def test_missing_config():
    with pytest.raises(FieldValidationError):
        load_config("no_such_config")


def test_masses_far_from_one_are_rejected():
    text = json.dumps(
        {
            "T": 1,
            "P": [[1], [-1]],
            "types": [{"mu": 2.0, "b": [1, 0], "S": [[1]], "r": [0]}],
            "C": [[1]],
            "d": [0],
        }
    )
    with pytest.raises(FieldValidationError):
        parse_config(text)
