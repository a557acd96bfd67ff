import json

import pytest

from rinehart.config import (
    ConfigError,
    RepCheckFailure,
    load_module_config,
    module_from_dict,
    natural_config_dict,
    write_natural_config,
)
from rinehart.glmodules import rep_check


def test_shipped_natural_config_loads():
    import importlib.resources as res

    with res.as_file(res.files("rinehart").joinpath("data/natural_1_1.json")) as p:
        mod, mu = load_module_config(p)
    assert (mod.m, mod.n, mod.dim) == (1, 1, 3)
    assert rep_check(mod).ok
    assert all(not v for v in mu.values)


def test_roundtrip_through_file(tmp_path):
    path = tmp_path / "nat21.json"
    write_natural_config(path, 2, 1)
    mod, mu = load_module_config(path)
    assert mod.dim == 4
    assert mod.parities == (0, 0, 0, 1)


def test_mu_constraint_rejected():
    doc = natural_config_dict(1, 1)
    doc["mu"] = ["0", "0", "1"]
    with pytest.raises(ConfigError):
        module_from_dict(doc)


def test_missing_action_key_rejected():
    doc = natural_config_dict(1, 1)
    del doc["action"]["E_0_0"]
    with pytest.raises(ConfigError, match="E_0_0"):
        module_from_dict(doc)


def test_malformed_json_rejected(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(ConfigError):
        load_module_config(path)


def test_shape_validation():
    doc = natural_config_dict(1, 1)
    doc["parity"] = [0, 0]
    with pytest.raises(ConfigError):
        module_from_dict(doc)
    doc = natural_config_dict(1, 1)
    doc["action"]["E_0_0"] = [["1"]]
    with pytest.raises(ConfigError):
        module_from_dict(doc)
    doc = natural_config_dict(1, 1)
    doc["action"]["E_9_9"] = doc["action"]["E_0_0"]
    with pytest.raises(ConfigError, match="unknown"):
        module_from_dict(doc)


def test_rep_check_failure_is_distinct():
    doc = natural_config_dict(1, 1)
    doc["action"]["E_0_1"][0][1] = "2"
    with pytest.raises(RepCheckFailure) as err:
        module_from_dict(doc)
    assert not err.value.report.ok


def test_scalars_survive_roundtrip(tmp_path):
    doc = natural_config_dict(1, 1)
    doc["mu"] = ["1/2+1/3i", "-2/7", "0"]
    path = tmp_path / "mu.json"
    path.write_text(json.dumps(doc))
    _, mu = load_module_config(path)
    from fractions import Fraction

    assert mu.values[0].re == Fraction(1, 2)
    assert mu.values[0].im == Fraction(1, 3)
    assert mu.values[1].re == Fraction(-2, 7)
