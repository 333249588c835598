import pytest

from kappalab.config import ConfigError, JobConfig, build_realization, load_config, parse_config
from kappalab.realizations import get_realization


def test_defaults():
    cfg = parse_config("")
    assert (cfg.n, cfg.order, cfg.realization) == (4, 3, None)
    assert cfg.describe() == {"dimension": 4, "order": 3, "realization": None}


def test_full_config(tmp_path):
    path = tmp_path / "job.yaml"
    path.write_text("dimension: 3\norder: 2\nrealization: left\ninputs: {f: x0}\n")
    cfg = load_config(path)
    assert (cfg.n, cfg.order, cfg.realization, cfg.inputs) == (3, 2, "left", {"f": "x0"})


@pytest.mark.parametrize(
    "text",
    [
        "dimension: 7",
        "order: 5",
        "dimension: 2.0",
        "order: -1",
        "colour: red",
        "- 1\n- 2",
        "dimension: [1",
        "realization: {kind: linear, alpha: 0.5, beta: 0, gamma: 1.5}",
    ],
)
def test_invalid_configs(text):
    with pytest.raises(ConfigError):
        parse_config(text)


def test_validate():
    with pytest.raises(ConfigError):
        JobConfig(n=1).validate()
    assert JobConfig(n=6, order=0).validate().n == 6


def test_catalog_selection():
    assert build_realization(None, 2, 2) is get_realization("natural", 2, 2)
    assert build_realization("ms", 2, 2) is get_realization("ms", 2, 2)
    assert build_realization({"kind": "catalog", "name": "left"}, 2, 2) is get_realization("left", 2, 2)
    with pytest.raises(ConfigError):
        build_realization("unknown", 2, 2)


def test_series_kinds_reproduce_the_catalog():
    left = build_realization({"kind": "typeI", "phi": {"0,0": 1, "1,0": -1}}, 2, 3)
    assert left.phi == get_realization("left", 2, 3).phi
    ms = build_realization({"kind": "typeII", "phi": [[0, 0, 1]]}, 2, 3)
    assert ms.phi == get_realization("ms", 2, 3).phi
    natural = build_realization({"kind": "vector_like", "f": [1, "-1/2"]}, 2, 3)
    assert natural.phi == get_realization("natural", 2, 3).phi


def test_linear_and_explicit_kinds():
    r = build_realization({"kind": "linear", "alpha": -1, "beta": 0, "gamma": 0}, 2, 1)
    assert r.phi == get_realization("left", 2, 1).phi
    rows = [["-1 - i*a0*d0 + i*a1*d1", "0"], ["0", "1 + i*a0*d0 - i*a1*d1"]]
    r = build_realization({"kind": "explicit", "phi": rows}, 2, 3)
    assert r.phi == get_realization("left", 2, 3).phi


@pytest.mark.parametrize(
    "spec",
    [
        {"kind": "typeI", "phi": {"0,0": 2}},
        {"kind": "typeI", "phi": {"-1,0": 1}},
        {"kind": "vector_like", "f": [1, "0.5"]},
        {"kind": "linear", "alpha": 0, "beta": 0, "gamma": 0},
        {"kind": "explicit", "phi": [["x0", "0"], ["0", "1"]]},
        {"kind": "explicit", "phi": [["-1 +", "0"], ["0", "1"]]},
        {"kind": "explicit", "phi": [["-1"]]},
        {"kind": "mystery"},
        42,
    ],
)
def test_invalid_realizations(spec):
    with pytest.raises(ConfigError):
        build_realization(spec, 2, 2)
