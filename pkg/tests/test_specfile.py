import json
from fractions import Fraction

import pytest

from hamop.catalog import get_entry, mokhov_operator
from hamop.errors import SpecFileError
from hamop.specfile import (
    default_param_values,
    dump_operator_spec,
    load_operator_spec,
    specialize_spec,
)


def op5_file():
    return {
        "n": 2,
        "d": 2,
        "metrics": [
            {"constant": [["0/1", "1/1"], ["1/1", "0/1"]], "linear": []},
            {
                "constant": [["0/1", "0/1"], ["0/1", "0/1"]],
                "linear": [
                    {"i": 1, "j": 1, "k": 1, "coeff": "-2/1"},
                    {"i": 1, "j": 2, "k": 2, "coeff": "1"},
                ],
            },
        ],
    }


def test_round_trip():
    spec = load_operator_spec(op5_file())
    assert spec.n == 2 and spec.d == 2
    dumped = dump_operator_spec(spec)
    again = load_operator_spec(dumped)
    for m1, m2 in zip(spec.metrics, again.metrics):
        assert m1.mat == m2.mat
    # serialized rationals always carry an explicit denominator
    assert dumped["metrics"][1]["linear"][0]["coeff"] == "-2/1"


def test_symmetry_enforced_on_load():
    spec = load_operator_spec(op5_file())
    gt = spec.metrics[1]
    assert gt.mat[0, 1] == gt.mat[1, 0]


def test_unknown_fields_rejected():
    data = op5_file()
    data["extra"] = 1
    with pytest.raises(SpecFileError, match="unknown"):
        load_operator_spec(data)
    data = op5_file()
    data["metrics"][0]["foo"] = []
    with pytest.raises(SpecFileError, match="unknown"):
        load_operator_spec(data)
    data = op5_file()
    data["metrics"][1]["linear"][0]["extra"] = 0
    with pytest.raises(SpecFileError, match="unknown"):
        load_operator_spec(data)


def test_duplicate_entries_rejected():
    data = op5_file()
    data["metrics"][1]["linear"].append({"i": 1, "j": 1, "k": 1, "coeff": "3/1"})
    with pytest.raises(SpecFileError, match="duplicate"):
        load_operator_spec(data)
    # the mirrored (j, i, k) slot counts as the same entry
    data = op5_file()
    data["metrics"][1]["linear"].append({"i": 2, "j": 1, "k": 2, "coeff": "1/1"})
    with pytest.raises(SpecFileError, match="duplicate"):
        load_operator_spec(data)


def test_validation_errors():
    data = op5_file()
    data["metrics"][0]["constant"][0][1] = "2/1"  # breaks symmetry
    with pytest.raises(SpecFileError, match="symmetric"):
        load_operator_spec(data)
    data = op5_file()
    data["metrics"][1]["linear"][0]["k"] = 3
    with pytest.raises(SpecFileError, match="out of"):
        load_operator_spec(data)
    data = op5_file()
    data["metrics"][1]["linear"][0]["coeff"] = 0.5
    with pytest.raises(SpecFileError, match="strings"):
        load_operator_spec(data)
    with pytest.raises(SpecFileError, match="JSON"):
        load_operator_spec("{not json")
    data = op5_file()
    data["d"] = 3
    with pytest.raises(SpecFileError, match="list of d"):
        load_operator_spec(data)
    # degenerate metric rejected
    data = op5_file()
    data["metrics"][1] = {"constant": [["0/1", "0/1"], ["0/1", "0/1"]], "linear": []}
    with pytest.raises(SpecFileError, match="degenerate"):
        load_operator_spec(data)


def test_one_based_indices():
    data = op5_file()
    data["metrics"][1]["linear"][0]["i"] = 0
    with pytest.raises(SpecFileError, match="out of"):
        load_operator_spec(data)


def test_specialize_and_defaults():
    e = get_entry("thm3-case1")
    values = default_param_values(e.spec)
    assert len(values) == 1
    spec = specialize_spec(e.spec, values)
    assert spec.nvars == spec.n == 3
    # specializing a parameter-free spec is the identity
    m = mokhov_operator(3)
    assert default_param_values(m) == []
    with pytest.raises(ValueError):
        specialize_spec(e.spec, [])


def test_dump_rejects_formal_parameters():
    e = get_entry("thm3-case1")
    with pytest.raises(ValueError, match="formal"):
        dump_operator_spec(e.spec)


def test_json_stability():
    spec = load_operator_spec(op5_file())
    d1 = json.dumps(dump_operator_spec(spec))
    d2 = json.dumps(dump_operator_spec(load_operator_spec(json.loads(d1))))
    assert d1 == d2
