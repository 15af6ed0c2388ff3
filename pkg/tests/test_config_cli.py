import json
import os
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import DATA
from toruskit.cli import main
from toruskit.config import load_config, parse_config
from toruskit.exceptions import ConfigError

DATA_FILES = sorted(f for f in os.listdir(DATA) if f.endswith(".json")
                    and f != "empty-basis-missing.json")


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def cfg_path(name):
    return os.path.join(DATA, name)


class TestConfig:
    @pytest.mark.parametrize("name", DATA_FILES)
    def test_round_trip(self, name):
        cfg = load_config(cfg_path(name))
        again = parse_config(json.loads(cfg.dumps()), cfg.path)
        assert again == cfg
        assert again.dumps() == cfg.dumps()

    def test_canonical_rationals(self):
        cfg = parse_config({"basis": [], "action": {"family": "real-flow",
                                                    "generators": [["2/4"], ["-6/3"]]}})
        gens = cfg.to_dict()["action"]["generators"]
        assert gens == [[{"1": "1/2"}], [{"1": "-2"}]]

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.tuples(st.fractions(max_denominator=12, min_value=-5, max_value=5),
                              st.fractions(max_denominator=12, min_value=-5, max_value=5)),
                    min_size=1, max_size=4),
           st.sampled_from(["real-flow", "lattice-action"]))
    def test_round_trip_random(self, gens, family):
        data = {"basis": [{"name": "r2", "numeric_value": 2 ** 0.5}],
                "action": {"family": family, "generators": [
                    [{"1": f"{a.numerator}/{a.denominator}", "r2": str(b)}] for a, b in gens]}}
        cfg = parse_config(data)
        assert parse_config(json.loads(cfg.dumps())) == cfg

    @pytest.mark.parametrize("data,key", [
        ({"basis": [], "action": {"family": "real-flow", "generators": [[0.5]]}},
         "action.generators[0][0]"),
        ({"basis": [], "action": {"family": "circle", "generators": [["1"]]}}, "action.family"),
        ({"basis": [], "action": {"family": "real-flow", "n": 3, "generators": [["1"]]}},
         "action.n"),
        ({"basis": [], "action": {"family": "real-flow", "generators": []}}, "action.generators"),
        ({"basis": [], "action": {"family": "real-flow", "d": 2, "generators": [["1"]]}},
         "action.generators[0]"),
        ({"basis": [{"name": "a"}]}, "basis[0].numeric_value"),
        ({"basis": [], "grid": "10,100"}, "grid"),
        ({"basis": [], "measure": {"group": "sphere"}}, "measure.group"),
        ({"basis": [], "folner": {"kind": "ball"}}, "folner.kind"),
        ({"basis": [], "polynomial": [{"u": [1.5]}]}, "polynomial[0].u"),
    ])
    def test_errors_name_key(self, data, key):
        with pytest.raises(ConfigError) as exc:
            parse_config(data, "cfg.json")
        assert exc.value.key == key and exc.value.path == "cfg.json"
        assert str(exc.value).startswith(f"cfg.json: at '{key}': expected ")

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(str(tmp_path / "nope.json"))

    def test_bad_json(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text("{not json")
        with pytest.raises(ConfigError) as exc:
            load_config(str(p))
        assert "line 1" in str(exc.value)


class TestCLI:
    def test_ue_pythagoras(self, capsys):
        code, out, _ = run(["ue", cfg_path("pythagoras.json")], capsys)
        assert code == 0 and json.loads(out) == {"uniquely_ergodic": False}

    def test_orbit_rational_third(self, capsys):
        code, out, _ = run(["orbit", cfg_path("rational-third.json")], capsys)
        assert json.loads(out) == {"free_rank": 0, "invariant_factors": [3]}

    def test_relations(self, capsys):
        code, out, _ = run(["relations", cfg_path("pythagoras-lattice.json")], capsys)
        assert json.loads(out) == {"hnf_basis": [[1, 0, 0], [0, 1, 0], [0, 0, 5]], "rank": 3}

    def test_undeclared_symbol(self, capsys):
        code, out, err = run(["relations", cfg_path("empty-basis-missing.json")], capsys)
        assert code == 2 and out == ""
        assert "sqrt2" in err and "empty-basis-missing.json" in err
        assert "Traceback" not in err

    @pytest.mark.parametrize("flag,expected", [
        (None, {"solvable": False, "certificate": [4, 3, -5]}),
        ("1/4,0,1/5", {"solvable": True, "certificate": None}),
        ('["1/10", "1/10", "3/50"]', {"solvable": False, "certificate": [4, 3, -5]}),
    ])
    def test_kronecker(self, capsys, flag, expected):
        argv = ["kronecker", cfg_path("pythagoras.json")] + (["--theta", flag] if flag else [])
        code, out, _ = run(argv, capsys)
        assert code == 0 and json.loads(out) == expected

    def test_kronecker_bad_theta(self, capsys):
        code, _, err = run(["kronecker", cfg_path("pythagoras.json"), "--theta", "0.1,0,0"], capsys)
        assert code == 2 and "theta[0]" in err

    def test_conjugacy(self, capsys):
        code, out, _ = run(["conjugacy", cfg_path("sqrt2.json"), cfg_path("sqrt2-image.json")],
                           capsys)
        report = json.loads(out)
        assert code == 0 and report["status"] == "conjugate" and report["P"] == [[1, 1], [2, 1]]
        assert report["verified"] is True and report["max_deviation"] <= 1e-9

    def test_conjugacy_shape_mismatch(self, capsys):
        code, _, err = run(["conjugacy", cfg_path("sqrt2.json"), cfg_path("pythagoras.json")],
                           capsys)
        assert code == 3 and "Traceback" not in err

    def test_average_csv(self, capsys, tmp_path):
        out_file = tmp_path / "trace.csv"
        code, out, _ = run(["average", cfg_path("weyl.json"), "--grid", "10,100",
                            "--out", str(out_file)], capsys)
        assert code == 0 and out == ""
        lines = out_file.read_text().splitlines()
        assert lines[0].startswith("parameter,average_real") and len(lines) == 3
        assert lines[1].split(",")[3] == "0.69999999999999996"

    @pytest.mark.parametrize("cmd,name", [("bohr", "bohr.json"),
                                          ("wiener-atom", "circle-measure.json"),
                                          ("wiener-energy", "circle-measure.json"),
                                          ("mean", "mean.json")])
    def test_trace_commands_deterministic(self, capsys, cmd, name):
        code, first, _ = run([cmd, cfg_path(name)], capsys)
        _, second, _ = run([cmd, cfg_path(name)], capsys)
        assert code == 0 and first == second and len(first.splitlines()) == 4

    def test_lattice_grid_must_be_integral(self, capsys):
        code, _, err = run(["wiener-atom", cfg_path("circle-measure.json"), "--grid", "2.5"],
                           capsys)
        assert code == 2 and "grid" in err

    def test_missing_section(self, capsys):
        code, _, err = run(["average", cfg_path("pythagoras.json")], capsys)
        assert code == 2 and "polynomial" in err

    def test_neutral_frequency(self, capsys, tmp_path):
        p = tmp_path / "zero.json"
        p.write_text(json.dumps({"basis": [], "frequency": ["0"], "grid": [1]}))
        code, _, err = run(["bohr", str(p)], capsys)
        assert code == 3 and "neutral" in err

    def test_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["no-such-command"])
        assert exc.value.code == 2

    def test_module_entry_point(self):
        res = subprocess.run([sys.executable, "-m", "toruskit", "orbit",
                              cfg_path("rational-third.json")], capture_output=True, text=True)
        assert res.returncode == 0
        assert json.loads(res.stdout) == {"free_rank": 0, "invariant_factors": [3]}
