import io as stdio
import json
from fractions import Fraction

import pytest
from hypothesis import given

from incidence_lab import io
from incidence_lab.cli import run
from incidence_lab.errors import InputError
from incidence_lab.fixtures import CHAIN3, FIG2_THETA, FIG2A, FIG2B, SIGMA2, UNBALANCED4
from incidence_lab.groups import InfiniteCyclic, cyclic, symmetric3
from incidence_lab.grading import verify_homomorphism
from incidence_lab.compression import verify_compression
from incidence_lab.ring import IntegersMod, Rationals, RingElement

from strategies import reflexive_relations


@given(reflexive_relations(max_n=5))
def test_relation_round_trip(rel):
    assert io.relation_from_json(io.relation_to_json(rel)) == rel


def test_relation_file_with_closure(tmp_path):
    path = tmp_path / "r.json"
    path.write_text(json.dumps({"elements": ["1", "2", "3"], "pairs": [["1", "2"], ["2", "3"]],
                                "reflexive_closure": True}))
    rel = io.relation_from_json(str(path))
    assert (1, 1) in rel and (1, 3) not in rel


def test_bad_files(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(InputError, match="invalid JSON"):
        io.relation_from_json(str(bad))
    with pytest.raises(InputError, match="missing field"):
        io.relation_from_json({"pairs": []})
    with pytest.raises(InputError, match="duplicate"):
        io.relation_from_json({"elements": ["1", "1"], "pairs": []})


def test_element_round_trip():
    for ring, vals in ((IntegersMod(5), {(1, 2): 3, (2, 3): 4}),
                       (Rationals(), {(1, 3): Fraction(-2, 7)})):
        f = RingElement(CHAIN3, ring, vals)
        assert io.element_from_json(io.element_to_json(f), CHAIN3) == f


def test_hom_round_trip():
    for g, vals in ((cyclic(2), {(1, 2): 1, (2, 3): 1, (1, 3): 0}),
                    (InfiniteCyclic(), {(1, 2): 1, (2, 3): 2, (1, 3): 3})):
        values = dict(vals)
        values.update({(x, x): g.identity for x in CHAIN3.elements})
        hom = verify_homomorphism(values, CHAIN3, g)
        data = io.hom_to_json(hom)
        assert io.hom_from_json(data, CHAIN3, g) == hom
    assert io.hom_to_json(hom)["values"][1] == ["1", "2", "g1"]


def test_group_specs(tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps(io.group_to_json(symmetric3())))
    assert io.group_from_spec(str(path)).name == "S3"
    assert io.group_from_spec({"kind": "cyclic", "n": 4}).name == "Z4"


def test_compression_and_subset_formats():
    cm = verify_compression(FIG2_THETA, FIG2B, FIG2A)
    data = io.compression_to_json(cm)
    assert data["map"][2] == ["3", "2"]
    assert io.compression_map_from_json(data) == FIG2_THETA
    assert io.subset_from_spec("3,4; 1,2") == ((1, 2), (3, 4))
    assert io.subset_from_spec({"subset": [["4", "5"]]}["subset"]) == ((4, 5),)
    assert io.subset_to_json(SIGMA2) == [["1", "2"], ["3", "4"], ["4", "5"]]


# -- CLI ----------------------------------------------------------------------------------------


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        path = tmp_path / name
        path.write_text(io.dumps(obj))
        return str(path)

    return {
        "chain3": write("chain3.json", io.relation_to_json(CHAIN3)),
        "fig2a": write("fig2a.json", io.relation_to_json(FIG2A)),
        "fig2b": write("fig2b.json", io.relation_to_json(FIG2B)),
        "unbalanced": write("u.json", io.relation_to_json(UNBALANCED4)),
        "theta": write("theta.json", {"map": [[str(k), str(v)] for k, v in FIG2_THETA.items()]}),
        "sigma2": write("sigma2.json", {"subset": io.subset_to_json(SIGMA2)}),
        "hom": write("hom.json", {"values": [["1", "2", "1"], ["2", "3", "1"], ["1", "3", "0"],
                                             ["1", "1", "0"], ["2", "2", "0"], ["3", "3", "0"]]}),
        "badhom": write("badhom.json", {"values": [["1", "2", "1"], ["2", "3", "1"], ["1", "3", "1"],
                                                   ["1", "1", "0"], ["2", "2", "0"], ["3", "3", "0"]]}),
        "f": write("f.json", {"ring": {"kind": "int"}, "entries": [["1", "2", "1"], ["2", "3", "1"]]}),
    }


def cli(*argv):
    out = stdio.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def test_check_chain3(files):
    code, text = cli("check", "--relation", files["chain3"])
    assert code == 0
    assert "no" not in text.split()


def test_check_reports_witness_json(files):
    code, text = cli("check", "--relation", files["unbalanced"], "--json")
    data = json.loads(text)
    assert code == 1
    assert data["result"]["balanced"] == {"holds": False, "witness": ["1", "2", "3", "4"]}


def test_demo_fig2():
    code, text = cli("demo", "fig2")
    assert code == 0
    assert "sigma1 = theta*(sigma2) = [(1, 2), (2, 3), (3, 4)]" in text
    assert "reconstructed" in text


def test_demo_sweep4():
    code, text = cli("demo", "sweep4")
    assert code == 0
    assert text.strip() == "balanced ⟺ unit-associative: 4096/4096 configurations agree"


def test_demo_infinite_support():
    code, text = cli("demo", "infinite-support", "--json")
    data = json.loads(text)["result"]
    assert code == 0
    assert [t["image_size"] for t in data["truncations"]][:3] == [2, 4, 6]
    assert data["limit_refused"]


def test_exit_codes(files):
    assert cli("assoc-oracle", "--relation", files["unbalanced"])[0] == 1
    assert cli("ring", "mul", "--relation", files["unbalanced"], "--element", files["f"],
               "--element", files["f"])[0] == 2
    assert cli("hom", "verify", "--relation", files["chain3"], "--group", "Z2",
               "--hom", files["badhom"])[0] == 1
    assert cli("hom", "verify", "--relation", files["chain3"], "--group", "Z2",
               "--hom", files["hom"])[0] == 0
    assert cli("gset", "verify", "--relation", files["fig2a"], "--subset", "1,2")[0] == 1
    assert cli("compress", "split", "--relation", files["fig2a"], "--budget", "1")[0] == 0
    assert cli("gset", "search", "--relation", files["fig2b"], "--budget", "2")[0] == 3
    assert cli("check")[0] == 2


def test_json_errors_are_structured(files):
    code, text = cli("hom", "verify", "--relation", files["chain3"], "--json")
    assert code == 2
    assert json.loads(text)["error"]["type"] == "InputError"


def test_pipeline_commands(files):
    rel, src, theta = files["fig2a"], files["fig2b"], files["theta"]
    code, text = cli("compress", "transport", "--relation", rel, "--source", src, "--map", theta,
                     "--subset", files["sigma2"], "--json")
    assert code == 0
    assert json.loads(text)["result"]["subset"] == [["1", "2"], ["2", "3"], ["3", "4"]]
    code, text = cli("gset", "jones-lift", "--relation", src, "--json")
    assert json.loads(text)["result"]["gamma"] == [["4", "5"]]
    code, text = cli("grade", "decompose", "--relation", files["chain3"], "--group", "Z2",
                     "--hom", files["hom"], "--element", files["f"], "--json")
    assert code == 0
    assert [p["degree"] for p in json.loads(text)["result"]["parts"]] == ["1"]


def test_json_output_is_canonical(files):
    args = ("gset", "verify", "--relation", files["fig2b"], "--subset", files["sigma2"], "--json")
    assert cli(*args) == cli(*args)
    text = cli(*args)[1]
    assert text == io.dumps(json.loads(text))
