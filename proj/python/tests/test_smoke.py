import json
import math
import os
from pathlib import Path

import pytest

import toral

ROOT = Path(__file__).resolve().parents[2]
SCHEMA = Path(os.environ.get("TORAL_SCHEMA", ROOT / "schemas" / "result.schema.json"))
DATA = Path(os.environ.get("TORAL_DATA", ROOT / "data"))


@pytest.fixture(scope="module")
def validate():
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads(SCHEMA.read_text())
    cls = jsonschema.validators.validator_for(schema)
    cls.check_schema(schema)
    return cls(schema).validate


def test_canonical_round_trip():
    for s in ["z1 - z2", "(z1 - z2)*(2 - z1 - z2)", "3/4*z1^2*z2 + i*z2 - 1/2"]:
        c = toral.canonical(s)
        assert toral.canonical(c) == c


def test_reflection_is_an_involution():
    p = "2*z1^2*z2 - i*z1 + 3"
    assert toral.canonical(toral.reflect(toral.reflect(p))) == toral.canonical(p)


def test_classify_examples():
    assert toral.classify("z1 - z2")["set_verdict"] == "Toral"
    assert toral.classify("2 - z1 - z2")["set_verdict"] == "Atoral"
    r = toral.command("classify", "z1 - z2")
    assert r["payload"]["verdict"] == "Toral"
    assert r["payload"]["evidence"] == "RegularTorusPoint"


def test_split_example():
    r = toral.command("split", "(z1 - z2)*(2 - z1 - z2)")
    assert r["payload"] == {"toral": "z1 - z2", "atoral": "z1 + z2 - 2", "unit": "-1"}


def test_exit_codes():
    assert toral.run(["frobnicate"])[0] == 2
    assert toral.run(["parse", "z1 +* 1"])[0] == 3
    with pytest.raises(toral.ParseError):
        toral.canonical("z1 +")


def test_pick_example_1_and_certificate_replay():
    r = toral.command("pick", "solve", str(DATA / "ex1.json"))["payload"]
    assert r["feasible"] and r["extremal"]
    assert abs(r["rho_star"] - 1) < 1e-4
    checks = toral.verify(r)
    assert checks and all(c["ok"] for c in checks)


def test_plot_rows():
    rows = toral.plot_rows("z1*z2 - 1", 8)
    assert len(rows) == 8
    for theta, phi, _ in rows:
        assert math.isclose(math.cos(theta + phi), 1.0, abs_tol=1e-9)
    assert toral.plot_rows("2 - z1 - z2") == [(0.0, 0.0, 0)]


COMMANDS = [
    ["parse", "z1^2 - z2"],
    ["reflect", "2 - z1 - z2"],
    ["symmetry", "2 - z1 - z2"],
    ["classify", "(z1 - z2)*(2 - z1 - z2)"],
    ["split", "z1*z2 - 1"],
    ["torus", "z1*z2 - 1"],
    ["inner", "make", "2 - z1 - z2"],
    ["inner", "canon", "(z1 - z2)*(2 - z1 - z2)"],
    ["inner", "equal", "(z1 - z2)*(2 - z1 - z2)", "2 - z1 - z2"],
    ["inner", "singular", "2 - z1 - z2"],
    ["inner", "level", "1", "--monomial", "1,1", "--alpha", "1"],
    ["pick", "norm", "ex1_quarter.json"],
    ["pick", "extremal", "ex2.json", "--minimal"],
    ["pick", "uniqueness", "1;1,0", "1;0,1", "--nodes", "ex2.json"],
    ["pick", "distinguished", "z1^2 - z2"],
    ["plot", "z1 - z2", "--samples", "4"],
    ["parse", "z1 +* 2"],
]


@pytest.mark.parametrize("args", COMMANDS, ids=lambda a: " ".join(a[:2]))
def test_json_output_matches_schema_and_is_stable(args, validate):
    args = [str(DATA / a) if a.endswith(".json") else a for a in args]
    code, out, _ = toral.run(["--json", *args])
    assert code in (0, 3)
    doc = json.loads(out)
    validate(doc)
    assert toral.run(["--json", *args])[1] == out
    checks = toral.verify(doc)
    assert all(c["ok"] for c in checks), checks
