import json
import subprocess
import sys

import pytest

from satlat.cli import main
from satlat.errors import SpecError
from satlat.ringspec import load_ring_spec
from satlat.fields import QQ
from satlat.findim import StructAlgebra
from satlat.ring import QRing

QPLANE = """
[ring]
type = "quantum"
field = "QQ"
vars = ["x", "y"]

[ring.q]
"1,2" = "2"
"""

KXY = """
[ring]
type = "quantum"
field = "QQ"
vars = ["x", "y"]
"""

T2 = """
[ring]
type = "findim"
field = "GF(2)"
basis = ["e11", "e12", "e22"]
unit = ["e11", "e22"]

[ring.mul]
"e11,e11" = "e11"
"e11,e12" = "e12"
"e12,e22" = "e12"
"e22,e22" = "e22"
"""


@pytest.fixture
def qplane_file(tmp_path):
    p = tmp_path / "qplane.toml"
    p.write_text(QPLANE)
    return str(p)


@pytest.fixture
def kxy_file(tmp_path):
    p = tmp_path / "kxy.toml"
    p.write_text(KXY)
    return str(p)


@pytest.fixture
def t2_file(tmp_path):
    p = tmp_path / "t2.toml"
    p.write_text(T2)
    return str(p)


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def run_cli_json(args, capsys):
    code = main(["--json"] + args)
    out = capsys.readouterr().out
    return code, json.loads(out)


# --- ring spec loading -------------------------------------------------------------


def test_load_quantum_spec(qplane_file):
    ring = load_ring_spec(qplane_file)
    assert isinstance(ring, QRing)
    assert ring.q[0][1] == 2


def test_load_findim_spec(t2_file):
    alg = load_ring_spec(t2_file)
    assert isinstance(alg, StructAlgebra)
    assert alg.dim == 3


def test_spec_rejects_zero_scalar(tmp_path):
    p = tmp_path / "bad.toml"
    p.write_text(QPLANE.replace('"1,2" = "2"', '"1,2" = "0"'))
    with pytest.raises(SpecError) as exc:
        load_ring_spec(str(p))
    assert "ring.q" in str(exc.value)


def test_spec_rejects_unknown_key(tmp_path):
    p = tmp_path / "bad.toml"
    p.write_text(KXY + "\nbogus = 1\n")
    with pytest.raises(SpecError):
        load_ring_spec(str(p))
    p2 = tmp_path / "bad2.toml"
    p2.write_text(KXY.replace('vars = ["x", "y"]', 'vars = ["x", "y"]\nextra = 3'))
    with pytest.raises(SpecError) as exc:
        load_ring_spec(str(p2))
    assert "ring.extra" in str(exc.value)


def test_spec_rejects_bad_q_indices(tmp_path):
    p = tmp_path / "bad.toml"
    p.write_text(QPLANE.replace('"1,2"', '"2,1"'))
    with pytest.raises(SpecError):
        load_ring_spec(str(p))


# --- commands ----------------------------------------------------------------------


def test_check_y_closed_fails_with_witness(qplane_file, capsys):
    code, report = run_cli_json(
        [
            "check",
            "y-closed",
            "--ring",
            qplane_file,
            "--ideal",
            "x",
            "--filter",
            "x, y-1",
            "--degree-bound",
            "8",
        ],
        capsys,
    )
    assert code == 0
    assert report["result"] == "fails"
    assert report["witnesses"][0]["witness"] == "x"


def test_check_stable_commutative_holds(kxy_file, capsys):
    code, report = run_cli_json(
        ["check", "stable", "--ring", kxy_file, "--ideal", "x", "--filter", "x, y"],
        capsys,
    )
    assert code == 0
    assert report["result"] == "holds"
    assert report["exactness"] == "exact"


def test_ideal_equal_exact(qplane_file, capsys):
    code, report = run_cli_json(
        ["ideal", "equal", "--ring", qplane_file, "--a", "x", "--b", "x"], capsys
    )
    assert code == 0
    assert report["result"] == {"equal": True}
    assert report["exactness"] == "exact"


def test_ideal_product_and_power(kxy_file, capsys):
    code, report = run_cli_json(
        ["ideal", "product", "--ring", kxy_file, "--a", "x", "--b", "y"], capsys
    )
    assert code == 0
    assert report["result"]["generators"] == ["x*y"]
    code, report = run_cli_json(
        ["ideal", "power", "--ring", kxy_file, "--a", "x, y", "--n", "2"], capsys
    )
    assert code == 0
    assert report["result"]["generators"] == ["x^2", "x*y", "y^2"]


def test_ideal_colon_normal_route(qplane_file, capsys):
    code, report = run_cli_json(
        ["ideal", "colon", "--ring", qplane_file, "--a", "x*y", "--b", "x", "--side", "right"],
        capsys,
    )
    assert code == 0
    assert report["result"]["generators"] == ["y"]


def test_ideal_intersect(kxy_file, capsys):
    code, report = run_cli_json(
        ["ideal", "intersect", "--ring", kxy_file, "--a", "x", "--b", "y"], capsys
    )
    assert code == 0
    assert report["result"]["generators"] == ["x*y"]


def test_chain_strictly_descending(qplane_file, capsys):
    code, report = run_cli_json(
        [
            "chain",
            "--ring",
            qplane_file,
            "--ideal",
            "x",
            "--filter",
            "x, y-1",
            "--chain-length",
            "2",
            "--degree-bound",
            "6",
        ],
        capsys,
    )
    assert code == 0
    assert report["result"]["stabilizedAt"] is None
    assert report["result"]["strictDescents"] == 2
    assert report["chain"]["steps"][0]["method"] == "comaximal-descent"


def test_saturate_command(kxy_file, capsys):
    code, report = run_cli_json(
        ["saturate", "--ring", kxy_file, "--ideal", "x^2, x*y", "--filter", "x, y"],
        capsys,
    )
    assert code == 0
    assert report["result"]["generators"] == ["x"]
    assert report["exactness"] == "exact"


def test_lattice_distributive_command(kxy_file, capsys):
    code, report = run_cli_json(
        [
            "lattice",
            "distributive",
            "--ring",
            kxy_file,
            "--a",
            "x",
            "--b",
            "y",
            "--c",
            "x + y",
        ],
        capsys,
    )
    assert code == 0
    assert report["result"]["distributive"] is False
    assert report["witnesses"][0]["witness"] == "x"


def test_findim_commands(t2_file, capsys):
    code, report = run_cli_json(
        ["findim", "enumerate-ideals", "--ring", t2_file], capsys
    )
    assert code == 0
    assert report["result"]["count"] == 5
    code, report = run_cli_json(
        ["findim", "enumerate-filter-systems", "--ring", t2_file], capsys
    )
    assert code == 0
    assert report["result"]["count"] == 5
    assert all(s["principal"] for s in report["result"]["systems"])
    code, report = run_cli_json(["findim", "roundtrip", "--ring", t2_file], capsys)
    assert code == 0
    assert report["result"]["allRoundtrip"] is True
    code, report = run_cli_json(["findim", "gabriel", "--ring", t2_file], capsys)
    assert code == 0
    assert report["result"]["gabrielMatchesExtensionClosed"] is True


def test_exit_code_spec_error(tmp_path, capsys):
    p = tmp_path / "bad.toml"
    p.write_text("not toml [;")
    code, out, err = run_cli(
        ["check", "stable", "--ring", str(p), "--ideal", "x", "--filter", "x"], capsys
    )
    assert code == 2
    assert "error" in err


def test_exit_code_parse_error(qplane_file, capsys):
    code, out, err = run_cli(
        ["check", "stable", "--ring", qplane_file, "--ideal", "x^", "--filter", "x"],
        capsys,
    )
    assert code == 2


def test_exit_code_unknown_example(capsys):
    code, out, err = run_cli(["example", "no-such-example"], capsys)
    assert code == 2


def test_example_runner_all_pass(capsys):
    for ex in (
        "upper-triangular",
        "commutative-saturation",
        "not-distributive",
    ):
        code, report = run_cli_json(["example", ex], capsys)
        assert code == 0, f"{ex} failed: {report['result']['mismatches']}"
        assert report["result"]["pass"] is True


def test_reports_deterministic(qplane_file, capsys):
    args = ["ideal", "equal", "--ring", qplane_file, "--a", "x", "--b", "x^2"]
    code1, rep1 = run_cli_json(args, capsys)
    code2, rep2 = run_cli_json(args, capsys)
    rep1.pop("timing_ms")
    rep2.pop("timing_ms")
    assert rep1 == rep2 and code1 == code2


def test_console_entry_point():
    result = subprocess.run(
        [sys.executable, "-m", "satlat.cli", "example", "not-distributive"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert "pass" in result.stdout


def test_exit_code_undetermined(kxy_file, capsys):
    # forcing the power cap to zero on a non-monomial base leaves the
    # verdict undetermined: exit code 3
    code, report = run_cli_json(
        [
            "check",
            "stable",
            "--ring",
            kxy_file,
            "--ideal",
            "x",
            "--filter",
            "x, y - 1",
            "--stable-power-cap",
            "0",
            "--degree-bound",
            "6",
        ],
        capsys,
    )
    assert code == 3
    assert report["result"] == "undetermined"


def test_chain_witnesses_reverify_through_cli(qplane_file, capsys):
    # witnesses from a chain report feed back through `ideal member`:
    # inside their own term, outside the next one
    code, report = run_cli_json(
        [
            "chain",
            "--ring",
            qplane_file,
            "--ideal",
            "x",
            "--filter",
            "x, y-1",
            "--chain-length",
            "2",
            "--degree-bound",
            "6",
        ],
        capsys,
    )
    assert code == 0
    terms = report["chain"]["terms"]
    for w in report["witnesses"]:
        step = w["step"]
        inside = ", ".join(terms[step]["generators"])
        outside = ", ".join(terms[step + 1]["generators"])
        code_in, rep_in = run_cli_json(
            ["ideal", "member", "--ring", qplane_file, "--a", inside, "--b", w["witness"], "--side", "right"],
            capsys,
        )
        code_out, rep_out = run_cli_json(
            ["ideal", "member", "--ring", qplane_file, "--a", outside, "--b", w["witness"], "--side", "right"],
            capsys,
        )
        assert code_in == 0 and rep_in["result"] is True
        assert code_out == 0 and rep_out["result"] is False


REPORT_SCHEMA = {
    "type": "object",
    "required": [
        "command",
        "ring",
        "inputs",
        "result",
        "exactness",
        "certificates",
        "witnesses",
        "chain",
        "timing_ms",
    ],
    "properties": {
        "command": {"type": "string"},
        "inputs": {"type": "object"},
        "exactness": {
            "oneOf": [
                {"const": "exact"},
                {
                    "type": "object",
                    "required": ["upToDegree"],
                    "properties": {"upToDegree": {"type": "integer"}},
                },
            ]
        },
        "certificates": {"type": "array", "items": {"type": "object"}},
        "witnesses": {
            "type": "array",
            "items": {"type": "object", "required": ["witness"]},
        },
        "timing_ms": {"type": "number"},
    },
}


def test_reports_validate_against_schema(qplane_file, t2_file, capsys):
    import jsonschema

    invocations = [
        ["check", "y-closed", "--ring", qplane_file, "--ideal", "x", "--filter", "x, y-1", "--degree-bound", "6"],
        ["saturate", "--ring", qplane_file, "--ideal", "x*y", "--filter", "x"],
        ["chain", "--ring", qplane_file, "--ideal", "x", "--filter", "x, y-1", "--chain-length", "2", "--degree-bound", "6"],
        ["ideal", "equal", "--ring", qplane_file, "--a", "x", "--b", "x^2"],
        ["lattice", "distributive", "--ring", qplane_file, "--a", "x", "--b", "y", "--c", "x + y"],
        ["findim", "enumerate-ideals", "--ring", t2_file],
        ["example", "not-distributive"],
    ]
    for argv in invocations:
        _, report = run_cli_json(argv, capsys)
        jsonschema.validate(report, REPORT_SCHEMA)


def test_exit_code_missing_file(capsys):
    code, out, err = run_cli(
        ["check", "stable", "--ring", "/nonexistent/ring.toml", "--ideal", "x", "--filter", "x"],
        capsys,
    )
    assert code == 2
