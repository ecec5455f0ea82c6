import io
import json
import re
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from conftest import FERMAT_DUAL, full_contact
from dualscope import cli

LIBRARY_OPS = ["parse_poly", "resultant", "squarefree_decompose", "dual_parametrization",
            "implicitize", "dual_implicit", "line_section", "dual_membership",
            "smoothly_branched_check", "high_tangency_scan", "multiplicity_partition",
            "git_classify", "fiber_shape", "roots_numeric", "cross_ratio", "prox_p1",
            "prox_torus", "degenerating_path", "lift_path", "prox_limit_experiment",
            "genus_of", "check_hyperbolicity", "s_unit_search"]

# one representative invocation per report shape
RUNS = {
    "dual-implicit": ["dual", "--implicit", "X^3+Y^3+Z^3"],
    "dual-parametric": ["dual", "--parametric", "t^2-1,t^3-t,1"],
    "section": ["section", "--implicit", "X^3+Y^3+Z^3", "--line", "1,1,0", "--with-dual"],
    "section-parametric": ["section", "--parametric", full_contact(4), "--line", "1,0,0"],
    "stability": ["stability", "--form", "u^2*v^2", "--degree", "4"],
    "stability-small": ["stability", "--form", "t^2+1"],
    "scan": ["scan", "--parametric", full_contact(4), "--k", "3"],
    "prox-points": ["prox", "--points", "inf,0,1,2"],
    "prox-torus": ["prox", "--points", "0,0.5", "--torus", "1,1i"],
    "prox-path": ["prox", "--parametric", full_contact(4), "--line", "1,0,0", "--to", "1,0,1",
                  "--steps", "40"],
    "lift": ["lift", "--parametric", full_contact(4), "--line", "1,0,0", "--to", "1,0,1",
             "--steps", "40", "--tracks"],
    "check": ["check", "--implicit", "X^3+Y^3+Z^3"],
    "check-parametric": ["check", "--parametric", full_contact(5)],
    "search": ["search", "--form", "U*V*W", "--height", "10"],
    "search-line": ["search", "--form", "U*V*W", "--primes", "2,3", "--height", "12",
                    "--restrict-line", "1,-1,0", "--threads", "1"],
}


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.dispatch(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(scope="module")
def outputs():
    return {name: run(argv) for name, argv in RUNS.items()}


@pytest.mark.parametrize("name", sorted(RUNS))
def test_reports_validate_against_schema(outputs, name):
    code, out, err = outputs[name]
    assert code == 0, err
    rep = json.loads(out)
    assert rep["schema_version"] == cli.SCHEMA_VERSION and rep["status"] == "ok"
    jsonschema.validate(rep, cli.load_schema(rep["command"]))


def test_dual_fermat_golden(outputs):
    rep = json.loads(outputs["dual-implicit"][1])
    assert rep["dual"] == FERMAT_DUAL and rep["degree"] == 6


def test_stability_example(outputs):
    rep = json.loads(outputs["stability"][1])
    assert rep["class"] == "strictly-semistable" and rep["partition"] == [2, 2]


def test_prox_points_example(outputs):
    rep = json.loads(outputs["prox-points"][1])
    assert rep["cross_ratio"] == [2.0, 0.0]
    assert abs(rep["prox"] - 0.5) < 1e-12


def test_search_example(outputs):
    rep = json.loads(outputs["search"][1])
    assert rep["points"] == [[1, -1, -1], [1, -1, 1], [1, 1, -1], [1, 1, 1]]


@pytest.mark.parametrize("name", ["dual-implicit", "prox-path", "search", "check"])
def test_byte_determinism(outputs, name):
    assert run(RUNS[name])[1] == outputs[name][1]


def test_domain_error_exit_one():
    code, out, _ = run(["dual", "--implicit", "X^2+Y"])
    assert code == 1
    rep = json.loads(out)
    assert rep["status"] == "error" and rep["schema_version"] == cli.SCHEMA_VERSION
    jsonschema.validate(rep, cli.load_schema("error"))


def test_domain_error_message_is_verbatim():
    from dualscope.errors import DualscopeError
    from dualscope.polycore import parse_poly
    with pytest.raises(DualscopeError) as exc:
        parse_poly("X^2 + * Y")
    _, out, _ = run(["stability", "--form", "X^2 + * Y"])
    assert json.loads(out)["error"]["message"] == str(exc.value.to_dict()["message"])


@pytest.mark.parametrize("argv,flag", [
    (["dual", "--bogus"], "--bogus"),
    (["search", "--form", "U", "--height", "2", "--nope=3"], "--nope"),
    (["section", "--implicit", "X^3+Y^3+Z^3", "--line", "1,2"], "--line"),
    (["prox", "--points", "0,1,2,3", "--line", "1,0,0"], "--line"),
])
def test_usage_errors_exit_two(argv, flag):
    code, out, err = run(argv)
    assert code == 2 and out == ""
    assert flag in err


def test_exactly_one_subcommand():
    assert run([])[0] == 2
    assert run(["dual", "check", "--implicit", "X^3+Y^3+Z^3"])[0] == 2


def test_out_writes_csv(tmp_path):
    path = tmp_path / "shells.csv"
    code, out, _ = run(RUNS["search"] + ["--out", str(path)])
    assert code == 0
    lines = path.read_text().splitlines()
    assert lines[0] == "height,count" and len(lines) == 11
    path = tmp_path / "series.csv"
    run(RUNS["prox-path"] + ["--out", str(path)])
    assert path.read_text().splitlines()[0] == "t,prox,max_radius"


def test_out_writes_json_for_other_commands(tmp_path):
    path = tmp_path / "dual.json"
    _, out, _ = run(RUNS["dual-implicit"] + ["--out", str(path)])
    assert path.read_text() == out


def test_seed_surfaces_in_report(outputs):
    assert json.loads(outputs["prox-path"][1])["seed"] == 0
    _, out, _ = run(RUNS["check"] + ["--seed", "5"])
    assert json.loads(out)["seed"] == 5


def test_every_operation_is_reachable():
    # record which library functions each subcommand actually calls
    called = set()

    def prof(frame, event, arg):
        if event == "call" and frame.f_globals.get("__name__", "").startswith("dualscope"):
            called.add(frame.f_code.co_name)

    sys.setprofile(prof)
    try:
        for argv in RUNS.values():
            run(argv)
    finally:
        sys.setprofile(None)
    # prox_p1 is reached through prox_p1_detail, which also reports the diagonal flag
    implemented_by = {"prox_p1": {"prox_p1", "prox_p1_detail"}}
    missing = [op for op in LIBRARY_OPS if not implemented_by.get(op, {op}) & called]
    assert not missing
    # and the dispatch table advertises each of them
    listed = {op for ops in cli.DISPATCH.values() for op in ops}
    assert set(LIBRARY_OPS) <= listed
    assert set(cli.DISPATCH) == set(cli.COMMANDS)


def test_console_script_runs():
    proc = subprocess.run([sys.executable, "-m", "dualscope.cli", "stability", "--form",
                           "u^3*v", "--degree", "4"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["class"] == "unstable"


def test_schema_files_shipped():
    names = {p.stem for p in Path(cli.__file__).parent.joinpath("schemas").glob("*.json")}
    assert names == set(cli.COMMANDS) | {"error"}
    for n in names:
        jsonschema.Draft7Validator.check_schema(cli.load_schema(n))


def test_version_flag():
    assert run(["--version"])[0] == 0


def test_help_mentions_every_subcommand():
    text = cli.build_parser().format_help()
    for cmd in cli.COMMANDS:
        assert re.search(rf"\b{cmd}\b", text)
