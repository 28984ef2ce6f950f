import json

import pytest
from click.testing import CliRunner

from qborwein.cli import cli


def run(*args, env=None):
    result = CliRunner().invoke(cli, list(args), env=env, standalone_mode=False)
    if result.exception and not isinstance(result.exception, SystemExit):
        raise result.exception
    return result


def code(result):
    return result.return_value if result.return_value is not None else result.exit_code


def as_json(result):
    return json.loads(result.stdout)


# -- expand / dissect --------------------------------------------------------------


def test_expand_d1():
    r = run("expand", "--d", "1", "--order", "7", "--format", "json")
    assert code(r) == 0
    assert as_json(r)["coeffs"] == ["1", "-1", "-1", "1", "-1", "0", "2", "-1"]


def test_expand_d0():
    r = run("expand", "--d", "0", "--order", "5", "--format", "json")
    assert as_json(r)["coeffs"] == ["1", "0", "0", "0", "0", "0"]


def test_expand_critical_q3_is_exact_zero():
    r = run("expand", "--d", "critical", "--order", "3", "--format", "json")
    obj = as_json(r)
    assert obj["ring"] == {"tag": "quadratic", "D": 73}
    assert obj["coeffs"][3] == {"a": "0", "b": "0", "D": 73}


def test_expand_text_and_csv(tmp_path):
    r = run("expand", "--d", "1/2", "--order", "2")
    assert "order 2" in r.stdout and "-1/2" in r.stdout
    r = run("expand", "--d", "1/2", "--order", "2", "--format", "csv")
    assert r.stdout.splitlines() == ["t,coefficient", "0,1", "1,-1/2", "2,-5/8"]
    out = tmp_path / "s.json"
    run("expand", "--order", "4", "--format", "json", "--output", str(out))
    assert json.loads(out.read_text())["order"] == 4


def test_dissect_csv():
    r = run("dissect", "--d", "1", "--order", "5", "--format", "csv")
    assert r.stdout.splitlines() == ["k,A,B,C", "0,1,1,1", "1,1,1,0"]


# -- verify -----------------------------------------------------------------------


def test_verify_d3_order_300():
    r = run("verify", "--d", "3", "--order", "300", "--format", "json")
    assert code(r) == 0
    obj = as_json(r)
    assert obj["status"] == "verified-nonnegative" and obj["checked_order"] == 300
    assert obj["version"] == 1


def test_verify_sharpness_witness():
    r = run("verify", "--d", "1/5", "--order", "10", "--format", "json")
    assert code(r) == 1
    a = as_json(r)["components"]["A"]
    assert a == {"first_violation": 1, "witness": "-1/125"}


def test_verify_order0():
    r = run("verify", "--d", "1", "--order", "0")
    assert code(r) == 0
    assert "order 0" in r.stdout


def test_verify_interval_inconclusive_exit_2():
    r = run("verify", "--quad", "9/2,-1/2,73", "--ring", "interval", "--order", "6", "--format", "json")
    # the q^3 coefficient is exactly zero at the boundary, an interval cannot decide it
    assert code(r) == 2
    assert as_json(r)["bits"] == 256


def test_verify_quad_option():
    r = run("verify", "--quad", "9/2,-1/2,73", "--order", "30", "--format", "json")
    assert code(r) == 0 and as_json(r)["ring"] == "quadratic"


@pytest.mark.parametrize(
    "args",
    [
        ["verify", "--d", "abc", "--order", "5"],
        ["verify", "--d", "formal", "--order", "5"],
        ["verify", "--d", "critical", "--ring", "rational", "--order", "5"],
        ["verify", "--d", "1", "--order", "-1"],
        ["verify", "--quad", "1,2,4", "--order", "3"],
        ["scan", "--order", "5"],
        ["region", "--domain", "3:1"],
        ["jtp", "--order", "30", "--K", "2"],
        ["finite", "--n", "-1"],
        ["nonsense"],
    ],
)
def test_usage_errors_exit_3(args):
    result = CliRunner().invoke(cli, args)
    assert result.exit_code == 3, result.output


# -- finite / region / jtp ----------------------------------------------------------


def test_finite():
    assert code(run("finite", "--n", "2")) == 0
    assert code(run("finite", "--n", "0")) == 0
    r = run("finite", "--n", "3", "--squared", "--format", "json")
    assert code(r) == 0 and as_json(r)["params"]["squared"] is True


def test_region_text_and_json():
    r = run("region", "--order", "3")
    assert code(r) == 0
    assert "0.227998127341" in r.stdout and ", 3]" in r.stdout
    r = run("region", "--order", "1", "--format", "json")
    obj = as_json(r)
    assert obj["intervals"] == [{"lo": {"type": "rational", "value": "0"},
                                 "hi": {"type": "rational", "value": "4"}}]


def test_region_missing_sample_is_loud():
    r = run("region", "--order", "6", "--samples", "3/2")
    assert code(r) == 1
    assert "POTENTIAL COUNTEREXAMPLE" in r.stderr


def test_jtp():
    r = run("jtp", "--order", "200", "--format", "json")
    assert code(r) == 0
    assert [c["passed"] for c in as_json(r)] == [True, True]


# -- scan -----------------------------------------------------------------------------


def test_scan_two_violations():
    r = run("scan", "--order", "10", "--grid", "0.1,0.2", "--format", "json")
    assert code(r) == 1
    results = as_json(r)["results"]
    assert [x["components"]["A"]["first_violation"] for x in results] == [1, 1]


def test_scan_worst_status_and_grid():
    r = run("scan", "--order", "12", "--grid", "1:3:3")
    assert code(r) == 0
    assert "d=2: verified-nonnegative" in r.stdout
    r = run("scan", "--order", "10", "--d", "1", "--d", "1/5")
    assert code(r) == 1


def test_scan_parallel_matches_serial():
    args = ["scan", "--order", "40", "--grid", "0.23,0.5,1,2,3", "--format", "json"]
    serial = run(*args).stdout
    parallel = run(*args, "--jobs", "3").stdout
    assert serial == parallel


# -- cache ------------------------------------------------------------------------------


def test_cache_is_byte_identical(tmp_path):
    args = ["expand", "--d", "2/3", "--order", "25", "--format", "json", "--cache-dir", str(tmp_path)]
    first = run(*args).stdout
    files = list(tmp_path.glob("*.json"))
    assert len(files) == 1
    before = files[0].read_bytes()
    second = run(*args).stdout
    assert first == second
    assert files[0].read_bytes() == before


def test_cache_env_variable(tmp_path):
    run("verify", "--d", "1/2", "--order", "9", env={"QBORWEIN_CACHE_DIR": str(tmp_path)})
    assert len(list(tmp_path.glob("*.json"))) == 1
