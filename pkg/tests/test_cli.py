"""CLI surface: golden outputs, exit codes, file and stdin handling."""

import json

import pytest

from dstoch import canonical, write_matrix
from dstoch.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def r_file(tmp_path):
    path = tmp_path / "R.json"
    path.write_text(write_matrix(canonical("R")))
    return str(path)


@pytest.fixture
def s_file(tmp_path):
    path = tmp_path / "S.json"
    path.write_text(write_matrix(canonical("S")))
    return str(path)


def test_gap_golden(capsys, r_file):
    code, out, _ = run(capsys, "gap", r_file)
    assert code == 0
    assert out == '{"frob_sq":"7/5","max_trace":"7/5","gap":"0","saturated":true}\n'


def test_classify_golden(capsys, s_file):
    code, out, _ = run(capsys, "classify", s_file)
    assert code == 0
    assert out == '{"saturated":true,"form":"S","P":[0,1,2],"Q":[0,1,2]}\n'


def test_classify_non_saturated(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text('{"n":3,"rows":[["1/2","1/4","1/4"],'
                    '["1/4","1/2","1/4"],["1/4","1/4","1/2"]]}')
    code, out, _ = run(capsys, "classify", str(path))
    assert code == 0
    payload = json.loads(out)
    assert payload["saturated"] is False
    assert "separator" in payload


def test_region_isolated_point(capsys):
    code, out, _ = run(capsys, "region", "--u", "0", "--v", "1")
    assert code == 0
    payload = json.loads(out)
    assert payload["E0"] is True
    assert payload["U_minus"] is False
    assert payload["U_plus"] is True


def test_check_and_exit_codes(capsys, tmp_path):
    good = tmp_path / "good.json"
    good.write_text(write_matrix(canonical("T")))
    code, out, _ = run(capsys, "check", str(good))
    assert code == 0 and json.loads(out)["doubly_stochastic"] is True

    bad = tmp_path / "bad.json"
    bad.write_text('{"n":2,"rows":[["1/2","1/4"],["1/2","3/4"]]}')
    code, _, err = run(capsys, "check", str(bad))
    assert code == 1 and err

    ugly = tmp_path / "ugly.json"
    ugly.write_text('{"n":2,"rows":[["0.5","0.5"],["0.5","0.5"]]}')
    code, _, err = run(capsys, "check", str(ugly))
    assert code == 2 and err


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2


def test_maxtrace_methods_agree(capsys, s_file):
    _, brute, _ = run(capsys, "maxtrace", s_file, "--method", "brute")
    _, assign, _ = run(capsys, "maxtrace", s_file, "--method", "assignment")
    b, a = json.loads(brute), json.loads(assign)
    assert b["max_trace"] == a["max_trace"] == "5/4"
    assert b["argmax"] == a["argmax"]


def test_permanent_and_maxprod(capsys, tmp_path):
    path = tmp_path / "J3.json"
    path.write_text(write_matrix(canonical("J3")))
    _, out, _ = run(capsys, "permanent", str(path))
    assert json.loads(out)["permanent"] == "2/9"
    _, out, _ = run(capsys, "maxprod", str(path))
    assert json.loads(out)["max_product"] == "1/27"


def test_canonical_pipes_into_gap(capsys, tmp_path):
    code, out, _ = run(capsys, "canonical", "--name", "Tn:4")
    assert code == 0
    path = tmp_path / "t4.json"
    path.write_text(out)
    code, out, _ = run(capsys, "gap", str(path))
    assert json.loads(out)["gap"] == "0"


def test_canonical_names(capsys):
    code, out, _ = run(capsys, "canonical", "--name", "I1J2")
    assert code == 0
    assert json.loads(out)["rows"][0] == ["1", "0", "0"]
    code, out, _ = run(capsys, "canonical", "--name", "Jn:5")
    assert json.loads(out)["rows"][2][2] == "1/5"


def test_params_and_construct_round_trip(capsys, r_file):
    _, out, _ = run(capsys, "params", r_file)
    payload = json.loads(out)
    assert payload == {"u": "0", "v": "-3/5", "w": "0"}
    code, out, _ = run(capsys, "construct", "--u", "0", "--v", "-3/5",
                       "--sign", "minus")
    assert code == 0
    built = json.loads(out)
    assert built["exact"] is True and built["w"] == "0"
    assert built["matrix"]["rows"][0] == ["3/5", "0", "2/5"]


def test_construct_infeasible_is_domain_error(capsys):
    code, _, err = run(capsys, "construct", "--u", "0", "--v", "-3/5",
                       "--sign", "plus")
    assert code == 1 and "a13" in err


def test_construct_float_branch(capsys):
    code, out, _ = run(capsys, "construct", "--u", "0", "--v", "-21/20",
                       "--sign", "minus")
    assert code == 0
    payload = json.loads(out)
    assert payload["exact"] is False
    assert isinstance(payload["w"], float)


def test_boundary_csv(capsys):
    code, out, _ = run(capsys, "boundary", "--min", "-0.5", "--max", "0.5",
                       "--step", "0.25", "--csv")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "u,f,g,h"
    assert len(lines) == 6


def test_boundary_json_stable(capsys):
    _, first, _ = run(capsys, "boundary", "--min", "0", "--max", "1",
                      "--step", "0.5")
    _, second, _ = run(capsys, "boundary", "--min", "0", "--max", "1",
                       "--step", "0.5")
    assert first == second
    assert json.loads(first)["rows"][0][2] == pytest.approx(-0.6)


def test_enumerate_small(capsys):
    code, out, _ = run(capsys, "--threads", "1", "enumerate",
                       "--denominator", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["ds_count"] == 21
    assert len(payload["saturating"]) == 21


def test_ds_threads_env_does_not_change_bytes(capsys, monkeypatch):
    _, single, _ = run(capsys, "--threads", "1", "enumerate",
                       "--denominator", "5")
    monkeypatch.setenv("DS_THREADS", "2")
    _, multi, _ = run(capsys, "enumerate", "--denominator", "5")
    assert single == multi


def test_products_deterministic(capsys):
    _, first, _ = run(capsys, "products", "--n", "4", "--samples", "5",
                      "--seed", "9")
    _, second, _ = run(capsys, "products", "--n", "4", "--samples", "5",
                       "--seed", "9")
    assert first == second
    assert all(p["identity_holds"] for p in json.loads(first)["probes"])


def test_probe_runs(capsys):
    code, out, _ = run(capsys, "probe", "--n", "3", "--samples", "10",
                       "--seed", "4", "--tol", "1e-9")
    assert code == 0
    payload = json.loads(out)
    assert payload["samples"] == 10


def test_stdin_matrix(capsys, monkeypatch):
    import io
    monkeypatch.setattr("sys.stdin", io.StringIO(write_matrix(canonical("S"))))
    code, out, _ = run(capsys, "gap", "-")
    assert code == 0
    assert json.loads(out)["saturated"] is True


def test_missing_file_exits_2(capsys):
    code, _, err = run(capsys, "gap", "/no/such/file.json")
    assert code == 2 and err
