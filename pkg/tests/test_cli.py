"""CLI surface: formats, exit codes, determinism, file round-trips."""

import json

import pytest

from turanlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def linear_poly(tmp_path):
    path = tmp_path / "xm1.json"
    path.write_text(json.dumps(
        {"leading": [1.0, 0.0], "zeros": [[1.0, 0.0]]}))
    return str(path)


def test_ratio_prints_half(capsys, linear_poly):
    code, out, _ = run(capsys, "ratio", "--poly", linear_poly)
    assert code == 0
    assert json.loads(out)["ratio"] == pytest.approx(0.5, abs=1e-12)


def test_ratio_csv_format(capsys, linear_poly):
    code, out, _ = run(capsys, "ratio", "--poly", linear_poly,
                       "--format", "csv")
    assert code == 0
    header, row = out.strip().split("\n")
    assert header.split(",")[0] == "ratio"
    assert float(row.split(",")[0]) == pytest.approx(0.5)


def test_verdict_csv_columns(capsys, linear_poly):
    code, out, _ = run(capsys, "verdict", "--poly", linear_poly,
                       "--n", "1", "--k", "1", "--pin")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "n,k,ratio,err,bound_source,bound_value,pass"
    assert any("cor23" in ln for ln in lines[1:])
    assert all(ln.endswith("true") for ln in lines[1:])


def test_sample_round_trip(capsys, tmp_path):
    out_path = tmp_path / "sample.json"
    code, _, _ = run(capsys, "sample", "--n", "4", "--k", "1", "--pin",
                     "--seed", "3", "--out", str(out_path))
    assert code == 0
    code, out, _ = run(capsys, "ratio", "--poly", str(out_path))
    assert code == 0
    assert json.loads(out)["ratio"] > 0


def test_sample_deterministic_bytes(capsys):
    _, out1, _ = run(capsys, "sample", "--n", "5", "--k", "2", "--seed", "9")
    _, out2, _ = run(capsys, "sample", "--n", "5", "--k", "2", "--seed", "9")
    assert out1 == out2


def test_lemma31_json(capsys, tmp_path):
    path = tmp_path / "mono.json"
    path.write_text(json.dumps(
        {"leading": [1.0, 0.0], "zeros": [[0.0, 0.0]] * 7}))
    code, out, _ = run(capsys, "lemma31", "--poly", str(path),
                       "--delta", "2.0")
    assert code == 0
    rep = json.loads(out)
    assert rep["measure"] == pytest.approx(1.0, abs=1e-9)
    assert rep["satisfied"] is True


def test_lemma32_inline_zeros(capsys):
    code, out, _ = run(capsys, "lemma32", "--zeros", "[[0.0, 0.0]]",
                       "--alpha", "4.0")
    assert code == 0
    assert json.loads(out)["measure"] == pytest.approx(0.5, abs=1e-10)


def test_lemma32_degree_mismatch_is_domain_error(capsys):
    code, _, err = run(capsys, "lemma32", "--zeros", "[[0.0, 0.0]]",
                       "--alpha", "4.0", "--deg", "3")
    assert code == 1
    assert err.startswith("error:")


def test_search_json(capsys):
    code, out, _ = run(capsys, "search", "--n", "1", "--k", "0", "--pin",
                       "--budget", "500", "--restarts", "2", "--seed", "1")
    assert code == 0
    rep = json.loads(out)
    assert rep["ratio"] == pytest.approx(0.5, abs=1e-6)
    assert rep["within_bracket"] is True


def test_sweep_csv_columns_and_determinism(capsys):
    argv = ("sweep", "--n-values", "2,4", "--k-values", "0", "--pin",
            "--budget", "300", "--restarts", "2", "--seed", "7")
    code, out1, _ = run(capsys, *argv)
    assert code == 0
    code, out2, _ = run(capsys, *argv)
    assert out1 == out2
    header = out1.split("\n", 1)[0]
    assert header == ("n,k,ratio,err,lower_bound,upper_construction,"
                      "within_bracket,restarts_used,evals")


def test_construct_writes_chain(capsys, tmp_path):
    prefix = str(tmp_path / "chain")
    code, out, _ = run(capsys, "construct", "--n", "2", "--k", "1",
                       "--budget", "400", "--restarts", "2", "--seed", "0",
                       "--out", prefix)
    assert code == 0
    for tag in ("Q", "R", "P"):
        payload = json.loads((tmp_path / f"chain_{tag}.json").read_text())
        assert "leading" in payload and "zeros" in payload


def test_remark_json(capsys):
    code, out, _ = run(capsys, "remark", "--epsilon", "0.3", "--n", "1")
    assert code == 0
    rep = json.loads(out)
    assert rep["m"] == 4
    assert rep["ratio"] == pytest.approx(4.0, rel=1e-9)
    assert rep["ratio"] <= rep["bound"]


def test_missing_poly_file_is_domain_error(capsys):
    code, _, err = run(capsys, "ratio", "--poly", "/no/such/file.json")
    assert code == 1
    assert "error:" in err


def test_unknown_command_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_missing_required_flag_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["search", "--k", "0"])
    assert exc.value.code == 2
