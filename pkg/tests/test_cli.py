import csv
import io
import json
import subprocess
import sys
import time

import pytest

from ffbias.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    lines = [l for l in text.splitlines() if not l.startswith("#")]
    return list(csv.reader(io.StringIO("\n".join(lines))))


def test_constants(capsys):
    code, out, err = run(["constants"], capsys)
    assert code == 0
    assert out.splitlines() == ["beta=0.363757238379", "gamma=1.202097170841"]
    assert "e-1" in err or "0.0" in err


def test_sums_example(capsys):
    code, out, _ = run(["sums", "--modulus", "t^2+1", "--char-index", "1", "--n", "3", "--method", "enumerate"], capsys)
    assert code == 0
    assert out.startswith("# generated-by ffbias")
    r = rows(out)
    assert r[0] == ["k", "re", "im"]
    assert [x[0] for x in r[1:]] == ["0", "1", "2", "3"]
    assert r[1] == ["0", "0.0", "0.0"]


def test_sums_methods_agree(capsys):
    base = ["sums", "--modulus", "t^3+2*t+1", "--char-index", "7", "--n", "8", "--no-header"]
    _, a, _ = run(base + ["--method", "enumerate"], capsys)
    _, b, _ = run(base + ["--method", "analytic"], capsys)
    for ra, rb in zip(rows(a)[1:], rows(b)[1:]):
        assert abs(complex(float(ra[1]), float(ra[2])) - complex(float(rb[1]), float(rb[2]))) < 1e-9


def test_normalized_columns(capsys):
    _, out, _ = run(["sums", "--char-index", "1", "--n", "20", "--normalized", "--no-header"], capsys)
    r = rows(out)
    assert r[0] == ["k", "re_tilde", "im_tilde"] and r[1][0] == "1"


def test_repeatable_output(capsys):
    argv = ["compare", "--modulus", "t^2+1", "--char-index", "1", "--n-range", "10:40:10", "--k-mode", "fixed:2"]
    _, a, _ = run(argv, capsys)
    _, b, _ = run(argv, capsys)
    assert a == b
    r = rows(a)
    assert r[0] == ["n", "k", "re_exact", "im_exact", "re_pred", "im_pred", "abs_residual", "bias_term", "osc_bound"]
    assert len(r) == 5


def test_float_format_round_trips(capsys):
    _, out, _ = run(["bias-curve", "--alpha-range", "0.5:1.5:0.25", "--no-header"], capsys)
    r = rows(out)
    assert r[0] == ["alpha", "s", "b"]
    for line in r[1:]:
        for v in line:
            assert repr(float(v)) == v


def test_json_mirrors_csv(capsys):
    _, c, _ = run(["lfunc", "--modulus", "t^3+t^2+2", "--char-index", "13", "--no-header"], capsys)
    _, j, _ = run(["lfunc", "--modulus", "t^3+t^2+2", "--char-index", "13", "--no-header", "--json"], capsys)
    doc = json.loads(j)
    r = rows(c)
    assert doc["columns"] == r[0]
    assert [[str(v) for v in row] for row in doc["rows"]] == [[x for x in row] for row in r[1:]]


def test_header_flag(capsys):
    _, out, _ = run(["chars", "--modulus", "t^2+2"], capsys)
    assert out.splitlines()[0] == "# generated-by ffbias 0.1.0 chars --modulus t^2+2"
    _, out, _ = run(["chars", "--modulus", "t^2+2", "--no-header"], capsys)
    assert out.splitlines()[0] == "index,order,principal,real,exponents"
    assert len(out.splitlines()) == 5


def test_lfunc_coeffs(capsys):
    _, out, _ = run(["lfunc", "--modulus", "t^3+t^2+2", "--char-index", "13", "--coeffs", "--no-header"], capsys)
    assert rows(out)[1:] == [["13", "0", "1.0", "0.0"], ["13", "1", "1.0", "0.0"], ["13", "2", "3.0", "0.0"]]


def test_hankel(capsys):
    _, out, _ = run(["hankel", "--z", "-0.5", "--n", "10000", "--no-header"], capsys)
    r = rows(out)
    assert abs(float(r[1][1]) - 0.5641895835477563) < 2e-3


def test_output_file(tmp_path, capsys):
    p = tmp_path / "o.csv"
    code, out, _ = run(["constants", "--output", str(p)], capsys)
    assert code == 0 and out == "" and p.read_text().startswith("beta=")


def test_config_file(tmp_path, capsys):
    p = tmp_path / "c.cfg"
    p.write_text("q = 5\nmodulus = t^2+2\n")
    _, out, _ = run(["chars", "--config", str(p), "--no-header"], capsys)
    assert len(rows(out)) == 1 + 24
    p.write_text("bogus = 1\n")
    code, _, err = run(["chars", "--config", str(p)], capsys)
    assert code == 2 and "c.cfg:1" in err


@pytest.mark.parametrize("argv,code", [
    (["sums", "--bogus"], 2),
    (["frobnicate"], 2),
    ([], 2),
    (["sums", "--n", "3", "--char-index", "99"], 2),
    (["sums", "--n", "3", "--modulus", "2*t+1"], 2),
    (["sums", "--n", "30", "--method", "enumerate"], 3),
    (["sums", "--n", "301"], 3),
    (["compare", "--n-range", "10:20", "--theorem", "4", "--char-index", "1"], 2),
])
def test_exit_codes(argv, code, capsys):
    assert run(argv, capsys)[0] == code


def test_verify_quick_subprocess():
    t0 = time.perf_counter()
    p = subprocess.run([sys.executable, "-m", "ffbias.cli", "verify", "--quick"], capture_output=True, text=True)
    assert time.perf_counter() - t0 < 60
    lines = p.stdout.splitlines()
    assert lines[0].startswith("PASS [ 1]") and lines[1].startswith("PASS [ 2]")
    assert p.returncode == 0


def test_verify_exit_status_on_failure(capsys, monkeypatch):
    from ffbias import checks

    monkeypatch.setitem(checks.CHECKS, 3, lambda quick: checks.CheckResult(3, "stub", False, "forced"))
    code, out, _ = run(["verify", "--only", "3,4"], capsys)
    assert code == 1 and out.startswith("FAIL [ 3] stub") and "PASS [ 4]" in out
