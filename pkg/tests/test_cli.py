import json

import pytest

from terracini import verify
from terracini.cli import main
from terracini.poly import Poly, symbols

d, g = symbols("d", "g")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_formula_text(capsys):
    code, out, _ = run(capsys, "formula", "--n", "2")
    assert code == 0
    assert out.strip() == (2 * (d - g - 3) * (d - g - 4) + 8 * g * (d - 5)).to_text()


def test_formula_json_round_trip(capsys):
    code, out, _ = run(capsys, "formula", "--n", "3", "--format", "json")
    doc = json.loads(out)
    assert doc["n"] == 3
    p = Poly.from_json({"variables": doc["variables"], "terms": doc["t"]})
    assert p.to_text() == doc["text"]
    _, text, _ = run(capsys, "formula", "--n", "3")
    assert text.strip() == doc["text"]


def test_formula_latex(capsys):
    code, out, _ = run(capsys, "formula", "--n", "3", "--format", "latex")
    assert code == 0 and r"\frac{4}{3} d^{3}" in out


@pytest.mark.parametrize("n", ["1", "9"])
def test_formula_n_out_of_range(capsys, n):
    code, _, err = run(capsys, "formula", "--n", n)
    assert code == 2 and "error" in err


def test_n_limit_override(capsys):
    code, out, _ = run(capsys, "--n-limit", "9", "formula", "--n", "9")
    assert code == 0 and out.startswith("4/2835*d^9")


@pytest.mark.parametrize("n, dv, gv, expected", [(2, "8", "0", "40"), (2, "5", "1", "0"), (2, "4", "0", "0")])
def test_eval(capsys, n, dv, gv, expected):
    code, out, err = run(capsys, "eval", "--n", str(n), "--d", dv, "--g", gv)
    assert code == 0
    assert out.strip() == expected
    assert err == ""


def test_eval_warning_and_json(capsys):
    code, out, err = run(capsys, "eval", "--n", "2", "--d", "3", "--g", "0")
    assert code == 0 and "warning" in err
    code, out, _ = run(capsys, "eval", "--n", "3", "--d", "9/2", "--g", "0", "--format", "json")
    doc = json.loads(out)
    assert doc["warnings"] and doc["d"] == "9/2"


def test_eval_malformed(capsys):
    code, _, err = run(capsys, "eval", "--n", "2", "--d", "abc", "--g", "0")
    assert code == 2


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["formula"])
    assert exc.value.code == 2


def test_table_csv(capsys):
    code, out, _ = run(capsys, "table", "--n", "2", "--d", "4..8", "--g", "0..0", "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "d,g,t"
    assert [line.split(",")[2] for line in lines[1:]] == ["0", "4", "12", "24", "40"]


def test_table_single_cell_and_empty(capsys):
    _, out, _ = run(capsys, "table", "--n", "2", "--d", "6", "--g", "2", "--format", "json")
    assert json.loads(out)["rows"] == [{"d": 6, "g": 2, "t": "16"}]
    code, out, _ = run(capsys, "table", "--n", "2", "--d", "8..4", "--g", "0..1")
    assert code == 0 and out.strip() == "d,g,t"


def test_eval_agrees_with_formula(capsys):
    _, out, _ = run(capsys, "formula", "--n", "4", "--format", "json")
    doc = json.loads(out)
    t = Poly.from_json({"variables": doc["variables"], "terms": doc["t"]})
    for dv, gv in [(10, 0), (12, 3), (15, 8)]:
        _, value, _ = run(capsys, "eval", "--n", "4", "--d", str(dv), "--g", str(gv))
        assert value.strip() == str(t.substitute({"d": dv, "g": gv}))


@pytest.mark.parametrize("max_n", ["2", "6"])
def test_verify_passes(capsys, max_n):
    code, out, _ = run(capsys, "verify", "--max-n", max_n)
    assert code == 0
    assert "FAIL" not in out


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--max-n", "3", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and len(doc["checks"]) > 10


def test_verify_detects_perturbed_route(capsys, monkeypatch):
    from terracini import chern

    real = chern.chern_exp

    def broken(p):
        c = real(p)
        c[-1] = c[-1] * 2
        return c

    monkeypatch.setattr(verify.chern, "chern_exp", broken)
    code, out, _ = run(capsys, "verify", "--max-n", "3")
    assert code == 1
    assert "FAIL" in out


def test_verify_detects_broken_grr(capsys, monkeypatch):
    from terracini import grr

    real = grr.ch_EC_closed

    def broken(ctx):
        ch = real(ctx)
        ch.parts[1] = ch.parts[1] + ch.parts[1]
        return ch

    monkeypatch.setattr(verify.grr, "ch_EC_closed", broken)
    code, _, _ = run(capsys, "verify", "--max-n", "2")
    assert code == 1


def test_oracle_report(capsys):
    code, out, err = run(capsys, "oracle", "--d", "5", "--seed", "0")
    doc = json.loads(out)
    assert code == 0
    assert set(doc) >= {"d", "seed", "expected", "count", "solutions"}
    assert doc["expected"] == 4 and doc["count"] == 4
    assert all(set(s) == {"t1", "t2", "residual"} for s in doc["solutions"])
    assert "seeds 0..0" in err


def test_oracle_trials(capsys):
    code, out, _ = run(capsys, "oracle", "--d", "4", "--seed", "3", "--trials", "2")
    doc = json.loads(out)
    assert code == 0 and doc["matches"] == 2 and len(doc["runs"]) == 2
