import io
import json
import subprocess
import sys

import pytest

from polyzeta.bridge import MinerReport
from polyzeta.cli import (
    DEFAULTS,
    UsageError,
    dispatch,
    load_config,
    render_table,
    rule_from_json,
    rule_to_json,
)


def run(*argv, env=None):
    out, err = io.StringIO(), io.StringIO()
    code = dispatch(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_lyndon():
    code, out, _ = run("lyndon", "--alphabet", "Y", "--max-grade", "3")
    assert code == 0 and out == "y1\ny2\ny2 y1\ny3\n"


def test_relations_weight3():
    code, out, _ = run("relations", "--max-weight", "3", "--side", "Y")
    assert code == 0
    assert "3 | Sigma[y2 y1] -> 3/2 Sigma[y3]" in out.splitlines()


def test_relations_weight4_block():
    _, out, _ = run("relations", "--max-weight", "4", "--side", "Y")
    rows = [l for l in out.splitlines() if l.startswith("4 |")]
    assert rows == [
        "4 | Sigma[y4] -> 2/5 Sigma[y2]^2",
        "4 | Sigma[y3 y1] -> 3/10 Sigma[y2]^2",
        "4 | Sigma[y2 y1 y1] -> 2/3 Sigma[y2]^2",
    ]


def test_negalog_reg():
    code, out, _ = run("negalog", "reg", "--word", "1 1")
    assert code == 0 and out.strip() == "zeta_sh = 0, gamma = 11/24"
    _, out, _ = run("negalog", "reg", "--word", "2 1", "--format", "json")
    d = json.loads(out)
    assert d["word"] == [2, 1] and d["p"] == [0, 1, -11, 31, -33, 12]
    assert d["phat1"] == "-73/120" and d["p1"] == sum(d["p"])


def test_negalog_li():
    _, out, _ = run("negalog", "li", "--word", "1 1")
    assert out.strip() == "-u + 5u^2 - 7u^3 + 3u^4"


def test_rat_commands():
    code, out, _ = run("rat", "check", "--lhs", "(-t^2 x0 x1)* sh (t^2 x0 x1)*",
                       "--rhs", "(-4 t^4 x0 x0 x1 x1)*", "--up-to", "12")
    assert code == 0 and out.startswith("equal")
    _, out, _ = run("rat", "coeff", "--expr", "(2 x1)*", "--word", "111")
    assert out.strip() == "8"


def test_basis_and_product():
    _, out, _ = run("basis", "--kind", "stuffle-Y", "--word", "2 1")
    assert "Sigma[y2y1] = 1/2*y3 + y2y1" in out
    _, out, _ = run("product", "--op", "stuffle", "--left", "2", "--right", "3")
    assert out.strip() == "y5 + y3y2 + y2y3"


def test_euler_table():
    _, out, _ = run("euler", "--k", "5")
    lines = out.strip().splitlines()
    assert len(lines) == 6 and lines[-1].startswith("5 | 1/93555")


def test_exit_codes():
    assert run("negalog", "li", "--word", "")[0] == 1
    assert run("rat", "coeff", "--expr", "(1 + x0)*", "--word", "0")[0] == 1
    assert run("rat", "check", "--lhs", "x0")[0] == 2
    assert run("relations", "--max-weight", "1")[0] == 2
    assert run("nosuchcommand")[0] == 2
    assert run("lyndon", "--bogus")[0] == 2


def test_verify_command():
    code, out, _ = run("verify", "--max-weight", "4", "--tol", "1e-3")
    assert code == 0 and out.strip().endswith("within tol 0.001")
    assert out.count("PASS") == 8


def test_config_defaults():
    cfg = load_config(None, env={})
    assert cfg.max_weight == DEFAULTS["max_weight"] == 6
    assert cfg.numeric.terms == 100_000 and cfg.numeric.tol == 1e-3


def test_config_env(tmp_path):
    assert load_config(None, env={"POLYZETA_MAX_WEIGHT": "8"}).max_weight == 8
    f = tmp_path / "pz.ini"
    f.write_text("tol = 1e-4\n")
    assert load_config(str(f), env={}).numeric.tol == 1e-4
    assert load_config(str(f), env={"POLYZETA_TOL": "1e-2"}).numeric.tol == 1e-2
    assert load_config(None, env={"POLYZETA_CONFIG": str(f)}).numeric.tol == 1e-4
    j = tmp_path / "pz.json"
    j.write_text('{"terms": 5000}')
    assert load_config(str(j), env={}).numeric.terms == 5000


def test_config_errors(tmp_path):
    f = tmp_path / "bad.ini"
    f.write_text("tolerance = 3\n")
    with pytest.raises(UsageError, match="tolerance"):
        load_config(str(f), env={})
    f.write_text("terms = lots\n")
    with pytest.raises(UsageError, match="terms"):
        load_config(str(f), env={})
    with pytest.raises(UsageError, match="POLYZETA_TOL"):
        load_config(None, env={"POLYZETA_TOL": "-1"})
    code, _, err = run("--config", str(f), "lyndon")
    assert code == 2 and "terms" in err


def test_empty_report_header_only():
    empty = MinerReport(2, [], [], [], [], {}, {})
    assert render_table(empty) == "weight | rule"


def test_json_round_trip(report6):
    for rule in report6.rules_Y + report6.rules_X:
        d = rule_to_json(rule)
        back = rule_from_json(json.loads(json.dumps(d)))
        assert back.lhs is rule.lhs and back.rhs == rule.rhs and back.weight == rule.weight
    d = rule_to_json(report6.rule_for(report6.rules_Y[4].lhs))
    assert set(d) == {"weight", "side", "lhs", "rhs", "rhs_terms"}


def test_latex_layout(report6):
    tex = render_table(report6, "latex", "Y")
    assert tex.startswith(r"\begin{array}") and tex.endswith(r"\end{array}")
    assert r"\zeta(\Sigma_{y_{2}y_{1}})" in tex


def test_byte_stable_output():
    cmd = [sys.executable, "-m", "polyzeta.cli", "relations", "--max-weight", "5"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a
