import json

import pytest
from hypothesis import given, settings, strategies as st

from zmono.cli import CheckReport, dump_reports, exit_code, load_reports, main


def run(argv, capsys):
    code = main(argv)
    return code, capsys.readouterr().out


def test_show_table1(capsys):
    code, out = run(["show", "table1", "--s", "4"], capsys)
    assert code == 0
    assert "MISMATCH" not in out
    assert "a1+...+a5" in out and "-(a5)" in out


def test_show_char(capsys):
    code, out = run(["show", "char", "--s", "5", "--n", "1", "--order", "20"], capsys)
    coeffs = [int(x) for x in out.split()]
    assert len(coeffs) == 20 and coeffs[:8] == [1, 1, 1, 1, 2, 2, 3, 3]


def test_show_coeff(capsys):
    code, out = run(["show", "coeff", "--s", "5", "--alpha", "a1", "--beta", "a5", "--n", "1"], capsys)
    assert out.strip() == "-ω³+ω"


def test_show_genfun_and_orbit(capsys):
    _, out = run(["show", "genfun", "--set", "R1", "--order", "6"], capsys)
    assert out.split() == ["1", "1", "1", "1", "2", "2"]
    _, out = run(["show", "orbit", "--s", "3", "--root", "a5"], capsys)
    assert out.startswith("representative a1, nu^1")


@pytest.mark.parametrize("argv", [
    ["verify", "nonsense"],
    ["verify", "gcr", "--delta-phase", "other"],
    ["verify", "gcr", "--s", "2"],
    ["verify", "identities", "--order", "-1"],
    ["verify", "determinants", "--twist", "3"],
    ["show", "table1", "--s", "1"],
])
def test_usage_errors_exit_2(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_verify_identities_json(tmp_path, capsys):
    path = tmp_path / "out.json"
    code, out = run(["verify", "identities", "--order", "60", "--json", str(path)], capsys)
    assert code == 0
    text = path.read_text(encoding="utf-8")
    data = json.loads(text)
    assert isinstance(data, list)
    assert set(data[0]) == {"check_id", "status", "expected", "actual", "params", "runtime_ms"}
    assert dump_reports(load_reports(text)) == text
    assert {d["status"] for d in data} == {"pass", "exploratory"}


def test_verify_determinants(capsys):
    code, out = run(["verify", "determinants", "--s", "5"], capsys)
    assert code == 0
    line = next(l for l in out.splitlines() if " a9.cmatrix " in l)
    assert line.startswith("PASS")


def test_verify_wrong_twist_fails(capsys):
    code, out = run(["verify", "determinants", "--twist", "13"], capsys)
    assert code == 1
    assert "FAIL" in out and "expected" in out


def test_verify_paper_phase_fails(capsys):
    code, out = run(["verify", "gcr", "--s", "3", "--degree-cap", "4", "--window", "2",
                     "--delta-phase", "paper"], capsys)
    assert code == 1
    assert "nonzero at bidegree" in out


def test_verify_all_s3(capsys):
    code, out = run(["verify", "all", "--s", "3", "--degree-cap", "8"], capsys)
    assert code == 0, out
    assert "0 fail" in out.splitlines()[-1]


def test_exit_code_ignores_exploratory_and_inconclusive():
    mk = lambda st: CheckReport("x", st, "", "", {}, 0)
    assert exit_code([mk("pass"), mk("exploratory"), mk("inconclusive")]) == 0
    assert exit_code([mk("pass"), mk("fail")]) == 1


text = st.text(alphabet=st.characters(blacklist_categories=("Cs",)), max_size=20)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.builds(CheckReport, text, st.sampled_from(["pass", "fail", "inconclusive", "exploratory"]),
                          text, text, st.dictionaries(st.text(max_size=5), st.integers() | text, max_size=3),
                          st.integers(0, 10 ** 6)), max_size=5))
def test_json_round_trip(reports):
    out = dump_reports(reports)
    assert dump_reports(load_reports(out)) == out
