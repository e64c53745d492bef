import json
import unicodedata

import pytest

from quadnets.catalog import find_entry
from quadnets.cli import NetFileError, main, parse_net_file

from helpers import SIMPLEX_SEVEN, net_through


def write_net(tmp_path, forms, field=None, name="net.txt"):
    lines = [f"field: {field}"] if field else []
    lines += [f"Q{i + 1}: {f}" for i, f in enumerate(forms)]
    path = tmp_path / name
    path.write_text("\n".join(lines) + "\n")
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_53(tmp_path, capsys):
    path = write_net(tmp_path, find_entry("{5,3}").forms, "Q")
    code, out, _ = run(capsys, "analyze", path)
    assert code == 0
    assert out.splitlines()[0] == "type {5,3}, d=1, rho=0, EXTREMAL, MW=Z/3"
    assert "A5+A2" in out


def test_analyze_degenerate(tmp_path, capsys):
    path = write_net(tmp_path, ["X*(X-W)", "Y*(Y-W)", "Z*W"])
    code, _, err = run(capsys, "analyze", path)
    assert code == 2
    assert "Assumption 1 fails at [0,0,1,0]" in err


def test_analyze_positive_dimensional(tmp_path, capsys):
    code, _, err = run(capsys, "analyze", write_net(tmp_path, ["X*Y", "X*Z", "X*W"]))
    assert code == 2 and "base locus not finite" in err


def test_analyze_generic_net(tmp_path, capsys):
    from quadnets.exact.fields import QQ

    net = net_through([__import__("quadnets").quadric.ProjPoint(c) for c in SIMPLEX_SEVEN], QQ)
    path = write_net(tmp_path, [str(f) for f in net.forms])
    code, out, _ = run(capsys, "analyze", path)
    assert code == 0 and "rho=7, NOT extremal" in out


def test_analyze_incomplete_over_q(tmp_path, capsys):
    # base points with irrational coordinates: X^2 = 2 Y^2 on the other members
    path = write_net(tmp_path, ["X^2 - 2*Y^2", "Z^2 - 3*W^2", "X*Z + Y*W + Y*Z"])
    code, _, err = run(capsys, "analyze", path)
    assert code == 3 and "incomplete" in err


def test_analyze_field_override_and_json(tmp_path, capsys):
    path = write_net(tmp_path, find_entry("{2,2,2,2}").forms, "Q")
    code, out, _ = run(capsys, "analyze", path, "--field", "GF(7)", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["field"] == "GF(7)" and data["d"] == 3 and data["rho"] == 0
    assert json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) == out.rstrip("\n")


def test_net_file_diagnostics():
    with pytest.raises(NetFileError) as info:
        parse_net_file("field: Q\nQ1: X*Y\nQ2: X W\nQ3: Z^2\n")
    assert (info.value.line, info.value.column) == (3, 7)
    with pytest.raises(NetFileError) as info:
        parse_net_file("Q1: X*Y\nQ2: Z*W\nQ3: X*Y + W\n")
    assert info.value.line == 3 and "homogeneous" in str(info.value)
    with pytest.raises(NetFileError, match="missing key 'Q3'"):
        parse_net_file("Q1: X*Y\nQ2: Z*W\n")
    with pytest.raises(NetFileError, match="unknown key"):
        parse_net_file("Q4: X*Y\n")


def test_net_file_comments_and_field():
    nf = parse_net_file("# a comment\nfield: GF(2)\nQ1: (X+Y+Z)*W  # first\nQ2: (X+Y+W)*Z\nQ3: (X+Z+W)*Y\n")
    assert str(nf.field) == "GF(2)" and len(nf.forms) == 3


def test_analyze_syntax_error_exit_code(tmp_path, capsys):
    path = write_net(tmp_path, ["X*Y", "2X*Z", "W^2"])
    code, _, err = run(capsys, "analyze", path)
    assert code == 1 and "line 2" in err


def test_verify_single_entry(capsys):
    code, out, _ = run(capsys, "verify-catalog", "--entry", "{8}2")
    assert code == 0 and out.rstrip().endswith("1/1 green")


def test_verify_prime(capsys):
    code, out, _ = run(capsys, "verify-catalog", "--prime", "5")
    assert code == 0 and "11/11 green, 1 skipped" in out


def test_verify_json_and_report_dir(tmp_path, capsys):
    code, out, _ = run(capsys, "verify-catalog", "--entry", "{4,2,2}", "--json", "--report-dir", str(tmp_path))
    assert code == 0
    (rep,) = json.loads(out)
    assert rep["label"] == "{4,2,2}" and rep["green"]
    assert (tmp_path / "catalog_report.json").exists()


def test_verify_unknown_entry(capsys):
    code, _, err = run(capsys, "verify-catalog", "--entry", "{7,1}")
    assert code == 1 and "no catalog entry" in err


def test_roots_commands(capsys):
    code, out, _ = run(capsys, "roots", "subsystems")
    assert code == 0 and len(out.strip().splitlines()) == 7
    _, out, _ = run(capsys, "roots", "extend", "A7")
    found = {unicodedata.normalize("NFC", t) for t in out.strip().split(", ")}
    assert found == {unicodedata.normalize("NFC", t) for t in ("A\u03037", "E\u03037")}
    _, out, _ = run(capsys, "roots", "--ascii", "extend", "A7")
    assert set(out.strip().split(", ")) == {"~A7", "~E7"}
    _, out, _ = run(capsys, "roots", "quotient", "7A1")
    assert out.strip() == "(Z/2)^3"
    code, _, err = run(capsys, "roots", "quotient", "A6")
    assert code == 1 and "not a finite-index subsystem" in err


@pytest.mark.parametrize(
    "quartic, expected",
    [
        ("a*b*c*(a+b)", "D4 + 3A1, rank 7"),
        ("a^4+b^4+c^4", "smooth, rank 0"),
        ("b^4+2*a*b^2*c+a^2*c^2+4*c^4", "A7 at [1,0,0]"),
    ],
)
def test_quartic_command(capsys, quartic, expected):
    code, out, _ = run(capsys, "quartic", quartic)
    assert code == 0 and expected in out


def test_quartic_from_file(tmp_path, capsys):
    path = tmp_path / "q.txt"
    path.write_text("quartic: b*(a^2*b - 4*c^3)\n")
    code, out, _ = run(capsys, "quartic", str(path), "--json")
    data = json.loads(out)
    assert code == 0 and data["root_system"] == "A5+A2" and data["rank"] == 7


def test_quartic_errors(capsys):
    assert run(capsys, "quartic", "a^3")[0] == 1
    assert run(capsys, "quartic", "a^2*b*c")[0] == 2
    assert run(capsys, "quartic", "(a^2 - 2*b^2 + c^2)*(a^2 - 2*b^2 - c^2)")[0] == 3


def test_usage_error(capsys):
    assert run(capsys, "frobnicate")[0] == 1
