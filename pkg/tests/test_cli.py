import json

import pytest

from tamewitt.cli import JobSpec, main, paper_example_report, parse_form_spec, run_command, to_json
from tamewitt.literals import LiteralError


def test_parse_job():
    job = parse_form_spec("field F2((t)); form hyp(2); norm norm{values=[(0),(0),(0),(0)]}; cmd witt-index --budget-degree=4")
    assert job.command == "witt-index" and job.field_name == "F2((t))"
    assert job.options == {"budget-degree": "4"}
    assert job.form().dim == 4 and job.norm().values[0].coords == (0,)
    assert parse_form_spec(job.to_text()) == job


def test_parse_errors_carry_positions():
    text = "field F2((t)); form hyp(1); norm norm{values=[(0),(0),(0)]}; cmd residue"
    with pytest.raises(LiteralError) as err:
        parse_form_spec(text)
    assert err.value.pos == text.index("norm{")
    with pytest.raises(LiteralError) as err:
        parse_form_spec("field F2((t)); form diag(1,,t); cmd residue")
    assert err.value.pos == len("field F2((t)); form diag(1,")
    with pytest.raises(LiteralError):
        parse_form_spec("field F2((t)); form hyp(1); cmd frobnicate")
    with pytest.raises(LiteralError):
        parse_form_spec("field F2((t)); form hyp(1); cmd residue --route=elsewhere")


def test_witt_index_command():
    rep = run_command(parse_form_spec("field F2((t)); form hyp(3); cmd witt-index"))
    assert rep.status == "ok" and rep.text == "Witt index 3" and rep.exit_code == 0


def test_decompose_then_verify_certificate(tmp_path):
    rep = run_command(parse_form_spec("field Q2((t)); form sum(diag(1,-5), scale(t, diag(1,-5))); cmd decompose"))
    assert rep.status == "ok" and rep.verified
    path = tmp_path / "cert.json"
    path.write_text(to_json(rep))
    out = run_command(parse_form_spec(f"cmd verify --certificate={path}"))
    assert out.verified and out.result["result"]["verified"] is True


def test_verify_without_certificate_decomposes():
    rep = run_command(parse_form_spec("field F2((t)); form norm(1); cmd verify"))
    assert rep.verified


def test_tame_class_routes_agree():
    for route in ("tame-residue", "springer-t"):
        rep = run_command(parse_form_spec(f"field Q2((t)); form scale(t, diag(1,-5)); cmd tame-class --route={route}"))
        assert rep.status == "ok", route


def test_paper_example_report():
    data = paper_example_report()
    assert len(data["generators"]) == 4 and all(g["verified"] and g["order"] == 2 for g in data["generators"])
    assert [r["order_mod_Iqt"] for r in data["relations"]] == [4, 2, 2, 2]
    assert data["structure"]["I_q/I_qt"] == [4, 2, 2, 2]


def test_exit_codes(capsys):
    assert main(["field F2((t)); form hyp(1); cmd witt-index"]) == 0
    assert main(["field Q2((t)); form diag(1,-2); cmd witt-index"]) == 2
    assert main(["field F2; form hyp(1); cmd residue"]) == 1
    assert main(["field F2((t)); form diag(1,,2); cmd residue"]) == 1
    capsys.readouterr()


def test_json_output_is_deterministic(capsys):
    args = ["--json", "field F2((t)); form sum(norm(1), scale(t, hyp(1))); cmd residue"]
    main(args)
    first = capsys.readouterr().out
    main(args)
    assert capsys.readouterr().out == first
    assert json.loads(first)["status"] == "ok"


def test_job_file_and_precision(tmp_path, capsys):
    path = tmp_path / "job.txt"
    path.write_text("field F2((t))\n; form [[t,1],[0,t]]; cmd decompose")
    assert main(["-f", str(path), "--precision=8"]) == 0
    assert "1 blocks" in capsys.readouterr().out


def test_environment_budgets(monkeypatch, capsys):
    monkeypatch.setenv("TAMEWITT_BUDGET_DEGREE", "3")
    main(["--json", "field F2((t)); form hyp(1); cmd witt-index"])
    data = json.loads(capsys.readouterr().out)
    assert data["budgets"]["degree"] == 3
    main(["--json", "--budget-degree=5", "field F2((t)); form hyp(1); cmd witt-index"])
    assert json.loads(capsys.readouterr().out)["budgets"]["degree"] == 5


def test_jobspec_defaults():
    assert JobSpec("paper-example").to_text() == "cmd paper-example"
