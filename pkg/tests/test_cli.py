import json

from rinehart.cli import main


def test_filt_deg(capsys):
    assert main(["filt-deg", "--expr", "t0*t1-1-t0-t1+2", "--m", "1", "--n", "1"]) == 0
    assert capsys.readouterr().out.strip() == "2"


def test_project_gl(capsys):
    assert main(["project-gl", "--expr", "(t1-1)*D0"]) == 0
    assert capsys.readouterr().out.strip() == "E_1_0"


def test_eval_act(capsys):
    assert main(["eval", "act", "--expr", "t1*D1", "--on", "t1^2"]) == 0
    assert capsys.readouterr().out.strip() == "2*t1^3"


def test_bracket(capsys):
    assert main(["bracket", "--lhs", "t1*D1", "--rhs", "t1^-1*D1"]) == 0
    assert capsys.readouterr().out.strip() == "-2*D1"


def test_bracket_qp(capsys):
    assert main(["bracket", "--dotted", "--lhs", "D1", "--rhs", "t1"]) == 0
    assert capsys.readouterr().out.strip() == "1*t1"


def test_x_element(capsys):
    assert main(["x-element", "--r", "1,0", "--J", "", "--tag", "Q1"]) == 0
    out = capsys.readouterr().out
    assert "#" in out and "Q1" in out


def test_weights(capsys):
    assert main(["weights", "--expr", "z1*Q1"]) == 0
    assert capsys.readouterr().out.strip() == "hprime=0,0 h=0"


def test_check_suite_passes(capsys):
    assert main(["check", "koszul", "--samples", "10", "--seed", "3"]) == 0
    out = capsys.readouterr().out
    assert "PASS koszul.supercommutativity" in out


def test_check_json_deterministic(capsys):
    args = ["check", "filtration", "--samples", "8", "--seed", "5", "--json"]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    second = capsys.readouterr().out
    assert first == second
    json.loads(first)


def test_parse_error_exit_code(capsys):
    assert main(["filt-deg", "--expr", "t0^"]) == 2
    err = capsys.readouterr().err
    assert "position" in err


def test_config_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["check", "qp", "--module", str(bad)]) == 2


def test_rep_check_failure_exit_code(tmp_path, capsys):
    from rinehart.config import natural_config_dict

    doc = natural_config_dict(1, 1)
    doc["action"]["E_0_1"][0][1] = "2"
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(doc))
    assert main(["check", "koszul", "--module", str(path), "--samples", "2"]) == 1


def test_check_with_module_and_mu(tmp_path, capsys):
    from rinehart.config import write_natural_config

    path = tmp_path / "nat.json"
    write_natural_config(path, 1, 1)
    code = main(
        ["check", "equalities", "--module", str(path), "--mu", "1/2,1/3+1i,0",
         "--samples", "5"]
    )
    assert code == 0
