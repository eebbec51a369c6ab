import pytest

from pyselfdual.cli import (
    EXIT_EMPTY,
    EXIT_OK,
    EXIT_RUNTIME,
    EXIT_USAGE,
    SAVE_DIR_VARIABLE,
    check_code,
    main,
    parse_flags,
    search_config,
)
from pyselfdual.codemodel import CodeType
from pyselfdual.iopersist import format_code, load_codes
from pyselfdual.searchengine import default_conditions

from conftest import examples_path, hamming8, d12


def run_command(*argv):
    return main(parse_flags(["pyselfdual"] + [str(arg) for arg in argv]))


def test_mutable(capsys):
    assert run_command("mutable", "--n", 12, "--k", 6, "--d", 4) == EXIT_OK
    out = capsys.readouterr().out
    assert out.splitlines()[0].startswith("w(r1)\\w(r2) | 5")
    assert "{0,2}" in out

    assert run_command("mutable", "--n", 13, "--k", 6, "--d", 4) == EXIT_USAGE


def test_search(capsys):
    assert run_command("search", "--n", 12, "--k", 6, "--d", 4, "--dedupe", "--silent") == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("1 n=12 k=6 d=4 type=I ")
    assert "classes=1\n" in out
    assert "report: nodes_expanded=" in out

    assert run_command("search", "--n", 10, "--k", 5, "--d", 4, "--silent") == EXIT_EMPTY
    assert "report:" in capsys.readouterr().out

    assert run_command("search", "--n", 12, "--k", 5, "--d", 4) == EXIT_USAGE
    assert run_command("search", "--n", 12, "--k", 6) == EXIT_USAGE


def test_search_with_config(capsys):
    path = examples_path("configs", "hamming_8_4_4_type2.json")
    assert run_command("search", "--config", path, "--silent") == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("1 n=8 k=4 d=4 type=II ")
    assert lines[1].startswith("report:")


def test_search_config_overrides():
    path = examples_path("configs", "selfdual_12_6_4.json")
    config = search_config(parse_flags(["pyselfdual", "search", "--config", path, "--d", "2", "--limit", "1"]))
    assert (config.n, config.k, config.d) == (12, 6, 2)
    assert config.max_solutions == 1
    assert config.time_budget == 60

    path = examples_path("configs", "selfdual_56_28_12.json")
    config = search_config(parse_flags(["pyselfdual", "search", "--config", path, "--type", "linear"]))
    assert config.code_type is CodeType.NOT_SELF_DUAL
    assert config.conditions == default_conditions("linear")


def test_search_save_dir(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv(SAVE_DIR_VARIABLE, str(tmp_path))
    assert run_command("search", "--n", 8, "--k", 4, "--d", 4, "--type", "II", "--silent") == EXIT_OK
    saved = load_codes(str(tmp_path / "selfdual_n8_k4_d4_II.txt"))
    assert saved

    other = tmp_path / "flag"
    run_command("search", "--n", 8, "--k", 4, "--d", 4, "--type", "II", "--save", other, "--silent")
    assert load_codes(str(other / "selfdual_n8_k4_d4_II.txt")) == saved


def test_check(capsys, tmp_path, hamming8):
    assert run_command("check", "--code", examples_path("codes", "d12_12_6_4.txt")) == EXIT_OK
    assert capsys.readouterr().out == "self-dual, Type I, d=4: OK\n"

    path = tmp_path / "wrong.txt"
    path.write_text(format_code(hamming8).replace("d=4", "d=2"))
    assert run_command("check", "--code", path) == EXIT_EMPTY
    assert "FAIL (minimum distance is 4)" in capsys.readouterr().out


def test_check_code(hamming8, d12):
    assert check_code(hamming8, (8, 4, 4, CodeType.TYPE_II)) == (True, "self-dual, Type II, d=4: OK")
    ok, line = check_code(d12, (12, 6, 4, CodeType.TYPE_II))
    assert not ok and "type is I" in line
    assert check_code(d12, (12, 6, 4, CodeType.NOT_SELF_DUAL)) == (True, "linear, d=4: OK")


def test_neighbors(capsys, tmp_path):
    code = examples_path("codes", "d12_12_6_4.txt")
    assert run_command("neighbors", "--code", code) == EXIT_OK
    out = capsys.readouterr().out
    assert "# neighbor 1\nn=12 k=6" in out
    assert out.splitlines()[-1].endswith("parity=singly-even")

    assert run_command("neighbors", "--code", code, "--out-dir", tmp_path) == EXIT_OK
    assert len(load_codes(str(tmp_path / "neighbor1.txt"))) == 1
    assert len(load_codes(str(tmp_path / "neighbor2.txt"))) == 1

    assert run_command("neighbors", "--code", code, "--all") == EXIT_OK
    assert capsys.readouterr().out.splitlines()[-1] == "neighbors=62"

    # neighbors through the kernel need a type I code
    hamming = examples_path("codes", "hamming_8_4_4.txt")
    assert run_command("neighbors", "--code", hamming) == EXIT_USAGE


def test_tree(capsys):
    assert run_command("tree", "--matrix", examples_path("matrices", "gamma_example.txt")) == EXIT_OK
    out = capsys.readouterr().out
    assert out.splitlines()[-1] == "leaves: {1} {2,3} {4} {5} {6}"


def test_dedupe(capsys, tmp_path, hamming8):
    (tmp_path / "a.txt").write_text(format_code(hamming8))
    (tmp_path / "b.txt").write_text(format_code(hamming8.permute_columns([7, 6, 5, 4, 3, 2, 1, 0])))
    out_file = tmp_path / "classes.out"
    assert run_command("dedupe", "--dir", tmp_path, "--out", out_file) == EXIT_OK
    assert capsys.readouterr().out == "files=2 classes=1\n"
    assert load_codes(str(out_file)) == [hamming8]

    assert run_command("dedupe", "--dir", tmp_path / "missing") == EXIT_RUNTIME


def test_oracle(capsys):
    assert run_command("oracle", "--n", 8) == EXIT_OK
    assert capsys.readouterr().out.splitlines()[-1] == "classes=2 total=135"

    assert run_command("oracle", "--n", 10, "--d", 4) == EXIT_EMPTY
    assert run_command("oracle", "--n", 7) == EXIT_USAGE


def test_malformed_file(capsys, tmp_path):
    path = tmp_path / "broken.txt"
    path.write_text("n=4 k=2 d=2 type=I\n1100\n00x1\n")
    assert run_command("check", "--code", path) == EXIT_RUNTIME
    assert run_command("check", "--code", tmp_path / "missing.txt") == EXIT_RUNTIME


def test_usage_errors():
    with pytest.raises(SystemExit):
        parse_flags(["pyselfdual"])
    with pytest.raises(SystemExit):
        parse_flags(["pyselfdual", "search", "--order", "sideways"])
