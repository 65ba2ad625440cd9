import json

import pytest

from taylorlab.cli import main

YSRC = "let rec F = f F in \\f. F"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse(capsys):
    code, out, _ = run(capsys, "parse", "\\x. x")
    assert code == 0 and out.strip() == "term: \\x. x"
    code, out, _ = run(capsys, "parse", YSRC, "--json")
    payload = json.loads(out)
    assert code == 0 and payload["kind"] == "system"
    code, out, _ = run(capsys, "parse", "(\\y. y) *")
    assert code == 0 and out.startswith("context:")


def test_parse_error_exit_3(capsys):
    code, _, err = run(capsys, "parse", "\\x. (x")
    assert code == 3 and "parse error" in err


def test_usage_error_exit_3(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bogus-command"])
    assert exc.value.code == 3


def test_bohm_spec_example(capsys):
    code, out, _ = run(capsys, "bohm", YSRC, "--depth", "3")
    assert code == 0 and out.strip() == "\\f. f (f (f ◻))"


def test_bohm_dot(capsys):
    code, out, _ = run(capsys, "bohm", "\\x. x y", "--dot")
    assert code == 0 and out.startswith("digraph bohm {") and "@" in out


def test_taylor_listing(capsys):
    code, out, _ = run(capsys, "taylor", "(\\x.x) (\\x.x)", "--size", "6")
    assert code == 0
    assert out.splitlines() == ["<\\a. a>1", "<\\a. a>[\\a. a]"]


def test_taylor_context(capsys):
    code, out, _ = run(capsys, "taylor", "(\\y. y) *", "--size", "5", "--json")
    payload = json.loads(out)
    assert code == 0
    assert payload["approximants"] == ["<\\a. a>1", "<\\a. a>[*]", "<\\a. a>[*, *]"]


def test_nf_taylor(capsys):
    code, out, _ = run(capsys, "nf-taylor", "(\\x.x) (\\x.x)", "--size", "6")
    assert code == 0 and out.strip() == "\\a. a"


def test_reduce(capsys):
    code, out, _ = run(capsys, "reduce", "(\\x. \\y. x) a b", "--json")
    payload = json.loads(out)
    assert code == 0 and payload["result"] == "a" and payload["normal"] is True
    assert len(payload["trace"]) == 2


def test_reduce_at(capsys):
    code, out, _ = run(capsys, "reduce", "\\z. (\\x. x) z", "--at", "body", "--json")
    payload = json.loads(out)
    assert code == 0 and payload["result"] == "\\z. z"


def test_head(capsys):
    code, out, _ = run(capsys, "head", "(\\x. x x) (\\x. x x)", "--fuel", "50")
    assert code == 0 and "unknown(loop" in out


def test_rsubst(capsys):
    code, out, _ = run(capsys, "rsubst", "<x>[x]", "x", "[\\y. y, z]")
    assert code == 0
    assert out.strip() == "<z>[\\a. a] + <\\a. a>[z]"


def test_rnf(capsys):
    code, out, _ = run(capsys, "rnf", "<\\a. a>[<\\b. b>[z]]", "--json")
    payload = json.loads(out)
    assert code == 0 and payload["normal_form"] == "z"
    assert len(payload["trace"]) == 2


def test_stratify(capsys):
    code, out, _ = run(
        capsys, "stratify", "\\f. (\\x. f (x x)) (\\x. f (x x))", "--depth", "2", "--json"
    )
    payload = json.loads(out)
    assert code == 0
    assert len(payload["levels"]) == 3 and payload["diagnostic"] is None


def test_check_exit_codes(capsys):
    code, out, _ = run(capsys, "check", "commutation", "(\\x.x) (\\x.x)", "--size", "6")
    assert code == 0 and "pass" in out
    # theorem hypothesis unmet: inconclusive, exit 2
    code, out, _ = run(
        capsys, "check", "genericity", "*", "(\\x. x x) (\\x. x x)", "\\x. x"
    )
    assert code == 2 and "inconclusive" in out
    # refutable equality: exit 1
    code, out, _ = run(capsys, "check", "equal", "\\x. x", "\\x. \\y. y", "--size", "6")
    assert code == 1 and "fail" in out


def test_check_simulation_cli(capsys):
    code, out, _ = run(
        capsys, "check", "simulation", "(\\x.x) (\\x.x)", "--steps", "root", "--size", "6", "--json"
    )
    payload = json.loads(out)
    assert code == 0 and payload["verdict"] == "pass"


def test_stdin_input(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO("\\x. x"))
    code, out, _ = run(capsys, "parse", "-")
    assert code == 0 and "\\x. x" in out


def test_selftest_quick_deterministic(capsys):
    code1, out1, _ = run(capsys, "selftest", "--seed", "7", "--json")
    code2, out2, _ = run(capsys, "selftest", "--seed", "7", "--json")
    assert code1 == code2 == 0
    assert out1 == out2
    payload = json.loads(out1)
    assert payload["verdict"] == "pass"
