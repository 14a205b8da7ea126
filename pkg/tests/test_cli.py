import json
import subprocess
import sys

import pytest

from boolang import cli, core, tm


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run_cli(capsys, *argv, "--format", "json")
    return code, json.loads(out)


class TestConvert:
    @pytest.mark.parametrize("arg, expect", [
        ("2:9", {"rule": "2:9", "bits": "1001", "tokens": "12"}),
        ("0011", {"rule": "2:12", "bits": "0011", "tokens": "03"}),
        ("0", {"rule": "1:0", "bits": "00", "tokens": "0"}),
    ])
    def test_examples(self, capsys, arg, expect):
        assert run_json(capsys, "convert", arg) == (0, expect)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_involutive(self, capsys, n):
        for f in core.enumerate_functions(n):
            _, first = run_json(capsys, "convert", str(core.rule_number(f)))
            for kind in ("rule", "bits", "tokens"):
                _, again = run_json(capsys, "convert", first[kind], "--as", kind)
                assert again == first

    def test_text(self, capsys):
        code, out, _ = run_cli(capsys, "convert", "2:9")
        assert code == 0
        assert out.split() == ["rule", "2:9", "bits", "1001", "tokens", "12"]

    @pytest.mark.parametrize("arg", ["100", "2:16", "0123x"])
    def test_errors(self, capsys, arg):
        code, _, err = run_cli(capsys, "convert", arg)
        assert code == cli.EXIT_USAGE and "error" in err


class TestCompose:
    @pytest.mark.parametrize("top, bottom, rule", [
        ("1:1", "1:2", "2:9"), ("1:0", "1:3", "2:12"), ("2:0", "2:0", "3:0"),
    ])
    def test_examples(self, capsys, top, bottom, rule):
        code, data = run_json(capsys, "compose", top, bottom)
        assert code == 0
        assert data["rule"] == rule and data["agree"]
        assert data["formula"] == int(rule.split(":")[1])

    def test_arity_mismatch(self, capsys):
        assert run_cli(capsys, "compose", "1:0", "2:0")[0] == cli.EXIT_USAGE

    def test_decompose(self, capsys):
        assert run_json(capsys, "decompose", "2:9") == (0, {"top": "1:1", "bottom": "1:2"})
        assert run_cli(capsys, "decompose", "1:3")[0] == cli.EXIT_USAGE


class TestMember:
    @pytest.mark.parametrize("w, member", [("012", False), ("01", True), ("0123", True)])
    def test_examples(self, capsys, w, member):
        code, data = run_json(capsys, "member", w)
        assert code == 0
        assert data["by_length"] is member
        assert data["by_tm"] == ("Accepted" if member else "Rejected")
        assert data["by_grammar"] is member
        assert data["agree"]

    def test_grammar_skipped_above_cap(self, capsys):
        code, data = run_json(capsys, "member", "01230")
        assert code == 0 and data["by_grammar"] is None and data["agree"]

    def test_force_grammar(self, capsys):
        code, out, err = run_cli(capsys, "member", "01230", "--force-grammar")
        assert code == 0 and "warning" in err and "not member" in out

    def test_disagreement_exit(self, capsys, monkeypatch):
        broken = tm.parse_machine("%input f_0 f_1 f_2 f_3\n"
                                  + "".join(f"q_1 f_{i} -> q_accept B R\n" for i in range(4)))
        monkeypatch.setattr(tm, "boolean_tm", lambda: broken)
        code, data = run_json(capsys, "member", "012")
        assert code == cli.EXIT_DISAGREE and not data["agree"]

    def test_out_of_fuel(self, capsys):
        code, data = run_json(capsys, "member", "0123", "--fuel", "2")
        assert code == cli.EXIT_LIMIT
        assert data["by_tm"] == "OutOfFuel"

    def test_bad_token(self, capsys):
        assert run_cli(capsys, "member", "01a")[0] == cli.EXIT_USAGE


class TestCrosscheck:
    @pytest.mark.parametrize("n, words, members", [(1, 4, 4), (3, 84, 20), (4, 340, 276)])
    def test_counts(self, capsys, n, words, members):
        code, data = run_json(capsys, "crosscheck", str(n))
        assert code == 0
        assert (data["words"], data["members"], data["disagreements"]) == (words, members, 0)
        assert data["pass"]

    def test_cap(self, capsys):
        assert run_cli(capsys, "crosscheck", "--max-len", "7")[0] == cli.EXIT_USAGE

    def test_text(self, capsys):
        code, out, _ = run_cli(capsys, "crosscheck", "2")
        assert code == 0 and out.rstrip().endswith("PASS")


class TestWrappers:
    def test_derive_paper(self, capsys):
        code, out, _ = run_cli(capsys, "derive", "--paper")
        assert code == 0
        assert out.strip() == ("S => [ R 0 ] => [ 0 3 R ] => [ 0 3 L_h ] => [ 0 L_h 3 ] "
                               "=> [ L_h 0 3 ] => 0 3 ] => 0 3")

    def test_derive_search(self, capsys):
        code, data = run_json(capsys, "derive", "03")
        assert code == 0
        assert len(data["steps"]) == 7
        assert data["steps"][-1]["form"] == ["0", "3"]
        assert data["steps"][-1]["paper"] is False

    def test_derive_non_member(self, capsys):
        code, data = run_json(capsys, "derive", "012")
        assert code == 0 and data == {"word": "012", "derivable": False}

    def test_tm_run(self, capsys):
        code, out, _ = run_cli(capsys, "tm-run", "01", "--trace")
        assert code == 0
        trace, verdict = out.strip().splitlines()
        assert trace.endswith("B x B q_accept")
        assert verdict == "Accepted after 7 steps"

    def test_tm_run_json(self, capsys):
        code, data = run_json(capsys, "tm-run", "012")
        assert code == 0 and data["verdict"] == "Rejected"

    def test_tm_run_fuel(self, capsys):
        assert run_cli(capsys, "tm-run", "0123", "--fuel", "1")[0] == cli.EXIT_LIMIT

    def test_generate(self, capsys):
        code, data = run_json(capsys, "generate", "2")
        assert code == 0 and data["count"] == 20 == len(data["words"])
        code, out, _ = run_cli(capsys, "generate", "--max-len", "1")
        assert out.split() == ["0", "1", "2", "3"]

    def test_enumerate(self, capsys):
        code, data = run_json(capsys, "enumerate", "2")
        assert code == 0 and len(data) == 16
        assert data[9] == {"rule": "2:9", "bits": "1001", "tokens": "12"}
        assert run_cli(capsys, "enumerate", "5")[0] == cli.EXIT_USAGE

    def test_usage_error_exit(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["nope"])
        assert exc.value.code == cli.EXIT_USAGE


@pytest.mark.parametrize("argv", [
    ["convert", "2:9"], ["compose", "1:1", "1:2"], ["member", "0123"],
    ["crosscheck", "2"], ["derive", "--paper"], ["generate", "2"],
    ["tm-run", "01"], ["enumerate", "1"], ["decompose", "3:200"],
])
def test_json_reemits_identically(capsys, argv):
    cli.main(argv + ["--format", "json"])
    out = capsys.readouterr().out
    assert json.dumps(json.loads(out)) == out.strip()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "boolang", "compose", "1:0", "1:3"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.startswith("2:12")
