"""Command line interface: arguments, reports, and exit codes."""

import json
import subprocess
import sys

from conftest import (BLACK_MONDAY_TREE, CLICK_GOLD_TREE, CLICK_SYS_TREES,
                      HEBREW_GOLD, HEBREW_GOLD_TREE, HEBREW_SYS,
                      HEBREW_SYS_TREE, KATE_GOLD_M2, KATE_SYS_M2)
from jpeval import __version__
from jpeval.cli import EXCEPTIONS_ENV_VAR, run

CONLLU_GOLD = """# sent_id = 1
1\tKate\t_\t_\t_\t_\t_\t_\t_\t_
2\tAshby\t_\t_\t_\t_\t_\t_\t_\t_

1\thi\t_\t_\t_\t_\t_\t_\t_\t_
"""

CONLLU_SYS = """1\tKate\t_\t_\t_\t_\t_\t_\t_\t_

1\tAshby\t_\t_\t_\t_\t_\t_\t_\t_
2\thi\t_\t_\t_\t_\t_\t_\t_\t_
"""


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def _hebrew_args(tmp_path, *extra):
    gold = _write(tmp_path, "gold.txt", HEBREW_GOLD + "\n")
    sysf = _write(tmp_path, "sys.txt", HEBREW_SYS + "\n")
    return ["preprocess", "--gold", gold, "--sys", sysf, *extra]


def test_usage_errors_exit_2(capsys):
    assert run([]) == 2
    assert run(["bogus-subcommand"]) == 2
    assert run(["preprocess", "--gold", "x"]) == 2  # --sys missing
    capsys.readouterr()


def test_version_exits_0(capsys):
    assert run(["--version"]) == 0
    assert f"jpeval {__version__}" in capsys.readouterr().out


def test_missing_input_file_exits_2(tmp_path, capsys):
    gold = _write(tmp_path, "gold.txt", "a b\n")
    assert run(["preprocess", "--gold", gold, "--sys", str(tmp_path / "nope")]) == 2
    assert "cannot read" in capsys.readouterr().err


def test_preprocess_text_report(tmp_path, capsys):
    assert run(_hebrew_args(tmp_path)) == 0
    out = capsys.readouterr().out
    assert out.startswith(f"jpeval {__version__} preprocess\n")
    assert "  alpha = 0.9" in out
    token_row = next(line for line in out.splitlines() if line.startswith("tokens"))
    assert "0.8000" in token_row and "0.5714" in token_row


def test_preprocess_json_counts(tmp_path, capsys):
    assert run(_hebrew_args(tmp_path, "--output", "json")) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["tool"] == "jpeval"
    assert report["subcommand"] == "preprocess"
    assert report["counts"] == {
        "c_sb_gold": 1, "c_sb_sys": 1, "c_tk_gold": 7, "c_tk_sys": 5,
        "tp_sb": 0, "tp_tk": 4, "fp_sb": 1, "fn_sb": 1, "fp_tk": 1, "fn_tk": 3,
    }
    assert report["metrics"]["tokens"] == {
        "precision": 0.8, "recall": 0.5714, "f1": 0.6667}


def test_json_output_is_deterministic(tmp_path, capsys):
    assert run(_hebrew_args(tmp_path, "--output", "json")) == 0
    first = capsys.readouterr().out
    assert run(_hebrew_args(tmp_path, "--output", "json")) == 0
    assert capsys.readouterr().out == first


def test_out_flag_writes_file(tmp_path, capsys):
    assert run(_hebrew_args(tmp_path, "--output", "json")) == 0
    expected = capsys.readouterr().out
    target = tmp_path / "report.json"
    assert run(_hebrew_args(tmp_path, "--output", "json", "--out", str(target))) == 0
    assert capsys.readouterr().out == ""
    assert target.read_text(encoding="utf-8") == expected


def test_unalignable_inputs_exit_3(tmp_path, capsys):
    gold = _write(tmp_path, "gold.txt", "abc\n")
    sysf = _write(tmp_path, "sys.txt", "xyz\n")
    assert run(["preprocess", "--gold", gold, "--sys", sysf]) == 3
    assert "alignment impossible" in capsys.readouterr().err


def test_invalid_alpha_exits_4(tmp_path, capsys):
    assert run(_hebrew_args(tmp_path, "--alpha", "1.5")) == 4
    capsys.readouterr()


def test_bad_lexicon_file_exits_4(tmp_path, capsys):
    bad = _write(tmp_path, "lex.tsv", "no tab separator here\n")
    assert run(_hebrew_args(tmp_path, "--exceptions", bad)) == 4
    capsys.readouterr()


# The exception lexicon rewrites the character stream used for alignment;
# token credit still compares the raw surfaces.  The crisp observable is
# therefore alignability at --alpha 1.0 plus the boundary credit.
def _contraction_args(tmp_path, *extra):
    gold = _write(tmp_path, "g.txt", "This ca n't be\n")
    sysf = _write(tmp_path, "s.txt", "This can not be\n")
    return ["preprocess", "--gold", gold, "--sys", sysf, "--lowercase",
            "--alpha", "1.0", *extra]


def _counts(capsys):
    return json.loads(capsys.readouterr().out)["counts"]


def test_env_var_enables_lexicon(tmp_path, capsys, monkeypatch):
    monkeypatch.delenv(EXCEPTIONS_ENV_VAR, raising=False)
    assert run(_contraction_args(tmp_path)) == 3  # ca n't != can not verbatim
    capsys.readouterr()
    monkeypatch.setenv(EXCEPTIONS_ENV_VAR, "builtin")
    assert run(_contraction_args(tmp_path, "--output", "json")) == 0
    counts = _counts(capsys)
    assert counts["tp_sb"] == 1
    assert counts["tp_tk"] == 2  # This/be; the rewritten tokens differ


def test_exceptions_flag_overrides_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv(EXCEPTIONS_ENV_VAR, str(tmp_path / "missing.tsv"))
    assert run(_contraction_args(tmp_path, "--output", "json",
                                 "--exceptions", "builtin")) == 0
    assert _counts(capsys)["tp_sb"] == 1


def test_missing_lexicon_file_exits_2(tmp_path, capsys, monkeypatch):
    monkeypatch.delenv(EXCEPTIONS_ENV_VAR, raising=False)
    assert run(_contraction_args(tmp_path, "--exceptions",
                                 str(tmp_path / "missing.tsv"))) == 2
    assert "cannot read" in capsys.readouterr().err


def test_exceptions_file(tmp_path, capsys, monkeypatch):
    monkeypatch.delenv(EXCEPTIONS_ENV_VAR, raising=False)
    lex = _write(tmp_path, "lex.tsv", "# contractions\nca n't\tcan not\n")
    assert run(_contraction_args(tmp_path, "--output", "json",
                                 "--exceptions", lex)) == 0
    assert _counts(capsys)["tp_sb"] == 1


def test_preprocess_conllu(tmp_path, capsys):
    gold = _write(tmp_path, "gold.conllu", CONLLU_GOLD)
    sysf = _write(tmp_path, "sys.conllu", CONLLU_SYS)
    assert run(["preprocess", "--gold", gold, "--sys", sysf,
                "--input-format", "conllu", "--output", "json"]) == 0
    counts = json.loads(capsys.readouterr().out)["counts"]
    assert counts["c_tk_gold"] == counts["c_tk_sys"] == counts["tp_tk"] == 3
    assert counts["c_sb_gold"] == counts["c_sb_sys"] == 2


def test_malformed_conllu_exits_4(tmp_path, capsys):
    gold = _write(tmp_path, "gold.conllu", "x\tword\t_\t_\t_\t_\t_\t_\t_\t_\n")
    sysf = _write(tmp_path, "sys.conllu", CONLLU_SYS)
    assert run(["preprocess", "--gold", gold, "--sys", sysf,
                "--input-format", "conllu"]) == 4
    capsys.readouterr()


def test_parseval_text_report(tmp_path, capsys):
    gold = _write(tmp_path, "gold.br", HEBREW_GOLD_TREE + "\n")
    sysf = _write(tmp_path, "sys.br", HEBREW_SYS_TREE + "\n")
    assert run(["parseval", "--gold", gold, "--sys", sysf]) == 0
    out = capsys.readouterr().out
    assert f"jpeval {__version__} parseval" in out
    assert "100.00" in out and "66.67" in out


def test_parseval_json_merges_split_sentences(tmp_path, capsys):
    gold = _write(tmp_path, "gold.br", CLICK_GOLD_TREE + "\n")
    sysf = _write(tmp_path, "sys.br", CLICK_SYS_TREES)
    assert run(["parseval", "--gold", gold, "--sys", sysf,
                "--output", "json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["counts"] == {"c_gold": 7, "c_sys": 8, "c_tp": 5, "sentences": 1}
    assert report["metrics"]["precision"] == 62.5
    assert report["metrics"]["recall"] == 71.43
    assert len(report["rows"]) == 1


def test_parseval_legacy_and_params(tmp_path, capsys):
    gold = _write(tmp_path, "gold.br", BLACK_MONDAY_TREE + "\n")
    assert run(["parseval", "--gold", gold, "--sys", gold, "--legacy",
                "--output", "json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["metrics"]["f1"] == 100.0
    assert report["metrics"]["complete_match"] == 100.0
    assert report["rows"][0]["words"] == 6  # punctuation removed from 8 tokens

    params = _write(tmp_path, "collins.prm", "DELETE_LABEL TOP\n")
    assert run(["parseval", "--gold", gold, "--sys", gold, "--legacy",
                "--params", params, "--output", "json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["rows"][0]["words"] == 8  # this file keeps punctuation


def test_malformed_tree_exits_4(tmp_path, capsys):
    gold = _write(tmp_path, "gold.br", "(S (NN cat)\n")
    assert run(["parseval", "--gold", gold, "--sys", gold]) == 4
    assert "jpeval:" in capsys.readouterr().err


def test_gec_json_report(tmp_path, capsys):
    gold = _write(tmp_path, "gold.m2", KATE_GOLD_M2)
    sysf = _write(tmp_path, "sys.m2", KATE_SYS_M2)
    assert run(["gec", "--gold", gold, "--sys", sysf, "--output", "json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["counts"] == {"tp": 0, "fp": 0, "fn": 1, "entries": 1}
    assert report["metrics"] == {
        "precision": 1.0, "recall": 0.0, "f_beta": 0.0, "beta": 0.5}
    assert report["per_type"] == {"R:ADV": {"tp": 0, "fp": 0, "fn": 1}}


def test_gec_text_report_labels_f_beta(tmp_path, capsys):
    gold = _write(tmp_path, "gold.m2", KATE_GOLD_M2)
    sysf = _write(tmp_path, "sys.m2", KATE_SYS_M2)
    assert run(["gec", "--gold", gold, "--sys", sysf, "--beta", "0.5"]) == 0
    assert "F0.5" in capsys.readouterr().out


def test_malformed_m2_exits_4(tmp_path, capsys):
    gold = _write(tmp_path, "gold.m2", "A 0 1|||R:X|||y|||REQUIRED|||-NONE-|||0\n")
    sysf = _write(tmp_path, "sys.m2", KATE_SYS_M2)
    assert run(["gec", "--gold", gold, "--sys", sysf]) == 4
    capsys.readouterr()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "jpeval.cli", "--version"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert f"jpeval {__version__}" in proc.stdout
