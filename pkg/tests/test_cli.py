import csv
import io
import json

import pytest

from gpgraph import cli
from gpgraph.errors import InternalTheoremViolation


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_verdict_line(capsys):
    code, out, _ = run(capsys, "analyze", "-p", "3", "-m", "4", "-k", "20")
    assert code == 0
    assert out.strip() == (
        "Γ(20,81): undirected, 9 components ≅ Γ(2,9)=P_9, non-bipartite, not srg(whole), inner srg(9,4,1,2)"
    )


def test_analyze_json_report(capsys):
    code, out, _ = run(capsys, "analyze", "-p", "2", "-m", "4", "-k", "3", "--json")
    assert code == 0
    doc = json.loads(out.splitlines()[1])
    assert doc["components"] == 1 and doc["waring"] == 2
    assert doc["classification"]["named_form"] == "Clebsch"
    assert doc["classification"]["srg"] == [16, 5, 0, 2]
    assert doc["oracle"] == ["components", "2-coloring", "spectrum"]
    assert sum(e["mult"] for e in doc["spectrum"]["entries"]) == 16


def test_analyze_oracle_off(capsys):
    code, out, _ = run(capsys, "analyze", "-p", "7", "-m", "1", "-k", "2,3", "--oracle", "off", "--json")
    assert code == 0
    docs = [json.loads(line) for line in out.splitlines() if line.startswith("{")]
    assert [d["oracle"] for d in docs] == [[], []]


def test_decompose_lists_cosets(capsys):
    code, out, _ = run(capsys, "decompose", "-p", "2", "-m", "3", "-k", "7", "--modulus", "x^3+x+1")
    assert code == 0
    assert "coset a^2+a: a^2+a a^2+a+1" in out
    assert "Z_2 ≀ S_4" in out
    assert "does not exist" in out


def test_decompose_json_all_divisors(capsys):
    code, out, _ = run(capsys, "decompose", "-p", "3", "-m", "2", "--json")
    docs = [json.loads(line) for line in out.splitlines()]
    assert [d["k"] for d in docs] == [1, 2, 4, 8]
    assert [d["components"] for d in docs] == [1, 1, 3, 3]


def test_spectrum_formats(capsys):
    code, out, _ = run(capsys, "spectrum", "-p", "2", "-m", "4", "-k", "3")
    assert out.strip() == "Spec(Γ(3,16)) = {[5]^1, [1]^10, [-3]^5}"
    code, out, _ = run(capsys, "spectrum", "-p", "3", "-m", "2", "-k", "8", "--json")
    doc = json.loads(out)
    assert doc["graph"] == {"q": 9, "k": 8} and len(doc["entries"]) == 3
    code, out, _ = run(capsys, "spectrum", "-p", "5", "-m", "1", "-k", "1", "--csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["re", "im", "mult"] and len(rows) == 3


def test_classify_json(capsys):
    code, out, _ = run(capsys, "classify", "-p", "7", "-m", "2", "-k", "8", "--json")
    doc = json.loads(out)
    assert doc["graph"] == "Γ(8,49)" and doc["named_form"] == "7K_7"


def test_export_to_file(tmp_path, capsys):
    target = tmp_path / "g.dot"
    code, _, _ = run(capsys, "export", "-p", "3", "-m", "1", "-k", "1", "-o", str(target))
    assert code == 0
    text = target.read_text()
    assert text.startswith("graph") and text.count("--") == 3
    code, out, _ = run(capsys, "export", "-p", "3", "-m", "1", "-k", "1", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["vertices"] == ["0", "1", "2"] and len(doc["arcs"]) == 6
    _, out, _ = run(capsys, "export", "-p", "3", "-m", "1", "-k", "1", "--csv")
    assert out.splitlines() == ["u,v", "0,1", "0,2", "1,2"]


def test_export_needs_single_k(capsys):
    code, _, err = run(capsys, "export", "-p", "3", "-m", "2", "-k", "2,4")
    assert code == 64 and "exactly one" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["analyze", "-p", "4", "-m", "1", "-k", "1"],
        ["analyze", "-p", "3", "-m", "2", "-k", "0"],
        ["analyze", "-p", "3", "-m", "0", "-k", "1"],
        ["analyze", "-p", "3", "-m", "2", "-k", "1", "--modulus", "x^2+2x+1"],
        ["analyze", "-p", "3", "-m", "2", "-k", "1", "--modulus", "x^3+x+1"],
    ],
)
def test_bad_input_exit_64(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 64
    assert err.startswith("error:")


def test_argparse_errors_exit_64(capsys):
    for argv in (["frobnicate"], ["analyze", "-p", "3"], ["sweep", "-p", "x", "--m-max", "1"]):
        with pytest.raises(SystemExit) as exc:
            cli.main(argv)
        assert exc.value.code == 64
    capsys.readouterr()


def test_internal_violation_exit_2(capsys, monkeypatch):
    def boom(g, d=None, **kw):
        raise InternalTheoremViolation("forced", "for the exit-code test")

    monkeypatch.setattr(cli, "classify", boom)
    code, _, err = run(capsys, "classify", "-p", "3", "-m", "1", "-k", "1")
    assert code == 2 and "forced" in err


def test_sweep_row_counts(capsys):
    code, out, _ = run(capsys, "sweep", "-p", "7", "--m-max", "2", "--csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 14
    assert sum(r["q"] == "49" for r in rows) == 10
    code, out, _ = run(capsys, "sweep", "-p", "2", "--m-max", "1", "--json")
    assert len(json.loads(out)) == 1
    code, out, _ = run(capsys, "sweep", "-p", "5", "--m-max", "2", "--json")
    assert sum(r["q"] == 25 for r in json.loads(out)) == 8


def test_sweep_markdown_and_order(capsys):
    code, out, _ = run(capsys, "sweep", "-p", "3,2", "--m-max", "2")
    lines = out.splitlines()
    assert lines[0].startswith("| graph |")
    graphs = [line.split("|")[1].strip() for line in lines[2:]]
    assert graphs[:3] == ["Γ(1,2)", "Γ(1,3)", "Γ(2,3)"]
    assert "| Γ(8,9) | yes | 3 components | 3 × Γ(2,3) | 3→C_3 |" in out


def test_sweep_is_deterministic(capsys):
    _, first, _ = run(capsys, "sweep", "-p", "2,3", "--m-max", "3", "--csv", "--checks", "decompose,srg,spectrum")
    _, second, _ = run(capsys, "sweep", "-p", "2,3", "--m-max", "3", "--csv", "--checks", "decompose,srg,spectrum",
                       "--workers", "4")
    assert first == second


def test_sweep_oracle_column(capsys):
    _, out, _ = run(capsys, "sweep", "-p", "3", "--m-max", "2", "--json", "--oracle", "on")
    assert {r["oracle"] for r in json.loads(out)} == {"components,2-coloring,spectrum"}


def test_sweep_budget(capsys, monkeypatch):
    code, _, err = run(capsys, "sweep", "-p", "2", "--m-max", "4", "--budget", "10")
    assert code == 64 and "budget" in err
    monkeypatch.setenv("GPGRAPH_BUDGET", "10")
    code, _, _ = run(capsys, "sweep", "-p", "2", "--m-max", "4")
    assert code == 64
    code, _, _ = run(capsys, "sweep", "-p", "2", "--m-max", "2")
    assert code == 0


def test_sweep_rejects_bad_checks_and_primes(capsys):
    assert run(capsys, "sweep", "-p", "4", "--m-max", "1")[0] == 64
    assert run(capsys, "sweep", "-p", "3", "--m-max", "1", "--checks", "nope")[0] == 64


def test_config_file_pins_modulus(tmp_path, capsys):
    cfg = tmp_path / "moduli.toml"
    cfg.write_text("# pinned moduli\n[moduli]\n2,3 = \"x^3+x^2+1\"\n")
    _, out, _ = run(capsys, "decompose", "-p", "2", "-m", "3", "-k", "7", "--config", str(cfg))
    assert "coset a: a a+1" in out
    _, pinned, _ = run(capsys, "decompose", "-p", "2", "-m", "3", "-k", "7", "--modulus", "x^3+x^2+1")
    assert out == pinned
    bad = tmp_path / "bad.toml"
    bad.write_text("nonsense\n")
    assert run(capsys, "decompose", "-p", "2", "-m", "3", "--config", str(bad))[0] == 64


def test_k_is_normalized(capsys):
    _, out, _ = run(capsys, "classify", "-p", "3", "-m", "2", "-k", "3")
    assert out.startswith("Γ(1,9): undirected, connected, K_9")


def test_labels_option(capsys):
    _, out, _ = run(capsys, "decompose", "-p", "2", "-m", "2", "-k", "3", "--labels", "index")
    assert "coset 0: 0 1" in out


def test_verify_command_quick(capsys):
    code, out, _ = run(capsys, "verify-paper", "--quick")
    assert code == 0
    lines = out.strip().splitlines()
    assert all(line.startswith("PASS") for line in lines[:-1])
    assert lines[-1].endswith("claims verified")


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "gpgraph", "analyze", "-p", "5", "-m", "1", "-k", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("Γ(2,5): undirected, connected, P_5")
