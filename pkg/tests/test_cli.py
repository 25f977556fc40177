"""Command-line behavior: exit codes, text output, JSON stability."""

import json
import os
import subprocess
import sys

import pytest

from covgraph import parse_graph
from covgraph.cli import main

CYCLE4 = "A -- B\nB -- C\nC -- D\nD -- A\n"
PATH3 = "A -- B\nB -- C\n"


@pytest.fixture
def cycle4_file(tmp_path):
    p = tmp_path / "cycle4.g"
    p.write_text(CYCLE4)
    return str(p)


@pytest.fixture
def path3_file(tmp_path):
    p = tmp_path / "path3.g"
    p.write_text(PATH3)
    return str(p)


def run_cli(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestQueryCommands:
    def test_indep_holds(self, capsys, cycle4_file):
        code, out, _ = run_cli(capsys, ["indep", "--kind", "covariance",
                                        "-g", cycle4_file, "-X", "A", "-Y", "C"])
        assert code == 0
        assert out.strip() == "INDEPENDENT"

    def test_indep_does_not_hold(self, capsys, cycle4_file):
        code, out, _ = run_cli(capsys, ["indep", "-g", cycle4_file,
                                        "-X", "A", "-Y", "C", "-Z", "B"])
        assert code == 1
        assert out.strip() == "NOT-INDEPENDENT"

    def test_dep_with_witness(self, capsys, cycle4_file):
        code, out, _ = run_cli(capsys, ["dep", "--kind", "covariance",
                                        "-g", cycle4_file,
                                        "-X", "A", "-Y", "C", "-Z", "B"])
        assert code == 0
        assert out.strip() == "DEPENDENT, witness A-B-C"

    def test_dep_not_dependent(self, capsys, cycle4_file):
        code, out, _ = run_cli(capsys, ["dep", "-g", cycle4_file,
                                        "-X", "A", "-Y", "C", "-Z", "B,D"])
        assert code == 1
        assert out.strip() == "NOT-DEPENDENT"

    def test_overlap_is_error(self, capsys, cycle4_file):
        code, _, err = run_cli(capsys, ["dep", "-g", cycle4_file,
                                        "-X", "A", "-Y", "A"])
        assert code == 2
        assert "disjoint" in err

    def test_unknown_label_is_error(self, capsys, cycle4_file):
        code, _, err = run_cli(capsys, ["indep", "-g", cycle4_file,
                                        "-X", "Q", "-Y", "C"])
        assert code == 2
        assert "unknown node label" in err

    def test_missing_file_is_error(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, ["indep", "-g", str(tmp_path / "no.g"),
                                        "-X", "A", "-Y", "B"])
        assert code == 2

    def test_parse_error_names_line(self, capsys, tmp_path):
        p = tmp_path / "bad.g"
        p.write_text("A -- B\nA -- A\n")
        code, _, err = run_cli(capsys, ["indep", "-g", str(p),
                                        "-X", "A", "-Y", "B"])
        assert code == 2
        assert "line 2" in err

    def test_json_payload(self, capsys, cycle4_file):
        code, out, _ = run_cli(capsys, ["dep", "-g", cycle4_file, "--json",
                                        "-X", "A", "-Y", "C", "-Z", "B"])
        payload = json.loads(out)
        assert payload["dependent"] is True
        assert payload["witness"] == ["A", "B", "C"]
        assert payload["z"] == ["B"]


class TestClosureCommands:
    def test_closure_lists_rule(self, capsys, path3_file):
        code, out, _ = run_cli(capsys, ["closure", "-g", path3_file])
        assert code == 0
        assert "A ; C ; B ; DEPENDENT ; weak-transitivity1" in out

    def test_closure_single_edge(self, capsys, tmp_path):
        p = tmp_path / "edge.g"
        p.write_text("A -- B\n")
        code, out, _ = run_cli(capsys, ["closure", "-g", str(p)])
        assert code == 0
        assert out.strip() == "A ; B ; - ; DEPENDENT ; base"

    def test_closure_size_guard(self, capsys, tmp_path):
        p = tmp_path / "big.g"
        p.write_text("\n".join(f"node N{i}" for i in range(7)))
        code, _, err = run_cli(capsys, ["closure", "-g", str(p)])
        assert code == 2

    def test_explain_tree(self, capsys, path3_file):
        code, out, _ = run_cli(capsys, ["explain", "-g", path3_file,
                                        "-X", "A", "-Y", "C", "-Z", "B"])
        assert code == 0
        assert "[weak-transitivity1]" in out
        assert "[base]" in out

    def test_explain_absent_triple(self, capsys, path3_file):
        code, _, err = run_cli(capsys, ["explain", "-g", path3_file,
                                        "-X", "A", "-Y", "C"])
        assert code == 2
        assert "not in the closure" in err


class TestVerifyCommands:
    def test_theorems_small(self, capsys):
        code, out, _ = run_cli(capsys, ["verify", "--scope", "theorems",
                                        "--n-max", "3"])
        assert code == 0
        assert "theorems: PASS" in out

    def test_latent_small(self, capsys):
        code, out, _ = run_cli(capsys, ["verify", "--scope", "latent",
                                        "--n-max", "3"])
        assert code == 0

    def test_forest_small(self, capsys):
        code, out, _ = run_cli(capsys, ["verify", "--scope", "forest",
                                        "--n-max", "4"])
        assert code == 0

    def test_corollaries_small(self, capsys):
        code, out, _ = run_cli(capsys, ["verify", "--scope", "corollaries",
                                        "--n-max", "3", "--trials", "5",
                                        "--seed", "7", "--json"])
        assert code == 0
        payload = json.loads(out)
        assert payload["passed"] is True
        assert payload["seed"] == 7

    def test_json_roundtrip_identity(self, capsys):
        _, out, _ = run_cli(capsys, ["verify", "--scope", "theorems",
                                     "--n-max", "3", "--json"])
        assert json.dumps(json.loads(out), indent=2, sort_keys=True) + "\n" == out


class TestGaussianCommand:
    def test_text_output(self, capsys, cycle4_file):
        code, out, _ = run_cli(capsys, ["gaussian", "-g", cycle4_file,
                                        "--seed", "3"])
        assert code == 0
        assert "nd dimension: 12" in out
        assert "positive definite: yes" in out
        assert out.splitlines()[2] == "4"

    def test_faithfulness_trials(self, capsys, cycle4_file):
        code, out, _ = run_cli(capsys, ["gaussian", "-g", cycle4_file,
                                        "--seed", "3", "--trials", "20", "--json"])
        assert code == 0
        payload = json.loads(out)
        assert payload["faithfulness"]["trials"] == 20

    def test_identical_seeds_identical_output(self, capsys, cycle4_file):
        argv = ["gaussian", "-g", cycle4_file, "--seed", "3", "--json"]
        _, out1, _ = run_cli(capsys, argv)
        _, out2, _ = run_cli(capsys, argv)
        assert out1 == out2


class TestLatentCommand:
    def test_output_parses_back(self, capsys, cycle4_file):
        code, out, _ = run_cli(capsys, ["latent", "-g", cycle4_file])
        assert code == 0
        h = parse_graph(out)
        assert h.n == 8
        assert len(h.directed) == 8
        assert "L_A_B" in h.labels

    def test_json(self, capsys, cycle4_file):
        _, out, _ = run_cli(capsys, ["latent", "-g", cycle4_file, "--json"])
        payload = json.loads(out)
        assert payload["latents"]["L_A_B"] == ["A", "B"]


class TestProcessDeterminism:
    def test_byte_identical_across_hash_seeds(self, tmp_path):
        p = tmp_path / "cycle4.g"
        p.write_text(CYCLE4)
        argv = [sys.executable, "-m", "covgraph.cli", "gaussian",
                "-g", str(p), "--seed", "11", "--trials", "5", "--json"]
        outs = []
        for hash_seed in ("0", "1"):
            env = dict(os.environ, PYTHONHASHSEED=hash_seed)
            proc = subprocess.run(argv, capture_output=True, env=env)
            assert proc.returncode == 0, proc.stderr
            outs.append(proc.stdout)
        assert outs[0] == outs[1]
