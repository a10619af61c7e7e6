import json
import subprocess
import sys

import pytest

from cliquerad.cli import load_graph, main
from cliquerad.graph import gen_complete, gen_cycle, gen_turan


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestSpectral:
    @pytest.mark.parametrize("src,t,mu", [("turan:6,3", 3, 4.0), ("complete:4", 3, 3.0), ("C~", 3, 3.0)])
    def test_values(self, capsys, src, t, mu):
        code, out, _ = run(capsys, "spectral", "--input", src, "--t", str(t))
        data = json.loads(out)
        assert code == 0
        assert data["mu"] == pytest.approx(mu, abs=1e-9)
        assert {"mu", "residual", "iterations", "method"} <= set(data)

    def test_plain(self, capsys):
        code, out, _ = run(capsys, "spectral", "--input", "multipartite:2,3", "--t", "2", "--format", "plain")
        assert code == 0 and float(out) == pytest.approx(6**0.5, abs=1e-9)

    def test_csv(self, capsys):
        code, out, _ = run(capsys, "spectral", "--input", "complete:4", "--t", "3", "--format", "csv")
        header, row = out.strip().split("\n")
        assert header.startswith("mu,") and row.startswith("3.0,")

    def test_parse_error(self, capsys):
        code, _, err = run(capsys, "spectral", "--input", "C", "--t", "3")
        assert code == 1 and "error" in err

    def test_non_convergence(self, capsys):
        code, out, _ = run(capsys, "spectral", "--input", "multipartite:1,4,2", "--t", "3", "--max-iter", "2")
        assert code == 2 and json.loads(out)["converged"] is False

    def test_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["spectral", "--t", "3"])
        assert exc.value.code == 1

    def test_json_round_trip(self, capsys):
        _, out, _ = run(capsys, "spectral", "--input", "random:9,0.6,4", "--t", "3")
        data = json.loads(out)
        assert json.dumps(data) == out.strip()


class TestBounds:
    def test_complete(self, capsys):
        code, out, _ = run(capsys, "bounds", "--input", "complete:5", "--t", "3")
        data = json.loads(out)
        assert code == 0
        for key in ("lower", "mu", "upper"):
            assert data[key] == pytest.approx(6.0, abs=1e-9)

    def test_turan(self, capsys):
        _, out, _ = run(capsys, "bounds", "--input", "turan:6,3", "--t", "3")
        data = json.loads(out)
        assert (data["lower"], data["mu"]) == (4.0, 4.0)
        assert data["upper"] == pytest.approx(5.4288, abs=1e-4)

    def test_edge_list_file(self, capsys, tmp_path):
        path = tmp_path / "c5.txt"
        path.write_text("5\n0 1\n1 2\n2 3\n3 4\n4 0\n")
        _, out, _ = run(capsys, "bounds", "--input", str(path), "--t", "3")
        data = json.loads(out)
        assert (data["lower"], data["mu"], data["upper"]) == (0.0, 0.0, 0.0)

    def test_non_convergence(self, capsys):
        code, _, err = run(capsys, "bounds", "--input", "multipartite:1,4,2", "--t", "3", "--max-iter", "2")
        assert code == 2


class TestSearch:
    def test_mu(self, capsys):
        code, out, _ = run(capsys, "search", "--n", "5", "--forbidden", "complete:3", "--objective", "mu", "--t", "2")
        assert code == 0 and json.loads(out)["best_value"] == pytest.approx(6**0.5, abs=1e-9)

    def test_cliques(self, capsys):
        code, out, _ = run(capsys, "search", "--n", "6", "--forbidden", "complete:4", "--objective", "cliques", "--t", "3")
        assert code == 0 and json.loads(out)["best_value"] == 8

    def test_empty_stream(self, capsys, tmp_path):
        path = tmp_path / "empty.g6"
        path.write_text("")
        code, _, err = run(capsys, "search", "--input", str(path), "--forbidden", "complete:3", "--t", "2")
        assert code == 1 and "no graphs examined" in err

    def test_stream_file(self, capsys, tmp_path):
        path = tmp_path / "g.g6"
        path.write_text("\n".join(g.to_graph6() for g in (gen_complete(5), gen_cycle(5), gen_turan(5, 2)[0])) + "\n")
        code, out, _ = run(capsys, "search", "--input", str(path), "--forbidden", "complete:3", "--t", "2")
        data = json.loads(out)
        assert code == 0 and data["examined"] == 3 and data["skipped_non_H_free"] == 1
        assert data["best_value"] == pytest.approx(6**0.5, abs=1e-9)

    def test_budget(self, capsys):
        code, _, _ = run(capsys, "search", "--n", "9", "--forbidden", "complete:3", "--t", "2")
        assert code == 3

    def test_missing_source(self, capsys):
        code, _, _ = run(capsys, "search", "--forbidden", "complete:3", "--t", "2")
        assert code == 1


class TestScaling:
    def test_mu(self, capsys):
        code, out, _ = run(capsys, "scaling", "--r", "3", "--n-from", "6", "--n-to", "9", "--objective", "mu")
        lines = out.strip().split("\n")
        assert code == 0 and len(lines) == 5
        assert lines[1].split(",")[-1] == "1.0"

    def test_cliques(self, capsys):
        _, out, _ = run(capsys, "scaling", "--r", "2", "--n-from", "2", "--n-to", "4", "--objective", "cliques")
        counts = [int(line.split(",")[1]) for line in out.strip().split("\n")[1:]]
        assert counts == [1, 2, 4]

    def test_bad_r(self, capsys):
        code, _, _ = run(capsys, "scaling", "--r", "1", "--n-from", "2", "--n-to", "4")
        assert code == 1


def test_load_graph_variants(tmp_path):
    assert load_graph("complete:4") == gen_complete(4)
    assert load_graph("turan:7,3") == gen_turan(7, 3)[0]
    assert load_graph("cycle:5") == gen_cycle(5)
    assert load_graph("random:6,1,0") == gen_complete(6)
    assert load_graph("D~{") == gen_complete(5)
    path = tmp_path / "k4.g6"
    path.write_text(">>graph6<<C~\n")
    assert load_graph(str(path)) == gen_complete(4)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cliquerad", "spectral", "--input", "complete:4", "--t", "3", "--format", "plain"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and float(proc.stdout) == 3.0


def test_deterministic_output(capsys):
    outs = [run(capsys, "spectral", "--input", "random:10,0.7,3", "--t", "3")[1] for _ in range(2)]
    assert outs[0] == outs[1]
