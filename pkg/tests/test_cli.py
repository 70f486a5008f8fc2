"""Command-line surface: flags, exit codes, and frozen help text."""

import io
import shutil
import subprocess
from pathlib import Path

import pytest

from hgsparse import gen_footnote_graph, gen_random, gen_sunflower, parse_hypergraph
from hgsparse.cli import dispatch
from hgsparse.hypergraph import serialize_hypergraph

GOLDEN = Path(__file__).parent / "golden"

HELP_CASES = [
    ("help_main.txt", ["--help"]),
    ("help_gen.txt", ["gen", "--help"]),
    ("help_sparsify.txt", ["sparsify", "--help"]),
    ("help_pipeline.txt", ["pipeline", "--help"]),
    ("help_stream.txt", ["stream", "--help"]),
    ("help_strengths.txt", ["strengths", "--help"]),
    ("help_balance.txt", ["balance", "--help"]),
    ("help_verify.txt", ["verify", "--help"]),
]


def write_hg(path, h):
    path.write_text(serialize_hypergraph(h))
    return str(path)


@pytest.mark.parametrize("golden,argv", HELP_CASES, ids=[c[0] for c in HELP_CASES])
def test_help_frozen(capsys, golden, argv):
    assert dispatch(argv) == 0
    assert capsys.readouterr().out == (GOLDEN / golden).read_text()


class TestGen:
    def test_sunflower_stdout(self, capsys):
        assert dispatch(["gen", "sunflower", "--n", "3"]) == 0
        out = capsys.readouterr().out
        assert parse_hypergraph(out) == gen_sunflower(3)

    def test_random_to_file(self, tmp_path, capsys):
        out = tmp_path / "r.hg"
        argv = ["gen", "random", "--n", "5", "--m", "8", "--r-max", "3",
                "--seed", "2", "-o", str(out)]
        assert dispatch(argv) == 0
        assert parse_hypergraph(out.read_text()) == gen_random(5, 8, 3, seed=2)

    def test_unknown_family(self, capsys):
        assert dispatch(["gen", "torus", "--n", "3"]) == 2
        assert "invalid choice" in capsys.readouterr().err

    def test_edge_cap(self, capsys):
        assert dispatch(["gen", "random", "--n", "3", "--m", "20",
                         "--edge-cap", "10"]) == 2
        assert capsys.readouterr().err.startswith("error:")


class TestSparsify:
    def test_round_trip_reproducible(self, tmp_path, capsys):
        src = write_hg(tmp_path / "in.hg", gen_footnote_graph(5))
        out = tmp_path / "out.hg"
        argv = ["sparsify", "-i", src, "-e", "0.5", "--seed", "3",
                "-o", str(out)]
        assert dispatch(argv) == 0
        first = out.read_bytes()
        meta = (tmp_path / "out.hg.meta").read_text()
        # the plan runs at epsilon/3 after the unit-copy reduction
        assert "seed=3" in meta and "epsilon=0.16666666666666666" in meta
        parse_hypergraph(out.read_text())  # well-formed
        assert dispatch(argv) == 0
        assert out.read_bytes() == first
        assert (tmp_path / "out.hg.meta").read_text() == meta

    def test_stdout_mode(self, tmp_path, capsys):
        src = write_hg(tmp_path / "in.hg", gen_sunflower(3))
        assert dispatch(["sparsify", "-i", src, "-e", "0.5"]) == 0
        h = parse_hypergraph(capsys.readouterr().out)
        assert h == gen_sunflower(3)  # all p=1 at this scale

    def test_epsilon_out_of_range(self, tmp_path, capsys):
        src = write_hg(tmp_path / "in.hg", gen_sunflower(3))
        assert dispatch(["sparsify", "-i", src, "-e", "1.5"]) == 2
        assert "epsilon" in capsys.readouterr().err

    def test_rho_override_forms(self, tmp_path, capsys):
        src = write_hg(tmp_path / "in.hg", gen_sunflower(3))
        assert dispatch(["sparsify", "-i", src, "-e", "0.5",
                         "--rho-override", "7/2"]) == 0
        capsys.readouterr()
        for bad in ("0", "-1", "abc"):
            assert dispatch(["sparsify", "-i", src, "-e", "0.5",
                             "--rho-override", bad]) == 2
            capsys.readouterr()

    def test_missing_input(self, tmp_path, capsys):
        assert dispatch(["sparsify", "-i", str(tmp_path / "nope.hg"),
                         "-e", "0.5"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_malformed_input(self, tmp_path, capsys):
        bad = tmp_path / "bad.hg"
        bad.write_text("1 3 1\n1 5 9\n")
        assert dispatch(["sparsify", "-i", str(bad), "-e", "0.5"]) == 2
        assert "line 2" in capsys.readouterr().err

    def test_unknown_flag(self, capsys):
        assert dispatch(["sparsify", "--frobnicate"]) == 2

    def test_no_command(self, capsys):
        assert dispatch([]) == 2


class TestPipeline:
    def test_end_to_end(self, tmp_path, capsys):
        src = write_hg(tmp_path / "in.hg", gen_footnote_graph(5))
        out = tmp_path / "out.hg"
        assert dispatch(["pipeline", "-i", src, "-e", "0.5", "--seed", "1",
                         "-o", str(out)]) == 0
        parse_hypergraph(out.read_text())
        assert "m_in=" in (tmp_path / "out.hg.meta").read_text()

    def test_rejects_rho_override(self, tmp_path, capsys):
        src = write_hg(tmp_path / "in.hg", gen_sunflower(3))
        assert dispatch(["pipeline", "-i", src, "-e", "0.5",
                         "--rho-override", "2"]) == 2
        assert "rho override" in capsys.readouterr().err


class TestStream:
    def test_stdin_weighted(self, monkeypatch, capsys):
        lines = "% incoming edges\n1 1 2\n2 2 3\n1/2 1 3\n"
        monkeypatch.setattr("sys.stdin", io.StringIO(lines))
        assert dispatch(["stream", "--n", "3", "--m-bound", "10",
                         "-e", "0.5"]) == 0
        h = parse_hypergraph(capsys.readouterr().out)
        assert h.n == 3 and h.m == 3

    def test_fmt_zero(self, tmp_path, capsys):
        src = tmp_path / "edges.txt"
        src.write_text("1 2\n2 3\n1 3\n")
        assert dispatch(["stream", "-i", str(src), "--n", "3",
                         "--m-bound", "3", "--fmt", "0", "-e", "0.5"]) == 0
        assert parse_hypergraph(capsys.readouterr().out).m == 3

    def test_over_bound(self, tmp_path, capsys):
        src = tmp_path / "edges.txt"
        src.write_text("1 1 2\n1 2 3\n")
        assert dispatch(["stream", "-i", str(src), "--n", "3",
                         "--m-bound", "1", "-e", "0.5"]) == 2
        assert "declared bound" in capsys.readouterr().err

    def test_bad_line_reported_with_number(self, tmp_path, capsys):
        src = tmp_path / "edges.txt"
        src.write_text("1 1 2\n1 1 9\n")
        assert dispatch(["stream", "-i", str(src), "--n", "3",
                         "--m-bound", "5", "-e", "0.5"]) == 2
        err = capsys.readouterr().err
        assert "line 2" in err and "out of range" in err

    def test_capacity_floor(self, tmp_path, capsys):
        src = tmp_path / "edges.txt"
        src.write_text("1 1 2\n")
        assert dispatch(["stream", "-i", str(src), "--n", "3",
                         "--m-bound", "5", "-e", "0.5", "--capacity", "3"]) == 2


class TestStrengths:
    def test_multigraph_direct(self, tmp_path, capsys):
        src = tmp_path / "tri.hg"
        src.write_text("3 3 0\n1 2\n2 3\n1 3\n")
        assert dispatch(["strengths", "-i", str(src)]) == 0
        out = capsys.readouterr().out
        assert "1 2 1 2\n" in out and "distinct_strengths=1" in out

    def test_unit_hypergraph_balanced(self, tmp_path, capsys):
        src = tmp_path / "he.hg"
        src.write_text("1 3 0\n1 2 3\n")
        assert dispatch(["strengths", "-i", str(src)]) == 0
        assert capsys.readouterr().out == (
            "% u v weight strength\n"
            "1 2 1/3 2/3\n1 3 1/3 2/3\n2 3 1/3 2/3\n"
            "% distinct_strengths=1 weight_over_strength=1.5 n_minus_1=2\n"
        )

    def test_weighted_hyperedges_rejected(self, tmp_path, capsys):
        src = tmp_path / "w.hg"
        src.write_text("1 3 1\n2 1 2 3\n")
        assert dispatch(["strengths", "-i", str(src)]) == 2
        assert "2-uniform" in capsys.readouterr().err


class TestBalance:
    def test_unit_triangle_edge(self, tmp_path, capsys):
        src = tmp_path / "he.hg"
        src.write_text("1 3 0\n1 2 3\n")
        assert dispatch(["balance", "-i", str(src)]) == 0
        out = capsys.readouterr().out
        assert "group=1,2,3" in out
        assert "copy=0 units=3,3,3" in out
        assert "balanced=1 checked=1 violations=0" in out

    def test_output_file(self, tmp_path, capsys):
        src = write_hg(tmp_path / "in.hg", gen_sunflower(2))
        out = tmp_path / "bal.txt"
        assert dispatch(["balance", "-i", src, "-o", str(out)]) == 0
        assert "balanced=1" in out.read_text()


class TestVerify:
    def test_pass_and_fail(self, tmp_path, capsys):
        a = write_hg(tmp_path / "a.hg", gen_footnote_graph(5))
        dbl = parse_hypergraph(Path(a).read_text())
        from hgsparse import HyperEdge, WeightedHypergraph
        b_h = WeightedHypergraph(
            dbl.n, tuple(HyperEdge(e.vertices, 2 * e.weight) for e in dbl.edges))
        b = write_hg(tmp_path / "b.hg", b_h)
        assert dispatch(["verify", "-a", a, "-b", a, "-e", "0.0"]) == 0
        assert "pass=1" in capsys.readouterr().out
        assert dispatch(["verify", "-a", a, "-b", b, "-e", "0.5"]) == 1
        out = capsys.readouterr().out
        assert "pass=0" in out and "max_rel_error=1" in out

    def test_csv_output(self, tmp_path, capsys):
        a = write_hg(tmp_path / "a.hg", gen_sunflower(2))
        csv = tmp_path / "cuts.csv"
        assert dispatch(["verify", "-a", a, "-b", a, "-e", "0.1",
                         "--csv", str(csv)]) == 0
        lines = csv.read_text().splitlines()
        assert lines[0] == "cut_id,true_w,hat_w,rel_err"
        assert len(lines) == 1 + (2 ** 3 - 1)

    def test_negative_epsilon(self, tmp_path, capsys):
        a = write_hg(tmp_path / "a.hg", gen_sunflower(2))
        assert dispatch(["verify", "-a", a, "-b", a, "-e", "-1"]) == 2

    def test_sampled_needs_count(self, tmp_path, capsys):
        a = write_hg(tmp_path / "a.hg", gen_sunflower(2))
        assert dispatch(["verify", "-a", a, "-b", a, "-e", "0.1",
                         "--exhaustive-limit", "2"]) == 2
        capsys.readouterr()
        assert dispatch(["verify", "-a", a, "-b", a, "-e", "0.1",
                         "--exhaustive-limit", "2", "--cut-samples", "5"]) == 0
        assert "cuts_checked=5" in capsys.readouterr().out


@pytest.mark.skipif(shutil.which("hgsparse") is None,
                    reason="console script not on PATH")
def test_console_script():
    proc = subprocess.run(["hgsparse", "gen", "sunflower", "--n", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert parse_hypergraph(proc.stdout) == gen_sunflower(2)
