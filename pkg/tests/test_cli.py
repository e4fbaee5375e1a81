import subprocess
import sys

import pytest

from wormhole.bench import read_csv
from wormhole.cli import EXIT_DATA, EXIT_INVALID_PAIR, EXIT_OK, EXIT_USAGE, build_parser, main
from wormhole.graph import ingest_edge_list, load_csr


def run(*args):
    return main([str(a) for a in args])


@pytest.fixture
def files(tmp_path):
    (tmp_path / "tri.txt").write_text("1 2\n2 3\n3 1\n")
    (tmp_path / "dup.txt").write_text("1 2\n2 1\n1 2\n2 2\n2 3\n")
    (tmp_path / "path.txt").write_text("10 20\n20 30\n30 40\n40 50\n")
    (tmp_path / "split.txt").write_text("1 2\n3 4\n")
    return tmp_path


def test_ingest(files, capsys):
    assert run("ingest", files / "tri.txt", files / "tri.csr") == EXIT_OK
    assert capsys.readouterr().out.strip() == "n=3 m=3"
    assert run("ingest", files / "dup.txt", files / "dup.csr") == EXIT_OK
    assert capsys.readouterr().out.strip() == "n=3 m=2"


def test_ingest_errors(files, capsys):
    assert run("ingest", files / "missing.txt", files / "x.csr") == EXIT_DATA
    assert "missing.txt" in capsys.readouterr().err
    (files / "bad.txt").write_text("1 2\n2 q\n")
    assert run("ingest", files / "bad.txt", files / "x.csr") == EXIT_DATA
    assert "line 2" in capsys.readouterr().err


def test_coregen(files, capsys):
    run("ingest", files / "tri.txt", files / "tri.csr")
    capsys.readouterr()
    assert run("coregen", files / "tri.csr", files / "tri.dec", "--fraction", 0.5) == EXIT_OK
    out = capsys.readouterr().out
    assert "|L0|=2" in out and "|L1|=1" in out and "queries=2" in out and "setup_time_s=" in out
    assert run("coregen", files / "tri.csr", files / "tri.dec") == EXIT_OK
    assert "fraction=0.06" in capsys.readouterr().out


def test_coregen_bad_fraction(files, capsys):
    run("ingest", files / "tri.txt", files / "tri.csr")
    with pytest.raises(SystemExit) as exc:
        run("coregen", files / "tri.csr", files / "tri.dec", "--fraction", 1.5)
    assert exc.value.code == EXIT_USAGE
    assert "fraction" in capsys.readouterr().err


def prepared_path(files, capsys, seed_label=30):
    run("ingest", files / "path.txt", files / "p.csr")
    run("coregen", files / "p.csr", files / "p.dec", "--fraction", 0.2, "--seed-node", seed_label)
    capsys.readouterr()


def test_query_labels(files, capsys):
    prepared_path(files, capsys)
    assert run("query", files / "p.csr", files / "p.dec", 10, 50) == EXIT_OK
    out = capsys.readouterr().out
    assert "path=10 20 30 40 50" in out
    assert "length=4" in out and "case=through_core" in out
    assert run("query", files / "p.csr", files / "p.dec", 20, 20) == EXIT_OK
    assert "length=0" in capsys.readouterr().out


def test_query_unknown_label(files, capsys):
    prepared_path(files, capsys)
    assert run("query", files / "p.csr", files / "p.dec", 10, 11) == EXIT_USAGE
    assert "unknown node label 11" in capsys.readouterr().err


def test_query_invalid_pair(files, capsys):
    run("ingest", files / "split.txt", files / "s.csr")
    run("coregen", files / "s.csr", files / "s.dec", "--fraction", 0.25, "--seed-node", 1)
    capsys.readouterr()
    assert run("query", files / "s.csr", files / "s.dec", 1, 3) == EXIT_INVALID_PAIR
    assert "invalid pair" in capsys.readouterr().err


def test_query_mismatched_files(files, capsys):
    prepared_path(files, capsys)
    run("ingest", files / "tri.txt", files / "tri.csr")
    assert run("query", files / "tri.csr", files / "p.dec", 1, 2) == EXIT_DATA


def test_gen_chunglu(files, capsys):
    out = files / "g.csr"
    assert run("gen-chunglu", out, "--n", 1000, "--beta", 2.5, "--avg-degree", 8, "--rng-seed", 3) == EXIT_OK
    line = capsys.readouterr().out
    m = int(line.split()[1].split("=")[1])
    assert 3700 < m < 4300
    assert load_csr(out).m == m
    first = out.read_bytes()
    run("gen-chunglu", out, "--n", 1000, "--beta", 2.5, "--avg-degree", 8, "--rng-seed", 3)
    assert out.read_bytes() == first


def test_gen_chunglu_edgelist(files, capsys):
    out = files / "g.txt"
    assert run("gen-chunglu", out, "--n", 300, "--format", "edgelist") == EXIT_OK
    g = ingest_edge_list(out)
    assert f"m={g.m}" in capsys.readouterr().out


@pytest.mark.parametrize("args", [["--n", 100, "--beta", 3.5], ["--n", 1], ["--n", 100, "--avg-degree", 0.5]])
def test_gen_chunglu_usage(files, args):
    try:
        code = run("gen-chunglu", files / "g.csr", *args)
    except SystemExit as exc:
        code = exc.code
    assert code == EXIT_USAGE


def test_bench_bibfs(files, capsys):
    run("gen-chunglu", files / "g.csr", "--n", 800, "--rng-seed", 1)
    capsys.readouterr()
    prefix = files / "b"
    assert run("bench", files / "g.csr", "--method", "bibfs", "--inquiries", 80, "--ground-truth",
               "--out", prefix) == EXIT_OK
    assert "pct_exact=100" in capsys.readouterr().out
    (agg,) = read_csv(f"{prefix}_aggregates.csv")
    assert float(agg["pct_exact"]) == 100.0


def test_bench_zero_and_determinism(files, capsys):
    run("gen-chunglu", files / "g.csr", "--n", 800, "--rng-seed", 1)
    run("coregen", files / "g.csr", files / "g.dec")
    assert run("bench", files / "g.csr", files / "g.dec", "--inquiries", 0, "--out", files / "z") == EXIT_OK
    assert len(open(files / "z_records.csv").readlines()) == 1
    assert len(open(files / "z_aggregates.csv").readlines()) == 1
    for k in range(2):
        run("bench", files / "g.csr", files / "g.dec", "--inquiries", 100, "--ground-truth",
            "--rng-seed", 9, "--out", files / f"r{k}")
    assert (files / "r0_records.csv").read_bytes() == (files / "r1_records.csv").read_bytes()


def test_bench_in_process_setup(files, capsys):
    run("gen-chunglu", files / "g.csr", "--n", 800, "--rng-seed", 1)
    capsys.readouterr()
    assert run("bench", files / "g.csr", "--method", "wormhole_M", "--inquiries", 30,
               "--out", files / "m") == EXIT_OK
    (agg,) = read_csv(files / "m_aggregates.csv")
    assert float(agg["setup_time_s"]) > 0
    assert float(agg["core_fraction"]) == 0.06


def test_bench_bibfs_rejects_dec(files, capsys):
    run("gen-chunglu", files / "g.csr", "--n", 300)
    run("coregen", files / "g.csr", files / "g.dec")
    assert run("bench", files / "g.csr", files / "g.dec", "--method", "bibfs", "--out", files / "x") == EXIT_USAGE


def test_build_core_index_and_variant_m(files, capsys):
    run("gen-chunglu", files / "g.csr", "--n", 2000, "--rng-seed", 2)
    run("coregen", files / "g.csr", files / "g.dec", "--rng-seed", 2)
    capsys.readouterr()
    assert run("build-core-index", files / "g.csr", files / "g.dec", files / "g.idx") == EXIT_OK
    out = capsys.readouterr().out
    nbytes = int(out.split("index_bytes=")[1])
    assert (files / "g.idx").stat().st_size == nbytes
    for s, t in [(0, 1999), (5, 700), (33, 1500), (12, 13)]:
        lengths = {}
        for var in ("H", "M"):
            extra = ["--index", files / "g.idx"] if var == "M" else []
            code = run("query", files / "g.csr", files / "g.dec", s, t, "--variant", var, *extra)
            text = capsys.readouterr().out
            lengths[var] = (code, text.split("length=")[1].split()[0] if code == EXIT_OK else None)
        assert lengths["H"] == lengths["M"]


def test_single_node_core_index(files, capsys):
    run("ingest", files / "path.txt", files / "p.csr")
    run("coregen", files / "p.csr", files / "p.dec", "--fraction", 0.2)
    capsys.readouterr()
    assert run("build-core-index", files / "p.csr", files / "p.dec", files / "p.idx") == EXIT_OK
    assert "core_size=1 entries=1" in capsys.readouterr().out


def test_help_documents_every_flag():
    parser = build_parser()
    sub = next(a for a in parser._actions if a.dest == "command")
    for name, p in sub.choices.items():
        text = p.format_help()
        for action in p._actions:
            for flag in action.option_strings:
                assert flag in text, (name, flag)


def test_module_entry_point(files):
    r = subprocess.run([sys.executable, "-m", "wormhole", "ingest", str(files / "tri.txt"),
                        str(files / "t.csr")], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "n=3 m=3"
    r = subprocess.run([sys.executable, "-m", "wormhole", "coregen"], capture_output=True, text=True)
    assert r.returncode == EXIT_USAGE
