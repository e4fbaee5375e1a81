import io

import numpy as np
import pytest

from wormhole.errors import FormatError, ParseError
from wormhole.graph import CSR_MAGIC, Graph, ingest_edge_list, load_csr, save_csr, write_edge_list

from conftest import path_graph, random_graph, star_graph


def check_invariants(g):
    assert g.offsets[0] == 0
    assert g.offsets[-1] == 2 * g.m
    assert np.all(np.diff(g.offsets) >= 0)
    assert g.degrees().sum() == 2 * g.m
    for v in range(g.n):
        nb = g.neighbors(v)
        assert np.all(np.diff(nb.astype(np.int64)) > 0)
        assert v not in nb
        for w in nb:
            assert g.has_edge(int(w), v)


def test_triangle():
    g = ingest_edge_list(b"0 1\n1 2\n2 0\n")
    assert (g.n, g.m) == (3, 3)
    assert g.degrees().tolist() == [2, 2, 2]
    assert g.neighbors(0).tolist() == [1, 2]


def test_dedup_and_self_loops():
    g = ingest_edge_list(b"5 7\n7 5\n5 5\n")
    assert (g.n, g.m) == (2, 1)
    assert g.label_of(0) == 5 and g.label_of(1) == 7
    assert g.node_of(7) == 1


def test_comments_and_extra_columns():
    g = ingest_edge_list(b"# header\n% other\n\n1 2 0.5\n2 3 x\n")
    assert (g.n, g.m) == (3, 2)


def test_label_gaps_are_dropped():
    g = ingest_edge_list(b"100 5\n5 1000000\n")
    assert g.n == 3
    assert g.labels.tolist() == [5, 100, 1_000_000]
    with pytest.raises(KeyError):
        g.node_of(6)


@pytest.mark.parametrize("data, line", [(b"0 1\n1 x\n", 2), (b"0 1\n\n3\n", 3), (b"0 -1\n", 1)])
def test_parse_errors_carry_line(data, line):
    with pytest.raises(ParseError) as exc:
        ingest_edge_list(data)
    assert exc.value.line == line
    assert f"line {line}" in str(exc.value)


@pytest.mark.parametrize("data", [b"", b"# only a comment\n", b"3 3\n"])
def test_empty_input(data):
    with pytest.raises(ParseError):
        ingest_edge_list(data)


def test_stream_source():
    g = ingest_edge_list(io.BytesIO(b"0 1\n1 2\n"))
    assert g.m == 2


def test_neighbors_examples():
    assert star_graph(4).neighbors(0).tolist() == [1, 2, 3, 4]
    assert path_graph(3).neighbors(1).tolist() == [0, 2]
    with pytest.raises(IndexError):
        path_graph(3).neighbors(3)


def test_from_edges_symmetrizes():
    g = Graph.from_edges([0, 1, 1], [1, 0, 2])
    assert g.m == 2
    check_invariants(g)


@pytest.mark.parametrize("seed", range(10))
def test_random_invariants(seed):
    check_invariants(random_graph(seed, n_max=80))


def test_csr_roundtrip(tmp_path, chunglu_10k):
    path = tmp_path / "g.csr"
    save_csr(chunglu_10k, path)
    assert load_csr(path) == chunglu_10k
    assert path.stat().st_size == len(CSR_MAGIC) + 16 + 8 * (chunglu_10k.n + 1) + 8 * chunglu_10k.m


def test_csr_roundtrip_keeps_labels(tmp_path):
    g = ingest_edge_list(b"10 20\n20 30\n")
    save_csr(g, tmp_path / "g.csr")
    h = load_csr(tmp_path / "g.csr")
    assert h == g
    assert h.labels.tolist() == [10, 20, 30]


def test_csr_bad_magic(tmp_path):
    path = tmp_path / "g.csr"
    save_csr(path_graph(4), path)
    data = bytearray(path.read_bytes())
    data[0] ^= 0xFF
    path.write_bytes(bytes(data))
    with pytest.raises(FormatError):
        load_csr(path)


def test_csr_truncated(tmp_path):
    path = tmp_path / "g.csr"
    save_csr(path_graph(4), path)
    path.write_bytes(path.read_bytes()[:-3])
    with pytest.raises(FormatError):
        load_csr(path)


def test_edge_list_idempotent(tmp_path):
    g = ingest_edge_list(b"3 9\n9 4\n4 3\n4 12\n12 12\n")
    write_edge_list(g, tmp_path / "e.txt")
    h = ingest_edge_list(tmp_path / "e.txt")
    assert h == g
    assert h.labels.tolist() == g.labels.tolist()


def test_induced_subgraph():
    g = path_graph(5)
    sub, members = g.induced_subgraph([3, 1, 2])
    assert members.tolist() == [1, 2, 3]
    assert sub.m == 2
    assert sub.neighbors(1).tolist() == [0, 2]
