import numpy as np
import pytest
from hypothesis import given, strategies as st

from hanoiwalk.errors import DomainError, NoDecompositionError
from hanoiwalk.topology import (NetworkSize, build_shift_permutation, compose, decompose,
                                edge_list, partner_table, smallworld_partner,
                                validate_topology, vertex_coords, write_edge_csv)


@pytest.mark.parametrize("k, expected", [(6, (1, 1)), (1, (0, 0)), (8, (3, 0))])
def test_decompose_examples(k, expected):
    c = decompose(k, 4)
    assert (c.k1, c.k2) == expected
    assert c.k == k and not c.is_root


def test_decompose_errors():
    with pytest.raises(NoDecompositionError):
        decompose(0, 4)
    with pytest.raises(DomainError):
        decompose(16, 4)
    assert vertex_coords(0, 4).is_root
    assert vertex_coords(0, 4).k1 is None


@pytest.mark.parametrize("n", [1, 0, -3])
def test_network_size_rejects_small(n):
    with pytest.raises(DomainError):
        NetworkSize(n)


def test_network_size():
    s = NetworkSize(5)
    assert s.N == 32 and s.dim == 96


@given(st.integers(0, 20), st.integers(0, 1000))
def test_decompose_compose_roundtrip(k1, k2):
    k = compose(k1, k2)
    n = k.bit_length() + 1
    c = decompose(k, n)
    assert (c.k1, c.k2) == (k1, k2)


@pytest.mark.parametrize("n", [2, 3, 6, 9])
def test_compose_decompose_all_vertices(n):
    for k in range(1, 2 ** n):
        c = decompose(k, n)
        assert compose(c.k1, c.k2) == k
        assert c.k1 == (k & -k).bit_length() - 1


def test_partner_examples():
    assert smallworld_partner(2, 4) == 6
    assert smallworld_partner(0, 4) == 8
    assert smallworld_partner(8, 4) == 0
    assert smallworld_partner(6, 4) == 2
    assert smallworld_partner(1, 4) == 3
    with pytest.raises(DomainError):
        smallworld_partner(16, 4)


@pytest.mark.parametrize("n", range(2, 12))
def test_partner_table_matches_scalar(n):
    table = partner_table(n)
    assert [smallworld_partner(k, n) for k in range(2 ** n)] == table.tolist()
    assert np.array_equal(table[table], np.arange(2 ** n))
    assert not np.any(table == np.arange(2 ** n))


def test_shift_examples():
    perm = build_shift_permutation(4)
    N = 16
    assert perm[1 * N + 4] == 2 * N + 5
    assert perm[2 * N + 5] == 1 * N + 4
    assert perm[1 * N + 15] == 2 * N + 0
    assert perm[0 * N + 2] == 0 * N + 6
    assert not perm.flags.writeable


@pytest.mark.parametrize("n", [2, 4, 10])
def test_validate_passes(n):
    report = validate_topology(n)
    assert report.ok, report


def test_validate_reports_corrupted_involution():
    perm = build_shift_permutation(4).copy()
    # swap two coin-1 targets: still a bijection but no longer an involution
    perm[16 + 3], perm[16 + 7] = perm[16 + 7], perm[16 + 3]
    report = validate_topology(4, perm)
    assert not report.ok
    assert report.check == "involution"
    assert report.index == 16 + 3


def test_validate_reports_duplicate_target():
    perm = build_shift_permutation(4).copy()
    perm[5] = perm[6]
    report = validate_topology(4, perm)
    assert report.check == "bijective"


def test_validate_reports_fixed_point():
    perm = build_shift_permutation(3).copy()
    perm[[1, 3]] = [1, 3]  # 1 <-> 3 replaced by self loops
    report = validate_topology(3, perm)
    assert report.check == "fixed_point" and report.index == 1


def test_edge_list_degree_and_count():
    for n in (2, 3, 5):
        N = 2 ** n
        edges = edge_list(n)
        assert len(edges) == 3 * N // 2
        deg = np.zeros(N, int)
        for a, b, _ in edges:
            deg[a] += 1
            deg[b] += 1
        assert np.all(deg == 3)
        assert len(set((a, b) for a, b, _ in edges)) == len(edges)


def test_write_edge_csv(tmp_path):
    path = tmp_path / "edges.csv"
    assert write_edge_csv(2, path) == 6
    lines = path.read_text().splitlines()
    assert lines[0] == "k,neighbor,edge_type"
    assert "0,2,smallworld" in lines
    assert "1,3,smallworld" in lines
    assert "0,3,backbone" in lines
