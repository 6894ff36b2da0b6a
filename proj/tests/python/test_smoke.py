from decimal import Decimal
from fractions import Fraction

import pytest

import mapscope as ms


def test_tree_counts():
    assert [len(ms.enumerate_trees(n)) for n in range(1, 8)] == [1, 1, 2, 6, 22, 91, 408]
    with pytest.raises(ValueError):
        ms.enumerate_trees(0)


def test_tree_predicates():
    assert ms.validate_tree("(2 (1) (1))")[0]
    ok, message, path = ms.validate_tree("(3 (1) (1))")
    assert not ok and message == "root label != child sum" and path == []
    assert ms.tree_stats("(1 (1 (1 (1))))")["single_child_max_nodes"] == 3
    assert ms.is_primitive_tree("(3 (1) (1) (1))")
    assert not ms.is_k_face_free_tree("(3 (1) (1) (1))", 4)
    with pytest.raises(ms.ParseError):
        ms.tree_stats("(1 (1)")


def test_maps():
    m = ms.tree_to_map("(3 (1) (1) (1))")
    assert m["n_darts"] == 8
    s = ms.map_summary(m)
    assert (s["vertices"], s["faces"], s["root_face_degree"]) == (4, 2, 4)
    assert not s["multiple_edges"]
    codes = {ms.canonical_code(ms.tree_to_map(t)) for t in ms.enumerate_trees(6)}
    assert len(codes) == 91


def test_permutations():
    assert len(ms.generate_av(5)) == 91
    assert ms.insert_largest([1, 2], 2) == [2, 3, 1]
    assert ms.occurrences("3142", [4, 6, 2, 5, 3, 1]) == [[0, 2, 3, 4]]
    assert ms.occurrences("2-41-3", [3, 6, 5, 2, 4, 1]) == [[0, 2, 3, 4]]
    assert ms.reduce_to_primitive([2, 5, 3, 1, 4]) == [1, 4, 2, 3]
    for t in ms.enumerate_trees(6):
        assert ms.perm_to_tree(ms.tree_to_perm(t)) == t
    with pytest.raises(ValueError, match="not \\(3142,2-41-3\\)-avoiding"):
        ms.perm_to_tree([3, 1, 4, 2])


def test_series():
    assert ms.series("b3", 10)[1:] == [1, 0, 1, 1, 5, 13, 48, 160, 578, 2078]
    assert ms.series("p", 3) == [2, 1, 1, 3]
    assert ms.series("a-hyp", 20) == ms.series("a", 20)
    assert all(isinstance(c, Fraction) for c in ms.series("b2", 5))
    assert ms.tutte_count(5) == 91
    est, exact = ms.asymptotic("b1", 200)
    assert abs(float(est) / exact - 1) < 0.01
    assert abs(ms.b3_singularity()["rho"] - Decimal("4.24121")) < Decimal("1e-5")


def test_verify_and_cli():
    assert "counts" in ms.suite_names()
    report = ms.run_suite("counts", 6)
    assert report["status"] == "pass" and report["params"] == {"max_nodes": 6}
    code, out, err = ms.run_cli(["enumerate", "--object", "trees", "--size", "4", "--count-only"])
    assert (code, out, err) == (0, "6\n", "")
    code, _, err = ms.run_cli(["enumerate", "--bogus"])
    assert code == 2 and err
