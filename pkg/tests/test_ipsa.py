from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from infimax.errors import AmbiguousRecoveryError, NoMatchError, PathError, WindowTooShortError
from infimax.indices import IndexList
from infimax.ipsa import (
    Path,
    PathTail,
    SpecialPath,
    TailClass,
    classify_tail,
    edges_for_level,
    edges_into,
    enumerate_finite_paths,
    make_edge,
    path_count,
    path_for_shift,
    path_from_labels,
    point_position,
    recover_path,
    sequence_window,
    special_path,
    word_map,
)
from infimax.projection import abelianization_matrix
from infimax.words import PointedWord, alpha_prefix, beta_suffix, check_allowed_pairs, compose_apply

small_lists = st.lists(st.integers(1, 4), min_size=1, max_size=5).map(IndexList.truncated)


def _labels(edges):
    return [str(e) for e in edges]


def test_edges_for_constant_one():
    assert len(edges_for_level(1)) == 6
    assert _labels(edges_into(1, 1, 2)) == ["(ε,3,11)", "(3,1,1)", "(31,1,ε)"]
    assert _labels(edges_into(1, 1, 1)) == ["(ε,2,ε)"]


@pytest.mark.parametrize("n", range(1, 9))
def test_edge_count_is_2n_plus_4(n):
    assert len(edges_for_level(n)) == 2 * n + 4


def test_edge_rejects_bad_position():
    with pytest.raises(PathError):
        make_edge(1, 1, 1, 1)


@pytest.mark.parametrize("text, k, a, count", [("1*", 2, 3, 3), ("1*", 1, 1, 1), ("2*", 1, 2, 4)])
def test_path_counts(text, k, a, count):
    assert len(enumerate_finite_paths(text, k, a)) == count == path_count(text, k, a)


def test_word_map_examples():
    assert str(word_map("1*", path_from_labels("1*", [("3", 1, "1")]))) == "3.11"
    alpha_path = path_from_labels("1*", [("", 3, "1"), ("", 3, "1")])
    assert str(word_map("1*", alpha_path)) == ".312"
    assert [str(word_map("1*", p)) for p in enumerate_finite_paths("1*", 2, 3)] == [".312", "3.12", "31.2"]


def test_path_validation():
    e1, e2 = make_edge(1, 1, 2, 1), make_edge(2, 1, 3, 0)
    with pytest.raises(PathError):
        Path((e1, e2))  # edge 2 starts at 3, edge 1 ends at 2
    with pytest.raises(PathError):
        Path((make_edge(2, 1, 3, 0),))
    with pytest.raises(PathError):
        Path((make_edge(1, 1, 2, 0),), PathTail.ALPHA)


@given(small_lists, st.integers(1, 3))
def test_point_positions_are_a_bijection(n, a):
    k = n.depth
    paths = enumerate_finite_paths(n, k, a)
    a_k = np.linalg.multi_dot([np.eye(3, dtype=np.int64)] + [abelianization_matrix(m) for m in n.take(k)])
    assert len(paths) == a_k[:, a - 1].sum()
    assert [point_position(n, p) for p in paths] == list(range(len(paths)))
    words = {word_map(n, p).symbols for p in paths}
    assert words == {compose_apply(n.take(k), str(a))}


@given(small_lists, st.integers(1, 3), st.data())
def test_shift_unranking_inverts_ranking(n, a, data):
    k = n.depth
    j = data.draw(st.integers(0, path_count(n, k, a) - 1))
    path = path_for_shift(n, k, a, j)
    assert point_position(n, path) == j
    assert word_map(n, path).point == j


def test_special_paths():
    assert _labels(special_path("min", "1*", 3).edges) == ["(ε,3,1)"] * 3
    assert _labels(special_path(SpecialPath.MIN1, "1*", 1).edges) == ["(31,1,ε)"]
    assert _labels(special_path("max", "1*", 2).edges) == ["(3,1,1)", "(ε,2,ε)"]
    assert _labels(special_path("max3", "1*", 3).edges) == ["(ε,3,11)", "(ε,2,ε)", "(3,1,1)"]
    assert _labels(special_path("min2", "2*", 2).edges) == ["(ε,2,ε)", "(311,1,ε)"]


def test_tail_classes():
    assert classify_tail(special_path("min", "1*", 1)) is TailClass.S2
    assert classify_tail(special_path("min1", "1*", 1)) is TailClass.S1
    assert classify_tail(special_path("min2", "1*", 1)) is TailClass.S1HAT
    assert classify_tail(special_path("max", "1*", 1)) is TailClass.N
    with pytest.raises(PathError):
        classify_tail(special_path("max", "1*", 2).truncated())


def test_sequence_windows():
    w = sequence_window("1*", special_path("min", "1*", 4), 3)
    assert (w.left, w.right) == ("", "312")
    assert sequence_window("1*", special_path("min1", "1*", 2), 1).left.endswith("1")
    w = sequence_window("1*", special_path("max", "1*", 4), 20)
    assert check_allowed_pairs(w)


@pytest.mark.parametrize("text", ["1*", "2*", "1,2;(3,4)"])
def test_named_tails_reproduce_alpha_and_beta(text):
    right = sequence_window(text, Path((), PathTail.ALPHA), 200).right
    assert right == alpha_prefix(text, 200)
    for tail, hat in ((PathTail.BETA, False), (PathTail.BETA_HAT, True)):
        # the point sits one symbol left of the end of beta
        w = sequence_window(text, Path((), tail), 200)
        assert len(w.right) == 1
        assert (w.left + w.right)[-200:] == beta_suffix(text, 200, hat=hat)


def test_recover_examples():
    assert _labels(recover_path("1*", ".312", 2).edges) == ["(ε,3,1)", "(ε,3,1)"]
    assert recover_path("1*", "3.12", 2).edges == path_for_shift("1*", 2, 3, 1).edges
    with pytest.raises(NoMatchError):
        recover_path("1*", ".21", 1)
    with pytest.raises(WindowTooShortError):
        recover_path("1*", ".31", 3)


def test_exhaustive_reports_genuine_ambiguity():
    # the depth-1 word ".31" sits inside both Lambda_1(3) and Lambda_1(2)
    with pytest.raises(AmbiguousRecoveryError):
        recover_path(IndexList.truncated((1,)), ".311", 1, method="exhaustive")


@given(st.sampled_from(["1*", "2*", "1,2;(3,4)", "2,1,3*"]), st.integers(1, 1500), st.integers(0, 2))
def test_desubstitution_matches_exhaustive_and_unranking(text, j, k_extra):
    n = IndexList.parse(text)
    s = alpha_prefix(n, 8000)
    lo = max(0, j - 1500)
    window = PointedWord(s[lo : j + 1500], j - lo)
    k = 2 + k_extra
    fast = recover_path(n, window, k)
    slow = recover_path(n, window, k, method="exhaustive")
    assert fast.edges == slow.edges
    depth = k
    while path_count(n, depth, 3) <= j:
        depth += 1
    assert path_for_shift(n, depth, 3, j).edges[:k] == fast.edges
