import json
import random
from itertools import combinations

import pytest
from hypothesis import given, settings

from conftest import perms
from mobiuspair.analysis import (
    AnalysisError,
    RawStructure,
    blocks_through_points,
    cycle_path,
    extract_subpair,
    intersection_profile,
    isomorphic,
    recognize,
    special_decompositions,
    subpair_sets,
)
from mobiuspair.config import ElementId, build, is_isomorphism
from mobiuspair.oracle import enumerate_decompositions, find_isomorphisms, find_subpairs
from mobiuspair.perm import conjugacy_class_reps, invariant_subsets, parse_permutation

E = ElementId.parse


def pair(n, text):
    return build(n, parse_permutation(text, n))


def meet(M, x, y):
    return sorted(str(p) for p in set(M.block_points(E(x))) & set(M.block_points(E(y))))


def test_intersection_examples():
    assert meet(pair(4, "1 2 3 4"), "A1", "B1") == []
    M = pair(4, "(1 2 3 4)")
    assert meet(M, "A2", "B1") == ["b2"]
    assert meet(M, "A1", "B2") == ["a3", "b1"]
    prof = intersection_profile(M)
    assert prof.pair_case[(2, 1)] == "ii" and prof.pair_case[(1, 2)] == "iii"


@pytest.mark.parametrize("n", range(3, 9))
def test_profile_for_every_class(n):
    for rep in conjugacy_class_reps(n):
        prof = intersection_profile(build(n, rep))
        assert prof.total_pairs == n * (2 * n - 1)
        assert set(prof.counts) <= {0, 1, 2, n - 2}
        fixed = sum(1 for i in range(1, n + 1) if rep(i) == i)
        assert prof.cases.get("i", 0) == fixed
        assert sum(prof.cases.values()) == n * n


@given(perms(min_n=3, max_n=8))
def test_profile_matches_direct_count(phi):
    M = build(phi.n, phi)
    n = phi.n
    prof = intersection_profile(M)
    for (i, j), case in prof.pair_case.items():
        size = len(meet(M, f"A{i}", f"B{j}"))
        assert size == {"i": 0, "ii": 1, "iii": 2}[case]


def test_blocks_through_points_examples():
    M = pair(4, "1 2 3 4")
    assert blocks_through_points(M, E("a1"), E("a2")) == 2
    assert blocks_through_points(M, E("a1"), E("b1")) == 0
    M = pair(5, "(1 2 3 4 5)")
    direct = sum(1 for b in M.block_ids() if {E("b1"), E("a2")} <= set(M.block_points(b)))
    assert blocks_through_points(M, E("b1"), E("a2")) == direct == 1
    with pytest.raises(AnalysisError):
        blocks_through_points(M, E("a1"), E("a1"))


@pytest.mark.parametrize("n", range(3, 9))
def test_point_pair_counts(n):
    for rep in conjugacy_class_reps(n):
        M = build(n, rep)
        for x, y in combinations(M.points(), 2):
            assert blocks_through_points(M, x, y) in {0, 1, 2, n - 2}


def test_cycle_path_examples():
    path = cycle_path(pair(4, "(1 2 3 4)"), [1, 2, 3, 4])
    assert [str(b) for b in path] == ["A1", "B1", "A2", "B2", "A3", "B3", "A4", "B4"]
    M = pair(5, "(1 2)(3 4 5)")
    path = cycle_path(M, [1, 2])
    assert [str(b) for b in path] == ["A1", "B1", "A2", "B2"]
    for s in range(4):
        assert len(meet(M, str(path[s]), str(path[(s + 1) % 4]))) == 1


def test_cycle_path_rejections():
    with pytest.raises(AnalysisError, match="fixed point"):
        cycle_path(pair(4, "1 2 3 4"), [1])
    with pytest.raises(AnalysisError, match="not a cycle"):
        cycle_path(pair(4, "(1 2 3 4)"), [1, 3, 2, 4])
    with pytest.raises(AnalysisError, match="not a cycle"):
        cycle_path(pair(4, "(1 2)(3 4)"), [1, 2, 3])


@given(perms(min_n=3, max_n=8))
def test_every_cycle_gives_a_path(phi):
    M = build(phi.n, phi)
    for c in phi.cycles():
        if len(c) > 1:
            assert len(cycle_path(M, list(c))) == 2 * len(c)


def test_isomorphic_examples():
    M1, M2 = pair(4, "(1 2 3)(4)"), pair(4, "(2 3 4)(1)")
    f = isomorphic(M1, M2)
    assert f is not None
    assert is_isomorphism(M1, M2, f.as_dict())
    assert isomorphic(pair(4, "1 2 3 4"), pair(4, "(1 2 3 4)")) is None
    assert isomorphic(pair(5, "(1 2)(3 4 5)"), pair(5, "(1 2 3)(4 5)")) is not None


@pytest.mark.parametrize("n", [4, 5])
def test_isomorphic_agrees_with_search(n):
    reps = conjugacy_class_reps(n)
    for p in reps:
        for q in reps:
            M1, M2 = build(n, p), build(n, q)
            assert (isomorphic(M1, M2) is None) == (find_isomorphisms(M1, M2, limit=1) == [])


def test_special_decomposition_examples():
    assert [X for X, _ in special_decompositions(pair(4, "1 2 3 4"))] == [(1, 2), (1, 3), (1, 4)]
    assert [X for X, _ in special_decompositions(pair(4, "(1 3)(2 4)"))] == [(1, 3)]
    for rep in conjugacy_class_reps(5):
        assert special_decompositions(build(5, rep)) == []
    assert special_decompositions(pair(3, "1 2 3")) == []


@pytest.mark.parametrize("text", ["1 2 3 4", "(3 4)", "(2 3 4)", "(1 2)(3 4)", "(1 2 3 4)", "(1 3)(2 4)", "(2 4)"])
def test_special_decompositions_are_the_oracle_extras(text):
    M = pair(4, text)
    found = enumerate_decompositions(M)
    assert {d.sides() for _, d in special_decompositions(M)} == {d.sides() for d in found[1:]}


@pytest.mark.parametrize("n", [5, 6])
def test_decomposition_unique_beyond_four(n):
    for rep in conjugacy_class_reps(n):
        assert len(enumerate_decompositions(build(n, rep))) == 1


def test_subpair_sets_examples():
    assert subpair_sets(pair(5, "(1 2)(3 4 5)"), 3) == [(1, 2)]
    assert subpair_sets(pair(5, "(1 2 3 4 5)"), 3) == []
    assert len(subpair_sets(pair(6, "1 2 3 4 5 6"), 4)) == 15
    for k in (2, 5):
        with pytest.raises(AnalysisError):
            subpair_sets(pair(5, "1 2 3 4 5"), k)


def test_extract_subpair_examples():
    res = extract_subpair(pair(5, "(1 2)(3 4 5)"), {1, 2})
    assert res.subpair == pair(3, "(1 2 3)")
    assert res.relabeling == {3: 1, 4: 2, 5: 3}
    assert extract_subpair(pair(6, "1 2 3 4 5 6"), {5, 6}).subpair == pair(4, "1 2 3 4")
    with pytest.raises(AnalysisError, match="not invariant"):
        extract_subpair(pair(5, "(1 2 3 4 5)"), {1, 2})
    with pytest.raises(AnalysisError, match="k=2"):
        extract_subpair(pair(5, "1 2 3 4 5"), {1, 2, 3})


@given(perms(min_n=4, max_n=9))
@settings(max_examples=40)
def test_extracted_subpairs_recognized(phi):
    M = build(phi.n, phi)
    for k in range(3, phi.n):
        for X in subpair_sets(M, k)[:3]:
            res = extract_subpair(M, X)
            rest = sorted(len(c) for c in phi.cycles() if not set(c) & set(X))
            assert list(res.induced_perm.cycle_type()) == rest
            rec = recognize(RawStructure.from_pair(res.subpair))
            assert rec is not None and list(rec.cycle_type) == rest


@pytest.mark.parametrize("n", [4, 5])
def test_subpair_existence_matches_below_six(n):
    for rep in conjugacy_class_reps(n):
        M = build(n, rep)
        for k in range(3, n):
            assert bool(find_subpairs(M, k, first_only=True)) == bool(invariant_subsets(rep, n - k))


@pytest.mark.parametrize("text", ["1 2 3 4 5 6", "(5 6)", "(4 5 6)", "(3 4)(5 6)", "(2 3)(4 5 6)", "(1 2 3)(4 5 6)"])
def test_subpair_existence_matches_at_six(text):
    M = pair(6, text)
    for k in range(3, 6):
        assert bool(find_subpairs(M, k, first_only=True)) == bool(invariant_subsets(M.phi, 6 - k))


@pytest.mark.parametrize("text", ["(3 4 5 6)", "(1 2)(3 4)(5 6)", "(1 2)(3 4 5 6)"])
def test_three_subpairs_without_invariant_three_set(text):
    M = pair(6, text)
    assert invariant_subsets(M.phi, 3) == []
    assert find_subpairs(M, 3, first_only=True)
    for k in (4, 5):
        assert bool(find_subpairs(M, k, first_only=True)) == bool(invariant_subsets(M.phi, 6 - k))


def test_recognize_examples():
    rec = recognize(RawStructure.from_pair(pair(4, "(1 2 3 4)")))
    assert rec.cycle_type == (4,)
    M = pair(4, "1 2 3 4")
    raw = RawStructure.from_pair(M)
    names = raw.points[:]
    random.Random(7).shuffle(names)
    rename = dict(zip(raw.points, names))
    shuffled = RawStructure(sorted(names), [[rename[p] for p in b] for b in raw.blocks])
    assert recognize(shuffled).cycle_type == (1, 1, 1, 1)
    fano = RawStructure(
        [str(i) for i in range(7)],
        [[str(p) for p in line] for line in [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]],
    )
    assert recognize(fano) is None


def test_recognize_labels_are_consistent():
    M = pair(5, "(1 2)(3 4 5)")
    raw = RawStructure.from_pair(M)
    rec = recognize(raw)
    N = build(rec.n, rec.phi)
    for pos, block in enumerate(raw.blocks):
        target = rec.block_labels[pos]
        assert sorted(rec.point_labels[p] for p in block) == sorted(N.block_points(target))


def test_raw_structure_json():
    raw = RawStructure.from_json(json.dumps({"points": ["x", "y"], "blocks": [["x"]]}))
    assert raw.masks() == [1]
    with pytest.raises(ValueError):
        RawStructure.from_json(json.dumps({"points": ["x"]}))
    with pytest.raises(ValueError):
        RawStructure(["x"], [["z"]]).masks()
