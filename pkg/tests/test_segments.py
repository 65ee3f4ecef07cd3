from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import act, orbit, partitions_for, residual_count, residual_segments, segment_from_parts, weyl_group
from residua.dynkin import Partition, ResidualSegment, distinguished_partitions, partition_to_segment
from residua.rootsys import HalfInt, Parameter, ResiduaError, RootSystemSpec
from residua.segments import (
    CuspidalString,
    JumpsSet,
    LinearSegment,
    extract_jump_pair,
    find_mergeable,
    insert_segments,
    is_residual_point,
    is_residual_vector,
    jordan_of,
    jumps_of,
    linked,
    merge,
    residual_defect,
    segment_from_jumps,
    symmetric_extractions,
)

B14 = ResidualSegment.of("B", Parameter.parse("54433222111100"))


def seg(kind: str, text: str) -> ResidualSegment:
    return ResidualSegment(kind, Parameter.parse(text))


# -- linear segments and strings ---------------------------------------------------

def test_linear_segment_basics():
    s = LinearSegment(3, -1)
    assert s.length == 5
    assert s.values() == Parameter.parse("3,2,1,0,-1")
    assert s.midpoint == 1
    assert LinearSegment.parse("(5/2,-1/2)") == LinearSegment(HalfInt("5/2"), HalfInt("-1/2"))
    with pytest.raises(ResiduaError):
        LinearSegment(1, 2)
    with pytest.raises(ResiduaError):
        LinearSegment(HalfInt("1/2"), 0)


def test_cuspidal_string_parse_and_render():
    s = CuspidalString.parse("(5,-4)|[2110]@B")
    assert s.linear == (LinearSegment(5, -4),)
    assert s.tail == seg("B", "2110")
    assert s.rank == 14
    assert str(s) == "(5,-4)|[2110]@B"
    assert s.flatten() == Parameter.parse("5,4,3,2,1,0,-1,-2,-3,-4,2,1,1,0")


@pytest.mark.parametrize("text", ["(5,-4)|[2110]", "(5,-4)|2110@B", "(1,0)|[1/2]@C", "[2,1,0]@A"])
def test_cuspidal_string_rejects_malformed_input(text):
    with pytest.raises(ResiduaError):
        CuspidalString.parse(text)


def test_jumps_set_invariants():
    assert list(JumpsSet((5, 3, 0))) == [5, 3, 0]
    with pytest.raises(ResiduaError):
        JumpsSet((3, 3))
    with pytest.raises(ResiduaError):
        JumpsSet((HalfInt("3/2"), 1))
    with pytest.raises(ResiduaError):
        JumpsSet((1, -1))


# -- jumps and Jordan partitions -------------------------------------------------------

def test_jumps_examples():
    assert list(jumps_of(seg("B", "543322110"))) == [5, 3, 0]
    assert list(jumps_of(seg("D", "765432110"))) == [7, 1]
    c9 = ResidualSegment.of("C", [HalfInt.from_doubled(d) for d in range(17, 0, -2)])
    assert list(jumps_of(c9)) == [HalfInt("17/2")]
    assert list(jumps_of(B14)) == [5, 4, 2, 1, 0]


def test_jordan_examples():
    assert jordan_of(B14).parts == (11, 9, 5, 3, 1)
    assert jordan_of(seg("D", "432211100")).parts == (9, 5, 3, 1)
    assert jordan_of(seg("B", "321")).parts == (7,)


def test_jumps_need_a_classical_kind():
    with pytest.raises(ResiduaError):
        jumps_of(ResidualSegment.of("A", [1, 0, -1]))


@pytest.mark.parametrize("kind", "BCD")
@pytest.mark.parametrize("rank", range(2, 13))
def test_jumps_are_half_the_parts_minus_one(kind, rank):
    for p in partitions_for(kind, rank):
        s = partition_to_segment(Partition(p, kind))
        assert [j.as_fraction() for j in jumps_of(s)] == [Fraction(q - 1, 2) for q in p]
        assert jordan_of(s).parts == p
        assert segment_from_jumps(kind, jumps_of(s)) == s


@pytest.mark.parametrize("kind", "BCD")
@pytest.mark.parametrize("rank", range(2, 11))
def test_jump_counts(kind, rank):
    for p in distinguished_partitions(RootSystemSpec(kind, rank)):
        s = partition_to_segment(p)
        counts = s.multiplicities()
        if kind == "B":
            expected = 2 * counts.get(HalfInt(0), 0) + 1
        elif kind == "C":
            expected = counts.get(HalfInt("1/2"), 0)
        else:
            expected = 2 * counts.get(HalfInt(0), 0)
        assert len(jumps_of(s)) == expected


# -- residual points ---------------------------------------------------------------------

@pytest.mark.parametrize(
    "kind,rank,vector,expected",
    [
        ("B", 3, "3,2,1", True),
        ("B", 3, "1,0,0", False),
        ("D", 3, "2,1,0", True),
        ("A", 2, "2,1,0", True),
        ("A", 1, "2,0", False),
        ("C", 2, "3/2,1/2", True),
    ],
)
def test_residual_point_examples(kind, rank, vector, expected):
    assert is_residual_point(RootSystemSpec(kind, rank), None, Parameter.parse(vector)) is expected


def test_residual_counts_of_examples():
    assert residual_defect(RootSystemSpec("B", 3), 1, Parameter.parse("3,2,1")) == 3
    assert residual_defect(RootSystemSpec("B", 3), 1, Parameter.parse("1,0,0")) == -3


def test_residual_point_dimension_check():
    with pytest.raises(ResiduaError):
        is_residual_point(RootSystemSpec("B", 3), None, Parameter.parse("3,2"))


def test_rank_zero_vector():
    assert is_residual_vector("B", Parameter(()))
    assert not is_residual_vector("B", Parameter.parse("0"))


@pytest.mark.parametrize("kind", "ABCD")
@given(data=st.data())
def test_residual_count_matches_root_enumeration(kind, data):
    rank = data.draw(st.integers(2, 6))
    dim = rank + 1 if kind == "A" else rank
    doubled = data.draw(st.lists(st.integers(-8, 8), min_size=dim, max_size=dim))
    if kind != "A":
        parity = 1 if kind == "C" else 0
        doubled = [2 * (x // 2) + parity for x in doubled]
    lam = Parameter.from_doubled(doubled)
    spec = RootSystemSpec(kind, rank)
    want = residual_count(kind, [x.as_fraction() for x in lam])
    assert residual_defect(spec, None, lam) == want
    assert is_residual_point(spec, None, lam) == (want == rank)


@pytest.mark.parametrize("kind", "BCD")
@pytest.mark.parametrize("rank", range(2, 6))
def test_dominant_residual_points_are_the_segments(kind, rank):
    spec = RootSystemSpec(kind, rank)
    offset = 1 if kind == "C" else 0
    expected = residual_segments(kind, rank)
    from itertools import combinations_with_replacement

    for combo in combinations_with_replacement(range(rank, -1, -1), rank):
        lam = tuple(Fraction(2 * x + offset, 2) for x in combo)
        assert is_residual_point(spec, None, Parameter(lam)) == (lam in expected)


@pytest.mark.parametrize("kind", "ABCD")
def test_residual_point_is_weyl_invariant_exhaustively(kind):
    rank = 4 if kind != "A" else 3
    spec = RootSystemSpec(kind, rank)
    for p in partitions_for(kind, rank):
        base = segment_from_parts(kind, p)
        for perm, signs in weyl_group(kind, len(base)):
            assert is_residual_point(spec, None, Parameter(act(perm, signs, base)))
    near_miss = (Fraction(2), Fraction(1), Fraction(1), Fraction(0), Fraction(0))[: spec.dim]
    values = {is_residual_point(spec, None, Parameter(v)) for v in orbit(kind, near_miss)}
    assert len(values) == 1


@pytest.mark.parametrize("kind", "ABCD")
def test_residual_point_is_weyl_invariant_sampled(kind):
    rng = random.Random(7)
    for _ in range(300):
        rank = rng.randint(2, 9)
        spec = RootSystemSpec(kind, rank)
        dim = spec.dim
        offset = 1 if kind == "C" else 0
        doubled = [2 * rng.randint(-rank, rank) + offset for _ in range(dim)]
        perm = list(range(dim))
        rng.shuffle(perm)
        signs = [1] * dim if kind == "A" else [rng.choice((1, -1)) for _ in range(dim)]
        if kind == "D" and signs.count(-1) % 2:
            signs[0] = -signs[0]
        lam = [Fraction(x, 2) for x in doubled]
        moved = act(perm, signs, lam)
        assert is_residual_point(spec, None, Parameter(lam)) == is_residual_point(spec, None, Parameter(moved))


# -- extraction and merging -------------------------------------------------------------------

def test_extract_b14_first_pair():
    linear, rest = extract_jump_pair(B14, 1)
    assert linear == LinearSegment(5, -4)
    assert rest == seg("B", "2110")
    assert jordan_of(rest).parts == (5, 3, 1)


def test_extract_needs_two_jumps():
    with pytest.raises(ResiduaError):
        extract_jump_pair(seg("B", "321"), 1)
    with pytest.raises(ResiduaError):
        extract_jump_pair(B14, 5)


def test_extract_d9_leaves_the_empty_segment():
    linear, rest = extract_jump_pair(seg("D", "765432110"), 1)
    assert linear == LinearSegment(7, -1)
    assert len(rest.values) == 0


@pytest.mark.parametrize("kind", "BCD")
@pytest.mark.parametrize("rank", range(2, 10))
def test_extraction_then_merge_restores_the_segment(kind, rank):
    for p in distinguished_partitions(RootSystemSpec(kind, rank)):
        s = partition_to_segment(p)
        for i in range(1, len(jumps_of(s))):
            linear, rest = extract_jump_pair(s, i)
            assert linear.a == jumps_of(s)[i - 1] and linear.b == -jumps_of(s)[i]
            assert sorted(abs(x) for x in linear.values().concat(rest.values)) == sorted(abs(x) for x in s.values)
            assert find_mergeable([linear], rest, s) == 0
            assert merge(rest, linear) == s


@pytest.mark.parametrize("kind", "BCD")
@pytest.mark.parametrize("rank", range(2, 9))
def test_no_symmetric_segment_can_be_extracted(kind, rank):
    for p in distinguished_partitions(RootSystemSpec(kind, rank)):
        assert symmetric_extractions(partition_to_segment(p)) == []


def test_find_mergeable_inverse_of_extraction():
    assert find_mergeable([LinearSegment(5, -4)], seg("B", "2110"), B14) == 0


def test_find_mergeable_prefers_zero_free_segments():
    segs = [LinearSegment(0, -4), LinearSegment(2, 2)]
    assert find_mergeable(segs, seg("B", "1"), seg("B", "4322110")) == 1


def test_find_mergeable_prefers_the_longer_of_nested_zero_free_segments():
    segs = [LinearSegment(3, 2), LinearSegment(4, 1)]
    tail = seg("B", "2110")
    assert find_mergeable(segs, tail, seg("B", "4332221110")) == 1


def test_find_mergeable_errors():
    with pytest.raises(ResiduaError, match="not jointly residual"):
        find_mergeable([LinearSegment(5, -4)], seg("B", "2110"), seg("B", "65433222111100"))
    with pytest.raises(ResiduaError, match="unlinked"):
        find_mergeable([LinearSegment(3, 1), LinearSegment(2, 0)], seg("B", "1"), B14)


def _unlinked_pairs(kind: str, top: int):
    offset = 1 if kind == "C" else 0
    values = [Fraction(2 * x + offset, 2) for x in range(-top, top + 1)]
    segs = [LinearSegment(HalfInt(a), HalfInt(b)) for a in values for b in values if a >= b]
    for i, s1 in enumerate(segs):
        for s2 in segs[i:]:
            if not linked(s1, s2):
                yield s1, s2


@pytest.mark.parametrize("kind", "BCD")
def test_find_mergeable_result_is_valid(kind):
    checked = 0
    for rank in range(0, 4):
        tails = [partition_to_segment(p) for p in distinguished_partitions(RootSystemSpec(kind, rank))] if rank >= (2 if kind == "D" else 1) else [ResidualSegment.of(kind, [])]
        for tail in tails:
            for s1, s2 in _unlinked_pairs(kind, 3):
                merged = insert_segments(tail, [s1, s2])
                if len(merged) > 8:
                    continue
                try:
                    target = ResidualSegment(kind, merged)
                except ResiduaError:
                    continue
                segs = [s1, s2]
                j = find_mergeable(segs, tail, target)
                checked += 1
                assert merge(tail, segs[j]) is not None
                zero_free = [s for s in segs if not (s.b <= 0 <= s.a) and merge(tail, s) is not None]
                if zero_free:
                    assert not (segs[j].b <= 0 <= segs[j].a)
    assert checked > 10
