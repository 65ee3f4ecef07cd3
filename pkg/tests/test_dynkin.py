from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import partitions_for, residual_segments, segment_from_parts, simple_roots_of, dot
from residua.dynkin import (
    Partition,
    ResidualSegment,
    WeightedDynkinDiagram,
    distinguished_partitions,
    format_values,
    is_residual_segment,
    partition_to_segment,
    satisfies_profile_relations,
    segment_to_wdd,
    wdd_to_segment,
)
from residua.rootsys import Parameter, ResiduaError, RootSystemSpec

B15_SEGMENT = (7, 6, 5, 4, 3, 3, 2, 2, 2, 1, 1, 1, 1, 0, 0)
B15_LABELS = (2, 2, 2, 2, 0, 2, 0, 0, 2, 0, 0, 0, 2, 0, 0)


def parts(kind: str, rank: int) -> list[tuple[int, ...]]:
    return [p.parts for p in distinguished_partitions(RootSystemSpec(kind, rank))]


def halves(*doubled: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(d, 2) for d in doubled)


def test_b9_partitions():
    got = parts("B", 9)
    for listed in [(19,), (15, 3, 1), (13, 5, 1), (11, 7, 1)]:
        assert listed in got
    # two more decompositions of 19 into distinct odd parts exist
    assert got == [(19,), (15, 3, 1), (13, 5, 1), (11, 7, 1), (11, 5, 3), (9, 7, 3)]


def test_c9_partitions():
    got = parts("C", 9)
    for listed in [(18,), (14, 4), (12, 4, 2), (16, 2), (8, 6, 4), (12, 6), (10, 8)]:
        assert listed in got
    assert (10, 6, 2) in got
    assert len(got) == 8


def test_d9_partitions():
    assert parts("D", 9) == [(17, 1), (15, 3), (13, 5), (11, 7), (9, 5, 3, 1)]


def test_type_a_has_a_single_partition():
    assert parts("A", 6) == [(7,)]


@pytest.mark.parametrize("kind", "ABCD")
@pytest.mark.parametrize("rank", range(2, 13))
def test_partition_counts_match_subset_enumeration(kind, rank):
    assert parts(kind, rank) == partitions_for(kind, rank)


def test_partition_validation():
    assert Partition((1, 3, 5), "B").parts == (5, 3, 1)
    with pytest.raises(ResiduaError):
        Partition((3, 3, 1), "B")
    with pytest.raises(ResiduaError):
        Partition((4, 1), "C")
    with pytest.raises(ResiduaError):
        Partition((5, 3, 1), "D")
    with pytest.raises(ResiduaError):
        Partition((3, 1), "A")


def test_partition_to_segment_examples():
    assert partition_to_segment(Partition((11, 9, 5, 3, 1), "B")).values == Parameter.parse("54433222111100")
    c9 = partition_to_segment(Partition((12, 4, 2), "C")).values
    assert tuple(x.as_fraction() for x in c9) == halves(11, 9, 7, 5, 3, 3, 1, 1, 1)
    assert partition_to_segment(Partition((15, 3), "D")).values == Parameter.parse("765432110")


def test_d9_segments():
    got = [str(partition_to_segment(Partition(p, "D"))) for p in parts("D", 9)]
    assert got == ["876543210", "765432110", "654322110", "543322110", "432211100"]


def test_c9_regular_segment():
    seg = partition_to_segment(Partition((18,), "C"))
    assert tuple(x.as_fraction() for x in seg.values) == halves(17, 15, 13, 11, 9, 7, 5, 3, 1)


@pytest.mark.parametrize("kind", "ABCD")
@pytest.mark.parametrize("rank", range(2, 11))
def test_segments_match_merged_symmetric_strings(kind, rank):
    for p in partitions_for(kind, rank):
        got = partition_to_segment(Partition(p, kind)).values
        assert tuple(x.as_fraction() for x in got) == segment_from_parts(kind, p)


@pytest.mark.parametrize("kind", "BCD")
@pytest.mark.parametrize("rank", range(2, 13))
def test_segments_satisfy_profile_relations(kind, rank):
    for p in distinguished_partitions(RootSystemSpec(kind, rank)):
        assert satisfies_profile_relations(kind, partition_to_segment(p).values)


@pytest.mark.parametrize("kind", "BCD")
@given(data=st.data())
def test_profile_relations_characterize_residual_segments(kind, data):
    rank = data.draw(st.integers(2, 7))
    offset = 1 if kind == "C" else 0
    doubled = data.draw(st.lists(st.integers(0, rank), min_size=rank, max_size=rank))
    values = tuple(sorted((Fraction(2 * x + offset, 2) for x in doubled), reverse=True))
    expected = values in residual_segments(kind, rank)
    assert satisfies_profile_relations(kind, values) == expected
    assert is_residual_segment(kind, values) == expected


def test_residual_segment_rejects_invalid_values():
    with pytest.raises(ResiduaError):
        ResidualSegment.of("B", [1, 0, 0])
    with pytest.raises(ResiduaError):
        ResidualSegment.of("C", [1, 0])
    assert ResidualSegment.of("B", [3, 2, 1]).rank == 3


def test_format_values_compact_and_comma_forms():
    assert format_values(Parameter.parse("54433")) == "54433"
    assert format_values(Parameter.parse("10,9,8")) == "10,9,8"
    assert format_values(Parameter.parse("3/2,1/2")) == "3/2,1/2"


# -- weighted Dynkin diagrams ------------------------------------------------------

def test_b15_diagram_both_directions():
    seg = ResidualSegment.of("B", B15_SEGMENT)
    assert segment_to_wdd(seg).labels == B15_LABELS
    assert wdd_to_segment(WeightedDynkinDiagram(RootSystemSpec("B", 15), B15_LABELS)) == seg


def test_small_diagrams():
    assert segment_to_wdd(ResidualSegment.of("B", [3, 2, 1])).labels == (2, 2, 2)
    assert segment_to_wdd(ResidualSegment.of("A", [2, 1, 0, -1])).labels == (2, 2, 2)


@pytest.mark.parametrize("n", range(1, 10))
def test_regular_c_diagram(n):
    seg = wdd_to_segment(WeightedDynkinDiagram(RootSystemSpec("C", n), (2,) * n))
    assert tuple(x.as_fraction() for x in seg.values) == halves(*range(2 * n - 1, 0, -2))


@pytest.mark.parametrize("kind", "ABCD")
@pytest.mark.parametrize("rank", range(2, 11))
def test_diagram_round_trip_and_labels(kind, rank):
    for p in partitions_for(kind, rank):
        seg = partition_to_segment(Partition(p, kind))
        w = segment_to_wdd(seg)
        assert wdd_to_segment(w) == seg
        values = segment_from_parts(kind, p)
        assert list(w.labels) == [2 * dot(values, a) for a in simple_roots_of(kind, rank)]


@pytest.mark.parametrize("kind", "BCD")
@pytest.mark.parametrize("rank", range(2, 8))
def test_distinguished_diagrams_are_exactly_the_segments(kind, rank):
    spec = RootSystemSpec(kind, rank)
    found = set()
    for bits in range(2 ** rank):
        labels = tuple(2 * ((bits >> k) & 1) for k in range(rank))
        w = WeightedDynkinDiagram(spec, labels)
        if w.is_distinguished():
            found.add(tuple(x.as_fraction() for x in wdd_to_segment(w).values))
    assert found == residual_segments(kind, rank)


def test_diagram_errors():
    with pytest.raises(ResiduaError):
        WeightedDynkinDiagram(RootSystemSpec("B", 3), (2, 1, 2))
    with pytest.raises(ResiduaError):
        WeightedDynkinDiagram(RootSystemSpec("B", 3), (2, 2))
    with pytest.raises(ResiduaError, match="inconsistent labels"):
        wdd_to_segment(WeightedDynkinDiagram(RootSystemSpec("B", 3), (0, 0, 2)))
