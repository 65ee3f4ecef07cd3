"""Distinguished partitions, residual segments and weighted Dynkin diagrams."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .rootsys import HalfInt, Parameter, ResiduaError, RootSystemSpec, Scalar, half


def _partition_rank(kind: str, parts: Sequence[int]) -> int:
    total = sum(parts)
    if kind == "A":
        if len(parts) != 1:
            raise ResiduaError("type A partitions have a single part")
        return total - 1
    if kind == "B":
        if any(p % 2 == 0 for p in parts) or total % 2 == 0:
            raise ResiduaError("type B partitions need odd parts summing to 2d+1")
        return (total - 1) // 2
    if kind == "C":
        if any(p % 2 for p in parts):
            raise ResiduaError("type C partitions need even parts")
        return total // 2
    if any(p % 2 == 0 for p in parts) or len(parts) % 2:
        raise ResiduaError("type D partitions need an even number of odd parts")
    return total // 2


@dataclass(frozen=True)
class Partition:
    """A partition into distinct parts attached to a distinguished orbit."""

    parts: tuple[int, ...]
    kind: str

    def __post_init__(self) -> None:
        parts = tuple(sorted((int(p) for p in self.parts), reverse=True))
        object.__setattr__(self, "parts", parts)
        if any(p <= 0 for p in parts):
            raise ResiduaError("partition parts must be positive")
        if len(set(parts)) != len(parts):
            raise ResiduaError("partition parts must be distinct")
        _partition_rank(self.kind, parts)

    @property
    def rank(self) -> int:
        return _partition_rank(self.kind, self.parts)

    def __str__(self) -> str:
        return "{" + ",".join(str(p) for p in self.parts) + "}"


def _distinct_parts(total: int, allowed: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Partitions of ``total`` into distinct parts from ``allowed``, decreasing lex order."""
    allowed = sorted((p for p in allowed if p <= total), reverse=True)

    def rec(rest: int, start: int) -> Iterator[tuple[int, ...]]:
        if rest == 0:
            yield ()
            return
        for k in range(start, len(allowed)):
            p = allowed[k]
            if p <= rest:
                for tail in rec(rest - p, k + 1):
                    yield (p,) + tail

    yield from rec(total, 0)


def distinguished_partitions(spec: RootSystemSpec) -> list[Partition]:
    n, kind = spec.rank, spec.kind
    if kind == "A":
        return [Partition((n + 1,), "A")]
    if kind == "B":
        gen = _distinct_parts(2 * n + 1, range(1, 2 * n + 2, 2))
    elif kind == "C":
        gen = _distinct_parts(2 * n, range(2, 2 * n + 1, 2))
    else:
        gen = (p for p in _distinct_parts(2 * n, range(1, 2 * n, 2)) if len(p) % 2 == 0)
    return [Partition(p, kind) for p in gen]


# -- doubled symmetric strings ------------------------------------------------

def _symmetric_multiplicities(kind: str, doubled: Sequence[int]) -> Counter:
    """Multiplicities (keyed by doubled value) of the symmetric string of a segment."""
    mult: Counter = Counter()
    for v in doubled:
        mult[v] += 1
        mult[-v] += 1
    if kind == "B":
        mult[0] += 1
    return mult


def _jumps_doubled(kind: str, doubled: Sequence[int]) -> list[int]:
    mult = _symmetric_multiplicities(kind, doubled)
    bottom = 1 if kind == "C" else 0
    count = mult[bottom]
    present = sorted((v for v in mult if v >= bottom and mult[v] > 0), reverse=True)
    jumps = []
    for i in range(1, count + 1):
        jumps.append(next(v for v in present if mult[v] >= i))
    return jumps


def _segment_from_parts_doubled(kind: str, parts: Sequence[int]) -> list[int]:
    """Nonnegative half of the merged symmetric strings, as doubled values."""
    merged: list[int] = []
    for p in parts:
        top = p - 1  # doubled value of a = (p - 1) / 2
        merged.extend(range(top, -top - 1, -2))
    merged.sort(reverse=True)
    if kind == "A":
        return merged
    if kind == "B":
        rank = (len(merged) - 1) // 2
    else:
        rank = len(merged) // 2
    return merged[:rank]


def _check_values(kind: str, doubled: Sequence[int]) -> None:
    if kind == "A":
        if not doubled:
            raise ResiduaError("type A segments are nonempty")
        if any(doubled[i] - doubled[i + 1] != 2 for i in range(len(doubled) - 1)):
            raise ResiduaError("type A segments decrease by exactly one")
        return
    if any(doubled[i] < doubled[i + 1] for i in range(len(doubled) - 1)):
        raise ResiduaError("residual segments are weakly decreasing")
    if any(v < 0 for v in doubled):
        raise ResiduaError("residual segments have nonnegative entries")
    if kind == "C":
        if any(v % 2 == 0 for v in doubled):
            raise ResiduaError("type C segments consist of half-integers")
    elif any(v % 2 for v in doubled):
        raise ResiduaError(f"type {kind} segments consist of integers")
    jumps = _jumps_doubled(kind, doubled)
    if len(set(jumps)) != len(jumps):
        raise ResiduaError("multiplicities jump by more than one")
    parts = [j + 1 for j in jumps]
    if kind == "D" and len(parts) % 2:
        raise ResiduaError("type D segments need an even number of jumps")
    if _segment_from_parts_doubled(kind, parts) != list(doubled):
        raise ResiduaError("multiplicity profile is not residual")


def is_residual_segment(kind: str, values: Iterable[Scalar]) -> bool:
    try:
        _check_values(kind, [half(v).doubled for v in values])
    except ResiduaError:
        return False
    return True


@dataclass(frozen=True)
class ResidualSegment:
    """Coordinates of a dominant residual point.

    For kinds B, C and D the values are the weakly decreasing nonnegative
    string; the empty string is the rank-0 segment.  For kind A it is a
    strictly decreasing run with step one.
    """

    kind: str
    values: Parameter

    def __post_init__(self) -> None:
        if self.kind not in ("A", "B", "C", "D"):
            raise ResiduaError(f"unknown kind {self.kind!r}")
        values = Parameter(self.values)
        object.__setattr__(self, "values", values)
        _check_values(self.kind, values.doubled())

    @classmethod
    def of(cls, kind: str, values: Iterable[Scalar]) -> ResidualSegment:
        return cls(kind, Parameter(values))

    @property
    def rank(self) -> int:
        return len(self.values) - 1 if self.kind == "A" else len(self.values)

    @property
    def spec(self) -> RootSystemSpec:
        return RootSystemSpec(self.kind, self.rank)

    def multiplicities(self) -> dict[HalfInt, int]:
        """Multiplicity profile, keyed by value in decreasing order."""
        counts = Counter(self.values)
        return {v: counts[v] for v in sorted(counts, reverse=True)}

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __str__(self) -> str:
        return format_values(self.values)


def format_values(values: Sequence[HalfInt]) -> str:
    """Compact digit string when every entry is an integer in 0..9, else a comma list."""
    if values and all(v.is_integer and 0 <= v.doubled <= 18 for v in values):
        return "".join(str(v) for v in values)
    return ",".join(str(v) for v in values)


def satisfies_profile_relations(kind: str, values: Sequence[Scalar]) -> bool:
    """Check the multiplicity relations of a residual segment directly.

    Reading the values downward from the top value ``m``: every value from
    ``m`` down to the bottom (1 for B/D, 1/2 for C) occurs, ``m`` occurs
    once, each step down raises the multiplicity by 0 or 1, and the number
    of zeros is ``floor(n_1 / 2)`` for B and ``ceil(n_1 / 2)`` for D.
    """
    doubled = [half(v).doubled for v in values]
    if any(v < 0 for v in doubled) or doubled != sorted(doubled, reverse=True):
        return False
    if kind == "C" and any(v % 2 == 0 for v in doubled):
        return False
    if kind in ("B", "D") and any(v % 2 for v in doubled):
        return False
    if not doubled:
        return True
    counts = Counter(doubled)
    bottom = 1 if kind == "C" else 2
    top = doubled[0]
    if top < bottom:
        return False
    ladder = [counts[v] for v in range(top, bottom - 1, -2)]
    if ladder[0] != 1 or any(c == 0 for c in ladder):
        return False
    if any(b - a not in (0, 1) for a, b in zip(ladder, ladder[1:])):
        return False
    if kind == "C":
        return True
    n1 = ladder[-1]
    zeros = counts[0]
    return zeros == (n1 // 2 if kind == "B" else (n1 + 1) // 2)


def partition_to_segment(p: Partition) -> ResidualSegment:
    doubled = _segment_from_parts_doubled(p.kind, p.parts)
    return ResidualSegment(p.kind, Parameter.from_doubled(doubled))


# -- weighted Dynkin diagrams -------------------------------------------------

@dataclass(frozen=True)
class WeightedDynkinDiagram:
    spec: RootSystemSpec
    labels: tuple[int, ...]

    def __post_init__(self) -> None:
        labels = tuple(int(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        if len(labels) != self.spec.rank:
            raise ResiduaError("one label per simple root is required")
        if any(x not in (0, 2) for x in labels):
            raise ResiduaError("labels must be 0 or 2")

    def is_distinguished(self) -> bool:
        try:
            wdd_to_segment(self)
        except ResiduaError:
            return False
        return True

    def __str__(self) -> str:
        return "".join(str(x) for x in self.labels)


def segment_to_wdd(s: ResidualSegment) -> WeightedDynkinDiagram:
    """Labels 2 (nu, alpha_i) over the simple roots alpha_i of the segment's kind."""
    if not isinstance(s, ResidualSegment):
        s = ResidualSegment(*s)
    if s.rank < 1 or (s.kind == "D" and s.rank < 2):
        raise ResiduaError("no even diagram: rank too small")
    nu = s.values.doubled()
    n = len(nu)
    # nu holds doubled values, so 2 (nu, e_i - e_{i+1}) = nu[i] - nu[i+1]
    twice = [nu[i] - nu[i + 1] for i in range(n - 1)]
    if s.kind == "B":
        twice.append(nu[-1])
    elif s.kind == "C":
        twice.append(2 * nu[-1])
    elif s.kind == "D":
        twice.append(nu[-2] + nu[-1])
    labels = tuple(twice)
    if any(x not in (0, 2) for x in labels):
        raise ResiduaError("no even diagram")
    return WeightedDynkinDiagram(s.spec, labels)


def wdd_to_segment(w: WeightedDynkinDiagram) -> ResidualSegment:
    kind, n, labels = w.spec.kind, w.spec.rank, w.labels
    if kind == "A":
        nu = [0] * (n + 1)
        for i in range(n - 1, -1, -1):
            nu[i] = nu[i + 1] + labels[i]
        shift = (nu[0] + nu[-1]) // 2
        nu = [v - shift for v in nu]
    else:
        nu = [0] * n
        if kind == "B":
            nu[-1] = labels[-1]
        elif kind == "C":
            nu[-1] = labels[-1] // 2
        else:
            nu[-1] = (labels[-1] - labels[-2]) // 2
            nu[-2] = (labels[-1] + labels[-2]) // 2
        start = n - 3 if kind == "D" else n - 2
        for i in range(start, -1, -1):
            nu[i] = nu[i + 1] + labels[i]
    try:
        return ResidualSegment(kind, Parameter.from_doubled(nu))
    except ResiduaError as exc:
        raise ResiduaError(f"inconsistent labels: {exc}") from None
