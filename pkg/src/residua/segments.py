"""Linear segments, jumps, cuspidal strings and the residual-point count."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .dynkin import (
    Partition,
    ResidualSegment,
    _jumps_doubled,
    format_values,
    is_residual_segment,
)
from .rootsys import HalfInt, Parameter, ResiduaError, RootSystemSpec, Scalar, half


@dataclass(frozen=True, order=True)
class LinearSegment:
    """The string a, a-1, ..., b."""

    a: HalfInt
    b: HalfInt

    def __post_init__(self) -> None:
        a, b = half(self.a), half(self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        gap = a.doubled - b.doubled
        if gap < 0 or gap % 2:
            raise ResiduaError("a - b must be a nonnegative integer")

    @classmethod
    def parse(cls, text: str) -> LinearSegment:
        items = [t for t in text.strip().strip("()").split(",") if t.strip()]
        if len(items) != 2:
            raise ResiduaError(f"cannot parse linear segment {text!r}")
        return cls(HalfInt(items[0]), HalfInt(items[1]))

    @property
    def length(self) -> int:
        return (self.a.doubled - self.b.doubled) // 2 + 1

    @property
    def midpoint_doubled(self) -> int:
        """Twice the midpoint (a + b) / 2, i.e. a + b in doubled units halved."""
        return (self.a.doubled + self.b.doubled) // 2

    @property
    def midpoint(self):
        from fractions import Fraction

        return Fraction(self.a.doubled + self.b.doubled, 4)

    def values(self) -> Parameter:
        return Parameter.from_doubled(range(self.a.doubled, self.b.doubled - 1, -2))

    def contains(self, other: LinearSegment) -> bool:
        return self.a >= other.a and self.b <= other.b

    @property
    def is_integral(self) -> bool:
        return self.a.is_integer

    def __str__(self) -> str:
        return f"({self.a},{self.b})"


@dataclass(frozen=True)
class JumpsSet:
    jumps: tuple[HalfInt, ...]

    def __post_init__(self) -> None:
        jumps = tuple(half(j) for j in self.jumps)
        object.__setattr__(self, "jumps", jumps)
        if any(j < 0 for j in jumps):
            raise ResiduaError("jumps are nonnegative")
        if any(jumps[i] <= jumps[i + 1] for i in range(len(jumps) - 1)):
            raise ResiduaError("jumps are strictly decreasing")
        if len({j.is_integer for j in jumps}) > 1:
            raise ResiduaError("jumps share one parity class")

    def __len__(self) -> int:
        return len(self.jumps)

    def __iter__(self):
        return iter(self.jumps)

    def __getitem__(self, i):
        return self.jumps[i]

    def __str__(self) -> str:
        return "{" + ",".join(str(j) for j in self.jumps) + "}"


@dataclass(frozen=True)
class CuspidalString:
    """Linear segments followed by a residual segment."""

    linear: tuple[LinearSegment, ...]
    tail: ResidualSegment

    def __post_init__(self) -> None:
        linear = tuple(self.linear)
        object.__setattr__(self, "linear", linear)
        if self.tail.kind not in ("B", "C", "D"):
            raise ResiduaError("cuspidal strings need a tail of kind B, C or D")
        integral = self.tail.kind != "C"
        for seg in linear:
            if seg.is_integral != integral:
                raise ResiduaError("linear entries must match the parity of the tail")

    @property
    def kind(self) -> str:
        return self.tail.kind

    @property
    def rank(self) -> int:
        return len(self.tail.values) + sum(s.length for s in self.linear)

    @property
    def spec(self) -> RootSystemSpec:
        return RootSystemSpec(self.kind, self.rank)

    def flatten(self) -> Parameter:
        out: list[HalfInt] = []
        for seg in self.linear:
            out.extend(seg.values())
        out.extend(self.tail.values)
        return Parameter(out)

    @classmethod
    def parse(cls, text: str) -> CuspidalString:
        """Parse "(a,b)|(a2,b2)|[segment]@KIND"."""
        body, sep, kind = text.strip().rpartition("@")
        if not sep:
            raise ResiduaError("cuspidal string needs a trailing @KIND")
        pieces = [p.strip() for p in body.split("|")]
        if not pieces or not pieces[-1].startswith("["):
            raise ResiduaError("cuspidal string needs a [segment] tail")
        linear = tuple(LinearSegment.parse(p) for p in pieces[:-1])
        tail = ResidualSegment(kind.strip(), Parameter.parse(pieces[-1]))
        return cls(linear, tail)

    def __str__(self) -> str:
        parts = [str(s) for s in self.linear]
        parts.append("[" + format_values(self.tail.values) + "]")
        return "|".join(parts) + "@" + self.kind


# -- jumps and Jordan partitions ----------------------------------------------

def jumps_of(s: ResidualSegment) -> JumpsSet:
    if s.kind not in ("B", "C", "D"):
        raise ResiduaError("jumps are defined for kinds B, C and D")
    return JumpsSet(tuple(HalfInt.from_doubled(j) for j in _jumps_doubled(s.kind, s.values.doubled())))


def jordan_of(s: ResidualSegment) -> Partition:
    if s.kind == "A":
        return Partition((len(s.values),), "A")
    return Partition(tuple(j.doubled + 1 for j in jumps_of(s)), s.kind)


def segment_from_jumps(kind: str, jumps: Iterable[Scalar]) -> ResidualSegment:
    from .dynkin import partition_to_segment

    parts = tuple(half(j).doubled + 1 for j in jumps)
    return partition_to_segment(Partition(parts, kind))


# -- residual points ----------------------------------------------------------

DEFAULT_EPSILON = {"B": HalfInt(1), "C": HalfInt("1/2")}


def _residual_count(kind: str, eps_doubled: int, doubled: Sequence[int]) -> int:
    plus = kind != "A"
    coord = kind in ("B", "C")
    count = 0
    n = len(doubled)
    for j in range(n):
        x = doubled[j]
        for k in range(j + 1, n):
            y = doubled[k]
            diff = abs(x - y)
            if diff == 2:
                count += 1
            elif diff == 0:
                count -= 2
            if plus:
                tot = abs(x + y)
                if tot == 2:
                    count += 1
                elif tot == 0:
                    count -= 2
        if coord:
            if abs(x) == eps_doubled:
                count += 1
            elif x == 0:
                count -= 2
    return count


def residual_defect(spec: RootSystemSpec, epsilon: Scalar | None, lam: Sequence[Scalar]) -> int:
    """Signed count of roots with pairing +-1 minus twice those with pairing 0."""
    if len(lam) != spec.dim:
        raise ResiduaError("dimension mismatch")
    eps = half(epsilon) if epsilon is not None else DEFAULT_EPSILON.get(spec.kind, HalfInt(1))
    return _residual_count(spec.kind, eps.doubled, [half(v).doubled for v in lam])


def is_residual_point(spec: RootSystemSpec, epsilon: Scalar | None, lam: Sequence[Scalar]) -> bool:
    """Counting test for a residual point with all parameters equal to one.

    Pairs are counted up to sign, so the test is invariant under the Weyl
    group; on dominant vectors it reduces to counting differences and sums
    equal to 1.
    """
    return residual_defect(spec, epsilon, lam) == spec.rank


def is_residual_vector(kind: str, lam: Sequence[Scalar], epsilon: Scalar | None = None) -> bool:
    """Like :func:`is_residual_point` but also accepts the empty (rank 0) vector."""
    doubled = [half(v).doubled for v in lam]
    rank = len(doubled) - 1 if kind == "A" else len(doubled)
    if rank <= 0:
        return rank == 0
    eps = half(epsilon) if epsilon is not None else DEFAULT_EPSILON.get(kind, HalfInt(1))
    return _residual_count(kind, eps.doubled, doubled) == rank


# -- extraction and merging ---------------------------------------------------

def _abs_counter(values: Iterable[HalfInt]) -> Counter:
    return Counter(abs(v.doubled) for v in values)


def insert_segments(tail: ResidualSegment, segs: Iterable[LinearSegment]) -> Parameter:
    """Sorted absolute values of the tail together with the given segments."""
    values = [abs(v.doubled) for v in tail.values]
    for seg in segs:
        values.extend(abs(v.doubled) for v in seg.values())
    return Parameter.from_doubled(sorted(values, reverse=True))


def merge(tail: ResidualSegment, seg: LinearSegment) -> ResidualSegment | None:
    """Insert one segment into a residual segment; None when the result is not residual."""
    merged = insert_segments(tail, [seg])
    if not is_residual_segment(tail.kind, merged):
        return None
    return ResidualSegment(tail.kind, merged)


def remove_values(s: ResidualSegment, removed: Iterable[HalfInt]) -> Parameter | None:
    """Remove absolute values from the segment; None if they are not all present."""
    counts = _abs_counter(s.values)
    for v in removed:
        key = abs(v.doubled)
        if counts[key] == 0:
            return None
        counts[key] -= 1
    return Parameter.from_doubled(sorted(counts.elements(), reverse=True))


def extract_jump_pair(s: ResidualSegment, i: int) -> tuple[LinearSegment, ResidualSegment]:
    """Split off the linear segment (a_i, -a_{i+1}) built from consecutive jumps.

    ``i`` is 1-based, so ``i = 1`` uses the two largest jumps.
    """
    jumps = jumps_of(s)
    if i < 1 or i >= len(jumps):
        raise ResiduaError("no consecutive jumps a_i > a_(i+1) at this index")
    seg = LinearSegment(jumps[i - 1], -jumps[i])
    rest = remove_values(s, seg.values())
    if rest is None or not is_residual_segment(s.kind, rest):
        raise ResiduaError("extraction does not leave a residual segment")
    return seg, ResidualSegment(s.kind, rest)


def linked(s1: LinearSegment, s2: LinearSegment) -> bool:
    """Neither contains the other and the union is again a segment."""
    if (s1.a.doubled - s2.a.doubled) % 2:
        raise ResiduaError("segments of different parity classes")
    if s1.contains(s2) or s2.contains(s1):
        return False
    lo, hi = (s1, s2) if s1.a < s2.a else (s2, s1)
    return lo.a.doubled + 2 >= hi.b.doubled


def _contains_zero(seg: LinearSegment) -> bool:
    return seg.b.doubled <= 0 <= seg.a.doubled


def find_mergeable(
    segs: Sequence[LinearSegment], tail: ResidualSegment, target: ResidualSegment
) -> int:
    """Index of a segment that alone merges with ``tail`` into a residual segment.

    Zero-free segments are tried first, then longer segments before shorter
    ones, then by position.
    """
    for x in range(len(segs)):
        for y in range(x + 1, len(segs)):
            if linked(segs[x], segs[y]):
                raise ResiduaError("segments must be pairwise unlinked")
    if tail.kind != target.kind or insert_segments(tail, segs) != target.values:
        raise ResiduaError("not jointly residual")
    order = sorted(range(len(segs)), key=lambda j: (_contains_zero(segs[j]), -segs[j].length, j))
    for j in order:
        if merge(tail, segs[j]) is not None:
            return j
    raise ResiduaError("no single segment merges with the tail")


def symmetric_extractions(s: ResidualSegment) -> list[tuple[LinearSegment, Parameter]]:
    """All symmetric segments (a, -a) whose removal leaves a residual segment."""
    out = []
    start = 1 if s.kind == "C" else 0
    top = max((v.doubled for v in s.values), default=-1)
    for a2 in range(start, top + 1, 2):
        seg = LinearSegment(HalfInt.from_doubled(a2), HalfInt.from_doubled(-a2))
        rest = remove_values(s, seg.values())
        if rest is not None and is_residual_segment(s.kind, rest):
            out.append((seg, rest))
    return out
