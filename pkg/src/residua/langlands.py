"""Segment calculus and the order on Langlands parameters."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .rootsys import Parameter, ResiduaError, RootSystemSpec, Scalar, half
from .segments import LinearSegment, linked

__all__ = [
    "SegmentMultiset",
    "langlands_param",
    "leq_order",
    "linked",
    "minimize",
    "positive_partial_sums",
    "split_segment",
    "union_intersection",
]


def _sort_key(seg: LinearSegment) -> tuple[int, int, int]:
    return (-(seg.a.doubled + seg.b.doubled), -seg.length, -seg.a.doubled)


@dataclass(frozen=True)
class SegmentMultiset:
    """Linear segments ordered by decreasing midpoint, longer first on ties."""

    segs: tuple[LinearSegment, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "segs", tuple(sorted(self.segs, key=_sort_key)))

    @classmethod
    def of(cls, segs: Iterable[LinearSegment]) -> SegmentMultiset:
        return cls(tuple(segs))

    @classmethod
    def parse(cls, text: str) -> SegmentMultiset:
        pieces = [p for p in text.replace(" ", "").split("|") if p]
        return cls(tuple(LinearSegment.parse(p) for p in pieces))

    def __len__(self) -> int:
        return len(self.segs)

    def __iter__(self):
        return iter(self.segs)

    def __str__(self) -> str:
        return "|".join(str(s) for s in self.segs)


def union_intersection(
    s1: LinearSegment, s2: LinearSegment
) -> tuple[LinearSegment, LinearSegment | None]:
    """Union and intersection of linked segments; the intersection may be empty."""
    if not linked(s1, s2):
        raise ResiduaError("segments are not linked")
    hi, lo = (s1, s2) if s1.a > s2.a else (s2, s1)
    union = LinearSegment(hi.a, lo.b)
    if lo.a < hi.b:
        return union, None
    return union, LinearSegment(lo.a, hi.b)


def langlands_param(m: SegmentMultiset | Iterable[LinearSegment]) -> Parameter:
    if not isinstance(m, SegmentMultiset):
        m = SegmentMultiset.of(m)
    out: list[int] = []
    for seg in m:
        # doubled midpoint: 2 * (a + b) / 2 = (a.doubled + b.doubled) / 2
        out.extend([(seg.a.doubled + seg.b.doubled) // 2] * seg.length)
    return Parameter.from_doubled(out)


def _kind_of(spec: RootSystemSpec | str | None) -> str:
    if spec is None:
        return "B"
    if isinstance(spec, RootSystemSpec):
        return spec.kind
    return spec


def leq_order(spec: RootSystemSpec | str | None, mu: Sequence[Scalar], pi: Sequence[Scalar]) -> bool:
    """True iff pi - mu is a nonnegative combination of simple roots.

    For kinds B and C (and when no kind is given) this means nonnegative
    prefix sums.  Kind D replaces the last condition by
    ``S_{n-1} >= |d_n|``.  Kind A compares after normalizing each side to
    sum zero.
    """
    if len(mu) != len(pi):
        raise ResiduaError("length mismatch")
    kind = _kind_of(spec)
    d = [half(p).doubled - half(m).doubled for m, p in zip(mu, pi)]
    n = len(d)
    if n == 0:
        return True
    if kind == "A":
        total = sum(d)
        run = 0
        for k in range(1, n + 1):
            run += d[k - 1]
            if n * run - k * total < 0:
                return False
        return True
    if kind == "D" and n >= 2:
        run = 0
        for k in range(n - 1):
            run += d[k]
            if run < 0:
                return False
        return run >= abs(d[-1])
    run = 0
    for x in d:
        run += x
        if run < 0:
            return False
    return True


def _linked_pairs(segs: Sequence[LinearSegment]) -> list[tuple[int, int]]:
    pairs = []
    for i in range(len(segs)):
        for j in range(i + 1, len(segs)):
            if (segs[i].a.doubled - segs[j].a.doubled) % 2 == 0 and linked(segs[i], segs[j]):
                pairs.append((i, j))
    return pairs


def reduce_pair(segs: Sequence[LinearSegment], i: int, j: int) -> SegmentMultiset:
    """Replace the linked pair at positions i, j by union and intersection."""
    union, inter = union_intersection(segs[i], segs[j])
    rest = [s for k, s in enumerate(segs) if k not in (i, j)]
    rest.append(union)
    if inter is not None:
        rest.append(inter)
    return SegmentMultiset.of(rest)


def minimize(m: SegmentMultiset | Iterable[LinearSegment]) -> SegmentMultiset:
    """Apply union/intersection to linked pairs until the segments are pairwise unlinked."""
    if not isinstance(m, SegmentMultiset):
        m = SegmentMultiset.of(m)
    while True:
        pairs = _linked_pairs(m.segs)
        if not pairs:
            return m
        m = reduce_pair(m.segs, *pairs[0])


def split_segment(seg: LinearSegment, gamma: Scalar) -> tuple[LinearSegment, LinearSegment]:
    """Split (a, b) into (a, gamma) and (gamma - 1, b) for b < gamma <= a."""
    g = half(gamma)
    if not (seg.b < g <= seg.a) or (seg.a.doubled - g.doubled) % 2:
        raise ResiduaError("split point must lie strictly inside the segment")
    return LinearSegment(seg.a, g), LinearSegment(g - 1, seg.b)


def positive_partial_sums(lam: Sequence[Scalar]) -> bool:
    """True iff every proper prefix sum is strictly positive."""
    run = 0
    for v in list(lam)[:-1]:
        run += half(v).doubled
        if run <= 0:
            return False
    return True
