"""Weyl orbits of parameters, the family of one-segment cuspidal strings and C(1, .)."""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .dynkin import ResidualSegment, is_residual_segment
from .rootsys import (
    HalfInt,
    Parameter,
    ResiduaError,
    RootSystemSpec,
    Scalar,
    SignedPermutation,
    half,
    positive_roots,
)
from .segments import CuspidalString, LinearSegment, is_residual_vector

ORBIT_RANK_LIMIT = 8


def max_rank(default: int = ORBIT_RANK_LIMIT) -> int:
    """Enumeration guard, optionally lowered through RESIDUA_MAX_RANK."""
    raw = os.environ.get("RESIDUA_MAX_RANK")
    if raw is None:
        return default
    try:
        return min(default, int(raw))
    except ValueError:
        raise ResiduaError("RESIDUA_MAX_RANK must be an integer") from None


@dataclass(frozen=True)
class OrbitContext:
    spec: RootSystemSpec
    epsilon: HalfInt | None = None

    def __post_init__(self) -> None:
        eps = self.epsilon
        kind = self.spec.kind
        if eps is None:
            eps = {"B": HalfInt(1), "C": HalfInt("1/2")}.get(kind)
        else:
            eps = half(eps)
            expected = {"B": HalfInt(1), "C": HalfInt("1/2")}.get(kind)
            if expected is not None and eps != expected:
                raise ResiduaError(f"epsilon {eps} is inconsistent with kind {kind}")
        object.__setattr__(self, "epsilon", eps)

    @classmethod
    def of(cls, kind: str, rank: int) -> OrbitContext:
        return cls(RootSystemSpec(kind, rank))

    @property
    def kind(self) -> str:
        return self.spec.kind


def _check_len(ctx: OrbitContext, lam: Sequence[Scalar]) -> None:
    if len(lam) != ctx.spec.dim:
        raise ResiduaError("dimension mismatch")


def dominant_rep(ctx: OrbitContext, lam: Sequence[Scalar]) -> tuple[Parameter, SignedPermutation]:
    """Dominant vector in the orbit of ``lam`` and a Weyl element reaching it."""
    _check_len(ctx, lam)
    d = [half(v).doubled for v in lam]
    n = len(d)
    kind = ctx.kind
    if kind == "A":
        order = sorted(range(n), key=lambda j: (-d[j], j))
        perm = [0] * n
        for slot, j in enumerate(order):
            perm[j] = slot
        w = SignedPermutation(tuple(perm), (1,) * n)
        return Parameter.from_doubled(d[j] for j in order), w
    order = sorted(range(n), key=lambda j: (-abs(d[j]), j))
    perm = [0] * n
    for slot, j in enumerate(order):
        perm[j] = slot
    signs = [(-1 if d[j] < 0 else 1) for j in order]
    if kind == "D" and signs.count(-1) % 2:
        zero_slots = [slot for slot, j in enumerate(order) if d[j] == 0]
        if zero_slots:
            signs[zero_slots[0]] = -1 if signs[zero_slots[0]] == 1 else 1
        else:
            signs[-1] = -signs[-1]
    out = [signs[slot] * d[j] for slot, j in enumerate(order)]
    return Parameter.from_doubled(out), SignedPermutation(tuple(perm), tuple(signs))


def orbit_equivalent(ctx: OrbitContext, l1: Sequence[Scalar], l2: Sequence[Scalar]) -> bool:
    if len(l1) != len(l2):
        return False
    d1 = [half(v).doubled for v in l1]
    d2 = [half(v).doubled for v in l2]
    if ctx.kind == "A":
        return Counter(d1) == Counter(d2)
    if Counter(map(abs, d1)) != Counter(map(abs, d2)):
        return False
    if ctx.kind == "D" and 0 not in d1:
        neg1 = sum(1 for v in d1 if v < 0)
        neg2 = sum(1 for v in d2 if v < 0)
        return (neg1 - neg2) % 2 == 0
    return True


def _distinct_permutations(values: Sequence[int]):
    """Distinct permutations of a multiset, in lexicographic order."""
    items = sorted(values)
    n = len(items)
    while True:
        yield tuple(items)
        k = n - 2
        while k >= 0 and items[k] >= items[k + 1]:
            k -= 1
        if k < 0:
            return
        m = n - 1
        while items[m] <= items[k]:
            m -= 1
        items[k], items[m] = items[m], items[k]
        items[k + 1 :] = reversed(items[k + 1 :])


def enumerate_orbit(ctx: OrbitContext, lam: Sequence[Scalar]) -> list[Parameter]:
    """All elements of the Weyl orbit, sorted lexicographically."""
    _check_len(ctx, lam)
    if ctx.spec.rank > max_rank():
        raise ResiduaError(f"rank guard exceeded (rank {ctx.spec.rank} > {max_rank()})")
    d = [half(v).doubled for v in lam]
    if ctx.kind == "A":
        return [Parameter.from_doubled(p) for p in _distinct_permutations(d)]
    absd = [abs(v) for v in d]
    has_zero = 0 in absd
    neg_parity = sum(1 for v in d if v < 0) % 2
    seen = set()
    for p in _distinct_permutations(absd):
        nonzero = [i for i, v in enumerate(p) if v]
        for signs in product((1, -1), repeat=len(nonzero)):
            if ctx.kind == "D" and not has_zero and signs.count(-1) % 2 != neg_parity:
                continue
            vec = list(p)
            for i, s in zip(nonzero, signs):
                vec[i] = s * vec[i]
            seen.add(tuple(vec))
    return [Parameter.from_doubled(v) for v in sorted(seen)]


def _positive_roots_doubled(spec: RootSystemSpec) -> list[tuple[tuple[int, int], ...]]:
    out = []
    for r in positive_roots(spec):
        out.append(tuple((i, c.doubled // 2) for i, c in enumerate(r) if c))
    return out


def c1(ctx: OrbitContext, lam: Sequence[Scalar]) -> int:
    """Number of positive roots beta with <lam, beta-check> < 0."""
    _check_len(ctx, lam)
    d = [half(v).doubled for v in lam]
    return _c1_doubled(ctx.spec, d)


def _c1_doubled(spec: RootSystemSpec, d: Sequence[int]) -> int:
    n = len(d)
    count = 0
    for i in range(n):
        for j in range(i + 1, n):
            if d[i] < d[j]:
                count += 1
            if spec.kind != "A" and d[i] + d[j] < 0:
                count += 1
        if spec.kind in ("B", "C") and d[i] < 0:
            count += 1
    return count


def residual_dominant(ctx: OrbitContext, dominant: ResidualSegment | Sequence[Scalar]) -> ResidualSegment:
    values = dominant.values if isinstance(dominant, ResidualSegment) else Parameter(dominant)
    if not is_residual_segment(ctx.kind, values) or len(values) != ctx.spec.dim:
        raise ResiduaError("input is not a dominant residual segment of this kind and rank")
    return ResidualSegment(ctx.kind, values)


def one_segment_strings(ctx: OrbitContext, lam: Sequence[Scalar], *, strict: bool = True) -> list[CuspidalString]:
    """All strings (a, b)(tail) in the orbit of ``lam`` with a residual tail.

    With ``strict`` the linear part satisfies a > b; otherwise single-value
    segments a = b are allowed as well.
    """
    _check_len(ctx, lam)
    kind = ctx.kind
    if kind == "A":
        raise ResiduaError("cuspidal strings need kind B, C or D")
    d = [half(v).doubled for v in lam]
    counts = Counter(abs(v) for v in d)
    out = []
    top = max(counts) if counts else 0
    for a in range(top, -top - 1, -1):
        if (a - top) % 2:
            continue
        for b in range(a - (2 if strict else 0), -top - 1, -2):
            need = Counter(abs(v) for v in range(a, b - 1, -2))
            if any(counts[k] < c for k, c in need.items()):
                break
            rest = counts - need
            tail_d = sorted(rest.elements(), reverse=True)
            if not is_residual_segment(kind, Parameter.from_doubled(tail_d)):
                continue
            seg = LinearSegment(HalfInt.from_doubled(a), HalfInt.from_doubled(b))
            s = CuspidalString((seg,), ResidualSegment(kind, Parameter.from_doubled(tail_d)))
            if orbit_equivalent(ctx, s.flatten(), Parameter.from_doubled(d)):
                out.append(s)
    return out


def enumerate_L(ctx: OrbitContext, dominant: ResidualSegment | Sequence[Scalar]) -> list[CuspidalString]:
    """The dominant point followed by the strings (a, b)(tail) of its orbit.

    Only linear parts with a > b and a positive parameter a + b > 0 are
    kept; the left end a is then a jump of the dominant segment.  Strings
    are ordered by decreasing a, then decreasing b.
    """
    seg = residual_dominant(ctx, dominant)
    out = [CuspidalString((), seg)]
    for s in one_segment_strings(ctx, seg.values):
        lin = s.linear[0]
        if lin.a.doubled + lin.b.doubled > 0:
            out.append(s)
    return out


def c1_maximizers(ctx: OrbitContext, family: Sequence[CuspidalString]) -> list[CuspidalString]:
    """Members of ``family`` where C(1, .) is largest."""
    scores = [c1(ctx, s.flatten()) for s in family]
    top = max(scores, default=0)
    return [s for s, v in zip(family, scores) if v == top]


def is_residual_orbit(ctx: OrbitContext, lam: Sequence[Scalar]) -> bool:
    return is_residual_vector(ctx.kind, lam, ctx.epsilon)
