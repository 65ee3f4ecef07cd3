"""Rank-one intertwining moves, non-generic-kernel paths and case classification."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace
from typing import Sequence

from .dynkin import ResidualSegment
from .langlands import leq_order
from .orbits import OrbitContext, _c1_doubled, dominant_rep, one_segment_strings, orbit_equivalent
from .rootsys import Parameter, ResiduaError, Scalar, half
from .segments import CuspidalString, is_residual_point, jumps_of

TRANSPOSE = "transpose"
SIGN_FLIP_LAST = "sign_flip_last"
D_REFLECTION_LAST_PAIR = "d_reflection_last_pair"

NON_GENERIC = "nonGenericKernel"
BIJECTIVE = "bijective"
FORBIDDEN = "forbidden"

CS_ASSUMPTION = "the cuspidal datum is assumed to satisfy the standing conditions; they are not checked"


@dataclass(frozen=True)
class Move:
    """A simple reflection acting on a parameter vector.

    ``index`` is the 1-based simple-root index for transpositions, so
    ``transpose(i)`` swaps coordinates i and i+1.
    """

    kind: str
    index: int | None = None
    status: str | None = None

    @classmethod
    def transpose(cls, i: int) -> Move:
        return cls(TRANSPOSE, i)

    @classmethod
    def sign_flip_last(cls) -> Move:
        return cls(SIGN_FLIP_LAST)

    @classmethod
    def d_reflection_last_pair(cls) -> Move:
        return cls(D_REFLECTION_LAST_PAIR)

    def __str__(self) -> str:
        name = f"transpose({self.index})" if self.kind == TRANSPOSE else self.kind
        return f"{name}:{self.status}" if self.status else name


@dataclass(frozen=True)
class CaseTag:
    tag: str
    verdict: str
    assumptions: tuple[str, ...] = (CS_ASSUMPTION,)

    def __post_init__(self) -> None:
        if self.tag not in ("1a", "1b", "1c", "2a", "2b", "unclassified"):
            raise ResiduaError(f"unknown case tag {self.tag!r}")
        expected = "unknown" if self.tag == "unclassified" else "subrepresentation"
        if self.verdict != expected:
            raise ResiduaError("verdict does not match the case tag")

    @classmethod
    def of(cls, tag: str) -> CaseTag:
        return cls(tag, "unknown" if tag == "unclassified" else "subrepresentation")


def _check_move(ctx: OrbitContext, n: int, m: Move) -> None:
    kind = ctx.kind
    if m.kind == TRANSPOSE:
        if m.index is None or not 1 <= m.index < n:
            raise ResiduaError("transposition index out of range")
    elif m.kind == SIGN_FLIP_LAST:
        if kind not in ("B", "C"):
            raise ResiduaError("sign_flip_last needs kind B or C")
    elif m.kind == D_REFLECTION_LAST_PAIR:
        if kind != "D" or n < 2:
            raise ResiduaError("d_reflection_last_pair needs kind D")
    else:
        raise ResiduaError(f"unknown move {m.kind!r}")


def _status(m: Move, d: Sequence[int]) -> str:
    if m.kind == TRANSPOSE:
        x, y = d[m.index - 1], d[m.index]
    elif m.kind == SIGN_FLIP_LAST:
        x, y = d[-1], 0
    else:
        x, y = d[-2] + d[-1], 0
    if x < y:
        return NON_GENERIC
    if x == y:
        return BIJECTIVE
    return FORBIDDEN


def move_status(ctx: OrbitContext, lam: Sequence[Scalar], m: Move) -> str:
    d = [half(v).doubled for v in lam]
    _check_move(ctx, len(d), m)
    return _status(m, d)


def _apply(m: Move, d: list[int]) -> None:
    if m.kind == TRANSPOSE:
        i = m.index - 1
        d[i], d[i + 1] = d[i + 1], d[i]
    elif m.kind == SIGN_FLIP_LAST:
        d[-1] = -d[-1]
    else:
        d[-2], d[-1] = -d[-1], -d[-2]


def apply_move(lam: Sequence[Scalar], m: Move) -> Parameter:
    d = [half(v).doubled for v in lam]
    if m.kind == TRANSPOSE and not (m.index and 1 <= m.index < len(d)):
        raise ResiduaError("transposition index out of range")
    _apply(m, d)
    return Parameter.from_doubled(d)


def replay(ctx: OrbitContext, lam: Sequence[Scalar], moves: Sequence[Move]) -> Parameter:
    """Apply the moves in order, failing on any forbidden step."""
    d = [half(v).doubled for v in lam]
    for m in moves:
        _check_move(ctx, len(d), m)
        if _status(m, d) == FORBIDDEN:
            raise ResiduaError(f"forbidden move {m} at {Parameter.from_doubled(d)}")
        _apply(m, d)
    return Parameter.from_doubled(d)


class _Walker:
    """Records moves while rewriting a doubled parameter vector."""

    def __init__(self, d: Sequence[int]) -> None:
        self.d = list(d)
        self.moves: list[Move] = []

    def step(self, m: Move) -> None:
        status = _status(m, self.d)
        if status == FORBIDDEN:
            raise AssertionError("constructive step would be forbidden")
        _apply(m, self.d)
        self.moves.append(replace(m, status=status))

    def bubble_right(self, p: int) -> None:
        while p + 1 < len(self.d) and self.d[p] < self.d[p + 1]:
            self.step(Move.transpose(p + 1))
            p += 1

    def sort_from(self, start: int) -> None:
        changed = True
        while changed:
            changed = False
            for p in range(start, len(self.d) - 1):
                if self.d[p] < self.d[p + 1]:
                    self.step(Move.transpose(p + 1))
                    changed = True


def _linear_values(s: CuspidalString) -> list[int]:
    out: list[int] = []
    for seg in s.linear:
        out.extend(v.doubled for v in seg.values())
    return out


def _constructive_path(ctx: OrbitContext, src: CuspidalString, dst: CuspidalString) -> list[Move] | None:
    """Shorten the linear part of ``src`` to that of ``dst`` by non-generic moves.

    The trailing entries of the source linear part are pushed right into the
    tail (smallest first), negative entries travel to the last slot where
    they change sign, and the tail is re-sorted by ascending transpositions.
    """
    kind = ctx.kind
    src_lin, dst_lin = _linear_values(src), _linear_values(dst)
    keep = len(dst_lin)
    if len(src.linear) > 1 or len(dst.linear) > 1:
        return None
    if src_lin[:keep] != dst_lin or len(src_lin) < keep:
        return None
    walker = _Walker(src.flatten().doubled())
    for p in range(len(src_lin) - 1, keep - 1, -1):
        walker.bubble_right(p)
    n = len(walker.d)
    while True:
        walker.sort_from(keep)
        if n == keep or walker.d[-1] >= 0:
            break
        if kind in ("B", "C"):
            walker.step(Move.sign_flip_last())
        elif n - keep >= 2 and walker.d[-2] + walker.d[-1] < 0:
            walker.step(Move.d_reflection_last_pair())
        else:
            break
    if walker.d != list(dst.flatten().doubled()):
        return None
    return walker.moves


def _candidate_moves(ctx: OrbitContext, n: int) -> list[Move]:
    moves = [Move.transpose(i) for i in range(1, n)]
    if ctx.kind in ("B", "C"):
        moves.append(Move.sign_flip_last())
    elif ctx.kind == "D" and n >= 2:
        moves.append(Move.d_reflection_last_pair())
    return moves


def search_path(ctx: OrbitContext, src: Sequence[Scalar], dst: Sequence[Scalar], limit: int = 500_000) -> list[Move] | None:
    """Breadth-first search over non-generic moves; lexicographically smallest path."""
    start = tuple(half(v).doubled for v in src)
    goal = tuple(half(v).doubled for v in dst)
    if start == goal:
        return []
    goal_c1 = _c1_doubled(ctx.spec, goal)
    moves = _candidate_moves(ctx, len(start))
    parent: dict[tuple[int, ...], tuple[tuple[int, ...], Move] | None] = {start: None}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for m in moves:
            if _status(m, cur) != NON_GENERIC:
                continue
            nxt = list(cur)
            _apply(m, nxt)
            key = tuple(nxt)
            if key in parent or _c1_doubled(ctx.spec, key) < goal_c1:
                continue
            parent[key] = (cur, replace(m, status=NON_GENERIC))
            if key == goal:
                path = []
                node = key
                while parent[node] is not None:
                    prev, mv = parent[node]
                    path.append(mv)
                    node = prev
                return path[::-1]
            if len(parent) > limit:
                raise ResiduaError("search limit exceeded")
            queue.append(key)
    return None


def path_nongeneric(
    ctx: OrbitContext, src: CuspidalString, dst: CuspidalString, *, search: bool = False
) -> list[Move] | None:
    """Moves with non-generic kernel taking ``src`` to ``dst``, or None.

    With ``search`` a breadth-first search is tried when the constructive
    procedure does not apply.
    """
    lam, target = src.flatten(), dst.flatten()
    if len(lam) != ctx.spec.dim or not orbit_equivalent(ctx, lam, target):
        raise ResiduaError("endpoints are not in the same Weyl orbit")
    if lam == target:
        return []
    moves = _constructive_path(ctx, src, dst)
    if moves is None and search:
        moves = search_path(ctx, lam, target)
    return moves


# -- case classification ------------------------------------------------------

def _standard_parameter(s: CuspidalString) -> Parameter:
    seg = s.linear[0]
    mid = (seg.a.doubled + seg.b.doubled) // 2
    return Parameter.from_doubled([mid] * seg.length + [0] * len(s.tail.values))


def standard_strings(ctx: OrbitContext, lam: Sequence[Scalar]) -> list[CuspidalString]:
    """One-segment strings (a, b)(tail) in the orbit with a + b >= 0, allowing a = b."""
    return [
        s
        for s in one_segment_strings(ctx, lam, strict=False)
        if s.linear[0].a.doubled + s.linear[0].b.doubled >= 0
    ]


def minimal_strings(ctx: OrbitContext, lam: Sequence[Scalar]) -> list[CuspidalString]:
    """Strings whose parameter is below every other one-segment parameter of the orbit."""
    cands = standard_strings(ctx, lam)
    params = [_standard_parameter(s) for s in cands]
    out = []
    for s, p in zip(cands, params):
        if all(leq_order(ctx.spec, p, q) for q in params):
            out.append(s)
    return out


def classify_case(ctx: OrbitContext, s: CuspidalString) -> CaseTag:
    if len(s.linear) > 1:
        raise ResiduaError("classification needs at most one linear segment")
    if s.kind != ctx.kind:
        raise ResiduaError("string kind differs from the context")
    lam = s.flatten()
    if len(lam) != ctx.spec.dim:
        raise ResiduaError("dimension mismatch")
    dom, _ = dominant_rep(ctx, lam)
    if is_residual_point(ctx.spec, ctx.epsilon, dom):
        if lam == dom:
            return CaseTag.of("1a")
        if not s.linear:
            return CaseTag.of("unclassified")
        seg = s.linear[0]
        jumps = list(jumps_of(ResidualSegment(ctx.kind, dom)))
        if seg.a in jumps:
            k = jumps.index(seg.a)
            if k + 1 < len(jumps):
                lower = -jumps[k + 1]
                if seg.b == lower:
                    return CaseTag.of("1b")
                if seg.b > lower:
                    return CaseTag.of("1c")
        return CaseTag.of("unclassified")
    if not s.linear:
        return CaseTag.of("unclassified")
    seg = s.linear[0]
    minima = minimal_strings(ctx, lam)
    if any(m.linear[0] == seg for m in minima):
        return CaseTag.of("2a")
    if len(minima) == 1:
        best = minima[0].linear[0]
        if best.a == seg.a and seg.b > best.b:
            return CaseTag.of("2b")
    return CaseTag.of("unclassified")
