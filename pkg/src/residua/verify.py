"""Exhaustive consistency sweeps, grouped into independent work units."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Callable

from .dynkin import (
    distinguished_partitions,
    partition_to_segment,
    satisfies_profile_relations,
    segment_to_wdd,
    wdd_to_segment,
)
from .intertwine import path_nongeneric, replay
from .orbits import OrbitContext, c1, dominant_rep, enumerate_L, enumerate_orbit
from .projections import (
    all_thetas,
    block_sizes,
    classify_components,
    length_changes,
    project_roots,
    theta_condition,
    uniqueway_coefficients,
)
from .rootsys import HalfInt, Parameter, ResiduaError, RootSystemSpec, is_dominant
from .segments import is_residual_point, jordan_of, jumps_of, segment_from_jumps


@dataclass
class SweepResult:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    def merge(self, other: SweepResult) -> None:
        self.cases += other.cases
        self.failures.extend(other.failures)

    @property
    def ok(self) -> bool:
        return not self.failures


def _min_rank(kind: str) -> int:
    return 2 if kind == "D" else 1


def sweep_bijection(kind: str, rank: int) -> SweepResult:
    """partition -> segment -> jumps -> Jordan partition is the identity."""
    out = SweepResult("bijection")
    spec = RootSystemSpec(kind, rank)
    for p in distinguished_partitions(spec):
        out.cases += 1
        seg = partition_to_segment(p)
        if kind == "A":
            continue
        back = jordan_of(segment_from_jumps(kind, jumps_of(seg)))
        if back != p or jordan_of(seg) != p:
            out.failures.append(f"{kind}{rank} {p}")
        if not satisfies_profile_relations(kind, seg.values):
            out.failures.append(f"{kind}{rank} {p}: profile relations")
        try:
            if wdd_to_segment(segment_to_wdd(seg)) != seg:
                out.failures.append(f"{kind}{rank} {p}: diagram round trip")
        except ResiduaError:
            pass
    return out


def _grid(rank: int, doubled_values: list[int], length: int):
    for combo in combinations_with_replacement(sorted(doubled_values, reverse=True), length):
        yield Parameter.from_doubled(combo)


def sweep_residual(kind: str, rank: int) -> SweepResult:
    """Residual dominant vectors on both grids are exactly the partition segments."""
    out = SweepResult("residual")
    spec = RootSystemSpec(kind, rank)
    expected = {partition_to_segment(p).values for p in distinguished_partitions(spec)}
    if kind == "A":
        grids = [list(range(-2 * rank, 2 * rank + 1, 2)), list(range(-2 * rank + 1, 2 * rank, 2))]
    else:
        grids = [list(range(0, 2 * rank + 1, 2)), list(range(1, 2 * rank, 2))]
    for grid in grids:
        for lam in _grid(rank, grid, spec.dim):
            out.cases += 1
            got = is_residual_point(spec, None, lam)
            if kind == "A":
                d = lam.doubled()
                want = all(d[i] - d[i + 1] == 2 for i in range(len(d) - 1))
            else:
                want = lam in expected
            if got != want:
                out.failures.append(f"{kind}{rank} {lam}")
    return out


def sweep_orbits(kind: str, rank: int) -> SweepResult:
    """Unique dominant element per orbit and C(1, .) vanishing only there."""
    out = SweepResult("orbits")
    ctx = OrbitContext.of(kind, rank)
    for p in distinguished_partitions(ctx.spec):
        seg = partition_to_segment(p)
        orbit = enumerate_orbit(ctx, seg.values)
        out.cases += len(orbit)
        dominant = [lam for lam in orbit if is_dominant(ctx.spec, lam)]
        if dominant != [seg.values]:
            out.failures.append(f"{kind}{rank} {seg}: dominant elements {len(dominant)}")
        for lam in orbit:
            if (c1(ctx, lam) == 0) != (lam == seg.values) or dominant_rep(ctx, lam)[0] != seg.values:
                out.failures.append(f"{kind}{rank} {lam}")
    return out


def sweep_c1(kind: str, rank: int) -> SweepResult:
    """For each left end a, C(1, .) on the strings starting at a peaks at (a, -a_next)."""
    out = SweepResult("c1")
    if kind == "A":
        return out
    ctx = OrbitContext.of(kind, rank)
    for p in distinguished_partitions(ctx.spec):
        seg = partition_to_segment(p)
        family = enumerate_L(ctx, seg)[1:]
        jumps = list(jumps_of(seg))
        by_a: dict[HalfInt, list] = {}
        for s in family:
            by_a.setdefault(s.linear[0].a, []).append(s)
        for a, strings in by_a.items():
            out.cases += 1
            if a not in jumps:
                out.failures.append(f"{kind}{rank} {seg}: left end {a} is not a jump")
                continue
            if jumps.index(a) + 1 == len(jumps):
                # the smallest jump has no partner; no peak is claimed
                continue
            target = -jumps[jumps.index(a) + 1]
            scores = {str(s): c1(ctx, s.flatten()) for s in strings}
            best = max(scores.values())
            winners = {s.flatten() for s in strings if scores[str(s)] == best}
            peak = [s for s in strings if s.linear[0].b == target]
            if not peak or winners != {peak[0].flatten()}:
                out.failures.append(f"{kind}{rank} {seg}: a={a}")
    return out


def sweep_paths(kind: str, rank: int) -> SweepResult:
    """Constructive non-generic paths (a, b) -> (a, b') for b' >= b, and to the dominant point."""
    out = SweepResult("paths")
    if kind == "A":
        return out
    ctx = OrbitContext.of(kind, rank)
    for p in distinguished_partitions(ctx.spec):
        family = enumerate_L(ctx, partition_to_segment(p))
        dom, strings = family[0], family[1:]
        for src in strings:
            targets = [dom] + [
                t for t in strings if t.linear[0].a == src.linear[0].a and t.linear[0].b >= src.linear[0].b
            ]
            for dst in targets:
                out.cases += 1
                moves = path_nongeneric(ctx, src, dst)
                if moves is None or replay(ctx, src.flatten(), moves) != dst.flatten():
                    out.failures.append(f"{src} -> {dst}")
    return out


def sweep_projections(kind: str, rank: int) -> SweepResult:
    """Integral coefficients, the rank-d component, the component-count law and type-A purity."""
    out = SweepResult("projections")
    spec = RootSystemSpec(kind, rank)
    if rank < 2:
        return out
    for theta in all_thetas(spec):
        out.cases += 1
        p = classify_components(project_roots(theta))
        try:
            uniqueway_coefficients(p)
        except ResiduaError as exc:
            out.failures.append(f"{theta}: {exc}")
        comps = p.components or ()
        if theta_condition(theta) and not (len(comps) == 1 and comps[0].rank == theta.d):
            out.failures.append(f"{theta}: no irreducible rank-d component")
        if kind == "A" and any(c.type != "A" for c in comps):
            out.failures.append(f"{theta}: non-A component")
        has_tail = any(b.tail for b in p.blocks)
        uneven = len(set(block_sizes(theta))) > 1
        if kind != "A" and theta.removed_independent() and has_tail and uneven:
            if len(comps) != length_changes(theta) + 1 or sum(c.rank for c in comps) != theta.d:
                out.failures.append(f"{theta}: component count")
    return out


SWEEPS: dict[str, Callable[[str, int], SweepResult]] = {
    "bijection": sweep_bijection,
    "residual": sweep_residual,
    "orbits": sweep_orbits,
    "c1": sweep_c1,
    "paths": sweep_paths,
    "projections": sweep_projections,
}


def _run_unit(unit: tuple[str, str, int]) -> SweepResult:
    name, kind, rank = unit
    return SWEEPS[name](kind, rank)


def run_suite(max_rank: int, jobs: int = 1, names: list[str] | None = None) -> list[SweepResult]:
    """Run the sweeps for every kind and rank up to ``max_rank``.

    Work units are dispatched to ``jobs`` processes; results are merged in
    submission order, so the report does not depend on scheduling.
    """
    names = list(names or SWEEPS)
    units = [
        (name, kind, rank)
        for name in names
        for kind in "ABCD"
        for rank in range(_min_rank(kind), max_rank + 1)
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            partial = list(pool.map(_run_unit, units))
    else:
        partial = [_run_unit(u) for u in units]
    merged = {name: SweepResult(name) for name in names}
    for (name, _, _), res in zip(units, partial):
        merged[name].merge(res)
    return [merged[name] for name in names]
