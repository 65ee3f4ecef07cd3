"""Projections of a root system away from a parabolic subsystem and the root systems they contain.

Projected vectors live in the span of orthogonal block vectors s_K (one per
block of coordinates not killed by Theta).  They are stored as integer
tuples x with v = sum_K x_K s_K / L, where L is the lcm of the block sizes,
and the inner product is sum_K |K| x_K y_K (up to the constant L^2).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Iterable, Sequence

import numpy as np

from .rootsys import ResiduaError, RootSystemSpec, positive_roots, simple_roots

IVec = tuple[int, ...]


# -- Theta subsets and coordinate blocks --------------------------------------

def dynkin_edges(spec: RootSystemSpec) -> set[frozenset[int]]:
    """Edges of the Dynkin graph on 1-based simple-root indices."""
    n = spec.rank
    edges = {frozenset((i, i + 1)) for i in range(1, n - 1)}
    if spec.kind == "D" and n >= 3:
        edges.add(frozenset((n - 2, n)))
    elif n >= 2:
        edges.add(frozenset((n - 1, n)))
    return edges


@dataclass(frozen=True)
class ThetaSubset:
    """Theta given by the simple roots removed from Delta (1-based indices)."""

    spec: RootSystemSpec
    removed: frozenset[int]

    def __post_init__(self) -> None:
        removed = frozenset(int(i) for i in self.removed)
        object.__setattr__(self, "removed", removed)
        if not removed:
            raise ResiduaError("at least one simple root must be removed")
        if any(not 1 <= i <= self.spec.rank for i in removed):
            raise ResiduaError("simple-root index out of range")
        if len(removed) == self.spec.rank:
            raise ResiduaError("theta must be nonempty")

    @classmethod
    def from_kept(cls, spec: RootSystemSpec, kept: Iterable[int]) -> ThetaSubset:
        kept = set(kept)
        if any(not 1 <= i <= spec.rank for i in kept):
            raise ResiduaError("simple-root index out of range")
        return cls(spec, frozenset(set(range(1, spec.rank + 1)) - kept))

    @property
    def kept(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.spec.rank + 1) if i not in self.removed)

    @property
    def d(self) -> int:
        return len(self.removed)

    def removed_independent(self) -> bool:
        edges = dynkin_edges(self.spec)
        return not any(frozenset(p) in edges for p in combinations(sorted(self.removed), 2))

    def __str__(self) -> str:
        kept = ",".join(str(i) for i in self.kept)
        return f"{self.spec.kind}{self.spec.rank} theta={{{kept}}}"


def all_thetas(spec: RootSystemSpec) -> list[ThetaSubset]:
    """Every Theta with both Theta and its complement nonempty."""
    n = spec.rank
    return [ThetaSubset.from_kept(spec, kept) for k in range(1, n) for kept in combinations(range(1, n + 1), k)]


@dataclass(frozen=True)
class Block:
    """Coordinates joined by type-A roots of Theta, with relative signs."""

    coords: tuple[int, ...]
    signs: tuple[int, ...]
    tail: bool

    @property
    def size(self) -> int:
        return len(self.coords)


def _support(root) -> list[tuple[int, int]]:
    return [(k, c.doubled // 2) for k, c in enumerate(root) if c.doubled]


def coordinate_blocks(theta: ThetaSubset) -> list[Block]:
    """Blocks of coordinates, left to right.

    A root e_i - e_j of Theta joins i and j with equal signs, e_i + e_j with
    opposite signs.  A sign conflict or a root e_i or 2e_i marks the block
    as a tail: Theta spans all of its coordinates.
    """
    spec = theta.spec
    dim = spec.dim
    parent = list(range(dim))
    parity = [0] * dim
    tail = [False] * dim

    def find(x: int) -> tuple[int, int]:
        p = 0
        while parent[x] != x:
            p ^= parity[x]
            x = parent[x]
        return x, p

    simple = simple_roots(spec)
    for i in theta.kept:
        support = _support(simple[i - 1])
        if len(support) == 1:
            tail[find(support[0][0])[0]] = True
            continue
        (x, cx), (y, cy) = support
        rel = 0 if cx * cy < 0 else 1
        rx, px = find(x)
        ry, py = find(y)
        if rx == ry:
            if px ^ py != rel:
                tail[rx] = True
            continue
        parent[ry] = rx
        parity[ry] = px ^ py ^ rel
        tail[rx] = tail[rx] or tail[ry]
    groups: dict[int, list[int]] = {}
    for c in range(dim):
        groups.setdefault(find(c)[0], []).append(c)
    blocks = []
    for root, coords in sorted(groups.items(), key=lambda kv: kv[1][0]):
        signs = tuple(-1 if find(c)[1] else 1 for c in coords)
        if signs[0] < 0:
            signs = tuple(-s for s in signs)
        blocks.append(Block(tuple(coords), signs, tail[root]))
    return blocks


def block_sizes(theta: ThetaSubset) -> list[int]:
    """Sizes of the non-tail blocks, left to right."""
    return [b.size for b in coordinate_blocks(theta) if not b.tail]


def theta_condition(theta: ThetaSubset) -> bool:
    """Removed roots pairwise non-adjacent and all non-tail blocks of one size.

    A coordinate untouched by Theta counts as a block of size one.
    """
    return theta.removed_independent() and len(set(block_sizes(theta))) <= 1


def _coords_of(spec: RootSystemSpec, comp: Iterable[int]) -> set[int]:
    simple = simple_roots(spec)
    return {k for i in comp for k, _ in _support(simple[i - 1])}


def component_lengths(theta: ThetaSubset) -> list[int]:
    """Coordinate counts of the A-components of Theta, left to right.

    Components are read off the Dynkin graph: one of type A_k covers k + 1
    coordinates, a coordinate not touched by Theta counts as A_0, and a
    component of type B, C or D (holding the last node, or both fork nodes
    for D, which then count as one component even without alpha_{n-2}) is
    skipped.
    """
    spec = theta.spec
    n = spec.rank
    edges = dynkin_edges(spec)
    kept = set(theta.kept)
    special = {"B": {n}, "C": {n}, "D": {n - 1, n}}.get(spec.kind, set())
    seen: set[int] = set()
    covered: set[int] = set()
    sizes: list[tuple[int, int]] = []
    for i in sorted(kept):
        if i in seen:
            continue
        comp, stack = {i}, [i]
        while stack:
            x = stack.pop()
            for y in kept:
                if y not in comp and (frozenset((x, y)) in edges or {x, y} == special):
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        coords = _coords_of(spec, comp)
        covered |= coords
        if special and special <= comp:
            continue
        sizes.append((min(coords), len(coords)))
    sizes.extend((k, 1) for k in range(spec.dim) if k not in covered)
    return [s for _, s in sorted(sizes)]


def length_changes(theta: ThetaSubset) -> int:
    seq = component_lengths(theta)
    return sum(1 for a, b in zip(seq, seq[1:]) if a != b)


# -- integer geometry on block coordinates ------------------------------------

@dataclass(frozen=True)
class Metric:
    """Diagonal inner product sum_K w_K x_K y_K on block coordinates."""

    weights: tuple[int, ...]

    def dot(self, u: IVec, v: IVec) -> int:
        return sum(w * a * b for w, a, b in zip(self.weights, u, v))

    def cartan(self, u: IVec, v: IVec) -> Fraction:
        """<u, v-check> = 2 (u, v) / (v, v)."""
        return Fraction(2 * self.dot(u, v), self.dot(v, v))

    def reflect(self, u: IVec, v: IVec) -> IVec | None:
        """s_v(u), or None when the pairing is not integral."""
        num, den = 2 * self.dot(u, v), self.dot(v, v)
        if num % den:
            return None
        c = num // den
        return tuple(a - c * b for a, b in zip(u, v))


def _neg(v: IVec) -> IVec:
    return tuple(-x for x in v)


def _is_positive(v: IVec) -> bool:
    """Lexicographic positivity: the first nonzero coordinate is positive."""
    for x in v:
        if x:
            return x > 0
    return False


def rank_of(vectors: Iterable[Sequence[int]]) -> int:
    """Dimension of the span, by exact row reduction."""
    rows = [[Fraction(x) for x in v] for v in vectors]
    if not rows:
        return 0
    rank = 0
    for c in range(len(rows[0])):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(rank + 1, len(rows)):
            if rows[r][c]:
                f = rows[r][c] / rows[rank][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def solve(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction]:
    """Solve a square nonsingular linear system exactly."""
    n = len(matrix)
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for c in range(n):
        pivot = next((r for r in range(c, n) if aug[r][c]), None)
        if pivot is None:
            raise ResiduaError("singular system")
        aug[c], aug[pivot] = aug[pivot], aug[c]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c] / aug[c][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [aug[r][n] / aug[r][r] for r in range(n)]


def root_system_violation(metric: Metric, roots: Iterable[IVec]) -> str | None:
    """Reason why ``roots`` is not a (possibly non-reduced) root system, or None.

    Checks closure under negation and under every reflection, and that
    Cartan integers lie in {0, +-1, +-2, +-3}, with +-4 allowed only
    between v and 2v.
    """
    rs = sorted(set(roots))
    if not rs:
        return "empty set"
    rset = set(rs)
    if any(not any(v) for v in rs):
        return "zero vector"
    if any(_neg(v) not in rset for v in rs):
        return "not closed under negation"
    x = np.array(rs, dtype=np.int64)
    w = np.array(metric.weights, dtype=np.int64)
    gram = (x * w) @ x.T
    norms = np.diag(gram)
    twice = 2 * gram
    if (twice % norms[None, :]).any():
        return "non-integral Cartan pairing"
    c = twice // norms[None, :]
    proportional = c * c.T == 4
    np.fill_diagonal(proportional, True)
    if (np.abs(c[~proportional]) > 3).any():
        return "Cartan integer out of range"
    if not np.isin(np.abs(c[proportional]), (1, 2, 4)).all():
        return "proportional roots with a bad ratio"
    images = x[:, None, :] - c[:, :, None] * x[None, :, :]
    keys = {row.tobytes() for row in x}
    for row in images.reshape(-1, x.shape[1]):
        if row.tobytes() not in keys:
            return "not closed under reflections"
    return None


def reflection_closure(metric: Metric, generators: Iterable[IVec], ambient: frozenset[IVec]) -> frozenset[IVec] | None:
    """Close the generators under mutual reflections inside ``ambient``.

    Returns None when a reflection leaves ``ambient`` or a pairing is not
    integral.
    """
    current: set[IVec] = set()
    for g in generators:
        current.update((g, _neg(g)))
    frontier = list(current)
    while frontier:
        new = []
        snapshot = list(current)
        for u in frontier:
            for v in snapshot:
                for a, b in ((u, v), (v, u)):
                    img = metric.reflect(a, b)
                    if img is None or img not in ambient:
                        return None
                    if img not in current:
                        current.add(img)
                        new.append(img)
        frontier = new
    return frozenset(current)


def _connected(metric: Metric, vectors: Sequence[IVec]) -> bool:
    if not vectors:
        return False
    seen, stack = {0}, [0]
    while stack:
        i = stack.pop()
        for j in range(len(vectors)):
            if j not in seen and metric.dot(vectors[i], vectors[j]):
                seen.add(j)
                stack.append(j)
    return len(seen) == len(vectors)


def simple_system(roots: Iterable[IVec]) -> list[IVec]:
    """Positive roots (lexicographic order) that are not a sum of two positive roots."""
    pos = sorted((v for v in set(roots) if _is_positive(v)), reverse=True)
    posset = set(pos)
    return [v for v in pos if not any(tuple(a - b for a, b in zip(v, u)) in posset for u in pos)]


@dataclass(frozen=True)
class Component:
    """An irreducible root system, possibly non-reduced, among the projections."""

    type: str
    rank: int
    roots: tuple[IVec, ...]
    reduced_subsystems: tuple[str, ...] = ()

    @property
    def label(self) -> str:
        return f"{self.type}_{self.rank}"


def _arm_lengths(cm: list[list[int]], branch: int) -> list[int]:
    r = len(cm)
    arms = []
    for start in (j for j in range(r) if j != branch and cm[branch][j]):
        length, prev, cur = 1, branch, start
        while True:
            nxt = [k for k in range(r) if k not in (prev, cur) and cm[cur][k]]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    return sorted(arms)


def classify_root_system(metric: Metric, roots: Iterable[IVec]) -> Component:
    """Type and rank of an irreducible root system given by all of its roots."""
    roots = tuple(sorted(set(roots), reverse=True))
    reason = root_system_violation(metric, roots)
    if reason:
        raise ResiduaError(f"not a root system: {reason}")
    simple = simple_system(roots)
    r = len(simple)
    if r != rank_of(simple) or not _connected(metric, simple):
        raise ResiduaError("not an irreducible root system")
    rset = set(roots)
    if any(tuple(2 * a for a in v) in rset for v in roots):
        subs = (f"B_{r}", f"C_{r}", f"D_{r}") if r >= 2 else ("A_1",)
        return Component("BC", r, roots, subs)
    if r == 1:
        return Component("A", 1, roots)
    cm = [[int(metric.cartan(a, b)) for b in simple] for a in simple]
    degree = [sum(1 for j in range(r) if j != i and cm[i][j]) for i in range(r)]
    multiple = [(i, j) for i in range(r) for j in range(r) if i != j and cm[i][j] < -1]
    if any(cm[i][j] == -3 for i, j in multiple):
        return Component("G", r, roots)
    if multiple:
        long_, short = multiple[0]  # cm[long][short] = -2
        if r == 2 or (degree[short] == 1 and degree[long_] == 2):
            return Component("B", r, roots)
        if degree[long_] == 1 and degree[short] == 2:
            return Component("C", r, roots)
        return Component("F", r, roots)
    if max(degree) <= 2:
        return Component("A", r, roots)
    arms = _arm_lengths(cm, degree.index(3))
    return Component("D" if arms[:2] == [1, 1] else "E", r, roots)


# -- projected systems ---------------------------------------------------------

@dataclass(frozen=True)
class ProjectedSystem:
    """Projections of all roots, in integer block coordinates.

    ``roots`` are the distinct non-zero projections and ``delta`` the
    projections of the removed simple roots, in increasing index order.
    """

    theta: ThetaSubset
    blocks: tuple[Block, ...]
    scale: int
    roots: tuple[IVec, ...]
    delta: tuple[IVec, ...]
    multiplicity: tuple[int, ...]
    components: tuple[Component, ...] | None = None

    @property
    def total_rank(self) -> int:
        return self.theta.d

    @property
    def free_blocks(self) -> tuple[Block, ...]:
        return tuple(b for b in self.blocks if not b.tail)

    @property
    def metric(self) -> Metric:
        return Metric(tuple(b.size for b in self.free_blocks))

    def ambient(self, v: IVec) -> tuple[Fraction, ...]:
        """Coordinates of a block vector in the basis e_1, ..., e_n."""
        out = [Fraction(0)] * self.theta.spec.dim
        for x, b in zip(v, self.free_blocks):
            for c, s in zip(b.coords, b.signs):
                out[c] += Fraction(x * s, self.scale)
        return tuple(out)

    @property
    def sigma_theta(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(self.ambient(v) for v in self.roots)

    @property
    def delta_theta(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(self.ambient(v) for v in self.delta)


def _project(free: Sequence[Block], scale: int, root) -> IVec:
    coords = [x.doubled // 2 for x in root]
    return tuple(scale * sum(s * coords[c] for c, s in zip(b.coords, b.signs)) // b.size for b in free)


def project_roots(theta: ThetaSubset) -> ProjectedSystem:
    """Non-zero orthogonal projections of all roots onto the complement of span(Theta)."""
    spec = theta.spec
    blocks = coordinate_blocks(theta)
    free = [b for b in blocks if not b.tail]
    scale = lcm(*(b.size for b in free)) if free else 1
    counts: Counter = Counter()
    for root in positive_roots(spec):
        p = _project(free, scale, root)
        if any(p):
            counts[p] += 1
            counts[_neg(p)] += 1
    roots = tuple(sorted(counts, reverse=True))
    simple = simple_roots(spec)
    delta = tuple(_project(free, scale, simple[i - 1]) for i in sorted(theta.removed))
    return ProjectedSystem(theta, tuple(blocks), scale, roots, delta, tuple(counts[v] for v in roots))


def uniqueway_coefficients(p: ProjectedSystem) -> dict[IVec, tuple[int, ...]]:
    """Coefficients of each projected root on the projected removed simple roots.

    Raises unless every coefficient vector is integral with a single sign.
    """
    metric = p.metric
    basis = p.delta
    size = len(basis)
    gram = [[Fraction(metric.dot(a, b)) for b in basis] for a in basis]
    # the inverse Gram matrix, column by column, reused for every projected root
    inv_cols = [solve(gram, [Fraction(int(i == j)) for i in range(size)]) for j in range(size)]
    out = {}
    for v in p.roots:
        rhs = [metric.dot(a, v) for a in basis]
        c = [sum((inv_cols[j][i] * rhs[j] for j in range(size)), Fraction(0)) for i in range(size)]
        recon = tuple(sum(ci * a[k] for ci, a in zip(c, basis)) for k in range(len(v)))
        where = format_vector(p.ambient(v))
        if recon != v:
            raise ResiduaError(f"projection {where} is outside the span of the projected simple roots")
        if any(x.denominator != 1 for x in c):
            raise ResiduaError(f"non-integral coefficients for {where}")
        if any(x > 0 for x in c) and any(x < 0 for x in c):
            raise ResiduaError(f"mixed signs for {where}")
        out[v] = tuple(int(x) for x in c)
    return out


def runs(p: ProjectedSystem) -> list[list[int]]:
    """Maximal consecutive non-tail blocks of equal size, as block-coordinate indices."""
    out: list[list[int]] = []
    sizes = [b.size for b in p.free_blocks]
    for k, size in enumerate(sizes):
        if out and sizes[out[-1][0]] == size:
            out[-1].append(k)
        else:
            out.append([k])
    return out


def classify_components(p: ProjectedSystem) -> ProjectedSystem:
    """Fill in the components: one per run of equal-size blocks.

    A run's component is the set of projected roots supported on the run's
    blocks.  Runs that carry no projected root are skipped.
    """
    metric = p.metric
    comps = []
    for run in runs(p):
        inside = set(run)
        members = [v for v in p.roots if all(x == 0 or k in inside for k, x in enumerate(v))]
        for piece in irreducible_pieces(metric, members):
            comps.append(classify_root_system(metric, piece))
    return replace(p, components=tuple(comps))


def irreducible_pieces(metric: Metric, roots: Sequence[IVec]) -> list[list[IVec]]:
    """Split a set of roots into classes of the non-orthogonality relation."""
    pieces: list[list[IVec]] = []
    left = list(roots)
    while left:
        piece = [left.pop(0)]
        stack = [piece[0]]
        while stack:
            u = stack.pop()
            linked = [v for v in left if metric.dot(u, v)]
            for v in linked:
                left.remove(v)
            piece.extend(linked)
            stack.extend(linked)
        pieces.append(sorted(piece, reverse=True))
    return pieces


def last_root_choices(p: ProjectedSystem) -> list[tuple[IVec, Component]]:
    """Irreducible rank-d systems generated by the first d-1 projected simple roots and one more root.

    Every positive projected root is tried as the last generator; the
    generated system must stay inside the projections.
    """
    metric = p.metric
    d = p.total_rank
    base = list(p.delta[:-1])
    ambient = frozenset(p.roots)
    out = []
    for v in p.roots:
        if not _is_positive(v) or rank_of(base + [v]) != d:
            continue
        closure = reflection_closure(metric, base + [v], ambient)
        if closure is None:
            continue
        try:
            out.append((v, classify_root_system(metric, closure)))
        except ResiduaError:
            continue
    return out


def has_subsystem_of_rank(p: ProjectedSystem, r: int) -> bool:
    """Whether some r independent projected roots generate a root system inside the projections."""
    metric = p.metric
    ambient = frozenset(p.roots)
    pos = [v for v in p.roots if _is_positive(v)]
    for gens in combinations(pos, r):
        if rank_of(gens) != r:
            continue
        closure = reflection_closure(metric, gens, ambient)
        if closure is not None and root_system_violation(metric, closure) is None:
            return True
    return False


def format_vector(v: Sequence[Fraction]) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"
