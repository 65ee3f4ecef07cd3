"""Exact half-integers, classical root systems and signed permutations.

Coordinates follow the Bourbaki conventions: type A_n lives in n+1
coordinates, types B_n, C_n and D_n in n coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence, Union

KINDS = ("A", "B", "C", "D")

Scalar = Union["HalfInt", int, Fraction, str]


class ResiduaError(ValueError):
    """Domain error raised when an input violates a documented invariant."""


@total_ordering
class HalfInt:
    """An exact half-integer, stored as twice its value."""

    __slots__ = ("doubled",)

    def __init__(self, value: Scalar = 0) -> None:
        if isinstance(value, HalfInt):
            doubled = value.doubled
        elif isinstance(value, bool):
            raise TypeError("booleans are not half-integers")
        elif isinstance(value, int):
            doubled = 2 * value
        elif isinstance(value, Fraction):
            twice = 2 * value
            if twice.denominator != 1:
                raise ResiduaError(f"{value} is not a half-integer")
            doubled = twice.numerator
        elif isinstance(value, str):
            try:
                frac = Fraction(value.strip())
            except ValueError:
                raise ResiduaError(f"cannot parse {value!r} as a half-integer") from None
            doubled = HalfInt(frac).doubled
        else:
            raise TypeError(f"cannot build a half-integer from {value!r}")
        object.__setattr__(self, "doubled", doubled)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("HalfInt is immutable")

    @classmethod
    def from_doubled(cls, doubled: int) -> HalfInt:
        out = object.__new__(cls)
        object.__setattr__(out, "doubled", int(doubled))
        return out

    @property
    def is_integer(self) -> bool:
        return self.doubled % 2 == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.doubled, 2)

    def _coerce(self, other: object) -> int | None:
        if isinstance(other, HalfInt):
            return other.doubled
        if isinstance(other, int) and not isinstance(other, bool):
            return 2 * other
        if isinstance(other, Fraction):
            twice = 2 * other
            return twice.numerator if twice.denominator == 1 else None
        return None

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Fraction) and (2 * other).denominator != 1:
            return False
        d = self._coerce(other)
        if d is None:
            return NotImplemented
        return self.doubled == d

    def __lt__(self, other: object) -> bool:
        if isinstance(other, Fraction):
            return self.as_fraction() < other
        d = self._coerce(other)
        if d is None:
            return NotImplemented
        return self.doubled < d

    def __hash__(self) -> int:
        return hash(self.as_fraction())

    def __add__(self, other: object) -> HalfInt:
        d = self._coerce(other)
        if d is None:
            return NotImplemented
        return HalfInt.from_doubled(self.doubled + d)

    __radd__ = __add__

    def __sub__(self, other: object) -> HalfInt:
        d = self._coerce(other)
        if d is None:
            return NotImplemented
        return HalfInt.from_doubled(self.doubled - d)

    def __rsub__(self, other: object) -> HalfInt:
        d = self._coerce(other)
        if d is None:
            return NotImplemented
        return HalfInt.from_doubled(d - self.doubled)

    def __mul__(self, other: object) -> HalfInt:
        if isinstance(other, int) and not isinstance(other, bool):
            return HalfInt.from_doubled(self.doubled * other)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self) -> HalfInt:
        return HalfInt.from_doubled(-self.doubled)

    def __abs__(self) -> HalfInt:
        return HalfInt.from_doubled(abs(self.doubled))

    def __bool__(self) -> bool:
        return self.doubled != 0

    def __str__(self) -> str:
        if self.doubled % 2 == 0:
            return str(self.doubled // 2)
        return f"{self.doubled}/2"

    def __repr__(self) -> str:
        return f"HalfInt('{self}')"


def half(value: Scalar) -> HalfInt:
    return value if isinstance(value, HalfInt) else HalfInt(value)


class _Vector(tuple):
    """Immutable tuple of HalfInt values."""

    def __new__(cls, values: Iterable[Scalar] = ()):
        return super().__new__(cls, (half(v) for v in values))

    @classmethod
    def parse(cls, text: str):
        """Parse "5,4,-1/2" or a compact digit string such as "54433"."""
        text = text.strip().strip("()[]")
        if not text:
            return cls(())
        if "," in text or " " in text.strip():
            items = [t for t in text.replace(" ", ",").split(",") if t]
            return cls(items)
        if text.lstrip("-").isdigit() and len(text) > 1 and not text.startswith("-"):
            return cls(int(c) for c in text)
        return cls([text])

    def doubled(self) -> tuple[int, ...]:
        return tuple(v.doubled for v in self)

    @classmethod
    def from_doubled(cls, values: Iterable[int]):
        return cls(HalfInt.from_doubled(v) for v in values)

    def __add__(self, other):  # vector addition, not concatenation
        if len(self) != len(other):
            raise ResiduaError("dimension mismatch")
        return type(self)(a + half(b) for a, b in zip(self, other))

    def __sub__(self, other):
        if len(self) != len(other):
            raise ResiduaError("dimension mismatch")
        return type(self)(a - half(b) for a, b in zip(self, other))

    def __neg__(self):
        return type(self)(-a for a in self)

    def concat(self, other: Iterable[Scalar]):
        return type(self)(tuple(self) + tuple(half(v) for v in other))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({', '.join(str(v) for v in self)})"

    def __str__(self) -> str:
        return "(" + ",".join(str(v) for v in self) + ")"


class Parameter(_Vector):
    """A parameter vector in Bourbaki coordinates."""


class Root(_Vector):
    """A root written in the basis e_1, ..., e_n."""


@dataclass(frozen=True)
class RootSystemSpec:
    kind: str
    rank: int

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ResiduaError(f"unknown kind {self.kind!r}")
        if not isinstance(self.rank, int) or self.rank < 1:
            raise ResiduaError("rank out of range")
        if self.kind == "D" and self.rank < 2:
            raise ResiduaError("rank out of range")

    @property
    def dim(self) -> int:
        """Number of ambient coordinates."""
        return self.rank + 1 if self.kind == "A" else self.rank

    def __str__(self) -> str:
        return f"{self.kind}{self.rank}"


def _unit(dim: int, entries: dict[int, int]) -> Root:
    coords = [0] * dim
    for i, c in entries.items():
        coords[i] = c
    return Root(coords)


def simple_roots(spec: RootSystemSpec) -> list[Root]:
    n, dim = spec.rank, spec.dim
    if spec.kind == "A":
        return [_unit(dim, {i: 1, i + 1: -1}) for i in range(n)]
    roots = [_unit(dim, {i: 1, i + 1: -1}) for i in range(n - 1)]
    if spec.kind == "B":
        roots.append(_unit(dim, {n - 1: 1}))
    elif spec.kind == "C":
        roots.append(_unit(dim, {n - 1: 2}))
    else:
        roots.append(_unit(dim, {n - 2: 1, n - 1: 1}))
    return roots


def positive_roots(spec: RootSystemSpec) -> list[Root]:
    dim = spec.dim
    roots = []
    for i in range(dim):
        for j in range(i + 1, dim):
            roots.append(_unit(dim, {i: 1, j: -1}))
            if spec.kind != "A":
                roots.append(_unit(dim, {i: 1, j: 1}))
        if spec.kind == "B":
            roots.append(_unit(dim, {i: 1}))
        elif spec.kind == "C":
            roots.append(_unit(dim, {i: 2}))
    return roots


def pairing(lam: Sequence[Scalar], alpha: Sequence[Scalar]) -> HalfInt:
    """Return <lam, alpha-check> = 2 (lam, alpha) / (alpha, alpha)."""
    if len(lam) != len(alpha):
        raise ResiduaError("dimension mismatch")
    lam_d = [half(v).doubled for v in lam]
    alpha_d = [half(v).doubled for v in alpha]
    num = sum(x * y for x, y in zip(lam_d, alpha_d))
    den = sum(y * y for y in alpha_d)
    if den == 0:
        raise ResiduaError("zero root")
    return HalfInt(Fraction(2 * num, den))


@dataclass(frozen=True)
class SignedPermutation:
    """A signed permutation acting by result[perm[j]] = signs[perm[j]] * lam[j].

    Indices are 0-based: ``perm[j]`` is the target slot of coordinate ``j``
    and ``signs[i]`` is the sign applied at target slot ``i``.
    """

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ResiduaError("perm is not a bijection")
        if len(self.signs) != len(self.perm) or any(s not in (1, -1) for s in self.signs):
            raise ResiduaError("signs must be a vector of +1/-1 of matching size")

    @classmethod
    def identity(cls, n: int) -> SignedPermutation:
        return cls(tuple(range(n)), (1,) * n)

    @property
    def flips(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    def inverse_perm(self) -> tuple[int, ...]:
        inv = [0] * len(self.perm)
        for j, i in enumerate(self.perm):
            inv[i] = j
        return tuple(inv)


def weyl_apply(w: SignedPermutation, lam: Sequence[Scalar], kind: str | None = None) -> Parameter:
    """Apply ``w`` to ``lam``; with ``kind`` given, check that ``w`` belongs to W(kind)."""
    if len(w.perm) != len(lam):
        raise ResiduaError("dimension mismatch")
    vec = Parameter(lam)
    if kind == "A" and w.flips:
        raise ResiduaError("type A Weyl elements carry no sign changes")
    if kind == "D" and w.flips % 2 and not any(v == 0 for v in vec):
        raise ResiduaError("odd number of sign changes is not in W(D) for this parameter")
    inv = w.inverse_perm()
    return Parameter(w.signs[i] * vec[inv[i]] for i in range(len(vec)))


def is_dominant(spec: RootSystemSpec, lam: Sequence[Scalar]) -> bool:
    if len(lam) != spec.dim:
        raise ResiduaError("dimension mismatch")
    d = [half(v).doubled for v in lam]
    decreasing = all(d[i] >= d[i + 1] for i in range(len(d) - 1))
    if spec.kind == "A":
        return decreasing
    if spec.kind in ("B", "C"):
        return decreasing and d[-1] >= 0
    head = all(d[i] >= d[i + 1] for i in range(len(d) - 2))
    return head and d[-2] >= abs(d[-1])
