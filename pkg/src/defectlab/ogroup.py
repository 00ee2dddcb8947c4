"""Value groups: finite lexicographic products of Z, Z[1/p] and Q.

Elements are tuples of exact :class:`fractions.Fraction` entries compared
lexicographically.  The value of zero is the separate :data:`INFINITY`
sentinel, which sorts above every group element.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from defectlab.errors import DescriptorError, DivisibilityError

RationalLike = Union[int, Fraction, str]


class Kind(str, enum.Enum):
    INTEGERS = "Z"
    P_ADIC_FRACTIONS = "Z[1/p]"
    RATIONALS = "Q"


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


_KIND_RANK = {Kind.INTEGERS: 0, Kind.P_ADIC_FRACTIONS: 1, Kind.RATIONALS: 2}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _p_power(d: int, p: int) -> bool:
    while d % p == 0:
        d //= p
    return d == 1


def to_fraction(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not an exact rational: {x!r}")


def kind_admits(kind: Kind, p: int, q: Fraction) -> bool:
    if kind is Kind.RATIONALS:
        return True
    if kind is Kind.INTEGERS:
        return q.denominator == 1
    return _p_power(q.denominator, p)


@dataclass(frozen=True)
class GroupDesc:
    p: int
    coords: tuple[Kind, ...]

    def __post_init__(self):
        if not self.coords:
            raise DescriptorError("a value group needs at least one coordinate")
        if not _is_prime(self.p):
            raise DescriptorError(f"characteristic exponent {self.p} is not prime")
        object.__setattr__(self, "coords", tuple(Kind(c) for c in self.coords))

    @classmethod
    def of(cls, p: int, *kinds: Union[str, Kind]) -> "GroupDesc":
        """``GroupDesc.of(3, "Z", "Q")`` builds Z x Q for p = 3."""
        return cls(p, tuple(Kind(k) for k in kinds))

    @property
    def rank(self) -> int:
        return len(self.coords)

    @property
    def is_divisible(self) -> bool:
        return all(k is Kind.RATIONALS for k in self.coords)

    def contains(self, entries: Sequence[Fraction]) -> bool:
        if len(entries) != self.rank:
            return False
        return all(kind_admits(k, self.p, q) for k, q in zip(self.coords, entries))

    def hull(self) -> "GroupDesc":
        return GroupDesc(self.p, (Kind.RATIONALS,) * self.rank)

    def extends(self, other: "GroupDesc") -> bool:
        """True if ``other`` is a subgroup of ``self`` coordinatewise."""
        return (
            self.p == other.p
            and self.rank == other.rank
            and all(_KIND_RANK[a] >= _KIND_RANK[b] for a, b in zip(self.coords, other.coords))
        )

    def element(self, *entries: RationalLike) -> "GroupElement":
        return GroupElement(self, tuple(to_fraction(e) for e in entries))

    def zero(self) -> "GroupElement":
        return GroupElement._make(self, (Fraction(0),) * self.rank)

    def unit(self, i: int) -> "GroupElement":
        ent = [Fraction(0)] * self.rank
        ent[i] = Fraction(1)
        return GroupElement._make(self, tuple(ent))

    def has_least_positive(self, j: int) -> bool:
        """Whether the quotient by H_j (first ``j`` coordinates) is discrete."""
        return j > 0 and self.coords[j - 1] is Kind.INTEGERS

    def to_json(self) -> dict:
        return {"p": self.p, "coords": [k.value for k in self.coords]}

    @classmethod
    def from_json(cls, obj: dict) -> "GroupDesc":
        try:
            return cls(int(obj["p"]), tuple(Kind(c) for c in obj["coords"]))
        except (KeyError, ValueError, TypeError) as exc:
            raise DescriptorError(f"bad group descriptor {obj!r}: {exc}") from None

    def __str__(self):
        return " x ".join(k.value for k in self.coords)


class _Infinity:
    """Value of zero; compares above every :class:`GroupElement`."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __hash__(self):
        return hash("INFINITY")

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()


@functools.total_ordering
@dataclass(frozen=True)
class GroupElement:
    desc: GroupDesc
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        ent = tuple(to_fraction(e) for e in self.entries)
        object.__setattr__(self, "entries", ent)
        if len(ent) != self.desc.rank:
            raise DescriptorError(
                f"element of rank {len(ent)} does not fit group of rank {self.desc.rank}"
            )
        if not self.desc.contains(ent):
            raise DivisibilityError(f"{_fmt(ent)} is not in {self.desc}")

    @classmethod
    def _make(cls, desc: GroupDesc, entries: tuple[Fraction, ...]) -> "GroupElement":
        # trusted constructor: caller guarantees membership
        obj = object.__new__(cls)
        object.__setattr__(obj, "desc", desc)
        object.__setattr__(obj, "entries", entries)
        return obj

    def _check(self, other: "GroupElement") -> None:
        if not isinstance(other, GroupElement):
            raise TypeError(f"expected GroupElement, got {type(other).__name__}")
        if other.desc != self.desc:
            raise DescriptorError(f"mismatched groups {self.desc} and {other.desc}")

    def __add__(self, other):
        if other is INFINITY:
            return INFINITY
        self._check(other)
        return GroupElement._make(
            self.desc, tuple(a + b for a, b in zip(self.entries, other.entries))
        )

    def __sub__(self, other):
        self._check(other)
        return GroupElement._make(
            self.desc, tuple(a - b for a, b in zip(self.entries, other.entries))
        )

    def __neg__(self):
        return GroupElement._make(self.desc, tuple(-a for a in self.entries))

    def __mul__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        return GroupElement._make(self.desc, tuple(n * a for a in self.entries))

    __rmul__ = __mul__

    def scale(self, q: RationalLike) -> "GroupElement":
        """Multiply by a rational; raises if a coordinate leaves its subgroup."""
        q = to_fraction(q)
        return GroupElement(self.desc, tuple(q * a for a in self.entries))

    def __lt__(self, other):
        if other is INFINITY:
            return True
        self._check(other)
        return self.entries < other.entries

    def __gt__(self, other):
        if other is INFINITY:
            return False
        self._check(other)
        return self.entries > other.entries

    def __le__(self, other):
        return not self.__gt__(other)

    def __ge__(self, other):
        return not self.__lt__(other)

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.desc == other.desc and self.entries == other.entries

    def __hash__(self):
        return hash((self.desc, self.entries))

    def sign(self) -> int:
        for a in self.entries:
            if a:
                return 1 if a > 0 else -1
        return 0

    def is_zero(self) -> bool:
        return not any(self.entries)

    def embed(self, desc: GroupDesc) -> "GroupElement":
        """The same entries viewed in a group of the same rank (usually the hull)."""
        if desc.rank != self.desc.rank or desc.p != self.desc.p:
            raise DescriptorError(f"cannot embed {self.desc} into {desc}")
        return GroupElement(desc, self.entries)

    def to_json(self) -> list:
        return [str(a) for a in self.entries]

    @classmethod
    def from_json(cls, desc: GroupDesc, obj) -> "GroupElement":
        if isinstance(obj, (str, int)):
            obj = [obj]
        try:
            return cls(desc, tuple(to_fraction(a) for a in obj))
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise DescriptorError(f"bad group element {obj!r}: {exc}") from None

    def __str__(self):
        return _fmt(self.entries)

    def __repr__(self):
        return f"GroupElement({_fmt(self.entries)} in {self.desc})"


def _fmt(entries: Iterable[Fraction]) -> str:
    entries = list(entries)
    if len(entries) == 1:
        return str(entries[0])
    return "(" + ", ".join(str(a) for a in entries) + ")"


def compare(a: GroupElement, b: GroupElement) -> Ordering:
    a._check(b)
    if a.entries < b.entries:
        return Ordering.LT
    if a.entries > b.entries:
        return Ordering.GT
    return Ordering.EQ


def contains(desc: GroupDesc, e: Union[GroupElement, Sequence[RationalLike]]) -> bool:
    """Membership of an element of the divisible hull in ``desc``."""
    entries = e.entries if isinstance(e, GroupElement) else tuple(to_fraction(x) for x in e)
    return desc.contains(entries)
