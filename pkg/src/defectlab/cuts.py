"""Cuts of the form gamma + H^{+/-} in lexicographic value groups.

A convex subgroup is named by an index ``j``: ``H_j`` is the set of
elements whose first ``j`` coordinates vanish, so ``H_0`` is the whole
group and ``H_rank`` is ``{0}``.  With that convention the left set of a
cut only depends on the first ``j`` coordinates::

    alpha in L(gamma + H_j^+)  <=>  alpha[:j] - gamma[:j] <= 0   (lexicographic)
    alpha in L(gamma + H_j^-)  <=>  alpha[:j] - gamma[:j] <  0

``H_0^+`` is the top cut and ``H_0^-`` the bottom cut.  Normal forms set
the coordinates of the shift at positions ``>= j`` to zero and, when the
quotient by ``H_j`` has a least positive element, rewrite ``-`` as ``+``
one step lower.  Two cuts are equal exactly when their normal forms are.

Left sums follow a closed-form table; :func:`grid_oracle` recomputes them
extensionally on a finite sample so the table can be checked.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from defectlab.errors import DescriptorError
from defectlab.ogroup import GroupDesc, GroupElement, Ordering


class Side(str, enum.Enum):
    MINUS = "-"
    PLUS = "+"


class Membership(str, enum.Enum):
    IN_LEFT = "IN_LEFT"
    IN_RIGHT = "IN_RIGHT"


def _prefix_cmp(alpha: Sequence[Fraction], gamma: Sequence[Fraction], j: int) -> int:
    for a, g in zip(alpha[:j], gamma[:j]):
        if a != g:
            return -1 if a < g else 1
    return 0


@dataclass(frozen=True)
class Cut:
    desc: GroupDesc
    shift: GroupElement
    j: int
    side: Side

    def __post_init__(self):
        if not 0 <= self.j <= self.desc.rank:
            raise DescriptorError(f"subgroup index {self.j} out of range for {self.desc}")
        if self.shift.desc != self.desc:
            raise DescriptorError("cut shift lives in a different group")

    # -- construction -------------------------------------------------------

    @classmethod
    def make(cls, shift: GroupElement, j: int, side: Side | str) -> "Cut":
        """Normal form of ``shift + H_j^side``."""
        desc = shift.desc
        side = Side(side)
        if not 0 <= j <= desc.rank:
            raise DescriptorError(f"subgroup index {j} out of range for {desc}")
        ent = list(shift.entries[:j]) + [Fraction(0)] * (desc.rank - j)
        if side is Side.MINUS and desc.has_least_positive(j):
            ent[j - 1] -= 1
            side = Side.PLUS
        return cls(desc, GroupElement._make(desc, tuple(ent)), j, side)

    @classmethod
    def point(cls, alpha: GroupElement, side: Side | str) -> "Cut":
        """``alpha^+`` or ``alpha^-``."""
        return cls.make(alpha, alpha.desc.rank, side)

    @classmethod
    def edge(cls, desc: GroupDesc, j: int, side: Side | str) -> "Cut":
        """``H_j^+`` or ``H_j^-``."""
        return cls.make(desc.zero(), j, side)

    @classmethod
    def top(cls, desc: GroupDesc) -> "Cut":
        return cls.edge(desc, 0, Side.PLUS)

    @classmethod
    def bottom(cls, desc: GroupDesc) -> "Cut":
        return cls.edge(desc, 0, Side.MINUS)

    @property
    def is_top(self) -> bool:
        return self.j == 0 and self.side is Side.PLUS

    @property
    def is_bottom(self) -> bool:
        return self.j == 0 and self.side is Side.MINUS

    # -- semantics ----------------------------------------------------------

    def contains_left(self, alpha: GroupElement) -> bool:
        if alpha.desc.rank != self.desc.rank:
            raise DescriptorError(f"element of {alpha.desc} tested against cut in {self.desc}")
        c = _prefix_cmp(alpha.entries, self.shift.entries, self.j)
        return c <= 0 if self.side is Side.PLUS else c < 0

    def _key(self):
        body = tuple((0, g) for g in self.shift.entries[: self.j])
        return body + ((1 if self.side is Side.PLUS else -1, 0),)

    def embed(self, desc: GroupDesc) -> "Cut":
        """The induced cut in an extension group (usually the divisible hull)."""
        if desc == self.desc:
            return self
        if not desc.extends(self.desc):
            raise DescriptorError(f"{desc} does not extend {self.desc}")
        return Cut.make(self.shift.embed(desc), self.j, self.side)

    def translate(self, alpha: GroupElement) -> "Cut":
        """``alpha + Lambda``."""
        return Cut.make(self.shift + alpha, self.j, self.side)

    # -- operators ----------------------------------------------------------

    def __add__(self, other: "Cut") -> "Cut":
        return cut_add(self, other)

    def __rmul__(self, n: int) -> "Cut":
        return cut_nfold(n, self)

    def __lt__(self, other: "Cut") -> bool:
        return cut_compare(self, other) is Ordering.LT

    def __le__(self, other: "Cut") -> bool:
        return cut_compare(self, other) is not Ordering.GT

    def __gt__(self, other: "Cut") -> bool:
        return cut_compare(self, other) is Ordering.GT

    def __ge__(self, other: "Cut") -> bool:
        return cut_compare(self, other) is not Ordering.LT

    # -- I/O ----------------------------------------------------------------

    def to_json(self):
        if self.is_top:
            return "TOP"
        if self.is_bottom:
            return "BOTTOM"
        return {"shift": self.shift.to_json(), "H": self.j, "side": self.side.value}

    @classmethod
    def from_json(cls, desc: GroupDesc, obj) -> "Cut":
        if obj == "TOP":
            return cls.top(desc)
        if obj == "BOTTOM":
            return cls.bottom(desc)
        try:
            shift = GroupElement.from_json(desc, obj["shift"])
            return cls.make(shift, int(obj.get("H", desc.rank)), Side(obj["side"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise DescriptorError(f"bad cut {obj!r}: {exc}") from None

    def __str__(self):
        if self.is_top:
            return "TOP"
        if self.is_bottom:
            return "BOTTOM"
        if self.desc.rank == 1:
            return f"({self.shift.entries[0]},{self.side.value})"
        vec = "[" + ",".join(str(a) for a in self.shift.entries) + "]"
        if self.j == self.desc.rank:
            return f"({vec},{self.side.value})"
        return f"({vec},H{self.j},{self.side.value})"


def _unify(c1: Cut, c2: Cut) -> tuple[Cut, Cut]:
    if c1.desc == c2.desc:
        return c1, c2
    if c2.desc.extends(c1.desc):
        return c1.embed(c2.desc), c2
    if c1.desc.extends(c2.desc):
        return c1, c2.embed(c1.desc)
    raise DescriptorError(f"cuts over incomparable groups {c1.desc} and {c2.desc}")


def cut_compare(c1: Cut, c2: Cut) -> Ordering:
    """Order by inclusion of left sets, after embedding into the larger group."""
    c1, c2 = _unify(c1, c2)
    k1, k2 = c1._key(), c2._key()
    if k1 < k2:
        return Ordering.LT
    if k1 > k2:
        return Ordering.GT
    return Ordering.EQ


def cut_add(c1: Cut, c2: Cut) -> Cut:
    """Left sum.

    The larger subgroup wins and contributes its side; on equal subgroups the
    result is ``+`` only when both operands are ``+``.
    """
    c1, c2 = _unify(c1, c2)
    shift = c1.shift + c2.shift
    if c1.j < c2.j:
        return Cut.make(shift, c1.j, c1.side)
    if c2.j < c1.j:
        return Cut.make(shift, c2.j, c2.side)
    side = Side.PLUS if c1.side is Side.PLUS and c2.side is Side.PLUS else Side.MINUS
    return Cut.make(shift, c1.j, side)


def cut_nfold(n: int, c: Cut) -> Cut:
    if n < 1:
        raise ValueError("n-fold sums need n >= 1")
    return Cut.make(n * c.shift, c.j, c.side)


def is_idempotent(c: Cut) -> bool:
    return cut_add(c, c) == c


def is_subgroup_edge(c: Cut) -> bool:
    """Whether ``c`` equals ``H^+`` or ``H^-`` for one of the convex subgroups."""
    return any(
        c == Cut.edge(c.desc, j, side) for j in range(c.desc.rank + 1) for side in Side
    )


def element_vs_cut(alpha: GroupElement, c: Cut) -> Membership:
    return Membership.IN_LEFT if c.contains_left(alpha) else Membership.IN_RIGHT


def idempotency_checks(c: Cut, n: int, sample: Iterable[GroupElement]) -> dict[str, bool]:
    """Evaluate several equivalent-over-divisible-groups idempotency tests.

    ``a``: Lambda + Lambda = Lambda; ``c``: i*Lambda = Lambda for 2 <= i <= n;
    ``d``: n*Lambda = Lambda; ``f``: the set of n-multiples of the left set
    equals the left set (on the sample); ``h``/``i``: alpha and n*alpha lie
    on the same side (on the sample); ``k``: Lambda is a subgroup edge.
    """
    sample = list(sample)
    f_ok = True
    h_ok = True
    for beta in sample:
        in_left = c.contains_left(beta)
        if in_left != c.contains_left(n * beta):
            h_ok = False
        root = tuple(x / n for x in beta.entries)
        in_multiple = c.desc.contains(root) and c.contains_left(
            GroupElement._make(beta.desc, root)
        )
        if in_multiple != in_left:
            f_ok = False
    return {
        "a": is_idempotent(c),
        "c": all(cut_nfold(i, c) == c for i in range(2, n + 1)),
        "d": cut_nfold(n, c) == c,
        "f": f_ok,
        "h": h_ok,
        "i": h_ok,
        "k": is_subgroup_edge(c),
    }


# -- extensional oracle ---------------------------------------------------------


def _raw_left(alpha: Sequence[Fraction], shift: Sequence[Fraction], j: int, side: Side) -> bool:
    # definition of the left set of shift + H_j^side, no normal forms involved
    diff = [a - g for a, g in zip(alpha[:j], shift[:j])]
    first = next((d for d in diff if d), Fraction(0))
    if side is Side.PLUS:
        return first <= 0
    return first < 0


@dataclass(frozen=True)
class LexGrid:
    """A finite product grid, indexed in lexicographic order without materialising it."""

    desc: GroupDesc
    axes: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def uniform(cls, desc: GroupDesc, bound: int, denominators: Sequence[int]) -> "LexGrid":
        """Coordinate ``i`` runs over multiples of ``1/denominators[i]`` in ``[-bound, bound]``."""
        axes = []
        for d in denominators:
            axes.append(tuple(Fraction(k, d) for k in range(-bound * d, bound * d + 1)))
        return cls(desc, tuple(axes))

    def __len__(self):
        n = 1
        for ax in self.axes:
            n *= len(ax)
        return n

    def __getitem__(self, idx: int) -> GroupElement:
        ent = []
        for ax in reversed(self.axes):
            idx, r = divmod(idx, len(ax))
            ent.append(ax[r])
        return GroupElement._make(self.desc, tuple(reversed(ent)))


def grid_oracle(
    c1: tuple[GroupElement, int, Side],
    c2: tuple[GroupElement, int, Side],
    sample: Iterable[GroupElement],
    witnesses: LexGrid,
) -> frozenset[GroupElement]:
    """Points of ``sample`` lying in ``L1 + L2``, with summands drawn from ``witnesses``.

    Cuts are given raw as ``(shift, j, side)`` triples.  Because ``L1`` is an
    initial segment, the largest witness inside ``L1`` is the best summand
    for every target, and it is located by bisection over the sorted grid.
    """
    (g1, j1, s1), (g2, j2, s2) = c1, c2
    s1, s2 = Side(s1), Side(s2)
    lo, hi = 0, len(witnesses)
    while lo < hi:
        mid = (lo + hi) // 2
        if _raw_left(witnesses[mid].entries, g1.entries, j1, s1):
            lo = mid + 1
        else:
            hi = mid
    if lo == 0:
        return frozenset()
    best = witnesses[lo - 1].entries
    out = set()
    for z in sample:
        rest = tuple(a - b for a, b in zip(z.entries, best))
        if _raw_left(rest, g2.entries, j2, s2):
            out.add(z)
    return frozenset(out)

