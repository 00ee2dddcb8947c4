"""The Artin-Schreier tower k(a_1, a_2, ...) over k(t).

``a_1`` is a root of X^p - X - 1/t and ``a_{i+1}`` a root of X^p - X + a_i,
so ``v(a_i) = -1/p^i`` and the value group of the full tower is Z[1/p].
Only finitely many generators are materialized; asking for a value that
needs a deeper generator raises :class:`DepthExhaustedError`.

Every generator is a series accumulating at 0 from below, so it is stored
with a negative precision bound ``-1/p^N``.  p-th powers of tower elements
are never taken by Frobenius (which would multiply that bound by p); they
are rebuilt from the exact relations ``a_i^p = a_i - a_{i-1}`` with
``a_0 = -1/t``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from defectlab.asdefect.roots import as_root_negative
from defectlab.errors import DepthExhaustedError, DescriptorError
from defectlab.hahnfield.fields import FieldDesc
from defectlab.hahnfield.series import HahnSeries, SeriesRing
from defectlab.ogroup import GroupDesc, Kind


def _base_p_digits(frac: Fraction, p: int) -> list[int]:
    """Digits d_1, d_2, ... with frac = sum d_i / p^i (frac in [0, 1), p-power denominator)."""
    digits = []
    while frac:
        frac *= p
        d = int(frac)
        digits.append(d)
        frac -= d
    return digits


@dataclass(frozen=True, eq=False)
class TowerField(FieldDesc):
    p_: int
    depth: int = 10
    m: int = 1
    gen_precision: int = 0
    name: str = "tower"
    ring: SeriesRing = field(init=False, repr=False)
    value_group: GroupDesc = field(init=False, repr=False)
    generators: tuple[HahnSeries, ...] = field(init=False, repr=False)
    powers: tuple[HahnSeries, ...] = field(init=False, repr=False)

    def __post_init__(self):
        if self.depth < 1:
            raise DescriptorError("tower depth must be >= 1")
        n = self.gen_precision or self.depth + 8
        ring = SeriesRing.make(self.p_, self.m)
        object.__setattr__(self, "gen_precision", n)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "value_group", GroupDesc.of(self.p_, Kind.P_ADIC_FRACTIONS))
        target = Fraction(-1, self.p_**n)
        prev = -ring.t(-1)  # a_0 = -1/t
        gens, pows = [], []
        for _ in range(self.depth):
            gen = as_root_negative(-prev, target)
            gens.append(gen)
            pows.append(gen - prev)
            prev = gen
        object.__setattr__(self, "generators", tuple(gens))
        object.__setattr__(self, "powers", tuple(pows))

    @classmethod
    def make(cls, p: int, depth: int = 10, m: int = 1, gen_precision: int = 0) -> "TowerField":
        return cls(p, depth, m, gen_precision)

    def __eq__(self, other):
        if not isinstance(other, TowerField):
            return NotImplemented
        return (self.p_, self.depth, self.m, self.gen_precision) == (
            other.p_, other.depth, other.m, other.gen_precision)

    def __hash__(self):
        return hash(("tower", self.p_, self.depth, self.m, self.gen_precision))

    def generator(self, i: int) -> HahnSeries:
        """``a_i`` for 1 <= i <= depth."""
        if not 1 <= i <= self.depth:
            raise DepthExhaustedError(f"generator a_{i} is beyond tower depth {self.depth}")
        return self.generators[i - 1]

    def power_pair(self, gamma, coeff):
        if coeff == 0:
            raise ValueError("leading coefficient must be nonzero")
        if not self.admits(gamma):
            return None
        ring = self.ring
        f = self.coeffs
        g = gamma.entries[0]
        q = -((-g.numerator) // g.denominator)  # ceil
        digits = _base_p_digits(q - g, self.p_)
        if len(digits) > self.depth:
            raise DepthExhaustedError(
                f"value {gamma} needs generator a_{len(digits)}, tower depth is {self.depth}"
            )
        y = ring.t(q)
        yp = ring.t(q * self.p_)
        lead = 1
        for i, d in enumerate(digits, start=1):
            for _ in range(d):
                y = y * self.generators[i - 1]
                yp = yp * self.powers[i - 1]
            if i % 2 == 0 and d % 2 == 1:
                lead = f.neg(lead)  # a_i has leading coefficient (-1)^(i-1)
        u = f.mul(coeff, f.inv(lead))
        return y.scale(u), yp.scale(f.frobenius(u))

    def wp_preimage(self, e, coeff):
        pre = super().wp_preimage(e, coeff)
        if pre is None:
            return None
        y, _ = pre
        # u * a_i with u in F_p: y^p - y = -u * a_{i-1}, exact for i = 1
        gamma = e.scale(Fraction(1, self.p_))
        digits = _base_p_digits(-gamma.entries[0], self.p_)
        if gamma.entries[0] < 0 and digits and digits[-1] == 1 and not any(digits[:-1]):
            i = len(digits)
            u = y.leading()[1]
            if i % 2 == 0:
                u = self.coeffs.neg(u)
            if self.coeffs.frobenius(u) == u:
                prev = -self.ring.t(-1) if i == 1 else self.generators[i - 2]
                return y, (-prev).scale(u)
        return pre

    def to_json(self) -> dict:
        out = super().to_json()
        out.update({"kind": "tower", "depth": self.depth, "generator_precision": self.gen_precision})
        return out
