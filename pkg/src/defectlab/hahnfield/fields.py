"""Descriptors for the valued fields K that live inside a series ring.

A field descriptor answers the questions the reduction algorithms ask
about K: which exponents occur as values, and how to produce an element
of K with a prescribed leading monomial (together with its p-th power,
computed without the precision loss of a naive Frobenius).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from defectlab.errors import DescriptorError
from defectlab.hahnfield.series import HahnSeries, SeriesRing
from defectlab.ogroup import GroupDesc, GroupElement, Kind


class FieldDesc:
    """Base class.  Subclasses set ``ring``, ``value_group`` and ``name``."""

    ring: SeriesRing
    value_group: GroupDesc
    name: str

    @property
    def p(self) -> int:
        return self.ring.p

    @property
    def coeffs(self):
        return self.ring.coeffs

    @property
    def hull(self) -> GroupDesc:
        return self.ring.exps

    def admits(self, e: GroupElement) -> bool:
        return self.value_group.contains(e.entries)

    def power_pair(self, gamma: GroupElement, coeff: int) -> tuple[HahnSeries, HahnSeries] | None:
        """``(y, y^p)`` with ``y`` in K of leading monomial ``coeff * t^gamma``.

        Returns None when ``gamma`` is not a value of K.
        """
        raise NotImplementedError

    def element_of_value(self, gamma, coeff: int = 1) -> HahnSeries:
        gamma = self.ring.exponent(gamma)
        pair = self.power_pair(gamma, coeff)
        if pair is None:
            raise DescriptorError(f"{gamma} is not a value of {self.name}")
        return pair[0]

    def pth_preimage(self, e: GroupElement, coeff: int) -> tuple[HahnSeries, HahnSeries] | None:
        """``(y, y^p)`` with ``y`` in K and ``y^p`` of leading monomial ``coeff * t^e``."""
        gamma = e.scale(Fraction(1, self.p))
        return self.power_pair(gamma, self.coeffs.pth_root(coeff))

    def wp_preimage(self, e: GroupElement, coeff: int) -> tuple[HahnSeries, HahnSeries] | None:
        """``(y, y^p - y)`` for the ``y`` of :meth:`pth_preimage`."""
        pre = self.pth_preimage(e, coeff)
        if pre is None:
            return None
        y, yp = pre
        return y, yp - y

    def to_json(self) -> dict:
        return {"name": self.name, "p": self.p, "m": self.coeffs.m, "value_group": self.value_group.to_json()}


@dataclass(frozen=True, eq=True)
class MonomialField(FieldDesc):
    """A field containing every monomial ``u t^gamma`` with gamma in its value group.

    ``MonomialField.rational(p)`` models F_q(t) (value group Z),
    ``MonomialField.perfect(p)`` its perfect hull (value group Z[1/p]).
    """

    ring: SeriesRing
    value_group: GroupDesc
    name: str = "monomial"

    def __post_init__(self):
        if self.value_group.rank != self.ring.exps.rank or self.value_group.p != self.ring.p:
            raise DescriptorError("value group does not fit the series ring")

    @classmethod
    def make(cls, p: int, coords, m: int = 1, name: str = "monomial") -> "MonomialField":
        """Field whose value group has the given coordinate kinds, e.g. ``("Z[1/p]", "Z")``."""
        vg = GroupDesc(p, tuple(Kind(k) for k in coords))
        return cls(SeriesRing.make(p, m, vg.rank), vg, name)

    @classmethod
    def rational(cls, p: int, m: int = 1) -> "MonomialField":
        return cls(SeriesRing.make(p, m), GroupDesc.of(p, Kind.INTEGERS), "rational")

    @classmethod
    def perfect(cls, p: int, m: int = 1) -> "MonomialField":
        return cls(SeriesRing.make(p, m), GroupDesc.of(p, Kind.P_ADIC_FRACTIONS), "perfect")

    def power_pair(self, gamma, coeff):
        if coeff == 0:
            raise ValueError("leading coefficient must be nonzero")
        if not self.admits(gamma):
            return None
        f = self.coeffs
        return (
            self.ring.monomial(gamma, coeff),
            self.ring.monomial(gamma * self.p, f.frobenius(coeff)),
        )

    def to_json(self) -> dict:
        out = super().to_json()
        out["kind"] = self.name
        return out
