"""Truncated generalized power series over finite fields."""

from defectlab.hahnfield.fields import FieldDesc, MonomialField
from defectlab.hahnfield.gf import FiniteField
from defectlab.hahnfield.series import HahnSeries, SeriesRing

__all__ = ["FieldDesc", "FiniteField", "HahnSeries", "MonomialField", "SeriesRing"]
