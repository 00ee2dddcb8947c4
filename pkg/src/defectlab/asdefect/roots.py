"""Roots of Artin-Schreier polynomials X^p - X - a inside the series ring."""

from __future__ import annotations

from fractions import Fraction

from defectlab.errors import PreconditionError, PrecisionError
from defectlab.hahnfield.series import HahnSeries
from defectlab.ogroup import INFINITY

_MAX_ITERATIONS = 10_000


def as_root_value(a: HahnSeries):
    """Value of any root of X^p - X - a: va/p if va <= 0, else va."""
    va = a.valuation()
    if va is INFINITY or va.sign() > 0:
        return va
    return va.scale(Fraction(1, a.ring.p))


def as_root_positive(a: HahnSeries, target=None) -> HahnSeries:
    """Root of value va > 0 by the fixed point iteration x <- x^p - a."""
    ring = a.ring
    if a.is_exact_zero():
        return ring.zero()
    va = a.valuation()
    if va.sign() <= 0:
        raise PreconditionError(f"as_root_positive needs va > 0, got {va}")
    prec = min(ring.precision(target), a.precision)
    if prec is INFINITY:
        raise PrecisionError("the root is an infinite series; give a target precision")
    if not va < prec:
        return ring.zero(prec)
    x = (-a).truncate(prec)
    for _ in range(_MAX_ITERATIONS):
        nxt = (x.frobenius() - a).truncate(prec)
        if nxt == x:
            return x
        x = nxt
    raise PrecisionError("fixed point iteration did not settle")


def as_root_negative(a: HahnSeries, target) -> HahnSeries:
    """Root sum_{j>=1} a^{1/p^j} for a whose known terms all have negative exponents.

    The result is known below ``min(target, precision(a)/p)``; ``target``
    must be a negative exponent (the series accumulates at 0 from below).
    """
    ring = a.ring
    zero = ring.exps.zero()
    if any(e >= zero for e, _ in a.terms):
        raise PreconditionError("as_root_negative needs purely negative exponents")
    cands = [ring.precision(target)]
    if a.precision is not INFINITY:
        cands.append(a.precision.scale(Fraction(1, ring.p)))
    prec = min(cands)
    if prec is INFINITY or prec >= zero:
        raise PrecisionError("the root accumulates at 0; give a negative target precision")
    out = ring.zero(prec)
    if not a.terms:
        return out
    root = a
    for _ in range(_MAX_ITERATIONS):
        root = root.pth_root()
        if not root.terms[0][0] < prec:
            return out
        out = out + root.truncate(prec)
    raise PrecisionError("negative part root did not reach the target precision")


def as_root(a: HahnSeries, target=None, negative_target=None) -> HahnSeries | None:
    """A root of X^p - X - a in the series ring, or None if the residue equation has no root.

    The other roots are the translates by 0, 1, ..., p-1.  The part coming
    from the negative terms of ``a`` accumulates at 0 from below and is
    computed to ``negative_target`` (default ``target``), which must then be
    a negative exponent.
    """
    if negative_target is None:
        negative_target = target
    ring = a.ring
    zero = ring.exps.zero()
    if a.precision is not INFINITY and a.precision <= zero:
        return as_root_negative(a, negative_target)
    neg, c0, pos = a.split()
    roots = ring.coeffs.as_roots(c0)
    if not roots:
        return None
    out = ring.constant(roots[0]) if roots[0] else ring.zero()
    if neg.terms:
        out = out + as_root_negative(neg, negative_target)
    if pos.terms or not pos.is_exact:
        cands = [ring.precision(target), pos.precision]
        prec = min(cands)
        if pos.terms:
            out = out + as_root_positive(pos, prec)
        else:
            out = out + ring.zero(prec)
    return out
