"""Probes of value sets v(f(K)): extremality searches and Newton iteration."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence, Union

from defectlab.errors import DepthExhaustedError, NewtonDomainError, PrecisionError
from defectlab.hahnfield.fields import FieldDesc
from defectlab.hahnfield.series import HahnSeries
from defectlab.ogroup import INFINITY


@dataclass(frozen=True)
class PForm:
    """f(X) = X^p - X - a."""

    a: HahnSeries

    def describe(self) -> str:
        return f"X^p - X - ({self.a})"


@dataclass(frozen=True)
class InseparableForm:
    """f(X_1, ..., X_n) = b - sum b_i X_i^p (a single X^p when ``coeffs`` is empty)."""

    b: HahnSeries
    coeffs: tuple[HahnSeries, ...] = ()

    def multipliers(self) -> tuple[HahnSeries, ...]:
        return self.coeffs or (self.b.ring.one(),)

    def describe(self) -> str:
        terms = " - ".join(f"({c})*X_{i}^p" for i, c in enumerate(self.multipliers(), start=1))
        return f"({self.b}) - {terms}"


class Outcome(str, enum.Enum):
    MAX_FOUND = "MAX_FOUND"
    INCREASING_WITNESS = "INCREASING_WITNESS"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class ProbeResult:
    outcome: Outcome
    sequence: tuple  # of (witness, value); witness is a series or a tuple of series
    note: str = ""

    @property
    def values(self) -> list:
        return [v for _, v in self.sequence]

    @property
    def witness(self):
        return self.sequence[-1][0]

    @property
    def value(self):
        return self.sequence[-1][1]

    def to_json(self) -> dict:
        def w_json(w):
            if isinstance(w, tuple):
                return [x.to_json() for x in w]
            return w.to_json()

        return {
            "outcome": self.outcome.value,
            "note": self.note,
            "sequence": [
                {"witness": w_json(w), "value": "inf" if v is INFINITY else v.to_json()}
                for w, v in self.sequence
            ],
        }


def _value(r: HahnSeries):
    if r.terms or r.precision is INFINITY:
        return r.valuation()
    raise PrecisionError(f"f(c) is zero below precision {r.precision}")


def _probe_pform(form: PForm, field: FieldDesc, budget: int) -> ProbeResult:
    ring = field.ring
    f = field.coeffs
    r = form.a  # a - (c^p - c), i.e. -f(c)
    c = ring.zero()
    seq = [(c, _value(r))]
    for _ in range(budget):
        if r.is_exact_zero():
            return ProbeResult(Outcome.MAX_FOUND, tuple(seq), "exact root in K")
        e, u = r.leading()
        sign = e.sign()
        try:
            if sign < 0:
                pre = field.wp_preimage(e, u)
            elif sign == 0:
                roots = f.as_roots(u)
                if not roots:
                    return ProbeResult(Outcome.MAX_FOUND, tuple(seq), "residue equation has no root")
                x = ring.constant(roots[0])
                pre = (x, ring.constant(u))
            else:
                # y^p is negligible against y, so y = -(leading monomial) kills it
                pre = field.power_pair(e, f.neg(u))
                if pre is not None:
                    pre = (pre[0], pre[1] - pre[0])
        except DepthExhaustedError as exc:
            return ProbeResult(Outcome.INCREASING_WITNESS, tuple(seq), str(exc))
        if pre is None:
            return ProbeResult(Outcome.MAX_FOUND, tuple(seq), f"leading exponent {e} is not reachable in K")
        y, wp = pre
        r = r - wp
        c = c + y
        seq.append((c, _value(r)))
    if r.is_exact_zero():
        return ProbeResult(Outcome.MAX_FOUND, tuple(seq), "exact root in K")
    return ProbeResult(Outcome.INCREASING_WITNESS, tuple(seq), "budget exhausted")


def _probe_inseparable(form: InseparableForm, field: FieldDesc, budget: int) -> ProbeResult:
    ring = field.ring
    f = field.coeffs
    mults = form.multipliers()
    r = form.b
    xs = [ring.zero()] * len(mults)
    seq = [(tuple(xs), _value(r))]
    for _ in range(budget):
        if r.is_exact_zero():
            return ProbeResult(Outcome.MAX_FOUND, tuple(seq), "exact zero reached")
        e, u = r.leading()
        chosen = None
        try:
            for i, m in enumerate(mults):
                me, mu = m.leading()
                pre = field.pth_preimage(e - me, f.mul(u, f.inv(mu)))
                if pre is not None:
                    chosen = (i, m, pre)
                    break
        except DepthExhaustedError as exc:
            return ProbeResult(Outcome.INCREASING_WITNESS, tuple(seq), str(exc))
        if chosen is None:
            if len(mults) == 1:
                # v(r - m x^p) = min(v r, v(m x^p)) <= v r for every x in K
                return ProbeResult(Outcome.MAX_FOUND, tuple(seq), f"leading exponent {e} is not reachable in K")
            return ProbeResult(Outcome.INCONCLUSIVE, tuple(seq), "greedy stripping is stuck; no maximality claim")
        i, m, (x, xp) = chosen
        r = r - m * xp
        xs[i] = xs[i] + x
        seq.append((tuple(xs), _value(r)))
    if r.is_exact_zero():
        return ProbeResult(Outcome.MAX_FOUND, tuple(seq), "exact zero reached")
    return ProbeResult(Outcome.INCREASING_WITNESS, tuple(seq), "budget exhausted")


def extremality_probe(form: Union[PForm, InseparableForm], field: FieldDesc, budget: int = 16) -> ProbeResult:
    """Search for an element maximizing v(f(x)) over K.

    MAX_FOUND carries a maximizing assignment; INCREASING_WITNESS carries a
    strictly increasing run of values, a finite witness that no maximum
    was reached within the budget (or tower depth).
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    if isinstance(form, PForm):
        return _probe_pform(form, field, budget)
    return _probe_inseparable(form, field, budget)


# -- Newton iteration -----------------------------------------------------------


def poly_eval(coeffs: Sequence[HahnSeries], x: HahnSeries) -> HahnSeries:
    """Horner evaluation of sum coeffs[k] x^k."""
    acc = x.ring.zero()
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_derivative(coeffs: Sequence[HahnSeries]) -> list[HahnSeries]:
    return [c * k for k, c in enumerate(coeffs)][1:]


def newton_improve(coeffs: Sequence[HahnSeries], c: HahnSeries, steps: int, precision) -> list:
    """Newton iterates ``(c_n, v g(c_n))`` starting from ``c``.

    Requires v g(c) > 2 v g'(c).  Stops early at an exact root or once
    g(c_n) vanishes below ``precision``.
    """
    ring = c.ring
    prec = ring.precision(precision)
    deriv = poly_derivative(coeffs)
    gc = poly_eval(coeffs, c)
    if gc.is_exact_zero():
        return [(c, INFINITY)]
    gc = gc.truncate(prec)
    dc = poly_eval(deriv, c).truncate(prec)
    if not gc.terms:
        raise PrecisionError("g(c) is zero below the working precision")
    if not dc.terms:
        raise NewtonDomainError("g'(c) vanishes at the working precision")
    if not gc.valuation() > dc.valuation() * 2:
        raise NewtonDomainError(f"need v g(c) > 2 v g'(c), got {gc.valuation()} and {dc.valuation()}")
    out = [(c, gc.valuation())]
    for _ in range(steps):
        c = (c - gc * dc.invert(prec)).truncate(prec)
        gc = poly_eval(coeffs, c).truncate(prec)
        if not gc.terms:
            if gc.precision is INFINITY:
                out.append((c, INFINITY))
            break
        dc = poly_eval(deriv, c).truncate(prec)
        out.append((c, gc.valuation()))
    return out
