"""Stripping p-th powers from an Artin-Schreier right-hand side.

Replacing ``a`` by ``a - y^p + y`` for ``y`` in K moves the root from
``theta`` to ``theta - y``.  Choosing ``y`` so that ``y^p`` kills the
leading negative term of ``a`` produces the approximants whose values
``v(theta - c_n)`` form the pseudo Cauchy sequence of the extension.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from defectlab.asdefect.roots import as_root_value
from defectlab.cuts import Cut, Side
from defectlab.errors import (
    DepthExhaustedError,
    DescriptorError,
    InsufficientDataError,
    PrecisionError,
)
from defectlab.hahnfield.fields import FieldDesc
from defectlab.hahnfield.series import HahnSeries
from defectlab.ogroup import INFINITY, GroupElement


@dataclass(frozen=True)
class ASInstance:
    """The extension generated by a root of X^p - X - a over ``field``."""

    a: HahnSeries
    field: FieldDesc

    def __post_init__(self):
        if self.a.ring != self.field.ring:
            raise DescriptorError("instance right-hand side is not over the field's ring")
        for e, _ in self.a.terms:
            if not self.field.admits(e):
                raise DescriptorError(f"exponent {e} is not a value of {self.field.name}")

    @property
    def p(self) -> int:
        return self.field.p


class Status(str, enum.Enum):
    TERMINATED_NONNEG = "TERMINATED_NONNEG"
    TERMINATED_VALUE_OBSTRUCTION = "TERMINATED_VALUE_OBSTRUCTION"
    TERMINATED_RESIDUE_OBSTRUCTION = "TERMINATED_RESIDUE_OBSTRUCTION"
    BUDGET_EXHAUSTED = "BUDGET_EXHAUSTED"


@dataclass(frozen=True)
class Step:
    correction: HahnSeries
    residual: HahnSeries
    value: GroupElement  # v(theta - sum of corrections so far)


@dataclass(frozen=True)
class ReductionTrace:
    instance: ASInstance
    steps: tuple[Step, ...]
    status: Status
    residual: HahnSeries
    note: str = ""

    @property
    def values(self) -> list[GroupElement]:
        return [s.value for s in self.steps]

    def approximants(self) -> list[HahnSeries]:
        """Partial sums c_n of the corrections."""
        out = []
        acc = self.instance.field.ring.zero()
        for s in self.steps:
            acc = acc + s.correction
            out.append(acc)
        return out

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "note": self.note,
            "steps": [
                {
                    "n": n,
                    "correction": s.correction.to_json(),
                    "value": s.value.to_json(),
                }
                for n, s in enumerate(self.steps, start=1)
            ],
            "residual_value": _value_json(self.residual),
        }


def _value_json(s: HahnSeries):
    try:
        v = s.valuation()
    except PrecisionError:
        return None
    return "inf" if v is INFINITY else v.to_json()


def _nonneg(s: HahnSeries) -> bool:
    """Whether v(s) >= 0; raises if the series is lost in its precision below 0."""
    zero = s.ring.exps.zero()
    if s.terms:
        return s.terms[0][0] >= zero
    if s.precision is INFINITY or s.precision > zero:
        return True
    raise PrecisionError(f"residual is zero below precision {s.precision}")


def as_reduce(inst: ASInstance, budget: int = 16) -> ReductionTrace:
    """Strip leading negative p-th powers from ``inst.a`` for at most ``budget`` steps."""
    if budget < 1:
        raise ValueError("budget must be >= 1")
    field_ = inst.field
    residual = inst.a
    steps: list[Step] = []

    def done(status, note=""):
        return ReductionTrace(inst, tuple(steps), status, residual, note)

    while True:
        try:
            if _nonneg(residual):
                return done(Status.TERMINATED_NONNEG)
        except PrecisionError as exc:
            raise PrecisionError(str(exc), partial=done(Status.BUDGET_EXHAUSTED)) from None
        e, u = residual.leading()
        try:
            pre = field_.wp_preimage(e, u)
        except DepthExhaustedError as exc:
            return done(Status.BUDGET_EXHAUSTED, str(exc))
        if pre is None:
            return done(Status.TERMINATED_VALUE_OBSTRUCTION, f"{e.scale(Fraction(1, inst.p))} is not a value of K")
        if len(steps) >= budget:
            return done(Status.BUDGET_EXHAUSTED)
        y, wp = pre
        residual = residual - wp
        try:
            value = as_root_value(residual)
        except PrecisionError as exc:
            raise PrecisionError(str(exc), partial=done(Status.BUDGET_EXHAUSTED)) from None
        steps.append(Step(y, residual, value))


@dataclass(frozen=True)
class DistanceCertificate:
    """Outcome of matching a value sequence against the known families.

    ``cut`` is None when no family fits (UNRESOLVED).
    """

    cut: Cut | None
    pattern: str
    limit: GroupElement | None = None
    scale: GroupElement | None = None
    start: int = 0
    points: int = 0
    details: dict = field(default_factory=dict)

    @property
    def resolved(self) -> bool:
        return self.cut is not None

    def to_json(self) -> dict:
        return {
            "pattern": self.pattern,
            "cut": None if self.cut is None else self.cut.to_json(),
            "cut_str": None if self.cut is None else str(self.cut),
            "limit": None if self.limit is None else self.limit.to_json(),
            "scale": None if self.scale is None else self.scale.to_json(),
            "start": self.start,
            "points": self.points,
        }


def _geometric_fit(xs: list[tuple], p: int):
    """Fit x_n = g - c/p^n on all of ``xs`` (tuples of Fractions); returns (g, c) or None."""
    ratio = Fraction(p, p - 1)
    g = tuple(a + (b - a) * ratio for a, b in zip(xs[0], xs[1]))
    c = tuple(gi - a for gi, a in zip(g, xs[0]))
    if not c > tuple(0 for _ in c):
        return None
    for k, x in enumerate(xs):
        scale = Fraction(1, p**k)
        if tuple(gi - ci * scale for gi, ci in zip(g, c)) != x:
            return None
    return g, c


def distance_estimate(trace, p: int | None = None, min_points: int = 3) -> DistanceCertificate:
    """Certify the cut approached by a strictly increasing value sequence.

    Families, tried on the shortest transient first:
      * ``geometric``: x_n = g - c/p^n with c > 0, giving the cut g + H_{i+1}^-
        where i is the first nonzero coordinate of c (g^- in rank 1);
      * ``edge``: the same fit on a prefix of the coordinates with limit 0,
        giving the convex subgroup edge H_{i+1}^-.
    Anything else is UNRESOLVED.  ``trace`` is a :class:`ReductionTrace` or
    a plain list of values (then ``p`` is required).
    """
    if isinstance(trace, ReductionTrace):
        values, p = trace.values, trace.instance.p
    else:
        values = list(trace)
        if p is None:
            raise ValueError("p is required for a bare value list")
    if len(values) < min_points:
        raise InsufficientDataError(f"need at least {min_points} values, got {len(values)}")
    desc = values[0].desc
    if any(not a < b for a, b in zip(values, values[1:])):
        return DistanceCertificate(None, "unresolved", details={"reason": "values not strictly increasing"})
    xs = [v.entries for v in values]
    for s in range(len(xs) - min_points + 1):
        tail = xs[s:]
        fit = _geometric_fit(tail, p)
        if fit is not None:
            g, c = fit
            i = next(k for k, ck in enumerate(c) if ck)
            limit = GroupElement(desc, g)
            cut = Cut.make(limit, i + 1, Side.MINUS)
            return DistanceCertificate(cut, "geometric", limit, GroupElement(desc, c), s, len(tail))
        for j in range(desc.rank - 1, 0, -1):
            fit = _geometric_fit([x[:j] for x in tail], p)
            if fit is None:
                continue
            g, c = fit
            i = next(k for k, ck in enumerate(c) if ck)
            if any(g[: i + 1]):
                continue
            cut = Cut.edge(desc, i + 1, Side.MINUS)
            return DistanceCertificate(
                cut,
                "edge",
                desc.zero(),
                GroupElement(desc, c + (Fraction(0),) * (desc.rank - j)),
                s,
                len(tail),
            )
    return DistanceCertificate(None, "unresolved", details={"reason": "no certified family fits the tail"})
