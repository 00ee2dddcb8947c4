"""Classification of Artin-Schreier extensions of prime degree."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from defectlab.asdefect.reduce import (
    ASInstance,
    DistanceCertificate,
    ReductionTrace,
    Status,
    as_reduce,
    distance_estimate,
)
from defectlab.cuts import Cut, Membership, element_vs_cut, is_idempotent
from defectlab.errors import InsufficientDataError, PrecisionError
from defectlab.hahnfield.series import HahnSeries
from defectlab.ogroup import INFINITY


class Kind(str, enum.Enum):
    SPLIT_HENSELIAN = "SPLIT_HENSELIAN"
    RESIDUAL_DEGREE_P = "RESIDUAL_DEGREE_P"
    RAMIFIED = "RAMIFIED"
    DEFECT = "DEFECT"


class Dependence(str, enum.Enum):
    DEPENDENT = "DEPENDENT"
    INDEPENDENT = "INDEPENDENT"
    UNRESOLVED = "UNRESOLVED"


@dataclass(frozen=True)
class Classification:
    kind: Kind
    e: int
    f: int
    g: int
    d: int
    trace: ReductionTrace
    distance: Cut | None = None
    dependence: Dependence | None = None
    certificate: DistanceCertificate | None = None

    def to_json(self) -> dict:
        out = {
            "kind": self.kind.value,
            "e": self.e,
            "f": self.f,
            "g": self.g,
            "d": self.d,
            "trace": self.trace.to_json(),
        }
        if self.kind is Kind.DEFECT:
            out["distance"] = None if self.distance is None else str(self.distance)
            out["dependence"] = self.dependence.value
            out["certificate"] = None if self.certificate is None else self.certificate.to_json()
        return out


def _make(kind: Kind, p: int, trace: ReductionTrace, **extra) -> Classification:
    factors = {"e": 1, "f": 1, "g": 1, "d": 1}
    factors[{Kind.RAMIFIED: "e", Kind.RESIDUAL_DEGREE_P: "f", Kind.SPLIT_HENSELIAN: "g", Kind.DEFECT: "d"}[kind]] = p
    return Classification(kind, trace=trace, **factors, **extra)


def classify(inst: ASInstance, budget: int = 16) -> Classification:
    trace = as_reduce(inst, budget)
    p = inst.p
    if trace.status is Status.TERMINATED_NONNEG:
        r = trace.residual
        zero = r.ring.exps.zero()
        if not r.terms or r.terms[0][0] > zero:
            return _make(Kind.SPLIT_HENSELIAN, p, trace)
        if inst.field.coeffs.as_roots(r.residue()):
            return _make(Kind.SPLIT_HENSELIAN, p, trace)
        return _make(Kind.RESIDUAL_DEGREE_P, p, trace)
    if trace.status is Status.TERMINATED_VALUE_OBSTRUCTION:
        return _make(Kind.RAMIFIED, p, trace)
    if trace.status is Status.TERMINATED_RESIDUE_OBSTRUCTION:
        return _make(Kind.RESIDUAL_DEGREE_P, p, trace)
    try:
        cert = distance_estimate(trace)
    except InsufficientDataError:
        return _make(Kind.DEFECT, p, trace, dependence=Dependence.UNRESOLVED)
    if not cert.resolved:
        return _make(Kind.DEFECT, p, trace, dependence=Dependence.UNRESOLVED, certificate=cert)
    dep = Dependence.INDEPENDENT if is_idempotent(cert.cut) else Dependence.DEPENDENT
    return _make(Kind.DEFECT, p, trace, distance=cert.cut, dependence=dep, certificate=cert)


def generator_change(inst: ASInstance, i: int, c: HahnSeries) -> ASInstance:
    """Instance for the generator i*theta + c, i.e. a' = i*a + c^p - c."""
    if not 1 <= i < inst.p:
        raise ValueError(f"i must lie in 1..{inst.p - 1}")
    a = inst.a * i + c.frobenius() - c
    return ASInstance(a, inst.field)


def similar(z: HahnSeries, y: HahnSeries, dist: Cut) -> bool:
    """``v(z - y) > dist``: z and y have the same approximation type."""
    diff = z - y
    if diff.terms:
        return element_vs_cut(diff.terms[0][0], dist) is Membership.IN_RIGHT
    if diff.precision is INFINITY:
        return True
    # only a lower bound for the value is known
    if element_vs_cut(diff.precision, dist) is Membership.IN_RIGHT:
        return True
    raise PrecisionError(f"v(z - y) is only known to be >= {diff.precision}")
