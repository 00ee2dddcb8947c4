"""Deforming the purely inseparable extension K(eta), eta^p = a, into
Artin-Schreier extensions.

For b in K the substitution Y = bX turns Y^p - b^{p-1} Y - a into
g_{a,b}(X) = X^p - X - a/b^p.  When (p-1) vb + v(eta) lies above
p * dist(eta, K), a root theta of g_{a,b} satisfies b*theta ~ eta and the
Artin-Schreier extension is a dependent defect extension.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from defectlab.asdefect.classify import Classification, classify, similar
from defectlab.asdefect.probes import InseparableForm, Outcome, ProbeResult, extremality_probe
from defectlab.asdefect.reduce import ASInstance, DistanceCertificate, distance_estimate
from defectlab.asdefect.roots import as_root
from defectlab.cuts import Cut, Membership, Side, cut_nfold, element_vs_cut
from defectlab.errors import PreconditionError, PrecisionError, UndecidableError
from defectlab.hahnfield.fields import FieldDesc
from defectlab.hahnfield.series import HahnSeries
from defectlab.ogroup import INFINITY, GroupElement


@dataclass(frozen=True)
class DeformationQuery:
    a: HahnSeries
    b: HahnSeries
    field: FieldDesc
    b_pth: HahnSeries | None = None  # b^p, when Frobenius would lose precision

    @classmethod
    def with_value(cls, a: HahnSeries, field: FieldDesc, vb, coeff: int = 1) -> "DeformationQuery":
        """Query with b the field's standard element of value ``vb``."""
        pair = field.power_pair(field.ring.exponent(vb), coeff)
        if pair is None:
            raise PreconditionError(f"{vb} is not a value of {field.name}")
        return cls(a, pair[0], field, pair[1])

    def b_power(self) -> HahnSeries:
        return self.b_pth if self.b_pth is not None else self.b.frobenius()


@dataclass(frozen=True)
class EtaDistance:
    """dist(eta, K) with the probe that produced it."""

    cut: Cut
    probe: ProbeResult
    values: tuple  # v(eta - c) along the probe
    approximants: tuple
    certificate: DistanceCertificate | None = None

    def to_json(self) -> dict:
        return {
            "cut": str(self.cut),
            "values": [v.to_json() for v in self.values],
            "certificate": None if self.certificate is None else self.certificate.to_json(),
            "probe_outcome": self.probe.outcome.value,
        }


@dataclass(frozen=True)
class DeformationResult:
    condition_holds: bool
    condition_value: GroupElement
    threshold: Cut
    eta: EtaDistance
    classification: Classification
    similarity_verified: bool
    approximants_agree: bool | None
    notes: tuple = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "condition_holds": self.condition_holds,
            "condition_value": self.condition_value.to_json(),
            "threshold": str(self.threshold),
            "eta_distance": self.eta.to_json(),
            "classification": self.classification.to_json(),
            "similarity_verified": self.similarity_verified,
            "approximants_agree": self.approximants_agree,
            "notes": list(self.notes),
        }


def eta_distance(a: HahnSeries, field: FieldDesc, budget: int = 16) -> EtaDistance:
    """dist(eta, K) for eta^p = a, from the probe of a - X^p."""
    probe = extremality_probe(InseparableForm(a), field, budget)
    p = field.p
    inv_p = Fraction(1, p)
    if probe.outcome is Outcome.MAX_FOUND and probe.value is INFINITY:
        raise PreconditionError("a is a p-th power in K; eta lies in K")
    values = tuple(v.scale(inv_p) for v in probe.values)
    approximants = tuple(w[0] for w, _ in probe.sequence)
    if probe.outcome is Outcome.MAX_FOUND:
        cut = Cut.point(values[-1], Side.PLUS)
        return EtaDistance(cut, probe, values, approximants)
    if probe.outcome is Outcome.INCONCLUSIVE:
        raise UndecidableError("probe of a - X^p was inconclusive")
    cert = distance_estimate(list(values), p)
    if not cert.resolved:
        raise UndecidableError("dist(eta, K) could not be certified")
    return EtaDistance(cert.cut, probe, values, approximants, cert)


def deform(q: DeformationQuery, budget: int = 16, precision=None) -> DeformationResult:
    field_ = q.field
    ring = field_.ring
    p = field_.p
    a, b = q.a, q.b
    eta_dist = eta_distance(a, field_, budget)
    eps = eta_dist.cut
    v_eta = a.valuation().scale(Fraction(1, p))
    vb = b.valuation()
    cond_value = vb * (p - 1) + v_eta
    threshold = cut_nfold(p, eps)
    holds = element_vs_cut(cond_value, threshold) is Membership.IN_RIGHT

    # a / b^p, known well past the distance cut
    margin = eps.shift + ring.exps.unit(0)
    work = precision if precision is not None else margin - vb + ring.exps.unit(0) * 2
    work = ring.precision(work)
    bp = q.b_power()
    rhs = a * bp.invert(work - a.valuation())
    classification = classify(ASInstance(rhs, field_), budget)

    notes = []
    eta = a.pth_root()
    # the negative part of theta accumulates at 0, so stop just short of it
    tiny = ring.exps.unit(0).scale(Fraction(-1, p ** (budget + 4)))
    theta = as_root(rhs, margin - vb, min(margin - vb, tiny))
    similar_root = None
    if theta is None:
        notes.append("the residue equation of g_{a,b} has no root in the coefficient field")
    else:
        for i in range(p):
            z = b * (theta + i) if i else b * theta
            try:
                if similar(z, eta, eps):
                    similar_root = z
                    break
            except PrecisionError as exc:
                notes.append(f"root {i}: {exc}")
    agree = None
    if similar_root is not None:
        agree = True
        for c in eta_dist.approximants:
            if (similar_root - c).valuation() != (eta - c).valuation():
                agree = False
                break
    verified = similar_root is not None and agree is not False
    return DeformationResult(
        holds, cond_value, threshold, eta_dist, classification, verified, agree, tuple(notes)
    )
