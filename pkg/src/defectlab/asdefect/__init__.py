"""Artin-Schreier extensions: reduction traces, classification, deformation, probes."""

from defectlab.asdefect.classify import (
    Classification,
    Dependence,
    Kind,
    classify,
    generator_change,
    similar,
)
from defectlab.asdefect.deform import DeformationQuery, DeformationResult, deform, eta_distance
from defectlab.asdefect.probes import (
    InseparableForm,
    Outcome,
    PForm,
    ProbeResult,
    extremality_probe,
    newton_improve,
    poly_derivative,
    poly_eval,
)
from defectlab.asdefect.reduce import (
    ASInstance,
    DistanceCertificate,
    ReductionTrace,
    Status,
    as_reduce,
    distance_estimate,
)
from defectlab.asdefect.roots import as_root, as_root_negative, as_root_positive, as_root_value
from defectlab.asdefect.tower import TowerField

__all__ = [
    "ASInstance",
    "Classification",
    "DeformationQuery",
    "DeformationResult",
    "Dependence",
    "DistanceCertificate",
    "InseparableForm",
    "Kind",
    "Outcome",
    "PForm",
    "ProbeResult",
    "ReductionTrace",
    "Status",
    "TowerField",
    "as_reduce",
    "as_root",
    "as_root_negative",
    "as_root_positive",
    "as_root_value",
    "classify",
    "deform",
    "distance_estimate",
    "eta_distance",
    "extremality_probe",
    "generator_change",
    "newton_improve",
    "poly_derivative",
    "poly_eval",
    "similar",
]
