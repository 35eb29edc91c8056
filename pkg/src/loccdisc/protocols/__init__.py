from .catalog import (
    OneWayProtocol,
    Provenance,
    catalog_bases,
    catalog_protocol,
    check_orthonormal,
    listed_sets,
    matches_set0_fourier,
    matches_set0_standard,
)
from .classify import ClassReport, classify_all, classify_class, reports_frame, summarize
from .verifier import BobResidual, bob_residuals, find_protocol, verify_protocol

__all__ = [
    "OneWayProtocol",
    "Provenance",
    "catalog_bases",
    "catalog_protocol",
    "check_orthonormal",
    "listed_sets",
    "matches_set0_fourier",
    "matches_set0_standard",
    "ClassReport",
    "classify_all",
    "classify_class",
    "reports_frame",
    "summarize",
    "BobResidual",
    "bob_residuals",
    "find_protocol",
    "verify_protocol",
]
