"""Certified packing and hitting of tripods in migration digraphs."""

from .bounds import BoundTable, G5, default_bounds
from .certify import certify, certify_edges
from .errors import (HarvestFailure, InternalSoundnessError, PreconditionError, SearchFailure,
                     TripodCertError)
from .graph import Digraph, Linkage, MigrationDigraph, Path, Tripod
from .tripods import Certificate, find_tripod, tripod_exists, verify_certificate

__all__ = [
    "BoundTable", "Certificate", "Digraph", "G5", "HarvestFailure", "InternalSoundnessError",
    "Linkage", "MigrationDigraph", "Path", "PreconditionError", "SearchFailure", "Tripod",
    "TripodCertError", "certify", "certify_edges", "default_bounds", "find_tripod",
    "tripod_exists", "verify_certificate",
]
