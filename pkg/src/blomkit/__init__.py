"""Blom key pre-distribution: original Vandermonde scheme, the adjacency-matrix
variant, collusion analysis and a digit-operation cost model."""

from blomkit.field import FieldMatrix, PrimeField
from blomkit.blom import (
    NodeKeyMaterial,
    PublicMatrixG,
    SchemeParams,
    SecretMatrixD,
    ShareMatrixA,
)
from blomkit.modified import NetworkTopology

__all__ = [
    "FieldMatrix",
    "NetworkTopology",
    "NodeKeyMaterial",
    "PrimeField",
    "PublicMatrixG",
    "SchemeParams",
    "SecretMatrixD",
    "ShareMatrixA",
]

__version__ = "0.1.0"
