"""Exact pointwise multilinear algebra of almost-quaternionic Hermitian structures."""
from .params import ModelParams, ParameterMismatch
from .scalar import Scalar
from .tensor import LabeledTensor
from .field import OneFormField
from .model import DomainElement, DomainError, build_alpha0, build_gamma0, build_gamma0_alpha0, domain_basis
from .operators import ck_operator, pipeline_he, pipeline_hk, pipeline_s3h
from .decompose import SUMMANDS, decompose

__version__ = "0.1.0"

__all__ = [
    "ModelParams",
    "ParameterMismatch",
    "Scalar",
    "LabeledTensor",
    "OneFormField",
    "DomainElement",
    "DomainError",
    "build_gamma0",
    "build_alpha0",
    "build_gamma0_alpha0",
    "domain_basis",
    "ck_operator",
    "pipeline_he",
    "pipeline_hk",
    "pipeline_s3h",
    "SUMMANDS",
    "decompose",
    "__version__",
]
