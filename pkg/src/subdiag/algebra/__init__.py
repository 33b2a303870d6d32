from .element import DegreeGrowthWarning, Element
from .functionals import (
    NewtonResult,
    PolarData,
    det_as_limit,
    fk_det,
    log_det,
    newton_power_root,
    phi,
    pnorm,
    polar,
    trace,
)
from .membership import Membership, a0_basis, a_basis, in_A, in_A0, in_D, matrix_unit
from .model import AlgebraModel, Kind, ModelMismatch
from .random import random_element

__all__ = [
    "AlgebraModel",
    "DegreeGrowthWarning",
    "Element",
    "Kind",
    "Membership",
    "ModelMismatch",
    "NewtonResult",
    "PolarData",
    "a0_basis",
    "a_basis",
    "det_as_limit",
    "fk_det",
    "in_A",
    "in_A0",
    "in_D",
    "log_det",
    "matrix_unit",
    "newton_power_root",
    "phi",
    "pnorm",
    "polar",
    "random_element",
    "trace",
]
