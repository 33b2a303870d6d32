"""Hardy-space factorizations for finite subdiagonal algebras on two concrete models."""

from .algebra import *  # noqa: F401,F403
from .algebra import __all__ as _algebra_all

__version__ = "0.1.0"
__all__ = list(_algebra_all)
