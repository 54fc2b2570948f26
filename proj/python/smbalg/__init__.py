"""Finite algebras, SMB checks, congruences and the wnu constructions."""

from ._smbalg import *  # noqa: F401,F403
from ._smbalg import (
    Error,
    EvalError,
    FiniteAlgebra,
    HypothesisError,
    InvalidAlgebra,
    ParseError,
    TheoremFalsified,
)

__version__ = "0.1.0"
