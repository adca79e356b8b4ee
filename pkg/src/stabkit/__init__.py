"""Toolkit for stabilizer quantum error-correcting codes."""

from .pauli import PauliOperator, parse_pauli, format_pauli, multiply, commutes
from .stabilizer import StabilizerCode, validate, standard_form, standard_logicals

__version__ = "0.1.0"

__all__ = ["PauliOperator", "parse_pauli", "format_pauli", "multiply", "commutes",
           "StabilizerCode", "validate", "standard_form", "standard_logicals"]
