"""Exact computations with standardly stratified basic algebras."""

__version__ = "0.1.0"
