"""Evaluation codes on surfaces over small finite fields, residue-based parity checks and min-sum decoding."""

from .gf import FieldElement, FieldSpec, elements, field_new, parse_field

__all__ = ["FieldElement", "FieldSpec", "elements", "field_new", "parse_field"]
