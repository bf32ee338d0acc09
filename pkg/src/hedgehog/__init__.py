"""Explicit unimodular completions of (x, y, z) over the algebraic unit sphere."""

from .poly import (
    Mat3,
    Poly,
    PolyError,
    det3,
    divide_monic,
    evaluate,
    ring_eval,
    sphere_normal_form,
    substitute,
    substitute_rational,
)
from .rings import (
    QQ,
    NonUnitError,
    Ring,
    RingElem,
    RingError,
    finite_field_stufe,
    make_ring,
    ring_arith,
)

__version__ = "0.1.0"

__all__ = [
    "Mat3",
    "NonUnitError",
    "Poly",
    "PolyError",
    "QQ",
    "Ring",
    "RingElem",
    "RingError",
    "det3",
    "divide_monic",
    "evaluate",
    "finite_field_stufe",
    "make_ring",
    "ring_arith",
    "ring_eval",
    "sphere_normal_form",
    "substitute",
    "substitute_rational",
]
