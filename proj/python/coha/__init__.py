"""Shuffle-algebra model of quiver cohomological Hall algebras.

Build a :class:`Session` from a quiver document, then compute shuffle
products, filtration membership, BPS slice dimensions, PBW verification
tables, wheel-condition checks and finite-field Kac counts.

    >>> import coha
    >>> s = coha.Session("vertices: v; arrow a: v -> v; build: triple; torus: generic")
    >>> s.product(s.element("1"), s.element("z[1,1]")).dim
    [2]
"""

from ._core import (
    DocumentParseError,
    Element,
    NonExactDivisionError,
    PreconditionError,
    Session,
    parse_polynomial_roundtrip,
)

__all__ = [
    "DocumentParseError",
    "Element",
    "NonExactDivisionError",
    "PreconditionError",
    "Session",
    "parse_polynomial_roundtrip",
]
