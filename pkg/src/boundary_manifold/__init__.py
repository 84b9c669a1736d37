"""Invariants of the boundary manifold of a complex projective line arrangement."""

__version__ = "0.1.0"
REPORT_SCHEMA = "1"

from .arrangement import Arrangement, ArrangementClass, from_lines, from_points, parse_arrangement  # noqa: E402

__all__ = ["Arrangement", "ArrangementClass", "from_lines", "from_points", "parse_arrangement",
           "__version__", "REPORT_SCHEMA"]
