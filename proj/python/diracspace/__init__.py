"""Exact forms, Courant brackets, higher Dirac structures and their L-infinity algebras."""

from ._core import (
    Form,
    ParseError,
    Poly,
    Presentation,
    Section,
    VField,
    getzler_coefficient,
    getzler_twist_coefficient,
    parse,
    run,
)

__all__ = [
    "Form",
    "ParseError",
    "Poly",
    "Presentation",
    "Section",
    "VField",
    "getzler_coefficient",
    "getzler_twist_coefficient",
    "parse",
    "passed",
    "run",
]


def passed(records):
    """True when every non-informational record passed."""
    return all(r["status"] == "pass" or r.get("informational") for r in records)
