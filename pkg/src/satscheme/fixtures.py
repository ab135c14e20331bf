"""Built-in demonstration formulas.

F4 is a small 3-SAT instance with exactly two models; F5 adds one unit
clause and becomes unsatisfiable.  G is a 5-variable instance every one of
whose swing factors changes sign (so minimization branches on it), and Gext
extends G with one adverse-parity partner per clause, cancelling all cubic
coefficients while keeping G's clauses intact.
"""

from __future__ import annotations

from .scheme_core import Scheme, parse_scheme_text

__all__ = ["FIXTURE_NAMES", "fixture"]

_F4_TEXT = """\
0 - + -
+ - - 0
- 0 - 0
0 + 0 0"""

_F5_TEXT = _F4_TEXT + "\n0 0 0 +"

_G_TEXT = """\
+ + + 0 0
0 - - - 0
0 0 + + -
+ 0 0 + +
- + 0 0 +"""

_GEXT_TEXT = _G_TEXT + """
- + + 0 0
0 + - - 0
0 0 - + -
- 0 0 + +
+ + 0 0 +"""

_TEXTS = {"F4": _F4_TEXT, "F5": _F5_TEXT, "G": _G_TEXT, "Gext": _GEXT_TEXT}

FIXTURE_NAMES = tuple(_TEXTS)


def fixture(name: str) -> Scheme:
    """Fetch a built-in formula by name (case-insensitive)."""
    for key, text in _TEXTS.items():
        if key.lower() == name.lower():
            return parse_scheme_text(text)
    raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}")
