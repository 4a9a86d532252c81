"""Compound string ids.

Every object, morphism and element id is a *term*: either an atom (a
non-empty string without ``(``, ``)`` or ``,``) or ``(t1,...,tn)`` built
from terms.  Constructions that need fresh ids (limits, colimits, comma
categories, categories of elements) build them with :func:`tup`, which is
injective on terms.
"""

_RESERVED = frozenset("(),")


def tup(*parts: str) -> str:
    return "(" + ",".join(parts) + ")"


def is_term(s) -> bool:
    if not isinstance(s, str) or not s:
        return False
    pos = _parse(s, 0)
    return pos == len(s)


def _parse(s: str, pos: int) -> int:
    # returns the end position of the term starting at pos, or -1
    if pos >= len(s):
        return -1
    if s[pos] == "(":
        pos += 1
        if pos < len(s) and s[pos] == ")":
            return pos + 1
        while True:
            pos = _parse(s, pos)
            if pos < 0 or pos >= len(s):
                return -1
            if s[pos] == ")":
                return pos + 1
            if s[pos] != ",":
                return -1
            pos += 1
    start = pos
    while pos < len(s) and s[pos] not in _RESERVED:
        pos += 1
    return pos if pos > start else -1


def split(s: str) -> tuple:
    """Inverse of :func:`tup` on compound terms."""
    if not (s.startswith("(") and s.endswith(")")):
        raise ValueError(f"{s!r} is not a compound id")
    if s == "()":
        return ()
    parts, pos = [], 1
    while True:
        end = _parse(s, pos)
        if end < 0:
            raise ValueError(f"{s!r} is not a term")
        parts.append(s[pos:end])
        if s[end] == ")":
            return tuple(parts)
        pos = end + 1


def check_id(s, what="id"):
    if not is_term(s):
        raise ValueError(f"invalid {what} {s!r}: ids must be non-empty strings, "
                         "balanced in '(' ')' with ',' only inside parentheses")
    return s
