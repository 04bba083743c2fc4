"""Digit-string rendering for channel alphabets.

Alphabets with up to 36 letters use one base-36 character per digit
("0"-"9" then "a"-"z"); larger alphabets fall back to comma-separated
decimal digits so fixtures stay printable either way.
"""

from __future__ import annotations

from collections.abc import Iterable

_ALPHABET = "0123456789abcdefghijklmnopqrstuvwxyz"
_CHAR_VALUE = {c: v for v, c in enumerate(_ALPHABET)}


def render(values: Iterable[int], q: int) -> str:
    vals = list(values)
    for v in vals:
        if not 0 <= v < q:
            raise ValueError(f"digit {v} out of range for alphabet size {q}")
    if q <= 36:
        return "".join(_ALPHABET[v] for v in vals)
    return ",".join(str(v) for v in vals)


def parse(text: str, q: int) -> tuple[int, ...]:
    if not text:
        return ()
    if q <= 36:
        try:
            vals = tuple(_CHAR_VALUE[c] for c in text)
        except KeyError as exc:
            raise ValueError(f"invalid digit {exc.args[0]!r} for alphabet size {q}") from None
    else:
        try:
            vals = tuple(int(tok) for tok in text.split(","))
        except ValueError:
            raise ValueError(f"invalid digit list {text!r} for alphabet size {q}") from None
    for v in vals:
        if not 0 <= v < q:
            raise ValueError(f"digit {v} out of range for alphabet size {q}")
    return vals


def length(text: str, q: int) -> int:
    """Number of alphabet symbols a digit string encodes."""
    if not text:
        return 0
    return len(text) if q <= 36 else text.count(",") + 1


def concat(parts: Iterable[str], q: int) -> str:
    """Channel-wise concatenation; codeword boundaries stay implicit."""
    nonempty = [p for p in parts if p]
    return "".join(nonempty) if q <= 36 else ",".join(nonempty)
