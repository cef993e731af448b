"""Codec for C-family string-literal bodies with matchertext escapes.

Besides the conventional backslash escapes, two extensions are supported:

* ``\\[m]`` embeds the matchertext ``m`` verbatim.  Nothing inside ``m`` is
  interpreted; the embed ends at the bracket matching the opening one.
* ``\\o()``, ``\\c()``, ``\\o[]``, ``\\c[]``, ``\\o{}``, ``\\c{}`` denote a single
  opener or closer while keeping the source text balanced.

Inputs and outputs are literal *bodies*, without the surrounding quotes.
"""

from __future__ import annotations

import unicodedata
from enum import Enum

from matchertext.core import STANDARD, require_matchertext, scan_embedded, unmatched_indices
from matchertext.errors import (
    InvalidEscape,
    MismatchedInterior,
    NoMatchingCloser,
    UnterminatedEmbed,
)

_SIMPLE = {
    "n": "\n",
    "t": "\t",
    "r": "\r",
    "0": "\0",
    "\\": "\\",
    '"': '"',
    "'": "'",
}
_SIMPLE_REVERSE = {"\n": "\\n", "\t": "\\t", "\r": "\\r", "\0": "\\0", "\\": "\\\\", '"': '\\"'}

_SELECT_PAIRS = {"()": 0, "[]": 1, "{}": 2}
_HEX = frozenset("0123456789abcdefABCDEF")


class EscapeStyle(Enum):
    """How an unmatched matcher is written in an encoded body."""

    MATCHER_SELECT = "select"
    NUMERIC_HEX = "hex"
    NUMERIC_UNIVERSAL = "universal"


def _select_escape(ch: str) -> str:
    for pair in _SELECT_PAIRS:
        if ch == pair[0]:
            return "\\o" + pair
        if ch == pair[1]:
            return "\\c" + pair
    raise ValueError(f"not a standard matcher: {ch!r}")


def _escape_matcher(ch: str, style: EscapeStyle) -> str:
    if style is EscapeStyle.MATCHER_SELECT:
        return _select_escape(ch)
    if style is EscapeStyle.NUMERIC_HEX:
        return f"\\x{ord(ch):02X}"
    return f"\\u{ord(ch):04X}"


def _read_hex(body: str, start: int, count: int, at: int) -> str:
    digits = body[start : start + count]
    if len(digits) != count or not all(d in _HEX for d in digits):
        raise InvalidEscape(at, body[at : start + count])
    return chr(int(digits, 16))


def decode(body: str) -> str:
    """Return the string denoted by a literal body."""
    require_matchertext(body, STANDARD, "literal body")
    out: list[str] = []
    i = 0
    n = len(body)
    while i < n:
        ch = body[i]
        if ch != "\\":
            j = body.find("\\", i)
            if j < 0:
                j = n
            out.append(body[i:j])
            i = j
            continue
        if i + 1 >= n:
            raise InvalidEscape(i, "\\")
        esc = body[i + 1]
        if esc == "[":
            try:
                end = scan_embedded(body, i + 1, STANDARD)
            except (NoMatchingCloser, MismatchedInterior):
                raise UnterminatedEmbed(i) from None
            out.append(body[i + 2 : end])
            i = end + 1
        elif esc in _SIMPLE:
            out.append(_SIMPLE[esc])
            i += 2
        elif esc == "x":
            out.append(_read_hex(body, i + 2, 2, i))
            i += 4
        elif esc == "u":
            out.append(_read_hex(body, i + 2, 4, i))
            i += 6
        elif esc in "oc" and body[i + 2 : i + 4] in _SELECT_PAIRS:
            pair = body[i + 2 : i + 4]
            out.append(pair[0] if esc == "o" else pair[1])
            i += 4
        else:
            raise InvalidEscape(i, body[i : i + 2])
    return "".join(out)


def encode(text: str, style: EscapeStyle = EscapeStyle.NUMERIC_HEX, *, quote: str = '"') -> str:
    """Return a literal body that decodes to ``text`` and is valid matchertext.

    Only backslashes, the active quote character, control characters, and
    matchers left unpaired in ``text`` are escaped.
    """
    lone = set(unmatched_indices(text, STANDARD))
    out: list[str] = []
    for i, ch in enumerate(text):
        if i in lone:
            out.append(_escape_matcher(ch, style))
        elif ch == quote:
            out.append("\\" + ch)
        elif ch in _SIMPLE_REVERSE and ch != '"':
            out.append(_SIMPLE_REVERSE[ch])
        elif unicodedata.category(ch) == "Cc":
            out.append(f"\\x{ord(ch):02X}")
        elif 0xD800 <= ord(ch) <= 0xDFFF:
            out.append(f"\\u{ord(ch):04X}")
        else:
            out.append(ch)
    return "".join(out)


def embed(m: str) -> str:
    """Wrap matchertext ``m`` as a ``\\[m]`` fragment for any literal body."""
    require_matchertext(m, STANDARD, "embedded text")
    return "\\[" + m + "]"
