"""Translate matchertext-extended regular expressions to a baseline dialect.

Extensions understood on input:

* ``{{m}}`` matches the literal text ``m``;
* ``\\o()`` ``\\c()`` ``\\o[]`` ``\\c[]`` ``\\o{}`` ``\\c{}`` match one matcher;
* inside a character class, ``(<)`` ``(>)`` ``[<]`` ``[>]`` ``{<}`` ``{>}`` add
  just the opener (``<``) or closer (``>``) of that pair.

Character classes end at the bracket that *matches* their opening bracket,
so ``[()[]{}]`` is one class holding all six matchers.  Output uses
backslash escapes for metacharacters and ``\\xNN`` for matchers inside
classes, which Python's :mod:`re`, PCRE, and ECMAScript all accept.
"""

from __future__ import annotations

from dataclasses import dataclass

from matchertext.core import STANDARD, require_matchertext, scan_embedded
from matchertext.errors import BadClassSelector, UnterminatedQuote

METACHARACTERS = frozenset(".^$*+?()[]{}|\\")
MATCHERS = frozenset("()[]{}")
_SELECT = {"()", "[]", "{}"}
_POSIX_CLASS = ("[:", "[=", "[.")


@dataclass(frozen=True)
class RexPattern:
    source: str

    def __post_init__(self) -> None:
        require_matchertext(self.source, STANDARD, "pattern")


def escape_literal(s: str) -> str:
    return "".join("\\" + c if c in METACHARACTERS else c for c in s)


def _hex(c: str) -> str:
    return f"\\x{ord(c):02X}"


def translate_rex(pattern: RexPattern | str) -> str:
    """Return the baseline-dialect equivalent of ``pattern``."""
    if isinstance(pattern, str):
        pattern = RexPattern(pattern)
    src = pattern.source
    out: list[str] = []
    i = 0
    n = len(src)
    while i < n:
        c = src[i]
        if c == "\\":
            if i + 1 >= n:
                out.append(c)
                break
            pair = src[i + 2 : i + 4]
            if src[i + 1] in "oc" and pair in _SELECT:
                out.append("\\" + (pair[0] if src[i + 1] == "o" else pair[1]))
                i += 4
            else:
                out.append(src[i : i + 2])
                i += 2
        elif c == "{" and i + 1 < n and src[i + 1] == "{":
            end = scan_embedded(src, i, STANDARD)
            if scan_embedded(src, i + 1, STANDARD) != end - 1:
                raise UnterminatedQuote(i)
            out.append(escape_literal(src[i + 2 : end - 1]))
            i = end + 1
        elif c == "[":
            end = scan_embedded(src, i, STANDARD)
            out.append(_translate_class(src, i, end))
            i = end + 1
        else:
            out.append(c)
            i += 1
    return "".join(out)


def _translate_class(src: str, start: int, end: int) -> str:
    out = ["["]
    i = start + 1
    if i < end and src[i] == "^":
        out.append("^")
        i += 1
    while i < end:
        c = src[i]
        if c == "\\" and i + 1 < end:
            nxt = src[i + 1]
            out.append(_hex(nxt) if nxt in MATCHERS else src[i : i + 2])
            i += 2
        elif c == "[" and src.startswith(_POSIX_CLASS, i):
            close = scan_embedded(src, i, STANDARD)
            out.append(src[i : close + 1])
            i = close + 1
        elif c in "([{":
            close = scan_embedded(src, i, STANDARD)
            inner = src[i + 1 : close]
            if inner in ("<", ">"):
                out.append(_hex(c if inner == "<" else src[close]))
                i = close + 1
            elif inner and set(inner) <= {"<", ">"}:
                raise BadClassSelector(i, src[i : close + 1])
            else:
                out.append(_hex(c))
                i += 1
        elif c in MATCHERS:
            out.append(_hex(c))
            i += 1
        else:
            out.append(c)
            i += 1
    out.append("]")
    return "".join(out)
