"""Matchertext: validation, escapeless-embedding codecs, and transpilers.

Text is *matchertext* when every ``(``, ``[`` and ``{`` is closed by its
partner, properly nested.  Matchertext can be embedded verbatim in any
host that delimits it with an unmatched opener and closer.

    >>> from matchertext import is_matchertext, validate
    >>> is_matchertext("a({'}[\\"])d")
    True
    >>> [v.kind.value for v in validate("}{")]
    ['UnexpectedCloser', 'UnmatchedOpener']
"""

from matchertext.core import (
    GRAPHICAL,
    STANDARD,
    Alphabet,
    EmbedDelimiters,
    MatcherConfig,
    Violation,
    ViolationKind,
    decode_utf8,
    is_matchertext,
    scan_embedded,
    validate,
)
from matchertext.errors import MatchertextError, NotMatchertext

__version__ = "0.1.0"

__all__ = [
    "GRAPHICAL",
    "STANDARD",
    "Alphabet",
    "EmbedDelimiters",
    "MatcherConfig",
    "MatchertextError",
    "NotMatchertext",
    "Violation",
    "ViolationKind",
    "decode_utf8",
    "is_matchertext",
    "scan_embedded",
    "validate",
]
