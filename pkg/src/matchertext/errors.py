"""Exception hierarchy shared by every codec and transpiler."""

from __future__ import annotations

from typing import TYPE_CHECKING, Sequence

if TYPE_CHECKING:
    from matchertext.core import Violation


class MatchertextError(ValueError):
    """Base class for all errors raised by this package."""


class ConfigError(MatchertextError):
    """A matcher configuration breaks its own invariants."""


class EncodingError(MatchertextError):
    """Input bytes are not well-formed UTF-8."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(message)
        self.offset = offset


class NotMatchertext(MatchertextError):
    """Text that must be matchertext is not."""

    def __init__(self, violations: Sequence[Violation], what: str = "text") -> None:
        self.violations = list(violations)
        first = self.violations[0] if self.violations else None
        detail = f": {first.describe()}" if first else ""
        more = f" (+{len(self.violations) - 1} more)" if len(self.violations) > 1 else ""
        super().__init__(f"{what} is not valid matchertext{detail}{more}")


class NoMatchingCloser(MatchertextError):
    """End of input reached inside an embedding."""

    def __init__(self, depth: int, position: int) -> None:
        super().__init__(
            f"no matching closer: input ended at depth {depth}, "
            f"deepest unclosed opener at index {position}"
        )
        self.depth = depth
        self.position = position


class MismatchedInterior(MatchertextError):
    """A closer of the wrong pair was met while scanning an embedding."""

    def __init__(self, position: int, found: str, expected: str | None) -> None:
        want = f", expected {expected!r}" if expected else ""
        super().__init__(f"mismatched closer {found!r} at index {position}{want}")
        self.position = position
        self.found = found
        self.expected = expected


# cesc

class InvalidEscape(MatchertextError):
    def __init__(self, position: int, sequence: str) -> None:
        super().__init__(f"invalid escape sequence {sequence!r} at index {position}")
        self.position = position
        self.sequence = sequence


class UnterminatedEmbed(MatchertextError):
    def __init__(self, position: int) -> None:
        super().__init__(f"embedded matchertext starting at index {position} is never closed")
        self.position = position


# mlx

class UnterminatedExtension(MatchertextError):
    def __init__(self, position: int, form: str) -> None:
        super().__init__(f"unterminated {form} at index {position}")
        self.position = position
        self.form = form


class RawContextConflict(MatchertextError):
    """A raw-text element payload contains its own end tag."""

    def __init__(self, position: int, tag: str) -> None:
        super().__init__(
            f"payload of <{tag}> at index {position} contains '</{tag}'; "
            "entity escaping is unavailable in HTML raw-text elements"
        )
        self.position = position
        self.tag = tag


# minml

class BareBracketGroup(MatchertextError):
    def __init__(self, position: int, content: str) -> None:
        super().__init__(
            f"bare bracket group at index {position} is neither a matcher escape "
            f"nor a reference name: [{content}]"
        )
        self.position = position
        self.content = content


# mri

class BadScheme(MatchertextError):
    pass


class MissingBrackets(MatchertextError):
    pass


class ForbiddenChar(MatchertextError):
    def __init__(self, position: int, char: str) -> None:
        super().__init__(f"non-graphical character U+{ord(char):04X} at index {position}")
        self.position = position
        self.char = char


class TrailingGarbage(MatchertextError):
    def __init__(self, position: int) -> None:
        super().__init__(f"unexpected text after closing bracket at index {position}")
        self.position = position


class BadPercentTriplet(MatchertextError):
    def __init__(self, position: int) -> None:
        super().__init__(f"malformed percent-encoding at index {position}")
        self.position = position


class MalformedHost(MatchertextError):
    pass


# rex

class UnterminatedQuote(MatchertextError):
    def __init__(self, position: int) -> None:
        super().__init__(f"'{{{{' quote at index {position} is not closed by '}}}}'")
        self.position = position


class BadClassSelector(MatchertextError):
    def __init__(self, position: int, content: str) -> None:
        super().__init__(f"ambiguous matcher selector {content!r} at index {position}")
        self.position = position
        self.content = content
