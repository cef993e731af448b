"""Matcher configurations, the matchers-must-match validator, and the
embedded-matchertext scanner the host-language codecs are built on.

Indices passed to and returned from :func:`scan_embedded` are ``str``
indices (code points).  :class:`Violation` carries both the code-point
index and the UTF-8 byte offset so diagnostics are stable across
platforms.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from enum import Enum

from matchertext.errors import (
    ConfigError,
    EncodingError,
    MismatchedInterior,
    NoMatchingCloser,
    NotMatchertext,
)

STANDARD_PAIRS: tuple[tuple[str, str], ...] = (("(", ")"), ("[", "]"), ("{", "}"))

# Categories treated as non-graphical: controls, format, surrogates,
# unassigned, and all separators (space included).
_NON_GRAPHICAL = frozenset({"Cc", "Cf", "Cs", "Cn", "Zs", "Zl", "Zp"})


def is_graphical(ch: str) -> bool:
    return unicodedata.category(ch) not in _NON_GRAPHICAL


class Alphabet(str, Enum):
    ALL_UNICODE = "standard"
    GRAPHICAL_ONLY = "graphical"

    def __contains__(self, ch: object) -> bool:  # type: ignore[override]
        if not isinstance(ch, str) or len(ch) != 1:
            return False
        if self is Alphabet.GRAPHICAL_ONLY:
            return is_graphical(ch)
        return not 0xD800 <= ord(ch) <= 0xDFFF


@dataclass(frozen=True)
class MatcherConfig:
    """An alphabet restriction plus the set of opener/closer pairs."""

    pairs: tuple[tuple[str, str], ...] = STANDARD_PAIRS
    alphabet: Alphabet = Alphabet.ALL_UNICODE
    closer_of: dict[str, str] = field(init=False, repr=False, compare=False)
    opener_of: dict[str, str] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        pairs = tuple((str(o), str(c)) for o, c in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        closer_of: dict[str, str] = {}
        opener_of: dict[str, str] = {}
        for o, c in pairs:
            if len(o) != 1 or len(c) != 1:
                raise ConfigError(f"matchers must be single characters: {o!r}, {c!r}")
            if o == c:
                raise ConfigError(f"opener and closer must differ: {o!r}")
            if o in closer_of or o in opener_of or c in closer_of or c in opener_of:
                raise ConfigError(f"character used in more than one matcher role: {o!r}{c!r}")
            if o not in self.alphabet or c not in self.alphabet:
                raise ConfigError(f"matchers {o!r}{c!r} are outside the alphabet")
            closer_of[o] = c
            opener_of[c] = o
        object.__setattr__(self, "closer_of", closer_of)
        object.__setattr__(self, "opener_of", opener_of)

    @property
    def openers(self) -> frozenset[str]:
        return frozenset(self.closer_of)

    @property
    def closers(self) -> frozenset[str]:
        return frozenset(self.opener_of)

    @property
    def matchers(self) -> frozenset[str]:
        return self.openers | self.closers

    def is_nonmatcher(self, ch: str) -> bool:
        return ch in self.alphabet and ch not in self.closer_of and ch not in self.opener_of

    @classmethod
    def from_data(cls, data: dict) -> MatcherConfig:
        """Build a configuration from JSON-style data.

        ``{"pairs": ["()", "[]"], "alphabet": "graphical"}``; each pair may
        also be a two-element list.
        """
        pairs = []
        for p in data.get("pairs", ["()", "[]", "{}"]):
            if len(p) != 2:
                raise ConfigError(f"pair must have exactly two characters: {p!r}")
            pairs.append((p[0], p[1]))
        try:
            alphabet = Alphabet(data.get("alphabet", "standard"))
        except ValueError:
            raise ConfigError(f"unknown alphabet {data.get('alphabet')!r}") from None
        return cls(tuple(pairs), alphabet)


STANDARD = MatcherConfig()
GRAPHICAL = MatcherConfig(alphabet=Alphabet.GRAPHICAL_ONLY)


class ViolationKind(str, Enum):
    UNMATCHED_OPENER = "UnmatchedOpener"
    UNEXPECTED_CLOSER = "UnexpectedCloser"
    MISMATCHED_PAIR = "MismatchedPair"
    FORBIDDEN_CHAR = "ForbiddenChar"


@dataclass(frozen=True, slots=True)
class Violation:
    offset: int  # UTF-8 byte offset
    line: int
    column: int
    kind: ViolationKind
    found: str
    expected: str | None = None
    index: int = 0  # code-point index

    def describe(self) -> str:
        want = f", expected {self.expected!r}" if self.expected is not None else ""
        return f"{self.line}:{self.column}: {self.kind.value} {self.found!r}{want}"

    def to_dict(self) -> dict[str, object]:
        return {
            "offset": self.offset,
            "line": self.line,
            "col": self.column,
            "kind": self.kind.value,
            "found": self.found,
            "expected": self.expected,
        }


def _utf8_len(ch: str) -> int:
    cp = ord(ch)
    return 1 if cp < 0x80 else 2 if cp < 0x800 else 3 if cp < 0x10000 else 4


def validate(text: str, config: MatcherConfig = STANDARD) -> list[Violation]:
    """Return every matchertext violation in ``text``, sorted by position.

    Recovery keeps one mistake from cascading.  A closer whose opener sits
    deeper in the stack closes it, and the openers skipped over are
    reported unmatched.  Two crossed closers such as ``[(])`` count as a
    single mismatched pair.  Any other wrong closer is a mismatched pair
    that still pops the stack top.
    """
    closer_of = config.closer_of
    opener_of = config.opener_of
    alphabet = config.alphabet
    check_alphabet = alphabet is not Alphabet.ALL_UNICODE

    found: list[Violation] = []
    stack: list[tuple[int, int, int, int, str]] = []  # index, offset, line, col, char
    swallow = -1
    offset = 0
    line = 1
    col = 1
    for i, ch in enumerate(text):
        if i == swallow:
            pass
        elif ch in closer_of:
            stack.append((i, offset, line, col, ch))
        elif ch in opener_of:
            if not stack:
                found.append(Violation(offset, line, col, ViolationKind.UNEXPECTED_CLOSER, ch, index=i))
            elif closer_of[stack[-1][4]] == ch:
                stack.pop()
            else:
                want = closer_of[stack[-1][4]]
                depth = _opener_depth(stack, opener_of[ch])
                crossed = depth == len(stack) - 2 and text[i + 1 : i + 2] == want
                if depth < 0 or crossed:
                    found.append(
                        Violation(offset, line, col, ViolationKind.MISMATCHED_PAIR, ch, want, index=i)
                    )
                    del stack[depth if crossed else -1 :]
                    if crossed:
                        swallow = i + 1
                else:
                    for j, off, ln, cl, op in stack[depth + 1 :]:
                        found.append(Violation(off, ln, cl, ViolationKind.UNMATCHED_OPENER, op, index=j))
                    del stack[depth:]
        elif check_alphabet and ch not in alphabet:
            found.append(Violation(offset, line, col, ViolationKind.FORBIDDEN_CHAR, ch, index=i))
        elif not check_alphabet and 0xD800 <= ord(ch) <= 0xDFFF:
            found.append(Violation(offset, line, col, ViolationKind.FORBIDDEN_CHAR, ch, index=i))

        offset += _utf8_len(ch)
        if ch == "\n":
            line += 1
            col = 1
        else:
            col += 1

    for i, off, ln, cl, ch in stack:
        found.append(Violation(off, ln, cl, ViolationKind.UNMATCHED_OPENER, ch, index=i))
    found.sort(key=lambda v: v.index)
    return found


def _opener_depth(stack: list[tuple[int, int, int, int, str]], opener: str) -> int:
    for depth in range(len(stack) - 1, -1, -1):
        if stack[depth][4] == opener:
            return depth
    return -1


def is_matchertext(text: str, config: MatcherConfig = STANDARD) -> bool:
    closer_of = config.closer_of
    opener_of = config.opener_of
    alphabet = config.alphabet
    stack: list[str] = []
    push = stack.append
    pop = stack.pop
    if alphabet is Alphabet.ALL_UNICODE:
        for ch in text:
            if ch in closer_of:
                push(closer_of[ch])
            elif ch in opener_of:
                if not stack or pop() != ch:
                    return False
            elif 0xD800 <= ord(ch) <= 0xDFFF:
                return False
    else:
        for ch in text:
            if ch in closer_of:
                push(closer_of[ch])
            elif ch in opener_of:
                if not stack or pop() != ch:
                    return False
            elif ch not in alphabet:
                return False
    return not stack


def require_matchertext(text: str, config: MatcherConfig = STANDARD, what: str = "text") -> None:
    """Raise :class:`NotMatchertext` unless ``text`` validates clean."""
    if not is_matchertext(text, config):
        raise NotMatchertext(validate(text, config), what)


def scan_embedded(text: str, open_index: int, config: MatcherConfig = STANDARD) -> int:
    """Return the index of the closer matching the opener at ``open_index``.

    The interior is not interpreted beyond matching matchers and checking
    the alphabet.
    """
    closer_of = config.closer_of
    opener_of = config.opener_of
    alphabet = config.alphabet
    if open_index < 0 or open_index >= len(text) or text[open_index] not in closer_of:
        raise ValueError(f"no opener at index {open_index}")
    stack = [open_index]
    for j in range(open_index + 1, len(text)):
        ch = text[j]
        if ch in closer_of:
            stack.append(j)
        elif ch in opener_of:
            want = closer_of[text[stack[-1]]]
            if ch != want:
                raise MismatchedInterior(j, ch, want)
            stack.pop()
            if not stack:
                return j
        elif ch not in alphabet:
            off, ln, cl = position_of(text, j)
            raise NotMatchertext(
                [Violation(off, ln, cl, ViolationKind.FORBIDDEN_CHAR, ch, index=j)], "embedded text"
            )
    raise NoMatchingCloser(len(stack), stack[-1])


@dataclass(frozen=True)
class EmbedDelimiters:
    """Host-side delimiters around an embedded payload, e.g. ``\\[`` and ``]``.

    ``opener`` must leave at least one opener unmatched, and ``closer`` must
    close exactly those, innermost first.
    """

    opener: str
    closer: str
    config: MatcherConfig = STANDARD

    def __post_init__(self) -> None:
        lone = unmatched_indices(self.opener, self.config)
        if not lone or any(self.opener[i] not in self.config.closer_of for i in lone):
            raise ConfigError(f"embedding opener {self.opener!r} must leave openers unmatched")
        want = "".join(self.config.closer_of[self.opener[i]] for i in reversed(lone))
        closers = "".join(ch for ch in self.closer if ch in self.config.opener_of)
        if closers != want:
            raise ConfigError(f"embedding closer {self.closer!r} does not close {self.opener!r}")

    @property
    def open_index(self) -> int:
        """Index within ``opener`` of the innermost unmatched opener."""
        return unmatched_indices(self.opener, self.config)[-1]

    def wrap(self, payload: str) -> str:
        return self.opener + payload + self.closer


def unmatched_indices(text: str, config: MatcherConfig = STANDARD) -> list[int]:
    """Indices of matchers left unpaired by lenient matching.

    A closer whose opener is somewhere on the stack pops down to it
    (abandoning the openers above); a closer with no opener on the stack
    is unpaired.  Escaping exactly the returned characters leaves valid
    matchertext.
    """
    closer_of = config.closer_of
    opener_of = config.opener_of
    stack: list[int] = []
    lone: list[int] = []
    for i, ch in enumerate(text):
        if ch in closer_of:
            stack.append(i)
        elif ch in opener_of:
            want = opener_of[ch]
            for depth in range(len(stack) - 1, -1, -1):
                if text[stack[depth]] == want:
                    lone.extend(stack[depth + 1 :])
                    del stack[depth:]
                    break
            else:
                lone.append(i)
    lone.extend(stack)
    lone.sort()
    return lone


def position_of(text: str, index: int) -> tuple[int, int, int]:
    """Map a code-point index to (byte offset, 1-based line, 1-based column)."""
    head = text[:index]
    offset = len(head.encode("utf-8", "surrogatepass"))
    line = head.count("\n") + 1
    column = index - (head.rfind("\n") + 1) + 1
    return offset, line, column


def decode_utf8(data: bytes) -> str:
    """Strictly decode UTF-8 input, rejecting malformed byte sequences."""
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise EncodingError(f"invalid UTF-8 at byte {exc.start}: {exc.reason}", exc.start) from None
