"""Survey legacy source for matchertext violations, bucketed by lexical context.

Lexing is deliberately coarse: a :class:`LanguageProfile` names the comment
markers and string delimiters of a language and nothing else.  At each
position the longest marker wins.  Mis-lexed exotic syntax is tolerated
noise; the point is an estimate of where violations live.
"""

from __future__ import annotations

import bisect
import json
import re
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Iterable

from matchertext.core import STANDARD, MatcherConfig, Violation, validate
from matchertext.errors import ConfigError


class Context(str, Enum):
    STRING_LITERAL = "StringLiteral"
    COMMENT = "Comment"
    CODE = "Code"


@dataclass(frozen=True)
class StringForm:
    delimiter: str
    escape_char: str | None = None
    multiline: bool = False


@dataclass(frozen=True)
class LanguageProfile:
    name: str
    line_comment: str | None = None
    block_comment: tuple[str, str] | None = None
    string_forms: tuple[StringForm, ...] = ()
    nested_comments: bool = False

    def __post_init__(self) -> None:
        markers = [f.delimiter for f in self.string_forms]
        if self.line_comment is not None:
            markers.append(self.line_comment)
        if self.block_comment is not None:
            markers.extend(self.block_comment[:1])
            if not self.block_comment[1]:
                raise ConfigError(f"profile {self.name!r}: empty block-comment close")
        if any(not m for m in markers):
            raise ConfigError(f"profile {self.name!r}: empty marker")
        if len(set(markers)) != len(markers):
            raise ConfigError(f"profile {self.name!r}: duplicate markers")
        for f in self.string_forms:
            if f.escape_char is not None and len(f.escape_char) != 1:
                raise ConfigError(f"profile {self.name!r}: escape must be one character")

    @classmethod
    def from_dict(cls, data: dict) -> LanguageProfile:
        block = data.get("block_comment")
        return cls(
            name=data["name"],
            line_comment=data.get("line_comment"),
            block_comment=tuple(block) if block else None,
            string_forms=tuple(
                StringForm(f["delimiter"], f.get("escape_char"), bool(f.get("multiline", False)))
                for f in data.get("string_forms", [])
            ),
            nested_comments=bool(data.get("nested_comments", False)),
        )


def builtin_profiles() -> list[str]:
    root = resources.files("matchertext") / "profiles"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_profile(name_or_path: str) -> LanguageProfile:
    """Load a built-in profile by name, or a profile JSON file by path."""
    path = Path(name_or_path)
    if path.suffix == ".json" and path.is_file():
        data = json.loads(path.read_text(encoding="utf-8"))
    else:
        res = resources.files("matchertext") / "profiles" / f"{name_or_path}.json"
        if not res.is_file():
            raise ConfigError(
                f"unknown profile {name_or_path!r}; built-in: {', '.join(builtin_profiles())}"
            )
        data = json.loads(res.read_text(encoding="utf-8"))
    try:
        return LanguageProfile.from_dict(data)
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"malformed profile {name_or_path!r}: {exc}") from None


@dataclass(frozen=True, slots=True)
class Region:
    start: int
    end: int
    context: Context


@dataclass
class LexResult:
    regions: list[Region]
    warnings: list[str] = field(default_factory=list)
    _starts: list[int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self._starts = [r.start for r in self.regions]

    def context_at(self, index: int) -> Context:
        k = bisect.bisect_right(self._starts, index) - 1
        return self.regions[max(k, 0)].context


def lex_regions(text: str, profile: LanguageProfile) -> LexResult:
    """Partition ``text`` into code, comment, and string-literal regions."""
    openers: dict[str, tuple[str, object]] = {}
    for f in profile.string_forms:
        openers[f.delimiter] = ("string", f)
    if profile.line_comment:
        openers[profile.line_comment] = ("line", None)
    if profile.block_comment:
        openers[profile.block_comment[0]] = ("block", None)

    regions: list[Region] = []
    warnings: list[str] = []

    def add(start: int, end: int, ctx: Context) -> None:
        if end <= start:
            return
        if regions and regions[-1].context is ctx and regions[-1].end == start:
            regions[-1] = Region(regions[-1].start, end, ctx)
        else:
            regions.append(Region(start, end, ctx))

    n = len(text)
    if not openers:
        add(0, n, Context.CODE)
        return LexResult(regions or [Region(0, 0, Context.CODE)], warnings)

    finder = re.compile("|".join(re.escape(m) for m in sorted(openers, key=len, reverse=True)))
    i = 0
    while i < n:
        m = finder.search(text, i)
        if not m:
            add(i, n, Context.CODE)
            break
        add(i, m.start(), Context.CODE)
        kind, form = openers[m.group()]
        if kind == "line":
            nl = text.find("\n", m.end())
            end = n if nl < 0 else nl
            add(m.start(), end, Context.COMMENT)
        elif kind == "block":
            end = _block_end(text, m.end(), profile)
            if end < 0:
                warnings.append(f"UnterminatedComment at index {m.start()}")
                end = n
            add(m.start(), end, Context.COMMENT)
        else:
            end, ok = _string_end(text, m.end(), form)  # type: ignore[arg-type]
            if not ok:
                warnings.append(f"UnterminatedString at index {m.start()}")
            add(m.start(), end, Context.STRING_LITERAL)
        i = end
    return LexResult(regions or [Region(0, 0, Context.CODE)], warnings)


def _block_end(text: str, i: int, profile: LanguageProfile) -> int:
    open_, close = profile.block_comment  # type: ignore[misc]
    if not profile.nested_comments:
        k = text.find(close, i)
        return -1 if k < 0 else k + len(close)
    depth = 1
    while depth:
        k = text.find(close, i)
        if k < 0:
            return -1
        o = text.find(open_, i, k)
        if o >= 0:
            depth += 1
            i = o + len(open_)
        else:
            depth -= 1
            i = k + len(close)
    return i


def _string_end(text: str, i: int, form: StringForm) -> tuple[int, bool]:
    """End index (exclusive) of a string body starting at ``i``, and whether it closed."""
    delim = form.delimiter
    esc = form.escape_char
    n = len(text)
    while i < n:
        ch = text[i]
        if esc is not None and ch == esc:
            i += 2
            continue
        if text.startswith(delim, i):
            return i + len(delim), True
        if ch == "\n" and not form.multiline:
            return i, False
        i += 1
    return n, False


@dataclass(frozen=True, slots=True)
class ContextViolation:
    file: str
    violation: Violation
    context: Context | None

    def to_dict(self) -> dict[str, object]:
        d = self.violation.to_dict()
        d["context"] = self.context.value if self.context else None
        return d


def analyze_source(
    text: str,
    profile: LanguageProfile,
    config: MatcherConfig = STANDARD,
    *,
    path: str = "<input>",
) -> list[ContextViolation]:
    """Validate ``text`` and label each violation with its lexical context."""
    return analyze_with_warnings(text, profile, config, path=path)[0]


def analyze_with_warnings(
    text: str,
    profile: LanguageProfile,
    config: MatcherConfig = STANDARD,
    *,
    path: str = "<input>",
) -> tuple[list[ContextViolation], list[str]]:
    lex = lex_regions(text, profile)
    found = [ContextViolation(path, v, lex.context_at(v.index)) for v in validate(text, config)]
    return found, lex.warnings


def aggregate_report(
    results: Iterable[ContextViolation], files: Iterable[str] = ()
) -> dict[str, object]:
    """Count violations per context, per (context, kind), and per file.

    Paths listed in ``files`` appear in the per-file counts even when clean.
    """
    by_context: dict[str, Counter[str]] = {}
    by_file: Counter[str] = Counter({f: 0 for f in files})
    contexts: Counter[str] = Counter({c.value: 0 for c in Context})
    total = 0
    for r in results:
        ctx = r.context.value if r.context else "Unknown"
        by_context.setdefault(ctx, Counter())[r.violation.kind.value] += 1
        by_file[r.file] += 1
        contexts[ctx] += 1
        total += 1
    return {
        "total": total,
        "contexts": dict(sorted(contexts.items())),
        "by_context": {c: dict(sorted(k.items())) for c, k in sorted(by_context.items())},
        "by_file": dict(sorted(by_file.items())),
    }


def build_report(per_file: dict[str, list[ContextViolation]]) -> dict[str, object]:
    """Assemble the JSON report for a set of files, ordered by path."""
    paths = sorted(per_file)
    return {
        "files": [
            {"path": p, "violations": [cv.to_dict() for cv in per_file[p]]} for p in paths
        ],
        "summary": aggregate_report((cv for p in paths for cv in per_file[p]), paths),
    }


def report_schema() -> dict:
    return json.loads((resources.files("matchertext") / "report.schema.json").read_text(encoding="utf-8"))
