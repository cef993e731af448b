"""Expand matchertext hosting extensions in HTML/XML into standard markup.

Three extensions are recognized:

``<name attrs [m]>``
    a whole element whose content is the verbatim matchertext ``m``;
``attr=[m]``
    an attribute whose value is ``m``;
``<![MDATA[m]]>``
    a section whose character data is ``m``.

Tag scanning is shallow: start tags, attributes, comments, and sections are
recognized lexically, nothing more.
"""

from __future__ import annotations

import re
from enum import Enum

from matchertext.core import STANDARD, scan_embedded
from matchertext.errors import (
    MismatchedInterior,
    NoMatchingCloser,
    RawContextConflict,
    UnterminatedExtension,
)


class MlDialect(str, Enum):
    HTML = "html"
    XHTML = "xhtml"


RAW_TEXT_ELEMENTS = frozenset({"script", "style"})

_MDATA_OPEN = "<![MDATA["
_TAG_NAME = re.compile(r"[A-Za-z][A-Za-z0-9:_.-]*")
_SPACE = re.compile(r"[ \t\r\n\f]*")
_ATTR_NAME = re.compile(r"""[^\s"'<>/=\[\]]+""")
_UNQUOTED = re.compile(r"""[^\s"'<>=`]+""")
_EQUALS = re.compile(r"[ \t\r\n\f]*=[ \t\r\n\f]*")


def escape_text(m: str) -> str:
    """Entity-escape ``m`` for use as element content."""
    return m.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace("\r", "&#13;")


def escape_attr(m: str) -> str:
    """Entity-escape ``m`` for a double-quoted attribute value.

    Tab, LF, and CR are written as character references so attribute-value
    normalization cannot fold them into spaces.
    """
    return (
        m.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace('"', "&quot;")
        .replace("\t", "&#9;")
        .replace("\n", "&#10;")
        .replace("\r", "&#13;")
    )


def cdata_chain(m: str) -> str:
    """Encode ``m`` as one or more adjacent CDATA sections.

    Every ``]]>`` in ``m`` is split across two sections.
    """
    return "<![CDATA[" + m.replace("]]>", "]]]]><![CDATA[>") + "]]>"


def _payload_end(text: str, open_index: int, form: str) -> int:
    try:
        return scan_embedded(text, open_index, STANDARD)
    except (NoMatchingCloser, MismatchedInterior) as exc:
        raise UnterminatedExtension(open_index, form) from exc


def expand_ml(text: str, dialect: MlDialect = MlDialect.HTML, *, nested: bool = False) -> str:
    """Rewrite the three extensions in ``text`` as standard markup.

    Payloads are copied through untouched.  With ``nested=True`` an MDATA
    payload is itself treated as host markup and expanded before it is
    written out, which is how documents that *discuss* MDATA sections
    translate into documents that discuss CDATA sections.
    """
    return _Expander(text, MlDialect(dialect), nested).run()


class _Expander:
    def __init__(self, text: str, dialect: MlDialect, nested: bool) -> None:
        self.text = text
        self.dialect = dialect
        self.nested = nested
        self.out: list[str] = []

    def run(self) -> str:
        text = self.text
        n = len(text)
        i = 0
        while i < n:
            j = text.find("<", i)
            if j < 0:
                self.out.append(text[i:])
                break
            self.out.append(text[i:j])
            i = self._markup(j)
        return "".join(self.out)

    def _copy_until(self, i: int, terminator: str) -> int:
        end = self.text.find(terminator, i)
        end = len(self.text) if end < 0 else end + len(terminator)
        self.out.append(self.text[i:end])
        return end

    def _markup(self, i: int) -> int:
        text = self.text
        if text.startswith(_MDATA_OPEN, i):
            return self._mdata(i)
        if text.startswith("<!--", i):
            return self._copy_until(i, "-->")
        if text.startswith("<![CDATA[", i):
            return self._copy_until(i, "]]>")
        if text.startswith("<!", i) or text.startswith("<?", i) or text.startswith("</", i):
            return self._copy_until(i, ">")
        m = _TAG_NAME.match(text, i + 1)
        if not m:
            self.out.append("<")
            return i + 1
        return self._start_tag(i, m.group())

    def _mdata(self, i: int) -> int:
        text = self.text
        bracket = i + len(_MDATA_OPEN) - 1
        end = _payload_end(text, bracket, "MDATA section")
        if text[end + 1 : end + 3] != "]>":
            raise UnterminatedExtension(i, "MDATA section")
        payload = text[bracket + 1 : end]
        if self.nested:
            payload = _Expander(payload, self.dialect, True).run()
        if self.dialect is MlDialect.XHTML:
            self.out.append(cdata_chain(payload))
        else:
            self.out.append(escape_text(payload))
        return end + 3

    def _start_tag(self, i: int, name: str) -> int:
        text = self.text
        n = len(text)
        pos = i + 1 + len(name)
        parts = ["<", name]
        while True:
            ws = _SPACE.match(text, pos).group()
            at = pos + len(ws)
            if at >= n:
                self.out.append(text[i:])
                return n
            ch = text[at]
            if ch == "[":
                end = _payload_end(text, at, f"<{name}> content")
                if ws != " ":
                    parts.append(ws + text[at : end + 1])
                    pos = end + 1
                    continue
                if text[end + 1 : end + 2] != ">":
                    raise UnterminatedExtension(at, f"<{name}> content")
                self.out.append("".join(parts) + ">")
                self.out.append(self._element_content(name, text[at + 1 : end], at))
                self.out.append(f"</{name}>")
                return end + 2
            if ch == ">" or text.startswith("/>", at):
                close = ">" if ch == ">" else "/>"
                self.out.append("".join(parts) + ws + close)
                at += len(close)
                if close == ">" and self.dialect is MlDialect.HTML and name.lower() in RAW_TEXT_ELEMENTS:
                    return self._raw_text(at, name)
                return at
            a = _ATTR_NAME.match(text, at)
            if not a:
                # Not a tag we understand; emit what we have and rescan after it.
                self.out.append("".join(parts) + ws + ch)
                return at + 1
            parts.append(ws + a.group())
            pos = a.end()
            eq = _EQUALS.match(text, pos)
            if not eq:
                continue
            parts.append(eq.group())
            pos = eq.end()
            if pos >= n:
                continue
            q = text[pos]
            if q == "[":
                end = _payload_end(text, pos, f"{a.group()} attribute")
                parts.append('"' + escape_attr(text[pos + 1 : end]) + '"')
                pos = end + 1
            elif q in "\"'":
                close = text.find(q, pos + 1)
                close = n - 1 if close < 0 else close
                parts.append(text[pos : close + 1])
                pos = close + 1
            else:
                u = _UNQUOTED.match(text, pos)
                if u:
                    parts.append(u.group())
                    pos = u.end()

    def _element_content(self, name: str, m: str, at: int) -> str:
        if self.dialect is MlDialect.HTML and name.lower() in RAW_TEXT_ELEMENTS:
            if ("</" + name.lower()) in m.lower():
                raise RawContextConflict(at, name)
            return m
        return escape_text(m)

    def _raw_text(self, i: int, name: str) -> int:
        m = re.compile(r"</" + re.escape(name) + r"(?=[\s/>])", re.IGNORECASE).search(self.text, i)
        end = len(self.text) if not m else m.start()
        self.out.append(self.text[i:end])
        return end
