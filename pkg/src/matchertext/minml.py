"""MinML: bracket-structured markup that converts to HTML or XML.

======================  ===========================
MinML                   HTML
======================  ===========================
``em[text]``            ``<em>text</em>``
``[star]``              ``&star;``
``"[quoted]``           ``&ldquo;quoted&rdquo;``
``-[comment]``          ``<!--comment-->``
``+[verbatim]``         ``verbatim`` (escaped)
``[(<)]`` ``[{>}]`` …   a single unmatched matcher
======================  ===========================
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from matchertext.core import STANDARD, require_matchertext, scan_embedded
from matchertext.errors import BareBracketGroup
from matchertext.mlx import cdata_chain

NAME = re.compile(r"[A-Za-z][A-Za-z0-9-]*")
_NAME_TAIL = re.compile(r"[A-Za-z0-9-]+$")

MATCHER_ESCAPES = {
    "(<)": "(",
    "(>)": ")",
    "[<]": "[",
    "[>]": "]",
    "{<}": "{",
    "{>}": "}",
}


@dataclass(slots=True)
class Element:
    name: str
    children: list[MinMLNode] = field(default_factory=list)


@dataclass(slots=True)
class Text:
    content: str


@dataclass(slots=True)
class CharRef:
    name: str


@dataclass(slots=True)
class Quotation:
    children: list[MinMLNode] = field(default_factory=list)


@dataclass(slots=True)
class Comment:
    content: str


@dataclass(slots=True)
class Verbatim:
    content: str


@dataclass(slots=True)
class MatcherLiteral:
    char: str


MinMLNode = Union[Element, Text, CharRef, Quotation, Comment, Verbatim, MatcherLiteral]


def parse_minml(text: str) -> list[MinMLNode]:
    """Parse MinML source into a node list."""
    require_matchertext(text, STANDARD, "MinML source")
    nodes, _ = _parse(text, 0, len(text))
    return nodes


def _parse(text: str, i: int, stop: int) -> tuple[list[MinMLNode], int]:
    nodes: list[MinMLNode] = []
    buf = ""

    def flush(keep: int) -> None:
        if keep > 0:
            nodes.append(Text(buf[:keep]))

    while i < stop:
        j = text.find("[", i, stop)
        if j < 0:
            buf += text[i:stop]
            break
        buf += text[i:j]
        end = scan_embedded(text, j, STANDARD)
        inner = text[j + 1 : end]
        sigil = buf[-1:]
        if sigil == '"':
            flush(len(buf) - 1)
            nodes.append(Quotation(_parse(text, j + 1, end)[0]))
        elif sigil == "-":
            flush(len(buf) - 1)
            nodes.append(Comment(inner))
        elif sigil == "+":
            flush(len(buf) - 1)
            nodes.append(Verbatim(inner))
        elif name := _trailing_name(buf):
            flush(len(buf) - len(name))
            nodes.append(Element(name, _parse(text, j + 1, end)[0]))
        elif inner in MATCHER_ESCAPES:
            flush(len(buf))
            nodes.append(MatcherLiteral(MATCHER_ESCAPES[inner]))
        elif NAME.fullmatch(inner):
            flush(len(buf))
            nodes.append(CharRef(inner))
        else:
            raise BareBracketGroup(j, inner)
        buf = ""
        i = end + 1
    flush(len(buf))
    return nodes, i


def _trailing_name(s: str) -> str:
    m = _NAME_TAIL.search(s)
    if not m:
        return ""
    run = m.group()
    first = next((k for k, c in enumerate(run) if c.isascii() and c.isalpha()), None)
    return "" if first is None else run[first:]


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;")


def minml_to_html(nodes: list[MinMLNode], *, nested: bool = False) -> str:
    """Render nodes as HTML.

    ``nested=True`` reads verbatim content as MinML and renders it too
    before escaping.
    """
    return "".join(_emit(n, xml=False, nested=nested) for n in nodes)


def minml_to_xml(nodes: list[MinMLNode], *, nested: bool = False) -> str:
    """Render nodes as XML; verbatim content becomes a CDATA-section chain.

    With ``nested=True`` verbatim content is itself parsed as MinML and
    converted first, so ``+[+[x]]`` becomes the XML way of writing a CDATA
    section inside a CDATA section.
    """
    return "".join(_emit(n, xml=True, nested=nested) for n in nodes)


def _emit(node: MinMLNode, *, xml: bool, nested: bool) -> str:
    if isinstance(node, Text):
        return _escape(node.content)
    if isinstance(node, Element):
        inner = "".join(_emit(c, xml=xml, nested=nested) for c in node.children)
        return f"<{node.name}>{inner}</{node.name}>"
    if isinstance(node, CharRef):
        return f"&{node.name};"
    if isinstance(node, Quotation):
        inner = "".join(_emit(c, xml=xml, nested=nested) for c in node.children)
        if xml:
            return f"&#x201C;{inner}&#x201D;"
        return f"&ldquo;{inner}&rdquo;"
    if isinstance(node, Comment):
        return f"<!--{node.content}-->"
    if isinstance(node, Verbatim):
        content = node.content
        if nested:
            inner_nodes = parse_minml(content)
            content = minml_to_xml(inner_nodes, nested=True) if xml else minml_to_html(inner_nodes, nested=True)
        return cdata_chain(content) if xml else _escape(content)
    if isinstance(node, MatcherLiteral):
        return node.char
    raise TypeError(f"not a MinML node: {node!r}")
