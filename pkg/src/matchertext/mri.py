"""Matchertext resource identifiers (``scheme[body]``) and URI conversion.

An MRI body is matchertext over graphical characters only.  Inside a body,
``name[...]`` is a nested MRI and a bare ``[...]`` is a bracket quote whose
brackets survive conversion.  Any URI component may also carry a
``%[m]`` escape, which stands for ``m`` with percent-decoding switched off.
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass
from enum import Enum

from matchertext.core import (
    GRAPHICAL,
    STANDARD,
    MatcherConfig,
    is_graphical,
    scan_embedded,
    unmatched_indices,
    validate,
)
from matchertext.errors import (
    BadPercentTriplet,
    BadScheme,
    ForbiddenChar,
    MalformedHost,
    MismatchedInterior,
    MissingBrackets,
    NoMatchingCloser,
    NotMatchertext,
    TrailingGarbage,
    UnterminatedEmbed,
)

SCHEME = re.compile(r"[A-Za-z][A-Za-z0-9+.-]*")
_SCHEME_CHARS = frozenset(string.ascii_letters + string.digits + "+.-")

UNRESERVED = frozenset(string.ascii_letters + string.digits + "-._~")
SUB_DELIMS = frozenset("!$&'()*+,;=")
# Allowed verbatim inside a bracket quote.
QUOTE_SAFE = UNRESERVED | SUB_DELIMS | frozenset(":@/?")
# Allowed verbatim elsewhere in a body; brackets are handled structurally.
BODY_SAFE = QUOTE_SAFE | frozenset("#")
_HEXDIGITS = frozenset(string.hexdigits)
_PAREN_TRIPLETS = {"%28": "(", "%29": ")"}


@dataclass(frozen=True)
class Mri:
    scheme: str
    body: str

    def __post_init__(self) -> None:
        if not SCHEME.fullmatch(self.scheme):
            raise BadScheme(f"invalid scheme {self.scheme!r}")

    def __str__(self) -> str:
        return f"{self.scheme}[{self.body}]"


def pct(ch: str) -> str:
    """Percent-encode one character as uppercase-hex UTF-8 triplets."""
    return "".join(f"%{b:02X}" for b in ch.encode("utf-8"))


def pct_all_but_unreserved(s: str) -> str:
    return "".join(c if c in UNRESERVED else pct(c) for c in s)


def _is_triplet(s: str, i: int) -> bool:
    return s[i] == "%" and i + 2 < len(s) and s[i + 1] in _HEXDIGITS and s[i + 2] in _HEXDIGITS


def parse_mri(text: str, config: MatcherConfig = GRAPHICAL) -> Mri:
    """Split ``scheme[body]`` and check the body."""
    m = SCHEME.match(text)
    if not m:
        raise BadScheme(f"MRI must start with a scheme name: {text[:20]!r}")
    scheme = m.group()
    start = m.end()
    if start >= len(text) or text[start] != "[":
        raise MissingBrackets(f"expected '[' after scheme {scheme!r}")
    for k in range(start + 1, len(text)):
        if text[k] not in config.alphabet:
            raise ForbiddenChar(k, text[k])
    try:
        end = scan_embedded(text, start, config)
    except (NoMatchingCloser, MismatchedInterior):
        raise NotMatchertext(validate(text[start:], config), "MRI body") from None
    if end != len(text) - 1:
        raise TrailingGarbage(end + 1)
    return Mri(scheme, text[start + 1 : end])


class HostKind(str, Enum):
    DOMAIN = "Domain"
    IP4 = "Ip4"
    IP6 = "Ip6"
    NESTED_MRI = "NestedMri"


@dataclass(frozen=True)
class HostInfo:
    kind: HostKind
    value: str  # payload for Ip4/Ip6, body for NestedMri, the name for Domain
    scheme: str = ""


_IP4_CHARS = frozenset(string.digits + ".")
_IP6_CHARS = frozenset(string.hexdigits + ":.")
_REG_NAME = re.compile(r"(?:[A-Za-z0-9._~!$&'()*+,;=-]|%[0-9A-Fa-f]{2})*")


def classify_mri_host(host: str) -> HostInfo:
    """Classify the host subfield of an MRI authority."""
    m = SCHEME.match(host)
    if m and m.end() < len(host) and host[m.end()] == "[":
        name = m.group()
        try:
            end = scan_embedded(host, m.end(), GRAPHICAL)
        except (NoMatchingCloser, MismatchedInterior, NotMatchertext) as exc:
            raise MalformedHost(f"unbalanced host {host!r}") from exc
        if end != len(host) - 1:
            raise MalformedHost(f"text after bracketed host: {host!r}")
        payload = host[m.end() + 1 : end]
        lname = name.lower()
        if lname == "ip4":
            if not payload or not set(payload) <= _IP4_CHARS:
                raise MalformedHost(f"bad IPv4 address {payload!r}")
            return HostInfo(HostKind.IP4, payload)
        if lname == "ip6":
            if not payload or not set(payload) <= _IP6_CHARS or ":" not in payload:
                raise MalformedHost(f"bad IPv6 address {payload!r}")
            return HostInfo(HostKind.IP6, payload)
        return HostInfo(HostKind.NESTED_MRI, payload, name)
    if not _REG_NAME.fullmatch(host):
        raise MalformedHost(f"bad host name {host!r}")
    return HostInfo(HostKind.DOMAIN, host)


def mri_to_uri(mri: Mri) -> str:
    """Convert an MRI to traditional ``scheme:body`` URI syntax."""
    body = mri.body
    if not body.startswith("//"):
        return f"{mri.scheme}:{_convert(body)}"
    auth_end = _authority_end(body)
    return f"{mri.scheme}://{_convert_authority(body[2:auth_end])}{_convert(body[auth_end:])}"


def _authority_end(body: str) -> int:
    i = 2
    while i < len(body):
        c = body[i]
        if c in "/?#":
            return i
        if c == "[":
            i = scan_embedded(body, i, GRAPHICAL)
        i += 1
    return len(body)


def _split_depth0(s: str, sep: str, last: bool) -> int:
    """Index of the first (or last) ``sep`` outside brackets, or -1."""
    found = -1
    i = 0
    while i < len(s):
        if s[i] == "[":
            i = scan_embedded(s, i, GRAPHICAL)
        elif s[i] == sep:
            found = i
            if not last:
                return i
        i += 1
    return found


def _convert_authority(auth: str) -> str:
    at = _split_depth0(auth, "@", last=True)
    userinfo, hostport = (auth[: at + 1], auth[at + 1 :]) if at >= 0 else ("", auth)
    colon = _split_depth0(hostport, ":", last=False)
    host, port = (hostport[:colon], hostport[colon:]) if colon >= 0 else (hostport, "")
    out = _convert(userinfo)
    if host.startswith("["):
        # An RFC 3986 IP-literal is already legal URI syntax.
        out += host
    elif host:
        try:
            info = classify_mri_host(host)
        except MalformedHost:
            # Still a valid body; convert it like any other text.
            info = HostInfo(HostKind.DOMAIN, host)
        if info.kind is HostKind.IP4:
            out += info.value
        elif info.kind is HostKind.IP6:
            out += f"[{info.value}]"
        else:
            out += _convert(host)
    return out + _convert(port)


def _convert(s: str) -> str:
    out: list[str] = []
    i = 0
    n = len(s)
    while i < n:
        c = s[i]
        if c in _SCHEME_CHARS and c.isalpha() and (i == 0 or s[i - 1] not in _SCHEME_CHARS):
            m = SCHEME.match(s, i)
            k = m.end()
            if k < n and s[k] == "[":
                end = scan_embedded(s, k, GRAPHICAL)
                inner = mri_to_uri(Mri(m.group(), s[k + 1 : end]))
                out.append(pct_all_but_unreserved(inner))
                i = end + 1
            else:
                out.append(m.group())
                i = k
        elif c == "[":
            end = scan_embedded(s, i, GRAPHICAL)
            out.append("%5B")
            out.extend(ch if ch in QUOTE_SAFE else pct(ch) for ch in s[i + 1 : end])
            out.append("%5D")
            i = end + 1
        elif c == "%" and i + 1 < n and s[i + 1] == "[":
            end = scan_embedded(s, i + 1, GRAPHICAL)
            out.append(pct_all_but_unreserved(s[i + 2 : end]))
            i = end + 1
        elif c == "%" and _is_triplet(s, i):
            # Parentheses are legal in URIs; their triplets only exist to
            # keep the MRI body balanced.
            triplet = s[i : i + 3].upper()
            out.append(_PAREN_TRIPLETS.get(triplet, s[i : i + 3]))
            i += 3
        elif c == "%":
            out.append("%25")
            i += 1
        else:
            out.append(c if c in BODY_SAFE else pct(c))
            i += 1
    return "".join(out)


def uri_to_mri(uri: str) -> Mri:
    """Wrap a URI's body in brackets, escaping whatever would break the body.

    Unpaired matchers, non-graphical characters, and stray ``%`` signs are
    percent-encoded; existing triplets are kept.  Nested MRIs are not
    reconstructed.
    """
    colon = uri.find(":")
    if colon < 0 or not SCHEME.fullmatch(uri[:colon]):
        raise BadScheme(f"URI must start with 'scheme:': {uri[:20]!r}")
    body = uri[colon + 1 :]
    lone = set(unmatched_indices(body, STANDARD))
    out: list[str] = []
    for i, c in enumerate(body):
        if i in lone or not is_graphical(c):
            out.append(pct(c))
        elif c == "%" and not _is_triplet(body, i):
            out.append("%25")
        else:
            out.append(c)
    return Mri(uri[:colon], "".join(out))


def decode_uri_extended(component: str, config: MatcherConfig = GRAPHICAL) -> str:
    """Percent-decode a URI component, honoring ``%[m]`` verbatim escapes."""
    out: list[str] = []
    pending = bytearray()
    pending_at = 0

    def flush() -> None:
        if pending:
            try:
                out.append(pending.decode("utf-8"))
            except UnicodeDecodeError:
                raise BadPercentTriplet(pending_at) from None
            pending.clear()

    i = 0
    n = len(component)
    while i < n:
        c = component[i]
        if c == "%" and i + 1 < n and component[i + 1] == "[":
            flush()
            try:
                end = scan_embedded(component, i + 1, config)
            except (NoMatchingCloser, MismatchedInterior):
                raise UnterminatedEmbed(i) from None
            out.append(component[i + 2 : end])
            i = end + 1
        elif c == "%":
            if not _is_triplet(component, i):
                raise BadPercentTriplet(i)
            if not pending:
                pending_at = i
            pending.append(int(component[i + 1 : i + 3], 16))
            i += 3
        else:
            flush()
            out.append(c)
            i += 1
    flush()
    return "".join(out)
