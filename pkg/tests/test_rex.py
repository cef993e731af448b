from __future__ import annotations

import random
import re

import pytest
from hypothesis import given
from hypothesis import strategies as st

from _oracles import random_matchertext
from matchertext.core import is_matchertext
from matchertext.errors import BadClassSelector, NotMatchertext, UnterminatedQuote
from matchertext.rex import RexPattern, escape_literal, translate_rex

MATCHERS = set("()[]{}")


class TestExamples:
    @pytest.mark.parametrize(
        "pattern, want",
        [
            (r"{{\\}}", r"\\\\"),
            ("[a-z{<}]", r"[a-z\x7B]"),
            ("[^[>]]", r"[^\x5D]"),
            ("abc", "abc"),
            ("{{a.b}}", r"a\.b"),
            ("[()[]{}]", r"[\x28\x29\x5B\x5D\x7B\x7D]"),
            (r"\o()x\c()", r"\(x\)"),
            (r"\o[]\c{}", r"\[\}"),
            ("a{1,3}", "a{1,3}"),
            ("a{{1}}", "a1"),
            ("{{(a|b)}}+", r"\(a\|b\)+"),
            ("[[:alpha:](<)]", r"[[:alpha:]\x28]"),
            (r"[\[\]x]", r"[\x5B\x5Dx]"),
            ("[(x)]", r"[\x28x\x29]"),
        ],
    )
    def test_translation(self, pattern, want):
        assert translate_rex(pattern) == want

    def test_pattern_must_be_matchertext(self):
        with pytest.raises(NotMatchertext):
            RexPattern("a(b")
        with pytest.raises(NotMatchertext):
            translate_rex(r"\(")

    def test_unterminated_quote(self):
        with pytest.raises(UnterminatedQuote):
            translate_rex("{{a}b}")

    @pytest.mark.parametrize("pattern", ["[(<>)]", "[{<<}]", "[[>>]x]"])
    def test_bad_selector(self, pattern):
        with pytest.raises(BadClassSelector):
            translate_rex(pattern)


def test_class_of_all_matchers_probe():
    compiled = re.compile(translate_rex("[()[]{}]"))
    hits = {chr(c) for c in range(128) if compiled.fullmatch(chr(c))}
    assert hits == MATCHERS


@pytest.mark.parametrize("selector, ch", [("(<)", "("), ("(>)", ")"), ("[<]", "["), ("[>]", "]"), ("{<}", "{"), ("{>}", "}")])
def test_selector_probe(selector, ch):
    compiled = re.compile(translate_rex(f"[{selector}]"))
    assert {chr(c) for c in range(128) if compiled.fullmatch(chr(c))} == {ch}
    negated = re.compile(translate_rex(f"[^{selector}]"))
    assert {chr(c) for c in range(128) if not negated.fullmatch(chr(c))} == {ch}


LITERAL_PLAIN = "ab.^$*+?|\\-#/ \n^é"


class TestLiteralMatch:
    def test_random_literals(self):
        rng = random.Random(21)
        alphabet = LITERAL_PLAIN + "()[]{}xyz"
        for _ in range(1500):
            s = random_matchertext(rng, 16, LITERAL_PLAIN)
            compiled = re.compile(translate_rex("{{" + s + "}}"))
            assert compiled.fullmatch(s), s
            if not s:
                continue
            k = rng.randrange(len(s))
            for repl in rng.sample(alphabet, 6):
                if repl != s[k]:
                    mutated = s[:k] + repl + s[k + 1 :]
                    assert not compiled.fullmatch(mutated), (s, mutated)

    @given(st.text(alphabet=LITERAL_PLAIN + "()[]{}"))
    def test_escape_literal(self, s):
        assert re.fullmatch(escape_literal(s), s)


# Patterns built from ordinary regex syntax with no extensions and no
# matchers inside classes.
atoms = st.sampled_from(["a", "b", ".", r"\d", r"\.", r"\w", "[a-z]", "[^0-9]", "[[:digit:]_]", "^", "$"])


def _pattern(children):
    group = children.map(lambda s: "(" + s + ")")
    nc = children.map(lambda s: "(?:" + s + ")")
    alt = st.tuples(children, children).map(lambda t: t[0] + "|" + t[1])
    return st.one_of(group, nc, alt)


plain_patterns = st.recursive(
    atoms,
    lambda inner: st.one_of(
        _pattern(inner),
        st.tuples(inner, st.sampled_from(["", "*", "+", "?", "{2}", "{1,3}"])).map("".join),
        st.lists(inner, min_size=2, max_size=4).map("".join),
    ),
    max_leaves=10,
)


class TestPassthrough:
    @given(plain_patterns)
    def test_extension_free_unchanged(self, p):
        assert translate_rex(p) == p

    @given(plain_patterns)
    def test_translation_is_idempotent_on_matchertext_output(self, p):
        out = translate_rex("{{" + p + "}}x" + p)
        if is_matchertext(out):
            assert translate_rex(out) == out
