from __future__ import annotations

import json
import random

import jsonschema
import pytest
from hypothesis import given
from hypothesis import strategies as st

from matchertext.analyzer import (
    Context,
    LanguageProfile,
    StringForm,
    aggregate_report,
    analyze_source,
    analyze_with_warnings,
    build_report,
    builtin_profiles,
    lex_regions,
    load_profile,
    report_schema,
)
from matchertext.core import GRAPHICAL, ViolationKind, validate
from matchertext.errors import ConfigError

C = load_profile("c")
SHELL = load_profile("shell")
MARKUP = load_profile("markup")


def contexts(text, profile=C):
    return [(cv.violation.kind, cv.context) for cv in analyze_source(text, profile)]


class TestExamples:
    def test_string_literal(self):
        assert contexts('printf("{")') == [(ViolationKind.UNMATCHED_OPENER, Context.STRING_LITERAL)]

    def test_balanced_code(self):
        assert analyze_source("a*(b+c)", C) == []

    def test_line_comment(self):
        assert contexts("x = 1 // close )") == [(ViolationKind.UNEXPECTED_CLOSER, Context.COMMENT)]

    def test_code(self):
        assert contexts("f(x;\n") == [(ViolationKind.UNMATCHED_OPENER, Context.CODE)]

    def test_escaped_quote_does_not_end_string(self):
        assert contexts(r's = "a\"(";') == [(ViolationKind.UNMATCHED_OPENER, Context.STRING_LITERAL)]

    def test_char_literal(self):
        assert contexts("c = ')';") == [(ViolationKind.UNEXPECTED_CLOSER, Context.STRING_LITERAL)]

    def test_block_comment_spans_lines(self):
        text = "/* a\n ( */ x"
        assert contexts(text) == [(ViolationKind.UNMATCHED_OPENER, Context.COMMENT)]

    def test_line_comment_ends_at_lf(self):
        assert contexts("// c\n)") == [(ViolationKind.UNEXPECTED_CLOSER, Context.CODE)]

    def test_shell_profile(self):
        text = "echo ')' # note ]\nls {\n"
        assert contexts(text, SHELL) == [
            (ViolationKind.UNEXPECTED_CLOSER, Context.STRING_LITERAL),
            (ViolationKind.UNEXPECTED_CLOSER, Context.COMMENT),
            (ViolationKind.UNMATCHED_OPENER, Context.CODE),
        ]

    def test_markup_profile(self):
        assert contexts("<p>)</p><!-- [ -->", MARKUP) == [
            (ViolationKind.UNEXPECTED_CLOSER, Context.CODE),
            (ViolationKind.UNMATCHED_OPENER, Context.COMMENT),
        ]

    def test_python_longest_match(self):
        py = load_profile("python")
        assert contexts('x = """a\n(\n"""', py) == [(ViolationKind.UNMATCHED_OPENER, Context.STRING_LITERAL)]

    def test_warnings(self):
        found, warnings = analyze_with_warnings('s = "abc\n(', C)
        assert [cv.context for cv in found] == [Context.CODE]
        assert warnings == ["UnterminatedString at index 4"]
        _, warnings = analyze_with_warnings("/* (", C)
        assert warnings == ["UnterminatedComment at index 0"]

    def test_nested_comments_flag(self):
        nesting = LanguageProfile("n", block_comment=("/*", "*/"), nested_comments=True)
        flat = LanguageProfile("f", block_comment=("/*", "*/"))
        text = "/* /* */ ( */"
        assert [cv.context for cv in analyze_source(text, nesting)] == [Context.COMMENT]
        assert [cv.context for cv in analyze_source(text, flat)] == [Context.CODE]


class TestProfiles:
    def test_builtins(self):
        assert {"c", "shell", "markup"} <= set(builtin_profiles())

    def test_load_from_file(self, tmp_path):
        path = tmp_path / "lisp.json"
        path.write_text(json.dumps({"name": "lisp", "line_comment": ";", "string_forms": [{"delimiter": '"', "escape_char": "\\"}]}))
        profile = load_profile(str(path))
        assert profile.line_comment == ";"
        assert contexts('; )\n"("', profile) == [
            (ViolationKind.UNEXPECTED_CLOSER, Context.COMMENT),
            (ViolationKind.UNMATCHED_OPENER, Context.STRING_LITERAL),
        ]

    def test_unknown(self):
        with pytest.raises(ConfigError):
            load_profile("cobol")

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"line_comment": ""},
            {"line_comment": "#", "string_forms": (StringForm("#"),)},
            {"string_forms": (StringForm('"', escape_char="\\\\"),)},
            {"block_comment": ("/*", "")},
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ConfigError):
            LanguageProfile("bad", **kwargs)


SOURCE_CHARS = "ab(){}[]\"'\\/*\n #"


class TestProperties:
    @given(st.text(alphabet=SOURCE_CHARS, max_size=60), st.sampled_from([C, SHELL, MARKUP]))
    def test_violation_set_equals_validate(self, text, profile):
        assert [cv.violation for cv in analyze_source(text, profile)] == validate(text)

    @given(st.text(alphabet=SOURCE_CHARS + " é", max_size=60))
    def test_graphical_config_passes_through(self, text):
        assert [cv.violation for cv in analyze_source(text, C, GRAPHICAL)] == validate(text, GRAPHICAL)

    @given(st.text(alphabet=SOURCE_CHARS, max_size=60), st.sampled_from([C, SHELL, MARKUP]))
    def test_partition(self, text, profile):
        regions = lex_regions(text, profile).regions
        assert regions[0].start == 0
        assert regions[-1].end == len(text)
        for a, b in zip(regions, regions[1:]):
            assert a.end == b.start
            assert a.context is not b.context
        lex = lex_regions(text, profile)
        for i in range(len(text)):
            owners = [r for r in regions if r.start <= i < r.end]
            assert len(owners) == 1
            assert lex.context_at(i) is owners[0].context

    def test_order_independence(self):
        rng = random.Random(8)
        per_file = {}
        for k in range(12):
            text = "".join(rng.choice(SOURCE_CHARS) for _ in range(80))
            per_file[f"f{k}.c"] = analyze_source(text, C, path=f"f{k}.c")
        flat = [cv for p in per_file for cv in per_file[p]]
        expected = aggregate_report(flat, per_file)
        for _ in range(5):
            order = list(per_file)
            rng.shuffle(order)
            shuffled = [cv for p in order for cv in per_file[p]]
            rng.shuffle(shuffled)
            assert aggregate_report(shuffled, order) == expected
        shuffled = dict(sorted(per_file.items(), reverse=True))
        assert build_report(shuffled) == build_report(per_file)


class TestReport:
    def test_empty(self):
        assert aggregate_report([]) == {
            "total": 0,
            "contexts": {"Code": 0, "Comment": 0, "StringLiteral": 0},
            "by_context": {},
            "by_file": {},
        }

    def test_printf_count(self):
        summary = aggregate_report(analyze_source('printf("{")', C))
        assert summary["by_context"] == {"StringLiteral": {"UnmatchedOpener": 1}}

    def test_files_add_up(self):
        a = analyze_source("(( // ]", C, path="a.c")
        b = analyze_source('"]" }', C, path="b.c")
        summary = aggregate_report(a + b)
        assert summary["by_file"] == {"a.c": 2, "b.c": 2}
        assert sum(summary["by_file"].values()) == summary["total"] == 4

    def test_schema(self):
        report = build_report({"x.c": analyze_source('f("(") // ]\n}', C, path="x.c"), "y.c": []})
        jsonschema.validate(report, report_schema())
        assert [f["path"] for f in report["files"]] == ["x.c", "y.c"]
        assert list(report["files"][0]["violations"][0]) == [
            "offset", "line", "col", "kind", "found", "expected", "context",
        ]
