import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from castlens import syntax
from castlens.corpus import SourceFile
from castlens.syntax import (
    Assignment,
    CallArg,
    Other,
    Unresolved,
    classify_context,
    extract_file,
    index_functions,
    join_tokens,
    resolve_formal,
    scan_macro_bodies,
    scan_named_casts,
    tokenize,
)


def kinds_texts(code):
    return [(t.kind, t.text) for t in tokenize(code)]


# ---------------------------------------------------------------------------
# lexer
# ---------------------------------------------------------------------------


class TestTokenize:
    def test_c_style_cast_line(self):
        toks = tokenize("int y = (int) x;")
        assert [(t.kind, t.text) for t in toks] == [
            ("keyword", "int"),
            ("identifier", "y"),
            ("punctuator", "="),
            ("punctuator", "("),
            ("keyword", "int"),
            ("punctuator", ")"),
            ("identifier", "x"),
            ("punctuator", ";"),
        ]
        assert [(t.line, t.col) for t in toks] == [
            (1, 1), (1, 5), (1, 7), (1, 9), (1, 10), (1, 13), (1, 15), (1, 16),
        ]

    def test_comments_dropped(self):
        toks = tokenize("a /* block */ b // line\nc")
        assert [t.text for t in toks] == ["a", "b", "c"]
        assert toks[2].line == 2 and toks[2].col == 1

    def test_block_comment_spans_lines(self):
        toks = tokenize("a /* one\ntwo */ b")
        assert [t.text for t in toks] == ["a", "b"]
        assert toks[1].line == 2

    def test_cast_keywords_are_keywords(self):
        toks = tokenize("static_cast dynamic_cast const_cast reinterpret_cast")
        assert all(t.kind == "keyword" for t in toks)

    def test_string_and_char_literals(self):
        toks = tokenize('"hello" \'x\' \'\\n\' u8"s" L\'c\'')
        assert [t.kind for t in toks] == ["literal"] * 5
        assert toks[0].text == '"hello"'
        assert toks[2].text == "'\\n'"
        assert toks[3].text == 'u8"s"'

    def test_string_with_escaped_quote(self):
        toks = tokenize(r'"a\"b" c')
        assert toks[0].text == r'"a\"b"'
        assert toks[1].text == "c"

    def test_raw_string(self):
        toks = tokenize('R"(no "escape" here)" x')
        assert toks[0].kind == "literal"
        assert toks[0].text == 'R"(no "escape" here)"'
        assert toks[1].text == "x"

    def test_raw_string_with_delimiter(self):
        code = 'R"xy(a )" still inside)xy" z'
        toks = tokenize(code)
        assert toks[0].text == 'R"xy(a )" still inside)xy"'
        assert toks[1].text == "z"

    def test_numbers(self):
        toks = tokenize("0xFFu 1'000'000 1.5e-3 .5f 0x1p+2 42")
        assert [t.kind for t in toks] == ["literal"] * 6
        assert [t.text for t in toks] == ["0xFFu", "1'000'000", "1.5e-3", ".5f", "0x1p+2", "42"]

    def test_shift_right_is_one_token(self):
        toks = tokenize("a >> b >>= c")
        assert [t.text for t in toks] == ["a", ">>", "b", ">>=", "c"]

    def test_unterminated_string_warns(self):
        warnings = []
        toks = tokenize('"abc', warnings)
        assert toks[0].kind == "literal"
        assert len(warnings) == 1 and "unterminated" in warnings[0]

    def test_unterminated_block_comment_warns(self):
        warnings = []
        toks = tokenize("a /* never closed", warnings)
        assert [t.text for t in toks] == ["a"]
        assert len(warnings) == 1 and "unterminated" in warnings[0]

    def test_directive_tokens_flagged(self):
        toks = tokenize("#define X 1\nint a;")
        directive = [t for t in toks if t.in_directive]
        rest = [t for t in toks if not t.in_directive]
        assert [t.text for t in directive] == ["#", "define", "X", "1"]
        assert [t.text for t in rest] == ["int", "a", ";"]

    def test_directive_continuation(self):
        toks = tokenize("#define Y \\\n  2\nint b;")
        directive = [t.text for t in toks if t.in_directive]
        assert directive == ["#", "define", "Y", "2"]

    def test_distinct_directives_get_distinct_serials(self):
        toks = tokenize("#include <a.h>\n#define Z 3\n")
        serials = {t.directive for t in toks if t.in_directive}
        assert len(serials) == 2

    def test_empty_and_whitespace_only(self):
        assert tokenize("") == []
        assert tokenize("  \n\t \n") == []


class TestJoinTokens:
    def test_spaces_only_between_word_tokens(self):
        toks = tokenize("const DecimalFormat *decFmt")
        assert join_tokens(toks) == "const DecimalFormat*decFmt"

    def test_qualified_template_type(self):
        toks = tokenize("std::shared_ptr<i::BackingStore>*")
        assert join_tokens(toks) == "std::shared_ptr<i::BackingStore>*"


# ---------------------------------------------------------------------------
# cast scanning
# ---------------------------------------------------------------------------


def casts_in(code):
    return scan_named_casts(tokenize(code))


class TestScanNamedCasts:
    def test_each_kind(self):
        occ = casts_in(
            "a = static_cast<int>(x); b = dynamic_cast<Foo*>(p);"
            "c = const_cast<char*>(s); d = reinterpret_cast<void*>(q);"
        )
        assert [o.kind for o in occ] == ["static", "dynamic", "const", "reinterpret"]
        assert occ[0].target_type == "int"
        assert occ[1].target_type == "Foo*"

    def test_source_tokens(self):
        (occ,) = casts_in("static_cast<int>(x + y)")
        assert [t.text for t in occ.source_tokens] == ["x", "+", "y"]

    def test_functional_and_c_style_ignored(self):
        assert casts_in("int(x); (int)x; (unsigned long)(y);") == []

    def test_position_is_the_keyword(self):
        (occ,) = casts_in("  q = static_cast<int>(x);")
        assert (occ.line, occ.col) == (1, 7)

    def test_nested_casts_both_found(self):
        occ = casts_in("a = static_cast<int>(reinterpret_cast<intptr_t>(p));")
        assert [o.kind for o in occ] == ["static", "reinterpret"]
        # the outer source expression contains the entire inner cast
        outer = [t.text for t in occ[0].source_tokens]
        assert outer[0] == "reinterpret_cast" and outer[-1] == ")"

    def test_template_shift_close(self):
        (occ,) = casts_in("v = static_cast<std::vector<int>>(w);")
        assert occ.target_type == "std::vector<int>"
        assert [t.text for t in occ.source_tokens] == ["w"]

    def test_function_pointer_target(self):
        # parens suspend angle counting inside the target type
        (occ,) = casts_in("fp = reinterpret_cast<int (*)(char)>(addr);")
        assert occ.target_type == "int(*)(char)"
        assert [t.text for t in occ.source_tokens] == ["addr"]

    def test_comparison_less_than_is_not_a_cast(self):
        assert casts_in("if (a static_cast b) {}") == []
        assert casts_in("x = static_cast < y;") == []

    def test_missing_call_parens_is_not_a_cast(self):
        assert casts_in("static_cast<int> x;") == []

    def test_empty_source_discarded(self):
        assert casts_in("static_cast<int>();") == []

    def test_whitespace_between_parts_is_fine(self):
        (occ,) = casts_in("y = static_cast < int > ( x ) ;")
        assert occ.kind == "static" and occ.target_type == "int"

    def test_directive_casts_not_in_code_scan(self):
        occ = casts_in("#define C static_cast<int>(x)\nint y;")
        assert occ == []

    def test_count_matches_regex_oracle(self):
        # every cast in this snippet is well formed, so a keyword count is
        # an exact oracle for the number of occurrences
        code = """
            void f() {
              a = static_cast<A>(b);
              g(const_cast<B*>(c), dynamic_cast<C&>(d));
              h[static_cast<int>(i)] = reinterpret_cast<D>(static_cast<E>(j));
            }
        """
        expected = len(re.findall(r"\b(?:static|dynamic|const|reinterpret)_cast\s*<", code))
        assert len(casts_in(code)) == expected == 6


# ---------------------------------------------------------------------------
# context classification
# ---------------------------------------------------------------------------


def classify_one(code):
    toks = tokenize(code)
    (occ,) = scan_named_casts(toks)
    return classify_context(toks, occ)


class TestClassifyContext:
    def test_plain_assignment(self):
        ctx = classify_one("y = static_cast<int>(x);")
        assert isinstance(ctx, Assignment)
        assert [t.text for t in ctx.dest_tokens] == ["y"]

    def test_declaration_initializer(self):
        ctx = classify_one("const Foo* p = static_cast<const Foo*>(q);")
        assert isinstance(ctx, Assignment)
        assert join_tokens(ctx.dest_tokens) == "const Foo*p"

    def test_compound_assignment(self):
        ctx = classify_one("total += static_cast<long>(n);")
        assert isinstance(ctx, Assignment)
        assert [t.text for t in ctx.dest_tokens] == ["total"]

    def test_member_and_subscript_destination(self):
        ctx = classify_one("obj.buf_[i++] = static_cast<uint8_t>(v);")
        assert isinstance(ctx, Assignment)
        assert join_tokens(ctx.dest_tokens) == "obj.buf_[i++]"

    def test_for_increment_assignment(self):
        # the closing ')' of the for header counts as a statement tail
        code = "for (e = A; e < B; e = static_cast<Err>(e + 1)) {}"
        toks = tokenize(code)
        (occ,) = scan_named_casts(toks)
        ctx = classify_context(toks, occ)
        assert isinstance(ctx, Assignment)
        assert [t.text for t in ctx.dest_tokens] == ["e"]

    def test_case_label_does_not_leak_into_destination(self):
        ctx = classify_one("switch (k) { case 2: v = static_cast<int>(x); }")
        assert isinstance(ctx, Assignment)
        assert [t.text for t in ctx.dest_tokens] == ["v"]

    def test_call_argument(self):
        ctx = classify_one("f(static_cast<int>(x));")
        assert isinstance(ctx, CallArg)
        assert (ctx.callee, ctx.arg_index, ctx.arity) == ("f", 0, 1)

    def test_call_argument_position(self):
        ctx = classify_one("f(a, static_cast<int>(x), b + c);")
        assert (ctx.callee, ctx.arg_index, ctx.arity) == ("f", 1, 3)

    def test_innermost_call_wins(self):
        ctx = classify_one("g(h(static_cast<int>(x)));")
        assert (ctx.callee, ctx.arg_index, ctx.arity) == ("h", 0, 1)

    def test_earlier_args_with_nested_parens(self):
        ctx = classify_one("f((a + b), g(c), static_cast<int>(x));")
        assert (ctx.callee, ctx.arg_index, ctx.arity) == ("f", 2, 3)

    def test_if_condition_is_other(self):
        ctx = classify_one("if (static_cast<bool>(x)) {}")
        assert isinstance(ctx, Other)

    def test_return_is_other(self):
        ctx = classify_one("return static_cast<T*>(x);")
        assert isinstance(ctx, Other)

    def test_array_size_is_other(self):
        ctx = classify_one("char buf[static_cast<int>(n)];")
        assert isinstance(ctx, Other)

    def test_cast_as_subexpression_is_other(self):
        # the cast's value feeds into a larger expression, not a binding
        ctx = classify_one("y = static_cast<int>(x) + 1;")
        assert isinstance(ctx, Other)

    def test_lhs_cast_is_other(self):
        ctx = classify_one("*reinterpret_cast<int*>(p) = 5;")
        assert isinstance(ctx, Other)

    def test_previous_statement_assignment_not_picked_up(self):
        code = "a = b; f(static_cast<int>(x));"
        toks = tokenize(code)
        (occ,) = scan_named_casts(toks)
        ctx = classify_context(toks, occ)
        assert isinstance(ctx, CallArg) and ctx.callee == "f"


# ---------------------------------------------------------------------------
# function index and formal resolution
# ---------------------------------------------------------------------------


def index_of(code, path="x.cc"):
    return index_functions([(path, tokenize(code))])


class TestIndexFunctions:
    def test_definition_and_declaration(self):
        idx = index_of("void f(int a, char b) { }\nint g(double x);")
        assert idx[("f", 2)][0].param_names == ("a", "b")
        assert idx[("g", 1)][0].param_names == ("x",)

    def test_qualified_definition(self):
        idx = index_of("void Foo::bar(int n) {}")
        assert idx[("bar", 1)][0].param_names == ("n",)

    def test_template_id_qualified_definition(self):
        idx = index_of("template <class T> void Foo<T>::baz(int n) {}")
        assert idx[("baz", 1)][0].param_names == ("n",)

    def test_call_sites_not_indexed(self):
        idx = index_of("void f(int a);\nvoid main2() { f(1); g(2); x = h(3); }")
        assert ("f", 1) in idx and len(idx[("f", 1)]) == 1
        assert ("g", 1) not in idx and ("h", 1) not in idx

    def test_pure_virtual_and_deleted(self):
        idx = index_of("struct S { virtual int h(int v) = 0; };\nvoid k(S s) = delete;")
        assert idx[("h", 1)][0].param_names == ("v",)
        assert idx[("k", 1)][0].param_names == ("s",)

    def test_trailing_return_type(self):
        idx = index_of("auto area(int w, int h) -> long;")
        assert idx[("area", 2)][0].param_names == ("w", "h")

    def test_const_noexcept_override_qualifiers(self):
        idx = index_of("struct T { int size(int unit) const noexcept override; };")
        assert idx[("size", 1)][0].param_names == ("unit",)

    def test_default_values_skipped(self):
        idx = index_of("void m(int a = 3, char c = 'x');")
        assert idx[("m", 2)][0].param_names == ("a", "c")

    def test_template_args_in_param_types(self):
        idx = index_of("void n(std::map<int, char> items, int count);")
        assert idx[("n", 2)][0].param_names == ("items", "count")

    def test_pointer_and_reference_params(self):
        idx = index_of("bool cas(T* volatile* ptr, T* old_value, T* new_value);")
        assert idx[("cas", 3)][0].param_names == ("ptr", "old_value", "new_value")

    def test_void_param_list_is_nullary(self):
        idx = index_of("int rand_byte(void);")
        assert idx[("rand_byte", 0)][0].param_names == ()

    def test_unnamed_param_is_empty_string(self):
        idx = index_of("void u(int, char c);")
        assert idx[("u", 2)][0].param_names == ("", "c")

    def test_control_keywords_not_callees(self):
        idx = index_of("void f() { if (x) {} while (y) {} for (;;) {} return; }")
        assert all(name not in ("if", "while", "for", "switch") for name, _ in idx)


class TestResolveFormal:
    def test_agreeing_overloads(self):
        idx = index_functions(
            [
                ("a.h", tokenize("void s(int value);")),
                ("a.cc", tokenize("void s(int value) { }")),
            ]
        )
        assert resolve_formal("s", 1, 0, idx) == "value"

    def test_disagreeing_candidates_are_ambiguous(self):
        idx = index_of("void t(int first);\nstruct Q { void t(int second); };")
        got = resolve_formal("t", 1, 0, idx)
        assert isinstance(got, Unresolved) and got.reason == "ambiguous"

    def test_unknown_callee(self):
        got = resolve_formal("nosuch", 1, 0, {})
        assert isinstance(got, Unresolved) and got.reason == "unknown"

    def test_per_slot_agreement(self):
        # candidates disagree at slot 0 but agree at slot 1
        idx = index_of("void p(int a, int shared);\nstruct R { void p(int b, int shared); };")
        assert resolve_formal("p", 2, 1, idx) == "shared"
        got = resolve_formal("p", 2, 0, idx)
        assert isinstance(got, Unresolved) and got.reason == "ambiguous"

    def test_arity_mismatch_is_unknown(self):
        idx = index_of("void f(int a);")
        got = resolve_formal("f", 2, 0, idx)
        assert isinstance(got, Unresolved) and got.reason == "unknown"

    def test_bad_arg_index_raises(self):
        with pytest.raises(ValueError):
            resolve_formal("f", 1, 1, {})


# ---------------------------------------------------------------------------
# macro bodies
# ---------------------------------------------------------------------------


class TestScanMacroBodies:
    def test_function_like_macro_body(self):
        toks = tokenize("#define CAST(x) static_cast<int>(x)\n")
        (occ,) = scan_macro_bodies(toks)
        assert occ.kind == "static" and occ.in_macro_body
        # the parameter list is not part of the body stream
        assert occ.stream[0].text == "static_cast"

    def test_object_like_macro_body(self):
        toks = tokenize("#define INIT val = static_cast<long>(0);\n")
        (occ,) = scan_macro_bodies(toks)
        ctx = classify_context(occ.stream, occ)
        assert isinstance(ctx, Assignment)
        assert [t.text for t in ctx.dest_tokens] == ["val"]

    def test_space_before_paren_means_object_like(self):
        # '(' not adjacent to the name: the list is part of the body
        toks = tokenize("#define G (x) static_cast<int>(x)\n")
        (occ,) = scan_macro_bodies(toks)
        assert occ.stream[0].text == "("

    def test_castless_macro(self):
        assert scan_macro_bodies(tokenize("#define NOCAST(x) ((x) + 1)\n")) == []

    def test_non_define_directives_ignored(self):
        # a cast expression inside #if is neither code nor a macro body
        toks = tokenize("#if static_cast<int>(x)\n#include <foo.h>\n")
        assert scan_macro_bodies(toks) == []
        assert scan_named_casts(toks) == []

    def test_multiline_macro_body(self):
        code = "#define BLOCK(n) \\\n  do { v = static_cast<int>(n); } while (0)\n"
        (occ,) = scan_macro_bodies(tokenize(code))
        ctx = classify_context(occ.stream, occ)
        assert isinstance(ctx, Assignment)


# ---------------------------------------------------------------------------
# whole-file extraction
# ---------------------------------------------------------------------------


class TestExtractFile:
    def test_composition_and_order(self):
        code = (
            "#define WRAP(p) q = static_cast<Q*>(p);\n"
            "void f(int in_count);\n"
            "void g() {\n"
            "  long y = static_cast<long>(z);\n"
            "  f(static_cast<int>(w));\n"
            "}\n"
        )
        src = SourceFile(path="t.cc", component="t", content=code)
        idx = index_functions([("t.cc", tokenize(code))])
        recs = extract_file(src, idx)
        assert [(r.line, r.kind, r.context.__class__.__name__) for r in recs] == [
            (1, "static", "Assignment"),
            (4, "static", "Assignment"),
            (5, "static", "CallArg"),
        ]
        assert recs[0].in_macro_body and not recs[1].in_macro_body
        # the call argument resolves to f's formal and gets a synthetic token
        assert [t.text for t in recs[2].context.dest_tokens] == ["in_count"]

    def test_unresolved_call_arg(self):
        code = "void g() { mystery(static_cast<int>(w)); }"
        src = SourceFile(path="t.cc", component="t", content=code)
        recs = extract_file(src, index_functions([("t.cc", tokenize(code))]))
        (rec,) = recs
        assert isinstance(rec.context, CallArg)
        assert rec.context.unresolved == "unknown"

    def test_unnamed_formal_leaves_empty_destination(self):
        code = "void sink(int);\nvoid g() { sink(static_cast<int>(w)); }"
        src = SourceFile(path="t.cc", component="t", content=code)
        (rec,) = extract_file(src, index_functions([("t.cc", tokenize(code))]))
        assert isinstance(rec.context, CallArg)
        assert rec.context.unresolved is None
        assert rec.context.dest_tokens == []

    def test_no_double_count_of_directive_casts(self):
        code = "#define C static_cast<int>(x)\na = static_cast<long>(b);\n"
        src = SourceFile(path="t.cc", component="t", content=code)
        recs = extract_file(src, {})
        assert len(recs) == 2
        assert sorted(r.in_macro_body for r in recs) == [False, True]


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------

ident = st.from_regex(r"[a-zA-Z_][a-zA-Z0-9_]{0,10}", fullmatch=True).filter(
    lambda s: s not in syntax.KEYWORDS
)


class TestLexerProperties:
    @given(st.lists(ident, min_size=0, max_size=8))
    def test_identifier_round_trip(self, names):
        code = " ".join(names)
        toks = tokenize(code)
        assert [t.text for t in toks] == names

    @given(st.text(alphabet="abc123+-*/(){}[];,.<>=& \n\t_", max_size=120))
    @settings(max_examples=200)
    def test_never_crashes_and_positions_valid(self, code):
        toks = tokenize(code, warnings=[])
        lines = code.split("\n")
        for t in toks:
            assert 1 <= t.line <= len(lines)
            assert t.col >= 1
            # every token's text starts where the position says
            assert lines[t.line - 1][t.col - 1 : t.col - 1 + len(t.text)] == t.text

    @given(st.text(alphabet="xy<>()=;_castreinp ", max_size=80))
    @settings(max_examples=200)
    def test_scan_never_crashes(self, code):
        scan_named_casts(tokenize(code, warnings=[]), warnings=[])
