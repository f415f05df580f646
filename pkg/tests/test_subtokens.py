import pytest
from hypothesis import given
from hypothesis import strategies as st

from castlens.subtokens import (
    SubtokenSet,
    expression_subtokens,
    filter_expression_tokens,
    from_subtokens,
    split_identifier,
    subtoken_set,
)
from castlens.syntax import tokenize


class TestSplitIdentifier:
    @pytest.mark.parametrize(
        "text,expected",
        [
            ("bazGoo", ["baz", "goo"]),
            ("fooBar", ["foo", "bar"]),
            ("baz_goo", ["baz", "goo"]),
            ("HTTPServer", ["http", "server"]),
            ("parseHTTPResponse", ["parse", "http", "response"]),
            ("__pointee", ["pointee"]),
            ("TimeZoneNamesImpl", ["time", "zone", "names", "impl"]),
            ("nonConstThis", ["non", "const", "this"]),
            ("ipv4", ["ipv4"]),
            ("v8", ["v8"]),
            ("ALLCAPS", ["allcaps"]),
            ("iOS", ["i", "os"]),
            ("x", ["x"]),
            ("value", ["value"]),
            ("42", ["42"]),
            ("1'000", ["1'000"]),
            ("bytes_", ["bytes"]),
            ("_", []),
            ("", []),
            ("a_b_c", ["a", "b", "c"]),
            ("in_value", ["in", "value"]),
        ],
    )
    def test_examples(self, text, expected):
        assert split_identifier(text) == expected

    @given(st.from_regex(r"[A-Za-z_][A-Za-z0-9_]{0,20}", fullmatch=True))
    def test_parts_reassemble_lowercased(self, text):
        parts = split_identifier(text)
        assert "".join(parts) == text.lower().replace("_", "")
        assert all(p and p == p.lower() and "_" not in p for p in parts)

    @given(st.from_regex(r"[A-Za-z_][A-Za-z0-9_]{0,20}", fullmatch=True))
    def test_splitting_is_idempotent(self, text):
        for part in split_identifier(text):
            assert split_identifier(part) == [part]


class TestExpressionSubtokens:
    def subs(self, code, **kw):
        return expression_subtokens(tokenize(code), **kw)

    def test_punctuation_dropped(self):
        assert self.subs("a + b * (c)") == ["a", "b", "c"]

    def test_keywords_kept(self):
        assert self.subs("this") == ["this"]
        assert self.subs("nullptr") == ["nullptr"]

    def test_numeric_literals_kept_whole(self):
        assert self.subs("error + 1") == ["error", "1"]
        assert self.subs("0.5f") == ["0.5f"]

    def test_multiset_preserves_repeats(self):
        assert self.subs("x + x + xY") == ["x", "x", "x", "y"]

    def test_string_literal_split(self):
        assert self.subs('"Hello World-Wide"') == ["hello", "world", "wide"]
        assert self.subs('"maxRetries=3"') == ["max", "retries", "3"]

    def test_string_literal_keep_mode(self):
        assert self.subs('"Hello World"', split_strings=False) == ["hello world"]
        assert self.subs('"one"', split_strings=False) == ["one"]

    def test_char_and_prefixed_literals(self):
        assert self.subs("'x'") == ["x"]
        assert self.subs('u8"Iface"') == ["iface"]
        assert self.subs("L'c'") == ["c"]

    def test_raw_string_contents(self):
        assert self.subs('R"(a_b c)"') == ["a", "b", "c"]
        assert self.subs('R"xy(foo)xy"') == ["foo"]

    def test_empty_string_literal_contributes_nothing(self):
        assert self.subs('""') == []
        assert self.subs('""', split_strings=False) == []

    def test_filter_keeps_only_word_like_kinds(self):
        toks = tokenize("f(x, 1) + \"s\"")
        kept = filter_expression_tokens(toks)
        assert [t.text for t in kept] == ["f", "x", "1", '"s"']


class TestSubtokenSet:
    def test_set_and_counts(self):
        s = subtoken_set(tokenize("fooBar + foo_bar + z"))
        assert s.items == frozenset({"foo", "bar", "z"})
        assert s.raw_count == 5
        assert s.counts == {"foo": 2, "bar": 2, "z": 1}

    def test_from_subtokens_round_trip(self):
        s = from_subtokens(["a", "b", "a"])
        assert isinstance(s, SubtokenSet)
        assert s.items == frozenset({"a", "b"})
        assert s.raw_count == 3

    @given(st.lists(st.text(alphabet="abcxyz", min_size=1, max_size=4), max_size=20))
    def test_from_subtokens_invariants(self, subs):
        s = from_subtokens(subs)
        assert s.items == frozenset(subs)
        assert s.raw_count == len(subs)
        assert sum(s.counts.values()) == len(subs)

    @given(st.permutations(["alpha", "beta", "gamma", "beta"]))
    def test_set_is_order_invariant(self, subs):
        assert from_subtokens(subs).items == frozenset({"alpha", "beta", "gamma"})
