"""Identifier subtokenization.

Names are split into lowercase subtokens at underscores and camel-case
boundaries so that `bazGoo` and `baz_goo` compare equal. An uppercase run
followed by a lowercase letter splits before its last capital
(`HTTPServer` -> [http, server]); digits stay attached to the run they
follow (`ipv4` -> [ipv4]). A lexeme with no letters (a numeric literal)
is its own subtoken.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass

KEPT_KINDS = frozenset(["identifier", "keyword", "literal"])

_WORD_RE = re.compile(r"[0-9A-Za-z]+")


@dataclass(frozen=True)
class SubtokenSet:
    items: frozenset[str]
    raw_count: int          # subtokens before dedup
    counts: dict[str, int]  # multiset backing, for the frequency model


def filter_expression_tokens(tokens) -> list:
    """Keep identifiers, keywords and literals; drop punctuators and noise."""
    return [t for t in tokens if t.kind in KEPT_KINDS]


def split_identifier(text: str) -> list[str]:
    if not text:
        return []
    if not any(c.isalpha() for c in text) and "_" not in text:
        return [text.lower()]  # numeric literal: keep whole
    parts: list[str] = []
    for seg in text.split("_"):
        if seg:
            parts.extend(_split_camel(seg))
    return parts


def _split_camel(seg: str) -> list[str]:
    out = []
    start = 0
    for i in range(1, len(seg)):
        ch = seg[i]
        if not ch.isupper():
            continue
        prev = seg[i - 1]
        nxt = seg[i + 1] if i + 1 < len(seg) else ""
        # lower->Upper boundary, or the last capital of a run before a lowercase
        if prev.islower() or (nxt.islower() and not prev.islower()):
            out.append(seg[start:i].lower())
            start = i
    out.append(seg[start:].lower())
    return [p for p in out if p]


def _looks_like_string(text: str) -> bool:
    head = text.lstrip("uUL8R")
    return head[:1] in ('"', "'")


def _string_contents(text: str) -> str:
    quote_at = text.find('"')
    if quote_at >= 0 and "R" in text[:quote_at] and "(" in text:
        open_p = text.find("(")
        close_p = text.rfind(")")
        return text[open_p + 1 : close_p] if close_p > open_p else ""
    first = min((text.find(q) for q in ('"', "'") if text.find(q) >= 0), default=-1)
    if first < 0:
        return ""
    last = max(text.rfind('"'), text.rfind("'"))
    return text[first + 1 : last] if last > first else ""


def _literal_subtokens(text: str, split_strings: bool) -> list[str]:
    if not _looks_like_string(text):
        return split_identifier(text)
    content = _string_contents(text)
    if not split_strings:
        return [content.lower()] if content else []
    subs: list[str] = []
    for word in _WORD_RE.findall(content):
        subs.extend(split_identifier(word))
    return subs


def expression_subtokens(tokens, split_strings: bool = True) -> list[str]:
    """Subtoken multiset (occurrence order) for an expression's tokens."""
    subs: list[str] = []
    for tok in filter_expression_tokens(tokens):
        if tok.kind == "literal":
            subs.extend(_literal_subtokens(tok.text, split_strings))
        else:
            subs.extend(split_identifier(tok.text))
    return subs


def subtoken_set(tokens, split_strings: bool = True) -> SubtokenSet:
    return from_subtokens(expression_subtokens(tokens, split_strings))


def from_subtokens(subs) -> SubtokenSet:
    counts = Counter(subs)
    return SubtokenSet(items=frozenset(counts), raw_count=sum(counts.values()), counts=dict(counts))
