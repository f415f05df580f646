"""Tokenizer and named-cast extraction for C++ sources.

This is a syntax-level scanner, not a compiler frontend: it lexes a
single file, finds `kind_cast<type>(expr)` occurrences with balanced
bracket matching, classifies each occurrence as an assignment, a call
argument, or other, and binds call arguments to formal parameter names
through a (name, arity) index built over the whole corpus. There is no
preprocessing, no template instantiation, and no overload resolution
beyond name + arity.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field

# The four named casts, keyword -> kind label used everywhere downstream.
CAST_KEYWORDS = {
    "static_cast": "static",
    "dynamic_cast": "dynamic",
    "const_cast": "const",
    "reinterpret_cast": "reinterpret",
}

# Order used for per-kind reports (largest census share first).
CAST_KINDS = ("static", "reinterpret", "dynamic", "const")

KEYWORDS = frozenset("""
    alignas alignof and and_eq asm auto bitand bitor bool break case catch
    char char16_t char32_t class compl const constexpr const_cast continue
    decltype default delete do double dynamic_cast else enum explicit export
    extern false float for friend goto if inline int long mutable namespace
    new noexcept not not_eq nullptr operator or or_eq private protected
    public register reinterpret_cast return short signed sizeof static
    static_assert static_cast struct switch template this thread_local throw
    true try typedef typeid typename union unsigned using virtual void
    volatile wchar_t while xor xor_eq
""".split())

# Maximal munch: longest first.
PUNCTUATORS = [
    "<<=", ">>=", "<=>", "...", "->*",
    "::", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=", "&&", "||",
    "+=", "-=", "*=", "/=", "%=", "^=", "&=", "|=", "##", ".*",
    "#", ".", ",", ";", ":", "?", "(", ")", "[", "]", "{", "}",
    "<", ">", "=", "+", "-", "*", "/", "%", "^", "&", "|", "~", "!",
]

COMPOUND_ASSIGN = frozenset(["+=", "-=", "*=", "/=", "%=", "^=", "&=", "|=", "<<=", ">>="])
ASSIGN_OPS = frozenset(["="]) | COMPOUND_ASSIGN

_ID_START = frozenset("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
_ID_CONT = _ID_START | frozenset("0123456789")
_DIGITS = frozenset("0123456789")
_STRING_PREFIXES = ("u8", "u", "U", "L")


@dataclass(frozen=True)
class Token:
    kind: str   # identifier | keyword | literal | punctuator | other
    text: str
    line: int   # 1-based
    col: int    # 1-based
    directive: int = 0  # serial of the enclosing preprocessor directive, 0 outside

    @property
    def in_directive(self) -> bool:
        return self.directive > 0


class _Lines:
    """Offset -> (line, col) lookup over the original text."""

    def __init__(self, content: str):
        self.starts = [0]
        for i, ch in enumerate(content):
            if ch == "\n":
                self.starts.append(i + 1)

    def pos(self, offset: int) -> tuple[int, int]:
        line = bisect_right(self.starts, offset)
        return line, offset - self.starts[line - 1] + 1


def tokenize(content: str, warnings: list[str] | None = None) -> list[Token]:
    """Lex C++ source into tokens. Comments and whitespace are dropped.

    Preprocessor directive tokens carry a nonzero directive serial so the
    macro scanner can find them; `\\`-newline continues a directive.
    Unterminated strings and comments truncate the stream with a warning
    rather than failing.
    """
    toks: list[Token] = []
    lines = _Lines(content)
    n = len(content)
    i = 0
    at_line_start = True
    directive = 0        # current directive serial, 0 = none
    directive_count = 0

    def warn(msg: str, offset: int) -> None:
        if warnings is not None:
            line, col = lines.pos(offset)
            warnings.append(f"{msg} at line {line}, col {col}")

    def emit(kind: str, text: str, offset: int) -> None:
        line, col = lines.pos(offset)
        toks.append(Token(kind, text, line, col, directive))

    while i < n:
        ch = content[i]

        if ch == "\n":
            directive = 0
            at_line_start = True
            i += 1
            continue
        if ch in " \t\r\f\v":
            i += 1
            continue
        if ch == "\\" and directive and i + 1 < n and content[i + 1 : i + 2] in ("\n",):
            i += 2  # line continuation inside a directive
            continue
        if ch == "\\" and directive and content[i + 1 : i + 3] == "\r\n":
            i += 3
            continue

        # comments
        if content.startswith("//", i):
            j = content.find("\n", i)
            i = n if j < 0 else j  # leave the newline to close any directive
            at_line_start = False
            continue
        if content.startswith("/*", i):
            j = content.find("*/", i + 2)
            if j < 0:
                warn("unterminated block comment", i)
                break
            i = j + 2
            at_line_start = False
            continue

        start = i

        if ch == "#" and at_line_start and not directive:
            directive_count += 1
            directive = directive_count
            emit("punctuator", "#", i)
            i += 1
            at_line_start = False
            continue

        at_line_start = False

        # raw strings, possibly prefixed: R"delim( ... )delim"
        raw = _match_raw_string(content, i)
        if raw is not None:
            end, ok = raw
            emit("literal", content[i:end], start)
            if not ok:
                warn("unterminated raw string literal", start)
                break
            i = end
            continue

        # ordinary string/char literals, possibly prefixed
        quote = _match_quote_start(content, i)
        if quote is not None:
            qpos, qch = quote
            j = qpos + 1
            terminated = False
            while j < n:
                c = content[j]
                if c == "\\":
                    j += 2
                    continue
                if c == qch:
                    terminated = True
                    j += 1
                    break
                if c == "\n":
                    break
                j += 1
            emit("literal", content[i:j], start)
            if not terminated:
                warn("unterminated %s literal" % ("string" if qch == '"' else "character"), start)
                break
            i = j
            continue

        if ch in _ID_START:
            j = i + 1
            while j < n and content[j] in _ID_CONT:
                j += 1
            text = content[i:j]
            emit("keyword" if text in KEYWORDS else "identifier", text, start)
            i = j
            continue

        if ch in _DIGITS or (ch == "." and content[i + 1 : i + 2] and content[i + 1] in _DIGITS):
            i = _scan_number(content, i)
            emit("literal", content[start:i], start)
            continue

        matched = False
        for p in PUNCTUATORS:
            if content.startswith(p, i):
                emit("punctuator", p, start)
                i += len(p)
                matched = True
                break
        if matched:
            continue

        emit("other", ch, start)
        i += 1

    return toks


def _match_quote_start(content: str, i: int) -> tuple[int, str] | None:
    """Return (quote offset, quote char) if a (possibly prefixed) literal starts at i."""
    for pre in _STRING_PREFIXES:
        if content.startswith(pre, i) and content[i + len(pre) : i + len(pre) + 1] in ('"', "'"):
            return i + len(pre), content[i + len(pre)]
    if content[i : i + 1] in ('"', "'"):
        return i, content[i]
    return None


def _match_raw_string(content: str, i: int) -> tuple[int, bool] | None:
    """Return (end offset, terminated) if a raw string starts at i, else None."""
    j = i
    for pre in _STRING_PREFIXES:
        if content.startswith(pre + 'R"', i):
            j = i + len(pre)
            break
    if not content.startswith('R"', j):
        return None
    k = j + 2
    delim_end = k
    while delim_end < len(content) and content[delim_end] not in '(\\) \t\n"' and delim_end - k <= 16:
        delim_end += 1
    if delim_end >= len(content) or content[delim_end] != "(":
        return None
    delim = content[k:delim_end]
    closer = ")" + delim + '"'
    end = content.find(closer, delim_end + 1)
    if end < 0:
        return len(content), False
    return end + len(closer), True


def _scan_number(content: str, i: int) -> int:
    """pp-number: digits/letters/dots, ' separators, exponent signs."""
    n = len(content)
    j = i + 1
    while j < n:
        c = content[j]
        if c in _ID_CONT or c == ".":
            j += 1
        elif c == "'" and j + 1 < n and content[j + 1] in _ID_CONT:
            j += 2
        elif c in "+-" and content[j - 1] in "eEpP":
            j += 1
        else:
            break
    return j


# ---------------------------------------------------------------------------
# named-cast occurrences
# ---------------------------------------------------------------------------


@dataclass
class CastOccurrence:
    kind: str
    target_type: str
    source_tokens: list[Token]
    line: int
    col: int
    kw_index: int                 # index of the cast keyword in `stream`
    end_index: int                # index of the closing ')' in `stream`
    stream: list[Token] = field(repr=False, default_factory=list)
    in_macro_body: bool = False


@dataclass
class Assignment:
    dest_tokens: list[Token]


@dataclass
class CallArg:
    callee: str
    arg_index: int
    arity: int
    dest_tokens: list[Token] = field(default_factory=list)
    unresolved: str | None = None  # None once resolved, else "unknown"/"ambiguous"


@dataclass
class Other:
    pass


CastContext = Assignment | CallArg | Other


@dataclass(frozen=True)
class Unresolved:
    reason: str  # "unknown" | "ambiguous"


def join_tokens(tokens) -> str:
    """Render a token run as text, spacing only where two words would fuse."""
    out: list[str] = []
    for t in tokens:
        if out and out[-1][-1] in _ID_CONT and t.text[0] in _ID_CONT:
            out.append(" ")
        out.append(t.text)
    return "".join(out)


def scan_named_casts(tokens: list[Token], warnings: list[str] | None = None) -> list[CastOccurrence]:
    """Find cast_kw<type>(expr) occurrences outside preprocessor directives.

    Angle brackets balance with `>>` counting as two closers; `<`/`>` inside
    parentheses are not angle brackets. Nested casts in the expression are
    found as their own occurrences. Unbalanced candidates are discarded
    with a warning.
    """
    stream = [t for t in tokens if not t.in_directive]
    return _scan_stream(stream, warnings)


def _scan_stream(
    stream: list[Token],
    warnings: list[str] | None = None,
    in_macro_body: bool = False,
) -> list[CastOccurrence]:
    occurrences = []
    for i, tok in enumerate(stream):
        if tok.kind != "keyword" or tok.text not in CAST_KEYWORDS:
            continue
        occ = _match_cast(stream, i, warnings)
        if occ is not None:
            occ.in_macro_body = in_macro_body
            occurrences.append(occ)
    return occurrences


def _match_cast(stream: list[Token], kw: int, warnings: list[str] | None) -> CastOccurrence | None:
    def warn(msg: str) -> None:
        if warnings is not None:
            t = stream[kw]
            warnings.append(f"{msg} for {t.text} at line {t.line}, col {t.col}")

    n = len(stream)
    if kw + 1 >= n or stream[kw + 1].text != "<":
        return None  # cast keyword not followed by '<': not the cast syntax

    # target type: balance <...>, ignoring angles inside (), [] groups
    type_tokens: list[Token] = []
    depth = 1
    group = 0  # () / [] nesting inside the type
    i = kw + 2
    while i < n:
        t = stream[i]
        text = t.text
        if text in ("(", "["):
            group += 1
        elif text in (")", "]"):
            if group == 0:
                warn("unbalanced bracket in cast type")
                return None
            group -= 1
        elif group == 0:
            if text == "<":
                depth += 1
            elif text == ">":
                depth -= 1
                if depth == 0:
                    break
            elif text == ">>":
                if depth == 2:
                    # first '>' belongs to the type text
                    type_tokens.append(Token(">", ">", t.line, t.col, t.directive))
                    depth = 0
                    break
                if depth < 2:
                    warn("dangling '>>' closing cast type")
                    return None
                depth -= 2
            elif text in (";", "{", "}"):
                warn("statement end inside cast type")
                return None
        type_tokens.append(t)
        i += 1
    else:
        warn("unterminated cast type")
        return None

    # the loop breaks at the closing token without appending it (the >> case
    # pushes a synthetic '>' for the half that belongs to the type text)
    j = i + 1
    if j >= n or stream[j].text != "(":
        return None  # not the cast call shape (e.g. comparison on a cast keyword typo)

    # source expression: balance parens/brackets/braces
    depth = 1
    k = j + 1
    source: list[Token] = []
    while k < n:
        t = stream[k]
        if t.text in ("(", "[", "{"):
            depth += 1
        elif t.text in (")", "]", "}"):
            depth -= 1
            if depth == 0:
                break
        source.append(t)
        k += 1
    else:
        warn("unterminated cast expression")
        return None
    if stream[k].text != ")":
        warn("mismatched close in cast expression")
        return None
    if not source:
        warn("empty cast expression")
        return None

    kw_tok = stream[kw]
    return CastOccurrence(
        kind=CAST_KEYWORDS[kw_tok.text],
        target_type=join_tokens(type_tokens),
        source_tokens=source,
        line=kw_tok.line,
        col=kw_tok.col,
        kw_index=kw,
        end_index=k,
        stream=stream,
    )


_STMT_ENDERS = frozenset([";", "{", "}"])
_TAIL_OK = frozenset([";", ",", ")"])


def classify_context(tokens: list[Token], occ: CastOccurrence) -> CastContext:
    """Assignment / CallArg / Other for one occurrence within its token stream.

    Assignment: an (possibly compound) assignment operator sits to the left
    of the cast at the same nesting level within the statement, and the
    cast's closing paren ends its subexpression. CallArg: the cast sits at
    argument depth 1 of an `ident(...)` call. Everything else is Other.
    """
    eq = _find_assignment_op(tokens, occ.kw_index)
    if eq is not None and _ends_subexpression(tokens, occ.end_index):
        return Assignment(dest_tokens=_destination_run(tokens, eq))
    call = _enclosing_call(tokens, occ.kw_index)
    if call is not None:
        callee, arg_index, arity = call
        return CallArg(callee=callee, arg_index=arg_index, arity=arity)
    return Other()


def _find_assignment_op(tokens, kw: int) -> int | None:
    """Index of the assignment operator binding the cast, scanning left."""
    depth = 0  # balanced groups passed over while walking left
    i = kw - 1
    while i >= 0:
        text = tokens[i].text
        if text in _STMT_ENDERS:
            return None
        if text in (")", "]"):
            depth += 1
        elif text in ("(", "["):
            if depth == 0:
                return None  # the cast is nested in some enclosing group
            depth -= 1
        elif depth == 0:
            if text in ASSIGN_OPS:
                return i
            if text == ",":
                return None  # list element, not a right-hand side
        i -= 1
    return None


def _ends_subexpression(tokens, end_index: int) -> bool:
    nxt = tokens[end_index + 1] if end_index + 1 < len(tokens) else None
    return nxt is not None and nxt.text in _TAIL_OK


def _destination_run(tokens, eq: int) -> list[Token]:
    """Token run to the left of the assignment op, back to the statement start."""
    dest: list[Token] = []
    depth = 0
    i = eq - 1
    while i >= 0:
        text = tokens[i].text
        if text in _STMT_ENDERS or text == ":":
            break
        if text in (")", "]"):
            depth += 1
        elif text in ("(", "["):
            if depth == 0:
                break
            depth -= 1
        elif depth == 0 and text == ",":
            break
        dest.append(tokens[i])
        i -= 1
    dest.reverse()
    return dest


def _enclosing_call(tokens, kw: int) -> tuple[str, int, int] | None:
    """(callee, arg_index, arity) when the cast is a depth-1 argument of ident(...)."""
    depth = 0
    commas_before = 0
    i = kw - 1
    while i >= 0:
        text = tokens[i].text
        if text in _STMT_ENDERS:
            return None
        if text in (")", "]"):
            depth += 1
        elif text == "[":
            if depth == 0:
                return None  # subscript, not a call
            depth -= 1
        elif text == "(":
            if depth == 0:
                if i == 0 or tokens[i - 1].kind != "identifier":
                    return None
                callee = tokens[i - 1].text
                return callee, commas_before, _call_arity(tokens, i)
            depth -= 1
        elif depth == 0 and text == ",":
            commas_before += 1
        i -= 1
    return None


def _call_arity(tokens, open_paren: int) -> int:
    depth = 1
    commas = 0
    saw_tokens = False
    i = open_paren + 1
    while i < len(tokens):
        text = tokens[i].text
        if text in ("(", "[", "{"):
            depth += 1
        elif text in (")", "]", "}"):
            depth -= 1
            if depth == 0:
                break
        elif text == "," and depth == 1:
            commas += 1
        saw_tokens = True
        i += 1
    if not saw_tokens:
        return 0
    return commas + 1


# ---------------------------------------------------------------------------
# function index
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FunctionSig:
    name: str
    arity: int
    param_names: tuple[str, ...]
    file: str
    line: int


FunctionIndex = dict[tuple[str, int], list[FunctionSig]]

# keywords that can legitimately end a return type / specifier run
_TYPE_KEYWORDS = frozenset("""
    auto bool char char16_t char32_t const constexpr double explicit extern
    float friend inline int long mutable register short signed static
    struct class enum typename union unsigned virtual void volatile wchar_t
""".split())

_TYPE_TAIL_PUNCT = frozenset(["*", "&", "&&", ">", "::", "]"])

# tokens allowed between ')' and the '{' or ';' of a definition/declaration
_POST_PARAM_SKIP = frozenset(["const", "volatile", "noexcept", "override", "final", "&", "&&", "mutable"])


def index_functions(files) -> FunctionIndex:
    """Build a (name, arity) -> signatures index over tokenized files.

    `files` yields (path, tokens) pairs. Only definition/declaration-shaped
    candidates are kept: `ident(params)` followed (after qualifiers) by `{`
    or `;`, where the token before the qualified name reads like the tail
    of a type. That keeps call statements out of the index, at the cost of
    constructors.
    """
    index: FunctionIndex = {}
    for path, tokens in files:
        stream = [t for t in tokens if not t.in_directive]
        for i, tok in enumerate(stream):
            if tok.kind != "identifier":
                continue
            if i + 1 >= len(stream) or stream[i + 1].text != "(":
                continue
            if not _typeish_before_name(stream, i):
                continue
            close = _matching_paren(stream, i + 1)
            if close is None or not _decl_follows(stream, close):
                continue
            params = _param_names(stream, i + 1, close)
            if params is None:
                continue
            sig = FunctionSig(tok.text, len(params), tuple(params), path, tok.line)
            index.setdefault((sig.name, sig.arity), []).append(sig)
    return index


def _typeish_before_name(stream, name_idx: int) -> bool:
    """Walk left over the qualified-name chain; the token before it must be type-ish."""
    i = name_idx - 1
    while i >= 0 and stream[i].text == "::":
        i -= 1
        if i >= 0 and stream[i].text == ">":
            # skip a template-id: Foo<...>::name
            depth = 1
            i -= 1
            while i >= 0 and depth > 0:
                if stream[i].text == ">":
                    depth += 1
                elif stream[i].text == "<":
                    depth -= 1
                i -= 1
        elif i >= 0 and stream[i].kind == "identifier":
            i -= 1
        else:
            return False  # leading :: (global qualifier) implies a call site
    if i < 0:
        return False
    prev = stream[i]
    if prev.kind == "identifier":
        return True
    if prev.kind == "keyword":
        return prev.text in _TYPE_KEYWORDS
    return prev.text in _TYPE_TAIL_PUNCT


def _matching_paren(stream, open_idx: int) -> int | None:
    depth = 1
    i = open_idx + 1
    while i < len(stream):
        text = stream[i].text
        if text == "(":
            depth += 1
        elif text == ")":
            depth -= 1
            if depth == 0:
                return i
        i += 1
    return None


def _decl_follows(stream, close_idx: int) -> bool:
    """After the parameter list: qualifiers, then '{' or ';' (or '= 0/default/delete ;')."""
    i = close_idx + 1
    n = len(stream)
    while i < n:
        t = stream[i]
        if t.text in ("{", ";"):
            return True
        if t.text in _POST_PARAM_SKIP or (t.kind == "identifier" and t.text in ("override", "final")):
            i += 1
            continue
        if t.text == "->":  # trailing return type: skip to '{' or ';'
            i += 1
            while i < n and stream[i].text not in ("{", ";"):
                i += 1
            return i < n
        if t.text == "=" and i + 2 < n and stream[i + 1].text in ("0", "default", "delete"):
            return stream[i + 2].text == ";"
        if t.text == "(":
            end = _matching_paren(stream, i)  # noexcept(...)/throw(...) argument
            if end is None:
                return False
            i = end + 1
            continue
        if t.text == "throw":
            i += 1
            continue
        return False
    return False


def _param_names(stream, open_idx: int, close_idx: int) -> list[str] | None:
    """Last identifier of each depth-1 comma slice, skipping default values."""
    inner = stream[open_idx + 1 : close_idx]
    if not inner:
        return []
    if len(inner) == 1 and inner[0].text == "void":
        return []
    slices: list[list[Token]] = [[]]
    depth = 0
    angle = 0
    for t in inner:
        text = t.text
        if text in ("(", "[", "{"):
            depth += 1
        elif text in (")", "]", "}"):
            depth -= 1
        elif depth == 0:
            if text == "<":
                angle += 1
            elif text == ">":
                angle = max(0, angle - 1)
            elif text == ">>":
                angle = max(0, angle - 2)
            elif text == "," and angle == 0:
                slices.append([])
                continue
        slices[-1].append(t)
    names = []
    for sl in slices:
        name = ""
        depth = 0
        angle = 0
        for t in sl:
            text = t.text
            if text in ("(", "[", "{"):
                depth += 1
            elif text in (")", "]", "}"):
                depth -= 1
            elif depth == 0:
                if text == "<":
                    angle += 1
                elif text == ">":
                    angle = max(0, angle - 1)
                elif text == ">>":
                    angle = max(0, angle - 2)
                elif text == "=":
                    break  # default value follows
                elif t.kind == "identifier" and angle == 0:
                    name = text
        names.append(name)
    return names


def resolve_formal(callee: str, arity: int, arg_index: int, index: FunctionIndex) -> str | Unresolved:
    """Formal parameter name for an actual argument, by (name, arity) lookup.

    Unknown callee/arity -> Unresolved("unknown"); candidates that disagree
    at the slot -> Unresolved("ambiguous"). Unresolved is a value, not an
    error.
    """
    if arg_index < 0 or arg_index >= arity:
        raise ValueError(f"arg_index {arg_index} out of range for arity {arity}")
    sigs = index.get((callee, arity))
    if not sigs:
        return Unresolved("unknown")
    names = {sig.param_names[arg_index] for sig in sigs}
    if len(names) == 1:
        return next(iter(names))
    return Unresolved("ambiguous")


# ---------------------------------------------------------------------------
# macro bodies
# ---------------------------------------------------------------------------


def scan_macro_bodies(tokens: list[Token], warnings: list[str] | None = None) -> list[CastOccurrence]:
    """Scan #define replacement lists for casts (no expansion is attempted).

    Function-like macros are recognized by a '(' immediately adjacent to
    the macro name; their parameter list is not part of the body.
    """
    occurrences = []
    by_directive: dict[int, list[Token]] = {}
    for t in tokens:
        if t.directive:
            by_directive.setdefault(t.directive, []).append(t)
    for serial in sorted(by_directive):
        run = by_directive[serial]
        if len(run) < 3 or run[0].text != "#" or run[1].text != "define":
            continue
        name = run[2]
        body_start = 3
        if (
            len(run) > 3
            and run[3].text == "("
            and run[3].line == name.line
            and run[3].col == name.col + len(name.text)
        ):
            close = _matching_paren(run, 3)
            if close is None:
                continue
            body_start = close + 1
        body = run[body_start:]
        occurrences.extend(_scan_stream(body, warnings, in_macro_body=True))
    return occurrences


# ---------------------------------------------------------------------------
# whole-file extraction
# ---------------------------------------------------------------------------


@dataclass
class NamedCastRecord:
    file: str
    line: int
    col: int
    kind: str
    target_type: str
    source_tokens: list[Token]
    context: CastContext
    in_macro_body: bool


def extract_file(
    source,
    index: FunctionIndex,
    tokens: list[Token] | None = None,
    warnings: list[str] | None = None,
) -> list[NamedCastRecord]:
    """All named-cast records for one SourceFile, in (line, col) order.

    Composes tokenize -> scan_named_casts + scan_macro_bodies ->
    classify_context -> resolve_formal. Call arguments that resolve get a
    synthetic destination token named after the formal; failures stay
    Unresolved on the context and are left for scoring to exclude.
    """
    if tokens is None:
        tokens = tokenize(source.content, warnings)
    occurrences = scan_named_casts(tokens, warnings) + scan_macro_bodies(tokens, warnings)
    occurrences.sort(key=lambda o: (o.line, o.col))

    records = []
    for occ in occurrences:
        context = classify_context(occ.stream, occ)
        if isinstance(context, CallArg):
            formal = resolve_formal(context.callee, context.arity, context.arg_index, index)
            if isinstance(formal, Unresolved):
                context.unresolved = formal.reason
            elif formal:
                sig_line = occ.line
                context.dest_tokens = [Token("identifier", formal, sig_line, 1)]
        records.append(
            NamedCastRecord(
                file=source.path,
                line=occ.line,
                col=occ.col,
                kind=occ.kind,
                target_type=occ.target_type,
                source_tokens=occ.source_tokens,
                context=context,
                in_macro_body=occ.in_macro_body,
            )
        )
    return records
