"""Flat report entries and their JSON/CSV serializations.

A CastReportEntry is the pipeline's working record once extraction is
done: everything downstream (scoring, ranking, outliers, sampling,
stats) operates on entries so that each stage can round-trip through
files. Serialization is canonical: fixed key order, floats at 12
significant digits, so write(read(write(x))) is byte-identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

from . import entropy as entropy_mod
from . import subtokens
from .subtokens import from_subtokens
from .syntax import Assignment, CallArg, NamedCastRecord, join_tokens

FORMAT_VERSION = 1

RANKED_CSV_HEADER = "rank,kind,ce,source_len,file,line,col,source_text,dest_text"


class ReportError(Exception):
    """Raised for malformed or wrong-version report files."""


@dataclass
class CastReportEntry:
    file: str
    line: int
    col: int
    cast_kind: str
    context: str  # assignment | call_arg | other
    callee: str | None
    arg_index: int | None
    target_type: str
    source_text: str
    source_subtokens: list[str]
    dest_text: str | None
    dest_subtokens: list[str]
    in_macro_body: bool
    h_source: float | None = None
    h_joint: float | None = None
    ce: float | None = None
    source_len: int | None = None
    excluded_reason: str | None = None

    @property
    def record_id(self) -> str:
        return f"{self.file}:{self.line}:{self.col}:{self.cast_kind}"

    @property
    def scored(self) -> bool:
        return self.ce is not None


def build_entry(rec: NamedCastRecord, split_strings: bool = True) -> CastReportEntry:
    """Flatten one extraction record; entropy fields stay null until scoring."""
    ctx = rec.context
    callee = None
    arg_index = None
    dest_text = None
    dest_subs: list[str] = []
    if isinstance(ctx, Assignment):
        context = "assignment"
        dest_text = join_tokens(ctx.dest_tokens)
        dest_subs = subtokens.expression_subtokens(ctx.dest_tokens, split_strings)
    elif isinstance(ctx, CallArg):
        context = "call_arg"
        callee = ctx.callee
        arg_index = ctx.arg_index
        if ctx.unresolved is None:
            dest_text = join_tokens(ctx.dest_tokens)
            dest_subs = subtokens.expression_subtokens(ctx.dest_tokens, split_strings)
    else:
        context = "other"
    return CastReportEntry(
        file=rec.file,
        line=rec.line,
        col=rec.col,
        cast_kind=rec.kind,
        context=context,
        callee=callee,
        arg_index=arg_index,
        target_type=rec.target_type,
        source_text=join_tokens(rec.source_tokens),
        source_subtokens=subtokens.expression_subtokens(rec.source_tokens, split_strings),
        dest_text=dest_text,
        dest_subtokens=dest_subs,
        in_macro_body=rec.in_macro_body,
    )


def score_entry(entry: CastReportEntry, model: str = "uniform") -> CastReportEntry:
    """Entry with entropy fields filled in, or an exclusion reason set."""
    if entry.context == "other":
        return replace(entry, excluded_reason="other_context")
    if entry.context == "call_arg" and entry.dest_text is None:
        return replace(entry, excluded_reason="unresolved_destination")
    result = entropy_mod.score_sets(
        from_subtokens(entry.source_subtokens),
        from_subtokens(entry.dest_subtokens),
        model,
    )
    if isinstance(result, entropy_mod.Excluded):
        return replace(entry, excluded_reason=result.reason)
    return replace(
        entry,
        h_source=result.h_source,
        h_joint=result.h_joint,
        ce=result.ce,
        source_len=result.source_len,
        excluded_reason=None,
    )


def score_entries(entries, model: str = "uniform") -> list[CastReportEntry]:
    return [score_entry(e, model) for e in entries]


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

_REQUIRED = (
    "file", "line", "col", "cast_kind", "context", "target_type",
    "source_text", "source_subtokens", "in_macro_body",
)


def _round12(x: float | None) -> float | None:
    if x is None:
        return None
    return float(f"{x:.12g}")


def _entry_dict(e: CastReportEntry) -> dict:
    return {
        "file": e.file,
        "line": e.line,
        "col": e.col,
        "cast_kind": e.cast_kind,
        "context": e.context,
        "callee": e.callee,
        "arg_index": e.arg_index,
        "target_type": e.target_type,
        "source_text": e.source_text,
        "source_subtokens": list(e.source_subtokens),
        "dest_text": e.dest_text,
        "dest_subtokens": list(e.dest_subtokens),
        "in_macro_body": e.in_macro_body,
        "h_source": _round12(e.h_source),
        "h_joint": _round12(e.h_joint),
        "ce": _round12(e.ce),
        "source_len": e.source_len,
        "excluded_reason": e.excluded_reason,
    }


def _entry_from_dict(d: dict, where: str) -> CastReportEntry:
    for key in _REQUIRED:
        if key not in d:
            raise ReportError(f"{where}: entry missing required field {key!r}")
    return CastReportEntry(
        file=d["file"],
        line=d["line"],
        col=d["col"],
        cast_kind=d["cast_kind"],
        context=d["context"],
        callee=d.get("callee"),
        arg_index=d.get("arg_index"),
        target_type=d["target_type"],
        source_text=d["source_text"],
        source_subtokens=list(d["source_subtokens"]),
        dest_text=d.get("dest_text"),
        dest_subtokens=list(d.get("dest_subtokens") or []),
        in_macro_body=d["in_macro_body"],
        h_source=d.get("h_source"),
        h_joint=d.get("h_joint"),
        ce=d.get("ce"),
        source_len=d.get("source_len"),
        excluded_reason=d.get("excluded_reason"),
    )  # unknown fields are ignored on purpose


def write_casts_json(entries, path: str) -> None:
    doc = {"version": FORMAT_VERSION, "casts": [_entry_dict(e) for e in entries]}
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def read_casts_json(path: str) -> list[CastReportEntry]:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ReportError(f"{path}: malformed JSON at line {exc.lineno}, col {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict) or doc.get("version") != FORMAT_VERSION:
        raise ReportError(f"{path}: unsupported casts file version {doc.get('version') if isinstance(doc, dict) else doc!r}")
    casts = doc.get("casts")
    if not isinstance(casts, list):
        raise ReportError(f"{path}: missing 'casts' list")
    return [_entry_from_dict(d, f"{path} casts[{i}]") for i, d in enumerate(casts)]


def write_casts_json_per_file(entries, out_dir: str) -> list[str]:
    """One JSON per source file (path separators become '__'). Returns the paths."""
    import os

    os.makedirs(out_dir, exist_ok=True)
    by_file: dict[str, list[CastReportEntry]] = {}
    for e in entries:
        by_file.setdefault(e.file, []).append(e)
    written = []
    for src in sorted(by_file):
        name = src.replace("/", "__") + ".json"
        path = os.path.join(out_dir, name)
        write_casts_json(by_file[src], path)
        written.append(path)
    return written


# ---------------------------------------------------------------------------
# CSV
# ---------------------------------------------------------------------------


def _csv_quote(value: str) -> str:
    if any(c in value for c in ',"\n'):
        return '"' + value.replace('"', '""') + '"'
    return value


def _fmt_float(x: float) -> str:
    return f"{_round12(x)!r}"


def write_ranked_csv(ranked, path: str) -> None:
    """Ranked casts, most discordant first within each kind.

    `ranked` maps kind -> list of entries already sorted; rank is 1-based
    within the kind.
    """
    lines = [RANKED_CSV_HEADER]
    for kind in ranked:
        for pos, e in enumerate(ranked[kind], start=1):
            lines.append(",".join([
                str(pos),
                kind,
                _fmt_float(e.ce),
                str(e.source_len),
                _csv_quote(e.file),
                str(e.line),
                str(e.col),
                _csv_quote(e.source_text),
                _csv_quote(e.dest_text if e.dest_text is not None else ""),
            ]))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_ranked_csv_per_kind(ranked, out_dir: str) -> list[str]:
    """One ranked CSV per cast kind (ranked_<kind>.csv). Returns the paths."""
    import os

    os.makedirs(out_dir, exist_ok=True)
    written = []
    for kind in ranked:
        path = os.path.join(out_dir, f"ranked_{kind}.csv")
        write_ranked_csv({kind: ranked[kind]}, path)
        written.append(path)
    return written


def write_scatter_csv(scored_entries, outlier_ids, path: str) -> None:
    """(kind, source_len, ce, is_outlier) per scored entry, for plotting."""
    lines = ["kind,source_len,ce,is_outlier"]
    for e in scored_entries:
        lines.append(",".join([
            e.cast_kind,
            str(e.source_len),
            _fmt_float(e.ce),
            "1" if e.record_id in outlier_ids else "0",
        ]))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_stats_csv(table, path: str) -> None:
    """Component rows (assignment and call counts per kind) plus a Total row."""
    from .analysis import KIND_ORDER  # column order shared with the table

    header = ["name"]
    header += [f"assign_{k}" for k in KIND_ORDER]
    header += [f"call_{k}" for k in KIND_ORDER]
    header.append("total")
    lines = [",".join(header)]

    def row_line(name, assign, call, total):
        cells = [_csv_quote(name)]
        cells += [str(assign.get(k, 0)) for k in KIND_ORDER]
        cells += [str(call.get(k, 0)) for k in KIND_ORDER]
        cells.append(str(total))
        return ",".join(cells)

    for row in table.rows:
        lines.append(row_line(row.name, row.assign, row.call, row.total))
    lines.append(row_line("Total", table.assign_totals, table.call_totals, table.grand_total))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_sample_csv(entries, path: str) -> None:
    """The drawn review sample with enough context to rate each cast."""
    lines = ["record_id,kind,ce,source_len,file,line,col,source_text,dest_text"]
    for e in entries:
        lines.append(",".join([
            _csv_quote(e.record_id),
            e.cast_kind,
            _fmt_float(e.ce),
            str(e.source_len),
            _csv_quote(e.file),
            str(e.line),
            str(e.col),
            _csv_quote(e.source_text),
            _csv_quote(e.dest_text if e.dest_text is not None else ""),
        ]))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_rating_sheet_template(entries, path: str) -> None:
    """record_id,label sheet for raters to fill with TP/FP."""
    lines = ["record_id,label"]
    for e in entries:
        lines.append(f"{_csv_quote(e.record_id)},")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
