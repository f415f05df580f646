"""Command line driver.

Subcommands mirror the pipeline stages (extract, score, rank, outliers,
sample, stats, kappa) plus run-all to chain them. Each stage reads the
previous stage's file, so runs can be resumed or re-parameterized
mid-pipeline. Exit codes: 0 ok, 1 fatal error, 2 bad arguments.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import analysis, corpus, report, syntax

DEFAULT_SEED = 20170401
DEFAULT_CONFIDENCE = 0.90
DEFAULT_MARGIN = 0.06
DEFAULT_P = 0.5


@dataclass
class RunConfig:
    root: str = "."
    include: tuple[str, ...] = corpus.DEFAULT_INCLUDE
    exclude: tuple[str, ...] = ()
    component_map: str | None = None
    max_file_bytes: int = corpus.DEFAULT_MAX_FILE_BYTES
    string_literals: str = "split"   # split | keep
    prob_model: str = "uniform"      # uniform | frequency
    outlier_mode: str = "gaussian"   # gaussian | empirical
    confidence: float = DEFAULT_CONFIDENCE
    margin: float = DEFAULT_MARGIN
    p: float = DEFAULT_P
    seed: int = DEFAULT_SEED
    jobs: int = 0                    # 0 = logical cpu count
    warnings: list[str] = field(default_factory=list)

    @property
    def split_strings(self) -> bool:
        return self.string_literals == "split"


class CliError(Exception):
    pass


def _component_resolver(config: RunConfig):
    mapping = corpus.load_component_map(config.component_map) if config.component_map else None
    return lambda path: corpus.component_for_path(path, mapping)


def _require(path: str, what: str) -> str:
    if not os.path.exists(path):
        raise CliError(f"missing {what}: {path}")
    return path


def run_extraction(config: RunConfig) -> tuple[list[report.CastReportEntry], dict]:
    """Two-phase extraction: index functions corpus-wide, then per-file records."""
    skipped: list[tuple[str, str]] = []
    files = corpus.discover_sources(
        config.root,
        include=config.include,
        exclude=config.exclude,
        component_map=corpus.load_component_map(config.component_map) if config.component_map else None,
        max_file_bytes=config.max_file_bytes,
        skipped=skipped,
    )
    tokens_by_file = {}
    for f in files:
        warns: list[str] = []
        tokens_by_file[f.path] = syntax.tokenize(f.content, warns)
        config.warnings.extend(f"{f.path}: {w}" for w in warns)

    index = syntax.index_functions((f.path, tokens_by_file[f.path]) for f in files)

    def extract_one(f: corpus.SourceFile):
        warns: list[str] = []
        records = syntax.extract_file(f, index, tokens=tokens_by_file[f.path], warnings=warns)
        return f.path, records, warns

    jobs = config.jobs or os.cpu_count() or 1
    if jobs > 1 and len(files) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(extract_one, files))
    else:
        results = [extract_one(f) for f in files]
    results.sort(key=lambda item: item[0])

    entries = []
    for _path, records, warns in results:
        config.warnings.extend(f"{_path}: {w}" for w in warns)
        entries.extend(report.build_entry(r, config.split_strings) for r in records)

    summary = {
        "files_scanned": len(files),
        "casts_found": len(entries),
        "macro_body_casts": sum(1 for e in entries if e.in_macro_body),
        "files_skipped": len(skipped),
        "skipped": skipped,
    }
    return entries, summary


def _print_summary(summary: dict) -> None:
    print(
        f"scanned {summary['files_scanned']} files, found {summary['casts_found']} casts "
        f"({summary['macro_body_casts']} in macro bodies), skipped {summary['files_skipped']} files"
    )


def cmd_extract(config: RunConfig, out: str, per_file: bool) -> int:
    entries, summary = run_extraction(config)
    if per_file:
        report.write_casts_json_per_file(entries, out)
    else:
        report.write_casts_json(entries, out)
    _print_summary(summary)
    for path, reason in summary["skipped"]:
        print(f"skipped {path}: {reason}", file=sys.stderr)
    return 0


def cmd_score(config: RunConfig, casts_path: str, out: str) -> int:
    entries = report.read_casts_json(_require(casts_path, "casts file"))
    scored = report.score_entries(entries, config.prob_model)
    report.write_casts_json(scored, out)
    n_scored = sum(1 for e in scored if e.scored)
    print(f"scored {n_scored} of {len(scored)} casts ({len(scored) - n_scored} excluded)")
    return 0


def cmd_rank(config: RunConfig, scored_path: str, out: str, per_kind: bool = False) -> int:
    entries = report.read_casts_json(_require(scored_path, "scored casts file"))
    ranked = analysis.rank(entries)
    if per_kind:
        report.write_ranked_csv_per_kind(ranked, out)
    else:
        report.write_ranked_csv(ranked, out)
    print(f"ranked {sum(len(v) for v in ranked.values())} casts -> {out}")
    return 0


def _outliers_doc(outliers: dict[str, analysis.OutlierSet], mode: str) -> dict:
    def r12(x):
        return float(f"{x:.12g}")

    return {
        "version": 1,
        "mode": mode,
        "z": analysis.UPPER_QUARTILE_Z,
        "kinds": {
            kind: {
                "population": oset.population,
                "count": len(oset.members),
                "mean": r12(oset.mean),
                "stddev": r12(oset.stddev),
                "threshold": r12(oset.threshold),
                "member_ids": [e.record_id for e in oset.members],
            }
            for kind, oset in outliers.items()
        },
    }


def cmd_outliers(config: RunConfig, scored_path: str, out: str, scatter_out: str | None) -> int:
    entries = report.read_casts_json(_require(scored_path, "scored casts file"))
    ranked = analysis.rank(entries)
    outliers = analysis.select_outliers(ranked, config.outlier_mode)
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(_outliers_doc(outliers, config.outlier_mode), fh, indent=2)
        fh.write("\n")
    if scatter_out:
        scored = [e for e in entries if e.scored]
        ids = {e.record_id for oset in outliers.values() for e in oset.members}
        report.write_scatter_csv(scored, ids, scatter_out)
    for kind in analysis.KIND_ORDER:
        if kind in outliers:
            oset = outliers[kind]
            print(f"{kind}: {len(oset.members)} outliers above {oset.threshold:.6g}")
    return 0


def cmd_sample(
    config: RunConfig,
    scored_path: str,
    outliers_path: str,
    out: str,
    sheet_template: str | None,
) -> int:
    entries = report.read_casts_json(_require(scored_path, "scored casts file"))
    with open(_require(outliers_path, "outliers file"), encoding="utf-8") as fh:
        doc = json.load(fh)
    if doc.get("version") != 1:
        raise CliError(f"unsupported outliers file version in {outliers_path}")
    member_ids = {rid for kind in doc.get("kinds", {}).values() for rid in kind.get("member_ids", [])}
    by_id = {e.record_id: e for e in entries}
    missing = sorted(member_ids - set(by_id))
    if missing:
        raise CliError(f"outlier ids not present in scored casts: {missing[:3]}")
    population = [by_id[rid] for rid in sorted(member_ids)]
    if not population:
        raise CliError("no outliers to sample from")
    n = analysis.sample_size(len(population), config.confidence, config.margin, config.p)
    sample = analysis.draw_sample(population, n, config.seed)
    report.write_sample_csv(sample, out)
    if sheet_template:
        report.write_rating_sheet_template(sample, sheet_template)
    print(f"sampled {n} of {len(population)} outliers (seed {config.seed})")
    return 0


def cmd_stats(config: RunConfig, casts_path: str, out: str) -> int:
    entries = report.read_casts_json(_require(casts_path, "casts file"))
    table = analysis.aggregate(entries, _component_resolver(config))
    report.write_stats_csv(table, out)
    total = table.grand_total
    print(f"{total} casts in binding contexts across {len(table.rows)} components")
    if total:
        kinds = "  ".join(f"{k} {table.kind_share(k):.2f}%" for k in analysis.KIND_ORDER)
        print(f"by kind: {kinds}")
        print(
            f"by context: assignment {table.context_share('assignment'):.2f}%  "
            f"call {table.context_share('call_arg'):.2f}%"
        )
    return 0


def cmd_kappa(sheet_paths: list[str]) -> int:
    sheets = [analysis.load_rating_sheet(_require(p, "rating sheet")) for p in sheet_paths]
    for i in range(len(sheets)):
        for j in range(i + 1, len(sheets)):
            k = analysis.cohen_kappa(sheets[i], sheets[j])
            print(f"kappa({sheets[i].rater_id}, {sheets[j].rater_id}) = {float(f'{k:.12g}')}")
    mean = analysis.mean_pairwise_kappa(sheets)
    print(f"mean pairwise kappa = {float(f'{mean:.12g}')}")
    return 0


def cmd_run_all(config: RunConfig, out_dir: str) -> int:
    os.makedirs(out_dir, exist_ok=True)
    casts = os.path.join(out_dir, "casts.json")
    scored = os.path.join(out_dir, "scored.json")
    ranked = os.path.join(out_dir, "ranked.csv")
    outliers = os.path.join(out_dir, "outliers.json")
    scatter = os.path.join(out_dir, "scatter.csv")
    sample = os.path.join(out_dir, "sample.csv")
    sheet = os.path.join(out_dir, "rating_sheet_template.csv")
    stats = os.path.join(out_dir, "stats.csv")

    cmd_extract(config, casts, per_file=False)
    cmd_score(config, casts, scored)
    cmd_rank(config, scored, ranked)
    cmd_outliers(config, scored, outliers, scatter)
    try:
        cmd_sample(config, scored, outliers, sample, sheet)
    except CliError as exc:
        print(f"sampling skipped: {exc}", file=sys.stderr)
    cmd_stats(config, casts, stats)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="castlens",
        description="find C++ named casts and rank them by destination-name discord",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_corpus_args(p):
        p.add_argument("--root", required=True, help="source tree to scan")
        p.add_argument("--include", action="append", default=None,
                       help="glob to include (repeatable; default C++ sources/headers)")
        p.add_argument("--exclude", action="append", default=None, help="glob to exclude (repeatable)")
        p.add_argument("--component-map", default=None,
                       help="file of prefix<TAB>component overrides for grouping")
        p.add_argument("--max-file-bytes", type=int, default=corpus.DEFAULT_MAX_FILE_BYTES,
                       help="skip files larger than this")
        p.add_argument("--string-literals", choices=["split", "keep"], default="split",
                       help="split string literal contents into subtokens, or keep whole")
        p.add_argument("--jobs", type=int, default=0, help="extraction workers (0 = cpu count)")

    def add_sampling_args(p):
        p.add_argument("--confidence", type=float, default=DEFAULT_CONFIDENCE)
        p.add_argument("--margin", type=float, default=DEFAULT_MARGIN)
        p.add_argument("--p", type=float, default=DEFAULT_P,
                       help="assumed population proportion for sizing")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = sub.add_parser("extract", help="scan a source tree into casts.json")
    add_corpus_args(p)
    p.add_argument("--out", required=True)
    p.add_argument("--per-file", action="store_true", help="write one JSON per source file into --out (a directory)")

    p = sub.add_parser("score", help="add entropy scores to extracted casts")
    p.add_argument("--casts", required=True)
    p.add_argument("--prob-model", choices=["uniform", "frequency"], default="uniform")
    p.add_argument("--out", required=True)

    p = sub.add_parser("rank", help="rank scored casts per kind into a CSV")
    p.add_argument("--scored", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--per-kind", action="store_true",
                   help="write one ranked_<kind>.csv per kind into --out (a directory)")

    p = sub.add_parser("outliers", help="select per-kind outliers from scored casts")
    p.add_argument("--scored", required=True)
    p.add_argument("--outlier-mode", choices=["gaussian", "empirical"], default="gaussian")
    p.add_argument("--out", required=True)
    p.add_argument("--scatter-out", default=None, help="also write (kind, source_len, ce, is_outlier) CSV")

    p = sub.add_parser("sample", help="size and draw a review sample from the outliers")
    p.add_argument("--scored", required=True)
    p.add_argument("--outliers", required=True)
    add_sampling_args(p)
    p.add_argument("--out", required=True)
    p.add_argument("--sheet-template", default=None, help="also write an empty record_id,label sheet")

    p = sub.add_parser("stats", help="aggregate casts per component into a census table")
    p.add_argument("--casts", required=True)
    p.add_argument("--component-map", default=None)
    p.add_argument("--out", required=True)

    p = sub.add_parser("kappa", help="rater agreement over record_id,label sheets")
    p.add_argument("--sheets", nargs="+", required=True)

    p = sub.add_parser("run-all", help="extract, score, rank, outliers, sample, stats")
    add_corpus_args(p)
    p.add_argument("--prob-model", choices=["uniform", "frequency"], default="uniform")
    p.add_argument("--outlier-mode", choices=["gaussian", "empirical"], default="gaussian")
    add_sampling_args(p)
    p.add_argument("--out", required=True, help="output directory")

    return parser


def _config_from_args(args) -> RunConfig:
    config = RunConfig()
    for name in ("root", "component_map", "max_file_bytes", "string_literals", "prob_model",
                 "outlier_mode", "confidence", "margin", "p", "seed", "jobs"):
        if hasattr(args, name) and getattr(args, name) is not None:
            setattr(config, name, getattr(args, name))
    if getattr(args, "include", None):
        config.include = tuple(args.include)
    if getattr(args, "exclude", None):
        config.exclude = tuple(args.exclude)
    return config


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    for name in ("confidence", "margin", "p"):
        value = getattr(args, name, None)
        if value is not None and not 0.0 < value < 1.0:
            parser.error(f"--{name} must be strictly between 0 and 1")
    if getattr(args, "max_file_bytes", 1) is not None and getattr(args, "max_file_bytes", 1) < 1:
        parser.error("--max-file-bytes must be positive")

    config = _config_from_args(args)
    try:
        if args.command == "extract":
            rc = cmd_extract(config, args.out, args.per_file)
        elif args.command == "score":
            rc = cmd_score(config, args.casts, args.out)
        elif args.command == "rank":
            rc = cmd_rank(config, args.scored, args.out, args.per_kind)
        elif args.command == "outliers":
            rc = cmd_outliers(config, args.scored, args.out, args.scatter_out)
        elif args.command == "sample":
            rc = cmd_sample(config, args.scored, args.outliers, args.out, args.sheet_template)
        elif args.command == "stats":
            rc = cmd_stats(config, args.casts, args.out)
        elif args.command == "kappa":
            rc = cmd_kappa(args.sheets)
        elif args.command == "run-all":
            rc = cmd_run_all(config, args.out)
        else:  # pragma: no cover
            parser.error(f"unknown command {args.command}")
            return 2
    except (CliError, corpus.CorpusError, report.ReportError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for w in config.warnings:
        print(f"warning: {w}", file=sys.stderr)
    return rc


if __name__ == "__main__":
    sys.exit(main())
