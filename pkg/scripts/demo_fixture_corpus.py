"""Run the whole pipeline over a small C++ tree and print what it finds.

Defaults to the bundled fixture corpus, so this doubles as a smoke test:

    python3 scripts/demo_fixture_corpus.py
    python3 scripts/demo_fixture_corpus.py --root ~/src/some_project --top 10
"""

import argparse
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from castlens import analysis
from castlens.cli import RunConfig, run_extraction
from castlens.corpus import component_for_path
from castlens.report import score_entries

FIXTURE_CORPUS = os.path.join(os.path.dirname(__file__), "..", "tests", "fixtures", "corpus")


def show_ranked(ranked, top):
    for kind in analysis.KIND_ORDER:
        entries = ranked.get(kind, [])
        if not entries:
            continue
        print(f"\n{kind}_cast ({len(entries)} scored)")
        for i, e in enumerate(entries[:top], start=1):
            loc = f"{e.file}:{e.line}"
            print(f"  {i}. ce={e.ce:6.3f}  {loc:<44} {e.source_text}  ->  {e.dest_text}")


def show_outliers(outliers):
    print("\noutliers (gaussian, z=0.67449)")
    for kind in analysis.KIND_ORDER:
        oset = outliers.get(kind)
        if oset is None or oset.population == 0:
            continue
        print(
            f"  {kind:<11} population={oset.population:<4d} mean={oset.mean:.4f} "
            f"sd={oset.stddev:.4f} threshold={oset.threshold:.4f} -> {len(oset.members)} flagged"
        )


def show_census(entries):
    table = analysis.aggregate(entries, component_for=component_for_path)
    print("\ncensus (assignment + call-argument casts only)")
    for row in table.rows:
        print(f"  {row.name:<14} total={row.total}")
    print(f"  grand total: {table.grand_total}")
    for kind in analysis.KIND_ORDER:
        print(f"    {kind:<11} {table.kind_share(kind):5.1f}%")
    print(
        f"    assignment  {table.context_share('assignment'):5.1f}%   "
        f"call_arg {table.context_share('call_arg'):5.1f}%"
    )


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--root", default=FIXTURE_CORPUS, help="source tree to scan")
    parser.add_argument("--top", type=int, default=5, help="ranked casts to print per kind")
    args = parser.parse_args()

    config = RunConfig(root=args.root)
    entries, meta = run_extraction(config)
    print(f"scanned {meta['files_scanned']} files, found {len(entries)} named casts")

    scored = score_entries(entries)
    kept = [e for e in scored if e.ce is not None]
    print(f"scored {len(kept)} of {len(scored)} (rest excluded: other context, unresolved, empty sets)")

    ranked = analysis.rank(scored)
    show_ranked(ranked, args.top)
    show_outliers(analysis.select_outliers(ranked))
    show_census(scored)


if __name__ == "__main__":
    main()
