"""castlens: find C++ named casts and rank them by name discord.

The pipeline: discover sources, extract `*_cast<T>(expr)` occurrences
with their assignment/call-argument context, split source and
destination names into subtokens, score each cast by the conditional
entropy of destination given source, then rank, pick outliers, and size
a review sample.
"""

from .analysis import (
    OutlierSet,
    RatingSheet,
    StatsTable,
    aggregate,
    cohen_kappa,
    draw_sample,
    fit_gaussian,
    mean_pairwise_kappa,
    rank,
    sample_size,
    select_outliers,
)
from .corpus import SourceFile, discover_sources
from .entropy import EntropyScore, Excluded, conditional_entropy, entropy, joint_entropy, score_record
from .report import CastReportEntry, build_entry, read_casts_json, score_entries, write_casts_json
from .subtokens import SubtokenSet, split_identifier, subtoken_set
from .syntax import (
    NamedCastRecord,
    Token,
    classify_context,
    extract_file,
    index_functions,
    resolve_formal,
    scan_macro_bodies,
    scan_named_casts,
    tokenize,
)

__version__ = "0.1.0"
