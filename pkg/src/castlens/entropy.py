"""Entropy of subtoken sets and the per-cast discord score.

Under the default uniform model each distinct subtoken of a set is
equally likely, so H(S) = log2(|S|) and the joint entropy of source and
destination is log2(|S u D|). The conditional entropy

    ce = H(S, D) - H(S) = log2(|S u D| / |S|)

is 0 exactly when the destination introduces nothing new (D subset of S)
and grows with every subtoken the destination name adds.

A frequency-weighted model is available for sensitivity analysis: it
uses multiset counts instead of distinct items. Its pooled "joint" is
not a true joint distribution, so ce can dip below zero there; ce >= 0
is an invariant of the uniform model only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import subtokens
from .subtokens import SubtokenSet
from .syntax import Assignment, CallArg, NamedCastRecord, Other

MODELS = ("uniform", "frequency")


@dataclass(frozen=True)
class EntropyScore:
    h_source: float
    h_joint: float
    ce: float
    source_len: int  # distinct source subtokens


@dataclass(frozen=True)
class Excluded:
    reason: str  # other_context | unresolved_destination | empty_source | empty_destination


def _check_model(model: str) -> None:
    if model not in MODELS:
        raise ValueError(f"unknown probability model: {model!r}")


def _counts_entropy(counts: dict[str, int]) -> float:
    total = sum(counts.values())
    h = 0.0
    for c in counts.values():
        p = c / total
        h -= p * math.log2(p)
    return h


def entropy(s: SubtokenSet, model: str = "uniform") -> float:
    """Entropy of one subtoken set, in bits. Empty sets are an error."""
    _check_model(model)
    if not s.items:
        raise ValueError("entropy of an empty subtoken set")
    if model == "uniform":
        return math.log2(len(s.items))
    return _counts_entropy(s.counts)


def joint_entropy(src: SubtokenSet, dst: SubtokenSet, model: str = "uniform") -> float:
    _check_model(model)
    if not src.items or not dst.items:
        raise ValueError("joint entropy of an empty subtoken set")
    if model == "uniform":
        return math.log2(len(src.items | dst.items))
    pooled = dict(src.counts)
    for k, v in dst.counts.items():
        pooled[k] = pooled.get(k, 0) + v
    return _counts_entropy(pooled)


def conditional_entropy(src: SubtokenSet, dst: SubtokenSet, model: str = "uniform") -> float:
    """H(S, D) - H(S): bits the destination adds over the source."""
    return joint_entropy(src, dst, model) - entropy(src, model)


def score_sets(src: SubtokenSet, dst: SubtokenSet, model: str = "uniform") -> EntropyScore | Excluded:
    if not src.items:
        return Excluded("empty_source")
    if not dst.items:
        return Excluded("empty_destination")
    h_source = entropy(src, model)
    h_joint = joint_entropy(src, dst, model)
    return EntropyScore(
        h_source=h_source,
        h_joint=h_joint,
        ce=h_joint - h_source,
        source_len=len(src.items),
    )


def score_record(
    rec: NamedCastRecord,
    model: str = "uniform",
    split_strings: bool = True,
) -> EntropyScore | Excluded:
    """Discord score for one cast record, or the reason it is excluded."""
    _check_model(model)
    ctx = rec.context
    if isinstance(ctx, Other):
        return Excluded("other_context")
    if isinstance(ctx, CallArg) and ctx.unresolved is not None:
        return Excluded("unresolved_destination")
    if not isinstance(ctx, (Assignment, CallArg)):
        return Excluded("other_context")
    src = subtokens.subtoken_set(rec.source_tokens, split_strings)
    dst = subtokens.subtoken_set(ctx.dest_tokens, split_strings)
    return score_sets(src, dst, model)
