"""Treebank engineering toolkit for CoNLL-U re-annotation workflows."""

from .conllu import (
    FeatureBag,
    MiscBag,
    MultiwordSpan,
    ParseError,
    Sentence,
    Token,
    Treebank,
    insert_split,
    parse_document,
    parse_feats,
    serialize_document,
)
from .metrics import (
    agreement_report,
    attachment_scores,
    cohen_kappa,
    diff_treebanks,
    treebank_stats,
)
from .morphology import harmony_surface
from .rules import (
    ChangeRecord,
    ChangeSet,
    KiClass,
    Lexicons,
    apply_changeset,
    classify_copula,
    classify_ki,
    run_rules,
    split_ki,
    suggest_df,
    suggest_emph,
    suggest_nullcop,
    suggest_tmod,
)
from .validation import Diagnostic, InventoryConfig, diagnostic_catalog, validate

__version__ = "0.1.0"

__all__ = [
    "ChangeRecord",
    "ChangeSet",
    "Diagnostic",
    "FeatureBag",
    "InventoryConfig",
    "KiClass",
    "Lexicons",
    "MiscBag",
    "MultiwordSpan",
    "ParseError",
    "Sentence",
    "Token",
    "Treebank",
    "agreement_report",
    "apply_changeset",
    "attachment_scores",
    "classify_copula",
    "classify_ki",
    "cohen_kappa",
    "diagnostic_catalog",
    "diff_treebanks",
    "harmony_surface",
    "insert_split",
    "parse_document",
    "parse_feats",
    "run_rules",
    "serialize_document",
    "split_ki",
    "suggest_df",
    "suggest_emph",
    "suggest_nullcop",
    "suggest_tmod",
    "treebank_stats",
    "validate",
]
