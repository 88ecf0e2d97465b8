"""Bibliometric indicators for evaluating individual researchers."""

import json as _json

from ._core import (
    ParseError,
    ReferenceSet,
    ValidationError,
    build_reference_set,
    category_rank_fraction,
    generate_synthetic_refset,
    h_index,
    journal_njp,
    m_quotient,
    median,
    normalize_author,
    normalize_doc_type,
    parse_publications,
    percentile_of,
    render_beam_svg,
    run_cli,
)
from ._core import evaluate_json as _evaluate_json

__all__ = [
    "ParseError",
    "ReferenceSet",
    "ValidationError",
    "build_reference_set",
    "category_rank_fraction",
    "evaluate",
    "generate_synthetic_refset",
    "h_index",
    "journal_njp",
    "m_quotient",
    "median",
    "normalize_author",
    "normalize_doc_type",
    "parse_publications",
    "percentile_of",
    "render_beam_svg",
    "run_cli",
]


def evaluate(pubs, refsets, journals=None, **options):
    """Run the indicator pipeline and return report.json as a dict."""
    return _json.loads(_evaluate_json(str(pubs), str(refsets), None if journals is None else str(journals), **options))
