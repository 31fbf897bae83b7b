"""Replay any emitted artifact from its recorded data."""
from __future__ import annotations

import json
from typing import List

from . import criterion, obstruction, realization, signs
from .textio import FORMAT_VERSION, digest_ok

VERIFIERS = {
    "semigroup_certificate": criterion.verify_certificate,
    "realization_report": realization.verify_report,
    "germ_transcript": signs.verify_transcript,
    "obstruction_report": obstruction.verify_report,
}


def verify_document(doc) -> List[str]:
    if not isinstance(doc, dict):
        return ["document is not a JSON object"]
    if doc.get("format_version") != FORMAT_VERSION:
        return [f"unsupported format_version {doc.get('format_version')!r}"]
    problems = [] if digest_ok(doc) else ["digest mismatch: the document was modified"]
    fn = VERIFIERS.get(doc.get("kind"))
    if fn is None:
        return problems + [f"unknown artifact kind {doc.get('kind')!r}"]
    try:
        problems += fn(doc)
    except Exception as exc:  # malformed fields surface as verification failures
        problems.append(f"replay error: {type(exc).__name__}: {exc}")
    return problems


def verify_file(path) -> List[str]:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        return [f"unreadable artifact: {exc}"]
    return verify_document(doc)
