"""File formats: '+/-' text sets, structured JSON set documents, CSV tables.

Every file may start with ``#`` comment lines (used for the
``generated_by`` header); readers skip them. Data bodies never contain
timestamps, so identical inputs give byte-identical files.
"""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from . import __version__
from .analysis import CorrelationProfile
from .core import (
    BinarySequence,
    CCCDescriptor,
    ComplementarySet,
    GenericSet,
    SequenceSet,
)
from .errors import FormatError
from .extend import ExtendedSet, NestingPlan, cdos_envelope

__all__ = [
    "FORMAT_VERSION",
    "header_line",
    "dumps_text",
    "loads_text",
    "dumps_json",
    "loads_json",
    "write_set",
    "read_set",
    "profile_csv",
    "metric_csv",
    "fraction_decimal",
]

FORMAT_VERSION = 1


def header_line() -> str:
    return f"# generated_by barkernest {__version__}\n"


def _strip_comments(text: str) -> list[str]:
    return [ln for ln in text.splitlines() if not ln.startswith("#")]


def dumps_text(s: SequenceSet) -> str:
    return header_line() + "".join(seq.to_string() + "\n" for seq in s.sequences)


def loads_text(text: str) -> GenericSet:
    """Parse one-sequence-per-line text. Carries chips only, no metadata."""
    lines = _strip_comments(text)
    if not lines:
        raise FormatError("no sequences in text input")
    seqs = []
    for n, ln in enumerate(lines, 1):
        if ln == "":
            raise FormatError(f"empty line {n}")
        if set(ln) - {"+", "-"}:
            raise FormatError(f"line {n}: only '+' and '-' allowed, got {ln!r}")
        seqs.append(BinarySequence.from_string(ln))
    try:
        return GenericSet(tuple(seqs))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def _base_fields(base: SequenceSet) -> dict:
    if isinstance(base, ComplementarySet):
        return {
            "m": base.m,
            "n_stages": base.n_stages,
            "set_index": base.set_index,
            "descriptor": base.descriptor.to_dict() if base.descriptor else None,
        }
    return {"m": None, "n_stages": None, "set_index": None, "descriptor": None}


def to_document(s: SequenceSet) -> dict:
    doc = {"format_version": FORMAT_VERSION}
    if isinstance(s, ExtendedSet):
        doc["kind"] = "extended"
        doc.update(_base_fields(s.base))
        doc["base_length"] = s.base.length
        doc["extension"] = {
            "scheme": s.kind,
            "envelope": s.envelope.to_string(),
            "depth": s.depth,
            "plan": s.plan.to_dict() if s.plan else None,
        }
    elif isinstance(s, ComplementarySet):
        doc["kind"] = "complementary"
        doc.update(_base_fields(s))
    else:
        doc["kind"] = "generic"
        doc.update(_base_fields(s))
    doc["length"] = s.length
    doc["sequences"] = [seq.to_string() for seq in s.sequences]
    return doc


def dumps_json(s: SequenceSet) -> str:
    return header_line() + json.dumps(to_document(s), indent=2, sort_keys=True) + "\n"


def _make_base(doc: dict, seqs) -> SequenceSet:
    if doc.get("m") is None:
        return GenericSet(tuple(seqs))
    desc = doc.get("descriptor")
    return ComplementarySet(
        sequences=tuple(seqs),
        m=int(doc["m"]),
        n_stages=int(doc["n_stages"]),
        set_index=int(doc["set_index"]),
        descriptor=CCCDescriptor.from_dict(desc) if desc else None,
    )


def from_document(doc: dict) -> SequenceSet:
    if doc.get("format_version") != FORMAT_VERSION:
        raise FormatError(f"unsupported format_version {doc.get('format_version')!r}")
    seqs = []
    for raw in doc["sequences"]:
        if not isinstance(raw, str) or not raw or set(raw) - {"+", "-"}:
            raise FormatError(f"bad chip string {raw!r}")
        seqs.append(BinarySequence.from_string(raw))
    kind = doc.get("kind")
    if kind == "extended":
        ext = doc["extension"]
        env = BinarySequence.from_string(ext["envelope"])
        L = int(doc["base_length"])
        # base chips are the first block divided by the first envelope sign
        sign = int(env[0])
        base = _make_base(doc, [BinarySequence(s.elements[:L] * sign) for s in seqs])
        plan = None
        if ext.get("plan") is not None:
            plan = NestingPlan.from_factors([tuple(f) for f in ext["plan"]["factors"]])
            if plan.envelope != env:
                raise FormatError("plan factors do not reproduce the stored envelope")
        depth = ext.get("depth")
        if depth is not None and cdos_envelope(int(depth)) != env:
            raise FormatError("CDOS depth does not match the stored envelope")
        result = ExtendedSet(
            sequences=tuple(seqs),
            base=base,
            envelope=env,
            plan=plan,
            depth=None if depth is None else int(depth),
        )
    elif kind in ("complementary", "generic"):
        result = _make_base(doc, seqs)
    else:
        raise FormatError(f"unknown set kind {kind!r}")
    if result.length != int(doc["length"]):
        raise FormatError(f"declared length {doc['length']} != actual {result.length}")
    return result


def loads_json(text: str) -> SequenceSet:
    body = "\n".join(_strip_comments(text))
    try:
        doc = json.loads(body)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    try:
        return from_document(doc)
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed set document: {exc}") from exc


def write_set(s: SequenceSet, path, fmt: str = "json") -> Path:
    path = Path(path)
    text = dumps_json(s) if fmt == "json" else dumps_text(s)
    path.write_text(text, encoding="utf-8")
    return path


def read_set(path) -> SequenceSet:
    """Read either format; JSON is recognised by its first non-comment character."""
    text = Path(path).read_text(encoding="utf-8")
    body = "".join(_strip_comments(text)).lstrip()
    if body.startswith("{"):
        return loads_json(text)
    return loads_text(text)


def fraction_decimal(x: Fraction) -> str:
    return format(float(x), ".10g")


def profile_csv(profile: CorrelationProfile, comments: Iterable[str] = ()) -> str:
    buf = io.StringIO()
    buf.write(header_line())
    for c in comments:
        buf.write(f"# {c}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["lag", "value"])
    w.writerows(profile.items())
    return buf.getvalue()


def metric_csv(rows: Iterable[tuple[int, str, Fraction]], comments: Iterable[str] = ()) -> str:
    buf = io.StringIO()
    buf.write(header_line())
    for c in comments:
        buf.write(f"# {c}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["multiplier", "metric", "value_fraction", "value_decimal"])
    for mult, name, value in rows:
        w.writerow([mult, name, str(value), fraction_decimal(value)])
    return buf.getvalue()
