"""Algebra documents: a single self-describing JSON text format, plus Hasse
diagram export.

Field names are fixed: signature{involution, bottom}, size, e,
tables{meet, join, fusion, residual?}, neg?, bottom?, name?.  Saving is
normalized (sorted keys, two-space indent, trailing newline) so that
load/save round-trips are byte-identical on normalized documents.
"""

from __future__ import annotations

import json

from .core import AxiomReport, AxiomVerdict, FiniteAlgebra, residual_from_fusion, validate
from .errors import MalformedTable, NotResiduated, ParseError, ValidationError


def save(algebra: FiniteAlgebra) -> str:
    doc: dict = {
        "signature": {
            "involution": algebra.signature.has_involution,
            "bottom": algebra.signature.has_bottom,
        },
        "size": algebra.size,
        "e": algebra.e,
        "tables": {
            "meet": [list(r) for r in algebra.meet],
            "join": [list(r) for r in algebra.join],
            "fusion": [list(r) for r in algebra.fusion],
            "residual": [list(r) for r in algebra.residual],
        },
    }
    if algebra.neg is not None:
        doc["neg"] = list(algebra.neg)
    if algebra.bottom is not None:
        doc["bottom"] = algebra.bottom
    if algebra.name is not None:
        doc["name"] = algebra.name
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def load(text: str) -> FiniteAlgebra:
    """Parse, derive a missing residual table, and validate.

    Raises ParseError for structural problems and ValidationError (carrying
    the axiom report) when the described algebra breaks an axiom.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    try:
        size = int(doc["size"])
        e = int(doc["e"])
        tables = doc["tables"]
        meet = tables["meet"]
        join = tables["join"]
        fusion = tables["fusion"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"missing or malformed field: {exc}") from exc
    residual = tables.get("residual")
    neg = doc.get("neg")
    bottom = doc.get("bottom")
    sig = doc.get("signature", {})
    if sig and (sig.get("involution", False) != (neg is not None)
                or sig.get("bottom", False) != (bottom is not None)):
        raise ParseError("signature flags disagree with the present fields")
    if residual is None:
        try:
            meet_t = tuple(tuple(int(x) for x in row) for row in meet)
            fusion_t = tuple(tuple(int(x) for x in row) for row in fusion)
            residual = residual_from_fusion(size, meet_t, fusion_t)
        except (MalformedTable, IndexError, TypeError, ValueError) as exc:
            raise ParseError(str(exc)) from exc
        except NotResiduated as exc:
            report = AxiomReport(
                (AxiomVerdict("residuation", False, "no maximum witness", (exc.b, exc.c)),)
            )
            raise ValidationError(report, str(exc)) from exc
    try:
        algebra = FiniteAlgebra.build(
            size, meet, join, fusion, residual, e,
            neg=neg, bottom=bottom, name=doc.get("name"),
        )
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed table entry: {exc}") from exc
    try:
        report = validate(algebra)
    except MalformedTable as exc:
        raise ParseError(str(exc)) from exc
    if not report.ok:
        raise ValidationError(report)
    return algebra


def _cover_pairs(size: int, leq) -> list[tuple[int, int]]:
    covers = []
    for a in range(size):
        for b in range(size):
            if a == b or not leq(a, b):
                continue
            if any(z not in (a, b) and leq(a, z) and leq(z, b) for z in range(size)):
                continue
            covers.append((a, b))
    return covers


def export_dot(obj) -> str:
    """Deterministic Hasse-diagram text (cover edges only) for an algebra's
    order or a poset.  Node labels carry the distinguished elements."""
    from .duality import PointedPoset

    lines = ["digraph hasse {", "  rankdir=BT;"]
    if isinstance(obj, PointedPoset):
        size = obj.size
        leq = lambda a, b: obj.leq[a][b]
        for a in range(size):
            tag = " (m)" if obj.top == a else ""
            lines.append(f'  n{a} [label="{a}{tag}"];')
    elif isinstance(obj, FiniteAlgebra):
        size = obj.size
        leq = obj.leq
        for a in range(size):
            tags = []
            if a == obj.e:
                tags.append("e")
            if obj.neg is not None and a == obj.neg[obj.e]:
                tags.append("f")
            if obj.bottom is not None and a == obj.bottom:
                tags.append("bot")
            tag = f" ({','.join(tags)})" if tags else ""
            lines.append(f'  n{a} [label="{a}{tag}"];')
    else:
        raise TypeError(f"cannot export {type(obj).__name__}")
    for a, b in _cover_pairs(size, leq):
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
