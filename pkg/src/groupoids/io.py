"""JSON documents for groupoids and morphisms, with canonical text form.

A groupoid document carries labels only; indices are an implementation
detail.  The partial multiplication is a list of [x, y, xy] triples, one
per defined product; a missing pair means the product is undefined.
Canonical serialization sorts object keys and orders the triples by the
positions of their factors, so equal documents serialize to identical
bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

from .core import FiniteGroupoid, ValidationReport, Violation
from .constructions import GroupTable
from .morphisms import GroupoidMorphism
from .quasiperm import Quasipermutation, qp_compose
from .structured import GroupGroupoid, VectorSpaceGroupoid

__all__ = [
    "FORMAT_VERSION",
    "KINDS",
    "ParseError",
    "ParsedDocument",
    "canonical_dumps",
    "canonicalize_document",
    "check_quasiperm_payloads",
    "document_for",
    "group_groupoid_document",
    "load_groupoid",
    "load_morphism",
    "parse_groupoid_document",
    "parse_morphism_document",
    "plain_document",
    "quasiperm_document",
    "vsg_document",
]

FORMAT_VERSION = 1
KINDS = ("plain", "quasiperm", "group-groupoid", "vsg")


class ParseError(Exception):
    """A malformed document; field names the offending part."""

    def __init__(self, field: str, message: str):
        self.field = field
        self.message = message
        super().__init__(f"{field}: {message}")


@dataclass
class ParsedDocument:
    """A parsed groupoid document: the groupoid plus any structured extras
    the kind carries."""

    groupoid: FiniteGroupoid
    kind: str
    group_groupoid: Optional[GroupGroupoid] = None
    vector_space: Optional[VectorSpaceGroupoid] = None


def _require(data: dict, field: str, kind: type, *, optional: bool = False):
    if field not in data:
        if optional:
            return None
        raise ParseError(field, "missing required field")
    value = data[field]
    if not isinstance(value, kind):
        raise ParseError(field, f"expected {kind.__name__}")
    return value


def _string_list(data: dict, field: str) -> list[str]:
    value = _require(data, field, list)
    for i, item in enumerate(value):
        if not isinstance(item, str):
            raise ParseError(f"{field}[{i}]", "expected a string")
    return value


def _label_map(data: dict, field: str, index: dict[str, int],
               keys: list[str]) -> dict[str, str]:
    value = _require(data, field, dict)
    for k, v in value.items():
        if k not in index:
            raise ParseError(field, f"unknown label {k!r}")
        if not isinstance(v, str) or v not in index:
            raise ParseError(field, f"unknown label {v!r} under key {k!r}")
    for k in keys:
        if k not in value:
            raise ParseError(field, f"missing entry for {k!r}")
    return value


def _group_fields(
    data: dict,
    prefix: str,
    labels: list[str],
) -> GroupTable:
    """Read add/zero/neg style fields (optionally prefixed) into a group
    table over the given labels."""
    index = {lbl: i for i, lbl in enumerate(labels)}
    n = len(labels)
    add_field = f"{prefix}add" if prefix else "add"
    zero_field = f"{prefix}zero" if prefix else "zero"
    neg_field = f"{prefix}neg" if prefix else "neg"
    triples = _require(data, add_field, list)
    table: list[list[Optional[int]]] = [[None] * n for _ in range(n)]
    for i, triple in enumerate(triples):
        if (not isinstance(triple, list) or len(triple) != 3
                or not all(isinstance(t, str) for t in triple)):
            raise ParseError(f"{add_field}[{i}]", "expected a [x, y, sum] label triple")
        x, y, z = triple
        for lbl in (x, y, z):
            if lbl not in index:
                raise ParseError(f"{add_field}[{i}]", f"unknown label {lbl!r}")
        if table[index[x]][index[y]] is not None:
            raise ParseError(f"{add_field}[{i}]", f"duplicate entry for ({x!r}, {y!r})")
        table[index[x]][index[y]] = index[z]
    for x in range(n):
        for y in range(n):
            if table[x][y] is None:
                raise ParseError(
                    add_field, f"missing entry for ({labels[x]!r}, {labels[y]!r})")
    zero = _require(data, zero_field, str)
    if zero not in index:
        raise ParseError(zero_field, f"unknown label {zero!r}")
    neg = _label_map(data, neg_field, index, labels)
    return GroupTable.build(
        labels=labels,
        table=[[table[x][y] for y in range(n)] for x in range(n)],
        identity=index[zero],
        inv=[index[neg[lbl]] for lbl in labels],
    )


def _scalar_fields(
    data: dict,
    field: str,
    p: int,
    labels: list[str],
) -> list[list[int]]:
    index = {lbl: i for i, lbl in enumerate(labels)}
    value = _require(data, field, dict)
    rows = []
    for k in range(p):
        row_map = value.get(str(k))
        if not isinstance(row_map, dict):
            raise ParseError(field, f"missing row for scalar {k}")
        row = []
        for lbl in labels:
            img = row_map.get(lbl)
            if not isinstance(img, str) or img not in index:
                raise ParseError(field, f"row {k} has no valid image for {lbl!r}")
            row.append(index[img])
        rows.append(row)
    return rows


def parse_groupoid_document(data: Any) -> ParsedDocument:
    """Build a groupoid (and structured extras) from a decoded document.
    Shape problems raise ParseError; mathematical defects are left for the
    validators."""
    if not isinstance(data, dict):
        raise ParseError("document", "expected a JSON object")
    version = _require(data, "format_version", int)
    if version != FORMAT_VERSION:
        raise ParseError("format_version", f"unsupported version {version}")
    kind = data.get("kind", "plain")
    if kind not in KINDS:
        raise ParseError("kind", f"unknown kind {kind!r}")
    elements = _string_list(data, "elements")
    if not elements:
        raise ParseError("elements", "must not be empty")
    if len(set(elements)) != len(elements):
        raise ParseError("elements", "labels must be unique")
    index = {lbl: i for i, lbl in enumerate(elements)}
    units = _string_list(data, "units")
    for i, u in enumerate(units):
        if u not in index:
            raise ParseError(f"units[{i}]", f"unknown label {u!r}")
    if len(set(units)) != len(units):
        raise ParseError("units", "unit labels must be unique")
    if not units:
        raise ParseError("units", "must not be empty")
    alpha = _label_map(data, "alpha", index, elements)
    beta = _label_map(data, "beta", index, elements)
    inv = _label_map(data, "inv", index, elements)
    mul_triples = _require(data, "mul", list)
    mul: dict[tuple[int, int], int] = {}
    for i, triple in enumerate(mul_triples):
        if (not isinstance(triple, list) or len(triple) != 3
                or not all(isinstance(t, str) for t in triple)):
            raise ParseError(f"mul[{i}]", "expected a [x, y, product] label triple")
        x, y, z = triple
        for lbl in (x, y, z):
            if lbl not in index:
                raise ParseError(f"mul[{i}]", f"unknown label {lbl!r}")
        key = (index[x], index[y])
        if key in mul:
            raise ParseError(f"mul[{i}]", f"duplicate triple for ({x!r}, {y!r})")
        mul[key] = index[z]
    base_labels = None
    if "base_labels" in data:
        raw = _require(data, "base_labels", dict)
        base_labels = {}
        unit_set = set(units)
        for k, v in raw.items():
            if k not in unit_set:
                raise ParseError("base_labels", f"key {k!r} is not a unit")
            if not isinstance(v, str):
                raise ParseError("base_labels", f"value for {k!r} must be a string")
            base_labels[index[k]] = v
    payloads = None
    if kind == "quasiperm":
        degree = _require(data, "degree", int)
        if degree < 1:
            raise ParseError("degree", "must be at least 1")
        texts = _string_list(data, "payloads")
        if len(texts) != len(elements):
            raise ParseError("payloads", "must be parallel to elements")
        payloads = []
        for i, text in enumerate(texts):
            try:
                payloads.append(Quasipermutation.from_text(degree, text))
            except ValueError as exc:
                raise ParseError(f"payloads[{i}]", str(exc)) from exc
    try:
        groupoid = FiniteGroupoid(
            elements=elements,
            units=[index[u] for u in units],
            alpha=[index[alpha[lbl]] for lbl in elements],
            beta=[index[beta[lbl]] for lbl in elements],
            inv=[index[inv[lbl]] for lbl in elements],
            mul=mul,
            base_labels=base_labels,
            payloads=payloads,
        )
    except ValueError as exc:
        raise ParseError("document", str(exc)) from exc
    parsed = ParsedDocument(groupoid, kind)
    if kind in ("group-groupoid", "vsg"):
        elem_group = _group_fields(data, "", elements)
        unit_labels = [elements[u] for u in groupoid.units]
        unit_group = _group_fields(data, "unit_", unit_labels)
        try:
            parsed.group_groupoid = GroupGroupoid(groupoid, elem_group, unit_group)
        except ValueError as exc:
            raise ParseError("document", str(exc)) from exc
    if kind == "vsg":
        p = _require(data, "p", int)
        unit_labels = [elements[u] for u in parsed.groupoid.units]
        try:
            parsed.vector_space = VectorSpaceGroupoid(
                parsed.group_groupoid,
                p,
                _scalar_fields(data, "scalar", p, elements),
                _scalar_fields(data, "unit_scalar", p, unit_labels),
            )
        except ValueError as exc:
            raise ParseError("document", str(exc)) from exc
    return parsed


def load_groupoid(path: str | Path) -> ParsedDocument:
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("json", str(exc)) from exc
    return parse_groupoid_document(data)


# ----- serialization -------------------------------------------------------


def plain_document(g: FiniteGroupoid) -> dict:
    doc: dict[str, Any] = {
        "format_version": FORMAT_VERSION,
        "kind": "plain",
        "elements": list(g.elements),
        "units": [g.elements[u] for u in g.units],
        "alpha": {g.elements[x]: g.elements[g.alpha[x]] for x in range(len(g))},
        "beta": {g.elements[x]: g.elements[g.beta[x]] for x in range(len(g))},
        "inv": {g.elements[x]: g.elements[g.inv[x]] for x in range(len(g))},
        "mul": [[g.elements[x], g.elements[y], g.elements[z]]
                for (x, y), z in sorted(g.mul.items())],
    }
    if g.base_labels is not None:
        doc["base_labels"] = {g.elements[u]: lbl for u, lbl in g.base_labels.items()}
    return doc


def quasiperm_document(g: FiniteGroupoid, degree: int) -> dict:
    if g.payloads is None:
        raise ValueError("groupoid carries no quasipermutation payloads")
    doc = plain_document(g)
    doc["kind"] = "quasiperm"
    doc["degree"] = degree
    doc["payloads"] = [f.text_form() for f in g.payloads]
    return doc


def _group_document_fields(doc: dict, prefix: str, t: GroupTable) -> None:
    labels = t.labels
    doc[f"{prefix}add" if prefix else "add"] = [
        [labels[x], labels[y], labels[t.table[x][y]]]
        for x in range(t.order) for y in range(t.order)
    ]
    doc[f"{prefix}zero" if prefix else "zero"] = labels[t.identity]
    doc[f"{prefix}neg" if prefix else "neg"] = {
        labels[x]: labels[t.inv[x]] for x in range(t.order)}


def group_groupoid_document(gg: GroupGroupoid) -> dict:
    doc = plain_document(gg.carrier)
    doc["kind"] = "group-groupoid"
    _group_document_fields(doc, "", gg.elem_group)
    _group_document_fields(doc, "unit_", gg.unit_group)
    return doc


def vsg_document(v: VectorSpaceGroupoid) -> dict:
    doc = group_groupoid_document(v.structure)
    g = v.carrier
    doc["kind"] = "vsg"
    doc["p"] = v.p
    doc["scalar"] = {
        str(k): {g.elements[x]: g.elements[v.scalar[k][x]] for x in range(len(g))}
        for k in range(v.p)
    }
    unit_labels = [g.elements[u] for u in g.units]
    doc["unit_scalar"] = {
        str(k): {unit_labels[i]: unit_labels[v.unit_scalar[k][i]]
                 for i in range(len(unit_labels))}
        for k in range(v.p)
    }
    return doc


def document_for(parsed: ParsedDocument) -> dict:
    """Serialize a parsed document back to its dict form."""
    if parsed.kind == "vsg":
        return vsg_document(parsed.vector_space)
    if parsed.kind == "group-groupoid":
        return group_groupoid_document(parsed.group_groupoid)
    if parsed.kind == "quasiperm":
        degree = parsed.groupoid.payloads[0].degree
        return quasiperm_document(parsed.groupoid, degree)
    return plain_document(parsed.groupoid)


def canonicalize_document(doc: dict) -> dict:
    """Deterministic form: mul and add triples ordered by factor positions,
    units by element position."""
    out = dict(doc)
    index = {lbl: i for i, lbl in enumerate(doc["elements"])}
    out["units"] = sorted(doc["units"], key=index.get)
    out["mul"] = sorted(doc["mul"], key=lambda t: (index[t[0]], index[t[1]]))
    if "add" in out:
        out["add"] = sorted(out["add"], key=lambda t: (index[t[0]], index[t[1]]))
    if "unit_add" in out:
        unit_index = {lbl: i for i, lbl in enumerate(out["units"])}
        out["unit_add"] = sorted(
            out["unit_add"], key=lambda t: (unit_index[t[0]], unit_index[t[1]]))
    return out


def canonical_dumps(doc: dict) -> str:
    return json.dumps(canonicalize_document(doc), sort_keys=True, indent=2) + "\n"


# ----- payload cross-check -------------------------------------------------


def check_quasiperm_payloads(g: FiniteGroupoid) -> ValidationReport:
    """Verify that the groupoid's tables agree with its quasipermutation
    payloads: units are identity maps, anchors pick the identities on
    domain and range, inverses and products match map inversion and
    composition."""
    v: list[Violation] = []
    if g.payloads is None:
        return ValidationReport((Violation("payload", (), "no payloads present"),))
    by_value = {}
    for i, f in enumerate(g.payloads):
        key = (f.domain, f.image)
        if key in by_value:
            v.append(Violation("payload", (by_value[key], i), "duplicate quasipermutation"))
        by_value[key] = i
    for x in range(len(g)):
        f = g.payloads[x]
        if g.is_unit(x) != f.is_identity():
            v.append(Violation(
                "payload", (x,), "unit flag disagrees with being an identity map"))
        fa = g.payloads[g.alpha[x]]
        if not (fa.is_identity() and fa.domain == f.domain):
            v.append(Violation(
                "payload", (x,), "source is not the identity on the domain"))
        fb = g.payloads[g.beta[x]]
        if not (fb.is_identity() and fb.domain == tuple(sorted(f.image))):
            v.append(Violation(
                "payload", (x,), "target is not the identity on the range"))
        fi = g.payloads[g.inv[x]]
        if fi != f.inverse():
            v.append(Violation("payload", (x,), "inverse map mismatch"))
    for x in range(len(g)):
        for y in range(len(g)):
            composed = qp_compose(g.payloads[x], g.payloads[y])
            z = g.mul.get((x, y))
            if composed is None:
                if z is not None:
                    v.append(Violation(
                        "payload", (x, y), "product defined but maps do not compose"))
            else:
                if z is None:
                    v.append(Violation(
                        "payload", (x, y), "maps compose but product is undefined"))
                elif g.payloads[z] != composed:
                    v.append(Violation(
                        "payload", (x, y), "product disagrees with map composition"))
    return ValidationReport(tuple(v))


# ----- morphism documents --------------------------------------------------


def parse_morphism_document(
    data: Any, *, base_dir: Optional[Path] = None
) -> GroupoidMorphism:
    """Build a morphism from a decoded document; domain and codomain may be
    inline documents or {"path": ...} references."""
    if not isinstance(data, dict):
        raise ParseError("document", "expected a JSON object")
    version = _require(data, "format_version", int)
    if version != FORMAT_VERSION:
        raise ParseError("format_version", f"unsupported version {version}")

    def resolve(field: str) -> FiniteGroupoid:
        value = _require(data, field, dict)
        if set(value.keys()) == {"path"}:
            path = Path(value["path"])
            if base_dir is not None and not path.is_absolute():
                path = base_dir / path
            try:
                return load_groupoid(path).groupoid
            except OSError as exc:
                raise ParseError(field, f"cannot read {path}: {exc}") from exc
        return parse_groupoid_document(value).groupoid

    domain = resolve("domain")
    codomain = resolve("codomain")
    dom_index = {lbl: i for i, lbl in enumerate(domain.elements)}
    cod_index = {lbl: i for i, lbl in enumerate(codomain.elements)}
    f_map = _require(data, "f", dict)
    elem_map = []
    for lbl in domain.elements:
        img = f_map.get(lbl)
        if img is None:
            raise ParseError("f", f"missing entry for {lbl!r}")
        if not isinstance(img, str) or img not in cod_index:
            raise ParseError("f", f"unknown label {img!r} under key {lbl!r}")
        elem_map.append(cod_index[img])
    for k in f_map:
        if k not in dom_index:
            raise ParseError("f", f"unknown label {k!r}")
    unit_map = None
    if "f0" in data:
        f0_map = _require(data, "f0", dict)
        unit_map = {}
        for u in domain.units:
            lbl = domain.elements[u]
            img = f0_map.get(lbl)
            if img is None:
                raise ParseError("f0", f"missing entry for unit {lbl!r}")
            if not isinstance(img, str) or img not in cod_index:
                raise ParseError("f0", f"unknown label {img!r} under key {lbl!r}")
            unit_map[u] = cod_index[img]
        for k in f0_map:
            if k not in dom_index or not domain.is_unit(dom_index[k]):
                raise ParseError("f0", f"key {k!r} is not a domain unit")
    try:
        return GroupoidMorphism(domain, codomain, elem_map, unit_map)
    except ValueError as exc:
        raise ParseError("document", str(exc)) from exc


def load_morphism(path: str | Path) -> GroupoidMorphism:
    p = Path(path)
    text = p.read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("json", str(exc)) from exc
    return parse_morphism_document(data, base_dir=p.parent)
