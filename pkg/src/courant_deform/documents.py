"""JSON algebra documents: parsing, validation and serialization.

A document is a UTF-8 JSON object.  Scalars are strings, either exact
rationals ``"num/den"`` or, when ``field`` is ``"Q(xi)"``, rational
expressions in ``xi``.  Tensors are nested arrays indexed ``[i][j][k]``
with ``T(e_i, e_j) = sum_k T[i][j][k] e_k``.  The anchor of a courant-pair
is stored as ``anchor[i][r][c]``: the coefficient of a_r in mu(x_i)(a_c).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .algebra import (AxiomError, CourantPairData, PoissonData, Witness, as_courant, gallery,
                      gallery_help, GALLERY_NAMES, validate, validate_poisson)
from .exactmath import (QQ, QQ_XI, ParseError, RatFunc, SingularParameterError, format_scalar,
                        parse_scalar, specialize)

SCHEMA_VERSION = 1
KINDS = ("poisson", "courant-pair", "leibniz", "lie")
FIELDS = ("Q", "Q(xi)")

_COMMON = {"schema_version", "kind", "field", "xi", "name", "description"}
_KEYS = {
    "poisson": _COMMON | {"dim", "labels", "product", "bracket"},
    "courant-pair": _COMMON | {"dimA", "dimL", "labelsA", "labelsL", "product", "bracket", "anchor"},
    "leibniz": _COMMON | {"dim", "labels", "bracket"},
    "lie": _COMMON | {"dim", "labels", "bracket"},
}
_REQUIRED = {
    "poisson": {"dim", "product", "bracket"},
    "courant-pair": {"dimA", "dimL", "product", "bracket", "anchor"},
    "leibniz": {"dim", "bracket"},
    "lie": {"dim", "bracket"},
}


@dataclass
class AlgebraDocument:
    kind: str
    name: str
    structure: object  # PoissonData or CourantPairData
    xi: str  # "symbolic", a rational string, or "" when the field is Q
    description: str = ""

    @property
    def pair(self) -> CourantPairData:
        return as_courant(self.structure) if isinstance(self.structure, PoissonData) else self.structure

    def witnesses(self) -> list[Witness]:
        if isinstance(self.structure, PoissonData):
            return validate_poisson(self.structure)
        out = validate(self.structure)
        if self.kind == "lie" and not self.structure.is_lie():
            n = self.structure.dimL
            br = self.structure.bracket
            for i in range(n):
                for j in range(i, n):
                    if br[i][j] != [-v for v in br[j][i]]:
                        out.append(Witness("antisymmetry", (i, j), tuple(br[i][j]), tuple(-v for v in br[j][i])))
        return out

    def labels_of(self, side: str = "L") -> list:
        s = self.structure
        if isinstance(s, PoissonData):
            return list(s.labels)
        return list(s.labelsA if side == "A" else s.labelsL)


def _dim(doc: dict, key: str) -> int:
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise ParseError(f"$.{key}: expected a non-negative integer")
    return v


def _labels(doc: dict, key: str, n: int, default: str) -> list:
    if key not in doc:
        return [f"{default}{i + 1}" for i in range(n)]
    v = doc[key]
    if not isinstance(v, list) or len(v) != n or not all(isinstance(x, str) and x for x in v):
        raise ParseError(f"$.{key}: expected {n} non-empty strings")
    if len(set(v)) != n:
        raise ParseError(f"$.{key}: labels must be distinct")
    return list(v)


def _tensor(doc: dict, key: str, shape: tuple, fld) -> list:
    def rec(node, depth, path):
        if depth == len(shape):
            try:
                return parse_scalar(node, fld)
            except ParseError as exc:
                raise ParseError(f"{path}: {exc}") from None
        if not isinstance(node, list) or len(node) != shape[depth]:
            raise ParseError(f"{path}: expected an array of length {shape[depth]}")
        return [rec(x, depth + 1, f"{path}[{i}]") for i, x in enumerate(node)]

    return rec(doc[key], 0, f"$.{key}")


def _specialize_tensor(t, value):
    if isinstance(t, list):
        return [_specialize_tensor(x, value) for x in t]
    return specialize(t, value)


def _parse_xi(text) -> str:
    """Normalize an xi choice: 'symbolic' or a nonzero rational string."""
    if not isinstance(text, str):
        raise ParseError("xi must be a string")
    if text.strip() == "symbolic":
        return "symbolic"
    v = parse_scalar(text, QQ)
    if v == 0:
        raise SingularParameterError("xi must be nonzero")
    return format_scalar(v)


def parse_document(doc: dict, xi: str | None = None, name: str = "") -> AlgebraDocument:
    """Build the structure described by a decoded JSON document.

    ``xi`` overrides the document's own specialization; it is ignored for
    documents over Q.
    """
    if not isinstance(doc, dict):
        raise ParseError("$: expected a JSON object")
    ver = doc.get("schema_version")
    if ver != SCHEMA_VERSION:
        raise ParseError(f"$.schema_version: expected {SCHEMA_VERSION}, got {ver!r}")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise ParseError(f"$.kind: expected one of {', '.join(KINDS)}, got {kind!r}")
    unknown = sorted(set(doc) - _KEYS[kind])
    if unknown:
        raise ParseError(f"$: unknown field(s) for kind {kind}: {', '.join(unknown)}")
    missing = sorted(_REQUIRED[kind] - set(doc))
    if missing:
        raise ParseError(f"$: missing field(s): {', '.join(missing)}")
    fname = doc.get("field", "Q")
    if fname not in FIELDS:
        raise ParseError(f"$.field: expected 'Q' or 'Q(xi)', got {fname!r}")
    fld = QQ_XI if fname == "Q(xi)" else QQ
    for key in ("name", "description"):
        if key in doc and not isinstance(doc[key], str):
            raise ParseError(f"$.{key}: expected a string")
    name = doc.get("name", name)
    choice = ""
    if fld is QQ_XI:
        choice = _parse_xi(xi if xi is not None else doc.get("xi", "symbolic"))
    elif "xi" in doc:
        raise ParseError("$.xi: only meaningful when field is 'Q(xi)'")

    if kind == "poisson":
        n = _dim(doc, "dim")
        labels = _labels(doc, "labels", n, "e")
        prod = _tensor(doc, "product", (n, n, n), fld)
        br = _tensor(doc, "bracket", (n, n, n), fld)
        out_fld = fld
        if choice not in ("", "symbolic"):
            prod, br, out_fld = _specialize_tensor(prod, choice), _specialize_tensor(br, choice), QQ
        s = PoissonData(n, prod, br, labels, out_fld)
    else:
        if kind == "courant-pair":
            nA, nL = _dim(doc, "dimA"), _dim(doc, "dimL")
            la, ll = _labels(doc, "labelsA", nA, "a"), _labels(doc, "labelsL", nL, "x")
            assoc = _tensor(doc, "product", (nA, nA, nA), fld)
            anchor = _tensor(doc, "anchor", (nL, nA, nA), fld)
        else:
            nA, nL = 0, _dim(doc, "dim")
            la, ll = [], _labels(doc, "labels", nL, "x")
            assoc, anchor = [], [[] for _ in range(nL)]
        br = _tensor(doc, "bracket", (nL, nL, nL), fld)
        out_fld = fld
        if choice not in ("", "symbolic"):
            assoc, br, anchor = (_specialize_tensor(t, choice) for t in (assoc, br, anchor))
            out_fld = QQ
        s = CourantPairData(nA, nL, assoc, br, anchor, la, ll, out_fld)
    return AlgebraDocument(kind, name, s, choice, doc.get("description", ""))


def _scalars(t):
    if isinstance(t, list):
        return [_scalars(x) for x in t]
    return format_scalar(t)


def serialize(doc: AlgebraDocument) -> dict:
    s = doc.structure
    symbolic = s.field is QQ_XI
    out = {"schema_version": SCHEMA_VERSION, "kind": doc.kind, "field": "Q(xi)" if symbolic else "Q"}
    if doc.name:
        out["name"] = doc.name
    if doc.description:
        out["description"] = doc.description
    if isinstance(s, PoissonData):
        out.update(dim=s.dim, labels=list(s.labels), product=_scalars(s.product), bracket=_scalars(s.bracket))
    elif doc.kind == "courant-pair":
        out.update(dimA=s.dimA, dimL=s.dimL, labelsA=list(s.labelsA), labelsL=list(s.labelsL),
                   product=_scalars(s.assoc), bracket=_scalars(s.bracket), anchor=_scalars(s.anchor))
    else:
        out.update(dim=s.dimL, labels=list(s.labelsL), bracket=_scalars(s.bracket))
    return out


_INNER = re.compile(r'\[\s*("(?:[^"\\]|\\.)*"(?:,\s*"(?:[^"\\]|\\.)*")*)\s*\]')


def dumps(doc: AlgebraDocument) -> str:
    """Indented JSON with each innermost array of scalars on one line."""
    text = json.dumps(serialize(doc), indent=2, ensure_ascii=False)
    text = _INNER.sub(lambda m: "[" + re.sub(r'",\s+"', '", "', m.group(1)) + "]", text)
    return text + "\n"


# ---------------------------------------------------------------------------
# bundled documents


def bundled_names() -> tuple:
    return GALLERY_NAMES


def bundled_text(name: str) -> str:
    return resources.files("courant_deform").joinpath("data", f"{name}.json").read_text(encoding="utf-8")


def _resolve(source: str) -> tuple[str, str]:
    """(text, name) for a file path or a bundled document name."""
    p = Path(source)
    if p.is_file():
        try:
            return p.read_text(encoding="utf-8"), p.stem
        except (OSError, UnicodeDecodeError) as exc:
            raise ParseError(f"cannot read {source}: {exc}") from exc
    stem = p.name.split(".")[0]
    if stem in GALLERY_NAMES and p.parent == Path("."):
        return bundled_text(stem), stem
    raise ParseError(f"no such file or bundled document: {source}")


def load_document(source: str, xi: str | None = None) -> AlgebraDocument:
    text, name = _resolve(source)
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return parse_document(raw, xi, name)


def gallery_document(name: str) -> AlgebraDocument:
    """The gallery entry as a document, for writing the bundled files."""
    obj = gallery(name)
    if isinstance(obj, PoissonData):
        kind = "poisson"
    elif obj.dimA == 0:
        kind = "lie" if obj.is_lie() else "leibniz"
    else:
        kind = "courant-pair"
    return AlgebraDocument(kind, name, obj, "symbolic" if obj.field is QQ_XI else "", gallery_help()[name])


def require_valid(doc: AlgebraDocument) -> None:
    bad = doc.witnesses()
    if bad:
        raise AxiomError(f"document {doc.name or '<input>'} fails validation", bad)


__all__ = ["AlgebraDocument", "SCHEMA_VERSION", "bundled_names", "bundled_text", "dumps", "gallery_document",
           "load_document", "parse_document", "require_valid", "serialize"]
