"""Instance files (polynomial maps, Hermitian forms) and line-delimited records.

Polynomial map::

    {"n": 2, "components": [[{"e": [1, 0], "re": "1", "im": "0"}], ...]}

Hermitian form (only canonical a <= b entries are written)::

    {"n": 2, "terms": [{"a": [1, 0], "b": [0, 1], "re": "1/2", "im": "-3"}]}
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .gaussian import GaussianRational, parse_rational, rational_str
from .hermitian import HermitianForm
from .polynomial import PolyMap, Polynomial, monomial_key


class InstanceFormatError(ValueError):
    """Malformed instance document; the message names the offending field."""

    def __init__(self, field: str, problem: str):
        self.field = field
        super().__init__(f"{field}: {problem}")


def _coef_doc(c: GaussianRational) -> dict:
    return {"re": rational_str(c.re), "im": rational_str(c.im)}


def _parse_coef(term: dict, where: str) -> GaussianRational:
    if "re" not in term:
        raise InstanceFormatError(f"{where}.re", "missing")
    parts = []
    for key in ("re", "im"):
        raw = term.get(key, "0")
        if isinstance(raw, int) and not isinstance(raw, bool):
            raw = str(raw)
        try:
            parts.append(parse_rational(raw))
        except ValueError as exc:
            raise InstanceFormatError(f"{where}.{key}", str(exc)) from None
    return GaussianRational(*parts)


def _parse_exponent(raw, n: int, where: str) -> tuple:
    if not isinstance(raw, list):
        raise InstanceFormatError(where, "expected a list of exponents")
    if len(raw) != n:
        raise InstanceFormatError(where, f"expected {n} exponents, got {len(raw)}")
    if any(not isinstance(x, int) or isinstance(x, bool) or x < 0 for x in raw):
        raise InstanceFormatError(where, "exponents must be non-negative integers")
    return tuple(raw)


def _parse_n(doc) -> int:
    if not isinstance(doc, dict):
        raise InstanceFormatError("<root>", "expected an object")
    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise InstanceFormatError("n", "expected a non-negative integer")
    return n


def polymap_to_doc(P: PolyMap) -> dict:
    return {
        "n": P.n,
        "components": [
            [{"e": list(e), **_coef_doc(p.coefficient(e))} for e in p.monomials()]
            for p in P.components
        ],
    }


def polymap_from_doc(doc) -> PolyMap:
    n = _parse_n(doc)
    comps = doc.get("components")
    if not isinstance(comps, list):
        raise InstanceFormatError("components", "expected a list of term lists")
    out = []
    for k, terms in enumerate(comps):
        if not isinstance(terms, list):
            raise InstanceFormatError(f"components[{k}]", "expected a list of terms")
        acc: dict = {}
        for t, term in enumerate(terms):
            where = f"components[{k}][{t}]"
            if not isinstance(term, dict):
                raise InstanceFormatError(where, "expected an object")
            e = _parse_exponent(term.get("e"), n, f"{where}.e")
            c = _parse_coef(term, where)
            if e in acc:
                raise InstanceFormatError(f"{where}.e", f"duplicate exponent {list(e)}")
            acc[e] = c
        out.append(Polynomial(n, acc))
    return PolyMap(n, out)


def form_to_doc(H: HermitianForm) -> dict:
    keys = sorted(H.terms, key=lambda p: (monomial_key(p[0]), monomial_key(p[1])))
    return {
        "n": H.n,
        "terms": [{"a": list(a), "b": list(b), **_coef_doc(H.terms[(a, b)])} for a, b in keys],
    }


def form_from_doc(doc) -> HermitianForm:
    n = _parse_n(doc)
    terms = doc.get("terms")
    if not isinstance(terms, list):
        raise InstanceFormatError("terms", "expected a list of terms")
    acc: dict = {}
    for t, term in enumerate(terms):
        where = f"terms[{t}]"
        if not isinstance(term, dict):
            raise InstanceFormatError(where, "expected an object")
        a = _parse_exponent(term.get("a"), n, f"{where}.a")
        b = _parse_exponent(term.get("b"), n, f"{where}.b")
        if (a, b) in acc:
            raise InstanceFormatError(where, "duplicate (a, b) pair")
        acc[(a, b)] = _parse_coef(term, where)
    try:
        return HermitianForm(n, acc)
    except ValueError as exc:
        raise InstanceFormatError("terms", str(exc)) from None


def read_document(path) -> tuple[dict, str]:
    """Parsed JSON document and the sha256 digest of the raw bytes."""
    raw = Path(path).read_bytes()
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError("<root>", f"invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return doc, hashlib.sha256(raw).hexdigest()


def load_polymap(path) -> tuple[PolyMap, str]:
    doc, digest = read_document(path)
    return polymap_from_doc(doc), digest


def load_form(path) -> tuple[HermitianForm, str]:
    doc, digest = read_document(path)
    return form_from_doc(doc), digest


def save_polymap(P: PolyMap, path) -> None:
    Path(path).write_text(json.dumps(polymap_to_doc(P), indent=1) + "\n")


def save_form(H: HermitianForm, path) -> None:
    Path(path).write_text(json.dumps(form_to_doc(H), indent=1) + "\n")


def dumps_record(record: dict) -> str:
    """One machine-readable line; stable key order so re-serialization is idempotent."""
    return json.dumps(record, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
