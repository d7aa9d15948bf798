"""JSON presentation files: one coalgebra (optionally with a product, unit,
antipode and associator) plus named comodules.

Sparse structure constants are lists ``[indices..., num]`` or
``[indices..., num, den]`` with integer numerators and denominators;
dense vectors (counit, unit) are lists of exact strings such as ``"-3/7"``.
Floats are rejected everywhere.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from typing import Any

from gmpy2 import mpq

from .coalg import Coalgebra, validate_coalgebra
from .comod import Comodule
from .errors import InputError
from .hopf import Bialgebra, HopfAlgebra, validate_bialgebra, validate_hopf
from .linalg import FieldSpec, GF, QQ, Matrix

SCHEMA = 1

__all__ = ["Presentation", "to_document", "dumps", "loads", "load", "digest", "encode_matrix", "encode_vector"]


@dataclass
class Presentation:
    kind: str                       # coalgebra | bialgebra | hopf | coquasi
    coalgebra: Coalgebra
    structure: Any = None           # the Bialgebra / HopfAlgebra / CoquasiBialgebra
    comodules: dict = field(default_factory=dict)

    @property
    def field(self) -> FieldSpec:
        return self.coalgebra.field


# ------------------------------------------------------------------ encoding


def _coef(F: FieldSpec, x) -> list:
    if F.p:
        return [int(x) % F.p]
    q = mpq(x)
    return [int(q.numerator)] if q.denominator == 1 else [int(q.numerator), int(q.denominator)]


def encode_vector(F: FieldSpec, vec) -> list:
    return [F.fmt(x) for x in vec]


def encode_matrix(F: FieldSpec, M: Matrix) -> list:
    return [[F.fmt(x) for x in row] for row in M.to_dense()]


def to_document(obj, comodules=()) -> dict:
    """Presentation document for a Coalgebra, Bialgebra, HopfAlgebra or
    CoquasiBialgebra, with the given comodules attached."""
    from .coquasi import CoquasiBialgebra

    C = obj.base if isinstance(obj, Bialgebra) else obj
    F = C.field
    n = C.dim
    doc: dict = {"schema": SCHEMA, "field": F.to_json(), "dim": n, "names": list(C.names)}
    doc["delta"] = [[i, j, k, *_coef(F, v)] for i in range(n) for j, k, v in sorted(C.dterms[i])]
    doc["eps"] = encode_vector(F, C.eps)
    if isinstance(obj, Bialgebra):
        doc["mult"] = [[a, b, c, *_coef(F, v)] for (a, b), t in sorted(obj.mterms.items()) for c, v in sorted(t.items())]
        doc["unit"] = encode_vector(F, obj.unit)
    if isinstance(obj, HopfAlgebra):
        S = obj.antipode
        doc["antipode"] = [[src, dst, *_coef(F, S[dst, src])] for src in range(n) for dst in range(n) if S[dst, src]]
    if isinstance(obj, CoquasiBialgebra):
        doc["omega"] = [[*t, *_coef(F, v)] for t, v in sorted(obj.omega.items())]
    mods = []
    for M in comodules:
        terms = []
        for p_, row in enumerate(M.coaction_terms()):
            for q, a, v in sorted(row):
                terms.append([p_, q, a, *_coef(F, v)])
        mods.append({"name": M.name, "side": M.side, "dim": M.dim, "rho": terms})
    if mods:
        doc["comodules"] = mods
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=1, sort_keys=True, ensure_ascii=False) + "\n"


def digest(data: bytes | str) -> str:
    if isinstance(data, str):
        data = data.encode()
    return "sha256:" + hashlib.sha256(data).hexdigest()


# ------------------------------------------------------------------ decoding


def _need(doc: dict, key: str, typ, where: str):
    if key not in doc:
        raise InputError(f"missing key {key!r}", where)
    val = doc[key]
    if not isinstance(val, typ) or isinstance(val, bool):
        raise InputError(f"{key!r} has the wrong type", f"{where}.{key}")
    return val


def _scalar(F: FieldSpec, x, where: str):
    if isinstance(x, bool) or isinstance(x, float):
        raise InputError("coefficients must be exact (integers or rational strings)", where)
    if not isinstance(x, (int, str)):
        raise InputError("coefficient has the wrong type", where)
    try:
        return F(x)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"bad coefficient {x!r}: {exc}", where) from None


def _entries(F: FieldSpec, items, arity: int, bound: int, where: str) -> list[tuple]:
    if not isinstance(items, list):
        raise InputError("expected a list", where)
    out = []
    for t, item in enumerate(items):
        pos = f"{where}[{t}]"
        if not isinstance(item, list) or len(item) not in (arity + 1, arity + 2):
            raise InputError(f"expected {arity} indices and a coefficient", pos)
        idx = item[:arity]
        if not all(isinstance(i, int) and not isinstance(i, bool) and 0 <= i < bound for i in idx):
            raise InputError(f"indices must be integers in [0, {bound})", pos)
        coef = item[arity:]
        if len(coef) == 1:
            v = _scalar(F, coef[0], pos)
        else:
            num, den = coef
            if not all(isinstance(x, int) and not isinstance(x, bool) for x in coef) or den == 0:
                raise InputError("num/den must be integers with den != 0", pos)
            try:
                v = F(f"{num}/{den}")
            except ZeroDivisionError as exc:
                raise InputError(str(exc), pos) from None
        out.append((*idx, v))
    return out


def _vector(F: FieldSpec, vals, n: int, where: str) -> list:
    if not isinstance(vals, list) or len(vals) != n:
        raise InputError(f"expected a list of {n} coefficients", where)
    return [_scalar(F, x, f"{where}[{i}]") for i, x in enumerate(vals)]


def _field(doc: dict) -> FieldSpec:
    f = _need(doc, "field", dict, "$")
    kind = f.get("kind")
    if kind in ("rationals", "Q", "QQ"):
        return QQ
    if kind in ("prime-field", "Fp", "GF"):
        p = f.get("p")
        if not isinstance(p, int):
            raise InputError("prime field needs an integer p", "$.field.p")
        try:
            return GF(p)
        except ValueError as exc:
            raise InputError(str(exc), "$.field.p") from None
    raise InputError(f"unknown field kind {kind!r}", "$.field.kind")


def from_document(doc: Any) -> Presentation:
    """Parse and validate.  Malformed input raises InputError; failed axioms
    raise ValidationError."""
    from .coquasi import validate_coquasi

    if not isinstance(doc, dict):
        raise InputError("top level must be an object", "$")
    schema = doc.get("schema", SCHEMA)
    if schema != SCHEMA:
        raise InputError(f"unsupported schema {schema!r}", "$.schema")
    F = _field(doc)
    n = _need(doc, "dim", int, "$")
    if n < 1:
        raise InputError("dim must be positive", "$.dim")
    names = doc.get("names")
    if names is not None and (not isinstance(names, list) or len(names) != n):
        raise InputError(f"names must list {n} strings", "$.names")
    delta = _entries(F, _need(doc, "delta", list, "$"), 3, n, "$.delta")
    eps = _vector(F, _need(doc, "eps", list, "$"), n, "$.eps")
    C = validate_coalgebra(F, n, delta, eps, names)
    structure = None
    kind = "coalgebra"
    if "mult" in doc or "unit" in doc:
        mult = _entries(F, _need(doc, "mult", list, "$"), 3, n, "$.mult")
        unit = _vector(F, _need(doc, "unit", list, "$"), n, "$.unit")
        if "omega" in doc:
            om = _entries(F, doc["omega"], 3, n, "$.omega")
            structure = validate_coquasi(C, mult, unit, {(a, b, c): v for a, b, c, v in om})
            kind = "coquasi"
        elif "antipode" in doc:
            s = _entries(F, doc["antipode"], 2, n, "$.antipode")
            structure = validate_hopf(C, mult, unit, s)
            kind = "hopf"
        else:
            structure = validate_bialgebra(C, mult, unit)
            kind = "bialgebra"
    elif "antipode" in doc or "omega" in doc:
        raise InputError("antipode/omega need mult and unit", "$")
    mods = {}
    for t, md in enumerate(doc.get("comodules", []) or []):
        where = f"$.comodules[{t}]"
        if not isinstance(md, dict):
            raise InputError("comodule must be an object", where)
        name = md.get("name") or f"M{t}"
        side = md.get("side", "right")
        if side not in ("left", "right"):
            raise InputError("side must be left or right", f"{where}.side")
        m = _need(md, "dim", int, where)
        rho = _entries(F, _need(md, "rho", list, where), 3, max(m, n), f"{where}.rho")
        entries: dict = {}
        for k, (p_, q, a, v) in enumerate(rho):
            if p_ >= m or q >= m or a >= n:
                raise InputError("index out of range", f"{where}.rho[{k}]")
            r = q * n + a if side == "right" else a * m + q
            entries[(r, p_)] = entries.get((r, p_), 0) + v
        R = Matrix.from_entries(F, m * n, m, entries)
        mods[name] = Comodule.from_rho(C, side, R, name)
    return Presentation(kind, C, structure, mods)


def loads(text: str) -> Presentation:
    try:
        doc = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise InputError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    except _FloatFound as exc:
        raise InputError(f"float literal {exc.args[0]} is not an exact coefficient", _float_position(text)) from None
    return from_document(doc)


class _FloatFound(Exception):
    pass


def _reject_float(s: str):
    raise _FloatFound(s)


_NUMBER = re.compile(r'"(?:[^"\\]|\\.)*"|-?\d+(\.\d+)?([eE][-+]?\d+)?')


def _float_position(text: str) -> str:
    for m in _NUMBER.finditer(text):
        if m.group(0)[0] != '"' and (m.group(1) or m.group(2)):
            line = text.count("\n", 0, m.start()) + 1
            col = m.start() - (text.rfind("\n", 0, m.start()) + 1) + 1
            return f"line {line} column {col}"
    return ""


def load(path: str) -> Presentation:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(str(exc), path) from None
    return loads(text)
