"""JSON file formats for algebras and bimodules.

Algebra file::

    {"dim": 2, "field": "Q", "products": [[0, 0, 1, "1"]]}

``products`` lists the nonzero structure constants ``e_i e_j = ... + c e_k``
as ``[i, j, k, "c"]`` with 0-based indices.  ``field`` is ``"Q"`` or
``{"Fp": p}``.  Scalars are strings: ``"a/b"`` (or ``"a"``) over Q, a residue
over F_p.

Representation file::

    {"dim": 2, "T": [[["0", "0"], ["1", "0"]]], "S": [[["0", "0"], ["0", "0"]]]}

with one row-major ``dim x dim`` matrix per algebra basis element.
"""

from __future__ import annotations

import json
from pathlib import Path

from .exactlin import FieldSpec, Matrix, ScalarParseError
from .leibniz import LeibnizAlgebra, StructureConstants, validate
from .reps import Representation, make_representation


class FormatError(ValueError):
    """Malformed file contents (as opposed to invalid mathematics)."""


def _int(x, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise FormatError(f"{what} must be an integer, got {x!r}")
    return x


def algebra_to_json(L: LeibnizAlgebra) -> dict:
    F = L.field
    return {
        "dim": L.dim,
        "field": F.to_json(),
        "products": [[i, j, k, F.format(x)] for (i, j, k), x in sorted(L.constants.products().items())],
    }


def constants_from_json(obj) -> StructureConstants:
    if not isinstance(obj, dict):
        raise FormatError("algebra file must hold a JSON object")
    missing = {"dim", "field", "products"} - set(obj)
    if missing:
        raise FormatError(f"algebra file lacks keys {sorted(missing)}")
    n = _int(obj["dim"], "dim")
    if n < 0:
        raise FormatError("dim must be non-negative")
    try:
        F = FieldSpec.from_json(obj["field"])
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    if not isinstance(obj["products"], list):
        raise FormatError("products must be a list")
    prods = {}
    for entry in obj["products"]:
        if not isinstance(entry, list) or len(entry) != 4:
            raise FormatError(f"product entry {entry!r} is not [i, j, k, scalar]")
        key = tuple(_int(x, "product index") for x in entry[:3])
        if not all(0 <= x < n for x in key):
            raise FormatError(f"product index {key} out of range for dim {n}")
        if key in prods:
            raise FormatError(f"duplicate product entry {key}")
        try:
            prods[key] = F.parse(entry[3])
        except ScalarParseError as exc:
            raise FormatError(str(exc)) from exc
    return StructureConstants.from_products(F, n, prods)


def algebra_from_json(obj) -> LeibnizAlgebra:
    """Parse and validate; raises FormatError or IdentityViolation."""
    return validate(constants_from_json(obj))


def rep_to_json(rep: Representation) -> dict:
    F = rep.field
    fmt = lambda m: [[F.format(x) for x in row] for row in m.data]
    return {"dim": rep.dim, "T": [fmt(t) for t in rep.T], "S": [fmt(s) for s in rep.S]}


def rep_from_json(obj, L: LeibnizAlgebra) -> Representation:
    """Parse an unvalidated representation of ``L``; raises FormatError."""
    if not isinstance(obj, dict):
        raise FormatError("representation file must hold a JSON object")
    missing = {"dim", "T", "S"} - set(obj)
    if missing:
        raise FormatError(f"representation file lacks keys {sorted(missing)}")
    m = _int(obj["dim"], "dim")
    if m < 0:
        raise FormatError("dim must be non-negative")
    F = L.field

    def mats(key):
        ms = obj[key]
        if not isinstance(ms, list) or len(ms) != L.dim:
            raise FormatError(f"{key} must list {L.dim} matrices")
        out = []
        for mat in ms:
            if not isinstance(mat, list) or len(mat) != m or \
                    any(not isinstance(r, list) or len(r) != m for r in mat):
                raise FormatError(f"{key} matrices must be {m}x{m}")
            try:
                out.append(Matrix(F, m, m, tuple(tuple(F.parse(x) for x in r) for r in mat)))
            except ScalarParseError as exc:
                raise FormatError(str(exc)) from exc
        return out

    return make_representation(L, mats("T"), mats("S"), m)


def dumps(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"


def load_json(path) -> object:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


def write_text(path, text: str):
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot write {path}: {exc}") from exc
