"""JSON instance files.

::

    {
      "field": "Q",                      # or "Fp:5"
      "poset": {"elements": ["a", "b"], "covers": [["a", "b"]]},
      "functor": {"dims": {"a": 1, "b": 1},
                  "maps": {"a<b": [["1/2"]]}}   # F(b) -> F(a), dim(a) rows
    }

Rational entries are strings (integers are accepted); prime-field entries
are integers in ``[0, p)``.  ``functor`` may be omitted for poset-only
files.  Unknown keys are rejected.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .diagram import ModuleDiagram
from .errors import InputError
from .exactla import Field, Matrix, QQ
from .poset import Poset


def _keys(obj, allowed: set[str], required: set[str], where: str) -> None:
    if not isinstance(obj, dict):
        raise InputError(f"{where} must be a JSON object")
    unknown = set(obj) - allowed
    if unknown:
        raise InputError(f"unknown key {sorted(unknown)[0]!r} in {where}")
    missing = required - set(obj)
    if missing:
        raise InputError(f"missing key {sorted(missing)[0]!r} in {where}")


def _scalar(field: Field, x, where: str):
    if field.is_rational:
        if isinstance(x, bool) or not isinstance(x, (str, int)):
            raise InputError(f"{where}: rational entries must be strings like \"-1/2\", got {x!r}")
        return field(x)
    if isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < field.p:
        raise InputError(f"{where}: entries over GF({field.p}) must be integers in [0, {field.p}), got {x!r}")
    return x


def parse_instance(obj) -> tuple[Field, Poset, ModuleDiagram | None]:
    _keys(obj, {"field", "poset", "functor"}, {"poset"}, "instance")
    fval = obj.get("field", "Q")
    if not isinstance(fval, str):
        raise InputError("field must be a string such as \"Q\" or \"Fp:5\"")
    field = Field.parse(fval)
    pobj = obj["poset"]
    _keys(pobj, {"elements", "covers"}, {"elements", "covers"}, "poset")
    elements = pobj["elements"]
    if not isinstance(elements, list) or not all(isinstance(e, str) for e in elements):
        raise InputError("poset.elements must be a list of strings")
    covers = []
    for c in pobj["covers"]:
        if not (isinstance(c, list) and len(c) == 2 and all(isinstance(x, str) for x in c)):
            raise InputError(f"cover {c!r} must be a pair of element names")
        covers.append((c[0], c[1]))
    P = Poset(elements, covers)
    if "functor" not in obj:
        return field, P, None
    fobj = obj["functor"]
    _keys(fobj, {"dims", "maps"}, {"dims", "maps"}, "functor")
    dims = fobj["dims"]
    if not isinstance(dims, dict):
        raise InputError("functor.dims must be an object")
    for p, n in dims.items():
        if isinstance(n, bool) or not isinstance(n, int) or n < 0:
            raise InputError(f"dimension of {p!r} must be a nonnegative integer")
    by_key = {f"{a}<{b}": (a, b) for a, b in P.covers}
    maps = {}
    if not isinstance(fobj["maps"], dict):
        raise InputError("functor.maps must be an object")
    for key, rows in fobj["maps"].items():
        if key not in by_key:
            raise InputError(f"map key {key!r} is not a cover \"lower<upper\"")
        a, b = by_key[key]
        ra, cb = dims.get(a), dims.get(b)
        if ra is None or cb is None:
            raise InputError(f"map {key!r} refers to an element without a dimension")
        if not isinstance(rows, list) or len(rows) != ra or any(
                not isinstance(r, list) or len(r) != cb for r in rows):
            raise InputError(f"map {key!r} must be a {ra}x{cb} array (rows = dim {a!r})")
        maps[(a, b)] = Matrix._raw(field, [[_scalar(field, x, key) for x in r] for r in rows], cb)
    return field, P, ModuleDiagram(P, field, dims, maps)


def load_instance(path: str | Path) -> tuple[Field, Poset, ModuleDiagram | None]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    return parse_instance(obj)


def _encode(field: Field, x):
    if field.is_rational:
        return str(x) if isinstance(x, (int, Fraction)) else str(Fraction(x))
    return int(x)


def dump_instance(F: ModuleDiagram) -> dict:
    P = F.poset
    return {
        "field": str(F.field),
        "poset": {"elements": list(P.elements), "covers": [[a, b] for a, b in P.covers]},
        "functor": {
            "dims": {p: F.dims[p] for p in P.elements},
            "maps": {f"{a}<{b}": [[_encode(F.field, x) for x in r] for r in F.restriction[(a, b)].entries]
                     for a, b in P.covers},
        },
    }


def dump_poset(P: Poset, field: Field = QQ) -> dict:
    return {"field": str(field),
            "poset": {"elements": list(P.elements), "covers": [[a, b] for a, b in P.covers]}}


def write_instance(F: ModuleDiagram, path: str | Path) -> None:
    Path(path).write_text(json.dumps(dump_instance(F), indent=2) + "\n", encoding="utf-8")
