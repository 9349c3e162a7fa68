"""A JSON text format for algebras, Levi data and named subspaces.

Example::

    {
      "field": "Q",
      "dim": 4,
      "labels": ["e11", "e12", "e21", "e22"],
      "unit": [1, 0, 0, 1],
      "sc": [
        [0, 0, 0, 1, 1],
        ...
      ],
      "levi": [
        {"size": 2, "units": [[[1, 0, 0, 0], [0, 1, 0, 0]], [[0, 0, 1, 0], [0, 0, 0, 1]]]}
      ],
      "subspaces": {
        "B": [[0, 1, 0, 0]]
      }
    }

``sc`` entries are ``[i, j, k, num, den]`` meaning ``b_i b_j`` has
coefficient ``num/den`` on ``b_k``; over F_p the denominator is left out.
Vector entries are integers or ``"p/q"`` strings.  :func:`emit` writes
keys in the order above and ``sc`` sorted, so ``emit(parse(text)) == text``
for any text that ``emit`` produced.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import Algebra
from .errors import JordanLieError, ParseError
from .scalars import FieldSpec

KEYS = ("field", "dim", "labels", "unit", "sc", "levi", "subspaces")
REQUIRED = ("dim", "sc")


@dataclass
class AlgebraFile:
    algebra: Algebra
    subspaces: dict = field(default_factory=dict)  # name -> tuple of generator vectors
    levi: list | None = None  # blocks as square arrays of vectors, as written

    @classmethod
    def from_algebra(cls, A: Algebra, subspaces: Mapping | None = None, with_levi: bool = True) -> "AlgebraFile":
        levi = None
        if with_levi:
            levi = [[list(row) for row in b.units] for b in A.levi().blocks]
        subs = {name: tuple(A.field.vec(v) for v in vecs) for name, vecs in (subspaces or {}).items()}
        return cls(A, subs, levi)

    def subspace(self, name: str):
        try:
            return self.subspaces[name]
        except KeyError:
            raise KeyError(f"no subspace named {name!r}; have {sorted(self.subspaces)}") from None


# scalars


def _scalar_out(c):
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return int(c)


def vec_out(v) -> list:
    return [_scalar_out(c) for c in v]


_FRAC = re.compile(r"^-?\d+(/\d+)?$")


def _scalar_in(F: FieldSpec, x, where):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise where(f"expected an integer or 'p/q' string, got {x!r}")
    if isinstance(x, str):
        if not _FRAC.match(x):
            raise where(f"malformed rational {x!r}")
        num, _, den = x.partition("/")
        if den and int(den) == 0:
            raise where("zero denominator")
        x = Fraction(int(num), int(den or 1))
    return F(x)


# emission


def _dumps(x) -> str:
    return json.dumps(x, separators=(", ", ": "), ensure_ascii=False)


def emit(doc: AlgebraFile) -> str:
    A = doc.algebra
    F = A.field
    lines = ["{"]
    parts = [f'  "field": {_dumps(str(F))}', f'  "dim": {A.dim}', f'  "labels": {_dumps(list(A.labels))}']
    if A.unit is not None:
        parts.append(f'  "unit": {_dumps(vec_out(A.unit))}')
    sc = []
    for i, j, k, c in A.structure_constants():
        if F.p:
            sc.append([i, j, k, int(c)])
        else:
            c = Fraction(c)
            sc.append([i, j, k, c.numerator, c.denominator])
    if sc:
        parts.append('  "sc": [\n' + ",\n".join(f"    {_dumps(e)}" for e in sc) + "\n  ]")
    else:
        parts.append('  "sc": []')
    if doc.levi is not None:
        blocks = []
        for b in doc.levi:
            units = [[vec_out(u) for u in row] for row in b]
            blocks.append(f'    {{"size": {len(b)}, "units": {_dumps(units)}}}')
        parts.append('  "levi": [\n' + ",\n".join(blocks) + "\n  ]" if blocks else '  "levi": []')
    if doc.subspaces:
        subs = [f"    {_dumps(name)}: {_dumps([vec_out(v) for v in vecs])}"
                for name, vecs in sorted(doc.subspaces.items())]
        parts.append('  "subspaces": {\n' + ",\n".join(subs) + "\n  }")
    lines.append(",\n".join(parts))
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_algebra(A: Algebra, subspaces: Mapping | None = None, with_levi: bool = True) -> str:
    return emit(AlgebraFile.from_algebra(A, subspaces, with_levi))


# parsing


def _locator(text: str):
    """``where(key)`` returns an error factory pointing at the key's first occurrence."""

    def where(key: str):
        m = re.search(r'"' + re.escape(key) + r'"\s*:', text)
        if m:
            line = text.count("\n", 0, m.start()) + 1
            col = m.start() - (text.rfind("\n", 0, m.start()) + 1) + 1
        else:
            line, col = 1, 1
        return lambda msg: ParseError(f"{key}: {msg}", line, col)

    return where


def parse(text: str, field_override: FieldSpec | None = None, check: bool = True,
          default_field: FieldSpec | None = None) -> AlgebraFile:
    """Parse a document; ``default_field`` applies when the ``field`` key is absent."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    where = _locator(text)
    if not isinstance(raw, dict):
        raise ParseError("top level must be an object")
    for key in raw:
        if key not in KEYS:
            raise where(key)("unknown key")
    for key in REQUIRED:
        if key not in raw:
            raise ParseError(f"missing required key {key!r}")
    if "field" not in raw:
        F = default_field or FieldSpec(0)
    else:
        try:
            F = FieldSpec.parse(raw["field"]) if isinstance(raw["field"], str) else None
        except (ValueError, JordanLieError) as exc:
            raise where("field")(str(exc)) from None
        if F is None:
            raise where("field")("expected a string such as 'Q' or 'F7'")
    if field_override is not None:
        F = field_override
    dim = raw["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 0:
        raise where("dim")("expected a non-negative integer")
    labels = raw.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or not all(isinstance(s, str) for s in labels) or len(labels) != dim:
            raise where("labels")(f"expected {dim} strings")
        if len(set(labels)) != dim:
            raise where("labels")("labels must be distinct")

    def vector(x, err):
        if not isinstance(x, list) or len(x) != dim:
            raise err(f"expected a vector of length {dim}")
        return F.vec(_scalar_in(F, c, err) for c in x)

    unit = vector(raw["unit"], where("unit")) if "unit" in raw else None
    err = where("sc")
    if not isinstance(raw["sc"], list):
        raise err("expected a list")
    table: dict = {}
    width = 4 if F.p else 5
    for e in raw["sc"]:
        if not isinstance(e, list) or len(e) != width:
            raise err(f"entries have {width} fields over {F}, got {e!r}")
        i, j, k = e[:3]
        if not all(isinstance(t, int) and not isinstance(t, bool) and 0 <= t < dim for t in (i, j, k)):
            raise err(f"index out of range in {e!r}")
        if F.p:
            c = _scalar_in(F, e[3], err)
        else:
            if not all(isinstance(t, int) and not isinstance(t, bool) for t in e[3:]) or e[4] <= 0:
                raise err(f"bad numerator/denominator in {e!r}")
            c = F(Fraction(e[3], e[4]))
        table.setdefault((i, j), []).append((k, c))
    levi = None
    if "levi" in raw:
        err = where("levi")
        if not isinstance(raw["levi"], list):
            raise err("expected a list of blocks")
        levi = []
        for blk in raw["levi"]:
            if not isinstance(blk, dict) or set(blk) != {"size", "units"}:
                raise err("blocks are objects with 'size' and 'units'")
            n, units = blk["size"], blk["units"]
            if not isinstance(n, int) or n < 1 or not isinstance(units, list) or len(units) != n:
                raise err("units must be a size x size array")
            rows = []
            for row in units:
                if not isinstance(row, list) or len(row) != n:
                    raise err("units must be a size x size array")
                rows.append([vector(u, err) for u in row])
            levi.append(rows)
    subspaces = {}
    if "subspaces" in raw:
        err = where("subspaces")
        if not isinstance(raw["subspaces"], dict):
            raise err("expected an object of named vector lists")
        for name, vecs in raw["subspaces"].items():
            if not isinstance(vecs, list):
                raise err(f"subspace {name!r} must be a list of vectors")
            subspaces[name] = tuple(vector(v, err) for v in vecs)
    A = Algebra(F, dim, table, labels, unit=unit, levi=levi, check=check)
    return AlgebraFile(A, subspaces, levi)


def read(path, field_override: FieldSpec | None = None, check: bool = True,
         default_field: FieldSpec | None = None) -> AlgebraFile:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read(), field_override, check, default_field)
