"""Ring spec files: TOML with a single [ring] table.

Quantum spaces:

    [ring]
    type = "quantum"
    field = "QQ"            # or "GF(p)"
    vars = ["x", "y"]

    [ring.q]                # defaults to 1 for missing pairs
    "1,2" = "2"             # x2 x1 = 2 x1 x2 (1-based indices, i < j)

Finite-dimensional algebras:

    [ring]
    type = "findim"
    field = "GF(2)"
    basis = ["e11", "e12", "e22"]
    unit = ["e11", "e22"]   # orthogonal idempotents summing to 1

    [ring.mul]              # missing products are zero
    "e11,e11" = "e11"
    "e11,e12" = "e12"
    "e12,e22" = "e12"
    "e22,e22" = "e22"

Unknown keys are rejected with the offending key path.
"""

from __future__ import annotations

import re

try:
    import tomllib
except ImportError:  # python < 3.11
    import tomli as tomllib

from .errors import SpecError
from .fields import Field, parse_field
from .findim import StructAlgebra, build_algebra
from .ring import QRing

_SCALAR = re.compile(r"^\s*(-)?\s*(\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_scalar(text: str, field: Field):
    """A field element from "n", "-n", "n/m" or "-n/m"."""
    m = _SCALAR.match(str(text))
    if not m:
        raise SpecError(f"bad scalar {text!r}")
    sign, num, den = m.groups()
    value = field.ratio(int(num), int(den)) if den else field.of(int(num))
    return field.neg(value) if sign else value


def _parse_combo(text: str, labels, field: Field):
    """A linear combination string like "e11 + 2*e12" over basis labels."""
    text = str(text).strip()
    combo = {}
    if text in ("0", ""):
        return combo
    for piece in re.split(r"(?=[+-])", text.replace(" ", "")):
        if not piece:
            continue
        sign = -1 if piece.startswith("-") else 1
        piece = piece.lstrip("+-")
        if "*" in piece:
            coeff_text, label = piece.split("*", 1)
            coeff = parse_scalar(coeff_text, field)
        else:
            label = piece
            coeff = field.one
        if label not in labels:
            raise SpecError(f"unknown basis label {label!r} in {text!r}")
        value = field.neg(coeff) if sign < 0 else coeff
        combo[label] = field.add(combo.get(label, field.zero), value)
    return combo


def _reject_unknown(table: dict, allowed, path: str):
    for key in table:
        if key not in allowed:
            raise SpecError("unknown key", key=f"{path}.{key}")


def load_ring_spec(path) -> QRing | StructAlgebra:
    """Load and validate a ring spec file."""
    with open(path, "rb") as fh:
        try:
            data = tomllib.load(fh)
        except tomllib.TOMLDecodeError as e:
            raise SpecError(f"not valid TOML: {e}") from e
    _reject_unknown(data, {"ring"}, "")
    if "ring" not in data:
        raise SpecError("missing [ring] table", key="ring")
    ring = data["ring"]
    kind = ring.get("type")
    if kind == "quantum":
        return _load_quantum(ring)
    if kind == "findim":
        return _load_findim(ring)
    raise SpecError(f"type must be 'quantum' or 'findim', got {kind!r}", key="ring.type")


def _load_quantum(ring: dict) -> QRing:
    _reject_unknown(ring, {"type", "field", "vars", "q"}, "ring")
    field = parse_field(_require(ring, "field"))
    names = _require(ring, "vars")
    if not isinstance(names, list) or not all(isinstance(v, str) for v in names):
        raise SpecError("vars must be a list of identifiers", key="ring.vars")
    n = len(names)
    q = {}
    for key, value in ring.get("q", {}).items():
        m = re.match(r"^(\d+),(\d+)$", key.strip())
        if not m:
            raise SpecError('q keys look like "i,j"', key=f"ring.q.{key}")
        i, j = int(m.group(1)), int(m.group(2))
        if not (1 <= i < j <= n):
            raise SpecError(
                f"need 1 <= i < j <= {n}", key=f"ring.q.{key}"
            )
        try:
            scalar = parse_scalar(value, field)
        except SpecError as e:
            raise SpecError(str(e), key=f"ring.q.{key}") from e
        if field.is_zero(scalar):
            raise SpecError("commutation scalars must be nonzero", key=f"ring.q.{key}")
        q[(i - 1, j - 1)] = scalar
    try:
        return QRing(tuple(names), field, q)
    except SpecError as e:
        raise SpecError(str(e), key="ring") from e


def _load_findim(ring: dict) -> StructAlgebra:
    _reject_unknown(ring, {"type", "field", "basis", "unit", "mul"}, "ring")
    field = parse_field(_require(ring, "field"))
    labels = _require(ring, "basis")
    if not isinstance(labels, list) or not all(isinstance(v, str) for v in labels):
        raise SpecError("basis must be a list of labels", key="ring.basis")
    unit = _require(ring, "unit")
    if not isinstance(unit, list):
        raise SpecError("unit must be a list of labels", key="ring.unit")
    products = {}
    for key, value in ring.get("mul", {}).items():
        parts = key.split(",")
        if len(parts) != 2:
            raise SpecError('mul keys look like "bi,bj"', key=f"ring.mul.{key}")
        la, lb = parts[0].strip(), parts[1].strip()
        if la not in labels or lb not in labels:
            raise SpecError("unknown basis label", key=f"ring.mul.{key}")
        try:
            products[(la, lb)] = _parse_combo(value, labels, field)
        except SpecError as e:
            raise SpecError(str(e), key=f"ring.mul.{key}") from e
    return build_algebra(labels, field, products, unit)


def _require(table: dict, key: str):
    if key not in table:
        raise SpecError("required key missing", key=f"ring.{key}")
    return table[key]
