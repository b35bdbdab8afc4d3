"""JSON structure files and element documents with exact rational entries.

A structure file holds a space spec and any subset of the named tensors::

    {
      "version": "lie2bialg-structure/1",
      "space": {"dim_g": 3, "dim_theta": 1, "labels_g": [...], "labels_theta": [...]},
      "tensors": {"bracket": [[["0", "0", "0"], ...]], ...}
    }

Entries are rational strings such as ``"-1/2"`` (JSON integers are also
accepted; floats never are). An absent tensor is zero. ``dual_bracket`` and
``dual_action`` describe the crossed module g* -> theta* directly and must
agree with ``delta`` and ``omega`` when both are given.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

import numpy as np

from . import tensors as T
from .crossed import (
    BialgebraCrossedModule,
    DeltaOmega,
    LieAlgebraCrossedModule,
    delta_omega_to_dual_cm,
    dual_cm_to_delta_omega,
)
from .graded import SpaceSpec
from .lie import LieBialgebra
from .structures import (
    ALGEBRA_FIELDS,
    COALGEBRA_FIELDS,
    BialgebraElement,
    Lie2AlgebraData,
    Lie2CoalgebraData,
    field_shape,
    validate_alternating,
)
from .symalg import SymElement, parse_element

STRUCTURE_VERSION = "lie2bialg-structure/1"
ELEMENT_VERSION = "lie2bialg-element/1"
BIALGEBRA_VERSION = "lie2bialg-liebialgebra/1"

MAP_KEYS = ("phi", "bracket", "action", "homotopy_h", "delta", "omega", "eta")
DUAL_CM_KEYS = ("dual_bracket", "dual_action")
TENSOR_KEYS = MAP_KEYS + DUAL_CM_KEYS
CM_KEYS = ("phi", "bracket", "action") + DUAL_CM_KEYS

_SPACE_KEYS = ("dim_g", "dim_theta", "labels_g", "labels_theta")
_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


class FileFormatError(ValueError):
    """Malformed input; ``where`` names the line or field at fault."""

    def __init__(self, message: str, where: str = ""):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where


def tensor_shape(space: SpaceSpec, name: str) -> tuple[int, ...]:
    m, n = space.dim_g, space.dim_theta
    if name == "dual_bracket":
        return (n, n, n)
    if name == "dual_action":
        return (n, m, m)
    return field_shape(space, name)


# -- scalars -------------------------------------------------------------------

def _parse_scalar(value: Any, where: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise FileFormatError(f"expected an exact rational string, got {json.dumps(value)}", where)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL_RE.match(value.strip()):
        q = Fraction(value.strip())
        return q
    raise FileFormatError(f"expected a rational like \"-3/4\", got {json.dumps(value)}", where)


def format_scalar(q: Fraction) -> str:
    return str(Fraction(q))


def _parse_tensor(value: Any, shape: tuple[int, ...], where: str) -> np.ndarray:
    out = T.fzeros(shape)

    def walk(v, idx: tuple[int, ...]):
        depth = len(idx)
        here = where + "".join(f"[{i}]" for i in idx)
        if depth == len(shape):
            out[idx] = _parse_scalar(v, here)
            return
        if not isinstance(v, list):
            raise FileFormatError(f"expected a list of length {shape[depth]}", here)
        if len(v) != shape[depth]:
            raise FileFormatError(f"expected length {shape[depth]}, got {len(v)}", here)
        for i, item in enumerate(v):
            walk(item, idx + (i,))

    walk(value, ())
    return out


def _dump_tensor(t: np.ndarray, indent: int) -> str:
    if t.ndim == 1:
        return "[" + ", ".join(json.dumps(format_scalar(v)) for v in t) + "]"
    if t.shape[0] == 0:
        return "[]"
    pad = " " * (indent + 2)
    inner = (",\n" + pad).join(_dump_tensor(t[i], indent + 2) for i in range(t.shape[0]))
    return "[\n" + pad + inner + "\n" + " " * indent + "]"


# -- space ---------------------------------------------------------------------

def _check_keys(obj: Any, allowed, where: str, required=()) -> None:
    if not isinstance(obj, dict):
        raise FileFormatError("expected an object", where)
    for k in obj:
        if k not in allowed:
            raise FileFormatError(f"unknown key {k!r} (allowed: {', '.join(allowed)})", where)
    for k in required:
        if k not in obj:
            raise FileFormatError(f"missing key {k!r}", where)


def parse_space(obj: Any, where: str = "space") -> SpaceSpec:
    _check_keys(obj, _SPACE_KEYS, where, required=("dim_g", "dim_theta"))
    dims = []
    for k in ("dim_g", "dim_theta"):
        v = obj[k]
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise FileFormatError("expected a nonnegative integer", f"{where}.{k}")
        dims.append(v)
    labels = []
    for k in ("labels_g", "labels_theta"):
        v = obj.get(k)
        if v is not None and (not isinstance(v, list) or not all(isinstance(s, str) for s in v)):
            raise FileFormatError("expected a list of strings", f"{where}.{k}")
        labels.append(tuple(v) if v is not None else None)
    try:
        return SpaceSpec(dims[0], dims[1], labels[0], labels[1])
    except ValueError as exc:
        raise FileFormatError(str(exc), where) from None


def space_to_json(space: SpaceSpec) -> dict:
    out: dict[str, Any] = {"dim_g": space.dim_g, "dim_theta": space.dim_theta}
    if space.labels_g is not None:
        out["labels_g"] = list(space.labels_g)
    if space.labels_theta is not None:
        out["labels_theta"] = list(space.labels_theta)
    return out


def _load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None


def _version(doc: dict, expected: str) -> None:
    if doc.get("version") != expected:
        raise FileFormatError(f"expected version {expected!r}, got {doc.get('version')!r}", "version")


# -- structure files -----------------------------------------------------------

@dataclass(eq=False)
class StructureFile:
    space: SpaceSpec
    tensors: dict[str, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        for name, t in list(self.tensors.items()):
            if name not in TENSOR_KEYS:
                raise FileFormatError(f"unknown tensor {name!r}", f"tensors.{name}")
            shape = tensor_shape(self.space, name)
            try:
                self.tensors[name] = T.farray(t, shape)
            except (ValueError, TypeError) as exc:
                raise FileFormatError(str(exc), f"tensors.{name}") from None
            try:
                if name == "dual_bracket":
                    bad = T.alternation_defect(self.tensors[name], (0, 1))
                    if bad:
                        raise ValueError(f"dual_bracket is not alternating in slots (0, 1): first bad entry {bad[0]}")
                elif name in MAP_KEYS:
                    validate_alternating(name, self.tensors[name])
            except ValueError as exc:
                raise FileFormatError(str(exc), f"tensors.{name}") from None
        self._check_dual_consistency()

    def get(self, name: str) -> np.ndarray:
        if name in self.tensors:
            return self.tensors[name]
        if name in ("delta", "omega") and any(k in self.tensors for k in DUAL_CM_KEYS):
            return getattr(self._delta_omega_from_dual_keys(), name)
        if name in DUAL_CM_KEYS and any(k in self.tensors for k in ("delta", "omega")):
            cm = delta_omega_to_dual_cm(DeltaOmega(self.get("delta"), self.get("omega")), self.get("phi"),
                                        check=False)
            return cm.lie_g.copy() if name == "dual_bracket" else cm.action.copy()
        return T.fzeros(tensor_shape(self.space, name))

    def has(self, name: str) -> bool:
        return name in self.tensors

    def _delta_omega_from_dual_keys(self) -> DeltaOmega:
        dual = self._raw_dual_cm()
        return dual_cm_to_delta_omega(dual)

    def _raw_dual_cm(self) -> LieAlgebraCrossedModule:
        n = self.space.dim_theta
        m = self.space.dim_g
        lie_ts = self.tensors.get("dual_bracket", T.fzeros((n, n, n)))
        action = self.tensors.get("dual_action", T.fzeros((n, m, m)))
        dual_phi = -self.get("phi").T
        lie_gs = T.einsum("ai,ajk->ijk", dual_phi, action)
        return LieAlgebraCrossedModule(lie_gs, lie_ts, dual_phi.copy(), action, ("ts", "gs"))

    def _check_dual_consistency(self) -> None:
        if not any(k in self.tensors for k in DUAL_CM_KEYS):
            return
        if not any(k in self.tensors for k in ("delta", "omega")):
            return
        d = self._delta_omega_from_dual_keys()
        for name in ("delta", "omega"):
            given = self.tensors.get(name, T.fzeros(tensor_shape(self.space, name)))
            if not T.equal(given, getattr(d, name)):
                raise FileFormatError(f"{name} disagrees with dual_bracket/dual_action", f"tensors.{name}")

    # -- readings ----------------------------------------------------------

    def algebra(self) -> Lie2AlgebraData:
        return Lie2AlgebraData(self.space, **{f: self.get(f) for f in ALGEBRA_FIELDS})

    def coalgebra(self) -> Lie2CoalgebraData:
        return Lie2CoalgebraData(self.space, **{f: self.get(f) for f in COALGEBRA_FIELDS})

    def is_strict(self) -> bool:
        return T.is_zero(self.get("homotopy_h")) and T.is_zero(self.get("eta"))

    def crossed_module(self) -> LieAlgebraCrossedModule:
        """theta -> g with the induced source bracket [u, v] = phi(u) ▷ v."""
        phi, action = self.get("phi"), self.get("action")
        lie_theta = T.einsum("ma,mvb->avb", phi, action)
        return LieAlgebraCrossedModule(lie_theta, self.get("bracket"), phi, action)

    def dual_crossed_module(self) -> LieAlgebraCrossedModule:
        return delta_omega_to_dual_cm(DeltaOmega(self.get("delta"), self.get("omega")), self.get("phi"), check=False)

    def bialgebra_cm(self) -> BialgebraCrossedModule:
        return BialgebraCrossedModule(self.crossed_module(), self.dual_crossed_module())

    def __eq__(self, other) -> bool:
        if not isinstance(other, StructureFile) or self.space != other.space:
            return False
        if set(self.tensors) != set(other.tensors):
            return False
        return all(T.equal(self.tensors[k], other.tensors[k]) for k in self.tensors)

    __hash__ = object.__hash__


def parse_structure_file(text: str) -> StructureFile:
    doc = _load_json(text)
    _check_keys(doc, ("version", "space", "tensors"), "document", required=("version", "space"))
    _version(doc, STRUCTURE_VERSION)
    space = parse_space(doc["space"])
    raw = doc.get("tensors", {})
    _check_keys(raw, TENSOR_KEYS, "tensors")
    tensors = {}
    for name in TENSOR_KEYS:
        if name in raw:
            tensors[name] = _parse_tensor(raw[name], tensor_shape(space, name), f"tensors.{name}")
    return StructureFile(space, tensors)


def serialize_structure_file(sf: StructureFile) -> str:
    lines = ["{", f'  "version": {json.dumps(STRUCTURE_VERSION)},',
             f'  "space": {json.dumps(space_to_json(sf.space), ensure_ascii=False)},']
    names = [k for k in TENSOR_KEYS if k in sf.tensors]
    if not names:
        lines.append('  "tensors": {}')
    else:
        lines.append('  "tensors": {')
        body = [f'    {json.dumps(k)}: {_dump_tensor(sf.tensors[k], 4)}' for k in names]
        lines.append(",\n".join(body))
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- canonical forms and constructors ------------------------------------------

def maps_file(alg: Lie2AlgebraData, coalg: Lie2CoalgebraData) -> StructureFile:
    """All seven structure maps, zeros included."""
    tensors = {f: getattr(alg, f) for f in ALGEBRA_FIELDS}
    tensors.update({f: getattr(coalg, f) for f in COALGEBRA_FIELDS if f != "phi"})
    return StructureFile(alg.space, tensors)


def bcm_file(bcm: BialgebraCrossedModule, space: Optional[SpaceSpec] = None) -> StructureFile:
    """The generating data of a Lie bialgebra crossed module, zeros included."""
    space = space or SpaceSpec(bcm.dim_g, bcm.dim_theta)
    return StructureFile(space, {
        "phi": bcm.cm.phi, "bracket": bcm.cm.lie_g, "action": bcm.cm.action,
        "dual_bracket": bcm.dual_cm.lie_g, "dual_action": bcm.dual_cm.action,
    })


def canonical_maps(sf: StructureFile) -> StructureFile:
    return maps_file(sf.algebra(), sf.coalgebra())


def canonical_cm(sf: StructureFile) -> StructureFile:
    return StructureFile(sf.space, {k: sf.get(k) for k in CM_KEYS})


# -- element documents ---------------------------------------------------------

def _monomial_text(m) -> str:
    return "*".join(str(g) for g in m) if m else "1"


def serialize_element(e: SymElement) -> str:
    terms = [[format_scalar(c), _monomial_text(m)] for m, c in sorted(e.items())]
    lines = ["{", f'  "version": {json.dumps(ELEMENT_VERSION)},',
             f'  "space": {json.dumps(space_to_json(e.space), ensure_ascii=False)},']
    if not terms:
        lines.append('  "terms": []')
    else:
        lines.append('  "terms": [')
        lines.append(",\n".join(f"    {json.dumps(t)}" for t in terms))
        lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_element_document(text: str) -> SymElement:
    doc = _load_json(text)
    _check_keys(doc, ("version", "space", "terms"), "document", required=("version", "space", "terms"))
    _version(doc, ELEMENT_VERSION)
    space = parse_space(doc["space"])
    if not isinstance(doc["terms"], list):
        raise FileFormatError("expected a list of [coefficient, monomial] pairs", "terms")
    out = SymElement.zero(space)
    for i, item in enumerate(doc["terms"]):
        where = f"terms[{i}]"
        if not (isinstance(item, list) and len(item) == 2 and isinstance(item[1], str)):
            raise FileFormatError("expected [coefficient, monomial]", where)
        c = _parse_scalar(item[0], where + "[0]")
        try:
            mono = parse_element(item[1], space)
        except ValueError as exc:
            raise FileFormatError(str(exc), where + "[1]") from None
        out = out + mono.scale(c)
    return out


def element_as_bialgebra(e: SymElement) -> BialgebraElement:
    try:
        return BialgebraElement(e)
    except ValueError as exc:
        raise FileFormatError(str(exc), "terms") from None


# -- Lie bialgebra seed files --------------------------------------------------

def parse_bialgebra_file(text: str) -> LieBialgebra:
    doc = _load_json(text)
    _check_keys(doc, ("version", "dim", "labels", "bracket", "dual_bracket"), "document",
                required=("version", "dim"))
    _version(doc, BIALGEBRA_VERSION)
    n = doc["dim"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise FileFormatError("expected a nonnegative integer", "dim")
    tensors = {}
    for k in ("bracket", "dual_bracket"):
        tensors[k] = _parse_tensor(doc[k], (n, n, n), k) if k in doc else T.fzeros((n, n, n))
        bad = T.alternation_defect(tensors[k], (0, 1))
        if bad:
            raise FileFormatError(f"not alternating in slots (0, 1): first bad entry {bad[0]}", k)
    labels = doc.get("labels")
    return LieBialgebra(tensors["bracket"], tensors["dual_bracket"], tuple(labels) if labels else None)


def serialize_bialgebra_file(b: LieBialgebra) -> str:
    lines = ["{", f'  "version": {json.dumps(BIALGEBRA_VERSION)},', f'  "dim": {b.dim},',
             f'  "bracket": {_dump_tensor(b.bracket, 2)},',
             f'  "dual_bracket": {_dump_tensor(b.dual_bracket, 2)}', "}"]
    return "\n".join(lines) + "\n"
