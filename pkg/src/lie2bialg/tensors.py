"""Exact structure-constant tensors: numpy object arrays of Fractions."""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product
from typing import Iterable, Optional, Sequence

import numpy as np
import sympy


def fzeros(shape: Sequence[int]) -> np.ndarray:
    out = np.empty(tuple(shape), dtype=object)
    out.fill(Fraction(0))
    return out


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(ch in text for ch in ".eE"):
            raise ValueError(f"not an exact rational: {value!r}")
        return Fraction(text)
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    if isinstance(value, np.integer):
        return Fraction(int(value))
    raise TypeError(f"cannot use {type(value).__name__} {value!r} as an exact scalar")


def farray(data, shape: Optional[Sequence[int]] = None) -> np.ndarray:
    """Fraction array from nested lists (ints, Fractions or 'p/q' strings)."""
    if data is None:
        if shape is None:
            raise ValueError("shape required for empty tensor")
        return fzeros(shape)
    arr = np.array(data, dtype=object)
    if shape is not None:
        shape = tuple(shape)
        if 0 in shape:
            if arr.size != 0:
                raise ValueError(f"expected empty tensor of shape {shape}")
            return fzeros(shape)
        if arr.shape != shape:
            raise ValueError(f"shape {arr.shape} does not match expected {shape}")
    out = np.empty(arr.shape, dtype=object)
    for idx in np.ndindex(arr.shape):
        out[idx] = to_fraction(arr[idx])
    return out


def is_zero(t: np.ndarray) -> bool:
    return all(v == 0 for v in t.flat)


def nonzero(t: np.ndarray) -> Iterable[tuple[tuple[int, ...], Fraction]]:
    for idx in np.ndindex(t.shape):
        if t[idx] != 0:
            yield idx, t[idx]


def equal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


def perm_sign(p: Sequence[int]) -> int:
    sign = 1
    p = list(p)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign
    return sign


def alternation_defect(t: np.ndarray, axes: Sequence[int]) -> list[tuple[int, ...]]:
    """Index tuples where ``t`` fails to be alternating in ``axes``."""
    bad = []
    axes = list(axes)
    for idx in np.ndindex(t.shape):
        sub = [idx[a] for a in axes]
        if len(set(sub)) < len(sub):
            if t[idx] != 0:
                bad.append(idx)
            continue
        for p in permutations(range(len(axes))):
            j = list(idx)
            for src, dst in zip(axes, p):
                j[src] = idx[axes[dst]]
            if t[tuple(j)] != perm_sign(p) * t[idx]:
                bad.append(idx)
                break
    return bad


def einsum(spec: str, *ops: np.ndarray) -> np.ndarray:
    if any(0 in op.shape for op in ops):
        out_spec = spec.split("->")[1]
        sizes = {}
        for sub, op in zip(spec.split("->")[0].split(","), ops):
            sizes.update(zip(sub, op.shape))
        return fzeros([sizes[c] for c in out_spec])
    return np.einsum(spec, *ops)


# -- exact linear algebra (sympy backs the elimination) ------------------------

def _to_sympy(m: np.ndarray) -> sympy.Matrix:
    rows, cols = m.shape
    return sympy.Matrix(rows, cols, lambda i, j: sympy.Rational(m[i, j].numerator, m[i, j].denominator))


def _from_sympy(m: sympy.Matrix) -> np.ndarray:
    out = fzeros(m.shape)
    for i, j in product(range(m.rows), range(m.cols)):
        out[i, j] = to_fraction(sympy.Rational(m[i, j]))
    return out


def rank(m: np.ndarray) -> int:
    if 0 in m.shape:
        return 0
    return _to_sympy(m).rank()


def inverse(m: np.ndarray) -> np.ndarray:
    if m.shape == (0, 0):
        return fzeros((0, 0))
    return _from_sympy(_to_sympy(m).inv())


def nullspace(m: np.ndarray) -> list[np.ndarray]:
    """Basis of {v : m v = 0} as 1-d Fraction arrays."""
    rows, cols = m.shape
    if cols == 0:
        return []
    if rows == 0:
        return [np.array([Fraction(int(i == j)) for i in range(cols)], dtype=object) for j in range(cols)]
    return [_from_sympy(v)[:, 0] for v in _to_sympy(m).nullspace()]


def det(m: np.ndarray) -> Fraction:
    if m.shape == (0, 0):
        return Fraction(1)
    return to_fraction(sympy.Rational(_to_sympy(m).det()))


def vector_terms(vec: Sequence[Fraction], names: Sequence[str]) -> str:
    """Render a coordinate vector as e.g. ``2 g0 - 1/2 t1``."""
    parts = []
    for c, name in zip(vec, names):
        if c == 0:
            continue
        mag = abs(c)
        body = name if mag == 1 else f"{mag} {name}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts) or "0"
