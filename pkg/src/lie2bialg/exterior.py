"""Classical exterior algebra over a finite basis (e.g. of g⋉θ).

Every factor is odd for the wedge sign rule, so the monomial canonical form
is the same insertion sort as in the graded symmetric algebra, with a
different parity predicate. Basis vectors are integers 0..dim-1.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from itertools import combinations
from typing import Callable, Mapping, Optional, Sequence

import numpy as np

from .symalg import sort_with_sign
from .tensors import to_fraction

Wedge = tuple[int, ...]


def _always_odd(_: int) -> bool:
    return True


def normalize_wedge(raw: Sequence[int]) -> Optional[tuple[Wedge, int]]:
    return sort_with_sign(tuple(raw), _always_odd)


class ExteriorElement:
    """Finite combination of wedge monomials e_{i1}∧...∧e_{ik} with i1<...<ik."""

    __slots__ = ("dim", "terms", "labels")

    def __init__(self, dim: int, terms: Optional[Mapping[Wedge, object]] = None,
                 labels: Optional[Sequence[str]] = None):
        self.dim = dim
        self.labels = tuple(labels) if labels is not None else tuple(f"e{i}" for i in range(dim))
        clean: dict[Wedge, Fraction] = defaultdict(Fraction)
        for raw, c in (terms or {}).items():
            c = to_fraction(c)
            if c == 0:
                continue
            if any(not 0 <= i < dim for i in raw):
                raise ValueError(f"basis index out of range in {raw}")
            res = normalize_wedge(raw)
            if res is not None:
                clean[res[0]] += res[1] * c
        self.terms = {m: c for m, c in clean.items() if c != 0}

    @classmethod
    def basis(cls, dim: int, i: int, labels=None) -> "ExteriorElement":
        return cls(dim, {(i,): 1}, labels)

    @classmethod
    def vector(cls, coords: Sequence, labels=None) -> "ExteriorElement":
        return cls(len(coords), {(i,): c for i, c in enumerate(coords)}, labels)

    def _like(self, terms) -> "ExteriorElement":
        return ExteriorElement(self.dim, terms, self.labels)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, ExteriorElement) and self.dim == other.dim and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.dim, frozenset(self.terms.items())))

    def __add__(self, other: "ExteriorElement") -> "ExteriorElement":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return self._like(out)

    def __neg__(self) -> "ExteriorElement":
        return self._like({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "ExteriorElement") -> "ExteriorElement":
        return self + (-other)

    def scale(self, c) -> "ExteriorElement":
        c = to_fraction(c)
        return self._like({m: c * v for m, v in self.terms.items()})

    def wedge(self, other: "ExteriorElement") -> "ExteriorElement":
        out: dict[Wedge, Fraction] = defaultdict(Fraction)
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                res = normalize_wedge(m1 + m2)
                if res is not None:
                    out[res[0]] += res[1] * c1 * c2
        return self._like(out)

    def degrees(self) -> set[int]:
        return {len(m) for m in self.terms}

    def filter(self, keep: Callable[[Wedge], bool]) -> "ExteriorElement":
        return self._like({m: c for m, c in self.terms.items() if keep(m)})

    def coefficient(self, m: Wedge) -> Fraction:
        return self.terms.get(tuple(m), Fraction(0))

    def interior(self, covector: Sequence) -> "ExteriorElement":
        """Contraction by a covector, as an antiderivation from the left."""
        out: dict[Wedge, Fraction] = defaultdict(Fraction)
        for m, c in self.terms.items():
            for pos, i in enumerate(m):
                a = covector[i]
                if a != 0:
                    out[m[:pos] + m[pos + 1:]] += (-1) ** pos * a * c
        return self._like(out)

    def scalar(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (len(m), m)):
            c = self.terms[m]
            body = "∧".join(self.labels[i] for i in m) or "1"
            mag = abs(c)
            if m and mag == 1:
                txt = body
            elif m:
                txt = f"{mag} {body}"
            else:
                txt = str(mag)
            if not parts:
                parts.append(("-" if c < 0 else "") + txt)
            else:
                parts.append((" - " if c < 0 else " + ") + txt)
        return "".join(parts)

    __str__ = render

    def __repr__(self) -> str:
        return f"ExteriorElement({self.render()})"


def pair(w: ExteriorElement, covectors: Sequence[Sequence]) -> Fraction:
    """<a1∧...∧ak, α1∧...∧αk> = det[<ai, αj>]."""
    for alpha in covectors:
        w = w.interior(alpha)
    return w.scalar()


def extend_derivation(w: ExteriorElement, images: Callable[[int], ExteriorElement], odd: bool) -> ExteriorElement:
    """Apply the (even or odd) derivation determined by its values on basis vectors."""
    out = ExteriorElement(w.dim, labels=w.labels)
    cache: dict[int, ExteriorElement] = {}
    for m, c in w.terms.items():
        for pos, i in enumerate(m):
            if i not in cache:
                cache[i] = images(i)
            img = cache[i]
            if not img:
                continue
            left = ExteriorElement(w.dim, {m[:pos]: 1}, w.labels)
            right = ExteriorElement(w.dim, {m[pos + 1:]: 1}, w.labels)
            term = left.wedge(img).wedge(right)
            if odd and pos % 2:
                term = -term
            out = out + term.scale(c)
    return out


def adjoint_derivation(structure: np.ndarray, coords: Sequence) -> Callable[[int], ExteriorElement]:
    """Basis images of ad_E for E with the given coordinates, bracket [e_p,e_q] = Σ structure[p,q,r] e_r."""
    dim = structure.shape[0]

    def image(q: int) -> ExteriorElement:
        vec = [sum((coords[p] * structure[p, q, r] for p in range(dim) if coords[p] != 0), Fraction(0))
               for r in range(dim)]
        return ExteriorElement.vector(vec)

    return image


def act(structure: np.ndarray, coords: Sequence, w: ExteriorElement) -> ExteriorElement:
    """Adjoint action of a Lie algebra element on a wedge element (even derivation)."""
    img = adjoint_derivation(structure, coords)
    return extend_derivation(w, lambda i: ExteriorElement(w.dim, img(i).terms, w.labels), odd=False)


def wedge2_from_tensor(t: np.ndarray, labels=None) -> ExteriorElement:
    """Σ_{i<j} t[i,j] e_i∧e_j for a skew matrix t (the determinant pairing convention)."""
    n = t.shape[0]
    return ExteriorElement(n, {(i, j): t[i, j] for i, j in combinations(range(n), 2)}, labels)
