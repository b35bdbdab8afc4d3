"""Canonical-form arithmetic in the graded symmetric algebra S(V[2] + V*[1]).

Monomials are tuples of generators sorted in the global order
``g* < theta* < theta < g`` (index-minor). Reordering factors picks up the
Koszul sign (-1)^{|a||b|} per adjacent transposition and a repeated odd
generator kills the monomial. The 1/2 in the symmetrization is absorbed in
the canonical form: a monomial is stored once with a plain rational
coefficient.
"""

from __future__ import annotations

import re
from collections import defaultdict
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping, Optional, Sequence, TypeVar, Union

from .graded import TOKEN_ROLES, Generator, Role, SpaceSpec

Monomial = tuple[Generator, ...]
Scalar = Union[int, Fraction]
T = TypeVar("T", bound=Hashable)


def sort_with_sign(items: Sequence[T], is_odd: Callable[[T], bool]) -> Optional[tuple[tuple[T, ...], int]]:
    """Sort ``items`` by adjacent transpositions of graded-commuting factors.

    Returns the sorted tuple and the accumulated sign, or ``None`` if an odd
    factor occurs twice.
    """
    out = list(items)
    sign = 1
    # insertion sort: each swap is one adjacent transposition
    for i in range(1, len(out)):
        j = i
        while j > 0 and out[j - 1] > out[j]:
            if is_odd(out[j - 1]) and is_odd(out[j]):
                sign = -sign
            out[j - 1], out[j] = out[j], out[j - 1]
            j -= 1
    for a, b in zip(out, out[1:]):
        if a == b and is_odd(a):
            return None
    return tuple(out), sign


def _gen_odd(gen: Generator) -> bool:
    return gen.role.odd


def normalize(raw: Iterable[Generator]) -> Optional[tuple[Monomial, int]]:
    """Canonical monomial and Koszul sign for a product of generators, or None (zero)."""
    return sort_with_sign(tuple(raw), _gen_odd)


def monomial_degree(m: Monomial) -> int:
    return sum(g.role.degree for g in m)


def monomial_odd(m: Monomial) -> bool:
    return sum(1 for g in m if g.role.odd) % 2 == 1


def signature(m: Monomial) -> tuple[int, int, int, int]:
    """Role counts (p, q, k, l) = (#g, #g*, #theta, #theta*), as in eps^{pq}_{kl}."""
    counts = [0, 0, 0, 0]
    for g in m:
        counts[g.role] += 1
    return counts[Role.G], counts[Role.GSTAR], counts[Role.THETA], counts[Role.THETASTAR]


def _fmt_scalar(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render_monomial(m: Monomial, sep: str = "⊙") -> str:
    return sep.join(str(g) for g in m)


class SymElement:
    """A finite rational combination of canonical monomials over a fixed space."""

    __slots__ = ("space", "terms", "_hash")

    def __init__(self, space: SpaceSpec, terms: Optional[Mapping[Monomial, Scalar]] = None):
        self.space = space
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = Fraction(c)
        self.terms = clean
        self._hash = None

    # construction -----------------------------------------------------------
    @classmethod
    def zero(cls, space: SpaceSpec) -> "SymElement":
        return cls(space)

    @classmethod
    def one(cls, space: SpaceSpec, c: Scalar = 1) -> "SymElement":
        return cls(space, {(): c})

    @classmethod
    def from_generators(cls, space: SpaceSpec, gens: Iterable[Generator], c: Scalar = 1) -> "SymElement":
        gens = tuple(gens)
        for g in gens:
            space.check(g)
        res = normalize(gens)
        if res is None:
            return cls(space)
        m, sign = res
        return cls(space, {m: sign * Fraction(c)})

    @classmethod
    def gen(cls, space: SpaceSpec, role: Role, index: int, c: Scalar = 1) -> "SymElement":
        return cls.from_generators(space, [Generator(role, index)], c)

    @classmethod
    def _raw(cls, space: SpaceSpec, terms: dict[Monomial, Fraction]) -> "SymElement":
        # terms must already be canonical with no zero coefficients
        out = cls.__new__(cls)
        out.space = space
        out.terms = terms
        out._hash = None
        return out

    # queries ------------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def items(self):
        return self.terms.items()

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def degrees(self) -> set[int]:
        return {monomial_degree(m) for m in self.terms}

    def degree(self) -> int:
        """Degree of a homogeneous nonzero element."""
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError(f"element is not homogeneous (degrees {sorted(degs)})")
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def signatures(self) -> set[tuple[int, int, int, int]]:
        return {signature(m) for m in self.terms}

    def roles(self) -> set[Role]:
        return {g.role for m in self.terms for g in m}

    # arithmetic -------------------------------------------------------------
    def _check_space(self, other: "SymElement") -> None:
        if not self.space.same_dims(other.space):
            raise ValueError(f"mixed ambient spaces: {self.space} vs {other.space}")

    def __add__(self, other: "SymElement") -> "SymElement":
        if not isinstance(other, SymElement):
            return NotImplemented
        self._check_space(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            v = terms.get(m, 0) + c
            if v:
                terms[m] = v
            else:
                terms.pop(m, None)
        return SymElement._raw(self.space, terms)

    def __neg__(self) -> "SymElement":
        return SymElement._raw(self.space, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "SymElement") -> "SymElement":
        if not isinstance(other, SymElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c: Scalar) -> "SymElement":
        c = Fraction(c)
        if not c:
            return SymElement(self.space)
        return SymElement._raw(self.space, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, SymElement):
            return sym_product(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, SymElement):
            return self.space.same_dims(other.space) and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({(): Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.space.dim_g, self.space.dim_theta, frozenset(self.terms.items())))
        return self._hash

    # views --------------------------------------------------------------------
    def filter(self, keep: Callable[[Monomial], bool]) -> "SymElement":
        return SymElement._raw(self.space, {m: c for m, c in self.terms.items() if keep(m)})

    def render(self, sep: str = "⊙") -> str:
        return render(self, sep)

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"SymElement({render(self)!r})"


def sym_product(a: SymElement, b: SymElement) -> SymElement:
    a._check_space(b)
    terms: dict[Monomial, Fraction] = defaultdict(Fraction)
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            res = normalize(ma + mb)
            if res is None:
                continue
            m, sign = res
            terms[m] += sign * ca * cb
    return SymElement(a.space, terms)


def degree_decompose(e: SymElement) -> dict[int, SymElement]:
    parts: dict[int, dict[Monomial, Fraction]] = defaultdict(dict)
    for m, c in e.terms.items():
        parts[monomial_degree(m)][m] = c
    return {d: SymElement._raw(e.space, t) for d, t in sorted(parts.items())}


def component(e: SymElement, p: int, q: int, k: int, l: int) -> SymElement:
    """Sub-sum of monomials with exactly p g-, q g*-, k theta- and l theta*-factors."""
    sig = (p, q, k, l)
    return e.filter(lambda m: signature(m) == sig)


def render(e: SymElement, sep: str = "⊙") -> str:
    if not e.terms:
        return "0"
    parts = []
    for m in sorted(e.terms):
        c = e.terms[m]
        mag = abs(c)
        if not m:
            body = _fmt_scalar(mag)
        elif mag == 1:
            body = render_monomial(m, sep)
        else:
            body = f"{_fmt_scalar(mag)} {render_monomial(m, sep)}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


# -- tiny expression grammar ---------------------------------------------------

class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_TOKEN_RE = re.compile(r"(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z][A-Za-z_0-9]*)|(?P<op>[-+*()⊙])")
_GEN_RE = re.compile(r"^(gs|ts|g|t)(\d+)$")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        mt = _TOKEN_RE.match(text, pos)
        if not mt:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = mt.lastgroup
        tokens.append((kind, mt.group(kind), mt.start(kind)))
        pos = mt.end()
    tokens.append(("end", "", len(text)))
    return tokens


def parse_element(text: str, space: SpaceSpec, names: Optional[Mapping[str, SymElement]] = None) -> SymElement:
    """Parse e.g. ``"2 gs0*gs1*g0 - 1/3 t0⊙g1 + eps"`` into a SymElement.

    Generators are written g<i>, t<i>, gs<i>, ts<i>; ``names`` supplies named
    elements. Products use ``*``, ``⊙`` or juxtaposition.
    """
    names = dict(names or {})
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos]

    def take():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def expr() -> SymElement:
        out = term()
        while peek()[0] == "op" and peek()[1] in "+-":
            op = take()[1]
            rhs = term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def starts_factor(tok) -> bool:
        return tok[0] in ("num", "name") or (tok[0] == "op" and tok[1] == "(")

    def term() -> SymElement:
        out = factor()
        while True:
            tok = peek()
            if tok[0] == "op" and tok[1] in "*⊙":
                take()
                out = sym_product(out, factor())
            elif starts_factor(tok):
                out = sym_product(out, factor())
            else:
                return out

    def factor() -> SymElement:
        kind, val, at = take()
        if kind == "num":
            return SymElement.one(space, Fraction(val))
        if kind == "name":
            mg = _GEN_RE.match(val)
            if mg:
                gen = Generator(TOKEN_ROLES[mg.group(1)], int(mg.group(2)))
                if gen.index >= space.dim(gen.role):
                    raise ParseError(f"generator {val} out of range", at)
                return SymElement.from_generators(space, [gen])
            if val in names:
                return names[val]
            raise ParseError(f"unknown name {val!r}", at)
        if kind == "op" and val == "(":
            inner = expr()
            k2, v2, at2 = take()
            if v2 != ")":
                raise ParseError("expected ')'", at2)
            return inner
        if kind == "op" and val == "-":
            return -factor()
        if kind == "end":
            raise ParseError("unexpected end of expression", at)
        raise ParseError(f"unexpected token {val!r}", at)

    result = expr()
    kind, val, at = peek()
    if kind != "end":
        raise ParseError(f"unexpected token {val!r}", at)
    return result
