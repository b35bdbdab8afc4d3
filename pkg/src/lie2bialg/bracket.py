"""The degree-3 big bracket on S(V[2] + V*[1]) and its derived maps.

On generators ``{v, e} = (-1)^{|v|} <v, e>`` for v in V[2], e in V*[1], and
brackets within V[2] or within V*[1] vanish. The reversed order is forced by
shifted antisymmetry,

    {e1, e2} = -(-1)^{(|e1|+3)(|e2|+3)} {e2, e1},

and the bracket is extended to monomials as a biderivation: each term of
``{m1, m2}`` contracts one factor of ``m1`` against its dual partner in ``m2``.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .graded import Generator, Role, SpaceSpec, swap_generator
from .symalg import Monomial, SymElement, monomial_degree, normalize


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


@lru_cache(maxsize=None)
def generator_bracket(a: Generator, b: Generator) -> int:
    if a.role.is_dual == b.role.is_dual or b != a.partner:
        return 0
    if not a.role.is_dual:
        return _sign(a.degree)
    # {e, v} from {v, e} through shifted antisymmetry
    return -_sign((a.degree + 3) * (b.degree + 3)) * _sign(b.degree)


@lru_cache(maxsize=1 << 18)
def _bracket_monomials(m1: Monomial, m2: Monomial) -> tuple[tuple[Monomial, int], ...]:
    deg2 = monomial_degree(m2)
    # parity of the factors to the right of position i in m1
    tail = [0] * (len(m1) + 1)
    for i in range(len(m1) - 1, -1, -1):
        tail[i] = tail[i + 1] + m1[i].degree
    out: dict[Monomial, int] = defaultdict(int)
    for i, a in enumerate(m1):
        partner = a.partner
        if partner not in m2:
            continue
        sign_i = _sign((deg2 + 3) * tail[i + 1])
        head = 0
        for j, b in enumerate(m2):
            if b == partner:
                coeff = generator_bracket(a, b) * sign_i * _sign((a.degree + 3) * head)
                res = normalize(m1[:i] + m2[:j] + m2[j + 1:] + m1[i + 1:])
                if res is not None:
                    m, s = res
                    out[m] += s * coeff
            head += b.degree
    return tuple((m, c) for m, c in out.items() if c)


def _index_by_generator(e: SymElement) -> dict[Generator, list[tuple[Monomial, Fraction]]]:
    index: dict[Generator, list[tuple[Monomial, Fraction]]] = defaultdict(list)
    for m, c in e.terms.items():
        for g in set(m):
            index[g].append((m, c))
    return index


def big_bracket(e1: SymElement, e2: SymElement) -> SymElement:
    """{e1, e2}, bilinear; only monomial pairs sharing a dual pair are visited."""
    e1._check_space(e2)
    index = _index_by_generator(e2)
    terms: dict[Monomial, Fraction] = defaultdict(Fraction)
    for m1, c1 in e1.terms.items():
        seen: set[Monomial] = set()
        for a in set(m1):
            for m2, c2 in index.get(a.partner, ()):
                if m2 in seen:
                    continue
                seen.add(m2)
                c = c1 * c2
                for m, v in _bracket_monomials(m1, m2):
                    terms[m] += c * v
    return SymElement(e1.space, terms)


def _shifted(e: SymElement) -> int:
    return e.degree() + 3


def jacobi_defect(e1: SymElement, e2: SymElement, e3: SymElement) -> SymElement:
    """{e1,{e2,e3}} - {{e1,e2},e3} - (-1)^{(|e1|+3)(|e2|+3)} {e2,{e1,e3}}."""
    if not e1 or not e2 or not e3:
        return SymElement.zero(e1.space)
    out = big_bracket(e1, big_bracket(e2, e3)) - big_bracket(big_bracket(e1, e2), e3)
    swap = big_bracket(e2, big_bracket(e1, e3))
    if _sign(_shifted(e1) * _shifted(e2)) > 0:
        return out - swap
    return out + swap


def dual_count(e: SymElement) -> set[int]:
    return {sum(1 for g in m if g.role.is_dual) for m in e.terms}


def primal_count(e: SymElement) -> set[int]:
    return {sum(1 for g in m if not g.role.is_dual) for m in e.terms}


def derived_map(F: SymElement, args: Sequence[SymElement], dual: bool = False) -> SymElement:
    """eps_F(x1, ..., xq) = {...{{F, x1}, x2}, ..., xq}.

    With ``dual=False`` the arguments must lie in S(V[2]) and F must have
    exactly ``len(args)`` dual factors per monomial; ``dual=True`` is the mirror
    reading with arguments in S(V*[1]), used for the coalgebra side.
    """
    for x in args:
        x._check_space(F)
        if any(r.is_dual != dual for r in x.roles()):
            side = "g*/theta*" if dual else "g/theta"
            raise ValueError(f"argument {x} is not in the subalgebra generated by {side}")
    counts = primal_count(F) if dual else dual_count(F)
    if counts and counts != {len(args)}:
        raise ValueError(f"arity mismatch: F takes {sorted(counts)} arguments, got {len(args)}")
    out = F
    for x in args:
        out = big_bracket(out, x)
    return out


def dual_arity(F: SymElement, dual: bool = False) -> int:
    counts = primal_count(F) if dual else dual_count(F)
    if len(counts) > 1:
        raise ValueError(f"element mixes arities {sorted(counts)}")
    return counts.pop() if counts else 0


def shuffles(j: int, n: int):
    """(j, n-j)-shuffles as index tuples sigma(1..n)."""
    for head in combinations(range(n), j):
        rest = tuple(i for i in range(n) if i not in head)
        yield head + rest


def koszul_sign(order: Sequence[int], shifted_parity: Sequence[int]) -> int:
    """Sign of reordering x_1..x_n into x_order[0]..; each swap costs (|xa|+3)(|xb|+3)."""
    sign = 1
    for p in range(len(order)):
        for q in range(p + 1, len(order)):
            a, b = order[p], order[q]
            if a > b and shifted_parity[a] and shifted_parity[b]:
                sign = -sign
    return sign


def composition_defect(E: SymElement, F: SymElement, args: Sequence[SymElement]) -> SymElement:
    """eps_{E,F}(args) minus the double shuffle expansion in eps_E and eps_F.

    E takes l arguments, F takes q, and n = q + l - 1 arguments are supplied.
    """
    space = E.space
    if not E or not F:
        return SymElement.zero(space)
    l, q = dual_arity(E), dual_arity(F)
    n = q + l - 1
    if n < 0 or len(args) != n:
        raise ValueError(f"arity mismatch: expected {max(n, 0)} arguments, got {len(args)}")
    par = [(x.degree() + 3) % 2 if x else 0 for x in args]
    lhs = derived_map(big_bracket(E, F), args)

    def shuffle_sum(outer: SymElement, inner: SymElement, j: int) -> SymElement:
        total = SymElement.zero(space)
        if j > n:
            return total
        for sigma in shuffles(j, n):
            x = [args[i] for i in sigma]
            inner_val = derived_map(inner, x[:j])
            term = derived_map(outer, [inner_val] + x[j:]) if inner_val else inner_val
            total = total + term.scale(koszul_sign(sigma, par))
        return total

    rhs = shuffle_sum(E, F, q) if l >= 1 else SymElement.zero(space)
    if q >= 1:
        second = shuffle_sum(F, E, l)
        if _sign(_shifted(E) * _shifted(F)) > 0:
            rhs = rhs - second
        else:
            rhs = rhs + second
    return lhs - rhs


def swap_element(e: SymElement) -> SymElement:
    """Image under g <-> theta*, theta <-> g*; a bracket automorphism onto the swapped space."""
    space = e.space.swapped()
    terms: dict[Monomial, Fraction] = defaultdict(Fraction)
    for m, c in e.terms.items():
        res = normalize(swap_generator(g) for g in m)
        if res is not None:
            mm, s = res
            terms[mm] += s * c
    return SymElement(space, terms)


def generator_element(space: SpaceSpec, role: Role, index: int) -> SymElement:
    return SymElement.gen(space, role, index)
