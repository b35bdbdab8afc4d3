"""Random instances for property tests.

Valid Lie bialgebra crossed modules come from the trivial crossed module and
the central-quotient construction over random Lie bialgebras of dimension at
most 3; valid weak Lie 2-algebras additionally from the string construction
and from skeletal data with a free homotopy. Invalid instances change one
structure constant.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, permutations
from typing import Optional

import numpy as np

from . import tensors as T
from .crossed import BialgebraCrossedModule, LieAlgebraCrossedModule, bcm_to_data, quotient_construction
from .examples import LieAlgebraConstants, string_lie2_data, trivial_bcm
from .graded import SpaceSpec
from .lie import LieBialgebra, change_basis, change_basis_bialgebra, direct_sum_bialgebra, is_lie, verify_lie_bialgebra
from .structures import Lie2AlgebraData


def _from_brackets(dim: int, brackets: dict) -> np.ndarray:
    return LieAlgebraConstants.from_brackets(dim, brackets).constants


def lie_catalog(dim: int) -> list[np.ndarray]:
    """A few real Lie algebras of the given dimension (1 to 3)."""
    if dim == 1:
        return [T.fzeros((1, 1, 1))]
    if dim == 2:
        return [T.fzeros((2, 2, 2)), _from_brackets(2, {(0, 1): {1: 1}})]
    if dim == 3:
        return [
            T.fzeros((3, 3, 3)),
            _from_brackets(3, {(0, 1): {1: 1}}),                          # aff(1) + R
            _from_brackets(3, {(0, 1): {2: 1}}),                          # Heisenberg
            _from_brackets(3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {1: -1}}),  # so(3)
            _from_brackets(3, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}),  # sl(2)
            _from_brackets(3, {(0, 1): {1: 1}, (0, 2): {2: 1}}),
            _from_brackets(3, {(0, 1): {1: 1}, (0, 2): {2: -1}}),
            _from_brackets(3, {(0, 1): {1: 1}, (0, 2): {1: 1, 2: 1}}),
        ]
    raise ValueError("catalog covers dimensions 1 to 3")


def cocycle_space(bracket: np.ndarray) -> list[np.ndarray]:
    """Basis of 1-cocycles theta -> ∧²theta, each as a dual-bracket tensor D[r, s, k]."""
    n = bracket.shape[0]
    pairs = list(combinations(range(n), 2))
    unknowns = [(k, r, s) for k in range(n) for r, s in pairs]
    col = {u: i for i, u in enumerate(unknowns)}
    rows = []
    for p, q in combinations(range(n), 2):
        for r, s in pairs:
            row = [Fraction(0)] * len(unknowns)

            def add(k, a, b, coeff):
                if coeff == 0 or a == b:
                    return
                if a < b:
                    row[col[(k, a, b)]] += coeff
                else:
                    row[col[(k, b, a)]] -= coeff

            # delta([e_p,e_q]) at e_r∧e_s
            for m in range(n):
                add(m, r, s, bracket[p, q, m])
            # - e_p·delta(e_q) + e_q·delta(e_p)
            for sign, x, y in ((-1, p, q), (1, q, p)):
                for m in range(n):
                    add(y, m, s, sign * bracket[x, m, r])
                    add(y, r, m, sign * bracket[x, m, s])
            rows.append(row)
    if not rows:
        rows = [[Fraction(0)] * len(unknowns)]
    basis = []
    for v in T.nullspace(T.farray(rows)):
        D = T.fzeros((n, n, n))
        for (k, r, s), c in zip(unknowns, v):
            D[r, s, k] = c
            D[s, r, k] = -c
        basis.append(D)
    return basis


def _small(rng: random.Random) -> Fraction:
    return Fraction(rng.choice([-2, -1, -1, 1, 1, 2]), rng.choice([1, 1, 1, 2]))


def random_invertible(rng: random.Random, n: int) -> np.ndarray:
    while True:
        P = T.fzeros((n, n))
        for i in range(n):
            for j in range(n):
                P[i, j] = Fraction(int(i == j)) if rng.random() < 0.5 else Fraction(rng.randint(-1, 1))
        if T.det(P) != 0:
            return P


def random_lie_bialgebra(rng: random.Random, dim: Optional[int] = None, tries: int = 30) -> LieBialgebra:
    """A random Lie bialgebra of dimension <= 3, verified before it is returned."""
    dim = dim if dim is not None else rng.choice([1, 2, 2, 3, 3, 3])
    bracket = rng.choice(lie_catalog(dim))
    basis = cocycle_space(bracket)
    dual = T.fzeros((dim,) * 3)
    for _ in range(tries if basis else 0):
        cand = T.fzeros((dim,) * 3)
        for D in rng.sample(basis, k=min(len(basis), rng.choice([1, 1, 2]))):
            cand = cand + D * _small(rng)
        if is_lie(cand):
            dual = cand
            break
    b = LieBialgebra(bracket, dual)
    if rng.random() < 0.7:
        b = change_basis_bialgebra(b, random_invertible(rng, dim))
    if not verify_lie_bialgebra(b).passed:
        raise AssertionError("generator produced an invalid Lie bialgebra")
    return b


def random_bcm(rng: random.Random) -> BialgebraCrossedModule:
    """Trivial construction, or a quotient by a central line that omega keeps inside ∧²I."""
    if rng.random() < 0.5:
        return trivial_bcm(random_lie_bialgebra(rng))
    base = random_lie_bialgebra(rng, dim=rng.choice([1, 2]))
    line = LieBialgebra(T.fzeros((1, 1, 1)), T.fzeros((1, 1, 1)))
    total = direct_sum_bialgebra(base, line)
    n = total.dim
    ideal = [[int(i == n - 1) for i in range(n)]]
    if rng.random() < 0.5:
        P = random_invertible(rng, n)
        total = change_basis_bialgebra(total, P)
        # coordinates of the central vector in the new basis
        ideal = [list(T.inverse(P)[:, n - 1])]
    return quotient_construction(total, ideal)


def random_mismatched_bcm(rng: random.Random) -> BialgebraCrossedModule:
    """The trivial crossed module of a Lie bialgebra paired with an unrelated bracket on theta*.

    Both crossed modules are valid; the compatibility conditions may fail.
    """
    bl = random_lie_bialgebra(rng)
    n = bl.dim
    C = change_basis(rng.choice(lie_catalog(n)), random_invertible(rng, n))
    ident = T.farray([[int(i == j) for j in range(n)] for i in range(n)], (n, n))
    B = bl.bracket
    cm = LieAlgebraCrossedModule(B, B, ident, B)
    dual = LieAlgebraCrossedModule(C, -C, -ident, -C, ("ts", "gs"))
    return BialgebraCrossedModule(cm, dual)


GENERATING_FIELDS = ("phi", "lie_g", "action", "dual_bracket", "dual_action")


def rebuild_bcm(phi, lie_g, action, dual_bracket, dual_action) -> BialgebraCrossedModule:
    """Crossed modules from generating data; source brackets and the dual map are induced."""
    lie_theta = T.einsum("ma,mvb->avb", phi, action)
    cm = LieAlgebraCrossedModule(lie_theta, lie_g, phi, action)
    dual_phi = -phi.T
    lie_gs = T.einsum("ai,ajk->ijk", dual_phi, dual_action)
    dual = LieAlgebraCrossedModule(lie_gs, dual_bracket, dual_phi.copy(), dual_action, ("ts", "gs"))
    return BialgebraCrossedModule(cm, dual)


def generating_data(bcm: BialgebraCrossedModule) -> dict[str, np.ndarray]:
    return {
        "phi": bcm.cm.phi.copy(),
        "lie_g": bcm.cm.lie_g.copy(),
        "action": bcm.cm.action.copy(),
        "dual_bracket": bcm.dual_cm.lie_g.copy(),
        "dual_action": bcm.dual_cm.action.copy(),
    }


def perturb_bcm(rng: random.Random, bcm: BialgebraCrossedModule,
                field: Optional[str] = None) -> tuple[BialgebraCrossedModule, str, tuple[int, ...]]:
    """Change one generating constant (and its skew partner for brackets)."""
    data = generating_data(bcm)
    choices = [f for f in (field,) if f] or [f for f in GENERATING_FIELDS if data[f].size]
    name = rng.choice(choices)
    t = data[name]
    if name in ("lie_g", "dual_bracket"):
        n = t.shape[0]
        if n < 2:
            raise ValueError(f"{name} has no off-diagonal slot to perturb")
        i, j = sorted(rng.sample(range(n), 2))
        k = rng.randrange(n)
        delta = Fraction(rng.choice([-1, 1]))
        t[i, j, k] += delta
        t[j, i, k] -= delta
        idx = (i, j, k)
    else:
        idx = tuple(rng.randrange(d) for d in t.shape)
        t[idx] += rng.choice([-1, 1])
    return rebuild_bcm(**data), name, idx


# -- weak Lie 2-algebras -------------------------------------------------------

def _alternating_entry(rng: random.Random, shape, axes) -> list[tuple[tuple[int, ...], int]]:
    """One entry and its signed images under permutations of ``axes``."""
    idx = [rng.randrange(d) for d in shape]
    if axes:
        picked = rng.sample(range(shape[axes[0]]), len(axes)) if shape[axes[0]] >= len(axes) else None
        if picked is None:
            return []
        for a, v in zip(axes, picked):
            idx[a] = v
    out = []
    for p in permutations(range(len(axes))):
        j = list(idx)
        for src, dst in zip(axes, p):
            j[src] = idx[axes[dst]]
        out.append((tuple(j), T.perm_sign(p)))
    return out or [(tuple(idx), 1)]


_ALGEBRA_SKEW = {"phi": (), "bracket": (0, 1), "action": (), "homotopy_h": (0, 1, 2)}


def random_weak_lie2_algebra(rng: random.Random) -> Lie2AlgebraData:
    """A valid weak Lie 2-algebra: strict (from a crossed module), string, or skeletal with h != 0."""
    kind = rng.choice(["strict", "strict", "string", "skeletal"])
    if kind == "strict":
        return bcm_to_data(random_bcm(rng))[0]
    if kind == "string":
        g = LieAlgebraConstants(rng.choice([lie_catalog(3)[3], lie_catalog(3)[4]]))
        x = [rng.randint(-1, 1) for _ in range(3)]
        return string_lie2_data(g, x, _small(rng))[0]
    # abelian g, phi = 0, trivial action: every alternating h is a 3-cocycle
    m, n = rng.choice([1, 2, 3]), rng.choice([1, 2])
    h = T.fzeros((m, m, m, n))
    for _ in range(2):
        entries = _alternating_entry(rng, (m, m, m, n), (0, 1, 2))
        c = _small(rng)
        for idx, s in entries:
            h[idx] += s * c
    return Lie2AlgebraData(SpaceSpec(m, n), homotopy_h=h)


def perturb_algebra(rng: random.Random, d: Lie2AlgebraData) -> tuple[Lie2AlgebraData, str]:
    """Add +-1 to one entry of one structure map (keeping its skew slots alternating)."""
    names = [f for f in _ALGEBRA_SKEW if getattr(d, f).size and _alternating_entry(rng, getattr(d, f).shape,
                                                                                      _ALGEBRA_SKEW[f])]
    name = rng.choice(names)
    t = getattr(d, name).copy()
    while True:
        entries = _alternating_entry(rng, t.shape, _ALGEBRA_SKEW[name])
        if entries:
            break
    c = Fraction(rng.choice([-1, 1]))
    for idx, s in entries:
        t[idx] += s * c
    fields = d.tensors()
    fields[name] = t
    return Lie2AlgebraData(d.space, **fields), name
