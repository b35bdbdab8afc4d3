"""Worked examples: the string Lie 2-bialgebra, trivial and matrix crossed modules."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Optional, Sequence

import numpy as np

from . import tensors as T
from .crossed import BialgebraCrossedModule, LieAlgebraCrossedModule, quotient_construction
from .graded import SpaceSpec
from .lie import LieBialgebra, check_lie, default_labels, verify_lie_bialgebra
from .report import Report
from .structures import BialgebraElement, Lie2AlgebraData, Lie2CoalgebraData, assemble_bialgebra


@dataclass(frozen=True, eq=False)
class LieAlgebraConstants:
    """A Lie algebra by structure constants, c[i, j, k] = e_k-coefficient of [e_i, e_j]."""

    constants: np.ndarray
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        c = T.farray(self.constants)
        n = c.shape[0] if c.ndim == 3 else -1
        if c.shape != (n, n, n):
            raise ValueError(f"structure constants must have shape (n, n, n), got {c.shape}")
        object.__setattr__(self, "constants", c)
        if self.labels is None:
            object.__setattr__(self, "labels", default_labels("e", n))
        rep = Report()
        check_lie(c, self.labels, rep)
        if not rep.passed:
            w = rep.witnesses[0]
            raise ValueError(f"not a Lie algebra: {w.check} fails at ({', '.join(w.args)})")

    @property
    def dim(self) -> int:
        return self.constants.shape[0]

    @classmethod
    def from_brackets(cls, dim: int, brackets: dict, labels=None) -> "LieAlgebraConstants":
        """Build from {(i, j): {k: coeff}} for i<j; the skew partner is filled in."""
        c = T.fzeros((dim,) * 3)
        for (i, j), out in brackets.items():
            for k, v in out.items():
                c[i, j, k] = Fraction(v)
                c[j, i, k] = -Fraction(v)
        return cls(c, labels)


def abelian(dim: int) -> LieAlgebraConstants:
    return LieAlgebraConstants(T.fzeros((dim,) * 3))


def so3() -> LieAlgebraConstants:
    # [e0,e1] = e2 and cyclic
    return LieAlgebraConstants.from_brackets(3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {1: -1}})


def ax_plus_b() -> LieAlgebraConstants:
    """The 2-dimensional nonabelian Lie algebra, [e0, e1] = e1."""
    return LieAlgebraConstants.from_brackets(2, {(0, 1): {1: 1}})


def ax_plus_b_bialgebra() -> LieBialgebra:
    """ax+b with the cobracket delta(e1) = e0∧e1, i.e. the dual bracket [e0*, e1*] = e1*."""
    c = ax_plus_b().constants
    return LieBialgebra(c, c.copy())


def killing_form(g: LieAlgebraConstants) -> np.ndarray:
    """K[i, j] = trace(ad e_i ad e_j)."""
    c = g.constants
    return T.einsum("ijk,lkj->il", c, c)


def coadjoint_matrix(g: LieAlgebraConstants, x: Sequence) -> np.ndarray:
    """M[i, k] = <ad*_x xi_i, e_k> = -<xi_i, [x, e_k]>."""
    x = T.farray(list(x), (g.dim,))
    return -T.einsum("m,mki->ik", x, g.constants)


# -- string Lie 2-bialgebra ----------------------------------------------------

def string_lie2_data(g: LieAlgebraConstants, x: Sequence, hbar) -> tuple[Lie2AlgebraData, Lie2CoalgebraData]:
    K = killing_form(g)
    if T.det(K) == 0:
        raise ValueError("the Killing form is degenerate")
    hbar = T.to_fraction(hbar)
    n = g.dim
    space = SpaceSpec(n, 1, g.labels, ("1",))
    # h(e_i, e_j, e_k) = hbar K(e_i, [e_j, e_k])
    h = T.einsum("jkm,im->ijk", g.constants, K)
    h = (h * hbar).reshape(n, n, n, 1)
    alg = Lie2AlgebraData(space, bracket=g.constants, homotopy_h=h)
    # <delta(e_k), xi_i ∧ kappa> = <e_k, kappa▷xi_i> = <ad*_x xi_i, e_k>
    M = coadjoint_matrix(g, x)
    delta = M.T.reshape(n, n, 1).copy()
    coalg = Lie2CoalgebraData(space, delta=delta)
    return alg, coalg


def string_lie2_bialgebra(g: LieAlgebraConstants, x: Sequence, hbar) -> BialgebraElement:
    return assemble_bialgebra(*string_lie2_data(g, x, hbar))


# -- trivial crossed module of a Lie bialgebra ---------------------------------

def trivial_bcm(bialg: LieBialgebra) -> BialgebraCrossedModule:
    """theta -1-> theta with the adjoint action; theta* -(-1)-> theta* with the opposite bracket."""
    rep = verify_lie_bialgebra(bialg)
    if not rep.passed:
        w = rep.witnesses[0]
        raise ValueError(f"not a Lie bialgebra: {w.check} fails at ({', '.join(w.args)})")
    n = bialg.dim
    B, D = bialg.bracket, bialg.dual_bracket
    ident = T.farray([[int(i == j) for j in range(n)] for i in range(n)], (n, n))
    cm = LieAlgebraCrossedModule(B, B, ident, B)
    # target theta* carries -[,]_*, source g* = theta* carries [,]_*,
    # kappa2 ▷ kappa1 = -[kappa2, kappa1]_*
    dual = LieAlgebraCrossedModule(D, -D, -ident, -D, ("ts", "gs"))
    return BialgebraCrossedModule(cm, dual)


# -- Gaussian rationals and the gl_n(C) Manin triple ---------------------------

@dataclass(frozen=True)
class GaussianRational:
    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", T.to_fraction(self.re))
        object.__setattr__(self, "im", T.to_fraction(self.im))

    def __add__(self, o: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re + o.re, self.im + o.im)

    def __sub__(self, o: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, o: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __str__(self) -> str:
        return f"{self.re}+{self.im}i" if self.im >= 0 else f"{self.re}{self.im}i"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I_UNIT = GaussianRational(0, 1)

Matrix = tuple[tuple[GaussianRational, ...], ...]


def mat_zero(n: int) -> list[list[GaussianRational]]:
    return [[ZERO] * n for _ in range(n)]


def mat_unit(n: int, j: int, k: int, c: GaussianRational = ONE) -> Matrix:
    m = mat_zero(n)
    m[j][k] = c
    return tuple(tuple(r) for r in m)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c: GaussianRational, a: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in r) for r in a)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    out = mat_zero(n)
    for i, j in product(range(n), range(n)):
        acc = ZERO
        for k in range(n):
            if a[i][k] and b[k][j]:
                acc = acc + a[i][k] * b[k][j]
        out[i][j] = acc
    return tuple(tuple(r) for r in out)


def commutator(a: Matrix, b: Matrix) -> Matrix:
    ab, ba = mat_mul(a, b), mat_mul(b, a)
    return tuple(tuple(x - y for x, y in zip(r1, r2)) for r1, r2 in zip(ab, ba))


def trace(a: Matrix) -> GaussianRational:
    acc = ZERO
    for i in range(len(a)):
        acc = acc + a[i][i]
    return acc


def im_tr_pairing(a: Matrix, b: Matrix) -> Fraction:
    return trace(mat_mul(a, b)).im


def _pairs(n: int):
    return list(combinations(range(n), 2))


def triangular_basis(n: int) -> list[Matrix]:
    """E_jj, then E_jk and iE_jk for j<k: upper triangular with real diagonal."""
    basis = [mat_unit(n, j, j) for j in range(n)]
    for j, k in _pairs(n):
        basis += [mat_unit(n, j, k), mat_unit(n, j, k, I_UNIT)]
    return basis


def unitary_basis(n: int) -> list[Matrix]:
    """iE_jj, then E_jk - E_kj and i(E_jk + E_kj) for j<k: skew-Hermitian."""
    basis = [mat_unit(n, j, j, I_UNIT) for j in range(n)]
    for j, k in _pairs(n):
        basis.append(mat_add(mat_unit(n, j, k), mat_unit(n, k, j, -ONE)))
        basis.append(mat_add(mat_unit(n, j, k, I_UNIT), mat_unit(n, k, j, I_UNIT)))
    return basis


def triangular_coords(a: Matrix) -> list[Fraction]:
    n = len(a)
    for j in range(n):
        if a[j][j].im != 0:
            raise ValueError("diagonal entry is not real")
        for k in range(j):
            if a[j][k]:
                raise ValueError("matrix is not upper triangular")
    out = [a[j][j].re for j in range(n)]
    for j, k in _pairs(n):
        out += [a[j][k].re, a[j][k].im]
    return out


def unitary_coords(a: Matrix) -> list[Fraction]:
    n = len(a)
    for j in range(n):
        if a[j][j].re != 0:
            raise ValueError("diagonal entry is not imaginary")
    out = [a[j][j].im for j in range(n)]
    for j, k in _pairs(n):
        if a[k][j] != GaussianRational(-a[j][k].re, a[j][k].im):
            raise ValueError("matrix is not skew-Hermitian")
        out += [a[j][k].re, a[j][k].im]
    return out


def _structure(basis: list[Matrix], coords) -> np.ndarray:
    d = len(basis)
    c = T.fzeros((d, d, d))
    for i, j in product(range(d), range(d)):
        c[i, j, :] = np.array(coords(commutator(basis[i], basis[j])), dtype=object)
    return c


@dataclass(frozen=True, eq=False)
class ManinTriple:
    """gl_n(C) = theta + u(n) with the Im Tr pairing."""

    n: int
    theta_basis: tuple[Matrix, ...]
    u_basis: tuple[Matrix, ...]
    pairing: np.ndarray        # pairing[p, q] = Im Tr(theta_p u_q)
    bialgebra: LieBialgebra    # theta with theta* transported from u(n)

    def isotropy_defects(self) -> list[tuple[str, int, int]]:
        bad = []
        for name, basis in (("theta", self.theta_basis), ("u", self.u_basis)):
            for p, q in product(range(len(basis)), repeat=2):
                if im_tr_pairing(basis[p], basis[q]) != 0:
                    bad.append((name, p, q))
        return bad

    def identity_coords(self) -> list[Fraction]:
        n = self.n
        ident = tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))
        return triangular_coords(ident)


def manin_triple_gl(n: int) -> ManinTriple:
    tb, ub = triangular_basis(n), unitary_basis(n)
    P = T.fzeros((len(tb), len(ub)))
    for p, q in product(range(len(tb)), range(len(ub))):
        P[p, q] = im_tr_pairing(tb[p], ub[q])
    theta = _structure(tb, triangular_coords)
    u = _structure(ub, unitary_coords)
    # theta* basis kappa_p = sum_q C[q, p] u_q with <theta_r, kappa_p> = delta_rp
    C = T.inverse(P)
    # the kappa-coordinates of a u-vector w are P @ w
    dual = T.einsum("qp,ts,qtr,kr->psk", C, C, u, P)
    labels = tuple(f"t{i}" for i in range(len(tb)))
    return ManinTriple(n, tuple(tb), tuple(ub), P, LieBialgebra(theta, dual, labels))


def matrix_example(n: int = 2) -> BialgebraCrossedModule:
    """theta -> theta/R·Id for the upper-triangular/u(n) Manin triple of gl_n(C)."""
    if n not in (2, 3):
        raise ValueError("matrix_example supports n = 2 or 3")
    mt = manin_triple_gl(n)
    return quotient_construction(mt.bialgebra, [mt.identity_coords()])
