"""Lie algebra crossed modules and Lie bialgebra crossed modules.

Conventions fixed here:

* ``g⋉θ`` has basis ``x_0..x_{m-1}, u_0..u_{n-1}`` and bracket
  ``[x+u, y+v] = [x,y] + x▷v - y▷u + [u,v]``.
* The dual crossed module ``g* -> θ*`` acts with ``θ*`` on ``g*``; its
  semidirect product has basis ``xi_0.., kappa_0..`` dual to the one above,
  and the pairing is ``<x+u, xi+kappa> = <x,xi> + <u,kappa>``.
* The cobracket of ``g⋉θ`` is minus the transpose of the dual bracket,
  ``<d(E), a∧b> = -<E, [a,b]>``, and ``delta``, ``omega`` are read in the
  same way from the dual crossed module.

A crossed module is stored with generic names: ``lie_g`` is the bracket on
the target, ``lie_theta`` the bracket on the source, ``phi[j, a]`` the
target-coefficient of ``phi(source_a)`` and ``action[i, a, b]`` the
source-coefficient of ``target_i ▷ source_a``. For the dual crossed module
the target is θ* and the source is g*.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from . import tensors as T
from .exterior import ExteriorElement, extend_derivation
from .lie import LieBialgebra, check_lie, cocycle_defect, is_lie, verify_lie_bialgebra
from .report import Report
from .structures import (BialgebraElement, Lie2AlgebraData, Lie2CoalgebraData, assemble_bialgebra,
                         project_algebra, project_coalgebra)
from .graded import SpaceSpec

HALF = Fraction(1, 2)


def _labels(prefix: str, n: int) -> tuple[str, ...]:
    return tuple(f"{prefix}{i}" for i in range(n))


@dataclass(frozen=True, eq=False)
class LieAlgebraCrossedModule:
    """phi: source -> target with target acting on source."""

    lie_theta: np.ndarray
    lie_g: np.ndarray
    phi: np.ndarray
    action: np.ndarray
    tokens: tuple[str, str] = ("g", "t")

    def __post_init__(self):
        phi = T.farray(self.phi)
        if phi.ndim != 2:
            raise ValueError("phi must be a matrix (dim target x dim source)")
        m, n = phi.shape
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "lie_theta", T.farray(self.lie_theta, (n, n, n)))
        object.__setattr__(self, "lie_g", T.farray(self.lie_g, (m, m, m)))
        object.__setattr__(self, "action", T.farray(self.action, (m, n, n)))

    @classmethod
    def zero(cls, dim_g: int, dim_theta: int, tokens=("g", "t")) -> "LieAlgebraCrossedModule":
        return cls(T.fzeros((dim_theta,) * 3), T.fzeros((dim_g,) * 3), T.fzeros((dim_g, dim_theta)),
                   T.fzeros((dim_g, dim_theta, dim_theta)), tokens)

    @property
    def dim_g(self) -> int:
        return self.phi.shape[0]

    @property
    def dim_theta(self) -> int:
        return self.phi.shape[1]

    @property
    def labels_g(self) -> tuple[str, ...]:
        return _labels(self.tokens[0], self.dim_g)

    @property
    def labels_theta(self) -> tuple[str, ...]:
        return _labels(self.tokens[1], self.dim_theta)

    def semidirect_labels(self) -> tuple[str, ...]:
        return self.labels_g + self.labels_theta

    def replace(self, **kw) -> "LieAlgebraCrossedModule":
        args = dict(lie_theta=self.lie_theta, lie_g=self.lie_g, phi=self.phi, action=self.action,
                    tokens=self.tokens)
        args.update(kw)
        return LieAlgebraCrossedModule(**args)

    def __eq__(self, other) -> bool:
        return (isinstance(other, LieAlgebraCrossedModule)
                and all(T.equal(getattr(self, f), getattr(other, f))
                        for f in ("lie_theta", "lie_g", "phi", "action")))

    __hash__ = object.__hash__

    def __repr__(self) -> str:
        return f"LieAlgebraCrossedModule(dims=({self.dim_g}, {self.dim_theta}), tokens={self.tokens})"


def _vec(coords, labels) -> ExteriorElement:
    return ExteriorElement.vector(list(coords), labels)


def _record_vectors(report: Report, name: str, t: np.ndarray, arg_labels: Sequence[Sequence[str]],
                    out_labels: Sequence[str]) -> None:
    report.add_check(name)
    for idx in np.ndindex(t.shape[:-1]):
        if any(v != 0 for v in t[idx]):
            report.fail(name, [arg_labels[k][i] for k, i in enumerate(idx)], _vec(t[idx], out_labels))


def verify_crossed_module(cm: LieAlgebraCrossedModule) -> Report:
    report = Report()
    lg, lt = cm.labels_g, cm.labels_theta
    P, A, Bg, Bt = cm.phi, cm.action, cm.lie_g, cm.lie_theta
    es = T.einsum
    check_lie(Bg, lg, report, prefix="target_")
    check_lie(Bt, lt, report, prefix="source_")
    # [x,y]▷u = x▷(y▷u) - y▷(x▷u)
    rep = es("ijm,mab->ijab", Bg, A) - es("jac,icb->ijab", A, A) + es("iac,jcb->ijab", A, A)
    _record_vectors(report, "representation", rep, (lg, lg, lt), lt)
    # x▷[u,v] = [x▷u,v] + [u,x▷v]
    der = (es("uvc,icb->iuvb", Bt, A) - es("iuc,cvb->iuvb", A, Bt) - es("ivc,ucb->iuvb", A, Bt))
    _record_vectors(report, "derivation", der, (lg, lt, lt), lt)
    # phi(x▷u) = [x, phi(u)]
    equi = es("iab,kb->iak", A, P) - es("ma,imk->iak", P, Bg)
    _record_vectors(report, "equivariance", equi, (lg, lt), lg)
    # phi(u)▷v = [u,v]
    peif = es("ma,mvb->avb", P, A) - Bt
    _record_vectors(report, "peiffer", peif, (lt, lt), lt)
    # phi is a Lie algebra homomorphism (implied by the two axioms)
    hom = es("uvc,kc->uvk", Bt, P) - es("iu,jv,ijk->uvk", P, P, Bg)
    _record_vectors(report, "phi_homomorphism", hom, (lt, lt), lg)
    return report


def _induce_check(lie_g, action, phi) -> Report:
    report = Report()
    m, n = phi.shape
    lg, lt = _labels("g", m), _labels("t", n)
    es = T.einsum
    tp1 = es("iab,kb->iak", action, phi) - es("ma,imk->iak", phi, lie_g)
    _record_vectors(report, "equivariance", tp1, (lg, lt), lg)
    tp2 = es("ma,mvb->avb", phi, action)
    tp2 = tp2 + tp2.transpose(1, 0, 2)
    _record_vectors(report, "skew_pairing", tp2, (lt, lt), lt)
    return report


def induce_theta_bracket(lie_g, action, phi, tokens=("g", "t")) -> LieAlgebraCrossedModule:
    """The unique bracket [u,v] = phi(u)▷v on the source making a crossed module."""
    phi = T.farray(phi)
    m, n = phi.shape
    lie_g = T.farray(lie_g, (m, m, m))
    action = T.farray(action, (m, n, n))
    pre = _induce_check(lie_g, action, phi)
    if not pre.passed:
        w = pre.witnesses[0]
        raise ValueError(f"precondition {w.check} fails at ({', '.join(w.args)}): {w.render()}")
    cm = LieAlgebraCrossedModule(T.einsum("ma,mvb->avb", phi, action), lie_g, phi, action, tokens)
    rep = verify_crossed_module(cm)
    if not rep.passed:
        w = rep.witnesses[0]
        raise ValueError(f"induced structure fails {w.check} at ({', '.join(w.args)}): {w.render()}")
    return cm


def semidirect_bracket(cm: LieAlgebraCrossedModule, target_first: bool = True) -> np.ndarray:
    """Structure constants of target⋉source; basis order target then source by default."""
    m, n = cm.dim_g, cm.dim_theta
    out = T.fzeros((m + n,) * 3)
    g = slice(0, m) if target_first else slice(n, n + m)
    t = slice(m, m + n) if target_first else slice(0, n)
    out[g, g, g] = cm.lie_g
    out[t, t, t] = cm.lie_theta
    out[g, t, t] = cm.action
    out[t, g, t] = -cm.action.transpose(1, 0, 2)
    return out


# -- exterior calculus on g⋉θ ---------------------------------------------------

@dataclass(frozen=True, eq=False)
class DeltaOmega:
    """delta[k, i, a] = <delta(x_k), xi_i∧kappa_a>, omega[c, a, b] = <omega(u_c), kappa_a∧kappa_b>."""

    delta: np.ndarray
    omega: np.ndarray

    def __post_init__(self):
        d = T.farray(self.delta)
        m, _, n = d.shape if d.ndim == 3 else (None, None, None)
        if d.ndim != 3 or d.shape[0] != d.shape[1]:
            raise ValueError("delta must have shape (dim_g, dim_g, dim_theta)")
        o = T.farray(self.omega, (n, n, n))
        bad = T.alternation_defect(o, (1, 2))
        if bad:
            raise ValueError(f"omega is not skew in its last two slots: first bad entry {bad[0]}")
        object.__setattr__(self, "delta", d)
        object.__setattr__(self, "omega", o)

    @property
    def dim_g(self) -> int:
        return self.delta.shape[0]

    @property
    def dim_theta(self) -> int:
        return self.omega.shape[0]

    @property
    def labels(self) -> tuple[str, ...]:
        return _labels("g", self.dim_g) + _labels("t", self.dim_theta)

    def delta_wedge(self, k: int) -> ExteriorElement:
        m = self.dim_g
        return ExteriorElement(m + self.dim_theta, {(i, m + a): self.delta[k, i, a]
                                                    for i in range(m) for a in range(self.dim_theta)},
                               self.labels)

    def omega_wedge(self, c: int) -> ExteriorElement:
        m, n = self.dim_g, self.dim_theta
        return ExteriorElement(m + n, {(m + a, m + b): self.omega[c, a, b] for a, b in combinations(range(n), 2)},
                               self.labels)

    def __eq__(self, other) -> bool:
        return isinstance(other, DeltaOmega) and T.equal(self.delta, other.delta) and T.equal(self.omega, other.omega)

    __hash__ = object.__hash__


def _phi_image(phi: np.ndarray, a: int, labels) -> ExteriorElement:
    m, n = phi.shape
    return ExteriorElement(m + n, {(j,): phi[j, a] for j in range(m)}, labels)


def D_phi(w: ExteriorElement, phi: np.ndarray) -> ExteriorElement:
    """Even derivation of ∧(g⋉θ) with x -> 0 and u -> phi(u)."""
    m = phi.shape[0]
    zero = ExteriorElement(w.dim, labels=w.labels)
    return extend_derivation(w, lambda i: zero if i < m else _phi_image(phi, i - m, w.labels), odd=False)


def omega_derivation(w: ExteriorElement, d: DeltaOmega) -> ExteriorElement:
    m = d.dim_g
    zero = ExteriorElement(w.dim, labels=w.labels)
    return extend_derivation(w, lambda i: zero if i < m else d.omega_wedge(i - m), odd=True)


def delta_derivation(w: ExteriorElement, d: DeltaOmega) -> ExteriorElement:
    m = d.dim_g
    zero = ExteriorElement(w.dim, labels=w.labels)
    return extend_derivation(w, lambda i: d.delta_wedge(i) if i < m else zero, odd=True)


def _phi_star_covector(phi: np.ndarray, j: int) -> list[Fraction]:
    m, n = phi.shape
    return [Fraction(0)] * m + [phi[j, a] for a in range(n)]


def _g_covector(m: int, n: int, j: int) -> list[Fraction]:
    return [Fraction(int(i == j)) for i in range(m + n)]


def W_membership_defects(w: ExteriorElement, k: int, phi: np.ndarray) -> list[tuple[tuple[int, int], ExteriorElement]]:
    """Pairs (j1, j2) with i_{z1} i_{phi* z2} w + i_{z2} i_{phi* z1} w != 0."""
    m, n = phi.shape
    out = []
    for j1 in range(m):
        for j2 in range(j1, m):
            a = w.interior(_phi_star_covector(phi, j2)).interior(_g_covector(m, n, j1))
            b = w.interior(_phi_star_covector(phi, j1)).interior(_g_covector(m, n, j2))
            if a + b:
                out.append(((j1, j2), a + b))
    return out


def check_W_membership(w: ExteriorElement, k: int, phi: np.ndarray) -> bool:
    """w lies in g∧(∧^{k-1}θ) and satisfies the contraction symmetry of W_k."""
    m = phi.shape[0]
    for mono in w.terms:
        if len(mono) != k or sum(1 for i in mono if i < m) != 1:
            return False
    return not W_membership_defects(w, k, phi)


def w2_consequence(d: DeltaOmega, phi: np.ndarray) -> np.ndarray:
    """For delta(x_k) = sum y∧v: sum(<phi(v),xi_j> y + <y,xi_j> phi(v)), as t[k, j, :]."""
    M = T.einsum("kia,ja->kij", d.delta, phi)
    return M + M.transpose(0, 2, 1)


def delta_omega_report(d: DeltaOmega, phi: np.ndarray) -> Report:
    """The membership delta(g) ⊂ W_2 and the three conditions of the (delta, omega) calculus."""
    report = Report()
    m, n = phi.shape
    labels = d.labels
    report.add_check("delta_in_W2")
    for k in range(m):
        w = d.delta_wedge(k)
        for (j1, j2), defect in W_membership_defects(w, 2, phi):
            report.fail("delta_in_W2", (labels[k], f"gs{j1}", f"gs{j2}"), defect)
    report.add_check("D_phi_omega")
    for c in range(n):
        lhs = D_phi(d.omega_wedge(c), phi)
        rhs = ExteriorElement(m + n, labels=labels)
        for j in range(m):
            if phi[j, c] != 0:
                rhs = rhs + d.delta_wedge(j).scale(phi[j, c])
        if lhs - rhs:
            report.fail("D_phi_omega", (labels[m + c],), lhs - rhs)
    report.add_check("omega_squared")
    for c in range(n):
        sq = omega_derivation(d.omega_wedge(c), d)
        if sq:
            report.fail("omega_squared", (labels[m + c],), sq)
    report.add_check("omega_delta_delta")
    for k in range(m):
        w = d.delta_wedge(k)
        sq = omega_derivation(w, d) + delta_derivation(w, d)
        if sq:
            report.fail("omega_delta_delta", (labels[k],), sq)
    return report


def dual_cm_to_delta_omega(dual_cm: LieAlgebraCrossedModule) -> DeltaOmega:
    return DeltaOmega(dual_cm.action.transpose(2, 1, 0).copy(), -dual_cm.lie_g.transpose(2, 0, 1))


def delta_omega_to_dual_cm(d: DeltaOmega, phi, check: bool = True) -> LieAlgebraCrossedModule:
    """The crossed module g* -> θ* (map -phi^T) encoded by (delta, omega)."""
    phi = T.farray(phi, (d.dim_g, d.dim_theta))
    lie_ts = -d.omega.transpose(1, 2, 0)
    action = d.delta.transpose(2, 1, 0).copy()
    dual_phi = -phi.T
    lie_gs = T.einsum("ai,ajk->ijk", dual_phi, action)
    cm = LieAlgebraCrossedModule(lie_gs, lie_ts, dual_phi.copy(), action, ("ts", "gs"))
    if check:
        for rep in (delta_omega_report(d, phi), verify_crossed_module(cm)):
            if not rep.passed:
                w = rep.witnesses[0]
                raise ValueError(f"(delta, omega) fails {w.check} at ({', '.join(w.args)}): {w.render()}")
    return cm


def cobracket_partial(d: DeltaOmega, phi: np.ndarray, coords: Sequence) -> ExteriorElement:
    """d(x+u) = omega(u) + delta(x) - 1/2 D_phi(delta(x))."""
    m, n = d.dim_g, d.dim_theta
    out = ExteriorElement(m + n, labels=d.labels)
    for c in range(n):
        if coords[m + c] != 0:
            out = out + d.omega_wedge(c).scale(coords[m + c])
    for k in range(m):
        if coords[k] != 0:
            dx = d.delta_wedge(k)
            out = out + (dx - D_phi(dx, phi).scale(HALF)).scale(coords[k])
    return out


def project_wedge2_theta(w: ExteriorElement, dim_g: int) -> ExteriorElement:
    return w.filter(lambda mono: all(i >= dim_g for i in mono))


# -- Lie bialgebra crossed modules ---------------------------------------------

@dataclass(frozen=True, eq=False)
class BialgebraCrossedModule:
    """A crossed module theta -> g with its dual g* -> theta* (map -phi^T)."""

    cm: LieAlgebraCrossedModule
    dual_cm: LieAlgebraCrossedModule

    def __post_init__(self):
        if self.dual_cm.phi.shape != (self.cm.dim_theta, self.cm.dim_g):
            raise ValueError("dual crossed module dimensions do not match (theta*, g*)")

    @classmethod
    def from_delta_omega(cls, cm: LieAlgebraCrossedModule, d: DeltaOmega, check: bool = True):
        return cls(cm, delta_omega_to_dual_cm(d, cm.phi, check=check))

    @property
    def dim_g(self) -> int:
        return self.cm.dim_g

    @property
    def dim_theta(self) -> int:
        return self.cm.dim_theta

    def delta_omega(self) -> DeltaOmega:
        return dual_cm_to_delta_omega(self.dual_cm)

    def swapped(self) -> "BialgebraCrossedModule":
        """(g* -> theta*, theta -> g): the roles of the two crossed modules exchanged."""
        cm = self.dual_cm.replace(tokens=("g", "t"))
        dual = self.cm.replace(tokens=("ts", "gs"))
        return BialgebraCrossedModule(cm, dual)

    def semidirect(self) -> LieBialgebra:
        """(g⋉θ, g*⋊θ*) with the pairing <x+u, xi+kappa> = <x,xi> + <u,kappa>."""
        m, n = self.dim_g, self.dim_theta
        labels = _labels("g", m) + _labels("t", n)
        return LieBialgebra(semidirect_bracket(self.cm), semidirect_bracket(self.dual_cm, target_first=False),
                            labels)

    def __eq__(self, other) -> bool:
        return isinstance(other, BialgebraCrossedModule) and self.cm == other.cm and self.dual_cm == other.dual_cm

    __hash__ = object.__hash__

    def __repr__(self) -> str:
        return f"BialgebraCrossedModule(dims=({self.dim_g}, {self.dim_theta}))"


def verify_bialgebra_cm(bcm: BialgebraCrossedModule) -> Report:
    report = Report()
    cm, dual = bcm.cm, bcm.dual_cm
    m, n = bcm.dim_g, bcm.dim_theta
    report.merge(verify_crossed_module(cm), "cm.")
    report.merge(verify_crossed_module(dual), "dual_cm.")
    report.add_check("dual_map")
    diff = dual.phi + cm.phi.T
    for a, i in np.ndindex(diff.shape):
        if diff[a, i] != 0:
            report.fail("dual_map", (f"gs{i}", f"ts{a}"), diff[a, i])

    d = bcm.delta_omega()
    labels = d.labels
    sd = semidirect_bracket(cm)
    zero = ExteriorElement(m + n, labels=labels)

    def ad(p: int, w: ExteriorElement) -> ExteriorElement:
        return extend_derivation(w, lambda q: ExteriorElement(m + n, {(r,): sd[p, q, r] for r in range(m + n)},
                                                             labels), odd=False)

    report.add_check("delta_cocycle")
    for i, j in combinations(range(m), 2):
        lhs = zero
        for k in range(m):
            if cm.lie_g[i, j, k] != 0:
                lhs = lhs + d.delta_wedge(k).scale(cm.lie_g[i, j, k])
        defect = lhs - ad(i, d.delta_wedge(j)) + ad(j, d.delta_wedge(i))
        if defect:
            report.fail("delta_cocycle", (labels[i], labels[j]), defect)

    report.add_check("condition2")
    for i in range(m):
        dx = d.delta_wedge(i)
        for a in range(n):
            lhs = ad(i, d.omega_wedge(a))
            for b in range(n):
                if cm.action[i, a, b] != 0:
                    lhs = lhs - d.omega_wedge(b).scale(cm.action[i, a, b])
            defect = lhs - project_wedge2_theta(ad(m + a, dx), m)
            if defect:
                report.fail("condition2", (labels[i], labels[m + a]), defect)

    report.add_check("omega_cocycle")
    for a, b in combinations(range(n), 2):
        lhs = zero
        for c in range(n):
            if cm.lie_theta[a, b, c] != 0:
                lhs = lhs + d.omega_wedge(c).scale(cm.lie_theta[a, b, c])
        defect = lhs - ad(m + a, d.omega_wedge(b)) + ad(m + b, d.omega_wedge(a))
        if defect:
            report.fail("omega_cocycle", (labels[m + a], labels[m + b]), defect)

    report.add_check("semidirect_cocycle")
    sb = bcm.semidirect()
    cd = cocycle_defect(sb.bracket, sb.cobracket_tensor())
    for p, q in combinations(range(m + n), 2):
        w = ExteriorElement(m + n, {(r, s): cd[p, q, r, s] for r, s in combinations(range(m + n), 2)}, labels)
        if w:
            report.fail("semidirect_cocycle", (labels[p], labels[q]), w)
    return report


# -- the bijection with strict Lie 2-bialgebras ---------------------------------

def bcm_to_data(bcm: BialgebraCrossedModule) -> tuple[Lie2AlgebraData, Lie2CoalgebraData]:
    space = SpaceSpec(bcm.dim_g, bcm.dim_theta)
    d = bcm.delta_omega()
    alg = Lie2AlgebraData(space, phi=bcm.cm.phi, bracket=bcm.cm.lie_g, action=bcm.cm.action)
    coalg = Lie2CoalgebraData(space, phi=bcm.cm.phi, delta=d.delta, omega=d.omega)
    return alg, coalg


def bcm_to_lie2bialgebra(bcm: BialgebraCrossedModule, check: bool = True) -> BialgebraElement:
    if check:
        rep = verify_bialgebra_cm(bcm)
        if not rep.passed:
            w = rep.witnesses[0]
            raise ValueError(f"not a Lie bialgebra crossed module: {w.check} fails at ({', '.join(w.args)})")
    return assemble_bialgebra(*bcm_to_data(bcm))


def lie2bialgebra_to_bcm(e: BialgebraElement) -> BialgebraCrossedModule:
    """Read the two crossed modules back off a strict element.

    The source bracket and the g* bracket are the induced ones,
    [u,v] = phi(u)▷v and [xi,zeta] = (-phi^T xi)▷zeta.
    """
    if not e.is_strict:
        raise ValueError("only strict Lie 2-bialgebras correspond to Lie bialgebra crossed modules")
    alg = project_algebra(e)
    coalg = project_coalgebra(e)
    cm = LieAlgebraCrossedModule(T.einsum("ma,mvb->avb", alg.phi, alg.action), alg.bracket, alg.phi, alg.action)
    dual = delta_omega_to_dual_cm(DeltaOmega(coalg.delta, coalg.omega), alg.phi, check=False)
    return BialgebraCrossedModule(cm, dual)


# -- matched pairs -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MatchedPairData:
    """g and θ* acting on each other.

    g_on_thetastar[i, a, b]: kappa_b-coefficient of x_i ▷ kappa_a;
    thetastar_on_g[a, i, j]: x_j-coefficient of kappa_a ▷ x_i.
    """

    lie_g: np.ndarray
    lie_thetastar: np.ndarray
    g_on_thetastar: np.ndarray
    thetastar_on_g: np.ndarray

    def __post_init__(self):
        lg = T.farray(self.lie_g)
        lt = T.farray(self.lie_thetastar)
        m, n = lg.shape[0], lt.shape[0]
        object.__setattr__(self, "lie_g", T.farray(lg, (m, m, m)))
        object.__setattr__(self, "lie_thetastar", T.farray(lt, (n, n, n)))
        object.__setattr__(self, "g_on_thetastar", T.farray(self.g_on_thetastar, (m, n, n)))
        object.__setattr__(self, "thetastar_on_g", T.farray(self.thetastar_on_g, (n, m, m)))

    @property
    def dim_g(self) -> int:
        return self.lie_g.shape[0]

    @property
    def dim_thetastar(self) -> int:
        return self.lie_thetastar.shape[0]


def matched_pair_from_bcm(bcm: BialgebraCrossedModule) -> MatchedPairData:
    """Contragredient actions: <x▷kappa, u> = -<kappa, x▷u>, <kappa▷x, xi> = -<x, kappa▷xi>."""
    return MatchedPairData(
        bcm.cm.lie_g,
        bcm.dual_cm.lie_g,
        -bcm.cm.action.transpose(0, 2, 1),
        -bcm.dual_cm.action.transpose(0, 2, 1),
    )


def matched_pair_defects(mp: MatchedPairData) -> Report:
    report = Report()
    m, n = mp.dim_g, mp.dim_thetastar
    lg, lk = _labels("g", m), _labels("ts", n)
    Bg, Bk, R, L = mp.lie_g, mp.lie_thetastar, mp.g_on_thetastar, mp.thetastar_on_g
    es = T.einsum
    check_lie(Bg, lg, report, prefix="g_")
    check_lie(Bk, lk, report, prefix="thetastar_")
    # [x,y]▷kappa = x▷(y▷kappa) - y▷(x▷kappa)
    rep_g = es("ijm,mab->ijab", Bg, R) - es("jac,icb->ijab", R, R) + es("iac,jcb->ijab", R, R)
    _record_vectors(report, "g_representation", rep_g, (lg, lg, lk), lk)
    rep_k = es("abc,cij->abij", Bk, L) - es("bim,amj->abij", L, L) + es("aim,bmj->abij", L, L)
    _record_vectors(report, "thetastar_representation", rep_k, (lk, lk, lg), lg)
    # kappa▷[x,y] = [x,kappa▷y] - [y,kappa▷x] + (y▷kappa)▷x - (x▷kappa)▷y
    t1 = (es("ijm,amk->aijk", Bg, L)
          - es("ajm,imk->aijk", L, Bg) + es("aim,jmk->aijk", L, Bg)
          - es("jab,bik->aijk", R, L) + es("iab,bjk->aijk", R, L))
    _record_vectors(report, "mixed_jacobi_g", t1, (lk, lg, lg), lg)
    # x▷[k1,k2] = [k1,x▷k2] - [k2,x▷k1] + (k2▷x)▷k1 - (k1▷x)▷k2
    t2 = (es("abc,icd->iabd", Bk, R)
          - es("ibc,acd->iabd", R, Bk) + es("iac,bcd->iabd", R, Bk)
          - es("bij,jad->iabd", L, R) + es("aij,jbd->iabd", L, R))
    _record_vectors(report, "mixed_jacobi_thetastar", t2, (lg, lk, lk), lk)
    return report


def build_double(mp: MatchedPairData) -> np.ndarray:
    """Bracket on g⊕θ*: [x,kappa] = x▷kappa - kappa▷x; Jacobi is checked."""
    rep = matched_pair_defects(mp)
    if not rep.passed:
        w = rep.witnesses[0]
        raise ValueError(f"not a matched pair: {w.check} fails at ({', '.join(w.args)})")
    m, n = mp.dim_g, mp.dim_thetastar
    out = T.fzeros((m + n,) * 3)
    g, k = slice(0, m), slice(m, m + n)
    out[g, g, g] = mp.lie_g
    out[k, k, k] = mp.lie_thetastar
    out[g, k, k] = mp.g_on_thetastar
    out[g, k, g] = -mp.thetastar_on_g.transpose(1, 0, 2)
    out[k, g, k] = -mp.g_on_thetastar.transpose(1, 0, 2)
    out[k, g, g] = mp.thetastar_on_g
    if not is_lie(out):
        raise ValueError("double bracket fails Jacobi")
    return out


# -- constructions from Lie bialgebras -----------------------------------------

def _span_rank(vectors: Sequence[Sequence]) -> int:
    if not vectors:
        return 0
    return T.rank(T.farray([list(v) for v in vectors]))


def quotient_construction(bialg: LieBialgebra, ideal_basis: Sequence[Sequence]) -> BialgebraCrossedModule:
    """theta -> theta/I for a central I with omega(I) ⊂ ∧²I.

    g* is identified with the annihilator of I inside theta*, the map
    g* -> theta* is minus the inclusion, theta* carries the opposite bracket
    B(k1, k2) = -[k1, k2]_* and acts on g* through B.
    """
    n = bialg.dim
    basis = [T.farray(list(v), (n,)) for v in ideal_basis]
    r = len(basis)
    if _span_rank(basis) != r:
        raise ValueError("ideal basis vectors are linearly dependent")
    B, D = bialg.bracket, bialg.dual_bracket
    for idx, v in enumerate(basis):
        for a in range(n):
            w = T.einsum("b,bc->c", v, B[a])
            if any(c != 0 for c in w):
                raise ValueError(f"I is not central: [e{a}, ideal vector {idx}] = {T.vector_terms(w, bialg.labels)}")
    # complement: greedily add standard basis vectors
    cols: list[np.ndarray] = []
    for i in range(n):
        e = T.farray([int(j == i) for j in range(n)], (n,))
        if _span_rank(cols + basis + [e]) > len(cols) + r:
            cols.append(e)
    m = len(cols)
    Q = T.fzeros((n, n))
    for j, v in enumerate(cols + basis):
        Q[:, j] = v
    Qinv = T.inverse(Q)
    # rows 0..m-1 of Qinv are the dual basis xi_j of g* = I^0 inside theta*
    xi = Qinv[:m, :]
    # omega(I) ⊂ ∧²I: <v, [alpha, kappa]_*> = 0 for alpha in I^0, any kappa
    for idx, v in enumerate(basis):
        for j in range(m):
            for b in range(n):
                br = T.einsum("a,abc->bc", xi[j], D)[b]
                if sum(v[c] * br[c] for c in range(n)) != 0:
                    raise ValueError(f"omega(I) is not contained in ∧²I (ideal vector {idx}, g* vector {j})")
    phi = Qinv[:m, :].copy()
    lie_g = T.einsum("ai,bj,abc,kc->ijk", Q[:, :m], Q[:, :m], B, Qinv[:m, :])
    action = T.einsum("ai,abc->ibc", Q[:, :m], B)
    cm = LieAlgebraCrossedModule(B, lie_g, phi, action)
    opp = -D
    # kappa_a ▷ xi_j = B(kappa_a, xi_j) re-expressed in the xi basis through Q
    dual_action = T.einsum("jb,abc,ck->ajk", xi, opp, Q[:, :m])
    dual_phi = -xi.T
    lie_gs = T.einsum("ai,ajk->ijk", dual_phi, dual_action)
    dual = LieAlgebraCrossedModule(lie_gs, opp, dual_phi.copy(), dual_action, ("ts", "gs"))
    return BialgebraCrossedModule(cm, dual)


def restrict_bialgebras(bcm: BialgebraCrossedModule) -> tuple[LieBialgebra, LieBialgebra]:
    """(theta, theta*) and (g, g*) with the brackets carried by the two crossed modules."""
    m, n = bcm.dim_g, bcm.dim_theta
    theta = LieBialgebra(bcm.cm.lie_theta, bcm.dual_cm.lie_g, _labels("t", n))
    g = LieBialgebra(bcm.cm.lie_g, bcm.dual_cm.lie_theta, _labels("g", m))
    return theta, g


def verify_restrictions(bcm: BialgebraCrossedModule) -> Report:
    theta, g = restrict_bialgebras(bcm)
    report = Report()
    report.merge(verify_lie_bialgebra(theta), "theta.")
    report.merge(verify_lie_bialgebra(g), "g.")
    return report
