"""Structure-constant Lie algebras and Lie bialgebras over Q.

A bracket tensor ``c`` has ``[e_i, e_j] = sum_k c[i, j, k] e_k``. A Lie
bialgebra is stored through the bracket of the dual space in the dual basis;
the cobracket is its transpose, ``<delta(e_k), e^i ∧ e^j> = <e_k, [e^i, e^j]>``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import tensors as T
from .exterior import ExteriorElement
from .report import Report


def default_labels(prefix: str, n: int) -> tuple[str, ...]:
    return tuple(f"{prefix}{i}" for i in range(n))


def jacobiator(c: np.ndarray) -> np.ndarray:
    """J[i,j,k,n] = [[e_i,e_j],e_k] + c.p., coefficient of e_n."""
    jac = T.einsum("ijm,mkn->ijkn", c, c)
    return jac + jac.transpose(1, 2, 0, 3) + jac.transpose(2, 0, 1, 3)


def skew_defect(c: np.ndarray) -> np.ndarray:
    return c + c.transpose(1, 0, 2)


def _vec(coords, labels) -> ExteriorElement:
    return ExteriorElement.vector(list(coords), labels)


def check_lie(c: np.ndarray, labels: Sequence[str], report: Report, prefix: str = "") -> None:
    """Skewness and Jacobi for a bracket tensor, recorded under ``prefix``."""
    report.add_check(prefix + "skew")
    sk = skew_defect(c)
    for i, j in np.ndindex(sk.shape[:2]):
        if i <= j and any(v != 0 for v in sk[i, j]):
            report.fail(prefix + "skew", (labels[i], labels[j]), _vec(sk[i, j], labels))
    report.add_check(prefix + "jacobi")
    jac = jacobiator(c)
    for i, j, k in np.ndindex(jac.shape[:3]):
        if i < j < k and any(v != 0 for v in jac[i, j, k]):
            report.fail(prefix + "jacobi", (labels[i], labels[j], labels[k]), _vec(jac[i, j, k], labels))


def is_lie(c: np.ndarray) -> bool:
    return T.is_zero(skew_defect(c)) and T.is_zero(jacobiator(c))


def adjoint_matrices(c: np.ndarray) -> np.ndarray:
    """ad[i][k, j]: coefficient of e_k in [e_i, e_j] (column j is the image of e_j)."""
    return c.transpose(0, 2, 1).copy()


def cocycle_defect(c: np.ndarray, cob: np.ndarray) -> np.ndarray:
    """D[p,q,r,s] = delta([e_p,e_q]) - e_p·delta(e_q) + e_q·delta(e_p) at e_r∧e_s.

    ``cob[m, r, s]`` is the e_r∧e_s coefficient tensor of delta(e_m), skew in r,s.
    """
    es = T.einsum
    lhs = es("pqm,mrs->pqrs", c, cob)
    # e_p · (e_r∧e_s) = [e_p,e_r]∧e_s + e_r∧[e_p,e_s]
    act = es("pmr,qms->pqrs", c, cob) + es("pms,qrm->pqrs", c, cob)
    return lhs - act + act.transpose(1, 0, 2, 3)


@dataclass(frozen=True, eq=False)
class LieBialgebra:
    """A Lie algebra with the Lie bracket of its dual space (in the dual basis)."""

    bracket: np.ndarray
    dual_bracket: np.ndarray
    labels: Optional[tuple[str, ...]] = field(default=None)

    def __post_init__(self):
        b = T.farray(self.bracket)
        n = b.shape[0]
        if b.shape != (n, n, n):
            raise ValueError(f"bracket must have shape (n, n, n), got {b.shape}")
        d = T.farray(self.dual_bracket, (n, n, n))
        object.__setattr__(self, "bracket", b)
        object.__setattr__(self, "dual_bracket", d)
        if self.labels is None:
            object.__setattr__(self, "labels", default_labels("e", n))

    @property
    def dim(self) -> int:
        return self.bracket.shape[0]

    def cobracket_tensor(self) -> np.ndarray:
        """cob[k, i, j] = <delta(e_k), e^i ∧ e^j> = <e_k, [e^i, e^j]>."""
        return self.dual_bracket.transpose(2, 0, 1).copy()

    def cobracket(self, k: int) -> ExteriorElement:
        cob = self.cobracket_tensor()
        n = self.dim
        return ExteriorElement(n, {(i, j): cob[k, i, j] for i in range(n) for j in range(i + 1, n)}, self.labels)

    def dual(self) -> "LieBialgebra":
        return LieBialgebra(self.dual_bracket, self.bracket, tuple(f"{s}*" for s in self.labels))

    def __eq__(self, other) -> bool:
        return (isinstance(other, LieBialgebra) and T.equal(self.bracket, other.bracket)
                and T.equal(self.dual_bracket, other.dual_bracket))

    __hash__ = object.__hash__


def verify_lie_bialgebra(b: LieBialgebra) -> Report:
    """Both brackets are Lie and the cobracket is a 1-cocycle."""
    report = Report()
    labels = b.labels
    dual_labels = tuple(f"{s}*" for s in labels)
    check_lie(b.bracket, labels, report)
    check_lie(b.dual_bracket, dual_labels, report, prefix="dual_")
    report.add_check("cocycle")
    d = cocycle_defect(b.bracket, b.cobracket_tensor())
    n = b.dim
    for p, q in np.ndindex(n, n):
        if p < q:
            w = ExteriorElement(n, {(r, s): d[p, q, r, s] for r in range(n) for s in range(r + 1, n)}, labels)
            if w:
                report.fail("cocycle", (labels[p], labels[q]), w)
    return report


def change_basis(c: np.ndarray, P: np.ndarray) -> np.ndarray:
    """Structure constants in the basis f_i = sum_a P[a, i] e_a."""
    Pinv = T.inverse(P)
    return T.einsum("ai,bj,abc,kc->ijk", P, P, c, Pinv)


def change_basis_bialgebra(b: LieBialgebra, P: np.ndarray) -> LieBialgebra:
    """The same bialgebra in the basis f_i = sum_a P[a, i] e_a and its dual basis."""
    Pinv = T.inverse(P)
    # dual basis f^i = sum_a Pinv[i, a] e^a, i.e. matrix Pinv.T on the dual side
    return LieBialgebra(change_basis(b.bracket, P), change_basis(b.dual_bracket, Pinv.T.copy()), b.labels)


def direct_sum(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n, m = a.shape[0], b.shape[0]
    out = T.fzeros((n + m,) * 3)
    out[:n, :n, :n] = a
    out[n:, n:, n:] = b
    return out


def direct_sum_bialgebra(a: LieBialgebra, b: LieBialgebra) -> LieBialgebra:
    return LieBialgebra(direct_sum(a.bracket, b.bracket), direct_sum(a.dual_bracket, b.dual_bracket))
