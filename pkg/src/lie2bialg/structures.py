"""Weak Lie 2-algebras, 2-coalgebras and 2-bialgebras as degree -4 elements.

A structure map is read off an element ``F`` of one signature by iterated
big brackets (``derived_map``). That decode direction is the definition. The
encode direction places one coefficient per canonical monomial; the constant
relating that coefficient to the tensor entry is the response of the
monomial to its own basis arguments, which is the same for every monomial of
a signature. The constants are frozen in ``ENCODE_CONSTANTS`` and re-derived
from the engine by ``unit_response`` in the test suite.

Tensor layouts (all dense Fraction arrays, alternating slots stored in full):

    phi[j, a]            x_j-coefficient of phi(u_a)
    bracket[i, j, k]     x_k-coefficient of [x_i, x_j]
    action[i, a, b]      u_b-coefficient of x_i ▷ u_a
    homotopy_h[i,j,k,a]  u_a-coefficient of h(x_i, x_j, x_k)
    delta[k, i, a]       <delta(x_k), xi_i ∧ kappa_a>
    omega[c, a, b]       <omega(u_c), kappa_a ∧ kappa_b>
    eta[a, b, c, k]      <x_k, eta(kappa_a, kappa_b, kappa_c)>
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import NamedTuple, Optional

import numpy as np

from . import tensors as T
from .bracket import big_bracket, derived_map, generator_bracket, swap_element
from .graded import SWAP_ROLES, Generator, Role, SpaceSpec
from .report import Report
from .symalg import SymElement, component, normalize, signature

Signature = tuple[int, int, int, int]  # (#g, #g*, #theta, #theta*)


class FieldCodec(NamedTuple):
    signature: Signature
    arg_roles: tuple[Role, ...]
    out_role: Role
    dual: bool
    # stored tensor = raw.transpose(layout), raw indexed [args..., out]
    layout: tuple[int, ...]


_G, _TH, _GS, _TS = Role.G, Role.THETA, Role.GSTAR, Role.THETASTAR

CODECS: dict[str, FieldCodec] = {
    "phi": FieldCodec((1, 0, 0, 1), (_TH,), _G, False, (1, 0)),
    "bracket": FieldCodec((1, 2, 0, 0), (_G, _G), _G, False, (0, 1, 2)),
    "action": FieldCodec((0, 1, 1, 1), (_G, _TH), _TH, False, (0, 1, 2)),
    "homotopy_h": FieldCodec((0, 3, 1, 0), (_G, _G, _G), _TH, False, (0, 1, 2, 3)),
    "delta": FieldCodec((1, 1, 1, 0), (_TS, _GS), _GS, True, (2, 1, 0)),
    "omega": FieldCodec((0, 0, 2, 1), (_TS, _TS), _TS, True, (2, 0, 1)),
    "eta": FieldCodec((0, 1, 3, 0), (_TS, _TS, _TS), _GS, True, (0, 1, 2, 3)),
}

# Coefficient of the canonical monomial per unit tensor entry at its sorted
# basis tuple. Canonical monomials (dual factors first, then theta, then g):
#   phi         kappa_a x_j                  args (u_a)
#   bracket     xi_i xi_j x_k,  i<j          args (x_i, x_j)
#   action      xi_i kappa_a u_b             args (x_i, u_a)
#   homotopy_h  xi_i xi_j xi_k u_a, i<j<k    args (x_i, x_j, x_k)
#   delta       xi_k u_a x_i                 dual args (kappa_a, xi_i)
#   omega       kappa_c u_a u_b,  a<b        dual args (kappa_a, kappa_b)
#   eta         xi_k u_a u_b u_c, a<b<c      dual args (kappa_a, kappa_b, kappa_c)
ENCODE_CONSTANTS: dict[str, int] = {
    "phi": 1,
    "bracket": -1,
    "action": 1,
    "homotopy_h": -1,
    "delta": -1,
    "omega": 1,
    "eta": 1,
}

ALGEBRA_FIELDS = ("phi", "bracket", "action", "homotopy_h")
COALGEBRA_FIELDS = ("phi", "delta", "omega", "eta")
ALGEBRA_SIGNATURES = {CODECS[f].signature for f in ALGEBRA_FIELDS}
COALGEBRA_SIGNATURES = {CODECS[f].signature for f in COALGEBRA_FIELDS}
BIALGEBRA_SIGNATURES = ALGEBRA_SIGNATURES | COALGEBRA_SIGNATURES

SIGNATURE_NAMES = {
    (1, 2, 0, 0): "eps12_00",
    (0, 1, 1, 1): "eps01_11",
    (0, 3, 1, 0): "eps03_10",
    (1, 0, 0, 1): "eps10_01",
    (0, 0, 2, 1): "eps00_21",
    (1, 1, 1, 0): "eps11_10",
    (0, 1, 3, 0): "eps01_30",
}


def signature_name(sig: Signature) -> str:
    p, q, k, l = sig
    return SIGNATURE_NAMES.get(sig, f"eps{p}{q}_{k}{l}")


def field_shape(space: SpaceSpec, name: str) -> tuple[int, ...]:
    codec = CODECS[name]
    raw = [space.dim(r) for r in codec.arg_roles] + [space.dim(codec.out_role)]
    return tuple(raw[i] for i in codec.layout)


def _generator_label(space: SpaceSpec, gen: Generator) -> str:
    labels = space.labels_g if gen.role in (_G, _GS) else space.labels_theta
    if labels is None:
        return str(gen)
    return labels[gen.index] + ("*" if gen.role.is_dual else "")


# -- the codec ----------------------------------------------------------------

def _out_value(codec: FieldCodec, value: SymElement, out: Generator) -> Fraction:
    coeff = value.coefficient((out,))
    if codec.dual:
        # the dual reading pairs the covector with a primal basis vector
        coeff *= generator_bracket(out.partner, out)
    return coeff


def decode_field(F: SymElement, name: str) -> np.ndarray:
    """Tensor of a structure map, evaluated by derived_map on every basis tuple."""
    codec = CODECS[name]
    space = F.space
    part = component(F, *codec.signature)
    arg_dims = [space.dim(r) for r in codec.arg_roles]
    out_dim = space.dim(codec.out_role)
    raw = T.fzeros(arg_dims + [out_dim])
    if part:
        for idx in product(*(range(d) for d in arg_dims)):
            args = [SymElement.gen(space, r, i) for r, i in zip(codec.arg_roles, idx)]
            value = derived_map(part, args, dual=codec.dual)
            for o in range(out_dim):
                raw[idx + (o,)] = _out_value(codec, value, Generator(codec.out_role, o))
    return raw.transpose(codec.layout).copy()


def _canonical_monomials(space: SpaceSpec, name: str):
    """(generators, stored-tensor index) for every canonical monomial of a field."""
    codec = CODECS[name]
    role_slots: dict[Role, list[int]] = {}
    for pos, r in enumerate(codec.arg_roles):
        role_slots.setdefault(r, []).append(pos)
    choices = []
    for r, slots in role_slots.items():
        choices.append([(r, c) for c in combinations(range(space.dim(r)), len(slots))])
    for picked in product(*choices):
        raw_idx = [0] * len(codec.arg_roles)
        gens = []
        for r, combo in picked:
            for pos, i in zip(role_slots[r], combo):
                raw_idx[pos] = i
                gens.append(Generator(r, i).partner)
        for o in range(space.dim(codec.out_role)):
            full = raw_idx + [o]
            stored = tuple(full[codec.layout[k]] for k in range(len(full)))
            yield gens + [Generator(codec.out_role, o)], stored


def encode_field(space: SpaceSpec, name: str, tensor: np.ndarray) -> SymElement:
    const = ENCODE_CONSTANTS[name]
    out = SymElement.zero(space)
    terms = {}
    for gens, idx in _canonical_monomials(space, name):
        c = tensor[idx]
        if c != 0:
            m, _ = normalize(gens)
            terms[m] = const * c
    if terms:
        out = SymElement(space, terms)
    return out


def unit_response(name: str) -> Fraction:
    """Tensor entry produced by the canonical monomial with coefficient 1.

    Recomputes the reciprocal of ``ENCODE_CONSTANTS[name]`` from the engine.
    """
    codec = CODECS[name]
    space = SpaceSpec(3, 3)
    gens, idx = next(iter(_canonical_monomials(space, name)))
    m, _ = normalize(gens)
    return decode_field(SymElement(space, {m: 1}), name)[idx]


def _check_stray(e: SymElement, allowed: set[Signature], what: str) -> None:
    stray = sorted(e.signatures() - allowed)
    if stray:
        names = ", ".join(signature_name(s) for s in stray)
        raise ValueError(f"element has components outside the {what} signatures: {names}")


# -- data types ---------------------------------------------------------------

def _coerce(space: SpaceSpec, name: str, value) -> np.ndarray:
    shape = field_shape(space, name)
    if value is None:
        return T.fzeros(shape)
    if isinstance(value, np.ndarray) and value.shape != shape:
        raise ValueError(f"{name}: shape {value.shape} does not match expected {shape}")
    return T.farray(value, shape)


_ALTERNATING_AXES = {
    "bracket": (0, 1),
    "homotopy_h": (0, 1, 2),
    "delta": (),
    "omega": (1, 2),
    "eta": (0, 1, 2),
}


def validate_alternating(name: str, t: np.ndarray) -> None:
    axes = _ALTERNATING_AXES.get(name)
    if not axes:
        return
    bad = T.alternation_defect(t, axes)
    if bad:
        raise ValueError(f"{name} is not alternating in slots {axes}: first bad entry {bad[0]}")


class _TensorData:
    _fields: tuple[str, ...] = ()
    space: SpaceSpec

    def _init_tensors(self, values: dict) -> None:
        for name in self._fields:
            t = _coerce(self.space, name, values.get(name))
            validate_alternating(name, t)
            object.__setattr__(self, name, t)

    def __eq__(self, other) -> bool:
        if type(other) is not type(self) or not self.space.same_dims(other.space):
            return False
        return all(T.equal(getattr(self, f), getattr(other, f)) for f in self._fields)

    def __hash__(self):
        return hash((type(self).__name__, self.space.dim_g, self.space.dim_theta))

    def tensors(self) -> dict[str, np.ndarray]:
        return {f: getattr(self, f) for f in self._fields}

    def __repr__(self) -> str:
        nz = [f for f in self._fields if not T.is_zero(getattr(self, f))]
        return f"{type(self).__name__}(dims=({self.space.dim_g}, {self.space.dim_theta}), nonzero={nz})"


@dataclass(frozen=True, eq=False, repr=False)
class Lie2AlgebraData(_TensorData):
    """(phi, bracket, action, homotopy_h) on the two-term complex theta -> g."""

    space: SpaceSpec
    phi: Optional[np.ndarray] = None
    bracket: Optional[np.ndarray] = None
    action: Optional[np.ndarray] = None
    homotopy_h: Optional[np.ndarray] = None
    _fields = ALGEBRA_FIELDS

    def __post_init__(self):
        self._init_tensors({f: getattr(self, f) for f in self._fields})

    @property
    def is_strict(self) -> bool:
        return T.is_zero(self.homotopy_h)


@dataclass(frozen=True, eq=False, repr=False)
class Lie2CoalgebraData(_TensorData):
    """(phi, delta, omega, eta): the dual two-term structure on g* + theta*."""

    space: SpaceSpec
    phi: Optional[np.ndarray] = None
    delta: Optional[np.ndarray] = None
    omega: Optional[np.ndarray] = None
    eta: Optional[np.ndarray] = None
    _fields = COALGEBRA_FIELDS

    def __post_init__(self):
        self._init_tensors({f: getattr(self, f) for f in self._fields})

    @property
    def is_strict(self) -> bool:
        return T.is_zero(self.eta)


# -- algebra side -------------------------------------------------------------

def algebra_to_element(d: Lie2AlgebraData) -> SymElement:
    out = SymElement.zero(d.space)
    for name in ALGEBRA_FIELDS:
        out = out + encode_field(d.space, name, getattr(d, name))
    return out


def element_to_algebra(l: SymElement) -> Lie2AlgebraData:
    _check_stray(l, ALGEBRA_SIGNATURES, "weak Lie 2-algebra")
    return Lie2AlgebraData(l.space, **{f: decode_field(l, f) for f in ALGEBRA_FIELDS})


def coalgebra_to_element(d: Lie2CoalgebraData) -> SymElement:
    out = SymElement.zero(d.space)
    for name in COALGEBRA_FIELDS:
        out = out + encode_field(d.space, name, getattr(d, name))
    return out


def element_to_coalgebra(c: SymElement) -> Lie2CoalgebraData:
    _check_stray(c, COALGEBRA_SIGNATURES, "weak Lie 2-coalgebra")
    return Lie2CoalgebraData(c.space, **{f: decode_field(c, f) for f in COALGEBRA_FIELDS})


def compatibility_defects(d: Lie2AlgebraData) -> dict[str, np.ndarray]:
    """The five compatibility identities as defect tensors (zero means satisfied).

    jacobi_up_to_h[i,j,k,n]          [[x,y],z] + c.p. + phi(h(x,y,z))
    representation_up_to_h[i,j,a,b]  y▷(x▷u) - x▷(y▷u) + [x,y]▷u + h(phi(u),x,y)
    peiffer_symmetry[a,c,b]          phi(u)▷v + phi(v)▷u
    phi_equivariance[i,a,k]          phi(x▷u) - [x,phi(u)]
    homotopy_coherence[i,j,k,l,a]    coherence of h on four g-arguments
    """
    P, B, A, H = d.phi, d.bracket, d.action, d.homotopy_h
    es = T.einsum
    jac = es("ijm,mkn->ijkn", B, B)
    jacobi_up_to_h = jac + jac.transpose(1, 2, 0, 3) + jac.transpose(2, 0, 1, 3) + es("na,ijka->ijkn", P, H)
    representation_up_to_h = (es("iac,jcb->ijab", A, A) - es("jac,icb->ijab", A, A)
           + es("ijm,mab->ijab", B, A) + es("ma,mijb->ijab", P, H))
    peiffer_symmetry = es("ma,mcb->acb", P, A)
    peiffer_symmetry = peiffer_symmetry + peiffer_symmetry.transpose(1, 0, 2)
    phi_equivariance = es("iab,kb->iak", A, P) - es("ma,imk->iak", P, B)
    # w▷h(x,y,z) etc. with (x,y,z,w) = (i,j,k,l)
    act_h = es("ijkc,lca->ijkla", H, A)          # x_l ▷ h(x_i,x_j,x_k)
    h_br = es("ijm,mkla->ijkla", B, H)           # h([x_i,x_j],x_k,x_l)
    lhs = (-act_h
           - _permute(act_h, (0, 2, 3, 1))
           + _permute(act_h, (0, 1, 3, 2))
           + _permute(act_h, (1, 2, 3, 0)))
    rhs = (h_br
           - _permute(h_br, (0, 2, 1, 3))
           + _permute(h_br, (0, 3, 1, 2))
           + _permute(h_br, (1, 2, 0, 3))
           - _permute(h_br, (1, 3, 0, 2))
           + _permute(h_br, (2, 3, 0, 1)))
    homotopy_coherence = lhs - rhs
    return {"jacobi_up_to_h": jacobi_up_to_h, "representation_up_to_h": representation_up_to_h,
            "peiffer_symmetry": peiffer_symmetry, "phi_equivariance": phi_equivariance,
            "homotopy_coherence": homotopy_coherence}


def _permute(t: np.ndarray, order: tuple[int, ...]) -> np.ndarray:
    """s[i0,i1,i2,i3,o] = t[i_order[0], i_order[1], i_order[2], i_order[3], o]."""
    return t.transpose(*np.argsort(order), 4)


# argument roles of each identity; the last tensor axis is the output
IDENTITY_ARGS = {
    "jacobi_up_to_h": ((_G, _G, _G), _G),
    "representation_up_to_h": ((_G, _G, _TH), _TH),
    "peiffer_symmetry": ((_TH, _TH), _TH),
    "phi_equivariance": ((_G, _TH), _G),
    "homotopy_coherence": ((_G, _G, _G, _G), _TH),
}
IDENTITY_NAMES = tuple(IDENTITY_ARGS)


def _vector_element(space: SpaceSpec, role: Role, coords) -> SymElement:
    return SymElement(space, {(Generator(role, i),): c for i, c in enumerate(coords) if c != 0})


def _report_defects(space: SpaceSpec, defects: dict[str, np.ndarray], report: Report,
                    swap: bool = False) -> None:
    """Record violating tuples; ``swap`` translates a dual-algebra reading back to g*, theta*."""
    home = space.swapped() if swap else space

    def home_role(r: Role) -> Role:
        return SWAP_ROLES[r] if swap else r

    for name, t in defects.items():
        report.add_check(name)
        arg_roles, out_role = IDENTITY_ARGS[name]
        for idx in np.ndindex(t.shape[:-1]):
            vec = t[idx]
            if any(v != 0 for v in vec):
                labels = [_generator_label(home, Generator(home_role(r), i)) for r, i in zip(arg_roles, idx)]
                report.fail(name, labels, _vector_element(home, home_role(out_role), vec))


def verify_weak_lie2_algebra(d: Lie2AlgebraData) -> Report:
    """The five identities on all basis tuples, then the master equation {l,l} = 0."""
    report = Report()
    _report_defects(d.space, compatibility_defects(d), report)
    l = algebra_to_element(d)
    ll = big_bracket(l, l)
    report.add_check("master_equation")
    if ll:
        report.fail("master_equation", ("l", "l"), ll)
    return report


# eps_{{l,l}}(args) = factor * (defect tensor of the identity) on every basis
# tuple. The factor is uniformly 2, including on the h(phi(u),x,y) term of
# representation_up_to_h; homotopy_coherence is stored as (action terms) -
# (bracket terms), which {l,l} sees with the opposite sign, hence -2.
MASTER_EQUATION_FACTORS: dict[str, int] = {"jacobi_up_to_h": 2, "representation_up_to_h": 2,
                                           "peiffer_symmetry": 2, "phi_equivariance": 2,
                                           "homotopy_coherence": -2}


def master_equation_components(d: Lie2AlgebraData) -> dict[str, np.ndarray]:
    """Derived maps of {l,l} on the argument tuples of each identity, as tensors."""
    space = d.space
    l = algebra_to_element(d)
    ll = big_bracket(l, l)
    out = {}
    for name, (arg_roles, out_role) in IDENTITY_ARGS.items():
        dims = [space.dim(r) for r in arg_roles]
        t = T.fzeros(dims + [space.dim(out_role)])
        if ll:
            for idx in product(*(range(n) for n in dims)):
                args = [SymElement.gen(space, r, i) for r, i in zip(arg_roles, idx)]
                try:
                    value = derived_map(ll, args)
                except ValueError:
                    # {l,l} mixes arities; evaluate the matching component only
                    value = derived_map(ll.filter(lambda m: sum(g.role.is_dual for g in m) == len(args)), args)
                for o in range(space.dim(out_role)):
                    t[idx + (o,)] = value.coefficient((Generator(out_role, o),))
        out[name] = t
    return out


# -- coalgebra side -----------------------------------------------------------

def coalgebra_as_dual_algebra(d: Lie2CoalgebraData) -> Lie2AlgebraData:
    """The same structure read as a weak Lie 2-algebra on g* -> theta*.

    Its element is the role-swapped image of the coalgebra element, so the
    five identities of the dual algebra are the coalgebra identities.
    """
    return Lie2AlgebraData(
        d.space.swapped(),
        phi=d.phi.T.copy(),
        bracket=-d.omega.transpose(1, 2, 0),
        action=d.delta.transpose(2, 1, 0).copy(),
        homotopy_h=d.eta.copy(),
    )


def dual_algebra_as_coalgebra(a: Lie2AlgebraData) -> Lie2CoalgebraData:
    return Lie2CoalgebraData(
        a.space.swapped(),
        phi=a.phi.T.copy(),
        delta=a.action.transpose(2, 1, 0).copy(),
        omega=-a.bracket.transpose(2, 0, 1),
        eta=a.homotopy_h.copy(),
    )


def verify_weak_lie2_coalgebra(d: Lie2CoalgebraData) -> Report:
    """Five identities of the dual reading (labelled in g*, theta*) and {c,c} = 0."""
    report = Report()
    dual = coalgebra_as_dual_algebra(d)
    _report_defects(dual.space, compatibility_defects(dual), report, swap=True)
    c = coalgebra_to_element(d)
    cc = big_bracket(c, c)
    report.add_check("master_equation")
    if cc:
        report.fail("master_equation", ("c", "c"), cc)
    return report


# -- bialgebras ---------------------------------------------------------------

class BialgebraElement:
    """A degree -4 element supported on the seven weak Lie 2-bialgebra signatures."""

    __slots__ = ("eps",)

    def __init__(self, eps: SymElement):
        _check_stray(eps, BIALGEBRA_SIGNATURES, "weak Lie 2-bialgebra")
        self.eps = eps

    @property
    def space(self) -> SpaceSpec:
        return self.eps.space

    def part(self, name: str) -> SymElement:
        return component(self.eps, *CODECS[name].signature)

    @property
    def is_quasi(self) -> bool:
        return not self.part("homotopy_h")

    @property
    def is_strict(self) -> bool:
        return not self.part("homotopy_h") and not self.part("eta")

    def algebra_part(self) -> SymElement:
        return self.eps.filter(lambda m: signature(m) in ALGEBRA_SIGNATURES)

    def coalgebra_part(self) -> SymElement:
        return self.eps.filter(lambda m: signature(m) in COALGEBRA_SIGNATURES)

    def __eq__(self, other) -> bool:
        return isinstance(other, BialgebraElement) and self.eps == other.eps

    def __hash__(self) -> int:
        return hash(self.eps)

    def __repr__(self) -> str:
        return f"BialgebraElement({self.eps.render()})"


def assemble_bialgebra(alg: Lie2AlgebraData, coalg: Lie2CoalgebraData) -> BialgebraElement:
    if not alg.space.same_dims(coalg.space):
        raise ValueError("algebra and coalgebra live on different spaces")
    if not T.equal(alg.phi, coalg.phi):
        raise ValueError("algebra and coalgebra disagree on phi")
    eps = algebra_to_element(alg) + coalgebra_to_element(coalg) - encode_field(alg.space, "phi", alg.phi)
    return BialgebraElement(eps)


def project_algebra(e: BialgebraElement) -> Lie2AlgebraData:
    return element_to_algebra(e.algebra_part())


def project_coalgebra(e: BialgebraElement) -> Lie2CoalgebraData:
    return element_to_coalgebra(e.coalgebra_part())


def bialgebra_parts(e: BialgebraElement) -> dict[str, SymElement]:
    """{eps,eps} split as {l,l} + {c,c} + 2{l - Phi, c - Phi}, Phi the shared phi-term.

    The three parts have disjoint signatures: {l,l} has one primal factor,
    {c,c} one dual factor, and the mixed part at least two of each.
    """
    l = e.algebra_part()
    c = e.coalgebra_part()
    shared = e.part("phi")
    mixed = big_bracket(l - shared, c - shared)
    return {"algebra": big_bracket(l, l), "coalgebra": big_bracket(c, c), "mixed": mixed + mixed}


def verify_bialgebra(e: BialgebraElement) -> Report:
    report = Report()
    whole = big_bracket(e.eps, e.eps)
    parts = bialgebra_parts(e)
    for name, value in parts.items():
        report.add_check(name)
        if value:
            report.fail(name, ("eps", "eps"), value)
    report.add_check("master_equation")
    if whole:
        report.fail("master_equation", ("eps", "eps"), whole)
    return report
