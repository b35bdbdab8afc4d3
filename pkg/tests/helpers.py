"""Independent oracles and random generators shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

import numpy as np
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lie2bialg import tensors as T
from lie2bialg.graded import Generator, Role, SpaceSpec
from lie2bialg.structures import Lie2AlgebraData, Lie2CoalgebraData
from lie2bialg.symalg import SymElement, sym_product

PROPERTY = settings(deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True)

# properties draw a seed; the generators below build the instance from it
rngs = st.integers(min_value=0, max_value=2**32 - 1).map(random.Random)


# -- a product oracle: sign of the sorting permutation restricted to odd factors

def oracle_normalize(gens):
    """Canonical order and sign computed from the permutation of odd factors."""
    gens = list(gens)
    order = sorted(range(len(gens)), key=lambda i: gens[i])
    out = tuple(gens[i] for i in order)
    for a, b in zip(out, out[1:]):
        if a == b and a.role.odd:
            return None
    odd_positions = [i for i in order if gens[i].role.odd]
    inversions = sum(1 for x in range(len(odd_positions)) for y in range(x + 1, len(odd_positions))
                     if odd_positions[x] > odd_positions[y])
    return out, -1 if inversions % 2 else 1


# -- an axiom-recursive big bracket oracle --------------------------------------
# Built only from: the generator rule {v, e} = (-1)^{|v|} <v, e>, shifted
# antisymmetry, and the Leibniz rule in the second slot.

def _deg(m) -> int:
    return sum(g.role.degree for g in m)


def _sgn(k: int) -> int:
    return -1 if k % 2 else 1


def _gen_rule(a: Generator, b: Generator) -> int:
    if not a.role.is_dual and b.role.is_dual:
        return _sgn(a.degree) if b == a.partner else 0
    if a.role.is_dual and not b.role.is_dual:
        # antisymmetry applied to {b, a}
        return -_sgn((a.degree + 3) * (b.degree + 3)) * _gen_rule(b, a)
    return 0


@lru_cache(maxsize=None)
def _oracle_mono(m1: tuple, m2: tuple) -> tuple:
    """{m1, m2} for raw generator tuples, as a tuple of (raw product, coeff)."""
    if not m1 or not m2:
        return ()
    if len(m2) > 1:
        b, rest = m2[:1], m2[1:]
        out = []
        # {a, b rest} = {a, b} rest + (-1)^{(|a|+3)|b|} b {a, rest}
        for mono, c in _oracle_mono(m1, b):
            out.append((mono + rest, c))
        s = _sgn((_deg(m1) + 3) * _deg(b))
        for mono, c in _oracle_mono(m1, rest):
            out.append((b + mono, s * c))
        return tuple(out)
    if len(m1) > 1:
        s = -_sgn((_deg(m1) + 3) * (_deg(m2) + 3))
        return tuple((mono, s * c) for mono, c in _oracle_mono(m2, m1))
    c = _gen_rule(m1[0], m2[0])
    return (((), c),) if c else ()


def oracle_bracket(e1: SymElement, e2: SymElement) -> SymElement:
    space = e1.space
    out = SymElement.zero(space)
    for m1, c1 in e1.items():
        for m2, c2 in e2.items():
            for raw, c in _oracle_mono(m1, m2):
                out = out + SymElement.from_generators(space, raw, c * c1 * c2)
    return out


# -- random elements -----------------------------------------------------------

def small_fraction(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-3, 3), rng.choice([1, 1, 2, 3]))


def nonzero_fraction(rng: random.Random) -> Fraction:
    while True:
        q = small_fraction(rng)
        if q:
            return q


def random_space(rng: random.Random, dims=(1, 2, 3)) -> SpaceSpec:
    return SpaceSpec(rng.choice(dims), rng.choice(dims))


def random_monomial(rng: random.Random, space: SpaceSpec, sig) -> tuple:
    p, q, k, l = sig
    gens = []
    for role, count in ((Role.G, p), (Role.GSTAR, q), (Role.THETA, k), (Role.THETASTAR, l)):
        gens += [Generator(role, rng.randrange(space.dim(role))) for _ in range(count)]
    return tuple(gens)


def random_signature(rng: random.Random, max_factors: int = 4):
    while True:
        sig = tuple(rng.randint(0, 2) for _ in range(4))
        if 1 <= sum(sig) <= max_factors:
            return sig


def random_homogeneous(rng: random.Random, space: SpaceSpec, degree=None, terms: int = 3,
                       max_factors: int = 4) -> SymElement:
    """A nonzero homogeneous element (its degree is fixed by the first signature drawn)."""
    while True:
        sig = random_signature(rng, max_factors)
        deg = -2 * sig[0] - sig[1] - sig[2] - 2 * sig[3]
        if degree is not None and deg != degree:
            continue
        out = SymElement.zero(space)
        for _ in range(terms):
            s2 = sig if rng.random() < 0.5 else _same_degree_signature(rng, sig, max_factors)
            out = out + SymElement.from_generators(space, random_monomial(rng, space, s2), nonzero_fraction(rng))
        if out:
            return out


def _same_degree_signature(rng: random.Random, sig, max_factors: int):
    deg = -2 * sig[0] - sig[1] - sig[2] - 2 * sig[3]
    for _ in range(50):
        other = random_signature(rng, max_factors)
        if -2 * other[0] - other[1] - other[2] - 2 * other[3] == deg:
            return other
    return sig


def random_in_roles(rng: random.Random, space: SpaceSpec, roles, terms: int = 2) -> SymElement:
    """A nonzero linear combination of generators of one role (a single degree)."""
    role = rng.choice(roles)
    while True:
        out = SymElement.zero(space)
        for _ in range(terms):
            out = out + SymElement.gen(space, role, rng.randrange(space.dim(role)), nonzero_fraction(rng))
        if out:
            return out


def random_element_of_signature(rng: random.Random, space: SpaceSpec, sig, terms: int = 3) -> SymElement:
    out = SymElement.zero(space)
    for _ in range(terms):
        out = out + SymElement.from_generators(space, random_monomial(rng, space, sig), nonzero_fraction(rng))
    return out


def product(*es: SymElement) -> SymElement:
    out = es[0]
    for e in es[1:]:
        out = sym_product(out, e)
    return out


# -- random tensors ------------------------------------------------------------

def alternating(rng: random.Random, shape, axes, density: float = 0.6) -> np.ndarray:
    """Random tensor alternating in ``axes`` (entries from small fractions)."""
    t = T.fzeros(shape)
    axes = tuple(axes)
    for idx in np.ndindex(*shape):
        sub = [idx[a] for a in axes]
        if len(set(sub)) < len(sub) or sub != sorted(sub):
            continue
        if rng.random() > density:
            continue
        v = small_fraction(rng)
        for p in permutations(range(len(axes))):
            j = list(idx)
            for src, dst in zip(axes, p):
                j[src] = idx[axes[dst]]
            t[tuple(j)] = T.perm_sign(p) * v
    return t


def random_algebra(rng: random.Random, space: SpaceSpec, strict: bool = False) -> Lie2AlgebraData:
    m, n = space.dim_g, space.dim_theta
    return Lie2AlgebraData(
        space,
        phi=alternating(rng, (m, n), ()),
        bracket=alternating(rng, (m, m, m), (0, 1)),
        action=alternating(rng, (m, n, n), ()),
        homotopy_h=None if strict else alternating(rng, (m, m, m, n), (0, 1, 2)),
    )


def random_coalgebra(rng: random.Random, space: SpaceSpec, phi=None) -> Lie2CoalgebraData:
    m, n = space.dim_g, space.dim_theta
    return Lie2CoalgebraData(
        space,
        phi=phi if phi is not None else alternating(rng, (m, n), ()),
        delta=alternating(rng, (m, m, n), ()),
        omega=alternating(rng, (n, n, n), (1, 2)),
        eta=alternating(rng, (n, n, n, m), (0, 1, 2)),
    )


def element_with_arity(rng, space, q, terms=2):
    """A random element with q dual factors (its arity as a multilinear map)."""
    while True:
        gs = rng.randint(0, q)
        sig = (rng.randint(0, 2), gs, rng.randint(0, 2), q - gs)
        if sum(sig) <= 5:
            return random_element_of_signature(rng, space, sig, terms)
