import random
from fractions import Fraction

import pytest
from hypothesis import given

from helpers import PROPERTY, rngs
from lie2bialg import tensors as T
from lie2bialg.crossed import (
    BialgebraCrossedModule,
    DeltaOmega,
    D_phi,
    LieAlgebraCrossedModule,
    MatchedPairData,
    bcm_to_data,
    bcm_to_lie2bialgebra,
    build_double,
    check_W_membership,
    cobracket_partial,
    delta_omega_to_dual_cm,
    dual_cm_to_delta_omega,
    induce_theta_bracket,
    lie2bialgebra_to_bcm,
    matched_pair_defects,
    matched_pair_from_bcm,
    project_wedge2_theta,
    quotient_construction,
    restrict_bialgebras,
    verify_bialgebra_cm,
    verify_crossed_module,
    verify_restrictions,
    w2_consequence,
)
from lie2bialg.examples import ax_plus_b_bialgebra, so3, trivial_bcm
from lie2bialg.exterior import ExteriorElement, act
from lie2bialg.instances import perturb_bcm, random_bcm, random_lie_bialgebra
from lie2bialg.lie import LieBialgebra, is_lie, verify_lie_bialgebra
from lie2bialg.structures import assemble_bialgebra, bialgebra_parts, verify_bialgebra


def _ident(n):
    return T.farray([[int(i == j) for j in range(n)] for i in range(n)], (n, n))


def test_adjoint_crossed_module():
    c = so3().constants
    assert verify_crossed_module(LieAlgebraCrossedModule(c, c, _ident(3), c)).passed


def test_zero_crossed_module():
    assert verify_crossed_module(LieAlgebraCrossedModule.zero(2, 3)).passed


def test_broken_peiffer_is_reported():
    c = so3().constants
    cm = LieAlgebraCrossedModule(T.fzeros((3, 3, 3)), c, _ident(3), c)
    rep = verify_crossed_module(cm)
    assert "peiffer" in rep.failed_checks()
    assert rep.witnesses_for("peiffer")[0].args == ("t0", "t1")


def test_induced_bracket_is_the_peiffer_one():
    c = so3().constants
    cm = induce_theta_bracket(c, c, _ident(3))
    assert T.equal(cm.lie_theta, c)


def test_induce_rejects_non_equivariant_map():
    c = so3().constants
    phi = T.fzeros((3, 1))
    phi[0, 0] = 1
    with pytest.raises(ValueError, match="equivariance"):
        induce_theta_bracket(c, T.fzeros((3, 1, 1)), phi)


# -- (delta, omega) calculus ---------------------------------------------------

def _sample_bcm(seed=0):
    rng = random.Random(seed)
    while True:
        b = random_bcm(rng)
        if b.dim_g and b.dim_theta and not T.is_zero(b.cm.phi):
            return b


def test_D_phi_on_generators():
    b = _sample_bcm()
    m, n = b.dim_g, b.dim_theta
    labels = b.delta_omega().labels
    x = ExteriorElement(m + n, {(0,): 1}, labels)
    assert not D_phi(x, b.cm.phi)
    u = ExteriorElement(m + n, {(m,): 1}, labels)
    phi_u = ExteriorElement(m + n, {(j,): b.cm.phi[j, 0] for j in range(m)}, labels)
    assert D_phi(u, b.cm.phi) == phi_u
    assert not D_phi(ExteriorElement(m + n, labels=labels), b.cm.phi)


@PROPERTY
@given(rngs)
def test_D_phi_is_an_even_derivation(rng):
    b = random_bcm(rng)
    m, n = b.dim_g, b.dim_theta
    if n < 2:
        return
    labels = b.delta_omega().labels
    u = ExteriorElement(m + n, {(m,): 1}, labels)
    v = ExteriorElement(m + n, {(m + 1,): 1}, labels)
    phi = b.cm.phi
    assert D_phi(u.wedge(v), phi) == D_phi(u, phi).wedge(v) + u.wedge(D_phi(v, phi))


@PROPERTY
@given(rngs)
def test_delta_omega_roundtrip(rng):
    b = random_bcm(rng)
    d = b.delta_omega()
    assert delta_omega_to_dual_cm(d, b.cm.phi) == b.dual_cm
    assert dual_cm_to_delta_omega(b.dual_cm) == d


@PROPERTY
@given(rngs)
def test_delta_lies_in_W2_and_its_consequence_vanishes(rng):
    b = random_bcm(rng)
    d = b.delta_omega()
    for k in range(b.dim_g):
        assert check_W_membership(d.delta_wedge(k), 2, b.cm.phi)
    assert T.is_zero(w2_consequence(d, b.cm.phi))


@PROPERTY
@given(rngs)
def test_cobracket_partial_on_theta_is_omega(rng):
    b = random_bcm(rng)
    d, m, n = b.delta_omega(), b.dim_g, b.dim_theta
    for c in range(n):
        coords = [0] * (m + n)
        coords[m + c] = 1
        assert cobracket_partial(d, b.cm.phi, coords) == d.omega_wedge(c)


def test_cobracket_partial_vanishes_without_delta_and_omega():
    b = _sample_bcm()
    m, n = b.dim_g, b.dim_theta
    d = DeltaOmega(T.fzeros((m, m, n)), T.fzeros((n, n, n)))
    for p in range(m + n):
        coords = [int(q == p) for q in range(m + n)]
        assert not cobracket_partial(d, b.cm.phi, coords)


@PROPERTY
@given(rngs)
def test_cobracket_partial_is_minus_the_dual_bracket_transpose(rng):
    # <partial(E), a∧b> = -<E, [a, b]> while the LieBialgebra cobracket uses +
    b = random_bcm(rng)
    d, m, n = b.delta_omega(), b.dim_g, b.dim_theta
    sd = b.semidirect()
    for p in range(m + n):
        coords = [int(q == p) for q in range(m + n)]
        expected = sd.cobracket(p)
        assert cobracket_partial(d, b.cm.phi, coords) == -expected


@PROPERTY
@given(rngs)
def test_projection_after_D_phi(rng):
    # Pr(ad_v D_phi(z)) = ad_v z for v in θ and z in ∧²θ
    b = random_bcm(rng)
    m, n = b.dim_g, b.dim_theta
    if n < 2:
        return
    sd = b.semidirect()
    labels = sd.labels
    z = ExteriorElement(m + n, {(m + a, m + c): Fraction(rng.randint(-3, 3))
                                for a in range(n) for c in range(a + 1, n)}, labels)
    for v in range(m, m + n):
        e_v = [int(q == v) for q in range(m + n)]
        lhs = project_wedge2_theta(act(sd.bracket, e_v, D_phi(z, b.cm.phi)), m)
        assert lhs == act(sd.bracket, e_v, z)


# -- Lie bialgebra crossed modules ---------------------------------------------

@PROPERTY
@given(rngs)
def test_random_bcms_verify(rng):
    b = random_bcm(rng)
    assert verify_bialgebra_cm(b).passed
    assert verify_lie_bialgebra(b.semidirect()).passed


@PROPERTY
@given(rngs)
def test_swap_symmetry(rng):
    b = random_bcm(rng)
    s = b.swapped()
    assert verify_bialgebra_cm(s).passed
    assert s.swapped() == b


@PROPERTY
@given(rngs)
def test_bcm_element_roundtrip(rng):
    b = random_bcm(rng)
    e = bcm_to_lie2bialgebra(b)
    assert e.is_strict
    assert verify_bialgebra(e).passed
    assert lie2bialgebra_to_bcm(e) == b


def test_invalid_bcm_is_not_converted():
    rng = random.Random(1)
    while True:
        pb, _, _ = perturb_bcm(rng, _sample_bcm(5), "action")
        if not verify_bialgebra_cm(pb).passed:
            break
    with pytest.raises(ValueError, match="not a Lie bialgebra crossed module"):
        bcm_to_lie2bialgebra(pb)


@PROPERTY
@given(rngs)
def test_components_of_the_master_equation(rng):
    # algebra part <-> crossed module, coalgebra part <-> dual crossed module,
    # mixed part <-> the two compatibility conditions
    b = random_bcm(rng)
    try:
        pb, _, _ = perturb_bcm(rng, b)
    except ValueError:
        pb = b
    rep = verify_bialgebra_cm(pb)
    parts = bialgebra_parts(assemble_bialgebra(*bcm_to_data(pb)))
    assert parts["algebra"].is_zero() == verify_crossed_module(pb.cm).passed
    assert parts["coalgebra"].is_zero() == (verify_crossed_module(pb.dual_cm).passed
                                            and rep.check_passed("dual_map"))
    assert parts["mixed"].is_zero() == (rep.check_passed("delta_cocycle") and rep.check_passed("condition2"))


# -- matched pairs and the double ------------------------------------------------

@PROPERTY
@given(rngs)
def test_matched_pair_of_a_valid_bcm(rng):
    b = random_bcm(rng)
    mp = matched_pair_from_bcm(b)
    assert matched_pair_defects(mp).passed
    assert is_lie(build_double(mp))


def test_matched_pair_with_zero_actions():
    c = so3().constants
    mp = MatchedPairData(c, c, T.fzeros((3, 3, 3)), T.fzeros((3, 3, 3)))
    assert matched_pair_defects(mp).passed


def test_broken_action_gives_matched_pair_witness():
    c = so3().constants
    R = T.fzeros((3, 3, 3))
    R[0, 0, 1] = 1
    rep = matched_pair_defects(MatchedPairData(c, c, R, T.fzeros((3, 3, 3))))
    assert not rep.passed
    with pytest.raises(ValueError, match="not a matched pair"):
        build_double(MatchedPairData(c, c, R, T.fzeros((3, 3, 3))))


@PROPERTY
@given(rngs)
def test_double_of_trivial_bcm_is_the_coadjoint_double(rng):
    bl = random_lie_bialgebra(rng)
    n = bl.dim
    B = bl.bracket
    Dp = -bl.dual_bracket  # the bracket carried on theta*
    double = build_double(matched_pair_from_bcm(trivial_bcm(bl)))
    for i in range(n):
        for a in range(n):
            expect = [Fraction(0)] * (2 * n)
            for b_ in range(n):
                expect[n + b_] -= B[i, b_, a]
            for c in range(n):
                expect[c] += Dp[a, c, i]
            assert list(double[i, n + a]) == expect


def test_double_of_abelian_pair_is_abelian():
    z = T.fzeros((2, 2, 2))
    assert T.is_zero(build_double(MatchedPairData(z, z, z, z)))


# -- constructions from Lie bialgebras -----------------------------------------

@PROPERTY
@given(rngs)
def test_quotient_by_zero_is_the_trivial_bcm(rng):
    bl = random_lie_bialgebra(rng)
    assert quotient_construction(bl, []) == trivial_bcm(bl)


def test_quotient_rejects_non_central_ideal():
    with pytest.raises(ValueError, match="not central"):
        quotient_construction(ax_plus_b_bialgebra(), [[0, 1]])


def test_quotient_rejects_omega_violation():
    # abelian bracket, so every line is central; dual bracket [k0, k1] = k1
    D = T.fzeros((2, 2, 2))
    D[0, 1, 1], D[1, 0, 1] = 1, -1
    bl = LieBialgebra(T.fzeros((2, 2, 2)), D)
    with pytest.raises(ValueError, match="omega"):
        quotient_construction(bl, [[0, 1]])
    assert verify_bialgebra_cm(quotient_construction(bl, [[1, 0]])).passed


def test_quotient_rejects_dependent_basis():
    with pytest.raises(ValueError, match="dependent"):
        quotient_construction(ax_plus_b_bialgebra(), [[1, 0], [2, 0]])


def test_trivial_bcm_rejects_non_bialgebra():
    D = T.fzeros((3, 3, 3))
    D[0, 1, 0], D[1, 0, 0] = 1, -1
    with pytest.raises(ValueError, match="not a Lie bialgebra"):
        trivial_bcm(LieBialgebra(so3().constants, D))


@PROPERTY
@given(rngs)
def test_restrictions_are_lie_bialgebras(rng):
    b = random_bcm(rng)
    assert verify_restrictions(b).passed
    theta, g = restrict_bialgebras(b)
    assert theta.dim == b.dim_theta and g.dim == b.dim_g


def test_bcm_dimension_mismatch():
    with pytest.raises(ValueError, match="dimensions"):
        BialgebraCrossedModule(LieAlgebraCrossedModule.zero(2, 1), LieAlgebraCrossedModule.zero(2, 1))
