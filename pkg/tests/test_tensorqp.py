import random

import pytest

from rinehart.glmodules import MuVector, natural_module, rep_check
from rinehart.sampling import Sampler
from rinehart.scalars import Scalar
from rinehart.smash import SmashElement, psi_map, theta_project
from rinehart.superpoly import Signature, SuperPoly
from rinehart.tensorqp import (
    LoopTensor,
    QPStructure,
    TensorVec,
    degree_zero_basis,
    full_to_loop,
    induced_gl_module,
    operator_identity_check,
    loop_a_act,
    loop_g_act,
    loop_smash_act,
    loop_to_full,
    omega_extract,
    omega_greedy,
    phi_operator,
    qp_apply,
    qp_axiom_check,
    qp_axiom_suite,
    rho_of,
    shen_act,
    t_act,
    t_act_gens,
    theta_map,
    theta_transport,
    tprime_weight,
)
from rinehart.vectorfields import QPElement, VectorField


def unit_vec(sig, idx, coeff=1):
    return TensorVec.basis(sig, sig.zero_exps(), 0, idx, coeff)


# ---------- the twisted action on the full module ----------

def test_shen_act_examples(sig11):
    sig = sig11
    omega = natural_module(1, 1)
    mu = MuVector.zero(1, 1)
    # f = 1: pure derivation part
    g = SuperPoly.monomial(sig, (2, 1), 0)
    w = TensorVec.basis(sig, (2, 1), 0, 0)
    got = shen_act(SuperPoly.one(sig), 0, w, mu, omega)
    assert got == w * 2  # d0 eigenvalue of t0^2 t1

    # f = t0, alpha = 0 on 1⊗e0: t0 ⊗ E_{0,0}e0
    got = shen_act(SuperPoly.t_var(sig, 0), 0, unit_vec(sig, 0), mu, omega)
    assert got == TensorVec.basis(sig, (1, 0), 0, 0)

    assert shen_act(
        SuperPoly.t_var(sig, 0), 0, TensorVec.zero(sig), mu, omega
    ).is_zero()

    # nonzero shift vector contributes mu(alpha) g ⊗ v
    mu2 = MuVector(1, 1, (Scalar(3), Scalar(0), Scalar(0)))
    got = shen_act(SuperPoly.one(sig), 0, unit_vec(sig, 1), mu2, omega)
    assert got == unit_vec(sig, 1, 3)


# ---------- the structure triple ----------

def test_qp_apply_examples(structure12):
    S = structure12
    dot = S.sig
    v = unit_vec(dot, 1)
    # auxiliary action feeds the 0-th row: phihat_{d_1}(1⊗e_1) = -1⊗E_{0,1}e_1
    got = qp_apply("phihat", VectorField.basis(dot, ("d", 1)), v, S)
    assert got == unit_vec(dot, 0, -1)
    # odd derivations kill the unit slice when the odd shifts vanish
    got = qp_apply("psi", VectorField.basis(dot, ("q", 1)), unit_vec(dot, 0), S)
    assert got.is_zero()
    z1 = SuperPoly.zeta(dot, 1)
    got = qp_apply("phi", z1, TensorVec.basis(dot, dot.zero_exps(), 0b1, 0), S)
    assert got.is_zero()


def test_qp_axioms_all_pass(structure12, sampler):
    report = qp_axiom_suite(structure12, sampler, 40)
    assert all(report[a]["pass"] for a in range(1, 8)), report


def test_qp_axioms_zero_module():
    from rinehart.glmodules import zero_action_module

    dot = Signature(1, 1, False)
    zero = QPStructure(dot, zero_action_module(1, 1, 0), MuVector.zero(1, 1))
    s = Sampler(random.Random(4), 2)
    report = qp_axiom_suite(zero, s, 10)
    assert all(report[a]["pass"] for a in range(1, 8))


def test_mutation_breaks_axiom_six(structure12):
    S = structure12.replaced(phihat_fn=lambda S, x, w: TensorVec.zero(S.sig))
    dot = S.sig
    x = QPElement.from_field(VectorField.basis(dot, ("d", 1)))
    y = QPElement.from_poly(SuperPoly.t_var(dot, 1))
    lhs, rhs = qp_axiom_check(S, 6, x=x, y=y, w=unit_vec(dot, 1))
    assert lhs != rhs
    # the other axioms survive the mutation
    s = Sampler(random.Random(11), 2)
    report = qp_axiom_suite(S, s, 25)
    for a in (1, 2, 3, 4, 5, 7):
        assert report[a]["pass"], (a, report[a])


# ---------- loop module ----------

def test_loop_smash_act_examples(structure12, sampler):
    S = structure12
    dot = S.sig
    full = dot.full()
    one_qp = QPElement.from_poly(SuperPoly.one(dot))

    # generators with opposite unit-direction exponents act by -phihat
    for tag in (("d", 0), ("d", 1), ("q", 1), ("q", 2)):
        from rinehart.smash import make_X

        x = make_X(full, (1, 0), 0, tag)
        u = sampler.tensor(dot, S.omega)
        got = loop_smash_act(x, LoopTensor.wrap(0, u), S)
        hat = one_qp if tag == ("d", 0) else QPElement.from_field(
            VectorField.basis(dot, tag)
        )
        assert got == LoopTensor.wrap(0, -S.phihat(hat, u))

    # (1 # d0) ∗ (t0 ⊗ u) = t0 ⊗ (psi_1(u) + phi_1(u))
    u = sampler.tensor(dot, S.omega)
    got = loop_smash_act(
        SmashElement.from_field(VectorField.basis(full, ("d", 0))),
        LoopTensor.wrap(1, u),
        S,
    )
    assert got == LoopTensor.wrap(1, S.psi(one_qp, u) + u)

    # algebra terms multiply through the algebra action
    a = SuperPoly.monomial(full, (2, -1), 0b1)
    w = LoopTensor.wrap(3, u)
    assert loop_smash_act(SmashElement.from_poly(a), w, S) == loop_a_act(a, w, S)


def test_loop_module_law_and_leibniz(structure12, sampler):
    S = structure12
    dot = S.sig
    full = dot.full()
    for _ in range(60):
        x, y = sampler.loop_qp(dot), sampler.loop_qp(dot)
        w = sampler.loop_tensor(dot, S.omega)
        sign = (-1) ** (x.parity() * y.parity())
        from rinehart.vectorfields import loop_apply_to_poly, loop_bracket

        assert loop_g_act(loop_bracket(x, y), w, S) == loop_g_act(
            x, loop_g_act(y, w, S), S
        ) - sign * loop_g_act(y, loop_g_act(x, w, S), S)

        a = sampler.monomial(full)
        sign = (-1) ** (x.parity() * a.parity())
        lhs = loop_g_act(x, loop_a_act(a, w, S), S)
        rhs = loop_a_act(loop_apply_to_poly(x, a), w, S) + sign * loop_a_act(
            a, loop_g_act(x, w, S), S
        )
        assert lhs == rhs


def test_full_module_matches_loop_module(structure12, sampler):
    """The identification t0^k t^r ζ ⊗ v ↔ t0^k ⊗ (t^r ζ ⊗ v) intertwines
    the twisted action with the loop action."""
    S = structure12
    full = S.sig.full()
    from rinehart.suites import _loop_g_for

    for _ in range(60):
        f = sampler.monomial(full, coeff=False)
        alpha = sampler.rng.randrange(full.m + full.n + 1)
        w = sampler.tensor(full, S.omega)
        direct = shen_act(f, alpha, w, S.mu, S.omega)
        looped = loop_g_act(_loop_g_for(f, alpha), full_to_loop(w), S)
        assert full_to_loop(direct) == looped
        assert loop_to_full(looped) == direct


def test_loop_smash_act_factors(structure12, sampler):
    """a # b∂ acts as (algebra action of a) ∘ (derivation action of b∂);
    the one-line action formula must agree with the two-step route."""
    from rinehart.vectorfields import LoopElement

    S = structure12
    dot = S.sig
    full = dot.full()
    for _ in range(60):
        ae, am = sampler.exps(full), sampler.mask(full.n)
        be, bm = sampler.exps(full), sampler.mask(full.n)
        tag = sampler.tag(full)
        u = SmashElement.a_tensor(full, ae, am, be, bm, tag)
        w = sampler.loop_tensor(dot, S.omega)
        bpoly = SuperPoly.monomial(dot, be[1:], bm)
        if tag == ("d", 0):
            qp = QPElement.from_poly(bpoly)
        else:
            qp = QPElement.from_field(VectorField.from_poly_tag(bpoly, tag))
        via_g = loop_g_act(LoopElement.wrap(be[0], qp), w, S)
        want = loop_a_act(SuperPoly.monomial(full, ae, am), via_g, S)
        assert loop_smash_act(u, w, S) == want


def test_t_act_is_degree_zero_slice(structure12, sampler):
    from rinehart.smash import make_X

    S = structure12
    dot = S.sig
    full = dot.full()
    for _ in range(60):
        gen = sampler.x_generator(full)
        v = sampler.tensor(dot, S.omega)
        looped = loop_smash_act(make_X(full, *gen), LoopTensor.wrap(0, v), S)
        assert set(looped.slices) <= {0}
        assert t_act(*gen, v, S) == looped.slices.get(0, TensorVec.zero(dot))


# ---------- generator action at t0-degree zero ----------

def test_t_act_examples(structure12):
    S = structure12
    dot = S.sig
    # ((1,0,...), ∅, d_1) acts as -phihat_{d_1}: on 1⊗e_1 gives 1⊗E_{0,1}e_1
    got = t_act((1, 0), 0, ("d", 1), unit_vec(dot, 1), S)
    assert got == unit_vec(dot, 0)
    # ((0,...), {k}, Q_l) realizes the odd elementary matrices
    for k in (1, 2):
        for l in (1, 2):
            for v in range(S.omega.dim):
                got = t_act((0, 0), 1 << (k - 1), ("q", l), unit_vec(dot, v), S)
                want = TensorVec.zero(dot)
                for u, cu in S.omega.column(1 + k, 1 + l, v):
                    want._iadd_term((dot.zero_exps(), 0, u), cu)
                assert got == want
    assert t_act((1, 0), 0b1, ("d", 0), TensorVec.zero(dot), S).is_zero()


# ---------- kernel extraction ----------

def test_omega_extract_shen_larsson(structure12):
    S = structure12
    basis = degree_zero_basis(S)
    assert len(basis) == (1 << 2) * S.omega.dim
    ker = omega_extract(basis, S)
    assert len(ker) == S.omega.dim
    want = {frozenset(unit_vec(S.sig, j).terms) for j in range(S.omega.dim)}
    got = {frozenset(v.terms) for v in ker}
    assert got == want


def test_omega_extract_identity_on_kernel(structure12):
    S = structure12
    ker = omega_extract([unit_vec(S.sig, 0), unit_vec(S.sig, 1)], S)
    assert len(ker) == 2


def test_omega_extract_rejects_noninvariant(structure12):
    S = structure12
    # span{z1⊗e0} alone is not invariant: psi_{Q1} sends it to 1⊗e0
    with pytest.raises(ValueError):
        omega_extract([TensorVec.basis(S.sig, S.sig.zero_exps(), 0b1, 0)], S)


def test_omega_greedy(structure12, sampler):
    S = structure12
    z = S.sig.zero_exps()
    got = omega_greedy(TensorVec.basis(S.sig, z, 0b11, 0), S)
    assert got == unit_vec(S.sig, 0)
    # already in the kernel: returned unchanged
    assert omega_greedy(unit_vec(S.sig, 2), S) == unit_vec(S.sig, 2)
    # nonzero input gives a nonzero kernel vector
    for _ in range(30):
        u = TensorVec.basis(S.sig, z, sampler.mask(2), sampler.rng.randrange(4))
        got = omega_greedy(u, S)
        assert not got.is_zero()
        for k in (1, 2):
            assert S.psi(VectorField.basis(S.sig, ("q", k)), got).is_zero()


# ---------- induced gl-structure, bridge, annihilation ----------

@pytest.fixture
def extracted(structure12):
    S = structure12
    return S, omega_extract(degree_zero_basis(S), S)


def test_phi_operator_table_on_units(extracted):
    S, basis = extracted
    dot = S.sig
    z = dot.zero_exps()
    for a in range(4):
        for b in range(4):
            op = phi_operator(a, b, S)
            for v in range(S.omega.dim):
                want = TensorVec.zero(dot)
                for u, cu in S.omega.column(a, b, v):
                    want._iadd_term((z, 0, u), cu)
                assert op(unit_vec(dot, v)) == want


def test_phi_is_representation(extracted):
    S, basis = extracted
    induced = induced_gl_module(S, basis)
    assert rep_check(induced).ok


def test_phi_rejects_bad_index(extracted):
    S, _ = extracted
    with pytest.raises(ValueError):
        phi_operator(9, 0, S)


def test_bridge_identity(extracted, sampler):
    """The generator action on the kernel factors through the gl
    projection of the identified field and the induced representation."""
    S, basis = extracted
    sig = S.sig.full()
    for _ in range(40):
        gen = sampler.x_generator(sig)
        mat = theta_project(psi_map({gen: Scalar(1)}, sig))
        for u in basis:
            direct = t_act(*gen, u, S)
            through = TensorVec.zero(S.sig)
            for a in range(4):
                for b in range(4):
                    c = mat.rows[a][b]
                    if c:
                        through += phi_operator(a, b, S)(u) * c
            assert direct == through


def test_square_ideal_annihilates_kernel(extracted, sampler):
    from rinehart.suites import _random_deep_gens

    S, basis = extracted
    sig = S.sig.full()
    for _ in range(30):
        gens = _random_deep_gens(sampler.rng, sampler, sig)
        for u in basis:
            assert t_act_gens(gens, u, S).is_zero()


def test_weight_bookkeeping(structure12, sampler):
    S = structure12
    for _ in range(40):
        w = sampler.tensor(S.sig, S.omega)
        rbar = sampler.exps(S.sig)
        shifted = S.phi(SuperPoly.monomial(S.sig, rbar), w)
        base = tprime_weight(S, w)
        got = tprime_weight(S, shifted)
        assert got[0] == base[0]
        assert got[1:] == tuple(b + r for b, r in zip(base[1:], rbar))


# ---------- operator identities ----------

def test_operator_identities_examples(structure12, sampler):
    S = structure12
    dot = S.sig
    w = sampler.tensor(dot, S.omega)
    t1 = SuperPoly.t_var(dot, 1)
    t1inv = SuperPoly.t_var(dot, 1, -1)
    lhs, rhs = operator_identity_check(1, S, w, a=t1, b=t1inv)
    assert lhs == rhs
    # degenerate shapes
    lhs, rhs = operator_identity_check(4, S, w, imask=0)
    assert lhs == rhs == S.psi(QPElement.from_poly(SuperPoly.one(dot)), w)
    x = QPElement.from_field(VectorField.basis(dot, ("q", 2)))
    lhs, rhs = operator_identity_check(5, S, w, a=SuperPoly.one(dot), x=x)
    assert lhs == rhs == S.psi(x, w)


def test_operator_identities_random(structure12, sampler):
    S = structure12
    dot = S.sig
    for which in range(1, 6):
        for _ in range(30):
            kwargs = {"w": sampler.tensor(dot, S.omega)}
            if which in (1, 2, 3, 5):
                kwargs["a"] = sampler.monomial(dot)
            if which == 1:
                kwargs["b"] = sampler.monomial(dot)
            if which in (2, 5):
                kwargs["x"] = sampler.qp_homogeneous(dot)
            if which == 3:
                kwargs["rbar"] = sampler.exps(dot)
            if which == 4:
                kwargs["imask"] = sampler.mask(dot.n)
            lhs, rhs = operator_identity_check(which, S, **kwargs)
            assert lhs == rhs, (which, kwargs)


# ---------- the comparison map ----------

def test_theta_map_examples(extracted):
    S, basis = extracted
    omega0 = basis[0]
    assert theta_map(SuperPoly.one(S.sig), omega0, S) == omega0
    t1 = SuperPoly.t_var(S.sig, 1)
    assert theta_map(t1, omega0, S) == S.phi(t1, omega0)


def test_theta_equivariance_and_bijectivity(extracted, sampler):
    import itertools

    from rinehart import linalg

    S, basis = extracted
    dot = S.sig
    induced = induced_gl_module(S, basis)
    rho = rho_of(S, basis)
    assert rho.values == S.mu.values  # the slice reproduces the shifts
    Sprime = QPStructure(dot, induced, rho)
    for _ in range(50):
        w = sampler.tensor(dot, induced)
        x = sampler.qp_homogeneous(dot)
        a = sampler.monomial(dot)
        assert theta_transport(Sprime.psi(x, w), basis, S) == S.psi(
            x, theta_transport(w, basis, S)
        )
        assert theta_transport(Sprime.phihat(x, w), basis, S) == S.phihat(
            x, theta_transport(w, basis, S)
        )
        assert theta_transport(Sprime.phi(a, w), basis, S) == S.phi(
            a, theta_transport(w, basis, S)
        )

    dom = []
    for exps in itertools.product((-1, 0, 1), repeat=dot.nvars):
        for mask in range(1 << dot.n):
            for j in range(induced.dim):
                dom.append(TensorVec.basis(dot, exps, mask, j))
    images = [theta_transport(v, basis, S) for v in dom]
    keys = sorted({k for v in images for k in v.terms})
    index = {k: i for i, k in enumerate(keys)}
    mat = [[Scalar(0)] * len(dom) for _ in keys]
    for j, v in enumerate(images):
        for key, c in v.terms.items():
            mat[index[key]][j] = c
    assert linalg.rank(mat) == len(dom) == 3 * 4 * S.omega.dim
