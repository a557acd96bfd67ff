"""Seeded verification suites and the machine-readable runner.

Every suite draws its cases from a Random seeded by (seed, suite name),
so a config determines the full case list and two runs with the same
config produce byte-identical JSON summaries.  Each check reports the
first counterexample it finds; all comparisons are exact.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from . import linalg
from .config import load_module_config
from .glmatrix import GlMatrix, gl_bracket
from .glmodules import GlModule, MuVector, natural_module, rep_check
from .parser import ParseError, format_element, format_gl_matrix, parse_element
from .sampling import Sampler
from .scalars import Scalar
from .smash import (
    SmashElement,
    make_X,
    psi_map,
    smash_commutator,
    theta_project,
)
from .superpoly import (
    Signature,
    SuperPoly,
    filt_degree,
    mask_size,
    shift_basis,
    splus_part,
)
from .tensorqp import (
    QPStructure,
    TensorVec,
    degree_zero_basis,
    full_to_loop,
    induced_gl_module,
    operator_identity_check,
    loop_a_act,
    loop_g_act,
    loop_to_full,
    omega_extract,
    phi_operator,
    qp_axiom_check,
    qp_axiom_suite,
    rho_of,
    shen_act,
    t_act,
    t_act_gens,
    theta_transport,
    tprime_weight,
)
from .vectorfields import (
    LoopElement,
    QPElement,
    VectorField,
    degree_field,
    loop_apply_to_poly,
    loop_bracket,
    loop_der_correspond,
    qp_bracket,
    vf_bracket,
)

SUITE_NAMES = (
    "koszul",
    "jacobi",
    "filtration",
    "theta",
    "psi",
    "centralizer",
    "qp",
    "equalities",
    "loop",
    "phi",
    "annihilate",
    "iso",
    "roundtrip",
)


@dataclass
class SuiteConfig:
    m: int = 1
    n: int = 1
    deg: int = 2
    samples: int = 100
    seed: int = 0
    suites: tuple = ("all",)
    module_path: str | None = None
    mu: tuple | None = None


@dataclass
class CheckResult:
    check: str
    passed: bool
    cases: int
    counterexample: str | None = None


@dataclass
class Env:
    sig: Signature
    omega: GlModule
    mu: MuVector

    @property
    def dotted(self) -> Signature:
        return self.sig.dotted()

    def structure(self, mu: MuVector | None = None) -> QPStructure:
        return QPStructure(self.dotted, self.omega, mu or self.mu)


def build_env(cfg: SuiteConfig) -> Env:
    sig = Signature(cfg.m, cfg.n, True)
    if cfg.module_path:
        omega, mu = load_module_config(cfg.module_path)
        if (omega.m, omega.n) != (cfg.m, cfg.n):
            from .config import ConfigError

            raise ConfigError(
                f"module config is for gl({omega.m + 1},{omega.n}),"
                f" run asked for gl({cfg.m + 1},{cfg.n})"
            )
    else:
        omega = natural_module(cfg.m, cfg.n)
        mu = MuVector.zero(cfg.m, cfg.n)
    if cfg.mu is not None:
        mu = MuVector(cfg.m, cfg.n, cfg.mu)
    return Env(sig=sig, omega=omega, mu=mu)


def _rng(cfg: SuiteConfig, name: str) -> random.Random:
    return random.Random(f"{cfg.seed}:{name}")


def _fmt(e) -> str:
    return format_element(e)


def admissible_mus(m: int, n: int) -> tuple[MuVector, MuVector]:
    """Two distinct admissible shift vectors, the second non-real."""
    from fractions import Fraction

    first = MuVector(
        m, n, [Scalar(Fraction(i + 1, 2)) for i in range(m + 1)] + [Scalar(0)] * n
    )
    second = MuVector(
        m,
        n,
        [Scalar(Fraction(1, 3), Fraction(i + 1, 2)) for i in range(m + 1)]
        + [Scalar(0)] * n,
    )
    return first, second


# ---------- koszul ----------

def koszul_suite(cfg: SuiteConfig, env: Env) -> list[CheckResult]:
    rng = _rng(cfg, "koszul")
    s = Sampler(rng, cfg.deg)
    sig = env.sig
    out = []

    bad = None
    for _ in range(cfg.samples):
        f, g = s.monomial(sig), s.monomial(sig)
        sign = (-1) ** (f.parity() * g.parity())
        if f * g != sign * (g * f):
            bad = f"f={_fmt(f)}, g={_fmt(g)}"
            break
    out.append(CheckResult("koszul.supercommutativity", bad is None, cfg.samples, bad))

    bad = None
    for _ in range(cfg.samples):
        f, g, h = s.monomial(sig), s.monomial(sig), s.monomial(sig)
        if (f * g) * h != f * (g * h):
            bad = f"f={_fmt(f)}, g={_fmt(g)}, h={_fmt(h)}"
            break
    out.append(CheckResult("koszul.associativity", bad is None, cfg.samples, bad))

    tags = (
        [("d", i) for i in sig.tvars()]
        + [("dt", i) for i in sig.tvars()]
        + [("q", k) for k in range(1, sig.n + 1)]
    )
    bad = None
    cases = 0
    for _ in range(cfg.samples):
        f, g = s.monomial(sig), s.monomial(sig)
        pf = f.parity()
        for tag in tags:
            cases += 1
            lhs = (f * g).derive(tag)
            sign = -1 if tag[0] == "q" and pf else 1
            rhs = f.derive(tag) * g + sign * (f * g.derive(tag))
            if lhs != rhs:
                bad = f"tag={tag}, f={_fmt(f)}, g={_fmt(g)}"
                break
        if bad:
            break
    out.append(CheckResult("koszul.leibniz", bad is None, cases, bad))
    return out


# ---------- jacobi ----------

def _bracket_checks(name, sample, bracket, parity, samples):
    out = []
    bad = None
    for _ in range(samples):
        x, y = sample(), sample()
        lhs = bracket(x, y) + (-1) ** (parity(x) * parity(y)) * bracket(y, x)
        if not _is_zeroish(lhs):
            bad = f"x={x!r}, y={y!r}"
            break
    out.append(CheckResult(f"jacobi.{name}.antisymmetry", bad is None, samples, bad))
    bad = None
    for _ in range(samples):
        x, y, z = sample(), sample(), sample()
        sign = (-1) ** (parity(x) * parity(y))
        lhs = bracket(bracket(x, y), z)
        rhs = bracket(x, bracket(y, z)) - sign * bracket(y, bracket(x, z))
        if not _is_zeroish(lhs - rhs):
            bad = f"x={x!r}, y={y!r}, z={z!r}"
            break
    out.append(CheckResult(f"jacobi.{name}.super_jacobi", bad is None, samples, bad))
    return out


def _is_zeroish(v) -> bool:
    return v.is_zero()


def jacobi_suite(cfg: SuiteConfig, env: Env) -> list[CheckResult]:
    rng = _rng(cfg, "jacobi")
    s = Sampler(rng, cfg.deg)
    sig, dotted = env.sig, env.dotted
    out = []
    out += _bracket_checks(
        "fields",
        lambda: VectorField(sig, s.field_term(sig).terms),
        vf_bracket,
        lambda x: x.parity(),
        cfg.samples,
    )
    out += _bracket_checks(
        "qp",
        lambda: s.qp_homogeneous(dotted),
        qp_bracket,
        lambda x: x.parity(),
        cfg.samples,
    )
    out += _bracket_checks(
        "loop",
        lambda: s.loop_qp(dotted),
        loop_bracket,
        lambda x: x.parity(),
        cfg.samples,
    )

    def gl_sample():
        p = rng.randrange(2)
        g = GlMatrix.zero(cfg.m, cfg.n)
        for _ in range(2):
            while True:
                a = rng.randrange(g.dim)
                b = rng.randrange(g.dim)
                if g.entry_parity(a, b) == p:
                    break
            g.rows[a][b] = g.rows[a][b] + s.scalar()
        return g

    out += _bracket_checks(
        "gl", gl_sample, gl_bracket, lambda g: g.parity() or 0, cfg.samples
    )
    out += _bracket_checks(
        "smash",
        lambda: s.smash_homogeneous(sig),
        smash_commutator,
        lambda u: u.parity(),
        cfg.samples,
    )

    bad = None
    for _ in range(cfg.samples):
        x = VectorField(sig, s.field_term(sig, kinds="dtq").terms)
        y = VectorField(sig, s.field_term(sig, kinds="dtq").terms)
        f = s.monomial(sig)
        sign = (-1) ** (x.parity() * y.parity())
        lhs = vf_bracket(x, y).apply(f)
        rhs = x.apply(y.apply(f)) - sign * y.apply(x.apply(f))
        if lhs != rhs:
            bad = f"x={_fmt(x)}, y={_fmt(y)}, f={_fmt(f)}"
            break
    out.append(CheckResult("jacobi.fields.faithful", bad is None, cfg.samples, bad))
    return out


# ---------- filtration ----------

def filtration_suite(cfg: SuiteConfig, env: Env) -> list[CheckResult]:
    rng = _rng(cfg, "filtration")
    s = Sampler(rng, cfg.deg)
    sig = env.sig
    one = SuperPoly.one(sig)
    out = []

    bad = None
    cases = 0
    for _ in range(cfg.samples):
        rbar = s.exps(sig)
        tmon = SuperPoly.monomial(sig, rbar)
        linear = SuperPoly.zero(sig)
        for i in sig.tvars():
            ri = rbar[sig.tpos(i)]
            if ri:
                linear += (SuperPoly.t_var(sig, i) - one) * ri
        cases += 1
        if filt_degree(tmon - one - linear) < 2:
            bad = f"rbar={rbar}"
            break
        for k in range(1, sig.n + 1):
            cases += 1
            zk = SuperPoly.zeta(sig, k)
            if filt_degree(tmon * zk - zk) < 2:
                bad = f"rbar={rbar}, k={k}"
                break
        if bad:
            break
    out.append(CheckResult("filtration.mods2", bad is None, cases, bad))

    dfield = degree_field(sig)
    bad = None
    for _ in range(cfg.samples):
        pos = s.pos_exps(sig)
        mask = s.mask(sig.n)
        f = shift_basis(sig, pos, (0,) * sig.nvars, mask)
        ell = sum(pos) + mask_size(mask)
        if dfield.apply(f) != f * ell:
            bad = f"pos={pos}, mask={mask}"
            break
    out.append(CheckResult("filtration.degree_field", bad is None, cfg.samples, bad))

    bad = None
    cases = 0
    for k, kprime in ((1, 3), (2, 3)):
        for _ in range(max(1, cfg.samples // 4)):
            pos, neg, mask = s.shifted_basis(sig, k)
            f = shift_basis(sig, pos, neg, mask)
            g = splus_part(sig, pos, neg, mask, kprime)
            cases += 1
            if any(e < 0 for e in g.min_t_exponents()):
                bad = f"plus part has negative exponents: pos={pos}, neg={neg}"
                break
            if g and filt_degree(g) < k:
                bad = f"plus part too shallow: pos={pos}, neg={neg}, mask={mask}"
                break
            if filt_degree(f - g) < kprime:
                bad = f"remainder below {kprime}: pos={pos}, neg={neg}, mask={mask}"
                break
        if bad:
            break
    out.append(CheckResult("filtration.plus_rewrite", bad is None, cases, bad))

    bad = None
    cases = 0
    for _ in range(max(1, cfg.samples // 2)):
        k = rng.choice((1, 2))
        pos, neg, mask = s.shifted_basis(sig, k)
        coeff = shift_basis(sig, pos, neg, mask)
        for kinds in ("d", "t"):
            cases += 1
            x = VectorField.from_poly_tag(coeff, s.tag(sig, kinds + "q"))
            flipped = x.to_dt() if kinds == "d" else x.to_d()
            degs = [filt_degree(c) for c in flipped.coefficient_polys().values()]
            if any(d < k for d in degs):
                bad = f"k={k}, pos={pos}, neg={neg}, mask={mask}"
                break
        if bad:
            break
    out.append(CheckResult("filtration.mode_membership", bad is None, cases, bad))

    bad = None
    for _ in range(cfg.samples):
        f, g = s.monomial(sig), s.poly(sig)
        if filt_degree(f * g) < filt_degree(f) + filt_degree(g):
            bad = f"f={_fmt(f)}, g={_fmt(g)}"
            break
    out.append(
        CheckResult("filtration.superadditivity", bad is None, cfg.samples, bad)
    )
    return out


# ---------- theta ----------

def _s_coefficient_field(s: Sampler, sig: Signature, min_deg: int = 1) -> VectorField:
    out = VectorField.zero(sig)
    for _ in range(2):
        pos, neg, mask = s.shifted_basis(sig, min_deg)
        coeff = shift_basis(sig, pos, neg, mask) * s.scalar()
        out += VectorField.from_poly_tag(coeff, s.tag(sig))
    return out


def theta_suite(cfg: SuiteConfig, env: Env) -> list[CheckResult]:
    rng = _rng(cfg, "theta")
    s = Sampler(rng, cfg.deg)
    sig = env.sig
    out = []

    bad = None
    for _ in range(cfg.samples):
        x = _s_coefficient_field(s, sig)
        y = _s_coefficient_field(s, sig)
        lhs = theta_project(vf_bracket(x, y))
        rhs = gl_bracket(theta_project(x), theta_project(y))
        if lhs != rhs:
            bad = f"x={_fmt(x)}, y={_fmt(y)}"
            break
    out.append(CheckResult("theta.homomorphism", bad is None, cfg.samples, bad))

    bad = None
    half = max(1, cfg.samples // 2)
    for _ in range(half):
        deep = _s_coefficient_field(s, sig, min_deg=2)
        if not theta_project(deep).is_zero():
            bad = f"positive sample not killed: {_fmt(deep)}"
            break
        i = rng.choice(list(sig.tvars()))
        pick = rng.random() < 0.5
        lin = (
            SuperPoly.t_var(sig, i) - SuperPoly.one(sig)
            if pick
            else SuperPoly.zeta(sig, rng.randint(1, sig.n))
        )
        shallow = VectorField.from_poly_tag(lin * s.scalar(), s.tag(sig))
        shallow += _s_coefficient_field(s, sig, min_deg=2)
        if theta_project(shallow).is_zero():
            bad = f"negative sample killed: {_fmt(shallow)}"
            break
    out.append(CheckResult("theta.kernel", bad is None, 2 * half, bad))

    bad = None
    cases = 0
    one = SuperPoly.one(sig)
    gl = sig.m + 1 + sig.n
    for a in range(gl):
        for b in range(gl):
            cases += 1
            coeff = (
                SuperPoly.t_var(sig, a) - one
                if a <= sig.m
                else SuperPoly.zeta(sig, a - sig.m)
            )
            tag = ("d", b) if b <= sig.m else ("q", b - sig.m)
            g = theta_project(VectorField.from_poly_tag(coeff, tag))
            if g != GlMatrix.elementary(cfg.m, cfg.n, a, b):
                bad = f"entry ({a},{b}) gives {format_gl_matrix(g)}"
                break
        if bad:
            break
    out.append(CheckResult("theta.table", bad is None, cases, bad))
    return out


# ---------- centralizer and the bracket identification ----------

def centralizer_suite(cfg: SuiteConfig, env: Env) -> list[CheckResult]:
    rng = _rng(cfg, "centralizer")
    s = Sampler(rng, cfg.deg)
    sig = env.sig
    out = []
    tags = [("d", i) for i in sig.tvars()] + [("q", k) for k in range(1, sig.n + 1)]

    bad_deg = bad_delta = bad_alg = None
    gens = max(1, cfg.samples // 2)
    cases_delta = cases_alg = 0
    for _ in range(gens):
        rbar, jmask, tag = s.x_generator(sig)
        x = make_X(sig, rbar, jmask, tag)
        if not x.is_degree_zero():
            bad_deg = f"gen={rbar},{jmask},{tag}"
            break
        for delta in tags:
            cases_delta += 1
            if not smash_commutator(
                x, SmashElement.from_field(VectorField.basis(sig, delta))
            ).is_zero():
                bad_delta = f"gen={rbar},{jmask},{tag}, delta={delta}"
                break
        for _ in range(20):
            cases_alg += 1
            a = s.monomial(sig)
            if not smash_commutator(x, SmashElement.from_poly(a)).is_zero():
                bad_alg = f"gen={rbar},{jmask},{tag}, a={_fmt(a)}"
                break
        if bad_delta or bad_alg:
            break
    out.append(CheckResult("centralizer.degree_zero", bad_deg is None, gens, bad_deg))
    out.append(
        CheckResult("centralizer.derivations", bad_delta is None, cases_delta, bad_delta)
    )
    out.append(CheckResult("centralizer.algebra", bad_alg is None, cases_alg, bad_alg))
    return out


def psi_suite(cfg: SuiteConfig, env: Env) -> list[CheckResult]:
    rng = _rng(cfg, "psi")
    s = Sampler(rng, cfg.deg)
    sig = env.sig
    bad = None
    for _ in range(cfg.samples):
        g1 = s.x_generator(sig)
        g2 = s.x_generator(sig)
        x1 = make_X(sig, *g1)
        x2 = make_X(sig, *g2)
        try:
            lhs = psi_map(smash_commutator(x1, x2))
        except ValueError as exc:
            bad = f"g1={g1}, g2={g2}: {exc}"
            break
        rhs = vf_bracket(psi_map({g1: Scalar(1)}, sig), psi_map({g2: Scalar(1)}, sig))
        if lhs != rhs:
            bad = f"g1={g1}, g2={g2}"
            break
    return [CheckResult("psi.bracket_hom", bad is None, cfg.samples, bad)]


# ---------- qp axioms ----------

def qp_suite(cfg: SuiteConfig, env: Env) -> list[CheckResult]:
    rng = _rng(cfg, "qp")
    out = []
    mu1, mu2 = admissible_mus(cfg.m, cfg.n)
    for label, mu in (("rational", mu1), ("complex", mu2)):
        s = Sampler(rng, cfg.deg)
        S = env.structure(mu)
        report = qp_axiom_suite(S, s, max(1, cfg.samples // 7))
        for axiom in range(1, 8):
            r = report[axiom]
            out.append(
                CheckResult(
                    f"qp.axiom{axiom}[{label}]", r["pass"], r["cases"],
                    r["counterexample"],
                )
            )
    # Sensitivity self-test on the defining module: killing the auxiliary
    # action must break exactly axiom 6 (witness: x = d_1, y = t_1 on 1⊗e_1,
    # whose axiom-6 right side keeps a diagonal matrix term).
    s = Sampler(rng, cfg.deg)
    dotted = env.dotted
    S = QPStructure(dotted, natural_module(cfg.m, cfg.n), mu1).replaced(
        phihat_fn=lambda S, x, w: TensorVec.zero(S.sig)
    )
    report = qp_axiom_suite(S, s, max(1, cfg.samples // 7))
    witness_l, witness_r = qp_axiom_check(
        S,
        6,
        x=QPElement.from_field(VectorField.basis(dotted, ("d", 1))),
        y=QPElement.from_poly(SuperPoly.t_var(dotted, 1)),
        w=TensorVec.basis(dotted, dotted.zero_exps(), 0, 1),
    )
    mutant_ok = (not report[6]["pass"] or witness_l != witness_r) and all(
        report[a]["pass"] for a in (1, 2, 3, 4, 5, 7)
    )
    detail = None if mutant_ok else str({a: report[a]["pass"] for a in range(1, 8)})
    out.append(
        CheckResult(
            "qp.mutation_breaks_axiom6",
            mutant_ok,
            report[6]["cases"] + 1,
            detail,
        )
    )
    return out


# ---------- derived operator identities ----------

def equalities_suite(cfg: SuiteConfig, env: Env) -> list[CheckResult]:
    rng = _rng(cfg, "equalities")
    s = Sampler(rng, cfg.deg)
    mu1, _ = admissible_mus(cfg.m, cfg.n)
    S = env.structure(mu1)
    dotted = env.dotted
    out = []
    for which in range(1, 6):
        bad = None
        for case in range(cfg.samples):
            w = s.tensor(dotted, env.omega)
            kwargs = {"w": w}
            if which in (1, 2, 3, 5):
                kwargs["a"] = s.monomial(dotted)
            if which == 1:
                kwargs["b"] = s.monomial(dotted)
            if which in (2, 5):
                kwargs["x"] = s.qp_homogeneous(dotted)
            if which == 3:
                kwargs["rbar"] = s.exps(dotted)
            if which == 4:
                kwargs["imask"] = s.mask(dotted.n)
            lhs, rhs = operator_identity_check(which, S, **kwargs)
            if lhs != rhs:
                bad = f"case {case}"
                break
        out.append(CheckResult(f"equalities.{which}", bad is None, cfg.samples, bad))
    return out


# ---------- loop module ----------

def _loop_g_for(f: SuperPoly, alpha: int) -> LoopElement:
    """The loop element acting as f·∂_α on the loop module."""
    dotted = f.sig.dotted()
    out = LoopElement.zero(dotted)
    for r0, a in f.t0_slices().items():
        if alpha == 0:
            qp = QPElement.from_poly(a)
        elif alpha <= f.sig.m:
            qp = QPElement.from_field(
                VectorField.from_poly_tag(a, ("d", alpha))
            )
        else:
            qp = QPElement.from_field(
                VectorField.from_poly_tag(a, ("q", alpha - f.sig.m))
            )
        out = out + LoopElement.wrap(r0, qp)
    return out


def loop_suite(cfg: SuiteConfig, env: Env) -> list[CheckResult]:
    rng = _rng(cfg, "loop")
    s = Sampler(rng, cfg.deg)
    sig, dotted = env.sig, env.dotted
    mu1, mu2 = admissible_mus(cfg.m, cfg.n)
    S = env.structure(mu2)
    out = []

    bad = None
    for _ in range(cfg.samples):
        x, y = s.loop_qp(dotted), s.loop_qp(dotted)
        w = s.loop_tensor(dotted, env.omega)
        sign = (-1) ** (x.parity() * y.parity())
        lhs = loop_g_act(loop_bracket(x, y), w, S)
        rhs = loop_g_act(x, loop_g_act(y, w, S), S) - sign * loop_g_act(
            y, loop_g_act(x, w, S), S
        )
        if lhs != rhs:
            bad = "module law failed"
            break
    out.append(CheckResult("loop.module_law", bad is None, cfg.samples, bad))

    bad = None
    for _ in range(cfg.samples):
        x = s.loop_qp(dotted)
        a = s.monomial(sig)
        w = s.loop_tensor(dotted, env.omega)
        pa = a.parity()
        sign = (-1) ** (x.parity() * pa)
        lhs = loop_g_act(x, loop_a_act(a, w, S), S)
        rhs = loop_a_act(loop_apply_to_poly(x, a), w, S) + sign * loop_a_act(
            a, loop_g_act(x, w, S), S
        )
        if lhs != rhs:
            bad = f"a={_fmt(a)}"
            break
    out.append(CheckResult("loop.leibniz", bad is None, cfg.samples, bad))

    bad = None
    for _ in range(cfg.samples):
        f = s.monomial(sig, coeff=False)
        alpha = rng.randrange(sig.m + sig.n + 1)
        w = s.tensor(sig, env.omega)
        direct = shen_act(f, alpha, w, S.mu, env.omega)
        looped = loop_g_act(_loop_g_for(f, alpha), full_to_loop(w), S)
        if full_to_loop(direct) != looped:
            bad = f"f={_fmt(f)}, alpha={alpha}"
            break
    out.append(CheckResult("loop.tensor_vs_loop", bad is None, cfg.samples, bad))

    bad = None
    for _ in range(cfg.samples):
        g = s.monomial(sig)
        w = s.tensor(sig, env.omega)
        direct = _shen_mul(w, g)
        looped = loop_a_act(g, full_to_loop(w), S)
        if full_to_loop(direct) != looped or loop_to_full(looped) != direct:
            bad = f"g={_fmt(g)}"
            break
    out.append(CheckResult("loop.algebra_action", bad is None, cfg.samples, bad))

    bad = None
    for _ in range(cfg.samples):
        x, y = s.loop_qp(dotted), s.loop_qp(dotted)
        lhs = loop_der_correspond(loop_bracket(x, y))
        rhs = vf_bracket(loop_der_correspond(x), loop_der_correspond(y))
        if lhs != rhs:
            bad = "bracket correspondence failed"
            break
    out.append(CheckResult("loop.der_correspond", bad is None, cfg.samples, bad))

    bad = None
    for _ in range(cfg.samples):
        x = s.loop_qp(dotted)
        f = s.monomial(sig)
        lhs = loop_apply_to_poly(x, f)
        rhs = loop_der_correspond(x).apply(f)
        if lhs != rhs:
            bad = f"f={_fmt(f)}"
            break
    out.append(CheckResult("loop.der_action", bad is None, cfg.samples, bad))
    return out


def _shen_mul(w: TensorVec, g: SuperPoly) -> TensorVec:
    """Algebra action on the full tensor module: g·(h ⊗ v) = gh ⊗ v."""
    out = TensorVec.zero(w.sig)
    for (exps, mask, idx), c in w.terms.items():
        prod = g * SuperPoly.monomial(w.sig, exps, mask, c)
        for (e2, m2), c2 in prod.terms.items():
            out._iadd_term((e2, m2, idx), c2)
    return out


# ---------- induced gl representation ----------

def _omega_setup(env: Env, mu: MuVector):
    S = env.structure(mu)
    basis = omega_extract(degree_zero_basis(S), S)
    return S, basis


def phi_suite(cfg: SuiteConfig, env: Env) -> list[CheckResult]:
    rng = _rng(cfg, "phi")
    s = Sampler(rng, cfg.deg)
    sig = env.sig
    mu1, mu2 = admissible_mus(cfg.m, cfg.n)
    S, basis = _omega_setup(env, mu2)
    out = []

    try:
        induced = induced_gl_module(S, basis)
        report = rep_check(induced)
        gl = sig.m + 1 + sig.n
        out.append(
            CheckResult(
                "phi.gl_relations",
                report.ok,
                gl ** 4,
                None if report.ok else str(report.violations[:3]),
            )
        )
    except ValueError as exc:
        out.append(CheckResult("phi.gl_relations", False, 0, str(exc)))
        return out

    bad = None
    cases = 0
    z = env.dotted.zero_exps()
    for a in range(induced.gl_dim):
        for b in range(induced.gl_dim):
            op = phi_operator(a, b, S)
            for v in range(env.omega.dim):
                cases += 1
                lhs = op(TensorVec.basis(env.dotted, z, 0, v))
                rhs = TensorVec.zero(env.dotted)
                for u, cu in env.omega.column(a, b, v):
                    rhs._iadd_term((z, 0, u), cu)
                if lhs != rhs:
                    bad = f"E_{a}_{b} on basis vector {v}"
                    break
            if bad:
                break
        if bad:
            break
    out.append(CheckResult("phi.unit_action", bad is None, cases, bad))

    bad = None
    cases = 0
    for _ in range(cfg.samples):
        gen = s.x_generator(sig)
        field = psi_map({gen: Scalar(1)}, sig)
        mat = theta_project(field)
        for u in basis:
            cases += 1
            direct = t_act(*gen, u, S)
            through = TensorVec.zero(env.dotted)
            for a in range(induced.gl_dim):
                for b in range(induced.gl_dim):
                    c = mat.rows[a][b]
                    if c:
                        through += phi_operator(a, b, S)(u) * c
            if direct != through:
                bad = f"gen={gen}"
                break
        if bad:
            break
    out.append(CheckResult("phi.bridge", bad is None, cases, bad))

    bad = None
    for _ in range(cfg.samples):
        w = s.tensor(env.dotted, env.omega)
        rbar = s.exps(env.dotted)
        imask = s.mask(env.dotted.n)
        shifted = _phi_mono(S, rbar, imask, w)
        if shifted.is_zero():
            continue  # Grassmann collision
        shift = tprime_weight(S, shifted)
        base = tprime_weight(S, w)
        expected = (base[0],) + tuple(
            base[i] + rbar[i - 1] for i in range(1, env.dotted.m + 1)
        )
        if shift != expected:
            bad = f"rbar={rbar}"
            break
    out.append(CheckResult("phi.weight_shift", bad is None, cfg.samples, bad))
    return out


def _phi_mono(S: QPStructure, rbar, imask, w: TensorVec) -> TensorVec:
    return S.phi(SuperPoly.monomial(S.sig, rbar, imask), w)


def annihilate_suite(cfg: SuiteConfig, env: Env) -> list[CheckResult]:
    rng = _rng(cfg, "annihilate")
    s = Sampler(rng, cfg.deg)
    sig = env.sig
    _mu1, mu2 = admissible_mus(cfg.m, cfg.n)
    S, basis = _omega_setup(env, mu2)
    bad = None
    cases = 0
    count = max(1, cfg.samples // 2)
    for _ in range(count):
        gens = _random_deep_gens(rng, s, sig)
        field = psi_map(gens, sig)
        degs = [filt_degree(c) for c in field.to_d().coefficient_polys().values()]
        if field and min(degs) < 2:
            bad = f"sample not in the square ideal: {gens}"
            break
        for u in basis:
            cases += 1
            if not t_act_gens(gens, u, S).is_zero():
                bad = f"gens={gens}"
                break
        if bad:
            break
    return [CheckResult("annihilate.square_ideal", bad is None, cases, bad)]


def _random_deep_gens(rng: random.Random, s: Sampler, sig: Signature) -> dict:
    """Generator combinations whose field image lies in the square of the
    vanishing ideal: products of two unit-shifted factors, a shifted
    Grassmann factor, or a doubled Grassmann mask."""
    tags = [("d", i) for i in sig.tvars()] + [("q", k) for k in range(1, sig.n + 1)]
    tag = rng.choice(tags)
    shape = rng.randrange(3) if sig.n >= 2 else rng.randrange(2)
    one = Scalar(1)
    if shape == 0:
        while True:
            r1 = s.exps(sig)
            r2 = s.exps(sig)
            if any(r1) and any(r2):
                break
        total = tuple(a + b for a, b in zip(r1, r2))
        gens: dict = {}
        for key, c in (((r1, 0, tag), -one), ((r2, 0, tag), -one)):
            gens[key] = gens.get(key, Scalar(0)) + c
        if any(total):
            gens[(total, 0, tag)] = gens.get((total, 0, tag), Scalar(0)) + one
        return {k: c for k, c in gens.items() if c}
    if shape == 1:
        while True:
            rbar = s.exps(sig)
            if any(rbar):
                break
        jmask = 1 << rng.randrange(sig.n)
        return {(rbar, jmask, tag): one, (sig.zero_exps(), jmask, tag): -one}
    while True:
        jmask = s.mask(sig.n)
        if mask_size(jmask) >= 2:
            break
    return {(s.exps(sig), jmask, tag): one}


def iso_suite(cfg: SuiteConfig, env: Env) -> list[CheckResult]:
    rng = _rng(cfg, "iso")
    s = Sampler(rng, cfg.deg)
    dotted = env.dotted
    mu1, mu2 = admissible_mus(cfg.m, cfg.n)
    S, basis = _omega_setup(env, mu2)
    out = []
    try:
        induced = induced_gl_module(S, basis)
        rho = rho_of(S, basis)
    except ValueError as exc:
        return [CheckResult("iso.equivariance", False, 0, str(exc))]
    Sprime = QPStructure(dotted, induced, rho)

    bad = None
    cases = 0
    for _ in range(cfg.samples):
        w = s.tensor(dotted, induced)
        x = s.qp_homogeneous(dotted)
        a = s.monomial(dotted)
        for kind in ("psi", "phihat", "phi"):
            cases += 1
            if kind == "psi":
                lhs = theta_transport(Sprime.psi(x, w), basis, S)
                rhs = S.psi(x, theta_transport(w, basis, S))
            elif kind == "phihat":
                lhs = theta_transport(Sprime.phihat(x, w), basis, S)
                rhs = S.phihat(x, theta_transport(w, basis, S))
            else:
                lhs = theta_transport(Sprime.phi(a, w), basis, S)
                rhs = S.phi(a, theta_transport(w, basis, S))
            if lhs != rhs:
                bad = f"kind={kind}"
                break
        if bad:
            break
    out.append(CheckResult("iso.equivariance", bad is None, cases, bad))

    bound = 1
    dom = []
    import itertools

    for exps in itertools.product(range(-bound, bound + 1), repeat=dotted.nvars):
        for mask in range(1 << dotted.n):
            for j in range(induced.dim):
                dom.append(TensorVec.basis(dotted, exps, mask, j))
    images = [theta_transport(v, basis, S) for v in dom]
    keys = sorted({k for v in images for k in v.terms})
    index = {k: i for i, k in enumerate(keys)}
    mat = [[Scalar(0)] * len(dom) for _ in keys]
    for j, v in enumerate(images):
        for key, c in v.terms.items():
            mat[index[key]][j] = c
    target_dim = (2 * bound + 1) ** dotted.nvars * (1 << dotted.n) * env.omega.dim
    rk = linalg.rank(mat)
    ok = rk == len(dom) == target_dim
    out.append(
        CheckResult(
            "iso.bijective",
            ok,
            len(dom),
            None if ok else f"rank {rk} of {len(dom)}, target {target_dim}",
        )
    )
    return out


# ---------- parser round trips ----------

MALFORMED = (
    "",
    "t",
    "z",
    "t0^",
    "1/0",
    "t0**t1",
    "3*",
    "*t0",
    "t0+",
    "D1*t0",
    "D1*D1",
    "Q1*Q2",
    "t0^x",
    "w1",
    "1+",
    "(t0",
    "t0)",
    "()",
    "^2",
    "t0 t1",
)


def roundtrip_suite(cfg: SuiteConfig, env: Env) -> list[CheckResult]:
    rng = _rng(cfg, "roundtrip")
    s = Sampler(rng, cfg.deg)
    sig = env.sig
    dotted = env.dotted
    out = []

    bad = None
    for case in range(cfg.samples):
        kind = rng.randrange(3)
        if kind == 0:
            e = s.poly(sig, terms=rng.randint(1, 4))
            use = sig
        elif kind == 1:
            e = s.field(sig, terms=rng.randint(1, 3))
            use = sig
        else:
            e = QPElement(s.poly(dotted), s.field(dotted))
            use = dotted
        text = format_element(e)
        back = parse_element(text, use, expect="qp" if kind == 2 else None)
        same = back == e if kind != 2 else (back.a == e.a and back.x == e.x)
        if kind == 0 and isinstance(back, SuperPoly):
            same = back == e
        if not same or format_element(back) != text:
            bad = f"case {case}: {text}"
            break
    out.append(CheckResult("roundtrip.parse_format", bad is None, cfg.samples, bad))

    bad = None
    for text in MALFORMED:
        try:
            parse_element(text, sig)
        except ParseError as exc:
            if not isinstance(exc.position, int) or "position" not in str(exc):
                bad = f"no position in diagnostic for {text!r}"
                break
        else:
            bad = f"malformed input accepted: {text!r}"
            break
    out.append(CheckResult("roundtrip.malformed", bad is None, len(MALFORMED), bad))
    return out


# ---------- runner ----------

SUITES = {
    "koszul": koszul_suite,
    "jacobi": jacobi_suite,
    "filtration": filtration_suite,
    "theta": theta_suite,
    "psi": psi_suite,
    "centralizer": centralizer_suite,
    "qp": qp_suite,
    "equalities": equalities_suite,
    "loop": loop_suite,
    "phi": phi_suite,
    "annihilate": annihilate_suite,
    "iso": iso_suite,
    "roundtrip": roundtrip_suite,
}


def run_suite(cfg: SuiteConfig) -> tuple[int, dict]:
    """Run the selected suites; returns (exit code, JSON-ready report)."""
    env = build_env(cfg)
    names = []
    for name in cfg.suites:
        if name == "all":
            names.extend(SUITE_NAMES)
        elif name in SUITES:
            names.append(name)
        else:
            raise ValueError(f"unknown suite {name!r}")
    checks = []
    for name in names:
        checks.extend(SUITES[name](cfg, env))
    failures = sum(1 for c in checks if not c.passed)
    report = {
        "m": cfg.m,
        "n": cfg.n,
        "deg": cfg.deg,
        "samples": cfg.samples,
        "seed": cfg.seed,
        "suites": names,
        "checks": [
            {
                "id": c.check,
                "pass": c.passed,
                "cases": c.cases,
                "counterexample": c.counterexample,
            }
            for c in checks
        ],
        "failures": failures,
    }
    return (0 if failures == 0 else 1), report


def report_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, separators=(",", ":"))


def report_text(report: dict) -> str:
    lines = []
    for c in report["checks"]:
        status = "PASS" if c["pass"] else "FAIL"
        line = f"{status} {c['id']} ({c['cases']} cases)"
        if c["counterexample"]:
            line += f": {c['counterexample']}"
        lines.append(line)
    lines.append(
        f"{len(report['checks'])} checks, {report['failures']} failures"
        f" (m={report['m']}, n={report['n']}, seed={report['seed']})"
    )
    return "\n".join(lines)
