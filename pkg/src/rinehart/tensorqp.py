"""Tensor modules over the Lie-Rinehart pair and their three actions.

A tensor vector is a sparse map (monomial, module-basis index) → scalar
living in Ȧ ⊗ Ω (dotted signature) or A ⊗ Ω (full signature).  A
`QPStructure` packages a gl(m+1, n)-module Ω, a shift vector μ̄ and the
triple of evaluators: the algebra action, the twisted derivation action,
and the auxiliary action that feeds the 0-th matrix row.  The defaults
implement the twisted tensor-module formulas; individual evaluators can
be replaced to probe which axioms force which ingredient.

On top of the triple: the seven compatibility axioms, the loop module on
C[t_0^{±1}] ⊗ M, the action of degree-zero centralizer generators, the
extraction of the joint kernel of the odd derivation actions, the
induced gl-representation on that kernel, and the comparison map sending
a ⊗ ω to the algebra action of a on ω.
"""

from __future__ import annotations

from fractions import Fraction

from .glmodules import GlModule, MuVector
from .scalars import Scalar
from .smash import SmashElement, tau
from .superpoly import (
    Signature,
    SuperPoly,
    mask_size,
    merge_masks,
    subsets_of_mask,
)
from .vectorfields import (
    LoopElement,
    QPElement,
    VectorField,
    qp_bracket,
    qp_product,
)


class TensorVec:
    """Sparse element of (algebra) ⊗ Ω."""

    __slots__ = ("sig", "terms")

    def __init__(self, sig: Signature, terms=None):
        self.sig = sig
        self.terms = {}
        if terms:
            for key, c in terms.items():
                c = Scalar.of(c)
                if c:
                    self.terms[key] = c

    @staticmethod
    def zero(sig: Signature) -> "TensorVec":
        return TensorVec(sig)

    @staticmethod
    def basis(sig: Signature, exps, mask: int, idx: int, coeff=1) -> "TensorVec":
        return TensorVec(sig, {(tuple(exps), mask, idx): Scalar.of(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _iadd_term(self, key, c: Scalar):
        cur = self.terms.get(key)
        new = c if cur is None else cur + c
        if new:
            self.terms[key] = new
        elif cur is not None:
            del self.terms[key]

    def __add__(self, other):
        if not isinstance(other, TensorVec):
            return NotImplemented
        if self.sig != other.sig:
            raise ValueError("signature mismatch")
        out = TensorVec(self.sig, dict(self.terms))
        for key, c in other.terms.items():
            out._iadd_term(key, c)
        return out

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return TensorVec(self.sig, {k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            s = Scalar.of(other)
            if not s:
                return TensorVec.zero(self.sig)
            return TensorVec(self.sig, {k: c * s for k, c in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TensorVec):
            return NotImplemented
        return self.sig == other.sig and self.terms == other.terms

    def parity(self, parities):
        seen = {
            (mask_size(mask) + parities[idx]) & 1 for (_, mask, idx) in self.terms
        }
        if len(seen) == 1:
            return seen.pop()
        return None

    def even_odd(self, parities) -> tuple["TensorVec", "TensorVec"]:
        ev, od = {}, {}
        for (exps, mask, idx), c in self.terms.items():
            tgt = od if (mask_size(mask) + parities[idx]) & 1 else ev
            tgt[(exps, mask, idx)] = c
        return TensorVec(self.sig, ev), TensorVec(self.sig, od)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def __repr__(self):
        from .parser import format_tensor

        return f"<TensorVec {format_tensor(self)}>"


class LoopTensor:
    """Element of C[t_0^{±1}] ⊗ M, keyed by the t_0-exponent."""

    __slots__ = ("sig", "slices")

    def __init__(self, sig: Signature, slices=None):
        if sig.includes_t0:
            raise ValueError("loop tensors carry the dotted signature inside")
        self.sig = sig
        self.slices = {}
        if slices:
            for k, v in slices.items():
                if not v.is_zero():
                    self.slices[k] = v

    @staticmethod
    def wrap(k: int, v: TensorVec) -> "LoopTensor":
        return LoopTensor(v.sig, {k: v})

    @staticmethod
    def zero(sig: Signature) -> "LoopTensor":
        return LoopTensor(sig)

    def is_zero(self) -> bool:
        return not self.slices

    def _iadd(self, k: int, v: TensorVec):
        cur = self.slices.get(k)
        new = v if cur is None else cur + v
        if new.is_zero():
            self.slices.pop(k, None)
        else:
            self.slices[k] = new

    def __add__(self, other):
        if not isinstance(other, LoopTensor):
            return NotImplemented
        out = LoopTensor(self.sig, dict(self.slices))
        for k, v in other.slices.items():
            out._iadd(k, v)
        return out

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return LoopTensor(self.sig, {k: -v for k, v in self.slices.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return LoopTensor(self.sig, {k: v * other for k, v in self.slices.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LoopTensor):
            return NotImplemented
        return self.sig == other.sig and self.slices == other.slices


def full_to_loop(w: TensorVec) -> LoopTensor:
    """t_0^{k} t^{r̄'} ζ_I ⊗ v  ↦  t_0^k ⊗ (t^{r̄'} ζ_I ⊗ v)."""
    if not w.sig.includes_t0:
        raise ValueError("needs a full-signature tensor")
    dotted = w.sig.dotted()
    out = LoopTensor.zero(dotted)
    for (exps, mask, idx), c in w.terms.items():
        out._iadd(exps[0], TensorVec.basis(dotted, exps[1:], mask, idx, c))
    return out


def loop_to_full(lw: LoopTensor) -> TensorVec:
    full = lw.sig.full()
    out = TensorVec.zero(full)
    for k, v in lw.slices.items():
        for (exps, mask, idx), c in v.terms.items():
            out._iadd_term(((k,) + exps, mask, idx), c)
    return out


# ---------- the structure triple ----------

class QPStructure:
    """Module Ω, shift vector μ̄, and the three action evaluators."""

    __slots__ = ("sig", "omega", "mu", "_phi", "_psi", "_phihat")

    def __init__(self, sig: Signature, omega: GlModule, mu: MuVector,
                 phi_fn=None, psi_fn=None, phihat_fn=None):
        if sig.includes_t0:
            raise ValueError("structures carry the dotted signature")
        if (omega.m, omega.n) != (sig.m, sig.n):
            raise ValueError("module is over the wrong gl(m+1, n)")
        if (mu.m, mu.n) != (sig.m, sig.n):
            raise ValueError("mu vector has the wrong shape")
        self.sig = sig
        self.omega = omega
        self.mu = mu
        self._phi = phi_fn or _phi_default
        self._psi = psi_fn or _psi_default
        self._phihat = phihat_fn or _phihat_default

    def phi(self, a: SuperPoly, w: TensorVec) -> TensorVec:
        return self._phi(self, a, w)

    def psi(self, x, w: TensorVec) -> TensorVec:
        return self._psi(self, as_qp(x, self.sig), w)

    def phihat(self, x, w: TensorVec) -> TensorVec:
        return self._phihat(self, as_qp(x, self.sig), w)

    def replaced(self, phi_fn=None, psi_fn=None, phihat_fn=None) -> "QPStructure":
        return QPStructure(
            self.sig, self.omega, self.mu,
            phi_fn or self._phi, psi_fn or self._psi, phihat_fn or self._phihat,
        )


def as_qp(x, sig: Signature) -> QPElement:
    if isinstance(x, QPElement):
        return x
    if isinstance(x, SuperPoly):
        return QPElement.from_poly(x)
    if isinstance(x, VectorField):
        return QPElement.from_field(x)
    raise TypeError("expected an algebra element, a field, or their sum")


def _alpha_parts(S: QPStructure, x: QPElement):
    """Decompose a ⊕ Σ b·∂ into (direction index, monomial, coeff) parts.

    Direction 0 is the formal unit slot of the algebra summand; 1..m are
    the Euler derivations, m+1..m+n the odd ones.
    """
    for (exps, mask), c in x.a.terms.items():
        yield 0, exps, mask, c
    for (exps, mask, tag), c in x.x.to_d().terms.items():
        alpha = tag[1] if tag[0] == "d" else S.sig.m + tag[1]
        yield alpha, exps, mask, c


def _dir_parity(S: QPStructure, alpha: int) -> int:
    return 1 if alpha > S.sig.m else 0


def _dir_derive(S: QPStructure, alpha: int, f: SuperPoly) -> SuperPoly:
    """∂_α(f) with the unit-slot convention ∂_0 := 0 as an operator."""
    if alpha == 0:
        return SuperPoly.zero(S.sig)
    if alpha <= S.sig.m:
        return f.derive(("d", alpha))
    return f.derive(("q", alpha - S.sig.m))


def _phi_default(S: QPStructure, a: SuperPoly, w: TensorVec) -> TensorVec:
    if a.sig != S.sig or w.sig != S.sig:
        raise ValueError("signature mismatch")
    out = TensorVec.zero(S.sig)
    for (ae, am), ca in a.terms.items():
        for (be, bm, idx), cw in w.terms.items():
            sign, mm = merge_masks(am, bm)
            if sign == 0:
                continue
            key = (tuple(x + y for x, y in zip(ae, be)), mm, idx)
            out._iadd_term(key, ca * cw * sign)
    return out


def _psi_default(S: QPStructure, x: QPElement, w: TensorVec) -> TensorVec:
    if x.sig != S.sig or w.sig != S.sig:
        raise ValueError("signature mismatch")
    sig, m, n = S.sig, S.sig.m, S.sig.n
    out = TensorVec.zero(sig)
    for alpha, ae, am, ca in _alpha_parts(S, x):
        p_alpha = _dir_parity(S, alpha)
        amon = SuperPoly.monomial(sig, ae, am)
        pa = mask_size(am) & 1
        dparts = []
        for beta in range(1, m + n + 1):
            da = _dir_derive(S, beta, amon)
            if da:
                dparts.append((beta, 1 if beta > m else 0, da))
        for (be, bm, idx), cw in w.terms.items():
            coef = ca * cw
            pb = mask_size(bm) & 1
            bmon = SuperPoly.monomial(sig, be, bm)
            main = _dir_derive(S, alpha, bmon) + bmon * S.mu[alpha]
            for (e2, m2), c2 in (amon * main).terms.items():
                out._iadd_term((e2, m2, idx), coef * c2)
            pab = (pa + pb) & 1
            for beta, p_beta, da in dparts:
                sgn = (pab & p_beta) + p_beta + (pb & p_alpha)
                s = -1 if sgn & 1 else 1
                dab = da * bmon
                if not dab:
                    continue
                for u, cu in S.omega.column(beta, alpha, idx):
                    for (e2, m2), c2 in dab.terms.items():
                        out._iadd_term((e2, m2, u), coef * c2 * cu * s)
    return out


def _phihat_default(S: QPStructure, x: QPElement, w: TensorVec) -> TensorVec:
    if x.sig != S.sig or w.sig != S.sig:
        raise ValueError("signature mismatch")
    sig = S.sig
    out = TensorVec.zero(sig)
    for alpha, ae, am, ca in _alpha_parts(S, x):
        p_alpha = _dir_parity(S, alpha)
        amon = SuperPoly.monomial(sig, ae, am)
        for (be, bm, idx), cw in w.terms.items():
            pb = mask_size(bm) & 1
            s = -1 if not (pb and p_alpha) else 1
            ab = amon * SuperPoly.monomial(sig, be, bm)
            for u, cu in S.omega.column(0, alpha, idx):
                for (e2, m2), c2 in ab.terms.items():
                    out._iadd_term((e2, m2, u), ca * cw * c2 * cu * s)
    return out


def qp_apply(kind: str, x, w: TensorVec, S: QPStructure) -> TensorVec:
    """Evaluate one of the three actions by name: 'phi', 'psi', 'phihat'."""
    if kind == "phi":
        if not isinstance(x, SuperPoly):
            raise TypeError("the algebra action takes an algebra element")
        return S.phi(x, w)
    if kind == "psi":
        return S.psi(x, w)
    if kind == "phihat":
        return S.phihat(x, w)
    raise ValueError(f"unknown action kind {kind!r}")


# ---------- the seven compatibility axioms ----------

def _hom_parity(x) -> int:
    p = x.parity()
    if p is None:
        raise ValueError("axiom checks need parity-homogeneous inputs")
    return p


def qp_axiom_check(S: QPStructure, axiom: int, *, a=None, b=None,
                   x=None, y=None, w=None) -> tuple[TensorVec, TensorVec]:
    """Both sides of one numbered axiom evaluated on w."""
    if axiom == 1:
        lhs = S.phi(a * b, w)
        rhs = S.phi(a, S.phi(b, w))
    elif axiom == 2:
        px, py = _hom_parity(x), _hom_parity(y)
        lhs = S.psi(qp_bracket(x, y), w)
        rhs = S.psi(x, S.psi(y, w)) - (-1) ** (px * py) * S.psi(y, S.psi(x, w))
    elif axiom == 3:
        px, py = _hom_parity(x), _hom_parity(y)
        lhs = S.phihat(x, S.phihat(y, w)) - (-1) ** (px * py) * S.phihat(
            y, S.phihat(x, w)
        )
        rhs = S.phihat(qp_product(x, QPElement.from_poly(y.a)), w) - S.phihat(
            qp_product(QPElement.from_poly(x.a), y), w
        )
    elif axiom == 4:
        lhs = S.phihat(qp_product(QPElement.from_poly(a), x), w)
        rhs = S.phi(a, S.phihat(x, w))
    elif axiom == 5:
        px, pa = _hom_parity(x), _hom_parity(a)
        lhs = S.phihat(x, S.phi(a, w)) - (-1) ** (px * pa) * S.phi(a, S.phihat(x, w))
        rhs = TensorVec.zero(S.sig)
    elif axiom == 6:
        px, py = _hom_parity(x), _hom_parity(y)
        sign = (-1) ** (px * py)
        lhs = S.phihat(x, S.psi(y, w)) - sign * S.psi(y, S.phihat(x, w))
        rhs = (
            S.phihat(qp_bracket(x, y), w)
            - sign * S.phi(y.a, S.psi(x, w))
            + S.psi(qp_product(x, QPElement.from_poly(y.a)), w)
        )
    elif axiom == 7:
        px, pa = _hom_parity(x), _hom_parity(a)
        lhs = S.psi(x, S.phi(a, w)) - (-1) ** (px * pa) * S.phi(a, S.psi(x, w))
        rhs = S.phi(x.act_on_poly(a), w)
    else:
        raise ValueError("axioms are numbered 1..7")
    return lhs, rhs


def qp_axiom_suite(S: QPStructure, sampler, samples: int) -> dict:
    """Sample every axiom; report pass/fail and a first counterexample."""
    report = {}
    for axiom in range(1, 8):
        failure = None
        for case in range(samples):
            a = sampler.monomial(S.sig)
            b = sampler.monomial(S.sig)
            x = sampler.qp_homogeneous(S.sig)
            y = sampler.qp_homogeneous(S.sig)
            w = sampler.tensor(S.sig, S.omega)
            lhs, rhs = qp_axiom_check(S, axiom, a=a, b=b, x=x, y=y, w=w)
            if lhs != rhs:
                failure = _describe_case(axiom, case, a=a, b=b, x=x, y=y, w=w)
                break
        report[axiom] = {"pass": failure is None, "cases": samples,
                         "counterexample": failure}
    return report


def _describe_case(axiom, case, **kw) -> str:
    from .parser import format_element, format_tensor

    parts = []
    for name, val in kw.items():
        if val is None:
            continue
        if isinstance(val, TensorVec):
            parts.append(f"{name}={format_tensor(val)}")
        else:
            parts.append(f"{name}={format_element(val)}")
    return f"axiom {axiom} case {case}: " + ", ".join(parts)


# ---------- the twisted action on the full tensor module ----------

def shen_act(f: SuperPoly, alpha: int, w: TensorVec, mu: MuVector,
             omega: GlModule) -> TensorVec:
    """Full-signature twisted action of f·∂_α on A ⊗ Ω."""
    sig = f.sig
    if not sig.includes_t0:
        raise ValueError("the full tensor module uses the full signature")
    if w.sig != sig:
        raise ValueError("signature mismatch")
    m, n = sig.m, sig.n
    if not 0 <= alpha <= m + n:
        raise ValueError("direction index out of range")

    def dtag(beta):
        return ("d", beta) if beta <= m else ("q", beta - m)

    p_alpha = 0 if alpha <= m else 1
    out = TensorVec.zero(sig)
    df = {beta: f.derive(dtag(beta)) for beta in range(m + n + 1)}
    pf = f.parity()
    if pf is None and not f.is_zero():
        fe, fo = f.even_odd()
        return (
            shen_act(fe, alpha, w, mu, omega)
            + shen_act(fo, alpha, w, mu, omega)
        )
    for (ge, gm, idx), cw in w.terms.items():
        pg = mask_size(gm) & 1
        gmon = SuperPoly.monomial(sig, ge, gm)
        main = f * (gmon.derive(dtag(alpha)) + gmon * mu[alpha])
        for (e2, m2), c2 in main.terms.items():
            out._iadd_term((e2, m2, idx), cw * c2)
        for beta in range(m + n + 1):
            if df[beta].is_zero():
                continue
            p_beta = 0 if beta <= m else 1
            fg = (pf + pg) & 1 if pf is not None else 0
            sgn = p_beta + (fg & p_beta) + (pg & p_alpha)
            s = -1 if sgn & 1 else 1
            prod = df[beta] * gmon
            for u, cu in omega.column(beta, alpha, idx):
                for (e2, m2), c2 in prod.terms.items():
                    out._iadd_term((e2, m2, u), cw * c2 * cu * s)
    return out


# ---------- loop module structure ----------

def _psi_subscript(S: QPStructure, exps, mask, tag) -> QPElement:
    """Subscript t^{s̄'}ζ_J ∂ as an element of Ȧ ⊕ Der(Ȧ), where the
    t_0-Euler tag lands in the algebra summand."""
    if tag == ("d", 0):
        return QPElement.from_poly(SuperPoly.monomial(S.sig, exps, mask))
    return QPElement.from_field(VectorField.term(S.sig, exps, mask, tag))


def _phihat_tag(S: QPStructure, tag) -> QPElement:
    if tag == ("d", 0):
        return QPElement.from_poly(SuperPoly.one(S.sig))
    return QPElement.from_field(VectorField.basis(S.sig, tag))


def loop_g_act(u: LoopElement, w: LoopTensor, S: QPStructure) -> LoopTensor:
    """(t_0^r ⊗ x)·(t_0^s ⊗ ω) = t_0^{r+s} ⊗ (ψ_x ω - r φ̂_x ω + s φ_{π(x)} ω)."""
    out = LoopTensor.zero(S.sig)
    for r, x in u.terms.items():
        for s, v in w.slices.items():
            piece = S.psi(x, v)
            if r:
                piece = piece - r * S.phihat(x, v)
            if s and not x.a.is_zero():
                piece = piece + s * S.phi(x.a, v)
            out._iadd(r + s, piece)
    return out


def loop_a_act(f: SuperPoly, w: LoopTensor, S: QPStructure) -> LoopTensor:
    """(t_0^r ⊗ a)·(t_0^s ⊗ ω) = t_0^{r+s} ⊗ φ_a(ω) for full-signature f."""
    if not f.sig.includes_t0:
        raise ValueError("loop algebra elements use the full signature")
    out = LoopTensor.zero(S.sig)
    for r, a in f.t0_slices().items():
        for s, v in w.slices.items():
            out._iadd(r + s, S.phi(a, v))
    return out


def loop_smash_act(u: SmashElement, w: LoopTensor, S: QPStructure) -> LoopTensor:
    """Action of A # (C ⊕ Der A) on the loop module, termwise:

    (t^{r̄}ζ_I # t^{s̄}ζ_J ∂) ∗ (t_0^k ⊗ v) = t_0^{r_0+s_0+k} ⊗
       φ_{t^{r̄'}ζ_I}( ψ_{t^{s̄'}ζ_J∂} v - s_0 φ_{t^{s̄'}ζ_J} φ̂_∂ v
                       + k·[∂ = t_0-Euler]·φ_{t^{s̄'}ζ_J} v ).
    """
    if u.sig.dotted() != S.sig:
        raise ValueError("signature mismatch")
    out = LoopTensor.zero(S.sig)
    for (ae, am, be, bm, tag), c in u.terms.items():
        r0, rp = ae[0], ae[1:]
        apoly = SuperPoly.monomial(S.sig, rp, am)
        if tag is None:
            for k, v in w.slices.items():
                out._iadd(r0 + k, S.phi(apoly, v) * c)
            continue
        s0, sp = be[0], be[1:]
        bpoly = SuperPoly.monomial(S.sig, sp, bm)
        sub = _psi_subscript(S, sp, bm, tag)
        hat = _phihat_tag(S, tag)
        for k, v in w.slices.items():
            inner = S.psi(sub, v)
            if s0:
                inner = inner - s0 * S.phi(bpoly, S.phihat(hat, v))
            if k and tag == ("d", 0):
                inner = inner + k * S.phi(bpoly, v)
            out._iadd(r0 + s0 + k, S.phi(apoly, inner) * c)
    return out


def t_act(rbar, jmask: int, tag, u: TensorVec, S: QPStructure) -> TensorVec:
    """Action of the centralizer generator (r̄, J, ∂) at t_0-degree zero."""
    rbar = tuple(rbar)
    if len(rbar) != S.sig.m + 1:
        raise ValueError("generator exponents live in the full signature")
    r0, rp = rbar[0], rbar[1:]
    neg = tuple(-x for x in rp)
    if jmask == 0:
        tpos = SuperPoly.monomial(S.sig, rp)
        inner = S.psi(_psi_subscript(S, rp, 0, tag), u)
        if r0:
            inner = inner - r0 * S.phi(tpos, S.phihat(_phihat_tag(S, tag), u))
        return S.phi(SuperPoly.monomial(S.sig, neg), inner) - S.psi(
            _psi_subscript(S, S.sig.zero_exps(), 0, tag), u
        )
    out = TensorVec.zero(S.sig)
    hat = _phihat_tag(S, tag)
    for jp in subsets_of_mask(jmask):
        rest = jmask ^ jp
        sign = -1 if (mask_size(jp) + tau(jp, rest)) & 1 else 1
        inner = S.psi(_psi_subscript(S, rp, rest, tag), u)
        if r0:
            inner = inner - r0 * S.phi(
                SuperPoly.monomial(S.sig, rp, rest), S.phihat(hat, u)
            )
        out += S.phi(SuperPoly.monomial(S.sig, neg, jp), inner) * sign
    return out


def t_act_gens(gens: dict, u: TensorVec, S: QPStructure) -> TensorVec:
    """Extend t_act linearly over generator-coefficient dictionaries."""
    out = TensorVec.zero(S.sig)
    for (rbar, jmask, tag), c in gens.items():
        out += t_act(rbar, jmask, tag, u, S) * c
    return out


# ---------- kernel extraction and the induced gl-module ----------

def degree_zero_basis(S: QPStructure) -> list[TensorVec]:
    """Monomial basis ζ_I ⊗ e_j of the t-degree-zero slice."""
    z = S.sig.zero_exps()
    out = []
    for mask in range(1 << S.sig.n):
        for j in range(S.omega.dim):
            out.append(TensorVec.basis(S.sig, z, mask, j))
    return out


def _coords(vectors: list[TensorVec]):
    keys = sorted({k for v in vectors for k in v.terms})
    index = {k: i for i, k in enumerate(keys)}
    mat = [[Scalar(0)] * len(vectors) for _ in keys]
    for j, v in enumerate(vectors):
        for k, c in v.terms.items():
            mat[index[k]][j] = c
    return keys, mat


def _combine(basis: list[TensorVec], coeffs) -> TensorVec:
    out = TensorVec.zero(basis[0].sig)
    for c, v in zip(coeffs, basis):
        if c:
            out += v * c
    return out


def omega_extract(basis: list[TensorVec], S: QPStructure) -> list[TensorVec]:
    """Basis of the joint kernel of the odd derivation actions on a span.

    The span must be invariant under every ψ_{∂_k}; the result is split
    into parity-homogeneous vectors.
    """
    from . import linalg

    if not basis:
        return []
    images = []
    for k in range(1, S.sig.n + 1):
        xk = QPElement.from_field(VectorField.basis(S.sig, ("q", k)))
        images.append([S.psi(xk, v) for v in basis])
    keys, span_mat = _coords(list(basis) + [w for im in images for w in im])
    index = {key: i for i, key in enumerate(keys)}
    amat = [[Scalar(0)] * len(basis) for _ in keys]
    for j, v in enumerate(basis):
        for key, c in v.terms.items():
            amat[index[key]][j] = c
    stacked = []
    for im in images:
        cols = []
        for w in im:
            bvec = [Scalar(0)] * len(keys)
            for key, c in w.terms.items():
                bvec[index[key]] = c
            sol = linalg.solve(amat, bvec)
            if sol is None:
                raise ValueError("span is not invariant under the odd actions")
            cols.append(sol)
        stacked.extend(
            [cols[j][i] for j in range(len(basis))] for i in range(len(basis))
        )
    kernel = linalg.nullspace(stacked, len(basis))
    candidates = []
    for coeffs in kernel:
        vec = _combine(basis, coeffs)
        ev, od = vec.even_odd(S.omega.parities)
        for part in (ev, od):
            if not part.is_zero():
                candidates.append(part)
    out: list[TensorVec] = []
    rows: list[list[Scalar]] = []
    for cand in candidates:
        trial = out + [cand]
        _, mat = _coords(trial)
        if linalg.rank(mat) == len(trial):
            out.append(cand)
    return out


def omega_greedy(u: TensorVec, S: QPStructure) -> TensorVec:
    """Apply a maximal product of odd derivation actions that keeps the
    vector nonzero; the result lands in their joint kernel, so a nonzero
    invariant subspace always meets the kernel."""
    if u.is_zero():
        raise ValueError("needs a nonzero start vector")
    psis = [
        QPElement.from_field(VectorField.basis(S.sig, ("q", k)))
        for k in range(1, S.sig.n + 1)
    ]
    best = u
    for mask in sorted(range(1 << S.sig.n), key=mask_size, reverse=True):
        vec = u
        for k in range(1, S.sig.n + 1):
            if mask & (1 << (k - 1)):
                vec = S.psi(psis[k - 1], vec)
                if vec.is_zero():
                    break
        if not vec.is_zero():
            best = vec
            break
    return best


def _eigen_scalar(v: TensorVec, image: TensorVec) -> Scalar:
    """λ with image = λ·v, or raise when v is not an eigenvector."""
    key = next(iter(v.terms))
    lam = image.terms.get(key, Scalar(0)) / v.terms[key]
    if image != v * lam:
        raise ValueError("vector is not an eigenvector")
    return lam


def rho_of(S: QPStructure, omega_basis: list[TensorVec]) -> MuVector:
    """Shift vector read off the unit/Euler eigenvalues on the kernel."""
    m, n = S.sig.m, S.sig.n
    values = []
    one = QPElement.from_poly(SuperPoly.one(S.sig))
    subs = [one] + [
        QPElement.from_field(VectorField.basis(S.sig, ("d", i)))
        for i in range(1, m + 1)
    ]
    for sub in subs:
        lams = {(_eigen_scalar(v, S.psi(sub, v))) for v in omega_basis}
        if len(lams) != 1:
            raise ValueError("kernel is not a single weight slice")
        values.append(lams.pop())
    return MuVector(m, n, values + [Scalar(0)] * n)


def phi_operator(alpha: int, beta: int, S: QPStructure):
    """The induced gl-action operator for the elementary index (α, β)."""
    sig, m, n = S.sig, S.sig.m, S.sig.n
    if not (0 <= alpha <= m + n and 0 <= beta <= m + n):
        raise ValueError("elementary index out of range")

    def sub(poly: SuperPoly) -> QPElement:
        if beta == 0:
            return QPElement.from_poly(poly)
        tag = ("d", beta) if beta <= m else ("q", beta - m)
        return QPElement.from_field(VectorField.from_poly_tag(poly, tag))

    one = SuperPoly.one(sig)
    if alpha == 0:
        return lambda w: -S.phihat(sub(one), w)
    if alpha <= m:
        ti = SuperPoly.t_var(sig, alpha)
        tinv = SuperPoly.t_var(sig, alpha, -1)
        return lambda w: S.phi(tinv, S.psi(sub(ti), w)) - S.psi(sub(one), w)
    zk = SuperPoly.zeta(sig, alpha - m)
    return lambda w: S.psi(sub(zk), w) - S.phi(zk, S.psi(sub(one), w))


def phi_rep(alpha: int, beta: int, S: QPStructure,
            omega_basis: list[TensorVec]) -> list:
    """Matrix of the induced operator on the extracted kernel basis."""
    from . import linalg

    op = phi_operator(alpha, beta, S)
    images = [op(v) for v in omega_basis]
    keys, amat = _coords(list(omega_basis) + images)
    index = {key: i for i, key in enumerate(keys)}
    base = [[Scalar(0)] * len(omega_basis) for _ in keys]
    for j, v in enumerate(omega_basis):
        for key, c in v.terms.items():
            base[index[key]][j] = c
    cols = []
    for w in images:
        bvec = [Scalar(0)] * len(keys)
        for key, c in w.terms.items():
            bvec[index[key]] = c
        sol = linalg.solve(base, bvec)
        if sol is None:
            raise ValueError("operator does not preserve the extracted kernel")
        cols.append(sol)
    d = len(omega_basis)
    return [[cols[j][i] for j in range(d)] for i in range(d)]


def induced_gl_module(S: QPStructure, omega_basis: list[TensorVec]) -> GlModule:
    """The kernel basis as an explicit gl(m+1, n)-module."""
    m, n = S.sig.m, S.sig.n
    parities = []
    for v in omega_basis:
        p = v.parity(S.omega.parities)
        if p is None:
            raise ValueError("kernel basis must be parity-homogeneous")
        parities.append(p)
    act = {
        (a, b): phi_rep(a, b, S, omega_basis)
        for a in range(m + 1 + n)
        for b in range(m + 1 + n)
    }
    return GlModule(m, n, len(omega_basis), parities, act)


def theta_map(a: SuperPoly, omega_vec: TensorVec, S: QPStructure) -> TensorVec:
    """The comparison map a ⊗ ω ↦ φ_a(ω)."""
    return S.phi(a, omega_vec)


def theta_transport(w: TensorVec, omega_basis: list[TensorVec],
                    S: QPStructure) -> TensorVec:
    """Push a vector of the rebuilt module through the comparison map."""
    out = TensorVec.zero(S.sig)
    for (exps, mask, j), c in w.terms.items():
        out += S.phi(SuperPoly.monomial(S.sig, exps, mask), omega_basis[j]) * c
    return out


def tprime_weight(S: QPStructure, w: TensorVec) -> tuple:
    """Eigenvalues of the unit and Euler actions on an eigenvector."""
    one = QPElement.from_poly(SuperPoly.one(S.sig))
    out = [_eigen_scalar(w, S.psi(one, w))]
    for i in range(1, S.sig.m + 1):
        di = QPElement.from_field(VectorField.basis(S.sig, ("d", i)))
        out.append(_eigen_scalar(w, S.psi(di, w)))
    return tuple(out)


# ---------- operator identities on a structure ----------

def operator_identity_check(which: int, S: QPStructure, w: TensorVec, *,
                         a: SuperPoly | None = None, b: SuperPoly | None = None,
                         x: QPElement | None = None, rbar=None,
                         imask: int | None = None) -> tuple[TensorVec, TensorVec]:
    """Both sides of one of the five derived operator identities on w."""
    sig = S.sig
    one = SuperPoly.one(sig)
    unit = QPElement.from_poly(one)

    def psi_poly(p):
        return S.psi(QPElement.from_poly(p), w)

    if which == 1:
        pa, pb = _hom_parity(a), _hom_parity(b)
        lhs = psi_poly(a * b)
        rhs = (
            -S.phi(a * b, S.psi(unit, w))
            + S.phi(a, psi_poly(b))
            + (-1) ** (pa * pb) * S.phi(b, psi_poly(a))
        )
        return lhs, rhs
    if which == 2:
        pa, px = _hom_parity(a), _hom_parity(x)
        sign = (-1) ** (pa * px)
        lhs = S.phihat(QPElement.from_poly(x.act_on_poly(a)), w)
        rhs = (
            S.phihat(x, psi_poly(a))
            - sign * S.psi(QPElement.from_poly(a), S.phihat(x, w))
            + sign * S.phi(a, S.psi(x, w))
            - sign * S.psi(qp_product(QPElement.from_poly(a), x), w)
        )
        return lhs, rhs
    if which == 3:
        tmon = SuperPoly.monomial(sig, tuple(rbar))
        lhs = psi_poly(tmon * a)
        rhs = S.phi(tmon, psi_poly(a))
        for j in range(1, sig.m + 1):
            rj = tmon.derive(("d", j))
            if rj.is_zero():
                continue
            tj = SuperPoly.t_var(sig, j)
            tjinv = SuperPoly.t_var(sig, j, -1)
            inner = S.phi(tjinv, psi_poly(tj)) - S.psi(unit, w)
            rhs = rhs + S.phi(a * rj, inner)
        return lhs, rhs
    if which == 4:
        zi = SuperPoly.zeta_mask(sig, imask)
        lhs = psi_poly(zi)
        rhs = S.phi(zi, S.psi(unit, w))
        sign = (-1) ** mask_size(imask)
        for p in range(1, sig.n + 1):
            dz = zi.derive(("q", p))
            if dz.is_zero():
                continue
            zp = SuperPoly.zeta(sig, p)
            inner = -psi_poly(zp) + S.phi(zp, S.psi(unit, w))
            rhs = rhs + sign * S.phi(dz, inner)
        return lhs, rhs
    if which == 5:
        pa = _hom_parity(a)
        lhs = S.psi(qp_product(QPElement.from_poly(a), x), w)
        rhs = S.phi(a, S.psi(x, w))
        for p in range(1, sig.n + 1):
            da = a.derive(("q", p))
            if da.is_zero():
                continue
            zp = SuperPoly.zeta(sig, p)
            inner = S.psi(qp_product(QPElement.from_poly(zp), x), w) - S.phi(
                zp, S.psi(x, w)
            )
            rhs = rhs + (-1) ** (pa + 1) * S.phi(da, inner)
        for j in range(1, sig.m + 1):
            da = a.derive(("d", j))
            if da.is_zero():
                continue
            tj = SuperPoly.t_var(sig, j)
            tjinv = SuperPoly.t_var(sig, j, -1)
            inner = S.phi(
                tjinv, S.psi(qp_product(QPElement.from_poly(tj), x), w)
            ) - S.psi(x, w)
            rhs = rhs + S.phi(da, inner)
        return lhs, rhs
    raise ValueError("identities are numbered 1..5")
