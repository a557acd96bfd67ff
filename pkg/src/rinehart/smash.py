"""The smash-product Lie superalgebra on A # (C·1 ⊕ Der(A)).

Elements are sparse maps (a-monomial, b-monomial, tag) → scalar standing
for Σ a # b·∂ together with unit-tagged terms a # 1.  Since derivations
are primitive for the coproduct, the supercommutator of two such
elements closes back in this truncation: the would-be degree-two
enveloping terms combine into the derivation bracket.

Also here: the distinguished degree-zero centralizer elements built from
alternating Grassmann splittings, their identification with vanishing-
ideal-coefficient vector fields, and the projection of those fields onto
gl(m+1, n) through the degree-one Taylor data.
"""

from __future__ import annotations

from fractions import Fraction

from .glmatrix import GlMatrix
from .scalars import Scalar
from .superpoly import (
    Signature,
    SuperPoly,
    filt_degree,
    mask_size,
    mods2_linear,
    subsets_of_mask,
)
from .vectorfields import VectorField, check_tag, tag_parity, vf_bracket


def _term_parity(amask: int, bmask: int, tag) -> int:
    p = mask_size(amask) + mask_size(bmask)
    if tag is not None:
        p += tag_parity(tag)
    return p & 1


class SmashElement:
    """Sparse element of A # (C ⊕ Der(A)), full signature."""

    __slots__ = ("sig", "terms")

    def __init__(self, sig: Signature, terms=None):
        if not sig.includes_t0:
            raise ValueError("smash elements use the full signature")
        self.sig = sig
        self.terms = {}
        if terms:
            for key, c in terms.items():
                c = Scalar.of(c)
                if not c:
                    continue
                _aexps, _amask, bexps, bmask, tag = key
                if tag is None and (any(bexps) or bmask):
                    raise ValueError("unit-tagged terms carry no b-monomial")
                self.terms[key] = c

    # -- constructors --

    @staticmethod
    def zero(sig: Signature) -> "SmashElement":
        return SmashElement(sig)

    @staticmethod
    def a_unit(sig: Signature, aexps, amask: int = 0, coeff=1) -> "SmashElement":
        key = (tuple(aexps), amask, sig.zero_exps(), 0, None)
        return SmashElement(sig, {key: Scalar.of(coeff)})

    @staticmethod
    def a_tensor(sig: Signature, aexps, amask, bexps, bmask, tag, coeff=1):
        check_tag(sig, tag)
        key = (tuple(aexps), amask, tuple(bexps), bmask, tag)
        return SmashElement(sig, {key: Scalar.of(coeff)})

    @staticmethod
    def from_field(x: VectorField) -> "SmashElement":
        """1 # x."""
        out = SmashElement.zero(x.sig)
        z = x.sig.zero_exps()
        for (exps, mask, tag), c in x.terms.items():
            out._iadd_term((z, 0, exps, mask, tag), c)
        return out

    @staticmethod
    def from_poly(a: SuperPoly) -> "SmashElement":
        """a # 1."""
        out = SmashElement.zero(a.sig)
        z = a.sig.zero_exps()
        for (exps, mask), c in a.terms.items():
            out._iadd_term((exps, mask, z, 0, None), c)
        return out

    # -- queries --

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def parity(self):
        seen = {_term_parity(am, bm, tag) for (_, am, _, bm, tag) in self.terms}
        if len(seen) == 1:
            return seen.pop()
        return None

    def degrees(self) -> set:
        """Z^{m+1}-degrees exp(a) + exp(b) present among the terms."""
        return {
            tuple(x + y for x, y in zip(ae, be))
            for (ae, _am, be, _bm, _tag) in self.terms
        }

    def is_degree_zero(self) -> bool:
        zero = self.sig.zero_exps()
        return all(d == zero for d in self.degrees())

    # -- arithmetic --

    def _iadd_term(self, key, c: Scalar):
        cur = self.terms.get(key)
        new = c if cur is None else cur + c
        if new:
            self.terms[key] = new
        elif cur is not None:
            del self.terms[key]

    def __add__(self, other):
        if not isinstance(other, SmashElement):
            return NotImplemented
        if self.sig != other.sig:
            raise ValueError("signature mismatch")
        out = SmashElement(self.sig, dict(self.terms))
        for key, c in other.terms.items():
            out._iadd_term(key, c)
        return out

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return SmashElement(self.sig, {k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return SmashElement(
                self.sig, {k: c * other for k, c in self.terms.items()}
            )
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SmashElement):
            return NotImplemented
        return self.sig == other.sig and self.terms == other.terms

    def __repr__(self):
        from .parser import format_smash

        return f"<SmashElement {format_smash(self)}>"


def smash_commutator(u: SmashElement, v: SmashElement) -> SmashElement:
    """Lie superbracket of the associative smash product, termwise:

      [a # pδ, c # qγ] = a·p·δ(c) # qγ
                         - (-1)^{|A||B|} c·q·γ(a) # pδ
                         + (-1)^{|c||pδ|} (a·c) # [pδ, qγ]
      [a # pδ, c # 1]  = a·p·δ(c) # 1
      [a # 1,  c # qγ] = -(-1)^{|A||B|} c·q·γ(a) # 1
      [a # 1,  c # 1]  = 0
    """
    if u.sig != v.sig:
        raise ValueError("signature mismatch")
    sig = u.sig
    out = SmashElement.zero(sig)
    z = sig.zero_exps()

    def add_poly_with_b(poly: SuperPoly, bexps, bmask, tag, coeff):
        for (e2, m2), c2 in poly.terms.items():
            out._iadd_term((e2, m2, bexps, bmask, tag), coeff * c2)

    for (ae, am, pe, pm, ta), ca in u.terms.items():
        pa = _term_parity(am, pm, ta)
        amon = SuperPoly.monomial(sig, ae, am)
        for (ce, cm, qe, qm, tb), cb in v.terms.items():
            pb = _term_parity(cm, qm, tb)
            coef = ca * cb
            big_sign = -1 if (pa & pb) else 1
            cmon = SuperPoly.monomial(sig, ce, cm)
            if ta is not None:
                pdelta = VectorField.term(sig, pe, pm, ta)
                dc = pdelta.apply(cmon)
                if dc:
                    add_poly_with_b(amon * dc, qe, qm, tb, coef)
            if tb is not None:
                qgamma = VectorField.term(sig, qe, qm, tb)
                ga = qgamma.apply(amon)
                if ga:
                    add_poly_with_b(cmon * ga, pe, pm, ta, -coef * big_sign)
            if ta is not None and tb is not None:
                p_par = (mask_size(pm) + tag_parity(ta)) & 1
                c_par = mask_size(cm) & 1
                sign = -1 if (c_par & p_par) else 1
                br = vf_bracket(
                    VectorField.term(sig, pe, pm, ta),
                    VectorField.term(sig, qe, qm, tb),
                )
                if br.is_zero():
                    continue
                ac = amon * cmon
                for (e1, m1), c1 in ac.terms.items():
                    for (e2, m2, t2), c2 in br.terms.items():
                        out._iadd_term((e1, m1, e2, m2, t2), coef * sign * c1 * c2)
    return out


def tau(imask: int, jmask: int) -> int:
    """Number of pairs (i ∈ I, j ∈ J) with i > j."""
    count = 0
    b = jmask
    while b:
        low = b & -b
        count += (imask >> low.bit_length()).bit_count()
        b ^= low
    return count


def make_X(sig: Signature, rbar, jmask: int, tag) -> SmashElement:
    """Degree-zero centralizer generator.

    With J ≠ ∅ this is Σ_{I⊆J} (-1)^{|I|+τ(I,J\\I)} t^{-r̄} ζ_I # t^{r̄} ζ_{J\\I} ∂;
    with J = ∅ it is t^{-r̄} # t^{r̄}∂ - 1 # ∂.
    """
    check_tag(sig, tag)
    rbar = tuple(rbar)
    if len(rbar) != sig.nvars:
        raise ValueError("exponent tuple has wrong length")
    neg = tuple(-r for r in rbar)
    out = SmashElement.zero(sig)
    if jmask == 0:
        out._iadd_term((neg, 0, rbar, 0, tag), Scalar(1))
        out._iadd_term((sig.zero_exps(), 0, sig.zero_exps(), 0, tag), Scalar(-1))
        return out
    for imask in subsets_of_mask(jmask):
        rest = jmask ^ imask
        sign = -1 if (mask_size(imask) + tau(imask, rest)) & 1 else 1
        out._iadd_term((neg, imask, rbar, rest, tag), Scalar(sign))
    return out


def x_decompose(u: SmashElement) -> dict:
    """Exact generator coefficients of a centralizer element.

    Every generator contributes its Grassmann-free a-side term with
    coefficient +1 and a unique (r̄, J, ∂) key, so those terms determine
    the coefficients; the result is verified against u exactly.
    """
    sig = u.sig
    gens: dict = {}
    for (ae, am, be, bm, tag), c in u.terms.items():
        if tag is None or am:
            continue
        if ae != tuple(-x for x in be):
            continue
        if not any(be) and not bm:
            continue  # bare 1 # ∂ terms belong to the J = ∅ correction
        gens[(be, bm, tag)] = gens.get((be, bm, tag), Scalar(0)) + c
    gens = {k: c for k, c in gens.items() if c}
    residual = u
    for (rbar, jmask, tag), c in gens.items():
        residual = residual - make_X(sig, rbar, jmask, tag) * c
    if not residual.is_zero():
        raise ValueError("element is not a combination of centralizer generators")
    return gens


def psi_map(u, sig: Signature | None = None) -> VectorField:
    """Identify a centralizer element with its vanishing-ideal field:

      (t^{-r̄} # t^{r̄}∂ - ∂)          ↦ (t^{r̄} - 1) ∂
      Σ ± t^{-r̄}ζ_I # t^{r̄}ζ_{J\\I}∂  ↦ t^{r̄} ζ_J ∂

    Accepts either a SmashElement or a generator-coefficient dict.
    """
    if isinstance(u, SmashElement):
        gens = x_decompose(u)
        sig = u.sig
    else:
        gens = u
        if sig is None:
            raise ValueError("generator-coefficient input needs a signature")
    out = VectorField.zero(sig)
    one = SuperPoly.one(sig)
    for (rbar, jmask, tag), c in gens.items():
        if jmask == 0:
            coeff = SuperPoly.monomial(sig, rbar) - one
        else:
            coeff = SuperPoly.monomial(sig, rbar, jmask)
        out += VectorField.from_poly_tag(coeff * c, tag)
    return out


def theta_project(x: VectorField) -> GlMatrix:
    """Project a vanishing-ideal field onto gl(m+1, n).

    Works in the Euler basis; each coefficient is reduced to its
    degree-one Taylor data (t_i - 1 rows, ζ_k rows) and placed in the
    column of its derivation.  Raises when a coefficient is not in the
    vanishing ideal.
    """
    sig = x.sig
    if not sig.includes_t0:
        raise ValueError("the gl projection uses the full signature")
    out = GlMatrix.zero(sig.m, sig.n)
    for tag, coeff in x.to_d().coefficient_polys().items():
        if filt_degree(coeff) < 1:
            raise ValueError(
                f"coefficient of {tag} is not in the vanishing ideal"
            )
        col = tag[1] if tag[0] == "d" else sig.m + tag[1]
        tcoeffs, zcoeffs = mods2_linear(coeff)
        for i, c in tcoeffs.items():
            out.rows[i][col] = out.rows[i][col] + c
        for k, c in zcoeffs.items():
            out.rows[sig.m + k][col] = out.rows[sig.m + k][col] + c
    return out
