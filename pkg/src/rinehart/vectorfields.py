"""Derivation superalgebras of Laurent-Grassmann algebras.

A vector field is a sparse map (exponent tuple, Grassmann mask, tag) →
scalar, where the tag is a basis derivation: ('d', i) for t_i d/dt_i,
('dt', i) for d/dt_i, ('q', k) for ∂/∂ζ_k.  Both tag families and exact
conversion between them are supported (d_i = t_i · d/dt_i); distinct
basis tags of one family supercommute as operators, which the bracket
exploits.

Built on top: the supercommutative product and bracket that live on
algebra ⊕ derivations, and the t_0-loop extension whose bracket mixes
the two summands through the t_0-exponents.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import Scalar
from .superpoly import (
    Signature,
    SuperPoly,
    WeightVector,
    delta,
    derive,
    eps,
    mask_size,
    merge_masks,
    weight_of_poly,
)


def tag_parity(tag) -> int:
    return 1 if tag[0] == "q" else 0


def check_tag(sig: Signature, tag):
    kind, idx = tag
    if kind in ("d", "dt"):
        sig.tpos(idx)
    elif kind == "q":
        sig.check_zeta(idx)
    else:
        raise ValueError(f"unknown derivation tag {tag!r}")
    return tag


def tag_sort_key(tag):
    kind, idx = tag
    return ({"d": 0, "dt": 1, "q": 2}[kind], idx)


def _check_same_sig(a, b):
    if a.sig != b.sig:
        raise ValueError("signature mismatch")


class VectorField:
    """A-linear combination of basis derivations."""

    __slots__ = ("sig", "terms")

    def __init__(self, sig: Signature, terms=None):
        self.sig = sig
        self.terms = {}
        if terms:
            for key, c in terms.items():
                c = Scalar.of(c)
                if c:
                    self.terms[key] = c

    # -- constructors --

    @staticmethod
    def zero(sig: Signature) -> "VectorField":
        return VectorField(sig)

    @staticmethod
    def basis(sig: Signature, tag, coeff=1) -> "VectorField":
        check_tag(sig, tag)
        return VectorField(sig, {(sig.zero_exps(), 0, tag): Scalar.of(coeff)})

    @staticmethod
    def term(sig: Signature, exps, mask: int, tag, coeff=1) -> "VectorField":
        check_tag(sig, tag)
        exps = tuple(exps)
        if len(exps) != sig.nvars:
            raise ValueError("exponent tuple has wrong length")
        return VectorField(sig, {(exps, mask, tag): Scalar.of(coeff)})

    @staticmethod
    def from_poly_tag(coeff_poly: SuperPoly, tag) -> "VectorField":
        sig = coeff_poly.sig
        check_tag(sig, tag)
        return VectorField(
            sig, {(exps, mask, tag): c for (exps, mask), c in coeff_poly.terms.items()}
        )

    # -- queries --

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def mode(self) -> str:
        """'d', 'dt', 'any' (no t-derivations at all) or 'mixed'."""
        kinds = {tag[0] for (_, _, tag) in self.terms if tag[0] != "q"}
        if not kinds:
            return "any"
        if kinds == {"d"}:
            return "d"
        if kinds == {"dt"}:
            return "dt"
        return "mixed"

    def parity(self):
        seen = {(mask_size(mask) + tag_parity(tag)) & 1 for (_, mask, tag) in self.terms}
        if len(seen) == 1:
            return seen.pop()
        return None

    def even_odd(self) -> tuple["VectorField", "VectorField"]:
        ev, od = {}, {}
        for (exps, mask, tag), c in self.terms.items():
            target = od if (mask_size(mask) + tag_parity(tag)) & 1 else ev
            target[(exps, mask, tag)] = c
        return VectorField(self.sig, ev), VectorField(self.sig, od)

    def coefficient_polys(self) -> dict:
        """Map tag → coefficient polynomial, using the stored tags."""
        out: dict = {}
        for (exps, mask, tag), c in self.terms.items():
            poly = out.setdefault(tag, SuperPoly.zero(self.sig))
            poly._iadd_term((exps, mask), c)
        return {tag: p for tag, p in out.items() if p}

    # -- arithmetic --

    def _iadd_term(self, key, c: Scalar):
        cur = self.terms.get(key)
        new = c if cur is None else cur + c
        if new:
            self.terms[key] = new
        elif cur is not None:
            del self.terms[key]

    def __add__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        _check_same_sig(self, other)
        out = VectorField(self.sig, dict(self.terms))
        for key, c in other.terms.items():
            out._iadd_term(key, c)
        return out

    def __sub__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        _check_same_sig(self, other)
        out = VectorField(self.sig, dict(self.terms))
        for key, c in other.terms.items():
            out._iadd_term(key, -c)
        return out

    def __neg__(self):
        return VectorField(self.sig, {k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            s = Scalar.of(other)
            if not s:
                return VectorField.zero(self.sig)
            return VectorField(self.sig, {k: c * s for k, c in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def scale_by_poly(self, p: SuperPoly) -> "VectorField":
        """Left A-module action p · (aδ) = (p a) δ."""
        _check_same_sig(self, p)
        out = VectorField.zero(self.sig)
        for (eb, mb, tag), cb in self.terms.items():
            for (ea, ma), ca in p.terms.items():
                sign, mm = merge_masks(ma, mb)
                if sign == 0:
                    continue
                key = (tuple(x + y for x, y in zip(ea, eb)), mm, tag)
                out._iadd_term(key, ca * cb * sign)
        return out

    # -- basis-mode conversion (exact: d_i = t_i · d/dt_i) --

    def to_dt(self) -> "VectorField":
        out = VectorField.zero(self.sig)
        for (exps, mask, tag), c in self.terms.items():
            if tag[0] == "d":
                p = self.sig.tpos(tag[1])
                exps = exps[:p] + (exps[p] + 1,) + exps[p + 1:]
                tag = ("dt", tag[1])
            out._iadd_term((exps, mask, tag), c)
        return out

    def to_d(self) -> "VectorField":
        out = VectorField.zero(self.sig)
        for (exps, mask, tag), c in self.terms.items():
            if tag[0] == "dt":
                p = self.sig.tpos(tag[1])
                exps = exps[:p] + (exps[p] - 1,) + exps[p + 1:]
                tag = ("d", tag[1])
            out._iadd_term((exps, mask, tag), c)
        return out

    def __eq__(self, other):
        """Equality as operators: compare the d/dt_i normal forms."""
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.sig == other.sig and self.to_dt().terms == other.to_dt().terms

    def __hash__(self):
        return hash((self.sig, frozenset(self.to_dt().terms.items())))

    def __repr__(self):
        from .parser import format_element

        return f"<VectorField {format_element(self)}>"

    # -- action on the algebra --

    def apply(self, f: SuperPoly) -> SuperPoly:
        _check_same_sig(self, f)
        out = SuperPoly.zero(self.sig)
        for (exps, mask, tag), c in self.terms.items():
            mono = SuperPoly.monomial(self.sig, exps, mask, c)
            out += mono * derive(tag, f)
        return out

    def embed_full(self, t0_exp: int = 0) -> "VectorField":
        if self.sig.includes_t0:
            raise ValueError("already in the full signature")
        full = self.sig.full()
        return VectorField(
            full,
            {
                ((t0_exp,) + exps, mask, tag): c
                for (exps, mask, tag), c in self.terms.items()
            },
        )


def vf_apply(x: VectorField, f: SuperPoly) -> SuperPoly:
    return x.apply(f)


def vf_bracket(x: VectorField, y: VectorField) -> VectorField:
    """Supercommutator [aδ, bγ] = aδ(b)γ - (-1)^{|aδ||bγ|} bγ(a)δ.

    Distinct basis tags of one family supercommute, so the [δ,γ] term
    vanishes once both operands use the same family; mixed inputs are
    converted to the d/dt family first.
    """
    _check_same_sig(x, y)
    mx, my = x.mode(), y.mode()
    if mx in ("d", "any") and my in ("d", "any"):
        xx, yy = x, y
    else:
        xx, yy = x.to_dt(), y.to_dt()
    sig = x.sig
    out = VectorField.zero(sig)
    for (ea, ma, ta), ca in xx.terms.items():
        pa = (mask_size(ma) + tag_parity(ta)) & 1
        amon = SuperPoly.monomial(sig, ea, ma)
        for (eb, mb, tb), cb in yy.terms.items():
            pb = (mask_size(mb) + tag_parity(tb)) & 1
            coef = ca * cb
            bmon = SuperPoly.monomial(sig, eb, mb)
            for (e2, m2), c2 in (amon * derive(ta, bmon)).terms.items():
                out._iadd_term((e2, m2, tb), coef * c2)
            ksign = -1 if (pa & pb) else 1
            for (e2, m2), c2 in (bmon * derive(tb, amon)).terms.items():
                out._iadd_term((e2, m2, ta), coef * c2 * (-ksign))
    return out


def weight_of(x) -> WeightVector:
    """Joint eigenvalue vector under (t_i-1)d/dt_i and ζ_k∂_k.

    For polynomials this is the multiplication weight, for vector fields
    the adjoint weight; raises on non-homogeneous input.
    """
    if isinstance(x, SuperPoly):
        return weight_of_poly(x)
    if not isinstance(x, VectorField):
        raise TypeError("weight_of expects a SuperPoly or VectorField")
    if x.is_zero():
        raise ValueError("the zero element has no weight")
    sig = x.sig
    weights = set()
    for tag, poly in x.to_dt().coefficient_polys().items():
        base = weight_of_poly(poly)
        if tag[0] == "dt":
            base = base - eps(sig, tag[1])
        else:
            base = base - delta(sig, tag[1])
        weights.add(base)
    if len(weights) != 1:
        raise ValueError("not homogeneous for the weight families")
    return weights.pop()


def degree_field(sig: Signature) -> VectorField:
    """Σ (t_i-1) d/dt_i + Σ ζ_k ∂_k; scales shifted-homogeneous elements
    by their total degree."""
    out = VectorField.zero(sig)
    one = SuperPoly.one(sig)
    for i in sig.tvars():
        coeff = SuperPoly.t_var(sig, i) - one
        out += VectorField.from_poly_tag(coeff, ("dt", i))
    for k in range(1, sig.n + 1):
        out += VectorField.from_poly_tag(SuperPoly.zeta(sig, k), ("q", k))
    return out


def special_partial(sig: Signature, kind: str, *, i=None, j=None, p=None,
                    p2=None, sbar=None, k=None, mask=None) -> VectorField:
    """Weight-homogeneous shifted-power derivations.

    Kinds (all coefficients are products of (t_q-1)-powers):
      'power_dt'         (t_j-1)^p · Π_{q≠j}(t_q-1)^{s_q} · d/dt_i
      'power_q'          (t_j-1)^p · ζ_mask · ∂_k
      'power_zeta_dt'    (t_i-1)^p · Π_{q≠i}(t_q-1)^{s_q} · ζ_mask · d/dt_i
      'double_power_zeta_dt'
                         (t_i-1)^p (t_j-1)^{p2} · Π_{q≠i,j}(t_q-1)^{s_q}
                           · ζ_mask · d/dt_i   with i ≠ j
    """
    one = SuperPoly.one(sig)

    def tpow(q, e):
        return (SuperPoly.t_var(sig, q) - one) ** e

    def rest(sb, skip):
        out = SuperPoly.one(sig)
        for q, e in zip(sig.tvars(), sb):
            if q in skip or not e:
                continue
            out = out * tpow(q, e)
        return out

    if kind == "power_dt":
        if p is None or p < 1:
            raise ValueError("needs a positive power p")
        coeff = tpow(j, p) * rest(sbar, {j})
        return VectorField.from_poly_tag(coeff, ("dt", i))
    if kind == "power_q":
        if p is None or p < 1:
            raise ValueError("needs a positive power p")
        coeff = tpow(j, p) * SuperPoly.zeta_mask(sig, mask or 0)
        return VectorField.from_poly_tag(coeff, ("q", k))
    if kind == "power_zeta_dt":
        if p is None or p < 1:
            raise ValueError("needs a positive power p")
        coeff = tpow(i, p) * rest(sbar, {i}) * SuperPoly.zeta_mask(sig, mask or 0)
        return VectorField.from_poly_tag(coeff, ("dt", i))
    if kind == "double_power_zeta_dt":
        if i == j:
            raise ValueError("the double-power kind needs i ≠ j")
        if None in (p, p2) or p < 1 or p2 < 1:
            raise ValueError("needs positive powers p and p2")
        coeff = (
            tpow(i, p) * tpow(j, p2) * rest(sbar, {i, j})
            * SuperPoly.zeta_mask(sig, mask or 0)
        )
        return VectorField.from_poly_tag(coeff, ("dt", i))
    raise ValueError(f"unknown special-partial kind {kind!r}")


# ---------- algebra ⊕ derivations ----------

class QPElement:
    """Element a ⊕ x of Ȧ ⊕ Der(Ȧ) (dotted signature only)."""

    __slots__ = ("a", "x")

    def __init__(self, a: SuperPoly, x: VectorField):
        if a.sig != x.sig:
            raise ValueError("signature mismatch")
        if a.sig.includes_t0:
            raise ValueError("algebra ⊕ derivations uses the dotted signature")
        self.a = a
        self.x = x

    @property
    def sig(self) -> Signature:
        return self.a.sig

    @staticmethod
    def zero(sig: Signature) -> "QPElement":
        return QPElement(SuperPoly.zero(sig), VectorField.zero(sig))

    @staticmethod
    def from_poly(a: SuperPoly) -> "QPElement":
        return QPElement(a, VectorField.zero(a.sig))

    @staticmethod
    def from_field(x: VectorField) -> "QPElement":
        return QPElement(SuperPoly.zero(x.sig), x)

    def pi(self) -> SuperPoly:
        return self.a

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.x.is_zero()

    def parity(self):
        seen = set()
        pa = self.a.parity()
        px = self.x.parity()
        if pa is not None:
            seen.add(pa)
        if px is not None:
            seen.add(px)
        if not self.a.is_zero() and pa is None:
            return None
        if not self.x.is_zero() and px is None:
            return None
        if len(seen) == 1:
            return seen.pop()
        return None

    def even_odd(self) -> tuple["QPElement", "QPElement"]:
        ae, ao = self.a.even_odd()
        xe, xo = self.x.even_odd()
        return QPElement(ae, xe), QPElement(ao, xo)

    def __add__(self, other):
        if not isinstance(other, QPElement):
            return NotImplemented
        return QPElement(self.a + other.a, self.x + other.x)

    def __sub__(self, other):
        if not isinstance(other, QPElement):
            return NotImplemented
        return QPElement(self.a - other.a, self.x - other.x)

    def __neg__(self):
        return QPElement(-self.a, -self.x)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return QPElement(self.a * other, self.x * other)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, QPElement):
            return NotImplemented
        return self.a == other.a and self.x == other.x

    def __hash__(self):
        return hash((self.a, self.x))

    def __repr__(self):
        from .parser import format_element

        return f"<QPElement {format_element(self)}>"

    def act_on_poly(self, b: SuperPoly) -> SuperPoly:
        """Bracket against an algebra element: {a ⊕ δ, b ⊕ 0} = δ(b)."""
        return self.x.apply(b)


def qp_product(x: QPElement, y: QPElement) -> QPElement:
    """(a ⊕ δ)·(b ⊕ σ) = ab ⊕ (aσ + (-1)^{|b||x|} bδ), bilinearly."""
    if x.sig != y.sig:
        raise ValueError("signature mismatch")
    sig = x.sig
    a_out = x.a * y.a
    x_out = VectorField.zero(sig)
    be, bo = y.a.even_odd()
    for xh in x.even_odd():
        px = xh.parity()
        if xh.is_zero():
            continue
        x_out += y.x.scale_by_poly(xh.a)
        x_out += xh.x.scale_by_poly(be)
        if not bo.is_zero():
            scaled = xh.x.scale_by_poly(bo)
            x_out += scaled if px == 0 else -scaled
    return QPElement(a_out, x_out)


def qp_bracket(x: QPElement, y: QPElement) -> QPElement:
    """{a ⊕ δ, b ⊕ σ} = (δ(b) - (-1)^{|a||σ|} σ(a)) ⊕ [δ, σ]."""
    if x.sig != y.sig:
        raise ValueError("signature mismatch")
    a_out = x.x.apply(y.a)
    ae, ao = x.a.even_odd()
    se, so = y.x.even_odd()
    for apart, pa in ((ae, 0), (ao, 1)):
        if apart.is_zero():
            continue
        for spart, ps in ((se, 0), (so, 1)):
            if spart.is_zero():
                continue
            sign = -1 if (pa & ps) else 1
            a_out -= spart.apply(apart) * sign
    return QPElement(a_out, vf_bracket(x.x, y.x))


# ---------- the t_0 loop extension ----------

class LoopElement:
    """Element of C[t_0^{±1}] ⊗ (Ȧ ⊕ Der(Ȧ)), keyed by the t_0-exponent."""

    __slots__ = ("sig", "terms")

    def __init__(self, sig: Signature, terms=None):
        if sig.includes_t0:
            raise ValueError("loop elements carry a dotted signature")
        self.sig = sig
        self.terms = {}
        if terms:
            for r, qp in terms.items():
                if not qp.is_zero():
                    self.terms[r] = qp

    @staticmethod
    def zero(sig: Signature) -> "LoopElement":
        return LoopElement(sig)

    @staticmethod
    def wrap(r0: int, qp: QPElement) -> "LoopElement":
        return LoopElement(qp.sig, {r0: qp})

    def is_zero(self) -> bool:
        return not self.terms

    def _iadd(self, r0: int, qp: QPElement):
        cur = self.terms.get(r0)
        new = qp if cur is None else cur + qp
        if new.is_zero():
            self.terms.pop(r0, None)
        else:
            self.terms[r0] = new

    def __add__(self, other):
        if not isinstance(other, LoopElement):
            return NotImplemented
        _check_same_sig(self, other)
        out = LoopElement(self.sig, dict(self.terms))
        for r, qp in other.terms.items():
            out._iadd(r, qp)
        return out

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return LoopElement(self.sig, {r: -qp for r, qp in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return LoopElement(self.sig, {r: qp * other for r, qp in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LoopElement):
            return NotImplemented
        return self.sig == other.sig and self.terms == other.terms

    def parity(self):
        seen = {qp.parity() for qp in self.terms.values()}
        if len(seen) == 1:
            return seen.pop()
        return None


def loop_bracket(u: LoopElement, v: LoopElement) -> LoopElement:
    """[t_0^r ⊗ x, t_0^s ⊗ y] = t_0^{r+s} ⊗ ({x,y} - r·x·π(y) + s·π(x)·y)."""
    _check_same_sig(u, v)
    out = LoopElement.zero(u.sig)
    for r, x in u.terms.items():
        for s, y in v.terms.items():
            z = qp_bracket(x, y)
            if r:
                z = z - r * qp_product(x, QPElement.from_poly(y.a))
            if s:
                z = z + s * qp_product(QPElement.from_poly(x.a), y)
            out._iadd(r + s, z)
    return out


def loop_apply_to_poly(u: LoopElement, f: SuperPoly) -> SuperPoly:
    """Action on the loop algebra: (t_0^r ⊗ x)(t_0^s ⊗ b) =
    t_0^{r+s} ⊗ (s·π(x)·b + {x, b})."""
    if not f.sig.includes_t0:
        raise ValueError("needs a full-signature element")
    if f.sig.dotted() != u.sig:
        raise ValueError("signature mismatch")
    out = SuperPoly.zero(f.sig)
    slices = f.t0_slices()
    for r, x in u.terms.items():
        for s, b in slices.items():
            piece = x.act_on_poly(b)
            if s:
                piece = piece + x.a * b * s
            out += piece.embed_full(r + s)
    return out


def loop_der_correspond(u: LoopElement) -> VectorField:
    """Identify with a derivation of the full algebra:
    t_0^r ⊗ (a ⊕ 0) ↦ t_0^r · a · (t_0 d/dt_0) and t_0^r ⊗ (0 ⊕ δ) ↦ t_0^r δ."""
    full = u.sig.full()
    out = VectorField.zero(full)
    for r, qp in u.terms.items():
        for (exps, mask), c in qp.a.terms.items():
            out._iadd_term(((r,) + exps, mask, ("d", 0)), c)
        for (exps, mask, tag), c in qp.x.terms.items():
            out._iadd_term(((r,) + exps, mask, tag), c)
    return out
