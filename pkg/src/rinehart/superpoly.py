"""Sparse exact arithmetic on Laurent-Grassmann superalgebras.

The supercommutative algebra C[t_0^{±1},...,t_m^{±1}] ⊗ Λ_n (full
signature) and its t_0-free variant (dotted signature) share one
representation: a sparse map from (exponent tuple, Grassmann bitmask)
to Gaussian-rational coefficients.  Bit k-1 of a mask stands for ζ_k;
factors are kept in increasing index order and any reordering costs the
usual (-1)^inversions Koszul sign.  ∂/∂ζ_k is a left superderivation.

Also here: the filtration S ⊇ S² ⊇ ... by powers of the ideal vanishing
at t=1, ζ=0, with an exact degree decision procedure (clear denominators
by a unit power of t, Taylor-shift to u_i = t_i - 1, read the minimal
total degree), and eigenvalue bookkeeping for the commuting families
(t_i-1)d/dt_i and ζ_k ∂/∂ζ_k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as _iproduct
from math import comb

from .scalars import ONE, Scalar

INFINITE = math.inf


# ---------- Grassmann bitmask helpers ----------

def mask_from_indices(indices) -> int:
    mask = 0
    for k in indices:
        mask |= 1 << (k - 1)
    return mask


def mask_indices(mask: int) -> list[int]:
    """Variable numbers (1-based) present in the mask, increasing."""
    out = []
    k = 1
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


def mask_size(mask: int) -> int:
    return mask.bit_count()


def merge_masks(ma: int, mb: int) -> tuple[int, int]:
    """Sign and mask of ζ_A · ζ_B.

    Returns (0, 0) when an index repeats; otherwise the sign is
    (-1)^inversions for sorting the concatenation A++B.
    """
    if ma & mb:
        return 0, 0
    sign = 1
    b = mb
    while b:
        low = b & -b
        if (ma >> low.bit_length()).bit_count() & 1:
            sign = -sign
        b ^= low
    return sign, ma | mb


def subsets_of_mask(mask: int):
    """All submasks of `mask` (including 0 and mask itself)."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


# ---------- Signatures ----------

@dataclass(frozen=True)
class Signature:
    """Variable bookkeeping: t_0..t_m (or t_1..t_m) and ζ_1..ζ_n."""

    m: int
    n: int
    includes_t0: bool = True

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError("signature needs m >= 1 and n >= 1")

    @property
    def nvars(self) -> int:
        return self.m + 1 if self.includes_t0 else self.m

    def tvars(self) -> range:
        """Variable numbers of the even generators."""
        return range(0 if self.includes_t0 else 1, self.m + 1)

    def tpos(self, i: int) -> int:
        """Position of t_i inside exponent tuples."""
        lo = 0 if self.includes_t0 else 1
        if not lo <= i <= self.m:
            raise ValueError(f"variable t{i} outside signature")
        return i - lo

    def check_zeta(self, k: int) -> int:
        if not 1 <= k <= self.n:
            raise ValueError(f"variable z{k} outside signature")
        return k

    def zero_exps(self) -> tuple[int, ...]:
        return (0,) * self.nvars

    def dotted(self) -> "Signature":
        return Signature(self.m, self.n, False)

    def full(self) -> "Signature":
        return Signature(self.m, self.n, True)


def _check_same_sig(a, b):
    if a.sig != b.sig:
        raise ValueError("signature mismatch")


# ---------- SuperPoly ----------

class SuperPoly:
    """Element of the Laurent-Grassmann algebra as a sparse term map."""

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
    def zero(sig: Signature) -> "SuperPoly":
        return SuperPoly(sig)

    @staticmethod
    def scalar(sig: Signature, c) -> "SuperPoly":
        return SuperPoly(sig, {(sig.zero_exps(), 0): Scalar.of(c)})

    @staticmethod
    def one(sig: Signature) -> "SuperPoly":
        return SuperPoly.scalar(sig, 1)

    @staticmethod
    def monomial(sig: Signature, exps, mask: int = 0, coeff=1) -> "SuperPoly":
        exps = tuple(exps)
        if len(exps) != sig.nvars:
            raise ValueError("exponent tuple has wrong length")
        return SuperPoly(sig, {(exps, mask): Scalar.of(coeff)})

    @staticmethod
    def t_var(sig: Signature, i: int, power: int = 1) -> "SuperPoly":
        exps = [0] * sig.nvars
        exps[sig.tpos(i)] = power
        return SuperPoly.monomial(sig, exps)

    @staticmethod
    def t_power(sig: Signature, exps) -> "SuperPoly":
        return SuperPoly.monomial(sig, exps)

    @staticmethod
    def zeta(sig: Signature, k: int) -> "SuperPoly":
        sig.check_zeta(k)
        return SuperPoly.monomial(sig, sig.zero_exps(), 1 << (k - 1))

    @staticmethod
    def zeta_mask(sig: Signature, mask: int) -> "SuperPoly":
        if mask >> sig.n:
            raise ValueError("Grassmann index outside signature")
        return SuperPoly.monomial(sig, sig.zero_exps(), mask)

    # -- basic queries --

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def num_terms(self) -> int:
        return len(self.terms)

    def coefficient(self, exps, mask: int = 0) -> Scalar:
        return self.terms.get((tuple(exps), mask), Scalar(0))

    def parity(self):
        """0 or 1 when homogeneous, None for 0 or mixed."""
        seen = {mask_size(mask) & 1 for (_, mask) in self.terms}
        if len(seen) == 1:
            return seen.pop()
        return None

    def even_odd(self) -> tuple["SuperPoly", "SuperPoly"]:
        ev, od = {}, {}
        for (exps, mask), c in self.terms.items():
            (od if mask_size(mask) & 1 else ev)[(exps, mask)] = c
        return SuperPoly(self.sig, ev), SuperPoly(self.sig, od)

    def min_t_exponents(self) -> tuple[int, ...]:
        mins = [0] * self.sig.nvars
        for (exps, _mask) in self.terms:
            for p, e in enumerate(exps):
                if e < mins[p]:
                    mins[p] = e
        return tuple(mins)

    # -- arithmetic --

    def _iadd_term(self, key, c: Scalar):
        cur = self.terms.get(key)
        new = c if cur is None else cur + c
        if new:
            self.terms[key] = new
        elif cur is not None:
            del self.terms[key]

    def __add__(self, other):
        if not isinstance(other, SuperPoly):
            return NotImplemented
        _check_same_sig(self, other)
        out = SuperPoly(self.sig, dict(self.terms))
        for key, c in other.terms.items():
            out._iadd_term(key, c)
        return out

    def __sub__(self, other):
        if not isinstance(other, SuperPoly):
            return NotImplemented
        _check_same_sig(self, other)
        out = SuperPoly(self.sig, dict(self.terms))
        for key, c in other.terms.items():
            out._iadd_term(key, -c)
        return out

    def __neg__(self):
        return SuperPoly(self.sig, {k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            s = Scalar.of(other)
            if not s:
                return SuperPoly.zero(self.sig)
            return SuperPoly(self.sig, {k: c * s for k, c in self.terms.items()})
        if not isinstance(other, SuperPoly):
            return NotImplemented
        _check_same_sig(self, other)
        out = SuperPoly.zero(self.sig)
        for (ea, ma), ca in self.terms.items():
            for (eb, mb), cb in other.terms.items():
                sign, mm = merge_masks(ma, mb)
                if sign == 0:
                    continue
                key = (tuple(x + y for x, y in zip(ea, eb)), mm)
                out._iadd_term(key, ca * cb * sign)
        return out

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.__mul__(other)
        return NotImplemented

    def __pow__(self, power: int):
        if power < 0:
            raise ValueError("negative powers only for unit monomials")
        out = SuperPoly.one(self.sig)
        for _ in range(power):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, SuperPoly):
            return NotImplemented
        return self.sig == other.sig and self.terms == other.terms

    def __hash__(self):
        return hash((self.sig, frozenset(self.terms.items())))

    def __repr__(self):
        from .parser import format_element

        return f"<SuperPoly {format_element(self)}>"

    # -- derivations --

    def derive(self, tag) -> "SuperPoly":
        return derive(tag, self)

    # -- signature changes --

    def embed_full(self, t0_exp: int = 0) -> "SuperPoly":
        """View a dotted element inside the full algebra times t_0^k."""
        if self.sig.includes_t0:
            raise ValueError("already in the full signature")
        full = self.sig.full()
        return SuperPoly(
            full,
            {((t0_exp,) + exps, mask): c for (exps, mask), c in self.terms.items()},
        )

    def t0_slices(self) -> dict[int, "SuperPoly"]:
        """Split a full-signature element by its t_0 exponent."""
        if not self.sig.includes_t0:
            raise ValueError("needs the full signature")
        dotted = self.sig.dotted()
        out: dict[int, SuperPoly] = {}
        for (exps, mask), c in self.terms.items():
            sl = out.setdefault(exps[0], SuperPoly.zero(dotted))
            sl._iadd_term((exps[1:], mask), c)
        return out


def derive(tag, f: SuperPoly) -> SuperPoly:
    """Apply a basis derivation.

    Tags: ('d', i) is the Euler derivation t_i d/dt_i, ('dt', i) is the
    plain d/dt_i, ('q', k) is the left superderivation ∂/∂ζ_k.
    """
    kind, idx = tag
    sig = f.sig
    out = SuperPoly.zero(sig)
    if kind == "d":
        p = sig.tpos(idx)
        for (exps, mask), c in f.terms.items():
            if exps[p]:
                out._iadd_term((exps, mask), c * exps[p])
    elif kind == "dt":
        p = sig.tpos(idx)
        for (exps, mask), c in f.terms.items():
            e = exps[p]
            if e:
                shifted = exps[:p] + (e - 1,) + exps[p + 1:]
                out._iadd_term((shifted, mask), c * e)
    elif kind == "q":
        sig.check_zeta(idx)
        bit = 1 << (idx - 1)
        for (exps, mask), c in f.terms.items():
            if mask & bit:
                below = mask & (bit - 1)
                sign = -1 if below.bit_count() & 1 else 1
                out._iadd_term((exps, mask ^ bit), c * sign)
    else:
        raise ValueError(f"unknown derivation tag {tag!r}")
    return out


# ---------- Filtration by the ideal vanishing at t=1, ζ=0 ----------

def shifted_form(f: SuperPoly) -> dict:
    """Rewrite in u_i = t_i - 1; needs nonnegative exponents."""
    out: dict = {}
    for (exps, mask), c in f.terms.items():
        if any(e < 0 for e in exps):
            raise ValueError("negative exponent: clear denominators first")
        for js in _iproduct(*(range(e + 1) for e in exps)):
            w = 1
            for e, j in zip(exps, js):
                w *= comb(e, j)
            key = (js, mask)
            cur = out.get(key)
            new = c * w if cur is None else cur + c * w
            if new:
                out[key] = new
            elif cur is not None:
                del out[key]
    return out


def _cleared(f: SuperPoly) -> SuperPoly:
    """Multiply by the unit t^N that clears negative exponents.

    t^N ≡ 1 mod S, so membership in every S^ℓ is unchanged.
    """
    mins = f.min_t_exponents()
    if not any(mins):
        return f
    shift = tuple(-e for e in mins)
    return f * SuperPoly.monomial(f.sig, shift)


def filt_degree(f: SuperPoly):
    """Largest ℓ with f ∈ S^ℓ; 0 if f ∉ S, math.inf for f = 0."""
    if f.is_zero():
        return INFINITE
    sf = shifted_form(_cleared(f))
    return min(sum(ue) + mask_size(mask) for (ue, mask) in sf)


def mods2_linear(f: SuperPoly) -> tuple[dict, dict]:
    """Degree-one data of f modulo S²: ({t_i: c}, {ζ_k: c}).

    Requires f ∈ S (the constant Taylor term must vanish).
    """
    sf = shifted_form(_cleared(f))
    tvars = list(f.sig.tvars())
    tcoeffs: dict[int, Scalar] = {}
    zcoeffs: dict[int, Scalar] = {}
    for (ue, mask), c in sf.items():
        deg = sum(ue) + mask_size(mask)
        if deg == 0:
            raise ValueError("element is not in the vanishing ideal")
        if deg != 1:
            continue
        if mask:
            zcoeffs[mask.bit_length()] = zcoeffs.get(mask.bit_length(), Scalar(0)) + c
        else:
            i = tvars[ue.index(1)]
            tcoeffs[i] = tcoeffs.get(i, Scalar(0)) + c
    return (
        {i: c for i, c in tcoeffs.items() if c},
        {k: c for k, c in zcoeffs.items() if c},
    )


# ---------- Weights under (t_i-1)d/dt_i and ζ_k ∂/∂ζ_k ----------

@dataclass(frozen=True)
class WeightVector:
    """Eigenvalue vectors: hprime indexed along sig.tvars(), h along ζ's."""

    hprime: tuple
    h: tuple

    def __add__(self, other: "WeightVector") -> "WeightVector":
        return WeightVector(
            tuple(a + b for a, b in zip(self.hprime, other.hprime)),
            tuple(a + b for a, b in zip(self.h, other.h)),
        )

    def __sub__(self, other: "WeightVector") -> "WeightVector":
        return WeightVector(
            tuple(a - b for a, b in zip(self.hprime, other.hprime)),
            tuple(a - b for a, b in zip(self.h, other.h)),
        )


def weight_zero(sig: Signature) -> WeightVector:
    return WeightVector((0,) * sig.nvars, (0,) * sig.n)


def eps(sig: Signature, i: int) -> WeightVector:
    hp = [0] * sig.nvars
    hp[sig.tpos(i)] = 1
    return WeightVector(tuple(hp), (0,) * sig.n)


def delta(sig: Signature, k: int) -> WeightVector:
    sig.check_zeta(k)
    h = [0] * sig.n
    h[k - 1] = 1
    return WeightVector((0,) * sig.nvars, tuple(h))


def delta_of_mask(sig: Signature, mask: int) -> WeightVector:
    h = [0] * sig.n
    for k in mask_indices(mask):
        h[k - 1] = 1
    return WeightVector((0,) * sig.nvars, tuple(h))


def weight_of_poly(f: SuperPoly) -> WeightVector:
    """Joint eigenvalue vector of a (t-1)/ζ-homogeneous polynomial."""
    if f.is_zero():
        raise ValueError("the zero element has no weight")
    if any(e < 0 for e in f.min_t_exponents()):
        raise ValueError("not homogeneous for the shifted Euler family")
    keys = set(shifted_form(f))
    if len(keys) != 1:
        raise ValueError("not homogeneous for the shifted Euler family")
    (ue, mask), = keys
    return WeightVector(ue, delta_of_mask(f.sig, mask).h)


# ---------- Shifted-basis products and the plus-part rewrite ----------

def shift_basis(sig: Signature, pos, neg, mask: int = 0) -> SuperPoly:
    """Expand Π(t_i-1)^{pos_i} · Π(t_i^{-1}-1)^{neg_i} · ζ_mask exactly."""
    one = SuperPoly.one(sig)
    out = SuperPoly.zeta_mask(sig, mask)
    for i, (p, s) in zip(sig.tvars(), zip(pos, neg)):
        if p:
            out = out * (SuperPoly.t_var(sig, i) - one) ** p
        if s:
            out = out * (SuperPoly.t_var(sig, i, -1) - one) ** s
    return out


def splus_part(sig: Signature, pos, neg, mask: int, cutoff: int) -> SuperPoly:
    """Nonnegative-power component of a shifted basis product.

    Rewrites each (t_j^{-1}-1)^r as (1-t_j)^r plus deeper terms and keeps
    iterating; whatever is dropped lies in S^cutoff, so the input minus
    the returned value has filtration degree >= cutoff.
    """
    out = SuperPoly.zero(sig)
    stack = [(tuple(pos), tuple(neg), ONE)]
    while stack:
        p, s, c = stack.pop()
        if not any(s):
            out += shift_basis(sig, p, s, mask) * c
            continue
        if sum(p) + sum(s) + mask_size(mask) >= cutoff:
            continue
        j = next(q for q, sq in enumerate(s) if sq)
        r = s[j]
        p2 = p[:j] + (p[j] + r,) + p[j + 1:]
        sgn = -1 if r & 1 else 1
        stack.append((p2, s[:j] + (0,) + s[j + 1:], c * sgn))
        for i in range(1, r + 1):
            stack.append((p2, s[:j] + (i,) + s[j + 1:], c * (comb(r, i) * sgn)))
    return out
