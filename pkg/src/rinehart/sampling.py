"""Seeded random generators for the verification suites.

All checked identities are multilinear, so monomial samples with small
Laurent exponents and arbitrary Grassmann masks give span coverage at a
fixed degree window.  Every sampler draws from one `random.Random`, so a
seed determines the full case list.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .glmodules import GlModule
from .scalars import Scalar
from .smash import SmashElement
from .superpoly import Signature, SuperPoly
from .tensorqp import LoopTensor, TensorVec
from .vectorfields import LoopElement, QPElement, VectorField


class Sampler:
    def __init__(self, rng: random.Random, deg: int = 2):
        self.rng = rng
        self.deg = deg

    def exps(self, sig: Signature) -> tuple:
        return tuple(
            self.rng.randint(-self.deg, self.deg) for _ in range(sig.nvars)
        )

    def pos_exps(self, sig: Signature, total_min: int = 0) -> tuple:
        while True:
            out = tuple(self.rng.randint(0, self.deg) for _ in range(sig.nvars))
            if sum(out) >= total_min:
                return out

    def mask(self, n: int) -> int:
        return self.rng.randrange(1 << n)

    def scalar(self, imag: bool = False) -> Scalar:
        def rat():
            return Fraction(self.rng.randint(-3, 3), self.rng.randint(1, 3))

        re = rat()
        im = rat() if imag else Fraction(0)
        if not re and not im:
            re = Fraction(1)
        return Scalar(re, im)

    def monomial(self, sig: Signature, coeff: bool = True) -> SuperPoly:
        c = self.scalar() if coeff else 1
        return SuperPoly.monomial(sig, self.exps(sig), self.mask(sig.n), c)

    def poly(self, sig: Signature, terms: int = 2) -> SuperPoly:
        out = SuperPoly.zero(sig)
        for _ in range(terms):
            out += self.monomial(sig)
        return out

    def tag(self, sig: Signature, kinds: str = "dq"):
        choices = []
        if "d" in kinds:
            choices += [("d", i) for i in sig.tvars()]
        if "t" in kinds:
            choices += [("dt", i) for i in sig.tvars()]
        if "q" in kinds:
            choices += [("q", k) for k in range(1, sig.n + 1)]
        return self.rng.choice(choices)

    def field_term(self, sig: Signature, kinds: str = "dq") -> VectorField:
        return VectorField.term(
            sig, self.exps(sig), self.mask(sig.n), self.tag(sig, kinds),
            self.scalar(),
        )

    def field(self, sig: Signature, terms: int = 2, kinds: str = "dq") -> VectorField:
        out = VectorField.zero(sig)
        for _ in range(terms):
            out += self.field_term(sig, kinds)
        return out

    def qp_homogeneous(self, sig: Signature) -> QPElement:
        if self.rng.random() < 0.5:
            return QPElement.from_poly(self.monomial(sig))
        return QPElement.from_field(self.field_term(sig))

    def loop_qp(self, sig: Signature) -> LoopElement:
        return LoopElement.wrap(
            self.rng.randint(-self.deg, self.deg), self.qp_homogeneous(sig)
        )

    def tensor(self, sig: Signature, omega: GlModule) -> TensorVec:
        if omega.dim == 0:
            return TensorVec.zero(sig)
        return TensorVec.basis(
            sig, self.exps(sig), self.mask(sig.n),
            self.rng.randrange(omega.dim), self.scalar(),
        )

    def loop_tensor(self, sig: Signature, omega: GlModule) -> LoopTensor:
        return LoopTensor.wrap(
            self.rng.randint(-self.deg, self.deg), self.tensor(sig, omega)
        )

    def smash_homogeneous(self, sig: Signature) -> SmashElement:
        if self.rng.random() < 0.25:
            return SmashElement.a_unit(
                sig, self.exps(sig), self.mask(sig.n), self.scalar()
            )
        return SmashElement.a_tensor(
            sig, self.exps(sig), self.mask(sig.n), self.exps(sig),
            self.mask(sig.n), self.tag(sig), self.scalar(),
        )

    def x_generator(self, sig: Signature, include_d0: bool = True):
        """(r̄, J, ∂) avoiding the degenerate (r̄, J) = (0, ∅)."""
        kinds = "dq"
        tags = [("d", i) for i in sig.tvars()] + [
            ("q", k) for k in range(1, sig.n + 1)
        ]
        if not include_d0:
            tags = [t for t in tags if t != ("d", 0)]
        while True:
            rbar = self.exps(sig)
            jmask = self.mask(sig.n)
            if any(rbar) or jmask:
                return rbar, jmask, self.rng.choice(tags)

    def shifted_basis(self, sig: Signature, min_total: int,
                      max_total: int | None = None):
        """(pos, neg, mask) powers of a shifted basis product with the
        total degree in [min_total, max_total]; bounded so products stay
        small after expansion."""
        if max_total is None:
            max_total = min_total + 2
        while True:
            pos = tuple(self.rng.randint(0, 2) for _ in range(sig.nvars))
            neg = tuple(self.rng.randint(0, 2) for _ in range(sig.nvars))
            mask = self.mask(sig.n)
            if min_total <= sum(pos) + sum(neg) + mask.bit_count() <= max_total:
                return pos, neg, mask
