"""Finite-dimensional weight modules over gl(m+1, n).

A module is given by one exact action matrix per elementary matrix,
with a parity vector over the basis.  `rep_check` validates every
supercommutator relation and the parity homogeneity of each action;
`weight_decompose` splits the basis into simultaneous eigenspaces of
the diagonal actions, which is the desk-scale view of bounded weight
multiplicities.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .linalg import (
    charpoly,
    matmul,
    matvec,
    nullspace,
    rational_roots,
    solve,
    zeros,
)
from .scalars import Scalar


class MuVector:
    """Shift parameters μ(0..m+n); the odd slots μ(m+k) must vanish."""

    __slots__ = ("m", "n", "values")

    def __init__(self, m: int, n: int, values):
        values = tuple(Scalar.of(v) for v in values)
        if len(values) != m + n + 1:
            raise ValueError("mu vector needs m+n+1 entries")
        for k in range(1, n + 1):
            if values[m + k]:
                raise ValueError(f"mu({m + k}) must be 0 on the odd directions")
        self.m = m
        self.n = n
        self.values = values

    @staticmethod
    def zero(m: int, n: int) -> "MuVector":
        return MuVector(m, n, (0,) * (m + n + 1))

    def __getitem__(self, alpha: int) -> Scalar:
        return self.values[alpha]

    def __eq__(self, other):
        if not isinstance(other, MuVector):
            return NotImplemented
        return (self.m, self.n, self.values) == (other.m, other.n, other.values)

    def __repr__(self):
        return f"MuVector({self.m}, {self.n}, {[str(v) for v in self.values]})"


class GlModule:
    """gl(m+1, n)-module by explicit action matrices."""

    __slots__ = ("m", "n", "dim", "parities", "act")

    def __init__(self, m: int, n: int, dim: int, parities, act):
        self.m = m
        self.n = n
        self.dim = dim
        self.parities = tuple(parities)
        if len(self.parities) != dim or any(p not in (0, 1) for p in self.parities):
            raise ValueError("parity vector must list 0/1 per basis vector")
        self.act = {}
        gl = m + 1 + n
        for a in range(gl):
            for b in range(gl):
                mat = act.get((a, b))
                if mat is None:
                    raise ValueError(f"missing action matrix E_{a}_{b}")
                mat = [[Scalar.of(c) for c in row] for row in mat]
                if len(mat) != dim or any(len(r) != dim for r in mat):
                    raise ValueError(f"action matrix E_{a}_{b} has the wrong size")
                self.act[(a, b)] = mat

    @property
    def gl_dim(self) -> int:
        return self.m + 1 + self.n

    def index_parity(self, alpha: int) -> int:
        return 0 if alpha <= self.m else 1

    def entry_parity(self, a: int, b: int) -> int:
        return (self.index_parity(a) + self.index_parity(b)) & 1

    def matrix(self, a: int, b: int):
        return self.act[(a, b)]

    def apply(self, a: int, b: int, vec):
        return matvec(self.act[(a, b)], vec)

    def column(self, a: int, b: int, idx: int):
        """E_{a,b} applied to the idx-th basis vector, as (row, coeff) pairs."""
        mat = self.act[(a, b)]
        return [(u, mat[u][idx]) for u in range(self.dim) if mat[u][idx]]


def natural_module(m: int, n: int) -> GlModule:
    """The defining module: E_{α,β} e_γ = δ_{β,γ} e_α."""
    if m < 1 or n < 1:
        raise ValueError("need m >= 1 and n >= 1")
    dim = m + 1 + n
    act = {}
    for a in range(dim):
        for b in range(dim):
            mat = zeros(dim, dim)
            mat[a][b] = Scalar(1)
            act[(a, b)] = mat
    parities = tuple(0 if i <= m else 1 for i in range(dim))
    return GlModule(m, n, dim, parities, act)


def zero_action_module(m: int, n: int, dim: int, parities=None) -> GlModule:
    """dim-dimensional module on which every E_{α,β} acts by zero."""
    gl = m + 1 + n
    act = {(a, b): zeros(dim, dim) for a in range(gl) for b in range(gl)}
    return GlModule(m, n, dim, parities or (0,) * dim, act)


def direct_sum(a: GlModule, b: GlModule) -> GlModule:
    if (a.m, a.n) != (b.m, b.n):
        raise ValueError("gl dimension mismatch")
    dim = a.dim + b.dim
    act = {}
    for key, ma in a.act.items():
        mb = b.act[key]
        mat = zeros(dim, dim)
        for i in range(a.dim):
            for j in range(a.dim):
                mat[i][j] = ma[i][j]
        for i in range(b.dim):
            for j in range(b.dim):
                mat[a.dim + i][a.dim + j] = mb[i][j]
        act[key] = mat
    return GlModule(a.m, a.n, dim, a.parities + b.parities, act)


@dataclass
class RepReport:
    """Outcome of the representation-axiom check."""

    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def rep_check(mod: GlModule) -> RepReport:
    """Verify parity homogeneity and every supercommutator relation."""
    report = RepReport()
    gl = mod.gl_dim
    for (a, b), mat in mod.act.items():
        p = mod.entry_parity(a, b)
        for u in range(mod.dim):
            for v in range(mod.dim):
                if mat[u][v] and (mod.parities[u] + mod.parities[v]) % 2 != p:
                    report.violations.append(
                        ("parity", (a, b), f"entry ({u},{v}) breaks parity")
                    )
                    break
            else:
                continue
            break
    pairs = [(a, b) for a in range(gl) for b in range(gl)]
    for (a, b) in pairs:
        mab = mod.act[(a, b)]
        pab = mod.entry_parity(a, b)
        for (c, d) in pairs:
            mcd = mod.act[(c, d)]
            pcd = mod.entry_parity(c, d)
            lhs = matmul(mab, mcd)
            back = matmul(mcd, mab)
            sign = -1 if (pab and pcd) else 1
            rhs = zeros(mod.dim, mod.dim)
            if b == c:
                mad = mod.act[(a, d)]
                for i in range(mod.dim):
                    for j in range(mod.dim):
                        rhs[i][j] = rhs[i][j] + mad[i][j]
            if d == a:
                mcb = mod.act[(c, b)]
                for i in range(mod.dim):
                    for j in range(mod.dim):
                        rhs[i][j] = rhs[i][j] - Scalar.of(sign) * mcb[i][j]
            ok = all(
                lhs[i][j] - Scalar.of(sign) * back[i][j] == rhs[i][j]
                for i in range(mod.dim)
                for j in range(mod.dim)
            )
            if not ok:
                report.violations.append(
                    ("commutator", ((a, b), (c, d)), "supercommutator relation fails")
                )
    return report


@dataclass
class WeightReport:
    """Simultaneous eigenspace decomposition of the diagonal actions."""

    entries: list  # (eigenvalue tuple, dimension, basis columns)
    dim: int

    @property
    def max_multiplicity(self) -> int:
        return max((d for _, d, _ in self.entries), default=0)

    @property
    def num_weights(self) -> int:
        return len(self.entries)


def weight_decompose(mod: GlModule) -> WeightReport:
    """Split the module under the commuting diagonal actions.

    Raises when the diagonal actions fail to commute, or when they are
    not simultaneously diagonalizable with Gaussian-rational spectra.
    """
    if mod.dim == 0:
        return WeightReport(entries=[], dim=0)
    hs = [mod.act[(a, a)] for a in range(mod.gl_dim)]
    for i, hi in enumerate(hs):
        for hj in hs[i + 1:]:
            if matmul(hi, hj) != matmul(hj, hi):
                raise ValueError("diagonal actions do not commute")
    blocks = [([col(i, mod.dim) for i in range(mod.dim)], ())]
    for h in hs:
        new_blocks = []
        for basis, weights in blocks:
            width = len(basis)
            coords = [[basis[j][i] for j in range(width)] for i in range(mod.dim)]
            restricted = []
            for j in range(width):
                image = matvec(h, basis[j])
                sol = solve(coords, image)
                if sol is None:
                    raise ValueError("diagonal action does not preserve a weight block")
                restricted.append(sol)
            rmat = [[restricted[j][i] for j in range(width)] for i in range(width)]
            split_total = 0
            for lam in sorted(rational_roots(charpoly(rmat)),
                              key=lambda s: s.sort_key()):
                shifted = [
                    [rmat[i][j] - (lam if i == j else Scalar(0)) for j in range(width)]
                    for i in range(width)
                ]
                kernel = nullspace(shifted, width)
                if not kernel:
                    continue
                vecs = [
                    [
                        sum((k[j] * basis[j][i] for j in range(width)), Scalar(0))
                        for i in range(mod.dim)
                    ]
                    for k in kernel
                ]
                new_blocks.append((vecs, weights + (lam,)))
                split_total += len(kernel)
            if split_total != width:
                raise ValueError(
                    "diagonal action is not diagonalizable over Gaussian rationals"
                )
        blocks = new_blocks
    entries = sorted(
        ((w, len(basis), basis) for basis, w in blocks),
        key=lambda e: tuple(s.sort_key() for s in e[0]),
    )
    return WeightReport(entries=entries, dim=mod.dim)


def col(i: int, dim: int) -> list:
    return [Scalar(1 if j == i else 0) for j in range(dim)]
