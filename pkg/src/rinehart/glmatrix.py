"""Dense exact matrices in the general linear superalgebra gl(m+1, n).

Index α runs over 0..m+n: indices up to m are even, the rest odd; the
parity of an elementary matrix E_{α,β} is parity(α) + parity(β).
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import Scalar


class GlMatrix:
    """Matrix of size (m+1+n) with block parity bookkeeping."""

    __slots__ = ("m", "n", "rows")

    def __init__(self, m: int, n: int, rows=None):
        self.m = m
        self.n = n
        d = self.dim
        if rows is None:
            rows = [[Scalar(0)] * d for _ in range(d)]
        else:
            rows = [[Scalar.of(c) for c in row] for row in rows]
            if len(rows) != d or any(len(r) != d for r in rows):
                raise ValueError("matrix size does not match gl(m+1, n)")
        self.rows = rows

    @property
    def dim(self) -> int:
        return self.m + 1 + self.n

    def index_parity(self, alpha: int) -> int:
        return 0 if alpha <= self.m else 1

    @staticmethod
    def zero(m: int, n: int) -> "GlMatrix":
        return GlMatrix(m, n)

    @staticmethod
    def elementary(m: int, n: int, a: int, b: int, coeff=1) -> "GlMatrix":
        out = GlMatrix(m, n)
        out.rows[a][b] = Scalar.of(coeff)
        return out

    def is_zero(self) -> bool:
        return all(not c for row in self.rows for c in row)

    def entry_parity(self, a: int, b: int) -> int:
        return (self.index_parity(a) + self.index_parity(b)) & 1

    def even_part(self) -> "GlMatrix":
        out = GlMatrix(self.m, self.n)
        for a in range(self.dim):
            for b in range(self.dim):
                if self.entry_parity(a, b) == 0:
                    out.rows[a][b] = self.rows[a][b]
        return out

    def odd_part(self) -> "GlMatrix":
        out = GlMatrix(self.m, self.n)
        for a in range(self.dim):
            for b in range(self.dim):
                if self.entry_parity(a, b) == 1:
                    out.rows[a][b] = self.rows[a][b]
        return out

    def parity(self):
        """0 or 1 for parity-homogeneous matrices, None otherwise."""
        has_even = not self.even_part().is_zero()
        has_odd = not self.odd_part().is_zero()
        if has_even and has_odd:
            return None
        if has_odd:
            return 1
        if has_even:
            return 0
        return None

    def supertrace(self) -> Scalar:
        out = Scalar(0)
        for a in range(self.dim):
            if self.index_parity(a):
                out = out - self.rows[a][a]
            else:
                out = out + self.rows[a][a]
        return out

    def __add__(self, other):
        if not isinstance(other, GlMatrix):
            return NotImplemented
        self._check(other)
        return GlMatrix(
            self.m,
            self.n,
            [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
        )

    def __sub__(self, other):
        if not isinstance(other, GlMatrix):
            return NotImplemented
        self._check(other)
        return GlMatrix(
            self.m,
            self.n,
            [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
        )

    def __neg__(self):
        return GlMatrix(self.m, self.n, [[-x for x in row] for row in self.rows])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            s = Scalar.of(other)
            return GlMatrix(self.m, self.n, [[x * s for x in row] for row in self.rows])
        return NotImplemented

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, GlMatrix):
            return NotImplemented
        self._check(other)
        d = self.dim
        out = GlMatrix(self.m, self.n)
        for a in range(d):
            row = self.rows[a]
            orow = out.rows[a]
            for k in range(d):
                c = row[k]
                if not c:
                    continue
                brow = other.rows[k]
                for b in range(d):
                    if brow[b]:
                        orow[b] = orow[b] + c * brow[b]
        return out

    def __eq__(self, other):
        if not isinstance(other, GlMatrix):
            return NotImplemented
        return self.m == other.m and self.n == other.n and self.rows == other.rows

    def _check(self, other: "GlMatrix"):
        if self.m != other.m or self.n != other.n:
            raise ValueError("gl dimension mismatch")

    def __repr__(self):
        from .parser import format_gl_matrix

        return f"<GlMatrix {format_gl_matrix(self)}>"


def gl_bracket(x: GlMatrix, y: GlMatrix) -> GlMatrix:
    """XY - (-1)^{|X||Y|} YX on homogeneous parts, extended bilinearly."""
    x._check(y)
    out = GlMatrix.zero(x.m, x.n)
    for xp, px in ((x.even_part(), 0), (x.odd_part(), 1)):
        if xp.is_zero():
            continue
        for yp, py in ((y.even_part(), 0), (y.odd_part(), 1)):
            if yp.is_zero():
                continue
            prod = xp @ yp
            back = yp @ xp
            out = out + (prod - back if not (px and py) else prod + back)
    return out
