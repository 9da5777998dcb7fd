"""Exact dense linear algebra: Bareiss elimination, rank, kernel, solve."""

from __future__ import annotations

from .scalars import ONE, ZERO, Scalar


class ExactMatrix:
    """Immutable rectangular matrix of exact scalars."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows):
        rs = tuple(tuple(Scalar.of(v) for v in r) for r in rows)
        if not rs:
            raise ValueError("matrix needs at least one row")
        w = len(rs[0])
        if any(len(r) != w for r in rs):
            raise ValueError("ragged rows")
        object.__setattr__(self, "rows", rs)
        object.__setattr__(self, "nrows", len(rs))
        object.__setattr__(self, "ncols", w)

    def __setattr__(self, *_):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.rows == other.rows

    def row(self, i):
        return self.rows[i]

    def column(self, j):
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(list(zip(*self.rows)))

    def stack(self, other: "ExactMatrix") -> "ExactMatrix":
        if other.ncols != self.ncols:
            raise ValueError("column mismatch")
        return ExactMatrix(self.rows + other.rows)

    def take_rows(self, indices) -> "ExactMatrix":
        return ExactMatrix([self.rows[i] for i in indices])

    def drop_column(self, j: int) -> "ExactMatrix":
        return ExactMatrix([r[:j] + r[j + 1:] for r in self.rows])

    def matmul(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = other.transpose().rows
        return ExactMatrix([[_dot(r, c) for c in cols] for r in self.rows])

    def apply(self, vec):
        """Matrix-vector product on a plain sequence of scalars."""
        v = [Scalar.of(x) for x in vec]
        if len(v) != self.ncols:
            raise ValueError("length mismatch")
        return tuple(_dot(r, v) for r in self.rows)

    # -- elimination ------------------------------------------------------------

    def _bareiss(self):
        """Fraction-free row echelon; returns (rows, pivot columns, swap sign)."""
        m = [list(r) for r in self.rows]
        nr, nc = self.nrows, self.ncols
        prev = ONE
        sign = 1
        piv_cols = []
        r = 0
        for c in range(nc):
            pr = next((i for i in range(r, nr) if m[i][c]), None)
            if pr is None:
                continue
            if pr != r:
                m[r], m[pr] = m[pr], m[r]
                sign = -sign
            piv = m[r][c]
            for i in range(r + 1, nr):
                mic = m[i][c]
                for j in range(c + 1, nc):
                    m[i][j] = (piv * m[i][j] - mic * m[r][j]) / prev
                m[i][c] = ZERO
            prev = piv
            piv_cols.append(c)
            r += 1
            if r == nr:
                break
        return m, piv_cols, sign

    def rank(self) -> int:
        return len(self._bareiss()[1])

    def det(self) -> Scalar:
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        m, piv_cols, sign = self._bareiss()
        if len(piv_cols) < self.nrows:
            return ZERO
        d = m[self.nrows - 1][piv_cols[-1]]
        return d if sign > 0 else -d

    def rref(self):
        """Reduced row echelon form (field division); returns (rows, pivot cols)."""
        m = [list(r) for r in self.rows]
        nr, nc = self.nrows, self.ncols
        piv_cols = []
        r = 0
        for c in range(nc):
            pr = next((i for i in range(r, nr) if m[i][c]), None)
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            inv = m[r][c].inverse()
            m[r] = [v * inv for v in m[r]]
            for i in range(nr):
                if i != r and m[i][c]:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            piv_cols.append(c)
            r += 1
            if r == nr:
                break
        return m, piv_cols

    def kernel(self):
        """Basis of the right null space, as tuples of scalars."""
        m, piv_cols = self.rref()
        free = [c for c in range(self.ncols) if c not in piv_cols]
        basis = []
        for fc in free:
            v = [ZERO] * self.ncols
            v[fc] = ONE
            for r, pc in enumerate(piv_cols):
                v[pc] = -m[r][fc]
            basis.append(tuple(v))
        return basis

    def solve(self, rhs):
        """One exact solution of self . x = rhs, or None if inconsistent."""
        b = [Scalar.of(v) for v in rhs]
        if len(b) != self.nrows:
            raise ValueError("length mismatch")
        aug = ExactMatrix([list(r) + [bv] for r, bv in zip(self.rows, b)])
        m, piv_cols = aug.rref()
        if self.ncols in piv_cols:
            return None
        x = [ZERO] * self.ncols
        for r, pc in enumerate(piv_cols):
            x[pc] = m[r][self.ncols]
        return tuple(x)

    def first_independent_rows(self, k: int):
        """Indices of the lexicographically first k linearly independent rows."""
        chosen = []
        for i in range(self.nrows):
            trial = chosen + [i]
            if ExactMatrix([self.rows[j] for j in trial]).rank() == len(trial):
                chosen.append(i)
                if len(chosen) == k:
                    return chosen
        return None

    def __repr__(self):
        return f"ExactMatrix({self.nrows}x{self.ncols})"


def _dot(row, vec):
    total = ZERO
    for a, b in zip(row, vec):
        if a and b:
            total = total + a * b
    return total
