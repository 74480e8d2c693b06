"""Dense exact matrices: rref, rank, nullspace, solving, products.

Plain Gaussian elimination with first-nonzero pivoting.  All instances in
this project are small (a few hundred rows at most), so no fraction-free
tricks are needed; exactness is the only requirement.
"""

from __future__ import annotations

from .field import Field


class ShapeMismatch(Exception):
    pass


class Matrix:
    """Immutable row-major matrix of field scalars."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: Field, rows: int, cols: int, entries):
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise ShapeMismatch(f"{rows}x{cols} needs {rows*cols} entries, got {len(entries)}")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, field: Field, rows) -> "Matrix":
        rows = [list(r) for r in rows]
        n = len(rows)
        m = len(rows[0]) if rows else 0
        if any(len(r) != m for r in rows):
            raise ShapeMismatch("ragged rows")
        return cls(field, n, m, [x for r in rows for x in r])

    @classmethod
    def from_int_rows(cls, field: Field, rows) -> "Matrix":
        return cls.from_rows(field, [[field.from_int(x) for x in r] for r in rows])

    @classmethod
    def zero(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls(field, rows, cols, [field.zero] * (rows * cols))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        e = [field.zero] * (n * n)
        for i in range(n):
            e[i * n + i] = field.one
        return cls(field, n, n, e)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and (self.rows, self.cols) == (other.rows, other.cols)
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))
        return f"Matrix({self.rows}x{self.cols}: {body})"

    def is_zero(self) -> bool:
        return not any(self.entries)

    def add(self, other: "Matrix") -> "Matrix":
        self._check_compat(other, same_shape=True)
        f = self.field
        return Matrix(f, self.rows, self.cols, [f.add(a, b) for a, b in zip(self.entries, other.entries)])

    def sub(self, other: "Matrix") -> "Matrix":
        self._check_compat(other, same_shape=True)
        f = self.field
        return Matrix(f, self.rows, self.cols, [f.sub(a, b) for a, b in zip(self.entries, other.entries)])

    def scale(self, c) -> "Matrix":
        f = self.field
        return Matrix(f, self.rows, self.cols, [f.mul(c, a) for a in self.entries])

    def _check_compat(self, other: "Matrix", same_shape=False):
        self.field.check_same(other.field)
        if same_shape and (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeMismatch(f"{self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def matmul(self, other: "Matrix") -> "Matrix":
        self._check_compat(other)
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        f = self.field
        out = [f.zero] * (self.rows * other.cols)
        oc = other.cols
        for i in range(self.rows):
            arow = self.row(i)
            for k, a in enumerate(arow):
                if not a:
                    continue
                brow = other.entries[k * oc : (k + 1) * oc]
                base = i * oc
                for j, b in enumerate(brow):
                    if b:
                        out[base + j] = f.add(out[base + j], f.mul(a, b))
        return Matrix(f, self.rows, other.cols, out)

    __matmul__ = matmul

    def transpose(self) -> "Matrix":
        return Matrix(
            self.field,
            self.cols,
            self.rows,
            [self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)],
        )

    def rref(self):
        """Reduced row echelon form; returns (Matrix, pivot column tuple)."""
        f = self.field
        m = self.to_rows()
        pivots = []
        r = 0
        for c in range(self.cols):
            if r >= self.rows:
                break
            sel = None
            for i in range(r, self.rows):
                if m[i][c]:
                    sel = i
                    break
            if sel is None:
                continue
            m[r], m[sel] = m[sel], m[r]
            piv = f.inv(m[r][c])
            if piv != f.one:
                m[r] = [f.mul(piv, x) if x else x for x in m[r]]
            row_r = m[r]
            for i in range(self.rows):
                if i != r and m[i][c]:
                    factor = m[i][c]
                    m[i] = [f.sub(x, f.mul(factor, y)) if y else x for x, y in zip(m[i], row_r)]
            pivots.append(c)
            r += 1
        return Matrix.from_rows(f, m) if m else Matrix(f, 0, self.cols, []), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace_basis(self):
        """Canonical basis: one vector per free column, -1 in its free slot."""
        f = self.field
        red, pivots = self.rref()
        pivset = set(pivots)
        basis = []
        minus_one = f.neg(f.one)
        for free in range(self.cols):
            if free in pivset:
                continue
            v = [f.zero] * self.cols
            v[free] = minus_one
            for r, pc in enumerate(pivots):
                v[pc] = red[r, free]
            basis.append(v)
        return basis

    def solve(self, b):
        """One solution x of A x = b, or None if inconsistent."""
        f = self.field
        b = list(b)
        if len(b) != self.rows:
            raise ShapeMismatch("rhs length mismatch")
        aug = Matrix.from_rows(f, [list(self.row(i)) + [b[i]] for i in range(self.rows)]) \
            if self.rows else Matrix(f, 0, self.cols + 1, [])
        red, pivots = aug.rref()
        if self.cols in pivots:
            return None
        x = [f.zero] * self.cols
        for r, pc in enumerate(pivots):
            x[pc] = red[r, self.cols]
        return x

    def solve_matrix(self, B: "Matrix"):
        """X with self @ X = B (columnwise), or None if any column fails."""
        cols = []
        for j in range(B.cols):
            x = self.solve([B[i, j] for i in range(B.rows)])
            if x is None:
                return None
            cols.append(x)
        return Matrix.from_rows(self.field, [[cols[j][i] for j in range(B.cols)] for i in range(self.cols)])


def stack_rows(field: Field, matrices) -> Matrix:
    mats = list(matrices)
    if not mats:
        raise ShapeMismatch("nothing to stack")
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise ShapeMismatch("column mismatch in stack")
    rows = []
    for m in mats:
        rows.extend(m.to_rows())
    return Matrix.from_rows(field, rows) if rows else Matrix(field, 0, cols, [])


def from_columns(field: Field, columns, nrows: int) -> Matrix:
    cols = list(columns)
    return Matrix.from_rows(field, [[c[i] for c in cols] for i in range(nrows)]) \
        if cols else Matrix(field, nrows, 0, [])
