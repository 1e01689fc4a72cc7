"""Dense matrices over an exact field, with rref/solve/kernel/rank kernels.

Matrices are immutable (tuple-of-tuples storage); every operation returns a
new value.  Target sizes are small (dimensions well under 200), so the
kernels are straightforward Gauss-Jordan with field ops bound to locals.
"""

from __future__ import annotations

from ..errors import DimensionMismatch


class Matrix:
    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field, rows: int, cols: int, data):
        self.field = field
        self.rows = rows
        self.cols = cols
        data = tuple(tuple(r) for r in data)
        if len(data) != rows or any(len(r) != cols for r in data):
            raise DimensionMismatch(f"expected {rows}x{cols} data")
        self.data = data

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_rows(cls, field, rows_list):
        rows = len(rows_list)
        cols = len(rows_list[0]) if rows else 0
        return cls(field, rows, cols, rows_list)

    @classmethod
    def zeros(cls, field, rows, cols):
        z = field.zero
        return cls(field, rows, cols, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        return cls(field, n, n, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def column(cls, field, entries):
        return cls(field, len(entries), 1, [[e] for e in entries])

    # -- basic structure -----------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and other.field == self.field
            and other.rows == self.rows
            and other.cols == self.cols
            and other.data == self.data
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __repr__(self):
        F = self.field
        body = "; ".join(" ".join(F.to_str(x) for x in row) for row in self.data)
        return f"Matrix({self.rows}x{self.cols}: {body})"

    def is_zero(self):
        z = self.field.zero
        return all(x == z for row in self.data for x in row)

    def row(self, i):
        return self.data[i]

    def col(self, j):
        return tuple(self.data[i][j] for i in range(self.rows))

    def entries_flat(self):
        return tuple(x for row in self.data for x in row)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        self._check_same_shape(other)
        add = self.field.add
        return Matrix(self.field, self.rows, self.cols,
                      [[add(a, b) for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self.data, other.data)])

    def __sub__(self, other):
        self._check_same_shape(other)
        sub = self.field.sub
        return Matrix(self.field, self.rows, self.cols,
                      [[sub(a, b) for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self.data, other.data)])

    def __neg__(self):
        neg = self.field.neg
        return Matrix(self.field, self.rows, self.cols,
                      [[neg(a) for a in r] for r in self.data])

    def scale(self, s):
        mul = self.field.mul
        return Matrix(self.field, self.rows, self.cols,
                      [[mul(s, a) for a in r] for r in self.data])

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        F = self.field
        add, mul, zero = F.add, F.mul, F.zero
        bt = other.transpose().data
        out = []
        for r in self.data:
            out_row = []
            for c in bt:
                acc = zero
                for a, b in zip(r, c):
                    if a != zero and b != zero:
                        acc = add(acc, mul(a, b))
                out_row.append(acc)
            out.append(out_row)
        return Matrix(F, self.rows, other.cols, out)

    def transpose(self):
        return Matrix(self.field, self.cols, self.rows,
                      [self.col(j) for j in range(self.cols)])

    def _check_same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatch("shape mismatch")

    # -- stacking ------------------------------------------------------------

    def hstack(self, other):
        if self.rows != other.rows:
            raise DimensionMismatch("hstack row mismatch")
        return Matrix(self.field, self.rows, self.cols + other.cols,
                      [r1 + r2 for r1, r2 in zip(self.data, other.data)])

    def vstack(self, other):
        if self.cols != other.cols:
            raise DimensionMismatch("vstack col mismatch")
        return Matrix(self.field, self.rows + other.rows, self.cols,
                      self.data + other.data)

    @staticmethod
    def block_diag(field, blocks):
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        z = field.zero
        data = [[z] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                row = data[r0 + i]
                brow = b.data[i]
                for j in range(b.cols):
                    row[c0 + j] = brow[j]
            r0 += b.rows
            c0 += b.cols
        return Matrix(field, rows, cols, data)

    def submatrix(self, row_range, col_range):
        return Matrix(self.field, len(row_range), len(col_range),
                      [[self.data[i][j] for j in col_range] for i in row_range])

    def select_columns(self, cols):
        return self.submatrix(range(self.rows), list(cols))

    # -- elimination kernels ---------------------------------------------------

    def rref(self):
        """Reduced row-echelon form; returns (R, pivot_columns)."""
        F = self.field
        zero, one = F.zero, F.one
        sub, mul, inv = F.sub, F.mul, F.inv
        m = [list(r) for r in self.data]
        nrows, ncols = self.rows, self.cols
        pivots = []
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            pr = None
            for i in range(r, nrows):
                if m[i][c] != zero:
                    pr = i
                    break
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            pv = m[r][c]
            if pv != one:
                ipv = inv(pv)
                m[r] = [mul(ipv, x) for x in m[r]]
            prow = m[r]
            for i in range(nrows):
                if i == r:
                    continue
                f = m[i][c]
                if f == zero:
                    continue
                mi = m[i]
                m[i] = [sub(a, mul(f, b)) for a, b in zip(mi, prow)]
            pivots.append(c)
            r += 1
        return Matrix(F, nrows, ncols, m), tuple(pivots)

    def rank(self):
        return len(self.rref()[1])

    def kernel_basis(self):
        """Columns form a basis of the right null space {x : self*x = 0}."""
        F = self.field
        R, pivots = self.rref()
        pivset = set(pivots)
        free = [j for j in range(self.cols) if j not in pivset]
        cols = []
        for fj in free:
            v = [F.zero] * self.cols
            v[fj] = F.one
            for i, pj in enumerate(pivots):
                v[pj] = F.neg(R.data[i][fj])
            cols.append(v)
        if not cols:
            return Matrix(F, self.cols, 0, [[] for _ in range(self.cols)])
        return Matrix(F, self.cols, len(cols), [list(r) for r in zip(*cols)])

    def solve(self, b: "Matrix"):
        """Some X with self*X = b, or None if the system is inconsistent."""
        if b.rows != self.rows:
            raise DimensionMismatch("solve: rhs row mismatch")
        F = self.field
        aug = self.hstack(b)
        R, pivots = aug.rref()
        n = self.cols
        for c in pivots:
            if c >= n:
                return None
        z = F.zero
        X = [[z] * b.cols for _ in range(n)]
        for i, pj in enumerate(pivots):
            for k in range(b.cols):
                X[pj][k] = R.data[i][n + k]
        return Matrix(F, n, b.cols, X)

    def inverse(self):
        """Two-sided inverse, or None if not square/invertible."""
        if self.rows != self.cols:
            return None
        X = self.solve(Matrix.identity(self.field, self.rows))
        if X is None or (X * self != Matrix.identity(self.field, self.rows)):
            return None
        return X

    def column_space_basis(self):
        """Matrix whose columns are a basis of the column space (original columns)."""
        _, pivots = self.rref()
        return self.select_columns(pivots)

    def is_injective(self):
        return self.rank() == self.cols

    def is_surjective(self):
        return self.rank() == self.rows

    # -- polynomial / spectral helpers ----------------------------------------

    def power(self, n: int):
        if self.rows != self.cols:
            raise DimensionMismatch("power of non-square matrix")
        out = Matrix.identity(self.field, self.rows)
        base = self
        while n > 0:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def eval_poly(self, coeffs):
        """coeffs ascending; returns sum coeffs[i] * self^i."""
        if self.rows != self.cols:
            raise DimensionMismatch("polynomial of non-square matrix")
        F = self.field
        out = Matrix.zeros(F, self.rows, self.cols)
        for c in reversed(coeffs):
            out = out * self
            if c != F.zero:
                out = out + Matrix.identity(F, self.rows).scale(c)
        return out


def companion_matrix(field, monic_coeffs):
    """Companion matrix of a monic polynomial (ascending coefficients)."""
    n = len(monic_coeffs) - 1
    if n < 1 or monic_coeffs[-1] != field.one:
        raise DimensionMismatch("companion matrix needs a monic poly of degree >= 1")
    z = field.zero
    data = [[z] * n for _ in range(n)]
    for i in range(1, n):
        data[i][i - 1] = field.one
    for i in range(n):
        data[i][n - 1] = field.neg(monic_coeffs[i])
    return Matrix(field, n, n, data)
