"""Exact linear algebra over the rationals and over prime fields.

Matrices are immutable, row-major and remember their field. Everything is
computed exactly: rational work is fraction-free Bareiss elimination on
denominator-cleared integer rows (back-substitution in Fractions), prime
field work is Gaussian elimination with modular inverses. The pivot rule is
deterministic (first nonzero entry in column order), so ranks, kernels and
solutions are reproducible across runs and platforms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

_PRIME_LIMIT = 2 ** 31


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if p % q == 0:
            return p == q
    # deterministic Miller-Rabin; these bases are exact below 3.2e18,
    # far beyond any characteristic this package accepts
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Field:
    """The scalar field: the rationals if characteristic 0, else F_p.

    Scalars are plain `Fraction` values over the rationals and plain ints in
    [0, p) over a prime field; `coerce` normalizes anything else.
    """

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p == 0:
            return
        if p >= _PRIME_LIMIT:
            raise ValueError(f"prime field characteristic {p} exceeds 2^31")
        if not _is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    def coerce(self, x):
        if self.characteristic == 0:
            if isinstance(x, Fraction):
                return x
            if isinstance(x, int):
                return Fraction(x)
            raise TypeError(f"cannot coerce {x!r} into Q")
        if isinstance(x, Fraction):
            if x.denominator == 1:
                return x.numerator % self.characteristic
            return self.mul(x.numerator, self.inv(x.denominator))
        if isinstance(x, int):
            return x % self.characteristic
        raise TypeError(f"cannot coerce {x!r} into F_{self.characteristic}")

    @property
    def zero(self):
        return Fraction(0) if self.characteristic == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.characteristic == 0 else 1

    def add(self, a, b):
        return a + b if self.characteristic == 0 else (a + b) % self.characteristic

    def sub(self, a, b):
        return a - b if self.characteristic == 0 else (a - b) % self.characteristic

    def mul(self, a, b):
        return a * b if self.characteristic == 0 else (a * b) % self.characteristic

    def neg(self, a):
        return -a if self.characteristic == 0 else (-a) % self.characteristic

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverting zero field element")
        if self.characteristic == 0:
            return 1 / a
        return pow(a, self.characteristic - 2, self.characteristic)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == 0

    def parse(self, token: str):
        """Parse a scalar token: an integer or a quotient like '-3/2'."""
        token = token.strip()
        try:
            if "/" in token:
                num, den = token.split("/", 1)
                value = Fraction(int(num), int(den))
            else:
                value = Fraction(int(token))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad scalar {token!r}: {exc}") from None
        return self.coerce(value)

    def format(self, x) -> str:
        return str(x)

    def __repr__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def _clear_denominators(row):
    """Scale a row of Fractions to integers (does not change row space)."""
    lcm = 1
    for x in row:
        d = x.denominator
        if d != 1:
            lcm = lcm // gcd(lcm, d) * d
    if lcm == 1:
        return [x.numerator for x in row]
    return [x.numerator * (lcm // x.denominator) for x in row]


def _echelon_bareiss(rows, pivot_cols_limit):
    """Fraction-free forward elimination on integer rows.

    Returns (rows, pivots) where pivots is the list of pivot column indices
    in order; rows is in (non-reduced) echelon form. Only columns below
    pivot_cols_limit may host pivots.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    pivots = []
    prev = 1
    r = 0
    for c in range(min(n, pivot_cols_limit) if pivot_cols_limit is not None else n):
        pr = None
        for i in range(r, m):
            if rows[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, m):
            ric = rows[i][c]
            row_i = rows[i]
            row_r = rows[r]
            for j in range(c + 1, n):
                row_i[j] = (row_i[j] * piv - ric * row_r[j]) // prev
            row_i[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
        if r == m:
            break
    return rows, pivots


def _echelon_mod(rows, p, pivot_cols_limit):
    """Forward elimination mod p with unit pivots."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    pivots = []
    r = 0
    for c in range(min(n, pivot_cols_limit) if pivot_cols_limit is not None else n):
        pr = None
        for i in range(r, m):
            if rows[i][c] % p != 0:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(r + 1, m):
            f = rows[i][c] % p
            if f:
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return rows, pivots


class Mat:
    """Immutable matrix with exact entries over a fixed field."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: Field, rows: int, cols: int, entries):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        ent = tuple(field.coerce(x) for x in entries)
        if len(ent) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {len(ent)}"
            )
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", ent)

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Mat":
        return cls(field, rows, cols, [field.zero] * (rows * cols))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Mat":
        ent = [field.zero] * (n * n)
        for i in range(n):
            ent[i * n + i] = field.one
        return cls(field, n, n, ent)

    @classmethod
    def from_rows(cls, field: Field, row_lists) -> "Mat":
        row_lists = [list(r) for r in row_lists]
        rows = len(row_lists)
        cols = len(row_lists[0]) if rows else 0
        for r in row_lists:
            if len(r) != cols:
                raise ValueError("ragged rows")
        flat = [x for r in row_lists for x in r]
        return cls(field, rows, cols, flat)

    @classmethod
    def column(cls, field: Field, values) -> "Mat":
        values = list(values)
        return cls(field, len(values), 1, values)

    def entry(self, i: int, j: int):
        return self.entries[i * self.cols + j]

    def row(self, i: int):
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int):
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(
            " ".join(self.field.format(x) for x in self.row(i)) for i in range(self.rows)
        )
        return f"Mat({self.rows}x{self.cols} over {self.field!r}: {body})"

    def _check_same_field(self, other: "Mat"):
        if self.field != other.field:
            raise ValueError("matrices over different fields")

    def add(self, other: "Mat") -> "Mat":
        self._check_same_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in add")
        f = self.field
        return Mat(
            f,
            self.rows,
            self.cols,
            [f.add(a, b) for a, b in zip(self.entries, other.entries)],
        )

    def sub(self, other: "Mat") -> "Mat":
        self._check_same_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in sub")
        f = self.field
        return Mat(
            f,
            self.rows,
            self.cols,
            [f.sub(a, b) for a, b in zip(self.entries, other.entries)],
        )

    def neg(self) -> "Mat":
        f = self.field
        return Mat(f, self.rows, self.cols, [f.neg(a) for a in self.entries])

    def scale(self, c) -> "Mat":
        f = self.field
        c = f.coerce(c)
        return Mat(f, self.rows, self.cols, [f.mul(c, a) for a in self.entries])

    def mul(self, other: "Mat") -> "Mat":
        self._check_same_field(other)
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch in mul: {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        f = self.field
        p = f.characteristic
        out = [f.zero] * (self.rows * other.cols)
        for i in range(self.rows):
            base = i * self.cols
            for k in range(self.cols):
                a = self.entries[base + k]
                if a == 0:
                    continue
                obase = k * other.cols
                rbase = i * other.cols
                if p:
                    for j in range(other.cols):
                        out[rbase + j] = (out[rbase + j] + a * other.entries[obase + j]) % p
                else:
                    for j in range(other.cols):
                        out[rbase + j] = out[rbase + j] + a * other.entries[obase + j]
        return Mat(f, self.rows, other.cols, out)

    def transpose(self) -> "Mat":
        out = []
        for j in range(self.cols):
            for i in range(self.rows):
                out.append(self.entries[i * self.cols + j])
        return Mat(self.field, self.cols, self.rows, out)

    def hstack(self, other: "Mat") -> "Mat":
        self._check_same_field(other)
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        out = []
        for i in range(self.rows):
            out.extend(self.row(i))
            out.extend(other.row(i))
        return Mat(self.field, self.rows, self.cols + other.cols, out)

    def vstack(self, other: "Mat") -> "Mat":
        self._check_same_field(other)
        if self.cols != other.cols:
            raise ValueError("column mismatch in vstack")
        return Mat(
            self.field, self.rows + other.rows, self.cols, self.entries + other.entries
        )

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    # --- elimination-backed operations ---

    def _echelon(self, pivot_cols_limit=None):
        """Echelon form usable for back-substitution: (rows, pivots)."""
        if self.rows == 0 or self.cols == 0:
            return [], []
        if self.field.is_rational:
            rows = [_clear_denominators(list(self.row(i))) for i in range(self.rows)]
            return _echelon_bareiss(rows, pivot_cols_limit)
        rows = [list(self.row(i)) for i in range(self.rows)]
        return _echelon_mod(rows, self.field.characteristic, pivot_cols_limit)

    def rank(self) -> int:
        return len(self._echelon()[1])

    def cokernel_dim(self) -> int:
        """Dimension of the cokernel of this matrix as a linear map."""
        return self.rows - self.rank()

    def kernel_basis(self):
        """Deterministic kernel basis as a list of column vectors (n x 1 Mats).

        Each basis vector has value 1 at its free column and 0 at all other
        free columns, so the basis is the reduced echelon one.
        """
        f = self.field
        n = self.cols
        if n == 0:
            return []
        if self.rows == 0:
            return [Mat.column(f, [f.one if i == j else f.zero for i in range(n)]) for j in range(n)]
        rows, pivots = self._echelon()
        pivot_set = set(pivots)
        free = [c for c in range(n) if c not in pivot_set]
        basis = []
        for fc in free:
            x = [f.zero] * n
            x[fc] = f.one
            for r in range(len(pivots) - 1, -1, -1):
                c = pivots[r]
                s = f.zero
                row = rows[r]
                for j in range(c + 1, n):
                    if x[j] != 0 and row[j] != 0:
                        s = f.add(s, f.mul(f.coerce(row[j]), x[j]))
                x[c] = f.neg(f.div(s, f.coerce(row[c])))
            basis.append(Mat.column(f, x))
        return basis

    def solve(self, b: "Mat"):
        """One exact solution of self @ x = b, or None if inconsistent.

        Free variables are set to zero, so the result is deterministic.
        """
        self._check_same_field(b)
        if b.rows != self.rows or b.cols != 1:
            raise ValueError("solve expects a column vector matching the row count")
        sol = self.solve_matrix(b)
        return sol

    def solve_matrix(self, B: "Mat"):
        """Solve self @ X = B columnwise; None if any column is inconsistent."""
        self._check_same_field(B)
        if B.rows != self.rows:
            raise ValueError("row mismatch in solve")
        f = self.field
        n = self.cols
        aug = self.hstack(B)
        rows, pivots = aug._echelon(pivot_cols_limit=n)
        # consistency: no nonzero residue in the B block below the pivots
        for i in range(len(pivots), len(rows)):
            if any(x != 0 for x in rows[i][n:]):
                return None
        cols_out = []
        for bc in range(B.cols):
            x = [f.zero] * n
            for r in range(len(pivots) - 1, -1, -1):
                c = pivots[r]
                row = rows[r]
                s = f.coerce(row[n + bc])
                for j in range(c + 1, n):
                    if x[j] != 0 and row[j] != 0:
                        s = f.sub(s, f.mul(f.coerce(row[j]), x[j]))
                x[c] = f.div(s, f.coerce(row[c]))
            cols_out.append(x)
        out = []
        for i in range(n):
            for xcol in cols_out:
                out.append(xcol[i])
        return Mat(f, n, B.cols, out)

    def column_space_pivot_rows(self):
        """Row indices where the column space has its echelon pivots.

        The complementary rows index a basis of the cokernel: unit vectors
        there complete the column space to the full target.
        """
        return tuple(self.transpose()._echelon()[1])

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def inverse(self) -> "Mat":
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        inv = self.solve_matrix(Mat.identity(self.field, self.rows))
        if inv is None:
            raise ValueError("matrix is singular")
        return inv
