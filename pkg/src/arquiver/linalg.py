"""Exact dense linear algebra over Q and prime fields.

Everything downstream (Hom spaces, translates, annihilators) reduces to
kernels and linear solves over an exact field, so determinism here means
determinism everywhere: row reduction always picks the first nonzero pivot
and normalizes it to 1, and kernel bases are read off the reduced echelon
form with free variables set to 1 one at a time.
"""

from fractions import Fraction

from .errors import DimensionError


class RationalField:
    """The field Q with elements represented as Fraction."""

    char = 0
    name = "Q"

    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def parse(self, text):
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational scalar: {text!r}") from exc

    def format(self, x):
        return str(x)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class FpElement:
    """Residue mod p; canonical value in 0..p-1."""

    __slots__ = ("value", "p")

    def __init__(self, value, p):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise ValueError("mixed prime fields")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FpElement(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FpElement(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FpElement(v - self.value, self.p)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FpElement(self.value * v, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        if v % self.p == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return FpElement(self.value * pow(v, self.p - 2, self.p), self.p)

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FpElement(v, self.p) / self

    def __neg__(self):
        return FpElement(-self.value, self.p)

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value}"


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """The prime field F_p."""

    def __init__(self, p):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.name = f"F {p}"
        self.zero = FpElement(0, p)
        self.one = FpElement(1, p)

    def from_int(self, n):
        return FpElement(n, self.p)

    def parse(self, text):
        try:
            return FpElement(int(text), self.p)
        except ValueError as exc:
            raise ValueError(f"not an F_{self.p} scalar: {text!r}") from exc

    def format(self, x):
        return str(x.value)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


class Matrix:
    """Dense matrix over an exact field; 0xn and nx0 shapes are legal."""

    __slots__ = ("nrows", "ncols", "data", "field")

    def __init__(self, nrows, ncols, data, field=QQ):
        if len(data) != nrows or any(len(row) != ncols for row in data):
            raise DimensionError(f"entry grid does not match shape {nrows}x{ncols}")
        self.nrows = nrows
        self.ncols = ncols
        self.data = [list(row) for row in data]
        self.field = field

    @classmethod
    def zeros(cls, nrows, ncols, field=QQ):
        z = field.zero
        return cls(nrows, ncols, [[z] * ncols for _ in range(nrows)], field)

    @classmethod
    def identity(cls, n, field=QQ):
        m = cls.zeros(n, n, field)
        for i in range(n):
            m.data[i][i] = field.one
        return m

    @classmethod
    def from_rows(cls, rows, ncols=None, field=QQ):
        if not rows:
            if ncols is None:
                raise DimensionError("cannot infer column count of an empty row list")
            return cls(0, ncols, [], field)
        return cls(len(rows), len(rows[0]), rows, field)

    @classmethod
    def column(cls, entries, field=QQ):
        return cls(len(entries), 1, [[e] for e in entries], field)

    def copy(self):
        return Matrix(self.nrows, self.ncols, self.data, self.field)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.data == other.data
        )

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, {self.data})"

    def __add__(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionError("matrix addition shape mismatch")
        return Matrix(
            self.nrows,
            self.ncols,
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)],
            self.field,
        )

    def __sub__(self, other):
        return self + other.scale(-self.field.one)

    def scale(self, c):
        return Matrix(self.nrows, self.ncols, [[c * a for a in row] for row in self.data], self.field)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise DimensionError(
                    f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}"
                )
            zero = self.field.zero
            out = [[zero] * other.ncols for _ in range(self.nrows)]
            for i in range(self.nrows):
                row = self.data[i]
                for k in range(self.ncols):
                    a = row[k]
                    if not a:
                        continue
                    other_row = other.data[k]
                    out_row = out[i]
                    for j in range(other.ncols):
                        b = other_row[j]
                        if b:
                            out_row[j] = out_row[j] + a * b
            return Matrix(self.nrows, other.ncols, out, self.field)
        return NotImplemented

    def apply(self, vec):
        """Matrix-vector product; vec is a plain list."""
        if len(vec) != self.ncols:
            raise DimensionError("vector length does not match column count")
        zero = self.field.zero
        out = []
        for row in self.data:
            s = zero
            for a, x in zip(row, vec):
                if a and x:
                    s = s + a * x
            out.append(s)
        return out

    def transpose(self):
        return Matrix(
            self.ncols,
            self.nrows,
            [[self.data[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            self.field,
        )

    def is_zero(self):
        return all(not a for row in self.data for a in row)

    def power(self, n):
        if self.nrows != self.ncols:
            raise DimensionError("power of a non-square matrix")
        result = Matrix.identity(self.nrows, self.field)
        base = self
        while n > 0:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result


def rref(m):
    """Reduced row echelon form; returns (new Matrix, pivot column list)."""
    data = [list(row) for row in m.data]
    pivots = []
    r = 0
    for c in range(m.ncols):
        pr = None
        for i in range(r, m.nrows):
            if data[i][c]:
                pr = i
                break
        if pr is None:
            continue
        data[r], data[pr] = data[pr], data[r]
        inv = data[r][c]
        data[r] = [a / inv for a in data[r]]
        for i in range(m.nrows):
            if i != r and data[i][c]:
                f = data[i][c]
                data[i] = [a - f * b for a, b in zip(data[i], data[r])]
        pivots.append(c)
        r += 1
        if r == m.nrows:
            break
    return Matrix(m.nrows, m.ncols, data, m.field), pivots


def rank(m):
    return len(rref(m)[1])


def kernel_basis(m):
    """Basis of the right null space, read off the reduced echelon form.

    Returns a list of column vectors (plain lists), one per free column,
    in increasing free-column order.  Deterministic for identical input.
    """
    red, pivots = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.ncols) if c not in pivot_set]
    zero, one = m.field.zero, m.field.one
    basis = []
    for fc in free:
        v = [zero] * m.ncols
        v[fc] = one
        for i, pc in enumerate(pivots):
            v[pc] = -red.data[i][fc]
        basis.append(v)
    return basis


def solve(m, b):
    """One exact solution of m*x = b, or None when inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    if len(b) != m.nrows:
        raise DimensionError("right-hand side length does not match row count")
    aug = Matrix(m.nrows, m.ncols + 1, [row + [bb] for row, bb in zip(m.data, b)], m.field)
    red, pivots = rref(aug)
    if m.ncols in pivots:
        return None
    zero = m.field.zero
    x = [zero] * m.ncols
    for i, pc in enumerate(pivots):
        x[pc] = red.data[i][m.ncols]
    return x


class RowSpace:
    """A subspace of F^n kept as canonical RREF rows.

    Canonical form makes subspace equality a plain list comparison, which
    is what the span-invariance properties are tested against.
    """

    def __init__(self, n, vectors=(), field=QQ):
        self.n = n
        self.field = field
        self.rows = []
        self.pivots = []
        for v in vectors:
            self.add(v)

    def add(self, v):
        """Reduce v against the current rows; absorb it when independent."""
        if len(v) != self.n:
            raise DimensionError("vector length does not match ambient dimension")
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            if v[p]:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        lead = next((j for j, a in enumerate(v) if a), None)
        if lead is None:
            return False
        inv = v[lead]
        v = [a / inv for a in v]
        self.rows.append(v)
        self.pivots.append(lead)
        # re-sort by pivot and back-substitute to keep rows canonical
        order = sorted(range(len(self.pivots)), key=lambda i: self.pivots[i])
        self.rows = [self.rows[i] for i in order]
        self.pivots = [self.pivots[i] for i in order]
        for i in range(len(self.rows)):
            for j in range(len(self.rows)):
                if i != j and self.rows[i][self.pivots[j]]:
                    f = self.rows[i][self.pivots[j]]
                    self.rows[i] = [a - f * b for a, b in zip(self.rows[i], self.rows[j])]
        return True

    def reduce(self, v):
        """Residue of v modulo the subspace (list, zero iff contained)."""
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            if v[p]:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def contains(self, v):
        return all(not a for a in self.reduce(v))

    @property
    def dim(self):
        return len(self.rows)

    def __eq__(self, other):
        return (
            isinstance(other, RowSpace)
            and self.n == other.n
            and self.rows == other.rows
        )

    def __le__(self, other):
        return all(other.contains(r) for r in self.rows)

    def copy(self):
        s = RowSpace(self.n, field=self.field)
        s.rows = [list(r) for r in self.rows]
        s.pivots = list(self.pivots)
        return s

    def __repr__(self):
        return f"RowSpace(dim {self.dim} of F^{self.n})"
