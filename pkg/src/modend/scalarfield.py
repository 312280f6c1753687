"""Exact arithmetic in a number field Q[x]/(p(x)) and exact linear algebra over it.

Scalars are represented by their coefficient vectors in the power basis
``1, theta, ..., theta^(d-1)`` of ``Q[x]/(p(x))``, with ``p`` monic of degree
``d``.  Irreducibility of ``p`` is a trust assumption on instance files: it is
never verified up front, and a reducible modulus surfaces lazily as
:class:`ZeroDivisorDetected` when an inversion hits a nontrivial gcd.

All linear algebra is dense and fraction-exact.  Echelon pivoting is
deterministic (leftmost nonzero column, first nonzero row from the top), so
every reported basis is reproducible across runs.  Nullspace vectors follow the
standard free-variable convention: the free coordinate is set to 1 and pivot
coordinates are solved, e.g. ``[[1, 1], [2, 2]]`` yields the basis vector
``(-1, 1)``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


class FieldError(ArithmeticError):
    pass


class DivisionByZero(FieldError):
    pass


class ZeroDivisorDetected(FieldError):
    """A nonzero element with no inverse modulo p: the modulus is reducible."""


class DimensionMismatch(ValueError):
    pass


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


class FieldSpec:
    """The number field Q[x]/(p(x)) with ``p`` given constant-first."""

    __slots__ = ("min_poly", "degree", "_reductions", "zero", "one", "_rat_cache")

    def __init__(self, min_poly: Sequence):
        coeffs = tuple(as_fraction(c) for c in min_poly)
        if len(coeffs) < 2:
            raise ValueError("min_poly must have degree >= 1")
        if coeffs[-1] != 1:
            raise ValueError("min_poly must be monic")
        self.min_poly = coeffs
        d = len(coeffs) - 1
        self.degree = d
        # theta^k for k = d .. 2d-2, reduced to the power basis
        reductions = []
        head = tuple(-c for c in coeffs[:-1])  # theta^d
        reductions.append(head)
        for _ in range(d - 2):
            prev = reductions[-1]
            shifted = (Fraction(0),) + prev[:-1]
            top = prev[-1]
            reductions.append(tuple(s + top * h for s, h in zip(shifted, head)))
        self._reductions = tuple(reductions)
        self.zero = FieldElement(self, (Fraction(0),) * d)
        self.one = FieldElement(self, (Fraction(1),) + (Fraction(0),) * (d - 1))
        self._rat_cache = {}

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self.min_poly == other.min_poly

    def __hash__(self):
        return hash(self.min_poly)

    def __repr__(self):
        return f"FieldSpec({[str(c) for c in self.min_poly]})"

    def element(self, coeffs: Iterable) -> FieldElement:
        vec = tuple(as_fraction(c) for c in coeffs)
        if len(vec) != self.degree:
            raise ValueError(f"expected {self.degree} coefficients, got {len(vec)}")
        return FieldElement(self, vec)

    def rational(self, value) -> FieldElement:
        q = as_fraction(value)
        cached = self._rat_cache.get(q)
        if cached is None:
            cached = FieldElement(self, (q,) + (Fraction(0),) * (self.degree - 1))
            self._rat_cache[q] = cached
        return cached

    def gen(self) -> FieldElement:
        """The class of x, i.e. the generator theta."""
        if self.degree == 1:
            return self.rational(-self.min_poly[0])
        vec = [Fraction(0)] * self.degree
        vec[1] = Fraction(1)
        return FieldElement(self, tuple(vec))

    def _reduce(self, coeffs: list) -> tuple:
        """Reduce a coefficient list of length <= 2d-1 modulo p."""
        d = self.degree
        for k in range(len(coeffs) - 1, d - 1, -1):
            top = coeffs[k]
            if top:
                red = self._reductions[k - d]
                for i, r in enumerate(red):
                    if r:
                        coeffs[i] += top * r
            coeffs.pop()
        while len(coeffs) < d:
            coeffs.append(Fraction(0))
        return tuple(coeffs)


class FieldElement:
    """An element of a :class:`FieldSpec`, fully reduced modulo p."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: FieldSpec, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs
        self._hash = None

    def _check(self, other: "FieldElement"):
        if self.field != other.field:
            raise DimensionMismatch("elements of different fields")

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        self._check(other)
        a, b = self.coeffs, other.coeffs
        d = self.field.degree
        if d == 1:
            return FieldElement(self.field, (a[0] * b[0],))
        prod = [Fraction(0)] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        return FieldElement(self.field, self.field._reduce(prod))

    def inverse(self) -> "FieldElement":
        if not self:
            raise DivisionByZero("inverse of zero")
        d = self.field.degree
        if d == 1:
            return FieldElement(self.field, (1 / self.coeffs[0],))
        # extended Euclid for gcd(b, p) = s*b + t*p in Q[x]
        r0 = list(self.field.min_poly)
        r1 = _trim(list(self.coeffs))
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while _degree(r1) > 0:
            q, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        if not r1:
            # gcd(b, p) = r0 has positive degree: p is reducible
            raise ZeroDivisorDetected("reducible min_poly detected")
        const = r1[0]
        inv = [c / const for c in s1]
        return FieldElement(self.field, self.field._reduce(inv + [Fraction(0)] * max(0, d - len(inv))))

    def __truediv__(self, other):
        return self * other.inverse()

    def __repr__(self):
        names = {0: "", 1: "*t"}
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                suffix = names.get(i, f"*t^{i}")
                terms.append(f"{c}{suffix}")
        return " + ".join(terms) if terms else "0"


def _trim(poly: list) -> list:
    while poly and not poly[-1]:
        poly.pop()
    return poly


def _degree(poly: list) -> int:
    return len(poly) - 1


def _poly_divmod(num: list, den: list):
    num = list(num)
    q = [Fraction(0)] * max(1, len(num) - len(den) + 1)
    inv_lead = 1 / den[-1]
    for k in range(len(num) - len(den), -1, -1):
        coef = num[k + len(den) - 1] * inv_lead
        q[k] = coef
        if coef:
            for i, dc in enumerate(den):
                num[k + i] -= coef * dc
    return _trim(q), _trim(num)


def _poly_mul(a: list, b: list) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim(out)


def _poly_sub(a: list, b: list) -> list:
    out = list(a) + [Fraction(0)] * max(0, len(b) - len(a))
    for i, bi in enumerate(b):
        out[i] -= bi
    return _trim(out)


def field_arith(op: str, a: FieldElement, b: FieldElement) -> FieldElement:
    """Dispatch one of add|sub|mul|div on two elements of the same field."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


class Matrix:
    """Dense row-major matrix over a fixed FieldSpec."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: FieldSpec, rows: int, cols: int, entries: Sequence[FieldElement]):
        if len(entries) != rows * cols:
            raise DimensionMismatch("entry count does not match shape")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.entries = list(entries)

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "Matrix":
        return cls(field, rows, cols, [field.zero] * (rows * cols))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        m = cls.zeros(field, n, n)
        for i in range(n):
            m[i, i] = field.one
        return m

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence[FieldElement]]) -> "Matrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        flat = []
        for r in rows:
            if len(r) != ncols:
                raise DimensionMismatch("ragged rows")
            flat.extend(r)
        return cls(field, nrows, ncols, flat)

    @classmethod
    def column(cls, field: FieldSpec, entries: Sequence[FieldElement]) -> "Matrix":
        return cls(field, len(entries), 1, list(entries))

    def __getitem__(self, key):
        i, j = key
        return self.entries[i * self.cols + j]

    def __setitem__(self, key, value: FieldElement):
        i, j = key
        self.entries[i * self.cols + j] = value

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __repr__(self):
        body = "; ".join(
            ", ".join(repr(self[i, j]) for j in range(self.cols)) for i in range(self.rows))
        return f"Matrix[{self.rows}x{self.cols}: {body}]"

    def copy(self) -> "Matrix":
        return Matrix(self.field, self.rows, self.cols, list(self.entries))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._shape_check(other)
        return Matrix(self.field, self.rows, self.cols,
                      [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._shape_check(other)
        return Matrix(self.field, self.rows, self.cols,
                      [a - b for a, b in zip(self.entries, other.entries)])

    def _shape_check(self, other: "Matrix"):
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatch(f"{self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def scale(self, scalar: FieldElement) -> "Matrix":
        return Matrix(self.field, self.rows, self.cols, [scalar * e for e in self.entries])

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        zero = self.field.zero
        out = [zero] * (self.rows * other.cols)
        for i in range(self.rows):
            base = i * self.cols
            for k in range(self.cols):
                a = self.entries[base + k]
                if a:
                    obase = k * other.cols
                    rbase = i * other.cols
                    for j in range(other.cols):
                        b = other.entries[obase + j]
                        if b:
                            out[rbase + j] = out[rbase + j] + a * b
        return Matrix(self.field, self.rows, other.cols, out)

    def transpose(self) -> "Matrix":
        out = [self.field.zero] * (self.rows * self.cols)
        for i in range(self.rows):
            for j in range(self.cols):
                out[j * self.rows + i] = self[i, j]
        return Matrix(self.field, self.cols, self.rows, out)

    @classmethod
    def vstack(cls, field: FieldSpec, mats: Sequence["Matrix"], cols: int | None = None) -> "Matrix":
        if not mats:
            if cols is None:
                raise DimensionMismatch("vstack of nothing needs an explicit width")
            return cls.zeros(field, 0, cols)
        width = mats[0].cols
        flat = []
        rows = 0
        for m in mats:
            if m.cols != width:
                raise DimensionMismatch("vstack width mismatch")
            flat.extend(m.entries)
            rows += m.rows
        return cls(field, rows, width, flat)

    @classmethod
    def hstack(cls, field: FieldSpec, mats: Sequence["Matrix"]) -> "Matrix":
        if not mats:
            raise DimensionMismatch("hstack of nothing")
        height = mats[0].rows
        cols = sum(m.cols for m in mats)
        out = cls.zeros(field, height, cols)
        off = 0
        for m in mats:
            if m.rows != height:
                raise DimensionMismatch("hstack height mismatch")
            for i in range(height):
                for j in range(m.cols):
                    out[i, off + j] = m[i, j]
            off += m.cols
        return out

    def rref(self):
        """Reduced row echelon form; returns ``(matrix, pivot_columns)``."""
        m = self.copy()
        pivots = []
        row = 0
        for col in range(m.cols):
            if row >= m.rows:
                break
            sel = None
            for r in range(row, m.rows):
                if m[r, col]:
                    sel = r
                    break
            if sel is None:
                continue
            if sel != row:
                for j in range(m.cols):
                    m[row, j], m[sel, j] = m[sel, j], m[row, j]
            inv = m[row, col].inverse()
            for j in range(col, m.cols):
                m[row, j] = inv * m[row, j]
            for r in range(m.rows):
                if r != row and m[r, col]:
                    factor = m[r, col]
                    for j in range(col, m.cols):
                        m[r, j] = m[r, j] - factor * m[row, j]
            pivots.append(col)
            row += 1
        return m, pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise DimensionMismatch("inverse of non-square matrix")
        aug = Matrix.hstack(self.field, [self, Matrix.identity(self.field, self.rows)])
        red, pivots = aug.rref()
        if pivots != list(range(self.rows)):
            raise DivisionByZero("singular matrix")
        out = Matrix.zeros(self.field, self.rows, self.rows)
        for i in range(self.rows):
            for j in range(self.rows):
                out[i, j] = red[i, self.rows + j]
        return out

    def nullspace(self) -> list:
        """Basis of the right kernel as column vectors, echelon-canonical."""
        red, pivots = self.rref()
        pivot_set = set(pivots)
        free = [j for j in range(self.cols) if j not in pivot_set]
        basis = []
        for j in free:
            vec = [self.field.zero] * self.cols
            vec[j] = self.field.one
            for r, pc in enumerate(pivots):
                val = red[r, j]
                if val:
                    vec[pc] = -val
            basis.append(Matrix.column(self.field, vec))
        return basis


def subspace_equal(a: Sequence[Matrix], b: Sequence[Matrix]) -> bool:
    """Whether two lists of column vectors span the same subspace."""
    if not a and not b:
        return True
    vecs = list(a) + list(b)
    ambient = vecs[0].rows
    field = vecs[0].field
    for v in vecs:
        if v.cols != 1:
            raise DimensionMismatch("basis entries must be column vectors")
        if v.rows != ambient:
            raise DimensionMismatch("ambient dimensions differ")
    rows_a = [[v[i, 0] for i in range(ambient)] for v in a]
    rows_b = [[v[i, 0] for i in range(ambient)] for v in b]
    if not rows_a or not rows_b:
        other = rows_a or rows_b
        return Matrix.from_rows(field, other).rank() == 0
    rank_a = Matrix.from_rows(field, rows_a).rank()
    rank_b = Matrix.from_rows(field, rows_b).rank()
    if rank_a != rank_b:
        return False
    return Matrix.from_rows(field, rows_a + rows_b).rank() == rank_a


def span_contains(basis: Sequence[Matrix], vector: Matrix) -> bool:
    """Whether ``vector`` lies in the span of ``basis``."""
    if not basis:
        return vector.is_zero()
    ambient = vector.rows
    rows = [[v[i, 0] for i in range(ambient)] for v in basis]
    base_rank = Matrix.from_rows(vector.field, rows).rank()
    rows.append([vector[i, 0] for i in range(ambient)])
    return Matrix.from_rows(vector.field, rows).rank() == base_rank
