"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`, which already keeps every value in
lowest terms with a positive denominator.  A few parameter points only exist
over a real quadratic field, so :class:`QuadraticNumber` (``a + b*sqrt(d)``)
is accepted wherever a scalar is; every routine below only uses field
operations and equality with zero.  Matrices are stored as sparse rows
(``dict`` column -> nonzero entry) because the coboundary operators built on
top of this module are very sparse; the public contract is still that of a
dense ``rows x cols`` matrix.

Row reduction is done incrementally into a fully reduced echelon form
(:class:`Echelon`).  Pivots are taken at the leftmost surviving column, which
makes the reduced form canonical and every derived basis deterministic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

Scalar = Union[Fraction, "QuadraticNumber"]
SparseVec = Dict[int, Scalar]

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL = r"[+-]?\d+(?:/\d+)?"
_SCALAR_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")
_SURD_RE = re.compile(
    rf"^(?:(?P<a>{_RATIONAL})(?=[+-]))?(?P<b>[+-]?(?:\d+(?:/\d+)?)?)\*?sqrt\((?P<d>\d+)\)$"
)


class LinalgError(ValueError):
    pass


class QuadraticNumber:
    """``a + b*sqrt(d)`` with rational ``a, b`` and a squarefree ``d > 1``.

    Arithmetic that cancels the surd returns a plain :class:`Fraction`, so
    rational computations never change type.  Mixing two different ``d`` is
    an error.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        if d < 2 or _squarefree_part(d) != d:
            raise LinalgError(f"sqrt({d}) needs a squarefree d > 1")
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = d

    @staticmethod
    def make(a, b, d: int):
        if not b:
            return Fraction(a)
        return QuadraticNumber(a, b, d)

    @classmethod
    def sqrt(cls, x) -> "Scalar":
        """Square root of a nonnegative rational, exact."""
        x = Fraction(x)
        if x < 0:
            raise LinalgError("square root of a negative rational")
        num, den = x.numerator * x.denominator, x.denominator
        # sqrt(p/q) = sqrt(p*q)/q; pull out the square part of p*q
        core = _squarefree_part(num)
        outer = _isqrt_exact(num // core) if num else 0
        if core == 1 or num == 0:
            return Fraction(outer, den)
        return cls(0, Fraction(outer, den), core)

    def _coerce(self, other):
        if isinstance(other, QuadraticNumber):
            if other.d != self.d:
                raise LinalgError(f"cannot mix sqrt({self.d}) and sqrt({other.d})")
            return other.a, other.b
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticNumber.make(self.a + o[0], self.b + o[1], self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticNumber.make(self.a - o[0], self.b - o[1], self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticNumber.make(o[0] - self.a, o[1] - self.b, self.d)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = o
        return QuadraticNumber.make(self.a * a + self.d * self.b * b, self.a * b + self.b * a, self.d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def conjugate(self) -> "QuadraticNumber":
        return QuadraticNumber(self.a, -self.b, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = o
        nrm = a * a - self.d * b * b
        if not nrm:
            raise ZeroDivisionError("division by zero")
        # (x)(a - b sqrt d) / (a^2 - d b^2)
        re_ = (self.a * a - self.d * self.b * b) / nrm
        im_ = (self.b * a - self.a * b) / nrm
        return QuadraticNumber.make(re_, im_, self.d)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.conjugate() * o[0] / self.norm()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return 1 / (self ** -k)
        out = Fraction(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, QuadraticNumber):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        if isinstance(other, (int, Fraction)):
            return False  # b != 0 by construction
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return True

    def __repr__(self):
        return f"QuadraticNumber({self.a}, {self.b}, {self.d})"

    def __str__(self):
        return format_scalar(self)


def _isqrt_exact(x: int) -> int:
    from math import isqrt

    r = isqrt(x)
    if r * r != x:
        raise LinalgError(f"{x} is not a perfect square")
    return r


def _squarefree_part(x: int) -> int:
    """Squarefree kernel s with x = s * m^2 (x > 0)."""
    if x <= 0:
        return x
    s, f = 1, 2
    while f * f <= x:
        while x % (f * f) == 0:
            x //= f * f
        if x % f == 0:
            s *= f
            x //= f
        f += 1
    return s * x


def _parse_rational(text: str) -> Fraction:
    m = _SCALAR_RE.match(text)
    if m is None:
        raise LinalgError(f"malformed rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise LinalgError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def parse_scalar(text: str):
    """Parse a rational literal such as ``"3/4"`` or ``"-2"``.

    Quadratic surds are written ``"a+b*sqrt(d)"``, e.g. ``"1/2*sqrt(10)"`` or
    ``"-1-2*sqrt(3)"``.

    >>> parse_scalar("4/6")
    Fraction(2, 3)
    """
    if not isinstance(text, str):
        raise LinalgError(f"expected a string, got {type(text).__name__}")
    t = text.strip().replace(" ", "")
    if "sqrt" not in t:
        return _parse_rational(t)
    m = _SURD_RE.match(t)
    if m is None:
        raise LinalgError(f"malformed scalar literal: {text!r}")
    a = _parse_rational(m.group("a")) if m.group("a") else Fraction(0)
    bs = m.group("b")
    b = Fraction(1) if bs in ("", "+") else Fraction(-1) if bs == "-" else _parse_rational(bs)
    root = QuadraticNumber.sqrt(int(m.group("d")))
    return a + b * root


def format_scalar(x) -> str:
    if isinstance(x, QuadraticNumber):
        out = f"{format_scalar(x.a)}+" if x.a else ""
        if x.b == 1:
            tail = ""
        elif x.b == -1:
            tail = "-"
        else:
            tail = f"{format_scalar(x.b)}*"
        out = out + tail + f"sqrt({x.d})"
        return out.replace("+-", "-")
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def as_scalar(x):
    if isinstance(x, (Fraction, QuadraticNumber)):
        return x
    if isinstance(x, float):
        raise LinalgError("floating point values are not accepted; use a rational")
    if isinstance(x, str):
        return parse_scalar(x)
    return Fraction(x)


# -- sparse vector helpers ---------------------------------------------------

def sparse(vec: Sequence) -> SparseVec:
    return {i: as_scalar(x) for i, x in enumerate(vec) if x != 0}


def dense(vec: SparseVec, length: int) -> Tuple[Fraction, ...]:
    out = [ZERO] * length
    for i, x in vec.items():
        out[i] = x
    return tuple(out)


def axpy(y: SparseVec, a: Fraction, x: SparseVec) -> None:
    """In place ``y += a * x``; drops entries that cancel."""
    if not a:
        return
    for i, xi in x.items():
        v = y.get(i, ZERO) + a * xi
        if v:
            y[i] = v
        else:
            y.pop(i, None)


def normalize_leading(vec: SparseVec) -> SparseVec:
    """Scale so the first nonzero coordinate is 1."""
    if not vec:
        return vec
    lead = vec[min(vec)]
    if lead == ONE:
        return dict(vec)
    inv = ONE / lead
    return {i: x * inv for i, x in vec.items()}


# -- matrices ----------------------------------------------------------------

class Matrix:
    """A ``rows x cols`` rational matrix with sparse row storage."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, data: Optional[Sequence[SparseVec]] = None):
        if rows < 0 or cols < 0:
            raise LinalgError("negative matrix shape")
        self.rows = rows
        self.cols = cols
        if data is None:
            self._data: List[SparseVec] = [{} for _ in range(rows)]
        else:
            if len(data) != rows:
                raise LinalgError("row count does not match shape")
            self._data = []
            for r in data:
                row = {}
                for j, x in r.items():
                    if not 0 <= j < cols:
                        raise LinalgError(f"column index {j} outside 0..{cols - 1}")
                    if x:
                        row[j] = as_scalar(x)
                self._data.append(row)

    @classmethod
    def from_dense(cls, entries: Sequence[Sequence], cols: Optional[int] = None) -> "Matrix":
        rows = len(entries)
        if cols is None:
            cols = len(entries[0]) if rows else 0
        for r in entries:
            if len(r) != cols:
                raise LinalgError("ragged matrix rows")
        return cls(rows, cols, [sparse(r) for r in entries])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [{i: ONE} for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        data: List[SparseVec] = [{} for _ in range(rows)]
        for j, col in enumerate(columns):
            if len(col) != rows:
                raise LinalgError("column length does not match row count")
            for i, x in enumerate(col):
                if x:
                    data[i][j] = as_scalar(x)
        return cls(rows, len(columns), data)

    def row(self, i: int) -> SparseVec:
        return self._data[i]

    def sparse_rows(self) -> List[SparseVec]:
        return self._data

    def __getitem__(self, ij: Tuple[int, int]) -> Fraction:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self._data[i].get(j, ZERO)

    def to_dense(self) -> List[List[Fraction]]:
        return [list(dense(r, self.cols)) for r in self._data]

    def column(self, j: int) -> Tuple[Fraction, ...]:
        return tuple(r.get(j, ZERO) for r in self._data)

    def transpose(self) -> "Matrix":
        data: List[SparseVec] = [{} for _ in range(self.cols)]
        for i, r in enumerate(self._data):
            for j, x in r.items():
                data[j][i] = x
        return Matrix(self.cols, self.rows, data)

    def apply(self, vec: Sequence) -> Tuple[Fraction, ...]:
        if len(vec) != self.cols:
            raise LinalgError(f"vector of length {len(vec)} for {self.rows}x{self.cols} matrix")
        return tuple(sum((x * vec[j] for j, x in r.items()), ZERO) for r in self._data)

    def apply_sparse(self, vec: SparseVec) -> SparseVec:
        out: SparseVec = {}
        for i, r in enumerate(self._data):
            if len(r) < len(vec):
                s = sum((x * vec[j] for j, x in r.items() if j in vec), ZERO)
            else:
                s = sum((x * r[j] for j, x in vec.items() if j in r), ZERO)
            if s:
                out[i] = s
        return out

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise LinalgError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out = []
        for r in self._data:
            acc: SparseVec = {}
            for k, x in r.items():
                axpy(acc, x, other._data[k])
            out.append(acc)
        return Matrix(self.rows, other.cols, out)

    def is_zero(self) -> bool:
        return not any(self._data)

    def nnz(self) -> int:
        return sum(len(r) for r in self._data)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self._data == other._data

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols}, nnz={self.nnz()})"


# -- echelon form --------------------------------------------------------------

class Echelon:
    """Incrementally maintained reduced row echelon form.

    Every stored row has a pivot entry equal to 1 and is zero in the pivot
    columns of all other stored rows.
    """

    def __init__(self):
        self.pivots: Dict[int, SparseVec] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: SparseVec) -> SparseVec:
        v = dict(vec)
        # pivot rows are fully reduced, so a single pass over pivot columns suffices
        for p in [c for c in v if c in self.pivots]:
            a = v.get(p)
            if a:
                axpy(v, -a, self.pivots[p])
        return v

    def add(self, vec: SparseVec) -> bool:
        """Insert ``vec``; return False when it was already in the span."""
        v = self.reduce(vec)
        if not v:
            return False
        p = min(v)
        inv = ONE / v[p]
        if inv != ONE:
            v = {i: x * inv for i, x in v.items()}
        for row in self.pivots.values():
            a = row.get(p)
            if a:
                axpy(row, -a, v)
        self.pivots[p] = v
        return True

    def contains(self, vec: SparseVec) -> bool:
        return not self.reduce(vec)

    def rows(self) -> List[SparseVec]:
        return [self.pivots[p] for p in sorted(self.pivots)]


def echelon_of(vectors: Iterable[SparseVec]) -> Echelon:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech


def rank(m: Matrix) -> int:
    return echelon_of(m.sparse_rows()).rank


def rref(m: Matrix) -> Tuple[List[SparseVec], List[int]]:
    ech = echelon_of(m.sparse_rows())
    piv = sorted(ech.pivots)
    return [ech.pivots[p] for p in piv], piv


# -- subspaces -----------------------------------------------------------------

@dataclass(frozen=True)
class SubspaceBasis:
    ambient_dim: int
    vectors: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        for v in self.vectors:
            if len(v) != self.ambient_dim:
                raise LinalgError("basis vector length differs from ambient dimension")

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def sparse_vectors(self) -> List[SparseVec]:
        return [sparse(v) for v in self.vectors]

    def contains(self, vec: Sequence) -> bool:
        return echelon_of(self.sparse_vectors()).contains(sparse(vec))

    @classmethod
    def from_sparse(cls, ambient_dim: int, vectors: Iterable[SparseVec]) -> "SubspaceBasis":
        return cls(ambient_dim, tuple(dense(v, ambient_dim) for v in vectors))

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence]) -> "SubspaceBasis":
        """Canonical (reduced echelon) basis of the span of arbitrary vectors."""
        ech = echelon_of(sparse(v) for v in vectors)
        return cls.from_sparse(ambient_dim, ech.rows())

    @classmethod
    def standard(cls, ambient_dim: int, indices: Iterable[int]) -> "SubspaceBasis":
        return cls.from_sparse(ambient_dim, ({i: ONE} for i in indices))


def kernel_sparse(m: Matrix) -> List[SparseVec]:
    rows, piv = rref(m)
    pivset = set(piv)
    # column -> [(pivot col, entry)] for the nonpivot part of the RREF
    by_col: Dict[int, List[Tuple[int, Fraction]]] = {}
    for p, row in zip(piv, rows):
        for j, x in row.items():
            if j != p:
                by_col.setdefault(j, []).append((p, x))
    out = []
    for f in range(m.cols):
        if f in pivset:
            continue
        v: SparseVec = {f: ONE}
        for p, x in by_col.get(f, ()):
            v[p] = -x
        out.append(normalize_leading(v))
    return out


def kernel_basis(m: Matrix) -> SubspaceBasis:
    """Basis of ``{v : m v = 0}``, one vector per free column of the RREF."""
    return SubspaceBasis.from_sparse(m.cols, kernel_sparse(m))


def image_sparse(m: Matrix) -> List[SparseVec]:
    return echelon_of(m.transpose().sparse_rows()).rows()


def image_basis(m: Matrix) -> SubspaceBasis:
    """Reduced echelon basis of the column space of ``m``."""
    return SubspaceBasis.from_sparse(m.rows, image_sparse(m))


def quotient_sparse(big: Sequence[SparseVec], small: Sequence[SparseVec],
                    check: bool = True) -> List[SparseVec]:
    if check:
        big_ech = echelon_of(big)
        if not all(big_ech.contains(v) for v in small):
            raise LinalgError("small subspace is not contained in big subspace")
    small_ech = echelon_of(small)
    reps = Echelon()
    for v in big:
        r = small_ech.reduce(v)
        if r:
            reps.add(r)
    return reps.rows()


def quotient_representatives(big: SubspaceBasis, small: SubspaceBasis) -> SubspaceBasis:
    """Complement of ``small`` inside ``big``.

    The representatives are reduced against ``small`` (zero in its pivot
    columns) and then put in reduced echelon form, so they only depend on the
    two subspaces.
    """
    if big.ambient_dim != small.ambient_dim:
        raise LinalgError("ambient dimensions differ")
    reps = quotient_sparse(big.sparse_vectors(), small.sparse_vectors())
    return SubspaceBasis.from_sparse(big.ambient_dim, reps)


def solve(m: Matrix, rhs: Sequence) -> Optional[Tuple[Fraction, ...]]:
    """One solution of ``m x = rhs`` (free variables set to 0), or None."""
    if len(rhs) != m.rows:
        raise LinalgError("right-hand side length differs from row count")
    aug = [dict(r) for r in m.sparse_rows()]
    for i, b in enumerate(rhs):
        if b:
            aug[i][m.cols] = as_scalar(b)
    ech = echelon_of(aug)
    if m.cols in ech.pivots:
        return None
    x = [ZERO] * m.cols
    for p, row in ech.pivots.items():
        x[p] = row.get(m.cols, ZERO)
    return tuple(x)


def determinant(m: Matrix) -> Fraction:
    if m.rows != m.cols:
        raise LinalgError("determinant of a non-square matrix")
    a = m.to_dense()
    n = m.rows
    det = ONE
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return ZERO
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        inv = ONE / a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] * inv
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return det


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise LinalgError("inverse of a non-square matrix")
    n = m.rows
    aug = [dict(r) for r in m.sparse_rows()]
    for i in range(n):
        aug[i][n + i] = ONE
    ech = echelon_of(aug)
    if any(p not in ech.pivots for p in range(n)):
        raise LinalgError("matrix is singular")
    data = [{j - n: x for j, x in ech.pivots[i].items() if j >= n} for i in range(n)]
    return Matrix(n, n, data)
