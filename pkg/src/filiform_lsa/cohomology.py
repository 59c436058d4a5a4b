"""Chevalley-Eilenberg cochain complex with trivial or adjoint coefficients.

A p-cochain is stored by its values on increasing basis tuples.  The tuples of
a fixed degree are ordered colexicographically (``(1,2) < (1,3) < (2,3) <
(1,4) < ...``); this is the coordinate order of every coboundary matrix.  For
adjoint coefficients the coordinate of ``(T, e_m)`` is ``colex(T) * n + m``.

Tuples in the public API are 1-based, matching ``e_1 .. e_n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, List, Mapping, Sequence, Tuple, Union

from .exact_linalg import (
    ZERO,
    Matrix,
    SparseVec,
    as_scalar,
    dense,
    echelon_of,
    image_sparse,
    kernel_sparse,
    quotient_sparse,
    rank,
)
from .lie_core import LieAlgebra, center_sparse, require_lie

TRIVIAL = "trivial"
ADJOINT = "adjoint"
MODULES = (TRIVIAL, ADJOINT)

Value = Union[Fraction, Tuple[Fraction, ...]]


def _check_module(module: str) -> str:
    if module not in MODULES:
        raise ValueError(f"coefficient module must be one of {MODULES}, got {module!r}")
    return module


# -- colex indexing ------------------------------------------------------------

def colex_rank(t: Sequence[int]) -> int:
    """Position of a 0-based increasing tuple among tuples of the same size."""
    return sum(comb(x, i + 1) for i, x in enumerate(t))


def colex_tuples(n: int, p: int) -> List[Tuple[int, ...]]:
    """All 0-based increasing p-tuples of ``range(n)`` in colex order."""
    return sorted(combinations(range(n), p), key=lambda t: t[::-1])


def cochain_dim(n: int, p: int, module: str) -> int:
    if p < 0 or p > n:
        return 0
    return comb(n, p) * (n if _check_module(module) == ADJOINT else 1)


# -- cochains ----------------------------------------------------------------

@dataclass
class Cochain:
    """Alternating p-linear map on an n-dimensional algebra.

    ``values`` maps 1-based increasing tuples to a scalar (trivial module) or
    to a coordinate tuple of length n (adjoint module).  Missing keys are zero.
    """

    n: int
    p: int
    module: str = TRIVIAL
    values: Dict[Tuple[int, ...], Value] = field(default_factory=dict)

    def __post_init__(self):
        _check_module(self.module)
        if not 0 <= self.p <= self.n:
            raise ValueError(f"degree {self.p} outside 0..{self.n}")
        clean: Dict[Tuple[int, ...], Value] = {}
        for key, val in self.values.items():
            key = tuple(key)
            if len(key) != self.p or list(key) != sorted(set(key)) or not all(1 <= i <= self.n for i in key):
                raise ValueError(f"cochain key {key} is not an increasing {self.p}-tuple in 1..{self.n}")
            if self.module == TRIVIAL:
                val = as_scalar(val)
                if val:
                    clean[key] = val
            else:
                val = tuple(as_scalar(x) for x in val)
                if len(val) != self.n:
                    raise ValueError("adjoint cochain values must have length n")
                if any(val):
                    clean[key] = val
        self.values = clean

    def to_vector(self) -> SparseVec:
        out: SparseVec = {}
        for key, val in self.values.items():
            r = colex_rank([i - 1 for i in key])
            if self.module == TRIVIAL:
                out[r] = val
            else:
                for m, x in enumerate(val):
                    if x:
                        out[r * self.n + m] = x
        return out

    @classmethod
    def from_vector(cls, n: int, p: int, module: str, vec: Mapping[int, Fraction]) -> "Cochain":
        tuples = colex_tuples(n, p)
        values: Dict[Tuple[int, ...], Value] = {}
        if module == TRIVIAL:
            for r, x in vec.items():
                if x:
                    values[tuple(i + 1 for i in tuples[r])] = x
        else:
            acc: Dict[int, SparseVec] = {}
            for idx, x in vec.items():
                if x:
                    r, m = divmod(idx, n)
                    acc.setdefault(r, {})[m] = x
            for r, v in acc.items():
                values[tuple(i + 1 for i in tuples[r])] = dense(v, n)
        return cls(n, p, module, values)

    def __call__(self, *indices: int) -> Value:
        """Value on ``e_{i1} ^ ... ^ e_{ip}`` with alternation applied."""
        if len(indices) != self.p:
            raise ValueError(f"expected {self.p} indices")
        zero: Value = ZERO if self.module == TRIVIAL else (ZERO,) * self.n
        if len(set(indices)) < len(indices):
            return zero
        order = sorted(range(len(indices)), key=lambda a: indices[a])
        sign = _perm_sign(order)
        val = self.values.get(tuple(indices[a] for a in order))
        if val is None:
            return zero
        if self.module == TRIVIAL:
            return val * sign
        return tuple(x * sign for x in val)

    def is_zero(self) -> bool:
        return not self.values

    def __add__(self, other: "Cochain") -> "Cochain":
        self._compat(other)
        v = self.to_vector()
        for k, x in other.to_vector().items():
            v[k] = v.get(k, ZERO) + x
        return Cochain.from_vector(self.n, self.p, self.module, {k: x for k, x in v.items() if x})

    def scale(self, a) -> "Cochain":
        a = as_scalar(a)
        return Cochain.from_vector(self.n, self.p, self.module, {k: a * x for k, x in self.to_vector().items()})

    def _compat(self, other: "Cochain") -> None:
        if (self.n, self.p, self.module) != (other.n, other.p, other.module):
            raise ValueError("incompatible cochains")


def _perm_sign(order: Sequence[int]) -> int:
    sign = 1
    seen = list(order)
    for i in range(len(seen)):
        for j in range(i + 1, len(seen)):
            if seen[i] > seen[j]:
                sign = -sign
    return sign


# -- coboundary ----------------------------------------------------------------

def _cache(g: LieAlgebra) -> dict:
    c = getattr(g, "_cohom_cache", None)
    if c is None:
        c = {}
        g._cohom_cache = c
    return c


def coboundary_matrix(g: LieAlgebra, p: int, module: str = TRIVIAL) -> Matrix:
    """Matrix of ``d_p : C^p(g, M) -> C^(p+1)(g, M)``.

    ``(d w)(x_1..x_{p+1}) = sum_{r<s} (-1)^(r+s) w([x_r, x_s], x_1..^r..^s..)
    + sum_t (-1)^(t+1) x_t . w(x_1..^t..)``
    """
    _check_module(module)
    n = g.n
    if not 0 <= p <= n:
        raise ValueError(f"degree {p} outside 0..{n}")
    require_lie(g)
    key = ("d", p, module)
    cache = _cache(g)
    if key in cache:
        return cache[key]

    adj = module == ADJOINT
    width = n if adj else 1
    ncols = comb(n, p) * width
    if p == n:
        m = Matrix(0, ncols)
        cache[key] = m
        return m
    nrows = comb(n, p + 1) * width
    rows: List[SparseVec] = [{} for _ in range(nrows)]

    def add(row: SparseVec, col: int, x: Fraction) -> None:
        v = row.get(col, ZERO) + x
        if v:
            row[col] = v
        else:
            row.pop(col, None)

    for S in combinations(range(n), p + 1):
        base = colex_rank(S)
        for r in range(p + 1):
            for s in range(r + 1, p + 1):
                br = g.bracket_basis(S[r], S[s])
                if not br:
                    continue
                rest = S[:r] + S[r + 1:s] + S[s + 1:]
                sign0 = -1 if (r + s) % 2 else 1
                for k, c in br.items():
                    if k in rest:
                        continue
                    pos = sum(1 for x in rest if x < k)
                    T = rest[:pos] + (k,) + rest[pos:]
                    coef = c if (sign0 * (-1 if pos % 2 else 1)) > 0 else -c
                    tcol = colex_rank(T)
                    if adj:
                        for m in range(n):
                            add(rows[base * n + m], tcol * n + m, coef)
                    else:
                        add(rows[base], tcol, coef)
        if adj:
            for t in range(p + 1):
                rest = S[:t] + S[t + 1:]
                tcol = colex_rank(rest)
                sgn = -1 if t % 2 else 1
                x_t = S[t]
                for m in range(n):
                    for q, c in g.bracket_basis(x_t, m).items():
                        add(rows[base * n + q], tcol * n + m, c if sgn > 0 else -c)

    mat = Matrix(nrows, ncols, rows)
    cache[key] = mat
    return mat


def apply_coboundary(g: LieAlgebra, c: Cochain) -> Cochain:
    d = coboundary_matrix(g, c.p, c.module)
    return Cochain.from_vector(g.n, c.p + 1, c.module, d.apply_sparse(c.to_vector()))


# -- cohomology ----------------------------------------------------------------

@dataclass
class CohomologyReport:
    p: int
    module: str
    betti: int
    cocycle_dim: int
    coboundary_dim: int
    representatives: List[Cochain]


def cocycles_sparse(g: LieAlgebra, p: int, module: str = TRIVIAL) -> List[SparseVec]:
    key = ("Z", p, module)
    cache = _cache(g)
    if key not in cache:
        cache[key] = kernel_sparse(coboundary_matrix(g, p, module))
    return cache[key]


def coboundaries_sparse(g: LieAlgebra, p: int, module: str = TRIVIAL) -> List[SparseVec]:
    if p <= 0:
        return []
    key = ("B", p, module)
    cache = _cache(g)
    if key not in cache:
        cache[key] = image_sparse(coboundary_matrix(g, p - 1, module))
    return cache[key]


def cohomology(g: LieAlgebra, p: int, module: str = TRIVIAL) -> CohomologyReport:
    """``H^p(g, M) = ker d_p / im d_(p-1)`` with normalized representatives."""
    _check_module(module)
    if not 0 <= p <= g.n:
        raise ValueError(f"degree {p} outside 0..{g.n}")
    Z = cocycles_sparse(g, p, module)
    B = coboundaries_sparse(g, p, module)
    reps = quotient_sparse(Z, B, check=False)
    return CohomologyReport(
        p=p,
        module=module,
        betti=len(Z) - len(B),
        cocycle_dim=len(Z),
        coboundary_dim=len(B),
        representatives=[Cochain.from_vector(g.n, p, module, v) for v in reps],
    )


def betti_numbers(g: LieAlgebra) -> List[int]:
    """``(b_0, ..., b_n)`` with trivial coefficients, from ranks of all d_p."""
    n = g.n
    ranks = [rank(coboundary_matrix(g, p, TRIVIAL)) for p in range(n + 1)]
    return [comb(n, p) - ranks[p] - (ranks[p - 1] if p else 0) for p in range(n + 1)]


def b2(g: LieAlgebra) -> int:
    return cohomology(g, 2).betti


def is_cocycle(g: LieAlgebra, c: Cochain) -> bool:
    if c.n != g.n:
        raise ValueError("cochain and algebra dimensions differ")
    if c.p == g.n:
        return True
    return not coboundary_matrix(g, c.p, c.module).apply_sparse(c.to_vector())


def is_coboundary(g: LieAlgebra, c: Cochain) -> bool:
    if c.n != g.n:
        raise ValueError("cochain and algebra dimensions differ")
    vec = c.to_vector()
    if c.p == 0:
        return not vec
    return echelon_of(coboundaries_sparse(g, c.p, c.module)).contains(vec)


def class_is_zero(g: LieAlgebra, c: Cochain) -> bool:
    return is_coboundary(g, c)


# -- the omega_l cochains --------------------------------------------------------

def omega_cochain(n: int, l: int) -> Cochain:
    """``w_l(e_k ^ e_(2l+3-k)) = (-1)^k`` for ``2 <= k <= (2l+3)//2``."""
    if not 1 <= l <= (n - 1) // 2:
        raise ValueError(f"omega index {l} outside 1..{(n - 1) // 2} for n={n}")
    values = {}
    for k in range(2, (2 * l + 3) // 2 + 1):
        values[(k, 2 * l + 3 - k)] = Fraction((-1) ** k)
    return Cochain(n, 2, TRIVIAL, values)


# -- conjectures ---------------------------------------------------------------

@dataclass
class ConjectureCheck:
    betti: List[int]
    center_dim: int
    b2_conjecture: bool
    toral_rank: bool


def conjecture_checks(g: LieAlgebra) -> ConjectureCheck:
    """The b2 bound ``b2 > b1^2 / 4`` and the toral rank bound ``sum b_p >= 2^dim z``."""
    bs = betti_numbers(g)
    zdim = len(center_sparse(g))
    b1 = bs[1] if len(bs) > 1 else 0
    b2_ = bs[2] if len(bs) > 2 else 0
    return ConjectureCheck(
        betti=bs,
        center_dim=zdim,
        b2_conjecture=Fraction(b2_) > Fraction(b1 * b1, 4),
        toral_rank=sum(bs) >= 2 ** zdim,
    )
