"""Finite-dimensional Lie algebras given by structure constants.

Basis elements are labelled ``e_1 .. e_n`` as in the literature, so every
structure-constant key ``(i, j, k)`` is 1-based.  Coordinate vectors are plain
Python sequences where position ``i - 1`` holds the ``e_i`` coefficient.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .exact_linalg import (
    ONE,
    ZERO,
    Echelon,
    LinalgError,
    Matrix,
    SparseVec,
    SubspaceBasis,
    as_scalar,
    axpy,
    dense,
    determinant,
    inverse,
    kernel_sparse,
    sparse,
)


class NotALieAlgebra(ValueError):
    """Raised when an operation needs the Jacobi identity and it fails."""


class LieAlgebra:
    """Structure constants ``[e_i, e_j] = sum_k c_ij^k e_k``.

    ``constants`` maps 1-based ``(i, j, k)`` to a scalar.  Keys with ``i > j``
    are folded in by antisymmetry; ``i == j`` must carry zero.  The value is
    unvalidated until :func:`jacobi_defects` (or :meth:`validate`) has run.
    """

    def __init__(self, n: int, constants: Optional[Mapping[Tuple[int, int, int], object]] = None,
                 name: Optional[str] = None):
        if n < 1:
            raise ValueError(f"dimension must be positive, got {n}")
        self.n = n
        self.name = name
        self._br: Dict[Tuple[int, int], SparseVec] = {}
        self._validated: Optional[bool] = None
        for (i, j, k), c in (constants or {}).items():
            c = as_scalar(c)
            if not (1 <= i <= n and 1 <= j <= n and 1 <= k <= n):
                raise ValueError(f"structure constant index {(i, j, k)} outside 1..{n}")
            if not c:
                continue
            if i == j:
                raise ValueError(f"[e_{i}, e_{i}] must vanish")
            if i > j:
                i, j, c = j, i, -c
            slot = self._br.setdefault((i - 1, j - 1), {})
            v = slot.get(k - 1, ZERO) + c
            if v:
                slot[k - 1] = v
            else:
                slot.pop(k - 1)
        self._br = {key: v for key, v in self._br.items() if v}

    @classmethod
    def from_brackets(cls, n: int, brackets: Mapping[Tuple[int, int], SparseVec],
                      name: Optional[str] = None) -> "LieAlgebra":
        """Build from 0-based ``(i, j) -> sparse vector`` with ``i < j``."""
        g = cls(n, name=name)
        g._br = {key: dict(v) for key, v in brackets.items() if v}
        return g

    # -- basic access ------------------------------------------------------

    def bracket_basis(self, i: int, j: int) -> SparseVec:
        """``[e_{i+1}, e_{j+1}]`` for 0-based ``i, j`` as a sparse vector."""
        if i < j:
            return self._br.get((i, j), {})
        if i > j:
            v = self._br.get((j, i))
            return {k: -x for k, x in v.items()} if v else {}
        return {}

    def nonzero_brackets(self) -> Dict[Tuple[int, int], SparseVec]:
        return self._br

    def structure_constants(self) -> Dict[Tuple[int, int, int], Fraction]:
        return {(i + 1, j + 1, k + 1): x
                for (i, j), v in sorted(self._br.items()) for k, x in sorted(v.items())}

    def bracket_sparse(self, x: SparseVec, y: SparseVec) -> SparseVec:
        out: SparseVec = {}
        for i, a in x.items():
            for j, b in y.items():
                if i != j:
                    axpy(out, a * b, self.bracket_basis(i, j))
        return out

    def ad_matrix(self, x: Sequence) -> Matrix:
        xs = sparse(x)
        cols = [dense(self.bracket_sparse(xs, {j: ONE}), self.n) for j in range(self.n)]
        return Matrix.from_columns(cols, self.n)

    # -- validation --------------------------------------------------------

    @property
    def validated(self) -> bool:
        return bool(self._validated)

    def validate(self) -> "LieAlgebra":
        if self._validated is None:
            self._validated = not jacobi_defects(self)
        if not self._validated:
            raise NotALieAlgebra(f"{self.label()} violates the Jacobi identity")
        return self

    def label(self) -> str:
        return self.name or f"{self.n}-dimensional algebra"

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.n == other.n and self._br == other._br

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.structure_constants().items()))))

    def __repr__(self) -> str:
        return f"LieAlgebra(n={self.n}, brackets={len(self._br)}{', ' + self.name if self.name else ''})"


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra(n, name=f"abelian({n})")


def _check_vec(g: LieAlgebra, v: Sequence) -> SparseVec:
    if len(v) != g.n:
        raise ValueError(f"vector of length {len(v)} for a {g.n}-dimensional algebra")
    return sparse(v)


def bracket(g: LieAlgebra, x: Sequence, y: Sequence) -> Tuple[Fraction, ...]:
    """Bilinear extension of the structure constants to coordinate vectors."""
    return dense(g.bracket_sparse(_check_vec(g, x), _check_vec(g, y)), g.n)


def jacobi_defects(g: LieAlgebra) -> List[Tuple[int, int, int, Tuple[Fraction, ...]]]:
    """Nonzero values of the Jacobi expression on basis triples ``i < j < k``.

    Also records the outcome on ``g`` so later calls to ``g.validate()`` are free.
    """
    n = g.n
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            bij = g.bracket_basis(i, j)
            for k in range(j + 1, n):
                d: SparseVec = {}
                for m, a in bij.items():
                    axpy(d, a, g.bracket_basis(m, k))
                for m, a in g.bracket_basis(j, k).items():
                    axpy(d, a, g.bracket_basis(m, i))
                for m, a in g.bracket_basis(k, i).items():
                    axpy(d, a, g.bracket_basis(m, j))
                if d:
                    out.append((i + 1, j + 1, k + 1, dense(d, n)))
    g._validated = not out
    return out


def require_lie(g: LieAlgebra) -> LieAlgebra:
    return g.validate()


# -- series, center, type ----------------------------------------------------

def _bracket_span(g: LieAlgebra, left: Iterable[SparseVec], right: Iterable[SparseVec]) -> List[SparseVec]:
    right = list(right)
    ech = Echelon()
    for x in left:
        for y in right:
            v = g.bracket_sparse(x, y)
            if v:
                ech.add(v)
    return ech.rows()


def _basis_sparse(n: int) -> List[SparseVec]:
    return [{i: ONE} for i in range(n)]


def lower_central_series_sparse(g: LieAlgebra) -> List[List[SparseVec]]:
    full = _basis_sparse(g.n)
    series = [full]
    while series[-1]:
        nxt = _bracket_span(g, series[-1], full)
        if len(nxt) == len(series[-1]):
            break
        series.append(nxt)
    return series


def lower_central_series(g: LieAlgebra) -> List[SubspaceBasis]:
    """``g^0 = g``, ``g^k = [g^(k-1), g]`` until the terms stop shrinking."""
    return [SubspaceBasis.from_sparse(g.n, s) for s in lower_central_series_sparse(g)]


def derived_subalgebra_sparse(g: LieAlgebra, space: Sequence[SparseVec]) -> List[SparseVec]:
    return _bracket_span(g, space, space)


def center_sparse(g: LieAlgebra) -> List[SparseVec]:
    n = g.n
    # row (j, k): coefficient of e_k in [z, e_j], as a linear form in z
    rows: List[SparseVec] = []
    for j in range(n):
        block: Dict[int, SparseVec] = {}
        for i in range(n):
            for k, x in g.bracket_basis(i, j).items():
                block.setdefault(k, {})[i] = x
        rows.extend(block.values())
    return kernel_sparse(Matrix(len(rows), n, rows))


def center(g: LieAlgebra) -> SubspaceBasis:
    return SubspaceBasis.from_sparse(g.n, center_sparse(g))


def nilpotent_type(g: LieAlgebra) -> List[int]:
    """``dim g^(i-1)/g^i`` along the lower central series."""
    dims = [len(s) for s in lower_central_series_sparse(g)]
    return [a - b for a, b in zip(dims, dims[1:])]


def nilindex(g: LieAlgebra) -> Optional[int]:
    series = lower_central_series_sparse(g)
    if series[-1]:
        return None
    return len(series) - 1


def is_nilpotent(g: LieAlgebra) -> bool:
    return nilindex(g) is not None


def is_filiform(g: LieAlgebra) -> bool:
    return g.n >= 3 and nilindex(g) == g.n - 1


# -- basis change ------------------------------------------------------------

def change_basis(g: LieAlgebra, P: Matrix) -> LieAlgebra:
    """Structure constants in the basis ``f_j = sum_i P[i, j] e_i``."""
    n = g.n
    if P.rows != n or P.cols != n:
        raise ValueError(f"transition matrix must be {n}x{n}")
    try:
        Pinv = inverse(P)
    except LinalgError as exc:
        raise ValueError("transition matrix is singular") from exc
    cols = [{i: P[i, j] for i in range(n) if P[i, j]} for j in range(n)]
    out: Dict[Tuple[int, int], SparseVec] = {}
    for a in range(n):
        for b in range(a + 1, n):
            w = g.bracket_sparse(cols[a], cols[b])
            if w:
                v = Pinv.apply_sparse(w)
                if v:
                    out[(a, b)] = v
    h = LieAlgebra.from_brackets(n, out, name=g.name)
    h._validated = g._validated
    return h


# -- derivations -------------------------------------------------------------

def derivation_system(g: LieAlgebra) -> Matrix:
    """Linear conditions on ``D`` (variable ``c*n + r`` is ``D[r, c]``)."""
    n = g.n
    rows: List[SparseVec] = []
    for i in range(n):
        for j in range(i + 1, n):
            eqs: Dict[int, SparseVec] = {}

            def add(k, var, x):
                row = eqs.setdefault(k, {})
                v = row.get(var, ZERO) + x
                if v:
                    row[var] = v
                else:
                    row.pop(var, None)

            # D[e_i, e_j]
            for m, c in g.bracket_basis(i, j).items():
                for k in range(n):
                    add(k, m * n + k, c)
            # -[D e_i, e_j] - [e_i, D e_j]
            for r in range(n):
                for k, c in g.bracket_basis(r, j).items():
                    add(k, i * n + r, -c)
                for k, c in g.bracket_basis(i, r).items():
                    add(k, j * n + r, -c)
            rows.extend(v for v in eqs.values() if v)
    return Matrix(len(rows), n * n, rows)


def _var_matrix(vec: SparseVec, n: int) -> Matrix:
    data: List[SparseVec] = [{} for _ in range(n)]
    for var, x in vec.items():
        c, r = divmod(var, n)
        data[r][c] = x
    return Matrix(n, n, data)


def derivation_basis(g: LieAlgebra) -> List[Matrix]:
    """Basis of Der(g) as ``n x n`` matrices acting on coordinate columns."""
    require_lie(g)
    return [_var_matrix(v, g.n) for v in kernel_sparse(derivation_system(g))]


def is_derivation(g: LieAlgebra, D: Matrix) -> bool:
    n = g.n
    cols = [{r: D[r, c] for r in range(n) if D[r, c]} for c in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            lhs = D.apply_sparse(g.bracket_basis(i, j))
            rhs = g.bracket_sparse(cols[i], {j: ONE})
            axpy(rhs, ONE, g.bracket_sparse({i: ONE}, cols[j]))
            if lhs != rhs:
                return False
    return True


def random_rational(rng: random.Random, bound: int = 10) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def find_nonsingular_derivation(g: LieAlgebra, trials: int = 50, seed: int = 0) -> Optional[Matrix]:
    """Random search for an invertible derivation.

    ``None`` means nothing was found in ``trials`` attempts; it does not prove
    that g is characteristically nilpotent.
    """
    basis = derivation_basis(g)
    if not basis:
        return None
    n = g.n
    rng = random.Random(seed)
    for _ in range(trials):
        acc: List[SparseVec] = [{} for _ in range(n)]
        for D in basis:
            a = random_rational(rng)
            for r in range(n):
                axpy(acc[r], a, D.row(r))
        M = Matrix(n, n, acc)
        if determinant(M):
            return M
    return None
