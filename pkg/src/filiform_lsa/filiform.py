"""Filiform Lie algebras in adapted bases.

An adapted basis ``e_1 .. e_n`` has ``[e_1, e_i] = e_(i+1)`` and the remaining
brackets are a deformation of the standard graded algebra ``L(n)`` by the
cocycles ``psi_(k,s)``, weighted by parameters ``alpha_(k,s)`` indexed by the
set ``I_n``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .cohomology import ADJOINT, Cochain
from .exact_linalg import (
    ONE,
    ZERO,
    Echelon,
    Matrix,
    SparseVec,
    as_scalar,
    axpy,
    dense,
    echelon_of,
    kernel_sparse,
)
from .lie_core import (
    LieAlgebra,
    change_basis,
    derived_subalgebra_sparse,
    jacobi_defects,
    lower_central_series_sparse,
    random_rational,
    require_lie,
)
from .poly import Poly, roots_upto_quadratic

IndexPair = Tuple[int, int]


class FiliformError(ValueError):
    pass


def index_set(n: int) -> List[IndexPair]:
    """Pairs ``(k, s)`` with ``2 <= k <= n//2``, ``2k+1 <= s <= n``, plus ``(n/2, n)`` for even n."""
    if n < 3:
        raise FiliformError(f"filiform algebras need n >= 3, got {n}")
    pairs = [(k, s) for k in range(2, n // 2 + 1) for s in range(2 * k + 1, n + 1)]
    if n % 2 == 0:
        pairs.append((n // 2, n))
    return sorted(pairs)


def index_count(n: int) -> int:
    """Closed-form size of ``I_n``."""
    if n % 2:
        return (n - 3) ** 2 // 4
    return (n * n - 6 * n + 12) // 4


@dataclass(frozen=True)
class FiliformParams:
    """Dimension plus the adapted-basis coordinates ``alpha_(k,s)``; absent keys are zero."""

    n: int
    alpha: Mapping[IndexPair, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        allowed = set(index_set(self.n))
        clean = {}
        for key, val in dict(self.alpha).items():
            key = tuple(key)
            if key not in allowed:
                raise FiliformError(f"alpha_{key} is not in I_{self.n}")
            val = as_scalar(val)
            if val:
                clean[key] = val
        object.__setattr__(self, "alpha", dict(sorted(clean.items())))

    def __getitem__(self, key: IndexPair) -> Fraction:
        return self.alpha.get(tuple(key), ZERO)

    def a(self, k: int, s: int) -> Fraction:
        return self.alpha.get((k, s), ZERO)

    def with_values(self, **updates) -> "FiliformParams":
        new = dict(self.alpha)
        new.update(updates)
        return FiliformParams(self.n, new)

    def __hash__(self):
        return hash((self.n, tuple(self.alpha.items())))

    def __str__(self) -> str:
        body = ", ".join(f"a{k},{s}={v}" for (k, s), v in self.alpha.items())
        return f"n={self.n}" + (f": {body}" if body else " (standard graded)")


def ad_e1_power(n: int, m: int, s: int) -> Optional[int]:
    """Index of ``(ad e_1)^m e_s`` (a basis vector, for s >= 2), or None if it vanishes."""
    t = s + m
    return t if t <= n else None


def psi_value(n: int, k: int, s: int, i: int, j: int) -> SparseVec:
    """``psi_(k,s)(e_i ^ e_j)`` for ``i < j`` as a 0-based sparse vector."""
    if not (2 <= i <= k < j <= n):
        return {}
    top = j - k - 1
    low = k - i
    if low > top:
        return {}
    coef = comb(top, low) * (-1) ** low
    t = ad_e1_power(n, top - low, s)
    if t is None or not coef:
        return {}
    return {t - 1: Fraction(coef)}


def psi_cochain(n: int, k: int, s: int) -> Cochain:
    """The adjoint 2-cochain ``psi_(k,s)`` on ``L(n)``."""
    if (k, s) not in set(index_set(n)):
        raise FiliformError(f"({k}, {s}) is not in I_{n}")
    values = {}
    for i in range(2, n + 1):
        for j in range(i + 1, n + 1):
            v = psi_value(n, k, s, i, j)
            if v:
                out = [ZERO] * n
                for t, x in v.items():
                    out[t] = x
                values[(i, j)] = tuple(out)
    return Cochain(n, 2, ADJOINT, values)


def standard_graded(n: int) -> LieAlgebra:
    """``L(n)``: ``[e_1, e_i] = e_(i+1)`` for ``2 <= i <= n-1``."""
    if n < 3:
        raise FiliformError(f"L(n) needs n >= 3, got {n}")
    return LieAlgebra(n, {(1, i, i + 1): 1 for i in range(2, n)}, name=f"L({n})")


def build_algebra(p: FiliformParams) -> LieAlgebra:
    """Brackets of the adapted-basis law with parameters ``p``.

    ``[e_i, e_j] = sum_r sum_l (-1)^l C(j-i-l-1, l) alpha_(i+l, r-j+i+2l+1) e_r``
    for ``2 <= i < j``; the result is not validated.
    """
    n = p.n
    br: Dict[Tuple[int, int], SparseVec] = {}
    for i in range(2, n):
        br[(0, i - 1)] = {i: ONE}
    for i in range(2, n + 1):
        for j in range(i + 1, n + 1):
            v: SparseVec = {}
            for r in range(1, n + 1):
                acc = ZERO
                for l in range((j - i - 1) // 2 + 1):
                    a = p.a(i + l, r - j + i + 2 * l + 1)
                    if a:
                        acc += (-1) ** l * comb(j - i - l - 1, l) * a
                if acc:
                    v[r - 1] = acc
            if v:
                br[(i - 1, j - 1)] = v
    return LieAlgebra.from_brackets(n, br, name=_name(p))


def build_algebra_psi(p: FiliformParams) -> LieAlgebra:
    """Same law assembled as ``[ , ]_L + sum alpha_(k,s) psi_(k,s)``."""
    n = p.n
    br: Dict[Tuple[int, int], SparseVec] = {}
    for i in range(2, n):
        br[(0, i - 1)] = {i: ONE}
    for (k, s), a in p.alpha.items():
        for i in range(2, n + 1):
            for j in range(i + 1, n + 1):
                v = psi_value(n, k, s, i, j)
                if v:
                    axpy(br.setdefault((i - 1, j - 1), {}), a, v)
    return LieAlgebra.from_brackets(n, {key: v for key, v in br.items() if v}, name=_name(p))


def _name(p: FiliformParams) -> str:
    if not p.alpha:
        return f"L({p.n})"
    return f"filiform({p})"


# -- the class table for 3 <= n <= 11 --------------------------------------------

@dataclass(frozen=True)
class ClassLabel:
    """``family`` is "A" (table classes), "A1"/"A2" (n >= 12) or "unclassified"."""

    n: int
    family: str = "A"
    index: Optional[int] = None

    def __str__(self) -> str:
        if self.family == "A":
            return f"A_{self.n}" if self.index is None else f"A_{{{self.n},{self.index}}}"
        if self.family in ("A1", "A2"):
            return f"{self.family}_{self.n}"
        return "unclassified"

    @classmethod
    def parse(cls, text: str) -> "ClassLabel":
        import re

        t = text.strip().replace(" ", "")
        m = re.fullmatch(r"A_?\{?(\d+)(?:,(\d+))?\}?", t)
        if m:
            n = int(m.group(1))
            return cls(n, "A", int(m.group(2)) if m.group(2) else None)
        m = re.fullmatch(r"(A1|A2)_?\{?(\d+)\}?", t)
        if m:
            return cls(int(m.group(2)), m.group(1))
        raise FiliformError(f"unrecognised class label {text!r}")



# Each condition is a product of polynomial factors in the alpha_(k,s) that must
# vanish or must not.  A "vanishing" product with several factors gives the
# witness search a choice of which factor to kill.

@dataclass(frozen=True)
class Condition:
    factors: Tuple[Poly, ...]
    vanishes: bool

    def value(self, p: "FiliformParams"):
        out = ONE
        for f in self.factors:
            out = out * f.evaluate(p.alpha)
        return out

    def holds(self, p: "FiliformParams") -> bool:
        return (self.value(p) == 0) == self.vanishes

    def __str__(self) -> str:
        body = " * ".join(f"({f})" for f in self.factors)
        return f"{body} {'=' if self.vanishes else '!='} 0"


def _a(k: int, s: int) -> Poly:
    return Poly.var((k, s))


def _eq(*fs: Poly) -> Condition:
    return Condition(tuple(fs), True)


def _ne(*fs: Poly) -> Condition:
    return Condition(tuple(fs), False)


@dataclass(frozen=True)
class DerivedQuantities:
    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    delta: Fraction


def _alpha_poly() -> Poly:
    return 3 * _a(4, 10) * (_a(2, 6) + _a(3, 8)) - 4 * _a(3, 8) ** 2


def _beta_factors() -> Tuple[Poly, Poly]:
    a25, a37 = _a(2, 5), _a(3, 7)
    return (2 * a25 ** 2 - 5 * a37 ** 2, 4 * a25 ** 2 - 4 * a25 * a37 + 3 * a37 ** 2)


def _gamma_poly() -> Poly:
    return 22 * _a(3, 8) ** 2 - 3 * _a(2, 6) * _a(3, 8) - 9 * _a(2, 6) ** 2


def _delta_poly() -> Poly:
    return (_a(5, 11) * (4 * _a(3, 10) + 5 * _a(2, 8))
            - 3 * _a(4, 11) * (_a(2, 6) + _a(3, 8))
            + 2 * _a(2, 7) * (3 * _a(2, 6) - 11 * _a(3, 8)))


def derived_quantities(p: FiliformParams) -> DerivedQuantities:
    """The auxiliary quantities of the n = 10, 11 classes (missing alphas read as 0)."""
    vals = dict(p.alpha)
    b1, b2_ = _beta_factors()
    return DerivedQuantities(
        alpha=_alpha_poly().evaluate(vals),
        beta=b1.evaluate(vals) * b2_.evaluate(vals),
        gamma=_gamma_poly().evaluate(vals),
        delta=_delta_poly().evaluate(vals),
    )


def _rules(n: int) -> List[Tuple[int, List[Condition]]]:
    a = _a
    if n == 6:
        return [(1, [_ne(a(3, 6))]), (2, [_eq(a(3, 6))])]
    s = 2 * a(2, 5) + a(3, 7)
    if n == 7:
        return [(1, [_ne(s)]), (2, [_eq(s)])]
    if n == 8:
        return [
            (1, [_ne(a(4, 8)), _eq(s)]),
            (2, [_eq(a(4, 8)), _ne(s)]),
            (3, [_eq(a(4, 8)), _eq(s), _ne(a(2, 5))]),
            (4, [_eq(a(2, 5)), _eq(a(3, 7)), _eq(a(4, 8))]),
        ]
    sq = (a(3, 7) - a(2, 5), a(3, 7) + a(2, 5))
    zero2 = [_eq(a(2, 5)), _eq(a(3, 7))]
    if n == 9:
        zero3 = zero2 + [_eq(a(4, 9))]
        t = 2 * a(2, 7) + a(3, 9)
        return [
            (1, [_ne(s), _ne(*sq)]),
            (2, [_ne(s), _eq(*sq)]),
            (3, zero2 + [_ne(a(4, 9)), _ne(a(2, 6) + a(3, 8))]),
            (4, zero2 + [_ne(a(4, 9)), _eq(a(2, 6) + a(3, 8))]),
            (5, zero3 + [_ne(t)]),
            (6, zero3 + [_eq(t)]),
        ]
    if n == 10:
        t = 2 * a(2, 7) + a(3, 9)
        f = a(2, 6) ** 2 + 2 * a(2, 7) * a(4, 9)
        alpha = _alpha_poly()
        base = [_eq(a(5, 10)), _eq(s)]
        return [
            (1, [_ne(a(5, 10)), _ne(s)]),
            (2, [_ne(a(5, 10)), _eq(s)]),
            (3, [_eq(a(5, 10)), _ne(s), _ne(*sq)]),
            (4, [_eq(a(5, 10)), _ne(s), _eq(*sq)]),
            (5, base + [_ne(a(4, 9)), _ne(f)]),
            (6, base + [_ne(a(4, 9)), _eq(f)]),
            (7, base + [_eq(a(4, 9)), _ne(t)]),
            (8, base + [_eq(a(4, 9)), _eq(t), _ne(alpha)]),
            (9, base + [_eq(a(4, 9)), _eq(t), _eq(alpha)]),
        ]
    if n == 11:
        u = 10 * a(3, 7) - a(2, 5)
        e = 4 * a(4, 10) + 2 * a(3, 8) - 3 * a(2, 6)
        top = zero2 + [_eq(a(4, 9)), _ne(a(5, 11))]
        return [
            (1, [_ne(s), _ne(u), _ne(*_beta_factors())]),
            (2, [_ne(s), _ne(u), _eq(*_beta_factors())]),
            (3, [_ne(s), _eq(u)]),
            (4, [_eq(s), _ne(a(4, 9))]),
            (5, top + [_ne(e), _ne(_alpha_poly())]),
            (6, top + [_ne(e), _eq(_alpha_poly())]),
            (7, top + [_eq(e), _ne(_gamma_poly())]),
            (8, top + [_eq(e), _eq(_gamma_poly()), _ne(_delta_poly())]),
            (9, top + [_eq(e), _eq(_gamma_poly()), _eq(_delta_poly())]),
            (10, zero2 + [_eq(a(4, 9)), _eq(a(5, 11))]),
        ]
    return []


def table_classes(n: int) -> List[ClassLabel]:
    """Class labels for dimension ``n`` (3 <= n <= 11), in table order."""
    if n < 3 or n > 11:
        raise FiliformError(f"the class table covers 3 <= n <= 11, got {n}")
    if n <= 5:
        return [ClassLabel(n)]
    return [ClassLabel(n, "A", i) for i, _ in _rules(n)]


def class_conditions(label: ClassLabel) -> List[Condition]:
    if label.family != "A" or label.n > 11:
        raise FiliformError(f"{label} is not a table class")
    if label.n <= 5:
        return []
    for i, conds in _rules(label.n):
        if i == label.index:
            return conds
    raise FiliformError(f"no class {label}")


def class_conditions_hold(label: ClassLabel, p: FiliformParams) -> bool:
    if p.n != label.n:
        return False
    return all(c.holds(p) for c in class_conditions(label))


def matching_classes(p: FiliformParams) -> List[ClassLabel]:
    """Every table class whose conditions hold, in table order."""
    return [lab for lab in table_classes(p.n) if class_conditions_hold(lab, p)]


def classify(p: FiliformParams) -> ClassLabel:
    """Table class of a Lie algebra law; the first class in table order wins."""
    if not 3 <= p.n <= 11:
        raise FiliformError(f"the class table covers 3 <= n <= 11, got {p.n}")
    require_lie(build_algebra(p))
    found = matching_classes(p)
    if not found:
        raise FiliformError(f"no class matches {p}")
    return found[0]


# -- Jacobi identity on the parameters ---------------------------------------------

def _poly_brackets(n: int) -> Dict[Tuple[int, int], Dict[int, Poly]]:
    br: Dict[Tuple[int, int], Dict[int, Poly]] = {}
    for i in range(2, n):
        br[(1, i)] = {i + 1: Poly.const(1)}
    allowed = set(index_set(n))
    for i in range(2, n + 1):
        for j in range(i + 1, n + 1):
            v: Dict[int, Poly] = {}
            for r in range(1, n + 1):
                acc = Poly()
                for l in range((j - i - 1) // 2 + 1):
                    key = (i + l, r - j + i + 2 * l + 1)
                    if key in allowed:
                        acc = acc + (-1) ** l * comb(j - i - l - 1, l) * Poly.var(key)
                if acc:
                    v[r] = acc
            if v:
                br[(i, j)] = v
    return br


@lru_cache(maxsize=None)
def jacobi_polynomials(n: int) -> Tuple[Poly, ...]:
    """A basis (over Q, as polynomials) of the Jacobi conditions on ``alpha``.

    Every entry is a quadratic form in the alphas; the law with parameters p
    is a Lie algebra iff all of them vanish at p.
    """
    br = _poly_brackets(n)

    def bracket(x: Dict[int, Poly], y: Dict[int, Poly]) -> Dict[int, Poly]:
        out: Dict[int, Poly] = {}
        for a, ca in x.items():
            for b, cb in y.items():
                if a == b:
                    continue
                sign, key = (1, (a, b)) if a < b else (-1, (b, a))
                for r, c in br.get(key, {}).items():
                    out[r] = out.get(r, Poly()) + sign * ca * cb * c
        return out

    monos: Dict[tuple, int] = {}
    ech = Echelon()
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                e = lambda t: {t: Poly.const(1)}
                total: Dict[int, Poly] = {}
                for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
                    for r, c in bracket(bracket(e(x), e(y)), e(z)).items():
                        total[r] = total.get(r, Poly()) + c
                for c in total.values():
                    if c:
                        ech.add({monos.setdefault(m, len(monos)): x for m, x in c.terms.items()})
    back = {i: m for m, i in monos.items()}
    return tuple(Poly({back[i]: x for i, x in row.items()}) for row in ech.rows())


def jacobi_residuals(p: FiliformParams) -> List[Fraction]:
    """Values of the nonzero Jacobi polynomials at ``p``."""
    out = []
    for f in jacobi_polynomials(p.n):
        v = f.evaluate(p.alpha)
        if v:
            out.append(v)
    return out


# -- structural properties for n >= 12 -------------------------------------------

@dataclass(frozen=True)
class PropertyFlags:
    a: bool
    b: bool
    c: bool
    d: bool
    # a nonzero (x, y) with [x*v1 + y*v2, g^1] inside g^4, when (a) holds
    pencil: Optional[Tuple[Fraction, Fraction]] = None


def _require_filiform(g: LieAlgebra) -> List[List[SparseVec]]:
    require_lie(g)
    series = lower_central_series_sparse(g)
    if g.n < 3 or series[-1] or len(series) - 1 != g.n - 1:
        raise FiliformError(f"{g.label} is not filiform")
    return series


def _contained(vectors: Iterable[SparseVec], space: Sequence[SparseVec]) -> bool:
    ech = echelon_of(space)
    return all(ech.contains(v) for v in vectors)


def property_flags(g: LieAlgebra) -> PropertyFlags:
    """Properties (a)-(d) of a filiform algebra, computed basis-free.

    (a) ``[g^1, g^1] ⊆ g^4`` and some ``U ⊇ g^1`` of codimension 1 has
        ``[U, g^1] ⊆ g^4``; (b) is the negation of (a); (c) ``g^((n-4)/2)`` is
        abelian (vacuous for odd n); (d) ``[g^1, g^1] ⊆ g^6``.
    """
    n = g.n
    if n < 7:
        raise FiliformError(f"properties (a)-(d) need n >= 7, got {n}")
    series = _require_filiform(g)

    def term(k: int) -> List[SparseVec]:
        return series[k] if k < len(series) else []

    g1, g4, g6 = term(1), term(4), term(6)
    g1g1 = derived_subalgebra_sparse(g, g1)
    a = False
    pencil = None
    if _contained(g1g1, g4):
        ech1 = echelon_of(g1)
        v1, v2 = [{i: ONE} for i in range(n) if ech1.add({i: ONE})][:2]
        ech4 = echelon_of(g4)
        # columns: residues of [v1, y] and [v2, y] modulo g^4, stacked over y
        rows: List[SparseVec] = []
        for idx, y in enumerate(g1):
            r1 = ech4.reduce(g.bracket_sparse(v1, y))
            r2 = ech4.reduce(g.bracket_sparse(v2, y))
            for t in set(r1) | set(r2):
                rows.append({c: x for c, x in ((0, r1.get(t, ZERO)), (1, r2.get(t, ZERO))) if x})
        ker = kernel_sparse(Matrix(len(rows), 2, rows))
        if ker:
            a = True
            pencil = (ker[0].get(0, ZERO), ker[0].get(1, ZERO))
    if n % 2:
        c = True
    else:
        h = term((n - 4) // 2)
        c = not derived_subalgebra_sparse(g, h)
    d = _contained(g1g1, g6)
    return PropertyFlags(a=a, b=not a, c=c, d=d, pencil=pencil)


def extended_class(g: LieAlgebra) -> ClassLabel:
    """``A1_n`` if (b), (c), (d) hold; ``A2_n`` if (b), (c) hold but (d) fails."""
    if g.n < 12:
        raise FiliformError(f"extended classes need n >= 12, got {g.n}")
    f = property_flags(g)
    if f.b and f.c:
        return ClassLabel(g.n, "A1" if f.d else "A2")
    return ClassLabel(g.n, "unclassified")


# -- witnesses -------------------------------------------------------------------

_NONZERO_VALUES = [Fraction(v) for v in (1, -1, 2, -2, 3, -3)] + [Fraction(1, 2), Fraction(-1, 2)]


def _extended_hints(label: ClassLabel) -> List[Condition]:
    # starting points only; candidates are accepted on their computed flags
    # (b) needs alpha_25 != 0, (d) fails iff alpha_37 != 0, and with alpha_37 != 0
    # the Jacobi equations of shift 0 force alpha_25 = 10 alpha_37
    n = label.n
    if label.family == "A1":
        hints = [_ne(_a(2, 5)), _eq(_a(3, 7))]
    else:
        hints = [_ne(_a(3, 7)), _eq(_a(2, 5) - 10 * _a(3, 7))]
    if n % 2 == 0:
        hints.append(_eq(_a(n // 2, n)))
    return hints


def _priority(n: int, first: Sequence[IndexPair]) -> List[IndexPair]:
    rest = sorted((key for key in index_set(n) if key not in first),
                  key=lambda ks: (ks[1] - 2 * ks[0] - 1, ks[0]))
    return list(dict.fromkeys(first)) + rest


def _eliminate(polys: List[Poly]) -> Optional[List[Poly]]:
    """Row-reduce polynomials as vectors over monomials, nonlinear monomials first.

    Low-degree consequences (often univariate) surface as the last rows.
    None signals an inconsistent system (a nonzero constant in the span).
    """
    monos = sorted({m for f in polys for m in f.terms},
                   key=lambda m: (-len(m), -len(set(m)), repr(m)))
    index = {m: i for i, m in enumerate(monos)}
    ech = Echelon()
    for f in polys:
        if f:
            ech.add({index[m]: c for m, c in f.terms.items()})
    out = []
    for row in ech.rows():
        f = Poly({monos[i]: c for i, c in row.items()})
        if f.is_constant():
            return None
        out.append(f)
    return out


def _attempt(n: int, equalities: List[Poly], nonzero: List[Poly], order: List[IndexPair],
             hot: set, rng: random.Random, p_hot: float, p_cold: float) -> Optional[Dict]:
    assign: Dict[IndexPair, object] = {}
    pending = list(equalities)
    while True:
        solved = True
        while solved:
            solved = False
            pending = _eliminate([f.substitute(assign) for f in pending])
            if pending is None:
                return None
            for f in nonzero:
                if not f.substitute(assign):
                    return None
            for f in pending:
                if len(f.variables()) == 1 and f.degree() <= 2:
                    v, coeffs = f.univariate_coefficients()
                    roots = roots_upto_quadratic(coeffs)
                    if not roots:
                        return None
                    assign[v] = rng.choice(roots)
                    solved = True
                    break
        free = [v for v in order if v not in assign]
        if not free:
            return assign
        v = free[0]
        p_nz = p_hot if v in hot else p_cold
        assign[v] = rng.choice(_NONZERO_VALUES) if rng.random() < p_nz else ZERO


def find_witness(label: ClassLabel, budget: int = 2000, seed: int = 0,
                 density: float = 0.2) -> Optional[FiliformParams]:
    """Search for Lie-algebra parameters in ``label``'s class.

    Class equalities and Jacobi equations are propagated: any equation left
    in a single variable with degree <= 2 is solved exactly (possibly in a
    real quadratic field); other variables get small random values, nonzero
    with probability ``density``.  Each candidate is verified by building the
    algebra, checking Jacobi and reclassifying.  None means the budget ran out.
    """
    n = label.n
    if label.family == "A":
        conds = class_conditions(label)
    elif label.family in ("A1", "A2"):
        if n < 12:
            raise FiliformError(f"{label} needs n >= 12")
        conds = _extended_hints(label)
    else:
        raise FiliformError(f"cannot search for witnesses of {label}")
    rng = random.Random(f"{label}/{seed}")
    cond_vars: List[IndexPair] = []
    for c in conds:
        for f in c.factors:
            cond_vars.extend(sorted(f.variables()))
    order = _priority(n, cond_vars)
    hot = set(cond_vars)
    jac = list(jacobi_polynomials(n))
    for _ in range(budget):
        eqs = list(jac)
        nonzero: List[Poly] = []
        for c in conds:
            if c.vanishes:
                eqs.append(rng.choice(c.factors))
            else:
                nonzero.extend(c.factors)
        got = _attempt(n, eqs, nonzero, order, hot, rng, 0.75, density)
        if got is None:
            continue
        p = FiliformParams(n, got)
        if _accepts(label, p):
            return p
    return None


def _accepts(label: ClassLabel, p: FiliformParams) -> bool:
    if jacobi_residuals(p):
        return False
    g = build_algebra(p)
    if jacobi_defects(g):
        return False
    if label.family == "A":
        return classify(p) == label
    return extended_class(g) == label


# -- adapted bases -----------------------------------------------------------------

@dataclass
class AdaptedForm:
    params: FiliformParams
    transition: Matrix  # column j holds the new e_(j+1) in old coordinates
    algebra: LieAlgebra


def _sweep(n: int, rng: random.Random, randoms: int) -> Iterable[SparseVec]:
    for i in range(n):
        yield {i: ONE}
    for i in range(n):
        for j in range(i + 1, n):
            yield {i: ONE, j: ONE}
    for _ in range(randoms):
        v = {i: random_rational(rng) for i in range(n)}
        v = {i: x for i, x in v.items() if x}
        if v:
            yield v


def adapted_params(h: LieAlgebra) -> Optional[FiliformParams]:
    """Parameters if the basis of ``h`` is already adapted, else None."""
    n = h.n
    if n < 3:
        return None
    alpha = {}
    for k, s in index_set(n):
        x = h.bracket_basis(k - 1, k).get(s - 1)
        if x:
            alpha[(k, s)] = x
    p = FiliformParams(n, alpha)
    return p if build_algebra(p) == h else None


def to_adapted(g: LieAlgebra, seed: int = 0, randoms: int = 200) -> AdaptedForm:
    """Change basis so that ``g`` takes the adapted form.

    For n >= 5 the span of ``e_2 .. e_n`` is recovered as the hyperplane
    ``{x : [x, g^1] ⊆ g^3}``; ``e_2`` is taken there, ``e_1`` outside it, and
    ``e_(i+1) = [e_1, e_i]``.  Candidates are tried deterministically first,
    then randomly; every result is checked against :func:`build_algebra`.
    """
    series = _require_filiform(g)
    n = g.n
    rng = random.Random(seed)
    if n >= 5:
        ech3 = echelon_of(series[3])
        rows: List[SparseVec] = []
        for y in series[1]:
            block: Dict[int, SparseVec] = {}
            for i in range(n):
                for t, x in ech3.reduce(g.bracket_sparse({i: ONE}, y)).items():
                    block.setdefault(t, {})[i] = x
            rows.extend(block.values())
        hyper = kernel_sparse(Matrix(len(rows), n, rows))
        ech1 = echelon_of(series[1])
        f2_cands = [v for v in hyper if not ech1.contains(v)]
        hyper_ech = echelon_of(hyper)
    else:
        f2_cands = None
        hyper_ech = None
    for f1 in _sweep(n, rng, randoms):
        if hyper_ech is not None and hyper_ech.contains(f1):
            continue
        cands = f2_cands if f2_cands is not None else _sweep(n, rng, 0)
        for f2 in cands:
            chain = [f1, f2]
            for _ in range(n - 2):
                chain.append(g.bracket_sparse(f1, chain[-1]))
            if echelon_of(chain).rank < n:
                continue
            P = Matrix.from_columns([dense(v, n) for v in chain], n)
            h = change_basis(g, P)
            p = adapted_params(h)
            if p is not None:
                h._validated = True
                return AdaptedForm(p, P, h)
    raise FiliformError(f"no adapted basis found for {g.label()}")
