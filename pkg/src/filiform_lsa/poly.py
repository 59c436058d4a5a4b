"""Sparse multivariate polynomials over the exact scalars.

Only what the parameter-space code needs: ring operations, partial
substitution and roots of univariate polynomials of degree <= 2.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, List, Mapping, Optional, Set, Tuple

from .exact_linalg import QuadraticNumber, Scalar, as_scalar

Monomial = Tuple[Hashable, ...]


class Poly:
    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Monomial, Scalar]] = None):
        self.terms: Dict[Monomial, Scalar] = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, c) -> "Poly":
        return cls({(): as_scalar(c)})

    @classmethod
    def var(cls, v: Hashable) -> "Poly":
        return cls({(v,): Fraction(1)})

    def _lift(self, other) -> "Poly":
        return other if isinstance(other, Poly) else Poly.const(other)

    def __add__(self, other) -> "Poly":
        other = self._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Poly":
        return self._lift(other) - self

    def __mul__(self, other) -> "Poly":
        other = self._lift(other)
        out: Dict[Monomial, Scalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(sorted(m1 + m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        out = Poly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), str(t[0]))):
            name = "*".join(_var_name(v) for v in m)
            parts.append(f"{c}" + (f"*{name}" if name else ""))
        return " + ".join(parts)

    def variables(self) -> Set[Hashable]:
        return {v for m in self.terms for v in m}

    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=0)

    def is_constant(self) -> bool:
        return all(not m for m in self.terms)

    def constant(self) -> Scalar:
        return self.terms.get((), Fraction(0))

    def substitute(self, values: Mapping[Hashable, Scalar]) -> "Poly":
        out: Dict[Monomial, Scalar] = {}
        for m, c in self.terms.items():
            rest = []
            for v in m:
                if v in values:
                    c = c * values[v]
                    if not c:
                        break
                else:
                    rest.append(v)
            else:
                key = tuple(rest)
                out[key] = out.get(key, 0) + c
        return Poly(out)

    def evaluate(self, values: Mapping[Hashable, Scalar], default=Fraction(0)) -> Scalar:
        total = Fraction(0)
        for m, c in self.terms.items():
            for v in m:
                c = c * values.get(v, default)
                if not c:
                    break
            total = total + c
        return total

    def univariate_coefficients(self) -> Tuple[Hashable, List[Scalar]]:
        """``(v, [c0, c1, ...])`` for a polynomial in exactly one variable."""
        vs = self.variables()
        if len(vs) != 1:
            raise ValueError("polynomial is not univariate")
        (v,) = vs
        coeffs: List[Scalar] = [Fraction(0)] * (self.degree() + 1)
        for m, c in self.terms.items():
            coeffs[len(m)] = coeffs[len(m)] + c
        return v, coeffs


def _var_name(v) -> str:
    if isinstance(v, tuple) and len(v) == 2:
        return f"a{v[0]}_{v[1]}"
    return str(v)


def roots_upto_quadratic(coeffs: List[Scalar]) -> Optional[List[Scalar]]:
    """Roots of ``c0 + c1 x + c2 x^2`` in Q or a real quadratic extension.

    Returns None when the roots cannot be represented (degree > 2, complex
    roots, or a square root needed over an irrational field).
    """
    while coeffs and not coeffs[-1]:
        coeffs = coeffs[:-1]
    if len(coeffs) <= 1:
        return None
    if len(coeffs) == 2:
        return [-coeffs[0] / coeffs[1]]
    if len(coeffs) > 3:
        return None
    c0, c1, c2 = coeffs
    if any(isinstance(c, QuadraticNumber) for c in coeffs):
        return None
    disc = c1 * c1 - 4 * c2 * c0
    if disc < 0:
        return None
    r = QuadraticNumber.sqrt(disc)
    roots = [(-c1 + r) / (2 * c2), (-c1 - r) / (2 * c2)]
    return roots if roots[0] != roots[1] else roots[:1]
