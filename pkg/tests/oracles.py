"""Independent reference computations in sympy.

Nothing here imports the engine's linear algebra; brackets are rebuilt from the
deformation cochains and ranks come from sympy's dense elimination.
"""

import itertools
from fractions import Fraction
from math import comb

import sympy as sp

from filiform_lsa.exact_linalg import QuadraticNumber


def to_sympy(x):
    if isinstance(x, QuadraticNumber):
        return sp.Rational(x.a.numerator, x.a.denominator) + sp.Rational(x.b.numerator, x.b.denominator) * sp.sqrt(x.d)
    return sp.Rational(x.numerator, x.denominator)


def brackets(n, alpha):
    """``{(i, j): {k: c}}`` for i < j, from ``L(n) + sum alpha psi_(k,s)``."""
    out = {}

    def add(i, j, r, c):
        row = out.setdefault((i, j), {})
        row[r] = row.get(r, 0) + c

    for i in range(2, n):
        add(1, i, i + 1, 1)
    for (k, s), a in alpha.items():
        a = to_sympy(a)
        for i in range(2, k + 1):
            for j in range(k + 1, n + 1):
                lo, top = k - i, j - k - 1
                if lo > top:
                    continue
                t = s + top - lo
                if t <= n:
                    add(i, j, t, a * (-1) ** lo * comb(top, lo))
    return out


def br(B, i, j):
    if i < j:
        return B.get((i, j), {})
    if i > j:
        return {k: -v for k, v in B.get((j, i), {}).items()}
    return {}


def b2(n, alpha):
    B = brackets(n, alpha)
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    triples = list(itertools.combinations(range(1, n + 1), 3))
    pidx = {p: i for i, p in enumerate(pairs)}
    d1 = sp.zeros(len(pairs), n)
    for (i, j), r in pidx.items():
        for k, c in br(B, i, j).items():
            d1[r, k - 1] -= c
    d2 = sp.zeros(max(len(triples), 1), len(pairs))
    for r, (x, y, z) in enumerate(triples):
        for u, v, w, sign in ((x, y, z, -1), (x, z, y, 1), (y, z, x, -1)):
            for k, c in br(B, u, v).items():
                if k == w:
                    continue
                col = pidx[(k, w)] if k < w else pidx[(w, k)]
                d2[r, col] += sign * c * (1 if k < w else -1)
    assert sp.simplify(d2 * d1).is_zero_matrix
    return len(pairs) - d2.rank(simplify=True) - d1.rank(simplify=True)


def jacobi_violations(n, constants):
    """Triples ``i < j < k`` (1-based) where Jacobi fails, by full enumeration.

    ``constants`` maps (i, j, k) to the coefficient of e_k in [e_i, e_j] for i < j.
    """
    # plain Fractions unless a surd forces sympy
    symbolic = any(isinstance(c, QuadraticNumber) for c in constants.values())
    conv = to_sympy if symbolic else Fraction
    B = {}
    for (i, j, k), c in constants.items():
        B.setdefault((i, j), {})[k] = conv(c)

    def bracket_vec(x, y):
        out = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for k, c in br(B, a, b).items():
                    out[k] = out.get(k, 0) + ca * cb * c
        return out

    bad = set()
    for i, j, k in itertools.permutations(range(1, n + 1), 3):
        e = lambda t: {t: 1}
        total = {}
        for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
            for m, c in bracket_vec(bracket_vec(e(x), e(y)), e(z)).items():
                total[m] = total.get(m, 0) + c
        if any((sp.simplify(v) if symbolic else v) != 0 for v in total.values()):
            bad.add(tuple(sorted((i, j, k))))
    return bad
