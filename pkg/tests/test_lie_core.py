import itertools
import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from filiform_lsa.exact_linalg import Matrix, determinant
from filiform_lsa.filiform import FiliformParams, build_algebra, standard_graded
from filiform_lsa.lie_core import (
    LieAlgebra,
    NotALieAlgebra,
    abelian,
    bracket,
    center_sparse,
    change_basis,
    derivation_basis,
    find_nonsingular_derivation,
    is_derivation,
    is_filiform,
    is_nilpotent,
    jacobi_defects,
    lower_central_series,
    nilindex,
    nilpotent_type,
)

import oracles

HEIS = LieAlgebra(3, {(1, 2, 3): 1})


def test_constructor_folds_antisymmetry():
    g = LieAlgebra(3, {(2, 1, 3): -1})
    assert g == HEIS
    assert bracket(g, (0, 1, 0), (1, 0, 0)) == (0, 0, -1)
    with pytest.raises(ValueError):
        LieAlgebra(3, {(1, 1, 2): 1})
    with pytest.raises(ValueError):
        LieAlgebra(3, {(1, 4, 2): 1})
    with pytest.raises(ValueError):
        LieAlgebra(0)


def test_heisenberg_series():
    assert nilpotent_type(HEIS) == [2, 1]
    assert nilindex(HEIS) == 2 and is_filiform(HEIS)
    assert [s.dim for s in lower_central_series(HEIS)] == [3, 1, 0]
    assert center_sparse(HEIS) == [{2: 1}]


def test_abelian_and_sl2():
    a = abelian(4)
    assert nilindex(a) == 1 and not is_filiform(a)
    sl2 = LieAlgebra(3, {(1, 2, 3): 1, (3, 1, 1): 2, (3, 2, 2): -2}).validate()
    assert not is_nilpotent(sl2)
    assert center_sparse(sl2) == []


def test_non_lie_detected():
    g = LieAlgebra(3, {(1, 2, 3): 1, (2, 3, 1): 1, (1, 3, 3): 1})
    assert jacobi_defects(g)
    with pytest.raises(NotALieAlgebra):
        g.validate()


constants = st.dictionaries(
    st.tuples(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4)).filter(lambda t: t[0] < t[1]),
    st.integers(-2, 2),
    max_size=5,
)


@settings(max_examples=40, deadline=None)
@given(constants)
def test_jacobi_defects_match_enumeration(c):
    g = LieAlgebra(4, c)
    got = {(i, j, k) for i, j, k, _ in jacobi_defects(g)}
    assert got == oracles.jacobi_violations(4, g.structure_constants())


def _sympy_derivation_dim(g):
    n = g.n
    D = sp.Matrix(n, n, sp.symbols(f"d0:{n * n}"))
    cols = lambda v: sp.Matrix([v.get(k, 0) for k in range(n)])
    ad = lambda x, y: cols({k: sp.Rational(str(c)) for k, c in g.bracket_sparse(x, y).items()})
    eqs = []
    for i, j in itertools.combinations(range(n), 2):
        lhs = D * ad({i: 1}, {j: 1})
        rhs = sp.zeros(n, 1)
        for r in range(n):
            rhs += D[r, i] * ad({r: 1}, {j: 1}) + D[r, j] * ad({i: 1}, {r: 1})
        eqs.extend(lhs - rhs)
    A, _ = sp.linear_eq_to_matrix(eqs, list(D))
    return n * n - A.rank()


@pytest.mark.parametrize("g", [HEIS, standard_graded(4), standard_graded(6),
                               build_algebra(FiliformParams(7, {(2, 5): 1, (3, 7): 2}))])
def test_derivations_against_sympy(g):
    basis = derivation_basis(g)
    assert len(basis) == _sympy_derivation_dim(g)
    assert all(is_derivation(g, D) for D in basis)


def test_nonsingular_derivation():
    D = find_nonsingular_derivation(standard_graded(5), seed=3)
    assert D is not None and determinant(D) != 0
    assert not is_derivation(HEIS, Matrix.identity(3))


@pytest.mark.parametrize("seed", range(5))
def test_change_basis_preserves_invariants(seed):
    rng = random.Random(seed)
    g = build_algebra(FiliformParams(8, {(2, 5): 1, (2, 7): -2, (3, 8): 1}))
    g.validate()
    while True:
        P = Matrix.from_dense([[Fraction(rng.randint(-2, 2)) for _ in range(8)] for _ in range(8)])
        if determinant(P):
            break
    h = change_basis(g, P)
    assert not jacobi_defects(h)
    assert nilpotent_type(h) == nilpotent_type(g)
    assert len(derivation_basis(h)) == len(derivation_basis(g))
    assert len(center_sparse(h)) == 1
