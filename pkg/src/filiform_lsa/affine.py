"""Affine 2-cocycles, central extensions and left-symmetric products.

A trivial-coefficient 2-cocycle ``w`` is affine when it does not vanish on
``z(g) ^ g``.  For a filiform ``g`` such a class gives a central extension
that is again filiform, and that extension yields a left-symmetric product
on ``g`` whose commutator is the Lie bracket.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .cohomology import (
    TRIVIAL,
    Cochain,
    coboundaries_sparse,
    cocycles_sparse,
    is_cocycle,
    omega_cochain,
)
from .exact_linalg import (
    ONE,
    ZERO,
    Matrix,
    Scalar,
    SparseVec,
    axpy,
    dense,
    echelon_of,
    inverse,
    solve,
)
from .lie_core import (
    LieAlgebra,
    center_sparse,
    is_filiform,
    random_rational,
    require_lie,
)


class AffineError(ValueError):
    pass


@dataclass
class AffineVerdict:
    exists: bool
    witness: Optional[Cochain] = None
    # dimension of the image of Z^2 under w -> (w(z ^ e_j))_j
    affine_rank: int = 0


@dataclass
class LsaProduct:
    """``e_i . e_j = sum_k a[(i, j, k)] e_k`` with 1-based keys."""

    n: int
    a: Dict[Tuple[int, int, int], Scalar] = field(default_factory=dict)
    verified: bool = False

    def product_sparse(self, x: SparseVec, y: SparseVec) -> SparseVec:
        table = self._table()
        out: SparseVec = {}
        for i, xi in x.items():
            for j, yj in y.items():
                v = table.get((i, j))
                if v:
                    axpy(out, xi * yj, v)
        return out

    def product(self, x: Sequence, y: Sequence) -> Tuple[Scalar, ...]:
        xs = {i: v for i, v in enumerate(x) if v}
        ys = {i: v for i, v in enumerate(y) if v}
        return dense(self.product_sparse(xs, ys), self.n)

    def _table(self) -> Dict[Tuple[int, int], SparseVec]:
        table: Dict[Tuple[int, int], SparseVec] = {}
        for (i, j, k), c in self.a.items():
            if c:
                table.setdefault((i - 1, j - 1), {})[k - 1] = c
        return table


@dataclass
class CentralExtension:
    """``total`` has basis ``e_1 .. e_n, z`` with ``z`` the last vector."""

    base: LieAlgebra
    cocycle: Cochain
    total: LieAlgebra
    projection: Matrix
    center_vector: Tuple[Scalar, ...]


# -- affine cocycles ---------------------------------------------------------------

def _center_vector(g: LieAlgebra) -> SparseVec:
    z = center_sparse(g)
    if len(z) != 1:
        raise AffineError(f"center of {g.label()} has dimension {len(z)}, expected 1")
    return z[0]


def _pair_values(g: LieAlgebra, z: SparseVec, w: Cochain) -> List[Scalar]:
    """``[w(z ^ e_j) for j]``."""
    out = []
    for j in range(g.n):
        acc = ZERO
        for i, c in z.items():
            if i != j:
                acc += c * w(i + 1, j + 1)
        out.append(acc)
    return out


def is_affine_by_definition(g: LieAlgebra, w: Cochain) -> bool:
    """``w`` is nonzero somewhere on ``z(g) ^ g``."""
    return any(_pair_values(g, _center_vector(g), w))


def is_affine_by_slots(g: LieAlgebra, w: Cochain) -> bool:
    """Adapted-basis criterion: ``w(e_1 ^ e_n)`` or ``w(e_2 ^ e_n)`` is nonzero."""
    n = g.n
    return bool(w(1, n)) or bool(w(2, n))


def is_affine_cocycle(g: LieAlgebra, w: Cochain) -> bool:
    """Affine test for a 2-cocycle on an adapted filiform algebra.

    Both the definition and the two-slot criterion are evaluated; a
    disagreement means the basis is not adapted and raises AffineError.
    """
    if w.p != 2 or w.module != TRIVIAL or w.n != g.n:
        raise AffineError("expected a trivial-coefficient 2-cochain of matching dimension")
    require_lie(g)
    if not is_cocycle(g, w):
        raise AffineError("cochain is not a 2-cocycle")
    by_def = is_affine_by_definition(g, w)
    by_slots = is_affine_by_slots(g, w)
    if by_def != by_slots:
        raise AffineError("affine tests disagree; is the basis adapted?")
    return by_def


def find_affine_class(g: LieAlgebra) -> AffineVerdict:
    """Decide whether ``Z^2(g, K)`` contains an affine cocycle.

    Coboundaries vanish on ``z ^ g`` (z is central), so this also decides the
    question for cohomology classes.  Works in any basis.
    """
    require_lie(g)
    z = _center_vector(g)
    n = g.n
    Z = cocycles_sparse(g, 2, TRIVIAL)
    best = None
    images: List[SparseVec] = []
    for vec in Z:
        w = Cochain.from_vector(n, 2, TRIVIAL, vec)
        img = {j: x for j, x in enumerate(_pair_values(g, z, w)) if x}
        images.append(img)
        if img and best is None:
            best = w
    r = echelon_of(images).rank
    return AffineVerdict(exists=best is not None, witness=best, affine_rank=r)


# -- central extensions ----------------------------------------------------------------

def central_extension(g: LieAlgebra, w: Cochain) -> CentralExtension:
    """``h = g + K z`` with ``[x, y]_h = [x, y]_g + w(x ^ y) z``."""
    require_lie(g)
    n = g.n
    if w.p != 2 or w.module != TRIVIAL or w.n != n:
        raise AffineError("expected a trivial-coefficient 2-cochain of matching dimension")
    if not is_cocycle(g, w):
        raise AffineError("cochain is not a 2-cocycle; the extension would not be a Lie algebra")
    br: Dict[Tuple[int, int], SparseVec] = {}
    for i in range(n):
        for j in range(i + 1, n):
            v = dict(g.bracket_basis(i, j))
            c = w(i + 1, j + 1)
            if c:
                v[n] = c
            if v:
                br[(i, j)] = v
    total = LieAlgebra.from_brackets(n + 1, br, name=f"ext({g.label()})")
    total._validated = True
    zdim = len(center_sparse(total))
    if zdim != 1:
        raise AffineError(f"cocycle is not affine: the extension has a {zdim}-dimensional center")
    proj = Matrix(n, n + 1, [{i: ONE} for i in range(n)])
    zvec = tuple([ZERO] * n + [ONE])
    return CentralExtension(base=g, cocycle=w, total=total, projection=proj, center_vector=zvec)


def quotient_by_center(h: LieAlgebra) -> Tuple[LieAlgebra, Matrix]:
    """``g = h / z(h)`` for a 1-dimensional center, with the projection matrix.

    The quotient basis is the image of the standard basis vectors of ``h``
    that complete the center, in order.
    """
    require_lie(h)
    z = center_sparse(h)
    if len(z) != 1:
        raise AffineError(f"center has dimension {len(z)}, expected 1")
    m = h.n
    ech = echelon_of(z)
    keep = [i for i in range(m) if ech.add({i: ONE})]
    # coordinates w.r.t. (keep basis vectors, z): solve for the projection
    cols = [dense({i: ONE}, m) for i in keep] + [dense(z[0], m)]
    Binv = inverse(Matrix.from_columns(cols, m))
    proj = Matrix(m - 1, m, [Binv.row(r) for r in range(m - 1)])
    br: Dict[Tuple[int, int], SparseVec] = {}
    for a, i in enumerate(keep):
        for b in range(a + 1, len(keep)):
            v = proj.apply_sparse(h.bracket_basis(i, keep[b]))
            if v:
                br[(a, b)] = v
    g = LieAlgebra.from_brackets(m - 1, br, name=f"{h.label()}/z")
    g._validated = True
    return g, proj


# -- the left-symmetric product ------------------------------------------------------

def _ad_rank(h: LieAlgebra, x: SparseVec) -> int:
    return echelon_of(h.bracket_sparse(x, {j: ONE}) for j in range(h.n)).rank


def lsa_on_quotient(ext: CentralExtension, seed: int = 0, randoms: int = 200) -> LsaProduct:
    """Left-symmetric product on ``g = h / z(h)``: ``x . y = psi([x~, phi(y)])``.

    ``phi(x) = [f_1, x~]`` for an element ``f_1`` of ``h`` with ad-rank n-1
    whose image is outside ``g^1``; ``psi`` inverts ``phi`` on a complement
    ``g_2 ⊇ g^1`` of ``K pi(f_1)``.  The result is always verified.
    """
    h, g, P = ext.total, ext.base, ext.projection
    n = g.n
    require_lie(h)
    if len(center_sparse(h)) != 1:
        raise AffineError("extension must have a 1-dimensional center")
    # a section s of the projection: s(e_i) solves P s = e_i
    section = _section(P)
    g1 = echelon_of(
        v for i in range(n) for j in range(i + 1, n) for v in [g.bracket_basis(i, j)] if v
    )
    rng = random.Random(seed)
    for f1 in _candidates(h.n, rng, randoms):
        if _ad_rank(h, f1) != n - 1:
            continue
        pf1 = P.apply_sparse(f1)
        if not pf1 or g1.contains(pf1):
            continue
        prod = _product_for(g, h, P, section, f1, pf1, g1)
        if prod is not None and verify_lsa(g, prod):
            prod.verified = True
            return prod
    raise AffineError("no element of ad-rank n-1 produced a verified product")


def _section(P: Matrix) -> List[SparseVec]:
    n, m = P.rows, P.cols
    # P has full row rank; pick pivot columns and invert there
    pivots = []
    ech = echelon_of([])
    cols = [{r: P[r, c] for r in range(n) if P[r, c]} for c in range(m)]
    for c in range(m):
        if cols[c] and ech.add(cols[c]):
            pivots.append(c)
    sub = Matrix.from_columns([dense(cols[c], n) for c in pivots], n)
    inv = inverse(sub)
    out = []
    for i in range(n):
        coeff = {k: inv[k, i] for k in range(n) if inv[k, i]}
        out.append({pivots[k]: x for k, x in coeff.items()})
    return out


def _candidates(m: int, rng: random.Random, randoms: int):
    for i in range(m):
        yield {i: ONE}
    for i in range(m):
        for j in range(i + 1, m):
            yield {i: ONE, j: ONE}
    for _ in range(randoms):
        v = {i: random_rational(rng) for i in range(m)}
        v = {i: x for i, x in v.items() if x}
        if v:
            yield v


def _product_for(g, h, P, section, f1, pf1, g1_ech) -> Optional[LsaProduct]:
    n = g.n
    # g_2 = g^1 + span(u), u the first of e_2, e_1, e_3, ... outside g^1 + K pi(f_1)
    ech = echelon_of(g1_ech.rows() + [pf1])
    g2 = list(g1_ech.rows())
    for i in [1, 0] + list(range(2, n)):
        if ech.add({i: ONE}):
            g2.append({i: ONE})
            break
    if len(g2) != n - 1:
        return None
    phi = [h.bracket_sparse(f1, section[j]) for j in range(n)]
    # psi: solve sum_m c_m phi(g2_m) = w, psi(w) = sum_m c_m g2_m
    images = []
    for v in g2:
        acc: SparseVec = {}
        for j, c in v.items():
            axpy(acc, c, phi[j])
        images.append(acc)
    m = h.n
    A = Matrix.from_columns([dense(v, m) for v in images], m)
    if echelon_of(images).rank != n - 1:
        return None
    a: Dict[Tuple[int, int, int], Scalar] = {}
    for i in range(n):
        for j in range(n):
            w = h.bracket_sparse(section[i], phi[j])
            if not w:
                continue
            coeffs = _solve_in_span(A, w)
            if coeffs is None:
                return None
            out: SparseVec = {}
            for mm, c in coeffs.items():
                axpy(out, c, g2[mm])
            for k, c in out.items():
                a[(i + 1, j + 1, k + 1)] = c
    return LsaProduct(n=n, a=a)


def _solve_in_span(A: Matrix, w: SparseVec) -> Optional[Dict[int, Scalar]]:
    sol = solve(A, dense(w, A.rows))
    if sol is None:
        return None
    return {i: x for i, x in enumerate(sol) if x}


def verify_lsa(g: LieAlgebra, prod: LsaProduct) -> bool:
    """Exact check of ``x.y - y.x = [x, y]`` and ``(x, y, z) = (y, x, z)`` on basis vectors."""
    n = g.n
    if prod.n != n:
        raise AffineError("product and algebra dimensions differ")
    table = prod._table()

    def mul(x: SparseVec, y: SparseVec) -> SparseVec:
        out: SparseVec = {}
        for i, xi in x.items():
            for j, yj in y.items():
                v = table.get((i, j))
                if v:
                    axpy(out, xi * yj, v)
        return out

    e = [{i: ONE} for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            lhs = dict(table.get((i, j), {}))
            axpy(lhs, -ONE, table.get((j, i), {}))
            if lhs != g.bracket_basis(i, j):
                return False
    for i in range(n):
        for j in range(i + 1, n):
            xy = table.get((i, j), {})
            yx = table.get((j, i), {})
            for k in range(n):
                # x.(y.z) - (x.y).z - y.(x.z) + (y.x).z
                d = mul(e[i], table.get((j, k), {}))
                axpy(d, -ONE, mul(xy, e[k]))
                axpy(d, -ONE, mul(e[j], table.get((i, k), {})))
                axpy(d, ONE, mul(yx, e[k]))
                if d:
                    return False
    return True


def affine_structure(g: LieAlgebra, seed: int = 0) -> Optional[LsaProduct]:
    """Affine class, central extension and the verified product; None without an affine class."""
    require_lie(g)
    if not is_filiform(g):
        raise AffineError(f"{g.label()} is not filiform")
    verdict = find_affine_class(g)
    if not verdict.exists:
        return None
    ext = central_extension(g, verdict.witness)
    return lsa_on_quotient(ext, seed=seed)


# -- descriptors of H^2 -------------------------------------------------------------

AFFINE_TAGS = ("w", "w'", "w''")


def h2_tags(g: LieAlgebra) -> List[str]:
    """Labels for a basis of ``H^2(g, K)`` of an adapted filiform algebra.

    ``w<l>`` is the cochain ``omega_l`` when it is a cocycle independent of the
    classes chosen before it (l increasing); the affine part not covered by
    named cocycles is labelled ``w``, ``w'``; anything left over is ``v``.
    """
    require_lie(g)
    n = g.n
    z = _center_vector(g)
    span = echelon_of(coboundaries_sparse(g, 2, TRIVIAL))
    aff_span = echelon_of([])
    tags: List[str] = []
    for l in range(1, (n - 1) // 2 + 1):
        w = omega_cochain(n, l)
        if not is_cocycle(g, w):
            continue
        if span.add(w.to_vector()):
            tags.append(f"w{l}")
            img = {j: x for j, x in enumerate(_pair_values(g, z, w)) if x}
            if img:
                aff_span.add(img)
    verdict = find_affine_class(g)
    extra = verdict.affine_rank - aff_span.rank
    tags.extend(AFFINE_TAGS[:extra])
    b = len(cocycles_sparse(g, 2, TRIVIAL)) - len(coboundaries_sparse(g, 2, TRIVIAL))
    tags.extend(["v"] * (b - len(tags)))
    return tags


def tag_signature(n: int, tags: Sequence[str]) -> Tuple[Tuple[int, ...], int, int]:
    """``(non-affine named indices, affine count, total)`` for comparing tag lists.

    ``omega_l`` touches ``e_2 ^ e_n`` exactly when ``2l + 1 = n``, which makes it
    affine; such a named tag counts towards the affine part.
    """
    named = []
    affine = 0
    for t in tags:
        if t in AFFINE_TAGS:
            affine += 1
        elif t.startswith("w") and t[1:].isdigit():
            l = int(t[1:])
            if 2 * l + 1 == n:
                affine += 1
            else:
                named.append(l)
    return tuple(sorted(named)), affine, len(tags)
