"""Linear matrix-group Poisson actions, momentum maps, and the equivariance
obstruction cocycles, restricted to groups with zero Poisson structure for
all momentum machinery (the dual group is then the dual vector space).

Group-level data lives in :class:`LinearPoissonAction`: the infinitesimal
generators acting on the target, an exact lift ``g -> n x n matrix``, and the
defining matrices of the algebra used for exact adjoint/coadjoint matrices.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .bialgebra import RMatrix
from .lie import LieAlgebra, abelian, sl2, sl2_defining_matrices
from .poisson import (
    PolyBivector,
    PolyVectorField,
    bracket_fn,
    casimir_check,
    differential,
    hamiltonian_field,
    lie_derivative_bivector,
    lie_poisson,
)
from .poly import MultiPoly, NumericField, generators, sl2_relation_ideal
from .scalars import GaussianRational, Q, ZERO, ONE

POINTWISE_TOL = 1e-6
SUBSPACE_TOL = 1e-8


# -- exact 2x2 group helpers ------------------------------------------------------


def sl2_membership(g) -> bool:
    m = linalg.mat(g)
    return (m[0][0] * m[1][1] - m[0][1] * m[1][0]) == ONE


def sl2_inverse(g):
    m = linalg.mat(g)
    if not sl2_membership(m):
        raise ValueError("matrix is not in the determinant-one group")
    return [[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]]


def sl2_rational_samples(count: int, seed: int = 0) -> list:
    """Exact determinant-one samples from products of elementary matrices."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        g = linalg.identity(2)
        for _ in range(rng.randint(1, 3)):
            t = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            if rng.random() < 0.5:
                e = [[ONE, Q(t)], [ZERO, ONE]]
            else:
                e = [[ONE, ZERO], [Q(t), ONE]]
            g = linalg.mat_mul(g, e)
        out.append(g)
    return out


def matrix_coords(defining_mats, M) -> list:
    """Coordinates of a matrix in the span of the defining basis matrices."""
    rows = []
    rhs = []
    d = len(M)
    for a in range(d):
        for b in range(d):
            rows.append([defining_mats[k][a][b] for k in range(len(defining_mats))])
            rhs.append(M[a][b])
    sol = linalg.solve(rows, rhs)
    if sol is None:
        raise ValueError("matrix does not lie in the algebra span")
    return sol


def adjoint_matrix(defining_mats, g) -> list:
    """Matrix of Ad_g = g . g^{-1} in the defining basis (exact)."""
    ginv = sl2_inverse(g) if len(g) == 2 else linalg.inverse(g)
    n = len(defining_mats)
    cols = []
    for i in range(n):
        M = linalg.mat_mul(linalg.mat_mul(linalg.mat(g), defining_mats[i]), ginv)
        cols.append(matrix_coords(defining_mats, M))
    return [[cols[j][k] for j in range(n)] for k in range(n)]


def coadjoint_matrix(defining_mats, g) -> list:
    """Matrix of Ad*_{g^{-1}}, i.e. <Coad_g mu, Y> = <mu, Ad_{g^{-1}} Y>.

    This is the left action on the dual space; its infinitesimal generator is
    the module-valid coadjoint representation."""
    ginv = sl2_inverse(g) if len(g) == 2 else linalg.inverse(g)
    return linalg.transpose(adjoint_matrix(defining_mats, ginv))


# -- infinitesimal actions -----------------------------------------------------------


@dataclass
class InfinitesimalAction:
    algebra: LieAlgebra
    fields: list  # PolyVectorField per basis element

    def of_vector(self, X) -> PolyVectorField:
        acc = None
        for xi, f in zip(X, self.fields):
            c = GaussianRational.coerce(xi)
            term = f.scale(c)
            acc = term if acc is None else acc + term
        return acc

    def homomorphism_sign(self):
        """The global sign eps with lam([X,Y]) = eps [lam(X), lam(Y)], or None.

        Returns 'abelian' when all brackets vanish so both signs fit.
        """
        from .multivector import lie_bracket_fields

        L = self.algebra
        seen = set()
        for i in range(L.dim):
            for j in range(i + 1, L.dim):
                lhs = self.of_vector(L.basis_bracket(i, j))
                vs = self.fields[i].vars
                jlb = lie_bracket_fields(
                    vs, list(self.fields[i].comps), list(self.fields[j].comps)
                )
                rhs = PolyVectorField(vs, tuple(jlb))
                if lhs.is_zero() and rhs.is_zero():
                    continue
                if (lhs - rhs).is_zero():
                    seen.add(1)
                elif (lhs + rhs).is_zero():
                    seen.add(-1)
                else:
                    return None
        if not seen:
            return "abelian"
        if len(seen) > 1:
            return None
        return seen.pop()


def linear_action_fields(rep_mats, variables) -> list:
    """lam(X)(x) = X.x as linear-coefficient vector fields (d/dt exp(tX)x at 0)."""
    base = MultiPoly.zero(variables)
    gens = [base + MultiPoly.variable(base.vars, v.name) for v in base.vars]
    fields = []
    for a in range(len(rep_mats)):
        comps = []
        M = linalg.mat(rep_mats[a])
        for i in range(len(gens)):
            acc = MultiPoly.zero(base.vars)
            for j in range(len(gens)):
                if not M[i][j].is_zero():
                    acc = acc + gens[j].scale(M[i][j])
            comps.append(acc)
        fields.append(PolyVectorField(base.vars, tuple(comps)))
    return fields


def infinitesimal_from_linear(L: LieAlgebra, rep_mats, variables) -> InfinitesimalAction:
    """The infinitesimal action of a matrix representation.

    For a faithful matrix representation acting by x -> g x this is an
    anti-homomorphism into vector fields: lam([X,Y]) = -[lam(X), lam(Y)].
    """
    return InfinitesimalAction(L, linear_action_fields(rep_mats, variables))


def dressing_generator_matrices(L: LieAlgebra) -> list:
    """Generators of the dressing vector fields on the dual space of a group
    with zero Poisson structure: d(X) = X_{<mu, X>} for the linear bivector,
    i.e. (M_a mu)_i = sum_k C^k_{ai} mu_k.

    Note these are the negatives of the module-valid coadjoint matrices: the
    Hamiltonian fields of linear functions form a homomorphism into vector
    fields, while left-action generators form an anti-homomorphism.
    """
    n = L.dim
    mats = []
    for a in range(n):
        mats.append([[L.structure_constant(a, i, k) for k in range(n)] for i in range(n)])
    return mats


# -- the bundled action object ---------------------------------------------------------


@dataclass
class LinearPoissonAction:
    """A matrix-group action on a polynomial Poisson space.

    ``rep_mats`` generate the infinitesimal action on the target;
    ``lift_generators`` (defaulting to ``rep_mats``) are the derivatives of
    ``lift`` and enter the group-level multiplicativity check.
    """

    algebra: LieAlgebra
    rep_mats: list
    bivector: PolyBivector
    rmatrix: RMatrix | None = None
    defining_mats: list | None = None
    lift: object = None            # callable: group matrix -> n x n target matrix
    lift_generators: list | None = None
    membership: object = None      # callable: group matrix -> bool

    def __post_init__(self):
        self.rep_mats = [linalg.mat(m) for m in self.rep_mats]
        if len(self.rep_mats) != self.algebra.dim:
            raise ValueError("one generator matrix per basis element required")
        if self.lift is None:
            self.lift = lambda g: linalg.mat(g)
        if self.lift_generators is None:
            self.lift_generators = self.rep_mats
        else:
            self.lift_generators = [linalg.mat(m) for m in self.lift_generators]
        if self.membership is None:
            self.membership = lambda g: True
        self._fields = None

    @property
    def target_dim(self) -> int:
        return self.bivector.n

    def fields(self) -> list:
        if self._fields is None:
            self._fields = linear_action_fields(self.rep_mats, self.bivector.vars)
        return self._fields

    def infinitesimal(self) -> InfinitesimalAction:
        return InfinitesimalAction(self.algebra, self.fields())

    def field_values(self, point) -> list:
        return [f.eval_exact(point) for f in self.fields()]

    def act(self, g, point) -> list:
        G = self.lift(g)
        return linalg.mat_vec(G, [GaussianRational.coerce(x) for x in point])


# -- worked bundles ---------------------------------------------------------------------


def quadratic_h(l1, l2, l3, c, variables=("x1", "x2")) -> MultiPoly:
    """h = (l1+l3)/4 x1^2 - (l1-l3)/4 x2^2 - l2/2 x1 x2 + c."""
    l1, l2, l3, c = (GaussianRational.coerce(v) for v in (l1, l2, l3, c))
    x1, x2 = generators(*variables)
    quarter = Q("1/4")
    half = Q("1/2")
    return (
        (x1 * x1).scale(quarter * (l1 + l3))
        - (x2 * x2).scale(quarter * (l1 - l3))
        - (x1 * x2).scale(half * l2)
        + MultiPoly.constant(x1.vars, c)
    )


def sl2_plane_action(l1, l2, l3, c) -> LinearPoissonAction:
    """The natural determinant-one group action on the plane with bivector
    h(x1, x2) d_1 ^ d_2, h as above, and the r-matrix family on sl(2)."""
    L = sl2()
    mats = sl2_defining_matrices()
    h = quadratic_h(l1, l2, l3, c)
    pi = PolyBivector(("x1", "x2"), {(0, 1): h})
    lam = RMatrix.sl2_family(L, l1, l2, l3)
    return LinearPoissonAction(
        algebra=L,
        rep_mats=mats,
        bivector=pi,
        rmatrix=lam,
        defining_mats=mats,
        lift=lambda g: linalg.mat(g),
        membership=sl2_membership,
    )


def diagonal_subgroup_action(c) -> LinearPoissonAction:
    """The one-parameter diagonal subgroup acting on the plane with the
    bivector (c - x1 x2) d_1 ^ d_2 (orbits are the hyperbolas x1 x2 = const)."""
    h = Q("1/2")
    e1 = [[h, ZERO], [ZERO, -h]]
    x1, x2 = generators("x1", "x2")
    pi = PolyBivector(("x1", "x2"), {(0, 1): MultiPoly.constant(x1.vars, c) - x1 * x2})
    return LinearPoissonAction(
        algebra=abelian(1),
        rep_mats=[e1],
        bivector=pi,
        defining_mats=[e1],
        membership=lambda g: True,
    )


def rotation_plane_action() -> LinearPoissonAction:
    """One-dimensional rotation action on the symplectic plane; the standard
    momentum map is (x^2 + y^2)/2."""
    R = [[ZERO, Q(-1)], [ONE, ZERO]]
    pi = PolyBivector.constant_symplectic(2, names=("x", "y"))
    return LinearPoissonAction(
        algebra=abelian(1),
        rep_mats=[R],
        bivector=pi,
        defining_mats=[R],
    )


def coadjoint_dressing_bundle(L: LieAlgebra, defining_mats) -> LinearPoissonAction:
    """The dual space of a trivial-structure group: linear bivector, dressing
    generators as the infinitesimal action, exact coadjoint lift.

    The lift is the left action <Coad_g mu, Y> = <mu, Ad_{g^{-1}} Y>; its own
    generators are the negatives of the dressing generators (the standard
    sign slack between left translations and Hamiltonian generators).
    """
    pi = lie_poisson(L)
    gen = dressing_generator_matrices(L)
    neg = [[[-x for x in row] for row in m] for m in gen]
    return LinearPoissonAction(
        algebra=L,
        rep_mats=gen,
        bivector=pi,
        defining_mats=[linalg.mat(m) for m in defining_mats],
        lift=lambda g: coadjoint_matrix(defining_mats, g),
        lift_generators=neg,
        membership=sl2_membership if len(defining_mats[0]) == 2 else (lambda g: True),
    )


# -- group-level Poisson-action check ----------------------------------------------------


def _wedge_matrix(u, v) -> list:
    n = len(u)
    return [[u[i] * v[j] - u[j] * v[i] for j in range(n)] for i in range(n)]


@dataclass
class ActionCheckReport:
    passed: bool
    mode: str
    failures: list
    samples: int

    def to_json(self):
        return {
            "passed": self.passed,
            "mode": self.mode,
            "samples": self.samples,
            "failures": self.failures,
        }


def check_poisson_action(a: LinearPoissonAction, samples) -> ActionCheckReport:
    """Evaluate pi(g x) = dsigma_g pi(x) + dsigma^x pi_G(g) exactly at exact
    sample pairs; pi_G(g) is the coboundary left-minus-right translate of the
    r-matrix (zero when no r-matrix is attached)."""
    failures = []
    for g, x in samples:
        if not a.membership(g):
            raise ValueError("sample matrix fails the group relation")
        G = a.lift(g)
        xv = [GaussianRational.coerce(t) for t in x]
        gx = linalg.mat_vec(G, xv)
        lhs = a.bivector.eval_matrix(gx)
        rhs = linalg.mat_mul(linalg.mat_mul(G, a.bivector.eval_matrix(xv)), linalg.transpose(G))
        if a.rmatrix is not None:
            n = a.target_dim
            acc = linalg.zeros(n, n)
            rho = a.lift_generators
            for i in range(a.algebra.dim):
                for j in range(i + 1, a.algebra.dim):
                    lam = a.rmatrix.matrix[i][j]
                    if lam.is_zero():
                        continue
                    left_i = linalg.mat_vec(linalg.mat_mul(G, rho[i]), xv)
                    left_j = linalg.mat_vec(linalg.mat_mul(G, rho[j]), xv)
                    right_i = linalg.mat_vec(rho[i], gx)
                    right_j = linalg.mat_vec(rho[j], gx)
                    w = linalg.mat_sub(
                        _wedge_matrix(left_i, left_j), _wedge_matrix(right_i, right_j)
                    )
                    acc = linalg.mat_add(acc, [[lam * t for t in row] for row in w])
            rhs = linalg.mat_add(rhs, acc)
        diff = linalg.mat_sub(lhs, rhs)
        if not linalg.is_zero_mat(diff):
            failures.append(
                {
                    "g": [[str(t) for t in row] for row in linalg.mat(g)],
                    "x": [str(t) for t in xv],
                    "residual": [[str(t) for t in row] for row in diff],
                }
            )
    return ActionCheckReport(
        passed=not failures, mode="symbolic", failures=failures, samples=len(samples)
    )


# -- the quadratic cocycle identity on the plane ------------------------------------------


@dataclass
class HCertificate:
    h: MultiPoly
    certificate: MultiPoly     # normal form of lhs - rhs modulo the group relation
    passed: bool

    def to_json(self):
        return {
            "passed": self.passed,
            "mode": "symbolic",
            "h": str(self.h),
            "certificate": str(self.certificate),
        }


def solve_h_certificate(l1, l2, l3, c) -> HCertificate:
    """Construct the closed-form h and certify the group cocycle identity

        h(g x) - h(x) = (quadratic form in the group entries and x)

    as a polynomial identity after reduction modulo the determinant relation.
    """
    l1, l2, l3, cc = (GaussianRational.coerce(v) for v in (l1, l2, l3, c))
    names = ("a1", "a2", "a3", "a4", "x1", "x2")
    a1, a2, a3, a4, x1, x2 = generators(*names)
    h = quadratic_h(l1, l2, l3, cc, variables=("x1", "x2"))
    h_full = MultiPoly.zero(a1.vars) + h
    gx1 = a1 * x1 + a2 * x2
    gx2 = a3 * x1 + a4 * x2
    quarter = Q("1/4")
    lp = l1 + l3
    lm = l1 - l3
    h_gx = (
        (gx1 * gx1).scale(quarter * lp)
        - (gx2 * gx2).scale(quarter * lm)
        - (gx1 * gx2).scale(Q("1/2") * l2)
        + MultiPoly.constant(a1.vars, cc)
    )
    lhs = h_gx - h_full
    rhs = (
        (x1 * x1) * ((a1 * a1).scale(lp) - (a3 * a3).scale(lm) - (a1 * a3).scale(Q(2) * l2) - lp)
        + (x2 * x2) * ((a2 * a2).scale(lp) - (a4 * a4).scale(lm) - (a2 * a4).scale(Q(2) * l2) + lm)
        + (x1 * x2) * ((a1 * a2).scale(Q(2) * lp) - (a3 * a4).scale(Q(2) * lm) - (a2 * a3).scale(Q(4) * l2))
    ).scale(quarter)
    ideal = sl2_relation_ideal()
    cert = ideal.reduce(lhs - rhs)
    return HCertificate(h=h, certificate=cert, passed=cert.is_zero())


def numeric_h_residual(l1, l2, l3, c, count: int = 1000, seed: int = 0) -> float:
    """Max float residual of the cocycle identity over exact group samples."""
    h = quadratic_h(l1, l2, l3, c)

    def h_at(p):
        v = h.eval({"x1": p[0], "x2": p[1]})
        return v.real if isinstance(v, complex) else float(v)

    gs = sl2_rational_samples(count, seed=seed)
    rng = random.Random(seed + 1)
    l1f, l2f, l3f = (float(GaussianRational.coerce(v).re) for v in (l1, l2, l3))
    lp, lm = l1f + l3f, l1f - l3f
    worst = 0.0
    for g in gs:
        xf = [float(Fraction(rng.randint(-6, 6), rng.randint(1, 4))) for _ in range(2)]
        gm = [[float(t.re) for t in row] for row in g]
        gx = [gm[0][0] * xf[0] + gm[0][1] * xf[1], gm[1][0] * xf[0] + gm[1][1] * xf[1]]
        lhs = h_at(gx) - h_at(xf)
        A1, A2, A3, A4 = gm[0][0], gm[0][1], gm[1][0], gm[1][1]
        rhs = 0.25 * (
            (lp * A1 * A1 - lm * A3 * A3 - 2 * l2f * A1 * A3 - lp) * xf[0] ** 2
            + (lp * A2 * A2 - lm * A4 * A4 - 2 * l2f * A2 * A4 + lm) * xf[1] ** 2
            + (2 * lp * A1 * A2 - 2 * lm * A3 * A4 - 4 * l2f * A2 * A3) * xf[0] * xf[1]
        )
        worst = max(worst, abs(lhs - rhs))
    return worst


# -- structure preservation and tangentiality ----------------------------------------------


@dataclass
class PreservationReport:
    passed: bool
    per_generator: list   # (index, preserved, residual string)

    def to_json(self):
        return {
            "passed": self.passed,
            "mode": "symbolic",
            "per_generator": [
                {"index": i, "preserved": ok, "residual": res}
                for i, ok, res in self.per_generator
            ],
        }


def check_structure_preserved(a: LinearPoissonAction) -> PreservationReport:
    """L_{lam(e_i)} pi = 0 symbolically for every generator."""
    rows = []
    for i, f in enumerate(a.fields()):
        lv = lie_derivative_bivector(a.bivector, f)
        rows.append((i, lv.is_zero(), str(lv)))
    return PreservationReport(passed=all(ok for _, ok, _ in rows), per_generator=rows)


def tangential_coefficient_predicate(l1, l2, l3, c) -> bool:
    """l1 + l3 > 0, l1^2 + l2^2 - l3^2 < 0, c >= 0 (exact rational compare)."""
    l1, l2, l3, c = (Fraction(v) if not isinstance(v, Fraction) else v for v in (l1, l2, l3, c))
    return (l1 + l3 > 0) and (l1 * l1 + l2 * l2 - l3 * l3 < 0) and (c >= 0)


@dataclass
class TangentialReport:
    passed: bool
    failures: list   # (point, generator index)
    points: int

    def to_json(self):
        return {
            "passed": self.passed,
            "mode": "symbolic",
            "points": self.points,
            "failures": [
                {"point": [str(x) for x in p], "generator": i} for p, i in self.failures
            ],
        }


def tangential_check(a: LinearPoissonAction, points) -> TangentialReport:
    """At each exact point, solvability of pi(p) alpha = lam(e_i)(p) for every
    generator (membership of the orbit directions in the image of the anchor)."""
    failures = []
    for p in points:
        M = a.bivector.eval_matrix(p)
        for i, vals in enumerate(a.field_values(p)):
            if all(v.is_zero() for v in vals):
                continue
            if linalg.solve(M, vals) is None:
                failures.append((list(p), i))
    return TangentialReport(passed=not failures, failures=failures, points=len(points))


def find_rank_drop_witness(l1, l2, l3, c):
    """A rational point where the quadratic h vanishes (so the bivector rank
    drops) while the group orbit directions do not, or None if the small
    search finds nothing rational."""
    h = quadratic_h(l1, l2, l3, c)

    def h_at(x1v, x2v):
        return GaussianRational.coerce(h.eval({"x1": x1v, "x2": x2v}))

    import math

    l1f, l2f, l3f, cf = (Fraction(v) for v in (l1, l2, l3, c))
    # lines x1 = 1 and x2 = 1: rational roots of the restricted quadratic
    for fixed in ("x1", "x2"):
        if fixed == "x1":
            # h(1, t) = -1/4 (l1-l3) t^2 - 1/2 l2 t + 1/4(l1+l3) + c
            A = -(l1f - l3f) / 4
            B = -l2f / 2
            C = (l1f + l3f) / 4 + cf
        else:
            A = (l1f + l3f) / 4
            B = -l2f / 2
            C = -(l1f - l3f) / 4 + cf
        roots = _rational_roots(A, B, C)
        for t in roots:
            pt = [Fraction(1), t] if fixed == "x1" else [t, Fraction(1)]
            if not h_at(pt[0], pt[1]).is_zero():
                continue
            if any(x != 0 for x in pt):
                return pt
    return None


def _rational_roots(A: Fraction, B: Fraction, C: Fraction) -> list:
    if A == 0:
        return [] if B == 0 else [-C / B]
    disc = B * B - 4 * A * C
    if disc < 0:
        return []
    num, den = disc.numerator, disc.denominator
    import math

    rn = math.isqrt(num)
    rd = math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        return []
    s = Fraction(rn, rd)
    return [(-B + s) / (2 * A), (-B - s) / (2 * A)]


# -- the covector map and the bracket identity ----------------------------------------------


def xi_f(a: LinearPoissonAction, f: MultiPoly) -> list:
    """Components of the covector field xi_f: <xi_f(p), e_i> = lam(e_i)(f)(p)."""
    f = MultiPoly.zero(a.bivector.vars) + f
    return [fld.apply(f) for fld in a.fields()]


def xi_f_at(a: LinearPoissonAction, f: MultiPoly, point) -> list:
    """The covector xi_f(p) as an exact dual vector."""
    assign = {v.name: GaussianRational.coerce(x) for v, x in zip(a.bivector.vars, point)}
    return [GaussianRational.coerce(c.eval(assign)) for c in xi_f(a, f)]


@dataclass
class ActionBracketReport:
    passed: bool
    residuals: list   # per basis index, residual polynomial string

    def to_json(self):
        return {
            "passed": self.passed,
            "mode": "symbolic",
            "residuals": [{"index": i, "residual": r} for i, r in self.residuals],
        }


def check_action_bracket_identity(a: LinearPoissonAction, dual_algebra: LieAlgebra, f: MultiPoly,
             g: MultiPoly) -> ActionBracketReport:
    """lam(X)({f,g}) = {lam(X)f, g} + {f, lam(X)g} + <X, [xi_f, xi_g]_*>,
    verified as a polynomial identity for each basis X."""
    pi = a.bivector
    base = MultiPoly.zero(pi.vars)
    f = base + f
    g = base + g
    xf = xi_f(a, f)
    xg = xi_f(a, g)
    n = a.algebra.dim
    # [xi_f, xi_g]_* expanded with polynomial coefficients
    dual_comp = [MultiPoly.zero(pi.vars) for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            coeff = xf[i] * xg[j] - xf[j] * xg[i]
            if coeff.is_zero():
                continue
            vec = dual_algebra.basis_bracket(i, j)
            for k in range(n):
                if not vec[k].is_zero():
                    dual_comp[k] = dual_comp[k] + coeff.scale(vec[k])
    fg = bracket_fn(pi, f, g)
    residuals = []
    ok = True
    for k, fld in enumerate(a.fields()):
        lhs = fld.apply(fg)
        rhs = bracket_fn(pi, fld.apply(f), g) + bracket_fn(pi, f, fld.apply(g)) + dual_comp[k]
        res = lhs - rhs
        if not res.is_zero():
            ok = False
        residuals.append((k, str(res)))
    return ActionBracketReport(passed=ok, residuals=residuals)


# -- isotropy and annihilator -------------------------------------------------------------


@dataclass
class IsotropyReport:
    isotropy_basis: list
    annihilator_basis: list
    annihilator_abelian: bool

    def to_json(self):
        return {
            "isotropy": [[str(x) for x in v] for v in self.isotropy_basis],
            "annihilator": [[str(x) for x in v] for v in self.annihilator_basis],
            "annihilator_abelian": self.annihilator_abelian,
        }


def isotropy_and_annihilator(a: LinearPoissonAction, point,
                             dual_algebra: LieAlgebra) -> IsotropyReport:
    """Exact isotropy subalgebra at a point, its annihilator, and whether the
    annihilator is abelian for the supplied dual bracket."""
    vals = a.field_values(point)   # one target vector per basis element
    nP = a.target_dim
    n = a.algebra.dim
    A = [[vals[i][row] for i in range(n)] for row in range(nP)]
    iso = linalg.nullspace(A)
    ann = linalg.annihilator(iso, n)
    abelian_ok = True
    for u, v in itertools.combinations(ann, 2):
        if any(dual_algebra.bracket(u, v)):
            abelian_ok = False
            break
    return IsotropyReport(
        isotropy_basis=iso, annihilator_basis=ann, annihilator_abelian=abelian_ok
    )


# -- momentum maps --------------------------------------------------------------------------


@dataclass
class MomentumMap:
    algebra: LieAlgebra
    components: list        # MultiPoly (symbolic) or NumericField per basis element

    def is_symbolic(self) -> bool:
        return all(isinstance(c, MultiPoly) for c in self.components)

    def of_vector(self, X) -> MultiPoly:
        acc = None
        for xi, comp in zip(X, self.components):
            c = GaussianRational.coerce(xi)
            term = comp.scale(c)
            acc = term if acc is None else acc + term
        return acc

    def eval_exact(self, variables, point) -> list:
        assign = {v.name: GaussianRational.coerce(x) for v, x in zip(variables, point)}
        return [GaussianRational.coerce(c.eval(assign)) for c in self.components]


def identity_momentum_map(L: LieAlgebra, pi: PolyBivector, shift=None) -> MomentumMap:
    """m(e_i) = mu_i (+ constant shift), the tautological map on the dual space."""
    comps = []
    for i, v in enumerate(pi.vars):
        p = MultiPoly.variable(pi.vars, v.name)
        if shift is not None:
            p = p + MultiPoly.constant(pi.vars, shift[i])
        comps.append(MultiPoly.zero(pi.vars) + p)
    return MomentumMap(L, comps)


@dataclass
class MomentumReport:
    passed: bool
    mode: str
    residuals: list
    max_residual: float | None = None

    def to_json(self):
        out = {
            "passed": self.passed,
            "mode": self.mode,
            "residuals": self.residuals,
        }
        if self.max_residual is not None:
            out["max_residual"] = self.max_residual
        return out


def momentum_check(a: LinearPoissonAction, m: MomentumMap, points=None,
                   tol: float = POINTWISE_TOL) -> MomentumReport:
    """lam(e_i) = X_{m(e_i)} per basis element: symbolically for polynomial
    components, pointwise with finite differences otherwise."""
    pi = a.bivector
    if m.is_symbolic():
        residuals = []
        ok = True
        for i, fld in enumerate(a.fields()):
            xm = hamiltonian_field(pi, m.components[i])
            res = fld - xm
            if not res.is_zero():
                ok = False
            residuals.append({"index": i, "residual": str(res)})
        return MomentumReport(passed=ok, mode="symbolic", residuals=residuals)
    if points is None:
        raise ValueError("numeric momentum check requires sample points")
    worst = 0.0
    residuals = []
    for p in points:
        pf = [float(x) for x in p]
        mflt = pi.eval_matrix_float(pf)
        for i, fld in enumerate(a.fields()):
            lam_v = [complex(c.eval({vv.name: x for vv, x in zip(pi.vars, pf)})).real
                     for c in fld.comps]
            comp = m.components[i]
            grad = comp.gradient(pf) if isinstance(comp, NumericField) else \
                NumericField.from_poly(comp).gradient(pf)
            sharp = [sum(grad[j] * mflt[j][k] for j in range(pi.n)) for k in range(pi.n)]
            r = max(abs(lv - sv) for lv, sv in zip(lam_v, sharp))
            worst = max(worst, float(r))
    residuals.append({"max_residual": worst})
    return MomentumReport(passed=bool(worst < tol), mode="numeric", residuals=residuals,
                          max_residual=worst)


@dataclass
class NormalizationReport:
    family: str
    solved_constant: float
    max_residual: float
    consistent: bool

    def to_json(self):
        return {
            "family": self.family,
            "solved_constant": self.solved_constant,
            "max_residual": self.max_residual,
            "passed": self.consistent,
            "mode": "numeric",
        }


def solve_momentum_normalization(a: LinearPoissonAction, family, points,
                                 tol: float = POINTWISE_TOL) -> NormalizationReport:
    """Fit the single scale constant of a one-parameter momentum-map family
    ``family(s) -> NumericField`` at the first sample, then test the fit on
    the rest.  Reports failure when no constant works globally."""
    pi = a.bivector
    fld = a.fields()[0]

    def residual_at(s, p):
        pf = [float(x) for x in p]
        mflt = pi.eval_matrix_float(pf)
        comp = family(s)
        grad = comp.gradient(pf)
        sharp = [sum(grad[j] * mflt[j][k] for j in range(pi.n)) for k in range(pi.n)]
        lam_v = [complex(c.eval({vv.name: x for vv, x in zip(pi.vars, pf)})).real
                 for c in fld.comps]
        return max(abs(lv - sv) for lv, sv in zip(lam_v, sharp))

    # the residual is affine in s: solve on the first sample by secant
    p0 = points[0]
    r0 = residual_at(0.0, p0)
    r1 = residual_at(1.0, p0)

    def signed(s, p):
        pf = [float(x) for x in p]
        mflt = pi.eval_matrix_float(pf)
        comp = family(s)
        grad = comp.gradient(pf)
        sharp = [sum(grad[j] * mflt[j][k] for j in range(pi.n)) for k in range(pi.n)]
        lam_v = [complex(c.eval({vv.name: x for vv, x in zip(pi.vars, pf)})).real
                 for c in fld.comps]
        # first nonzero component difference, signed
        for lv, sv in zip(lam_v, sharp):
            if abs(lv) + abs(sv) > 1e-14:
                return lv - sv
        return 0.0

    s0 = signed(0.0, p0)
    s1 = signed(1.0, p0)
    if abs(s1 - s0) < 1e-14:
        best = 0.0
    else:
        best = float(s0 / (s0 - s1))
    worst = max(float(residual_at(best, p)) for p in points)
    return NormalizationReport(
        family="fitted", solved_constant=best, max_residual=worst,
        consistent=bool(worst < tol),
    )


# -- the obstruction cochain -----------------------------------------------------------------


@dataclass
class GammaCochain:
    algebra: LieAlgebra
    entries: dict    # (i, j) with i < j -> MultiPoly

    def entry(self, i: int, j: int) -> MultiPoly:
        if i == j:
            raise ValueError("diagonal entries vanish by antisymmetry")
        if i < j:
            return self.entries[(i, j)]
        return -self.entries[(j, i)]

    def of_vectors(self, X, Y) -> MultiPoly:
        n = self.algebra.dim
        acc = None
        for i in range(n):
            for j in range(i + 1, n):
                c = GaussianRational.coerce(X[i]) * GaussianRational.coerce(Y[j]) - \
                    GaussianRational.coerce(X[j]) * GaussianRational.coerce(Y[i])
                if c.is_zero():
                    continue
                term = self.entries[(i, j)].scale(c)
                acc = term if acc is None else acc + term
        if acc is None:
            some = next(iter(self.entries.values()))
            return MultiPoly.zero(some.vars)
        return acc


def gamma(a: LinearPoissonAction, m: MomentumMap) -> GammaCochain:
    """Gamma_{X,Y} = m([X,Y]) - {m(X), m(Y)}, with the pullback route through
    the linear dual-space bivector computed independently and asserted equal."""
    if not m.is_symbolic():
        raise ValueError("the obstruction cochain needs polynomial components")
    L = a.algebra
    pi = a.bivector
    entries = {}
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            ei = [ONE if t == i else ZERO for t in range(L.dim)]
            ej = [ONE if t == j else ZERO for t in range(L.dim)]
            route_b = m.of_vector(L.bracket(ei, ej)) - bracket_fn(pi, m.components[i], m.components[j])
            # independent route: pull back the dual-space pairing and use the
            # anchor-and-pair form of the plane bracket
            pullback = m.of_vector(L.basis_bracket(i, j))
            pair = pi.pair(
                differential(m.components[i], pi.vars),
                differential(m.components[j], pi.vars),
            )
            route_a = pullback - pair
            if not (route_a - route_b).is_zero():
                raise AssertionError("the two obstruction formulas disagree")
            entries[(i, j)] = route_b
    return GammaCochain(L, entries)


@dataclass
class GammaChecksReport:
    casimir_ok: bool
    casimir_failures: list
    cocycle_ok: bool
    cocycle_residuals: list
    correction_solvable: bool | None
    correction: list | None
    corrected_vanishes: bool | None

    @property
    def ok(self):
        solv = self.correction_solvable in (True, None)
        return self.casimir_ok and self.cocycle_ok and solv

    def to_json(self):
        return {
            "passed": self.ok,
            "mode": "symbolic",
            "casimir_ok": self.casimir_ok,
            "casimir_failures": self.casimir_failures,
            "cocycle_ok": self.cocycle_ok,
            "cocycle_residuals": self.cocycle_residuals,
            "correction_solvable": self.correction_solvable,
            "correction": [str(x) for x in self.correction] if self.correction else None,
            "corrected_vanishes": self.corrected_vanishes,
        }


def gamma_cocycle_residuals(a: LinearPoissonAction, G: GammaCochain,
                            m: MomentumMap | None = None) -> list:
    """d_* Gamma on all basis triples through the cyclic bracket formula
    (and, when the momentum map is supplied, through the displayed route
    with the plane brackets; both must agree)."""
    L = a.algebra
    pi = a.bivector
    out = []
    for i, j, k in itertools.combinations(range(L.dim), 3):
        acc = None
        for (x, y, z) in ((i, j, k), (j, k, i), (k, i, j)):
            ex = [ONE if t == x else ZERO for t in range(L.dim)]
            ey = [ONE if t == y else ZERO for t in range(L.dim)]
            ez = [ONE if t == z else ZERO for t in range(L.dim)]
            bxy = L.bracket(ex, ey)
            term = -G.of_vectors(bxy, ez)
            acc = term if acc is None else acc + term
        if m is not None:
            acc2 = None
            for (x, y, z) in ((i, j, k), (j, k, i), (k, i, j)):
                ex = [ONE if t == x else ZERO for t in range(L.dim)]
                ey = [ONE if t == y else ZERO for t in range(L.dim)]
                ez = [ONE if t == z else ZERO for t in range(L.dim)]
                bxy = L.bracket(ex, ey)
                t2 = bracket_fn(pi, m.of_vector(bxy), m.components[z]) - m.of_vector(
                    L.bracket(bxy, ez)
                )
                acc2 = t2 if acc2 is None else acc2 + t2
            if not (acc - acc2).is_zero():
                raise AssertionError("cyclic-differential routes disagree")
        out.append(((i, j, k), acc))
    return out


def gamma_checks(a: LinearPoissonAction, G: GammaCochain,
                 m: MomentumMap | None = None) -> GammaChecksReport:
    """(i) every entry is a Casimir; (ii) d_* Gamma = 0 symbolically;
    (iii) exactness: solve for a constant correction phi with
    sum_k C^k_{ij} phi_k = -Gamma_{ij} (reported unsolvable when the class
    is nonzero)."""
    L = a.algebra
    pi = a.bivector
    cas_fail = []
    for (i, j), p in sorted(G.entries.items()):
        if not casimir_check(pi, p):
            cas_fail.append([i, j])
    cres = gamma_cocycle_residuals(a, G, m)
    cocycle_ok = all(r.is_zero() for _, r in cres)

    solvable = None
    correction = None
    corrected_zero = None
    try:
        consts = {k: p.as_constant() for k, p in G.entries.items()}
    except ValueError:
        consts = None
    if consts is not None:
        rows = []
        rhs = []
        for (i, j), c in sorted(consts.items()):
            rows.append([L.structure_constant(i, j, k) for k in range(L.dim)])
            rhs.append(-c)
        sol = linalg.solve(rows, rhs)
        solvable = sol is not None
        if sol is not None:
            correction = sol
            corrected_zero = True
            for (i, j), c in sorted(consts.items()):
                shift = sum(
                    (L.structure_constant(i, j, k) * sol[k] for k in range(L.dim)), ZERO
                )
                if not (c + shift).is_zero():
                    corrected_zero = False
    return GammaChecksReport(
        casimir_ok=not cas_fail,
        casimir_failures=cas_fail,
        cocycle_ok=cocycle_ok,
        cocycle_residuals=[
            {"triple": list(t), "residual": str(r)} for t, r in cres if not r.is_zero()
        ],
        correction_solvable=solvable,
        correction=correction,
        corrected_vanishes=corrected_zero,
    )


# -- the group cocycle ------------------------------------------------------------------------


def sigma(a: LinearPoissonAction, m: MomentumMap, g, x) -> list:
    """Sigma(g, x) = m(g x) - Coad_g m(x) in the dual space (exact)."""
    if a.defining_mats is None:
        raise ValueError("group-level maps require the defining matrices")
    if not a.membership(g):
        raise ValueError("matrix fails the group relation")
    xv = [GaussianRational.coerce(t) for t in x]
    gx = a.act(g, xv)
    m_gx = m.eval_exact(a.bivector.vars, gx)
    m_x = m.eval_exact(a.bivector.vars, xv)
    co = coadjoint_matrix(a.defining_mats, g)
    pushed = linalg.mat_vec(co, m_x)
    return [u - v for u, v in zip(m_gx, pushed)]


@dataclass
class PsiCocycleReport:
    passed: bool
    max_violations: list
    samples: int
    casimir_ok: bool

    def to_json(self):
        return {
            "passed": self.passed and self.casimir_ok,
            "mode": "symbolic",
            "samples": self.samples,
            "violations": self.max_violations,
            "sigma_components_casimir": self.casimir_ok,
        }


def psi_cocycle_check(a: LinearPoissonAction, m: MomentumMap, triples) -> PsiCocycleReport:
    """Psi(gh) = Psi(g) + Ad*_{g^{-1}} Psi(h) exactly at sampled (g, h, x),
    plus the Casimir property of the components of Sigma(g, .)."""
    violations = []
    for g, h, x in triples:
        gh = linalg.mat_mul(linalg.mat(g), linalg.mat(h))
        hx = a.act(h, x)
        lhs = sigma(a, m, gh, x)
        t1 = sigma(a, m, g, x)
        co = coadjoint_matrix(a.defining_mats, g)
        t2 = linalg.mat_vec(co, sigma(a, m, h, x))
        res = [u - v - w for u, v, w in zip(lhs, t1, t2)]
        if any(res):
            violations.append(
                {"residual": [str(t) for t in res], "x": [str(t) for t in x]}
            )
    # Casimir property of <Sigma(g, .), Y>: symbolic when components are
    # polynomial in the base point
    cas_ok = True
    if triples:
        g = triples[0][0]
        co = coadjoint_matrix(a.defining_mats, g)
        names = a.bivector.vars
        base_pt = [MultiPoly.variable(names, v.name) for v in names]
        gx_sym = []
        G = a.lift(g)
        for i in range(a.target_dim):
            acc = MultiPoly.zero(names)
            for j in range(a.target_dim):
                if not G[i][j].is_zero():
                    acc = acc + base_pt[j].scale(G[i][j])
            gx_sym.append(acc)
        for k in range(a.algebra.dim):
            mk = m.components[k]
            # m_k(gx) symbolically: components are polynomials in mu
            m_gx = _substitute_linear(mk, gx_sym)
            pushed = MultiPoly.zero(names)
            for t in range(a.algebra.dim):
                if not co[k][t].is_zero():
                    pushed = pushed + m.components[t].scale(co[k][t])
            comp = m_gx - pushed
            if not casimir_check(a.bivector, comp):
                cas_ok = False
    return PsiCocycleReport(
        passed=not violations, max_violations=violations, samples=len(triples),
        casimir_ok=cas_ok,
    )


def _substitute_linear(p: MultiPoly, images: list) -> MultiPoly:
    """Substitute each variable by the given polynomial (exact composition)."""
    out = MultiPoly.zero(images[0].vars)
    names = p.var_names()
    for exp, c in p.terms.items():
        term = MultiPoly.constant(images[0].vars, c)
        for e, nm in zip(exp, names):
            if e:
                idx = [v.name for v in p.vars].index(nm)
                term = term * images[idx] ** e
        out = out + term
    return out


# -- kernel/image of the momentum differential --------------------------------------------------


@dataclass
class KernelImageReport:
    kernel_basis: list
    image_basis: list
    kernel_matches_orthogonal: bool
    image_matches_annihilator: bool

    @property
    def ok(self):
        return self.kernel_matches_orthogonal and self.image_matches_annihilator

    def to_json(self):
        return {
            "passed": self.ok,
            "mode": "symbolic",
            "kernel": [[str(x) for x in v] for v in self.kernel_basis],
            "image": [[str(x) for x in v] for v in self.image_basis],
            "kernel_matches_symplectic_orthogonal": self.kernel_matches_orthogonal,
            "image_matches_isotropy_annihilator": self.image_matches_annihilator,
        }


def momentum_kernel_image(a: LinearPoissonAction, m: MomentumMap, point) -> KernelImageReport:
    """At a symplectic point: ker m_* against the symplectic orthogonal of the
    orbit directions, and im m_* against the annihilator of the isotropy."""
    pi = a.bivector
    M = pi.eval_matrix(point)
    if linalg.rank(M) != pi.n:
        raise ValueError("bivector is degenerate at the point; a symplectic point is required")
    if not m.is_symbolic():
        raise ValueError("exact kernel/image computation needs polynomial components")
    assign = {v.name: GaussianRational.coerce(x) for v, x in zip(pi.vars, point)}
    jac = []
    for comp in m.components:
        jac.append(
            [GaussianRational.coerce(comp.partial(v.name).eval(assign)) for v in pi.vars]
        )
    kernel = linalg.nullspace(jac)
    image = [list(col) for col in zip(*jac)]  # columns of the jacobian span im m_*

    # symplectic orthogonal of the orbit: v with omega(lam(e_i)(p), v) = 0,
    # expressed through covectors beta_i solving pi^T beta = lam(e_i)(p)
    orbit = [v for v in a.field_values(point)]
    piT = linalg.transpose(M)
    covs = []
    for v in orbit:
        if all(x.is_zero() for x in v):
            continue
        beta = linalg.solve(piT, v)
        if beta is None:
            raise AssertionError("nondegenerate matrix failed to solve")
        covs.append(beta)
    orthogonal = linalg.nullspace(covs) if covs else [list(r) for r in linalg.identity(pi.n)]

    nA = a.algebra.dim
    A = [[orbit[i][row] for i in range(nA)] for row in range(pi.n)]
    iso = linalg.nullspace(A)
    ann = linalg.annihilator(iso, nA)

    return KernelImageReport(
        kernel_basis=kernel,
        image_basis=image,
        kernel_matches_orthogonal=linalg.subspace_equal(kernel, orthogonal),
        image_matches_annihilator=linalg.subspace_equal(image, ann),
    )


# -- the commutator-inclusion check ---------------------------------------------------------------


@dataclass
class CommutatorInclusionReport:
    inclusion_holds: bool
    isotropy_dual_dim: int
    isotropy_point_dim: int
    local_minimality_warning: bool

    def to_json(self):
        return {
            "passed": self.inclusion_holds,
            "mode": "symbolic",
            "dim_isotropy_at_value": self.isotropy_dual_dim,
            "dim_isotropy_at_point": self.isotropy_point_dim,
            "local_minimality_warning": self.local_minimality_warning,
        }


def _coadjoint_isotropy(L: LieAlgebra, u) -> list:
    """{X : <u, [X, e_j]> = 0 for all j} (sign-independent kernel)."""
    n = L.dim
    rows = []
    for j in range(n):
        row = []
        for i in range(n):
            vec = L.basis_bracket(i, j)
            row.append(sum((GaussianRational.coerce(u[k]) * vec[k] for k in range(n)), ZERO))
        rows.append(row)
    return linalg.nullspace(rows)


def check_commutator_inclusion(a: LinearPoissonAction, m: MomentumMap, point,
                 neighborhood_radius: Fraction = Fraction(1, 7),
                 neighborhood_samples: int = 6, seed: int = 0) -> CommutatorInclusionReport:
    """[g_u, g_u] inside g_p for u = m(p), with a sampled local-minimality
    probe of dim g_{m(.)} around the point (warn-only)."""
    L = a.algebra
    pi = a.bivector
    u = m.eval_exact(pi.vars, point)
    gu = _coadjoint_isotropy(L, u)

    vals = a.field_values(point)
    A = [[vals[i][row] for i in range(L.dim)] for row in range(pi.n)]
    gp = linalg.nullspace(A)

    ok = True
    for X, Y in itertools.combinations(gu, 2):
        if not linalg.in_span(gp, L.bracket(X, Y)):
            ok = False
    warn = False
    rng = random.Random(seed)
    dim_u = len(gu)
    for _ in range(neighborhood_samples):
        q = [
            GaussianRational.coerce(x) + Q(Fraction(rng.randint(-2, 2), 1) * neighborhood_radius)
            for x in point
        ]
        uq = m.eval_exact(pi.vars, q)
        if len(_coadjoint_isotropy(L, uq)) < dim_u:
            warn = True
    return CommutatorInclusionReport(
        inclusion_holds=ok,
        isotropy_dual_dim=dim_u,
        isotropy_point_dim=len(gp),
        local_minimality_warning=warn,
    )
