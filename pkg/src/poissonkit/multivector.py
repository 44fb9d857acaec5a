"""Polynomial multivector fields on affine space and their Schouten bracket.

A degree-p multivector is stored sparsely as a map from strictly increasing
index tuples ``(i1 < ... < ip)`` to polynomial coefficients.  The
Schouten-Nijenhuis bracket is computed term by term from the classical
formula on decomposables,

    [u1^...^up, v1^...^vq] =
        sum_{s,t} (-1)^{s+t} [u_s, v_t] ^ u1^..^u_s^..^up ^ v1^..^v_t^..^vq,

with each monomial term factored as (coeff * d_{i1}) ^ d_{i2} ^ ... so only
vector-field brackets of the forms [f d_i, g d_j] are ever needed.
"""

from __future__ import annotations

from .poly import MultiPoly, Var
from .scalars import Q


def _sort_with_sign(indices):
    """Sort an index tuple, returning (sorted tuple, permutation sign) or None
    if an index repeats (the wedge vanishes)."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return None
    sign = 1
    # insertion sort, counting transpositions
    for a in range(1, len(idx)):
        b = a
        while b > 0 and idx[b - 1] > idx[b]:
            idx[b - 1], idx[b] = idx[b], idx[b - 1]
            sign = -sign
            b -= 1
    return tuple(idx), sign


class PolyMultiVector:
    """A homogeneous polynomial multivector field."""

    def __init__(self, variables, degree: int, comps=None):
        self.vars = tuple(v if isinstance(v, Var) else Var(v) for v in variables)
        self.n = len(self.vars)
        self.degree = int(degree)
        clean = {}
        for idx, poly in (comps or {}).items():
            if poly.is_zero():
                continue
            res = _sort_with_sign(tuple(idx))
            if res is None:
                continue
            key, sign = res
            if len(key) != self.degree:
                raise ValueError("component index arity does not match degree")
            p = poly if sign == 1 else -poly
            if key in clean:
                clean[key] = clean[key] + p
                if clean[key].is_zero():
                    del clean[key]
            else:
                clean[key] = p
        self.comps = clean

    # -- basics ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.comps

    def component(self, *idx) -> MultiPoly:
        res = _sort_with_sign(idx)
        if res is None:
            return MultiPoly.zero(self.vars)
        key, sign = res
        p = self.comps.get(key)
        if p is None:
            return MultiPoly.zero(self.vars)
        return p if sign == 1 else -p

    def __add__(self, other):
        if self.degree != other.degree:
            raise ValueError("cannot add multivectors of different degree")
        comps = dict(self.comps)
        for k, p in other.comps.items():
            comps[k] = comps[k] + p if k in comps else p
        return PolyMultiVector(self.vars, self.degree, comps)

    def __neg__(self):
        return PolyMultiVector(
            self.vars, self.degree, {k: -p for k, p in self.comps.items()}
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        return PolyMultiVector(
            self.vars, self.degree, {k: p.scale(s) for k, p in self.comps.items()}
        )

    def __eq__(self, other):
        return (
            isinstance(other, PolyMultiVector)
            and self.degree == other.degree
            and (self - other).is_zero()
        )

    def pair_covectors(self, covectors) -> MultiPoly:
        """Evaluate on constant basis covectors given as index list, e.g.
        T.pair_covectors((a, b, c)) = fully skew component T^{abc}."""
        return self.component(*covectors)

    def __str__(self):
        if not self.comps:
            return "0"
        parts = []
        for key in sorted(self.comps):
            frame = "^".join(f"d_{self.vars[i].name}" for i in key)
            parts.append(f"({self.comps[key]}) {frame}")
        return " + ".join(parts)

    __repr__ = __str__


def from_vector_field(variables, components) -> PolyMultiVector:
    comps = {(i,): p for i, p in enumerate(components)}
    return PolyMultiVector(variables, 1, comps)


def schouten(A: PolyMultiVector, B: PolyMultiVector) -> PolyMultiVector:
    """Schouten-Nijenhuis bracket of polynomial multivectors (degrees >= 1)."""
    if A.degree < 1 or B.degree < 1:
        raise ValueError("schouten() expects multivectors of degree >= 1")
    if A.vars != B.vars:
        raise ValueError("multivectors must share a coordinate system")
    variables = A.vars
    names = [v.name for v in variables]
    out_deg = A.degree + B.degree - 1
    acc = PolyMultiVector(variables, out_deg, {})

    def factors(mv, key):
        """Vector-field factor list for one component: first factor carries
        the polynomial coefficient."""
        coeff = mv.comps[key]
        return [(coeff, key[0])] + [(None, i) for i in key[1:]]

    for ka in A.comps:
        fa = factors(A, ka)
        for kb in B.comps:
            fb = factors(B, kb)
            for s, (cf_a, ia) in enumerate(fa):
                for t, (cf_b, ib) in enumerate(fb):
                    # [u_s, v_t]: list of (poly, index)
                    bracket_terms = []
                    f = cf_a  # None means constant 1
                    g = cf_b
                    if f is not None and g is not None:
                        dg = g.partial(names[ia])
                        if not dg.is_zero():
                            bracket_terms.append((f * dg, ib))
                        df = f.partial(names[ib])
                        if not df.is_zero():
                            bracket_terms.append((-(g * df), ia))
                    elif f is not None:  # [f d_ia, d_ib] = -(d_ib f) d_ia
                        df = f.partial(names[ib])
                        if not df.is_zero():
                            bracket_terms.append((-df, ia))
                    elif g is not None:  # [d_ia, g d_ib] = (d_ia g) d_ib
                        dg = g.partial(names[ia])
                        if not dg.is_zero():
                            bracket_terms.append((dg, ib))
                    if not bracket_terms:
                        continue
                    sign = (-1) ** ((s + 1) + (t + 1))
                    rest_a = [fa[r] for r in range(len(fa)) if r != s]
                    rest_b = [fb[r] for r in range(len(fb)) if r != t]
                    # outstanding polynomial coefficients from unbracketed factors
                    coeff_rest = None
                    rest_idx = []
                    for cf, i in rest_a + rest_b:
                        rest_idx.append(i)
                        if cf is not None:
                            coeff_rest = cf if coeff_rest is None else coeff_rest * cf
                    for poly, lead in bracket_terms:
                        res = _sort_with_sign((lead, *rest_idx))
                        if res is None:
                            continue
                        key, perm_sign = res
                        total = poly if coeff_rest is None else poly * coeff_rest
                        total = total.scale(Q(sign * perm_sign))
                        acc = acc + PolyMultiVector(variables, out_deg, {key: total})
    return acc


def lie_bracket_fields(variables, V, W) -> list:
    """Jacobi-Lie bracket of two polynomial vector fields, as components."""
    names = [v.name if isinstance(v, Var) else v for v in variables]
    n = len(names)
    out = []
    for i in range(n):
        acc = None
        for j in range(n):
            t1 = V[j] * W[i].partial(names[j])
            t2 = W[j] * V[i].partial(names[j])
            term = t1 - t2
            acc = term if acc is None else acc + term
        out.append(acc)
    return out
