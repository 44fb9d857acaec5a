from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from poissonkit.poly import (
    ANGULAR,
    MultiPoly,
    NumericField,
    Var,
    fd_gradient,
    generators,
    sl2_relation_ideal,
)
from poissonkit.scalars import GaussianRational, I, Q

VARS = ("x", "y", "z")


def poly_strategy():
    coeff = st.fractions(max_denominator=8, min_value=-8, max_value=8)
    exps = st.tuples(*(st.integers(0, 3) for _ in VARS))
    term = st.tuples(exps, coeff)
    return st.lists(term, max_size=5).map(
        lambda ts: MultiPoly(VARS, {e: GaussianRational(c) for e, c in ts})
    )


def test_examples():
    x, y = generators("x", "y")
    assert (x + 1) * (x - 1) == x * x - 1
    assert (x * y) * (x * y) == x ** 2 * y ** 2
    assert (x ** 2 * y).partial("x") == 2 * x * y
    assert (x ** 2).partial("y").is_zero()


def test_angular_laurent():
    th = Var("th", ANGULAR)
    w = MultiPoly.variable([th], "th")
    winv = MultiPoly.monomial([th], [-1], 1)
    assert w * winv == MultiPoly.constant([th], 1)
    assert w.partial("th") == w.scale(I)
    assert winv.partial("th") == winv.scale(GaussianRational(0, -1))
    # evaluation at an exact unit-circle point (w = i)
    val = (w * w).eval({"th": GaussianRational(0, 1)})
    assert val == Q(-1)


def test_kind_collision_rejected():
    th_aff = MultiPoly.variable(["th"], "th")
    th_ang = MultiPoly.variable([Var("th", ANGULAR)], "th")
    with pytest.raises(ValueError):
        th_aff + th_ang


def test_affine_negative_exponent_rejected():
    with pytest.raises(ValueError):
        MultiPoly(("x",), {(-1,): Q(1)})


@settings(max_examples=60)
@given(poly_strategy(), poly_strategy(), poly_strategy())
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p


def test_reduce_mod_examples():
    ideal = sl2_relation_ideal()
    a1, a2, a3, a4 = generators("a1", "a2", "a3", "a4")
    assert ideal.reduce(a1 * a4) == a2 * a3 + 1
    assert ideal.reduce(a2 * a3) == a2 * a3
    assert ideal.reduce(a1 ** 2 * a4 ** 2) == (a2 * a3 + 1) ** 2
    assert ideal.reduce(ideal.generator).is_zero()


def test_reduce_mod_ideal_invariant(rng):
    """reduce(p*g + r) == reduce(r) for arbitrary p and r."""
    from conftest import rand_poly

    ideal = sl2_relation_ideal()
    gens = generators("a1", "a2", "a3", "a4")
    variables = gens[0].vars
    for _ in range(15):
        p = rand_poly(rng, variables, gens)
        r = rand_poly(rng, variables, gens)
        assert ideal.reduce(p * ideal.generator + r) == ideal.reduce(r)


def test_fd_gradient_examples():
    f = NumericField(lambda p: p[0] ** 2 + p[1] ** 2, 2)
    g = fd_gradient(f, [1.0, 0.0])
    assert abs(g[0] - 2) < 1e-8 and abs(g[1]) < 1e-8
    const = NumericField(lambda p: 42.0, 3)
    assert all(abs(v) < 1e-12 for v in fd_gradient(const, [1.0, 2.0, 3.0]))
    h = NumericField(lambda p: abs(1 - p[0] * p[1]) ** -0.5, 2)
    g2 = fd_gradient(h, [0.0, 0.0])
    assert abs(g2[0]) < 1e-6 and abs(g2[1]) < 1e-6


def test_fd_gradient_error_propagates():
    bad = NumericField(lambda p: 1.0 / (p[0] - 1e-5), 1)
    with pytest.raises(ZeroDivisionError):
        fd_gradient(bad, [0.0])


def test_fd_matches_exact_partials(rng):
    """Central differences track exact partials within 10*h^2 for small
    polynomials evaluated in a fixed box."""
    from conftest import rand_poly

    gens = generators("x", "y")
    variables = gens[0].vars
    for _ in range(10):
        p = rand_poly(rng, variables, gens, max_terms=4, max_deg=4, coeff_bound=10)
        nf = NumericField.from_poly(p)
        pt = [Fraction(rng.randint(-2, 2), 16) for _ in range(2)]
        ptf = [float(v) for v in pt]
        grad = fd_gradient(nf, ptf)
        h = nf.step
        for i, name in enumerate(("x", "y")):
            exact = p.partial(name).eval({"x": pt[0], "y": pt[1]})
            exact = float(GaussianRational.coerce(exact).re)
            assert abs(grad[i] - exact) <= 10 * h * h, (str(p), grad[i], exact)


def test_group_translate():
    x, = generators("x")
    p = x ** 2
    doubled = p.group_translate()
    # (x + x')^2 = x^2 + 2 x x' + x'^2
    xx, xb = generators("x", "x__b")
    assert doubled == xx ** 2 + (xx * xb).scale(Q(2)) + xb ** 2
    th = Var("th", ANGULAR)
    w = MultiPoly.variable([th], "th")
    dw = w.group_translate()
    assert dw == MultiPoly([th, Var("th__b", ANGULAR)], {(1, 1): Q(1)})


def test_json_roundtrip():
    x, y = generators("x", "y")
    p = x ** 2 - (x * y).scale(Q("2/3")) + 1
    assert MultiPoly.from_json(p.to_json()) == p
    th = Var("th", ANGULAR)
    w = MultiPoly([th], {(-2,): GaussianRational(Fraction(1, 2), Fraction(3))})
    assert MultiPoly.from_json(w.to_json()) == w


def test_lex_leading_and_eval():
    ideal = sl2_relation_ideal()
    assert ideal.lead_exp == (1, 0, 0, 1)
    x, y = generators("x", "y")
    p = x * y + y ** 3
    assert p.eval({"x": 2, "y": Fraction(1, 2)}) == Q("9/8")
    assert abs(complex(p.eval({"x": 2.0, "y": 0.5})) - 1.125) < 1e-12
