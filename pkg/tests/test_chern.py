"""Clifford representation, projector, curvature, character and charge."""

import math
import random
from fractions import Fraction
from itertools import product

import pytest

from helpers import random_monomial
from twistcalc import DeformationContext, Element
from twistcalc.chern import (Matrix, character_tau, charge,
                             charge_from_curvature, charge_integral,
                             clifford_trace, curvature, gamma_rep,
                             instanton_projector, is_projector)
from twistcalc.sphere import integrate_form, reduce_mod_c, sphere_equal
from twistcalc.tensorcalc import epsilon_qinv


def test_gamma_matrices_low_dimension():
    rep = gamma_rep(1)
    ctx = rep.ctx
    z, one, s2 = ctx.scalar_zero(), ctx.scalar_one(), ctx.sqrt2()
    assert rep.gamma(1).rows == [[z, z], [s2, z]]
    assert rep.gamma(2).rows == [[one, z], [z, -one]]
    assert rep.gamma(3).rows == [[z, s2], [z, z]]
    with pytest.raises(ValueError):
        gamma_rep(0)


def test_clifford_relations_hold():
    for n in (1, 2, 3):
        assert gamma_rep(n).relations_hold()


def test_gamma_squares():
    for n in (1, 2):
        rep = gamma_rep(n)
        ctx = rep.ctx
        size = 2 ** n
        zero = ctx.scalar_zero()
        for i in range(1, 2 * n + 2):
            sq = rep.gamma(i) * rep.gamma(i)
            if i == n + 1:
                ok = all(sq.rows[a][b] == (ctx.scalar_one() if a == b else zero)
                         for a in range(size) for b in range(size))
            else:
                ok = all(sq.rows[a][b] == zero
                         for a in range(size) for b in range(size))
            assert ok, (n, i)


def test_trace_formula_exhaustive_n1():
    rep = gamma_rep(1)
    ctx = rep.ctx
    for idx in product((1, 2, 3), repeat=3):
        assert clifford_trace(rep, idx) == \
            epsilon_qinv(ctx, idx).scale(2), idx
    assert clifford_trace(rep, (1, 2, 3)) == ctx.scalar(2)
    assert clifford_trace(rep, (1, 3, 2)) == ctx.scalar(-2)
    assert clifford_trace(rep, (1, 1, 2)).is_zero()
    with pytest.raises(ValueError):
        clifford_trace(rep, (1, 2))


def test_trace_formula_random_n2():
    rep = gamma_rep(2)
    ctx = rep.ctx
    rng = random.Random(1)
    for _ in range(500):
        idx = tuple(rng.randint(1, 5) for _ in range(5))
        assert clifford_trace(rep, idx) == epsilon_qinv(ctx, idx).scale(4)


def test_projector_structure_n1():
    rep, e = instanton_projector(1)
    ctx = rep.ctx
    half = Fraction(1, 2)
    assert e.rows[0][0] == (Element.one(ctx) + Element.x(ctx, 2)).scale(half)
    assert e.rows[0][1] == Element.x(ctx, 1).scale(half) * ctx.sqrt2()
    assert e.rows[1][0] == Element.x(ctx, 3).scale(half) * ctx.sqrt2()
    assert e.rows[1][1] == (Element.one(ctx) - Element.x(ctx, 2)).scale(half)


def test_projector_idempotent_and_hermitian():
    for n in (1, 2):
        rep, e = instanton_projector(n)
        assert is_projector(e)
        size = 2 ** n
        for a in range(size):
            for b in range(size):
                assert e.rows[a][b].star() == e.rows[b][a]


def test_projector_trace_rank_at_north_pole():
    # n = 1: the fibre rank is 1; evaluating Tr e at the pole x2 = 1
    rep, e = instanton_projector(1)
    ctx = rep.ctx
    tr = (e.rows[0][0] + e.rows[1][1])
    assert tr == Element.one(ctx)  # 2^{n-1} for n = 1
    north = {1: 0.0, 2: 1.0, 3: 0.0}
    val = 0.0
    for (exps, _), coeff in tr.terms.items():
        term = coeff.eval([0.0] * ctx.nparams).real
        for a, p in enumerate(exps, start=1):
            term *= north[a] ** p
        val += term
    assert abs(val - 1.0) < 1e-12


def test_curvature_antihermitian():
    for n in (1, 2):
        rep, e = instanton_projector(n)
        f = curvature(e)
        size = 2 ** n
        for a in range(size):
            for b in range(size):
                assert sphere_equal(f.rows[a][b].star(), -f.rows[b][a]), (n, a, b)


def test_curvature_lives_on_the_module():
    for n in (1, 2):
        rep, e = instanton_projector(n)
        f = curvature(e)
        ef, fe = e * f, f * e
        size = 2 ** n
        for a in range(size):
            for b in range(size):
                assert sphere_equal(ef.rows[a][b], f.rows[a][b])
                assert sphere_equal(fe.rows[a][b], f.rows[a][b])


def test_curvature_requires_projector():
    ctx = DeformationContext(3)
    bad = Matrix([[Element.x(ctx, 1), Element.zero(ctx)],
                  [Element.zero(ctx), Element.zero(ctx)]])
    with pytest.raises(ValueError):
        curvature(bad)


def test_classical_monopole_curvature_against_chart_computation():
    """The q = 1 curvature of the 2-sphere projector, evaluated and pulled
    back in a coordinate chart, matches an independent sympy computation."""
    import sympy as sp

    ctx = DeformationContext(3, commutative=True)
    rep, e = instanton_projector(1, ctx)
    f_engine = curvature(e)

    theta, phi = sp.symbols("theta phi", real=True)
    rt2 = sp.sqrt(2)
    v = {1: (sp.sin(theta) * sp.cos(phi) + sp.I * sp.sin(theta) * sp.sin(phi)) / rt2,
         2: sp.cos(theta),
         3: (sp.sin(theta) * sp.cos(phi) - sp.I * sp.sin(theta) * sp.sin(phi)) / rt2}
    e_cl = [[(1 + v[2]) / 2, rt2 * v[1] / 2],
            [rt2 * v[3] / 2, (1 - v[2]) / 2]]

    def wedge(a, b):
        # one-forms as (d theta, d phi) coefficient pairs
        return a[0] * b[1] - a[1] * b[0]

    de = [[(sp.diff(e_cl[i][j], theta), sp.diff(e_cl[i][j], phi))
           for j in range(2)] for i in range(2)]
    dede = [[sum(wedge(de[i][k], de[k][j]) for k in range(2))
             for j in range(2)] for i in range(2)]
    f_cl = [[sum(e_cl[i][k] * dede[k][j] for k in range(2))
             for j in range(2)] for i in range(2)]

    rng = random.Random(3)
    for _ in range(6):
        th_v = rng.uniform(0.3, 2.8)
        ph_v = rng.uniform(0.0, 6.2)
        subs = {theta: th_v, phi: ph_v}
        # tangent map: dx^a = (dv_a/dtheta) dtheta + (dv_a/dphi) dphi
        jac = {a: (complex(sp.diff(v[a], theta).evalf(subs=subs)),
                   complex(sp.diff(v[a], phi).evalf(subs=subs)))
               for a in (1, 2, 3)}
        pt = {a: complex(v[a].evalf(subs=subs)) for a in (1, 2, 3)}
        for i in range(2):
            for j in range(2):
                got = 0j
                for (exps, dxs), coeff in f_engine.rows[i][j].terms.items():
                    z = coeff.eval(()).real + 1j * coeff.eval(()).imag
                    for a, p in enumerate(exps, start=1):
                        z *= pt[a] ** p
                    a, b = dxs
                    z *= jac[a][0] * jac[b][1] - jac[a][1] * jac[b][0]
                    got += z
                want = complex(f_cl[i][j].evalf(subs=subs))
                assert abs(got - want) < 1e-9, (i, j, got, want)


def test_character_vanishes_on_later_units():
    ctx = DeformationContext(3)
    rng = random.Random(4)
    for _ in range(5):
        a = reduce_mod_c(random_monomial(ctx, rng, 2))
        assert character_tau([Element.one(ctx), a, Element.one(ctx)]).is_zero()
        assert character_tau([a, Element.one(ctx), a]).is_zero()


def test_character_cyclicity():
    ctx = DeformationContext(3)
    rng = random.Random(5)
    for _ in range(12):
        funcs = [reduce_mod_c(random_monomial(ctx, rng, 2)) for _ in range(3)]
        t1 = character_tau(funcs)
        t2 = character_tau([funcs[-1]] + funcs[:-1])
        assert t1 == t2


def test_character_arity_guard():
    ctx = DeformationContext(3)
    with pytest.raises(ValueError):
        character_tau([Element.one(ctx)])


def test_charge_integral_values():
    for n in (1, 2):
        ctx = DeformationContext(2 * n + 1)
        want = ctx.i_power(n).scale(
            Fraction(math.factorial(2 * n), 2 ** (n + 1)))
        assert charge_integral(n) == want


def test_charge_is_one():
    for n in (1, 2):
        ctx = DeformationContext(2 * n + 1)
        assert charge(n) == ctx.scalar_one()


def test_charge_is_one_with_three_parameters():
    # beyond the required range: the 6-sphere carries three symbolic phases
    ctx = DeformationContext(7)
    assert ctx.nparams == 3
    assert charge(3, ctx) == ctx.scalar_one()


def test_charge_via_curvature_power():
    for n in (1, 2):
        ctx = DeformationContext(2 * n + 1)
        assert charge_from_curvature(n) == ctx.scalar_one()


def test_discarded_boundary_term_vanishes():
    for n in (1, 2):
        rep, e = instanton_projector(n)
        de = e.map(lambda f: f.d())
        acc = de * de
        for _ in range(n - 1):
            acc = acc * de * de
        assert integrate_form(acc.trace()).is_zero()


def test_charge_equals_character_of_tensor_trace():
    # charge via the multi-index character sum, n = 1
    n = 1
    rep, e = instanton_projector(n)
    ctx = rep.ctx
    total = ctx.scalar_zero()
    size = 2 ** n
    for a0 in range(size):
        for a1 in range(size):
            for a2 in range(size):
                total = total + character_tau(
                    [e.rows[a0][a1], e.rows[a1][a2], e.rows[a2][a0]])
    assert total.scale(Fraction(1, math.factorial(n))) == ctx.scalar_one()
