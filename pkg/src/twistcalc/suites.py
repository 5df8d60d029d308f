"""Named verification suites behind the CLI: each runs a module's invariants.

Every case is (expression, expected, got); a report collects the failures.
Cases are generated deterministically from the seed, so identical seeds give
identical reports (wall time aside).
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, permutations, product

import numpy as np

from . import chern, oracle, sphere, tensorcalc
from .exprio import format_element
from .haar import haar_plane, lambda_coefficient, laplacian, partial_derivative
from .ncalg import Element
from .qphase import DeformationContext

SUITE_NAMES = ("qphase", "ncalg", "tensor", "haar", "sphere", "hodge",
               "chern", "oracle", "all")


@dataclass
class SuiteReport:
    suite: str
    cases: int = 0
    failures: list = field(default_factory=list)
    seed: int = 0
    wall_time_s: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self, include_wall_time: bool = True) -> dict:
        out = {
            "suite": self.suite,
            "cases": self.cases,
            "failures": self.failures,
            "seed": self.seed,
        }
        if include_wall_time:
            out["wall_time_s"] = round(self.wall_time_s, 3)
        return out


class _Runner:
    def __init__(self, report: SuiteReport):
        self.report = report

    def case(self, expression: str, ok: bool, expected="0", got="nonzero"):
        self.report.cases += 1
        if not ok:
            self.report.failures.append({
                "expression": expression,
                "expected": str(expected),
                "got": str(got),
            })

    def equal(self, expression: str, got, expected):
        self.case(expression, got == expected, expected=expected, got=got)

    def zero(self, expression: str, el):
        self.case(expression, not el, expected="0",
                  got=str(el) if el else "0")


def random_element(ctx, rng, xdeg=2, form_deg=0, nterms=3, with_phases=True):
    """Random sparse element: small rational coefficients, bounded degrees."""
    out = Element.zero(ctx)
    for _ in range(nterms):
        e = [0] * ctx.dim
        for _ in range(rng.randint(0, xdeg)):
            e[rng.randrange(ctx.dim)] += 1
        s = tuple(sorted(rng.sample(range(1, ctx.dim + 1), form_deg)))
        c = ctx.scalar(Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
        if with_phases and ctx.nparams:
            sh = [0] * ctx.nparams
            sh[rng.randrange(ctx.nparams)] = rng.randint(-2, 2)
            c = c.shifted(tuple(sh))
        out = out + Element(ctx, {(tuple(e), s): c})
    return out


def random_monomial(ctx, rng, xdeg=3):
    e = [0] * ctx.dim
    for _ in range(rng.randint(0, xdeg)):
        e[rng.randrange(ctx.dim)] += 1
    return Element(ctx, {(tuple(e), ()): ctx.scalar_one()})


def basis_form(ctx, dxs) -> Element:
    return Element(ctx, {((0,) * ctx.dim, tuple(dxs)): ctx.scalar_one()})


# ---------------------------------------------------------------- suites --

def _suite_qphase(r: _Runner, dim: int, rng: random.Random, moduli):
    for d in range(1, 9):
        ctx = DeformationContext(d)
        for p in range(1, d + 1):
            acc = [0] * ctx.nparams
            for i in range(1, d + 1):
                red = ctx.pair_reduction(i, p)
                if red is not None:
                    acc[red[0]] += red[1]
            r.case(f"D={d}: prod_i q_(i,{p}) = 1", not any(acc),
                   got=str(acc))
        for a in range(1, d + 1):
            for b in range(1, d + 1):
                ab = ctx.reduce_pair(a, b).exponents
                ba = ctx.reduce_pair(b, a).exponents
                pp = ctx.reduce_pair(d + 1 - a, d + 1 - b).exponents
                r.case(f"D={d}: q_({a},{b}) q_({b},{a}) = 1",
                       all(x + y == 0 for x, y in zip(ab, ba)))
                r.case(f"D={d}: q_({a},{b}) = q_({a}',{b}')", ab == pp)
    ctx = DeformationContext(5)
    r.equal("D=5: q_(4,5)", ctx.reduce_pair(4, 5).exponents, (-1,))
    r.equal("D=5: q_(3,1) trivial", ctx.reduce_pair(3, 1).exponents, (0,))
    r.equal("D=5: q_(1,2) generator", ctx.reduce_pair(1, 2).exponents, (1,))
    s = ctx.i_unit() * ctx.q_power(1, 2)
    r.equal("conj(i q) = -i q^-1", s.conj(),
            (-ctx.i_unit()) * ctx.q_power(1, 2, -1))
    for _ in range(20):
        c = ctx.scalar(Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
        c = c + ctx.i_unit().scale(rng.randint(-2, 2))
        c = c.shifted((rng.randint(-2, 2),))
        r.equal("conj(conj(s)) = s", c.conj().conj(), c)
        th = [rng.uniform(0, 2 * math.pi)]
        r.case("eval(conj s) = conj(eval s)",
               abs(c.conj().eval(th) - c.eval(th).conjugate()) < 1e-12)
    r.case("eval(q, pi) = -1",
           abs(ctx.q_power(1, 2).eval([math.pi]) + 1.0) < 1e-12)
    r.zero("q_(1,2) q_(2,1) - 1", ctx.q_power(1, 2) * ctx.q_power(2, 1)
           - ctx.scalar_one())


def _suite_ncalg(r: _Runner, dim: int, rng: random.Random, moduli):
    ctx = DeformationContext(max(dim, 2))
    x, dx = Element.x, Element.dx
    r.equal("x2*x1 = q^-1 x1x2", x(ctx, 2) * x(ctx, 1),
            (x(ctx, 1) * x(ctx, 2)) * ctx.q_power(2, 1))
    r.zero("dx1^dx1", dx(ctx, 1) * dx(ctx, 1))
    if ctx.dim == 5:
        r.equal("dx3*x1 = x1*dx3", dx(ctx, 3) * x(ctx, 1),
                x(ctx, 1) * dx(ctx, 3))
    r.equal("d(x1) = dx1", x(ctx, 1).d(), dx(ctx, 1))
    f = x(ctx, 1) * x(ctx, 2)
    r.equal("Leibniz on x1x2", f.d(),
            x(ctx, 1).d() * x(ctx, 2) + x(ctx, 1) * x(ctx, 2).d())
    # confluence: word product independent of association, random words
    for d in (2, 3, 6):
        c = DeformationContext(d)
        for _ in range(12):
            word = [("dx" if rng.random() < 0.4 else "x", rng.randint(1, d))
                    for _ in range(rng.randint(2, 8))]
            left = Element.one(c)
            for kind, a in word:
                g = Element.x(c, a) if kind == "x" else Element.dx(c, a)
                left = left * g
            right = Element.one(c)
            for kind, a in reversed(word):
                g = Element.x(c, a) if kind == "x" else Element.dx(c, a)
                right = g * right
            r.equal(f"D={d} confluence of {word}", left, right)
    # basis dimension 2^D: degree-k wedge monomials reorder onto C(D,k) keys
    c = DeformationContext(min(dim, 5))
    for k in range(0, c.dim + 1):
        keys = set()
        for idx in permutations(range(1, c.dim + 1), k):
            el = Element.one(c)
            for a in idx:
                el = el * Element.dx(c, a)
            keys |= {key[1] for key in el.terms}
        r.equal(f"degree-{k} basis count C({c.dim},{k})", len(keys),
                math.comb(c.dim, k))
    # volume form central and real
    for d in range(2, 7):
        c = DeformationContext(d)
        v = tensorcalc.volume_element(c)
        central = all(Element.x(c, a) * v == v * Element.x(c, a)
                      for a in range(1, d + 1))
        r.case(f"D={d}: volume form central", central)
        r.equal(f"D={d}: volume form real", v.star(), v)
    # star examples and properties
    c5 = DeformationContext(5)
    r.equal("star(x1) = x5", Element.x(c5, 1).star(), Element.x(c5, 5))
    r.equal("star(dx1^dx2) = -dx4^dx5",
            (Element.dx(c5, 1) * Element.dx(c5, 2)).star(),
            -(Element.dx(c5, 4) * Element.dx(c5, 5)))
    for _ in range(15):
        k = rng.randint(0, 3)
        a = random_element(c5, rng, 2, k, 2)
        r.equal("star(star(f)) = f", a.star().star(), a)
        r.equal("star(d f) = d(star f)", a.d().star(), a.star().d())
        r.zero("dd f", a.d().d())
    text_el = random_element(c5, rng, 2, 1, 3)
    from .exprio import parse_expr
    r.equal("print/parse round trip", parse_expr(c5, format_element(text_el)),
            text_el)


def _suite_tensor(r: _Runner, dim: int, rng: random.Random, moduli):
    # braid equation and involutivity, exhaustive per dimension
    for d in range(2, 7):
        ctx = DeformationContext(d)
        ok_sq = True
        for t in product(range(1, d + 1), repeat=2):
            u, red = tensorcalc.apply_lambda(ctx, t, 0)
            v, red2 = tensorcalc.apply_lambda(ctx, u, 0)
            acc = [0] * ctx.nparams
            for rr in (red, red2):
                if rr is not None:
                    acc[rr[0]] += rr[1]
            if v != t or any(acc):
                ok_sq = False
        r.case(f"D={d}: braid matrix squares to identity", ok_sq)
        ok_braid = True
        for t in product(range(1, d + 1), repeat=3):
            a = _apply_word(ctx, t, (0, 1, 0))
            b = _apply_word(ctx, t, (1, 0, 1))
            if a != b:
                ok_braid = False
        r.case(f"D={d}: braid equation", ok_braid)
    # W recursion vs brute force
    d = min(dim, 5)
    ctx = DeformationContext(d)
    for k in (2, 3):
        for _ in range(12):
            up = tuple(rng.randint(1, d) for _ in range(k))
            lo = tuple(rng.randint(1, d) for _ in range(k))
            r.equal(f"W^{up}_{lo} recursion = permutation sum",
                    tensorcalc.antisym_w(ctx, up, lo),
                    tensorcalc.antisym_w_bruteforce(ctx, up, lo))
    for _ in range(4):
        up = tuple(rng.randint(1, d) for _ in range(4))
        lo = tuple(rng.randint(1, d) for _ in range(4))
        r.equal(f"W^{up}_{lo} recursion = permutation sum (k=4)",
                tensorcalc.antisym_w(ctx, up, lo),
                tensorcalc.antisym_w_bruteforce(ctx, up, lo))
    # contraction identity, exhaustive small / random D=5
    for d in (3, 4):
        ctx = DeformationContext(d)
        full = range(1, d + 1)
        ok = True
        for k in range(0, d + 1):
            for up in product(full, repeat=k):
                for lo in product(full, repeat=k):
                    s = ctx.scalar_zero()
                    for l in product(full, repeat=d - k):
                        s = s + tensorcalc.epsilon_q(ctx, up + l) * \
                            tensorcalc.epsilon_qinv(ctx, lo + l)
                    if s != tensorcalc.antisym_w(ctx, up, lo).scale(
                            math.factorial(d - k)):
                        ok = False
        r.case(f"D={d}: epsilon contraction = (D-k)! W, exhaustive", ok)
    ctx = DeformationContext(5)
    full = range(1, 6)
    for _ in range(25):
        k = rng.randint(1, 4)
        up = tuple(rng.randint(1, 5) for _ in range(k))
        lo = tuple(rng.randint(1, 5) for _ in range(k))
        s = ctx.scalar_zero()
        for l in product(full, repeat=5 - k):
            s = s + tensorcalc.epsilon_q(ctx, up + l) * \
                tensorcalc.epsilon_qinv(ctx, lo + l)
        cyc = ctx.scalar_zero()
        for l in product(full, repeat=5 - k):
            cyc = cyc + tensorcalc.epsilon_q(ctx, l + up) * \
                tensorcalc.epsilon_qinv(ctx, l + lo)
        w = tensorcalc.antisym_w(ctx, up, lo).scale(math.factorial(5 - k))
        r.equal(f"D=5 contraction {up}|{lo}", s, w)
        r.equal(f"D=5 cyclic contraction {up}|{lo}", cyc, w)
    # partial traces
    for d in (3, 4, 5):
        ctx = DeformationContext(d)
        ok1 = ok2 = True
        for k in (2, 3):
            for _ in range(8):
                up = tuple(rng.randint(1, d) for _ in range(k - 1))
                lo = tuple(rng.randint(1, d) for _ in range(k - 1))
                tr1 = ctx.scalar_zero()
                tr2 = ctx.scalar_zero()
                for m in range(1, d + 1):
                    tr1 = tr1 + tensorcalc.antisym_w(ctx, up + (m,), lo + (m,))
                    tr2 = tr2 + tensorcalc.antisym_w(ctx, (m,) + up, (m,) + lo)
                want = tensorcalc.antisym_w(ctx, up, lo).scale(d - k + 1)
                if tr1 != want:
                    ok1 = False
                if tr2 != want:
                    ok2 = False
        r.case(f"D={d}: trailing partial trace of W", ok1)
        r.case(f"D={d}: leading partial trace of W", ok2)
    # metric/epsilon lemma
    for d in (2, 3, 4, 5):
        ctx = DeformationContext(d)
        det_sign = -1 if (d // 2) % 2 else 1
        dets = ctx.scalar_zero()
        for idx in permutations(range(1, d + 1)):
            coef = tensorcalc.epsilon_q(ctx, idx)
            if all(idx[j - 1] == ctx.primed(j) for j in range(1, d + 1)):
                dets = dets + coef
        r.equal(f"D={d}: q-determinant of the metric", dets,
                ctx.scalar(det_sign))
        ok2 = ok3 = True
        for _ in range(12):
            idx = tuple(rng.sample(range(1, d + 1), d))
            primed = tuple(ctx.primed(a) for a in idx)
            lhs = tensorcalc.epsilon_q(ctx, primed)
            rhs = tensorcalc.epsilon_q(ctx, idx).scale(det_sign)
            if lhs != rhs:
                ok2 = False
            lhs3 = tensorcalc.epsilon_qinv(ctx, idx)
            rhs3 = tensorcalc.epsilon_q(ctx, tuple(reversed(idx))).scale(det_sign)
            if lhs3 != rhs3:
                ok3 = False
        r.case(f"D={d}: priming indices multiplies epsilon by det g", ok2)
        r.case(f"D={d}: inverse-phase epsilon = reversed epsilon det g", ok3)
    # mixed tensor/wedge pairing identity
    ctx = DeformationContext(min(dim, 5))
    d = ctx.dim
    for _ in range(15):
        k = rng.randint(1, 3)
        a_idx = tuple(rng.randint(1, d) for _ in range(k))
        i_idx = tuple(rng.randint(1, d) for _ in range(k))
        lhs = tensorcalc.antisym_w(
            ctx, tuple(reversed(i_idx)),
            tuple(ctx.primed(a) for a in reversed(a_idx)))
        rhs = tensorcalc.antisym_w(
            ctx, a_idx, tuple(ctx.primed(i) for i in i_idx))
        r.equal(f"wedge/tensor pairing symmetry {a_idx}|{i_idx}", lhs, rhs)


def _apply_word(ctx, t, word):
    acc = [0] * ctx.nparams
    for pos in word:
        t, red = tensorcalc.apply_lambda(ctx, t, pos)
        if red is not None:
            acc[red[0]] += red[1]
    return t, tuple(acc)


def _central(ctx):
    return sphere.central_quadric(ctx)


def _suite_haar(r: _Runner, dim: int, rng: random.Random, moduli):
    for d in (3, 4, dim):
        ctx = DeformationContext(d)
        one = Element.one(ctx)
        cc = _central(ctx)
        r.equal(f"D={d}: h(1) = 1", haar_plane(ctx, one), ctx.scalar_one())
        r.equal(f"D={d}: h(c) = 1", haar_plane(ctx, cc), ctx.scalar_one())
        for i in range(1, d + 1):
            f = Element.x(ctx, i) * Element.x(ctx, ctx.primed(i))
            r.equal(f"D={d}: h(x{i} x{i}*) = 1/{d}", haar_plane(ctx, f),
                    ctx.scalar(Fraction(1, d)))
        # well-definedness on a degree sweep
        cm1 = cc - one
        ok = True
        for total in range(0, 5):
            for combo in combinations_with_replacement(range(ctx.dim), total):
                e = [0] * ctx.dim
                for j in combo:
                    e[j] += 1
                m = Element(ctx, {(tuple(e), ()): ctx.scalar_one()})
                if haar_plane(ctx, cm1 * m):
                    ok = False
        r.case(f"D={d}: h((c-1) f) = 0 up to degree 4", ok)
        # trace property and reality
        ok_tr = ok_re = True
        for _ in range(40):
            f, g = random_monomial(ctx, rng), random_monomial(ctx, rng)
            if haar_plane(ctx, f * g) != haar_plane(ctx, g * f):
                ok_tr = False
            if haar_plane(ctx, f).conj() != haar_plane(ctx, f.star()):
                ok_re = False
        r.case(f"D={d}: h(fg) = h(gf)", ok_tr)
        r.case(f"D={d}: conj h(f) = h(f*)", ok_re)
        # positivity under numeric evaluation
        ok_pos = True
        for _ in range(10):
            f = random_element(ctx, rng, 2, 0, 2)
            s = haar_plane(ctx, f.star() * f)
            if s.conj() != s:
                ok_pos = False
            th = [rng.uniform(0, 2 * math.pi) for _ in range(ctx.nparams)]
            v = s.eval(th)
            if abs(v.imag) > 1e-9 or v.real < -1e-12:
                ok_pos = False
        r.case(f"D={d}: h(f* f) real and nonnegative", ok_pos)
        r.equal(f"D={d}: Delta(x1) = 0",
                laplacian(Element.x(ctx, 1)), Element.zero(ctx))
        ok_dd = True
        for _ in range(15):
            a, b = rng.randint(1, d), rng.randint(1, d)
            f = random_monomial(ctx, rng, 4)
            lhs = partial_derivative(ctx, a, partial_derivative(ctx, b, f))
            rhs = partial_derivative(
                ctx, b, partial_derivative(ctx, a, f)) * ctx.q_power(a, b)
            if lhs != rhs:
                ok_dd = False
        r.case(f"D={d}: derivative exchange relation", ok_dd)
    ctx = DeformationContext(5)
    r.equal("D=5: h(x3 x3) = 1/5",
            haar_plane(ctx, Element.x(ctx, 3, 2)), ctx.scalar(Fraction(1, 5)))
    r.equal("D=5: h(x1 x5) = 1/5",
            haar_plane(ctx, Element.x(ctx, 1) * Element.x(ctx, 5)),
            ctx.scalar(Fraction(1, 5)))
    r.equal("lambda_1(5) = 1/10", lambda_coefficient(5, 1), Fraction(1, 10))


def _suite_sphere(r: _Runner, dim: int, rng: random.Random, moduli):
    n_deg = dim - 1
    ctx = DeformationContext(dim)
    one = Element.one(ctx)
    cc = _central(ctx)
    dc = cc.d()
    vol_el = tensorcalc.volume_element(ctx)
    r.equal("reduce(c) = 1", sphere.reduce_mod_c(cc), one)
    r.zero("reduce((c-1) x2)",
           sphere.reduce_mod_c((cc - one) * Element.x(ctx, 2)))
    c3 = DeformationContext(3)
    g3 = Element.x(c3, 2, 2) + (Element.x(c3, 1) * Element.x(c3, 3)).scale(2)
    r.equal("D=3: reduce(x2^2 + 2 x1x3) = 1", sphere.reduce_mod_c(g3),
            Element.one(c3))
    ok = True
    for k in range(1, dim + 1):
        om = sphere.omega_form(ctx, k)
        for l in range(1, dim + 1):
            w = om * Element.dx(ctx, l)
            want = vol_el if l == k else Element.zero(ctx)
            if w != want:
                ok = False
    r.case("omega_k ^ dx^l = delta V", ok)
    vol_form = sphere.volume_form(ctx)
    r.equal("sum_k x^k omega_k ^ dc = 2 c V", vol_form * dc,
            (cc * vol_el).scale(2))
    r.equal("top_decompose(volume) = c", sphere.top_decompose(vol_form), cc)
    r.equal("integral of the volume = 1", sphere.integrate_form(vol_form),
            ctx.scalar_one())
    ok_st = True
    for _ in range(25):
        th = random_element(ctx, rng, 4, n_deg - 1, 3)
        if sphere.integrate_form(th.d()):
            ok_st = False
    r.case("Stokes: integral d(theta) = 0", ok_st)
    ok_tr = True
    for _ in range(10):
        a = sphere.reduce_mod_c(random_monomial(ctx, rng, 2))
        om = random_element(ctx, rng, 2, n_deg, 2)
        if sphere.integrate_form(a * om) != sphere.integrate_form(om * a):
            ok_tr = False
    r.case("integral[a w] = integral[w a]", ok_tr)
    ok_ri = True
    for _ in range(8):
        om = random_element(ctx, rng, 2, n_deg, 2)
        al = random_element(ctx, rng, 2, n_deg, 2)
        be = random_element(ctx, rng, 2, n_deg - 1, 2)
        pert = om + (cc - one) * al + dc * be
        if sphere.integrate_form(pert) != sphere.integrate_form(om):
            ok_ri = False
    r.case("integral independent of the representative", ok_ri)
    r.case("[c w] = [w]", sphere.sphere_equal(cc * vol_form, vol_form))
    r.case("[dc ^ beta] = 0", sphere.in_quotient_ideal(
        dc * random_element(ctx, rng, 2, 1, 2)))
    r.case("[volume] = [volume]", sphere.sphere_equal(vol_form, vol_form))
    r.case("[volume] != 0", not sphere.in_quotient_ideal(vol_form))
    ok_j = True
    for _ in range(4):
        k = rng.randint(0, n_deg - 1)
        memb = (cc - one) * random_element(ctx, rng, 1, k, 2)
        if not (sphere.in_quotient_ideal(memb.d())
                and sphere.in_quotient_ideal(memb.star())):
            ok_j = False
    r.case("J is a differential star ideal (samples)", ok_j)
    r.case("volume class is real",
           sphere.sphere_equal(vol_form.star(), vol_form))
    # Connes-Landi relations for the 4-sphere under the standard substitution
    if dim == 5:
        ok_cl = _connes_landi_relations()
        r.case("S^4 coordinate relations match the torus-sphere form", ok_cl)


def _connes_landi_relations():
    ctx = DeformationContext(5)
    x = lambda a: Element.x(ctx, a)
    q = ctx.q_power(1, 2)
    rel = [
        x(1) * x(2) - (x(2) * x(1)) * q,
        x(1) * x(4) - (x(4) * x(1)) * ctx.q_power(1, 2, -1),
        x(1) * x(5) - x(5) * x(1),
        x(2) * x(5) - (x(5) * x(2)) * q,
        x(4) * x(5) - (x(5) * x(4)) * ctx.q_power(1, 2, -1),
        x(2) * x(4) - x(4) * x(2),
    ]
    if any(rel_i for rel_i in rel):
        return False
    for a in range(1, 6):
        if x(3) * x(a) != x(a) * x(3):
            return False
    quad = sphere.reduce_mod_c(
        (x(1) * x(5) + x(2) * x(4)).scale(2) + Element.x(ctx, 3, 2))
    return quad == Element.one(ctx)


def _suite_hodge(r: _Runner, dim: int, rng: random.Random, moduli):
    # plane suite on full bases
    for d in range(2, dim + 1):
        ctx = DeformationContext(d)
        v = tensorcalc.volume_element(ctx)
        one = Element.one(ctx)
        r.equal(f"D={d}: *1 = V", tensorcalc.hodge_plane(one), v)
        r.equal(f"D={d}: *V = 1", tensorcalc.hodge_plane(v), one)
        r.equal(f"D={d}: <V,V> = 1", tensorcalc.pairing_plane(v, v), one)
        ok4 = ok5 = ok6 = ok7 = ok8 = okdef = True
        for k in range(0, d + 1):
            sign = -1 if (k * (d - k)) % 2 else 1
            for s in combinations(range(1, d + 1), k):
                a = basis_form(ctx, s)
                sa = tensorcalc.hodge_plane(a)
                if tensorcalc.hodge_plane(sa) != a.scale(sign):
                    ok4 = False
                if tensorcalc.hodge_plane(a.star()) != sa.star():
                    ok8 = False
                for t in combinations(range(1, d + 1), k):
                    b = basis_form(ctx, t)
                    sb = tensorcalc.hodge_plane(b)
                    if a * sb != (sa * b).scale(sign):
                        ok5 = False
                    if tensorcalc.pairing_plane(a, b) != \
                            tensorcalc.pairing_plane(sa, sb):
                        ok6 = False
                    if a * sb != tensorcalc.pairing_plane(a, b) * v:
                        okdef = False
                for t in combinations(range(1, d + 1), d - k):
                    g = basis_form(ctx, t)
                    if tensorcalc.pairing_plane(sa, g) != \
                            tensorcalc.pairing_plane(a * g, v):
                        ok7 = False
        r.case(f"D={d}: ** = graded sign on all basis forms", ok4)
        r.case(f"D={d}: a^*b = sign *a^b", ok5)
        r.case(f"D={d}: <a,b> = <*a,*b>", ok6)
        r.case(f"D={d}: <*a,g> = <a^g,V>", ok7)
        r.case(f"D={d}: *(a*) = (*a)*", ok8)
        r.case(f"D={d}: defining relation a^*b = <a,b>V", okdef)
    # sphere suite
    n_deg = dim - 1
    ctx = DeformationContext(dim)
    vol_form = sphere.volume_form(ctx)
    one = Element.one(ctx)
    dc = _central(ctx).d()
    r.case(f"N={n_deg}: *1 = volume", sphere.sphere_equal(
        sphere.hodge_sphere(one), vol_form))
    r.case(f"N={n_deg}: *volume = 1", sphere.sphere_equal(
        sphere.hodge_sphere(vol_form), one))
    ok1p = ok4 = ok5 = ok6 = ok7 = ok8 = okdef = True
    for k in range(0, n_deg + 1):
        sign = -1 if (k * (n_deg - k)) % 2 else 1
        for s in combinations(range(1, dim + 1), k):
            th = basis_form(ctx, s)
            sth = sphere.hodge_sphere(th)
            alt = tensorcalc.hodge_plane(th * dc).scale(
                Fraction((-1) ** (n_deg - k), 2))
            if not sphere.sphere_equal(sth, alt):
                ok1p = False
            if not sphere.sphere_equal(
                    sphere.hodge_sphere(sth), th.scale(sign)):
                ok4 = False
            if not sphere.sphere_equal(
                    sphere.hodge_sphere(th.star()), sth.star()):
                ok8 = False
            for t in combinations(range(1, dim + 1), k):
                et = basis_form(ctx, t)
                set_ = sphere.hodge_sphere(et)
                if not sphere.sphere_equal(th * set_, (sth * et).scale(sign)):
                    ok5 = False
                if not sphere.sphere_equal(
                        sphere.pairing_sphere(th, et),
                        sphere.pairing_sphere(sth, set_)):
                    ok6 = False
                if not sphere.sphere_equal(
                        th * set_, sphere.pairing_sphere(th, et) * vol_form):
                    okdef = False
            for t in combinations(range(1, dim + 1), n_deg - k):
                nu = basis_form(ctx, t)
                if not sphere.sphere_equal(
                        sphere.pairing_sphere(sth, nu),
                        sphere.pairing_sphere(th * nu, vol_form)):
                    ok7 = False
    r.case(f"N={n_deg}: explicit star = star through the normal", ok1p)
    r.case(f"N={n_deg}: ** = graded sign", ok4)
    r.case(f"N={n_deg}: t^*e = sign *t^e", ok5)
    r.case(f"N={n_deg}: <t,e> = <*t,*e>", ok6)
    r.case(f"N={n_deg}: <*t,n> = <t^n,volume>", ok7)
    r.case(f"N={n_deg}: *(t*) = (*t)*", ok8)
    r.case(f"N={n_deg}: defining relation", okdef)
    ok2 = True
    for _ in range(4):
        k = rng.randint(0, n_deg)
        th = basis_form(ctx, tuple(sorted(rng.sample(range(1, dim + 1), k))))
        f = random_element(ctx, rng, 1, 0, 2)
        h = random_element(ctx, rng, 1, 0, 2)
        if not sphere.sphere_equal(sphere.hodge_sphere(f * th * h),
                                   f * sphere.hodge_sphere(th) * h):
            ok2 = False
    r.case(f"N={n_deg}: function bilinearity of the star", ok2)


def _suite_chern(r: _Runner, dim: int, rng: random.Random, moduli, n=2):
    n_values = (1, 2) if n is None or n <= 2 else tuple(range(1, n + 1))
    for m in n_values:
        rep = chern.gamma_rep(m)
        r.case(f"n={m}: Clifford relations hold", rep.relations_hold())
    rep1 = chern.gamma_rep(1)
    ctx3 = rep1.ctx
    ok = all(chern.clifford_trace(rep1, idx)
             == tensorcalc.epsilon_qinv(ctx3, idx).scale(2)
             for idx in product((1, 2, 3), repeat=3))
    r.case("n=1: trace formula exhaustive", ok)
    rep2 = chern.gamma_rep(2)
    ctx5 = rep2.ctx
    ok = True
    for _ in range(100):
        idx = tuple(rng.randint(1, 5) for _ in range(5))
        if chern.clifford_trace(rep2, idx) != \
                tensorcalc.epsilon_qinv(ctx5, idx).scale(4):
            ok = False
    r.case("n=2: trace formula random", ok)
    for m in (1, 2):
        repm, e = chern.instanton_projector(m)
        r.case(f"n={m}: projector idempotent", chern.is_projector(e))
        size = 2 ** m
        herm = all(e.rows[a][b].star() == e.rows[b][a]
                   for a in range(size) for b in range(size))
        r.case(f"n={m}: projector hermitian", herm)
    rep, e = chern.instanton_projector(1)
    F = chern.curvature(e)
    anti = all(sphere.sphere_equal(F.rows[a][b].star(), -F.rows[b][a])
               for a in range(2) for b in range(2))
    r.case("n=1: curvature antihermitian", anti)
    for m in n_values:
        ctx = DeformationContext(2 * m + 1)
        got = chern.charge_integral(m)
        want = ctx.i_power(m).scale(
            Fraction(math.factorial(2 * m), 2 ** (m + 1)))
        r.equal(f"n={m}: integral Tr[e(de)^{2*m}] = (2n)! i^n / 2^(n+1)",
                got, want)
        r.equal(f"n={m}: charge = 1", chern.charge(m), ctx.scalar_one())
        # Stokes-discarded piece vanishes
        repm, em = chern.instanton_projector(m)
        de = em.map(lambda f: f.d())
        acc = de * de
        for _ in range(m - 1):
            acc = acc * de * de
        r.zero(f"n={m}: integral Tr[(de)^{2*m}]",
               Element.from_scalar(ctx, sphere.integrate_form(acc.trace())))
    r.equal("n=1: charge via curvature", chern.charge_from_curvature(1),
            DeformationContext(3).scalar_one())
    # cyclicity of the character on random monomial tuples (N = 2)
    ctx3 = DeformationContext(3)
    ok_cyc = True
    for _ in range(10):
        funcs = [sphere.reduce_mod_c(random_monomial(ctx3, rng, 2))
                 for _ in range(3)]
        t1 = chern.character_tau(funcs)
        t2 = chern.character_tau([funcs[-1]] + funcs[:-1])
        if t1 != t2:
            ok_cyc = False
    r.case("N=2: character invariant under the signed cyclic shift", ok_cyc)
    ok_unit = all(
        not chern.character_tau([Element.one(ctx3),
                                 random_monomial(ctx3, rng, 2),
                                 Element.one(ctx3)])
        for _ in range(3))
    r.case("tau vanishes when a later entry is 1", ok_unit)


def _suite_oracle(r: _Runner, dim: int, rng: random.Random, moduli):
    ctx = DeformationContext(dim)
    seed = rng.randint(0, 10 ** 6)
    model = oracle.TorusRep(ctx, moduli=moduli, rng=random.Random(seed))
    ok = True
    for a in range(1, dim + 1):
        ua = model.unitaries[a]
        up = model.unitaries[ctx.primed(a)]
        if not np.allclose(up, ua.conj().T, atol=1e-12):
            ok = False
        for b in range(1, dim + 1):
            ub = model.unitaries[b]
            z = model.eval_scalar(ctx.q_power(a, b))
            if not np.allclose(ua @ ub, z * (ub @ ua), atol=1e-12):
                ok = False
    r.case("torus unitaries realise the phases", ok)
    prng = random.Random(seed + 1)
    pt = oracle.sphere_sample(ctx, prng)
    data = model.eval_element(_central(ctx), pt)
    r.case("c evaluates to the identity on sphere samples",
           bool(np.allclose(data[()], np.eye(model.size), atol=1e-12)))
    ok_h = True
    for _ in range(20):
        f = random_element(ctx, prng, 2, 1, 2)
        g = random_element(ctx, prng, 2, 1, 2)
        p = oracle.plane_sample(ctx, prng)
        lhs = model.eval_element(f * g, p)
        d1 = model.eval_element(f, p)
        d2 = model.eval_element(g, p)
        rhs: dict = {}
        for s1, m1 in d1.items():
            for s2, m2 in d2.items():
                if set(s1) & set(s2):
                    continue
                inv = sum(1 for x in s1 for y in s2 if x > y)
                term = ((-1) ** inv) * (m1 @ m2)
                key = tuple(sorted(s1 + s2))
                rhs[key] = rhs.get(key, 0) + term
        for key in set(lhs) | set(rhs):
            a = lhs.get(key)
            b = rhs.get(key)
            a = a if a is not None else np.zeros((model.size, model.size))
            b = b if b is not None else np.zeros((model.size, model.size))
            if not np.allclose(a, b, atol=1e-8):
                ok_h = False
    r.case("evaluation is an algebra homomorphism (sampled)", ok_h)
    x1, x2 = Element.x(ctx, 1), Element.x(ctx, 2)
    rel = x1 * x2 - (x2 * x1) * ctx.q_power(1, 2)
    r.case("defining relation vanishes in the model",
           oracle.check_element(rel, seed=seed, points=8, moduli=moduli))
    r.case("check(0) = true", oracle.check_element(Element.zero(ctx),
                                                   seed=seed, moduli=moduli))
    r.case("check(x1) = false",
           not oracle.check_element(Element.x(ctx, 1), seed=seed, points=8,
                                    moduli=moduli))
    cc = _central(ctx)
    memb = (cc - Element.one(ctx)) * random_element(ctx, prng, 2, 2, 2) \
        + cc.d() * random_element(ctx, prng, 2, 1, 2)
    r.case("perturbed representative has zero sphere class",
           oracle.check_sphere_class(memb, seed=seed, points=8, moduli=moduli))
    r.case("volume class does not vanish",
           not oracle.check_sphere_class(sphere.volume_form(ctx), seed=seed,
                                         points=8, moduli=moduli))


_SUITES = {
    "qphase": _suite_qphase,
    "ncalg": _suite_ncalg,
    "tensor": _suite_tensor,
    "haar": _suite_haar,
    "sphere": _suite_sphere,
    "hodge": _suite_hodge,
    "chern": _suite_chern,
    "oracle": _suite_oracle,
}


def _stable_seed(seed: int, name: str) -> int:
    import zlib
    return seed ^ zlib.crc32(name.encode())


def run_suite(name: str, dim: int = 5, n: int | None = None, seed: int = 42,
              moduli=None) -> SuiteReport:
    """Run one named suite (or 'all'); deterministic for a given seed."""
    if name not in SUITE_NAMES:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITE_NAMES}")
    report = SuiteReport(suite=name, seed=seed)
    runner = _Runner(report)
    started = time.time()
    names = [s for s in SUITE_NAMES if s != "all"] if name == "all" else [name]
    for nm in names:
        rng = random.Random(_stable_seed(seed, nm))
        fn = _SUITES[nm]
        if nm == "chern" and n is not None:
            fn(runner, dim, rng, moduli, n=n)
        else:
            fn(runner, dim, rng, moduli)
    report.wall_time_s = time.time() - started
    return report
