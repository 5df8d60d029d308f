"""Noncommutative normal ordering for the twisted Euclidean plane.

Generators x^1..x^D and differentials dx^1..dx^D obey

    x^a x^b   =  q_{ab} x^b x^a
    dx^a x^b  =  q_{ab} x^b dx^a
    dx^a dx^b = -q_{ab} dx^b dx^a          (so dx^a dx^a = 0)

The canonical word has all x factors first in ascending index order, then the
dx factors as a strictly ascending set.  A monomial is the pair (x exponents,
dx index set); an element is a sparse scalar combination of monomials.
"""

from __future__ import annotations

from fractions import Fraction

from .qphase import DeformationContext, ExactScalar

__all__ = ["Element", "Monomial", "normal_order"]

# A monomial key is (xexp, dxs): a tuple of D non-negative ints and a strictly
# ascending tuple of indices in 1..D.
Monomial = tuple[tuple[int, ...], tuple[int, ...]]


def _mono_mul(ctx: DeformationContext, m1: Monomial, m2: Monomial):
    """Normal-order the concatenation of two canonical monomials.

    Returns ``(exps, sign, key)`` where the product equals
    sign * (phase with the given exponents) * key, or ``None`` when a
    differential index repeats.
    """
    (e1, s1), (e2, s2) = m1, m2
    table = ctx._pair_table
    acc = [0] * ctx.nparams
    # dx block of m1 moves right past the x block of m2: dx^a x^b -> q_{ab}
    for a in s1:
        for b, f in enumerate(e2, start=1):
            if f:
                red = table[(a, b)]
                if red is not None:
                    acc[red[0]] += red[1] * f
    # merge x exponents: each x^b of m2 passes the x^a of m1 with a > b
    for b, f in enumerate(e2, start=1):
        if f:
            for a in range(b + 1, ctx.dim + 1):
                ea = e1[a - 1]
                if ea:
                    red = table[(a, b)]
                    if red is not None:
                        acc[red[0]] += red[1] * ea * f
    # merge dx sets: count inversions between s1 and s2, phase -q_{ab} each
    sign = 1
    if s1 and s2:
        for a in s1:
            for b in s2:
                if a == b:
                    return None
                if a > b:
                    sign = -sign
                    red = table[(a, b)]
                    if red is not None:
                        acc[red[0]] += red[1]
        dxs = tuple(sorted(s1 + s2))
    else:
        dxs = s1 or s2
    exps = tuple(x + y for x, y in zip(e1, e2))
    return tuple(acc), sign, (exps, dxs)


class Element:
    """Sparse sum of canonical monomials with exact scalar coefficients."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: DeformationContext, terms: dict | None = None):
        self.ctx = ctx
        self.terms: dict[Monomial, ExactScalar] = {}
        if terms:
            for k, v in terms.items():
                if v:
                    self.terms[k] = v

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, ctx) -> "Element":
        return cls(ctx)

    @classmethod
    def one(cls, ctx) -> "Element":
        return cls.from_scalar(ctx, ctx.scalar_one())

    @classmethod
    def from_scalar(cls, ctx, s) -> "Element":
        if isinstance(s, (int, Fraction)):
            s = ctx.scalar(s)
        key = ((0,) * ctx.dim, ())
        return cls(ctx, {key: s})

    @classmethod
    def x(cls, ctx, a: int, power: int = 1) -> "Element":
        ctx.check_index(a)
        if power < 0:
            raise ValueError("negative coordinate power")
        exps = [0] * ctx.dim
        exps[a - 1] = power
        return cls(ctx, {(tuple(exps), ()): ctx.scalar_one()})

    @classmethod
    def dx(cls, ctx, a: int) -> "Element":
        ctx.check_index(a)
        return cls(ctx, {((0,) * ctx.dim, (a,)): ctx.scalar_one()})

    @classmethod
    def monomial(cls, ctx, key: Monomial, coeff=None) -> "Element":
        return cls(ctx, {key: coeff if coeff is not None else ctx.scalar_one()})

    # -- ring structure --------------------------------------------------------

    def _check_ctx(self, other: "Element"):
        if self.ctx != other.ctx:
            raise ValueError("elements live over different contexts")

    def __add__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        self._check_ctx(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            u = out.get(k)
            w = v if u is None else u + v
            if w:
                out[k] = w
            elif u is not None:
                del out[k]
        res = Element.__new__(Element)
        res.ctx, res.terms = self.ctx, out
        return res

    def __neg__(self) -> "Element":
        res = Element.__new__(Element)
        res.ctx = self.ctx
        res.terms = {k: -v for k, v in self.terms.items()}
        return res

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ExactScalar)):
            return self.scale(other)
        if not isinstance(other, Element):
            return NotImplemented
        self._check_ctx(other)
        ctx = self.ctx
        out: dict[Monomial, ExactScalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                r = _mono_mul(ctx, m1, m2)
                if r is None:
                    continue
                shift, sign, key = r
                v = (c1 * c2).shifted(shift, sign)
                u = out.get(key)
                w = v if u is None else u + v
                if w:
                    out[key] = w
                elif u is not None:
                    del out[key]
        res = Element.__new__(Element)
        res.ctx, res.terms = ctx, out
        return res

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, ExactScalar)):
            return self.scale(other)  # scalars are central
        return NotImplemented

    def scale(self, s) -> "Element":
        if isinstance(s, (int, Fraction)):
            if not s:
                return Element(self.ctx)
            s = Fraction(s)
            res = Element.__new__(Element)
            res.ctx = self.ctx
            res.terms = {k: v.scale(s) for k, v in self.terms.items()}
            return res
        res = Element.__new__(Element)
        res.ctx = self.ctx
        res.terms = {}
        for k, v in self.terms.items():
            w = v * s
            if w:
                res.terms[k] = w
        return res

    # -- calculus -----------------------------------------------------------

    def d(self) -> "Element":
        """Exterior derivative, graded Leibniz with d(x^a) = dx^a."""
        ctx = self.ctx
        table = ctx._pair_table
        out: dict[Monomial, ExactScalar] = {}
        for (exps, dxs), coeff in self.terms.items():
            for b in range(1, ctx.dim + 1):
                eb = exps[b - 1]
                if not eb or b in dxs:
                    continue
                acc = [0] * ctx.nparams
                # dx^b exits the x block rightward: past x^a for a > b
                for a in range(b + 1, ctx.dim + 1):
                    ea = exps[a - 1]
                    if ea:
                        red = table[(b, a)]
                        if red is not None:
                            acc[red[0]] += red[1] * ea
                # then into the dx set: past dx^s for s < b, sign each time
                sign = 1
                for s in dxs:
                    if s < b:
                        sign = -sign
                        red = table[(b, s)]
                        if red is not None:
                            acc[red[0]] += red[1]
                    else:
                        break
                new_exps = list(exps)
                new_exps[b - 1] -= 1
                key = (tuple(new_exps), tuple(sorted(dxs + (b,))))
                v = coeff.shifted(tuple(acc), sign).scale(eb)
                u = out.get(key)
                w = v if u is None else u + v
                if w:
                    out[key] = w
                elif u is not None:
                    del out[key]
        res = Element.__new__(Element)
        res.ctx, res.terms = ctx, out
        return res

    def star(self) -> "Element":
        """Conjugation: antilinear, x^a -> x^a', dx^a -> dx^a', and on
        products star(uv) = (-1)^{|u||v|} star(v) star(u)."""
        ctx = self.ctx
        table = ctx._pair_table
        out: dict[Monomial, ExactScalar] = {}
        for (exps, dxs), coeff in self.terms.items():
            k = len(dxs)
            pexps = tuple(exps[ctx.dim - a] for a in range(1, ctx.dim + 1))
            pdxs = tuple(sorted(ctx.dim + 1 - s for s in dxs))
            acc = [0] * ctx.nparams
            # primed x block commutes left through the primed dx block
            for a in pdxs:
                for b, f in enumerate(pexps, start=1):
                    if f:
                        red = table[(a, b)]
                        if red is not None:
                            acc[red[0]] += red[1] * f
            sign = -1 if (k * (k - 1) // 2) % 2 else 1
            v = coeff.conj().shifted(tuple(acc), sign)
            key = (pexps, pdxs)
            u = out.get(key)
            w = v if u is None else u + v
            if w:
                out[key] = w
            elif u is not None:
                del out[key]
        res = Element.__new__(Element)
        res.ctx, res.terms = ctx, out
        return res

    # -- structure queries ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash((self.ctx,
                     frozenset((k, v) for k, v in self.terms.items())))

    def form_degree(self) -> int:
        """Common form degree; raises on mixed-degree input."""
        degs = {len(dxs) for (_, dxs) in self.terms}
        if not degs:
            return 0
        if len(degs) > 1:
            raise ValueError(f"element has mixed form degrees {sorted(degs)}")
        return degs.pop()

    def form_degrees(self) -> set[int]:
        return {len(dxs) for (_, dxs) in self.terms}

    def x_degree(self) -> int:
        return max((sum(e) for (e, _) in self.terms), default=0)

    def homogeneous_part(self, form_deg: int) -> "Element":
        return Element(self.ctx, {k: v for k, v in self.terms.items()
                                  if len(k[1]) == form_deg})

    def scalar_part(self) -> ExactScalar:
        """Coefficient of the unit monomial."""
        key = ((0,) * self.ctx.dim, ())
        return self.terms.get(key, self.ctx.scalar_zero())

    def constant_term_only(self) -> bool:
        key = ((0,) * self.ctx.dim, ())
        return set(self.terms) <= {key}

    def collapse_phases(self) -> "Element":
        out = Element(self.ctx)
        for k, v in self.terms.items():
            w = v.collapse_phases()
            if w:
                out.terms[k] = w
        return out

    def conj_coefficients(self) -> "Element":
        res = Element.__new__(Element)
        res.ctx = self.ctx
        res.terms = {k: v.conj() for k, v in self.terms.items()}
        return res

    # -- printing -----------------------------------------------------------

    def __str__(self):
        from .exprio import format_element
        return format_element(self)

    def __repr__(self):
        return f"<Element D={self.ctx.dim}: {self}>"


def normal_order(ctx: DeformationContext, word) -> Element:
    """Canonical element for a word of generator symbols.

    Each symbol is ``("x", a)`` or ``("dx", a)``; the word is multiplied out
    left to right, accumulating the exchange phases.
    """
    result = Element.one(ctx)
    for kind, a in word:
        if kind == "x":
            result = result * Element.x(ctx, a)
        elif kind == "dx":
            result = result * Element.dx(ctx, a)
        else:
            raise ValueError(f"unknown generator kind {kind!r}")
    return result
