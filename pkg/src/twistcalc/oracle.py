"""Independent numeric model: classical sphere data x torus representations.

Phases become roots of unity, coordinates become classical values times
clock/shift unitaries, differentials become classical covectors times the
same unitaries.  Every symbolic identity of the engine is Laurent-polynomial
in the phases, so vanishing at enough distinct roots and sample points is an
independent (probabilistic, but sharply bounded) certificate.

Sphere-class identities are checked by pulling the evaluated form back to the
tangent space of the quadric c = 1 at each sample point, which kills exactly
the ideal J.
"""

from __future__ import annotations

import cmath
import math
import random
from itertools import combinations

import numpy as np

from .ncalg import Element
from .qphase import DeformationContext, ExactScalar

__all__ = [
    "TorusRep", "sphere_sample", "plane_sample",
    "check_identity", "check_element", "check_sphere_class", "check_scalar",
    "BatchChecker", "DEFAULT_TOL",
]

DEFAULT_TOL = 1e-9

_PRIMES = (13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59)


def _clock(m: int, zeta: complex) -> np.ndarray:
    return np.diag([zeta ** j for j in range(m)])


def _shift(m: int) -> np.ndarray:
    s = np.zeros((m, m), dtype=complex)
    for j in range(m):
        s[(j + 1) % m, j] = 1.0
    return s


class TorusRep:
    """Finite-dimensional unitaries U^a with U^a U^b = q_{ab}(roots) U^b U^a.

    One clock/shift slot per independent parameter (r, s): generator r acts
    as the clock, s as the shift, their primed partners as the inverses, and
    every other generator as the identity in that slot.
    """

    def __init__(self, ctx: DeformationContext, moduli=None, root_exps=None,
                 rng: random.Random | None = None):
        self.ctx = ctx
        nparams = ctx.nparams
        if moduli is None:
            moduli = _PRIMES[:nparams]
        moduli = list(moduli)[:nparams]
        if len(moduli) < nparams:
            raise ValueError(f"need {nparams} moduli, got {len(moduli)}")
        if rng is None:
            rng = random.Random(0)
        if root_exps is None:
            root_exps = [rng.choice([k for k in range(1, m) if math.gcd(k, m) == 1])
                         for m in moduli]
        self.moduli = moduli
        self.root_exps = list(root_exps)
        self.roots = [cmath.exp(2j * cmath.pi * k / m)
                      for k, m in zip(self.root_exps, moduli)]
        self.size = 1
        for m in moduli:
            self.size *= m
        self._build_generators()
        self._mono_cache: dict = {}

    def _build_generators(self):
        ctx = self.ctx
        slots_per_gen: list[list[np.ndarray]] = [[] for _ in range(ctx.dim + 1)]
        for p_idx, (r, s) in enumerate(ctx.params):
            m = self.moduli[p_idx]
            c = _clock(m, self.roots[p_idx])
            sh = _shift(m)
            ident = np.eye(m, dtype=complex)
            rp, sp = ctx.primed(r), ctx.primed(s)
            for a in range(1, ctx.dim + 1):
                if a == r:
                    mat = c
                elif a == s:
                    mat = sh
                elif a == rp:
                    mat = c.conj().T
                elif a == sp:
                    mat = sh.conj().T
                else:
                    mat = ident
                slots_per_gen[a].append(mat)
        self.unitaries: dict[int, np.ndarray] = {}
        for a in range(1, ctx.dim + 1):
            u = np.eye(1, dtype=complex)
            for mat in slots_per_gen[a]:
                u = np.kron(u, mat)
            self.unitaries[a] = u

    def eval_scalar(self, s: ExactScalar) -> complex:
        return s.eval_at_roots(self.roots)

    def monomial_matrix(self, key) -> np.ndarray:
        """U-word for a canonical monomial: x powers then dx indices."""
        got = self._mono_cache.get(key)
        if got is not None:
            return got
        exps, dxs = key
        u = np.eye(self.size, dtype=complex)
        for a, e in enumerate(exps, start=1):
            for _ in range(e):
                u = u @ self.unitaries[a]
        for a in dxs:
            u = u @ self.unitaries[a]
        self._mono_cache[key] = u
        return u

    def eval_element(self, el: Element, point: np.ndarray) -> dict:
        """Matrix-valued form data {dx index set -> matrix} at a point."""
        if el.ctx != self.ctx:
            raise ValueError("element and model contexts differ")
        out: dict[tuple, np.ndarray] = {}
        for key, coeff in el.terms.items():
            exps, dxs = key
            z = self.eval_scalar(coeff)
            for a, e in enumerate(exps):
                if e:
                    z *= point[a] ** e
            mat = out.get(dxs)
            if mat is None:
                out[dxs] = z * self.monomial_matrix(key)
            else:
                mat += z * self.monomial_matrix(key)
        return out


def _point_from_real(ctx: DeformationContext, y: np.ndarray) -> np.ndarray:
    """Quadric coordinates from real ones: companion pairs become conjugate
    complex pairs so that sum_a v_a v_{a'} = |y|^2."""
    dim = ctx.dim
    v = np.zeros(dim, dtype=complex)
    half = dim // 2
    rt2 = math.sqrt(2.0)
    for j in range(half):
        a = j + 1
        v[a - 1] = (y[2 * j] + 1j * y[2 * j + 1]) / rt2
        v[ctx.primed(a) - 1] = v[a - 1].conjugate()
    if dim % 2:
        v[half] = y[dim - 1]
    return v


def sphere_sample(ctx: DeformationContext, rng: random.Random) -> np.ndarray:
    y = np.array([rng.gauss(0.0, 1.0) for _ in range(ctx.dim)])
    y /= math.sqrt(float(np.dot(y, y)))
    return _point_from_real(ctx, y)


def plane_sample(ctx: DeformationContext, rng: random.Random) -> np.ndarray:
    y = np.array([rng.gauss(0.0, 1.0) for _ in range(ctx.dim)])
    return _point_from_real(ctx, y)


def _tangent_basis(ctx: DeformationContext, point: np.ndarray) -> np.ndarray:
    """Basis of the kernel of dc at the point (rows are tangent vectors)."""
    u = np.array([2.0 * point[ctx.primed(b) - 1]
                  for b in range(1, ctx.dim + 1)], dtype=complex)
    _, _, vh = np.linalg.svd(u.reshape(1, -1))
    return vh[1:].conj()


def _pullback_sup(ctx, data: dict, tangent: np.ndarray) -> float:
    """Largest matrix entry of the form evaluated on tangent tuples."""
    worst = 0.0
    by_deg: dict[int, dict] = {}
    for dxs, mat in data.items():
        by_deg.setdefault(len(dxs), {})[dxs] = mat
    for k, comps in by_deg.items():
        if k == 0:
            for mat in comps.values():
                worst = max(worst, float(np.abs(mat).max()))
            continue
        nt = tangent.shape[0]
        if k > nt:
            continue
        for combo in combinations(range(nt), k):
            acc = None
            for dxs, mat in comps.items():
                cols = [s - 1 for s in dxs]
                minor = tangent[list(combo)][:, cols]
                det = complex(np.linalg.det(minor))
                if acc is None:
                    acc = det * mat
                else:
                    acc += det * mat
            if acc is not None:
                worst = max(worst, float(np.abs(acc).max()))
    return worst


def _models(ctx, seed: int, moduli=None):
    rng = random.Random(seed)
    first = TorusRep(ctx, moduli=moduli, rng=rng)
    if moduli is None and ctx.nparams:
        second_moduli = _PRIMES[ctx.nparams:2 * ctx.nparams]
        second = TorusRep(ctx, moduli=second_moduli, rng=rng)
    else:
        second = TorusRep(ctx, moduli=moduli, rng=rng)
    return [first, second]


def check_element(el: Element, seed: int = 42, points: int = 20,
                  tol: float = DEFAULT_TOL, moduli=None) -> bool:
    """Numeric vanishing of an ambient element (plane identity)."""
    return element_sup(el, seed=seed, points=points, moduli=moduli) < tol


def element_sup(el: Element, seed: int = 42, points: int = 20,
                moduli=None) -> float:
    ctx = el.ctx
    rng = random.Random(seed ^ 0x5EED)
    worst = 0.0
    for model in _models(ctx, seed, moduli):
        for _ in range(points):
            pt = plane_sample(ctx, rng)
            data = model.eval_element(el, pt)
            for mat in data.values():
                worst = max(worst, float(np.abs(mat).max()))
    return worst


def check_sphere_class(el: Element, seed: int = 42, points: int = 20,
                       tol: float = DEFAULT_TOL, moduli=None) -> bool:
    """Numeric vanishing of the sphere class of an ambient representative."""
    return sphere_class_sup(el, seed=seed, points=points, moduli=moduli) < tol


def sphere_class_sup(el: Element, seed: int = 42, points: int = 20,
                     moduli=None) -> float:
    ctx = el.ctx
    rng = random.Random(seed ^ 0xC1A55)
    worst = 0.0
    for model in _models(ctx, seed, moduli):
        for _ in range(points):
            pt = sphere_sample(ctx, rng)
            data = model.eval_element(el, pt)
            tangent = _tangent_basis(ctx, pt)
            worst = max(worst, _pullback_sup(ctx, data, tangent))
    return worst


def check_identity(obj, seed: int = 42, points: int = 20,
                   tol: float = DEFAULT_TOL, moduli=None) -> bool:
    """Numeric vanishing of an element or of a sphere-form difference.

    Plain elements are checked as plane identities; sphere forms (or their
    differences) are checked as quotient classes via the tangent pullback.
    """
    from .sphere import SphereForm
    if isinstance(obj, SphereForm):
        return check_sphere_class(obj.rep, seed=seed, points=points, tol=tol,
                                  moduli=moduli)
    return check_element(obj, seed=seed, points=points, tol=tol,
                         moduli=moduli)


def check_scalar(s: ExactScalar, ctx: DeformationContext, seed: int = 42,
                 draws: int = 20, tol: float = DEFAULT_TOL) -> bool:
    """Numeric vanishing of an exact scalar at random root-of-unity phases."""
    rng = random.Random(seed ^ 0x5CA1A)
    if not ctx.nparams:
        return abs(s.eval_at_roots(())) < tol
    for j in range(draws):
        ms = [_PRIMES[(i + j) % len(_PRIMES)] for i in range(ctx.nparams)]
        roots = []
        for m in ms:
            k = rng.choice([k for k in range(1, m) if math.gcd(k, m) == 1])
            roots.append(cmath.exp(2j * cmath.pi * k / m))
        if abs(s.eval_at_roots(roots)) >= tol:
            return False
    return True


class BatchChecker:
    """Shared-sample evaluator for large concordance sweeps.

    Holds two torus models over distinct prime moduli, a fixed batch of plane
    and sphere sample points, and cached tangent-minor determinants, so that
    checking thousands of identities reuses all the heavy data.
    """

    def __init__(self, ctx: DeformationContext, seed: int = 42,
                 points: int = 20, moduli=None):
        self.ctx = ctx
        self.points = points
        self.models = _models(ctx, seed, moduli)
        rng = random.Random(seed ^ 0xBA7C4)
        self.plane_points = [plane_sample(ctx, rng) for _ in range(points)]
        self.sphere_points = [sphere_sample(ctx, rng) for _ in range(points)]
        self.tangents = [_tangent_basis(ctx, p) for p in self.sphere_points]
        self._dxsets = {k: list(combinations(range(1, ctx.dim + 1), k))
                        for k in range(0, ctx.dim + 1)}
        self._dxindex = {k: {s: i for i, s in enumerate(v)}
                         for k, v in self._dxsets.items()}
        self._minors: dict = {}
        self.root_draws = self._draw_roots(rng)

    def _draw_roots(self, rng):
        draws = []
        n = self.ctx.nparams
        for j in range(self.points):
            roots = []
            for i in range(n):
                m = _PRIMES[(i + j) % len(_PRIMES)]
                k = rng.choice([k for k in range(1, m) if math.gcd(k, m) == 1])
                roots.append(cmath.exp(2j * cmath.pi * k / m))
            draws.append(tuple(roots))
        return draws

    def _minor_table(self, pt_idx: int, k: int) -> np.ndarray:
        """dets[combo, dxset] of the tangent minors at one sphere point."""
        got = self._minors.get((pt_idx, k))
        if got is not None:
            return got
        tangent = self.tangents[pt_idx]
        nt = tangent.shape[0]
        combos = list(combinations(range(nt), k))
        sets_ = self._dxsets[k]
        table = np.zeros((len(combos), len(sets_)), dtype=complex)
        for ci, combo in enumerate(combos):
            rows = tangent[list(combo)]
            for si, dxs in enumerate(sets_):
                cols = [s - 1 for s in dxs]
                table[ci, si] = np.linalg.det(rows[:, cols])
        self._minors[(pt_idx, k)] = table
        return table

    def scalar_sup(self, s: ExactScalar) -> float:
        if not s.terms:
            return 0.0
        return max(abs(s.eval_at_roots(r)) for r in self.root_draws)

    def element_sup(self, el: Element) -> float:
        if not el.terms:
            return 0.0
        worst = 0.0
        for model in self.models:
            for pt in self.plane_points:
                for mat in model.eval_element(el, pt).values():
                    worst = max(worst, float(np.abs(mat).max()))
        return worst

    def sphere_sup(self, el: Element) -> float:
        if not el.terms:
            return 0.0
        worst = 0.0
        for model in self.models:
            size = model.size
            for pt_idx, pt in enumerate(self.sphere_points):
                data = model.eval_element(el, pt)
                by_deg: dict[int, dict] = {}
                for dxs, mat in data.items():
                    by_deg.setdefault(len(dxs), {})[dxs] = mat
                for k, comps in by_deg.items():
                    if k == 0:
                        for mat in comps.values():
                            worst = max(worst, float(np.abs(mat).max()))
                        continue
                    if k > self.tangents[pt_idx].shape[0]:
                        continue
                    table = self._minor_table(pt_idx, k)
                    stack = np.zeros((len(self._dxsets[k]), size, size),
                                     dtype=complex)
                    for dxs, mat in comps.items():
                        stack[self._dxindex[k][dxs]] = mat
                    vals = np.tensordot(table, stack, axes=1)
                    worst = max(worst, float(np.abs(vals).max()))
        return worst
