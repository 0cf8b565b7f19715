"""Bent-function constructions: quadratic monomials, Coulter-Matthews maps,
direct and semi-direct sums, the two-variable quadratic-form family with its
character condition sum, a selector-variable recursion, and three bundled
ternary examples (g1, g2, g3).
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import NamedTuple

import numpy as np

from .bent import Verdict, classify, is_bent
from .cyclo import CycInt, root_power
from .field import FieldCtx, FieldElement, FieldError
from .pfunc import Domain, DomainError, FieldPart, PFunction, VecPart, shift_compose
from .walsh import rotate_rows, walsh_fast


class ConstructionError(ValueError):
    pass


def _as_element(ctx: FieldCtx, a) -> FieldElement:
    if isinstance(a, FieldElement):
        if a.ctx != ctx:
            raise ConstructionError("element belongs to a different field")
        return a
    return ctx.element(int(a))


# ---- quadratic families -------------------------------------------------------

def monomial_bent(ctx: FieldCtx, alpha, k: int) -> PFunction:
    """Tr(alpha * x^(p^k + 1)); bent exactly when m / gcd(m, k) is odd."""
    alpha = _as_element(ctx, alpha)
    if alpha.index == 0:
        raise ConstructionError("the coefficient must be nonzero")
    if not 0 <= k <= ctx.m:
        raise ConstructionError(f"k must lie in 0..{ctx.m}, got {k}")
    if (ctx.m // gcd(ctx.m, k)) % 2 == 0:
        raise ConstructionError(
            f"m/gcd(m,k) = {ctx.m // gcd(ctx.m, k)} is even, the monomial is not bent"
        )
    return _trace_monomial(ctx, alpha, ctx.p**k + 1)


def cm_bent(ctx: FieldCtx, alpha, k: int) -> PFunction:
    """Ternary Coulter-Matthews function Tr(alpha * x^((3^k + 1)/2)), gcd(2m, k) = 1."""
    if ctx.p != 3:
        raise ConstructionError("this family only exists in characteristic 3")
    alpha = _as_element(ctx, alpha)
    if alpha.index == 0:
        raise ConstructionError("the coefficient must be nonzero")
    if k < 1 or gcd(2 * ctx.m, k) != 1:
        raise ConstructionError(f"need gcd(2m, k) = 1 with k >= 1, got k={k}")
    return _trace_monomial(ctx, alpha, (3**k + 1) // 2)


def _trace_monomial(ctx: FieldCtx, alpha: FieldElement, expo: int) -> PFunction:
    idx = np.arange(ctx.q, dtype=np.int64)
    xe = ctx.pow_indices(idx, expo)
    prod = ctx.mul_indices(np.full(ctx.q, alpha.index, dtype=np.int64), xe)
    return PFunction(Domain.field(ctx), ctx.trace_table[prod])


# ---- sums ----------------------------------------------------------------------

def direct_sum(f: PFunction, g: PFunction) -> PFunction:
    """(x, y) -> f(x) + g(y) on the product domain."""
    if f.p != g.p:
        raise ConstructionError("mismatched characteristic")
    dom = Domain(f.domain.components + g.domain.components)
    table = (np.add.outer(g.table, f.table) % f.p).reshape(-1)
    return PFunction(dom, table)


@dataclass
class SdsSpec:
    """Data of a semi-direct sum F(x, y) = f(x) + g(y + h(x)).

    f lives on any domain, g on the vector space F_p^n, and h is a list of n
    coordinate maps on f's domain.
    """

    f: PFunction
    g: PFunction
    h: list[PFunction]

    def __post_init__(self) -> None:
        gdom = self.g.domain
        if len(gdom.components) != 1 or not isinstance(gdom.components[0], VecPart):
            raise ConstructionError("g must live on a single vector component")
        self.n = gdom.components[0].dim
        if len(self.h) != self.n:
            raise ConstructionError(f"need {self.n} coordinate maps, got {len(self.h)}")
        if any(hj.domain != self.f.domain for hj in self.h):
            raise ConstructionError("every coordinate map must live on f's domain")
        if self.g.p != self.f.p:
            raise ConstructionError("mismatched characteristic")

    def inner_function(self, b: int) -> PFunction:
        """G_b(x) = f(x) + <b, h(x)>, the function whose bentness drives the sum."""
        p = self.f.p
        acc = self.f.table.copy()
        for j in range(self.n):
            bj = (b // p**j) % p
            if bj:
                acc = acc + bj * self.h[j].table
        return PFunction(self.f.domain, acc % p)


def semi_direct_sum(spec: SdsSpec) -> PFunction:
    """F(x, y) = f(x) + g(y + h(x)); g is required to be bent."""
    if not is_bent(walsh_fast(spec.g)):
        raise ConstructionError("the outer function g must be bent")
    comp = shift_compose(spec.g, spec.h)
    lifted = np.tile(spec.f.table, spec.g.domain.size)
    return PFunction(comp.domain, (lifted + comp.table) % spec.f.p)


def sds_is_bent_condition(spec: SdsSpec) -> Verdict:
    """The exact bentness criterion: every G_b must be bent; witness = first bad b."""
    for b in range(spec.g.domain.size):
        if not is_bent(walsh_fast(spec.inner_function(b))):
            return Verdict(False, b)
    return Verdict(True)


def sds_walsh_factorization(spec: SdsSpec) -> bool:
    """Exact spectral splitting W_F(a, b) = W_{G_b}(a) * W_g(b) for all (a, b)."""
    F = semi_direct_sum(spec)
    WF = walsh_fast(F)
    Wg = walsh_fast(spec.g)
    nf = spec.f.domain.size
    p = spec.f.p
    for b in range(spec.g.domain.size):
        Wgb = walsh_fast(spec.inner_function(b))
        gval = Wg[b]
        for a in range(nf):
            if WF[a + b * nf] != Wgb[a] * gval:
                return False
    return True


def sds_dual(spec: SdsSpec) -> PFunction:
    """Dual of a bent semi-direct sum: F*(x, y) = G_y*(x) + g*(y)."""
    gstar, _ = _dual_of(spec.g)
    nf = spec.f.domain.size
    p = spec.f.p
    out = np.zeros(nf * spec.g.domain.size, dtype=np.int64)
    for y in range(spec.g.domain.size):
        gy, _ = _dual_of(spec.inner_function(y))
        out[y * nf : (y + 1) * nf] = (gy.table + gstar.table[y]) % p
    dom = Domain(spec.f.domain.components + spec.g.domain.components)
    return PFunction(dom, out)


def _dual_of(f: PFunction) -> tuple[PFunction, np.ndarray]:
    from .bent import extract_dual

    W = walsh_fast(f)
    bent = is_bent(W)
    if not bent:
        raise ConstructionError(f"function is not bent (witness b={bent.witness})")
    return extract_dual(W)


# ---- the correlation family over F_{p^m} x F_p^n --------------------------------

class Cor1Result(NamedTuple):
    function: PFunction
    both_characters: bool
    character_counts: tuple[int, int]  # (+1 count, -1 count) over the Lambda sweep


def cor1_family(
    ctx: FieldCtx, kind: str, k: int, alphas, g: PFunction
) -> Cor1Result:
    """F(x, y) = f_{a0}(x) + g(y + (f_{a1}(x), ..., f_{an}(x))) for one quadratic family.

    kind selects the inner family ('monomial' or 'cm'), alphas = (a0, ..., an)
    must be linearly independent over F_p, and g must be bent on F_p^n.  The
    result records whether the coefficient sweep Lambda = a0 + sum(lambda_j a_j)
    hits both quadratic characters; if it does not, the sum stays weakly regular.
    """
    alphas = [_as_element(ctx, a) for a in alphas]
    n = len(alphas) - 1
    if n < 1:
        raise ConstructionError("need at least two coefficients")
    if _rank_mod_p([a.coeffs for a in alphas], ctx.p) != n + 1:
        raise ConstructionError("the coefficients must be linearly independent over F_p")
    if kind == "monomial":
        family = lambda a: monomial_bent(ctx, a, k)
    elif kind == "cm":
        family = lambda a: cm_bent(ctx, a, k)
    else:
        raise ConstructionError(f"unknown family kind {kind!r}")
    spec = SdsSpec(f=family(alphas[0]), g=g, h=[family(a) for a in alphas[1:]])
    F = semi_direct_sum(spec)

    plus = minus = 0
    for lam in range(ctx.p**n):
        acc = alphas[0]
        for j in range(n):
            lj = (lam // ctx.p**j) % ctx.p
            if lj:
                acc = acc + lj * alphas[j + 1]
        if acc.eta() == 1:
            plus += 1
        else:
            minus += 1
    return Cor1Result(F, plus > 0 and minus > 0, (plus, minus))


def _rank_mod_p(rows, p: int) -> int:
    mat = [list(r) for r in rows]
    rank = 0
    cols = len(mat[0]) if mat else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(mat)) if mat[r][c] % p), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = pow(mat[rank][c], p - 2, p)
        mat[rank] = [(v * inv) % p for v in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][c] % p:
                f = mat[r][c]
                mat[r] = [(a - f * b) % p for a, b in zip(mat[r], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return rank


# ---- the planted non-dual-bent family -------------------------------------------

@dataclass
class NdCorSpec:
    """Parameters (alpha, beta) of the two-coordinate quadratic-form sum.

    Requires {1, alpha, beta} linearly independent over F_p, which needs
    m >= 3.
    """

    ctx: FieldCtx
    alpha: FieldElement
    beta: FieldElement

    def __post_init__(self) -> None:
        self.alpha = _as_element(self.ctx, self.alpha)
        self.beta = _as_element(self.ctx, self.beta)
        one = self.ctx.one
        if _rank_mod_p(
            [one.coeffs, self.alpha.coeffs, self.beta.coeffs], self.ctx.p
        ) != 3:
            raise ConstructionError(
                "{1, alpha, beta} must be linearly independent over F_p"
            )


def ndcor_condition_sum(spec: NdCorSpec) -> CycInt:
    """S = sum over y1, y2 in F_p of eta(1 + y1*alpha + y2*beta) * e^(-y1*y2).

    The three-term independence makes every argument nonzero.  |S| != p is the
    exact certificate that the constructed sum has a non-bent dual.
    """
    ctx = spec.ctx
    p = ctx.p
    total = CycInt.zero(p)
    for y1 in range(p):
        for y2 in range(p):
            arg = ctx.one + y1 * spec.alpha + y2 * spec.beta
            term = root_power(p, (-y1 * y2) % p)
            total = total + term if arg.eta() == 1 else total - term
    return total


def ndcor_function(spec: NdCorSpec) -> PFunction:
    """F(x, y1, y2) = Tr(x^2) + (y1 + Tr(alpha x^2)) * (y2 + Tr(beta x^2))."""
    ctx = spec.ctx
    f = monomial_bent(ctx, ctx.one, 0)
    g = coordinate_product(ctx.p)
    h = [monomial_bent(ctx, spec.alpha, 0), monomial_bent(ctx, spec.beta, 0)]
    return semi_direct_sum(SdsSpec(f=f, g=g, h=h))


def coordinate_product(p: int) -> PFunction:
    """(y1, y2) -> y1 * y2 on F_p^2, the standard two-dimensional bent function."""
    dom = Domain.vec(p, 2)
    idx = np.arange(dom.size, dtype=np.int64)
    return PFunction(dom, ((idx % p) * (idx // p)) % p)


# ---- selector-variable recursion -------------------------------------------------

def agw_combine(f_list: list[PFunction]) -> PFunction:
    """F(x, s, y) = f_y(x) + s*y on F_p^(n+2), selecting among p functions by y.

    Every f_j must live on one common plain vector domain F_p^n; F is bent
    exactly when all the f_j are.
    """
    if not f_list:
        raise ConstructionError("need p functions")
    base = f_list[0].domain
    p = base.p
    if len(f_list) != p:
        raise ConstructionError(f"need exactly p = {p} functions, got {len(f_list)}")
    if len(base.components) != 1 or not isinstance(base.components[0], VecPart):
        raise ConstructionError("inputs must live on a plain vector domain")
    if any(fj.domain != base for fj in f_list):
        raise ConstructionError("all inputs must share one domain")
    n = base.n_total
    nf = base.size
    dom = Domain.vec(p, n + 2)
    idx = np.arange(dom.size, dtype=np.int64)
    x = idx % nf
    s = (idx // nf) % p
    y = idx // (nf * p)
    stacked = np.stack([fj.table for fj in f_list], axis=0)
    table = (stacked[y, x] + s * y) % p
    return PFunction(dom, table)


def agw_dual(fstar_list: list[PFunction]) -> PFunction:
    """The dual's shape under this recursion: F*(x, s, y) = f*_s(x) - s*y."""
    base = fstar_list[0].domain
    p = base.p
    nf = base.size
    dom = Domain.vec(p, base.n_total + 2)
    idx = np.arange(dom.size, dtype=np.int64)
    x = idx % nf
    s = (idx // nf) % p
    y = idx // (nf * p)
    stacked = np.stack([fj.table for fj in fstar_list], axis=0)
    table = (stacked[s, x] - s * y) % p
    return PFunction(dom, table)


def agw_walsh_identity(f_list: list[PFunction]) -> bool:
    """Exact spectral identity W_F(a, b, c) = p * e^(-b*c) * W_{f_b}(a)."""
    F = agw_combine(f_list)
    WF = walsh_fast(F)
    base = f_list[0].domain
    p, nf = base.p, base.size
    spectra = [walsh_fast(fj).values for fj in f_list]
    arr = WF.values.reshape(p, p, nf, p - 1)  # [c, b, a]
    for b in range(p):
        for c in range(p):
            expected = p * rotate_rows(spectra[b], p, (-b * c) % p)
            if not np.array_equal(arr[c, b], expected):
                return False
    return True


# ---- bundled ternary examples ------------------------------------------------------

def sporadic(name: str, ctx: FieldCtx, variant: int | None = None) -> PFunction:
    """The bundled ternary examples g1, g2, g3.

    g1 = Tr(xi^7 x^98) and g3 = Tr(xi^7 x^14 + xi^35 x^70) on F_{3^6}
    (modulus supplied by the caller), g2 = Tr(a0 x^22 + x^4) on F_{3^4} with
    a0 one of +-xi^10, +-xi^30 chosen by variant 0..3.  xi is the context's
    primitive element.
    """
    if ctx.p != 3:
        raise ConstructionError("the bundled examples live in characteristic 3")
    xi = ctx.g
    if name == "g1":
        if ctx.m != 6:
            raise ConstructionError("g1 needs F_{3^6}")
        return _trace_monomial(ctx, xi**7, 98)
    if name == "g2":
        if ctx.m != 4:
            raise ConstructionError("g2 needs F_{3^4}")
        if variant is None or not 0 <= variant <= 3:
            raise ConstructionError("g2 needs a variant in 0..3")
        a0 = g2_coefficients(ctx)[variant]
        return g2_function(ctx, a0)
    if name == "g3":
        if ctx.m != 6:
            raise ConstructionError("g3 needs F_{3^6}")
        t1 = _trace_monomial(ctx, xi**7, 14)
        t2 = _trace_monomial(ctx, xi**35, 70)
        return t1 + t2
    raise ConstructionError(f"unknown example {name!r}")


def g2_coefficients(ctx: FieldCtx) -> list[FieldElement]:
    """The four leading coefficients of g2, in the fixed order used by variants."""
    xi = ctx.g
    a, b = xi**10, xi**30
    return [a, -a, b, -b]


def g2_function(ctx: FieldCtx, a0: FieldElement) -> PFunction:
    """Tr(a0 x^22 + x^4) on F_{3^4}, for any leading coefficient a0."""
    if ctx.p != 3 or ctx.m != 4:
        raise ConstructionError("this shape needs F_{3^4}")
    t2 = _trace_monomial(ctx, ctx.one, 4)
    if a0.index == 0:
        return t2
    return _trace_monomial(ctx, a0, 22) + t2


def sporadic_claim(name: str, ctx: FieldCtx, variant: int | None = None):
    """Classify one bundled example and say whether it matches the advertised
    behavior: bent, not weakly regular, dual not bent."""
    from .bent import NON_WEAKLY_REGULAR

    rep = classify(sporadic(name, ctx, variant))
    holds = (
        rep.is_bent
        and rep.regularity == NON_WEAKLY_REGULAR
        and rep.dual_is_bent is False
    )
    return holds, rep


def sporadic_primitive_scan(
    name: str, p: int, m: int, modulus, variant: int | None = None
) -> tuple[int | None, object]:
    """Try every primitive element as xi until the advertised behavior holds.

    Returns (primitive index, report) for the first success, or (None, last
    report) if no generator works.
    """
    base = FieldCtx(p, m, modulus)
    last = None
    for gidx in base.primitive_indices():
        ctx = FieldCtx(p, m, modulus, primitive=gidx)
        holds, rep = sporadic_claim(name, ctx, variant)
        last = rep
        if holds:
            return gidx, rep
    return None, last


# ---- search over (alpha, beta) pairs ----------------------------------------------

def independent_pairs(ctx: FieldCtx):
    """All (alpha, beta) index pairs with {1, alpha, beta} independent, in
    lexicographic index order."""
    one = ctx.one.coeffs
    for a in range(ctx.q):
        da = tuple(int(v) for v in ctx.digits[a])
        if _rank_mod_p([one, da], ctx.p) != 2:
            continue
        for b in range(ctx.q):
            db = tuple(int(v) for v in ctx.digits[b])
            if _rank_mod_p([one, da, db], ctx.p) == 3:
                yield a, b


def evaluate_pair(ctx: FieldCtx, a_idx: int, b_idx: int) -> dict:
    """Condition sum plus full classification for one (alpha, beta) pair.

    Returns a JSON-ready record; 'abs_sq_S' is an int when the squared modulus
    is rational, otherwise the coefficient list.
    """
    spec = NdCorSpec(ctx, ctx.element(a_idx), ctx.element(b_idx))
    S = ndcor_condition_sum(spec)
    s2 = S.abs_sq()
    rep = classify(ndcor_function(spec))
    return {
        "p": ctx.p,
        "m": ctx.m,
        "modulus": list(ctx.modulus),
        "alpha": a_idx,
        "alpha_poly": spec.alpha.poly_str(),
        "beta": b_idx,
        "beta_poly": spec.beta.poly_str(),
        "abs_sq_S": s2.as_int() if s2.is_rational else list(s2.coeffs),
        "bent": rep.is_bent,
        "regularity": rep.regularity,
        "dual_bent": rep.dual_is_bent,
    }
