"""Finite field contexts: construction, tables, and independent arithmetic oracles.

The oracle here is deliberately primitive: pure-python polynomial arithmetic
modulo (p, modulus), with no lookup tables, so that every table-backed
operation in the library is checked against something that cannot share its
bugs.
"""
import numpy as np
import pytest

from pbent.field import (
    BUILTIN_MODULI,
    FieldCtx,
    FieldError,
    eta,
    make_field,
    poly_is_irreducible,
    trace,
)

TEST_MODULI = {
    (3, 2): (1, 0, 1),  # x^2 + 1
    (5, 2): (2, 0, 1),  # x^2 + 2
    (5, 4): (2, 0, 0, 0, 1),  # x^4 + 2
    (3, 6): (2, 1, 0, 0, 0, 0, 1),  # x^6 + x + 2
}


# ---- oracle helpers ---------------------------------------------------------------


def poly_mul_mod(a, b, modulus, p):
    """Pure-python product of digit tuples, reduced mod (p, modulus)."""
    m = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            prod[i + j] = (prod[i + j] + ai * bj) % p
    # long division by the monic modulus
    for top in range(len(prod) - 1, m - 1, -1):
        c = prod[top]
        if c:
            for k in range(m + 1):
                prod[top - m + k] = (prod[top - m + k] - c * modulus[k]) % p
    return tuple(prod[:m])


def poly_pow_mod(a, e, modulus, p):
    m = len(modulus) - 1
    result = tuple(1 if i == 0 else 0 for i in range(m))
    base = tuple(a)
    while e:
        if e & 1:
            result = poly_mul_mod(result, base, modulus, p)
        base = poly_mul_mod(base, base, modulus, p)
        e >>= 1
    return result


def oracle_divides(candidate, modulus, p):
    """Does the monic polynomial `candidate` divide `modulus` over F_p?"""
    rem = list(modulus)
    d = len(candidate) - 1
    while len(rem) - 1 >= d:
        top = rem[-1]
        if top:
            shift = len(rem) - 1 - d
            for k in range(d + 1):
                rem[shift + k] = (rem[shift + k] - top * candidate[k]) % p
        rem.pop()
    return all(c == 0 for c in rem)


def oracle_irreducible(modulus, p):
    """Trial division by every monic polynomial of degree 1..deg/2."""
    deg = len(modulus) - 1
    for d in range(1, deg // 2 + 1):
        for tail in range(p**d):
            cand = [(tail // p**i) % p for i in range(d)] + [1]
            if oracle_divides(cand, modulus, p):
                return False
    return deg >= 1


# ---- construction and validation ----------------------------------------------------


def test_builtin_moduli_are_irreducible():
    for (p, m), mod in BUILTIN_MODULI.items():
        assert len(mod) == m + 1
        assert oracle_irreducible(mod, p)
        make_field(p, m)  # constructor re-validates


@pytest.mark.parametrize("key,mod", sorted(TEST_MODULI.items()))
def test_suite_moduli_are_irreducible(key, mod):
    p, m = key
    assert oracle_irreducible(mod, p)
    assert poly_is_irreducible(mod, p)


def test_irreducibility_rejects_products():
    # x^2 + 2 = (x+1)(x+2) over F_3
    assert not poly_is_irreducible((2, 0, 1), 3)
    assert not oracle_irreducible((2, 0, 1), 3)
    with pytest.raises(FieldError):
        make_field(3, 2, (2, 0, 1))
    # x^2 + 1 has no roots over F_3, hence irreducible at degree 2
    assert poly_is_irreducible((1, 0, 1), 3)
    make_field(3, 2, (1, 0, 1))


def test_constructor_validation():
    with pytest.raises(FieldError):
        make_field(2, 3, (1, 1, 0, 1))  # even characteristic
    with pytest.raises(FieldError):
        make_field(4, 1, (0, 1))  # not prime
    with pytest.raises(FieldError):
        make_field(3, 0, (1,))
    with pytest.raises(FieldError):
        make_field(3, 3, (1, 0, 1))  # wrong digit count
    with pytest.raises(FieldError):
        make_field(3, 3, (2, 0, 1, 2))  # not monic
    with pytest.raises(FieldError):
        FieldCtx(3, 13, [0] * 13 + [1])  # exceeds the size guard
    with pytest.raises(FieldError):
        make_field(3, 5, None)  # no built-in modulus for this shape


def test_prime_field_defaults():
    k = make_field(7, 1)
    assert k.q == 7 and k.modulus == (0, 1)
    assert [k.trace_idx(i) for i in range(7)] == list(range(7))


def test_explicit_primitive_is_validated():
    k = make_field(3, 2, TEST_MODULI[(3, 2)])
    # index 1 is the multiplicative identity, never primitive for q > 2
    with pytest.raises(FieldError):
        FieldCtx(3, 2, TEST_MODULI[(3, 2)], primitive=1)
    FieldCtx(3, 2, TEST_MODULI[(3, 2)], primitive=k.primitive_index)


def all_fields():
    pairs = sorted(BUILTIN_MODULI.items()) + sorted(TEST_MODULI.items())
    return [make_field(p, m, mod) for (p, m), mod in pairs]


# ---- arithmetic against the oracle ---------------------------------------------------


@pytest.mark.parametrize("ctx", all_fields(), ids=lambda c: f"F_{c.p}^{c.m}")
def test_multiplication_matches_polynomial_oracle(ctx, rng):
    pairs = rng.integers(0, ctx.q, size=(300, 2))
    for a, b in pairs:
        da = tuple(int(v) for v in ctx.digits[a])
        db = tuple(int(v) for v in ctx.digits[b])
        expected = ctx.compose(poly_mul_mod(da, db, ctx.modulus, ctx.p))
        assert ctx.mul_idx(int(a), int(b)) == expected


@pytest.mark.parametrize("ctx", all_fields(), ids=lambda c: f"F_{c.p}^{c.m}")
def test_vectorized_ops_match_scalar(ctx, rng):
    a = rng.integers(0, ctx.q, size=200)
    b = rng.integers(0, ctx.q, size=200)
    mul = ctx.mul_indices(a, b)
    add = ctx.add_indices(a, b)
    for i in range(len(a)):
        assert int(mul[i]) == ctx.mul_idx(int(a[i]), int(b[i]))
        assert int(add[i]) == ctx.add_idx(int(a[i]), int(b[i]))
    e = int(rng.integers(2, 12))
    pw = ctx.pow_indices(a, e)
    for i in range(0, len(a), 17):
        assert int(pw[i]) == ctx.pow_idx(int(a[i]), e)


@pytest.mark.parametrize("ctx", all_fields(), ids=lambda c: f"F_{c.p}^{c.m}")
def test_inverses_and_powers(ctx):
    for a in range(1, min(ctx.q, 200)):
        assert ctx.mul_idx(a, ctx.inv_idx(a)) == 1
    assert ctx.pow_idx(0, 0) == 1  # empty product convention
    with pytest.raises(FieldError):
        ctx.inv_idx(0)
    with pytest.raises(FieldError):
        ctx.eta_idx(0)


@pytest.mark.parametrize("ctx", all_fields(), ids=lambda c: f"F_{c.p}^{c.m}")
def test_trace_matches_frobenius_oracle(ctx, rng):
    # Tr(x) = x + x^p + ... + x^(p^(m-1)), summed with the pure-python powmod
    for a in rng.integers(0, ctx.q, size=40):
        da = tuple(int(v) for v in ctx.digits[a])
        acc = [0] * ctx.m
        for i in range(ctx.m):
            conj = poly_pow_mod(da, ctx.p**i, ctx.modulus, ctx.p)
            acc = [(x + y) % ctx.p for x, y in zip(acc, conj)]
        assert all(c == 0 for c in acc[1:])
        assert ctx.trace_idx(int(a)) == acc[0]


@pytest.mark.parametrize("ctx", all_fields(), ids=lambda c: f"F_{c.p}^{c.m}")
def test_trace_is_linear_and_balanced(ctx, rng):
    p = ctx.p
    for _ in range(30):
        a, b = (int(v) for v in rng.integers(0, ctx.q, size=2))
        c = int(rng.integers(0, p))
        lhs = ctx.trace_idx(ctx.add_idx(a, ctx.mul_idx(ctx.compose([c] + [0] * (ctx.m - 1)), b)))
        assert lhs == (ctx.trace_idx(a) + c * ctx.trace_idx(b)) % p
    values = [ctx.trace_idx(a) for a in range(ctx.q)]
    for t in range(p):
        assert values.count(t) == ctx.q // p


@pytest.mark.parametrize("ctx", all_fields(), ids=lambda c: f"F_{c.p}^{c.m}")
def test_eta_matches_brute_force_squares(ctx):
    squares = set()
    for i in range(1, ctx.q):
        d = tuple(int(v) for v in ctx.digits[i])
        squares.add(ctx.compose(poly_mul_mod(d, d, ctx.modulus, ctx.p)))
    assert len(squares) == (ctx.q - 1) // 2
    for i in range(1, ctx.q):
        assert ctx.eta_idx(i) == (1 if i in squares else -1)


@pytest.mark.parametrize("ctx", all_fields(), ids=lambda c: f"F_{c.p}^{c.m}")
def test_eta_is_multiplicative(ctx, rng):
    for _ in range(50):
        a, b = (int(v) for v in rng.integers(1, ctx.q, size=2))
        assert ctx.eta_idx(ctx.mul_idx(a, b)) == ctx.eta_idx(a) * ctx.eta_idx(b)
    assert ctx.eta_idx(ctx.primitive_index) == -1


@pytest.mark.parametrize("ctx", all_fields(), ids=lambda c: f"F_{c.p}^{c.m}")
def test_primitive_element_has_full_order(ctx):
    order = ctx.q - 1
    g = tuple(int(v) for v in ctx.digits[ctx.primitive_index])
    one = tuple(1 if i == 0 else 0 for i in range(ctx.m))
    assert poly_pow_mod(g, order, ctx.modulus, ctx.p) == one
    n = order
    f = 2
    factors = set()
    while f * f <= n:
        while n % f == 0:
            factors.add(f)
            n //= f
        f += 1
    if n > 1:
        factors.add(n)
    for ell in sorted(factors):
        assert poly_pow_mod(g, order // ell, ctx.modulus, ctx.p) != one


def test_exp_log_tables_are_inverse_bijections():
    for ctx in all_fields():
        assert sorted(int(v) for v in ctx.exp) == list(range(1, ctx.q))
        for k in range(0, ctx.q - 1, max(1, (ctx.q - 1) // 97)):
            assert int(ctx.log[int(ctx.exp[k])]) == k


# ---- element wrapper ------------------------------------------------------------------


def test_element_arithmetic_and_identities():
    k = make_field(3, 3)
    w = k.w
    assert (w + w + w).index == 0
    assert w * w**2 == w**3
    assert (2 * w + 1) - 1 == 2 * w
    assert w / w == k.one
    assert -(-w) == w
    assert (w**26).index == 1  # order divides q - 1
    assert trace(w) == w.trace()
    assert eta(w) in (-1, 1) and eta(w) == w.eta()


def test_element_cross_field_rejected():
    a = make_field(3, 3).w
    b = make_field(3, 2, TEST_MODULI[(3, 2)]).w
    with pytest.raises((FieldError, TypeError, ValueError)):
        a + b


def test_poly_str_smoke():
    k = make_field(3, 3)
    assert k.zero.poly_str() == "0"
    assert k.one.poly_str() == "1"
    assert k.w.poly_str() == "w"
    assert (k.w**2 + 2 * k.w + 1).poly_str() == "w^2 + 2w + 1"


def test_context_identity():
    a = make_field(3, 3)
    b = make_field(3, 3, BUILTIN_MODULI[(3, 3)])
    assert a == b and hash(a) == hash(b)
    c = make_field(3, 2, TEST_MODULI[(3, 2)])
    assert a != c


def test_primitive_indices_enumeration():
    k = make_field(3, 2, TEST_MODULI[(3, 2)])
    prim = k.primitive_indices()
    # euler phi(8) = 4 generators in F_9*
    assert len(prim) == 4
    one = (1, 0)
    for idx in prim:
        d = tuple(int(v) for v in k.digits[idx])
        assert poly_pow_mod(d, 4, k.modulus, 3) != one
