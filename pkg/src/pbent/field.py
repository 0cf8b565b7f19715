"""Finite fields F_{p^m} of odd characteristic on a polynomial basis.

A FieldCtx freezes one concrete field: the modulus, a primitive element, and
the lookup tables that make bulk evaluation cheap (digit matrix, discrete
exp/log, traces, the trace bilinear form).  Elements travel as integer
indices; index = sum(coeffs[i] * p^i) with the constant digit least
significant, so index order is also the truth-table point order used
everywhere else in the package.
"""
from __future__ import annotations

import numpy as np

SIZE_LIMIT = 1 << 20

# Moduli shipped with the package, keyed by (p, m); digit vectors are lowest
# degree first and include the leading 1.  Only fields that the bundled
# worked examples name are listed, everything else must be supplied
# explicitly so the library never picks a field representation silently.
BUILTIN_MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (3, 3): (2, 0, 1, 1),     # x^3 + x^2 + 2
    (3, 4): (2, 0, 0, 1, 1),  # x^4 + x^3 + 2
    (5, 3): (1, 1, 0, 1),     # x^3 + x + 1
}


class FieldError(ValueError):
    """Raised for invalid field parameters or undefined element operations."""


def is_odd_prime(n: int) -> bool:
    if n < 3 or n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---- polynomial helpers over F_p (dense digit lists, lowest degree first) ----

def _poly_trim(a: list[int]) -> list[int]:
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _poly_rem(num: list[int], den: list[int], p: int) -> list[int]:
    num = [c % p for c in num]
    dn = len(den) - 1
    lead_inv = pow(den[-1], p - 2, p)
    for k in range(len(num) - 1, dn - 1, -1):
        c = num[k] % p
        if c == 0:
            continue
        q = (c * lead_inv) % p
        for j in range(dn + 1):
            num[k - dn + j] = (num[k - dn + j] - q * den[j]) % p
    return _poly_trim(num[:dn] or [0])


def poly_is_irreducible(modulus, p: int) -> bool:
    """Brute-force irreducibility over F_p: root test plus trial division.

    Trial divisors run over every monic polynomial of degree up to deg/2,
    which is exhaustive at the sizes this package supports.
    """
    mod = [c % p for c in modulus]
    m = len(mod) - 1
    if m < 1 or mod[-1] % p != 1:
        raise FieldError("modulus must be monic of degree >= 1")
    if m == 1:
        return True
    for r in range(p):
        if sum(c * pow(r, i, p) for i, c in enumerate(mod)) % p == 0:
            return False
    for d in range(2, m // 2 + 1):
        for code in range(p**d):
            div = [(code // p**i) % p for i in range(d)] + [1]
            if any(_poly_rem(mod, div, p)):
                continue
            return False
    return True


class FieldCtx:
    """One concrete field F_{p^m}: modulus, primitive element, lookup tables."""

    def __init__(self, p: int, m: int, modulus, primitive: int | None = None) -> None:
        if not is_odd_prime(p):
            raise FieldError(f"characteristic must be an odd prime, got {p}")
        if m < 1:
            raise FieldError(f"extension degree must be positive, got {m}")
        q = p**m
        if q > SIZE_LIMIT:
            raise FieldError(f"field size {p}^{m} = {q} exceeds the limit 2^20")
        mod = tuple(int(c) % p for c in modulus)
        if len(mod) != m + 1:
            raise FieldError(
                f"modulus needs {m + 1} digits (degree {m}, lowest first), got {len(mod)}"
            )
        if mod[-1] != 1:
            raise FieldError("modulus must be monic")
        if not poly_is_irreducible(mod, p):
            raise FieldError(f"modulus {list(mod)} is reducible over F_{p}")

        self.p = p
        self.m = m
        self.q = q
        self.modulus = mod
        self._pw = tuple(p**i for i in range(m))

        # digits[i] = coefficient vector of the element with index i
        idx = np.arange(q, dtype=np.int64)
        self.digits = np.stack([(idx // p**i) % p for i in range(m)], axis=1)

        # reductions of w^m .. w^(2m-2), needed for schoolbook multiplication
        self._high_powers = self._build_high_powers()

        if primitive is None:
            primitive = self._find_primitive()
        else:
            primitive = int(primitive)
            if not self._has_full_order(primitive):
                raise FieldError(f"element with index {primitive} is not primitive")
        self.primitive_index = primitive

        self._build_exp_log()
        self._build_trace()
        self._eta_table: np.ndarray | None = None

    # ---- construction helpers -------------------------------------------

    def _build_high_powers(self) -> list[tuple[int, ...]]:
        p, m = self.p, self.m
        if m == 1:
            return []
        out = [tuple((-c) % p for c in self.modulus[:m])]  # w^m
        for _ in range(m - 2):
            shifted = [0] + list(out[-1])
            top = shifted.pop()
            out.append(tuple((c + top * r) % p for c, r in zip(shifted, out[0])))
        return out

    def root_power_digits(self, e: int) -> tuple[int, ...]:
        """Digit vector of w^e for 0 <= e <= 2m-2, w the modulus root."""
        m = self.m
        if e < m:
            return tuple(1 if i == e else 0 for i in range(m))
        return self._high_powers[e - m]

    def mul_digits(self, a, b) -> tuple[int, ...]:
        """Schoolbook product of two digit vectors, reduced by the modulus."""
        p, m = self.p, self.m
        prod = [0] * (2 * m - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] = (prod[i + j] + ai * bj) % p
        res = list(prod[:m])
        for e in range(m, 2 * m - 1):
            c = prod[e]
            if c:
                red = self._high_powers[e - m]
                res = [(r + c * d) % p for r, d in zip(res, red)]
        return tuple(res)

    def _pow_digits(self, a, e: int) -> tuple[int, ...]:
        result = tuple(1 if i == 0 else 0 for i in range(self.m))
        base = tuple(a)
        while e:
            if e & 1:
                result = self.mul_digits(result, base)
            base = self.mul_digits(base, base)
            e >>= 1
        return result

    def compose(self, digit_vec) -> int:
        return int(sum(int(d) * w for d, w in zip(digit_vec, self._pw)))

    def _has_full_order(self, idx: int) -> bool:
        if idx == 0:
            return False
        a = tuple(int(d) for d in self.digits[idx])
        one = tuple(1 if i == 0 else 0 for i in range(self.m))
        for ell in prime_factors(self.q - 1):
            if self._pow_digits(a, (self.q - 1) // ell) == one:
                return False
        return True

    def _find_primitive(self) -> int:
        for idx in range(2, self.q):
            if self._has_full_order(idx):
                return idx
        raise FieldError("no primitive element found (internal error)")

    def _mult_matrix(self, h_digits) -> np.ndarray:
        # matrix of multiplication by h on digit column vectors
        cols = [
            self.mul_digits(h_digits, self.root_power_digits(i)) for i in range(self.m)
        ]
        return np.array(cols, dtype=np.int64).T

    def _build_exp_log(self) -> None:
        p, m, q = self.p, self.m, self.q
        rows = np.zeros((q - 1, m), dtype=np.int64)
        rows[0, 0] = 1
        g = tuple(int(d) for d in self.digits[self.primitive_index])
        filled = 1
        # double the known prefix of powers each round: g^(t+k) = g^k * g^t
        while filled < q - 1:
            h = self._pow_digits(g, filled)
            mat = self._mult_matrix(h)
            take = min(filled, q - 1 - filled)
            rows[filled : filled + take] = (rows[:take] @ mat.T) % p
            filled += take
        pw = np.array(self._pw, dtype=np.int64)
        self.exp = rows @ pw
        self.log = np.full(q, -1, dtype=np.int64)
        self.log[self.exp] = np.arange(q - 1, dtype=np.int64)
        if (self.log[1:] < 0).any():
            raise FieldError("primitive element does not generate the field (internal error)")

    def _build_trace(self) -> None:
        p, m = self.p, self.m
        # Frobenius x -> x^p is F_p-linear; column i is digits((w^i)^p)
        frob = np.array(
            [self._pow_digits(self.root_power_digits(i), p) for i in range(m)],
            dtype=np.int64,
        ).T
        s = np.eye(m, dtype=np.int64)
        acc = np.eye(m, dtype=np.int64)
        for _ in range(m - 1):
            acc = (frob @ acc) % p
            s = (s + acc) % p
        tr_digits = (self.digits @ s.T) % p
        if m > 1 and tr_digits[:, 1:].any():
            raise FieldError("trace left the prime field (internal error)")
        self.trace_table = tr_digits[:, 0].astype(np.int64)
        # Gram matrix of the trace form Tr(w^i w^j), used by the fast transform
        gram = np.zeros((m, m), dtype=np.int64)
        for i in range(m):
            for j in range(m):
                v = np.array(self.root_power_digits(i + j), dtype=np.int64)
                gram[i, j] = int(((s @ v) % p)[0])
        self.gram = gram

    # ---- index-space operations ------------------------------------------

    def add_idx(self, a: int, b: int) -> int:
        return self.compose((self.digits[a] + self.digits[b]) % self.p)

    def neg_idx(self, a: int) -> int:
        return self.compose((-self.digits[a]) % self.p)

    def sub_idx(self, a: int, b: int) -> int:
        return self.compose((self.digits[a] - self.digits[b]) % self.p)

    def mul_idx(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(self.log[a] + self.log[b]) % (self.q - 1)])

    def inv_idx(self, a: int) -> int:
        if a == 0:
            raise FieldError("cannot invert 0")
        return int(self.exp[(-self.log[a]) % (self.q - 1)])

    def pow_idx(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise FieldError("cannot raise 0 to a negative power")
            return 0
        return int(self.exp[(int(self.log[a]) * e) % (self.q - 1)])

    def trace_idx(self, a: int) -> int:
        return int(self.trace_table[a])

    def eta_idx(self, a: int) -> int:
        if a == 0:
            raise FieldError("the quadratic character is undefined at 0")
        if self._eta_table is None:
            self._eta_table = self._compute_eta()
        return int(self._eta_table[a])

    def _compute_eta(self) -> np.ndarray:
        # Definition-first: raise every element to (q-1)/2 by square and
        # multiply, then read off +-1.  Memoized for the context's lifetime.
        res = self.pow_indices(np.arange(self.q, dtype=np.int64), (self.q - 1) // 2)
        minus_one = self.p - 1  # index of the constant polynomial p-1
        if not np.all((res[1:] == 1) | (res[1:] == minus_one)):
            raise FieldError("quadratic character computation failed (internal error)")
        table = np.where(res == 1, 1, -1).astype(np.int64)
        table[0] = 0
        return table

    # ---- vectorized index-space operations ---------------------------------

    def mul_indices(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        a, b = np.broadcast_arrays(a, b)
        out = np.zeros(a.shape, dtype=np.int64)
        nz = (a != 0) & (b != 0)
        out[nz] = self.exp[(self.log[a[nz]] + self.log[b[nz]]) % (self.q - 1)]
        return out

    def pow_indices(self, a: np.ndarray, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if e < 0:
            raise FieldError("vectorized powers take nonnegative exponents")
        result = np.ones(a.shape, dtype=np.int64)
        base = a.copy()
        while e:
            if e & 1:
                result = self.mul_indices(result, base)
            base = self.mul_indices(base, base)
            e >>= 1
        return result

    def add_indices(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        d = (self.digits[a] + self.digits[b]) % self.p
        return d @ np.array(self._pw, dtype=np.int64)

    # ---- elements -----------------------------------------------------------

    def element(self, idx: int) -> "FieldElement":
        idx = int(idx)
        if not 0 <= idx < self.q:
            raise FieldError(f"element index {idx} out of range for a field of size {self.q}")
        return FieldElement(self, idx)

    def from_coeffs(self, coeffs) -> "FieldElement":
        cs = [int(c) % self.p for c in coeffs]
        if len(cs) > self.m:
            raise FieldError(f"too many digits for degree {self.m}")
        cs += [0] * (self.m - len(cs))
        return FieldElement(self, self.compose(cs))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def w(self) -> "FieldElement":
        """The residue of x, i.e. the root of the modulus inside the field."""
        if self.m == 1:
            return FieldElement(self, (-self.modulus[0]) % self.p)
        return FieldElement(self, self.compose(self.root_power_digits(1)))

    @property
    def g(self) -> "FieldElement":
        """The context's primitive element."""
        return FieldElement(self, self.primitive_index)

    def primitive_indices(self) -> list[int]:
        """Indices of every generator of the multiplicative group."""
        n = self.q - 1
        return [int(self.exp[t]) for t in range(n) if np.gcd(t, n) == 1]

    def elements(self):
        for i in range(self.q):
            yield FieldElement(self, i)

    # ---- identity ------------------------------------------------------------

    def _key(self):
        return (self.p, self.m, self.modulus, self.primitive_index)

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldCtx) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, m={self.m}, modulus={list(self.modulus)})"


class FieldElement:
    """A field element as (context, index), with operator sugar."""

    __slots__ = ("ctx", "index")

    def __init__(self, ctx: FieldCtx, index: int) -> None:
        self.ctx = ctx
        self.index = int(index)

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(int(d) for d in self.ctx.digits[self.index])

    def _check(self, other) -> "FieldElement":
        if isinstance(other, int):
            return self.ctx.from_coeffs([other % self.ctx.p])
        if not isinstance(other, FieldElement) or other.ctx != self.ctx:
            raise FieldError("operands live in different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        return FieldElement(self.ctx, self.ctx.add_idx(self.index, other.index))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return FieldElement(self.ctx, self.ctx.sub_idx(self.index, other.index))

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg_idx(self.index))

    def __mul__(self, other):
        other = self._check(other)
        return FieldElement(self.ctx, self.ctx.mul_idx(self.index, other.index))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        return FieldElement(self.ctx, self.ctx.mul_idx(self.index, self.ctx.inv_idx(other.index)))

    def __pow__(self, e: int):
        return FieldElement(self.ctx, self.ctx.pow_idx(self.index, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.inv_idx(self.index))

    def trace(self) -> int:
        return self.ctx.trace_idx(self.index)

    def eta(self) -> int:
        return self.ctx.eta_idx(self.index)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.ctx.from_coeffs([other % self.ctx.p])
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.ctx == other.ctx and self.index == other.index

    def __hash__(self) -> int:
        return hash((self.ctx, self.index))

    def poly_str(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                unit = "w" if i == 1 else f"w^{i}"
                parts.append(unit if c == 1 else f"{c}{unit}")
        return " + ".join(reversed(parts)) if parts else "0"

    def __str__(self) -> str:
        return self.poly_str()

    def __repr__(self) -> str:
        return f"FieldElement({self.poly_str()}, index={self.index})"


def make_field(p: int, m: int, modulus=None, primitive: int | None = None) -> FieldCtx:
    """Build a field context, falling back to the built-in modulus table.

    Only the bundled fields have table entries; for anything else (including
    F_{3^6}) the modulus must be given explicitly as digits, lowest degree
    first, with the leading 1 included.
    """
    if modulus is None:
        if m == 1:
            modulus = (0, 1)
        elif (p, m) in BUILTIN_MODULI:
            modulus = BUILTIN_MODULI[(p, m)]
        else:
            raise FieldError(
                f"no built-in modulus for p={p}, m={m}; pass one explicitly"
            )
    return FieldCtx(p, m, modulus, primitive)


def trace(x: FieldElement) -> int:
    """Absolute trace down to F_p, returned as an integer digit."""
    return x.trace()


def eta(x: FieldElement) -> int:
    """Quadratic character of the field's multiplicative group (+1/-1)."""
    return x.eta()
