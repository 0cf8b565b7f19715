"""Functions from a finite point domain into F_p, plus the expression DSL.

A Domain is an ordered product of components, each either a full extension
field F_{p^m} (inner product Tr(b*x)) or a plain coordinate space F_p^n
(dot product).  Points are indexed in mixed radix with the first component
least significant; inside a component, digit 0 is least significant.  A
PFunction is just its truth table in that point order.
"""
from __future__ import annotations

import re

import numpy as np

from .field import SIZE_LIMIT, FieldCtx, FieldElement, FieldError


class DomainError(ValueError):
    pass


class FieldPart:
    """Domain component backed by a full field; pairing is Tr(b*x)."""

    def __init__(self, ctx: FieldCtx) -> None:
        self.ctx = ctx
        self.p = ctx.p
        self.dim = ctx.m
        self.size = ctx.q

    def _key(self):
        return ("field", self.ctx._key())

    def describe(self) -> dict:
        return {
            "kind": "field",
            "m": self.ctx.m,
            "modulus": list(self.ctx.modulus),
            "primitive": self.ctx.primitive_index,
        }

    def __repr__(self) -> str:
        return f"FieldPart(F_{self.p}^{self.dim})"


class VecPart:
    """Domain component F_p^n with the dot-product pairing."""

    def __init__(self, p: int, n: int) -> None:
        if n < 1:
            raise DomainError(f"vector component needs dimension >= 1, got {n}")
        self.p = p
        self.dim = n
        self.size = p**n

    def _key(self):
        return ("vec", self.p, self.dim)

    def describe(self) -> dict:
        return {"kind": "vec", "n": self.dim}

    def __repr__(self) -> str:
        return f"VecPart(F_{self.p}^{self.dim})"


class Domain:
    def __init__(self, components) -> None:
        comps = tuple(components)
        if not comps:
            raise DomainError("a domain needs at least one component")
        p = comps[0].p
        if any(c.p != p for c in comps):
            raise DomainError("all components must share the characteristic")
        self.p = p
        self.components = comps
        self.n_total = sum(c.dim for c in comps)
        self.size = p**self.n_total
        if self.size > SIZE_LIMIT:
            raise DomainError(
                f"domain size {p}^{self.n_total} exceeds the limit 2^20"
            )
        self._digit_pw = np.array([p**i for i in range(self.n_total)], dtype=np.int64)
        sizes = [c.size for c in comps]
        self._comp_offsets = []
        acc = 1
        for s in sizes:
            self._comp_offsets.append(acc)
            acc *= s
        self._cache: dict[str, object] = {}

    # ---- constructors -----------------------------------------------------

    @classmethod
    def field(cls, ctx: FieldCtx) -> "Domain":
        return cls([FieldPart(ctx)])

    @classmethod
    def vec(cls, p: int, n: int) -> "Domain":
        return cls([VecPart(p, n)])

    def extend(self, *extra) -> "Domain":
        return Domain(self.components + tuple(extra))

    # ---- identity ----------------------------------------------------------

    def _key(self):
        return tuple(c._key() for c in self.components)

    def __eq__(self, other) -> bool:
        return isinstance(other, Domain) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"Domain({', '.join(repr(c) for c in self.components)})"

    def describe(self) -> dict:
        return {
            "p": self.p,
            "n_total": self.n_total,
            "components": [c.describe() for c in self.components],
        }

    # ---- digit and component views ----------------------------------------

    def digits_matrix(self) -> np.ndarray:
        """All point indices decomposed into base-p digits, shape (size, n_total)."""
        if "digits" not in self._cache:
            idx = np.arange(self.size, dtype=np.int64)
            self._cache["digits"] = np.stack(
                [(idx // self._digit_pw[i]) % self.p for i in range(self.n_total)], axis=1
            )
        return self._cache["digits"]  # type: ignore[return-value]

    def component_index_arrays(self) -> list[np.ndarray]:
        """Per-component local indices for every point, each shape (size,)."""
        if "comp_idx" not in self._cache:
            idx = np.arange(self.size, dtype=np.int64)
            out = []
            for c, off in zip(self.components, self._comp_offsets):
                out.append((idx // off) % c.size)
            self._cache["comp_idx"] = out
        return self._cache["comp_idx"]  # type: ignore[return-value]

    def component_indices(self, i: int) -> tuple[int, ...]:
        return tuple(
            (i // off) % c.size for c, off in zip(self.components, self._comp_offsets)
        )

    def compose_components(self, parts) -> int:
        return int(sum(int(v) * off for v, off in zip(parts, self._comp_offsets)))

    def point_add(self, i: int, j: int) -> int:
        """Pointwise sum; in digit space this is digit-wise addition mod p."""
        p = self.p
        di = [(i // int(w)) % p for w in self._digit_pw]
        dj = [(j // int(w)) % p for w in self._digit_pw]
        return int(sum(((a + b) % p) * int(w) for a, b, w in zip(di, dj, self._digit_pw)))

    def point_neg(self, i: int) -> int:
        p = self.p
        return int(
            sum(((-((i // int(w)) % p)) % p) * int(w) for w in self._digit_pw)
        )

    def negation_perm(self) -> np.ndarray:
        if "negperm" not in self._cache:
            self._cache["negperm"] = ((-self.digits_matrix()) % self.p) @ self._digit_pw
        return self._cache["negperm"]  # type: ignore[return-value]

    # ---- the bilinear pairing ----------------------------------------------

    def inner_product(self, b: int, x: int) -> int:
        """<b, x>: trace of the product on field components, dot product on vectors."""
        total = 0
        p = self.p
        for c, off in zip(self.components, self._comp_offsets):
            bi = (b // off) % c.size
            xi = (x // off) % c.size
            if isinstance(c, FieldPart):
                total += c.ctx.trace_idx(c.ctx.mul_idx(bi, xi))
            else:
                for _ in range(c.dim):
                    total += (bi % p) * (xi % p)
                    bi //= p
                    xi //= p
        return total % p

    def gram(self) -> np.ndarray:
        """Matrix C of the pairing on digit vectors: <b, x> = (C b) . x mod p."""
        if "gram" not in self._cache:
            n = self.n_total
            C = np.zeros((n, n), dtype=np.int64)
            pos = 0
            for c in self.components:
                d = c.dim
                if isinstance(c, FieldPart):
                    C[pos : pos + d, pos : pos + d] = c.ctx.gram
                else:
                    C[pos : pos + d, pos : pos + d] = np.eye(d, dtype=np.int64)
                pos += d
            self._cache["gram"] = C
        return self._cache["gram"]  # type: ignore[return-value]

    def walsh_perm(self) -> np.ndarray:
        """Index permutation i -> index(C * digits(i)), validated bijective."""
        if "wperm" not in self._cache:
            D = self.digits_matrix()
            perm = ((D @ self.gram().T) % self.p) @ self._digit_pw
            if np.unique(perm).size != self.size:
                raise DomainError("degenerate pairing (internal error)")
            self._cache["wperm"] = perm
        return self._cache["wperm"]  # type: ignore[return-value]


class PFunction:
    """A function into F_p given by its truth table over a Domain."""

    def __init__(self, domain: Domain, table) -> None:
        arr = np.asarray(table, dtype=np.int64)
        if arr.shape != (domain.size,):
            raise DomainError(
                f"table length {arr.shape} does not match domain size {domain.size}"
            )
        if arr.min(initial=0) < 0 or arr.max(initial=0) >= domain.p:
            arr = arr % domain.p
        self.domain = domain
        self.table = arr

    @property
    def p(self) -> int:
        return self.domain.p

    def __call__(self, i: int) -> int:
        return int(self.table[i])

    def __add__(self, other: "PFunction") -> "PFunction":
        if not isinstance(other, PFunction):
            return NotImplemented
        if self.domain != other.domain:
            raise DomainError("cannot add functions on different domains")
        return PFunction(self.domain, (self.table + other.table) % self.p)

    def __neg__(self) -> "PFunction":
        return PFunction(self.domain, (-self.table) % self.p)

    def __sub__(self, other: "PFunction") -> "PFunction":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PFunction):
            return NotImplemented
        return self.domain == other.domain and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash((self.domain, self.table.tobytes()))

    def translate(self, a: int) -> "PFunction":
        """The function x -> f(x + a)."""
        dom = self.domain
        D = dom.digits_matrix()
        a_digits = (a // dom._digit_pw) % dom.p
        perm = ((D + a_digits) % dom.p) @ dom._digit_pw
        return PFunction(dom, self.table[perm])

    def as_vec(self) -> "PFunction":
        """The same table viewed over plain coordinates F_p^{n_total}."""
        return PFunction(Domain.vec(self.p, self.domain.n_total), self.table)

    def __repr__(self) -> str:
        return f"PFunction({self.domain!r}, {self.domain.size} points)"


def zero_function(domain: Domain) -> PFunction:
    return PFunction(domain, np.zeros(domain.size, dtype=np.int64))


def random_function(domain: Domain, rng: np.random.Generator) -> PFunction:
    return PFunction(domain, rng.integers(0, domain.p, size=domain.size))


def shift_compose(g: PFunction, h: list[PFunction]) -> PFunction:
    """(x, y) -> g(y + h(x)) on D x F_p^n, where h is one coordinate map per axis.

    g must live on a single n-dimensional vector domain and every h_j on one
    common domain D.
    """
    if len(g.domain.components) != 1 or not isinstance(g.domain.components[0], VecPart):
        raise DomainError("the outer function must live on a single vector component")
    n = g.domain.components[0].dim
    if len(h) != n:
        raise DomainError(f"need {n} coordinate maps, got {len(h)}")
    base = h[0].domain
    if any(hj.domain != base for hj in h):
        raise DomainError("coordinate maps must share one domain")
    p = g.p
    if base.p != p:
        raise DomainError("mismatched characteristic")
    out_dom = base.extend(VecPart(p, n))
    nf = base.size
    hvals = np.stack([hj.table for hj in h], axis=1)  # (nf, n)
    ydig = Domain.vec(p, n).digits_matrix()  # (p^n, n)
    pw = np.array([p**i for i in range(n)], dtype=np.int64)
    # target[y, x] = index of y + h(x) inside g's domain
    target = ((ydig[:, None, :] + hvals[None, :, :]) % p) @ pw
    table = g.table[target].reshape(-1)  # y-major matches index = x + y*nf
    return PFunction(out_dom, table)


# ---- expression DSL ---------------------------------------------------------
#
# expr     := term ('+' term)*
# term     := digit '*' trcall | trcall | digit
# trcall   := 'Tr' '(' [coef] xpart ')'
# xpart    := 'x' ['^' uint]
# coef     := cterm (('+'|'-') cterm)*
# cterm    := ['-'] (uint [factor] | factor)
# factor   := ('g' | 'w') ['^' uint] | '(' coef ')'
#
# 'g' is the context's primitive element, 'w' the modulus root.  Whitespace is
# ignored everywhere; integer literals reduce mod p.

class ExprError(ValueError):
    pass


_TOKEN_RE = re.compile(r"(\d+)|(Tr)|([gwx])|([+\-*^()])|(\S)")


def _tokenize(src: str):
    tokens = []
    for mo in _TOKEN_RE.finditer(src):
        if mo.group(5):
            raise ExprError(f"parse error at position {mo.start()}: unexpected {mo.group(5)!r}")
        if mo.group(1):
            tokens.append(("num", int(mo.group(1)), mo.start()))
        elif mo.group(2):
            tokens.append(("tr", "Tr", mo.start()))
        elif mo.group(3):
            tokens.append(("name", mo.group(3), mo.start()))
        else:
            tokens.append(("op", mo.group(4), mo.start()))
    return tokens


class _Parser:
    """Recursive descent over the token list; evaluation is deferred to terms."""

    def __init__(self, ctx: FieldCtx, src: str) -> None:
        self.ctx = ctx
        self.src = src
        self.tokens = _tokenize(src)
        self.pos = 0

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _next(self):
        tok = self._peek()
        if tok is None:
            raise ExprError(f"parse error at position {len(self.src)}: unexpected end of input")
        self.pos += 1
        return tok

    def _expect_op(self, op: str):
        tok = self._next()
        if tok[0] != "op" or tok[1] != op:
            raise ExprError(f"parse error at position {tok[2]}: expected {op!r}")

    def parse(self) -> list:
        terms = [self._term()]
        while True:
            tok = self._peek()
            if tok is None:
                break
            if tok[0] == "op" and tok[1] == "+":
                self.pos += 1
                terms.append(self._term())
            else:
                raise ExprError(f"parse error at position {tok[2]}: expected '+' between terms")
        return terms

    def _term(self):
        tok = self._peek()
        if tok is None:
            raise ExprError(f"parse error at position {len(self.src)}: missing term")
        if tok[0] == "num":
            self.pos += 1
            nxt = self._peek()
            if nxt is not None and nxt[0] == "op" and nxt[1] == "*":
                self.pos += 1
                scale, tr = tok[1], self._trcall()
                return ("tr", scale % self.ctx.p, tr)
            return ("const", tok[1] % self.ctx.p)
        if tok[0] == "tr":
            return ("tr", 1, self._trcall())
        raise ExprError(f"parse error at position {tok[2]}: expected a term")

    def _trcall(self):
        tok = self._next()
        if tok[0] != "tr":
            raise ExprError(f"parse error at position {tok[2]}: expected 'Tr'")
        self._expect_op("(")
        nxt = self._peek()
        if nxt is not None and nxt[0] == "name" and nxt[1] == "x":
            coef = self.ctx.one
        else:
            coef = self._coef(stop_at_x=True)
        tok = self._next()
        if tok[0] != "name" or tok[1] != "x":
            raise ExprError(f"parse error at position {tok[2]}: expected 'x'")
        expo = 1
        nxt = self._peek()
        if nxt is not None and nxt[0] == "op" and nxt[1] == "^":
            self.pos += 1
            etok = self._next()
            if etok[0] != "num":
                raise ExprError(f"parse error at position {etok[2]}: expected an exponent")
            expo = etok[1]
        self._expect_op(")")
        return (coef, expo)

    def _coef(self, stop_at_x: bool = False) -> FieldElement:
        total = self._cterm()
        while True:
            tok = self._peek()
            if tok is None or tok[0] != "op" or tok[1] not in "+-":
                break
            sign = 1 if tok[1] == "+" else -1
            self.pos += 1
            nxt = self._cterm()
            total = total + nxt if sign == 1 else total - nxt
        if stop_at_x:
            tok = self._peek()
            if tok is None or tok[0] != "name" or tok[1] != "x":
                where = tok[2] if tok else len(self.src)
                raise ExprError(f"parse error at position {where}: expected 'x' after the coefficient")
        return total

    def _cterm(self) -> FieldElement:
        sign = 1
        tok = self._peek()
        if tok is not None and tok[0] == "op" and tok[1] == "-":
            sign = -1
            self.pos += 1
            tok = self._peek()
        scale = None
        if tok is not None and tok[0] == "num":
            scale = tok[1]
            self.pos += 1
            tok = self._peek()
            if tok is not None and tok[0] == "op" and tok[1] == "*":
                self.pos += 1
                tok = self._peek()
        value: FieldElement | None = None
        if tok is not None and (
            (tok[0] == "name" and tok[1] in "gw") or (tok[0] == "op" and tok[1] == "(")
        ):
            value = self._factor()
        if scale is None and value is None:
            where = tok[2] if tok else len(self.src)
            raise ExprError(f"parse error at position {where}: expected a coefficient")
        if value is None:
            value = self.ctx.one
        if scale is not None:
            value = (scale % self.ctx.p) * value
        return -value if sign == -1 else value

    def _factor(self) -> FieldElement:
        tok = self._next()
        if tok[0] == "op" and tok[1] == "(":
            inner = self._coef()
            self._expect_op(")")
            return inner
        if tok[0] != "name" or tok[1] not in "gw":
            raise ExprError(f"parse error at position {tok[2]}: expected 'g' or 'w'")
        base = self.ctx.g if tok[1] == "g" else self.ctx.w
        nxt = self._peek()
        if nxt is not None and nxt[0] == "op" and nxt[1] == "^":
            self.pos += 1
            etok = self._next()
            if etok[0] != "num":
                raise ExprError(f"parse error at position {etok[2]}: expected an exponent")
            return base ** etok[1]
        return base


def parse_coefficient(ctx: FieldCtx, src: str) -> FieldElement:
    """Parse a standalone coefficient expression like 'g^7', 'w^2+1' or '2'."""
    parser = _Parser(ctx, src)
    value = parser._coef()
    tok = parser._peek()
    if tok is not None:
        raise ExprError(f"parse error at position {tok[2]}: trailing input")
    return value


def from_expr(ctx: FieldCtx, src: str) -> PFunction:
    """Build a PFunction on the field domain from a trace-polynomial expression."""
    parser = _Parser(ctx, src)
    terms = parser.parse()
    dom = Domain.field(ctx)
    idx = np.arange(ctx.q, dtype=np.int64)
    table = np.zeros(ctx.q, dtype=np.int64)
    for term in terms:
        if term[0] == "const":
            table = (table + term[1]) % ctx.p
        else:
            _, scale, (coef, expo) = term
            xe = ctx.pow_indices(idx, expo)
            prod = ctx.mul_indices(np.full(ctx.q, coef.index, dtype=np.int64), xe)
            table = (table + scale * ctx.trace_table[prod]) % ctx.p
    return PFunction(dom, table)


# ---- truth-table files -------------------------------------------------------
#
# Format: optional '#' header lines (one per component for field-bearing
# domains), then a line 'p n_total', then p^n_total whitespace-separated
# digits in point-index order.

def dump_tt(f: PFunction) -> str:
    """Render a function in the truth-table file format."""
    dom = f.domain
    lines = []
    if any(isinstance(c, FieldPart) for c in dom.components):
        for c in dom.components:
            if isinstance(c, FieldPart):
                mods = ",".join(str(d) for d in c.ctx.modulus)
                lines.append(
                    f"# field m={c.ctx.m} modulus={mods} primitive={c.ctx.primitive_index}"
                )
            else:
                lines.append(f"# vec n={c.dim}")
    lines.append(f"{dom.p} {dom.n_total}")
    vals = f.table
    for start in range(0, len(vals), 32):
        lines.append(" ".join(str(int(v)) for v in vals[start : start + 32]))
    return "\n".join(lines) + "\n"


def save_tt(f: PFunction, path) -> None:
    with open(path, "w") as fh:
        fh.write(dump_tt(f))


_FIELD_HDR = re.compile(
    r"#\s*field\s+m=(\d+)\s+modulus=([\d,]+)(?:\s+primitive=(\d+))?\s*$"
)
_VEC_HDR = re.compile(r"#\s*vec\s+n=(\d+)\s*$")


def load_tt(path) -> PFunction:
    headers: list[str] = []
    body: list[str] = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                headers.append(line)
            else:
                body.append(line)
    if not body:
        raise DomainError(f"{path}: no data lines")
    first = body[0].split()
    if len(first) != 2:
        raise DomainError(f"{path}: first data line must be 'p n_total'")
    p, n_total = int(first[0]), int(first[1])
    digits = [int(tok) for line in body[1:] for tok in line.split()]
    comps: list = []
    if headers:
        for hdr in headers:
            mo = _FIELD_HDR.match(hdr)
            if mo:
                m = int(mo.group(1))
                modulus = [int(d) for d in mo.group(2).split(",")]
                prim = int(mo.group(3)) if mo.group(3) else None
                comps.append(FieldPart(FieldCtx(p, m, modulus, prim)))
                continue
            mo = _VEC_HDR.match(hdr)
            if mo:
                comps.append(VecPart(p, int(mo.group(1))))
                continue
            raise DomainError(f"{path}: unrecognized header {hdr!r}")
        dom = Domain(comps)
        if dom.n_total != n_total:
            raise DomainError(
                f"{path}: headers give {dom.n_total} digits but the size line says {n_total}"
            )
    else:
        dom = Domain.vec(p, n_total)
    if len(digits) != dom.size:
        raise DomainError(
            f"{path}: expected {dom.size} table entries, found {len(digits)}"
        )
    if any(d < 0 or d >= p for d in digits):
        raise DomainError(f"{path}: table digits must lie in 0..{p - 1}")
    return PFunction(dom, np.array(digits, dtype=np.int64))
