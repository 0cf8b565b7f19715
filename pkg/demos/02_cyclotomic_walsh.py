"""Exact Walsh spectra over the ring Z[e], e = exp(2*pi*i/p).

Every spectral value is stored as an integer vector on the basis
e^0, ..., e^(p-2)  (the relation 1 + e + ... + e^(p-1) = 0 folds the top
power away), so there is no floating point anywhere in the transform.

Run:  python3 demos/02_cyclotomic_walsh.py
"""
from pbent.cyclo import CycInt, gauss_sum, root_power
from pbent.field import make_field
from pbent.pfunc import from_expr
from pbent.walsh import walsh_fast, walsh_naive

# ---- ring arithmetic --------------------------------------------------------
p = 5
x = root_power(p, 1)          # e itself
y = 3 * x**2 - x + CycInt.one(p)
print(f"p = {p}")
print(f"x = {x}")
print(f"y = 3x^2 - x + 1 = {y}")
print(f"x * y = {x * y}")
print(f"conj(y) = {y.conj()}")
print(f"|y|^2 = y * conj(y) = {y.abs_sq()}")
print(f"float check: {y.to_complex():.6f}, |y|^2 ~ {abs(y.to_complex())**2:.6f}")
print()

# The quadratic Gauss sum: g_p^2 = +p or -p depending on p mod 4.
for q in (3, 5, 7):
    g = gauss_sum(q)
    print(f"gauss_sum({q}) = {g},  square = {g * g}")
print()

# ---- an exact spectrum ------------------------------------------------------
ctx = make_field(3, 3)
f = from_expr(ctx, "Tr(x^2)")
W = walsh_fast(f)
print(f"f = Tr(x^2) on GF(27); spectrum computed over Z[e], e = exp(2*pi*i/3)")
for b in range(5):
    v = W[b]
    print(f"  W({b}) = {str(v):>12}   |W({b})|^2 = {v.abs_sq()}")
print("  ...")
print(f"all 27 spectral values have |W(b)|^2 = 27: {W.parseval_ok()} (energy identity)")
print()

# The radix-p fast transform agrees with the defining double sum.
Wn = walsh_naive(f)
print(f"fast transform == naive double sum on all {ctx.q} rows: "
      f"{(W.values == Wn.values).all()}")
print()

# Histogram of |W(b)|^2 over the whole domain.
print(f"spectrum histogram {{|W|^2: count}}: {W.histogram_json()}")
