"""Tour of the finite-field layer: building F_{p^m}, arithmetic, trace, eta.

Run:  python3 demos/01_field_basics.py
"""
from pbent.field import make_field

# F_27 = F_3[w] / (built-in irreducible cubic), with a precomputed primitive element.
ctx = make_field(3, 3)
print(f"field: GF({ctx.p}^{ctx.m}) = GF({ctx.q}), modulus digits {list(ctx.modulus)} (lowest first)")
print(f"generator g = {ctx.g} (index {ctx.primitive_index})")
print()

# Elements are thin wrappers over table indices; arithmetic is exact.
w = ctx.w
a = w**2 + 1
b = 2 * w + 1
print(f"a = {a},  b = {b}")
print(f"a + b = {a + b}")
print(f"a * b = {a * b}")
print(f"a^-1  = {a.inverse()},  check a * a^-1 = {a * a.inverse()}")
print()

# Discrete log: every nonzero element is a power of the generator.
la = int(ctx.log[a.index])
print(f"log_g(a) = {la},  check g^{la} = {ctx.g ** la}")
print()

# The absolute trace maps onto the prime field and is balanced.
counts = [0] * ctx.p
for i in range(ctx.q):
    counts[ctx.trace_idx(i)] += 1
print(f"trace value counts over all {ctx.q} elements: {counts}")
print(f"Tr(a) = {a.trace()},  Tr(b) = {b.trace()}")
print()

# The quadratic character eta: +1 on squares, -1 on non-squares, and
# eta(g) = -1 because the generator has full order q - 1.
squares = sorted({ctx.mul_idx(i, i) for i in range(1, ctx.q)})
print(f"number of nonzero squares: {len(squares)} (exactly (q-1)/2 = {(ctx.q - 1) // 2})")
print(f"eta(g) = {ctx.g.eta()}")
print(f"eta(a) = {a.eta()},  a is a square: {a.index in squares}")
print(f"eta(b) = {b.eta()},  b is a square: {b.index in squares}")
print()

# eta is multiplicative.
print(f"eta(a)*eta(b) = {a.eta() * b.eta()},  eta(ab) = {(a * b).eta()}")
