"""Classifying functions: bent or not, regularity, dual extraction.

Run:  python3 demos/03_classify_bent.py
"""
import json

from pbent.bent import classify, weak_regular_dual_relation
from pbent.field import make_field
from pbent.pfunc import Domain, PFunction, from_expr

# ---- a regular bent function on 9 points ------------------------------------
dom = Domain.vec(3, 2)
y1y2 = PFunction(dom, [(x % 3) * (x // 3) % 3 for x in range(9)])
rep = classify(y1y2)
print("f(y1, y2) = y1*y2 on F_3^2")
print(f"  bent: {rep.is_bent},  regularity: {rep.regularity},  unit: {rep.zeta}")
print(f"  dual table: {[int(v) for v in rep.dual.table]}  (this is -y1*y2)")
print()

# ---- a weakly regular (not regular) quadratic on GF(27) ---------------------
ctx = make_field(3, 3)
f = from_expr(ctx, "Tr(x^2)")
rep = classify(f)
print("f(x) = Tr(x^2) on GF(27)")
print(f"  bent: {rep.is_bent},  regularity: {rep.regularity},  unit: {rep.zeta}")
print(f"  constant unit u = {rep.constant_unit}; every W(b) equals u * g_3 * 3 * e^(f*(b))")
dual = rep.dual
print(f"  dual f*(b) at b = 0..8: {[dual(b) for b in range(9)]}")
check = weak_regular_dual_relation(f, rep)
print(f"  dual relation W(b) = u * P * e^(f*(b)) verified exactly: {check.ok}")
print()

# ---- a non-bent function has a witness ---------------------------------------
g = PFunction(Domain.vec(3, 2), [0, 1, 2, 0, 1, 2, 0, 1, 2])
rep = classify(g)
print("g(y1, y2) = y2 (a linear function) on F_3^2")
print(f"  bent: {rep.is_bent}")
print(f"  witnesses: {rep.witnesses}  (smallest b with |W(b)|^2 != 9)")
print()

# ---- machine-readable report --------------------------------------------------
rep = classify(from_expr(ctx, "Tr(wx^2)"))
print("classification report for Tr(w*x^2) as JSON:")
print(json.dumps(rep.to_json(), indent=2))
