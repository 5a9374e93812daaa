"""
A low-degree polynomial that vanishes only at the all-ones point
================================================================

Over Z_6 we want Q(z_1..z_n) with Q(1,...,1) = 0 and Q(z) != 0 on every other
0/1 input, and every value 0 or 1 modulo 2 and modulo 3.  The construction
tests digits of the Hamming weight with symmetric polynomials.
"""
# %%
from hass import bbrpoly

spec = bbrpoly.ModulusSpec.of(6)
poly = bbrpoly.build_polynomial(5, spec)
print("degree", poly.degree, "terms", len(poly.multilinear_form))
print(poly.multilinear_form[()], poly.multilinear_form[(0,)], poly.multilinear_form[(0, 1)])

# %%
# Evaluate a few points.  Residues are listed per prime power of m.
for z in ("11111", "11110", "00000", "10100"):
    print(z, bbrpoly.eval(poly, [int(c) for c in z]))

# %%
# The whole cube at once with numpy, then the contract check.
table = bbrpoly.eval_all(bbrpoly.build_polynomial(10, spec))
print("zeros at", [i for i, v in enumerate(table) if v == 0], "of", len(table))
for n in (4, 8, 12):
    print(n, bbrpoly.verify_contract(bbrpoly.build_polynomial(n, spec)).to_json()["passed"])

# %%
# Other moduli work too, including non-squarefree ones.
for m in (10, 12, 30):
    poly = bbrpoly.build_polynomial(6, bbrpoly.ModulusSpec.of(m))
    print(m, poly.degree, bbrpoly.verify_contract(poly).passed)
