"""
From sets to vectors over Z_m
=============================

Incidence vectors turn intersection sizes into inner products mod m.
"""
# %%
from hass import bbrpoly, covvec, setsys

ss = setsys.build_set_system(3, bbrpoly.ModulusSpec.of(6))
fam = setsys.uniform_subsystem(ss)
vecs = covvec.family_vectors(fam)
u, v = vecs[0], vecs[3]
print(covvec.inner(u, v), len(fam.sets[0] & fam.sets[3]) % 6, covvec.hadamard_weight(u, v))

# %%
# Every vector is self-orthogonal; distinct ones meet in a small residue set.
rep = covvec.verify_covering_family(vecs, r=2)
print(rep["self_orthogonal"]["pass"], rep["realized_S"], "bound", rep["S_bound"])
