"""
Counting pairs of strings that use the same symbols
===================================================

S(n) counts ordered pairs (x, y) of strings in {0..n-1}^n whose symbol sets
agree.  It is also the number of indexed sets the mod-m construction below
produces, so it is worth computing in more than one way.
"""
# %%
# Closed form: sum over symbol-set sizes k of C(n, k) * (k! S2(n, k))^2.
from hass import counting, oracle

for n in range(1, 7):
    print(n, counting.s_of_n_sum(n))

# %%
# The same numbers from the generating function n! [x^n] T_n(x) P_n(x),
# evaluated with exact rationals, and from plain enumeration.
for n in range(1, 6):
    print(n, counting.s_of_n_gf(n), oracle.cover_pair_count(n))

# %%
# S(n) outgrows n^(1.5 n); squaring both sides keeps it in integers.
for n in range(3, 9):
    s = counting.s_of_n_sum(n)
    print(n, s * s > n ** (3 * n), f"{s ** 2 / n ** (3 * n):.3g}")
