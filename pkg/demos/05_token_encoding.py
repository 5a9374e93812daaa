"""
Hiding a minimal authorized set in tokens
=========================================

Each party z holds t_z = mu^{x_z} mod q.  The identifiers of the authorized
set sum to 0 mod q - 1, so their tokens multiply to 1; every other coalition's
product differs from 1, and this is checked for each emitted instance.
"""
# %%
from hass import ases, oracle
from hass.numth import GroupParams, gen_group_params

# A hand-sized example over q = 31.
toy_group = GroupParams(eta=3, base_primes=(2, 3, 5), cofactor=1, q=31,
                        m_factors=((2, 1), (3, 1), (5, 1)))
toy = ases.instance_from_identifiers(toy_group, {1, 2}, (7, 23, 11), mu=3)
print(dict(toy.tokens), 17 * 11 % 31)
print(ases.hsver_monotone(toy.tokens, 31))
print(ases.hsver_monotone({1: 17, 3: 13}, 31))

# %%
# A generated group and a random encoding for five parties.
group = gen_group_params(5, 16, seed=1)
inst = ases.encode(group, 5, [2, 3, 5], seed=4)
print(inst.public_json())
print("witness from all five:", ases.hsver_monotone(inst.tokens, group.q))

# %%
# Brute force every coalition against the intended structure.
print(oracle.exhaustive_coalitions(inst).details)
