"""
Sharing a secret under a hidden access structure
================================================

One run per minimal authorized set.  Tokens tell a coalition which of its
members form an authorized set; the matching shares multiply to the secret.
"""
# %%
from hass import scheme
from hass.ases import AccessStructure
from hass.numth import gen_group_params

tok = gen_group_params(4, 14, seed="tokens")
shr = gen_group_params(4, 14, seed="shares")
access = AccessStructure.of(4, [[1, 2], [3, 4]])
bundle = scheme.share(tok, shr, access, k=4242, seed=7)
public = bundle.public()
print("elements per party", bundle.elements_per_party())

# %%
for coalition in ([1, 2], [2, 3, 4], [1, 3], [1, 2, 3, 4]):
    try:
        print(coalition, scheme.recon(public, coalition))
    except scheme.NotAuthorized as exc:
        print(coalition, "refused:", exc)

# %%
# The tokens, and the shares of parties outside a run's set, do not depend
# on the secret.
other = scheme.share(tok, shr, access, k=17, seed=7)
print([r.tokens == o.tokens for r, o in zip(bundle.runs, other.runs)])
