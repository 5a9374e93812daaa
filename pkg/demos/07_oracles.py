"""
Brute-force cross checks
========================

Small instances of every construction compared against naive enumeration.
"""
# %%
from hass import oracle

for report in oracle.run_grid("default", seed=0):
    print(f"{report.check:28s} {report.instance[:60]:60s} {report.passed}")
