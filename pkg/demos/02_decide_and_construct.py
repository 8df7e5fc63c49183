"""Deciding whether Q(sqrt(m)) has an EGR curve with rational j, and building one when it does."""

from egr.reduction import render_report, verify_egr
from egr.setzer import decide, nonexistence_certificate, scan_good_d

# %% The good-D table: square-free parts of A^3 - 1728 for admissible A.
table = scan_good_d(10_000)
print(f"{len(table)} good D with |A| <= 10^4; first few:", sorted(table, key=abs)[:8])

# %% YES: the verdict carries a certified curve.
for m in (6, 33, -259):
    v = decide(m, table)
    w = v.witness
    ok, reports = verify_egr(w.curve)
    print(f"\nm = {m}: {v.status} via A={w.record.A}, D={w.record.D}, q={w.q}")
    print(f"  alpha = {w.alpha}, u = {w.u}, j = {w.curve.j}")
    print("  EGR:", ok)
    print("  " + render_report(reports).replace("\n", "\n  "))

# %% NO: every factorization m = Dq breaks one of the five congruence conditions.
for v in nonexistence_certificate(11):
    print()
    print(v.summary())

# %% UNKNOWN: the conditions hold for some D that the scan never produced.
print()
print(decide(5, table).summary())
