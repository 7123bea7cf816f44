"""Exhaustive privacy check on GF(5) with four voters and one colluder.

Every honest dealer's randomness is enumerated; the colluder's view
multisets are equal across all assignments with the same tally.  Forcing
the masks to zero makes some pair differ.
"""

from pvs.privacy import audit_tiny

for report in audit_tiny():
    print(report.to_text())
    print()

leaky = [r for r in audit_tiny(zero_masking=True) if not r.indistinguishable]
print(f"with zero masks {len(leaky)} group(s) become distinguishable, e.g. {leaky[0].witness}")
