"""Counts of rational plane curves, with and without descendants.

Prints N_d for d <= 4, a few psi-decorated counts, and the two reduction
orders side by side.

    python3 demos/plane_curves.py
"""
from tropgw import GWEngine, parse_key

engine = GWEngine("P2")
for d in range(1, 5):
    key = parse_key("P2", str(d), "pt^%d" % (3 * d - 1))
    print("N_%d = %s" % (d, engine.unlabelled(key)))

print()
first, last = GWEngine("P2", "first"), GWEngine("P2", "last")
for d, conds in [(1, "tau1(pt) line"), (2, "tau1(pt) pt^3"), (2, "tau2(pt) pt^2 line"), (3, "tau1(pt) pt^6")]:
    key = parse_key("P2", str(d), conds)
    a, b = first.unlabelled(key), last.unlabelled(key)
    print("<%s>_%d = %s   (first: %s, last: %s, labelled: %s)"
          % (conds, d, a, a, b, first.labelled(key)))
print("\n%d intermediate invariants cached" % len(first.ledger()))
