"""Psi-class products on the moduli space of rational tropical curves.

    python3 demos/psi_products.py
"""
from tropgw import abstract_invariant, psi_product

fan = psi_product(6, (1, 1, 0, 0, 0, 0))
print("psi_1 psi_2 on M_0,6: dimension %d, %d weighted types" % (fan.dim, len(fan.weights)))
for t, w in sorted(fan.weights.items(), key=lambda kv: kv[0].to_text())[:8]:
    print("  %-24s %d" % (t.to_text(), w))

print("\ntop products, combinatorial degree vs (n-3)!/prod a_k!")
for a in [(1, 0, 0, 0), (2, 0, 0, 0, 0), (1, 1, 0, 0, 0), (1, 1, 1, 0, 0, 0), (2, 1, 1, 0, 0, 0, 0), (3, 2, 0, 0, 0, 0, 0, 0)]:
    print("  %-26s %4d %4d" % (a, psi_product(len(a), a).degree(), abstract_invariant(a)))
