"""
The HN3 network and the biased coin
===================================

Build a 16-vertex Hanoi network, list its long-range edges, and look at how
the coin redistributes amplitude as the bias epsilon moves from the
backbone-only regime (0) through Grover (1) to full confinement (3).
"""

import numpy as np

from hanoiwalk import decompose, epsilon_coin, grover_coin, smallworld_partner, validate_topology
from hanoiwalk.topology import edge_list

n = 4
print("validate:", validate_topology(n))

# every vertex k > 0 factorises as 2**k1 * (2*k2 + 1)
for k in (1, 2, 6, 8):
    c = decompose(k, n)
    print(f"k={k:2d}  level k1={c.k1}  k2={c.k2}  partner={smallworld_partner(k, n)}")

print("small-world edges:", [(a, b) for a, b, kind in edge_list(n) if kind == "smallworld"])

np.set_printoptions(precision=4, suppress=True)
for eps in (0.0, 1.0, 1.7, 3.0):
    C = epsilon_coin(eps)
    # column 1 is where a walker arriving on the backbone gets sent
    print(f"\neps={eps}: |C[:,1]|^2 = {C[:, 1] ** 2}")
    print(C)

print("\nmax |C(1) - Grover| =", np.abs(epsilon_coin(1.0) - grover_coin()).max())
