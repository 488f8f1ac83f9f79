"""
Success probability and cost against epsilon
============================================

Sweep the bias at two network sizes.  Success probability keeps rising
with epsilon, but the first peak arrives later, so the total cost
(steps / success probability) has a broad minimum well above the Grover
value and blows up as epsilon approaches 3.
"""

from hanoiwalk import find_optimal_epsilon, sweep_epsilon

grid = [round(0.2 * i, 10) for i in range(2, 15)]
for n in (8, 10):
    recs = sweep_epsilon(n, grid, workers=4)
    print(f"\nn={n}")
    print(" eps    t_f   p_max    cost")
    for r in recs:
        print(f"{r.epsilon:4.1f} {r.t_f:6d} {r.p_max:7.4f} {r.cost:8.1f}")
    eps_star, cost_star = find_optimal_epsilon(recs)
    refined, _ = find_optimal_epsilon(recs, refine=True)
    print(f"min cost {cost_star:.1f} at eps={eps_star} (parabolic refinement {refined:.3f})")
