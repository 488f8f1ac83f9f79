"""
Marked-vertex probability over time
===================================

Run the search at n = 8 for the Grover coin and for eps = 2 and report the
first peak.  Pass ``--plot`` to save the two traces to ``search_trace.png``
(needs matplotlib).
"""

import sys

from hanoiwalk import CoinSpec, run_search

n, k0 = 8, 1
results = {eps: run_search(n, CoinSpec(eps, k0)) for eps in (1.0, 2.0)}
for eps, res in results.items():
    print(f"eps={eps}: t_f={res.t_f} p_max={res.p_max:.4f} cost={res.cost:.1f} "
          f"(p(0) = {res.trace.values[0]:.6f} = 1/N)")

# vertex 0 behaves differently: the bias does not help there
for eps in (1.0, 2.0):
    res = run_search(n, CoinSpec(eps, 0))
    print(f"k0=0 eps={eps}: t_f={res.t_f} p_max={res.p_max:.4f}")

if "--plot" in sys.argv:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 3.5))
    for eps, res in results.items():
        ax.plot(res.trace.values[:400], lw=0.8, label=f"eps={eps}")
        ax.axvline(res.t_f, ls=":", color="k", lw=0.6)
    ax.set_xlabel("t")
    ax.set_ylabel("p(k0, t)")
    ax.legend()
    fig.tight_layout()
    fig.savefig("search_trace.png", dpi=150)
    print("wrote search_trace.png")
