"""
Scaling with network size
=========================

Cost is fitted to A * N**c * ln N and the success probability to
B * (ln N)**s.  The largest size (n = 12, 12288 amplitudes) takes a few
seconds.
"""

from hanoiwalk import CoinSpec, fit_cost_exponent, fit_success_decay, sweep_size

ns = range(6, 13)
for eps in (1.0, 1.7):
    recs = sweep_size(CoinSpec(eps), ns, workers=4)
    for r in recs:
        print(f"eps={eps} N={r.N:5d} t_f={r.t_f:4d} p_max={r.p_max:.4f} cost={r.cost:.0f}")
    cost = fit_cost_exponent(recs)
    decay = fit_success_decay(recs)
    print(f"  cost exponent c = {cost.parameters['c']:.3f} (R2 {cost.r2:.4f})")
    print(f"  success slope s = {decay.parameters['slope']:.3f} (R2 {decay.r2:.4f})\n")
