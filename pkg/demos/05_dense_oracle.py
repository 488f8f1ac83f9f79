"""
Checking the sparse kernel against dense matrices
=================================================

For small networks the full 3N x 3N evolution matrix is cheap to build.
Compare the two evolutions and inspect the spectrum.
"""

import numpy as np

from hanoiwalk import CoinSpec, build_dense, compare_engine

for eps in (0.0, 1.0, 1.7, 2.5, 3.0):
    spec = CoinSpec(eps, 0)
    U = build_dense(4, spec)
    moduli = np.abs(np.linalg.eigvals(U.matrix))
    print(f"eps={eps}: |U'^200 psi - sparse| = {compare_engine(4, spec, 200):.2e}  "
          f"|U'^dag U' - I| = {U.unitarity_error():.2e}  "
          f"eigenvalue moduli in [{moduli.min():.12f}, {moduli.max():.12f}]")
