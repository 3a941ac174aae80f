"""
Torus knots: from the Alexander polynomial to the ideal sequence.

Run with ``python3 demos/torus_knots.py``.
"""

from __future__ import annotations

from cfkbounds import (
    frak_a,
    ideal_sequence,
    nu_minus,
    t_hat,
    t_plus,
    torus_alexander,
    torus_knot,
    torus_ideal_closed_form,
)
from cfkbounds.builders import staircase_exponents
from cfkbounds.complex import dump_complex

# %% The (3, 4) torus knot is a staircase read off its Alexander polynomial
delta = torus_alexander(3, 4)
print("Alexander polynomial of T(3,4):", delta)
print("staircase exponents:", staircase_exponents(delta))
K = torus_knot(3, 4)
print(dump_complex(K, header="T(3,4)"))

# %% Its homology has no torsion; the free part is the ideal generated by
# u^i_k w^i_{n-k}
seq = ideal_sequence(K)
print("ideal sequence:", tuple(seq))
print("monomial generators (u, w):", seq.generators())
print("nu- =", nu_minus(K), " a(K) =", frak_a(seq))

# %% Torsion appears only after setting u = 0, or in the mirror
print("t-hat =", t_hat(K), " t+ =", t_plus(K))

# %% A small table
print()
print(f"{'knot':>8}  {'nu-':>4}  {'t-hat':>5}  ideal sequence")
for p, q in [(2, 5), (2, 7), (3, 5), (3, 7), (4, 5), (5, 6)]:
    K = torus_knot(p, q)
    print(f"T({p},{q}):".rjust(8), f"{nu_minus(K):>4}  {t_hat(K):>5}  {tuple(ideal_sequence(K))}")

# %% For q = pn + 1 there is a closed form, which the pipeline reproduces
for p, n in [(3, 2), (4, 1), (4, 2)]:
    closed = torus_ideal_closed_form(p, n)
    computed = ideal_sequence(torus_knot(p, p * n + 1))
    print(f"p={p}, n={n}: closed form {tuple(closed)}, computed {tuple(computed)}")
