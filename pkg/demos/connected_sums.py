"""
Connected sums: tensor products of complexes and how the bounds behave.

Run with ``python3 demos/connected_sums.py``.
"""

from __future__ import annotations

from cfkbounds import dual, figure_eight, reduce, t_hat, tensor, torus_knot, unknotting_report

T23 = torus_knot(2, 3)
T34 = torus_knot(3, 4)

# %% The trefoil plus its mirror is slice, so nu- vanishes on both sides,
# but hat torsion still sees it
S = tensor(T23, dual(T23))
print("generators before/after reduction:", len(S), len(reduce(S)))
r = unknotting_report(S)
print("trefoil # mirror: nu-", r.nu_minus, "mirror nu-", r.nu_minus_mirror, "t-hat", r.t_hat)
print("unknotting lower bound", r.u_lower, "from", r.u_certificate)

# %% Hat torsion of a sum lies between the max and the sum of the pieces
pieces = {"T(2,3)": T23, "T(3,4)": T34, "figure-eight": figure_eight(), "-T(2,3)": dual(T23)}
for a, K in pieces.items():
    for b, L in pieces.items():
        if a >= b:
            continue
        print(f"{a} # {b}: t-hat {t_hat(tensor(K, L))} (pieces {t_hat(K)}, {t_hat(L)})")

# %% Adding T(3,4) to the mirror trefoil keeps a bound of at least p - 1 = 2
r = unknotting_report(tensor(T34, dual(T23)))
print("T(3,4) # -T(2,3): u >=", r.u_lower, "via", r.u_certificate)
