"""
Torsion in knot Floer homology: the figure-eight, two cables and a virtual family.

Run with ``python3 demos/torsion_examples.py``.
"""

from __future__ import annotations

from cfkbounds import figure_eight, knot_homology, t_hat, unknotting_report
from cfkbounds.builders import (
    example_12n404_summand,
    example_cable_2_3_2_neg1,
    example_neg_cable_2_3_2_neg3,
    virtual_Cij,
)
from cfkbounds.complex import dual


def show_torsion(label, K, summand=False):
    H = knot_homology(K, summand=summand)
    print(f"{label}: stable rank {H.stable_rank}")
    for g in H.torsion_generators:
        ann = ", ".join(f"u^{a} w^{b}" for a, b in g.annihilator)
        print(f"  generator at Alexander {g.level}, Maslov {g.maslov}: killed by <{ann}>")


# %% The figure-eight: one square and one free generator
K = figure_eight()
show_torsion("figure-eight", K)
r = unknotting_report(K)
print("  t =", r.t, " t-hat =", r.t_hat, " ideal =", r.ideal_seq)

# %% A cable with rank-one free part and two torsion generators
K = example_cable_2_3_2_neg1()
show_torsion("cable A", K)
print("  t-hat =", t_hat(K))

# %% Its neighbour: two torsion summands with swapped annihilators
K = example_neg_cable_2_3_2_neg3()
show_torsion("cable B", K)
print("  t-hat =", t_hat(K), " mirror t-hat =", t_hat(dual(K)))

# %% A direct summand with no free part: analysed in summand mode
show_torsion("12n404 summand", example_12n404_summand(), summand=True)

# %% The virtual complexes C(i,j): nu- = i, t- = j, t-hat = i + j
for i, j in [(1, 1), (1, 2), (2, 3)]:
    r = unknotting_report(virtual_Cij(i, j))
    print(f"C({i},{j}): nu- {r.nu_minus}, t- {r.t_minus}, t-hat {r.t_hat}")
