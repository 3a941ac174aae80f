"""
Gordian distance, alternation number and torus-knot adjacency.

Run with ``python3 demos/bounds_and_adjacency.py``.
"""

from __future__ import annotations

from cfkbounds import alt_lower, gordian_lower, torus_adjacency_check, torus_knot, unknot
from cfkbounds.builders import example_cable_2_3_2_neg1
from cfkbounds.invariants import contains_check

# %% Gordian distance between a cable and the trefoil
b = gordian_lower(example_cable_2_3_2_neg1(), torus_knot(2, 3))
print("cable A to trefoil: at least", b.value, "via", b.certificate)
for name, value in b.terms.items():
    print(f"  {name:>16}: {value}")
print("trefoil to unknot: at least", gordian_lower(torus_knot(2, 3), unknot()).value)

# %% Alternation number of T(p, pn+1) grows like n * floor((p-1)^2 / 4)
for p in (3, 4, 5):
    for n in (1, 2):
        b = alt_lower(torus_knot(p, p * n + 1))
        print(f"alt(T({p},{p * n + 1})) >= {b.value}  [{b.certificate}]")

# %% Which T(2,n) can be adjacent to T(3,4), T(3,5), T(3,7)?
for m in (4, 5, 7):
    ok = [n for n in range(3, 4 * m, 2) if torus_adjacency_check(2, n, 3, m).passed]
    print(f"T(2,n) passing the check into T(3,{m}): n in {ok}")

# %% The torus ideal sits inside the ideal cut out by linear inequalities
for p, q in [(2, 5), (3, 5), (4, 5), (5, 6)]:
    r = contains_check(p, q)
    print(f"T({p},{q}): contained {r.contained}, equal {r.equal}")
