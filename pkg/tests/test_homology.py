from __future__ import annotations

import itertools
import random
from math import gcd

import pytest

from cfkbounds.builders import (
    corpus,
    example_12n404_summand,
    example_sum_summand_C,
    figure_eight,
    square,
    torus_knot,
    unknot,
    virtual_Cij,
)
from cfkbounds.complex import KnotComplex, direct_sum, dual, reduce, tensor
from cfkbounds.errors import NotAKnotComplex, ValidationError
from cfkbounds.homology import (
    hat_homology,
    ideal_sequence,
    knot_homology,
    nu_minus,
    stable_check,
    t_hat,
    t_minus,
    t_plus,
    t_pq_torsion,
    torsion_generators,
    torsion_profile,
)

from oracles import BigradedOracle, scramble

TREFOIL = torus_knot(2, 3)
KNOTS = {k: v for k, v in corpus().items() if k != "12n404C"}


def test_stable_check_examples():
    assert stable_check(unknot()) == 0
    assert stable_check(TREFOIL) == 1
    assert stable_check(virtual_Cij(1, 2)) == 2


def test_stable_check_rejects_torsion_only():
    with pytest.raises(NotAKnotComplex):
        stable_check(square())
    with pytest.raises(NotAKnotComplex):
        stable_check(example_12n404_summand())
    assert knot_homology(example_12n404_summand(), summand=True).stable_rank == 0


def test_two_free_generators_rejected():
    with pytest.raises(NotAKnotComplex):
        stable_check(direct_sum(unknot(), unknot().renamed(["y"])))


def test_empty_and_acyclic_rejected():
    with pytest.raises(ValidationError):
        stable_check(KnotComplex((), ()))
    pair = KnotComplex.build([("x", (0, 0)), ("y", (-1, 0))], [("x", "y", (0, 0))])
    with pytest.raises(NotAKnotComplex):
        stable_check(pair)


def test_nu_minus_examples():
    assert nu_minus(unknot()) == 0
    assert nu_minus(torus_knot(3, 4)) == 3
    assert nu_minus(figure_eight()) == 0
    assert nu_minus(dual(figure_eight())) == 0


@pytest.mark.parametrize("n", range(0, 6))
def test_ideal_sequence_t2(n):
    assert ideal_sequence(torus_knot(2, 2 * n + 1) if n else unknot()) == tuple(range(n + 1))


def test_ideal_sequence_examples():
    assert ideal_sequence(torus_knot(3, 4)) == (0, 1, 3)
    assert ideal_sequence(example_sum_summand_C()) == (0, 1, 2, 3)
    assert ideal_sequence(unknot()) == (0,)


def test_torsion_profile_examples():
    for p, q in [(2, 3), (3, 4), (2, 7), (3, 5)]:
        assert len(torsion_profile(torus_knot(p, q))) == 0
    fig = torsion_profile(figure_eight())
    assert [(c.w_death, c.u_death) for c in fig.classes] == [(1, 1)]
    gens = torsion_generators(dual(torus_knot(2, 5)))
    assert sorted(g.w_death for g in gens) == [1, 2]
    assert {g.annihilator for g in gens} == {((0, 2), (1, 0)), ((0, 1), (2, 0))}


def test_t_minus_examples():
    for p, q in [(2, 3), (3, 4), (2, 5)]:
        assert t_minus(torus_knot(p, q)) == 0
    assert t_minus(dual(torus_knot(3, 4))) == 3
    assert t_plus(torus_knot(3, 4)) == 3
    assert t_minus(virtual_Cij(2, 3)) == 3


def test_t_hat_examples():
    assert t_hat(torus_knot(3, 4)) == 2
    assert t_hat(unknot()) == 0
    assert t_hat(virtual_Cij(1, 2)) == 3
    assert hat_homology(TREFOIL) == (1, (1,))


def test_t_pq_examples():
    assert t_pq_torsion(unknot(), 3, 2) == 0
    assert t_pq_torsion(TREFOIL, 1, 1) == 1
    # sending u to 1 turns the square's u-arrows into units, so it is acyclic
    assert t_pq_torsion(figure_eight(), 0, 1) == 0
    assert t_pq_torsion(figure_eight(), 1, 1) == 1


def test_every_slice_has_free_rank_one():
    for K in KNOTS.values():
        H = knot_homology(K)
        for s in range(H.bottom - 2, H.top + 3):
            assert H.slice(s).rank == 1


def test_ideal_sequence_symmetric_and_tops_at_nu():
    for K in KNOTS.values():
        seq = ideal_sequence(K)
        assert seq[0] == 0 and seq[-1] == nu_minus(K)
        gens = seq.generators()
        assert [b for _, b in gens] == [a for a, _ in reversed(gens)]


def test_image_degree_below_minus_nu():
    for K in KNOTS.values():
        H = knot_homology(K)
        nu = H.nu_minus
        for s, k in H.image_degrees.items():
            if s <= -nu:
                assert k == -s


def _invariants(K):
    return (nu_minus(K), ideal_sequence(K), t_minus(K), t_hat(K))


def test_invariants_stable_under_reduction_and_scrambling():
    rng = random.Random(7)
    for name, K in KNOTS.items():
        base = _invariants(K)
        assert _invariants(reduce(K)) == base, name
        assert _invariants(scramble(K, rng)) == base, name
        assert _invariants(dual(dual(K))) == base, name


KUNNETH = {"trefoil": TREFOIL, "figure8": figure_eight(), "torus25": torus_knot(2, 5), "mirror": dual(TREFOIL)}


@pytest.mark.parametrize("a,b", list(itertools.combinations_with_replacement(KUNNETH, 2)))
def test_kunneth_hat_bounds(a, b):
    K, L = KUNNETH[a], KUNNETH[b]
    th = t_hat(tensor(K, L))
    assert max(t_hat(K), t_hat(L)) <= th <= t_hat(K) + t_hat(L)


def test_nontrivial_knots_detected():
    for name, K in KNOTS.items():
        if name == "unknot":
            continue
        assert max(t_hat(K), t_hat(dual(K))) >= 1, name
        assert max(t_minus(K), t_minus(dual(K))) >= 1, name


@pytest.mark.parametrize("name", sorted(KNOTS))
def test_oracle_t_minus_and_ideal(name):
    K = reduce(KNOTS[name])
    oracle = BigradedOracle(K)
    assert t_minus(K) == oracle.t_minus()
    assert ideal_sequence(K) == oracle.ideal_sequence()


@pytest.mark.parametrize("p,q", [(p, q) for q in range(3, 8) for p in range(2, q) if gcd(p, q) == 1])
def test_oracle_torus_ideal(p, q):
    K = torus_knot(p, q)
    assert ideal_sequence(K) == BigradedOracle(K).ideal_sequence()


def test_12n404_summand_profile():
    H = knot_homology(example_12n404_summand(), summand=True)
    gens = H.torsion_generators
    assert len(gens) == 1
    g = gens[0]
    assert (g.w_death, g.u_death) == (2, 2)
    assert g.annihilator == ((0, 2), (1, 1), (2, 0))
    assert t_minus(example_12n404_summand(), summand=True) == 2


def test_trefoil_plus_mirror_has_trivial_free_part():
    # a slice knot: nu- vanishes on both sides, confirmed by the bigraded oracle
    S = reduce(tensor(TREFOIL, dual(TREFOIL)))
    assert nu_minus(S) == 0 and nu_minus(dual(S)) == 0
    assert ideal_sequence(S) == BigradedOracle(S).ideal_sequence() == (0,)
    assert t_hat(S) == 1
