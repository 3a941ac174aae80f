from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cfkbounds.builders import corpus, figure_eight, torus_knot, unknot
from cfkbounds.complex import (
    Bigrading,
    KnotComplex,
    Monomial,
    direct_sum,
    dual,
    dump_complex,
    genus_upper,
    hat_specialize,
    infer_gradings,
    parse_complex,
    reduce,
    slice_complex,
    tensor,
    u_map,
    v_specialize,
    validate,
    w_map,
    w_power_exponents,
)
from cfkbounds.errors import (
    AsymmetricAlexanderMultiset,
    DifferentialNotSquareZero,
    FormatError,
    InconsistentGradingSystem,
    InhomogeneousArrow,
    SelfLoop,
)

from oracles import scramble

TREFOIL = torus_knot(2, 3)


def test_unknot_and_trefoil_validate():
    assert validate(unknot())
    assert validate(TREFOIL)
    assert [g.alexander for g in TREFOIL.gradings] == [1, 0, -1]


def test_altered_maslov_is_inhomogeneous():
    g = list(TREFOIL.gradings)
    g[1] = Bigrading(g[1].maslov + 1, g[1].alexander)
    bad = KnotComplex(TREFOIL.names, tuple(g), TREFOIL.arrows)
    with pytest.raises(InhomogeneousArrow):
        validate(bad)


def test_self_loop_and_d_squared():
    with pytest.raises(SelfLoop):
        validate(KnotComplex.build([("x", (0, 0))], [("x", "x", (0, 0))]))
    # x -> y -> z with composite u, nothing cancels it
    K = KnotComplex.build(
        [("x", (0, 0)), ("y", (-1, 0)), ("z", (0, 1))],
        [("x", "y", (0, 0)), ("y", "z", (1, 0))],
    )
    with pytest.raises(DifferentialNotSquareZero) as exc:
        validate(K)
    assert exc.value.pair == ("x", "z")


def test_duplicate_arrows_cancel():
    K = KnotComplex.build([("x", (0, 0)), ("y", (-1, 0))], [("x", "y", (0, 0)), ("x", "y", (0, 0))])
    assert K.arrows == ()


def test_reduce_examples():
    assert reduce(TREFOIL) == TREFOIL
    pair = KnotComplex.build([("x", (0, 0)), ("y", (-1, 0))], [("x", "y", (0, 0))])
    assert len(reduce(pair)) == 0
    summed = direct_sum(TREFOIL, KnotComplex.build([("p", (5, 2)), ("q", (4, 2))], [("p", "q", (0, 0))]))
    assert reduce(summed).same_as(TREFOIL)


def test_reduce_output_is_valid_and_idempotent():
    rng = random.Random(1)
    for name, K in corpus().items():
        S = scramble(K, rng)
        validate(S)
        R = reduce(S)
        validate(R)
        assert not any(ar.mono.is_unit() for ar in R.arrows)
        assert reduce(R) == R
        assert len(R) == len(K), name


def test_dual_examples():
    assert dual(unknot()).same_as(unknot().renamed(["x0*"]))
    D = dual(TREFOIL)
    arrows = set(D.arrow_names())
    assert arrows == {("x0*", "x1*", Monomial(1, 0)), ("x2*", "x1*", Monomial(0, 1))}
    for K in corpus().values():
        validate(dual(K))
        assert dual(dual(K)) == K


def test_tensor_examples():
    T = tensor(TREFOIL, TREFOIL)
    assert len(T) == 9 and validate(T) and genus_upper(T) == 2
    M = tensor(TREFOIL, dual(TREFOIL))
    assert len(M) == 9 and validate(M)
    U = tensor(TREFOIL, unknot())
    assert U.gradings == TREFOIL.gradings and len(U.arrows) == len(TREFOIL.arrows)


def test_tensor_commutative_up_to_renaming():
    K, L = torus_knot(2, 5), figure_eight()
    A, B = tensor(K, L), tensor(L, K)
    swap = {f"({x},{y})": f"({y},{x})" for x in K.names for y in L.names}
    assert A.renamed([swap[n] for n in A.names]).same_as(B)


def test_hat_specialize():
    D = hat_specialize(unknot())
    assert D.size == 1 and not D.entries
    assert hat_specialize(TREFOIL).entries == {(2, 1): 1}
    assert len(hat_specialize(figure_eight()).entries) == 2


def test_v_specialize():
    assert sorted(v_specialize(TREFOIL, 1, 1).entries.values()) == [1, 1]
    fig = figure_eight()
    entries = v_specialize(fig, 1, 2).entries
    expect = {(fig.index[t], fig.index[s]): m.a + 2 * m.b for s, t, m in fig.arrow_names()}
    assert entries == expect
    hat = hat_specialize(fig).entries
    v01 = v_specialize(fig, 0, 1).entries
    assert all(v01[k] == e for k, e in hat.items())


def test_trefoil_slice_entries():
    sc = slice_complex(TREFOIL, 1)
    assert sc.monomials == (Monomial(0, 0), Monomial(0, 1), Monomial(0, 2))
    assert sc.matrix.entries == {(0, 1): 1, (2, 1): 0}


def test_slice_extremes():
    for K in corpus().values():
        lo, hi = K.alexander_range()
        top = slice_complex(K, hi + 1).matrix.entries
        bottom = slice_complex(K, lo - 1).matrix.entries
        for s, t, m in K.arrows:
            assert top[(t, s)] == m.a
            assert bottom[(t, s)] == m.b


def test_w_map_examples():
    assert w_map(TREFOIL, 0) == (1, 0, 0)
    assert w_map(TREFOIL, 1) == (0, 0, 0)
    assert w_map(unknot(), -3) == (1,)
    assert w_map(unknot(), 0) == (0,)


def test_w_map_and_u_map_are_chain_maps():
    for K in corpus().values():
        lo, hi = K.alexander_range()
        for s in range(lo - 1, hi + 2):
            for step, fn in ((1, w_map), (-1, u_map)):
                eps = fn(K, s)
                a = slice_complex(K, s).matrix.entries
                b = slice_complex(K, s + step).matrix.entries
                # d(eps x) computed two ways: boundary then map, map then boundary
                assert set(a) == set(b)
                for (r, c), e in a.items():
                    assert e + eps[r] == eps[c] + b[(r, c)]


def test_w_power_matches_iterated_w_map():
    for K in corpus().values():
        lo, hi = K.alexander_range()
        for s in range(lo - 1, hi + 1):
            for m in range(0, 4):
                acc = [0] * len(K)
                for k in range(m):
                    acc = [x + y for x, y in zip(acc, w_map(K, s + k))]
                assert tuple(acc) == w_power_exponents(K, s, m)


def test_stable_slices_equal_above_genus():
    for K in corpus().values():
        g = genus_upper(K)
        assert slice_complex(K, g).matrix == slice_complex(K, g + 3).matrix


def test_infer_gradings_examples():
    K = infer_gradings(["x0", "x1", "x2"], [("x1", "x0", (1, 0)), ("x1", "x2", (0, 1))])
    assert [g.alexander for g in K.gradings] == [1, 0, -1]
    assert K.gradings[0].maslov == 0
    two = infer_gradings(["a", "b"], [("a", "b", (1, 1))])
    assert two.gradings[0].alexander - two.gradings[1].alexander == 0
    assert two.gradings[0].maslov - two.gradings[1].maslov == -1


def test_infer_gradings_errors():
    with pytest.raises(InconsistentGradingSystem):
        infer_gradings(["a", "b"], [("a", "b", (1, 0)), ("a", "b", (0, 1))])
    with pytest.raises(AsymmetricAlexanderMultiset):
        infer_gradings(["a", "b"], [("a", "b", (0, 1))])


def test_infer_gradings_multiple_components():
    # a staircase component and a free generator: both are centred separately
    K = infer_gradings(["x0", "x1", "x2", "b"], [("x1", "x0", (1, 0)), ("x1", "x2", (0, 1))])
    assert sorted(g.alexander for g in K.gradings) == [-1, 0, 0, 1]
    # two single arrows that only balance each other
    K = infer_gradings(["a", "b", "c", "d"], [("a", "b", (0, 2)), ("c", "d", (2, 0))])
    alex = sorted(g.alexander for g in K.gradings)
    assert alex == sorted(-x for x in alex)


def test_infer_with_anchor():
    K = infer_gradings(["x0", "x1", "x2"], [("x1", "x0", (1, 0)), ("x1", "x2", (0, 1))], anchor={"x1": (5, 0)})
    assert K.gradings[1] == Bigrading(5, 0)


def test_genus_upper():
    assert genus_upper(unknot()) == 0
    assert genus_upper(TREFOIL) == 1
    assert genus_upper(torus_knot(3, 4)) == 3


def test_text_roundtrip():
    for K in corpus().values():
        text = dump_complex(K)
        assert parse_complex(text) == K
        assert dump_complex(parse_complex(text)) == text


def test_parse_without_gradings_infers():
    text = "# trefoil\ngenerator x0\ngenerator x1  # middle\ngenerator x2\narrow x1 x0 1 0\narrow x1 x2 0 1\n"
    K, inferred = parse_complex(text, return_inferred=True)
    assert inferred and K.same_as(TREFOIL)


def test_parse_errors():
    with pytest.raises(FormatError):
        parse_complex("generator a 0 0\ngenerator b\n")
    with pytest.raises(FormatError):
        parse_complex("generator a 0 0\narrow a c 0 0\n")
    with pytest.raises(FormatError):
        parse_complex("vertex a\n")
    with pytest.raises(FormatError):
        parse_complex("generator a x y\n")
    with pytest.raises(FormatError):
        parse_complex("# nothing\n")


def test_parse_duplicate_arrow_lines_cancel():
    text = "generator x 0 0\ngenerator y -1 0\narrow x y 0 0\narrow x y 0 0\n"
    assert parse_complex(text).arrows == ()


@given(st.integers(-5, 5))
@settings(max_examples=20, deadline=None)
def test_maslov_shift_keeps_validity(c):
    for K in corpus().values():
        validate(K.maslov_shift(c))


@given(st.randoms(use_true_random=False))
@settings(max_examples=20, deadline=None)
def test_permutation_keeps_validity(rnd):
    for K in corpus().values():
        perm = list(range(len(K)))
        rnd.shuffle(perm)
        P = K.permuted(perm)
        validate(P)
        assert P.same_as(K)
