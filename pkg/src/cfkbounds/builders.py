"""Constructors for the knot complexes used throughout the package."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .complex import Bigrading, KnotComplex, direct_sum, dual, infer_gradings
from .errors import BadStaircase, NonAlternatingAlexander, NotCoprime
from .polyalg import IntLaurentPoly


@dataclass(frozen=True)
class StaircaseData:
    """Strictly decreasing, negation-symmetric exponents ``a_0 > ... > a_{2n}``."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        a = tuple(int(x) for x in self.exponents)
        object.__setattr__(self, "exponents", a)
        if len(a) % 2 == 0:
            raise BadStaircase(f"staircase needs an odd number of exponents, got {len(a)}")
        if any(x <= y for x, y in zip(a, a[1:])):
            raise BadStaircase(f"exponents {a} are not strictly decreasing")
        if any(x != -y for x, y in zip(a, reversed(a))):
            raise BadStaircase(f"exponents {a} are not symmetric under negation")


def unknot() -> KnotComplex:
    return KnotComplex(("x0",), (Bigrading(0, 0),))


def staircase(data: StaircaseData | Sequence[int]) -> KnotComplex:
    """
    Staircase complex on ``x_0, ..., x_{2n}`` with ``A(x_i) = a_i``.

    For odd ``i``, ``d x_i = u^{a_{i-1} - a_i} x_{i-1} + w^{a_i - a_{i+1}} x_{i+1}``.
    Maslov gradings start at 0 on ``x_0``.
    """
    if not isinstance(data, StaircaseData):
        data = StaircaseData(tuple(data))
    a = data.exponents
    mu = [0] * len(a)
    for i in range(1, len(a)):
        if i % 2:
            mu[i] = mu[i - 1] - 2 * (a[i - 1] - a[i]) + 1
        else:
            mu[i] = mu[i - 1] - 1
    gens = [(f"x{i}", (mu[i], a[i])) for i in range(len(a))]
    arrows = []
    for i in range(1, len(a), 2):
        arrows.append((i, i - 1, (a[i - 1] - a[i], 0)))
        arrows.append((i, i + 1, (0, a[i] - a[i + 1])))
    return KnotComplex.build(gens, arrows)


def torus_alexander(p: int, q: int) -> IntLaurentPoly:
    """Symmetrized Alexander polynomial of the ``(p, q)`` torus knot."""
    if gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p}, {q}) != 1")
    t = IntLaurentPoly.monomial(1)
    num = (t ** (p * q) - 1) * (t - 1)
    den = (t**p - 1) * (t**q - 1)
    return num.exact_div(den).shift(-(p - 1) * (q - 1) // 2)


def staircase_exponents(delta: IntLaurentPoly) -> tuple[int, ...]:
    """Exponents of an Alexander polynomial whose coefficients alternate ``+1, -1, ...``."""
    terms = delta.terms()
    for k, (_, c) in enumerate(terms):
        if c != (1 if k % 2 == 0 else -1):
            raise NonAlternatingAlexander(f"coefficients of {delta} do not alternate +1/-1")
    return tuple(e for e, _ in terms)


def torus_knot(p: int, q: int) -> KnotComplex:
    """Staircase complex of the positive ``(p, q)`` torus knot, ``1 <= p < q``."""
    if not (1 <= p < q):
        raise ValueError(f"need 1 <= p < q, got ({p}, {q})")
    if gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p}, {q}) != 1")
    if p == 1:
        return unknot()
    return staircase(staircase_exponents(torus_alexander(p, q)))


def square(offset: Bigrading = Bigrading(0, 0), suffix: str = "") -> KnotComplex:
    """
    Four-generator box: ``dW = uZ + wY``, ``dY = uX``, ``dZ = wX``.

    ``X`` sits at ``offset``; the other gradings follow from homogeneity.
    """
    mu, A = offset
    gens = [
        ("X" + suffix, (mu, A)),
        ("Y" + suffix, (mu - 1, A - 1)),
        ("Z" + suffix, (mu + 1, A + 1)),
        ("W" + suffix, (mu, A)),
    ]
    arrows = [(3, 2, (1, 0)), (3, 1, (0, 1)), (1, 0, (1, 0)), (2, 0, (0, 1))]
    return KnotComplex.build(gens, arrows)


def figure_eight() -> KnotComplex:
    free = KnotComplex(("B",), (Bigrading(0, 0),))
    return direct_sum(square(Bigrading(0, 0)), free)


def alternating_model(tau: int, squares: Sequence = ()) -> KnotComplex:
    """
    Thin model: the ``T(2, 2|tau|+1)`` staircase (mirrored when ``tau < 0``) plus squares.

    ``squares`` lists the bigrading of each square's ``X`` corner.
    """
    n = abs(tau)
    base = staircase(tuple(range(n, -n - 1, -1)))
    if tau < 0:
        base = dual(base)
    boxes = [square(Bigrading(*off), suffix=str(k + 1)) for k, off in enumerate(squares)]
    return direct_sum(base, *boxes)


def example_12n404_summand() -> KnotComplex:
    names = ["X", "Y0", "Y1", "Y2", "Z0", "Z1"]
    arrows = [(f"Y{i}", "X", (i, 2 - i)) for i in range(3)]
    for i in range(2):
        arrows += [(f"Z{i}", f"Y{i}", (1, 0)), (f"Z{i}", f"Y{i + 1}", (0, 1))]
    return infer_gradings(names, arrows)


def example_cable_2_3_2_neg1() -> KnotComplex:
    names = ["X1", "X2", "Y1", "Y2", "Z1", "Z2", "Z3", "T1", "T2"]
    arrows = [
        ("Y1", "T1", (1, 1)),
        ("Y2", "T2", (1, 1)),
        ("Z1", "T1", (0, 1)),
        ("Z3", "T1", (1, 0)),
        ("Z3", "T2", (0, 1)),
        ("Z2", "T2", (1, 0)),
        ("X1", "Y1", (1, 0)),
        ("X1", "Z3", (1, 1)),
        ("X1", "Z2", (0, 2)),
        ("X2", "Z1", (2, 0)),
        ("X2", "Z3", (1, 1)),
        ("X2", "Y2", (0, 1)),
    ]
    return infer_gradings(names, arrows)


def example_neg_cable_2_3_2_neg3() -> KnotComplex:
    names = ["X1", "X2", "X3", "Y1", "Y2", "Z1", "Z2", "Z3", "Z4", "T1", "T2"]
    arrows = [
        ("Y1", "T1", (1, 0)),
        ("Y2", "T2", (0, 1)),
        ("Z1", "T1", (0, 2)),
        ("Z2", "T2", (2, 0)),
        ("Z3", "T1", (1, 1)),
        ("Z4", "T2", (1, 1)),
        ("X1", "Z1", (1, 0)),
        ("X1", "Z3", (0, 1)),
        ("X2", "Z2", (0, 1)),
        ("X2", "Z4", (1, 0)),
        ("X3", "Z3", (1, 0)),
        ("X3", "Z4", (0, 1)),
        ("X3", "Y1", (1, 1)),
        ("X3", "Y2", (1, 1)),
    ]
    return infer_gradings(names, arrows)


def example_sum_summand_C() -> KnotComplex:
    names = ["X1", "X2", "Y1", "Y2", "Z1", "Z2", "Z3", "Z4", "T"]
    arrows = [
        ("Y1", "Z1", (1, 0)),
        ("Y1", "Z2", (0, 1)),
        ("Y2", "Z3", (1, 0)),
        ("Y2", "Z4", (0, 1)),
        ("T", "X1", (1, 0)),
        ("T", "X2", (0, 1)),
        ("X1", "Z2", (1, 1)),
        ("X1", "Z3", (0, 2)),
        ("X2", "Z2", (2, 0)),
        ("X2", "Z3", (1, 1)),
    ]
    return infer_gradings(names, arrows)


def virtual_Cij(i: int, j: int) -> KnotComplex:
    """Five-generator complex ``C_{i,j}``; not claimed to come from a knot."""
    if i < 1 or j < 1:
        raise ValueError("virtual_Cij needs i >= 1 and j >= 1")
    names = ["X1", "X2", "Y1", "Y2", "Z"]
    arrows = [
        ("Y1", "X1", (i, j)),
        ("Y1", "X2", (0, i + j)),
        ("Y2", "X1", (i + j, 0)),
        ("Y2", "X2", (j, i)),
        ("Z", "Y1", (j, 0)),
        ("Z", "Y2", (0, j)),
    ]
    return infer_gradings(names, arrows)


def corpus() -> dict[str, KnotComplex]:
    """Named builder outputs used by tests and demos."""
    out = {
        "unknot": unknot(),
        "trefoil": torus_knot(2, 3),
        "figure8": figure_eight(),
        "torus:2:5": torus_knot(2, 5),
        "torus:3:4": torus_knot(3, 4),
        "torus:3:5": torus_knot(3, 5),
        "alt:2:1": alternating_model(2, [Bigrading(-2, 0)]),
        "alt:-1:1": alternating_model(-1, [Bigrading(1, 0)]),
        "12n404C": example_12n404_summand(),
        "cableA": example_cable_2_3_2_neg1(),
        "cableB": example_neg_cable_2_3_2_neg3(),
        "sumC": example_sum_summand_C(),
        "cij:1:2": virtual_Cij(1, 2),
    }
    out["mirror:trefoil"] = dual(out["trefoil"])
    return out
