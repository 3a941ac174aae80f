"""
Monomial ideals, depth distances and the lower bounds built from them.

All bounds are floored at 0 and come with a certificate naming the term
that achieved the maximum.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple

from .builders import torus_alexander, torus_knot, staircase_exponents
from .complex import KnotComplex, dual, genus_upper
from .homology import (
    IdealSequence,
    ideal_sequence,
    knot_homology,
    nu_minus,
    t_hat,
    t_minus,
)

# ---------------------------------------------------------------------------
# Monomial ideals in F2[u, w]
# ---------------------------------------------------------------------------


class MonomialIdeal:
    """Ideal generated by monomials ``u^a w^b``, kept as its minimal generators."""

    __slots__ = ("generators",)

    def __init__(self, gens: Iterable[tuple[int, int]]):
        minimal: list[tuple[int, int]] = []
        for a, b in sorted(set((int(a), int(b)) for a, b in gens)):
            if a < 0 or b < 0:
                raise ValueError(f"negative exponent in ({a}, {b})")
            if not minimal or b < minimal[-1][1]:
                minimal.append((a, b))
        self.generators = tuple(minimal)

    def contains(self, a: int, b: int) -> bool:
        return any(a >= ga and b >= gb for ga, gb in self.generators)

    def contains_ideal(self, other: MonomialIdeal) -> bool:
        return all(self.contains(a, b) for a, b in other.generators)

    def missing(self, other: MonomialIdeal) -> list[tuple[int, int]]:
        """Generators of ``other`` that do not lie in ``self``."""
        return [g for g in other.generators if not self.contains(*g)]

    def times_w(self, p: int) -> MonomialIdeal:
        return MonomialIdeal((a, b + p) for a, b in self.generators)

    def min_degree(self) -> int:
        return min(a + b for a, b in self.generators)

    def is_zero(self) -> bool:
        return not self.generators

    def __eq__(self, other):
        return isinstance(other, MonomialIdeal) and self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        return f"MonomialIdeal({list(self.generators)})"


def ideal_of(seq: Iterable[int]) -> MonomialIdeal:
    seq = IdealSequence(seq)
    return MonomialIdeal(seq.generators())


def frak_a(seq: Iterable[int]) -> int:
    """Least total degree of a monomial in the ideal of ``seq``."""
    seq = IdealSequence(seq)
    return min(seq[k] + seq[seq.n - k] for k in range(len(seq)))


def ell_distance(iota: Iterable[int], iota_prime: Iterable[int]) -> int:
    """Least ``p >= 0`` with ``w^p`` times the ideal of ``iota_prime`` inside that of ``iota``."""
    big = ideal_of(iota)
    small = ideal_of(iota_prime)
    iota = IdealSequence(iota)
    for p in range(iota.top + 1):
        if big.contains_ideal(small.times_w(p)):
            return p
    raise AssertionError("w^{i_n} lies in every ideal of this shape")


def ell_minus(K: KnotComplex, K2: KnotComplex) -> int:
    return ell_distance(ideal_sequence(K), ideal_sequence(K2))


def ell_plus(K: KnotComplex, K2: KnotComplex) -> int:
    return ell_distance(ideal_sequence(dual(K)), ideal_sequence(dual(K2)))


# ---------------------------------------------------------------------------
# Reports and bounds
# ---------------------------------------------------------------------------


class Bound(NamedTuple):
    value: int
    certificate: str
    terms: dict


def _best(terms: dict[str, int]) -> tuple[int, str]:
    """Largest term, floored at 0; ties go to the earliest key."""
    name = max(terms, key=lambda k: (terms[k], -list(terms).index(k)))
    return max(terms[name], 0), name


@dataclass(frozen=True)
class InvariantReport:
    nu_minus: int
    nu_minus_mirror: int
    ideal_seq: tuple[int, ...]
    ideal_seq_mirror: tuple[int, ...]
    t_minus: int
    t_plus: int
    t: int
    t_hat: int
    t_hat_mirror: int
    frak_a: int
    genus_upper: int
    u_lower: int
    u_minus_lower: int
    u_plus_lower: int
    alt_lower: int
    u_certificate: str = ""
    alt_certificate: str = ""

    def to_dict(self) -> dict:
        d = asdict(self)
        d["ideal_seq"] = list(self.ideal_seq)
        d["ideal_seq_mirror"] = list(self.ideal_seq_mirror)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> InvariantReport:
        kw = {k: d[k] for k in cls.__dataclass_fields__ if k in d}
        kw["ideal_seq"] = tuple(kw["ideal_seq"])
        kw["ideal_seq_mirror"] = tuple(kw["ideal_seq_mirror"])
        return cls(**kw)


def unknotting_terms(nu: int, nu_m: int, t: int, th: int, th_m: int) -> dict[str, int]:
    return {"ν⁻+ν⁻(−K)": nu + nu_m, "𝔱": t, "𝔱̂": th, "𝔱̂(−K)": th_m}


def alternation_terms(nu: int, a: int, th: int, tm: int) -> dict[str, int]:
    # third term uses the w-depth of the torsion (see README, alternation bound)
    return {"ν⁻−𝔞": nu - a, "𝔱̂−1": th - 1, "min(𝔱⁻−1,ν⁻)": min(tm - 1, nu)}


def unknotting_report(K: KnotComplex) -> InvariantReport:
    """Every invariant of ``K`` and its mirror plus the derived lower bounds."""
    M = dual(K)
    nu, nu_m = nu_minus(K), nu_minus(M)
    iota, iota_m = ideal_sequence(K), ideal_sequence(M)
    tm, tp = t_minus(K), t_minus(M)
    th, th_m = t_hat(K), t_hat(M)
    a = frak_a(iota)
    u_val, u_cert = _best(unknotting_terms(nu, nu_m, max(tm, tp), th, th_m))
    alt_val, alt_cert = _best(alternation_terms(nu, a, th, tm))
    return InvariantReport(
        nu_minus=nu,
        nu_minus_mirror=nu_m,
        ideal_seq=tuple(iota),
        ideal_seq_mirror=tuple(iota_m),
        t_minus=tm,
        t_plus=tp,
        t=max(tm, tp),
        t_hat=th,
        t_hat_mirror=th_m,
        frak_a=a,
        genus_upper=genus_upper(K),
        u_lower=u_val,
        u_minus_lower=nu,
        u_plus_lower=nu_m,
        alt_lower=alt_val,
        u_certificate=u_cert,
        alt_certificate=alt_cert,
    )


def alt_lower(K: KnotComplex) -> Bound:
    """Lower bound on the alternation number."""
    nu = nu_minus(K)
    terms = alternation_terms(nu, frak_a(ideal_sequence(K)), t_hat(K), t_minus(K))
    value, cert = _best(terms)
    return Bound(value, cert, terms)


def gordian_lower(K: KnotComplex, K2: KnotComplex) -> Bound:
    """
    Lower bound on the Gordian distance between ``K`` and ``K2``.

    Combines the signed depth distances with differences of torsion depths
    (hat flavour for both knots and mirrors, plus ``w``-depths of each
    torsion module and of the mirrors' torsion modules).
    """
    M, M2 = dual(K), dual(K2)
    depth = max(ell_minus(K, K2), ell_plus(K2, K)) + max(ell_plus(K, K2), ell_minus(K2, K))
    terms = {
        "depth": depth,
        "torsion:𝔱̂": abs(t_hat(K) - t_hat(K2)),
        "torsion:𝔱̂(−K)": abs(t_hat(M) - t_hat(M2)),
        "torsion:𝔱⁻": abs(t_minus(K) - t_minus(K2)),
        "torsion:𝔱⁺": abs(t_minus(M) - t_minus(M2)),
    }
    value, cert = _best(terms)
    return Bound(value, "torsion" if cert.startswith("torsion") else cert, terms)


# ---------------------------------------------------------------------------
# Torus knot closed forms
# ---------------------------------------------------------------------------


def torus_ideal_closed_form(p: int, n: int) -> IdealSequence:
    """Ideal sequence of ``T(p, pn+1)`` from its closed form, ``k = 0 .. n(p-1)``."""
    if p < 2 or n < 1:
        raise ValueError("need p >= 2 and n >= 1")
    out = []
    for k in range(n * (p - 1) + 1):
        f = k // n
        out.append((2 * k - n * f) * (f + 1) // 2)
    return IdealSequence(out)


def frak_a_torus(p: int, n: int) -> int:
    return n * (p * p // 4)


def ideal_from_staircase(a: Iterable[int]) -> IdealSequence:
    """``i_k`` as the alternating sum of the first ``2(n-k)+1`` staircase exponents."""
    a = tuple(a)
    n = (len(a) - 1) // 2
    return IdealSequence(sum((-1) ** j * a[j] for j in range(2 * (n - k) + 1)) for k in range(n + 1))


def torus_ideal_from_alexander(p: int, q: int) -> IdealSequence:
    if p == 1:
        return IdealSequence((0,))
    return ideal_from_staircase(staircase_exponents(torus_alexander(p, q)))


@lru_cache(maxsize=None)
def torus_ideal(p: int, q: int) -> MonomialIdeal:
    """Free part of the homology of ``T(p, q)`` computed by the slice pipeline."""
    return ideal_of(ideal_sequence(torus_knot(p, q)))


def Apq_ideal(p: int, q: int) -> MonomialIdeal:
    """Monomials ``u^i w^j`` with ``k i + (p-k) j >= k (p-k)(q-1)/2`` for ``k = 1..p-1``."""
    if p < 2:
        return MonomialIdeal([(0, 0)])
    rhs = {k: Fraction(k * (p - k) * (q - 1), 2) for k in range(1, p)}
    i_max = max(math.ceil(rhs[k] / k) for k in rhs)
    gens = []
    for i in range(i_max + 1):
        j = max(max(0, math.ceil((rhs[k] - k * i) / (p - k))) for k in rhs)
        gens.append((i, j))
    return MonomialIdeal(gens)


class ContainmentResult(NamedTuple):
    contained: bool
    equal: bool
    missing: list


def contains_check(p: int, q: int) -> ContainmentResult:
    """Is the torus knot ideal inside the inequality-defined ideal, and are they equal?"""
    A = torus_ideal(p, q)
    B = Apq_ideal(p, q)
    miss = B.missing(A)
    return ContainmentResult(not miss, A == B, miss)


@dataclass(frozen=True)
class AdjacencyResult:
    passed: bool
    u: int
    first_holds: bool  # ideal of the target inside ideal of the source
    second_holds: bool  # w^u times ideal of the source inside ideal of the target
    witnesses: dict = field(default_factory=dict)
    reason: str = ""


def torus_adjacency_check(p: int, p2: int, q: int, q2: int) -> AdjacencyResult:
    """
    Necessary condition for ``T(p, p2)`` to be Gordian adjacent to ``T(q, q2)``.

    ``u`` is the difference of unknotting numbers ``(q-1)(q2-1)/2 - (p-1)(p2-1)/2``.
    A failed check rules adjacency out.
    """
    for x, y in ((p, p2), (q, q2)):
        if not (0 < x < y) or math.gcd(x, y) != 1:
            raise ValueError(f"({x}, {y}) is not a coprime pair with 0 < x < y")
    u = (q - 1) * (q2 - 1) // 2 - (p - 1) * (p2 - 1) // 2
    if u < 0:
        return AdjacencyResult(False, u, False, False, {}, "target has smaller unknotting number")
    src, tgt = torus_ideal(p, p2), torus_ideal(q, q2)
    miss1 = src.missing(tgt)
    miss2 = tgt.missing(src.times_w(u))
    witnesses = {}
    if miss1:
        witnesses["first"] = miss1
    if miss2:
        witnesses["second"] = miss2
    ok = not miss1 and not miss2
    return AdjacencyResult(ok, u, not miss1, not miss2, witnesses, "" if ok else "ideal containment fails")


def summand_report(K: KnotComplex) -> dict:
    """Torsion-only invariants for a direct summand whose free part may vanish."""
    h = knot_homology(K, summand=True)
    h.stable_check()
    gens = h.torsion_generators
    tm, tp = t_minus(K, summand=True), t_minus(dual(K), summand=True)
    th, th_m = t_hat(K, summand=True), t_hat(dual(K), summand=True)
    # torsion of a summand embeds in the torsion of the whole complex, so these
    # depths bound the corresponding depths of any knot containing the summand
    return {
        "stable_rank": h.stable_rank,
        "t_minus": tm,
        "t_plus": tp,
        "t": max(tm, tp),
        "t_hat": th,
        "t_hat_mirror": th_m,
        "u_lower": max(tm, tp, th, th_m),
        "alt_lower": max(th - 1, 0),
        "torsion_generators": [
            {
                "level": g.level,
                "annihilator": [list(m) for m in g.annihilator],
                "w_death": g.w_death,
                "u_death": g.u_death,
            }
            for g in gens
        ],
    }
