"""
Homology of a knot complex assembled from its Alexander slices.

Slice ``s`` is a free ``F2[U]`` complex (``U = uw``) whose homology is
``H(K, s)``; multiplication by ``w`` and ``u`` are the diagonal chain maps
between neighbouring slices.  Everything here reduces to
:func:`~cfkbounds.polyalg.graded_reduce` on slices plus pushing cycles
through those diagonal maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import NamedTuple

from .complex import (
    KnotComplex,
    SliceComplex,
    apply_diagonal,
    dual,
    hat_specialize,
    reduce,
    slice_complex,
    u_map,
    v_specialize,
    validate,
    w_map,
)
from .errors import NonTerminatingTorsion, NotAKnotComplex, SymmetryViolation
from .polyalg import Coordinates, ModuleDecomp, express_in_homology, graded_reduce


@dataclass(frozen=True, eq=False)
class SliceHomology:
    level: int
    complex: SliceComplex
    decomp: ModuleDecomp

    @property
    def rank(self) -> int:
        return self.decomp.rank

    @property
    def torsion_orders(self) -> tuple[int, ...]:
        return self.decomp.torsion_orders

    def express(self, chain: dict[int, int]) -> Coordinates:
        return express_in_homology(chain, self.decomp)

    def is_zero(self, chain: dict[int, int]) -> bool:
        return not chain or self.express(chain).is_zero()


class IdealSequence(tuple):
    """Strictly increasing ``0 = i_0 < i_1 < ... < i_n``."""

    def __new__(cls, values=(0,)):
        values = tuple(int(v) for v in values)
        if not values or values[0] != 0:
            raise ValueError(f"ideal sequence must start at 0, got {values}")
        if any(x >= y for x, y in zip(values, values[1:])):
            raise ValueError(f"ideal sequence must be strictly increasing, got {values}")
        return super().__new__(cls, values)

    @property
    def n(self) -> int:
        return len(self) - 1

    @property
    def top(self) -> int:
        return self[-1]

    def generators(self) -> list[tuple[int, int]]:
        """Exponent pairs ``(i_k, i_{n-k})`` of the monomials ``u^{i_k} w^{i_{n-k}}``."""
        return [(self[k], self[self.n - k]) for k in range(len(self))]

    def __repr__(self):
        return f"IdealSequence({tuple(self)})"


class TorsionClassInfo(NamedTuple):
    level: int
    maslov: int
    order: int  # U-order inside the slice
    w_death: int
    u_death: int
    rep: dict  # generator index -> exponent of U


class TorsionGenerator(NamedTuple):
    """A minimal generator of the torsion module and its annihilator ideal."""

    level: int
    maslov: int
    annihilator: tuple[tuple[int, int], ...]  # minimal monomials (a, b) of u^a w^b
    w_death: int
    u_death: int


@dataclass(frozen=True)
class TorsionProfile:
    classes: tuple[TorsionClassInfo, ...]

    def by_level(self) -> dict[int, list[TorsionClassInfo]]:
        out: dict[int, list[TorsionClassInfo]] = {}
        for c in self.classes:
            out.setdefault(c.level, []).append(c)
        return out

    @property
    def max_w_death(self) -> int:
        return max((c.w_death for c in self.classes), default=0)

    @property
    def max_u_death(self) -> int:
        return max((c.u_death for c in self.classes), default=0)

    def __len__(self):
        return len(self.classes)


class KnotHomology:
    """
    Cached slice homologies of a reduced knot complex.

    ``summand=True`` relaxes the stable-rank requirement from 1 to "0 or 1"
    so that a direct summand carrying only torsion can be analysed.
    """

    def __init__(self, K: KnotComplex, summand: bool = False):
        validate(K, nonempty=True)
        self.source = K
        self.K = reduce(K)
        if len(self.K) == 0:
            raise NotAKnotComplex("complex is acyclic")
        self.summand = summand
        self.bottom, self.top = self.K.alexander_range()
        self._slices: dict[int, SliceHomology] = {}
        self._stable_rank: int | None = None

    def slice(self, s: int) -> SliceHomology:
        sh = self._slices.get(s)
        if sh is None:
            sc = slice_complex(self.K, s)
            sh = SliceHomology(s, sc, graded_reduce(sc.matrix))
            self._slices[s] = sh
        return sh

    @property
    def levels(self) -> range:
        return range(self.bottom, self.top + 1)

    # -- structural checks ---------------------------------------------------

    def stable_check(self) -> int:
        if self._stable_rank is None:
            if any(w_map(self.K, self.top)):
                raise AssertionError("w-map above the top Alexander grading must be the identity")
            allowed = (0, 1) if self.summand else (1,)
            for s in (self.top, self.bottom):
                sh = self.slice(s)
                if sh.torsion_orders or sh.rank not in allowed:
                    raise NotAKnotComplex(
                        f"slice {s} homology is not F[U] (rank {sh.rank}, torsion {sh.torsion_orders})"
                    )
            rank = self.slice(self.top).rank
            for s in self.levels:
                if self.slice(s).rank != rank:
                    raise NotAKnotComplex(f"slice {s} has rank {self.slice(s).rank}, stable rank is {rank}")
            self._stable_rank = rank
        return self.top

    @property
    def stable_rank(self) -> int:
        self.stable_check()
        return self._stable_rank

    def _require_free(self):
        if self.stable_rank != 1:
            raise NotAKnotComplex("free part is zero; the invariant is undefined for a torsion-only summand")

    # -- moving cycles between slices ------------------------------------------

    def push_w(self, chain: dict[int, int], s: int, m: int = 1) -> dict[int, int]:
        for k in range(m):
            chain = apply_diagonal(chain, w_map(self.K, s + k))
        return chain

    def push_u(self, chain: dict[int, int], s: int, m: int = 1) -> dict[int, int]:
        for k in range(m):
            chain = apply_diagonal(chain, u_map(self.K, s - k))
        return chain

    def _death(self, chain: dict[int, int], s: int, step: int, cap: int) -> int:
        for m in range(1, cap + 1):
            chain = apply_diagonal(chain, (w_map if step > 0 else u_map)(self.K, s))
            s += step
            if self.slice(s).is_zero(chain):
                return m
        raise NonTerminatingTorsion(f"torsion class survives {cap} multiplications")

    @cached_property
    def death_cap(self) -> int:
        orders = [o for s in self.levels for o in self.slice(s).torsion_orders]
        return (self.top - self.bottom) + max(orders, default=0) + 1

    def w_death(self, chain: dict[int, int], s: int) -> int:
        """Least ``m`` with ``w^m`` times the class of ``chain`` zero (0 if already zero)."""
        if self.slice(s).is_zero(chain):
            return 0
        return self._death(chain, s, +1, self.death_cap)

    def u_death(self, chain: dict[int, int], s: int) -> int:
        if self.slice(s).is_zero(chain):
            return 0
        return self._death(chain, s, -1, self.death_cap)

    # -- free part -----------------------------------------------------------------

    @cached_property
    def image_degrees(self) -> dict[int, int]:
        """``U``-degree of the image of slice ``s`` in the stable slice, for each level."""
        self._require_free()
        out = {}
        top = self.slice(self.top)
        for s in self.levels:
            f = self.slice(s).decomp.free_classes[0]
            pushed = self.push_w(f.rep, s, self.top - s)
            coords = top.express(pushed)
            if coords.free[0] is None:
                raise NotAKnotComplex(f"free class at level {s} dies in the stable slice")
            out[s] = coords.free[0]
        return out

    @cached_property
    def nu_minus(self) -> int:
        return min(s for s, k in self.image_degrees.items() if k == 0)

    @cached_property
    def ideal_sequence(self) -> IdealSequence:
        gens = []
        for s, k in self.image_degrees.items():
            if k + s < 0:
                raise NotAKnotComplex(f"level {s} yields a negative w-exponent")
            gens.append((k, k + s))
        minimal = []
        for a, b in sorted(gens):
            if not minimal or b < minimal[-1][1]:
                minimal.append((a, b))
        us = [a for a, _ in minimal]
        ws = [b for _, b in minimal]
        if us != ws[::-1] or us[0] != 0 or us[-1] != self.nu_minus:
            raise SymmetryViolation(f"ideal generators {minimal} are not u/w symmetric")
        return IdealSequence(us)

    # -- torsion -------------------------------------------------------------------

    @cached_property
    def torsion_profile(self) -> TorsionProfile:
        self.stable_check()
        out = []
        for s in self.levels:
            sh = self.slice(s)
            for c in sh.decomp.torsion_classes:
                out.append(
                    TorsionClassInfo(
                        s, -c.grade, c.order, self.w_death(c.rep, s), self.u_death(c.rep, s), dict(c.rep)
                    )
                )
        return TorsionProfile(tuple(out))

    def _torsion_basis(self, s: int, grade: int) -> list[tuple[int, int]]:
        """``(class index, U-power)`` spanning the torsion of slice ``s`` in a matrix grade."""
        if s not in self.levels:
            return []
        basis = []
        for idx, c in enumerate(self.slice(s).decomp.torsion_classes):
            j, r = divmod(grade - c.grade, 2)
            if not r and 0 <= j < c.order:
                basis.append((idx, j))
        return basis

    def _torsion_element(self, s: int, idx: int, j: int) -> dict[int, int]:
        c = self.slice(s).decomp.torsion_classes[idx]
        return {g: k + j for g, k in c.rep.items()}

    def _torsion_mask(self, s: int, chain: dict[int, int]) -> int:
        coords = self.slice(s).express(chain)
        if any(c is not None for c in coords.free):
            raise AssertionError("image of a torsion element has a free component")
        mask = 0
        for idx, c in enumerate(coords.torsion):
            if c is not None:
                mask |= 1 << idx
        return mask

    @cached_property
    def torsion_generators(self) -> tuple[TorsionGenerator, ...]:
        """Minimal homogeneous ``A``-module generators of the torsion submodule."""
        self.stable_check()
        grades = {}
        for s in self.levels:
            for c in self.slice(s).decomp.torsion_classes:
                for j in range(c.order):
                    grades.setdefault(s, set()).add(c.grade + 2 * j)
        out = []
        for s in sorted(grades):
            for g in sorted(grades[s]):
                image = []
                # u lowers Maslov by 2, i.e. raises the matrix grade by 2
                for idx, j in self._torsion_basis(s - 1, g):
                    image.append(self._torsion_mask(s, self.push_w(self._torsion_element(s - 1, idx, j), s - 1)))
                for idx, j in self._torsion_basis(s + 1, g - 2):
                    image.append(self._torsion_mask(s, self.push_u(self._torsion_element(s + 1, idx, j), s + 1)))
                span = _Gf2Span()
                for v in image:
                    span.add(v)
                for idx, j in sorted(self._torsion_basis(s, g), key=lambda t: (t[1], t[0])):
                    if span.add(1 << idx):
                        x = self._torsion_element(s, idx, j)
                        out.append(self._annihilator(x, s, -g))
        return tuple(out)

    def _annihilator(self, x: dict[int, int], s: int, maslov: int) -> TorsionGenerator:
        staircase = []
        a, y, level = 0, x, s
        while True:
            if self.slice(level).is_zero(y):
                staircase.append((a, 0))
                break
            staircase.append((a, self.w_death(y, level)))
            y = apply_diagonal(y, u_map(self.K, level))
            level -= 1
            a += 1
            if a > self.death_cap:
                raise NonTerminatingTorsion("torsion generator survives every power of u")
        minimal = []
        for a_, b_ in staircase:
            if not minimal or b_ < minimal[-1][1]:
                minimal.append((a_, b_))
        return TorsionGenerator(s, maslov, tuple(minimal), self.w_death(x, s), self.u_death(x, s))


class _Gf2Span:
    """Incremental GF(2) row echelon form over int bitmasks."""

    def __init__(self):
        self.rows: dict[int, int] = {}

    def add(self, v: int) -> bool:
        """Insert ``v``; True if it was independent of what is already spanned."""
        while v:
            lead = v.bit_length() - 1
            row = self.rows.get(lead)
            if row is None:
                self.rows[lead] = v
                return True
            v ^= row
        return False


@lru_cache(maxsize=256)
def knot_homology(K: KnotComplex, summand: bool = False) -> KnotHomology:
    return KnotHomology(K, summand)


# ---------------------------------------------------------------------------
# Functional interface
# ---------------------------------------------------------------------------


def stable_check(K: KnotComplex, summand: bool = False) -> int:
    """Verify the extreme slices are free of rank 1 and return the stable level."""
    return knot_homology(K, summand).stable_check()


def nu_minus(K: KnotComplex) -> int:
    """Least level whose free class survives with ``U``-degree 0 in the stable slice."""
    return knot_homology(K).nu_minus


def ideal_sequence(K: KnotComplex) -> IdealSequence:
    return knot_homology(K).ideal_sequence


def torsion_profile(K: KnotComplex, summand: bool = False) -> TorsionProfile:
    return knot_homology(K, summand).torsion_profile


def torsion_generators(K: KnotComplex, summand: bool = False) -> tuple[TorsionGenerator, ...]:
    return knot_homology(K, summand).torsion_generators


def t_minus(K: KnotComplex, summand: bool = False) -> int:
    """Least ``m`` with ``w^m`` killing the torsion submodule."""
    return torsion_profile(K, summand).max_w_death


def t_plus(K: KnotComplex, summand: bool = False) -> int:
    return t_minus(dual(K), summand)


def t_depth(K: KnotComplex, summand: bool = False) -> int:
    return max(t_minus(K, summand), t_plus(K, summand))


@lru_cache(maxsize=256)
def hat_homology(K: KnotComplex, summand: bool = False) -> tuple[int, tuple[int, ...]]:
    """``(free rank, torsion orders)`` of the complex with ``u = 0`` over ``F2[w]``."""
    validate(K, nonempty=True)
    D = graded_reduce(hat_specialize(reduce(K)))
    allowed = (0, 1) if summand else (1,)
    if D.rank not in allowed:
        raise NotAKnotComplex(f"hat homology has free rank {D.rank}")
    return D.rank, D.torsion_orders


def t_hat(K: KnotComplex, summand: bool = False) -> int:
    return max(hat_homology(K, summand)[1], default=0)


def t_pq_torsion(K: KnotComplex, p: int, q: int) -> int:
    """Largest torsion order after substituting ``u = v^p``, ``w = v^q``."""
    validate(K, nonempty=True)
    D = graded_reduce(v_specialize(reduce(K), p, q))
    return D.max_torsion_order
