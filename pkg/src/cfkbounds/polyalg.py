"""
Exact arithmetic kernels.

Two independent pieces live here:

* :class:`IntLaurentPoly`, integer Laurent polynomials in ``t`` with exact
  division (used for Alexander polynomials of torus knots).
* Homology of free graded chain complexes over ``F2[t]`` whose boundary
  entries are single monomials ``t^e``.  Homogeneity forces every entry to be
  a monomial, so a column is just a set of rows and the whole reduction runs
  on Python ints used as GF(2) bitsets, persistence style.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple

from .errors import NonExactDivision, NotAComplex, NotACycle

# ---------------------------------------------------------------------------
# Integer Laurent polynomials
# ---------------------------------------------------------------------------


class IntLaurentPoly:
    """Immutable element of ``Z[t, 1/t]`` stored as ``{exponent: coefficient}``."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        clean = {}
        for e, c in (coeffs or {}).items():
            if c:
                clean[int(e)] = int(c)
        self._coeffs = clean

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> IntLaurentPoly:
        return cls({exponent: coefficient})

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[int], low: int = 0) -> IntLaurentPoly:
        """Build from coefficients listed by increasing exponent, starting at ``t^low``."""
        return cls({low + i: c for i, c in enumerate(coeffs)})

    @property
    def coefficients(self) -> dict[int, int]:
        return dict(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def degree(self) -> int:
        if not self._coeffs:
            raise ValueError("degree of the zero polynomial")
        return max(self._coeffs)

    @property
    def low_degree(self) -> int:
        if not self._coeffs:
            raise ValueError("low degree of the zero polynomial")
        return min(self._coeffs)

    def terms(self) -> list[tuple[int, int]]:
        """``(exponent, coefficient)`` pairs by decreasing exponent."""
        return sorted(self._coeffs.items(), reverse=True)

    def shift(self, k: int) -> IntLaurentPoly:
        return IntLaurentPoly({e + k: c for e, c in self._coeffs.items()})

    def __add__(self, other):
        other = _as_poly(other)
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
        return IntLaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return IntLaurentPoly({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        out: dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return IntLaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are only defined for monomials")
        result = IntLaurentPoly({0: 1})
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntLaurentPoly({0: other})
        if not isinstance(other, IntLaurentPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    def exact_div(self, other: IntLaurentPoly) -> IntLaurentPoly:
        """Quotient ``self / other``; raises :class:`NonExactDivision` on a remainder."""
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return IntLaurentPoly()
        lo_p, lo_q = self.low_degree, other.low_degree
        # work in Z[t] with nonzero constant terms; the unit t^k is restored at the end
        rem = {e - lo_p: c for e, c in self._coeffs.items()}
        div = {e - lo_q: c for e, c in other._coeffs.items()}
        dq = max(div)
        lead = div[dq]
        quot: dict[int, int] = {}
        while rem:
            dr = max(rem)
            if dr < dq:
                raise NonExactDivision(f"{self} is not divisible by {other}")
            c, r = divmod(rem[dr], lead)
            if r:
                raise NonExactDivision(f"{self} is not divisible by {other}")
            quot[dr - dq] = c
            for e, d in div.items():
                k = e + dr - dq
                v = rem.get(k, 0) - c * d
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return IntLaurentPoly(quot).shift(lo_p - lo_q)

    def __call__(self, x):
        return sum(c * x**e for e, c in self._coeffs.items())

    def __repr__(self):
        return f"IntLaurentPoly({self})"

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for e, c in self.terms():
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "t" if e == 1 else f"t^{e}"
                body = var if mag == 1 else f"{mag}*{var}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def _as_poly(x) -> IntLaurentPoly:
    if isinstance(x, IntLaurentPoly):
        return x
    if isinstance(x, int):
        return IntLaurentPoly({0: x})
    raise TypeError(f"cannot convert {type(x).__name__} to IntLaurentPoly")


def int_poly_mul(p: IntLaurentPoly, q: IntLaurentPoly) -> IntLaurentPoly:
    return p * q


def int_poly_exact_div(p: IntLaurentPoly, q: IntLaurentPoly) -> IntLaurentPoly:
    return p.exact_div(q)


# ---------------------------------------------------------------------------
# Graded monomial matrices over F2[t]
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=True)
class GradedMonoMatrix:
    """
    Boundary matrix of a free graded complex over ``F2[t]``.

    Generator ``i`` has grade ``grades[i]``; ``entries[(row, col)] = e`` means
    ``d(col)`` contains ``t^e * row``.  Homogeneity is the rule

        grades[col] == grades[row] + scale * e + shift,

    so ``t`` raises grade by ``scale`` and ``d`` lowers it by ``shift``.  A chain
    ``{gen: k}`` stands for ``sum t^k gen`` and sits in grade ``grades[gen] + scale*k``.
    """

    grades: tuple[int, ...]
    entries: Mapping[tuple[int, int], int] = field(default_factory=dict)
    scale: int = 1
    shift: int = 0

    def __post_init__(self):
        object.__setattr__(self, "grades", tuple(int(g) for g in self.grades))
        object.__setattr__(self, "entries", dict(self.entries))
        if self.scale < 1:
            raise ValueError("scale must be a positive integer")
        n = len(self.grades)
        for (row, col), e in self.entries.items():
            if not (0 <= row < n and 0 <= col < n):
                raise IndexError(f"entry {(row, col)} outside a {n}x{n} matrix")
            if e < 0:
                raise ValueError(f"negative exponent {e} at {(row, col)}")
            if self.grades[col] != self.grades[row] + self.scale * e + self.shift:
                raise ValueError(f"entry {(row, col)} = t^{e} breaks homogeneity")

    __hash__ = None

    @property
    def size(self) -> int:
        return len(self.grades)

    def exponent_between(self, row: int, col: int) -> int:
        """Exponent a homogeneous entry at ``(row, col)`` would carry."""
        q, r = divmod(self.grades[col] - self.grades[row] - self.shift, self.scale)
        if r or q < 0:
            raise ValueError(f"no homogeneous entry fits at {(row, col)}")
        return q

    def column(self, col: int) -> dict[int, int]:
        return {r: e for (r, c), e in self.entries.items() if c == col}


class FreeClass(NamedTuple):
    rep: dict[int, int]  # generator -> exponent of t
    grade: int


class TorsionClass(NamedTuple):
    rep: dict[int, int]
    grade: int
    order: int  # annihilated exactly by t^order


class Coordinates(NamedTuple):
    """Coefficients ``t^k`` on each class (``None`` for zero)."""

    free: tuple[int | None, ...]
    torsion: tuple[int | None, ...]

    def is_zero(self) -> bool:
        return all(c is None for c in self.free) and all(c is None for c in self.torsion)


@dataclass(frozen=True, eq=False)
class ModuleDecomp:
    """
    Homology of a graded complex as ``F2[t]^r + sum F2[t]/t^k``.

    Each class representative has a distinct leading generator (largest in
    the ``(grade, index)`` order); that triangular basis of the cycle module
    is what :func:`express_in_homology` eliminates against.
    """

    matrix: GradedMonoMatrix
    free_classes: tuple[FreeClass, ...]
    torsion_classes: tuple[TorsionClass, ...]
    _position: tuple[int, ...] = field(repr=False)
    _basis: dict = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.free_classes)

    @property
    def torsion_orders(self) -> tuple[int, ...]:
        return tuple(sorted(c.order for c in self.torsion_classes))

    @property
    def max_torsion_order(self) -> int:
        return max((c.order for c in self.torsion_classes), default=0)


def _mask_to_chain(mask: int, order: list[int], grades, scale: int, grade: int) -> dict[int, int]:
    chain = {}
    while mask:
        p = mask.bit_length() - 1
        mask ^= 1 << p
        gen = order[p]
        chain[gen] = (grade - grades[gen]) // scale
    return chain


def graded_reduce(M: GradedMonoMatrix) -> ModuleDecomp:
    """
    Decompose the homology of the complex with boundary ``M``.

    Columns are processed by ascending ``(grade, index)``; the pivot of a
    column is its row of largest ``(grade, index)``, i.e. the entry with the
    smallest exponent.  Adding an earlier column to a later one is always a
    legal graded operation, and matching entries cancel exactly over F2.
    """
    n = M.size
    grades = M.grades
    order = sorted(range(n), key=lambda i: (grades[i], i))
    pos = [0] * n
    for p, gen in enumerate(order):
        pos[gen] = p

    cols = [0] * n
    for (row, col) in M.entries:
        cols[col] |= 1 << pos[row]

    for k in range(n):
        acc = 0
        mask = cols[k]
        while mask:
            p = mask.bit_length() - 1
            mask ^= 1 << p
            acc ^= cols[order[p]]
        if acc:
            bad = order[acc.bit_length() - 1]
            raise NotAComplex((bad, k))

    reduced = [0] * n
    record = [0] * n
    pivot_col: dict[int, int] = {}
    for gen in order:
        r = cols[gen]
        v = 1 << pos[gen]
        while r:
            low = r.bit_length() - 1
            other = pivot_col.get(low)
            if other is None:
                pivot_col[low] = gen
                break
            r ^= reduced[other]
            v ^= record[other]
        reduced[gen] = r
        record[gen] = v

    free, torsion = [], []
    basis: dict[int, tuple[int, str, int, int]] = {}
    for gen in order:
        if reduced[gen]:
            continue
        p = pos[gen]
        killer = pivot_col.get(p)
        if killer is None:
            mask = record[gen]
            basis[p] = (mask, "free", len(free), grades[gen])
            free.append(FreeClass(_mask_to_chain(mask, order, grades, M.scale, grades[gen]), grades[gen]))
        else:
            e = M.exponent_between(gen, killer)
            if e == 0:
                # cancelled pair: its cycle is a boundary, the leading term still has to be eliminable
                basis[p] = (reduced[killer], "dead", -1, grades[gen])
                continue
            mask = reduced[killer]
            basis[p] = (mask, "torsion", len(torsion), grades[gen])
            torsion.append(TorsionClass(_mask_to_chain(mask, order, grades, M.scale, grades[gen]), grades[gen], e))

    for p, gen in pivot_col.items():
        if reduced[order[p]]:
            raise AssertionError("pivot row with a nonzero reduced column; reduction order is broken")

    return ModuleDecomp(M, tuple(free), tuple(torsion), tuple(pos), basis)


def _chain_grade(z: Mapping[int, int], M: GradedMonoMatrix) -> int:
    grade = None
    for gen, k in z.items():
        if k < 0:
            raise ValueError(f"negative exponent {k} on generator {gen}")
        g = M.grades[gen] + M.scale * k
        if grade is None:
            grade = g
        elif g != grade:
            raise ValueError("chain is not homogeneous")
    return grade


def express_in_homology(z: Mapping[int, int], D: ModuleDecomp) -> Coordinates:
    """
    Coordinates of the homogeneous cycle ``z`` (``{generator: exponent}``).

    Torsion coefficients are reduced modulo ``t^order``.  Raises
    :class:`NotACycle` if ``z`` is not a cycle.
    """
    free = [None] * len(D.free_classes)
    tors = [None] * len(D.torsion_classes)
    if not z:
        return Coordinates(tuple(free), tuple(tors))
    M = D.matrix
    grade = _chain_grade(z, M)
    mask = 0
    for gen in z:
        mask |= 1 << D._position[gen]
    while mask:
        lead = mask.bit_length() - 1
        entry = D._basis.get(lead)
        if entry is None:
            raise NotACycle("chain is not a cycle")
        bmask, kind, idx, bgrade = entry
        mask ^= bmask
        k = (grade - bgrade) // M.scale
        if kind == "free":
            free[idx] = k
        elif kind == "torsion" and k < D.torsion_classes[idx].order:
            tors[idx] = k
    return Coordinates(tuple(free), tuple(tors))


def reconstruct(coords: Coordinates, D: ModuleDecomp) -> dict[int, int]:
    """Chain ``sum t^k * rep`` for the given coordinates (inverse of expressing, up to boundaries)."""
    support: dict[int, int] = {}
    grade = None
    classes = [(c, D.free_classes[i]) for i, c in enumerate(coords.free)]
    classes += [(c, D.torsion_classes[i]) for i, c in enumerate(coords.torsion)]
    for k, cls in classes:
        if k is None:
            continue
        g = cls.grade + D.matrix.scale * k
        if grade is None:
            grade = g
        elif g != grade:
            raise ValueError("coordinates are not homogeneous")
        for gen, e in cls.rep.items():
            if gen in support:
                del support[gen]
            else:
                support[gen] = e + k
    return support
