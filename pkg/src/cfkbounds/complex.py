"""
Bigraded chain complexes over ``F2[u, w]`` with monomial arrows.

A generator carries a Maslov grading ``mu`` and an Alexander grading ``A``;
``u`` acts by ``(-2, -1)`` and ``w`` by ``(0, +1)``.  An arrow ``x -> y`` with
monomial ``u^a w^b`` means ``d x`` contains ``u^a w^b y``.
"""

from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import (
    AsymmetricAlexanderMultiset,
    DifferentialNotSquareZero,
    FormatError,
    InconsistentGradingSystem,
    InhomogeneousArrow,
    SelfLoop,
    ValidationError,
)
from .polyalg import GradedMonoMatrix


class Monomial(NamedTuple):
    """``u^a w^b``."""

    a: int
    b: int

    def __mul__(self, other):
        return Monomial(self.a + other.a, self.b + other.b)

    def is_unit(self) -> bool:
        return self.a == 0 and self.b == 0

    def __str__(self):
        parts = []
        for var, e in (("u", self.a), ("w", self.b)):
            if e == 1:
                parts.append(var)
            elif e > 1:
                parts.append(f"{var}^{e}")
        return "*".join(parts) or "1"


class Bigrading(NamedTuple):
    maslov: int
    alexander: int


class Arrow(NamedTuple):
    source: int
    target: int
    mono: Monomial


def _bigrading(g) -> Bigrading:
    if isinstance(g, Bigrading):
        return g
    m, a = g
    return Bigrading(int(m), int(a))


@dataclass(frozen=True)
class KnotComplex:
    """
    Free bigraded complex over ``F2[u, w]``.

    Arrows are stored reduced mod 2 and sorted by ``(source, target)``.  Use
    :meth:`build` to construct one from names; duplicate arrows cancel there.
    Construction does not validate; call :func:`validate` for that.
    """

    names: tuple[str, ...]
    gradings: tuple[Bigrading, ...]
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        if len(self.names) != len(self.gradings):
            raise ValueError("names and gradings differ in length")
        if len(set(self.names)) != len(self.names):
            dup = [n for n, c in Counter(self.names).items() if c > 1]
            raise ValueError(f"duplicate generator names: {dup}")
        for n in self.names:
            if not n or any(ch.isspace() for ch in n) or n.startswith("#"):
                raise ValueError(f"invalid generator name {n!r}")
        object.__setattr__(self, "gradings", tuple(_bigrading(g) for g in self.gradings))
        object.__setattr__(self, "arrows", _normalize_arrows(self.arrows, len(self.names)))

    @classmethod
    def build(cls, generators: Iterable, arrows: Iterable = ()) -> KnotComplex:
        """
        Parameters
        ----------
        generators : iterable of ``(name, (maslov, alexander))``
        arrows : iterable of ``(source, target, (a, b))``
            Endpoints may be names or indices.
        """
        generators = list(generators)
        names = tuple(str(n) for n, _ in generators)
        index = {n: i for i, n in enumerate(names)}

        def resolve(x):
            return x if isinstance(x, int) else index[x]

        arr = [Arrow(resolve(s), resolve(t), Monomial(*m)) for s, t, m in arrows]
        return cls(names, tuple(g for _, g in generators), tuple(arr))

    def __len__(self):
        return len(self.names)

    @cached_property
    def index(self) -> dict[str, int]:
        return {n: i for i, n in enumerate(self.names)}

    @cached_property
    def outgoing(self) -> tuple[tuple[Arrow, ...], ...]:
        out = [[] for _ in self.names]
        for ar in self.arrows:
            out[ar.source].append(ar)
        return tuple(tuple(o) for o in out)

    def maslov(self, i: int) -> int:
        return self.gradings[i].maslov

    def alexander(self, i: int) -> int:
        return self.gradings[i].alexander

    def alexander_range(self) -> tuple[int, int]:
        alex = [g.alexander for g in self.gradings]
        return min(alex), max(alex)

    def arrow_names(self) -> list[tuple[str, str, Monomial]]:
        return [(self.names[s], self.names[t], m) for s, t, m in self.arrows]

    def renamed(self, names: Sequence[str]) -> KnotComplex:
        return KnotComplex(tuple(names), self.gradings, self.arrows)

    def maslov_shift(self, c: int) -> KnotComplex:
        """Shift every Maslov grading by ``c`` (homogeneity is preserved)."""
        grads = tuple(Bigrading(g.maslov + c, g.alexander) for g in self.gradings)
        return KnotComplex(self.names, grads, self.arrows)

    def permuted(self, perm: Sequence[int]) -> KnotComplex:
        """Reorder generators: new generator ``k`` is old generator ``perm[k]``."""
        if sorted(perm) != list(range(len(self))):
            raise ValueError("not a permutation")
        inv = {old: new for new, old in enumerate(perm)}
        names = tuple(self.names[p] for p in perm)
        grads = tuple(self.gradings[p] for p in perm)
        arrows = tuple(Arrow(inv[s], inv[t], m) for s, t, m in self.arrows)
        return KnotComplex(names, grads, arrows)

    def same_as(self, other: KnotComplex) -> bool:
        """Equality of generators, gradings and arrows keyed by name (order-free)."""
        if set(self.names) != set(other.names):
            return False
        if any(self.gradings[i] != other.gradings[other.index[n]] for i, n in enumerate(self.names)):
            return False
        return set(self.arrow_names()) == set(other.arrow_names())


def _normalize_arrows(arrows, n: int) -> tuple[Arrow, ...]:
    counts: Counter = Counter()
    for ar in arrows:
        s, t, m = ar
        m = Monomial(*m)
        if not (0 <= s < n and 0 <= t < n):
            raise IndexError(f"arrow endpoint out of range: {ar}")
        if m.a < 0 or m.b < 0:
            raise ValueError(f"negative exponent in arrow {ar}")
        counts[Arrow(s, t, m)] += 1
    return tuple(sorted(a for a, c in counts.items() if c % 2))


def direct_sum(*complexes: KnotComplex) -> KnotComplex:
    names, grads, arrows = [], [], []
    offset = 0
    for K in complexes:
        names += K.names
        grads += K.gradings
        arrows += [Arrow(s + offset, t + offset, m) for s, t, m in K.arrows]
        offset += len(K)
    return KnotComplex(tuple(names), tuple(grads), tuple(arrows))


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def expected_monomial(src: Bigrading, tgt: Bigrading) -> Monomial | None:
    """The only monomial a homogeneous arrow ``src -> tgt`` may carry, or None."""
    two_a = tgt.maslov - src.maslov + 1
    if two_a % 2 or two_a < 0:
        return None
    a = two_a // 2
    b = src.alexander - tgt.alexander + a
    if b < 0:
        return None
    return Monomial(a, b)


def validate(K: KnotComplex, nonempty: bool = False) -> bool:
    """
    Check self-loops, homogeneity and ``d^2 = 0``.

    Raises the matching :class:`ValidationError` subclass; returns True
    otherwise.  ``nonempty`` additionally rejects the zero complex.
    """
    if nonempty and len(K) == 0:
        raise ValidationError("empty complex")
    for s, t, m in K.arrows:
        if s == t:
            raise SelfLoop((K.names[s], K.names[t], m))
    for ar in K.arrows:
        exp = expected_monomial(K.gradings[ar.source], K.gradings[ar.target])
        if exp != ar.mono:
            raise InhomogeneousArrow((K.names[ar.source], K.names[ar.target], ar.mono), exp)
    composite: Counter = Counter()
    for ar in K.arrows:
        for nxt in K.outgoing[ar.target]:
            composite[(ar.source, nxt.target, ar.mono * nxt.mono)] += 1
    bad = sorted(k for k, c in composite.items() if c % 2)
    if bad:
        s, t, _ = bad[0]
        raise DifferentialNotSquareZero((K.names[s], K.names[t]))
    return True


# ---------------------------------------------------------------------------
# Structural operations
# ---------------------------------------------------------------------------


def reduce(K: KnotComplex) -> KnotComplex:
    """
    Cancel every arrow with monomial 1, one pair at a time.

    The unit arrow with the smallest ``(source, target)`` index is cancelled
    first, which keeps the result deterministic.
    """
    n = len(K)
    out: list[dict[int, Monomial]] = [dict() for _ in range(n)]
    inn: list[dict[int, Monomial]] = [dict() for _ in range(n)]
    for s, t, m in K.arrows:
        out[s][t] = m
        inn[t][s] = m
    alive = [True] * n

    def toggle(z, t, m):
        cur = out[z].get(t)
        if cur is None:
            out[z][t] = m
            inn[t][z] = m
        elif cur == m:
            del out[z][t]
            del inn[t][z]
        else:
            raise InhomogeneousArrow((K.names[z], K.names[t], m), cur)

    while True:
        unit = None
        for x in range(n):
            if not alive[x]:
                continue
            for y in sorted(out[x]):
                if out[x][y].is_unit():
                    unit = (x, y)
                    break
            if unit:
                break
        if unit is None:
            break
        x, y = unit
        sources = [(z, m) for z, m in inn[y].items() if z != x]
        targets = [(t, m) for t, m in out[x].items() if t != y]
        for z, m1 in sources:
            for t, m2 in targets:
                toggle(z, t, m1 * m2)
        for v in (x, y):
            for t in list(out[v]):
                del inn[t][v]
            for z in list(inn[v]):
                del out[z][v]
            out[v].clear()
            inn[v].clear()
            alive[v] = False

    keep = [i for i in range(n) if alive[i]]
    new_index = {old: k for k, old in enumerate(keep)}
    arrows = [Arrow(new_index[s], new_index[t], m) for s in keep for t, m in out[s].items()]
    return KnotComplex(
        tuple(K.names[i] for i in keep), tuple(K.gradings[i] for i in keep), tuple(arrows)
    )


def is_reduced(K: KnotComplex) -> bool:
    return not any(ar.mono.is_unit() for ar in K.arrows)


def _dual_name(name: str) -> str:
    return name[:-1] if name.endswith("*") else name + "*"


def dual(K: KnotComplex) -> KnotComplex:
    """Mirror complex: negate both gradings and reverse every arrow."""
    names = tuple(_dual_name(n) for n in K.names)
    grads = tuple(Bigrading(-g.maslov, -g.alexander) for g in K.gradings)
    arrows = tuple(Arrow(t, s, m) for s, t, m in K.arrows)
    return KnotComplex(names, grads, arrows)


def tensor(K: KnotComplex, L: KnotComplex) -> KnotComplex:
    """Tensor product over ``F2[u, w]``; generator ``(x, y)`` is named ``(x,y)``."""
    n2 = len(L)
    names, grads, arrows = [], [], []
    for i, j in itertools.product(range(len(K)), range(n2)):
        names.append(f"({K.names[i]},{L.names[j]})")
        g, h = K.gradings[i], L.gradings[j]
        grads.append(Bigrading(g.maslov + h.maslov, g.alexander + h.alexander))
    for s, t, m in K.arrows:
        for j in range(n2):
            arrows.append(Arrow(s * n2 + j, t * n2 + j, m))
    for s, t, m in L.arrows:
        for i in range(len(K)):
            arrows.append(Arrow(i * n2 + s, i * n2 + t, m))
    return KnotComplex(tuple(names), tuple(grads), tuple(arrows))


def genus_upper(K: KnotComplex) -> int:
    """Top Alexander grading of the reduced complex."""
    R = K if is_reduced(K) else reduce(K)
    if len(R) == 0:
        raise ValidationError("complex is acyclic")
    return R.alexander_range()[1]


# ---------------------------------------------------------------------------
# Ring specializations
# ---------------------------------------------------------------------------


def hat_specialize(K: KnotComplex) -> GradedMonoMatrix:
    """Set ``u = 0``: keep arrows with ``a = 0``; graded by Alexander grading over ``F2[w]``."""
    entries = {(t, s): m.b for s, t, m in K.arrows if m.a == 0}
    return GradedMonoMatrix(tuple(g.alexander for g in K.gradings), entries, scale=1, shift=0)


def v_specialize(K: KnotComplex, p: int, q: int) -> GradedMonoMatrix:
    """
    Substitute ``u = v^p`` and ``w = v^q``.

    Generators are graded by ``2*gamma = -(p+q)*mu + 2*q*A``, under which ``v``
    raises grade by 2 and the differential raises it by ``p + q``.
    """
    if p < 0 or q < 0:
        raise ValueError("specialization exponents must be non-negative")
    grades = tuple(-(p + q) * g.maslov + 2 * q * g.alexander for g in K.gradings)
    entries = {(t, s): p * m.a + q * m.b for s, t, m in K.arrows}
    return GradedMonoMatrix(grades, entries, scale=2, shift=-(p + q))


# ---------------------------------------------------------------------------
# Alexander slices
# ---------------------------------------------------------------------------


def slice_monomial(alexander: int, s: int) -> Monomial:
    """Minimal monomial ``m`` with ``m * x`` in Alexander grading ``s``."""
    return Monomial(0, s - alexander) if s >= alexander else Monomial(alexander - s, 0)


@dataclass(frozen=True, eq=False)
class SliceComplex:
    """
    Alexander grading ``s`` piece of a knot complex as a free ``F2[U]`` complex.

    Slice generator ``i`` is ``monomials[i] * x_i``.  The boundary matrix is
    graded by negated Maslov grading so that ``U`` raises its grade by 2.
    """

    level: int
    monomials: tuple[Monomial, ...]
    maslov: tuple[int, ...]
    matrix: GradedMonoMatrix = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.monomials)


def slice_complex(K: KnotComplex, s: int) -> SliceComplex:
    monos = tuple(slice_monomial(g.alexander, s) for g in K.gradings)
    maslov = tuple(g.maslov - 2 * m.a for g, m in zip(K.gradings, monos))
    entries = {}
    for src, tgt, m in K.arrows:
        e = monos[src].a + m.a - monos[tgt].a
        if e < 0:
            raise ValidationError(f"negative slice exponent on arrow {src}->{tgt}")
        entries[(tgt, src)] = e
    matrix = GradedMonoMatrix(tuple(-mu for mu in maslov), entries, scale=2, shift=-1)
    return SliceComplex(s, monos, maslov, matrix)


def w_map(K: KnotComplex, s: int) -> tuple[int, ...]:
    """Exponents of ``U`` on the diagonal chain map from slice ``s`` to ``s + 1``."""
    return tuple(1 if s < g.alexander else 0 for g in K.gradings)


def u_map(K: KnotComplex, s: int) -> tuple[int, ...]:
    """Exponents of ``U`` on the diagonal chain map from slice ``s`` to ``s - 1``."""
    return tuple(1 if s > g.alexander else 0 for g in K.gradings)


def w_power_exponents(K: KnotComplex, s: int, m: int) -> tuple[int, ...]:
    """Diagonal of ``w^m`` from slice ``s`` to ``s + m``."""
    return tuple(min(max(g.alexander - s, 0), m) for g in K.gradings)


def u_power_exponents(K: KnotComplex, s: int, m: int) -> tuple[int, ...]:
    """Diagonal of ``u^m`` from slice ``s`` to ``s - m``."""
    return tuple(min(max(s - g.alexander, 0), m) for g in K.gradings)


def apply_diagonal(chain: Mapping[int, int], exps: Sequence[int]) -> dict[int, int]:
    return {g: k + exps[g] for g, k in chain.items()}


# ---------------------------------------------------------------------------
# Grading inference
# ---------------------------------------------------------------------------


def _components(n: int, arrows) -> list[list[int]]:
    adj = [[] for _ in range(n)]
    for s, t, _ in arrows:
        adj[s].append(t)
        adj[t].append(s)
    seen = [False] * n
    comps = []
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        comp, queue = [], deque([start])
        while queue:
            v = queue.popleft()
            comp.append(v)
            for nb in adj[v]:
                if not seen[nb]:
                    seen[nb] = True
                    queue.append(nb)
        comps.append(sorted(comp))
    return comps


def _is_symmetric(values) -> bool:
    c = Counter(values)
    return all(c[v] == c[-v] for v in c)


def infer_gradings(
    names: Sequence[str],
    arrows: Iterable,
    anchor: Mapping[str, Bigrading] | None = None,
) -> KnotComplex:
    """
    Solve gradings from arrow monomials.

    Relative gradings come from ``A(x) = A(y) - a + b`` and
    ``mu(x) = mu(y) - 2a + 1``.  A component containing an anchored name is
    pinned by the anchor.  Otherwise Maslov is set to 0 on the component's
    first generator and Alexander offsets are chosen so that the whole
    multiset of Alexander gradings is symmetric under negation.
    """
    names = [str(n) for n in names]
    index = {n: i for i, n in enumerate(names)}
    if len(index) != len(names):
        raise ValidationError("duplicate generator names")

    def resolve(x):
        return x if isinstance(x, int) else index[x]

    arrows = [Arrow(resolve(s), resolve(t), Monomial(*m)) for s, t, m in arrows]
    n = len(names)
    rel: list[tuple[int, int] | None] = [None] * n
    nbrs: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    for s, t, m in arrows:
        if s == t:
            raise SelfLoop((names[s], names[t], m))
        # grading of s minus grading of t
        dmu, dA = 1 - 2 * m.a, m.b - m.a
        nbrs[s].append((t, -dmu, -dA))
        nbrs[t].append((s, dmu, dA))

    comps = _components(n, arrows)
    for comp in comps:
        root = comp[0]
        rel[root] = (0, 0)
        queue = deque([root])
        while queue:
            v = queue.popleft()
            mu_v, a_v = rel[v]
            for nb, dmu, dA in nbrs[v]:
                want = (mu_v + dmu, a_v + dA)
                if rel[nb] is None:
                    rel[nb] = want
                    queue.append(nb)
                elif rel[nb] != want:
                    raise InconsistentGradingSystem(
                        f"gradings of {names[v]} and {names[nb]} are over-determined inconsistently"
                    )

    anchor = {k: _bigrading(v) for k, v in (anchor or {}).items()}
    mu_off = [0] * len(comps)
    a_off: list[int | None] = [None] * len(comps)
    for ci, comp in enumerate(comps):
        pinned = [index[k] for k in anchor if index.get(k) in comp]
        if pinned:
            v = pinned[0]
            mu_off[ci] = anchor[names[v]].maslov - rel[v][0]
            a_off[ci] = anchor[names[v]].alexander - rel[v][1]
            for w_ in pinned[1:]:
                if (rel[w_][0] + mu_off[ci], rel[w_][1] + a_off[ci]) != anchor[names[w_]]:
                    raise InconsistentGradingSystem(f"anchor for {names[w_]} contradicts the arrows")

    free = [ci for ci in range(len(comps)) if a_off[ci] is None]
    fixed_values = [rel[v][1] + a_off[ci] for ci in range(len(comps)) if a_off[ci] is not None for v in comps[ci]]
    pending = []
    for ci in free:
        vals = [rel[v][1] for v in comps[ci]]
        total = min(vals) + max(vals)
        if total % 2 == 0 and _is_symmetric([x - total // 2 for x in vals]):
            a_off[ci] = -(total // 2)
        else:
            pending.append(ci)
    if pending:
        a_off_pending = _match_offsets([[rel[v][1] for v in comps[ci]] for ci in pending], fixed_values)
        if a_off_pending is None:
            raise AsymmetricAlexanderMultiset("no Alexander normalization makes the gradings symmetric")
        for ci, off in zip(pending, a_off_pending):
            a_off[ci] = off

    grads = [None] * n
    for ci, comp in enumerate(comps):
        for v in comp:
            grads[v] = Bigrading(rel[v][0] + mu_off[ci], rel[v][1] + a_off[ci])
    return KnotComplex(tuple(names), tuple(grads), tuple(arrows))


_MAX_ASYMMETRIC_COMPONENTS = 4


def _match_offsets(groups: list[list[int]], fixed: list[int]) -> list[int] | None:
    """Offsets making ``fixed`` plus all shifted groups symmetric; smallest spread wins."""
    if len(groups) > _MAX_ASYMMETRIC_COMPONENTS:
        return None
    bound = sum(max(g) - min(g) + 1 for g in groups) + max((abs(x) for x in fixed), default=0)
    ranges = [range(-bound - max(g), bound - min(g) + 1) for g in groups]
    best = None
    for offs in itertools.product(*ranges):
        vals = fixed + [x + o for g, o in zip(groups, offs) for x in g]
        if not _is_symmetric(vals):
            continue
        key = (max(abs(v) for v in vals), offs)
        if best is None or key < best:
            best = key
    return list(best[1]) if best else None


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------


def parse_complex(text: str, return_inferred: bool = False):
    """
    Parse the line-oriented complex format::

        # comment
        generator <name> [<maslov> <alexander>]
        arrow <from> <to> <a> <b>

    Gradings must be given for every generator or for none; in the latter
    case they are inferred.  Repeated arrow lines cancel in pairs.  With
    ``return_inferred`` the result is ``(complex, gradings_were_inferred)``.
    """
    gens: list[tuple[str, tuple[int, int] | None]] = []
    arrows = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        kind = tok[0]
        try:
            if kind == "generator":
                if len(tok) not in (2, 4):
                    raise FormatError("generator takes a name and optionally two gradings", lineno)
                name = tok[1]
                if name in seen:
                    raise FormatError(f"generator {name!r} declared twice", lineno)
                seen.add(name)
                gens.append((name, (int(tok[2]), int(tok[3])) if len(tok) == 4 else None))
            elif kind == "arrow":
                if len(tok) != 5:
                    raise FormatError("arrow takes two names and two exponents", lineno)
                a, b = int(tok[3]), int(tok[4])
                if a < 0 or b < 0:
                    raise FormatError("arrow exponents must be non-negative", lineno)
                for nm in tok[1:3]:
                    if nm not in seen:
                        raise FormatError(f"unknown generator {nm!r}", lineno)
                arrows.append((tok[1], tok[2], (a, b)))
            else:
                raise FormatError(f"unknown directive {kind!r}", lineno)
        except ValueError as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(f"expected an integer ({exc})", lineno) from None
    if not gens:
        raise FormatError("no generators")
    given = [g for _, g in gens if g is not None]
    if given and len(given) != len(gens):
        raise FormatError("gradings must be given for all generators or for none")
    if given:
        K = KnotComplex.build(gens, arrows)
    else:
        K = infer_gradings([n for n, _ in gens], arrows)
    return (K, not given) if return_inferred else K


def dump_complex(K: KnotComplex, header: str | None = None) -> str:
    lines = []
    if header:
        lines += [f"# {h}" for h in header.splitlines()]
    for name, g in zip(K.names, K.gradings):
        lines.append(f"generator {name} {g.maslov} {g.alexander}")
    for s, t, m in K.arrows:
        lines.append(f"arrow {K.names[s]} {K.names[t]} {m.a} {m.b}")
    return "\n".join(lines) + "\n"


def load_complex(path) -> KnotComplex:
    return parse_complex(Path(path).read_text(encoding="utf-8"))


def save_complex(K: KnotComplex, path, header: str | None = None) -> None:
    Path(path).write_text(dump_complex(K, header), encoding="utf-8")
