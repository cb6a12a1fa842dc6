"""Finite distributive lattices viewed as frames.

The rather-below preorder, the pre-nucleus xi, operator classification
(inflator / pre-nucleus / nucleus), the nuclei that only admit top and the
witness nucleus showing that their pointwise join reaches xi.

A finite distributive lattice is a frame: binary distributivity is all the
infinite law asks for when every join is finite.  On such frames xi is
always idempotent, so the general failure of the join of all top-only
nuclei to be a nucleus has no finite witness; see :mod:`subfit.curious`
for an infinite one.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import CapExceededError, InternalConsistencyError, PreconditionError
from .lattice import MAX_LATTICE_SIZE, FiniteLattice, FinitePoset, require_distributive

ENUM_CAP = 7


@dataclass(frozen=True, eq=False)
class Operator:
    """A total self-map of ``base`` given by its table of images."""

    base: FiniteLattice
    table: tuple[int, ...]

    def __post_init__(self):
        table = tuple(int(x) for x in self.table)
        if len(table) != self.base.size:
            raise ValueError(f"table has {len(table)} entries, lattice has {self.base.size}")
        if any(not 0 <= x < self.base.size for x in table):
            raise ValueError("table entry out of range")
        object.__setattr__(self, "table", table)

    @classmethod
    def identity(cls, L: FiniteLattice) -> "Operator":
        return cls(L, tuple(range(L.size)))

    @classmethod
    def constant(cls, L: FiniteLattice, value: int) -> "Operator":
        return cls(L, (value,) * L.size)

    def __call__(self, a: int) -> int:
        return self.table[a]

    def __eq__(self, other):
        if not isinstance(other, Operator):
            return NotImplemented
        return self.base is other.base and self.table == other.table

    def __hash__(self):
        return hash((id(self.base), self.table))

    def __repr__(self):
        pairs = ", ".join(f"{self.base.labels[i]}->{self.base.labels[v]}"
                          for i, v in enumerate(self.table))
        return f"Operator({pairs})"

    def compose(self, inner: "Operator") -> "Operator":
        """``self ∘ inner``."""
        return Operator(self.base, tuple(self.table[x] for x in inner.table))

    def leq(self, other: "Operator") -> bool:
        """Pointwise order of operators."""
        leq = self.base.leq
        return all(leq[x, y] for x, y in zip(self.table, other.table))

    def to_json(self) -> list[str]:
        return [self.base.labels[v] for v in self.table]


@dataclass(frozen=True, eq=False)
class PreorderRelation:
    base: FiniteLattice
    rel: np.ndarray

    def __call__(self, a: int, b: int) -> bool:
        return bool(self.rel[a, b])

    def pairs(self) -> list[tuple[int, int]]:
        return [(int(a), int(b)) for a, b in np.argwhere(self.rel)]

    def to_json(self) -> list[list[str]]:
        labels = self.base.labels
        return sorted([labels[a], labels[b]] for a, b in self.pairs())


def rather_below(L: FiniteLattice, a: int, b: int) -> bool:
    """Whether ``a ⪯ b``: every ``c`` with ``a ∨ c = ⊤`` also has ``b ∨ c = ⊤``."""
    require_distributive(L)
    join, top = L.join, L.top
    return all(join[b, c] == top for c in range(L.size) if join[a, c] == top)


def preceq_relation(L: FiniteLattice) -> PreorderRelation:
    require_distributive(L)
    covers_top = L.join == L.top  # covers_top[a, c]: a ∨ c = ⊤
    rel = np.empty((L.size, L.size), dtype=bool)
    for a in range(L.size):
        # a ⪯ b fails iff some c completes a but not b
        rel[a] = ~(covers_top[a][None, :] & ~covers_top).any(axis=1)
    rel.setflags(write=False)
    return PreorderRelation(L, rel)


def _xi_table(L: FiniteLattice, rel: np.ndarray) -> tuple[int, ...]:
    return tuple(L.join_all(np.flatnonzero(rel[:, a]).tolist()) for a in range(L.size))


def xi(L: FiniteLattice, a: int) -> int:
    """Join of every ``b`` with ``b ⪯ a``."""
    require_distributive(L)
    return L.join_all(b for b in range(L.size) if rather_below(L, b, a))


def xi_operator(L: FiniteLattice) -> Operator:
    return Operator(L, _xi_table(L, preceq_relation(L).rel))


# --- classification ------------------------------------------------------------

def is_inflator(op: Operator) -> bool:
    L, f = op.base, np.asarray(op.table)
    leq = L.leq
    if not leq[np.arange(L.size), f].all():
        return False
    # a <= b  implies  f(a) <= f(b)
    return bool((~leq | leq[np.ix_(f, f)]).all())


def is_prenucleus(op: Operator) -> bool:
    if not is_inflator(op):
        return False
    L, f = op.base, np.asarray(op.table)
    lhs = L.meet[np.ix_(f, f)]
    rhs = f[L.meet]
    return bool(L.leq[lhs, rhs].all())


def is_nucleus(op: Operator) -> bool:
    return is_prenucleus(op) and op.compose(op) == op


def admits_only_top(op: Operator) -> bool:
    top = op.base.top
    return all(a == top for a, v in enumerate(op.table) if v == top)


def pointwise_join(ops: Iterable[Operator]) -> Operator:
    ops = list(ops)
    if not ops:
        raise ValueError("pointwise join of an empty family")
    L = ops[0].base
    if any(op.base is not L for op in ops):
        raise ValueError("operators live on different lattices")
    return Operator(L, tuple(L.join_all(op.table[a] for op in ops) for a in range(L.size)))


def iterate_to_closure(op: Operator) -> tuple[Operator, int]:
    """Least ``k`` with ``op^(k+1) = op^k``, together with ``op^k``.

    Each step raises at least one entry of the table strictly, so at most
    ``|L|·|L|`` steps are needed.
    """
    if not is_inflator(op):
        raise PreconditionError("iterate_to_closure needs an inflator")
    current, steps = Operator.identity(op.base), 0
    bound = op.base.size ** 2
    while True:
        nxt = op.compose(current)
        if nxt == current:
            return current, steps
        current, steps = nxt, steps + 1
        if steps > bound:
            raise InternalConsistencyError("inflator iteration failed to stabilise")


def is_subfit(L: FiniteLattice) -> bool:
    """Whether ⪯ coincides with ≤; cross-checked against ``xi == identity``."""
    rel = preceq_relation(L).rel
    by_order = bool(np.array_equal(rel, L.leq))
    by_xi = xi_operator(L) == Operator.identity(L)
    if by_order != by_xi:
        raise InternalConsistencyError(
            f"subfitness tests disagree on {L!r}: preceq==leq is {by_order}, xi==id is {by_xi}")
    return by_order


def witness_nucleus(L: FiniteLattice, a: int, b: int) -> Operator:
    """The nucleus ``g(c) = ⋁{x : x <= b ∨ c and x ∧ a <= c}`` for ``b ⪯ a``.

    It only admits top and satisfies ``b <= g(a)``; both facts and
    nucleus-hood are checked before returning.
    """
    if not rather_below(L, b, a):
        raise PreconditionError(f"{L.labels[b]!r} is not rather below {L.labels[a]!r}")
    leq, meet, join = L.leq, L.meet, L.join
    xs = np.arange(L.size)
    table = []
    for c in range(L.size):
        members = leq[xs, join[b, c]] & leq[meet[xs, a], c]
        table.append(L.join_all(np.flatnonzero(members).tolist()))
    g = Operator(L, tuple(table))
    if not (is_nucleus(g) and admits_only_top(g) and leq[b, g(a)]):
        raise InternalConsistencyError(f"witness nucleus for ({a}, {b}) fails its guarantees")
    return g


def enumerate_Fn(L: FiniteLattice, cap: int = ENUM_CAP) -> list[Operator]:
    """Every nucleus on ``L`` whose only admitted element is top.

    Backtracking over all self-maps, assigning images along a linear
    extension so that inflationarity, top-only admission, monotonicity and
    meet preservation can be checked as soon as both sides are assigned.
    Idempotence is checked on complete maps.  Result sorted by table.
    """
    require_distributive(L)
    n = L.size
    if n > cap:
        raise CapExceededError(f"enumerate_Fn on {n} elements exceeds cap {cap}")
    leq, meet, top = L.leq, L.meet, L.top
    order = L.linear_extension
    f = [-1] * n
    found = []

    def consistent(a: int, v: int) -> bool:
        for b in order:
            fb = f[b]
            if fb < 0:
                break
            if leq[b, a] and not leq[fb, v]:
                return False
            m = meet[a, b]
            fm = v if m == a else f[m]
            if not leq[meet[v, fb], fm]:
                return False
        return True

    def extend(pos: int):
        if pos == n:
            if all(f[f[x]] == f[x] for x in range(n)):
                found.append(tuple(f))
            return
        a = order[pos]
        for v in range(n):
            if not leq[a, v] or (v == top and a != top):
                continue
            if consistent(a, v):
                f[a] = v
                extend(pos + 1)
                f[a] = -1

    extend(0)
    return [Operator(L, t) for t in sorted(found)]


def theorem2_check(L: FiniteLattice, cap: int = ENUM_CAP) -> bool:
    """Whether the pointwise join of all top-only nuclei equals xi."""
    return pointwise_join(enumerate_Fn(L, cap)).table == xi_operator(L).table


@dataclass(frozen=True, eq=False)
class Product:
    lattice: FiniteLattice
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(self.pairs)})

    def index(self, a: int, b: int) -> int:
        return self._index[(a, b)]


def frame_product(A: FiniteLattice, B: FiniteLattice,
                  max_size: int | None = MAX_LATTICE_SIZE) -> Product:
    """Cartesian product with coordinatewise order, meet and join.

    Pair ``(a, b)`` sits at index ``a * |B| + b``.
    """
    require_distributive(A)
    require_distributive(B)
    na, nb = A.size, B.size
    if max_size is not None and na * nb > max_size:
        raise CapExceededError(f"product of size {na * nb} exceeds cap {max_size}")
    pairs = tuple((a, b) for a in range(na) for b in range(nb))
    ia = np.repeat(np.arange(na), nb)
    ib = np.tile(np.arange(nb), na)
    leq = A.leq[np.ix_(ia, ia)] & B.leq[np.ix_(ib, ib)]
    meet = A.meet[np.ix_(ia, ia)] * nb + B.meet[np.ix_(ib, ib)]
    join = A.join[np.ix_(ia, ia)] * nb + B.join[np.ix_(ib, ib)]
    labels = tuple(f"({A.labels[a]},{B.labels[b]})" for a, b in pairs)
    L = FiniteLattice(FinitePoset(leq, labels), meet, join,
                      A.bot * nb + B.bot, A.top * nb + B.top)
    return Product(L, pairs)


def pair_operators(f: Operator, g: Operator, product: Product) -> Operator:
    """The coordinatewise operator ``(a, b) -> (f(a), g(b))`` on ``product``."""
    nb = g.base.size
    return Operator(product.lattice, tuple(f(a) * nb + g(b) for a, b in product.pairs))


def operator_from_names(L: FiniteLattice, names: Sequence[str]) -> Operator:
    return Operator(L, tuple(L.index[x] for x in names))
