"""Finite topological spaces given by explicit families of open sets."""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import CapExceededError, DocumentSyntaxError, InternalConsistencyError, TopologyError
from .lattice import FiniteLattice, FinitePoset, irreducibles, is_lattice_isomorphism, require_distributive, transitive_closure

POINT_CAP = 12


@dataclass(frozen=True, eq=False)
class FiniteSpace:
    labels: tuple[str, ...]
    opens: frozenset[frozenset[int]]

    @property
    def size(self) -> int:
        return len(self.labels)

    @cached_property
    def full(self) -> frozenset[int]:
        return frozenset(range(self.size))

    @cached_property
    def sorted_opens(self) -> tuple[frozenset[int], ...]:
        """Opens ordered by size, then by sorted member tuple."""
        return tuple(sorted(self.opens, key=lambda u: (len(u), sorted(u))))

    @cached_property
    def closed_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(self.full - u for u in self.sorted_opens)

    def closure(self, points: Iterable[int]) -> frozenset[int]:
        pts = frozenset(points)
        # complement of the largest open missing every point
        largest = frozenset().union(*(u for u in self.opens if not u & pts))
        return self.full - largest

    def open_set(self, names: Iterable[str]) -> "OpenSet":
        idx = {n: i for i, n in enumerate(self.labels)}
        return OpenSet(self, frozenset(idx[n] for n in names))

    def __repr__(self):
        return f"FiniteSpace(points={list(self.labels)!r}, opens={len(self.opens)})"


@dataclass(frozen=True, eq=False)
class OpenSet:
    space: FiniteSpace
    members: frozenset[int]

    def __post_init__(self):
        if self.members not in self.space.opens:
            raise TopologyError(f"{sorted(self.members)} is not open")


def validate_space(points: Sequence[str], opens: Iterable[Iterable], max_points: int = POINT_CAP) -> FiniteSpace:
    """Check the topology axioms on a finite family and build the space.

    ``opens`` may hold point labels or indices.  Closure under binary unions
    and intersections suffices in the finite case.
    """
    labels = tuple(points)
    if len(set(labels)) != len(labels):
        raise TopologyError("duplicate point labels")
    if len(labels) > max_points:
        raise CapExceededError(f"space with {len(labels)} points exceeds cap {max_points}")
    idx = {n: i for i, n in enumerate(labels)}
    fam = set()
    for u in opens:
        members = set()
        for p in u:
            if isinstance(p, str):
                if p not in idx:
                    raise TopologyError(f"open set mentions unknown point {p!r}")
                members.add(idx[p])
            else:
                if not 0 <= p < len(labels):
                    raise TopologyError(f"open set mentions unknown point {p!r}")
                members.add(int(p))
        fam.add(frozenset(members))
    full = frozenset(range(len(labels)))
    if frozenset() not in fam:
        raise TopologyError("the empty set is not open")
    if full not in fam:
        raise TopologyError("the whole space is not open")
    for u in fam:
        for v in fam:
            if u | v not in fam:
                raise TopologyError(f"opens not closed under union: {sorted(u)} ∪ {sorted(v)}")
            if u & v not in fam:
                raise TopologyError(f"opens not closed under intersection: {sorted(u)} ∩ {sorted(v)}")
    return FiniteSpace(labels, frozenset(fam))


def parse_space_document(text: bytes | str) -> FiniteSpace:
    """Parse ``{"points": [...], "opens": [[...], ...]}``."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(str(exc)) from exc
    if not isinstance(raw, dict) or set(raw) != {"points", "opens"}:
        raise DocumentSyntaxError('expected an object with keys "points" and "opens"')
    pts, opens = raw["points"], raw["opens"]
    if not isinstance(pts, list) or not all(isinstance(p, str) for p in pts):
        raise DocumentSyntaxError('"points" must be a list of strings')
    if not isinstance(opens, list) or not all(
            isinstance(u, list) and all(isinstance(p, str) for p in u) for u in opens):
        raise DocumentSyntaxError('"opens" must be a list of lists of point names')
    return validate_space(pts, opens)


def dump_space_document(S: FiniteSpace) -> str:
    opens = [[S.labels[i] for i in sorted(u)] for u in S.sorted_opens]
    return json.dumps({"points": list(S.labels), "opens": opens},
                      ensure_ascii=False, separators=(",", ":"))


def _set_label(S: FiniteSpace, u: frozenset[int]) -> str:
    return "{" + ",".join(S.labels[i] for i in sorted(u)) + "}"


def opens_frame(S: FiniteSpace) -> FiniteLattice:
    """The opens of ``S`` under inclusion, indexed as in ``S.sorted_opens``."""
    opens = S.sorted_opens
    pos = {u: i for i, u in enumerate(opens)}
    leq = np.array([[u <= v for v in opens] for u in opens], dtype=bool)
    meet = np.array([[pos[u & v] for v in opens] for u in opens], dtype=np.intp)
    join = np.array([[pos[u | v] for v in opens] for u in opens], dtype=np.intp)
    labels = tuple(_set_label(S, u) for u in opens)
    return FiniteLattice(FinitePoset(leq, labels), meet, join, pos[frozenset()], pos[S.full])


def point_closure(S: FiniteSpace, p: int) -> frozenset[int]:
    """Points ``q`` such that every open containing ``q`` contains ``p``."""
    return frozenset(q for q in range(S.size) if all(p in u for u in S.opens if q in u))


def preceq_points(S: FiniteSpace, U: OpenSet | frozenset[int], W: OpenSet | frozenset[int]) -> bool:
    """Point criterion: no ``u ∈ U \\ W`` has its closure inside ``U``."""
    u_set = U.members if isinstance(U, OpenSet) else frozenset(U)
    w_set = W.members if isinstance(W, OpenSet) else frozenset(W)
    return all(not point_closure(S, u) <= u_set for u in u_set - w_set)


def is_jacobson_space(S: FiniteSpace) -> bool:
    """Every closed set is the closure of the closed points it contains."""
    closed_points = frozenset(p for p in range(S.size) if point_closure(S, p) == {p})
    return all(S.closure(C & closed_points) == C for C in S.closed_sets)


def spec_space(D: FiniteLattice) -> FiniteSpace:
    """Prime ideals of ``D`` with opens generated by ``D(a) = {P : a ∉ P}``.

    Primes are the principal ideals of meet-irreducible elements and are
    labelled by their generator.  Verifies that ``a -> D(a)`` is an
    isomorphism from ``D`` onto the opens frame.
    """
    require_distributive(D)
    primes = sorted(irreducibles(D).meet_irreducibles)
    labels = tuple(D.labels[m] for m in primes)
    basic = [frozenset(i for i, m in enumerate(primes) if not D.leq[a, m]) for a in range(D.size)]
    fam = set(basic)
    changed = True
    while changed:
        changed = False
        for u in list(fam):
            for v in list(fam):
                for w in (u | v, u & v):
                    if w not in fam:
                        fam.add(w)
                        changed = True
    S = validate_space(labels, fam, max_points=max(POINT_CAP, len(labels)))
    frame = opens_frame(S)
    pos = {u: i for i, u in enumerate(S.sorted_opens)}
    if not is_lattice_isomorphism(D, frame, [pos[u] for u in basic]):
        raise InternalConsistencyError(f"opens of Spec {D!r} are not isomorphic to it")
    return S


def basic_open(D: FiniteLattice, S: FiniteSpace, a: int) -> frozenset[int]:
    """The open ``D(a)`` inside ``spec_space(D)``."""
    gens = [D.index[name] for name in S.labels]
    return frozenset(i for i, m in enumerate(gens) if not D.leq[a, m])


# --- corpora of spaces ---------------------------------------------------------

def space_from_preorder(leq: np.ndarray, labels: Sequence[str] | None = None) -> FiniteSpace:
    """Alexandrov space whose opens are the down-closed sets of a preorder."""
    n = leq.shape[0]
    if labels is None:
        labels = [chr(ord("a") + i) for i in range(n)]
    below = [frozenset(np.flatnonzero(leq[:, i]).tolist()) for i in range(n)]
    opens = set()
    for mask in range(1 << n):
        u = frozenset(i for i in range(n) if mask >> i & 1)
        if all(below[i] <= u for i in u):
            opens.add(u)
    return FiniteSpace(tuple(labels), frozenset(opens))


def enumerate_spaces(n: int) -> Iterator[FiniteSpace]:
    """Every topology on ``n`` labelled points (one per preorder)."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    seen = set()
    for bits in range(1 << len(pairs)):
        rel = np.eye(n, dtype=bool)
        for k, (i, j) in enumerate(pairs):
            if bits >> k & 1:
                rel[i, j] = True
        if not np.array_equal(transitive_closure(rel), rel):
            continue
        key = rel.tobytes()
        if key not in seen:
            seen.add(key)
            yield space_from_preorder(rel)


def random_space(n: int, rng: random.Random, density: float = 0.3) -> FiniteSpace:
    rel = np.eye(n, dtype=bool)
    for i in range(n):
        for j in range(n):
            if i != j and rng.random() < density:
                rel[i, j] = True
    return space_from_preorder(transitive_closure(rel))


def sierpinski() -> FiniteSpace:
    return validate_space(["a", "b"], [[], ["a"], ["a", "b"]])


def discrete(n: int) -> FiniteSpace:
    labels = [chr(ord("a") + i) for i in range(n)]
    return space_from_preorder(np.eye(n, dtype=bool), labels)


def indiscrete(n: int) -> FiniteSpace:
    labels = [chr(ord("a") + i) for i in range(n)]
    return validate_space(labels, [[], labels])
