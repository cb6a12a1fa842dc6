"""Finite posets and finite bounded lattices.

Elements are dense indices ``0..n-1``; the order is a boolean numpy table
``leq[a, b] == (a <= b)`` and meets/joins are precomputed integer tables.
Lattices are immutable once built.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    CapExceededError,
    DocumentSemanticError,
    DocumentSyntaxError,
    NoBoundsError,
    NotALatticeError,
    NotDistributiveError,
)

MAX_LATTICE_SIZE = 4096


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return arr


def transitive_closure(rel: np.ndarray) -> np.ndarray:
    """Reflexive-transitive closure of a square boolean relation (Warshall)."""
    closure = np.array(rel, dtype=bool, copy=True)
    n = closure.shape[0]
    closure[np.arange(n), np.arange(n)] = True
    for k in range(n):
        closure |= closure[:, k, None] & closure[None, k, :]
    return closure


def cover_matrix(leq: np.ndarray) -> np.ndarray:
    """``cov[x, y]`` is true iff y covers x."""
    n = leq.shape[0]
    strict = leq & ~np.eye(n, dtype=bool)
    s = strict.astype(np.int64)
    return strict & ((s @ s) == 0)


@dataclass(frozen=True, eq=False)
class FinitePoset:
    leq: np.ndarray
    labels: tuple[str, ...]

    def __post_init__(self):
        leq = np.asarray(self.leq, dtype=bool)
        n = len(self.labels)
        if leq.shape != (n, n):
            raise ValueError(f"leq has shape {leq.shape}, expected {(n, n)}")
        if not leq.diagonal().all():
            raise ValueError("leq is not reflexive")
        if (leq & leq.T & ~np.eye(n, dtype=bool)).any():
            raise ValueError("leq is not antisymmetric")
        if n and not (transitive_closure(leq) == leq).all():
            raise ValueError("leq is not transitive")
        object.__setattr__(self, "leq", _frozen(leq))

    @classmethod
    def from_leq(cls, leq, labels: Sequence[str] | None = None) -> "FinitePoset":
        leq = np.asarray(leq, dtype=bool)
        if labels is None:
            labels = [str(i) for i in range(leq.shape[0])]
        return cls(leq, tuple(labels))

    @property
    def size(self) -> int:
        return len(self.labels)

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"FinitePoset(size={self.size}, labels={list(self.labels)!r})"


@dataclass(frozen=True, eq=False)
class FiniteLattice:
    poset: FinitePoset
    meet: np.ndarray
    join: np.ndarray
    bot: int
    top: int

    def __post_init__(self):
        object.__setattr__(self, "meet", _frozen(np.asarray(self.meet, dtype=np.intp)))
        object.__setattr__(self, "join", _frozen(np.asarray(self.join, dtype=np.intp)))

    @classmethod
    def from_leq(cls, leq, labels: Sequence[str] | None = None,
                 max_size: int | None = MAX_LATTICE_SIZE) -> "FiniteLattice":
        return cls.from_poset(FinitePoset.from_leq(leq, labels), max_size=max_size)

    @classmethod
    def from_poset(cls, poset: FinitePoset,
                   max_size: int | None = MAX_LATTICE_SIZE) -> "FiniteLattice":
        n = poset.size
        if n == 0:
            raise NoBoundsError("the empty poset has no bounds")
        if max_size is not None and n > max_size:
            raise CapExceededError(f"lattice with {n} elements exceeds cap {max_size}")
        leq = poset.leq
        bots = np.flatnonzero(leq.all(axis=1))
        tops = np.flatnonzero(leq.all(axis=0))
        if len(bots) != 1 or len(tops) != 1:
            raise NoBoundsError("poset has no global bottom and top")
        meet = _extremal_bounds(leq, poset.labels, "meet")
        join = _extremal_bounds(leq.T, poset.labels, "join")
        return cls(poset, meet, join, int(bots[0]), int(tops[0]))

    @property
    def size(self) -> int:
        return self.poset.size

    def __len__(self):
        return self.size

    @property
    def leq(self) -> np.ndarray:
        return self.poset.leq

    @property
    def labels(self) -> tuple[str, ...]:
        return self.poset.labels

    @cached_property
    def index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.labels)}

    def join_all(self, elems: Iterable[int]) -> int:
        acc = self.bot
        for x in elems:
            acc = int(self.join[acc, x])
        return acc

    def meet_all(self, elems: Iterable[int]) -> int:
        acc = self.top
        for x in elems:
            acc = int(self.meet[acc, x])
        return acc

    def downset(self, a: int) -> frozenset[int]:
        return frozenset(np.flatnonzero(self.leq[:, a]).tolist())

    @cached_property
    def covers(self) -> np.ndarray:
        return _frozen(cover_matrix(self.leq))

    @cached_property
    def linear_extension(self) -> tuple[int, ...]:
        """Element indices sorted so that every element follows everything below it."""
        heights = self.leq.sum(axis=0)
        return tuple(int(i) for i in np.lexsort((np.arange(self.size), heights)))

    @cached_property
    def is_distributive(self) -> bool:
        return check_distributive(self)

    def __repr__(self):
        return f"FiniteLattice(size={self.size}, labels={list(self.labels)!r})"


def _extremal_bounds(leq: np.ndarray, labels, what: str) -> np.ndarray:
    # For each pair (a, b) find the greatest common lower bound w.r.t. ``leq``.
    # With leq transposed this yields least upper bounds.
    n = leq.shape[0]
    out = np.empty((n, n), dtype=np.intp)
    leq_i = leq.astype(np.int64)
    for a in range(n):
        lower = leq[:, a, None] & leq  # lower[x, b]: x below a and b
        total = lower.sum(axis=0)
        covered = leq_i.T @ lower.astype(np.int64)  # covered[x, b]: # lower bounds below x
        best = lower & (covered == total[None, :])
        found = best.sum(axis=0)
        if (found != 1).any():
            b = int(np.flatnonzero(found != 1)[0])
            raise NotALatticeError(f"elements {labels[a]!r} and {labels[b]!r} have no {what}")
        out[a] = best.argmax(axis=0)
    return out


def check_distributive(L: FiniteLattice) -> bool:
    """True iff ``a ∧ (b ∨ c) == (a ∧ b) ∨ (a ∧ c)`` for all triples."""
    meet, join = L.meet, L.join
    for a in range(L.size):
        lhs = meet[a][join]
        ma = meet[a]
        rhs = join[ma[:, None], ma[None, :]]
        if not np.array_equal(lhs, rhs):
            return False
    return True


def require_distributive(L: FiniteLattice) -> None:
    if not L.is_distributive:
        raise NotDistributiveError(f"{L!r} is not distributive")


# --- documents ---------------------------------------------------------------

@dataclass(frozen=True)
class LatticeDocument:
    elements: tuple[str, ...]
    covers: tuple[tuple[str, str], ...]


def parse_lattice_document(text: bytes | str) -> LatticeDocument:
    """Parse and validate the JSON lattice interchange format.

    ``{"elements": [...], "covers": [[lower, upper], ...]}``
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DocumentSyntaxError(f"document is not UTF-8: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(str(exc)) from exc
    if not isinstance(raw, dict) or set(raw) != {"elements", "covers"}:
        raise DocumentSyntaxError('expected an object with keys "elements" and "covers"')
    elements, covers = raw["elements"], raw["covers"]
    if not isinstance(elements, list) or not all(isinstance(e, str) for e in elements):
        raise DocumentSyntaxError('"elements" must be a list of strings')
    if not isinstance(covers, list) or not all(
        isinstance(c, list) and len(c) == 2 and all(isinstance(x, str) for x in c)
        for c in covers
    ):
        raise DocumentSyntaxError('"covers" must be a list of [lower, upper] string pairs')

    if len(set(elements)) != len(elements):
        dupes = sorted({e for e in elements if elements.count(e) > 1})
        raise DocumentSemanticError(f"duplicate element names: {dupes}")
    names = set(elements)
    for lo, hi in covers:
        for x in (lo, hi):
            if x not in names:
                raise DocumentSemanticError(f"cover references undeclared element {x!r}")
    doc = LatticeDocument(tuple(elements), tuple((lo, hi) for lo, hi in covers))
    _document_order(doc)  # raises on cycles
    return doc


def _document_order(doc: LatticeDocument) -> np.ndarray:
    index = {name: i for i, name in enumerate(doc.elements)}
    n = len(doc.elements)
    rel = np.zeros((n, n), dtype=bool)
    for lo, hi in doc.covers:
        if lo == hi:
            raise DocumentSemanticError(f"cover ({lo!r}, {hi!r}) is a loop")
        rel[index[lo], index[hi]] = True
    leq = transitive_closure(rel)
    cyc = leq & leq.T & ~np.eye(n, dtype=bool)
    if cyc.any():
        i, j = np.argwhere(cyc)[0]
        raise DocumentSemanticError(
            f"covers contain a cycle through {doc.elements[i]!r} and {doc.elements[j]!r}")
    return leq


def build_lattice(doc: LatticeDocument, max_size: int | None = MAX_LATTICE_SIZE) -> FiniteLattice:
    return FiniteLattice.from_leq(_document_order(doc), doc.elements, max_size=max_size)


def load_lattice(text: bytes | str, max_size: int | None = MAX_LATTICE_SIZE) -> FiniteLattice:
    return build_lattice(parse_lattice_document(text), max_size=max_size)


def lattice_to_document(L: FiniteLattice | FinitePoset) -> LatticeDocument:
    leq = L.leq
    labels = L.labels
    cov = cover_matrix(leq)
    pairs = sorted((labels[i], labels[j]) for i, j in np.argwhere(cov))
    return LatticeDocument(tuple(labels), tuple(pairs))


def dump_lattice_document(doc: LatticeDocument) -> str:
    covers = sorted(doc.covers)
    return json.dumps({"elements": list(doc.elements), "covers": [list(c) for c in covers]},
                      ensure_ascii=False, separators=(",", ":"))


# --- constructions -------------------------------------------------------------

def chain(n: int) -> FiniteLattice:
    """The n-element chain ``0 < 1 < ... < n-1``; n = 3 is labelled bot, m, top."""
    if n == 3:
        labels = ["bot", "m", "top"]
    else:
        labels = [str(i) for i in range(n)]
    idx = np.arange(n)
    return FiniteLattice.from_leq(idx[:, None] <= idx[None, :], labels)


def antichain(n: int) -> FinitePoset:
    return FinitePoset.from_leq(np.eye(n, dtype=bool), [chr(ord("a") + i) for i in range(n)])


def boolean_lattice(k: int) -> FiniteLattice:
    return downset_lattice(antichain(k))


def downset_lattice(P: FinitePoset, max_size: int | None = MAX_LATTICE_SIZE) -> FiniteLattice:
    """Lattice of down-closed subsets of ``P`` ordered by inclusion.

    Downsets are listed by size, then by bitmask, so the order is a linear
    extension and the empty set is element 0.
    """
    n = P.size
    below = [int(sum(1 << j for j in np.flatnonzero(P.leq[:, i]) if j != i)) for i in range(n)]
    seen = {0}
    stack = [0]
    while stack:
        d = stack.pop()
        for x in range(n):
            bit = 1 << x
            if not d & bit and below[x] & d == below[x]:
                e = d | bit
                if e not in seen:
                    seen.add(e)
                    if max_size is not None and len(seen) > max_size:
                        raise CapExceededError(f"downset lattice exceeds cap {max_size}")
                    stack.append(e)
    masks = sorted(seen, key=lambda m: (bin(m).count("1"), m))
    size = len(masks)
    pos = {m: i for i, m in enumerate(masks)}
    labels = ["{" + ",".join(P.labels[j] for j in range(n) if m >> j & 1) + "}" for m in masks]
    leq = np.array([[(a & b) == a for b in masks] for a in masks], dtype=bool)
    meet = np.array([[pos[a & b] for b in masks] for a in masks], dtype=np.intp)
    join = np.array([[pos[a | b] for b in masks] for a in masks], dtype=np.intp)
    return FiniteLattice(FinitePoset(leq, tuple(labels)), meet, join, 0, size - 1)


@dataclass(frozen=True)
class Irreducibles:
    join_irreducibles: frozenset[int]
    meet_irreducibles: frozenset[int]
    coatoms: frozenset[int]
    atoms: frozenset[int]


def irreducibles(L: FiniteLattice) -> Irreducibles:
    cov = L.covers
    lower_count = cov.sum(axis=0)
    upper_count = cov.sum(axis=1)
    return Irreducibles(
        join_irreducibles=frozenset(np.flatnonzero(lower_count == 1).tolist()),
        meet_irreducibles=frozenset(np.flatnonzero(upper_count == 1).tolist()),
        coatoms=frozenset(np.flatnonzero(cov[:, L.top]).tolist()),
        atoms=frozenset(np.flatnonzero(cov[L.bot, :]).tolist()),
    )


def join_irreducible_poset(L: FiniteLattice) -> tuple[FinitePoset, tuple[int, ...]]:
    """Join-irreducibles of ``L`` with the induced order, plus their indices in ``L``."""
    js = tuple(sorted(irreducibles(L).join_irreducibles))
    sub = L.leq[np.ix_(js, js)] if js else np.zeros((0, 0), dtype=bool)
    return FinitePoset(sub, tuple(L.labels[j] for j in js)), js


def is_lattice_isomorphism(A: FiniteLattice, B: FiniteLattice, mapping: Sequence[int]) -> bool:
    """True iff ``mapping`` (A index -> B index) is an order isomorphism."""
    f = np.asarray(mapping, dtype=np.intp)
    if A.size != B.size or len(f) != A.size or len(set(f.tolist())) != A.size:
        return False
    return bool(np.array_equal(A.leq, B.leq[np.ix_(f, f)]))


def birkhoff_map(L: FiniteLattice) -> tuple[FiniteLattice, tuple[int, ...]]:
    """Map each ``x`` to the downset ``{j ∈ J(L) : j <= x}`` of join-irreducibles.

    Returns the downset lattice of ``J(L)`` and the induced element map.  For a
    distributive ``L`` the map is a lattice isomorphism.
    """
    J, js = join_irreducible_poset(L)
    D = downset_lattice(J)
    by_label = D.index
    mapping = []
    for x in range(L.size):
        names = [J.labels[k] for k, j in enumerate(js) if L.leq[j, x]]
        mapping.append(by_label.get("{" + ",".join(names) + "}", -1))
    return D, tuple(mapping)


# --- corpus generation ---------------------------------------------------------

def poset_canonical_form(leq: np.ndarray) -> bytes:
    """Lexicographically least packed order table over all relabelings."""
    n = leq.shape[0]
    if n == 0:
        return bytes([0])
    best = None
    for perm in itertools.permutations(range(n)):
        p = list(perm)
        key = np.packbits(leq[np.ix_(p, p)]).tobytes()
        if best is None or key < best:
            best = key
    return (best or b"") + bytes([n])


def enumerate_posets(n: int) -> Iterator[FinitePoset]:
    """All posets on ``n`` points up to isomorphism, in canonical-form order.

    Every poset has a linear extension, so closures of relations that only
    point from lower to higher index cover all isomorphism types.
    """
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    closures = {}
    for bits in range(1 << len(pairs)):
        rel = np.eye(n, dtype=bool)
        for k, (i, j) in enumerate(pairs):
            if bits >> k & 1:
                rel[i, j] = True
        leq = transitive_closure(rel)
        closures.setdefault(np.packbits(leq).tobytes() + bytes([n]), leq)
    canon = {}
    for leq in closures.values():
        canon.setdefault(poset_canonical_form(leq), leq)
    labels = [chr(ord("a") + i) for i in range(n)]
    for key in sorted(canon):
        yield FinitePoset(canon[key], tuple(labels))


def downset_corpus(max_poset_size: int, max_lattice_size: int | None = None) -> list[FiniteLattice]:
    """Downset lattices of every poset with at most ``max_poset_size`` points.

    Non-isomorphic posets give non-isomorphic lattices, so the list has no
    repeats.  Sorted by lattice size, then by poset canonical form.
    """
    out = []
    for k in range(max_poset_size + 1):
        for P in enumerate_posets(k):
            L = downset_lattice(P)
            if max_lattice_size is None or L.size <= max_lattice_size:
                out.append((L.size, k, poset_canonical_form(P.leq), L))
    out.sort(key=lambda t: t[:3])
    return [t[3] for t in out]
