"""Ideals, spectra, xi and chi on ideals, and the Heitmann quotient.

In a finite lattice every ideal is principal, so the ideal frame is a
relabelled copy of ``D`` and ideals are stored by their generator.  The
set-theoretic view is still available and is used by the definitional
checks, which deliberately avoid the generator shortcut.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

import numpy as np

from .errors import CapExceededError, InternalConsistencyError, PreconditionError
from .frames import Operator, is_subfit, preceq_relation, xi_operator
from .lattice import FiniteLattice, FinitePoset, irreducibles, lattice_to_document, require_distributive
from .topology import is_jacobson_space, spec_space

CONGRUENCE_CAP = 8


@dataclass(frozen=True, eq=False)
class Ideal:
    base: FiniteLattice
    generator: int

    @classmethod
    def from_members(cls, D: FiniteLattice, members: Iterable[int]) -> "Ideal":
        """Validate a subset as an ideal and recover its generator."""
        members = frozenset(int(m) for m in members)
        if not members:
            raise ValueError("ideals are nonempty")
        gen = D.join_all(members)
        if gen not in members:
            raise ValueError("subset is not closed under joins")
        if D.downset(gen) != members:
            raise ValueError("subset is not downward closed")
        return cls(D, gen)

    @cached_property
    def members(self) -> frozenset[int]:
        return self.base.downset(self.generator)

    @property
    def is_proper(self) -> bool:
        return self.generator != self.base.top

    def __contains__(self, a: int) -> bool:
        return bool(self.base.leq[a, self.generator])

    def __le__(self, other: "Ideal") -> bool:
        return self.members <= other.members

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.base is other.base and self.generator == other.generator

    def __hash__(self):
        return hash((id(self.base), self.generator))

    def __repr__(self):
        return f"Ideal(↓{self.base.labels[self.generator]})"

    @property
    def name(self) -> str:
        return self.base.labels[self.generator]


def principal_ideal(D: FiniteLattice, a: int) -> Ideal:
    require_distributive(D)
    return Ideal(D, a)


def all_ideals(D: FiniteLattice) -> list[Ideal]:
    return [Ideal(D, a) for a in range(D.size)]


def _is_prime_set(D: FiniteLattice, members: frozenset[int]) -> bool:
    if D.top in members:
        return False
    meet = D.meet
    return all(a in members or b in members
               for a in range(D.size) for b in range(D.size) if meet[a, b] in members)


@dataclass(frozen=True, eq=False)
class PrimeSpectrum:
    primes: tuple[Ideal, ...]
    specialization: tuple[tuple[int, int], ...]
    maximal_flags: tuple[bool, ...]

    @property
    def maximal(self) -> tuple[Ideal, ...]:
        return tuple(p for p, m in zip(self.primes, self.maximal_flags) if m)


def prime_ideals(D: FiniteLattice) -> PrimeSpectrum:
    """Primes are ``↓m`` for meet-irreducible ``m``; maximal ones are ``↓c`` for coatoms.

    Both shortcuts are cross-checked against the set-theoretic definitions
    of primality and maximality.
    """
    require_distributive(D)
    irr = irreducibles(D)
    primes = tuple(Ideal(D, m) for m in sorted(irr.meet_irreducibles))
    maximal = tuple(p.generator in irr.coatoms for p in primes)

    ideals = [frozenset(D.downset(a)) for a in range(D.size)]
    by_def = sorted(D.join_all(I) for I in ideals if _is_prime_set(D, I))
    proper = [I for I in ideals if D.top not in I]
    max_def = sorted(D.join_all(I) for I in proper if not any(I < J for J in proper))
    if by_def != [p.generator for p in primes]:
        raise InternalConsistencyError(f"prime ideals of {D!r} disagree with the definition")
    if max_def != [p.generator for p, m in zip(primes, maximal) if m]:
        raise InternalConsistencyError(f"maximal ideals of {D!r} disagree with the definition")

    spec = tuple((i, j) for i, p in enumerate(primes) for j, q in enumerate(primes)
                 if i != j and p.members <= q.members)
    return PrimeSpectrum(primes, spec, maximal)


def _intersection_of_maximals_above(D: FiniteLattice, members: frozenset[int],
                                    maximals: Iterable[Ideal]) -> frozenset[int]:
    result = frozenset(range(D.size))
    for M in maximals:
        if members <= M.members:
            result &= M.members
    return result


def xi_ideal(D: FiniteLattice, I: Ideal) -> Ideal:
    """ξ(I), computed three ways that must agree.

    1. ``a ∈ ξ(I)`` iff every ``b`` with ``a ∨ b = ⊤`` has some ``c ∈ I``
       with ``c ∨ b = ⊤``;
    2. the intersection of the maximal ideals containing ``I`` (all of
       ``D`` when there are none);
    3. xi on ``D`` applied to the generator.
    """
    require_distributive(D)
    join, top = D.join, D.top
    members = I.members
    by_formula = frozenset(
        a for a in range(D.size)
        if all(any(join[c, b] == top for c in members)
               for b in range(D.size) if join[a, b] == top))
    by_maximals = _intersection_of_maximals_above(D, members, prime_ideals(D).maximal)
    by_frame = D.downset(xi_operator(D)(I.generator))
    if not by_formula == by_maximals == by_frame:
        raise InternalConsistencyError(f"xi({I!r}) disagrees across its three computations")
    return Ideal.from_members(D, by_formula)


def chi_ideal(D: FiniteLattice, I: Ideal) -> Ideal:
    """χ(I): everything rather below some member of ``I``."""
    rel = preceq_relation(D).rel
    members = set()
    for c in I.members:
        members.update(np.flatnonzero(rel[:, c]).tolist())
    return Ideal.from_members(D, members)


def ideal_operator(D: FiniteLattice, which: str) -> Operator:
    """xi or chi on ideals, transported to ``D`` through generators."""
    fn = {"xi": xi_ideal, "chi": chi_ideal}[which]
    return Operator(D, tuple(fn(D, Ideal(D, a)).generator for a in range(D.size)))


# --- congruences -----------------------------------------------------------------

def _canonical_labels(class_of: Iterable[int]) -> tuple[int, ...]:
    relabel: dict[int, int] = {}
    return tuple(relabel.setdefault(c, len(relabel)) for c in class_of)


@dataclass(frozen=True, eq=False)
class Congruence:
    """A partition of ``base``'s elements compatible with meet and join.

    ``class_of`` is stored as a restricted-growth string so equal partitions
    compare equal.
    """

    base: FiniteLattice
    class_of: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "class_of", _canonical_labels(self.class_of))
        if len(self.class_of) != self.base.size:
            raise ValueError("class map does not cover the lattice")

    @classmethod
    def identity(cls, D: FiniteLattice) -> "Congruence":
        return cls(D, tuple(range(D.size)))

    @classmethod
    def total(cls, D: FiniteLattice) -> "Congruence":
        return cls(D, (0,) * D.size)

    @property
    def num_classes(self) -> int:
        return max(self.class_of) + 1

    @cached_property
    def classes(self) -> tuple[frozenset[int], ...]:
        out = [set() for _ in range(self.num_classes)]
        for a, k in enumerate(self.class_of):
            out[k].add(a)
        return tuple(frozenset(c) for c in out)

    def related(self, a: int, b: int) -> bool:
        return self.class_of[a] == self.class_of[b]

    def is_compatible(self) -> bool:
        cls = np.asarray(self.class_of)
        D = self.base
        same = cls[:, None] == cls[None, :]
        for tab in (D.meet, D.join):
            img = cls[tab]  # img[a, b] = class of a∘b
            # a ≡ a' implies a∘b ≡ a'∘b, for every b; enough by symmetry and transitivity
            for a, a2 in np.argwhere(same):
                if a < a2 and not np.array_equal(img[a], img[a2]):
                    return False
        return True

    def refines(self, other: "Congruence") -> bool:
        """Every class of ``self`` lies inside a class of ``other``."""
        return all(len({other.class_of[a] for a in c}) == 1 for c in self.classes)

    def __eq__(self, other):
        if not isinstance(other, Congruence):
            return NotImplemented
        return self.base is other.base and self.class_of == other.class_of

    def __hash__(self):
        return hash((id(self.base), self.class_of))

    def to_json(self) -> list[list[str]]:
        labels = self.base.labels
        return [[labels[a] for a in sorted(c)] for c in sorted(self.classes, key=min)]


def heitmann_congruence(D: FiniteLattice) -> Congruence:
    """``a ≡ b`` iff ``a ⪯ b`` and ``b ⪯ a``."""
    rel = preceq_relation(D).rel
    sym = rel & rel.T
    cong = Congruence(D, tuple(int(np.argmax(sym[a])) for a in range(D.size)))
    if not cong.is_compatible():
        raise InternalConsistencyError(f"symmetrised preorder on {D!r} is not a congruence")
    return cong


@dataclass(frozen=True, eq=False)
class QuotientLattice:
    lattice: FiniteLattice
    projection: tuple[int, ...]


def quotient(D: FiniteLattice, cong: Congruence) -> QuotientLattice:
    if cong.base is not D:
        raise ValueError("congruence belongs to another lattice")
    if not cong.is_compatible():
        raise PreconditionError("partition is not a congruence")
    reps = [min(c) for c in cong.classes]
    cls = np.asarray(cong.class_of)
    meet = cls[D.meet[np.ix_(reps, reps)]]
    join = cls[D.join[np.ix_(reps, reps)]]
    k = len(reps)
    leq = join == np.arange(k)[None, :]  # [x] <= [y] iff [x ∨ y] = [y]
    labels = tuple("{" + ",".join(D.labels[a] for a in sorted(c)) + "}" for c in cong.classes)
    Q = FiniteLattice(FinitePoset(leq, labels), meet, join,
                      int(cls[D.bot]), int(cls[D.top]))
    proj = tuple(int(c) for c in cls)
    n = D.size
    for a in range(n):
        for b in range(n):
            if Q.meet[proj[a], proj[b]] != proj[D.meet[a, b]] or \
                    Q.join[proj[a], proj[b]] != proj[D.join[a, b]]:
                raise InternalConsistencyError("projection is not a lattice homomorphism")
    return QuotientLattice(Q, proj)


def _restricted_growth_strings(n: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    s = [0] * n

    def rec(i: int, m: int):
        if i == n:
            yield tuple(s)
            return
        for v in range(m + 2):
            s[i] = v
            yield from rec(i + 1, max(m, v))

    yield from rec(1, 0)


def enumerate_congruences(D: FiniteLattice, cap: int = CONGRUENCE_CAP) -> list[Congruence]:
    """All congruences of ``D``, by filtering every set partition."""
    if D.size > cap:
        raise CapExceededError(f"congruence enumeration on {D.size} elements exceeds cap {cap}")
    out = []
    for rgs in _restricted_growth_strings(D.size):
        c = Congruence(D, rgs)
        if c.is_compatible():
            out.append(c)
    return out


def check_top_lemma(D: FiniteLattice, cap: int = CONGRUENCE_CAP) -> bool:
    """≡ has a singleton top class and every congruence with that property refines it."""
    heit = heitmann_congruence(D)
    top_class = heit.classes[heit.class_of[D.top]]
    if top_class != {D.top}:
        return False
    for c in enumerate_congruences(D, cap):
        if c.classes[c.class_of[D.top]] == {D.top} and not c.refines(heit):
            return False
    return True


# --- Jacobson ------------------------------------------------------------------

def jacobson_conditions(D: FiniteLattice) -> dict[str, bool]:
    """The four equivalent Jacobson conditions, each evaluated on its own terms."""
    require_distributive(D)
    spec = prime_ideals(D)
    maximals = spec.maximal

    def is_meet_of_maximals(I: frozenset[int]) -> bool:
        return _intersection_of_maximals_above(D, I, maximals) == I

    return {
        "primes_are_meets_of_maximals": all(is_meet_of_maximals(P.members) for P in spec.primes),
        "ideals_are_meets_of_maximals": all(is_meet_of_maximals(I.members) for I in all_ideals(D)),
        "ideal_frame_subfit": is_subfit(D),
        "spectrum_jacobson_space": is_jacobson_space(spec_space(D)),
    }


def is_jacobson(D: FiniteLattice) -> bool:
    conds = jacobson_conditions(D)
    verdicts = set(conds.values())
    if len(verdicts) != 1:
        raise InternalConsistencyError(f"Jacobson conditions disagree on {D!r}: {conds}")
    return verdicts.pop()


# --- spectral subspaces via congruences -----------------------------------------

def _stable(I: Ideal, cong: Congruence) -> bool:
    members = I.members
    return all(cong.classes[cong.class_of[a]] <= members for a in members)


def stable_primes(D: FiniteLattice, cong: Congruence) -> tuple[Ideal, ...]:
    """Primes closed under ``cong``; cross-checked against preimages of the quotient's primes."""
    primes = prime_ideals(D).primes
    stable = tuple(P for P in primes if _stable(P, cong))
    q = quotient(D, cong)
    proj = q.projection
    preimages = set()
    for Pq in prime_ideals(q.lattice).primes:
        pre = frozenset(a for a in range(D.size) if proj[a] in Pq.members)
        preimages.add(Ideal.from_members(D, pre).generator)
    if preimages != {P.generator for P in stable}:
        raise InternalConsistencyError("stable primes differ from preimages of quotient primes")
    return stable


def chi_fixed_primes(D: FiniteLattice) -> tuple[Ideal, ...]:
    return tuple(P for P in prime_ideals(D).primes if chi_ideal(D, P) == P)


def check_chi_characterisation(D: FiniteLattice, cap: int = CONGRUENCE_CAP) -> bool:
    """The χ-fixed primes form the least congruence-image subspace containing all maximals."""
    heit = heitmann_congruence(D)
    s_chi = {P.generator for P in stable_primes(D, heit)}
    if s_chi != {P.generator for P in chi_fixed_primes(D)}:
        raise InternalConsistencyError("χ-fixed primes differ from ≡-stable primes")
    maximals = {P.generator for P in prime_ideals(D).maximal}
    if not maximals <= s_chi:
        return False
    for c in enumerate_congruences(D, cap):
        s_c = {P.generator for P in stable_primes(D, c)}
        if maximals <= s_c and not s_chi <= s_c:
            return False
    return True


def check_chi_equals_xi(D: FiniteLattice) -> bool:
    """Whether χ = ξ, asserting it matches whether ``D/≡`` is Jacobson."""
    chi_eq_xi = ideal_operator(D, "chi") == ideal_operator(D, "xi")
    jac = is_jacobson(quotient(D, heitmann_congruence(D)).lattice)
    if chi_eq_xi != jac:
        raise InternalConsistencyError(
            f"on {D!r}: chi == xi is {chi_eq_xi} but D/≡ Jacobson is {jac}")
    return chi_eq_xi


def spectrum_report(D: FiniteLattice, cap: int = CONGRUENCE_CAP) -> dict:
    """JSON-ready summary of the spectrum, ξ/χ tables, ≡, the quotient and verdicts.

    Verdicts whose oracle needs congruence enumeration are reported as
    ``{"skipped": reason}`` when ``D`` exceeds ``cap``.
    """
    spec = prime_ideals(D)
    labels = D.labels
    heit = heitmann_congruence(D)
    q = quotient(D, heit)
    doc = lattice_to_document(q.lattice)
    xi_t = ideal_operator(D, "xi")
    chi_t = ideal_operator(D, "chi")
    return {
        "primes": [P.name for P in spec.primes],
        "specialization": sorted([spec.primes[i].name, spec.primes[j].name]
                                 for i, j in spec.specialization),
        "maximal": {P.name: flag for P, flag in zip(spec.primes, spec.maximal_flags)},
        "xi": {labels[a]: labels[v] for a, v in enumerate(xi_t.table)},
        "chi": {labels[a]: labels[v] for a, v in enumerate(chi_t.table)},
        "congruence_classes": heit.to_json(),
        "quotient": {"elements": list(doc.elements), "covers": [list(c) for c in doc.covers]},
        "verdicts": {
            "subfit": is_subfit(D),
            "jacobson": is_jacobson(D),
            "chi_equals_xi": check_chi_equals_xi(D),
            "top_lemma": _capped(check_top_lemma, D, cap),
            "chi_characterisation": _capped(check_chi_characterisation, D, cap),
        },
    }


def _capped(check, D: FiniteLattice, cap: int):
    if D.size > cap:
        return {"skipped": f"|D| = {D.size} exceeds congruence cap {cap}"}
    return check(D, cap)
