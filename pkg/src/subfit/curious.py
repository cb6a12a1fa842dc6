"""Eventually-constant opens of the space ``ω × ω⁺``.

Points are ``(x, y)`` with ``x ∈ ω`` and ``y ∈ ω ∪ {*}``.  The topology is
generated by ``U × {y}`` (``U`` a downset of ω, ``y ∈ ω``) and by
``ω × V ∪ U × {*}`` (``V`` cofinite).  Every open meets each row in a
downset ``[0, h)`` of ω, so an open is a row-height function ``h`` with
``h = INF`` meaning the full row.  A :class:`RowProfile` stores the heights
of finitely many exceptional rows, a ``tail`` height for every other row of
ω, and the height of the ``*`` row.  A profile is open exactly when a
positive star height comes with ``tail == INF``.

Closures of points are final segments of their own row, so an open ``U``
contains the closure of one of its points exactly on rows where ``U`` has
height ``INF``.  Hence ``U ⪯ W`` iff every full row of ``U`` is a full row
of ``W``.  There are three kinds of rows to check: the exception rows of
either profile, one generic tail row, and the star row.
"""
from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from typing import Mapping, Union

Height = Union[int, float]
INF: float = math.inf


def _check_height(h) -> Height:
    if h == INF:
        return INF
    if isinstance(h, bool) or not isinstance(h, int) or h < 0:
        raise ValueError(f"height must be a nonnegative int or INF, got {h!r}")
    return h


@dataclass(frozen=True)
class RowProfile:
    exceptions: tuple[tuple[int, Height], ...] = ()
    tail: Height = 0
    star: Height = 0
    _lookup: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        tail = _check_height(self.tail)
        star = _check_height(self.star)
        exc = {}
        for row, h in dict(self.exceptions).items():
            if isinstance(row, bool) or not isinstance(row, int) or row < 0:
                raise ValueError(f"row index must be a nonnegative int, got {row!r}")
            h = _check_height(h)
            if h != tail:
                exc[row] = h
        if star > 0 and tail != INF:
            raise ValueError("not open: a point of the star row forces cofinitely many full rows")
        object.__setattr__(self, "tail", tail)
        object.__setattr__(self, "star", star)
        object.__setattr__(self, "exceptions", tuple(sorted(exc.items())))
        object.__setattr__(self, "_lookup", exc)

    @classmethod
    def make(cls, exceptions: Mapping[int, Height] | None = None, tail: Height = 0,
             star: Height = 0) -> "RowProfile":
        return cls(tuple((exceptions or {}).items()), tail, star)

    def height(self, row: int | str) -> Height:
        if row == "*":
            return self.star
        return self._lookup.get(row, self.tail)

    def to_json(self) -> str:
        def enc(h):
            return "inf" if h == INF else h
        # keys emitted in numeric order, not string order
        exc = ", ".join(f'"{r}": {json.dumps(enc(h))}' for r, h in self.exceptions)
        return ('{"exceptions": {' + exc + '}, "tail": ' + json.dumps(enc(self.tail))
                + ', "star": ' + json.dumps(enc(self.star)) + "}")

    @classmethod
    def from_json(cls, text: str) -> "RowProfile":
        raw = json.loads(text)

        def dec(h):
            return INF if h == "inf" else h
        return cls.make({int(k): dec(v) for k, v in raw["exceptions"].items()},
                        dec(raw["tail"]), dec(raw["star"]))


BOTTOM = RowProfile()                       # the empty open
OMEGA_X_OMEGA = RowProfile(tail=INF)        # ω × ω: every ω row full, star row empty
TOP = RowProfile(tail=INF, star=INF)        # ω × ω⁺


def basic_row_open(row: int, height: Height) -> RowProfile:
    """``[0, height) × {row}``."""
    return RowProfile.make({row: height})


def basic_star_open(star: Height, missing_rows=()) -> RowProfile:
    """``ω × V ∪ [0, star) × {*}`` with ``V`` the complement of ``missing_rows``."""
    return RowProfile.make({r: 0 for r in missing_rows}, INF, star)


def _rows(*ps: RowProfile) -> list[int]:
    """Representative ω rows: every exception key, plus one row exceptional in none."""
    keys = sorted({r for p in ps for r, _ in p.exceptions})
    fresh = (keys[-1] + 1) if keys else 0
    return keys + [fresh]


def _rowwise(op, p: RowProfile, q: RowProfile) -> RowProfile:
    rows = _rows(p, q)
    return RowProfile.make({r: op(p.height(r), q.height(r)) for r in rows[:-1]},
                           op(p.tail, q.tail), op(p.star, q.star))


def profile_join(p: RowProfile, q: RowProfile) -> RowProfile:
    return _rowwise(max, p, q)


def profile_meet(p: RowProfile, q: RowProfile) -> RowProfile:
    return _rowwise(min, p, q)


def profile_leq(p: RowProfile, q: RowProfile) -> bool:
    return all(p.height(r) <= q.height(r) for r in _rows(p, q) + ["*"])


def profile_preceq(U: RowProfile, W: RowProfile) -> bool:
    """``U ⪯ W``: every full row of ``U`` (including ``*``) is full in ``W``."""
    return all(U.height(r) != INF or W.height(r) == INF for r in _rows(U, W) + ["*"])


def profile_xi(W: RowProfile) -> RowProfile:
    """Join of every open rather below ``W``.

    Finite rows of ``W`` are reached by ever taller finite rows, so all ω
    rows become full.  The star row can grow only if ``W`` already has
    cofinitely many full rows, in which case the result is the whole space.
    """
    if W.tail == INF:
        return TOP
    return RowProfile(tail=INF, star=W.star)


def xi_approximant(W: RowProfile, rows: int, height: int) -> RowProfile:
    """A member of the family joined by ``profile_xi``, tall on the first ``rows`` rows.

    Satisfies ``profile_preceq(result, W)``; as ``rows`` and ``height`` grow
    these approach ``profile_xi(W)`` row by row.
    """
    def grow(h):
        return INF if h == INF else height

    keys = set(range(rows)) | {r for r, _ in W.exceptions}
    tail = grow(W.tail)
    star = INF if W.star == INF else (height if tail == INF else 0)
    return RowProfile.make({r: grow(W.height(r)) for r in keys}, tail, star)


# --- randomized law checks --------------------------------------------------------

def random_profile(rng: random.Random, max_row: int = 6, max_height: int = 5) -> RowProfile:
    heights = list(range(max_height + 1)) + [INF]
    tail = rng.choice(heights)
    star = rng.choice(heights) if tail == INF else 0
    exc = {r: rng.choice(heights) for r in range(max_row) if rng.random() < 0.5}
    return RowProfile.make(exc, tail, star)


@dataclass
class CuriousReport:
    xi_bottom: RowProfile
    xi2_bottom: RowProfile
    is_nucleus: bool
    samples: int
    checks: dict[str, int]
    failures: list[str]

    @property
    def anchors_ok(self) -> bool:
        return (self.xi_bottom.to_json() == OMEGA_X_OMEGA.to_json()
                and self.xi2_bottom.to_json() == TOP.to_json())

    def to_dict(self) -> dict:
        return {
            "xi_bottom": json.loads(self.xi_bottom.to_json()),
            "xi2_bottom": json.loads(self.xi2_bottom.to_json()),
            "is_nucleus": self.is_nucleus,
            "anchors_ok": self.anchors_ok,
            "samples": self.samples,
            "checks": self.checks,
            "failures": self.failures,
        }


def demonstrate_not_nucleus(samples: int = 1000, seed: int = 0) -> CuriousReport:
    """Compute ``ξ(∅)`` and ``ξ²(∅)`` and check the pre-nucleus laws on random opens."""
    x1 = profile_xi(BOTTOM)
    x2 = profile_xi(x1)
    rng = random.Random(seed)
    checks = {"inflationary": 0, "monotone": 0, "meet_preserving": 0,
              "preceq_refines_leq": 0, "xi_dominates": 0}
    failures = []

    def record(name, ok, *ps):
        checks[name] += 1
        if not ok:
            failures.append(f"{name}: " + " | ".join(p.to_json() for p in ps))

    for _ in range(samples):
        p, q = random_profile(rng), random_profile(rng)
        xp, xq = profile_xi(p), profile_xi(q)
        record("inflationary", profile_leq(p, xp), p)
        if profile_leq(p, q):
            record("monotone", profile_leq(xp, xq), p, q)
        else:
            m = profile_meet(p, q)
            record("monotone", profile_leq(profile_xi(m), xp), m, p)
        record("meet_preserving",
               profile_xi(profile_meet(p, q)) == profile_meet(xp, xq), p, q)
        if profile_leq(p, q):
            record("preceq_refines_leq", profile_preceq(p, q), p, q)
        else:
            record("preceq_refines_leq", profile_preceq(profile_meet(p, q), q), p, q)
        if profile_preceq(p, q):
            record("xi_dominates", profile_leq(p, xq), p, q)
        else:
            a = xi_approximant(q, 8, 8)
            record("xi_dominates", profile_preceq(a, q) and profile_leq(a, xq), a, q)

    return CuriousReport(x1, x2, is_nucleus=(x2 == x1), samples=samples,
                         checks=checks, failures=failures)
