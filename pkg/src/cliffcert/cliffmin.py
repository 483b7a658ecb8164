"""Clifford index of hypersurface sections ``C_n in |nC|`` by exhaustive lattice search.

By Green-Lazarsfeld, ``Cliff(C_n)`` is computed by the restriction of a line
bundle ``O_S(F)`` and equals ``F.C_n - F^2 - 2``. For the rank-2 family we write
``F = sC + tE`` and minimise

    f(s, t) = (n - 2s)(2a - 2p - 1) t - 4a s^2 + 4a n s - 2

over integer points satisfying

    (i)   s (2a s + (2a - 2p - 1) t) >= 0          F^2 >= 0
    (ii)  4a s + (2a - 2p - 1)(t - s) > 2          F.D > 2
    (iii) 4a s + (2a - 2p - 1) t <= 2a n           F.C_n <= g(C_n) - 1

The result is capped by the generic value ``floor((g(C_n) - 1)/2)``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import CeilingExceeded, InvariantViolation, ParameterError
from .exact import ceil_frac, floor_frac
from .lattice import (
    DivisorClass,
    FarkasOrtega,
    Generic,
    PicardLattice,
    SurfaceFamily,
    intersect,
    self_intersection,
)

__all__ = [
    "ConstraintRegion",
    "Interval",
    "CliffordSearchResult",
    "f_objective",
    "constraints_satisfied",
    "t_bounds",
    "minimize_cliff",
    "minimize_cliff_rank1",
    "scan_negative_s",
    "generic_cap",
    "closed_form_cliff",
    "hyperplane_cliff",
    "cliff_of_class",
    "MAX_LATTICE_POINTS",
]

# Per-search ceiling on enumerated lattice points.
MAX_LATTICE_POINTS = int(os.environ.get("CLIFFCERT_MAX_POINTS", 10**6))


@dataclass(frozen=True)
class ConstraintRegion:
    p: int
    a: int
    n: int

    def __post_init__(self) -> None:
        FarkasOrtega(self.p, self.a)  # validates p, a
        if self.n < 1:
            raise ParameterError(f"n >= 1 required, got n = {self.n}")

    @classmethod
    def of(cls, family: FarkasOrtega, n: int) -> "ConstraintRegion":
        return cls(family.p, family.a, n)

    @property
    def c_e(self) -> int:
        return 2 * self.a - 2 * self.p - 1

    @property
    def genus(self) -> int:
        return 2 * self.a * self.n**2 + 1


@dataclass(frozen=True)
class Interval:
    """A real interval with exact endpoints, each optionally open."""

    lo: Fraction
    hi: Fraction
    lo_open: bool = False
    hi_open: bool = False

    def integers(self) -> range:
        first = floor_frac(self.lo) + 1 if self.lo_open else ceil_frac(self.lo)
        last = ceil_frac(self.hi) - 1 if self.hi_open else floor_frac(self.hi)
        return range(first, last + 1)

    def is_empty(self) -> bool:
        """Emptiness over the reals."""
        if self.lo_open or self.hi_open:
            return self.lo >= self.hi
        return self.lo > self.hi

    def __str__(self) -> str:
        return (
            ("(" if self.lo_open else "[")
            + f"{self.lo}, {self.hi}"
            + (")" if self.hi_open else "]")
        )


@dataclass
class CliffordSearchResult:
    lattice_min: Optional[int]
    argmin: list[tuple[int, ...]]
    feasible_count: int
    generic_cap: int
    reported_cliff: int
    source: str  # "lattice" or "generic"

    def to_json(self) -> dict:
        return {
            "lattice_min": self.lattice_min,
            "argmin": [list(pt) for pt in self.argmin],
            "feasible_count": self.feasible_count,
            "generic_cap": self.generic_cap,
            "reported_cliff": self.reported_cliff,
            "source": self.source,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CliffordSearchResult":
        return cls(
            lattice_min=obj["lattice_min"],
            argmin=[tuple(pt) for pt in obj["argmin"]],
            feasible_count=obj["feasible_count"],
            generic_cap=obj["generic_cap"],
            reported_cliff=obj["reported_cliff"],
            source=obj["source"],
        )


def f_objective(region: ConstraintRegion, s: int, t: int) -> int:
    a, n = region.a, region.n
    return (n - 2 * s) * region.c_e * t - 4 * a * s * s + 4 * a * n * s - 2


def constraints_satisfied(region: ConstraintRegion, s: int, t: int) -> tuple[bool, bool, bool]:
    a, n, c = region.a, region.n, region.c_e
    return (
        s * (2 * a * s + c * t) >= 0,
        4 * a * s + c * (t - s) > 2,
        4 * a * s + c * t <= 2 * a * n,
    )


def t_bounds(region: ConstraintRegion, s: int) -> Interval:
    """Exact real interval for ``t`` at fixed ``s``.

    * ``s >= 1``: ``[-2as/c, 2a(n - 2s)/c]`` from (i) and (iii).
    * ``s == 0``: ``(2/c, 2an/c]`` from (ii) and (iii).
    * ``s < 0``: ``((2 + cs - 4as)/c, -2as/c]`` from (ii) and (i); always empty.

    Here ``c = 2a - 2p - 1``. Integer points must still be checked against all
    three constraints.
    """
    a, n, c = region.a, region.n, region.c_e
    if s >= 1:
        return Interval(Fraction(-2 * a * s, c), Fraction(2 * a * (n - 2 * s), c))
    if s == 0:
        return Interval(Fraction(2, c), Fraction(2 * a * n, c), lo_open=True)
    return Interval(
        Fraction(2 + c * s - 4 * a * s, c), Fraction(-2 * a * s, c), lo_open=True
    )


def generic_cap(genus: int) -> int:
    """Clifford index of a general curve of the given genus, ``floor((g - 1)/2)``."""
    return (genus - 1) // 2


def _finish(
    lattice_min: Optional[int], argmin: list, feasible: int, cap: int
) -> CliffordSearchResult:
    if lattice_min is not None and lattice_min < cap:
        reported, source = lattice_min, "lattice"
    else:
        # ties go to the generic value
        reported, source = cap, "generic"
    return CliffordSearchResult(lattice_min, sorted(argmin), feasible, cap, reported, source)


def minimize_cliff(region: ConstraintRegion) -> CliffordSearchResult:
    """Minimise ``f`` over the feasible integer points of ``region``.

    ``s`` is scanned over ``[-n - 2, n + 2]``; a feasible point with ``s``
    outside ``[0, n]`` raises :class:`InvariantViolation`.
    """
    n = region.n
    windows = [(s, t_bounds(region, s).integers()) for s in range(-n - 2, n + 3)]
    total = sum(len(ts) for _, ts in windows)
    if total > MAX_LATTICE_POINTS:
        raise CeilingExceeded(
            f"search would enumerate {total} points (ceiling {MAX_LATTICE_POINTS})"
        )

    best: Optional[int] = None
    argmin: list[tuple[int, int]] = []
    feasible = 0
    for s, ts in windows:
        for t in ts:
            if not all(constraints_satisfied(region, s, t)):
                continue
            if not 0 <= s <= n:
                raise InvariantViolation(f"feasible point (s, t) = ({s}, {t}) outside 0 <= s <= n")
            feasible += 1
            v = f_objective(region, s, t)
            if best is None or v < best:
                best, argmin = v, [(s, t)]
            elif v == best:
                argmin.append((s, t))
    return _finish(best, argmin, feasible, generic_cap(region.genus))


def minimize_cliff_rank1(g: int, n: int) -> CliffordSearchResult:
    """Same search for ``Pic(S) = <C>``: classes ``F = sC`` with ``1 <= s`` and ``2s <= n``.

    The objective is ``F.C_n - F^2 - 2 = (2g - 2) s (n - s) - 2``.
    """
    Generic(g)
    if n < 1:
        raise ParameterError(f"n >= 1 required, got n = {n}")
    c2 = 2 * g - 2
    genus = n * n * (g - 1) + 1
    best: Optional[int] = None
    argmin: list[tuple[int]] = []
    feasible = 0
    for s in range(-n - 2, n + 3):
        ok = s * s * c2 >= 0 and s >= 1 and s * n * c2 <= genus - 1
        if not ok:
            continue
        if not 1 <= s <= n:
            raise InvariantViolation(f"feasible s = {s} outside 1 <= s <= n")
        feasible += 1
        v = c2 * s * (n - s) - 2
        if best is None or v < best:
            best, argmin = v, [(s,)]
        elif v == best:
            argmin.append((s,))
    return _finish(best, argmin, feasible, generic_cap(genus))


def scan_negative_s(region: ConstraintRegion) -> list[tuple[int, int]]:
    """Brute-force search for integer ``(s, t)`` with ``s < 0`` meeting (i) and (ii).

    Scans ``s in [-n - 2, -1]`` and ``|t| <= 2a(n + 2)``; the box contains every
    integer satisfying (i) there, since ``c >= 1``. Returns the offending points
    (expected: none).
    """
    a, n = region.a, region.n
    radius = 2 * a * (n + 2)
    hits = []
    for s in range(-n - 2, 0):
        for t in range(-radius, radius + 1):
            ok_i, ok_ii, _ = constraints_satisfied(region, s, t)
            if ok_i and ok_ii:
                hits.append((s, t))
    return hits


def closed_form_cliff(family: SurfaceFamily, n: int) -> int:
    """``Cliff(C_n)`` in closed form, valid for ``n >= 2``.

    ``n(2a - 2p - 1) - 2`` for the rank-2 family, ``2(n - 1)(g - 1) - 2`` for
    the rank-1 family. Use :func:`hyperplane_cliff` for ``n = 1``.
    """
    if n < 2:
        raise ParameterError(f"closed form needs n >= 2, got n = {n}")
    if isinstance(family, FarkasOrtega):
        return n * family.c_e - 2
    if isinstance(family, Generic):
        return 2 * (n - 1) * (family.g - 1) - 2
    raise ParameterError(f"unsupported surface family {family!r}")


def hyperplane_cliff(family: FarkasOrtega) -> int:
    """``Cliff(C) = a`` for the hyperplane section itself (``n = 1``)."""
    if not isinstance(family, FarkasOrtega):
        raise ParameterError("hyperplane Clifford index is only recorded for the rank-2 family")
    return family.a


def cliff_of_class(L: PicardLattice, F: DivisorClass, curve: DivisorClass) -> int:
    """Clifford index ``F.X - F^2 - 2`` of ``O_X(F)`` for ``X`` in the class ``curve``."""
    return intersect(L, F, curve) - self_intersection(L, F) - 2
