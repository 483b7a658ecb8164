"""Integer intersection theory on rank-1 and rank-2 Picard lattices of K3 surfaces.

Two surface families are supported:

* :class:`FarkasOrtega` -- ``Pic(S) = <C, D>`` with ``C^2 = 4a``,
  ``C.D = 2a + 2p + 1`` and ``D^2 = 4p + 2``. The lattice is stored in the
  basis ``{C, E}`` where ``E = C - D`` is an elliptic class (``E^2 = 0``).
* :class:`Generic` -- ``Pic(S) = <C>`` with ``C^2 = 2g - 2``.

All arithmetic is on Python integers, so nothing can overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .errors import ParameterError

__all__ = [
    "PicardLattice",
    "DivisorClass",
    "FarkasOrtega",
    "Generic",
    "SurfaceFamily",
    "build_lattice",
    "intersect",
    "self_intersection",
    "genus_of",
    "rr_chi",
    "gram_in_basis",
    "cd_gram",
    "family_from_dict",
]


@dataclass(frozen=True)
class PicardLattice:
    """An even integral lattice of rank 1 or 2 with labelled basis."""

    rank: int
    gram: tuple[tuple[int, ...], ...]
    basis_labels: tuple[str, ...]

    def __post_init__(self) -> None:
        gram = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "basis_labels", tuple(self.basis_labels))
        if self.rank not in (1, 2):
            raise ParameterError(f"lattice rank must be 1 or 2, got {self.rank}")
        if len(gram) != self.rank or any(len(row) != self.rank for row in gram):
            raise ParameterError("gram matrix shape does not match rank")
        if len(self.basis_labels) != self.rank:
            raise ParameterError("basis label count does not match rank")
        for i in range(self.rank):
            if gram[i][i] % 2:
                raise ParameterError(f"odd diagonal entry gram[{i}][{i}] = {gram[i][i]}")
            for j in range(i):
                if gram[i][j] != gram[j][i]:
                    raise ParameterError("gram matrix is not symmetric")

    def cls(self, *coords: int) -> "DivisorClass":
        """Shorthand for a :class:`DivisorClass` checked against this lattice."""
        d = DivisorClass(coords)
        _check_dim(self, d)
        return d

    def to_json(self) -> list[list[int]]:
        return [list(row) for row in self.gram]


@dataclass(frozen=True)
class DivisorClass:
    """Integer coordinates of a divisor class in a lattice basis."""

    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        if len(other.coords) != len(self.coords):
            raise ParameterError("cannot add classes of different length")
        return DivisorClass(tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + (-1) * other

    def __rmul__(self, k: int) -> "DivisorClass":
        return DivisorClass(tuple(k * x for x in self.coords))

    def __neg__(self) -> "DivisorClass":
        return (-1) * self


@dataclass(frozen=True)
class FarkasOrtega:
    """Rank-2 family indexed by integers ``p >= 3`` and ``a >= 2p + 3``."""

    p: int
    a: int

    kind = "farkas_ortega"

    def __post_init__(self) -> None:
        if self.p < 3:
            raise ParameterError(f"p >= 3 required, got p = {self.p}")
        if self.a < 2 * self.p + 3:
            raise ParameterError(
                f"a >= 2p + 3 = {2 * self.p + 3} required, got a = {self.a}"
            )

    @property
    def c_e(self) -> int:
        """The pairing ``C.E = 2a - 2p - 1``."""
        return 2 * self.a - 2 * self.p - 1

    @property
    def C(self) -> DivisorClass:
        return DivisorClass((1, 0))

    @property
    def E(self) -> DivisorClass:
        return DivisorClass((0, 1))

    @property
    def D(self) -> DivisorClass:
        return DivisorClass((1, -1))

    def to_json(self) -> dict:
        return {"kind": self.kind, "p": self.p, "a": self.a}


@dataclass(frozen=True)
class Generic:
    """Rank-1 family ``Pic(S) = <C>`` with ``C`` of genus ``g >= 2``."""

    g: int

    kind = "generic"

    def __post_init__(self) -> None:
        if self.g < 2:
            raise ParameterError(f"g >= 2 required, got g = {self.g}")

    @property
    def C(self) -> DivisorClass:
        return DivisorClass((1,))

    def to_json(self) -> dict:
        return {"kind": self.kind, "g": self.g}


SurfaceFamily = Union[FarkasOrtega, Generic]


def family_from_dict(obj: dict) -> SurfaceFamily:
    kind = obj.get("kind")
    if kind == FarkasOrtega.kind:
        return FarkasOrtega(int(obj["p"]), int(obj["a"]))
    if kind == Generic.kind:
        return Generic(int(obj["g"]))
    raise ParameterError(f"unknown surface family kind {kind!r}")


def build_lattice(family: SurfaceFamily) -> PicardLattice:
    """Picard lattice of ``family``; the rank-2 case uses the basis ``{C, E}``."""
    if isinstance(family, FarkasOrtega):
        a, p = family.a, family.p
        c2, cd, d2 = 4 * a, 2 * a + 2 * p + 1, 4 * p + 2
        # E = C - D
        ce = c2 - cd
        e2 = c2 - 2 * cd + d2
        return PicardLattice(2, ((c2, ce), (ce, e2)), ("C", "E"))
    if isinstance(family, Generic):
        return PicardLattice(1, ((2 * family.g - 2,),), ("C",))
    raise ParameterError(f"unsupported surface family {family!r}")


def cd_gram(family: FarkasOrtega) -> tuple[tuple[int, int], tuple[int, int]]:
    """Gram matrix of the original basis ``{C, D}``, taken straight from the setup data."""
    a, p = family.a, family.p
    return ((4 * a, 2 * a + 2 * p + 1), (2 * a + 2 * p + 1, 4 * p + 2))


def _check_dim(L: PicardLattice, F: DivisorClass) -> None:
    if len(F.coords) != L.rank:
        raise ParameterError(
            f"class has {len(F.coords)} coordinates, lattice has rank {L.rank}"
        )


def intersect(L: PicardLattice, F: DivisorClass, G: DivisorClass) -> int:
    """Intersection number ``F . G``."""
    _check_dim(L, F)
    _check_dim(L, G)
    return sum(
        F.coords[i] * L.gram[i][j] * G.coords[j]
        for i in range(L.rank)
        for j in range(L.rank)
    )


def self_intersection(L: PicardLattice, F: DivisorClass) -> int:
    return intersect(L, F, F)


def gram_in_basis(L: PicardLattice, basis: Sequence[DivisorClass]) -> list[list[int]]:
    """Gram matrix of the classes in ``basis`` under the pairing of ``L``."""
    return [[intersect(L, u, v) for v in basis] for u in basis]


def genus_of(L: PicardLattice, F: DivisorClass) -> int:
    """Arithmetic genus ``1 + F^2/2`` of a curve in the class ``F`` (adjunction, ``K_S = 0``)."""
    f2 = self_intersection(L, F)
    if f2 % 2:
        raise ParameterError(f"odd self-intersection {f2}; gram data is corrupt")
    if f2 < -2:
        raise ParameterError(f"F^2 = {f2} < -2 is not the class of a curve")
    return 1 + f2 // 2


def rr_chi(L: PicardLattice, F: DivisorClass) -> int:
    """Euler characteristic ``chi(O_S(F)) = 2 + F^2/2`` by Riemann-Roch on a K3 surface."""
    f2 = self_intersection(L, F)
    if f2 % 2:
        raise ParameterError(f"odd self-intersection {f2}; gram data is corrupt")
    return 2 + f2 // 2
