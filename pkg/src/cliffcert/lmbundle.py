"""Numerical invariants of Lazarsfeld-Mukai bundles and of their restrictions.

Only dimension identities are modelled. For a base-point-free complete
``g^r_d`` ``A`` on a curve of genus ``g`` on a K3 surface, the bundle
``E = E_{C,A}`` has rank ``r + 1``, ``c_2 = d``, and

    chi(F) = h^2(F) = 2(r + 1) + g - d - 1,     F = E^dual
    h^0(E) = r + 1 + h^0(K_C - A),              h^0(K_C - A) = g - d + r.

Section counts of restrictions ``E|_{C_n}`` are the values established under
cohomology-vanishing hypotheses that are not checked here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import ParameterError
from .exact import frac_from_json, frac_to_json
from .lattice import (
    DivisorClass,
    FarkasOrtega,
    SurfaceFamily,
    build_lattice,
    intersect,
)

__all__ = [
    "BrillNoetherInput",
    "LMInvariants",
    "RestrictedBundleData",
    "lm_invariants",
    "restricted_bundle",
    "det_class",
    "carrier_invariants",
    "pencil_degree",
    "H0_CONDITIONAL_NOTE",
]

H0_CONDITIONAL_NOTE = "conditional on cohomology-vanishing assumptions"


@dataclass(frozen=True)
class BrillNoetherInput:
    r: int
    d: int
    g: int

    def __post_init__(self) -> None:
        if self.r < 1 or self.d < 1 or self.g < 2:
            raise ParameterError(
                f"need r >= 1, d >= 1, g >= 2; got r={self.r}, d={self.d}, g={self.g}"
            )


@dataclass(frozen=True)
class LMInvariants:
    rank: int
    c2: int
    chi_F: int
    h0_E: int
    h0_K_minus_A: int
    det_class: Optional[DivisorClass] = None

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "det_class": None if self.det_class is None else list(self.det_class.coords),
            "c2": self.c2,
            "chi_F": self.chi_F,
            "h0_E": self.h0_E,
            "h0_K_minus_A": self.h0_K_minus_A,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "LMInvariants":
        det = obj.get("det_class")
        return cls(
            rank=obj["rank"],
            c2=obj["c2"],
            chi_F=obj["chi_F"],
            h0_E=obj["h0_E"],
            h0_K_minus_A=obj["h0_K_minus_A"],
            det_class=None if det is None else DivisorClass(tuple(det)),
        )


@dataclass(frozen=True)
class RestrictedBundleData:
    rank: int
    degree: int
    h0: int
    slope: Fraction
    gamma: Fraction
    note: str = H0_CONDITIONAL_NOTE

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "degree": self.degree,
            "slope": frac_to_json(self.slope),
            "h0": self.h0,
            "gamma": frac_to_json(self.gamma),
            "note": self.note,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "RestrictedBundleData":
        return cls(
            rank=obj["rank"],
            degree=obj["degree"],
            h0=obj["h0"],
            slope=frac_from_json(obj["slope"]),
            gamma=frac_from_json(obj["gamma"]),
            note=obj.get("note", H0_CONDITIONAL_NOTE),
        )


def lm_invariants(
    bn: BrillNoetherInput, det: Optional[DivisorClass] = None
) -> LMInvariants:
    """Invariants of ``E_{C,A}``; ``det`` optionally records the class of the carrying curve."""
    r, d, g = bn.r, bn.d, bn.g
    h0_k_minus_a = g - d + r
    if h0_k_minus_a < 0:
        raise ParameterError(
            f"g - d + r = {h0_k_minus_a} < 0: A nonspecial; LM section count formula degenerates"
        )
    return LMInvariants(
        rank=r + 1,
        c2=d,
        chi_F=2 * (r + 1) + g - d - 1,
        h0_E=r + 1 + h0_k_minus_a,
        h0_K_minus_A=h0_k_minus_a,
        det_class=det,
    )


def pencil_degree(family: SurfaceFamily) -> int:
    """Degree of the pencil ``A``: ``p + 2`` on ``D``, or ``k = floor((g + 3)/2)`` on ``C``."""
    if isinstance(family, FarkasOrtega):
        return family.p + 2
    return (family.g + 3) // 2


def det_class(family: SurfaceFamily) -> DivisorClass:
    """Class of the curve carrying ``A``; ``D`` for the rank-2 family, ``C`` for rank 1."""
    if isinstance(family, FarkasOrtega):
        return family.D
    return family.C


def carrier_invariants(family: SurfaceFamily) -> LMInvariants:
    """LM invariants of the pencil used in the counterexample for ``family``."""
    L = build_lattice(family)
    det = det_class(family)
    carrier_genus = 1 + intersect(L, det, det) // 2
    return lm_invariants(BrillNoetherInput(1, pencil_degree(family), carrier_genus), det)


def restricted_bundle(family: SurfaceFamily, n: int) -> RestrictedBundleData:
    """Rank, degree, sections, slope and Clifford index of ``E|_{C_n}``."""
    if n < 1:
        raise ParameterError(f"n >= 1 required, got n = {n}")
    L = build_lattice(family)
    inv = carrier_invariants(family)
    degree = intersect(L, n * family.C, inv.det_class)
    slope = Fraction(degree, inv.rank)
    h0 = inv.h0_E
    gamma = slope - Fraction(2 * h0, inv.rank) + 2
    return RestrictedBundleData(rank=inv.rank, degree=degree, h0=h0, slope=slope, gamma=gamma)
