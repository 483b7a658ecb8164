"""Mercat-conjecture bounds and counterexample certificates.

A certificate is an ordered list of exact checks. Each check has a ``kind``:

``hypothesis``
    an assumption of the theorem being instantiated (e.g. ``a >= 3p + 2``);
``inequality`` / ``identity``
    a derived numerical statement the argument relies on;
``assumption``
    a cohomological fact that cannot be decided by lattice arithmetic. These
    are recorded with ``pass = True`` for the audit trail only.

The verdict is ``hypotheses_not_met`` if a hypothesis fails,
``inequality_failed`` if only derived checks fail, and
``certified_counterexample`` otherwise. All checks are always evaluated.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .cliffmin import (
    ConstraintRegion,
    closed_form_cliff,
    minimize_cliff,
    minimize_cliff_rank1,
)
from .errors import ParameterError
from .exact import Rational, frac_from_json, frac_str, frac_to_json
from .lattice import (
    FarkasOrtega,
    Generic,
    SurfaceFamily,
    build_lattice,
    family_from_dict,
    genus_of,
    intersect,
    rr_chi,
)
from .lmbundle import pencil_degree, restricted_bundle

__all__ = [
    "Check",
    "MercatCertificate",
    "CERTIFIED",
    "HYPOTHESES_NOT_MET",
    "INEQUALITY_FAILED",
    "mercat_bound",
    "contribution_check",
    "certify_rank2_picard2",
    "certify_rank1",
    "certify",
    "gonality_rank2",
    "gonality_condition_fails",
]

CERTIFIED = "certified_counterexample"
HYPOTHESES_NOT_MET = "hypotheses_not_met"
INEQUALITY_FAILED = "inequality_failed"

_RELATIONS = {
    "<": operator.lt,
    "<=": operator.le,
    ">": operator.gt,
    ">=": operator.ge,
    "=": operator.eq,
}


@dataclass(frozen=True)
class Check:
    name: str
    lhs: Fraction
    rhs: Fraction
    relation: str
    passed: bool
    anchor: str
    kind: str = "inequality"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "lhs": frac_to_json(self.lhs),
            "relation": self.relation,
            "rhs": frac_to_json(self.rhs),
            "pass": self.passed,
            "anchor": self.anchor,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Check":
        return cls(
            name=obj["name"],
            lhs=frac_from_json(obj["lhs"]),
            rhs=frac_from_json(obj["rhs"]),
            relation=obj["relation"],
            passed=bool(obj["pass"]),
            anchor=obj["anchor"],
            kind=obj.get("kind", "inequality"),
        )


def _check(name: str, lhs: Rational, rel: str, rhs: Rational, anchor: str, kind: str = "inequality") -> Check:
    lhs, rhs = Fraction(lhs), Fraction(rhs)
    if rel == "=" and kind == "inequality":
        kind = "identity"
    return Check(name, lhs, rhs, rel, bool(_RELATIONS[rel](lhs, rhs)), anchor, kind)


def _assumption(name: str, anchor: str) -> Check:
    # recorded vanishing h^i = 0; not computed
    return Check(name, Fraction(0), Fraction(0), "=", True, anchor, "assumption")


@dataclass
class MercatCertificate:
    family: SurfaceFamily
    n: int
    checks: list[Check]
    verdict: str
    violation_margin: Fraction
    stability: Optional[str] = None
    notes: list[str] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {
            "family": self.family.to_json(),
            "n": self.n,
            "checks": [c.to_json() for c in self.checks],
            "verdict": self.verdict,
            "violation_margin": frac_to_json(self.violation_margin),
            "stability": self.stability,
            "notes": list(self.notes),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "MercatCertificate":
        return cls(
            family=family_from_dict(obj["family"]),
            n=obj["n"],
            checks=[Check.from_json(c) for c in obj["checks"]],
            verdict=obj["verdict"],
            violation_margin=frac_from_json(obj["violation_margin"]),
            stability=obj.get("stability"),
            notes=list(obj.get("notes", [])),
        )

    def to_text(self) -> str:
        fam = self.family.to_json()
        params = ", ".join(f"{k}={v}" for k, v in fam.items() if k != "kind")
        head = [
            f"family: {fam['kind']} ({params}), n={self.n}",
            f"verdict: {self.verdict}",
            f"violation_margin: {frac_str(self.violation_margin)}",
            f"stability: {self.stability or '-'}",
        ]
        rows = [("check", "kind", "lhs", "rel", "rhs", "pass", "anchor")]
        for c in self.checks:
            rows.append(
                (c.name, c.kind, frac_str(c.lhs), c.relation, frac_str(c.rhs),
                 "ok" if c.passed else "FAIL", c.anchor)
            )
        widths = [max(len(r[i]) for r in rows) for i in range(6)]
        lines = []
        for r in rows:
            cells = [r[i].ljust(widths[i]) if i in (0, 1, 3, 5) else r[i].rjust(widths[i])
                     for i in range(6)]
            lines.append("  ".join(cells) + "  " + r[6])
        lines.insert(1, "-" * len(lines[0]))
        tail = [f"note: {x}" for x in self.notes]
        return "\n".join(head + [""] + lines + ([""] + tail if tail else [])) + "\n"


def _verdict(checks: list[Check]) -> str:
    if any(not c.passed for c in checks if c.kind == "hypothesis"):
        return HYPOTHESES_NOT_MET
    if any(not c.passed for c in checks):
        return INEQUALITY_FAILED
    return CERTIFIED


def mercat_bound(d: int, r: int, cliff: int) -> Fraction:
    """Conjectured upper bound ``d/2 - r(Cliff/2 - 1)`` on ``h^0`` of a rank-``r`` bundle."""
    if r < 1:
        raise ParameterError(f"rank r >= 1 required, got {r}")
    return Fraction(d, 2) - r * (Fraction(cliff, 2) - 1)


def contribution_check(d: int, h0: int, r: int, genus: int) -> tuple[bool, bool]:
    """``(d <= r(g - 1), h0 >= 2r)``: whether a rank-``r`` bundle can contribute to ``Cliff_r``."""
    return d <= r * (genus - 1), h0 >= 2 * r


def gonality_rank2(p: int, a: int, n: int) -> int:
    FarkasOrtega(p, a)
    if n < 1:
        raise ParameterError(f"n >= 1 required, got n = {n}")
    return n * (2 * a - 2 * p - 1)


def gonality_condition_fails(genus: int, k: int) -> bool:
    """True when ``genus <= 2(k-1)(k-2)``, i.e. the gonality criterion for Mercat does not apply."""
    if k < 2:
        raise ParameterError(f"gonality k >= 2 required, got {k}")
    return genus <= 2 * (k - 1) * (k - 2)


def _contribution_checks(d: int, h0: int, genus: int) -> list[Check]:
    ok_deg, ok_h0 = contribution_check(d, h0, 2, genus)
    return [
        Check("contributes_degree", Fraction(d), Fraction(2 * (genus - 1)), "<=", ok_deg,
              "d <= r(g(C_n) - 1), r = 2"),
        Check("contributes_sections", Fraction(h0), Fraction(4), ">=", ok_h0,
              "h^0(C_n, E|C_n) >= 2r, r = 2"),
    ]


def _finalize(family, n, checks, cliff, gamma, stable_when_certified, notes) -> MercatCertificate:
    verdict = _verdict(checks)
    stability = stable_when_certified if verdict == CERTIFIED else None
    return MercatCertificate(family, n, checks, verdict, Fraction(cliff) - gamma, stability, notes)


def certify_rank2_picard2(p: int, a: int, n: int, validate: bool = False) -> MercatCertificate:
    """Certificate that ``E|_{C_n}`` violates Mercat's bound on ``C_n in |nC|`` (rank-2 Picard).

    ``E`` is the Lazarsfeld-Mukai bundle of a ``g^1_{p+2}`` on ``D``. With
    ``validate=True`` the closed-form ``Cliff(C_n)`` is also compared with the
    exhaustive lattice search.
    """
    family = FarkasOrtega(p, a)
    if n < 2:
        raise ParameterError(f"n >= 2 required, got n = {n}")
    L = build_lattice(family)
    C, D, E = family.C, family.D, family.E
    Cn = n * C
    genus_n = genus_of(L, Cn)
    genus_D = genus_of(L, D)
    cliff = closed_form_cliff(family, n)
    rb = restricted_bundle(family, n)
    deg_A = pencil_degree(family)
    green_lhs = deg_A + intersect(L, D, Cn)
    h0_D = rr_chi(L, D)

    checks = [
        _check("a_ge_3p_plus_2", a, ">=", 3 * p + 2, "a >= 3p + 2", "hypothesis"),
        _check("E_squared_zero", intersect(L, E, E), "=", 0, "E = C - D, E^2 = 0"),
        _assumption("h1_O_E_vanishes", "h^1(S, O_S(E)) = 0"),
        _assumption("cliff_computed_by_line_bundle",
                    "Cliff(C_n) = min F.C_n - F^2 - 2 over F in Pic(S)"),
    ]
    if validate:
        res = minimize_cliff(ConstraintRegion(p, a, n))
        checks.append(_check("cliff_oracle_match", res.reported_cliff, "=", cliff,
                             "exhaustive min f(s,t) = n(2a - 2p - 1) - 2"))
    checks += [
        _check("slope", rb.slope, "=", Fraction(n * (2 * a + 2 * p + 1), 2),
               "mu(E|C_n) = n(2a + 2p + 1)/2"),
        _check("destabilizing_quotient_bound", rb.slope - 2, "<", cliff,
               "Cliff(O_C_n(D - B)) <= mu - 2 < n(2a - 2p - 1) - 2"),
        _check("green_degree", green_lhs, ">=", 4 * genus_D + 2,
               "deg(A) + deg(O_D(C_n)) >= 4 g(D) + 2, g(D) = 2p + 2"),
        _check("green_degree_worked_bound", green_lhs, ">=", 13 * p + 16,
               "(p + 2) + n(2a + 2p + 1) >= 13p + 16"),
        _assumption("h1_D_minus_nC_vanishes", "h^1(S, O_S(D - nC)) = 0 for n >= 1"),
        _assumption("h1_E_minus_nC_vanishes", "h^1(S, E(-nC)) = 0"),
        _check("h0_restriction", rb.h0, "=", p + 3, "h^0(C_n, E|C_n) = h^0(S, E) = p + 3"),
        _check("sections_lt_h0_D", rb.h0, "<", h0_D,
               "h^0(S, E) < h^0(S, O_S(D)) = 2 + D^2/2 (Riemann-Roch)"),
        _check("sections_lt_h0_D_as_stated", rb.h0, "<", 2 * p + 1,
               "h^0(S, E) = p + 3 < 2p + 1"),
        *_contribution_checks(rb.degree, rb.h0, genus_n),
        _check("gamma_closed_form", rb.gamma, "=", Fraction(n * (2 * a + 2 * p + 1), 2) - p - 1,
               "gamma(E|C_n) = n(2a + 2p + 1)/2 - p - 1"),
        _check("gamma_lt_cliff", rb.gamma, "<", cliff,
               "gamma(E|C_n) < Cliff(C_n) = n(2a - 2p - 1) - 2"),
        _check("mercat_violation", rb.h0, ">", mercat_bound(rb.degree, 2, cliff),
               "h^0(C_n, E) > d/2 - Cliff(C_n) + 2"),
    ]
    notes = [f"h0 = {rb.h0} is {rb.note}"]
    return _finalize(family, n, checks, cliff, rb.gamma, "stable", notes)


def certify_rank1(g: int, n: int, validate: bool = False) -> MercatCertificate:
    """Certificate for ``Pic(S) = <C>`` with ``E`` built from a ``g^1_k``, ``k = floor((g+3)/2)``."""
    family = Generic(g)
    if n < 2:
        raise ParameterError(f"n >= 2 required, got n = {n}")
    L = build_lattice(family)
    C = family.C
    Cn = n * C
    genus_n = genus_of(L, Cn)
    cliff = closed_form_cliff(family, n)
    rb = restricted_bundle(family, n)
    k = pencil_degree(family)

    if n >= 3:
        hyp = _check("n_ge_3_or_g_ge_9", n, ">=", 3, "n >= 3, or n = 2 and g >= 9", "hypothesis")
    else:
        hyp = _check("n_ge_3_or_g_ge_9", g, ">=", 9, "n >= 3, or n = 2 and g >= 9", "hypothesis")
    checks = [
        hyp,
        _assumption("cliff_computed_by_line_bundle",
                    "Cliff(C_n) = min F.C_n - F^2 - 2 over F in Pic(S)"),
    ]
    if validate:
        res = minimize_cliff_rank1(g, n)
        checks.append(_check("cliff_oracle_match", res.reported_cliff, "=", cliff,
                             "exhaustive min over F = sC equals 2(n - 1)(g - 1) - 2"))
    checks += [
        _check("pencil_degree", g - rb.h0 + 3, "=", (g + 3) // 2, "k = [(g + 3)/2]"),
        _check("slope", rb.slope, "=", n * (g - 1), "mu(E|C_n) = n(g - 1)"),
        _check("destabilizing_quotient_bound", rb.slope - 2, "<=", cliff,
               "mu(E|C_n) - 2 = n(g - 1) - 2 <= Cliff(C_n)"),
    ]
    if n >= 3:
        checks.append(_check("destabilizing_quotient_bound_strict", rb.slope - 2, "<", cliff,
                             "mu(E|C_n) - 2 < Cliff(C_n) for n >= 3"))
    checks += [
        _check("green_degree", k + intersect(L, C, Cn), ">=", 4 * g + 2,
               "deg(A) + deg(O_C(C_n)) >= 4g + 2"),
        _assumption("h1_E_minus_nC_vanishes", "h^1(S, E(-nC)) = 0"),
        _check("h0_restriction", rb.h0, "=", g - k + 3, "h^0(C_n, E|C_n) = h^0(S, E) = g - k + 3"),
        _check("sections_lt_h0_C", rb.h0, "<", rr_chi(L, C),
               "h^0(S, E) < h^0(C_n, O_C_n(C)) = h^0(S, O_S(C)) = g + 1"),
        *_contribution_checks(rb.degree, rb.h0, genus_n),
        _check("gamma_closed_form", rb.gamma, "=", (n - 1) * (g - 1) + k - 2,
               "gamma(E|C_n) = (n - 1)(g - 1) + k - 2"),
        _check("gamma_lt_cliff", rb.gamma, "<", cliff,
               "(n - 1)(g - 1) + k - 2 < 2(n - 1)(g - 1) - 2"),
        _check("mercat_violation", rb.h0, ">", mercat_bound(rb.degree, 2, cliff),
               "h^0(C_n, E) > d/2 - Cliff(C_n) + 2"),
    ]
    notes = [f"h0 = {rb.h0} is {rb.note}"]
    return _finalize(family, n, checks, cliff, rb.gamma,
                     "stable" if n >= 3 else "semistable", notes)


def certify(family: SurfaceFamily, n: int, validate: bool = False) -> MercatCertificate:
    if isinstance(family, FarkasOrtega):
        return certify_rank2_picard2(family.p, family.a, n, validate)
    return certify_rank1(family.g, n, validate)
