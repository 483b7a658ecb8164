"""Grid runner for minimizer-vs-closed-form comparisons and certificates."""

from __future__ import annotations

import csv
import io
import itertools
import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from .cliffmin import (
    ConstraintRegion,
    closed_form_cliff,
    minimize_cliff,
    minimize_cliff_rank1,
)
from .errors import CeilingExceeded, ParameterError
from .exact import frac_from_json, frac_to_json
from .lattice import FarkasOrtega, Generic
from .mercat import CERTIFIED, HYPOTHESES_NOT_MET, INEQUALITY_FAILED, certify, gonality_rank2

log = logging.getLogger(__name__)

__all__ = [
    "SweepConfig",
    "SweepRow",
    "SweepReport",
    "run_sweep",
    "load_config",
    "parse_config",
    "CSV_COLUMNS",
    "max_tuples",
]

CSV_COLUMNS = [
    "p", "a", "g", "n", "reported_cliff", "closed_form", "oracle_match",
    "verdict", "margin_num", "margin_den", "gonality",
]

DEFAULT_MAX_TUPLES = 10**6


def max_tuples() -> int:
    return int(os.environ.get("CLIFFCERT_MAX_TUPLES", DEFAULT_MAX_TUPLES))


Range = tuple[int, int]


@dataclass(frozen=True)
class SweepConfig:
    family_kind: str
    n_range: Range
    p_range: Optional[Range] = None
    a_range: Optional[Range] = None
    g_range: Optional[Range] = None
    a_mode: str = "absolute"
    validate_with_oracle: bool = True
    output_format: str = "csv"
    workers: int = 1

    def __post_init__(self) -> None:
        if self.family_kind not in ("farkas_ortega", "generic"):
            raise ParameterError(f"unknown family_kind {self.family_kind!r}")
        if self.a_mode not in ("absolute", "offset_from_p"):
            raise ParameterError(f"unknown a_mode {self.a_mode!r}")
        if self.output_format not in ("json", "csv"):
            raise ParameterError(f"unknown output_format {self.output_format!r}")
        if self.workers < 1:
            raise ParameterError("workers must be >= 1")
        needed = ["n_range"] + (
            ["p_range", "a_range"] if self.family_kind == "farkas_ortega" else ["g_range"]
        )
        for name in needed:
            rng = getattr(self, name)
            if rng is None:
                raise ParameterError(f"{name} is required for family {self.family_kind}")
            if rng[0] > rng[1]:
                raise ParameterError(f"{name} = {list(rng)} is empty")
        if self.n_range[0] < 1:
            raise ParameterError("n_range must start at n >= 1")

    def tuples(self) -> list[tuple[int, ...]]:
        """Parameter tuples ``(p, a, n)`` or ``(g, n)``, in lexicographic order."""
        ns = range(self.n_range[0], self.n_range[1] + 1)
        if self.family_kind == "generic":
            gs = range(self.g_range[0], self.g_range[1] + 1)
            return list(itertools.product(gs, ns))
        out = []
        for p in range(self.p_range[0], self.p_range[1] + 1):
            lo, hi = self.a_range
            if self.a_mode == "offset_from_p":
                lo, hi = 2 * p + 3 + lo, 2 * p + 3 + hi
            for a in range(lo, hi + 1):
                for n in ns:
                    out.append((p, a, n))
        return out

    def count(self) -> int:
        n = self.n_range[1] - self.n_range[0] + 1
        if self.family_kind == "generic":
            return n * (self.g_range[1] - self.g_range[0] + 1)
        return n * (self.p_range[1] - self.p_range[0] + 1) * (self.a_range[1] - self.a_range[0] + 1)


@dataclass
class SweepRow:
    p: Optional[int]
    a: Optional[int]
    g: Optional[int]
    n: int
    reported_cliff: Optional[int]
    closed_form: Optional[int]
    oracle_match: Optional[bool]
    verdict: Optional[str]
    margin: Optional[Fraction]
    gonality: Optional[int]
    timing: float = 0.0

    def key(self) -> tuple:
        return tuple(-1 if v is None else v for v in (self.p, self.a, self.g, self.n))

    def to_json(self) -> dict:
        return {
            "p": self.p, "a": self.a, "g": self.g, "n": self.n,
            "reported_cliff": self.reported_cliff,
            "closed_form": self.closed_form,
            "oracle_match": self.oracle_match,
            "verdict": self.verdict,
            "margin": None if self.margin is None else frac_to_json(self.margin),
            "gonality": self.gonality,
            "timing": self.timing,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SweepRow":
        m = obj.get("margin")
        return cls(
            p=obj["p"], a=obj["a"], g=obj["g"], n=obj["n"],
            reported_cliff=obj["reported_cliff"],
            closed_form=obj["closed_form"],
            oracle_match=obj["oracle_match"],
            verdict=obj["verdict"],
            margin=None if m is None else frac_from_json(m),
            gonality=obj["gonality"],
            timing=obj.get("timing", 0.0),
        )

    def csv_record(self) -> list[str]:
        def cell(v: Any) -> str:
            if v is None:
                return ""
            if isinstance(v, bool):
                return "true" if v else "false"
            return str(v)

        m = self.margin
        return [cell(v) for v in (
            self.p, self.a, self.g, self.n, self.reported_cliff, self.closed_form,
            self.oracle_match, self.verdict,
            None if m is None else m.numerator,
            None if m is None else m.denominator,
            self.gonality,
        )]


@dataclass
class SweepReport:
    rows: list[SweepRow]
    summary: dict[str, int]

    def to_json(self) -> dict:
        return {"rows": [r.to_json() for r in self.rows], "summary": dict(self.summary)}

    @classmethod
    def from_json(cls, obj: dict) -> "SweepReport":
        return cls([SweepRow.from_json(r) for r in obj["rows"]], dict(obj["summary"]))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.rows:
            w.writerow(r.csv_record())
        return buf.getvalue()


def _run_one(job: tuple[str, tuple[int, ...], bool]) -> SweepRow:
    kind, params, validate = job
    start = time.perf_counter()
    if kind == "farkas_ortega":
        p, a, n = params
        family = FarkasOrtega(p, a)
        g = None
        gon = gonality_rank2(p, a, n)
        reported = minimize_cliff(ConstraintRegion(p, a, n)).reported_cliff if validate else None
    else:
        g, n = params
        p = a = None
        family = Generic(g)
        gon = None
        reported = minimize_cliff_rank1(g, n).reported_cliff if validate else None

    closed = verdict = margin = match = None
    if n >= 2:
        closed = closed_form_cliff(family, n)
        cert = certify(family, n)
        verdict, margin = cert.verdict, cert.violation_margin
        if validate:
            match = reported == closed
    return SweepRow(p, a, g, n, reported, closed, match, verdict, margin, gon,
                    time.perf_counter() - start)


def run_sweep(config: SweepConfig) -> SweepReport:
    total = config.count()
    if total > max_tuples():
        raise CeilingExceeded(f"sweep has {total} tuples, ceiling is {max_tuples()}")
    jobs = [(config.family_kind, t, config.validate_with_oracle) for t in config.tuples()]
    log.info("running %d tuples with %d worker(s)", len(jobs), config.workers)
    if config.workers == 1:
        rows = [_run_one(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=config.workers) as ex:
            rows = list(ex.map(_run_one, jobs, chunksize=max(1, len(jobs) // (4 * config.workers))))
    rows.sort(key=SweepRow.key)
    summary = {
        "total": len(rows),
        "oracle_mismatches": sum(1 for r in rows if r.oracle_match is False),
        "certified": sum(1 for r in rows if r.verdict == CERTIFIED),
        "hypotheses_not_met": sum(1 for r in rows if r.verdict == HYPOTHESES_NOT_MET),
        "inequality_failed": sum(1 for r in rows if r.verdict == INEQUALITY_FAILED),
    }
    return SweepReport(rows, summary)


_BOOL = {"true": True, "yes": True, "1": True, "on": True,
         "false": False, "no": False, "0": False, "off": False}


def _parse_range(value: Any, name: str) -> Range:
    if isinstance(value, bool):
        raise ParameterError(f"{name}: expected an integer range, got {value!r}")
    if isinstance(value, int):
        return (value, value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return (int(value[0]), int(value[1]))
    if isinstance(value, str):
        text = value.strip()
        for sep in ("..", ":"):
            if sep in text:
                lo, hi = text.split(sep, 1)
                return (int(lo), int(hi))
        return (int(text), int(text))
    raise ParameterError(f"{name}: cannot parse range {value!r}")


def _parse_bool(value: Any, name: str) -> bool:
    if isinstance(value, bool):
        return value
    try:
        return _BOOL[str(value).strip().lower()]
    except KeyError:
        raise ParameterError(f"{name}: expected a boolean, got {value!r}") from None


_KEYS = {
    "family": "family_kind", "family_kind": "family_kind",
    "p": "p_range", "p_range": "p_range",
    "a": "a_range", "a_range": "a_range",
    "g": "g_range", "g_range": "g_range",
    "n": "n_range", "n_range": "n_range",
    "a_mode": "a_mode",
    "validate": "validate_with_oracle", "validate_with_oracle": "validate_with_oracle",
    "format": "output_format", "output_format": "output_format",
    "workers": "workers",
}


def parse_config(data: dict[str, Any]) -> SweepConfig:
    """Build a :class:`SweepConfig` from a mapping of (possibly string) values.

    Ranges may be given as ``[lo, hi]``, ``"lo..hi"`` or a single integer.
    """
    kw: dict[str, Any] = {}
    for key, value in data.items():
        field_name = _KEYS.get(key.strip())
        if field_name is None:
            raise ParameterError(f"unknown config key {key!r}")
        if field_name.endswith("_range"):
            kw[field_name] = _parse_range(value, key)
        elif field_name == "validate_with_oracle":
            kw[field_name] = _parse_bool(value, key)
        elif field_name == "workers":
            kw[field_name] = int(value)
        else:
            kw[field_name] = str(value).strip()
    if "family_kind" not in kw or "n_range" not in kw:
        raise ParameterError("config needs at least 'family' and 'n'")
    try:
        return SweepConfig(**kw)
    except TypeError as exc:
        raise ParameterError(str(exc)) from None


def load_config(path: str | os.PathLike) -> SweepConfig:
    """Read a sweep config; ``.json`` files are JSON, anything else is ``key = value`` lines."""
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParameterError(f"{path}: malformed JSON: {exc}") from None
        if not isinstance(data, dict):
            raise ParameterError(f"{path}: expected a JSON object")
        return parse_config(data)
    data = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParameterError(f"{path}:{lineno}: expected key = value")
        key, value = line.split("=", 1)
        data[key.strip()] = value.strip()
    return parse_config(data)
