"""Command-line entry point.

Exit codes: 0 success (and, for ``certify``, a certified counterexample);
1 the computation ran but the verdict was negative or an oracle disagreed;
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from typing import Optional, Sequence

from .cliffmin import (
    ConstraintRegion,
    closed_form_cliff,
    hyperplane_cliff,
    minimize_cliff,
    minimize_cliff_rank1,
)
from .errors import CliffcertError
from .lattice import FarkasOrtega, Generic, build_lattice, cd_gram
from .mercat import certify
from .sweep import load_config, run_sweep

log = logging.getLogger("cliffcert")

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


def _family_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--p", type=int, help="rank-2 family parameter p (>= 3)")
    p.add_argument("--a", type=int, help="rank-2 family parameter a (>= 2p + 3)")
    p.add_argument("--g", type=int, help="rank-1 family genus g (>= 2)")


def _format_arg(p: argparse.ArgumentParser, choices=("text", "json")) -> None:
    p.add_argument("--format", choices=choices, default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cliffcert", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lattice-info", help="print Gram matrices")
    _family_args(p)
    _format_arg(p)

    p = sub.add_parser("cliff", help="compute Cliff(C_n) by exhaustive search")
    _family_args(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--validate", action="store_true",
                   help="compare against the closed form; exit 1 on mismatch")
    _format_arg(p)

    p = sub.add_parser("certify", help="build a Mercat counterexample certificate")
    _family_args(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--validate", action="store_true",
                   help="cross-check Cliff(C_n) with the exhaustive search")
    _format_arg(p)

    p = sub.add_parser("sweep", help="run a parameter sweep from a config file")
    p.add_argument("--config", required=True, help="JSON (.json) or key = value file")
    p.add_argument("--format", choices=("json", "csv"), default=None,
                   help="overrides output_format from the config")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--output", "-o", help="write the report here instead of stdout")
    return parser


def _family(args: argparse.Namespace):
    rank2 = args.p is not None or args.a is not None
    if rank2 and args.g is not None:
        raise CliffcertError("give either --p/--a or --g, not both")
    if rank2:
        if args.p is None or args.a is None:
            raise CliffcertError("the rank-2 family needs both --p and --a")
        return FarkasOrtega(args.p, args.a)
    if args.g is None:
        raise CliffcertError("give --p and --a (rank 2) or --g (rank 1)")
    return Generic(args.g)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def _cmd_lattice_info(args, out) -> int:
    family = _family(args)
    L = build_lattice(family)
    info = {"family": family.to_json(), "basis": list(L.basis_labels), "gram": L.to_json()}
    if isinstance(family, FarkasOrtega):
        info["gram_CD"] = [list(r) for r in cd_gram(family)]
    if args.format == "json":
        out.write(_dump(info) + "\n")
        return EXIT_OK
    out.write(f"family: {family.to_json()}\n")
    out.write(f"basis {{{', '.join(L.basis_labels)}}}: {L.to_json()}\n")
    if "gram_CD" in info:
        out.write(f"basis {{C, D}}: {info['gram_CD']}\n")
    return EXIT_OK


def _cmd_cliff(args, out) -> int:
    family = _family(args)
    n = args.n
    if isinstance(family, FarkasOrtega):
        res = minimize_cliff(ConstraintRegion.of(family, n))
    else:
        res = minimize_cliff_rank1(family.g, n)
    payload = res.to_json()
    code = EXIT_OK
    if args.validate:
        if n >= 2:
            expected = closed_form_cliff(family, n)
        elif isinstance(family, FarkasOrtega):
            expected = hyperplane_cliff(family)
        else:
            expected = None
        match = None if expected is None else res.reported_cliff == expected
        payload["expected"] = expected
        payload["oracle_match"] = match
        if match is False:
            code = EXIT_NEGATIVE
    if args.format == "json":
        out.write(_dump(payload) + "\n")
    else:
        for k, v in payload.items():
            if k == "argmin":
                v = " ".join("(" + ", ".join(map(str, pt)) + ")" for pt in v) or "-"
            out.write(f"{k}: {v}\n")
    return code


def _cmd_certify(args, out) -> int:
    cert = certify(_family(args), args.n, validate=args.validate)
    if args.format == "json":
        out.write(_dump(cert.to_json()) + "\n")
    else:
        out.write(cert.to_text())
    return EXIT_OK if cert.certified else EXIT_NEGATIVE


def _cmd_sweep(args, out) -> int:
    config = load_config(args.config)
    overrides = {}
    if args.format:
        overrides["output_format"] = args.format
    if args.workers:
        overrides["workers"] = args.workers
    if overrides:
        config = replace(config, **overrides)
    report = run_sweep(config)
    text = (_dump(report.to_json()) + "\n") if config.output_format == "json" else report.to_csv()
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        out.write(text)
    s = report.summary
    log.info("sweep summary: %s", s)
    print(", ".join(f"{k}={v}" for k, v in s.items()), file=sys.stderr)
    return EXIT_NEGATIVE if s["oracle_mismatches"] else EXIT_OK


_COMMANDS = {
    "lattice-info": _cmd_lattice_info,
    "cliff": _cmd_cliff,
    "certify": _cmd_certify,
    "sweep": _cmd_sweep,
}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return _COMMANDS[args.command](args, out)
    except (CliffcertError, OSError) as exc:
        print(f"cliffcert: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
