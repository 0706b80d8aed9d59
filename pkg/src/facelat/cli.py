"""Command-line front end: ``facelat {construct,check,phi-table,campaign,isomorphic}``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from typing import Optional, Sequence

from . import lattice as lat
from .bounds import BoundDomainError, check_lower_bound, phi_table
from .campaign import CampaignConfig, CampaignConfigError, run_campaign
from .construction import SpecError, build, parse
from .isomorphism import find_isomorphism
from .lattice import FaceLattice, LatticeError
from .oracle import OracleError, PointConfig, SamplingExhausted, lattice_from_points

EXIT_OK, EXIT_FAIL, EXIT_REFUSED = 0, 1, 2


def load_lattice(source: str) -> FaceLattice:
    """A construction expression, or a JSON file holding a lattice, points, or ``{"expr": ...}``."""
    if os.path.isfile(source):
        with open(source) as fh:
            doc = json.load(fh)
        if "points" in doc:
            return lattice_from_points(PointConfig.from_json_dict(doc))
        if "facets" in doc:
            return lat.from_json_dict(doc)
        if "expr" in doc:
            return build(parse(doc["expr"]))
        raise SpecError(f"{source}: expected 'points', 'facets' or 'expr' in JSON")
    return build(parse(source))


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _int_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition(":")
    try:
        return (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}")


def cmd_construct(args) -> int:
    P = load_lattice(args.spec)
    doc = lat.dumps(P)
    if args.out:
        _emit(doc, args.out)
    else:
        print(doc)
    print(f"f = {P.f_vector()}")
    return EXIT_OK


def cmd_check(args) -> int:
    P = load_lattice(args.input)
    try:
        report = check_lower_bound(P)
    except BoundDomainError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    if args.format == "json":
        _emit(json.dumps(report.to_dict(), indent=2), args.out)
    else:
        _emit(report.to_csv(), args.out)
    if report.equality_class is not None:
        print(
            f"verdict={report.verdict} equality_class={report.equality_class.value} "
            f"facet_profile={report.facet_profile}",
            file=sys.stderr,
        )
    else:
        print(f"verdict={report.verdict}", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_phi_table(args) -> int:
    rows = phi_table(args.d_max)
    if args.format == "json":
        text = json.dumps([dict(zip(("d", "s", "k", "phi"), r)) for r in rows])
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("d", "s", "k", "phi"))
        w.writerows(rows)
        text = buf.getvalue()
    _emit(text, args.out)
    return EXIT_OK


def cmd_campaign(args) -> int:
    fixtures: dict[tuple[int, int], list[PointConfig]] = {}
    for path in args.inject or ():
        with open(path) as fh:
            pc = PointConfig.from_json_dict(json.load(fh))
        n = lattice_from_points(pc).num_vertices
        fixtures.setdefault((pc.ambient_dim, n - pc.ambient_dim), []).append(pc)
    config = CampaignConfig(
        d_range=args.d_range,
        s_range=args.s_range or (2, args.d_range[1]),
        samples_per_cell=args.samples,
        base_seed=args.seed,
        out_csv=args.out,
        out_json=args.json_out,
        fixtures=fixtures,
    )
    result = run_campaign(config, workers=args.workers)
    summary = result.summary()
    if args.format == "json" and not args.json_out:
        print(json.dumps(summary, indent=2, sort_keys=True))
    else:
        for cell in summary["cells"]:
            classes = ", ".join(f"{k}={v}" for k, v in cell["equality_classes"].items())
            print(
                f"d={cell['d']} s={cell['s']} samples={cell['samples']} "
                f"violations={cell['violations']} {classes} "
                f"min_f={tuple(cell['componentwise_min_f'])} phi={tuple(cell['phi'])}"
            )
        print(f"total={summary['total_samples']} ok={summary['ok']}")
    return EXIT_FAIL if result.failed else EXIT_OK


def cmd_isomorphic(args) -> int:
    P, Q = load_lattice(args.first), load_lattice(args.second)
    mapping = find_isomorphism(P, Q)
    if args.format == "json":
        print(json.dumps({"isomorphic": mapping is not None, "witness": mapping}))
    else:
        print("true" if mapping is not None else "false")
        if mapping is not None:
            print(" ".join(f"{v}->{w}" for v, w in enumerate(mapping)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="facelat", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a polytope from an expression or JSON file")
    c.add_argument("spec")
    c.add_argument("--out")
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("check", help="compare f-vector against the lower bound")
    c.add_argument("input", help="expression, lattice JSON, or points JSON")
    c.add_argument("--format", choices=("csv", "json"), default="csv")
    c.add_argument("--out")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("phi-table", help="tabulate the bound for d <= d_max")
    c.add_argument("d_max", type=int)
    c.add_argument("--format", choices=("csv", "json"), default="csv")
    c.add_argument("--out")
    c.set_defaults(func=cmd_phi_table)

    c = sub.add_parser("campaign", help="check random polytopes over (d, s) cells")
    c.add_argument("--d-range", type=_int_range, required=True, metavar="LO:HI")
    c.add_argument("--s-range", type=_int_range, metavar="LO:HI", help="default 2:d_max")
    c.add_argument("--samples", type=int, default=50)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--out", help="per-sample CSV")
    c.add_argument("--json-out", help="summary JSON")
    c.add_argument("--format", choices=("csv", "json"), default="csv")
    c.add_argument("--inject", action="append", metavar="POINTS_JSON")
    c.add_argument("--workers", type=int, default=1)
    c.set_defaults(func=cmd_campaign)

    c = sub.add_parser("isomorphic", help="test combinatorial equivalence")
    c.add_argument("first")
    c.add_argument("second")
    c.add_argument("--format", choices=("csv", "json"), default="csv")
    c.set_defaults(func=cmd_isomorphic)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (SpecError, LatticeError, OracleError, CampaignConfigError, SamplingExhausted, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REFUSED


if __name__ == "__main__":
    sys.exit(main())
