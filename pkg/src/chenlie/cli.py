"""Command-line front end: ``chenlie <command> ...`` prints one JSON document."""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import jsonschema

from . import closedforms, gradedalg, liecore
from .holonomy import (
    QuadraticPresentation,
    from_arrangement,
    from_group,
    from_link,
    rank2_flats,
    validate_linking_matrix,
)
from .intlinalg import ResourceLimitError, is_prime, prime_factors
from .linkcheck import murasugi_report
from .words import GroupPresentation, NotCommutatorError, WordSyntaxError

EXIT_INPUT = 2
EXIT_CAP = 3
EXIT_MISMATCH = 4

_INT_MATRIX = {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}}

INPUT_SCHEMA = {
    "type": "object",
    "required": ["kind"],
    "oneOf": [
        {
            "properties": {
                "kind": {"const": "group"},
                "generators": {"type": "integer", "minimum": 1},
                "relators": {"type": "array", "items": {"type": "string"}},
            },
            "required": ["kind", "generators", "relators"],
            "additionalProperties": False,
        },
        {
            "properties": {"kind": {"const": "link"}, "linking_matrix": _INT_MATRIX},
            "required": ["kind", "linking_matrix"],
            "additionalProperties": False,
        },
        {
            "properties": {"kind": {"const": "arrangement"}, "normals": _INT_MATRIX},
            "required": ["kind", "normals"],
            "additionalProperties": False,
        },
        {
            "properties": {
                "kind": {"const": "quadratic"},
                "n": {"type": "integer", "minimum": 1},
                "relations": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "propertyNames": {"pattern": r"^\s*\d+\s*,\s*\d+\s*$"},
                        "additionalProperties": {"type": "integer"},
                    },
                },
            },
            "required": ["kind", "n", "relations"],
            "additionalProperties": False,
        },
    ],
}


class InputError(ValueError):
    pass


@dataclass
class InputSpec:
    kind: str
    payload: dict
    q: QuadraticPresentation
    group: GroupPresentation | None = None
    linking_matrix: list | None = None

    def input_integers(self) -> set[int]:
        """Integers appearing in the data (sizes such as n excluded)."""
        p = self.payload
        if self.kind == "group":
            return {abs(int(e)) for r in p["relators"] for e in re.findall(r"\^\s*([+-]?\d+)", r)}
        if self.kind == "link":
            return {abs(x) for row in p["linking_matrix"] for x in row}
        if self.kind == "arrangement":
            return {abs(x) for row in p["normals"] for x in row}
        return {abs(c) for rel in p["relations"] for c in rel.values()}


def parse_input(data) -> InputSpec:
    try:
        jsonschema.validate(data, INPUT_SCHEMA)
    except jsonschema.ValidationError as e:
        raise InputError(f"input does not match schema: {e.message}") from None
    kind = data["kind"]
    try:
        if kind == "group":
            g = GroupPresentation.parse(data["generators"], data["relators"])
            return InputSpec(kind, data, from_group(g), group=g)
        if kind == "link":
            L = data["linking_matrix"]
            if not L:
                raise InputError("linking matrix is empty")
            validate_linking_matrix(L)
            return InputSpec(kind, data, from_link(L), linking_matrix=L)
        if kind == "arrangement":
            normals = data["normals"]
            if not normals or len({len(v) for v in normals}) != 1:
                raise InputError("normals must be a nonempty list of equal-length vectors")
            return InputSpec(kind, data, from_arrangement(rank2_flats(normals)))
        rels = []
        for rel in data["relations"]:
            d = {}
            for key, c in rel.items():
                i, j = (int(x) for x in key.split(","))
                d[(i, j)] = d.get((i, j), 0) + c
            rels.append(d)
        return InputSpec(kind, data, QuadraticPresentation.from_pair_dicts(data["n"], rels))
    except WordSyntaxError as e:
        raise InputError(f"bad relator: {e}") from None
    except (NotCommutatorError, ValueError) as e:
        if isinstance(e, InputError):
            raise
        raise InputError(str(e)) from None


def load_input(path: str) -> InputSpec:
    try:
        with open(path) as f:
            data = json.load(f)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}") from None
    return parse_input(data)


def _prime_list(text: str | None) -> list[int] | None:
    if text is None:
        return None
    try:
        ps = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"bad prime list {text!r}") from None
    for p in ps:
        if not is_prime(p):
            raise InputError(f"{p} is not prime")
    return ps


def _primes_for(spec: InputSpec, requested: list[int] | None) -> tuple[int, ...]:
    if requested is not None:
        return tuple(sorted(set(requested)))
    extra = set()
    for x in spec.input_integers():
        extra.update(prime_factors(x))
    return gradedalg.default_primes(spec.q, sorted(extra))


def _degree_json(degree: int, rank_q: int, rank_fp: dict, divisors) -> dict:
    return {
        "degree": degree,
        "rank_q": rank_q,
        "rank_fp": {str(p): r for p, r in sorted(rank_fp.items())},
        "divisors": None if divisors is None else [str(x) for x in divisors],
    }


def cmd_chen(args) -> dict:
    spec = load_input(args.input)
    primes = _primes_for(spec, _prime_list(args.primes))
    if args.i < 2:
        raise InputError("--i must be at least 2")
    if args.i == 2:
        kmax = args.kmax or gradedalg.DEFAULT_KMAX
        table = gradedalg.chen_table(spec.q, kmax, primes, not args.no_torsion, args.cap)
        reports = [
            _degree_json(r.degree, r.rank_q, r.rank_fp, r.elementary_divisors)
            for r in table.reports
        ]
        theta = table.theta
    else:
        kmax = args.kmax or liecore.DEFAULT_ORACLE_KMAX
        res = liecore.derived_quotient_ranks(spec.q, args.i, kmax, primes)
        reports = [
            _degree_json(x.degree, x.rank, x.rank_fp, x.divisors)
            for x in res["degrees"] if x.degree >= 2
        ]
        theta = [x.rank for x in res["degrees"]]
    return {
        "kind": spec.kind,
        "n": spec.q.n,
        "i": args.i,
        "kmax": kmax,
        "primes": list(primes),
        "theta": theta,
        "reports": reports,
        "torsion": {str(r["degree"]): r["divisors"] for r in reports},
        "flags": {"interpretation": gradedalg.INTERPRETATION_FLAG},
    }


def cmd_formula(args) -> dict:
    fam, n, kmax = args.family, args.n, args.kmax
    if kmax < 1:
        raise InputError("--kmax must be positive")
    try:
        if fam == "free":
            table = closedforms.free_chen_series(n, kmax)
        elif fam == "one-relator":
            table = closedforms.one_relator_series(n, kmax)
        elif fam == "pure-braid":
            table = closedforms.pure_braid_series(n, kmax)
        else:
            poly = closedforms.surface_lcs_poly(n)
            table = closedforms.invert_lcs_product(poly, kmax)
            table = closedforms.SeriesTable(f"surface-lcs(genus={n})", table.coefficients)
    except ValueError as e:
        raise InputError(str(e)) from None
    return {"label": table.label, "coefficients": table.as_list()}


def cmd_lcs_invert(args) -> dict:
    try:
        poly = [Fraction(x.strip()) for x in args.poly.split(",")]
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad polynomial {args.poly!r}") from None
    if args.kmax < 1:
        raise InputError("--kmax must be positive")
    try:
        table = closedforms.invert_lcs_product(poly, args.kmax)
    except ValueError as e:
        raise InputError(str(e)) from None
    return {"poly": [str(c) for c in poly], "kmax": args.kmax, "phi": table.as_list()}


def cmd_murasugi(args) -> dict:
    spec = load_input(args.input)
    if spec.kind != "link":
        raise InputError("murasugi needs a link input")
    if args.kmax < 2:
        raise InputError("--kmax must be at least 2")
    return murasugi_report(spec.linking_matrix, args.kmax, cap=args.cap).as_dict()


def cmd_flats(args) -> dict:
    try:
        with open(args.input) as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read {args.input}: {e}") from None
    spec = parse_input(data)
    if spec.kind != "arrangement":
        raise InputError("flats needs an arrangement input")
    lines = rank2_flats(data["normals"])
    return {"n": lines.n, "lines": lines.sorted_lines()}


class OracleMismatch(Exception):
    def __init__(self, report: dict):
        super().__init__("oracle mismatch")
        self.report = report


def cmd_oracle_check(args) -> dict:
    from .gradedalg import linearized_B_dims

    spec = load_input(args.input)
    if args.kmax < 2:
        raise InputError("--kmax must be at least 2")
    q = spec.q
    ideal = liecore.ideal_degree_pieces(q, args.kmax)
    degrees = []
    ok = True
    for d in range(2, args.kmax + 1):
        rep = gradedalg.degree_report(q, d, (2, 3), cap=args.cap)
        rank, divs = liecore.oracle_infinitesimal_alexander(q, d, ideal)
        row = {
            "degree": d,
            "presentation": {"rank": rep.free_rank, "divisors": [str(x) for x in rep.elementary_divisors]},
            "oracle": {"rank": rank, "divisors": [str(x) for x in divs]},
        }
        agree = (rank, tuple(divs)) == (rep.free_rank, rep.elementary_divisors)
        if spec.group is not None:
            lin = {"0": linearized_B_dims(spec.group, d)}
            for p in (2, 3):
                lin[str(p)] = linearized_B_dims(spec.group, d, p)
            row["linearized"] = lin
            agree = agree and lin["0"] == rep.rank_q and all(
                lin[str(p)] == rep.rank_fp[p] for p in (2, 3)
            )
        row["match"] = agree
        ok = ok and agree
        degrees.append(row)
    out = {"kind": spec.kind, "n": q.n, "kmax": args.kmax, "match": ok, "degrees": degrees}
    if not ok:
        raise OracleMismatch(out)
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chenlie", description="Chen ranks, holonomy Lie algebras and their torsion."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_cap(p):
        p.add_argument("--cap", type=int, default=gradedalg.DEFAULT_CAP,
                       help="max nonzero entries per degree block (default %(default)s)")

    p = sub.add_parser("chen", help="Chen ranks and torsion degree by degree")
    p.add_argument("--input", required=True)
    p.add_argument("--kmax", type=int, default=None)
    p.add_argument("--primes", default=None, help="comma-separated, e.g. 2,3,7")
    p.add_argument("--i", type=int, default=2, help="derived length; 2 gives Chen ranks")
    p.add_argument("--no-torsion", action="store_true", help="skip Smith normal forms")
    with_cap(p)
    p.set_defaults(func=cmd_chen)

    p = sub.add_parser("formula", help="closed-form series")
    p.add_argument("--family", required=True, choices=["free", "one-relator", "pure-braid", "surface-lcs"])
    p.add_argument("--n", type=int, required=True, help="generators, strands, or genus for surface-lcs")
    p.add_argument("--kmax", type=int, required=True)
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("lcs-invert", help="exponents of an LCS product formula")
    p.add_argument("--poly", required=True, help='coefficients from t^0, e.g. "1,-4,1" (fractions allowed)')
    p.add_argument("--kmax", type=int, required=True)
    p.set_defaults(func=cmd_lcs_invert)

    p = sub.add_parser("murasugi", help="Murasugi condition battery for a linking matrix")
    p.add_argument("--input", required=True)
    p.add_argument("--kmax", type=int, default=5)
    with_cap(p)
    p.set_defaults(func=cmd_murasugi)

    p = sub.add_parser("flats", help="rank-2 flats of a central arrangement")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_flats)

    p = sub.add_parser("oracle-check", help="compare the presentation route with the Lie oracle")
    p.add_argument("--input", required=True)
    p.add_argument("--kmax", type=int, default=5)
    with_cap(p)
    p.set_defaults(func=cmd_oracle_check)
    return parser


def dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def run(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (ResourceLimitError, liecore.CutoffError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    except OracleMismatch as e:
        sys.stdout.write(dump(e.report))
        print("error: presentation and oracle disagree", file=sys.stderr)
        return EXIT_MISMATCH
    sys.stdout.write(dump(out))
    return 0


def main() -> None:
    sys.exit(run())
