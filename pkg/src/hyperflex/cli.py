"""Command-line entry point: ``hyperflex <group> <command> [options]``.

Exit codes: 0 success, 1 a check failed or a computation was inconclusive,
2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import bitangents, e6, padic, report, stats
from .algebra.rings import GF, QQ, is_prime
from .errors import DegenerateFamilyMemberError, DomainError, InconclusiveError, ScopeError
from .family import FamilyPoint, discriminant, enumerate_family, is_smooth, point_count

E6_EXPECTED = {
    "roots": 72,
    "weyl_order": 51840,
    "det_one_minus_coxeter": 3,
    "q_counts": {"plus": 27, "minus": 36},
    "w_fixed_space_dim": 0,
    "centralizer_trivial": True,
    "aut_image_order": 51840,
    "dual_index": 3,
    "transitive_27": True,
    "transitive_36": True,
}


class CheckFailed(Exception):
    """The command ran but a verified value disagreed with its expectation."""

    def __init__(self, payload):
        super().__init__("check failed")
        self.payload = payload


# -- argument types --------------------------------------------------------------


def family_point(text: str) -> FamilyPoint:
    try:
        return FamilyPoint.parse(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not is_prime(p):
        raise argparse.ArgumentTypeError(f"{p} is not prime")
    return p


def positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def prime_list(text: str) -> list[int]:
    return [prime(t) for t in text.split(",") if t.strip()]


def rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def suite_list(text: str) -> tuple[str, ...]:
    names = tuple(t.strip() for t in text.split(",") if t.strip())
    bad = [n for n in names if n not in report.SUITES]
    if bad:
        raise argparse.ArgumentTypeError(
            f"unknown suite(s) {', '.join(bad)}; choose from {', '.join(report.SUITES)}"
        )
    return names


# -- output --------------------------------------------------------------------------


def _rows(data) -> list[dict]:
    if isinstance(data, list) and all(isinstance(r, dict) for r in data):
        return data
    if isinstance(data, dict) and "suites" in data:
        return [c for cs in data["suites"].values() for c in cs]
    if isinstance(data, dict):
        return [{"key": k, "value": json.dumps(v) if isinstance(v, (dict, list)) else v}
                for k, v in data.items()]
    return [{"value": data}]


def emit(data, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        json.dump(data, out, indent=2)
        out.write("\n")
        return
    rows = _rows(data)
    fields: list[str] = []
    for r in rows:
        fields += [k for k in r if k not in fields]
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: json.dumps(v) if isinstance(v, (dict, list)) else v for k, v in r.items()})
    out.write(buf.getvalue())


# -- commands ----------------------------------------------------------------------


def _field(args):
    return QQ if args.prime is None else GF(args.prime)


def cmd_family_disc(args):
    return {"b": args.b.to_json(), "discriminant": str(discriminant(args.b))}


def cmd_family_smooth(args):
    dom = _field(args)
    return {"b": args.b.to_json(), "field": "QQ" if args.prime is None else dom.to_json(),
            "smooth": is_smooth(args.b, dom)}


def cmd_family_count(args):
    dom = GF(args.prime, args.degree)
    return {"b": args.b.to_json(), "field": dom.to_json(), "points": point_count(args.b, dom)}


def cmd_family_enumerate(args):
    out = sys.stdout
    stream = enumerate_family(args.height, args.minimal)
    if args.format == "csv":
        out.write("p2,p5,p6,p8,p9,p12\n")
        for b in stream:
            out.write(b.to_text() + "\n")
    else:
        # one JSON object per line keeps memory flat for large boxes
        for b in stream:
            out.write(json.dumps(b.to_json()) + "\n")
    out.flush()
    return None


def cmd_e6_verify(args):
    data = e6.verify()
    if any(data[k] != v for k, v in E6_EXPECTED.items()):
        raise CheckFailed(data)
    return data


def cmd_bitangents_resultant(args):
    return bitangents.bitangent_resultant(args.b, monic=not args.raw).to_json()


def cmd_bitangents_galois(args):
    return bitangents.galois_pattern_report(args.b, args.primes)


def cmd_padic_log(args):
    return padic.formal_log(args.b, args.prime, args.order).to_json()


def cmd_padic_rholog(args):
    image, cert = padic.rho_log_image(args.b, args.prime, args.order)
    return {"image": sorted(list(pt) for pt in image), "certificate": cert}


def cmd_padic_torsion(args):
    ok, cert = padic.torsion_disk_certificate(args.b, args.prime, args.order)
    return {"only_root_is_zero": ok, "certificate": cert}


def cmd_stats_density(args):
    return stats.density_good_reduction(args.prime, args.workers).to_json()


def cmd_stats_maxpoints(args):
    n, witness, low = stats.max_points(args.prime, args.workers)
    lo, hi = stats.weil_envelope(args.prime)
    return {"prime": args.prime, "max": n, "witness": witness.to_json(), "min": low,
            "serre_weil": [lo, hi]}


def cmd_stats_box(args):
    return stats.box_count(args.height).to_json()


def cmd_stats_combine(args):
    d7, mx = args.d7, args.maxf7
    if d7 is None:
        d7 = stats.density_good_reduction(7, args.workers).density
    if mx is None:
        mx = stats.max_points_F7(args.workers)[0]
    return stats.chabauty_combine(args.selmer, d7, mx).to_json()


def cmd_report(args):
    cfg = report.ReportConfig(only=args.only or report.SUITES, workers=args.workers)
    if args.b is not None:
        cfg.b = args.b
    if args.prime is not None:
        cfg.prime = args.prime
    if args.order is not None:
        cfg.order = args.order
    data = report.report(cfg)
    if not data["all_pass"]:
        raise CheckFailed(data)
    return data


# -- parser -------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--workers", type=positive, default=None,
                        help="processes for finite-field sweeps")

    parser = argparse.ArgumentParser(prog="hyperflex", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True)

    def sub(group, name, func, help_):
        p = group.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    fam = groups.add_parser("family", help="family members").add_subparsers(dest="cmd", required=True)
    p = sub(fam, "disc", cmd_family_disc, "divided discriminant")
    p.add_argument("--b", type=family_point, required=True)
    p = sub(fam, "smooth", cmd_family_smooth, "smoothness over Q or F_p")
    p.add_argument("--b", type=family_point, required=True)
    p.add_argument("--prime", type=prime)
    p = sub(fam, "count", cmd_family_count, "projective point count over F_q")
    p.add_argument("--b", type=family_point, required=True)
    p.add_argument("--prime", type=prime, required=True)
    p.add_argument("--degree", type=positive, default=1)
    p = sub(fam, "enumerate", cmd_family_enumerate, "all b with ht(b) < a")
    p.add_argument("--height", type=positive, required=True)
    p.add_argument("--minimal", action="store_true")

    grp = groups.add_parser("e6", help="E6 lattice checks").add_subparsers(dest="cmd", required=True)
    sub(grp, "verify", cmd_e6_verify, "run the lattice and Weyl group checks")

    grp = groups.add_parser("bitangents", help="bitangent resultant").add_subparsers(
        dest="cmd", required=True
    )
    p = sub(grp, "resultant", cmd_bitangents_resultant, "degree-27 slope polynomial")
    p.add_argument("--b", type=family_point, required=True)
    p.add_argument("--raw", action="store_true", help="keep the constant factor")
    p = sub(grp, "galois", cmd_bitangents_galois, "per-prime factorization report")
    p.add_argument("--b", type=family_point, required=True)
    p.add_argument("--primes", type=prime_list, default=[2, 3, 5, 7])

    grp = groups.add_parser("padic", help="logarithm on the disk at infinity").add_subparsers(
        dest="cmd", required=True
    )
    for name, func in (("log", cmd_padic_log), ("rholog", cmd_padic_rholog),
                       ("torsion", cmd_padic_torsion)):
        p = sub(grp, name, func, func.__name__.split("_")[-1])
        p.add_argument("--b", type=family_point, required=True)
        p.add_argument("--prime", type=prime, default=2)
        p.add_argument("--order", type=positive, default=13)

    grp = groups.add_parser("stats", help="sweeps and arithmetic").add_subparsers(
        dest="cmd", required=True
    )
    p = sub(grp, "density", cmd_stats_density, "good-reduction density over F_p^6")
    p.add_argument("--prime", type=prime, default=7)
    p = sub(grp, "maxpoints", cmd_stats_maxpoints, "max #C_b(F_p) over smooth b")
    p.add_argument("--prime", type=prime, default=7)
    p = sub(grp, "box", cmd_stats_box, "height box size")
    p.add_argument("--height", type=positive, required=True)
    p = sub(grp, "combine", cmd_stats_combine, "density and point-cap arithmetic")
    p.add_argument("--selmer", type=rational, default=Fraction(3))
    p.add_argument("--d7", type=rational)
    p.add_argument("--maxf7", type=int)

    p = groups.add_parser("report", parents=[common], help="run the suites")
    p.set_defaults(func=cmd_report)
    p.add_argument("--only", type=suite_list)
    p.add_argument("--b", type=family_point)
    p.add_argument("--prime", type=prime)
    p.add_argument("--order", type=positive)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with 2 on malformed input
    try:
        return _run(args)
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head); silence the final flush
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return 0


def _run(args) -> int:
    try:
        data = args.func(args)
    except CheckFailed as exc:
        emit(exc.payload, args.format)
        return 1
    except (DomainError, ScopeError, DegenerateFamilyMemberError) as exc:
        print(f"hyperflex: error: {exc}", file=sys.stderr)
        return 2
    except InconclusiveError as exc:
        print(f"hyperflex: inconclusive: {exc}", file=sys.stderr)
        return 1
    if data is not None:
        emit(data, args.format)
    sys.stdout.flush()
    return 0


if __name__ == "__main__":
    sys.exit(main())
