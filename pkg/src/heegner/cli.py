"""Command-line interface.

Every subcommand prints one JSON record per line on stdout; ``--pretty``
switches to a human-readable rendering.  Elements are written in the
``a,b`` coordinate form, surd values in the ``c0 + c1*sqrt(w1)`` syntax.
"""

from __future__ import annotations

import argparse
import json
import sys

from .abundancy import abundancy_index, divisor_power_sum
from .factorization import Factorization, factor
from .intarith import FactorizationOverflowError
from .rings import Ring, RingError, parse_coords
from .search import (
    ProbeReport,
    WORKERS_ENV,
    conjecture_probe,
    friend_search,
    report_lines,
    write_report,
)
from .solitary import certify_solitary, verify_exponent_symmetry
from .surd import format_surd
from .version import __version__


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heegner",
        description=(
            "Exact divisor sums, abundancy indices, solitary certificates and "
            "friend searches in the nine imaginary quadratic rings with unique "
            "factorization."
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--pretty", action="store_true", help="human-readable output")
        return cmd

    cmd = add("factor", "factor an element into canonical sector primes")
    cmd.add_argument("--d", type=int, required=True, help="ring discriminant parameter d")
    cmd.add_argument("--z", required=True, help="element in a,b coordinates")

    cmd = add("delta", "sum |x|**n over one divisor per associate class")
    cmd.add_argument("--d", type=int, required=True)
    cmd.add_argument("--z", required=True)
    cmd.add_argument("--n", type=int, required=True, help="power (any nonzero integer)")

    cmd = add("index", "abundancy index: divisor power sum over |z|**n")
    cmd.add_argument("--d", type=int, required=True)
    cmd.add_argument("--z", required=True)
    cmd.add_argument("--n", type=int, required=True, help="power (positive integer)")

    cmd = add("certify", "prove the element has no same-index partner, if a theorem applies")
    cmd.add_argument("--d", type=int, required=True)
    cmd.add_argument("--z", required=True)
    cmd.add_argument("--n", type=int, required=True)

    cmd = add("friends", "group all elements up to a norm bound by exact index")
    cmd.add_argument("--d", type=int, required=True)
    cmd.add_argument("--n", type=int, required=True)
    cmd.add_argument("--bound", type=int, required=True, help="inclusive norm bound")
    cmd.add_argument("--prune", action="store_true", help="apply the conjugate-pair shape filter")
    cmd.add_argument("--out", help="also write the report to this path")
    cmd.add_argument(
        "--workers",
        type=int,
        help=f"scan worker processes (default from ${WORKERS_ENV}, else 1)",
    )

    cmd = add("probe", "scan for a same-index partner of p**k up to a norm bound")
    cmd.add_argument("--d", type=int, required=True)
    cmd.add_argument("--p", type=int, required=True, help="integer prime")
    cmd.add_argument("--k", type=int, required=True, help="exponent")
    cmd.add_argument("--n", type=int, required=True)
    cmd.add_argument("--bound", type=int, required=True)

    cmd = add("verify-lemma35", "brute-force the exponent cross-equation symmetry")
    cmd.add_argument("--p", type=int, required=True, help="integer prime")
    cmd.add_argument("--max-exp", type=int, required=True, help="largest exponent to test")

    return parser


def _emit(record: dict) -> None:
    print(json.dumps(record, sort_keys=True, separators=(",", ":")))


def _factors_json(fz: Factorization) -> list[dict]:
    return [
        {"prime": prime.coord_str(), "norm": prime.norm(), "exp": e}
        for prime, e in fz.factors
    ]


def _cmd_factor(args: argparse.Namespace) -> int:
    z = parse_coords(Ring(args.d), args.z)
    fz = factor(z)
    if args.pretty:
        print(f"{z}  (norm {z.norm()})")
        print(f"  = {fz}")
    else:
        _emit(
            {
                "cmd": "factor",
                "d": args.d,
                "z": z.coord_str(),
                "norm": z.norm(),
                "unit": fz.unit.coord_str(),
                "factors": _factors_json(fz),
            }
        )
    return 0


def _cmd_delta(args: argparse.Namespace) -> int:
    z = parse_coords(Ring(args.d), args.z)
    value = divisor_power_sum(z, args.n)
    if args.pretty:
        print(f"divisor power sum (n={args.n}) of {z}: {format_surd(value)}")
    else:
        _emit({"cmd": "delta", "d": args.d, "z": z.coord_str(), "n": args.n, "value": format_surd(value)})
    return 0


def _cmd_index(args: argparse.Namespace) -> int:
    z = parse_coords(Ring(args.d), args.z)
    value = abundancy_index(z, args.n)
    if args.pretty:
        print(f"abundancy index (n={args.n}) of {z}: {format_surd(value)}")
    else:
        _emit({"cmd": "index", "d": args.d, "z": z.coord_str(), "n": args.n, "value": format_surd(value)})
    return 0


def _cmd_certify(args: argparse.Namespace) -> int:
    z = parse_coords(Ring(args.d), args.z)
    cert = certify_solitary(z, args.n)
    if args.pretty:
        verdict = f"certified: {cert.reason.value}" if cert.certified else "unknown"
        print(f"{z} (n={args.n}): {verdict}")
        print(f"  factorization: {cert.factorization}")
    else:
        _emit(
            {
                "cmd": "certify",
                "d": args.d,
                "z": z.coord_str(),
                "n": args.n,
                "certified": cert.certified,
                "reason": cert.reason.value if cert.reason else None,
                "unit": cert.factorization.unit.coord_str(),
                "factors": _factors_json(cert.factorization),
            }
        )
    return 0


def _cmd_friends(args: argparse.Namespace) -> int:
    report = friend_search(
        Ring(args.d), args.n, args.bound, prune=args.prune, workers=args.workers
    )
    if args.out:
        write_report(report, args.out)
    if args.pretty:
        print(
            f"d={args.d} n={args.n} bound={args.bound}: "
            f"{len(report.groups)} friend group(s), {report.certified_count} certified, "
            f"{report.elapsed:.2f}s"
        )
        for group in report.groups:
            print(f"  index {format_surd(group.index_key)}:")
            for elem, nrm in group.members:
                print(f"    {elem}  (norm {nrm})")
    else:
        for line in report_lines(report):
            print(line)
    return 0


def _probe_json(report: ProbeReport) -> dict:
    return {
        "cmd": "probe",
        "d": report.ring.d,
        "p": report.p,
        "k": report.k,
        "n": report.n,
        "bound": report.norm_bound,
        "target": report.target.coord_str(),
        "target_norm": report.target_norm,
        "target_index": format_surd(report.target_index),
        "certified": report.certified,
        "reason": report.certificate_reason,
        "friend_found": report.friend_found(),
        "hits": [[elem.coord_str(), nrm] for elem, nrm in report.hits],
    }


def _cmd_probe(args: argparse.Namespace) -> int:
    report = conjecture_probe(Ring(args.d), args.n, args.p, args.k, args.bound)
    if args.pretty:
        print(
            f"target {report.target} (norm {report.target_norm}), "
            f"index {format_surd(report.target_index)}"
        )
        if report.hits:
            print(f"  COUNTEREXAMPLE: {len(report.hits)} same-index partner(s) found:")
            for elem, nrm in report.hits:
                print(f"    {elem}  (norm {nrm})")
        else:
            print(f"  no friend up to bound {report.norm_bound}")
    else:
        _emit(_probe_json(report))
    return 0


def _cmd_verify_lemma35(args: argparse.Namespace) -> int:
    report = verify_exponent_symmetry(args.p, args.max_exp)
    if args.pretty:
        status = "exactly the symmetric quadruples" if report.holds else "VIOLATIONS FOUND"
        print(
            f"p={report.p}, exponents <= {report.max_exp}: "
            f"{report.solutions} solutions among {report.quadruples_checked} quadruples; {status}"
        )
        for quad in report.asymmetric_solutions:
            print(f"  unexpected solution: {quad}")
        for quad in report.missing_symmetric:
            print(f"  missing symmetric solution: {quad}")
    else:
        _emit(
            {
                "cmd": "verify-lemma35",
                "p": report.p,
                "max_exp": report.max_exp,
                "quadruples": report.quadruples_checked,
                "solutions": report.solutions,
                "holds": report.holds,
                "asymmetric_solutions": [list(q) for q in report.asymmetric_solutions],
                "missing_symmetric": [list(q) for q in report.missing_symmetric],
            }
        )
    return 0


_HANDLERS = {
    "factor": _cmd_factor,
    "delta": _cmd_delta,
    "index": _cmd_index,
    "certify": _cmd_certify,
    "friends": _cmd_friends,
    "probe": _cmd_probe,
    "verify-lemma35": _cmd_verify_lemma35,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (RingError, FactorizationOverflowError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
