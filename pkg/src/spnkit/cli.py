"""Command-line front end.

Commands: classify, decompose, stqp, orbit, signgraph, selftest.

Exit codes (stable scripting contract):
    0  success / affirmative outcome
    1  sound negative outcome (witness found, orbit not found, not tight)
    2  undecided within iteration caps
    3  usage or parse error

All row/column indices in the JSON output are 1-based.
"""

from __future__ import annotations

import argparse
import json
import sys

from .classes import classify, idx, is_block_sign, is_Mn, is_Rn, row_sign_summary
from .cones import (
    DnnWitness,
    SpnCertificate,
    copositive_oracle,
    spn_decompose_recursive,
    spn_oracle,
)
from .errors import (
    DimensionTooLargeError,
    NotInSupportedClassError,
    ParseError,
    SpnKitError,
    UndecidedError,
)
from .matcore import SymMatrix, Tolerances, apply_group, inverse_group
from .orbit import joint_orbit_search, permute_into_Mn, rescale_into_Mn
from .selftest import SUITES, run_all, run_suite
from .signgraph import edges_to_dot, extract_sign_graphs, is_threshold, orbit_necessary_filter
from .stqp import build_separable, certify_tightness, raw_instance
from .textio import format_matrix, read_matrix, read_vector

_EXIT_OK = 0
_EXIT_NEGATIVE = 1
_EXIT_UNDECIDED = 2
_EXIT_USAGE = 3


def _tolerances(args) -> Tolerances:
    return Tolerances(
        eps_ord=args.eps_ord,
        eps_psd=args.eps_psd,
        eps_feas=args.eps_feas,
        eps_opt=args.eps_opt,
        max_iter=args.max_iter,
    )


def _emit(doc: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(doc, indent=2))
        return
    for key, value in doc.items():
        if isinstance(value, str) and "\n" in value:
            print(f"{key}:")
            for line in value.rstrip("\n").splitlines():
                print(f"  {line}")
        elif isinstance(value, dict):
            print(f"{key}:")
            for k2, v2 in value.items():
                print(f"  {k2}: {v2}")
        else:
            print(f"{key}: {value}")


def _orbit_json(result) -> dict:
    if not result.found:
        return {"found": False, "perm": None, "diag": None, "method": result.method}
    return {
        "found": True,
        "perm": list(result.witness.perm),
        "diag": list(result.witness.diag),
        "method": result.method,
    }


def _cmd_classify(args) -> int:
    tol = _tolerances(args)
    a = read_matrix(args.matrix)
    labels = [
        {"tag": lab.tag, **({"detail": lab.detail} if lab.detail is not None else {})}
        for lab in classify(a, tol)
    ]
    signs = row_sign_summary(a, tol)
    doc = {
        "n": a.n,
        "labels": labels,
        "idx": idx(a, tol),
        "row_signs": {
            "nonneg_rows": sorted(signs.nonneg_rows),
            "nonpos_rows": sorted(signs.nonpos_rows),
            "strictly_neg_rows": sorted(signs.strictly_neg_rows),
        },
    }
    _emit(doc, args.format)
    return _EXIT_OK


def _recursion_applicable(a: SymMatrix, tol: Tolerances) -> bool:
    return (
        a.n <= 4
        or is_Mn(a, tol)
        or is_Rn(a, tol)
        or any(is_block_sign(a, k, tol) for k in range(1, a.n))
    )


def _certificate_doc(cert: SpnCertificate, permutation=None) -> dict:
    doc = {
        "outcome": "certificate",
        "psd_part": format_matrix(cert.psd_part),
        "nonneg_part": format_matrix(cert.nonneg_part),
        "residual": cert.residual,
        "trace": [str(step) for step in cert.trace],
    }
    if permutation is not None:
        doc["permutation"] = list(permutation)
    return doc


def _cmd_decompose(args) -> int:
    tol = _tolerances(args)
    a = read_matrix(args.matrix)
    # Constructive route first: directly, then through a permutation of the
    # ordered class (the certificate conjugates back exactly).
    if a.n <= 20:
        report = copositive_oracle(a, tol)
        if report.copositive:
            if _recursion_applicable(a, tol):
                try:
                    cert = spn_decompose_recursive(a, tol)
                    _emit(_certificate_doc(cert), args.format)
                    return _EXIT_OK
                except (NotInSupportedClassError, UndecidedError):
                    pass
            else:
                perm = permute_into_Mn(a, tol)
                if perm.found:
                    b = apply_group(perm.witness, a)
                    if _recursion_applicable(b, tol):
                        try:
                            cert_b = spn_decompose_recursive(b, tol)
                            ginv = inverse_group(perm.witness)
                            cert = SpnCertificate(
                                psd_part=apply_group(ginv, cert_b.psd_part),
                                nonneg_part=apply_group(ginv, cert_b.nonneg_part),
                                residual=cert_b.residual,
                                trace=cert_b.trace,
                            )
                            _emit(
                                _certificate_doc(cert, permutation=perm.witness.perm),
                                args.format,
                            )
                            return _EXIT_OK
                        except (NotInSupportedClassError, UndecidedError):
                            pass
    try:
        result = spn_oracle(a, tol)
    except UndecidedError as exc:
        _emit({"outcome": "undecided", "detail": str(exc)}, args.format)
        return _EXIT_UNDECIDED
    if isinstance(result, DnnWitness):
        doc = {
            "outcome": "witness",
            "X": format_matrix(result.x),
            "objective": result.objective,
        }
        _emit(doc, args.format)
        return _EXIT_NEGATIVE
    _emit(_certificate_doc(result), args.format)
    return _EXIT_OK


def _cmd_stqp(args) -> int:
    tol = _tolerances(args)
    if args.separable:
        alpha = read_vector(args.separable[0])
        beta = read_vector(args.separable[1])
        inst = build_separable(alpha, beta)
    elif args.matrix:
        inst = raw_instance(read_matrix(args.matrix))
    else:
        print("stqp needs a matrix file or --separable", file=sys.stderr)
        return _EXIT_USAGE
    report = certify_tightness(inst, tol)
    doc = {
        "z_star": report.z_star,
        "minimizer": None
        if report.minimizer is None
        else [float(x) for x in report.minimizer],
        "z_spn": None if report.z_spn_undecided else report.z_spn,
        "z_spn_interval": [report.z_spn_interval[0], report.z_spn_interval[1]],
        "z_dnn": report.z_dnn,
        "gap": report.gap,
        "tight": report.tight,
        "certificates": list(report.certificates),
    }
    _emit(doc, args.format)
    if report.z_spn_undecided or report.tight is None:
        return _EXIT_UNDECIDED
    return _EXIT_OK if report.tight else _EXIT_NEGATIVE


def _cmd_orbit(args) -> int:
    tol = _tolerances(args)
    a = read_matrix(args.matrix)
    permute = permute_into_Mn(a, tol)
    rescale = rescale_into_Mn(a, tol)
    doc = {"permute": _orbit_json(permute), "rescale": _orbit_json(rescale)}
    found = permute.found or rescale.found
    if a.n <= 8:
        joint = joint_orbit_search(a, tol)
        doc["joint"] = _orbit_json(joint)
        found = found or joint.found
    else:
        doc["joint"] = {"skipped": f"joint search is capped at n = 8, got n = {a.n}"}
    _emit(doc, args.format)
    return _EXIT_OK if found else _EXIT_NEGATIVE


def _adjacency(n: int, edges) -> dict:
    adj = {str(v): [] for v in range(1, n + 1)}
    for i, j in sorted(edges):
        adj[str(i)].append(j)
        adj[str(j)].append(i)
    return {v: sorted(nbrs) for v, nbrs in adj.items()}


def _cmd_signgraph(args) -> int:
    tol = _tolerances(args)
    a = read_matrix(args.matrix)
    graphs = extract_sign_graphs(a, tol)
    if args.dot:
        sys.stdout.write(edges_to_dot(graphs.n, graphs.pos_edges, "positive"))
        sys.stdout.write(edges_to_dot(graphs.n, graphs.neg_edges, "negative"))
        return _EXIT_OK
    filter_ok = orbit_necessary_filter(a, tol)
    doc = {
        "n": graphs.n,
        "pos_edges": sorted([list(e) for e in graphs.pos_edges]),
        "neg_edges": sorted([list(e) for e in graphs.neg_edges]),
        "pos_adjacency": _adjacency(graphs.n, graphs.pos_edges),
        "neg_adjacency": _adjacency(graphs.n, graphs.neg_edges),
        "pos_threshold": is_threshold(graphs.n, graphs.pos_edges),
        "neg_threshold": is_threshold(graphs.n, graphs.neg_edges),
        "orbit_filter": filter_ok,
    }
    _emit(doc, args.format)
    return _EXIT_OK if filter_ok else _EXIT_NEGATIVE


def _cmd_selftest(args) -> int:
    tol = _tolerances(args)
    if args.suite:
        results = [run_suite(args.suite, seed=args.seed, cases=args.cases, tol=tol)]
    else:
        results = run_all(seed=args.seed, cases=args.cases, tol=tol)
    if args.format == "json":
        doc = {
            "seed": args.seed,
            "suites": [
                {
                    "name": r.name,
                    "cases": r.cases,
                    "failures": r.failures,
                    "passed": r.passed,
                    "notes": list(r.notes),
                }
                for r in results
            ],
        }
        print(json.dumps(doc, indent=2))
    else:
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            print(f"{r.name}: cases={r.cases} failures={r.failures} [{status}]")
            for note in r.notes:
                print(f"    {note}")
    return _EXIT_OK if all(r.passed for r in results) else _EXIT_NEGATIVE


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spnkit",
        description="Matrix class tests, PSD-plus-nonnegative splittings, "
        "orbit searches, sign graphs, and simplex-QP relaxations.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--eps-ord", dest="eps_ord", type=float, default=1e-9,
                        help="sign/ordering comparison slack (default 1e-9)")
    common.add_argument("--eps-psd", dest="eps_psd", type=float, default=1e-8,
                        help="eigenvalue slack for PSD checks (default 1e-8)")
    common.add_argument("--eps-feas", dest="eps_feas", type=float, default=1e-8,
                        help="feasibility residual slack (default 1e-8)")
    common.add_argument("--eps-opt", dest="eps_opt", type=float, default=1e-6,
                        help="bisection width target (default 1e-6)")
    common.add_argument("--max-iter", dest="max_iter", type=int, default=100_000,
                        help="projection solver iteration cap (default 100000)")
    common.add_argument("--format", choices=("json", "text"), default="json",
                        help="output format (default json)")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for randomized suites (default 0)")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common],
                       help="matrix class labels, positive index, row signs")
    p.add_argument("matrix")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("decompose", parents=[common],
                       help="PSD-plus-nonnegative split or dual witness")
    p.add_argument("matrix")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("stqp", parents=[common],
                       help="simplex quadratic program relaxation report")
    p.add_argument("matrix", nargs="?")
    p.add_argument("--separable", nargs=2, metavar=("ALPHA", "BETA"),
                   help="build the objective from vector files")
    p.set_defaults(func=_cmd_stqp)

    p = sub.add_parser("orbit", parents=[common],
                       help="permutation/rescaling/joint orbit search")
    p.add_argument("matrix")
    p.set_defaults(func=_cmd_orbit)

    p = sub.add_parser("signgraph", parents=[common],
                       help="sign graphs and the threshold filter")
    p.add_argument("matrix")
    p.add_argument("--dot", action="store_true", help="emit DOT text")
    p.set_defaults(func=_cmd_signgraph)

    p = sub.add_parser("selftest", parents=[common],
                       help="randomized property suites")
    p.add_argument("--cases", type=int, default=1000,
                   help="cases per suite (default 1000)")
    p.add_argument("--suite", choices=sorted(SUITES), default=None,
                   help="run a single suite")
    p.set_defaults(func=_cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return _EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    except (DimensionTooLargeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    except UndecidedError as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return _EXIT_UNDECIDED
    except SpnKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
