"""Command line front end.

Subcommands: verify, search, bounds, project, product, paste,
run-fixtures.  Exit codes: 0 success, 1 verification failed, 2 input
error, 3 search found only the trivial clique.

Commands that create a code (search, project, product, paste) print the
new certificate as JSON on stdout after verifying it; diagnostics go to
stderr.  Reference paths inside a certificate resolve relative to the
certificate's own directory, so keep related certificates together.
"""
from __future__ import annotations

import argparse
import importlib.resources
import json
import sys
from pathlib import Path

from .bounds import bound_report
from .certificates import (
    Certificate,
    CertificateError,
    base_stabilizer_rows,
    build_code,
    load_certificate,
    verify_certificate,
)
from .clique import search_clique
from .compose import paste_distance2
from .errors import DIM_CAP_ENV, DimensionCapError, MixedSystem
from .graphs import WeightedGraph
from .projection import ProjectorSpec


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def _dims_list(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"dims must be comma-separated integers, got {text!r}")
    if not dims or any(d < 2 for d in dims):
        raise argparse.ArgumentTypeError("every dimension must be >= 2")
    return dims


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mixedqec",
        description="Construct, search, and certify mixed-alphabet quantum codes.")
    parser.add_argument(
        "--threads", type=_positive_int, default=1,
        help="accepted for interface compatibility; execution is single "
             "threaded and output does not depend on this value")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-9,
                        help="numeric tolerance (default 1e-9)")
    common.add_argument("--dim-cap", type=_positive_int, default=None,
                        help=f"state-vector dimension cap (default from "
                             f"{DIM_CAP_ENV} or 65536)")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common],
                       help="re-verify a certificate file")
    p.add_argument("cert", help="certificate JSON path")
    p.add_argument("--symbolic", action="store_true",
                   help="run only the symbolic verifier (combine with --numeric to run both)")
    p.add_argument("--numeric", action="store_true",
                   help="run only the numeric verifier (combine with --symbolic to run both)")
    p.add_argument("--distance", action="store_true",
                   help="also measure the distance by direct scan")
    p.add_argument("--update", action="store_true",
                   help="write the refreshed verification block back to the file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", parents=[common],
                       help="search for a coding clique and emit a certificate")
    p.add_argument("--graph-p", required=True, metavar="FILE",
                   help="first layer graph (JSON)")
    p.add_argument("--graph-r", metavar="FILE", default=None,
                   help="second layer graph (JSON); omit for a single layer")
    p.add_argument("--distance", type=_positive_int, default=2)
    p.add_argument("--target", type=_positive_int, default=2,
                   help="stop once a clique of this size is found")
    p.add_argument("--budget", type=_nonneg_int, default=100000,
                   help="search node budget; results are deterministic per budget")
    p.add_argument("--mode", choices=("group", "set"), default="group")
    p.add_argument("--name", default=None, help="certificate name")
    p.add_argument("--out", metavar="FILE", default=None,
                   help="also write the certificate to this path")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("bounds", help="print size bounds for given parameters")
    p.add_argument("--dims", type=_dims_list, required=True,
                   help="comma separated particle dimensions, e.g. 4,4,4,4,4,2")
    p.add_argument("--distance", type=_positive_int, required=True)
    p.add_argument("--K", type=_positive_int, default=None,
                   help="claimed size; adds a verdict to the report")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("project", parents=[common],
                       help="project an ancilla code onto kept levels")
    p.add_argument("ancilla", help="ancilla certificate path")
    p.add_argument("--keep", required=True, metavar="JSON",
                   help='kept levels per particle, 1-based, e.g. \'{"5": [0, 1]}\'')
    p.add_argument("--name", default=None)
    p.add_argument("--out", metavar="FILE", default=None)
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("product", parents=[common],
                       help="tensor two codes particle-by-particle")
    p.add_argument("cert_a", help="first factor certificate")
    p.add_argument("cert_b", help="second factor certificate")
    p.add_argument("--name", default=None)
    p.add_argument("--out", metavar="FILE", default=None)
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("paste", parents=[common],
                       help="extend a distance-2 code by pasting qudit blocks")
    p.add_argument("base", help="base certificate (clique or stabilizer form)")
    p.add_argument("--blocks", type=_positive_int, default=1)
    p.add_argument("--block-dim", type=_positive_int, default=2)
    p.add_argument("--name", default=None)
    p.add_argument("--out", metavar="FILE", default=None)
    p.set_defaults(func=cmd_paste)

    p = sub.add_parser("run-fixtures", parents=[common],
                       help="verify the shipped fixture certificates")
    p.add_argument("--dir", default=None,
                   help="fixture directory (default: the packaged set)")
    p.set_defaults(func=cmd_run_fixtures)

    return parser


def _print_report(report: dict) -> None:
    print(json.dumps(report, indent=2, sort_keys=True))


def _emit_certificate(cert: Certificate, out: str | None) -> None:
    text = json.dumps(cert.to_json(), indent=2, sort_keys=True)
    print(text)
    if out:
        Path(out).write_text(text + "\n")


def _verify_and_emit(cert: Certificate, args, base_dir: str = ".",
                     extra: dict | None = None) -> int:
    report = verify_certificate(cert, base_dir, tol=args.tol, cap=args.dim_cap)
    if report["verdict"] != "pass":
        print(json.dumps(report, indent=2, sort_keys=True), file=sys.stderr)
        return 1
    if extra:
        cert.verification.update(extra)
    _emit_certificate(cert, args.out)
    return 0


def cmd_verify(args) -> int:
    cert = load_certificate(args.cert)
    run_sym = args.symbolic or not (args.symbolic or args.numeric)
    run_num = args.numeric or not (args.symbolic or args.numeric)
    report = verify_certificate(cert, Path(args.cert).parent,
                                run_symbolic=run_sym, run_numeric=run_num,
                                distance=args.distance, tol=args.tol,
                                cap=args.dim_cap)
    _print_report(report)
    if args.update:
        cert.save(args.cert)
    return 0 if report["verdict"] == "pass" else 1


def _load_graph(path: str) -> WeightedGraph:
    try:
        return WeightedGraph.from_json(json.loads(Path(path).read_text()))
    except FileNotFoundError as exc:
        raise CertificateError(f"graph file not found: {path}") from exc
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise CertificateError(f"bad graph file {path}: {exc}") from exc


def cmd_search(args) -> int:
    graphs = [_load_graph(args.graph_p)]
    if args.graph_r is not None:
        graphs.append(_load_graph(args.graph_r))
    res = search_clique(graphs, d=args.distance, target_K=args.target,
                        budget=args.budget, mode=args.mode)
    clique = res.clique
    if clique.K <= 1:
        print(f"search exhausted ({res.nodes_used} nodes, flag {res.flag}): "
              f"only the trivial clique found", file=sys.stderr)
        return 3
    cons = {
        "type": "composite_clique",
        "graphs": [g.to_json() for g in clique.graphs],
        "vectors": [[list(part.entries) for part in v] for v in clique.vectors],
    }
    name = args.name or f"search_K{clique.K}_d{args.distance}"
    cert = Certificate(name, clique.system(), clique.K, args.distance, cons)
    print(f"found K = {clique.K} after {res.nodes_used} nodes (flag {res.flag})",
          file=sys.stderr)
    return _verify_and_emit(cert, args)


def cmd_bounds(args) -> int:
    report = bound_report(args.dims, args.distance, K=args.K)
    _print_report(report.to_json())
    return 0


def cmd_project(args) -> int:
    try:
        keep = json.loads(args.keep)
        if not isinstance(keep, dict):
            raise ValueError("expected an object of particle -> levels")
    except (json.JSONDecodeError, ValueError) as exc:
        raise CertificateError(f"bad --keep value: {exc}") from exc
    anc_cert = load_certificate(args.ancilla)
    anc_dir = Path(args.ancilla).parent
    ancilla = build_code(anc_cert, anc_dir, cap=args.dim_cap)
    try:
        spec = ProjectorSpec.from_json(ancilla.system, {"keep": keep})
    except (TypeError, ValueError) as exc:
        raise CertificateError(f"bad --keep value: {exc}") from exc
    cons = {
        "type": "projection",
        "ancilla": args.ancilla,
        "projector": spec.to_json(),
    }
    tmp = Certificate("_", MixedSystem(((2,),)), 1, anc_cert.d, cons)
    code = build_code(tmp, ".", cap=args.dim_cap)
    name = args.name or f"{anc_cert.name}_projected"
    cert = Certificate(name, code.system, code.K, anc_cert.d, cons)
    return _verify_and_emit(cert, args)


def cmd_product(args) -> int:
    a = load_certificate(args.cert_a)
    b = load_certificate(args.cert_b)
    cons = {"type": "product", "refs": [args.cert_a, args.cert_b]}
    tmp = Certificate("_", MixedSystem(((2,),)), 1, a.d, cons)
    code = build_code(tmp, ".", cap=args.dim_cap)
    name = args.name or f"{a.name}_x_{b.name}"
    cert = Certificate(name, code.system, code.K, a.d, cons)
    return _verify_and_emit(cert, args)


def cmd_paste(args) -> int:
    base = load_certificate(args.base)
    base_code = build_code(base, Path(args.base).parent, cap=args.dim_cap)
    rows = base_stabilizer_rows(base, base_code)
    res = paste_distance2(rows, base_code, args.blocks, args.block_dim,
                          tol=args.tol, cap=args.dim_cap)
    cons = {
        "type": "pasting",
        "refs": [args.base],
        "blocks": args.blocks,
        "block_dim": args.block_dim,
    }
    name = args.name or f"{base.name}_pasted"
    cert = Certificate(name, res.system, res.K, 2, cons)
    return _verify_and_emit(cert, args,
                            extra={"rows": [list(r.text) for r in res.rows]})


def _default_fixture_dir() -> Path:
    return Path(str(importlib.resources.files("mixedqec").joinpath("fixtures")))


def cmd_run_fixtures(args) -> int:
    root = Path(args.dir) if args.dir else _default_fixture_dir()
    if not root.is_dir():
        raise CertificateError(f"fixture directory not found: {root}")
    positives = sorted(root.glob("*.json"))
    negatives = sorted((root / "negatives").glob("*.json"))
    if not positives:
        raise CertificateError(f"no fixtures in {root}")
    ok = 0
    total = 0
    for path in positives:
        total += 1
        try:
            cert = load_certificate(path)
            report = verify_certificate(cert, root, tol=args.tol,
                                        cap=args.dim_cap)
        except (CertificateError, ValueError) as exc:
            print(f"FAIL {path.name}: {exc}")
            continue
        if report["verdict"] == "pass":
            ok += 1
            print(f"PASS {path.name}")
        else:
            print(f"FAIL {path.name}: {'; '.join(report.get('failures', ['?']))}")
    for path in negatives:
        total += 1
        try:
            cert = load_certificate(path)
            report = verify_certificate(cert, root / "negatives", tol=args.tol,
                                        cap=args.dim_cap)
        except (CertificateError, ValueError) as exc:
            ok += 1
            print(f"PASS negatives/{path.name} (rejected: {exc})")
            continue
        if report["verdict"] == "pass":
            print(f"FAIL negatives/{path.name}: unexpectedly verified")
        else:
            reason = "; ".join(report.get("failures", [report.get("error", "?")]))
            ok += 1
            print(f"PASS negatives/{path.name} (failed as expected: {reason})")
    print(f"{ok}/{total} fixtures behaved as expected")
    return 0 if ok == total else 1


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CertificateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DimensionCapError as exc:
        print(f"error: {exc}; raise {DIM_CAP_ENV} or pass --dim-cap",
              file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
