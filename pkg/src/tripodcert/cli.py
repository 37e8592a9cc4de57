"""Command-line interface.

Exit status: 0 when something was found or verified, 1 for a negative
result (no tripod, a hitting set, an invalid certificate), 2 for bad input.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time

from .bounds import ROUTES, BoundTable, G5
from .certify import certify, certify_edges
from .errors import PreconditionError, SearchFailure
from .generators import GENERATORS, InstanceSpec, generate
from .oracles import OracleCapError, brute_edge_packing_number, brute_packing_number
from .serialize import (DocumentError, dump_certificate, dump_instance,
                        load_certificate, load_instance, stringify, to_dot)
from .tripods import find_tripod, tripod_exists, verify_certificate

OK, NEGATIVE, BAD_INPUT = 0, 1, 2


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise DocumentError(f"{path}: {exc.strerror}") from None


def _bounds(args) -> BoundTable:
    return BoundTable(G5.parse(args.g5), args.route)


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _param(text: str) -> tuple:
    key, sep, raw = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return key.replace("-", "_"), value


def cmd_detect(args) -> int:
    d = load_instance(_read(args.instance))
    if not tripod_exists(d):
        print("no tripod")
        return NEGATIVE
    r = find_tripod(d)
    print(json.dumps({"s1": r.s1, "s2": r.s2, "t": r.t, "c": r.c,
                      "branch1": list(r.branch1.vertices), "branch2": list(r.branch2.vertices),
                      "tail": list(r.tail.vertices)}, indent=1))
    return OK


def cmd_certify(args) -> int:
    d = load_instance(_read(args.instance))
    bounds = _bounds(args)
    run = certify_edges if args.edges else certify
    cert = run(d, args.k, bounds)
    verified = bool(verify_certificate(d, args.k, cert))
    print(dump_certificate(cert, args.k, bounds, verified))
    return OK if cert.is_packing else NEGATIVE


def cmd_verify(args) -> int:
    d = load_instance(_read(args.instance))
    cert, k, doc = load_certificate(_read(args.certificate))
    snapshot = doc.get("bounds")
    if snapshot is not None and not cert.is_packing:
        # the claimed bound must be what the recorded bound table gives
        try:
            table = BoundTable(G5.parse(str(snapshot["g5"])), snapshot["route"])
            expected = table.f1(k)
        except (KeyError, TypeError, PreconditionError, SearchFailure) as exc:
            raise DocumentError(f"bounds: unusable bound table ({exc})") from None
        if cert.bound != expected or snapshot.get("f1") != expected:
            print(f"invalid: bound clause: claimed bound {cert.bound} but f1({k}) = {expected}")
            return NEGATIVE
    check = verify_certificate(d, k, cert)
    if check:
        print("valid")
        return OK
    print(f"invalid: {check.reason}")
    if check.witness is not None:
        print(f"witness: {check.witness}")
    return NEGATIVE


def cmd_gen(args) -> int:
    spec = InstanceSpec(args.name, dict(args.param), args.seed)
    print(dump_instance(stringify(generate(spec))))
    return OK


def cmd_bounds(args) -> int:
    table = _bounds(args)
    for name, value in table.rows(args.k):
        print(f"{name}\t{value}")
    return OK


def _bench_specs(path: str) -> list:
    """One spec per line: ``name seed key=value ...``; blank lines and ``#`` comments skipped."""
    specs = []
    for lineno, line in enumerate(_read(path).splitlines(), 1):
        line = line.split("#", 1)[0].split()
        if not line:
            continue
        try:
            name, seed = line[0], int(line[1]) if len(line) > 1 else 0
            params = dict(_param(tok) for tok in line[2:])
        except (ValueError, argparse.ArgumentTypeError) as exc:
            raise DocumentError(f"line {lineno}: {exc}") from None
        specs.append(InstanceSpec(name, params, seed))
    return specs


def cmd_bench(args) -> int:
    bounds = _bounds(args)
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["name", "seed", "k", "kind", "size", "seconds", "verified", "brute"])
    for spec in _bench_specs(args.specs):
        d = generate(spec)
        start = time.perf_counter()
        cert = (certify_edges if args.edges else certify)(d, args.k, bounds)
        seconds = time.perf_counter() - start
        verified = bool(verify_certificate(d, args.k, cert))
        size = len(cert.packing) if cert.is_packing else len(cert.hitting_set)
        brute = ""
        if args.cap:
            oracle = brute_edge_packing_number if args.edges else brute_packing_number
            try:
                brute = oracle(d, cap=args.cap)
            except OracleCapError:
                brute = "capped"
        out.writerow([spec.name, spec.seed, args.k, cert.kind, size, f"{seconds:.4f}",
                      verified, brute])
    return OK


def cmd_dot(args) -> int:
    d = load_instance(_read(args.instance))
    cert = load_certificate(_read(args.certificate))[0] if args.certificate else None
    sys.stdout.write(to_dot(d, cert))
    return OK


def _bound_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--route", choices=ROUTES, default="ramsey", help="how g4 is bounded")
    p.add_argument("--g5", default="t", help="expression in t, or a table such as 1:1,2:3")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tripodcert",
                                     description="Certified tripod packing and hitting sets.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", help="find one tripod")
    p.add_argument("instance", help="instance file, or - for stdin")
    p.set_defaults(run=cmd_detect)

    p = sub.add_parser("certify", help="k disjoint tripods or a small hitting set")
    p.add_argument("instance")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--edges", action="store_true", help="edge-disjoint version")
    _bound_options(p)
    p.set_defaults(run=cmd_certify)

    p = sub.add_parser("verify", help="check a certificate against an instance")
    p.add_argument("instance")
    p.add_argument("certificate")
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("gen", help="generate an instance")
    p.add_argument("name", choices=GENERATORS)
    p.add_argument("--param", type=_param, action="append", default=[], metavar="KEY=VALUE")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=cmd_gen)

    p = sub.add_parser("bounds", help="print the bound table")
    p.add_argument("--k", type=_positive, required=True)
    _bound_options(p)
    p.set_defaults(run=cmd_bounds)

    p = sub.add_parser("bench", help="certify a list of generated instances, CSV out")
    p.add_argument("specs", help="file with one 'name seed key=value ...' line per instance")
    p.add_argument("--k", type=_positive, default=2)
    p.add_argument("--edges", action="store_true")
    p.add_argument("--cap", type=int, default=0, help="also run the brute-force oracle up to this size")
    _bound_options(p)
    p.set_defaults(run=cmd_bench)

    p = sub.add_parser("dot", help="Graphviz export")
    p.add_argument("instance")
    p.add_argument("--certificate")
    p.set_defaults(run=cmd_dot)
    return parser


def main(argv: list | None = None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    try:
        return args.run(args)
    except (PreconditionError, SearchFailure) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
