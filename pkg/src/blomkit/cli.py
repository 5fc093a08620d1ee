"""Command-line entry point: ``blomkit <command> ...``.

Exit codes: 0 success / property holds, 1 property fails, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from blomkit import bench, material
from blomkit.blom import SchemeParams, gen_vandermonde, setup_original_scheme
from blomkit.field import PrimeField, find_primitive_element
from blomkit.modified import (
    NetworkTopology,
    build_modified_adjacency,
    select_public_matrix,
    setup_modified_scheme,
)
from blomkit.security import InconsistentSystemError, check_lambda_secure, recover_secret_matrix

log = logging.getLogger("blomkit")

EXIT_OK = 0
EXIT_PROPERTY_FAILS = 1
EXIT_USAGE = 2


def _node_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated node ids, got {text!r}") from None


def cmd_demo(args) -> int:
    report = bench.demo_paper_example()
    sys.stdout.write(report.text())
    return EXIT_OK if report.ok else EXIT_PROPERTY_FAILS


def cmd_keygen(args) -> int:
    topo = NetworkTopology.load(args.topology)
    f = PrimeField(args.q)
    if args.scheme == "vandermonde":
        instance = setup_original_scheme(SchemeParams(f, topo.n, args.lam), rng_seed=args.seed)
    else:
        instance = setup_modified_scheme(topo, args.lam, f, rng_seed=args.seed)
    paths = material.save_directory(instance.nodes, args.out)
    log.info("wrote %d key files to %s", len(paths), args.out)
    print(json.dumps({"scheme": instance.scheme, "n": instance.n, "lambda": instance.lam, "q": f.q, "files": len(paths)}))
    return EXIT_OK


def cmd_agree(args) -> int:
    nodes = material.load_directory(args.material)
    outcome = bench.run_key_agreement_exchange(nodes, args.i, args.j)
    print(json.dumps(outcome.to_dict()))
    return EXIT_OK if outcome.agreement else EXIT_PROPERTY_FAILS


def cmd_bench(args) -> int:
    configs = bench.config_from_file(args.config)
    if args.baseline:
        configs = bench.with_baseline(configs, args.baseline)
    rows = bench.run_grid(configs)
    text = bench.rows_to_csv(rows)
    if args.out:
        Path(args.out).write_text(text)
        log.info("wrote %d rows to %s", len(rows), args.out)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify_security(args) -> int:
    topo = NetworkTopology.load(args.topology)
    f = PrimeField(args.q)
    if args.scheme == "vandermonde":
        g = gen_vandermonde(SchemeParams(f, topo.n, args.lam), find_primitive_element(f))
    else:
        g = select_public_matrix(build_modified_adjacency(topo, f), args.lam)
    report = check_lambda_secure(g, args.lam, f, subset_limit=args.subset_limit, rng_seed=args.seed)
    print(json.dumps(report.to_dict()))
    return EXIT_OK if report.independent else EXIT_PROPERTY_FAILS


def cmd_attack(args) -> int:
    nodes = material.load_directory(args.material)
    g = material.public_matrix_from_materials(nodes)
    f = nodes[1].field
    missing = [k for k in args.compromise if k not in nodes]
    if missing:
        print(f"error: no key material for nodes {missing}", file=sys.stderr)
        return EXIT_USAGE
    try:
        result = recover_secret_matrix({k: nodes[k].private_row for k in args.compromise}, g, f)
    except InconsistentSystemError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PROPERTY_FAILS
    print(json.dumps(result.to_dict()))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="blomkit", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("demo", help="run the six-node worked example against golden values")
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("keygen", help="provision per-node key material as JSON files")
    p.add_argument("--topology", required=True)
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--scheme", choices=["vandermonde", "adjacency"], default="adjacency")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("agree", help="run the key exchange between two provisioned nodes")
    p.add_argument("--material", required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.set_defaults(func=cmd_agree)

    p = sub.add_parser("bench", help="run the effort-comparison grid")
    p.add_argument("--config", required=True)
    p.add_argument("--out")
    p.add_argument("--baseline", choices=["vandermonde", "random-matrix"])
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("verify-security", help="check that every lambda+1 public columns are independent")
    p.add_argument("--topology", required=True)
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--scheme", choices=["vandermonde", "adjacency"], default="adjacency")
    p.add_argument("--subset-limit", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify_security)

    p = sub.add_parser("attack", help="pool compromised nodes' rows and solve for D")
    p.add_argument("--material", required=True)
    p.add_argument("--compromise", type=_node_list, required=True)
    p.set_defaults(func=cmd_attack)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (ValueError, LookupError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
