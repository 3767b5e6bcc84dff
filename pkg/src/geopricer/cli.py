"""Command line front end.

Subcommands cover the full pipeline: generate instances, solve them
(exactly or approximately), decompose item posets, reduce other pricing
formulations into geometric form, run batch experiments, and verify
embeddings or decompositions produced elsewhere.

Exit codes: 0 success, 1 bad input or failed verification, 2 a guarded
cap was exceeded, 3 an internal consistency check failed.
"""

from __future__ import annotations

import argparse
import json
import sys

from .approx import ApproxConfig, smp_approx, uudp_min_approx
from .core import (
    MODELS,
    UUDP_MIN,
    instance_from_json,
    instance_to_json,
    rat_from_json,
)
from .errors import EXIT_CODE, GeopricerError
from .exact import DEFAULT_CAP, brute_force_smp, brute_force_uudp, solve_one_dim_uudp
from .generate import GeneratorSpec, generate
from .poset import decompose_chains_antichains, decomposition_problems
from .qptas import qptas_uudp2, smp_special_case_dp
from .reductions import (
    bipartite_from_json,
    bipartite_gvp_to_4smp,
    graph_from_json,
    highway_from_json,
    highway_to_2smp,
    random_permutation_embedding,
    set_preservation_problems,
    set_system_from_json,
    set_system_to_json,
    universal_embedding,
    vertex_cover_to_pricing,
)
from .rng import SeedStream
from .subroutines import balcan_blum_approx, embedding_from_json, verify_embedding


def _load_json(path: str) -> dict:
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as handle:
        return json.load(handle)


def _dump_json(data: dict, path: str | None) -> None:
    text = json.dumps(data, indent=2) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as handle:
            handle.write(text)


def _rat_list(text: str):
    return tuple(rat_from_json(part.strip()) for part in text.split(","))


def _cmd_generate(args) -> int:
    spec = GeneratorSpec(
        kind=args.kind,
        n=args.n,
        m=args.m,
        d=args.d,
        model=args.model,
        budgets=_rat_list(args.budgets),
        budget_weights=tuple(int(w) for w in args.weights.split(","))
        if args.weights
        else None,
        coord_lo=args.lo,
        coord_hi=args.hi,
        seed=args.seed,
    )
    _dump_json(instance_to_json(generate(spec)), args.out)
    return 0


def _cmd_solve(args) -> int:
    instance = instance_from_json(_load_json(args.infile))
    trace = None
    if args.algo == "approx":
        cfg = ApproxConfig(
            seed=args.seed,
            balcan_blum_trials=args.trials,
            brute_cap=args.cap,
        )
        if instance.model == UUDP_MIN:
            solution, trace = uudp_min_approx(instance, cfg)
        else:
            solution, trace = smp_approx(instance, cfg)
    elif args.algo == "oracle":
        if instance.model == UUDP_MIN:
            solution = brute_force_uudp(instance, cap=args.cap)
        else:
            solution = brute_force_smp(instance, cap=args.cap)
    elif args.algo == "one-dim":
        solution = solve_one_dim_uudp(instance)
    elif args.algo == "balcan-blum":
        solution = balcan_blum_approx(instance, args.trials, SeedStream(args.seed))
    elif args.algo == "qptas":
        solution = qptas_uudp2(instance, rat_from_json(args.epsilon))
    else:
        solution = smp_special_case_dp(instance)
    if args.trace is not None and trace is not None:
        _dump_json(trace.to_json(), args.trace)
    _dump_json(solution.to_json(), args.out)
    return 0


def _cmd_decompose(args) -> int:
    instance = instance_from_json(_load_json(args.infile))
    dec = decompose_chains_antichains(
        instance.items, rat_from_json(args.epsilon)
    )
    _dump_json(dec.to_json(), args.out)
    return 0


def _cmd_reduce(args) -> int:
    data = _load_json(args.infile)
    if args.kind == "highway":
        instance, corr = highway_to_2smp(highway_from_json(data))
        payload = instance_to_json(instance)
    elif args.kind == "gvp4":
        instance, corr = bipartite_gvp_to_4smp(bipartite_from_json(data))
        payload = instance_to_json(instance)
    elif args.kind == "vc":
        graph = graph_from_json(data)
        system = vertex_cover_to_pricing(graph)
        payload = set_system_to_json(system)
        corr = {
            "consumers": [
                {"kind": "edge", "index": i} for i in range(len(graph.edges))
            ]
            + [
                {"kind": "vertex", "index": v} for v in range(graph.vertices)
            ],
        }
    elif args.kind == "universal":
        instance, corr = universal_embedding(set_system_from_json(data))
        payload = instance_to_json(instance)
    else:
        system = set_system_from_json(data)
        bound = args.bound
        if bound is None:
            bound = max([len(s) for s, _ in system.consumers] + [1])
        instance, _, corr = random_permutation_embedding(
            system, bound, SeedStream(args.seed)
        )
        payload = instance_to_json(instance)
    _dump_json(payload, args.out)
    if args.map is not None:
        _dump_json(corr, args.map)
    return 0


def _cmd_bench(args) -> int:
    from . import bench

    path = args.config
    if path.endswith(".json"):
        config = _load_json(path)
    else:
        try:
            import tomllib
        except ModuleNotFoundError:
            import tomli as tomllib
        with open(path, "rb") as handle:
            config = tomllib.load(handle)
    if args.workers is not None:
        config["workers"] = args.workers
    report = bench.run_experiment(config)
    if args.csv is not None:
        report.to_csv(args.csv)
    if args.json is not None:
        report.to_json(args.json)
    aggregates = report.aggregates
    summary = ", ".join(f"{k}={report._cell(v)}" for k, v in aggregates.items())
    print(summary)
    return 0


def _cmd_verify(args) -> int:
    if args.kind == "embedding":
        source = instance_from_json(_load_json(args.source))
        target = instance_from_json(_load_json(args.target))
        emb = embedding_from_json(_load_json(args.map))
        ok, problem = verify_embedding(source, target, emb)
        if not ok:
            print(f"embedding check failed: {problem}")
            return 1
        print("embedding ok")
        return 0
    if args.kind == "sets":
        system = set_system_from_json(_load_json(args.source))
        target = instance_from_json(_load_json(args.target))
        problems = set_preservation_problems(system, target)
    else:
        instance = instance_from_json(_load_json(args.source))
        claim = _load_json(args.map)
        epsilon = rat_from_json(args.epsilon) if args.epsilon else None
        problems = decomposition_problems(
            instance.items, claim["antichains"], claim["chains"], epsilon
        )
    for problem in problems:
        print(problem)
    if problems:
        return 1
    print("ok")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geopricer",
        description="geometric multi-attribute pricing toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="emit a seeded random instance")
    gen.add_argument("--kind", default="random",
                     choices=("random", "chain", "antichain", "grid", "clustered"))
    gen.add_argument("--n", type=int, default=4)
    gen.add_argument("--m", type=int, default=4)
    gen.add_argument("--d", type=int, default=2)
    gen.add_argument("--model", default=UUDP_MIN, choices=sorted(MODELS))
    gen.add_argument("--budgets", default="1,2,3")
    gen.add_argument("--weights", default=None)
    gen.add_argument("--lo", type=int, default=0)
    gen.add_argument("--hi", type=int, default=9)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", default=None)
    gen.set_defaults(func=_cmd_generate)

    def solver_flags(p, algo=None):
        p.add_argument("--in", dest="infile", required=True)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--trials", type=int, default=64)
        p.add_argument("--cap", type=int, default=DEFAULT_CAP)
        p.add_argument("--epsilon", default="1")
        p.add_argument("--trace", default=None)
        p.add_argument("--out", default=None)
        if algo is None:
            p.add_argument(
                "--algo",
                default="approx",
                choices=("approx", "qptas", "smp-dp", "oracle",
                         "balcan-blum", "one-dim"),
            )
        else:
            p.set_defaults(algo=algo)
        p.set_defaults(func=_cmd_solve)

    solver_flags(sub.add_parser("solve", help="solve an instance file"))
    solver_flags(
        sub.add_parser("approx", help="polynomial approximation solver"),
        algo="approx",
    )
    solver_flags(
        sub.add_parser("qptas", help="two-dimensional near-optimal solver"),
        algo="qptas",
    )

    dec = sub.add_parser("decompose", help="chain/antichain decomposition")
    dec.add_argument("--in", dest="infile", required=True)
    dec.add_argument("--epsilon", required=True)
    dec.add_argument("--out", default=None)
    dec.set_defaults(func=_cmd_decompose)

    red = sub.add_parser("reduce", help="map other formulations to geometric")
    red.add_argument("--kind", required=True,
                     choices=("highway", "gvp4", "vc", "universal", "perm"))
    red.add_argument("--in", dest="infile", required=True)
    red.add_argument("--seed", type=int, default=0)
    red.add_argument("--bound", type=int, default=None)
    red.add_argument("--out", default=None)
    red.add_argument("--map", default=None)
    red.set_defaults(func=_cmd_reduce)

    ben = sub.add_parser("bench", help="batch experiments from a config file")
    ben.add_argument("--config", required=True)
    ben.add_argument("--csv", default=None)
    ben.add_argument("--json", default=None)
    ben.add_argument("--workers", type=int, default=None)
    ben.set_defaults(func=_cmd_bench)

    ver = sub.add_parser("verify", help="check embeddings and decompositions")
    ver.add_argument("--kind", required=True,
                     choices=("embedding", "decomposition", "sets"))
    ver.add_argument("--source", required=True)
    ver.add_argument("--target", default=None)
    ver.add_argument("--map", default=None)
    ver.add_argument("--epsilon", default=None)
    ver.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except GeopricerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CODE.get(type(exc), 1)
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
