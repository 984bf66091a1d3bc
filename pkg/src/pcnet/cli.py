"""Command line entry point: ``pcnet <subcommand> ...``."""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
import urllib.request
from pathlib import Path

from . import __version__
from .ensemble import PcConfig, TriggerPolicy, extract_trigger_set, pc_scores
from .experiments import (
    ExperimentConfig,
    load_dataset,
    run_bias_variance,
    run_keyword_experiment,
    run_spreader_experiment,
    sir_config_for,
    write_manifest,
)
from .graph import DiameterPolicy, GraphStats, graph_stats, load_edge_list, write_edge_list
from .perturb import PerturbConfig
from .scoring import ScoreVector

log = logging.getLogger("pcnet")

SNAP_URLS = {
    "email-Enron": "https://snap.stanford.edu/data/email-Enron.txt.gz",
    "soc-Epinions1": "https://snap.stanford.edu/data/soc-Epinions1.txt.gz",
    "wiki-Vote": "https://snap.stanford.edu/data/wiki-Vote.txt.gz",
}


def _global_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", help="JSON experiment config")
    p.add_argument("--seed", type=int, help="master seed (overrides config)")
    p.add_argument("--jobs", type=int, help="parallel workers (overrides config)")
    p.add_argument("--out-dir", help="output directory (overrides config)")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _load_graph(path: str, raw: bool):
    if raw:
        return load_dataset({"path": path})
    return load_edge_list(path)


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags()
    parser = argparse.ArgumentParser(prog="pcnet", description=__doc__)
    parser.add_argument("--version", action="version", version=f"pcnet {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prepare-data", parents=[common], help="clean a raw edge list into a weighted graph file")
    p.add_argument("input", nargs="?", help="raw edge list (.txt or .txt.gz)")
    p.add_argument("--download", choices=sorted(SNAP_URLS), help="fetch a SNAP dataset into --out-dir first")
    p.add_argument("--output", help="cleaned edge list path (default: <out-dir>/<name>.clean.txt)")
    p.add_argument("--no-lcc", action="store_true", help="keep every connected component")
    p.add_argument("--no-symmetrize", action="store_true", help="sum both orientations of a pair instead of collapsing them")
    p.add_argument("--keep-weights", action="store_true", help="do not replace weights by the max endpoint degree")

    p = sub.add_parser("stats", parents=[common], help="size, diameter, threshold and max scores of graphs")
    p.add_argument("graphs", nargs="+")
    p.add_argument("--raw", action="store_true", help="inputs are raw SNAP files; clean them on the fly")
    p.add_argument("--exact-cutoff", type=int, default=DiameterPolicy.exact_cutoff)
    p.add_argument("--output", help="CSV path (default: stdout)")

    p = sub.add_parser("pc-score", parents=[common], help="perturb-and-combine vertex scores")
    p.add_argument("graph")
    p.add_argument("--raw", action="store_true")
    p.add_argument("--scorer", choices=["cu", "cw", "pr"], default="cu")
    p.add_argument("--M", type=int, default=16)
    p.add_argument("--eps-add", type=float, default=0.0)
    p.add_argument("--eps-del", type=float, default=0.0)
    p.add_argument("--model", choices=["er", "cl"], default="er")
    p.add_argument("--weight-aware", type=int, choices=[0, 1], default=0)
    p.add_argument("--deletion-sampling", choices=["pairs", "edges"], default="pairs")
    p.add_argument("--output", help="score CSV path (default: <out-dir>/<graph>_<scorer>_pc.csv)")

    p = sub.add_parser("sir", parents=[common], help="SIR severity of a trigger set")
    p.add_argument("graph")
    p.add_argument("--raw", action="store_true")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--scores", help="score CSV from pc-score; trigger set chosen by --policy")
    src.add_argument("--seeds", help="comma-separated vertex labels")
    p.add_argument("--policy", choices=["main_core_after_ceiling", "top_k", "top_fraction"], default="main_core_after_ceiling")
    p.add_argument("--k", type=int)
    p.add_argument("--fraction", type=float)
    p.add_argument("--rounding", choices=["ceil", "half_up"], default="ceil")
    p.add_argument("--beta", type=float, help="infection probability (default: 1/lambda1)")
    p.add_argument("--gamma", type=float, default=0.8)
    p.add_argument("--runs", type=int, default=100)
    p.add_argument("--max-steps", type=int, default=10_000)
    p.add_argument("--output", help="profile CSV path")

    for name, help_ in (
        ("spreader-exp", "grid search on a social network, SIR evaluation"),
        ("keyword-exp", "grid search on a token corpus, keyword P/R/F1"),
        ("bias-variance", "NDCG bias/variance of original vs P&C rankings"),
    ):
        sub.add_parser(name, parents=[common], help=help_)
    return parser


def _experiment_config(args) -> ExperimentConfig:
    if not args.config:
        raise SystemExit(f"{args.command} needs --config")
    cfg = ExperimentConfig.load(args.config)
    if args.seed is not None:
        cfg.seed = args.seed
    if args.jobs is not None:
        cfg.jobs = args.jobs
    if args.out_dir is not None:
        cfg.out_dir = args.out_dir
    elif not os.path.isabs(cfg.out_dir):
        cfg.out_dir = cfg.resolve(cfg.out_dir)
    return cfg


def cmd_prepare_data(args) -> int:
    out_dir = Path(args.out_dir or ".")
    out_dir.mkdir(parents=True, exist_ok=True)
    src = args.input
    if args.download:
        url = SNAP_URLS[args.download]
        src = str(out_dir / Path(url).name)
        log.info("downloading %s", url)
        urllib.request.urlretrieve(url, src)
    if not src:
        raise SystemExit("prepare-data needs an input file or --download")
    g = load_dataset(
        {"path": src, "symmetrize": not args.no_symmetrize, "keep_largest_component": not args.no_lcc, "default_weights": not args.keep_weights}
    )
    name = Path(src).name.split(".")[0]
    target = args.output or str(out_dir / f"{name}.clean.txt")
    write_edge_list(g, target)
    print(f"{target}: n={g.n} m={g.m}")
    return 0


def cmd_stats(args) -> int:
    fh = open(args.output, "w", newline="") if args.output else sys.stdout
    try:
        w = csv.writer(fh)
        w.writerow(GraphStats.CSV_HEADER)
        for path in args.graphs:
            g = _load_graph(path, args.raw)
            st = graph_stats(g, DiameterPolicy(exact_cutoff=args.exact_cutoff))
            w.writerow(st.csv_row(Path(path).name.split(".")[0]))
    finally:
        if args.output:
            fh.close()
    return 0


def cmd_pc_score(args) -> int:
    g = _load_graph(args.graph, args.raw)
    seed = args.seed if args.seed is not None else 0
    pert = PerturbConfig(args.eps_add, args.eps_del, args.model, bool(args.weight_aware), seed, args.deletion_sampling)
    cfg = PcConfig(args.M, pert, args.scorer)
    s = pc_scores(g, cfg, jobs=args.jobs or 1)
    name = Path(args.graph).name.split(".")[0]
    s.graph_tag = name
    out_dir = Path(args.out_dir or ".")
    out_dir.mkdir(parents=True, exist_ok=True)
    target = Path(args.output) if args.output else out_dir / f"{name}_{args.scorer}_pc.csv"
    s.to_csv(target, labels=g.labels)
    write_manifest(
        target.with_suffix(".json"),
        {"command": "pc-score", "version": __version__, "graph": args.graph, "n": g.n, "m": g.m, "config": cfg.to_dict(), "output": str(target)},
    )
    print(target)
    return 0


def cmd_sir(args) -> int:
    from .sir import trigger_set_severity

    g = _load_graph(args.graph, args.raw)
    index = {str(lab): i for i, lab in enumerate(g.labels)} if g.labels is not None else None
    if args.scores:
        s = ScoreVector.from_csv(args.scores)
        if len(s) != g.n:
            raise SystemExit("score file does not match the graph")
        vertices = extract_trigger_set(s, TriggerPolicy(args.policy, args.k, args.fraction, args.rounding))
    else:
        labels = [t.strip() for t in args.seeds.split(",") if t.strip()]
        vertices = [index[t] if index is not None else int(t) for t in labels]
    sir = {"beta": args.beta, "gamma": args.gamma, "runs": args.runs, "max_steps": args.max_steps}
    if args.seed is not None:
        sir["seed"] = args.seed
    cfg = sir_config_for(g, sir, args.seed or 0)
    prof = trigger_set_severity(g, vertices, cfg, jobs=args.jobs or 1)
    out_dir = Path(args.out_dir or ".")
    out_dir.mkdir(parents=True, exist_ok=True)
    target = Path(args.output) if args.output else out_dir / f"{Path(args.graph).name.split('.')[0]}_sir.csv"
    prof.to_csv(target)
    write_manifest(target.with_suffix(".json"), {"command": "sir", "version": __version__, "sir": cfg.to_dict(), "trigger_size": len(prof.vertices), **prof.report()})
    print(json.dumps({"trigger_size": len(prof.vertices), **prof.report()}))
    return 0


def cmd_experiment(args) -> int:
    cfg = _experiment_config(args)
    runner = {"spreader-exp": run_spreader_experiment, "keyword-exp": run_keyword_experiment, "bias-variance": run_bias_variance}[args.command]
    result = runner(cfg)
    for k, v in result["files"].items():
        print(f"{k}: {v}")
    return 0


COMMANDS = {
    "prepare-data": cmd_prepare_data,
    "stats": cmd_stats,
    "pc-score": cmd_pc_score,
    "sir": cmd_sir,
    "spreader-exp": cmd_experiment,
    "keyword-exp": cmd_experiment,
    "bias-variance": cmd_experiment,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
