"""Experiment harness: grid search over perturbation parameters and report emission.

Three drivers share one JSON config format (see ``ExperimentConfig``):

* ``run_spreader_experiment``: SIR severity of trigger sets on a network.
* ``run_keyword_experiment``: keyword extraction on a token corpus.
* ``run_bias_variance``: NDCG bias/variance of original vs P&C rankings.

Each writes CSV tables, PNG figures and a JSON manifest to ``out_dir``.
"""

from __future__ import annotations

import csv
import itertools
import json
import logging
import os
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np
from joblib import Parallel, delayed

from . import __version__, plotting
from .ensemble import PcConfig, TriggerPolicy, extract_trigger_set, pc_scores
from .errors import DegenerateInputError
from .graph import Graph, assign_default_weights, largest_eigenvalue, load_edge_list
from .metrics import (
    bias_variance,
    bias_variance_experiment,
    error_decomposition_check,
    jensen_gap_check,
    keyword_prf1,
    rank_from_scores,
    top_p_count,
    top_p_overlap,
)
from .perturb import PerturbConfig
from .scoring import score
from .seeding import mix64
from .sir import REPORT_STEPS, SirConfig, influence_vector, trigger_set_severity
from .textgraph import build_cooccurrence_graph, extract_keywords, load_corpus, write_keys

log = logging.getLogger(__name__)

SOCIAL_GRID = {
    "eps_add": [0, 0.05, 0.1, 0.2],
    "eps_del": [0, 0.05, 0.1, 0.2],
    "M": [16, 64],
    "model": ["er", "cl"],
    "weight_aware": [0, 1],
}
KEYWORD_GRID = {
    "eps_add": [0, 0.1, 0.2, 0.3],
    "eps_del": [0, 0.1, 0.2, 0.3],
    "M": [8, 32, 96],
    "model": ["er", "cl"],
    "weight_aware": [0, 1],
}
GRID_PRESETS = {"social": SOCIAL_GRID, "keywords": KEYWORD_GRID}

# seed streams derived from the master seed
_SIR_STREAM = 0x5151
_INFLUENCE_STREAM = 0x1F1F
_DOC_PICK_STREAM = 0xD0C5

STEP_COLS = [f"step_{s}" for s in REPORT_STEPS]
CELL_COLS = ["weight_aware", "model", "M", "eps_del", "eps_add"]


@dataclass(frozen=True)
class GridCell:
    weight_aware: int
    model: str
    M: int
    eps_del: float
    eps_add: float

    def seed(self, master_seed: int) -> int:
        # depends only on the parameter values, so a cell keeps its seed when the grid changes
        return mix64(
            master_seed,
            self.weight_aware,
            0 if self.model == "er" else 1,
            self.M,
            round(self.eps_del * 1_000_000),
            round(self.eps_add * 1_000_000),
        )

    def pc_config(self, scorer: str, master_seed: int) -> PcConfig:
        pert = PerturbConfig(self.eps_add, self.eps_del, self.model, bool(self.weight_aware), self.seed(master_seed))
        return PcConfig(self.M, pert, scorer)

    def as_row(self) -> dict:
        return asdict(self)


def enumerate_grid(grid: dict) -> list[GridCell]:
    """Cartesian product of the grid lists, minus cells with eps_add == eps_del == 0."""
    cells = []
    for wa, model, M, ed, ea in itertools.product(
        grid["weight_aware"], grid["model"], grid["M"], grid["eps_del"], grid["eps_add"]
    ):
        if ea == 0 and ed == 0:
            continue
        cells.append(GridCell(int(wa), str(model).lower(), int(M), float(ed), float(ea)))
    if not cells:
        raise ValueError("grid is empty once eps_add = eps_del = 0 cells are excluded")
    return cells


@dataclass
class ExperimentConfig:
    name: str = "experiment"
    dataset: dict = field(default_factory=dict)
    scorers: list = field(default_factory=lambda: ["cu", "cw", "pr"])
    grid: dict | str = "social"
    sir: dict = field(default_factory=dict)
    policies: dict = field(default_factory=dict)
    rounding: str = "ceil"
    seed: int = 0
    jobs: int = 1
    out_dir: str = "out"
    top_p: list = field(default_factory=list)
    influence_runs: int | None = None
    bias_variance: dict = field(default_factory=dict)
    base_dir: str = "."

    @classmethod
    def from_dict(cls, d: dict, base_dir: str = ".") -> "ExperimentConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        cfg = cls(**{**d, "base_dir": d.get("base_dir", base_dir)})
        cfg.grid_values()
        return cfg

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh), base_dir=str(Path(path).resolve().parent))

    def grid_values(self) -> dict:
        g = GRID_PRESETS[self.grid] if isinstance(self.grid, str) else self.grid
        missing = set(SOCIAL_GRID) - set(g)
        if missing:
            raise ValueError(f"grid is missing {sorted(missing)}")
        return g

    def cells(self) -> list[GridCell]:
        return enumerate_grid(self.grid_values())

    def resolve(self, path: str) -> str:
        return path if os.path.isabs(path) else os.path.join(self.base_dir, path)

    def policy(self, scorer: str, setting: str) -> TriggerPolicy:
        if scorer in self.policies:
            return TriggerPolicy.from_dict({"rounding": self.rounding, **self.policies[scorer]})
        p = TriggerPolicy.default_for(scorer, setting)
        return TriggerPolicy(p.kind, p.k, p.fraction, self.rounding)

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("base_dir")
        return d


# ---------------------------------------------------------------- I/O helpers


def write_rows(path, header, rows) -> str:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=list(header), extrasaction="ignore")
        w.writeheader()
        for r in rows:
            w.writerow({k: _fmt(v) for k, v in r.items()})
    return str(path)


def _fmt(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, np.integer):
        return int(v)
    return v


def write_manifest(path, payload: dict) -> str:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True, default=_json_default)
        fh.write("\n")
    return str(path)


def _json_default(o):
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.floating):
        return float(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, os.PathLike):
        return os.fspath(o)
    raise TypeError(type(o))


def load_dataset(spec: dict, resolve=lambda p: p) -> Graph:
    """Edge-list dataset: symmetrized, self-loops dropped, largest component, default weights."""
    g = load_edge_list(
        resolve(spec["path"]),
        symmetrize=spec.get("symmetrize", True),
        drop_self_loops=True,
        keep_largest_component=spec.get("keep_largest_component", True),
    )
    if spec.get("default_weights", True):
        g = assign_default_weights(g)
    return g


def sir_config_for(g: Graph, sir: dict, master_seed: int) -> SirConfig:
    """SIR settings with ``beta`` defaulting to the epidemic threshold 1/lambda1 of ``g``."""
    beta = sir.get("beta")
    if beta is None:
        lam = largest_eigenvalue(g)
        beta = min(1.0, 1.0 / lam) if lam > 0 else 1.0
    return SirConfig(
        beta=float(beta),
        gamma=float(sir.get("gamma", 0.8)),
        runs=int(sir.get("runs", 100)),
        max_steps=int(sir.get("max_steps", 10_000)),
        seed=int(sir.get("seed", mix64(master_seed, _SIR_STREAM))),
    )


def _rank_cells(rows: list[dict], key: str, scorers) -> None:
    for s in scorers:
        ok = [r for r in rows if r["scorer"] == s and r["status"] == "ok"]
        ok.sort(key=lambda r: (-r[key], r["cell_index"]))
        for i, r in enumerate(ok, start=1):
            r["rank"] = i


def _best(rows, scorer):
    ok = [r for r in rows if r["scorer"] == scorer and r["status"] == "ok"]
    return min(ok, key=lambda r: r["rank"]) if ok else None


def _improvement(new: float, old: float) -> float:
    return 100.0 * (new - old) / old if old else float("nan")


def _run_tasks(fn, tasks, jobs: int):
    if jobs > 1 and len(tasks) > 1:
        return Parallel(n_jobs=jobs)(delayed(fn)(*t) for t in tasks)
    return [fn(*t) for t in tasks]


# ---------------------------------------------------------------- spreaders


def _spreader_cell(g, scorer, idx, cell, policy, sir_cfg, master_seed):
    row = {"scorer": scorer, "cell_index": idx, **cell.as_row(), "seed": cell.seed(master_seed), "master_seed": master_seed}
    try:
        s = pc_scores(g, cell.pc_config(scorer, master_seed))
        trig = extract_trigger_set(s, policy)
        prof = trigger_set_severity(g, trig, sir_cfg)
        row.update(prof.report())
        row.update(trigger_size=int(trig.size), truncated_runs=prof.truncated_runs, status="ok")
        row["_profile"] = prof.mean_new_per_step
    except Exception as exc:  # a failed cell is recorded, not fatal
        log.warning("cell %s/%d failed: %s", scorer, idx, exc)
        row.update(status=f"failed: {exc}", total=float("nan"))
    return row


def run_spreader_experiment(cfg: ExperimentConfig) -> dict:
    t0 = time.time()
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    g = load_dataset(cfg.dataset, cfg.resolve)
    sir_cfg = sir_config_for(g, cfg.sir, cfg.seed)
    cells = cfg.cells()
    log.info("%s: n=%d m=%d beta=%.4g, %d cells x %d scorers", cfg.name, g.n, g.m, sir_cfg.beta, len(cells), len(cfg.scorers))

    baseline = {}
    for s in cfg.scorers:
        trig = extract_trigger_set(score(g, s), cfg.policy(s, "social"))
        prof = trigger_set_severity(g, trig, sir_cfg, jobs=cfg.jobs)
        baseline[s] = {"profile": prof, "trigger_size": int(trig.size)}

    tasks = [(g, s, i, c, cfg.policy(s, "social"), sir_cfg, cfg.seed) for s in cfg.scorers for i, c in enumerate(cells)]
    rows = _run_tasks(_spreader_cell, tasks, cfg.jobs)
    _rank_cells(rows, "total", cfg.scorers)

    grid_header = ["scorer", "rank", *CELL_COLS, *STEP_COLS, "total", "trigger_size", "truncated_runs", "cell_index", "seed", "master_seed", "sir_seed", "beta", "gamma", "runs", "status"]
    for r in rows:
        r.update(sir_seed=sir_cfg.seed, beta=sir_cfg.beta, gamma=sir_cfg.gamma, runs=sir_cfg.runs)
    ordered = sorted(rows, key=lambda r: (cfg.scorers.index(r["scorer"]), r.get("rank", 10**9), r["cell_index"]))
    files = {"grid": write_rows(out / f"{cfg.name}_grid.csv", grid_header, ordered)}

    comp_rows = []
    curves = {}
    for s in cfg.scorers:
        base = baseline[s]["profile"]
        best = _best(rows, s)
        base_row = {"network": cfg.name, "scorer": s, "scores": "original", **base.report(), "trigger_size": baseline[s]["trigger_size"], "master_seed": cfg.seed, "sir_seed": sir_cfg.seed}
        if best is not None:
            comp_rows.append({
                "network": cfg.name, "scorer": s, "scores": "pc",
                **{k: best[k] for k in STEP_COLS + ["total", "trigger_size", *CELL_COLS, "seed"]},
                "improvement_pct": _improvement(best["total"], base.total),
                "master_seed": cfg.seed, "sir_seed": sir_cfg.seed,
            })
            curves[s] = {"P&C": best["_profile"], "original": base.mean_new_per_step}
        comp_rows.append(base_row)
    comp_header = ["network", "scorer", "scores", *STEP_COLS, "total", "improvement_pct", "trigger_size", *CELL_COLS, "seed", "master_seed", "sir_seed"]
    files["comparison"] = write_rows(out / f"{cfg.name}_comparison.csv", comp_header, comp_rows)

    totals = {s: [r["total"] for r in rows if r["scorer"] == s and r["status"] == "ok"] for s in cfg.scorers}
    files["totals_figure"] = plotting.grid_boxplot(
        totals, {s: baseline[s]["profile"].total for s in cfg.scorers}, "total infected", out / f"{cfg.name}_totals.png", cfg.name
    )
    for s, c in curves.items():
        files[f"severity_{s}_figure"] = plotting.severity_curves(c, out / f"{cfg.name}_severity_{s}.png", f"{cfg.name} ({s})", max_step=30)

    if cfg.top_p:
        files.update(_overlap_report(cfg, g, rows, out))

    manifest = {
        "command": "spreader-exp",
        "version": __version__,
        "config": cfg.to_dict(),
        "graph": {"n": g.n, "m": g.m},
        "sir": sir_cfg.to_dict(),
        "cells": len(cells),
        "failed_cells": sum(r["status"] != "ok" for r in rows),
        "outputs": files,
        "elapsed_s": round(time.time() - t0, 3),
    }
    files["manifest"] = write_manifest(out / f"{cfg.name}_manifest.json", manifest)
    return {"rows": rows, "baseline": baseline, "files": files, "sir": sir_cfg, "graph": g}


def _overlap_report(cfg: ExperimentConfig, g: Graph, rows, out: Path) -> dict:
    runs = cfg.influence_runs or cfg.sir.get("runs", 100)
    sir_cfg = sir_config_for(g, {**cfg.sir, "runs": runs, "seed": mix64(cfg.seed, _INFLUENCE_STREAM)}, cfg.seed)
    truth = rank_from_scores(influence_vector(g, sir_cfg, jobs=cfg.jobs))
    ps = [float(p) for p in cfg.top_p]
    out_rows, files = [], {}
    for s in cfg.scorers:
        best = _best(rows, s)
        if best is None:
            continue
        cell = GridCell(best["weight_aware"], best["model"], best["M"], best["eps_del"], best["eps_add"])
        orig = rank_from_scores(score(g, s))
        pc = rank_from_scores(pc_scores(g, cell.pc_config(s, cfg.seed), jobs=cfg.jobs))
        pcv, ov = [], []
        for p in ps:
            a, b = top_p_overlap(pc, truth, p), top_p_overlap(orig, truth, p)
            pcv.append(a)
            ov.append(b)
            out_rows.append({"scorer": s, "p": p, "k": top_p_count(p, g.n), "pc": a, "original": b, **cell.as_row(), "master_seed": cfg.seed, "influence_runs": runs})
        files[f"overlap_{s}_figure"] = plotting.overlap_bars(ps, pcv, ov, out / f"{cfg.name}_overlap_{s}.png", f"{cfg.name} ({s})")
    files["overlap"] = write_rows(out / f"{cfg.name}_overlap.csv", ["scorer", "p", "k", "pc", "original", *CELL_COLS, "master_seed", "influence_runs"], out_rows)
    return files


# ---------------------------------------------------------------- keywords


def _corpus_graphs(cfg: ExperimentConfig):
    docs = load_corpus(cfg.resolve(cfg.dataset["corpus"]))
    window = int(cfg.dataset.get("window", 5))
    kept, graphs = [], []
    for d in docs:
        try:
            graphs.append(build_cooccurrence_graph(d, window))
            kept.append(d)
        except DegenerateInputError as exc:
            log.warning("skipping %s: %s", d.doc_id, exc)
    return kept, graphs


def _doc_pc(cell: GridCell, scorer: str, master_seed: int, doc_index: int) -> PcConfig:
    pc = cell.pc_config(scorer, master_seed)
    return PcConfig(pc.M, pc.perturb, scorer, master_seed=mix64(pc.seed, doc_index))


def _keyword_cell(graphs, gold, scorer, idx, cell, policy, master_seed):
    row = {"scorer": scorer, "cell_index": idx, **cell.as_row(), "seed": cell.seed(master_seed), "master_seed": master_seed}
    try:
        extracted = [extract_keywords(g, scorer, _doc_pc(cell, scorer, master_seed, i), policy) for i, g in enumerate(graphs)]
        p, r, f = keyword_prf1(extracted, gold)
        row.update(precision=p, recall=r, f1=f, status="ok")
        row["_extracted"] = extracted
    except Exception as exc:
        log.warning("cell %s/%d failed: %s", scorer, idx, exc)
        row.update(status=f"failed: {exc}", f1=float("nan"))
    return row


def run_keyword_experiment(cfg: ExperimentConfig) -> dict:
    t0 = time.time()
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    docs, graphs = _corpus_graphs(cfg)
    gold = [d.gold or set() for d in docs]
    cells = cfg.cells()

    baseline = {}
    for s in cfg.scorers:
        extracted = [extract_keywords(g, s, None, cfg.policy(s, "keywords")) for g in graphs]
        baseline[s] = {"extracted": extracted, "prf": keyword_prf1(extracted, gold)}

    tasks = [(graphs, gold, s, i, c, cfg.policy(s, "keywords"), cfg.seed) for s in cfg.scorers for i, c in enumerate(cells)]
    rows = _run_tasks(_keyword_cell, tasks, cfg.jobs)
    _rank_cells(rows, "f1", cfg.scorers)

    ordered = sorted(rows, key=lambda r: (cfg.scorers.index(r["scorer"]), r.get("rank", 10**9), r["cell_index"]))
    grid_header = ["scorer", "rank", *CELL_COLS, "precision", "recall", "f1", "cell_index", "seed", "master_seed", "status"]
    files = {"grid": write_rows(out / f"{cfg.name}_keywords_grid.csv", grid_header, ordered)}

    summary = []
    for s in cfg.scorers:
        bp, br, bf = baseline[s]["prf"]
        best = _best(rows, s)
        if best is not None:
            summary.append({
                "scorer": s, "scores": "pc", "precision": best["precision"], "recall": best["recall"], "f1": best["f1"],
                "improvement_pct": _improvement(best["f1"], bf), **{k: best[k] for k in CELL_COLS}, "seed": best["seed"], "master_seed": cfg.seed,
            })
            for doc, terms in zip(docs, best["_extracted"]):
                write_keys(out / "keys" / s / "pc", doc.doc_id, terms)
        summary.append({"scorer": s, "scores": "original", "precision": bp, "recall": br, "f1": bf, "master_seed": cfg.seed})
        for doc, terms in zip(docs, baseline[s]["extracted"]):
            write_keys(out / "keys" / s / "original", doc.doc_id, terms)
    files["summary"] = write_rows(
        out / f"{cfg.name}_keywords_summary.csv",
        ["scorer", "scores", "precision", "recall", "f1", "improvement_pct", *CELL_COLS, "seed", "master_seed"],
        summary,
    )
    f1s = {s: [r["f1"] for r in rows if r["scorer"] == s and r["status"] == "ok"] for s in cfg.scorers}
    files["f1_figure"] = plotting.grid_boxplot(f1s, {s: baseline[s]["prf"][2] for s in cfg.scorers}, "macro F1", out / f"{cfg.name}_f1.png", cfg.name)

    manifest = {
        "command": "keyword-exp",
        "version": __version__,
        "config": cfg.to_dict(),
        "corpus": {"docs": len(docs), "mean_n": float(np.mean([g.n for g in graphs])), "mean_m": float(np.mean([g.m for g in graphs]))},
        "cells": len(cells),
        "failed_cells": sum(r["status"] != "ok" for r in rows),
        "outputs": files,
        "elapsed_s": round(time.time() - t0, 3),
    }
    files["manifest"] = write_manifest(out / f"{cfg.name}_keywords_manifest.json", manifest)
    return {"rows": rows, "baseline": baseline, "files": files, "docs": docs, "graphs": graphs}


# ---------------------------------------------------------------- bias / variance

BV_HEADER = [
    "graph", "scorer", "condition", "sample_size", "mean_ndcg", "bias_x1e2", "variance_x1e3",
    "mse_decomposed", "mse_direct", "identity_residual", "jensen_gap",
    "M", "eps_add", "eps_del", "model", "weight_aware", "master_seed",
]


def bias_variance_rows(graph: str, scorer: str, samples: dict, params: dict) -> list[dict]:
    """One report row per condition from raw goodness-of-fit samples."""
    rows = []
    for cond, x in samples.items():
        b, v = bias_variance(x)
        lhs, rhs = error_decomposition_check(x)
        _, _, gap = jensen_gap_check(x)
        rows.append({
            "graph": graph, "scorer": scorer, "condition": cond, "sample_size": len(x),
            "mean_ndcg": float(np.mean(x)), "bias_x1e2": 100 * b, "variance_x1e3": 1000 * v,
            "mse_decomposed": lhs, "mse_direct": rhs, "identity_residual": abs(lhs - rhs), "jensen_gap": gap,
            **params,
        })
    return rows


def _bv_graphs(cfg: ExperimentConfig, bv: dict) -> list[tuple[str, Graph]]:
    if "corpus" in cfg.dataset:
        docs, graphs = _corpus_graphs(cfg)
        pairs = [(d.doc_id, g) for d, g in zip(docs, graphs)]
        k = bv.get("docs")
        if k is not None and k < len(pairs):
            pick = np.random.default_rng(mix64(cfg.seed, _DOC_PICK_STREAM)).choice(len(pairs), size=int(k), replace=False)
            pairs = [pairs[i] for i in sorted(pick.tolist())]
        return pairs
    return [(cfg.name, load_dataset(cfg.dataset, cfg.resolve))]


def run_bias_variance(cfg: ExperimentConfig) -> dict:
    t0 = time.time()
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    bv = cfg.bias_variance
    scorer = bv.get("scorer", "cu")
    pc_d = bv.get("pc", {})
    pert = PerturbConfig(
        eps_add=pc_d.get("eps_add", 0.1), eps_del=pc_d.get("eps_del", 0.1), model=pc_d.get("model", "er"),
        weight_aware=pc_d.get("weight_aware", 0), seed=mix64(cfg.seed, 0xBBBB),
    )
    pc_cfg = PcConfig(int(pc_d.get("M", 32)), pert, scorer)
    obs_d = bv.get("observation")
    obs = None
    if obs_d:
        obs = PerturbConfig(
            eps_add=obs_d.get("eps_add", 0.0), eps_del=obs_d.get("eps_del", 0.0), model=obs_d.get("model", "er"),
            weight_aware=obs_d.get("weight_aware", 0), seed=mix64(cfg.seed, 0x0B5E),
        )
    sample_size = int(bv.get("sample_size", 50))
    params = {"M": pc_cfg.M, "eps_add": pert.eps_add, "eps_del": pert.eps_del, "model": pert.model, "weight_aware": int(pert.weight_aware), "master_seed": cfg.seed}

    rows, sample_rows, names, b_orig, b_pc = [], [], [], [], []
    for name, g in _bv_graphs(cfg, bv):
        sir_cfg = sir_config_for(g, cfg.sir, cfg.seed)
        rep = bias_variance_experiment(g, scorer, pc_cfg, sample_size, sir_cfg, levels=int(bv.get("levels", 10)), observation_perturb=obs, jobs=cfg.jobs)
        samples = {"original": rep.ndcg_original, "pc": rep.ndcg_pc, "pc_realization_mean": rep.ndcg_pc_realizations}
        rows.extend(bias_variance_rows(name, scorer, samples, params))
        for i in range(sample_size):
            sample_rows.append({"graph": name, "observation": i + 1, **{c: samples[c][i] for c in samples}})
        names.append(name)
        b_orig.append(100 * bias_variance(rep.ndcg_original)[0])
        b_pc.append(100 * bias_variance(rep.ndcg_pc)[0])

    files = {
        "table": write_rows(out / f"{cfg.name}_bias_variance.csv", BV_HEADER, rows),
        "samples": write_rows(out / f"{cfg.name}_ndcg_samples.csv", ["graph", "observation", "original", "pc", "pc_realization_mean"], sample_rows),
        "bias_figure": plotting.bias_variance_bars(names, b_orig, b_pc, "bias (x1e2)", out / f"{cfg.name}_bias.png"),
    }
    manifest = {"command": "bias-variance", "version": __version__, "config": cfg.to_dict(), "outputs": files, "elapsed_s": round(time.time() - t0, 3)}
    files["manifest"] = write_manifest(out / f"{cfg.name}_bias_variance_manifest.json", manifest)
    return {"rows": rows, "files": files}
