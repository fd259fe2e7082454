"""End-to-end toy gate: train the full model and the skinning/displacement
ablation on the default synthetic scene, evaluate both, write a JSON summary.

Usage: python3 benchmarks/toy_gate.py [--work gate_runs] [--threads N] [--iterations 6000]

Threads default to min(8, available cores); more BLAS threads than cores
slows the small matrix products down by an order of magnitude.
"""

import argparse
import json
import os
import time
from pathlib import Path

from threadpoolctl import threadpool_limits

from avatarfield.dataset import SceneSpec, load_config_file, load_dataset, synthesize
from avatarfield.model import Ablations
from avatarfield.trainer import TrainConfig, evaluate, train

ROOT = Path(__file__).resolve().parents[1]
THRESHOLDS = {"novel_view_psnr": 22.0, "novel_pose_psnr": 20.0, "ablation_margin_db": 0.3,
              "minutes": 30.0}


def run_one(name, cfg_dict, ds, work, ablations, iterations, log):
    cfg = TrainConfig.from_dict(cfg_dict)
    cfg.dataset = str(work / "data")
    cfg.out_dir = str(work / name)
    cfg.ablations = ablations
    if iterations:
        cfg.iterations = iterations
        cfg.warmup = min(cfg.warmup, iterations // 6)
    t0 = time.time()

    def progress(it, rec):
        if it % 250 == 0 or it == cfg.iterations - 1:
            log(f"{name} iter {it} loss {rec['total']:.4f} elapsed {rec['elapsed']:.0f}s")
    model = train(cfg, ds, progress)
    minutes = (time.time() - t0) / 60.0
    out = {"train_minutes": minutes, "iterations": cfg.iterations}
    for split in ("novel-view", "novel-pose"):
        rep = evaluate(model, ds, split, work / name / "eval")
        out[split] = {"psnr": rep.psnr, "ssim": rep.ssim, "frames": rep.frames}
    log(f"{name} done: {json.dumps({k: v for k, v in out.items() if k != 'frames'})[:300]}")
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--work", default=str(ROOT / "gate_runs"))
    ap.add_argument("--config", default=str(ROOT / "configs" / "gate.toml"))
    ap.add_argument("--threads", type=int, default=min(8, os.cpu_count() or 1))
    ap.add_argument("--iterations", type=int, default=None)
    ap.add_argument("--out", default=str(ROOT / "benchmarks" / "toy_gate_results.json"))
    args = ap.parse_args(argv)
    work = Path(args.work)
    work.mkdir(parents=True, exist_ok=True)
    logf = open(work / "gate.log", "a")

    def log(msg):
        line = f"[{time.strftime('%H:%M:%S')}] {msg}"
        print(line, flush=True)
        logf.write(line + "\n")
        logf.flush()

    with threadpool_limits(limits=args.threads):
        synthesize(SceneSpec(), work / "data")
        ds = load_dataset(work / "data")
        cfg_dict = load_config_file(args.config)
        full = run_one("full", cfg_dict, ds, work, Ablations(), args.iterations, log)
        abl = run_one("no_skinning_no_displacement", cfg_dict, ds, work,
                      Ablations.from_flags(["no-learnable-skinning", "no-displacement"]),
                      args.iterations, log)
    margin = full["novel-pose"]["psnr"] - abl["novel-pose"]["psnr"]
    summary = {
        "config": str(Path(args.config).name),
        "threads": args.threads,
        "thresholds": THRESHOLDS,
        "full": full,
        "ablation": abl,
        "novel_pose_margin_db": margin,
        "checks": {
            "novel_view_psnr": full["novel-view"]["psnr"] >= THRESHOLDS["novel_view_psnr"],
            "novel_pose_psnr": full["novel-pose"]["psnr"] >= THRESHOLDS["novel_pose_psnr"],
            "ablation_margin": margin >= THRESHOLDS["ablation_margin_db"],
            "wall_time": full["train_minutes"] < THRESHOLDS["minutes"],
        },
    }
    Path(args.out).write_text(json.dumps(summary, indent=1))
    log(f"summary written to {args.out}: {summary['checks']} margin {margin:.3f} dB")


if __name__ == "__main__":
    main()
