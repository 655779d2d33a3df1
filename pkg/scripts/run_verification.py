"""Full verification run: sweeps, sharpness probes and profile scans.

    python scripts/run_verification.py --out results/ --points 1000000 --workers 4

Writes sweeps.json, probes.json, profiles.csv and summary.txt into ``--out``.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from nsmeans.constants import constants, ineq11_profile, theta1, theta2
from nsmeans.verifier import Family, NoWitnessFound, perturbed_params, sharpness_probe, sweep

log = logging.getLogger("run_verification")


@dataclass(frozen=True)
class RunConfig:
    out: Path = Path("results")
    points: int = 1_000_000
    workers: int = 1
    epsilons: tuple[float, ...] = (1e-2, 1e-3, 1e-4)
    profile_points: int = 1000
    families: tuple[str, ...] = field(default_factory=lambda: tuple(f.value for f in Family))


def run_sweeps(cfg: RunConfig) -> list[dict]:
    out = []
    for name in cfg.families:
        rep = sweep(Family(name), cfg.points, workers=cfg.workers)
        log.info("%-10s total=%d violations=%d worst=%.3e", name, rep.total,
                 rep.violations, rep.worst_margin)
        out.append(rep.as_dict(timing=True))
    return out


def run_probes(cfg: RunConfig) -> list[dict]:
    rows = []
    for theorem in (Family.THM11, Family.THM12):
        for side in ("lower", "upper"):
            for eps in cfg.epsilons:
                params, end = perturbed_params(theorem, side, eps)
                try:
                    pair = sharpness_probe(theorem, side, eps)
                    x = abs(pair.x)
                except NoWitnessFound:
                    x = None
                rows.append({"family": theorem.value, "side": side, "epsilon": eps,
                             "params": list(params), "endpoint": end, "witness_x": x})
                log.info("%s %-5s eps=%g -> x=%s", theorem.value, side, eps, x)
    return rows


def write_profiles(cfg: RunConfig, path: Path) -> None:
    xs = np.linspace(0.001, 0.999, cfg.profile_points)
    cols = zip(xs, theta1(xs), theta2(xs), ineq11_profile(xs))
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "theta1", "theta2", "ineq11"])
        w.writerows([repr(float(v)) for v in row] for row in cols)


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out", type=Path, default=RunConfig.out)
    p.add_argument("--points", type=int, default=RunConfig.points)
    p.add_argument("--workers", type=int, default=RunConfig.workers)
    args = p.parse_args(argv)
    cfg = RunConfig(out=args.out, points=args.points, workers=args.workers)
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    cfg.out.mkdir(parents=True, exist_ok=True)
    sweeps = run_sweeps(cfg)
    probes = run_probes(cfg)
    (cfg.out / "sweeps.json").write_text(json.dumps(sweeps, indent=2) + "\n")
    (cfg.out / "probes.json").write_text(json.dumps(probes, indent=2) + "\n")
    write_profiles(cfg, cfg.out / "profiles.csv")

    failed = [s["family"] for s in sweeps if s["violations"]]
    missing = [f"{r['family']}/{r['side']}/{r['epsilon']}" for r in probes if r["witness_x"] is None]
    summary = {
        "config": {k: (str(v) if isinstance(v, Path) else v) for k, v in asdict(cfg).items()},
        "constants": constants().as_dict(),
        "families_with_violations": failed,
        "probes_without_witness": missing,
    }
    (cfg.out / "summary.txt").write_text(json.dumps(summary, indent=2) + "\n")
    log.info("violations in: %s; probes without witness: %s", failed or "none", missing or "none")
    return int(bool(failed or missing))


if __name__ == "__main__":
    raise SystemExit(main())
