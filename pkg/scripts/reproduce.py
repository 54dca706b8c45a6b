"""Recompute every headline result and write the artifacts to one directory.

    python scripts/reproduce.py --out results/
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from mmspace import curvature
from mmspace.complex import OUT, OUT0
from mmspace.embed import expected_fixed, fixed_vertices, identity_patch
from mmspace.export import link_to_dot
from mmspace.complex import link
from mmspace.hypertree import enumerate_hypertrees, parse_tree_name


@dataclass
class Config:
    out: Path = Path("results")
    embed_rank: int = 5
    links: tuple[str, ...] = ("O13", "L13_24", "S1", "Theta0")


def solve(mode: str, out: Path) -> dict:
    t0 = time.perf_counter()
    system = curvature.build_system(mode)
    res = curvature.feasible(system)
    entry = {"variables": len(system.variables), "rows": len(system.rows), "verdict": res.verdict}
    if isinstance(res, curvature.Infeasible):
        entry["certificate_valid"] = curvature.verify_certificate(res.certificate, system)
        entry["certificate_rows_used"] = sum(1 for m in res.certificate.multipliers if m)
        (out / f"certificate-{mode}.json").write_text(json.dumps({
            "system": system.to_json(), "certificate": res.certificate.to_json()}, indent=2))
    entry["seconds"] = round(time.perf_counter() - t0, 2)
    return entry


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Config.out)
    ap.add_argument("--embed-rank", type=int, default=Config.embed_rank)
    cfg = Config(**{k: v for k, v in vars(ap.parse_args()).items()})
    cfg.out.mkdir(parents=True, exist_ok=True)

    summary: dict = {"config": {**asdict(cfg), "out": str(cfg.out)}}
    summary["census"] = {n: len(enumerate_hypertrees(n)) for n in range(2, 7)}
    for name in cfg.links:
        g = link(parse_tree_name(name))
        (cfg.out / f"link-{name}.dot").write_text(link_to_dot(g))
        summary.setdefault("links", {})[name] = {"vertices": len(g.vertices), "edges": len(g.edges)}
    summary["out"] = solve(OUT, cfg.out)
    summary["out0"] = solve(OUT0, cfg.out)
    sym = curvature.symmetrize(curvature.build_system(OUT0))
    summary["symmetrized_equals_out"] = sym.row_set() == curvature.build_system(OUT).row_set()
    control = curvature.feasible(curvature.negative_control())
    summary["negative_control"] = {v.name: str(q) for v, q in control.point.items()}
    patch = identity_patch(cfg.embed_rank)
    fixed = fixed_vertices(patch, cfg.embed_rank)
    summary["fixed_points"] = {
        "patch": len(patch), "fixed": len(fixed), "equals_tilde_image": fixed == expected_fixed(patch)}

    (cfg.out / "summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    print(json.dumps(summary, indent=2))


if __name__ == "__main__":
    main()
