#!/usr/bin/env python3
"""Generate a directory of demo JSON files exercising every file kind and
every CLI subcommand (groupoids, states, kernels, Kraus, models, pipelines)."""
import argparse
import json
import math
from pathlib import Path

import numpy as np

import cencov_ncp as c
from cencov_ncp import fileio
from cencov_ncp.channels import choi_to_kernel, kernel_from_matrix_map


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("out", nargs="?", default="demo", help="output directory")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    d = Path(args.out)
    d.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(args.seed)

    pair2 = c.pair_groupoid(2)
    triv2 = c.trivial_groupoid(2)
    fileio.save_groupoid(pair2, d / "pair2.json")
    fileio.save_groupoid(triv2, d / "triv2.json")
    fileio.save_groupoid(c.cyclic_group_groupoid(3), d / "z3.json")

    A = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    D = A @ A.conj().T
    D /= np.trace(D).real
    rho = c.state_from_density(D, pair2)
    fileio.save_state(rho, d / "rho.json", "pair2.json")

    fileio.save_kernel(c.identity_kernel(pair2), d / "identity.json",
                       "pair2.json", "pair2.json")
    p = 0.3
    sx = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    sy = np.array([[0.0, -1j], [1j, 0.0]])
    sz = np.diag([1.0, -1.0]).astype(complex)
    kraus = [math.sqrt(1 - 3 * p / 4) * np.eye(2, dtype=complex),
             math.sqrt(p / 4) * sx, math.sqrt(p / 4) * sy, math.sqrt(p / 4) * sz]
    fileio.save_kraus(kraus, d / "depolarizing_kraus.json")
    fileio.save_kernel(choi_to_kernel(kraus, pair2, pair2),
                       d / "depolarizing.json", "pair2.json", "pair2.json")
    fileio.save_kernel(kernel_from_matrix_map(lambda M: M.T, pair2, pair2),
                       d / "transpose.json", "pair2.json", "pair2.json")

    K = c.ClassicalKernel(np.array([[0.9, 0.1], [0.2, 0.8]]))
    fileio.save_classical_kernel(K, d / "binary_channel.json")

    M = c.coin_model(0.0)
    states = {}
    for s in (-0.3, -0.15, 0.0, 0.15, 0.3):
        name = f"coin_{s}.json"
        fileio.save_state(M.at(s), d / name, "triv2.json")
        states[str(s)] = name
    (d / "coin_model.json").write_text(json.dumps({
        "fmt": fileio.FMT, "groupoid": "triv2.json", "s0": 0.0,
        "interval": [-0.3, 0.3], "grid": [-0.1, 0.0, 0.1], "states": states,
    }, indent=2))
    fileio.save_algebra_element(
        c.element_from_dict(triv2, {"1_1": 0.5, "1_2": -0.5}),
        d / "pm_half.json", "triv2.json")

    (d / "pipeline.json").write_text(json.dumps({
        "fmt": fileio.FMT, "initial_state": "rho.json",
        "kernels": ["depolarizing.json", "depolarizing.json"],
    }, indent=2))

    print(f"wrote demo files to {d}/")
    print("try:")
    print(f"  cencov-ncp validate {d}/pair2.json")
    print(f"  cencov-ncp --json cp {d}/transpose.json")
    print(f"  cencov-ncp --json crb {d}/coin_model.json --estimator {d}/pm_half.json")
    print(f"  cencov-ncp --json pipeline {d}/pipeline.json")


if __name__ == "__main__":
    main()
