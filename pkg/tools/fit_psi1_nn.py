"""Fit the default network ansatz to the PSI-I code and save the parameters.

Regenerates ``tests/data/psi1_nn.json``, the regression witness that the
4/4x4x4x4/2 network can represent PSI-I. Needs scipy (``pip install .[dev]``).

    python tools/fit_psi1_nn.py [--seed 0] [--out tests/data/psi1_nn.json]
"""
import argparse
import json
from pathlib import Path

import numpy as np
from scipy.optimize import minimize

from pauli_coherent.ansatz import parse_ansatz
from pauli_coherent.codes import build_code
from pauli_coherent.errors import DegenerateState

ARCH = "nn:4x4x4x4x4x2"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default=str(Path(__file__).parents[1] / "tests/data/psi1_nn.json"))
    args = ap.parse_args()

    spec = parse_ansatz(ARCH, 2)
    target = build_code("psi1")
    start = spec.init(np.random.default_rng(args.seed))
    shapes = [a.shape for a in start]
    cuts = np.cumsum([a.size for a in start])[:-1]

    def unflat(x):
        return [p.reshape(s) for p, s in zip(np.split(x, cuts), shapes)]

    def loss(x):
        try:
            return 1.0 - target.fidelity(spec.decode(unflat(x))) ** 2
        except DegenerateState:
            return 1.0

    x0 = np.concatenate([a.ravel() for a in start])
    res = minimize(loss, x0, method="BFGS", options={"maxiter": 3000})
    ch = unflat(res.x)
    fid = target.fidelity(spec.decode(ch))
    doc = {
        "ansatz": ARCH,
        "encoding": spec.encoding,
        "target": "PSI-I",
        "fidelity": fid,
        "chromosome": [a.tolist() for a in ch],
    }
    Path(args.out).write_text(json.dumps(doc, indent=2) + "\n")
    print(f"fidelity {fid:.12g} -> {args.out}")


if __name__ == "__main__":
    main()
