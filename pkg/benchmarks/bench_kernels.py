"""Time the compiled and numpy kernel backends on the optimizer's hot path.

    python benchmarks/bench_kernels.py [--repeat 5] [--number 200]

Each row times one full fitness evaluation (decode + channel + two
eigendecompositions is what the GA pays per individual) and the bare
``channel_matrices`` / ``nn_forward`` kernels.
"""
import argparse
import timeit

import numpy as np

from pauli_coherent import kernels
from pauli_coherent.ansatz import bit_inputs, parse_ansatz
from pauli_coherent.channel import ProbVec4, _string_factors
from pauli_coherent.codes import build_code
from pauli_coherent.linalg import entropy_from_eigenvalues

P = ProbVec4.from_errors(0.003, 0.285, 0.008)


def _fitness(mod, amps2d, n):
    src, phase, sqrtw = _string_factors(n, P)
    rho_s, joint = mod.channel_matrices(amps2d, src, phase, sqrtw)
    return entropy_from_eigenvalues(np.linalg.eigvalsh(rho_s)) - entropy_from_eigenvalues(
        np.linalg.eigvalsh(joint)
    )


def cases():
    for name, n in (("psi1", 2), ("phi1", 3), ("chi1", 3)):
        amps = build_code(name).matrix
        src, phase, sqrtw = _string_factors(n, P)
        yield f"channel_matrices {name}", lambda m, a=amps, f=(src, phase, sqrtw): m.channel_matrices(a, *f)
        yield f"fitness {name}", lambda m, a=amps, n=n: _fitness(m, a, n)
    spec = parse_ansatz("nn:4x4x4x4x4x2", 2)
    ch = spec.init(np.random.default_rng(0))
    x = bit_inputs(4)
    ws, bs = ch[0::2], [b[0] for b in ch[1::2]]
    yield "nn_forward 4x4x4x4x4x2", lambda m: m.nn_forward(x, ws, bs)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--number", type=int, default=200)
    args = ap.parse_args()
    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled backend not built; timing the numpy fallback only")
    names = list(backends)
    print(f"{'case':32s}" + "".join(f"{n + ' (us)':>16s}" for n in names) + f"{'speedup':>10s}")
    for label, fn in cases():
        times = {}
        for name, mod in backends.items():
            t = timeit.repeat(lambda: fn(mod), repeat=args.repeat, number=args.number)
            times[name] = min(t) / args.number * 1e6
        row = f"{label:32s}" + "".join(f"{times[n]:16.1f}" for n in names)
        if "cython" in times:
            row += f"{times['python'] / times['cython']:9.2f}x"
        print(row)


if __name__ == "__main__":
    main()
