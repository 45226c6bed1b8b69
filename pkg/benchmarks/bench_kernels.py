"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

import numpy as np

from proglab import _backend
from proglab.eca import rule_from_code, single_seed
from proglab.programmability import EnsembleSpec, build_ensemble

CASES = [
    ("evolve r=1 W=256 T=256", lambda k: k.evolve(rule_from_code(110).table, 1, single_seed(256), 256)),
    ("evolve r=1 W=16385 T=8192", lambda k: k.evolve(rule_from_code(30).table, 1, single_seed(16385), 8192)),
    ("evolve r=2 W=1024 T=512", lambda k: k.evolve(rule_from_code(0x6A3B9C1D, 2).table, 2, single_seed(1024), 512)),
]


def lz_case(kernels, bits):
    return kernels.lz78_cost(bits)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    diagram = _backend.get("python").evolve(rule_from_code(30).table, 1, build_ensemble(EnsembleSpec())[0], 256)
    cases = CASES + [
        ("lz78 65792 bits (rule 30 diagram)", lambda k: lz_case(k, diagram.ravel())),
        ("lz78 2^20 random bits", lambda k: lz_case(k, np.random.default_rng(0).integers(0, 2, 1 << 20, dtype=np.uint8))),
    ]
    names = sorted(_backend.BACKENDS)
    print(f"{'case':38s}" + "".join(f"{n:>12s}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, fn in cases:
        times = {}
        for name in names:
            k = _backend.get(name)
            times[name] = min(timeit.repeat(lambda: fn(k), number=1, repeat=args.repeat))
        row = f"{label:38s}" + "".join(f"{times[n] * 1e3:10.2f}ms" for n in names)
        if len(names) > 1:
            row += f"{times['python'] / times['cython']:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
