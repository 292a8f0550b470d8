"""Compare the compiled and pure-Python kernel backends.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]

Times the filtration closure and full axiom validation over the generated
corpus, plus the largest single instance, once per available backend.
"""
import argparse
import time

from dblcat import _kernels
from dblcat.core import validate_double_category
from dblcat.gen import corpus
from dblcat.gg import vertical_filtration


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    instances = [C for _, C in corpus()]
    largest = max(instances, key=lambda C: len(C.squares))
    workloads = {
        "closure (corpus)": lambda: [vertical_filtration(C, check=False) for C in instances],
        "validate (corpus)": lambda: [validate_double_category(C) for C in instances],
        f"validate (largest, {len(largest.squares)} squares)": lambda: validate_double_category(largest),
    }
    backends = sorted(_kernels.BACKENDS)
    prev = _kernels.BACKEND
    results = {}
    try:
        for b in backends:
            _kernels.use_backend(b)
            for name, fn in workloads.items():
                results[(name, b)] = _best(fn, args.repeat)
    finally:
        _kernels.use_backend(prev)

    width = max(map(len, workloads))
    print(f"{'workload':<{width}}  " + "  ".join(f"{b:>10}" for b in backends)
          + ("     speedup" if len(backends) > 1 else ""))
    for name in workloads:
        row = [results[(name, b)] for b in backends]
        line = f"{name:<{width}}  " + "  ".join(f"{t:>9.3f}s" for t in row)
        if "cython" in backends and "python" in backends:
            line += f"  {results[(name, 'python')] / results[(name, 'cython')]:>9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
