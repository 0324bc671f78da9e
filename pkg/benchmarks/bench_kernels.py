"""Time the compiled kernels against the pure-Python twins.

    python benchmarks/bench_kernels.py [--repeat N]

Each workload runs on every importable backend and the outputs are compared
before timing, so a speedup is never reported for a wrong answer.
"""

import argparse
import time

from positroids.constructions import uniform, whirl
from positroids.kernels import available_backends
from positroids.maps import grassmann_necklace_of


def workloads():
    w4 = whirl(4)
    w5 = whirl(5)
    u36 = uniform(3, 7)
    neck = set(grassmann_necklace_of(whirl(3)).masks)
    w3 = list(whirl(3).masks)
    forced = [b in neck for b in w3]
    circ = sorted(w4.circuit_masks())

    def rank_all(mod):
        packed = mod.pack(w4.masks)
        return [mod.rank(packed, x) for x in range(1 << w4.n)]

    def exchange(mod):
        return [mod.exchange_violation(mod.pack(m.masks)) for m in (w4, w5, u36)]

    def circuits(mod):
        return sorted(mod.circuits(mod.pack(w5.masks), w5.n, w5.rank))

    def minors(mod):
        packed = mod.pack(w5.masks)
        out = []
        for c in range(0, 1 << 5):
            out.append(tuple(mod.minor_masks(packed, c, 0b11 << 8, w5.n)))
        return out

    def rebuild(mod):
        return sorted(mod.bases_from_circuits(circ, w4.n))

    def envelope(mod):
        return sorted(mod.envelope_members(w3, forced))

    return [
        ("rank, all subsets of whirl(4)", rank_all),
        ("exchange check, whirl(4), whirl(5), U(3,7)", exchange),
        ("circuits of whirl(5)", circuits),
        ("32 minors of whirl(5)", minors),
        ("bases from circuits, whirl(4)", rebuild),
        ("envelope class search, whirl(3)", envelope),
    ]


def best_of(fn, mod, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn(mod)
        times.append(time.perf_counter() - start)
    return min(times)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5, help="runs per workload; the best is kept")
    args = parser.parse_args(argv)

    backends = available_backends()
    if "cython" not in backends:
        print("compiled extension not built; only the Python backend is available")
    names = sorted(backends, key=lambda b: b != "python")
    header = f"{'workload':46s}" + "".join(f"{b:>12s}" for b in names)
    if len(names) > 1:
        header += f"{'speedup':>10s}"
    print(header)
    for title, fn in workloads():
        results = {b: fn(backends[b]) for b in names}
        if len({repr(r) for r in results.values()}) != 1:
            raise SystemExit(f"backends disagree on: {title}")
        secs = {b: best_of(fn, backends[b], args.repeat) for b in names}
        line = f"{title:46s}" + "".join(f"{secs[b] * 1e3:10.2f}ms" for b in names)
        if len(names) > 1:
            line += f"{secs['python'] / secs['cython']:9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
