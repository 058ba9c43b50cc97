"""Compare the compiled and pure-Python search kernels.

Run from the repository root after an editable install::

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each workload calls the backend functions directly on the dense form of a
net, so the numbers exclude id wrapping and sorting done by the public API.
"""

import argparse
import random
import sys
import timeit
from pathlib import Path

from petridiag import _kernel, load_fixture

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
from _netgen import corpus  # noqa: E402


def _fixture_workloads():
    net = load_fixture("fig1")
    d = net.dense
    obs = [t.index for t in net.sequence(["A", "B", "D"] + ["E"] * 200)]
    counts = [0] * len(d.pre)
    for t in obs[:12]:
        counts[t] += 1
    common = (d.pre, d.post, d.initial, d.observable)
    return {
        "fig1 runs len<=14": lambda k: k.enumerate_runs(d.pre, d.post, d.initial, 14),
        "fig1 ordered A,B,D,E*200": lambda k: k.explain(*common, tuple(obs), True, 100, 10**5),
        "fig1 multiset A,B,D,E*9": lambda k: k.explain(*common, tuple(counts), False, 100, 10**5),
    }


def _random_workloads(n=40, seed=3):
    nets = corpus(n, seed=seed, max_len=7)
    rng = random.Random(seed)
    jobs = []
    for net in nets:
        d = net.dense
        runs = _kernel.BACKENDS["python"].enumerate_runs(d.pre, d.post, d.initial, 7)
        for r in rng.sample(runs, min(5, len(runs))):
            target = tuple(t for t in r if d.observable[t])
            counts = [0] * len(d.pre)
            for t in target:
                counts[t] += 1
            jobs.append((d, target, tuple(counts)))

    def runs_all(k):
        for net in nets:
            d = net.dense
            k.enumerate_runs(d.pre, d.post, d.initial, 7)

    def explain_all(k, ordered):
        for d, target, counts in jobs:
            k.explain(d.pre, d.post, d.initial, d.observable,
                      target if ordered else counts, ordered, 50, 10**6)

    return {
        f"{n} random nets runs len<=7": runs_all,
        f"{len(jobs)} random ordered queries": lambda k: explain_all(k, True),
        f"{len(jobs)} random multiset queries": lambda k: explain_all(k, False),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    backends = dict(_kernel.BACKENDS)
    if "cython" not in backends:
        print("compiled kernel not built; timing the Python fallback only")
    workloads = {**_fixture_workloads(), **_random_workloads()}

    header = f"{'workload':36}" + "".join(f"{name:>12}" for name in backends)
    if len(backends) > 1:
        header += f"{'speedup':>10}"
    print(header)
    for label, fn in workloads.items():
        best = {}
        for name, k in backends.items():
            best[name] = min(timeit.repeat(lambda: fn(k), number=1, repeat=args.repeat))
        row = f"{label:36}" + "".join(f"{best[n] * 1e3:10.2f}ms" for n in backends)
        if len(backends) > 1:
            row += f"{best['python'] / best['cython']:9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
