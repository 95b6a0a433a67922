"""Compare the compiled and pure-Python word kernels.

    python benchmarks/bench_kernels.py [--length 2000] [--repeat 5]
"""

import argparse
import random
import timeit

from grouptool.corpus import surface_group
from grouptool.kernels import available_backends
from grouptool.oracles import DehnOracle


def workloads(length, seed):
    rnd = random.Random(seed)
    S = surface_group(2)
    cycles = DehnOracle(4, S.letters(S.relators[0])).cycles
    r = S.letters(S.relators[0])
    noise = [rnd.choice((1, 2, 3, 4, -1, -2, -3, -4)) for _ in range(length)]
    # a long trivial word: conjugates of the relator, spliced together
    trivial = []
    while len(trivial) < length:
        u = [rnd.choice((1, 2, 3, 4, -1, -2, -3, -4)) for _ in range(3)]
        trivial += u + (r if rnd.random() < 0.5 else [-x for x in reversed(r)]) + \
            [-x for x in reversed(u)]
    values = [3, -1, 2, 5]
    return {
        "free_reduce": lambda k: k.free_reduce(noise + [-x for x in reversed(noise)]),
        "dehn_reduce": lambda k: k.dehn_reduce(trivial, cycles),
        "prefix_min": lambda k: k.prefix_min(noise, values),
        "exponent_sums": lambda k: k.exponent_sums(noise, 4),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--length", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--number", type=int, default=20)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)
    backends = available_backends()
    jobs = workloads(args.length, args.seed)
    names = sorted(backends)
    print(f"{'kernel':<15}" + "".join(f"{n + ' (ms)':>16}" for n in names) + f"{'speedup':>10}")
    for job, fn in jobs.items():
        outs = {n: fn(backends[n]) for n in names}
        assert len({tuple(o) for o in outs.values()}) == 1, f"backends disagree on {job}"
        times = {n: min(timeit.repeat(lambda: fn(backends[n]), number=args.number,
                                      repeat=args.repeat)) / args.number * 1e3 for n in names}
        speed = times["python"] / times["cython"] if "cython" in times else float("nan")
        print(f"{job:<15}" + "".join(f"{times[n]:>16.3f}" for n in names) + f"{speed:>9.1f}x")


if __name__ == "__main__":
    main()
