"""Compare the compiled and pure-Python backends.

    python3 benchmarks/bench_kernels.py [--sizes 6 8 10 12] [--repeat 3]
"""

import argparse
import random
import time

from evencycle import _backend
from evencycle.cycles import shortest_even_cycle
from evencycle.fields import make_field
from evencycle.perdet import per_det_e
from evencycle.ring4 import RingCtx
from evencycle.selftest import random_digraph


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[6, 8, 10, 12])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    backends = ["python"] + (["compiled"] if _backend.compiled_available() else [])
    if len(backends) == 1:
        print("# compiled kernels not built; showing python only")
    rng = random.Random(args.seed)
    ring = RingCtx(make_field(20, rng))

    print(f"{'task':<14}{'n':>4}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for n in args.sizes:
        M = [[ring.random(rng) for _ in range(n)] for _ in range(n)]
        G = random_digraph(rng, n, 0.3)
        seed = rng.getrandbits(64)
        for task, fn in (
            ("per_det_e", lambda: per_det_e(ring, M)),
            ("shortest", lambda: shortest_even_cycle(G, seed)),
        ):
            times, answers = [], []
            for b in backends:
                with _backend.use_backend(b):
                    answers.append(fn())
                    times.append(best_of(fn, args.repeat))
            assert all(a == answers[0] for a in answers), f"backends disagree on {task} n={n}"
            speed = f"{times[0] / times[-1]:.1f}x" if len(times) > 1 else "-"
            print(f"{task:<14}{n:>4}" + "".join(f"{t:>11.3f}s" for t in times) + f"{speed:>10}")


if __name__ == "__main__":
    main()
