"""Compiled vs pure-Python closure kernel.

Two measurements:

* the raw closure call on random Horn-style rule sets, both kernels loaded
  side by side in this process;
* end-to-end answer-set enumeration of random update sequences, each backend
  in its own interpreter (``UPD_KERNEL=python`` forces the fallback).

Usage: python3 benchmarks/bench_closure.py [--repeat N] [--seed S]
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from causalupd import _closure_py

try:
    from causalupd import _closure as _compiled
except ImportError:
    _compiled = None

END_TO_END = r"""
import random, time
from causalupd.generate import random_sequence
from causalupd.update import update_answer_sets
from causalupd.solver import CapacityError
from causalupd import kernel
rng = random.Random({seed})
seqs = [random_sequence(rng, atoms=10, programs=3, rules=30) for _ in range(1000)]
t0 = time.perf_counter()
n = skipped = 0
for s in seqs:
    try:
        n += len(update_answer_sets(s))
    except CapacityError:
        skipped += 1
print(kernel.BACKEND, n, skipped, time.perf_counter() - t0)
"""


def random_rules(rng, n, m):
    heads = [rng.randrange(n) for _ in range(m)]
    pos = [[rng.randrange(n) for _ in range(rng.randint(0, 3))] for _ in range(m)]
    neg = [[rng.randrange(n) for _ in range(rng.randint(0, 2))] for _ in range(m)]
    return heads, pos, neg


def bench_raw(repeat, seed):
    rng = random.Random(seed)
    cases = []
    for n, m in ((50, 200), (400, 2000), (2000, 10000)):
        heads, pos, neg = random_rules(rng, n, m)
        blocking = bytearray(rng.random() < 0.3 for _ in range(n))
        cases.append((n, m, heads, pos, neg, blocking))
    print(f"{'symbols':>8} {'rules':>7} {'python ms':>10} {'compiled ms':>12} {'speedup':>8}")
    for n, m, heads, pos, neg, blocking in cases:
        prep = _closure_py.prepare(n, heads, pos, neg)
        t_py = min(timeit.repeat(lambda: _closure_py.closure(prep, blocking), number=20, repeat=repeat)) / 20
        if _compiled is None:
            print(f"{n:>8} {m:>7} {t_py * 1e3:>10.3f} {'n/a':>12} {'':>8}")
            continue
        cprep = _compiled.prepare(n, heads, pos, neg)
        assert bytes(_compiled.closure(cprep, blocking)) == bytes(_closure_py.closure(prep, blocking))
        t_c = min(timeit.repeat(lambda: _compiled.closure(cprep, blocking), number=20, repeat=repeat)) / 20
        print(f"{n:>8} {m:>7} {t_py * 1e3:>10.3f} {t_c * 1e3:>12.3f} {t_py / t_c:>7.1f}x")


def bench_end_to_end(seed):
    rows = []
    for kernel in ("compiled", "python"):
        env = dict(os.environ, UPD_KERNEL=kernel)
        out = subprocess.run([sys.executable, "-c", END_TO_END.format(seed=seed)],
                             env=env, capture_output=True, text=True)
        if out.returncode:
            sys.exit(out.stderr)
        rows.append(out.stdout.split())
    print(f"{'backend':>9} {'answer sets':>12} {'over cap':>9} {'seconds':>8}")
    for backend, n, skipped, secs in rows:
        print(f"{backend:>9} {n:>12} {skipped:>9} {float(secs):>8.2f}")
    if rows[0][1:3] != rows[1][1:3]:
        sys.exit("backends disagree on the answer-set count")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if _compiled is None:
        print("compiled kernel not built; only the Python numbers are shown\n")
    bench_raw(args.repeat, args.seed)
    print()
    bench_end_to_end(args.seed)


if __name__ == "__main__":
    main()
