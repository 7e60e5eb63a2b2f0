"""Compare the compiled and pure-Python kernels.

Usage: python benchmarks/bench_kernels.py [--repeat N]

The end-to-end rows run a fresh interpreter per backend, so the
HEXALINK_PURE switch takes effect at import time.
"""
import argparse
import os
import random
import subprocess
import sys
import timeit
from fractions import Fraction

from hexalink._kernels import _pure

try:
    from hexalink._kernels import _fast
except ImportError:
    _fast = None

END_TO_END = """
import time
from hexalink.classify import classify
from hexalink.generate import random_cubic_type, random_line_symmetric, random_parallel
cases = [random_parallel(s) for s in range(10)] + [random_line_symmetric(s)[0] for s in range(10)]
cases += [random_cubic_type(s)[0] for s in range(10)]
t0 = time.perf_counter()
for L in cases:
    classify(L)
print(time.perf_counter() - t0)
"""


def _inputs(seed=0):
    rng = random.Random(seed)
    fr = [tuple(Fraction(rng.randint(-99, 99), rng.randint(1, 99)) for _ in range(8)) for _ in range(2)]
    fl = [tuple(float(x) for x in v) for v in fr]
    rows = [[rng.randint(-10**6, 10**6) for _ in range(7)] for _ in range(48)]
    # rank 4 matrix like the ones classification sees
    basis = rows[:4]
    low = [[sum(rng.randint(-3, 3) * b[j] for b in basis) for j in range(7)] for _ in range(48)]
    return fr, fl, low


def bench(mod, repeat):
    fr, fl, rows = _inputs()
    out = {}
    out["dq_mul (Fraction)"] = min(timeit.repeat(lambda: mod.dq_mul(*fr), number=2000, repeat=repeat)) / 2000
    out["dq_mul_f64"] = min(timeit.repeat(lambda: mod.dq_mul_f64(*fl), number=20000, repeat=repeat)) / 20000
    out["bareiss_rank 48x7"] = min(
        timeit.repeat(lambda: mod.bareiss_rank([list(r) for r in rows]), number=50, repeat=repeat)
    ) / 50
    return out


def end_to_end(pure):
    env = dict(os.environ)
    if pure:
        env["HEXALINK_PURE"] = "1"
    else:
        env.pop("HEXALINK_PURE", None)
    res = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True)
    return float(res.stdout.strip())


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    pure = bench(_pure, args.repeat)
    fast = bench(_fast, args.repeat) if _fast is not None else None
    print(f"{'kernel':<22}{'pure':>14}{'compiled':>14}{'speedup':>10}")
    for name, t in pure.items():
        if fast is None:
            print(f"{name:<22}{t * 1e6:>11.2f} us{'n/a':>14}{'':>10}")
        else:
            f = fast[name]
            print(f"{name:<22}{t * 1e6:>11.2f} us{f * 1e6:>11.2f} us{t / f:>9.1f}x")
    tp = min(end_to_end(True) for _ in range(3))
    tf = min(end_to_end(False) for _ in range(3)) if _fast is not None else float("nan")
    print(f"{'classify 30 linkages':<22}{tp:>12.3f} s{tf:>12.3f} s{tp / tf:>9.1f}x")


if __name__ == "__main__":
    main()
