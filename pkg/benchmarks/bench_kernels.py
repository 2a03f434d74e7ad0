"""Compare the compiled and pure-Python word-counting kernels.

    python3 benchmarks/bench_kernels.py [--n 20] [--repeat 3]
"""
import argparse
import time

from lexworld import _pykernels
from lexworld.seq import EPSeq
from lexworld.sft import _bound_bytes

try:
    from lexworld import _ckernels
except ImportError:
    _ckernels = None

PAIRS = [
    ("full shift", "(1)", "(0)"),
    ("golden mean", "(110)", "(001)"),
    ("Hofbauer k=1", "1(10010)", "0010(01)"),
]


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=20)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"{'pair':<14} {'n':>3} {'count':>10} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for name, a, b in PAIRS:
        alpha, beta = EPSeq.parse(a), EPSeq.parse(b)
        ab, bb = _bound_bytes(alpha, args.n), _bound_bytes(beta, args.n)
        count = _pykernels.count_backtrack(ab, bb, args.n)
        t_py = best_of(lambda: _pykernels.count_backtrack(ab, bb, args.n), args.repeat)
        if _ckernels is None:
            print(f"{name:<14} {args.n:>3} {count:>10} {t_py:>10.3f} {'n/a':>11} {'n/a':>8}")
            continue
        assert _ckernels.count_backtrack(ab, bb, args.n) == count
        t_c = best_of(lambda: _ckernels.count_backtrack(ab, bb, args.n), args.repeat)
        print(f"{name:<14} {args.n:>3} {count:>10} {t_py:>10.3f} {t_c:>11.4f} {t_py / t_c:>7.0f}x")


if __name__ == "__main__":
    main()
