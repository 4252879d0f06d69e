"""Compare the compiled and pure-Python Jacobi eigensolvers (numpy eigvalsh as reference).

    python3 benchmarks/bench_jacobi.py [--sizes 4 8 16 32 64] [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from qembed.kernels import available_backends


def random_hermitian(n, rng):
    x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return x + x.conj().T


def solve(fn, m):
    a = np.array(m, dtype=complex, order="C")
    v = np.eye(len(m), dtype=complex)
    fn(a, v, 1e-12 * np.linalg.norm(m), 100)
    return np.sort(np.diag(a).real)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[4, 8, 16, 32, 64])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    backends = available_backends()
    rng = np.random.default_rng(0)
    names = sorted(backends)
    print(f"{'n':>4}  " + "  ".join(f"{b + ' ms':>12}" for b in names) + f"  {'numpy ms':>10}  {'speedup':>8}  {'max err':>9}")
    for n in args.sizes:
        m = random_hermitian(n, rng)
        ref = np.linalg.eigvalsh(m)
        times, err = {}, 0.0
        for b in names:
            number = max(1, int(200 / n)) if b == "cython" else max(1, int(20 / n))
            t = min(timeit.repeat(lambda: solve(backends[b], m), number=number, repeat=args.repeat)) / number
            times[b] = 1e3 * t
            err = max(err, float(np.max(np.abs(solve(backends[b], m) - ref))))
        t_np = 1e3 * min(timeit.repeat(lambda: np.linalg.eigvalsh(m), number=50, repeat=args.repeat)) / 50
        speed = times["python"] / times["cython"] if "cython" in times else float("nan")
        print(f"{n:>4}  " + "  ".join(f"{times[b]:>12.3f}" for b in names)
              + f"  {t_np:>10.3f}  {speed:>7.1f}x  {err:>9.1e}")


if __name__ == "__main__":
    main()
