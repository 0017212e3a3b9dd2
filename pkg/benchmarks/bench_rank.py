"""Compare the rank backends on real slice matrices of the twisted differential.

    python3 benchmarks/bench_rank.py [--repeat 3] [--classes D5,E7,A5]

Each row times one matrix ``A_{k,m}`` taken from an n = 4 catalog germ:
the numba kernel, the numpy fallback (both modulo 2^31 - 1) and exact
fraction-free elimination over Q.  All three ranks are printed so the
agreement is visible.
"""

from __future__ import annotations

import argparse
import time

from npcoh import _kernels, linalg
from npcoh.engine import default_window, slice_basis, twisted_complex
from npcoh.normal_forms import parse_class, standard_polynomial


def _best(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return out, best


def pick_slices(name: str, n: int, p: int, count: int):
    f, W, N = standard_polynomial(parse_class(name, n))
    cx = twisted_complex(f, W, p)
    hi = default_window(f, W, p)[1]
    sizes = []
    for k in range(n):
        for m in range(hi + 1):
            src = slice_basis(W, k, m).dim
            tgt = slice_basis(W, k + 1, m + N).dim
            if src and tgt:
                sizes.append((src * tgt, k, m, tgt, src))
    sizes.sort(reverse=True)
    return cx, sizes[:count]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--classes", default="A5,D5,E7")
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--p", type=int, default=0)
    ap.add_argument("--per-class", type=int, default=3)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    have_numba = _kernels._sparse_rank_jit is not None
    if have_numba:  # compile outside the timed region
        _kernels.rank_mod([{0: 1}], 1, use="numba")
    header = f"{'germ':<5} {'k':>2} {'m':>4} {'shape':>11} {'numba s':>9} {'numpy s':>9} {'exact s':>9}  ranks"
    print(header)
    print("-" * len(header))
    totals = {"numba": 0.0, "numpy": 0.0, "exact": 0.0}
    for name in args.classes.split(","):
        cx, picks = pick_slices(name.strip(), args.n, args.p, args.per_class)
        for _, k, m, rows, cols in picks:
            columns = cx.columns(k, m)
            ranks = []
            times = []
            for use in ("numba", "numpy"):
                if use == "numba" and not have_numba:
                    ranks.append("-")
                    times.append(float("nan"))
                    continue
                r, t = _best(lambda: _kernels.rank_mod(columns, rows, use=use), args.repeat)
                ranks.append(r)
                times.append(t)
                totals[use] += t
            r, t = _best(lambda: linalg.rank(columns), 1)
            ranks.append(r)
            times.append(t)
            totals["exact"] += t
            print(
                f"{name:<5} {k:>2} {m:>4} {f'{rows}x{cols}':>11} "
                f"{times[0]:>9.4f} {times[1]:>9.4f} {times[2]:>9.4f}  {ranks}"
            )
    print("-" * len(header))
    print(f"totals: numba {totals['numba']:.3f}s  numpy {totals['numpy']:.3f}s  exact {totals['exact']:.3f}s")
    if have_numba and totals["numba"]:
        print(f"numpy / numba = {totals['numpy'] / totals['numba']:.1f}x")


if __name__ == "__main__":
    main()
