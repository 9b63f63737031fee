"""Benchmark the compiled kernels against the pure-Python fallbacks.

Times maximal-clique enumeration (tree listing) and the lattice meet/join
scan on full instances of growing size, running each kernel directly so
both backends are measured in the same process regardless of which one the
package selected at import.

Usage: python benchmarks/bench_kernels.py [max_n]
"""

from __future__ import annotations

import sys
import time

from cambrian import _pykernels
from cambrian.core import Signature, edges_cross
from cambrian.forest import build_edge_set, full_pair
from cambrian.poset import flip_poset

try:
    from cambrian import _ckernels
except ImportError:
    _ckernels = None


def _compat_masks(n: int) -> list[int]:
    sig = Signature((-1, 1) * (n // 2) + (-1,) * (n % 2))
    edges = build_edge_set(sig, full_pair(sig))
    compat = [0] * len(edges)
    for a in range(len(edges)):
        for b in range(a + 1, len(edges)):
            if not edges_cross(edges[a], edges[b], sig):
                compat[a] |= 1 << b
                compat[b] |= 1 << a
    return compat


def _time(fn, *args, repeat: int = 3) -> tuple[float, object]:
    best, result = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_cliques(max_n: int) -> None:
    print("maximal cliques (tree enumeration)")
    print(f"{'n':>3} {'edges':>6} {'trees':>8} {'pure (s)':>10} {'cython (s)':>11} {'speedup':>8}")
    for n in range(4, max_n + 1):
        compat = _compat_masks(n)
        t_pure, r_pure = _time(_pykernels.maximal_cliques, compat)
        if _ckernels is not None:
            t_cy, r_cy = _time(_ckernels.maximal_cliques, compat)
            assert r_pure == r_cy, "backends disagree"
            ratio = f"{t_pure / t_cy:7.1f}x"
            cy = f"{t_cy:11.4f}"
        else:
            ratio, cy = "    n/a", "        n/a"
        print(f"{n:>3} {len(compat):>6} {len(r_pure):>8} {t_pure:>10.4f} {cy} {ratio}")


def bench_lattice(max_n: int) -> None:
    print("\nlattice meet/join scan")
    print(f"{'n':>3} {'trees':>8} {'pure (s)':>10} {'cython (s)':>11} {'speedup':>8}")
    for n in range(4, max_n + 1):
        sig = Signature((-1, 1) * (n // 2) + (-1,) * (n % 2))
        p = flip_poset(sig, full_pair(sig))
        up, down = list(p._up), list(p._down)
        t_pure, r_pure = _time(_pykernels.lattice_violation, up, down)
        if _ckernels is not None:
            t_cy, r_cy = _time(_ckernels.lattice_violation, up, down)
            assert r_pure == r_cy, "backends disagree"
            ratio = f"{t_pure / t_cy:7.1f}x"
            cy = f"{t_cy:11.4f}"
        else:
            ratio, cy = "    n/a", "        n/a"
        print(f"{n:>3} {len(p):>8} {t_pure:>10.4f} {cy} {ratio}")


if __name__ == "__main__":
    limit = int(sys.argv[1]) if len(sys.argv) > 1 else 8
    bench_cliques(limit)
    bench_lattice(min(limit, 9))
