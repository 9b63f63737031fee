"""Compiled and pure bitmask kernels must be interchangeable."""

from __future__ import annotations

import os
import random
import subprocess
import sys

import pytest

from cambrian import _pykernels, active_backend
from cambrian import backend

ckernels = pytest.importorskip(
    "cambrian._ckernels", reason="compiled kernels not built"
)


def random_graph(rng, n, p):
    compat = [0] * n
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < p:
                compat[a] |= 1 << b
                compat[b] |= 1 << a
    return compat


def random_poset_masks(rng, n, p):
    """Upset/downset bitmasks of a random DAG closed transitively; element
    order is a linear extension by construction."""
    leq = [[a == b for b in range(n)] for a in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < p:
                leq[a][b] = True
    for k in range(n):
        for a in range(n):
            if leq[a][k]:
                for b in range(n):
                    if leq[k][b]:
                        leq[a][b] = True
    upsets = [sum(1 << b for b in range(n) if leq[a][b]) for a in range(n)]
    downsets = [sum(1 << b for b in range(n) if leq[b][a]) for a in range(n)]
    return leq, upsets, downsets


def naive_violation(leq):
    n = len(leq)
    for a in range(n):
        for b in range(a + 1, n):
            upper = [c for c in range(n) if leq[a][c] and leq[b][c]]
            if not any(all(leq[u][c] for c in upper) for u in upper):
                return ("join", a, b)
            lower = [c for c in range(n) if leq[c][a] and leq[c][b]]
            if not any(all(leq[c][u] for c in lower) for u in lower):
                return ("meet", a, b)
    return None


def test_backend_is_selected():
    assert active_backend() in ("compiled", "pure")
    if not os.environ.get("CAMBRIAN_FORCE_PURE"):
        assert active_backend() == "compiled"


def test_clique_kernels_agree():
    rng = random.Random(97)
    for _ in range(150):
        n = rng.randint(0, 80)  # beyond 64 exercises the two-word packing
        compat = random_graph(rng, n, rng.choice((0.15, 0.35, 0.6)))
        assert ckernels.maximal_cliques(compat) == _pykernels.maximal_cliques(
            compat
        )


def test_clique_kernel_edge_cases():
    assert _pykernels.maximal_cliques([]) == ckernels.maximal_cliques([]) == []
    assert _pykernels.maximal_cliques([0]) == ckernels.maximal_cliques([0]) == [1]
    triangle = [0b110, 0b101, 0b011]
    assert ckernels.maximal_cliques(triangle) == [0b111]


def test_clique_kernel_vertex_limit():
    compat = random_graph(random.Random(3), 130, 0.1)
    with pytest.raises(ValueError):
        ckernels.maximal_cliques(compat)
    # the dispatcher silently falls back to the pure path
    assert backend.maximal_cliques(compat) == _pykernels.maximal_cliques(compat)


def test_lattice_violation_fixed_cases():
    cases = [
        # chain 0 < 1 < 2
        ([0b111, 0b110, 0b100], [0b001, 0b011, 0b111], None),
        # vee: 0 < 1, 0 < 2 —  1 and 2 have no join
        ([0b111, 0b010, 0b100], [0b001, 0b011, 0b101], ("join", 1, 2)),
        # wedge: 0 < 2, 1 < 2 — 0 and 1 have no meet
        ([0b101, 0b110, 0b100], [0b001, 0b010, 0b111], ("meet", 0, 1)),
        # bowtie: {0,1} < {2,3}
        (
            [0b1101, 0b1110, 0b0100, 0b1000],
            [0b0001, 0b0010, 0b0111, 0b1011],
            ("join", 0, 1),
        ),
    ]
    for upsets, downsets, expected in cases:
        assert _pykernels.lattice_violation(upsets, downsets) == expected
        assert ckernels.lattice_violation(upsets, downsets) == expected


def test_lattice_violation_agreement_random():
    rng = random.Random(411)
    for _ in range(300):
        n = rng.randint(1, 11)
        leq, upsets, downsets = random_poset_masks(rng, n, rng.choice((0.2, 0.5)))
        want = naive_violation(leq)
        assert _pykernels.lattice_violation(upsets, downsets) == want
        assert ckernels.lattice_violation(upsets, downsets) == want


def _run(code, force_pure):
    env = dict(os.environ)
    env.pop("CAMBRIAN_FORCE_PURE", None)
    if force_pure:
        env["CAMBRIAN_FORCE_PURE"] = "1"
    return subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True
    )


def test_force_pure_environment_variable():
    code = "import cambrian; print(cambrian.active_backend())"
    assert _run(code, force_pure=True).stdout.strip() == "pure"
    assert _run(code, force_pure=False).stdout.strip() == "compiled"


def test_backends_enumerate_identically():
    code = (
        "import cambrian as c\n"
        "from cambrian.core import parse_signature\n"
        "sig = parse_signature('-++-')\n"
        "print(c.enumerate_trees(sig, c.full_pair(sig)))\n"
        "print(c.cambrian_lattice(sig).elements[:5])\n"
    )
    pure = _run(code, force_pure=True)
    fast = _run(code, force_pure=False)
    assert pure.returncode == fast.returncode == 0, (pure.stderr, fast.stderr)
    assert pure.stdout == fast.stdout
