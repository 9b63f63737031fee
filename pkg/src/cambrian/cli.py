"""Command-line interface.

Subcommands: `enumerate` lists the trees of an instance as JSON; `verify`
re-checks a structural property (lattice, interval, triangulation,
regularity, tropical) and exits 0/1 accordingly; `probe-conjecture` hunts
for counterexamples to the nested-pair interval conjecture; `export` writes
DOT or SVG drawings and JSON data.  Exit codes: 0 success, 1 a verification
failed or a counterexample was found, 2 bad input or usage, 3 the instance
exceeds the enumeration guard (re-run with --force to override).

All outputs are deterministic byte-for-byte for fixed arguments.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from multiprocessing import Pool

from .core import Signature, parse_signature
from .errors import DegenerateLift, InputError, TooLarge
from .exactnum import value_float
from .forest import (
    IndexPair,
    check_instance,
    enumerate_trees,
    extremal_tree,
    full_pair,
    random_index_pair,
    random_nested_pair,
)
from .poset import (
    cambrian_lattice,
    conjecture_probe,
    find_isomorphic_interval,
    flip_poset,
    increasing_flip_graph,
    is_lattice,
)
from .simplicial import (
    build_lift,
    mixed_subdivision_report,
    regularity_check,
    verify_triangulation,
)
from .tropical import associahedron_complex, face_polyhedron, tropical_point

_PALETTE = (
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
    "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac",
)


# ---------------------------------------------------------------------------
# Argument plumbing
# ---------------------------------------------------------------------------


def _parse_indices(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise InputError(f"expected comma-separated integers: {text!r}") from None


def _instance(args) -> tuple[Signature, IndexPair]:
    sig = parse_signature(args.signature)
    if args.full:
        ij = full_pair(sig)
    elif args.black is not None and args.white is not None:
        ij = IndexPair(_parse_indices(args.black), _parse_indices(args.white))
    else:
        raise InputError("give either --full or both --black and --white")
    check_instance(sig, ij)
    return sig, ij


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _edges(t) -> list:
    return [[i, j] for i, j in t]


def _edge_string(t) -> str:
    return "".join(f"({i},{j})" for i, j in t)


# ---------------------------------------------------------------------------
# enumerate
# ---------------------------------------------------------------------------


def cmd_enumerate(args) -> int:
    sig, ij = _instance(args)
    trees = enumerate_trees(sig, ij, args.force)
    payload = {
        "signature": str(sig),
        "black": list(ij.blacks),
        "white": list(ij.whites),
        "count": len(trees),
        "trees": [_edges(t) for t in trees],
    }
    _emit(_json(payload), args.output)
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    sig, ij = _instance(args)
    payload = {
        "check": args.what,
        "signature": str(sig),
        "black": list(ij.blacks),
        "white": list(ij.whites),
    }

    if args.what == "lattice":
        p = flip_poset(sig, ij, args.force)
        ok, violation = is_lattice(p)
        payload["size"] = len(p)
        payload["ok"] = ok
        payload["violation"] = (
            None
            if violation is None
            else {
                "kind": violation[0],
                "a": _edges(violation[1]),
                "b": _edges(violation[2]),
            }
        )

    elif args.what == "interval":
        small = flip_poset(sig, ij, args.force)
        big = cambrian_lattice(sig, args.force)
        hit = find_isomorphic_interval(small, big)
        payload["size"] = len(small)
        payload["lattice_size"] = len(big)
        payload["ok"] = hit is not None
        payload["interval"] = (
            None if hit is None else {"bottom": _edges(hit[0]), "top": _edges(hit[1])}
        )

    elif args.what == "triangulation":
        rep = verify_triangulation(sig, ij, None, args.force)
        payload["ok"] = rep.ok
        payload["simplices"] = rep.simplex_count
        payload["expected"] = rep.expected_count
        payload["improper_pairs"] = len(rep.improper_pairs)
        payload["dual_equals_flips"] = rep.dual_equals_flips

    elif args.what == "regularity":
        lift = build_lift(sig, ij, args.lift)
        try:
            ok, witnesses = regularity_check(sig, ij, lift, args.force)
        except DegenerateLift as exc:
            payload["ok"] = False
            payload["degenerate"] = str(exc)
            _emit(_json(payload), args.output)
            return 1
        payload["ok"] = ok
        payload["lift"] = args.lift
        payload["folds"] = [
            {"leaving": list(w.leaving), "entering": list(w.entering)}
            for w in witnesses[:10]
        ]

    elif args.what == "tropical":
        lift = build_lift(sig, ij, args.lift)
        rep = associahedron_complex(sig, ij, lift, args.force)
        payload["ok"] = rep.ok
        payload["lift"] = args.lift
        payload["trees"] = rep.tree_count
        payload["edge_cells"] = rep.edge_cell_count
        payload["flips"] = rep.flip_count
        payload["checks"] = {
            "vertices_are_trees": rep.vertices_are_trees,
            "walls_match": rep.walls_match,
            "anti_isomorphic": rep.anti_isomorphic,
            "functional_increasing": rep.functional_increasing,
            "functional_monotone": rep.functional_monotone,
            "tie_arcs": list(rep.tie_arcs),
            "geometry_ok": rep.geometry_ok,
        }
        payload["hyperplanes"] = {
            str(i): rep.hyperplane_classes[i] for i in ij.blacks
        }
        trees = increasing_flip_graph(sig, ij, args.force).trees
        payload["points"] = [
            {
                "tree": _edges(t),
                "coords": {
                    str(j): format(value_float(v), ".12f")
                    for j, v in tropical_point(t, sig, ij, lift).items()
                },
            }
            for t in trees
        ]

    else:  # pragma: no cover - argparse restricts choices
        raise InputError(f"unknown check: {args.what}")

    _emit(_json(payload), args.output)
    return 0 if payload["ok"] else 1


# ---------------------------------------------------------------------------
# probe-conjecture
# ---------------------------------------------------------------------------


def _probe_trial(payload: tuple[int, int]):
    seed, n = payload
    rng = random.Random(seed)
    sig = Signature(tuple(rng.choice((-1, 1)) for _ in range(n)))
    outer = random_index_pair(rng, n)
    inner = random_nested_pair(rng, outer)
    rep = conjecture_probe(sig, inner, outer)
    return {
        "signature": str(sig),
        "outer": {"black": list(outer.blacks), "white": list(outer.whites)},
        "inner": {"black": list(inner.blacks), "white": list(inner.whites)},
        "ok": rep.ok,
    }


def cmd_probe_conjecture(args) -> int:
    if args.random:
        if args.n is None:
            raise InputError("--random needs --n")
        master = random.Random(args.seed)
        payloads = [
            (master.randrange(2**63), args.n) for _ in range(args.trials)
        ]
        if args.jobs > 1:
            with Pool(args.jobs) as pool:
                results = pool.map(_probe_trial, payloads)
        else:
            results = [_probe_trial(p) for p in payloads]
        failures = [r for r in results if not r["ok"]]
        payload = {
            "mode": "random",
            "n": args.n,
            "trials": args.trials,
            "seed": args.seed,
            "failures": failures,
            "ok": not failures,
        }
        _emit(_json(payload), args.output)
        return 0 if not failures else 1

    if args.signature is None:
        raise InputError("give --signature (or use --random)")
    sig = parse_signature(args.signature)
    if args.black is None or args.white is None:
        raise InputError("give the inner pair with --black and --white")
    inner = IndexPair(_parse_indices(args.black), _parse_indices(args.white))
    if args.black_sup is not None and args.white_sup is not None:
        outer = IndexPair(_parse_indices(args.black_sup), _parse_indices(args.white_sup))
    else:
        outer = full_pair(sig)
    check_instance(sig, outer)
    rep = conjecture_probe(sig, inner, outer, args.force)
    payload = {
        "mode": "explicit",
        "signature": str(sig),
        "inner": {"black": list(inner.blacks), "white": list(inner.whites)},
        "outer": {"black": list(outer.blacks), "white": list(outer.whites)},
        "ok": rep.ok,
        "witness": (
            None
            if rep.witness is None
            else {"bottom": _edges(rep.witness[0]), "top": _edges(rep.witness[1])}
        ),
    }
    _emit(_json(payload), args.output)
    return 0 if rep.ok else 1


# ---------------------------------------------------------------------------
# export
# ---------------------------------------------------------------------------


def _svg_document(body: list[str], width: float, height: float) -> str:
    head = (
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.0f} {height:.0f}">'
    )
    return "\n".join([head, *body, "</svg>"]) + "\n"


def _export_dot(sig, ij, force) -> str:
    g = increasing_flip_graph(sig, ij, force)
    lines = ["digraph flips {", "  rankdir=BT;"]
    for k, t in enumerate(g.trees):
        lines.append(f'  t{k} [label="{_edge_string(t)}"];')
    for (a, b), (leaving, entering) in zip(g.arcs, g.exchanged):
        lines.append(
            f'  t{a} -> t{b} [leaving="({leaving[0]},{leaving[1]})" '
            f'entering="({entering[0]},{entering[1]})"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def _export_json(sig, ij, args) -> str:
    if args.tree:
        t = extremal_tree(sig, ij, args.tree)
        return _json(
            {
                "signature": str(sig),
                "black": list(ij.blacks),
                "white": list(ij.whites),
                "edges": _edges(t),
            }
        )
    trees = enumerate_trees(sig, ij, args.force)
    return _json(
        {
            "signature": str(sig),
            "black": list(ij.blacks),
            "white": list(ij.whites),
            "count": len(trees),
            "trees": [_edges(t) for t in trees],
        }
    )


def _export_svg_lattice(sig, ij, force) -> str:
    p = flip_poset(sig, ij, force)
    heights = p.heights
    maxh = max(heights)
    levels: dict[int, list[int]] = {}
    for k, h in enumerate(heights):
        levels.setdefault(h, []).append(k)
    widest = max(len(v) for v in levels.values())
    margin, dx, dy = 40.0, 110.0, 90.0
    width = 2 * margin + dx * max(widest - 1, 0) + 20
    height = 2 * margin + dy * maxh
    pos = {}
    for h, members in sorted(levels.items()):
        span = dx * (len(members) - 1)
        x0 = (width - span) / 2
        for k, v in enumerate(members):
            pos[v] = (x0 + dx * k, height - margin - dy * h)
    body = []
    for a, b in p.cover_pairs:
        (x1, y1), (x2, y2) = pos[p.index(a)], pos[p.index(b)]
        body.append(
            f'<line x1="{x1:.3f}" y1="{y1:.3f}" x2="{x2:.3f}" y2="{y2:.3f}" '
            'stroke="#555555" stroke-width="1.2"/>'
        )
    for v in range(len(p)):
        x, y = pos[v]
        body.append(
            f'<circle cx="{x:.3f}" cy="{y:.3f}" r="5" fill="#2b6cb0">'
            f"<title>{_edge_string(p.elements[v])}</title></circle>"
        )
    return _svg_document(body, width, height)


def _fit(points: list[tuple[float, float]], size: float = 520.0, margin: float = 25.0):
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
    span = max(hi_x - lo_x, hi_y - lo_y, 1e-9)
    scale = (size - 2 * margin) / span

    def world(p):
        return (
            margin + (p[0] - lo_x) * scale,
            size - margin - (p[1] - lo_y) * scale,
        )

    return world


def _cycle_order(points: list[tuple[float, float]]) -> list[tuple[float, float]]:
    cx = sum(p[0] for p in points) / len(points)
    cy = sum(p[1] for p in points) / len(points)
    return sorted(points, key=lambda p: math.atan2(p[1] - cy, p[0] - cx))


def _export_svg_mixed(sig, ij, force) -> str:
    if len(ij.whites) != 3:
        raise InputError("svg-mixed needs exactly three white indices")
    rep = mixed_subdivision_report(sig, ij, force)
    ambient = [(float(x), float(y)) for x, y in rep.ambient_polygon]
    world = _fit(ambient)
    body = []
    for k, poly in enumerate(rep.cell_polygons):
        pts = " ".join(
            f"{x:.3f},{y:.3f}" for x, y in (world((float(u), float(v))) for u, v in poly)
        )
        color = _PALETTE[k % len(_PALETTE)]
        body.append(
            f'<polygon points="{pts}" fill="{color}" fill-opacity="0.55" '
            'stroke="#333333" stroke-width="1">'
            f"<title>{_edge_string(rep.subdivision.cells[k].tree)}</title></polygon>"
        )
    outline = " ".join(f"{x:.3f},{y:.3f}" for x, y in (world(p) for p in ambient))
    body.append(
        f'<polygon points="{outline}" fill="none" stroke="#000000" stroke-width="2"/>'
    )
    return _svg_document(body, 520.0, 520.0)


def _export_svg_tropical(sig, ij, lift_kind, force) -> str:
    if len(ij.whites) != 3:
        raise InputError("svg-tropical needs exactly three white indices")
    lift = build_lift(sig, ij, lift_kind)
    rep = associahedron_complex(sig, ij, lift, force)
    polys = {
        c.forest: face_polyhedron(c.forest, sig, ij, lift) for c in rep.cells
    }
    corners = [
        (value_float(u), value_float(v))
        for poly in polys.values()
        for u, v in poly.vertices
    ]
    w1, w2, w_max = ij.whites
    gadgets = []  # (black index, kind, world-space segments)
    at_infinity = []
    for i in ij.blacks:
        admissible = [j for j in ij.whites if i < j]
        height = {j: value_float(lift.value((i, j))) for j in admissible}
        if len(admissible) < 2:
            at_infinity.append(i)
        elif len(admissible) == 3:
            apex = (height[w1] - height[w_max], height[w2] - height[w_max])
            corners.append(apex)
            gadgets.append((i, "full", apex))
        else:
            gadgets.append((i, "degenerate", (admissible, height)))
    world = _fit(corners)
    xs = [p[0] for p in corners]
    ys = [p[1] for p in corners]
    reach = max(xs) - min(xs) + max(ys) - min(ys) + 1.0
    lo = (min(xs) - reach, min(ys) - reach)
    hi = (max(xs) + reach, max(ys) + reach)

    def path(points) -> str:
        steps = []
        for k, p in enumerate(points):
            x, y = world(p)
            steps.append(f"{'M' if k == 0 else 'L'} {x:.3f} {y:.3f}")
        return " ".join(steps)

    body = []
    for i, kind, data in gadgets:
        if kind == "full":
            ax, ay = data
            d = " ".join(
                (
                    path([(ax - reach, ay), (ax, ay), (ax, ay - reach)]),
                    path([(ax, ay), (ax + reach, ay + reach)]),
                )
            )
        else:
            admissible, height = data
            if admissible == [w1, w2]:
                shift = height[w1] - height[w2]
                d = path([(shift + lo[1], lo[1]), (shift + hi[1], hi[1])])
            elif admissible == [w1, w_max]:
                x = height[w1] - height[w_max]
                d = path([(x, lo[1]), (x, hi[1])])
            else:
                y = height[w2] - height[w_max]
                d = path([(lo[0], y), (hi[0], y)])
        body.append(
            f'<g class="hyperplane" data-black="{i}" data-kind="{kind}">'
            f'<path d="{d}" fill="none" stroke="#888888" stroke-width="1" '
            f'stroke-dasharray="5,3"/><title>H{i} ({kind})</title></g>'
        )
    for k, i in enumerate(at_infinity):
        body.append(
            f'<text class="infinity-note" x="8" y="{16 * (k + 1)}" '
            f'font-size="12">H{i} at infinity</text>'
        )
    fills = 0
    for c in rep.cells:
        if c.dim != 2:
            continue
        pts = [world((value_float(u), value_float(v))) for u, v in polys[c.forest].vertices]
        attr = " ".join(f"{x:.3f},{y:.3f}" for x, y in _cycle_order(pts))
        color = _PALETTE[fills % len(_PALETTE)]
        fills += 1
        body.append(
            f'<polygon points="{attr}" fill="{color}" fill-opacity="0.45" stroke="none"/>'
        )
    for c in rep.cells:
        if c.dim != 1:
            continue
        verts = polys[c.forest].vertices
        (x1, y1), (x2, y2) = (
            world((value_float(u), value_float(v))) for u, v in verts
        )
        body.append(
            f'<line x1="{x1:.3f}" y1="{y1:.3f}" x2="{x2:.3f}" y2="{y2:.3f}" '
            'stroke="#222222" stroke-width="2"/>'
        )
    for c in rep.cells:
        if c.dim != 0:
            continue
        ((u, v),) = polys[c.forest].vertices
        x, y = world((value_float(u), value_float(v)))
        body.append(
            f'<circle cx="{x:.3f}" cy="{y:.3f}" r="4" fill="#000000">'
            f"<title>{_edge_string(c.vertex_trees[0])}</title></circle>"
        )
    return _svg_document(body, 520.0, 520.0)


def cmd_export(args) -> int:
    sig, ij = _instance(args)
    if args.format == "dot":
        text = _export_dot(sig, ij, args.force)
    elif args.format == "json":
        text = _export_json(sig, ij, args)
    elif args.format == "svg-lattice":
        text = _export_svg_lattice(sig, ij, args.force)
    elif args.format == "svg-mixed":
        text = _export_svg_mixed(sig, ij, args.force)
    else:
        text = _export_svg_tropical(sig, ij, args.lift, args.force)
    _emit(text, args.output)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cambrian",
        description="Enumerate, verify, and draw sign-tuned tree structures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    instance = argparse.ArgumentParser(add_help=False)
    instance.add_argument("--signature", help="sign string such as -++- (or 'm'/'p')")
    instance.add_argument("--black", help="comma-separated black indices")
    instance.add_argument("--white", help="comma-separated white indices")
    instance.add_argument(
        "--full", action="store_true", help="use every admissible index"
    )
    instance.add_argument(
        "--force",
        action="store_true",
        help="override the enumeration size guard (exit 3 otherwise)",
    )
    instance.add_argument("--output", help="write to this file instead of stdout")

    p_enum = sub.add_parser(
        "enumerate", parents=[instance], help="list all trees of an instance"
    )
    p_enum.set_defaults(fn=cmd_enumerate)

    p_verify = sub.add_parser(
        "verify", parents=[instance], help="re-check a structural property"
    )
    p_verify.add_argument(
        "what",
        choices=("lattice", "interval", "triangulation", "regularity", "tropical"),
    )
    p_verify.add_argument(
        "--lift", choices=("sqrt", "rational"), default="sqrt",
        help="height function used by regularity/tropical checks",
    )
    p_verify.set_defaults(fn=cmd_verify)

    p_probe = sub.add_parser(
        "probe-conjecture",
        parents=[instance],
        help="look for nested index pairs whose poset is not an interval",
    )
    p_probe.add_argument("--black-sup", help="outer black indices (default: full)")
    p_probe.add_argument("--white-sup", help="outer white indices (default: full)")
    p_probe.add_argument(
        "--random", action="store_true", help="random trials instead of one instance"
    )
    p_probe.add_argument("--n", type=int, help="signature length for --random")
    p_probe.add_argument("--trials", type=int, default=100)
    p_probe.add_argument("--seed", type=int, default=0)
    p_probe.add_argument("--jobs", type=int, default=1, help="parallel workers")
    p_probe.set_defaults(fn=cmd_probe_conjecture)

    p_export = sub.add_parser(
        "export", parents=[instance], help="write DOT/SVG/JSON artifacts"
    )
    p_export.add_argument(
        "--format",
        required=True,
        choices=("dot", "json", "svg-lattice", "svg-mixed", "svg-tropical"),
    )
    p_export.add_argument(
        "--lift", choices=("sqrt", "rational"), default="sqrt",
        help="height function behind svg-tropical",
    )
    p_export.add_argument(
        "--tree", choices=("min", "max"),
        help="with --format json: emit just this extremal tree",
    )
    p_export.set_defaults(fn=cmd_export)

    return parser


def _normalize_argv(argv: list[str]) -> list[str]:
    """Shield sign strings from argparse.

    A value like ``---`` or ``-++-`` looks like an option (and a bare ``--``
    is swallowed as the positional separator), so spell sign-string values
    in the equivalent m/p alias alphabet before parsing.
    """

    def shield(value: str) -> str:
        if value and all(ch in "-+mp" for ch in value):
            return value.replace("-", "m").replace("+", "p")
        return value

    out = []
    k = 0
    while k < len(argv):
        tok = argv[k]
        if tok == "--signature" and k + 1 < len(argv):
            out.append("--signature=" + shield(argv[k + 1]))
            k += 2
        elif tok.startswith("--signature="):
            out.append("--signature=" + shield(tok[len("--signature="):]))
            k += 1
        else:
            out.append(tok)
            k += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_normalize_argv(list(argv)))
    try:
        return args.fn(args)
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
