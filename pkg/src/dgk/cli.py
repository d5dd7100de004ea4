"""Command-line front end.

Verbs: compute, enumerate, pairs, solve, search, verify.  All numeric output
is exact (integers or p/q fractions); --json mirrors every table.  Exit codes:
0 success, 1 domain error, 2 usage error, 3 golden mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import chains
from .barks import (
    bark_chain,
    bark_fork,
    bark_one_sided,
    enumerate_exceptional_shapes,
    group_order,
)
from .graphs import (
    ChainParseError,
    Fork,
    format_chain,
    parse_chain,
    parse_fork,
)
from .pairs import CharPairSeq, pairs_from_fiber, reconstruct_fiber
from .search import (
    GOLDEN_FILES,
    golden_dir,
    load_bounds,
    run_search,
    search_fiber_pairs,
    verify_suite,
)
from .ruling import solve_two_fiber


class DomainError(Exception):
    pass


def _fr(x: Fraction | int) -> str:
    if isinstance(x, int):
        return str(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _parse_graph(text: str):
    text = text.strip()
    if text.startswith("{"):
        return parse_fork(text)
    return parse_chain(text)


def cmd_compute(args) -> tuple[int, object, str]:
    graph = _parse_graph(args.graph)
    what = args.quantity
    if isinstance(graph, Fork):
        if what == "d":
            from .barks import fork_invariants

            val = fork_invariants(graph)[0]
        elif what in ("e", "etilde", "delta"):
            from .barks import fork_invariants

            _, dl, ee, et = fork_invariants(graph)
            val = {"e": ee, "etilde": et, "delta": dl}[what]
        elif what == "bark":
            bark = bark_fork(graph)
            payload = {
                "coefficients": [_fr(c) for c in bark.coefficients],
                "bk_square": _fr(bark.bk_square),
            }
            return 0, payload, (
                "coefficients: " + " ".join(_fr(c) for c in bark.coefficients)
                + f"\nBk^2 = {_fr(bark.bk_square)}"
            )
        elif what == "group":
            val = group_order(graph)
        else:
            raise DomainError(f"{what} is not defined for forks")
        return 0, {what: _fr(val)}, _fr(val)
    ws = graph
    if what == "bark":
        if args.one_sided:
            bark = bark_one_sided(ws)
        else:
            bark = bark_chain(ws)
        payload = {
            "coefficients": [_fr(c) for c in bark.coefficients],
            "bk_square": _fr(bark.bk_square),
        }
        return 0, payload, (
            "coefficients: " + " ".join(_fr(c) for c in bark.coefficients)
            + f"\nBk^2 = {_fr(bark.bk_square)}"
        )
    if what == "group":
        val: object = group_order(ws)
    else:
        try:
            val = {
                "d": lambda: chains.d(ws),
                "dprime": lambda: chains.d_prime(ws),
                "e": lambda: chains.e(ws),
                "etilde": lambda: chains.e_tilde(ws),
                "delta": lambda: chains.delta(ws),
            }[what]()
        except chains.DegenerateChainError as exc:
            raise DomainError(str(exc)) from exc
    return 0, {what: _fr(val)}, _fr(val)


def cmd_enumerate(args) -> tuple[int, object, str]:
    if args.kind == "chains":
        found = chains.enumerate_admissible_chains(args.d)
        lines = [format_chain(ws) for ws in found]
        return 0, lines, "\n".join(lines)
    shapes = enumerate_exceptional_shapes(args.max_size)
    payload = [
        {
            "shape": s.key(),
            "epsilon": s.epsilon,
            "families": list(s.families),
            "d": s.d,
            "ke": s.ke,
            "bk_square": _fr(s.bk_square),
            "group_order": s.g_order,
        }
        for s in shapes
    ]
    text = "\n".join(
        f"{p['shape']} eps={p['epsilon']} d={p['d']} K.E={p['ke']}"
        f" Bk^2={p['bk_square']} |G|={p['group_order']}"
        for p in payload
    )
    return 0, payload, text


def _fiber_text(tree) -> str:
    if tree.is_chain():
        order = tree.chain_order()
        parts = []
        for v in order:
            star = "*" if v == tree.neg_curve else ""
            parts.append(f"{tree.weights[v]}{star}:{tree.mults[v]}")
        return "[" + ",".join(parts) + "]"
    nodes = [
        {
            "weight": tree.weights[v],
            "mult": tree.mults[v],
            "neg": v == tree.neg_curve,
        }
        for v in range(len(tree))
    ]
    edges = sorted((a, b) for a in range(len(tree)) for b in tree.adj[a] if a < b)
    return json.dumps({"nodes": nodes, "edges": edges})


def cmd_pairs(args) -> tuple[int, object, str]:
    if args.action == "reconstruct":
        vals = args.numbers
        if len(vals) % 2 or not vals:
            raise DomainError("expected pairs: c1 p1 [c2 p2 ...]")
        seq = tuple((vals[i], vals[i + 1]) for i in range(0, len(vals), 2))
        try:
            tree = reconstruct_fiber(seq)
        except Exception as exc:
            raise DomainError(str(exc)) from exc
        text = _fiber_text(tree)
        payload = {
            "fiber": text,
            "chain": format_chain(tree.chain_weights()) if tree.is_chain() else None,
            "multiplicities": list(tree.chain_mults()) if tree.is_chain() else None,
        }
        return 0, payload, text
    # extract
    return _extract_pairs(args.fiber)


def _extract_pairs(text: str) -> tuple[int, object, str]:
    from .graphs import WeightedTree
    from .pairs import FiberTree

    text = text.strip()
    entries: list[tuple[int, int | None, bool]] = []
    body = text
    if body.startswith("["):
        body = body[1:-1]
    for item in body.split(","):
        item = item.strip()
        star = "*" in item
        item = item.replace("*", "")
        if item.startswith("(") and item.endswith(")"):
            entries.extend([(2, None, False)] * int(item[1:-1]))
            continue
        if ":" in item:
            w, m = item.split(":")
            entries.append((int(w), int(m), star))
        else:
            entries.append((int(item), None, star))
    tree = FiberTree()
    neg = None
    for i, (w, m, star) in enumerate(entries):
        tree.add_node(w, m or 0, 0)
        if i:
            tree.connect(i - 1, i)
        if star:
            neg = i
    if any(m is None for _, m, _ in entries):
        # recover multiplicities as the primitive kernel vector
        mat = WeightedTree(
            tree.weights, [(i, i + 1) for i in range(len(entries) - 1)]
        ).minus_intersection_matrix()
        mults = _kernel_vector(mat)
        if mults is None:
            raise DomainError("not a fiber: minus matrix has no kernel")
        tree.mults = mults
    if neg is None:
        cands = [
            v
            for v in range(len(entries))
            if tree.weights[v] == 1 and tree.mults[v] > 1
        ]
        if len(cands) == 1:
            neg = cands[0]
        elif len(entries) == 1 and tree.weights[0] == 0:
            neg = None
        else:
            raise DomainError("mark the (-1)-curve with '*'")
    tree.neg_curve = neg
    try:
        seq = pairs_from_fiber(tree)
    except ValueError as exc:
        raise DomainError(str(exc)) from exc
    pairs = [[c, p] for c, p in seq.pairs]
    text_out = " ".join(f"({c},{p})" for c, p in seq.pairs)
    return 0, {"pairs": pairs}, text_out


def _kernel_vector(mat: list[list[int]]) -> list[int] | None:
    from fractions import Fraction
    from math import gcd

    n = len(mat)
    a = [[Fraction(x) for x in row] for row in mat]
    # eliminate to find a kernel vector with last coordinate 1
    piv_cols = []
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, n) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        pv = a[row][col]
        for r in range(n):
            if r != row and a[r][col] != 0:
                f = a[r][col] / pv
                for c in range(n):
                    a[r][c] -= f * a[row][c]
        piv_cols.append(col)
        row += 1
    free = [c for c in range(n) if c not in piv_cols]
    if len(free) != 1:
        return None
    fc = free[0]
    vec = [Fraction(0)] * n
    vec[fc] = Fraction(1)
    for r, col in enumerate(piv_cols):
        vec[col] = -a[r][fc] / a[r][col]
    den = 1
    for x in vec:
        den = den * x.denominator // gcd(den, x.denominator)
    out = [int(x * den) for x in vec]
    if all(v < 0 for v in out):
        out = [-v for v in out]
    if any(v <= 0 for v in out):
        return None
    g = 0
    for v in out:
        g = gcd(g, v)
    return [v // g for v in out]


def cmd_solve(args) -> tuple[int, object, str]:
    from .barks import eshape_catalog

    t1 = parse_chain(args.t1)
    t2 = parse_chain(args.t2)
    ekey = args.e.strip()
    catalog = {(s.key(), s.epsilon): s for s in eshape_catalog(12)}
    choices = [s for (k, _), s in catalog.items() if k == format_chain(parse_chain(ekey))]
    if args.epsilon is not None:
        choices = [s for s in choices if s.epsilon == args.epsilon]
    if not choices:
        raise DomainError(f"no catalog shape {ekey}")
    solutions = []
    for shape in choices:
        solutions.extend(solve_two_fiber(t1, t2, shape))
    payload = [s.to_dict() for s in solutions]
    lines = [
        f"n={s.n} gamma={s.gamma} kappa={s.kappa} kappa~={s.kappa_t}"
        f" (c,p)=({s.c},{s.p}) (c',p')=({s.c_prime},{s.p_prime})"
        f" (c~,p~)=({s.c_tilde},{s.p_tilde}) b={s.b}"
        f" T1={format_chain(s.t1)} T2={format_chain(s.t2)} T3={format_chain(s.t3)}"
        f" -d(D)/d(E)={_fr(s.minus_dd_over_de)} gcd={s.gcd_c}"
        f" homology-check={'fails' if s.rejected_by_square_gcd else 'holds'}"
        for s in solutions
    ]
    return 0, payload, "\n".join(lines) if lines else "(no solutions)"


def cmd_search(args) -> tuple[int, object, str]:
    result = run_search(args.name, args.bounds, jobs=args.jobs)
    if args.csv:
        rows = []
        if args.name == "final-bounds":
            rows.append("eshape")
            rows.extend(result["eshapes"])
        elif args.name == "knonpos":
            rows.append("case,b,twigs,eshape,epsilon")
            for case in ("case1", "case2"):
                for c in result[case]:
                    rows.append(
                        f"{case},{c['b']},{'|'.join(c['twigs'])},{c['eshape']},{c['epsilon']}"
                    )
        elif args.name == "xy":
            rows.append("b,twigs,eshape,epsilon")
            for c in result:
                rows.append(f"{c['b']},{'|'.join(c['twigs'])},{c['eshape']},{c['epsilon']}")
        else:
            rows.append("n,gamma,kappa,kappa_tilde,c,p,c_prime,p_prime,c_tilde,p_tilde,b,t1,t2,t3")
            for s in result:
                rows.append(
                    f"{s['n']},{s['gamma']},{s['kappa']},{s['kappa_tilde']},{s['c']},{s['p']},"
                    f"{s['c_prime']},{s['p_prime']},{s['c_tilde']},{s['p_tilde']},{s['b']},"
                    f"{s['t1']},{s['t2']},{s['t3']}"
                )
        return 0, result, "\n".join(rows)
    return 0, result, json.dumps(result, indent=2, sort_keys=True)


def cmd_verify(args) -> tuple[int, object, str]:
    if args.suite != "paper":
        raise DomainError(f"unknown suite {args.suite!r}")
    results = verify_suite(jobs=args.jobs)
    ok = all(r["status"] == "ok" for r in results.values())
    lines = [f"{name}: {r['status']}" for name, r in results.items()]
    text = "\n".join(lines) + ("\nall searches match" if ok else "\nGOLDEN MISMATCH")
    return (0 if ok else 3), results, text


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="dgk",
        description="Exact invariants and case searches for weighted dual graphs.",
    )
    ap.add_argument("--json", action="store_true", help="emit JSON instead of text")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("compute", help="invariants of a chain or fork")
    p.add_argument("quantity", choices=["d", "dprime", "e", "etilde", "delta", "bark", "group"])
    p.add_argument("graph", help="bracket chain like [3,(2)] or fork JSON")
    p.add_argument("--one-sided", action="store_true", help="one-sided bark (chains)")
    p.set_defaults(fn=cmd_compute)

    p = sub.add_parser("enumerate", help="admissible chains or exceptional shapes")
    pe = p.add_subparsers(dest="kind", required=True)
    pc = pe.add_parser("chains")
    pc.add_argument("--d", dest="d", type=int, required=True)
    pc.set_defaults(fn=cmd_enumerate, kind="chains")
    ps = pe.add_parser("eshapes")
    ps.add_argument("--max-size", type=int, default=12)
    ps.set_defaults(fn=cmd_enumerate, kind="eshapes")

    p = sub.add_parser("pairs", help="fiber reconstruction from pairs and back")
    pp = p.add_subparsers(dest="action", required=True)
    pr = pp.add_parser("reconstruct")
    pr.add_argument("numbers", nargs="+", type=int)
    pr.set_defaults(fn=cmd_pairs, action="reconstruct")
    px = pp.add_parser("extract")
    px.add_argument("fiber")
    px.set_defaults(fn=cmd_pairs, action="extract")

    p = sub.add_parser("solve", help="two-fiber Diophantine solver")
    pt = p.add_subparsers(dest="what", required=True)
    tw = pt.add_parser("twofiber")
    tw.add_argument("--t1", required=True)
    tw.add_argument("--t2", required=True)
    tw.add_argument("--e", required=True)
    tw.add_argument("--epsilon", type=int, default=None)
    tw.set_defaults(fn=cmd_solve)

    p = sub.add_parser("search", help="the four exhaustive case searches")
    p.add_argument(
        "name", choices=["final-bounds", "xy", "knonpos", "fiber-pairs"]
    )
    p.add_argument("--bounds", default=None, help="path to a bounds JSON file")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--csv", action="store_true")
    p.set_defaults(fn=cmd_search)

    p = sub.add_parser("verify", help="run searches against golden files")
    p.add_argument("--suite", default="paper")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=cmd_verify)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        code, payload, text = args.fn(args)
    except (DomainError, ChainParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
