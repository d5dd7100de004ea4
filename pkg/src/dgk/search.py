"""The four exhaustive case searches.

Each search enumerates boundary candidates (branch weight, three oriented
twigs, an exceptional shape) inside explicit bounds read from a checked-in
bounds file, evaluates the predicate suite and returns a canonically sorted
list.  Outputs are compared against golden files for exact equality.

Candidate enumeration is driven by the Zariski identity: given the twigs and
b, the bark square of the exceptional shape is pinned exactly, so shapes are
found by hash lookup instead of a product sweep.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path

from . import chains
from .barks import ExceptionalShape, catalog_index, eshape_catalog
from .graphs import Weights, format_chain, parse_chain
from .predicates import (
    BoundaryCandidate,
    PredicateReport,
    evaluate_predicates,
)
from .ruling import TwoFiberSolution, solve_two_fiber


@dataclass(frozen=True)
class ChainRecord:
    ws: Weights
    d: int
    inv_d: Fraction
    e: Fraction
    et: Fraction
    kc: int  # sum of (w - 2)
    size: int


@lru_cache(maxsize=None)
def _records_by_d(d_max: int) -> dict[int, tuple[ChainRecord, ...]]:
    out: dict[int, list[ChainRecord]] = {}
    for dd in range(2, d_max + 1):
        recs = []
        for ws in chains.oriented_chains_with_d(dd):
            recs.append(
                ChainRecord(
                    ws,
                    dd,
                    Fraction(1, dd),
                    chains.e(ws),
                    chains.e_tilde(ws),
                    sum(w - 2 for w in ws),
                    len(ws),
                )
            )
        recs.sort(key=lambda r: r.ws)
        out[dd] = recs
    return {k: tuple(v) for k, v in out.items()}


def _record_for(ws: Weights) -> ChainRecord:
    dd = chains.d(ws)
    return ChainRecord(
        ws, dd, Fraction(1, dd), chains.e(ws), chains.e_tilde(ws),
        sum(w - 2 for w in ws), len(ws),
    )


def load_bounds(name: str, path: str | None = None) -> dict:
    if path is not None:
        return json.loads(Path(path).read_text())
    ref = resources.files("dgk") / "bounds" / f"{name}.json"
    return json.loads(ref.read_text())


def _shape_index(
    shapes: list[ExceptionalShape],
) -> dict[tuple[int, int, int, Fraction], tuple[ExceptionalShape, ...]]:
    index: dict[tuple[int, int, int, Fraction], list[ExceptionalShape]] = {}
    for s in shapes:
        index.setdefault((s.size, s.epsilon, s.ke, s.bk_square), []).append(s)
    return {k: tuple(v) for k, v in index.items()}


def _eps_ke_combos(index) -> tuple[tuple[int, int], ...]:
    return tuple(sorted({(eps, ke) for (_, eps, ke, _) in index}))


def _scan_triples(
    triples,
    b_values,
    index,
    combos,
    predicate_names,
    group_order_mode,
    delta_gmin,
    exclude_eps2_chains=False,
) -> list[tuple[BoundaryCandidate, PredicateReport]]:
    """Evaluate every (twig triple, b, shape) combination against the suite."""
    found: list[tuple[BoundaryCandidate, PredicateReport]] = []
    names = tuple(predicate_names)
    for r1, r2, r3 in triples:
        delta = r1.inv_d + r2.inv_d + r3.inv_d
        if delta >= 1:
            continue
        if delta_gmin is not None and delta + Fraction(1, delta_gmin) <= 1:
            continue
        e = r1.e + r2.e + r3.e
        et = r1.et + r2.et + r3.et
        size_d = 1 + r1.size + r2.size + r3.size
        kd_twigs = r1.kc + r2.kc + r3.kc
        for b in b_values:
            if not b < et:
                continue
            p_sq = (1 - delta) ** 2 / (et - b)
            kd = (b - 2) + kd_twigs
            for eps, ke in combos:
                size_e = 7 + eps + kd + ke - size_d
                if size_e < 1:
                    continue
                req_bk2 = e - 1 - eps - p_sq
                for shape in index.get((size_e, eps, ke, req_bk2), ()):
                    if exclude_eps2_chains and eps == 2 and not shape.is_fork:
                        continue
                    cand = BoundaryCandidate(b, (r1.ws, r2.ws, r3.ws), shape)
                    report = evaluate_predicates(
                        cand, group_order_mode=group_order_mode
                    )
                    if report.passes(names):
                        found.append((cand, report))
    return found


def _triples_for_rules(rules: list[dict], d_max_needed: int):
    """Sorted oriented-twig triples from per-smallest-discriminant rules."""
    by_d = _records_by_d(d_max_needed)
    seen = set()
    for rule in rules:
        x = rule["x"]
        for r1 in by_d.get(x, ()):
            for y in range(rule["y_min"], rule["y_max"] + 1):
                for r2 in by_d.get(y, ()):
                    if (r1.d, r1.ws) > (r2.d, r2.ws):
                        continue
                    for z in range(y, rule["z_max"] + 1):
                        for r3 in by_d.get(z, ()):
                            if (r2.d, r2.ws) > (r3.d, r3.ws):
                                continue
                            key = (r1.ws, r2.ws, r3.ws)
                            if key in seen:
                                continue
                            seen.add(key)
                            yield (r1, r2, r3)


def search_xy(bounds: dict | None = None, jobs: int = 1):
    """Candidates passing the general-type predicate suite in the x,y,z box."""
    cfg = bounds or load_bounds("xy")
    shapes = _named_shapes(cfg["eshapes"])
    index = _shape_index(shapes)
    combos = _eps_ke_combos(index)
    rules = [
        {"x": x, "y_min": x, "y_max": cfg["y_max"], "z_max": cfg["z_max"]}
        for x in range(2, cfg["x_max"] + 1)
    ]
    triples = list(_triples_for_rules(rules, max(cfg["y_max"], cfg["z_max"])))
    found = _run_scan(
        triples,
        tuple(cfg["b"]),
        index,
        combos,
        tuple(cfg["predicates"]),
        cfg["group_order_mode"],
        cfg.get("delta_gmin"),
        jobs,
        cfg.get("exclude_eps2_chains", False),
    )
    found.sort(key=lambda pair: pair[0].sort_key())
    return found


def _run_scan(triples, b_values, index, combos, predicate_names,
              group_order_mode, delta_gmin, jobs, exclude_eps2_chains=False):
    if jobs <= 1 or len(triples) < 64:
        return _scan_triples(
            triples, b_values, index, combos, predicate_names,
            group_order_mode, delta_gmin, exclude_eps2_chains,
        )
    chunks = [triples[i::jobs] for i in range(jobs)]
    found = []
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [
            pool.submit(
                _scan_triples, chunk, b_values, index, combos,
                predicate_names, group_order_mode, delta_gmin,
                exclude_eps2_chains,
            )
            for chunk in chunks
        ]
        for fut in futures:
            found.extend(fut.result())
    return found


def _named_shapes(entries: list) -> list[ExceptionalShape]:
    """Resolve [key, epsilon] pairs against the catalog."""
    catalog = eshape_catalog(12)
    table = {(s.key(), s.epsilon): s for s in catalog}
    return [table[(key, eps)] for key, eps in (tuple(x) for x in entries)]


def search_final_bounds(bounds: dict | None = None, jobs: int = 1) -> dict:
    """The terminal bounding search: which exceptional shapes survive."""
    cfg = bounds or load_bounds("final_bounds")
    index = catalog_index(cfg["catalog_max_size"])
    combos = _eps_ke_combos(index)
    d_max = max(rule["z_max"] for rule in cfg["d_rules"])
    triples = list(_triples_for_rules(cfg["d_rules"], d_max))
    found = _run_scan(
        triples,
        tuple(cfg["b"]),
        index,
        combos,
        tuple(cfg["predicates"]),
        cfg["group_order_mode"],
        cfg.get("delta_gmin"),
        jobs,
        cfg.get("exclude_eps2_chains", False),
    )
    found.sort(key=lambda pair: pair[0].sort_key())
    eshapes = sorted({cand.eshape.key() for cand, _ in found})
    return {
        "eshapes": eshapes,
        "candidates": [cand.to_dict() for cand, _ in found],
    }


def search_k_nonpositive(bounds: dict | None = None, jobs: int = 1) -> dict:
    """The two bounded searches of the nonpositive-Kodaira branch."""
    cfg = bounds or load_bounds("k_nonpositive")
    index = catalog_index(cfg["catalog_max_size"])
    combos = _eps_ke_combos(index)
    t1 = parse_chain(cfg["t1"])
    rec1 = _record_for(t1)
    by_d = _records_by_d(max(cfg["d2_max"], cfg["d3_max"]))

    def case1_triples():
        for d2 in range(3, cfg["d2_max"] + 1):
            for r2 in by_d[d2]:
                for d3 in range(d2, cfg["d3_max"] + 1):
                    for r3 in by_d[d3]:
                        if (r2.d, r2.ws) > (r3.d, r3.ws):
                            continue
                        if (
                            r2.ws == t1
                            and len(r3.ws) >= 2
                            and r3.ws[-2:] == (3, 2)
                        ):
                            continue
                        yield tuple(
                            sorted((rec1, r2, r3), key=lambda r: (r.d, r.ws))
                        )

    found1 = _run_scan(
        list(case1_triples()),
        tuple(cfg["b"]),
        index,
        combos,
        tuple(cfg["predicates"]),
        cfg["group_order_mode"],
        cfg.get("delta_gmin"),
        jobs,
        cfg.get("exclude_eps2_chains", False),
    )
    found1.sort(key=lambda pair: pair[0].sort_key())

    def case2_triples():
        k_max = cfg["case2_k_max"]
        for k in range(0, k_max + 1):
            for head in ((), (3,), (4,), (2, 3)):
                ws = head + (2,) * k + (3, 2)
                r3 = _record_for(ws)
                yield tuple(sorted((rec1, rec1, r3), key=lambda r: (r.d, r.ws)))

    found2 = _run_scan(
        list(case2_triples()),
        tuple(cfg["b"]),
        index,
        combos,
        tuple(cfg["predicates"]),
        cfg["group_order_mode"],
        cfg.get("delta_gmin"),
        1,
        cfg.get("exclude_eps2_chains", False),
    )
    found2.sort(key=lambda pair: pair[0].sort_key())
    return {
        "case1": [cand.to_dict() for cand, _ in found1],
        "case2": [cand.to_dict() for cand, _ in found2],
        "reports1": [rep.to_dict() for _, rep in found1],
    }


def search_fiber_pairs(bounds: dict | None = None) -> list[TwoFiberSolution]:
    """Sweep both short twigs over the small-discriminant list and solve."""
    cfg = bounds or load_bounds("fiber_pairs")
    shapes = _named_shapes(cfg["eshapes"])
    sweep = [
        ws
        for dd in range(2, cfg["twig_d_max"] + 1)
        for ws in chains.oriented_chains_with_d(dd)
    ]
    solutions: list[TwoFiberSolution] = []
    for es in shapes:
        for t1 in sweep:
            for t2 in sweep:
                solutions.extend(
                    solve_two_fiber(
                        t1,
                        t2,
                        es,
                        predicate_names=tuple(cfg["predicates"]),
                        group_order_mode=cfg["group_order_mode"],
                    )
                )
    solutions.sort(key=lambda s: s.sort_key())
    return solutions


# ---------------------------------------------------------------------------
# golden files


def golden_dir() -> Path:
    """Golden-file location: DGK_GOLDEN_DIR, ./golden, the repository copy,
    then the copy installed with the package."""
    env = os.environ.get("DGK_GOLDEN_DIR")
    if env:
        return Path(env)
    cwd = Path.cwd() / "golden"
    if cwd.is_dir():
        return cwd
    repo = Path(__file__).resolve().parent.parent.parent / "golden"
    if repo.is_dir():
        return repo
    return Path(str(resources.files("dgk") / "golden"))


def run_search(name: str, bounds_path: str | None = None, jobs: int = 1):
    if name == "final-bounds":
        return search_final_bounds(
            load_bounds("final_bounds", bounds_path), jobs=jobs
        )
    if name == "xy":
        found = search_xy(load_bounds("xy", bounds_path), jobs=jobs)
        return [cand.to_dict() for cand, _ in found]
    if name == "knonpos":
        out = search_k_nonpositive(load_bounds("k_nonpositive", bounds_path), jobs=jobs)
        return {"case1": out["case1"], "case2": out["case2"]}
    if name == "fiber-pairs":
        sols = search_fiber_pairs(load_bounds("fiber_pairs", bounds_path))
        return [s.to_dict() for s in sols]
    raise ValueError(f"unknown search {name!r}")


GOLDEN_FILES = {
    "final-bounds": "search_final_bounds.json",
    "xy": "search_xy.json",
    "knonpos": "search_k_nonpositive.json",
    "fiber-pairs": "search_fiber_pairs.json",
    "final-bounds-relaxed": "search_final_bounds_relaxed.json",
}


def verify_suite(directory: Path | None = None, jobs: int = 1) -> dict:
    """Run the four searches and compare against the golden files."""
    gdir = directory or golden_dir()
    results = {}
    for name in ("final-bounds", "xy", "knonpos", "fiber-pairs"):
        got = run_search(name, jobs=jobs)
        path = gdir / GOLDEN_FILES[name]
        if not path.exists():
            results[name] = {"status": "missing-golden", "path": str(path)}
            continue
        want = json.loads(path.read_text())
        results[name] = {
            "status": "ok" if got == want else "mismatch",
            "path": str(path),
        }
        if got != want:
            results[name]["got"] = got
            results[name]["want"] = want
    return results
