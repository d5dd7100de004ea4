"""Barks of admissible chains and forks, group orders, exceptional shapes.

The bark of a connected admissible divisor is the rational combination of its
components solving (K + D - Bk D) . D_i = 0, i.e. Bk . D_i = beta(D_i) - 2.
For an oriented chain the one-sided bark Bk'(T, T1) instead solves
T_i . Bk' = -delta_{i,1}; its coefficients are m'_i = d(T_{i+1}+...+T_n)/d(T)
and Bk'^2 = -e(T).  All coefficients are computed by an exact linear solve
with the closed forms used as cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import chains
from .graphs import (
    Fork,
    Weights,
    WeightedTree,
    canonical_chain,
    exact_solve,
    format_chain,
    is_admissible_chain,
)

PLATONIC_SPECIAL = {(2, 3, 3), (2, 3, 4), (2, 3, 5)}


def is_platonic_triple(triple: tuple[int, int, int]) -> bool:
    t = tuple(sorted(triple))
    return t in PLATONIC_SPECIAL or (t[0] == 2 and t[1] == 2 and t[2] >= 2)


def is_admissible_fork(fork: Fork) -> bool:
    """Admissible twigs, negative definite matrix, Platonic twig triple."""
    if not all(t and is_admissible_chain(t) for t in fork.twigs):
        return False
    triple = tuple(sorted(chains.d(t) for t in fork.twigs))
    if not is_platonic_triple(triple):  # type: ignore[arg-type]
        return False
    return WeightedTree.from_fork(fork).is_negative_definite()


@dataclass(frozen=True)
class BarkCoefficients:
    coefficients: tuple[Fraction, ...]
    bk_square: Fraction


def _solve_bark(tree: WeightedTree, rhs: list[Fraction]) -> BarkCoefficients:
    m = [[Fraction(x) for x in row] for row in tree.intersection_matrix()]
    coeffs = exact_solve(m, rhs)
    bk2 = sum(c * r for c, r in zip(coeffs, rhs))
    return BarkCoefficients(tuple(coeffs), bk2)


def bark_one_sided(weights: Weights) -> BarkCoefficients:
    """Bk'(T, T1) for an oriented admissible chain, pushing at the first tip."""
    if not weights or not is_admissible_chain(weights):
        raise ValueError(f"chain {format_chain(weights)} is not admissible")
    tree = WeightedTree.from_chain(weights)
    rhs = [Fraction(-1 if i == 0 else 0) for i in range(len(weights))]
    bark = _solve_bark(tree, rhs)
    dd = chains.d(weights)
    closed = tuple(Fraction(chains.d(weights[i + 1:]), dd) for i in range(len(weights)))
    assert bark.coefficients == closed, "one-sided bark disagrees with closed form"
    assert bark.bk_square == -chains.e(weights)
    return bark


def bark_chain(weights: Weights) -> BarkCoefficients:
    """Full bark of an admissible chain: Bk = Bk'(T,T1) + Bk'(T,Tn)."""
    if not weights or not is_admissible_chain(weights):
        raise ValueError(f"chain {format_chain(weights)} is not admissible")
    tree = WeightedTree.from_chain(weights)
    n = len(weights)
    beta = [len(tree.adj[i]) for i in range(n)]
    rhs = [Fraction(b - 2) for b in beta]
    bark = _solve_bark(tree, rhs)
    inv = chains.invariants(weights)
    expected = -Fraction(inv.d_prime + chains.d_prime(weights[::-1]) + 2, inv.d)
    assert bark.bk_square == expected
    return bark


def bark_fork(fork: Fork) -> BarkCoefficients:
    """Bark of an admissible fork; vertex order is branch then twigs tip-first.

    Bk^2 F = -(delta(F)-1)^2 / (b - e~(F)) - e(F), checked against the solve.
    """
    if not is_admissible_fork(fork):
        raise ValueError("fork is not admissible")
    tree = WeightedTree.from_fork(fork)
    n = len(tree.weights)
    rhs = [Fraction(len(tree.adj[i]) - 2) for i in range(n)]
    bark = _solve_bark(tree, rhs)
    dl = sum(chains.delta(t) for t in fork.twigs)
    ee = sum(chains.e(t) for t in fork.twigs)
    et = sum(chains.e_tilde(t) for t in fork.twigs)
    closed = -((dl - 1) ** 2) / (fork.b - et) - ee
    assert bark.bk_square == closed, "fork bark disagrees with closed form"
    return bark


def fork_invariants(fork: Fork) -> tuple[int, Fraction, Fraction, Fraction]:
    """(d, delta, e, e~) of an admissible fork.

    d is evaluated by the closed form d(R1)d(R2)d(R3)(b - e~) and by the
    determinant of the minus intersection matrix; the two must agree.
    """
    et = sum(chains.e_tilde(t) for t in fork.twigs)
    d1, d2, d3 = (chains.d(t) for t in fork.twigs)
    closed = d1 * d2 * d3 * (fork.b - et)
    assert closed.denominator == 1
    det = WeightedTree.from_fork(fork).discriminant()
    assert closed == det, f"closed form {closed} != determinant {det}"
    dl = sum(chains.delta(t) for t in fork.twigs)
    ee = sum(chains.e(t) for t in fork.twigs)
    return det, dl, ee, et


def group_order(graph: Weights | Fork) -> int:
    """Order of the local fundamental group of the quotient singularity.

    Chains resolve cyclic groups, so the order is the discriminant.  For an
    admissible fork the link is a spherical Seifert space over S^2(d1,d2,d3)
    and the order is 4*(b - e~) / (delta - 1)^2.  This reproduces the binary
    polyhedral orders on the (-2)-forks (24, 48, 120), the quaternion group
    on the (2,2,2) fork and 24 on the (2,2,3) fork with a [3]-twig.
    """
    if isinstance(graph, Fork):
        if not is_admissible_fork(graph):
            raise ValueError("fork is not admissible")
        _, dl, _, et = fork_invariants(graph)
        order = 4 * (graph.b - et) / (dl - 1) ** 2
        assert order.denominator == 1 and order > 0
        return int(order)
    if not graph or not is_admissible_chain(graph):
        raise ValueError(f"chain {format_chain(graph)} is not admissible")
    return chains.d(graph)


def strip_external_minus_two(tree: WeightedTree) -> tuple[list[int], list[list[int]]]:
    """Remove (-2)-tips repeatedly; returns (kept vertices, removed components).

    The removed vertices form the divisor of external (-2)-curves; they are
    grouped into connected components (as subgraphs of the original tree).
    """
    n = len(tree.weights)
    alive = set(range(n))
    changed = True
    while changed:
        changed = False
        for v in list(alive):
            deg = len(tree.adj[v] & alive)
            if deg <= 1 and tree.weights[v] == 2:
                alive.discard(v)
                changed = True
    removed = set(range(n)) - alive
    comps: list[list[int]] = []
    seen: set[int] = set()
    for v in sorted(removed):
        if v in seen:
            continue
        comp = [v]
        seen.add(v)
        stack = [v]
        while stack:
            x = stack.pop()
            for u in tree.adj[x]:
                if u in removed and u not in seen:
                    seen.add(u)
                    comp.append(u)
                    stack.append(u)
        comps.append(sorted(comp))
    return sorted(alive), comps


def decompose_exceptional(graph: Weights | Fork) -> tuple[tuple[int, ...], list[tuple[int, ...]]]:
    """(weights of E, weight tuples of the external (-2)-components)."""
    tree = (
        WeightedTree.from_fork(graph)
        if isinstance(graph, Fork)
        else WeightedTree.from_chain(graph)
    )
    kept, removed = strip_external_minus_two(tree)
    e_ws = tuple(tree.weights[v] for v in kept)
    delta = [tuple(tree.weights[v] for v in comp) for comp in removed]
    return e_ws, delta


@dataclass(frozen=True)
class ExceptionalShape:
    """One entry of the catalog of exceptional divisors.

    ``graph`` is the full divisor (chain weights or a Fork); ``epsilon`` is
    the family tag.  Derived data: the components left after stripping
    external (-2)-tips (E), the stripped components (delta), K.E summed over
    E, the discriminant, bark square and local group order.
    """

    graph: Weights | Fork
    epsilon: int
    families: tuple[str, ...]
    e_weights: tuple[int, ...] = field(compare=False)
    n_delta_components: int = field(compare=False)
    ke: int = field(compare=False)
    size: int = field(compare=False)
    d: int = field(compare=False)
    bk_square: Fraction = field(compare=False)
    g_order: int = field(compare=False)

    @property
    def is_fork(self) -> bool:
        return isinstance(self.graph, Fork)

    @property
    def delta_empty(self) -> bool:
        return self.n_delta_components == 0

    @property
    def gamma(self) -> int | None:
        """Weight of E when E is irreducible."""
        return self.e_weights[0] if len(self.e_weights) == 1 else None

    def key(self) -> str:
        if isinstance(self.graph, Fork):
            twigs = ",".join(format_chain(t) for t in self.graph.sorted_twigs())
            return f"fork(b={self.graph.b};{twigs})"
        return format_chain(self.graph)

    def group_order_for(self, mode: str) -> int:
        """|G| under the chosen convention.

        "actual" is the true local group order; "h1" substitutes the
        abelianization order d (they agree on chains).
        """
        if mode == "actual":
            return self.g_order
        if mode == "h1":
            return self.d
        raise ValueError(f"unknown group order mode {mode!r}")


def chain_bark_square(weights: Weights) -> Fraction:
    """Bk^2 of an admissible chain by the closed form -(d'+d'(rev)+2)/d."""
    return -Fraction(
        chains.d_prime(weights) + chains.d_prime(weights[::-1]) + 2, chains.d(weights)
    )


def fork_bark_square(fork: Fork) -> Fraction:
    dl = sum(chains.delta(t) for t in fork.twigs)
    ee = sum(chains.e(t) for t in fork.twigs)
    et = sum(chains.e_tilde(t) for t in fork.twigs)
    return -((dl - 1) ** 2) / (fork.b - et) - ee


def _make_shape(graph: Weights | Fork, epsilon: int, family: str) -> ExceptionalShape:
    if isinstance(graph, Fork):
        tree = WeightedTree.from_fork(graph)
        size = len(tree.weights)
        et = sum(chains.e_tilde(t) for t in graph.twigs)
        dl = sum(chains.delta(t) for t in graph.twigs)
        dd_frac = chains.d(graph.twigs[0]) * chains.d(graph.twigs[1]) * chains.d(
            graph.twigs[2]
        ) * (graph.b - et)
        g_frac = 4 * (graph.b - et) / (dl - 1) ** 2
        assert dd_frac.denominator == 1 and g_frac.denominator == 1
        dd = int(dd_frac)
        g = int(g_frac)
        bk2 = fork_bark_square(graph)
    else:
        tree = WeightedTree.from_chain(graph)
        size = len(graph)
        dd = chains.d(graph)
        bk2 = chain_bark_square(graph)
        g = dd
    kept, removed = strip_external_minus_two(tree)
    e_weights = tuple(tree.weights[v] for v in kept)
    if not e_weights:
        raise ValueError("exceptional shape consists of (-2)-curves only")
    ke = sum(w - 2 for w in e_weights)
    return ExceptionalShape(
        graph=graph,
        epsilon=epsilon,
        families=(family,),
        e_weights=e_weights,
        n_delta_components=len(removed),
        ke=ke,
        size=size,
        d=dd,
        bk_square=bk2,
        g_order=g,
    )


def _chain_shape(weights: Weights, epsilon: int, family: str) -> ExceptionalShape:
    return _make_shape(canonical_chain(weights), epsilon, family)


def _runs(count: int) -> Weights:
    return (2,) * count


@lru_cache(maxsize=None)
def eshape_catalog(max_size: int) -> tuple[ExceptionalShape, ...]:
    """All catalog shapes with at most ``max_size`` components.

    Families: (a) single curves [5],[6],[7] with epsilon 0; (b1)/(b2) the
    forks and (b3) the [(r),3,(x)] chains with epsilon 2, together with [4];
    (c1)-(c4) the epsilon 1 chains.  [4] and [5] occur with two epsilon tags.
    """
    shapes: dict[tuple[str, int], ExceptionalShape] = {}

    def add(shape: ExceptionalShape) -> None:
        key = (shape.key(), shape.epsilon)
        prev = shapes.get(key)
        if prev is None:
            shapes[key] = shape
        elif shape.families[0] not in prev.families:
            shapes[key] = ExceptionalShape(
                graph=prev.graph,
                epsilon=prev.epsilon,
                families=prev.families + shape.families,
                e_weights=prev.e_weights,
                n_delta_components=prev.n_delta_components,
                ke=prev.ke,
                size=prev.size,
                d=prev.d,
                bk_square=prev.bk_square,
                g_order=prev.g_order,
            )

    for w in (5, 6, 7):
        add(_chain_shape((w,), 0, "a"))

    # (b1): branch -2 with twigs A, B, [2]
    b1_pairs: list[tuple[Weights, Weights]] = [
        ((3,), (2, 2)),
        ((3,), (2, 2, 2)),
        ((3,), (2, 2, 2, 2)),
        ((2, 3), (2, 2)),
    ]
    for n in range(0, max_size):
        b1_pairs.append((_runs(n) + (3,), (2,)))
    for a, b in b1_pairs:
        fork = Fork(2, (a, b, (2,)))
        if 1 + len(a) + len(b) + 1 <= max_size and is_admissible_fork(fork):
            add(_make_shape(fork, 2, "b1"))

    # (b2): branch -3 with twigs A, B, [2]
    b2_pairs: list[tuple[Weights, Weights]] = [
        ((2, 2), (2, 2)),
        ((2, 2), (2, 2, 2)),
        ((2, 2), (2, 2, 2, 2)),
    ]
    for n in range(1, max_size):
        b2_pairs.append(((2,), _runs(n)))
    for a, b in b2_pairs:
        fork = Fork(3, (a, b, (2,)))
        if 1 + len(a) + len(b) + 1 <= max_size and is_admissible_fork(fork):
            add(_make_shape(fork, 2, "b2"))

    # (b3): [(r),3,(x)]
    for r in range(0, max_size):
        for x in range(r, max_size):
            if r + x + 1 <= max_size:
                add(_chain_shape(_runs(r) + (3,) + _runs(x), 2, "b3"))

    # [4] also occurs with epsilon 2
    add(_chain_shape((4,), 2, "b4"))

    # (c1): [(r),4] and [(r),5]
    for r in range(0, max_size):
        for w in (4, 5):
            if r + 1 <= max_size:
                add(_chain_shape(_runs(r) + (w,), 1, "c1"))

    # (c2): [(x),3,(y),3], [(x),3,(y),4], [(x),4,(y),3]
    for x in range(0, max_size):
        for y in range(0, max_size):
            if x + y + 2 > max_size:
                continue
            add(_chain_shape(_runs(x) + (3,) + _runs(y) + (3,), 1, "c2"))
            add(_chain_shape(_runs(x) + (3,) + _runs(y) + (4,), 1, "c2"))
            add(_chain_shape(_runs(x) + (4,) + _runs(y) + (3,), 1, "c2"))

    # (c3): [(r),3,(x),3,(y),3]
    for r in range(0, max_size):
        for x in range(0, max_size):
            for y in range(0, max_size):
                if r + x + y + 3 > max_size:
                    continue
                add(
                    _chain_shape(
                        _runs(r) + (3,) + _runs(x) + (3,) + _runs(y) + (3,), 1, "c3"
                    )
                )

    # (c4): the six chains with E.Delta = 2
    for ws in (
        (2, 4, 2),
        (2, 5, 2),
        (2, 3, 3, 2),
        (2, 3, 4, 2),
        (2, 4, 2, 2),
        (2, 5, 2, 2),
    ):
        if len(ws) <= max_size:
            add(_chain_shape(ws, 1, "c4"))

    out = [s for s in shapes.values() if s.size <= max_size]
    out.sort(key=lambda s: (s.size, s.key(), s.epsilon))
    return tuple(out)


def enumerate_exceptional_shapes(max_size: int) -> list[ExceptionalShape]:
    return list(eshape_catalog(max_size))


@lru_cache(maxsize=None)
def catalog_index(max_size: int) -> dict[tuple[int, int, int, Fraction], tuple[ExceptionalShape, ...]]:
    """Catalog keyed by (size, epsilon, K.E, bark square) for search lookups."""
    index: dict[tuple[int, int, int, Fraction], list[ExceptionalShape]] = {}
    for shape in eshape_catalog(max_size):
        index.setdefault((shape.size, shape.epsilon, shape.ke, shape.bk_square), []).append(shape)
    return {k: tuple(v) for k, v in index.items()}
