"""The Diophantine system governing rulings with two degenerate fibers.

Every singular fiber F of the relevant rulings is described by normalized
pairs (c_i/c_h, p_i/c_h), i < h, a last pair (c_h, 1) whose extra curves form
boundary (-2)-curves, and the intersection CE of its (-1)-curve with the
exceptional curve.  Writing kappa = c_h*CE + c_h' and
rho = kappa*CE + c_h'*CE + c_h', the global constraints are

    (1) d(n+2) + gamma - 2 = sum_F kappa(F) (uc1 + sum_{i<h} up_i)
    (2) n d^2 + gamma      = sum_F (kappa^2 sum_{i<h} uc_i up_i + rho(F))
    (3) d * |H1|           = prod_F uc1(F)
    (4) d                  = lcm_F uc1(F)

with d = E.F shared by all fibers.  For exactly two singular fibers with the
second one having two pairs these specialize to

    (5) d n + gamma - 2     = kappa (p + alpha c' + p') + kappa~ p~
    (6) d(gamma-2) - gamma  = kappa^2 (c - c')(alpha c' + p') - rho - rho~

where alpha = n + eps + K.E - 4 and h = 3 + alpha.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from . import chains
from .barks import ExceptionalShape
from .graphs import Weights, format_chain
from .pairs import CharPairSeq, FiberTree, fiber_numerics, reconstruct_fiber
from .predicates import BoundaryCandidate, evaluate_predicates, is_positive_perfect_square


def _lcm(values: list[int]) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


@dataclass(frozen=True)
class RulingFiber:
    """One singular fiber: normalized pairs, boundary data and CE."""

    upairs: tuple[tuple[int, int], ...]
    c_h: int
    i0: int
    CE: int

    @property
    def h(self) -> int:
        return len(self.upairs) + 1

    @property
    def uc1(self) -> int:
        return self.upairs[0][0]

    def full_pairs(self) -> CharPairSeq:
        scaled = tuple((c * self.c_h, p * self.c_h) for c, p in self.upairs)
        return CharPairSeq(scaled + ((self.c_h, 1),))

    def numerics(self):
        return fiber_numerics(self.full_pairs(), self.CE, self.i0)


@dataclass(frozen=True)
class RulingScenario:
    n: int
    gamma: int
    epsilon: int
    ke: int
    d: int
    fibers: tuple[RulingFiber, ...]
    h1_order: int

    @property
    def alpha(self) -> int:
        return self.n + self.epsilon + self.ke - 4


def check_ruling_equations(s: RulingScenario) -> tuple[int, int, int, int]:
    """Exact residuals (LHS - RHS) of equations (1)-(4)."""
    r1 = s.d * (s.n + 2) + s.gamma - 2
    r2 = s.n * s.d * s.d + s.gamma
    prod_uc1 = 1
    for f in s.fibers:
        num = f.numerics()
        kappa = num.kappa
        r1 -= kappa * (f.uc1 + sum(p for _, p in f.upairs))
        r2 -= kappa * kappa * sum(c * p for c, p in f.upairs) + num.rho
        prod_uc1 *= f.uc1
    r3 = s.d * s.h1_order - prod_uc1
    r4 = s.d - _lcm([f.uc1 for f in s.fibers])
    return r1, r2, r3, r4


def two_fiber_relations(
    *,
    n: int,
    gamma: int,
    alpha: int,
    kappa: int,
    kappa_t: int,
    c: int,
    p: int,
    c_prime: int,
    p_prime: int,
    c_tilde: int,
    p_tilde: int,
    rho: int,
    rho_t: int,
) -> tuple[int, int]:
    """Exact residuals of equations (5) and (6); requires d = c kappa = c~ kappa~."""
    d = c * kappa
    if d != c_tilde * kappa_t:
        raise ValueError(f"d mismatch: c*kappa = {d}, c~*kappa~ = {c_tilde * kappa_t}")
    r5 = d * n + gamma - 2 - (kappa * (p + alpha * c_prime + p_prime) + kappa_t * p_tilde)
    r6 = d * (gamma - 2) - gamma - (
        kappa * kappa * (c - c_prime) * (alpha * c_prime + p_prime) - rho - rho_t
    )
    return r5, r6


# ---------------------------------------------------------------------------
# fiber-tree bookkeeping


def _ordered_from(tree: FiberTree, members: set[int], anchor: int) -> list[int]:
    """Order a path-shaped vertex set starting at the member next to anchor."""
    if not members:
        return []
    start = [v for v in members if anchor in tree.adj[v]]
    if len(start) != 1:
        raise ValueError("vertex set is not a chain hanging off the anchor")
    order = [start[0]]
    prev = anchor
    while True:
        nxt = [u for u in tree.adj[order[-1]] if u in members and u != prev]
        if not nxt:
            break
        if len(nxt) > 1:
            raise ValueError("vertex set is not a path")
        prev = order[-1]
        order.append(nxt[0])
    if len(order) != len(members):
        raise ValueError("vertex set is not connected")
    return order


def first_pair_parts(tree: FiberTree) -> tuple[list[int], int, list[int]]:
    """(Z_u, Z1, Z_l) of a fiber: the curves of the first pair, split at the
    highest-multiplicity one; Z_u is the side facing the base component."""
    g1 = {v for v in range(len(tree)) if tree.groups[v] == 1}
    z1 = max(g1)  # vertices are numbered in creation order
    rest = g1 - {z1}
    comp_u: set[int] = set()
    comp_l: set[int] = set()
    for v in rest:
        comp = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for u in tree.adj[x]:
                if u in rest and u not in comp:
                    comp.add(u)
                    stack.append(u)
        if any(0 in tree.adj[x] for x in comp):
            comp_u |= comp
        else:
            comp_l |= comp
    z_u = _ordered_from(tree, comp_u, z1) if comp_u else []
    z_l = _ordered_from(tree, comp_l, z1) if comp_l else []
    return z_u, z1, z_l


def z_l_chain(tree: FiberTree) -> Weights:
    """Weights of Z_l, tip of the fiber first."""
    _, _, z_l = first_pair_parts(tree)
    return tuple(tree.weights[v] for v in reversed(z_l))


def second_branch_chain(tree: FiberTree, h: int) -> Weights:
    """Boundary components of the second branch (groups 2..h-1), tip first."""
    members = {v for v in range(len(tree)) if 2 <= tree.groups[v] <= h - 1}
    _, z1, _ = first_pair_parts(tree)
    order = _ordered_from(tree, members, z1)
    return tuple(tree.weights[v] for v in reversed(order))


# ---------------------------------------------------------------------------
# boundary minimalization


class ContractionError(ValueError):
    """The boundary chain does not minimalize to an admissible fork."""


def minimalize_chain(weights: list[int]) -> list[int]:
    """Contract weight-1 entries of a chain until none remain."""
    ws = list(weights)
    while True:
        idx = next((i for i, w in enumerate(ws) if w == 1), None)
        if idx is None:
            return ws
        if idx > 0:
            ws[idx - 1] -= 1
        if idx + 1 < len(ws):
            ws[idx + 1] -= 1
        del ws[idx]
        if any(w <= 0 for w in ws):
            raise ContractionError(f"contraction produced weight <= 0: {ws}")


def contract_boundary(
    entries: list[tuple[int, str]]
) -> tuple[int, Weights]:
    """Minimalize the boundary chain around the branch vertex.

    ``entries`` lists (weight, tag) from the untouched twig side to the far
    end of the second fiber; tags are T2, Z1, ZONE (the section side), ZT1
    (the last first-pair curve of the second fiber) and T3L.  Only ZONE and
    ZT1 components may be contracted.  Returns (b, T3) with T3 tip first.
    """
    items = [[w, tag] for w, tag in entries]
    z1_pos = next(i for i, it in enumerate(items) if it[1] == "Z1")
    while True:
        idx = next(
            (
                i
                for i, it in enumerate(items)
                if it[0] == 1 and it[1] in ("ZONE", "ZT1")
            ),
            None,
        )
        if idx is None:
            break
        if idx > 0:
            items[idx - 1][0] -= 1
        if idx + 1 < len(items):
            items[idx + 1][0] -= 1
        del items[idx]
        z1_pos = next(i for i, it in enumerate(items) if it[1] == "Z1")
    b = items[z1_pos][0]
    if b < 1:
        raise ContractionError(f"branch weight dropped to {b}")
    right = [it for it in items[z1_pos + 1:]]
    if not right:
        raise ContractionError("third twig contracted away entirely")
    if any(w <= 1 for w, _ in right):
        raise ContractionError(f"third twig not admissible: {right}")
    t3 = tuple(w for w, _ in reversed(right))
    return b, t3


# ---------------------------------------------------------------------------
# the two-fiber solver


@dataclass(frozen=True)
class TwoFiberSolution:
    n: int
    gamma: int
    epsilon: int
    ke: int
    kappa: int
    kappa_t: int
    c: int
    p: int
    c_prime: int
    p_prime: int
    c_tilde: int
    p_tilde: int
    rho: int
    rho_t: int
    b: int
    t1: Weights
    t2: Weights
    t3: Weights
    eshape: ExceptionalShape
    d: int
    d_of_d: int
    delta_f_size: int
    delta_ft_size: int

    @property
    def minus_dd_over_de(self) -> Fraction:
        return Fraction(-self.d_of_d, self.eshape.d)

    @property
    def gcd_c(self) -> int:
        return gcd(self.c, self.c_tilde)

    @property
    def rejected_by_square_gcd(self) -> bool:
        """The homology cross-check -d(D)/d(E) = gcd(uc1, uc1~)^2."""
        return self.minus_dd_over_de != self.gcd_c**2

    def sort_key(self) -> tuple:
        return (
            self.n,
            self.gamma,
            self.kappa,
            self.kappa_t,
            self.c,
            self.p,
            self.c_prime,
            self.p_prime,
            self.c_tilde,
            self.p_tilde,
            self.eshape.key(),
        )

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "gamma": self.gamma,
            "kappa": self.kappa,
            "kappa_tilde": self.kappa_t,
            "c": self.c,
            "p": self.p,
            "c_prime": self.c_prime,
            "p_prime": self.p_prime,
            "c_tilde": self.c_tilde,
            "p_tilde": self.p_tilde,
            "rho": self.rho,
            "rho_tilde": self.rho_t,
            "b": self.b,
            "t1": format_chain(self.t1),
            "t2": format_chain(self.t2),
            "t3": format_chain(self.t3),
            "eshape": self.eshape.key(),
            "epsilon": self.epsilon,
            "d": self.d,
            "d_of_d": self.d_of_d,
            "minus_dD_over_dE": str(self.minus_dd_over_de),
            "gcd_c_ctilde": self.gcd_c,
            "rejected_by_square_gcd": self.rejected_by_square_gcd,
        }


def _coprime_pairs_with_length(length: int) -> list[tuple[int, int]]:
    """Coprime (c', p'), c' >= p' >= 1, whose Euclid trace has ``length`` steps.

    The trace of (c, p) has at least as many steps as the Fibonacci growth
    allows, so c never exceeds Fib(length + 1).
    """
    from .pairs import mu_trace

    fa, fb = 1, 1
    for _ in range(length):
        fa, fb = fb, fa + fb
    out = []
    for c in range(1, fb + 1):
        for p in range(1, c + 1):
            if gcd(c, p) == 1 and len(mu_trace(c, p)) == length:
                out.append((c, p))
    return out


def _integer_roots(a: Fraction, b: Fraction, c: Fraction) -> list[int]:
    """Integer roots of a x^2 + b x + c = 0 (a may be zero)."""
    if a == 0:
        if b == 0:
            return []
        x = -c / b
        return [int(x)] if x.denominator == 1 else []
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    num = disc.numerator * disc.denominator
    r = isqrt(num)
    if r * r != num:
        return []
    sq = Fraction(r, disc.denominator)
    roots = []
    for sign in (1, -1):
        x = (-b + sign * sq) / (2 * a)
        if x.denominator == 1:
            roots.append(int(x))
    return sorted(set(roots))


def _rho_form(delta_size: int) -> tuple[Fraction, Fraction]:
    """rho as a*kappa^2 + a0: (1, 0) without boundary curves, else the
    single-boundary-curve form (kappa^2+1)/2."""
    if delta_size == 0:
        return Fraction(1), Fraction(0)
    if delta_size == 1:
        return Fraction(1, 2), Fraction(1, 2)
    raise ValueError("only 0 or 1 boundary curves per fiber are supported")


def _rho_value(kappa: int, delta_size: int) -> int:
    a, a0 = _rho_form(delta_size)
    val = a * kappa * kappa + a0
    if val.denominator != 1:
        raise ValueError(f"rho not integral for kappa={kappa}")
    return int(val)


def solve_two_fiber(
    t1: Weights,
    t2: Weights,
    eshape: ExceptionalShape,
    *,
    b_allowed: tuple[int, ...] = (1, 2),
    predicate_names: tuple[str, ...] = (
        "w2_delta_g",
        "noether",
        "bmy",
        "eps2_ii",
        "eps2_iii",
        "eps2_iv",
        "zar_b",
        "zar_delta",
        "zar_bk2",
        "square",
    ),
    group_order_mode: str = "actual",
) -> list[TwoFiberSolution]:
    """All two-fiber solutions with prescribed twigs T1 (second branch of the
    first fiber) and T2 (lower first-pair chain), checked against the
    predicate suite on the reconstructed boundary.

    The search is exhaustive over the bounds n < 4, kappa~ | c(gamma - 2),
    kappa~ <= 3c, with kappa an integer root of the quadratic (6).
    """
    if eshape.is_fork or len(eshape.e_weights) != 1:
        raise ValueError("the ruling analysis needs an irreducible E")
    gamma = eshape.e_weights[0]
    eps = eshape.epsilon
    ke = eshape.ke
    n_delta_curves = eshape.size - len(eshape.e_weights)
    if n_delta_curves not in (0, 1):
        raise ValueError("at most one external (-2)-curve is supported here")
    splits = [(0, 0)] if n_delta_curves == 0 else [(1, 0), (0, 1)]

    d2 = chains.d(t2)
    p_over = d2 - chains.d_prime(t2)  # p/c' from the lower chain

    solutions: list[TwoFiberSolution] = []
    for n in (1, 2, 3):
        alpha = n + eps + ke - 4
        if not 0 <= alpha <= n:
            continue
        h = 3 + alpha
        tail_len = len(t1) - (h - 3)
        if tail_len < 1:
            continue
        for df, dft in splits:
            c_h = 1 + df
            ct_h = 1 + dft
            for c_pr, p_pr in _coprime_pairs_with_length(tail_len):
                c = c_pr * d2
                p = c_pr * p_over
                a, a0 = _rho_form(df)
                at, at0 = _rho_form(dft)
                for kappa_t in range(2, 3 * c + 1):
                    if (c * (gamma - 2)) % kappa_t:
                        continue
                    if dft == 1 and kappa_t % 2 == 0:
                        continue
                    rho_t = _rho_value(kappa_t, dft)
                    # (6) as a quadratic in kappa
                    qa = Fraction((c - c_pr) * (alpha * c_pr + p_pr)) - a
                    qb = Fraction(-c * (gamma - 2))
                    qc = Fraction(gamma) - a0 - rho_t
                    for kappa in _integer_roots(qa, qb, qc):
                        if kappa < 2:
                            continue
                        if df == 1 and kappa % 2 == 0:
                            continue
                        if (kappa - (c_h - 1)) % c_h:
                            continue
                        ce = (kappa - (c_h - 1)) // c_h
                        if ce < 1:
                            continue
                        d = c * kappa
                        if d % kappa_t:
                            continue
                        c_t = d // kappa_t
                        if (kappa_t - (ct_h - 1)) % ct_h:
                            continue
                        ce_t = (kappa_t - (ct_h - 1)) // ct_h
                        if ce_t < 1:
                            continue
                        num = d * n + gamma - 2 - kappa * (p + alpha * c_pr + p_pr)
                        if num % kappa_t:
                            continue
                        p_t = num // kappa_t
                        if not 1 <= p_t <= c_t or gcd(c_t, p_t) != 1:
                            continue
                        if (gamma - 2) % gcd(kappa, kappa_t):
                            continue
                        rho = _rho_value(kappa, df)
                        r5, r6 = two_fiber_relations(
                            n=n, gamma=gamma, alpha=alpha, kappa=kappa,
                            kappa_t=kappa_t, c=c, p=p, c_prime=c_pr,
                            p_prime=p_pr, c_tilde=c_t, p_tilde=p_t,
                            rho=rho, rho_t=rho_t,
                        )
                        if r5 or r6:
                            continue
                        sol = _assemble_solution(
                            n=n, gamma=gamma, eps=eps, ke=ke, alpha=alpha,
                            h=h, kappa=kappa, kappa_t=kappa_t, c=c, p=p,
                            c_pr=c_pr, p_pr=p_pr, c_t=c_t, p_t=p_t,
                            rho=rho, rho_t=rho_t, df=df, dft=dft,
                            t1=t1, t2=t2, eshape=eshape,
                        )
                        if sol is None or sol.b not in b_allowed:
                            continue
                        cand = BoundaryCandidate(sol.b, (sol.t1, sol.t2, sol.t3), eshape)
                        report = evaluate_predicates(
                            cand, group_order_mode=group_order_mode
                        )
                        if report.passes(predicate_names):
                            solutions.append(sol)
    solutions.sort(key=lambda s: s.sort_key())
    return solutions


def _assemble_solution(
    *, n, gamma, eps, ke, alpha, h, kappa, kappa_t, c, p, c_pr, p_pr,
    c_t, p_t, rho, rho_t, df, dft, t1, t2, eshape,
) -> TwoFiberSolution | None:
    """Rebuild both fibers, check the twigs, contract the boundary to D."""
    c_h = 1 + df
    ct_h = 1 + dft
    f_upairs = ((c, p),) + ((c_pr, c_pr),) * (h - 3) + ((c_pr, p_pr),)
    ft_upairs = ((c_t, p_t),)
    try:
        fiber = RulingFiber(f_upairs, c_h, 1 if df else 0, (kappa - (c_h - 1)) // c_h)
        fiber_t = RulingFiber(
            ft_upairs, ct_h, 1 if dft else 0, (kappa_t - (ct_h - 1)) // ct_h
        )
        tree = reconstruct_fiber(fiber.full_pairs())
        tree_t = reconstruct_fiber(fiber_t.full_pairs())
        if t1 is None:
            t1 = second_branch_chain(tree, h)
        elif second_branch_chain(tree, h) != t1:
            return None
        if z_l_chain(tree) != t2:
            return None
        zu, z1, _ = first_pair_parts(tree)
        zut, z1t, zlt = first_pair_parts(tree_t)
        # adjoint consistency: the section-side chain of the second fiber is
        # determined by its lower chain via e + e' = 1
        inner_first = tuple(tree_t.weights[v] for v in zut) + (tree_t.weights[0],)
        zl_inner = tuple(tree_t.weights[v] for v in zlt)
        if zl_inner:
            assert inner_first == chains.chain_from_e(1 - chains.e(zl_inner))
        entries: list[tuple[int, str]] = []
        for v in reversed(_ordered_from_tree_zl(tree)):
            entries.append((tree.weights[v], "T2"))
        entries.append((tree.weights[z1], "Z1"))
        for v in zu:
            entries.append((tree.weights[v], "ZONE"))
        entries.append((tree.weights[0], "ZONE"))  # G, the section-side tip
        entries.append((n, "ZONE"))  # H itself
        entries.append((tree_t.weights[0], "ZONE"))  # G~
        for v in reversed(zut):
            entries.append((tree_t.weights[v], "ZONE"))
        entries.append((tree_t.weights[z1t], "ZT1"))
        for v in zlt:
            entries.append((tree_t.weights[v], "T3L"))
        b, t3 = contract_boundary(entries)
    except (ContractionError, ValueError):
        return None
    d_of_d_frac = (
        Fraction(chains.d(t1) * chains.d(t2) * chains.d(t3))
        * (b - chains.e_tilde(t1) - chains.e_tilde(t2) - chains.e_tilde(t3))
    )
    assert d_of_d_frac.denominator == 1
    return TwoFiberSolution(
        n=n, gamma=gamma, epsilon=eps, ke=ke, kappa=kappa, kappa_t=kappa_t,
        c=c, p=p, c_prime=c_pr, p_prime=p_pr, c_tilde=c_t, p_tilde=p_t,
        rho=rho, rho_t=rho_t, b=b, t1=t1, t2=t2, t3=t3, eshape=eshape,
        d=c * kappa, d_of_d=int(d_of_d_frac),
        delta_f_size=df, delta_ft_size=dft,
    )


def _ordered_from_tree_zl(tree: FiberTree) -> list[int]:
    _, z1, z_l = first_pair_parts(tree)
    return z_l


def reconstruct_t3(sol: TwoFiberSolution) -> tuple[int, Weights]:
    """Recompute (b, T3) of a solution from its fiber data alone.

    Rebuilds both fibers, lays out the boundary chain through the section and
    contracts it; raises ContractionError if the result is not an admissible
    fork boundary.
    """
    h = 3 + (sol.n + sol.epsilon + sol.ke - 4)
    redone = _assemble_solution(
        n=sol.n, gamma=sol.gamma, eps=sol.epsilon, ke=sol.ke,
        alpha=sol.n + sol.epsilon + sol.ke - 4, h=h, kappa=sol.kappa,
        kappa_t=sol.kappa_t, c=sol.c, p=sol.p, c_pr=sol.c_prime,
        p_pr=sol.p_prime, c_t=sol.c_tilde, p_t=sol.p_tilde, rho=sol.rho,
        rho_t=sol.rho_t, df=sol.delta_f_size, dft=sol.delta_ft_size,
        t1=sol.t1, t2=sol.t2, eshape=sol.eshape,
    )
    if redone is None:
        raise ContractionError("solution data does not reconstruct a boundary")
    return redone.b, redone.t3


# ---------------------------------------------------------------------------
# terminal eliminations of the final case analysis


def tail_chain_23_branch(c_prime_max: int = 10000) -> dict:
    """Dead end of the [2,3]-twig case.

    Here gamma = 3, n = 1, alpha = 0, the second fiber has (c~, p~) = (7, 3)
    and the lower chain forces (c, p) = (2c', c'), kappa = 7, kappa~ = 2c'.
    Equation (5) gives 7p' = c' + 1 and substituting into (6) leaves
    3c'^2 - 7c' - 46 = 0, which has no integer root.
    """
    solutions = []
    for c_pr in range(1, c_prime_max):
        if (c_pr + 1) % 7:
            continue
        p_pr = (c_pr + 1) // 7
        if p_pr > c_pr or gcd(c_pr, p_pr) != 1:
            continue
        r5, r6 = two_fiber_relations(
            n=1, gamma=3, alpha=0, kappa=7, kappa_t=2 * c_pr,
            c=2 * c_pr, p=c_pr, c_prime=c_pr, p_prime=p_pr,
            c_tilde=7, p_tilde=3, rho=49, rho_t=4 * c_pr * c_pr,
        )
        if r5 == 0 and r6 == 0:
            solutions.append((c_pr, p_pr))
    disc = 7 * 7 + 4 * 3 * 46
    return {
        "quadratic": (3, -7, -46),
        "discriminant": disc,
        "square_discriminant": isqrt(disc) ** 2 == disc,
        "solutions": solutions,
    }


def second_fiber_square_branch(k_max: int = 60) -> list[tuple[int, int, int, int]]:
    """Dead end of the single-boundary-curve case: kappa~^2 = 3k + 1.

    The first fiber has pairs (4k+4, 2k+2), (2k+2, 2), (2, 1) and kappa = 3;
    the ruling equations force kappa~ * p~ = 3k + 1 and kappa~^2 = 3k + 1 with
    kappa~ = gcd(6k+6, 3k+1) in {2, 4}.  Only kappa~ = 4 gives coprime
    (c~, p~), pinning (k, c~, p~) = (5, 9, 4).
    """
    out = []
    for k in range(1, k_max + 1):
        d = 6 * k + 6
        kappa_t = gcd(d, 3 * k + 1)
        if kappa_t < 2:
            continue
        if (3 * k + 1) % kappa_t or d % kappa_t:
            continue
        p_t = (3 * k + 1) // kappa_t
        c_t = d // kappa_t
        if not 1 <= p_t <= c_t or gcd(c_t, p_t) != 1:
            continue
        scenario = RulingScenario(
            n=1, gamma=3, epsilon=2, ke=1, d=d,
            fibers=(
                RulingFiber(((2 * k + 2, k + 1), (k + 1, 1)), 2, 1, 1),
                RulingFiber(((c_t, p_t),), 1, 0, kappa_t),
            ),
            h1_order=1,
        )
        r1, r2, _, _ = check_ruling_equations(scenario)
        if r1 == 0 and r2 == 0:
            out.append((k, kappa_t, c_t, p_t))
    return out


def two_run_twig_branch(eshape: ExceptionalShape, c_prime_max: int = 200) -> list[TwoFiberSolution]:
    """Dead end of the [(2)]-twig case with gamma = 4.

    Here (c~, p~) = (5, 2), (c, p) = (2c', c') and kappa | 10; the relations
    admit the single family kappa = 2, (c', p') = (25, 6).  The reconstructed
    boundary has d(D) = -25, and -d(D)/d(E) = 25/4 is not a perfect square,
    so the homology condition rejects it.
    """
    sols = []
    for kappa in (2, 5, 10):
        for c_pr in range(1, c_prime_max):
            d = 2 * c_pr * kappa
            if d % 5:
                continue
            kappa_t = d // 5
            for p_pr in range(1, c_pr + 1):
                if gcd(c_pr, p_pr) != 1:
                    continue
                r5, r6 = two_fiber_relations(
                    n=1, gamma=4, alpha=0, kappa=kappa, kappa_t=kappa_t,
                    c=2 * c_pr, p=c_pr, c_prime=c_pr, p_prime=p_pr,
                    c_tilde=5, p_tilde=2, rho=kappa * kappa,
                    rho_t=kappa_t * kappa_t,
                )
                if r5 or r6:
                    continue
                sol = _assemble_solution(
                    n=1, gamma=4, eps=eshape.epsilon, ke=eshape.ke, alpha=0,
                    h=3, kappa=kappa, kappa_t=kappa_t, c=2 * c_pr, p=c_pr,
                    c_pr=c_pr, p_pr=p_pr, c_t=5, p_t=2, rho=kappa * kappa,
                    rho_t=kappa_t * kappa_t, df=0, dft=0,
                    t1=None, t2=(2,), eshape=eshape,
                )
                if sol is not None:
                    sols.append(sol)
    return sols


def minimalized_section_side_32() -> list[int]:
    """The [3,2]-twig case: the section side [2,3,2] extends by the touched
    first-pair curve and the (-1)-curve, and minimalizes to a discriminant-3
    chain, clashing with the allowed discriminant classes."""
    return minimalize_chain([2, 3, 2, 2, 1])


def solution_scenario(sol: TwoFiberSolution, h1_order: int) -> RulingScenario:
    """Assemble the full-scenario view of a two-fiber solution."""
    h = 3 + (sol.n + sol.epsilon + sol.ke - 4)
    f_upairs = ((sol.c, sol.p),) + ((sol.c_prime, sol.c_prime),) * (h - 3) + (
        (sol.c_prime, sol.p_prime),
    )
    fiber = RulingFiber(
        f_upairs,
        1 + sol.delta_f_size,
        1 if sol.delta_f_size else 0,
        (sol.kappa - sol.delta_f_size) // (1 + sol.delta_f_size),
    )
    fiber_t = RulingFiber(
        ((sol.c_tilde, sol.p_tilde),),
        1 + sol.delta_ft_size,
        1 if sol.delta_ft_size else 0,
        (sol.kappa_t - sol.delta_ft_size) // (1 + sol.delta_ft_size),
    )
    return RulingScenario(
        n=sol.n,
        gamma=sol.gamma,
        epsilon=sol.epsilon,
        ke=sol.ke,
        d=sol.d,
        fibers=(fiber, fiber_t),
        h1_order=h1_order,
    )
