"""Discriminants and rational invariants of weighted chains.

For a chain T = [a1,...,an] the discriminant d(T) is the determinant of the
minus intersection matrix, with d of the empty chain equal to 1.  It obeys

    d([a1,...,an]) = a1 * d([a2,...,an]) - d([a3,...,an]).

d'(T) drops the first component, d''(T) the first two.  For admissible chains
(all weights >= 2, hence d > 0) we work with the exact rationals

    delta = 1/d,  e = d'/d,  e~ = e of the reversed chain,

and e satisfies the continued-fraction recurrence e(T) = 1/(a1 - e(T - T1)),
which makes e a bijection from oriented admissible chains onto the rationals
of (0,1) (the empty chain maps to 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable

from .graphs import Weights, canonical_chain, is_admissible_chain, reverse_chain


class DegenerateChainError(ValueError):
    """Raised when an invariant needs d != 0 but the chain has d == 0."""


@lru_cache(maxsize=None)
def d(weights: Weights) -> int:
    if len(weights) == 0:
        return 1
    if len(weights) == 1:
        return weights[0]
    return weights[0] * d(weights[1:]) - d(weights[2:])


def d_prime(weights: Weights) -> int:
    """d of the chain with its first component removed; 0 for the empty chain."""
    if not weights:
        return 0
    return d(weights[1:])


def d_second(weights: Weights) -> int:
    """d' of the chain with its first component removed; 0 if length < 2."""
    if len(weights) < 2:
        return 0
    return d_prime(weights[1:])


def e(weights: Weights) -> Fraction:
    den = d(weights)
    if den == 0:
        raise DegenerateChainError(f"chain {weights} has zero discriminant")
    return Fraction(d_prime(weights), den)


def e_tilde(weights: Weights) -> Fraction:
    return e(reverse_chain(weights))


def delta(weights: Weights) -> Fraction:
    den = d(weights)
    if den == 0:
        raise DegenerateChainError(f"chain {weights} has zero discriminant")
    return Fraction(1, den)


def e_by_recurrence(weights: Weights) -> Fraction:
    """e via e(T) = 1/(a1 - e(T - T1)); independent of the d'/d route."""
    value = Fraction(0)
    for a in reversed(weights):
        value = 1 / (a - value)
    return value


@dataclass(frozen=True)
class ChainInvariants:
    d: int
    d_prime: int
    d_second: int
    e: Fraction
    e_tilde: Fraction
    delta: Fraction


def invariants(weights: Weights) -> ChainInvariants:
    """All six invariants; e is computed twice and cross-checked."""
    dd = d(weights)
    if dd == 0:
        raise DegenerateChainError(f"chain {weights} has zero discriminant")
    ee = Fraction(d_prime(weights), dd)
    assert ee == e_by_recurrence(weights), "d'/d disagrees with the recurrence"
    return ChainInvariants(
        d=dd,
        d_prime=d_prime(weights),
        d_second=d_second(weights),
        e=ee,
        e_tilde=e(reverse_chain(weights)),
        delta=Fraction(1, dd),
    )


def chain_from_e(target: Fraction) -> Weights:
    """The unique admissible chain with e equal to ``target`` in [0, 1).

    Unwinds the continued fraction: a1 is the ceiling of 1/target and the
    recursion continues on a1 - 1/target.  target == 0 gives the empty chain.
    """
    target = Fraction(target)
    if not 0 <= target < 1:
        raise ValueError(f"e value must lie in [0,1), got {target}")
    weights: list[int] = []
    while target != 0:
        inv = 1 / target
        a = -((-inv.numerator) // inv.denominator)  # ceiling
        weights.append(a)
        target = a - inv
    return tuple(weights)


def adjoint_chain(weights: Weights) -> Weights:
    """The admissible chain A with e(A) = 1 - e(T)."""
    if not weights:
        raise ValueError("the empty chain has no adjoint")
    if not is_admissible_chain(weights):
        raise ValueError(f"chain {weights} is not admissible")
    return chain_from_e(1 - e(weights))


def oriented_chains_with_d(target: int) -> list[Weights]:
    """All oriented admissible chains with discriminant ``target``.

    Walks the prepend recursion d_new = a*d - d' from the empty chain,
    memoised implicitly by the (d, d') state; d strictly increases at each
    step, so the search tree is finite.
    """
    if target < 1:
        raise ValueError("discriminant must be >= 1")
    found: list[Weights] = []

    def grow(chain: Weights, dd: int, dp: int) -> None:
        if dd == target and chain:
            found.append(chain)
        a = 2
        while True:
            nd = a * dd - dp
            if nd > target:
                break
            grow((a,) + chain, nd, dd)
            a += 1

    grow((), 1, 0)
    return found


def enumerate_admissible_chains(target: int) -> list[Weights]:
    """Admissible chains with discriminant ``target``, up to reversal.

    Returns canonical forms sorted lexicographically; for target >= 2 the
    list always contains [target] and the chain of target-1 twos.
    """
    if target < 2:
        raise ValueError("discriminant must be >= 2")
    out = {canonical_chain(c) for c in oriented_chains_with_d(target)}
    return sorted(out)


def classify_e_plus_alpha(alpha: int) -> Callable[[Weights], bool]:
    """Shape predicate for oriented admissible chains with e + alpha/d = 1.

    alpha=1: a chain of 2's (possibly empty); alpha=2: 2's followed by a
    single 3; alpha=3: 2's followed by either (3,2) or a single 4.
    """
    if alpha not in (1, 2, 3):
        raise ValueError("alpha must be 1, 2 or 3")

    def pred(weights: Weights) -> bool:
        if alpha == 1:
            return all(w == 2 for w in weights)
        if alpha == 2:
            return len(weights) >= 1 and weights[-1] == 3 and all(
                w == 2 for w in weights[:-1]
            )
        return (
            len(weights) >= 2
            and weights[-2:] == (3, 2)
            and all(w == 2 for w in weights[:-2])
        ) or (
            len(weights) >= 1 and weights[-1] == 4 and all(w == 2 for w in weights[:-1])
        )

    return pred


def two_runs(count: int) -> Weights:
    """A chain of ``count`` 2's; the bracket form [(count)]."""
    return (2,) * count


def all_admissible_chains_up_to(limit: int) -> Iterable[Weights]:
    """All oriented admissible chains with discriminant <= limit."""
    for dd in range(2, limit + 1):
        yield from oriented_chains_with_d(dd)
