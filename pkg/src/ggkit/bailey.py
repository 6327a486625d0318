"""Bailey pairs at parameter a = 1, the standard transforms, and the full chain.

A pair stores its two sequences as truncated Laurent series on a refined
exponent grid: a stored exponent e stands for q**(e/grid).  The chain starts
on the half-integer grid (grid = 2) because the seed pair and its iterates
involve half-integer powers; the final base-change step lands on the plain
grid (grid = 1) after checking that every surviving exponent is even.

Sequences are evaluated lazily and memoized, so deep beta evaluations only pay
for the indices a given truncation can see.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .series import (
    Coeff,
    LaurentSeries,
    euler_product,
    pochhammer_finite,
    pochhammer_infinite,
    product_triple,
)


class PairFormError(ValueError):
    """A transform's closed-form precondition on alpha failed."""


class ChainParameterError(ValueError):
    """Chain parameters outside the supported range."""


class LimitDiagnosticError(RuntimeError):
    """The limiting series did not stabilize within the allowed index range."""


_INV_POCH_CACHE: dict[tuple[int, int, int], LaurentSeries] = {}


def _inv_poch(step: int, m: int, trunc: int) -> LaurentSeries:
    """1/(q**step; q**step)_m on the stored grid, truncated."""
    key = (step, m, trunc)
    out = _INV_POCH_CACHE.get(key)
    if out is None:
        out = pochhammer_finite(1, step, step, m, trunc).inverse()
        _INV_POCH_CACHE[key] = out
    return out


class BaileyPair:
    """Sequences n -> alpha_n, beta_n with a grid denominator and truncation."""

    def __init__(self, label: str, grid: int, trunc: int,
                 alpha_fn: Callable[[int], LaurentSeries],
                 beta_fn: Callable[[int], LaurentSeries]):
        self.label = label
        self.grid = grid
        self.trunc = trunc
        self._alpha_fn = alpha_fn
        self._beta_fn = beta_fn
        self._alpha: dict[int, LaurentSeries] = {}
        self._beta: dict[int, LaurentSeries] = {}

    def alpha(self, n: int) -> LaurentSeries:
        s = self._alpha.get(n)
        if s is None:
            s = self._alpha_fn(n)
            self._alpha[n] = s
        return s

    def beta(self, n: int) -> LaurentSeries:
        s = self._beta.get(n)
        if s is None:
            s = self._beta_fn(n)
            self._beta[n] = s
        return s


def unit_pair(trunc_q: int) -> BaileyPair:
    """The seed pair: beta is the delta sequence; alpha_n pairs the two
    half-integer theta exponents n(n-1)/2 and n(n+1)/2."""
    trunc = 2 * trunc_q

    def alpha(n: int) -> LaurentSeries:
        if n == 0:
            return LaurentSeries.one(trunc)
        sign = -1 if n % 2 else 1
        return LaurentSeries.from_terms(
            {n * n - n: sign, n * n + n: sign}, trunc
        )

    def beta(n: int) -> LaurentSeries:
        return LaurentSeries.one(trunc) if n == 0 else LaurentSeries.zero(trunc)

    return BaileyPair("P0", 2, trunc, alpha, beta)


def transform_iterate(pair: BaileyPair, label: str = "") -> BaileyPair:
    """The limiting form of the Bailey transform at a = 1:
    alpha_n picks up q**(n^2); beta_n becomes sum_j q**(j^2)/(q;q)_{n-j} beta_j."""
    g, trunc = pair.grid, pair.trunc

    def alpha(n: int) -> LaurentSeries:
        return pair.alpha(n).shift(g * n * n).truncated(trunc)

    def beta(n: int) -> LaurentSeries:
        acc = LaurentSeries.zero(trunc)
        for j in range(n + 1):
            e = g * j * j
            if e > trunc:
                break
            term = pair.beta(j) * _inv_poch(g, n - j, trunc)
            acc = acc + term.shift(e).truncated(trunc)
        return acc

    return BaileyPair(label or f"{pair.label}+iter", g, trunc, alpha, beta)


def _theta_alpha(a2: int, inner2: int, grid: int, n: int, trunc: int) -> LaurentSeries:
    """(-1)^n q^{(a2/2) n^2} (q^{(inner2/2) n} + q^{-(inner2/2) n}) on the grid."""
    if n == 0:
        return LaurentSeries.one(trunc)
    sign = -1 if n % 2 else 1
    half = grid // 2  # grid units per q^(1/2)
    base = a2 * half * n * n
    off = inner2 * half * n
    terms: dict[int, Coeff] = {}
    for e in (base - off, base + off):
        terms[e] = terms.get(e, 0) + sign
    return LaurentSeries.from_terms(terms, trunc)


def transform_shift(pair: BaileyPair, a_num2: int, label: str = "") -> BaileyPair:
    """The exponent-shift transform: valid only when alpha_n has the closed form
    (-1)^n q^{A n^2}(q^{(A-1)n} + q^{-(A-1)n}) with A = a_num2/2; then alpha's
    inner exponent moves from A-1 to A and beta_n gains a factor q**n.

    Raises PairFormError naming the first index whose alpha does not match.
    """
    g, trunc = pair.grid, pair.trunc
    if (a_num2 * g) % 2:
        raise PairFormError("the exponent parameter must live on the stored grid")
    check_depth = 8
    for n in range(check_depth + 1):
        want = _theta_alpha(a_num2, a_num2 - 2, g, n, trunc)
        if pair.alpha(n) != want:
            raise PairFormError(
                f"alpha precondition violated at n={n}: pair {pair.label} does not "
                f"match the required closed form with parameter {Fraction(a_num2, 2)}"
            )

    def alpha(n: int) -> LaurentSeries:
        return _theta_alpha(a_num2, a_num2, g, n, trunc)

    def beta(n: int) -> LaurentSeries:
        return pair.beta(n).shift(g * n).truncated(trunc)

    return BaileyPair(label or f"{pair.label}+shift", g, trunc, alpha, beta)


def combine(pairs: list[BaileyPair], weights: list[Coeff], label: str = "") -> BaileyPair:
    """Componentwise linear combination; the defining relation is linear."""
    if len(pairs) != len(weights) or not pairs:
        raise ValueError("need equally many pairs and weights")
    g, trunc = pairs[0].grid, pairs[0].trunc
    if any(p.grid != g or p.trunc != trunc for p in pairs):
        raise ValueError("pairs must share grid and truncation")

    def alpha(n: int) -> LaurentSeries:
        acc = LaurentSeries.zero(trunc)
        for p, w in zip(pairs, weights):
            acc = acc + p.alpha(n).scale(w)
        return acc

    def beta(n: int) -> LaurentSeries:
        acc = LaurentSeries.zero(trunc)
        for p, w in zip(pairs, weights):
            acc = acc + p.beta(n).scale(w)
        return acc

    return BaileyPair(label or "combined", g, trunc, alpha, beta)


def transform_base_change(pair: BaileyPair, label: str = "") -> BaileyPair:
    """Move a half-integer-grid pair to the plain grid:

        alpha'_n = 2 q^n / (1 + q^{2n}) * alpha_n(q^2)
        beta'_n  = sum_k (-1; q)_{2k} q^k / (q^2; q^2)_{n-k} * beta_k(q^2)

    Consuming the pair at q^2 doubles its stored exponents; after assembling,
    every exponent must be even and is halved onto the plain grid.
    """
    if pair.grid != 2:
        raise ValueError("base change consumes a pair on the half-integer grid")
    trunc = pair.trunc  # still in half-units while assembling
    trunc_q = trunc // 2

    def alpha(n: int) -> LaurentSeries:
        a = pair.alpha(n).substitute_power(2).truncated(trunc)
        if n == 0:
            return a.project_even()
        denom = LaurentSeries.from_terms({0: 1, 4 * n: 1}, trunc)
        out = a.shift(2 * n).truncated(trunc) * denom.inverse()
        return out.scale(2).truncated(trunc).project_even()

    def beta(n: int) -> LaurentSeries:
        acc = LaurentSeries.zero(trunc)
        for k in range(n + 1):
            if 2 * k > trunc:
                break
            fac = pochhammer_finite(-1, 0, 2, 2 * k, trunc)
            term = fac * pair.beta(k).substitute_power(2).truncated(trunc)
            term = term * _inv_poch(4, n - k, trunc)
            acc = acc + term.shift(2 * k).truncated(trunc)
        return acc.project_even()

    return BaileyPair(label or f"{pair.label}+base", 1, trunc_q, alpha, beta)


def verify_pair_relation(pair: BaileyPair, n_max: int) -> tuple[bool, str]:
    """Check beta_n = sum_r alpha_r / ((q;q)_{n-r} (q;q)_{n+r}) for n <= n_max."""
    g, trunc = pair.grid, pair.trunc
    for n in range(n_max + 1):
        acc = LaurentSeries.zero(trunc)
        for r in range(n + 1):
            term = pair.alpha(r) * _inv_poch(g, n - r, trunc)
            term = term * _inv_poch(g, n + r, trunc)
            acc = acc + term.truncated(trunc)
        diff = acc.first_difference(pair.beta(n))
        if diff is not None:
            return False, (
                f"pair {pair.label}: relation fails at n={n}, first difference at "
                f"grid exponent {diff} ({acc.coefficient(diff)} vs {pair.beta(n).coefficient(diff)})"
            )
    return True, ""


@dataclass
class ChainStage:
    index: int
    note: str
    pair: BaileyPair


@dataclass
class Chain:
    k: int
    i: int
    trunc_q: int
    stages: list[ChainStage]

    @property
    def final(self) -> BaileyPair:
        return self.stages[-1].pair

    def stage_by_note(self, note: str) -> ChainStage:
        for st in self.stages:
            if st.note == note:
                return st
        raise KeyError(note)


def run_chain(k: int, i: int, trunc_q: int = 40) -> Chain:
    """Build the full pair chain for parameters k > i >= 1.

    Seed, one iteration, k-i-1 alternating (shift, iterate) rounds, one more
    shift, the half-half average of the last two pairs, i-1 iterations, and the
    base change to the plain grid.
    """
    if i >= k:
        if i == k:
            raise ChainParameterError("chain undefined for i = k; verify that case directly")
        raise ChainParameterError("parameters must satisfy k > i >= 1")
    if i < 1:
        raise ChainParameterError("parameters must satisfy k > i >= 1")
    stages: list[ChainStage] = []

    def push(pair: BaileyPair, note: str) -> BaileyPair:
        pair.label = f"P{len(stages)}"
        stages.append(ChainStage(len(stages), note, pair))
        return pair

    cur = push(unit_pair(trunc_q), "unit")
    cur = push(transform_iterate(cur), "seed")
    for j in range(1, k - i):
        cur = push(transform_shift(cur, 2 * j + 1), f"alt{j}.shift")
        cur = push(transform_iterate(cur), f"alt{j}.iterate")
    first = cur
    second = push(transform_shift(cur, 2 * (k - i) + 1), "last.shift")
    half = Fraction(1, 2)
    cur = push(combine([first, second], [half, half]), "averaged")
    for t in range(1, i):
        cur = push(transform_iterate(cur), f"tail{t}.iterate")
    cur = push(transform_base_change(cur), "final")
    return Chain(k, i, trunc_q, stages)


def limit_identity(chain: Chain, truncation: int) -> tuple[LaurentSeries, LaurentSeries]:
    """Both sides of the limiting identity of the chain's final pair.

    lhs: (q^2; q^2)_oo * beta_n for n large enough that larger indices cannot
    change coefficients up to the truncation (stabilization is checked).
    rhs: (-q; q)_oo / (q; q)_oo times the alpha theta sum.
    """
    pair = chain.final
    if truncation > pair.trunc:
        raise ValueError(f"truncation {truncation} exceeds the chain truncation {pair.trunc}")
    e2 = pochhammer_infinite(1, 2, 2, truncation)

    def lhs_at(n: int) -> LaurentSeries:
        return (e2 * pair.beta(n)).truncated(truncation)

    n = max(truncation, 2)
    cur = lhs_at(n)
    prev = lhs_at(n - 1)
    while cur != prev:
        n += 1
        if n > 2 * truncation + 4:
            raise LimitDiagnosticError(
                f"beta side did not stabilize by n={n} at truncation {truncation}"
            )
        prev, cur = cur, lhs_at(n)

    k, i = chain.k, chain.i
    acc = LaurentSeries.zero(truncation)
    r = 0
    while True:
        lo = (2 * k - 1) * r * r - 2 * (k - i) * r
        if lo > truncation:
            break
        acc = acc + pair.alpha(r).truncated(truncation)
        r += 1
    rhs = acc * pochhammer_infinite(-1, 1, 1, truncation)
    rhs = (rhs * euler_product(truncation).inverse()).truncated(truncation)
    return cur, rhs


def expected_limit_rhs(k: int, i: int, truncation: int) -> LaurentSeries:
    """The product form the limit must equal: (-q;q)_oo (triple product)/(q;q)_oo."""
    out = pochhammer_infinite(-1, 1, 1, truncation) * product_triple(k, i, truncation)
    return (out * euler_product(truncation).inverse()).truncated(truncation)
