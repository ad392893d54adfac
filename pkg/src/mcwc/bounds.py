"""Size bounds for partitioned codes and their asymptotic rate functions.

Every integer-valued bound is computed in exact rational arithmetic
(:class:`fractions.Fraction`); floating point appears only in the asymptotic
functions, which are evaluated with mpmath at a stated working precision.

Distance conventions: :class:`~mcwc.core.CodeParameters` stores the literal
minimum distance.  The closed-form bounds below are stated for even distance
``2u``; each operation converts explicitly and reports "inapplicable" when the
stored distance is odd.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, prod
from typing import Optional, Union

import mpmath

from .core import CodeParameters, DomainError, ShapeError

RationalLike = Union[int, str, Fraction]


@dataclass(frozen=True)
class BoundResult:
    """A bound value plus the intermediate quantities that produced it.

    ``value`` is ``None`` when the method does not apply to the parameters
    (odd distance, non-positive denominator, ...); the reason is recorded in
    the certificate.
    """

    method: str
    value: Optional[int]
    certificate: dict = field(default_factory=dict, compare=False)

    @property
    def applicable(self) -> bool:
        return self.value is not None

    def __str__(self) -> str:
        v = "inapplicable" if self.value is None else str(self.value)
        return f"{self.method}: {v}"


def _require_uniform(params: CodeParameters, method: str) -> tuple[int, int, int]:
    if not params.is_uniform:
        raise ShapeError(f"{method} requires uniform parameters")
    return params.m, params.block_lengths[0], params.block_weights[0]


def johnson_eq3(params: CodeParameters) -> BoundResult:
    """Floor-of-ratio bound u / (sum_i w_i^2/n_i - lambda) for even distance 2u."""
    method = "johnson-eq3"
    if params.distance % 2 != 0:
        return BoundResult(method, None, {"reason": "odd distance"})
    u = params.distance // 2
    lam = params.total_weight - u
    denom = sum(Fraction(w * w, n) for w, n in zip(params.block_weights, params.block_lengths))
    denom -= lam
    cert = {"u": u, "lambda": lam, "denominator": denom}
    if denom <= 0:
        cert["reason"] = "denominator <= 0"
        return BoundResult(method, None, cert)
    return BoundResult(method, int(Fraction(u) / denom), cert)


# -- recursive Johnson bound -------------------------------------------------

_REC_CACHE: dict = {}
_REC_LOCK = threading.Lock()

_BlockKey = tuple[tuple[int, int], ...]  # sorted (w, n) pairs


def _space_size(blocks: _BlockKey) -> int:
    return prod(comb(n, w) for w, n in blocks)


def _normalize_blocks(blocks) -> Optional[_BlockKey]:
    """Drop blocks whose weight is forced (w in {0, n}); None when no word exists."""
    kept = []
    for w, n in blocks:
        if w < 0 or w > n:
            return None
        if w == 0 or w == n:
            continue
        kept.append((w, n))
    return tuple(sorted(kept))


def _eq3_on_blocks(blocks: _BlockKey, d: int) -> Optional[int]:
    if d % 2 != 0:
        return None
    u = d // 2
    lam = sum(w for w, _ in blocks) - u
    denom = sum(Fraction(w * w, n) for w, n in blocks) - lam
    if denom <= 0:
        return None
    return int(Fraction(u) / denom)


class _RecState:
    __slots__ = ("visited", "budget")

    def __init__(self, budget: int):
        self.visited = 0
        self.budget = budget


_Rule = tuple  # ("eq1", w, n) | ("eq2", w, n) | ("eq3",) | ("product",) | ...


def _rec_bound(blocks: _BlockKey, d: int, st: _RecState) -> tuple[int, _Rule]:
    norm = _normalize_blocks(blocks)
    if norm is None:
        return 0, ("no-word",)
    blocks = norm
    if not blocks:
        return 1, ("single",)
    if d <= 2:
        # distinct equal-weight words always differ in at least two coordinates
        return _space_size(blocks), ("space",)
    if d > 2 * sum(min(w, n - w) for w, n in blocks):
        return 1, ("single",)
    key = (blocks, d)
    with _REC_LOCK:
        hit = _REC_CACHE.get(key)
    if hit is not None:
        return hit[0], hit[1]
    st.visited += 1
    over_budget = st.visited > st.budget
    best = _space_size(blocks)
    rule: _Rule = ("product",)
    if not over_budget:
        v3 = _eq3_on_blocks(blocks, d)
        if v3 is not None and v3 < best:
            best, rule = v3, ("eq3",)
        for i, (w, n) in enumerate(blocks):
            rest = blocks[:i] + blocks[i + 1 :]
            if w >= 1:
                child, _ = _rec_bound(rest + ((w - 1, n - 1),), d, st)
                v = int(Fraction(n, w) * child)
                if v < best:
                    best, rule = v, ("eq1", w, n)
            if n - w >= 1:
                child, _ = _rec_bound(rest + ((w, n - 1),), d, st)
                v = int(Fraction(n, n - w) * child)
                if v < best:
                    best, rule = v, ("eq2", w, n)
        with _REC_LOCK:
            _REC_CACHE[key] = (best, rule)
    return best, rule


def johnson_recursive(params: CodeParameters, state_budget: int = 10**6) -> BoundResult:
    """Memoized minimization over the two single-block recursions, the
    floor-of-ratio bound, the trivial product bound and the base cases.

    The memo table is shared across calls and guarded by a lock; results do
    not depend on call order.  ``state_budget`` caps the number of states
    explored per call; beyond it the sound product fallback is used.
    """
    blocks = tuple(zip(params.block_weights, params.block_lengths))
    st = _RecState(state_budget)
    value, rule = _rec_bound(blocks, params.distance, st)
    return BoundResult(
        "johnson-recursive",
        value,
        {"rule": rule, "states": st.visited, "trace": _rec_trace(blocks, params.distance)},
    )


def _rec_trace(blocks, d: int, limit: int = 64) -> tuple[_Rule, ...]:
    """Path of winning rules from the root state down to a terminal rule."""
    trace: list[_Rule] = []
    while len(trace) < limit:
        value, rule = _rec_bound(blocks, d, _RecState(0))
        trace.append(rule)
        if rule[0] not in ("eq1", "eq2"):
            break
        _, w, n = rule
        norm = _normalize_blocks(blocks)
        i = norm.index((w, n))
        rest = norm[:i] + norm[i + 1 :]
        blocks = rest + ((w - 1, n - 1) if rule[0] == "eq1" else (w, n - 1),)
    return tuple(trace)


def plotkin_bound(params: CodeParameters) -> BoundResult:
    """Averaging bound floor(u/b) with b = u - m*w*(n-w)/n, for uniform shapes."""
    method = "plotkin"
    m, n, w = _require_uniform(params, method)
    if params.distance % 2 != 0:
        return BoundResult(method, None, {"reason": "odd distance"})
    u = params.distance // 2
    b = Fraction(u) - Fraction(m * w * (n - w), n)
    cert = {"u": u, "b": b}
    if b <= 0:
        cert["reason"] = "b <= 0"
        return BoundResult(method, None, cert)
    return BoundResult(method, int(Fraction(u) / b), cert)


def _frac_part(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def plotkin_discrete(params: CodeParameters) -> BoundResult:
    """Refinement of :func:`plotkin_bound` in which the column averages are
    constrained to multiples of 1/M.

    The refined inequality is implicit in M; the largest consistent M is found
    by descending from the continuous value, so the result never exceeds
    :func:`plotkin_bound`.  Returns 1 when no M down to 1 is consistent.
    """
    method = "plotkin-discrete"
    base = plotkin_bound(params)
    if not base.applicable:
        return BoundResult(method, None, base.certificate)
    m, n, w = _require_uniform(params, method)
    u = params.distance // 2
    start = base.value
    for candidate in range(start, 0, -1):
        corr = (
            Fraction(n * m, candidate * candidate)
            * _frac_part(Fraction(candidate * w, n))
            * _frac_part(Fraction(candidate * (n - w), n))
        )
        b = Fraction(u) - Fraction(m * w * (n - w), n) + corr
        if b > 0 and candidate <= int(Fraction(u) / b):
            return BoundResult(
                method, candidate, {"u": u, "b": b, "continuous": start}
            )
    return BoundResult(method, 1, {"u": u, "continuous": start, "reason": "descent exhausted"})


def spherical_bound(params: CodeParameters) -> BoundResult:
    """Bound via the embedding of the code on an (nm-m)-dimensional sphere."""
    method = "spherical"
    m, n, w = _require_uniform(params, method)
    if params.distance % 2 != 0:
        return BoundResult(method, None, {"reason": "odd distance"})
    u = params.distance // 2
    b = Fraction(u) - Fraction(m * w * (n - w), n)
    cert = {"u": u, "b": b}
    if b <= 0:
        cert["reason"] = "b <= 0"
        return BoundResult(method, None, cert)
    if 2 * b > u:
        # maximum cosine below -1 (u*n > 2*m*w*(n-w)): no two codewords coexist
        cert["case"] = "cosine < -1"
        return BoundResult(method, 1, cert)
    if b >= Fraction(u, n * m - m + 1):
        cert["case"] = "floor(u/b)"
        return BoundResult(method, int(Fraction(u) / b), cert)
    cert["case"] = "simplex"
    return BoundResult(method, m * (n - 1) + 1, cert)


def gv_lower_bound(params: CodeParameters) -> BoundResult:
    """Gilbert-Varshamov-type lower bound: space size over the punctured-ball
    volume, computed with exact integers."""
    method = "gv"
    m, n, w = _require_uniform(params, method)
    if params.distance % 2 != 0:
        return BoundResult(method, None, {"reason": "odd distance"})
    u = params.distance // 2
    numerator = comb(n, w) ** m
    if u == 0:
        return BoundResult(method, numerator, {"numerator": numerator, "ball_volume": 0})
    per_block = [comb(w, i) * comb(n - w, i) for i in range(min(w, n - w) + 1)]
    # ball[j] = number of words at distance exactly 2j from a fixed word
    ball = [1]
    for _ in range(m):
        nxt = [0] * (len(ball) + len(per_block) - 1)
        for a, ca in enumerate(ball):
            if ca:
                for b_, cb in enumerate(per_block):
                    nxt[a + b_] += ca * cb
        ball = nxt
    volume = sum(ball[:u])  # radius 2u - 1 reaches distances 2j <= 2(u-1)
    value = -(-numerator // volume)
    return BoundResult(method, value, {"numerator": numerator, "ball_volume": volume})


def best_upper_bound(
    params: CodeParameters, *, lp_cap: int = 64, state_budget: int = 10**6
) -> BoundResult:
    """Minimum over every applicable upper bound, with the winner tagged.

    The LP bound is consulted only when the instance is small enough for the
    exact simplex to be cheap (variable count at most ``lp_cap``).
    """
    results = [johnson_recursive(params, state_budget), johnson_eq3(params)]
    if params.is_uniform:
        results.append(plotkin_discrete(params))
        results.append(spherical_bound(params))
        n, w = params.block_lengths[0], params.block_weights[0]
        wn = min(w, n - w)
        # after block-permutation symmetrization the LP has one variable per
        # class multiset; consult it when that count is small
        if (
            params.distance % 2 == 0
            and comb(params.m + wn, wn) <= lp_cap
            and (wn + 1) ** params.m <= 4096
        ):
            from .lp import lp_bound

            results.append(lp_bound(params))
    table = {r.method: r.value for r in results}
    best = None
    for r in results:
        if r.applicable and (best is None or r.value < best.value):
            best = r
    assert best is not None  # johnson_recursive always applies
    return BoundResult(best.method, best.value, {"all": table})


# -- asymptotic rate functions ------------------------------------------------


def _to_fraction(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    raise DomainError(f"expected a rational value, got {x!r}")


def _mpf(x: Fraction, ctx) -> mpmath.mpf:
    return ctx.mpf(x.numerator) / ctx.mpf(x.denominator)


def _entropy_term(p, ctx):
    """-p*log2(p) with the 0*log(0) = 0 convention."""
    if p == 0:
        return ctx.mpf(0)
    return -p * ctx.log(p, 2)


def binary_entropy(x: RationalLike, dps: int = 30) -> mpmath.mpf:
    xf = _to_fraction(x)
    if not 0 <= xf <= 1:
        raise DomainError("binary entropy needs an argument in [0, 1]")
    ctx = mpmath.mp.clone()
    ctx.dps = dps
    p = _mpf(xf, ctx)
    return _entropy_term(p, ctx) + _entropy_term(1 - p, ctx)


def q_entropy(q: int, x: RationalLike, dps: int = 30) -> mpmath.mpf:
    """q-ary entropy x*log_q(q-1) - x*log_q(x) - (1-x)*log_q(1-x) on [0, (q-1)/q]."""
    xf = _to_fraction(x)
    if q < 2:
        raise DomainError("q must be at least 2")
    if not 0 <= xf <= Fraction(q - 1, q):
        raise DomainError(f"q-ary entropy needs an argument in [0, {q-1}/{q}]")
    ctx = mpmath.mp.clone()
    ctx.dps = dps
    p = _mpf(xf, ctx)
    logq = ctx.log(q)
    value = (_entropy_term(p, ctx) + _entropy_term(1 - p, ctx)) * ctx.log(2) / logq
    if xf > 0:
        value += p * ctx.log(q - 1) / logq
    return value


def _check_common_domain(delta: Fraction, omega: Fraction) -> None:
    if not 0 < omega <= Fraction(1, 2):
        raise DomainError("omega must lie in (0, 1/2]")
    if delta < 0:
        raise DomainError("delta must be non-negative")
    if delta > max(Fraction(1, 2), 2 * omega):
        raise DomainError("delta must not exceed max(1/2, 2*omega)")


def mu_c(delta: RationalLike, omega: RationalLike, dps: int = 30) -> mpmath.mpf:
    """Concatenation rate omega*log2(1/omega)*(1 - H_q(delta/(2*omega))), q = 1/omega."""
    d = _to_fraction(delta)
    o = _to_fraction(omega)
    _check_common_domain(d, o)
    q = Fraction(1) / o
    if q.denominator != 1 or q < 2:
        raise DomainError("1/omega must be an integer >= 2")
    q = int(q)
    x = d / (2 * o)
    if x > Fraction(q - 1, q):
        raise DomainError("delta/(2*omega) must not exceed (q-1)/q")
    ctx = mpmath.mp.clone()
    ctx.dps = dps
    return _mpf(o, ctx) * ctx.log(q, 2) * (1 - q_entropy(q, x, dps))


def mu_gv(delta: RationalLike, omega: RationalLike, dps: int = 30) -> mpmath.mpf:
    """Gilbert-Varshamov rate H2(omega) - omega*H2(delta/2omega) - (1-omega)*H2(delta/2(1-omega))."""
    d = _to_fraction(delta)
    o = _to_fraction(omega)
    _check_common_domain(d, o)
    x1 = d / (2 * o)
    x2 = d / (2 * (1 - o))
    if x1 > 1 or x2 > 1:
        raise DomainError("entropy arguments must lie in [0, 1]")
    ctx = mpmath.mp.clone()
    ctx.dps = dps
    return (
        binary_entropy(o, dps)
        - _mpf(o, ctx) * binary_entropy(x1, dps)
        - _mpf(1 - o, ctx) * binary_entropy(x2, dps)
    )


def comparison_f(x: RationalLike, omega: RationalLike, dps: int = 30) -> mpmath.mpf:
    """Closed form of mu_gv - mu_c at (delta, omega) with x = delta/2.

    f(x, w) = -(2-2w-x)*log2(1-w) + x*log2(x/w) + (1-w-x)*log2(1-w-x),
    with x*log2(x/w) taken as 0 at x = 0.  The function is non-negative on the
    admissible region and vanishes on the line x = w - w^2.
    """
    xf = _to_fraction(x)
    o = _to_fraction(omega)
    if not 0 < o < 1:
        raise DomainError("omega must lie in (0, 1)")
    if not 0 <= xf < 1 - o:
        raise DomainError("x must lie in [0, 1 - omega)")
    ctx = mpmath.mp.clone()
    ctx.dps = dps
    om = _mpf(o, ctx)
    xx = _mpf(xf, ctx)
    value = -(2 - 2 * om - xx) * ctx.log(1 - om, 2)
    if xf > 0:
        value += xx * ctx.log(xx / om, 2)
    rest = 1 - om - xx
    if rest > 0:
        value += rest * ctx.log(rest, 2)
    return value


@dataclass(frozen=True)
class AsymptoticPoint:
    """The two lower-bound rates and their difference at one (delta, omega)."""

    delta: Fraction
    omega: Fraction
    mu_c: Optional[mpmath.mpf]  # None when 1/omega is not an integer
    mu_gv: mpmath.mpf
    f: mpmath.mpf
    dps: int


def asymptotic_point(delta: RationalLike, omega: RationalLike, dps: int = 30) -> AsymptoticPoint:
    d = _to_fraction(delta)
    o = _to_fraction(omega)
    q = Fraction(1) / o
    concat = None
    if q.denominator == 1 and q >= 2:
        try:
            concat = mu_c(d, o, dps)
        except DomainError:
            concat = None
    return AsymptoticPoint(d, o, concat, mu_gv(d, o, dps), comparison_f(d / 2, o, dps), dps)
