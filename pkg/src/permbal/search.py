"""Distance analysis and searches: exhaustive minima with symmetry
reduction, random-greedy descent, the Erdos-Szekeres closed forms, the
ES+- interpolation pipeline, and random-permutation profile statistics.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

import numpy as np

from . import _kernels
from .construct import es
from .errors import BudgetExceeded, KOutOfRange, ValidationMismatch
from .perms import Perm, all_perms, binomial
from .profiles import profile
from .ratpoly import Poly, binom_poly, lagrange

RNG_ALGORITHM = "philox4x64 (numpy Philox via SeedSequence spawning)"

DEFAULT_SWEEP_BUDGET = factorial(11)


@dataclass(frozen=True)
class SearchReport:
    n: int
    k: int
    best_delta: int  # scaled: max |k! * count - C(n,k)|
    witnesses: tuple[Perm, ...]
    method: str
    nodes_visited: int
    count_balanced: int | None = None
    witness_total: int | None = None  # minimizers found (witnesses may be capped)
    seed: int | None = None
    rng: str | None = None


def _rng_for(seed: int, stream: int) -> np.random.Generator:
    ss = np.random.SeedSequence(seed, spawn_key=(stream,))
    return np.random.Generator(np.random.Philox(ss))


def exhaustive_min_delta(
    n: int,
    k: int,
    max_witnesses: int = 64,
    budget: int = DEFAULT_SWEEP_BUDGET,
) -> SearchReport:
    """Exact min of the scaled distance over all of S_n.

    Enumeration keeps only lexicographic minima of the symmetry orbits
    (D4 with inversion, which is D4 itself: 8 elements), justified by the
    invariance of pattern counts under the group.  count_balanced sums
    orbit sizes, so it counts over the whole of S_n.
    """
    if k not in (2, 3, 4):
        raise KOutOfRange(f"exhaustive sweep supports k in 2..4, got {k}")
    if n < k:
        raise KOutOfRange(f"need n >= k, got n={n}, k={k}")
    if factorial(n) > budget:
        raise BudgetExceeded(f"{n}! = {factorial(n)} exceeds budget {budget}")
    best, wits, wit_count, balanced, nodes = _kernels.sweep_min_delta(n, k, max_witnesses)
    witnesses = tuple(tuple(int(x) for x in row) for row in wits)
    for w in witnesses:
        if profile(w, k).delta_scaled() != best:
            raise ValidationMismatch(f"witness {w} does not re-verify to {best}")
    return SearchReport(
        n=n,
        k=k,
        best_delta=int(best),
        witnesses=witnesses,
        method="exhaustive",
        nodes_visited=int(nodes),
        count_balanced=int(balanced),
        witness_total=int(wit_count),
    )


def greedy_search(
    n: int,
    k: int,
    seed: int,
    budget: int = 400_000,
    restart_moves: int = 20_000,
) -> SearchReport:
    """Random-greedy hill climb over transpositions, restarting until the
    move budget is exhausted or a balanced permutation is found.

    Deterministic for a fixed seed: restart r draws its start and move
    stream from SeedSequence(seed, spawn_key=(r,)).
    """
    if k not in (2, 3, 4):
        raise KOutOfRange(f"greedy search supports k in 2..4, got {k}")
    best = None
    best_perm: Perm | None = None
    used_total = 0
    restart = 0
    while used_total < budget:
        rng = _rng_for(seed, restart)
        start = np.asarray(rng.permutation(n) + 1, dtype=np.int64)
        moves = min(restart_moves, budget - used_total)
        mov = rng.integers(0, n, size=(2, moves), dtype=np.int64)
        d, v, used = _kernels.greedy_descent(start, mov[0], mov[1], k)
        used_total += used
        if best is None or d < best:
            best = d
            best_perm = tuple(int(x) for x in v)
        if best == 0:
            break
        restart += 1
    assert best_perm is not None
    if profile(best_perm, k).delta_scaled() != best:
        raise ValidationMismatch("greedy witness does not re-verify")
    return SearchReport(
        n=n,
        k=k,
        best_delta=int(best),
        witnesses=(best_perm,),
        method="greedy",
        nodes_visited=used_total,
        seed=seed,
        rng=RNG_ALGORITHM,
    )


# ---------------------------------------------------------------------------
# Erdos-Szekeres distance
# ---------------------------------------------------------------------------


def es_3142_closed_form(n: int) -> int:
    """#3142(ES+(n)) = C(n+2, 4)^2."""
    if n < 2:
        raise KOutOfRange(f"need n >= 2, got {n}")
    return binomial(n + 2, 4) ** 2


def es_gap_polynomial() -> Poly:
    """C(n+2,4)^2 - C(n^2,4)/24 as an exact polynomial in n.

    This is the deviation of the 3142 count of ES+(n) from the uniform
    target; its leading term n^7/144 gives the distance lower bound for
    the one-sided grid.
    """
    lhs = binom_poly(4, Poly((2, 1))) * binom_poly(4, Poly((2, 1)))
    rhs = binom_poly(4, Poly((0, 0, 1))) / 24
    return lhs - rhs


# ---------------------------------------------------------------------------
# ES+- interpolation (profiles are polynomials in n)
# ---------------------------------------------------------------------------

ES_PM_NODES = tuple(range(1, 10))
ES_PM_HOLDOUT = (10, 11, 12)


@dataclass(frozen=True)
class ProfilePolynomial:
    pattern: Perm
    poly: Poly

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        """Nine coefficients, constant first (degree <= 8)."""
        return tuple(self.poly.coeff(i) for i in range(9))


@dataclass(frozen=True)
class EsPmInterpolation:
    """Exact 4-profile polynomials of ES+-(n) plus the symbolic distance.

    Two deviation measures are reported.  `delta_*` is the l-infinity
    distance from the exact uniform profile C(2n^2,4)/4! (leading term
    5n^6/36, attained by 1234).  `density_delta_*` measures against the
    leading-order uniform density (2n^2)^4/(4!)^2; its leading term is
    2n^6/9, the figure usually quoted for this construction.  Both are
    Theta(n^6) = Theta(N^3), matching the order-k lower bound at k = 4.
    """

    polynomials: tuple[ProfilePolynomial, ...]
    delta_degree: int
    delta_leading: Fraction
    max_deviation_patterns: tuple[Perm, ...]
    density_delta_degree: int
    density_delta_leading: Fraction
    density_max_patterns: tuple[Perm, ...]

    def poly_for(self, pattern: Perm) -> Poly:
        for pp in self.polynomials:
            if pp.pattern == tuple(pattern):
                return pp.poly
        raise KeyError(pattern)


def _es_pm_profile(n: int):
    return profile(es(n, sign="pm"), 4)


def interpolate_es_pm() -> EsPmInterpolation:
    """Interpolate all 24 entries of the 4-profile of ES+-(n) from the
    nodes n = 1..9, validate at n = 10..12, and extract the symbolic
    distance (leading term 2n^6/9)."""
    node_profiles = {n: _es_pm_profile(n) for n in ES_PM_NODES}
    holdout_profiles = {n: _es_pm_profile(n) for n in ES_PM_HOLDOUT}
    polys: list[ProfilePolynomial] = []
    for tau in all_perms(4):
        values = [node_profiles[n].count(tau) for n in ES_PM_NODES]
        p = lagrange(ES_PM_NODES, values)
        if p.degree > 8:
            raise ValidationMismatch(f"degree {p.degree} > 8 for pattern {tau}")
        for n in ES_PM_HOLDOUT:
            expected = holdout_profiles[n].count(tau)
            if p(n) != expected:
                raise ValidationMismatch(
                    f"pattern {tau}: poly({n}) = {p(n)} but exact count is {expected}"
                )
        polys.append(ProfilePolynomial(tau, p))
    uniform = binom_poly(4, Poly((0, 0, 2))) / 24  # C(2n^2, 4)/4!
    order8 = Poly((0, 0, 2))
    density = order8 * order8 * order8 * order8 / 576  # (2n^2)^4 / (4!)^2

    def _argmax(target: Poly):
        deviations = [(pp.pattern, pp.poly - target) for pp in polys]
        deg = max(d.degree for _, d in deviations)
        lead = max(abs(d.coeff(deg)) for _, d in deviations)
        pats = tuple(pat for pat, d in deviations if abs(d.coeff(deg)) == lead)
        return deg, lead, pats

    deg, lead, argmax = _argmax(uniform)
    ddeg, dlead, dargmax = _argmax(density)
    return EsPmInterpolation(
        polynomials=tuple(polys),
        delta_degree=deg,
        delta_leading=lead,
        max_deviation_patterns=argmax,
        density_delta_degree=ddeg,
        density_delta_leading=dlead,
        density_max_patterns=dargmax,
    )


# ---------------------------------------------------------------------------
# Random permutation statistics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProfileStats:
    n: int
    k: int
    samples: int
    seed: int
    rng: str
    deltas_scaled: tuple[int, ...]
    fraction_in_window: Fraction
    pattern_mean: dict[Perm, float] = field(default_factory=dict)
    pattern_std: dict[Perm, float] = field(default_factory=dict)


def _delta_in_window(delta_scaled: int, n: int, k: int) -> bool:
    """Exact check of delta in (n^{k-1/2}/(100 k!), 2 k! n^{k-1/2})."""
    fk = factorial(k)
    npow = n ** (2 * k - 1)
    above_low = 10_000 * delta_scaled * delta_scaled > npow
    below_high = delta_scaled * delta_scaled < 4 * fk**4 * npow
    return above_low and below_high


def random_profile_stats(n: int, k: int, samples: int, seed: int) -> ProfileStats:
    """Empirical distribution of delta over uniform random permutations."""
    if k not in (2, 3, 4):
        raise KOutOfRange(f"stats support k in 2..4, got {k}")
    deltas: list[int] = []
    counts_acc: dict[Perm, list[int]] = {tau: [] for tau in all_perms(k)}
    for i in range(samples):
        rng = _rng_for(seed, i)
        pi = tuple(int(v) + 1 for v in rng.permutation(n))
        prof = profile(pi, k)
        deltas.append(prof.delta_scaled())
        for tau in counts_acc:
            counts_acc[tau].append(prof.count(tau))
    inside = sum(1 for d in deltas if _delta_in_window(d, n, k))
    means = {tau: float(np.mean(v)) for tau, v in counts_acc.items()}
    stds = {tau: float(np.std(v, ddof=1)) if samples > 1 else 0.0 for tau, v in counts_acc.items()}
    return ProfileStats(
        n=n,
        k=k,
        samples=samples,
        seed=seed,
        rng=RNG_ALGORITHM,
        deltas_scaled=tuple(deltas),
        fraction_in_window=Fraction(inside, samples),
        pattern_mean=means,
        pattern_std=stds,
    )
