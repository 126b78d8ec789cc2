"""Exact identities and arithmetic on profiles.

Contains downward induction, divisibility/admissibility, the product
expansion engine (rewriting #sigma * #tau as an integer combination of
single pattern counts), and the symbolic verifiers built on top of it:
the no-4-balanced cubic and the distance lower-bound coefficients.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import Inadmissible, KOutOfRange, NonIntegralResult, OrderCapExceeded
from .perms import Perm, all_perms, binomial, pattern_of
from .profiles import Profile, profile
from .ratpoly import Poly, binom_poly

EXPANSION_ORDER_CAP = 8


@dataclass(frozen=True)
class PatternCombo:
    """Linear combination sum(terms[rho] * #rho(pi)) + constant.

    Terms may mix pattern orders; zero coefficients are dropped.
    """

    terms: dict[Perm, Fraction] = field(default_factory=dict)
    constant: Fraction = Fraction(0)

    def __post_init__(self):
        cleaned = {tuple(p): Fraction(c) for p, c in self.terms.items() if c != 0}
        object.__setattr__(self, "terms", cleaned)
        object.__setattr__(self, "constant", Fraction(self.constant))

    def orders(self) -> set[int]:
        return {len(p) for p in self.terms}

    def evaluate(self, pi: Perm, method: str = "auto") -> Fraction:
        profs = {m: profile(pi, m, method) for m in self.orders()}
        acc = Fraction(self.constant)
        for rho, c in self.terms.items():
            acc += c * profs[len(rho)].count(rho)
        return acc

    def substitute_uniform(self) -> Poly:
        """Replace each #rho by C(n,|rho|)/|rho|!; exact polynomial in n."""
        acc = Poly.const(self.constant)
        for rho, c in self.terms.items():
            r = len(rho)
            acc = acc + (binom_poly(r) / factorial(r)) * c
        return acc

    def to_json_dict(self) -> dict:
        from .perms import pattern_key

        def fmt(q: Fraction) -> str:
            return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"

        terms = {
            pattern_key(rho): fmt(c)
            for rho, c in sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))
        }
        return {"terms": terms, "constant": fmt(self.constant)}


@dataclass(frozen=True)
class AdmissibilityReport:
    n: int
    k: int
    admissible: bool
    failing_r: int | None = None
    residue_class: int | None = None


def downward_induce(p: Profile, r: int) -> Profile:
    """Derive the r-profile from a k-profile, exactly (r < k).

    C(n-r, k-r) * #tau(pi) = sum_sigma #tau(sigma) * #sigma(pi); the
    division must be exact, otherwise the input is no permutation profile.
    """
    k, n = p.k, p.n
    if not 1 <= r < k:
        raise KOutOfRange(f"need 1 <= r < k, got r={r}, k={k}")
    denom = binomial(n - r, k - r)
    acc: dict[Perm, int] = {}
    for sigma, cnt in p.items_nonzero():
        for subset in itertools.combinations(sigma, r):
            tau = pattern_of(subset)
            acc[tau] = acc.get(tau, 0) + cnt
    counts: dict[Perm, int] = {}
    for tau, total in acc.items():
        q, rem = divmod(total, denom)
        if rem:
            raise NonIntegralResult(
                f"count of {tau} induces to {total}/{denom}, not an integer"
            )
        if q:
            counts[tau] = q
    return Profile(n, r, counts)


@lru_cache(maxsize=None)
def _content_table(k: int) -> dict[Perm, int]:
    """tau in S_{k-1} -> sum over sigma in S_k of #tau(sigma)."""
    table: dict[Perm, int] = {}
    for sigma in all_perms(k):
        for subset in itertools.combinations(sigma, k - 1):
            tau = pattern_of(subset)
            table[tau] = table.get(tau, 0) + 1
    return table


def pattern_content_sum(k: int, tau: Perm) -> int:
    """sum over sigma in S_k of #tau(sigma), for tau of order k-1 (= k^2)."""
    if not 2 <= k <= EXPANSION_ORDER_CAP:
        raise KOutOfRange(f"content sum supported for 2 <= k <= 8, got {k}")
    if len(tau) != k - 1:
        raise KOutOfRange(f"tau must have order {k - 1}")
    return _content_table(k)[tuple(tau)]


def admissible(n: int, k: int) -> AdmissibilityReport:
    """Check r! | C(n, r) for all r <= k (Cor 2.6-style divisibility)."""
    if k < 1:
        raise KOutOfRange(f"k must be >= 1, got {k}")
    residue = n % 36 if k >= 3 else (n % 4 if k == 2 else None)
    for r in range(1, k + 1):
        if binomial(n, r) % factorial(r):
            return AdmissibilityReport(n, k, False, failing_r=r, residue_class=residue)
    return AdmissibilityReport(n, k, True, residue_class=residue)


def max_k_bound(n: int) -> int:
    """Largest k with r! | C(n, r) for all r <= k."""
    if n < 2:
        raise KOutOfRange(f"need n >= 2, got {n}")
    k = 1
    while k < n and binomial(n, k + 1) % factorial(k + 1) == 0:
        k += 1
    return k


def expand_product(sigma: Perm, tau: Perm) -> PatternCombo:
    """Exact coefficients c with #sigma(pi) * #tau(pi) = sum_rho c * #rho(pi).

    c_rho counts ordered pairs (A, B) of index subsets of rho with
    rho(A) iso sigma, rho(B) iso tau, and A u B covering all of rho.  The
    enumeration below walks (positions, values) consistently instead of
    scanning all of S_m.
    """
    a, b = len(sigma), len(tau)
    if a + b > EXPANSION_ORDER_CAP:
        raise OrderCapExceeded(f"|sigma| + |tau| = {a + b} exceeds {EXPANSION_ORDER_CAP}")
    if a == 0 or b == 0:
        raise KOutOfRange("patterns must be non-empty")
    coeffs: dict[Perm, int] = {}
    for m in range(max(a, b), a + b + 1):
        overlap = a + b - m
        universe = range(m)
        for pos_a in itertools.combinations(universe, a):
            comp = tuple(p for p in universe if p not in pos_a)
            for shared_pos in itertools.combinations(pos_a, overlap):
                pos_b = tuple(sorted(comp + shared_pos))
                for val_a in itertools.combinations(universe, a):
                    comp_v = tuple(v for v in universe if v not in val_a)
                    for shared_val in itertools.combinations(val_a, overlap):
                        val_b = tuple(sorted(comp_v + shared_val))
                        values = [-1] * m
                        for i, p in enumerate(pos_a):
                            values[p] = val_a[sigma[i] - 1]
                        ok = True
                        for i, p in enumerate(pos_b):
                            w = val_b[tau[i] - 1]
                            if values[p] == -1:
                                values[p] = w
                            elif values[p] != w:
                                ok = False
                                break
                        if not ok or len(set(values)) != m:
                            continue
                        rho = tuple(v + 1 for v in values)
                        coeffs[rho] = coeffs.get(rho, 0) + 1
    return PatternCombo(terms={r: Fraction(c) for r, c in coeffs.items()})


def verify_no_4_balanced() -> Poly:
    """Substitute the uniform profile into the (#12)^2 expansion.

    Returns (expansion side) - (squared pair count) as an exact polynomial
    in n; it factors as n(n-1)(2n+5)/72, so its only roots are 0, 1, -5/2
    and no integer n >= 4 can carry a 4-balanced permutation.
    """
    combo = expand_product((1, 2), (1, 2))
    lhs = (binom_poly(2) / 2) * (binom_poly(2) / 2)
    return combo.substitute_uniform() - lhs


@dataclass(frozen=True)
class DistanceCoefficients:
    """N^k / N^{k-1} coefficients of the two sides of the #12 * #id_{k-2}
    product under the uniform substitution, with their closed forms."""

    k: int
    leading_direct: Fraction
    leading_expansion: Fraction
    second_direct: Fraction
    second_expansion: Fraction
    closed_leading: Fraction
    closed_second_direct: Fraction
    closed_second_expansion: Fraction

    @property
    def leading_match(self) -> bool:
        return self.leading_direct == self.leading_expansion == self.closed_leading

    @property
    def second_terms_differ(self) -> bool:
        return self.second_direct != self.second_expansion


def verify_distance_coefficients(k: int) -> DistanceCoefficients:
    """Exact N^k and N^{k-1} coefficients for the order-k obstruction."""
    if not 4 <= k <= EXPANSION_ORDER_CAP:
        raise KOutOfRange(f"supported for 4 <= k <= 8, got {k}")
    ident = tuple(range(1, k - 1))
    combo = expand_product((1, 2), ident)
    direct = (binom_poly(2) / 2) * (binom_poly(k - 2) / factorial(k - 2))
    expansion = combo.substitute_uniform()
    f2 = factorial(k - 2) ** 2
    return DistanceCoefficients(
        k=k,
        leading_direct=direct.coeff(k),
        leading_expansion=expansion.coeff(k),
        second_direct=direct.coeff(k - 1),
        second_expansion=expansion.coeff(k - 1),
        closed_leading=Fraction(1, 4 * f2),
        closed_second_direct=Fraction(-(k * k) + 5 * k - 8, 8 * f2),
        closed_second_expansion=Fraction(
            -3 * k**3 + 22 * k**2 - 59 * k + 48, 24 * factorial(k - 1) * factorial(k - 2)
        ),
    )


def check_delta_transfer(pi: Perm, k: int) -> bool:
    """delta_{pi,k-1} <= k^2/(n-k+1) * delta_{pi,k}, exactly."""
    n = len(pi)
    if not 1 < k <= n:
        raise KOutOfRange(f"need 1 < k <= n, got k={k}, n={n}")
    lhs = profile(pi, k - 1).delta()
    rhs = Fraction(k * k, n - k + 1) * profile(pi, k).delta()
    return lhs <= rhs


def is_balanced(pi: Perm, k: int) -> bool:
    if k > len(pi):
        raise Inadmissible(f"k={k} exceeds permutation order {len(pi)}")
    return profile(pi, k).is_balanced()


def delta_scaled(pi: Perm, k: int) -> int:
    return profile(pi, k).delta_scaled()
