"""k-profiles: exact pattern occurrence counts and the distance delta.

Counts are Python ints (arbitrary precision).  The fast kernels work in
int64 and are only used when k! * C(n, k) is comfortably below 2**63;
otherwise the naive arbitrary-precision path takes over.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

import numpy as np

from . import _kernels
from .errors import KOutOfRange, NotABijection
from .perms import Perm, all_perms, binomial, pattern_of, uniform_count

_INT64_SAFE = 2**62


@dataclass(frozen=True)
class Profile:
    """Exact k-profile of an order-n permutation.

    `counts` stores only the nonzero entries; every tau in S_k is an entry
    conceptually and reads as 0 when absent.
    """

    n: int
    k: int
    counts: dict[Perm, int] = field(default_factory=dict)

    def __post_init__(self):
        total = sum(self.counts.values())
        expected = binomial(self.n, self.k)
        if total != expected:
            raise NotABijection(
                f"profile sums to {total}, expected C({self.n},{self.k}) = {expected}"
            )
        if any(c < 0 for c in self.counts.values()):
            raise NotABijection("negative count in profile")

    def count(self, tau: Perm) -> int:
        return self.counts.get(tuple(tau), 0)

    def items_nonzero(self):
        return self.counts.items()

    def dense(self) -> list[tuple[Perm, int]]:
        """All k! entries in lexicographic pattern order."""
        return [(tau, self.count(tau)) for tau in all_perms(self.k)]

    def delta_scaled(self) -> int:
        """max_tau |k! * count(tau) - C(n, k)|; exact integer."""
        target = binomial(self.n, self.k)
        fact = factorial(self.k)
        worst = abs(0 * fact - target)  # patterns with zero count
        if len(self.counts) == factorial(self.k):
            worst = 0
        for c in self.counts.values():
            worst = max(worst, abs(fact * c - target))
        return worst

    def delta(self) -> Fraction:
        """The paper-normalized distance delta = delta_scaled / k!."""
        return Fraction(self.delta_scaled(), factorial(self.k))

    def is_balanced(self) -> bool:
        return self.delta_scaled() == 0 and binomial(self.n, self.k) % factorial(self.k) == 0


def profile_naive(pi: Perm, k: int) -> Profile:
    """Oracle: enumerate all C(n, k) index subsets."""
    counts: dict[Perm, int] = {}
    for combo in itertools.combinations(pi, k):
        tau = pattern_of(combo)
        counts[tau] = counts.get(tau, 0) + 1
    return Profile(len(pi), k, counts)


def _counts_from_array(arr: np.ndarray, k: int, n: int) -> dict[Perm, int]:
    out: dict[Perm, int] = {}
    for tau, c in zip(all_perms(k), arr):
        if c:
            out[tau] = int(c)
    return out


def profile_fast(pi: Perm, k: int) -> Profile:
    """O(n log n) / O(n^2) / O(n^3) counting for k = 2 / 3 / 4."""
    if k not in (1, 2, 3, 4):
        raise KOutOfRange(f"fast profile implemented for k <= 4, got {k}")
    n = len(pi)
    if k == 1:
        return Profile(n, 1, {(1,): n} if n else {})
    if factorial(k) * binomial(n, k) >= _INT64_SAFE:
        return profile_naive(pi, k)  # promote to arbitrary precision
    v = np.asarray(pi, dtype=np.int64)
    if k == 2:
        arr = _kernels.profile2_counts(v)
    elif k == 3:
        arr = _kernels.profile3_counts(v)
    else:
        arr = _kernels.profile4_counts(v)
    return Profile(n, k, _counts_from_array(arr, k, n))


def profile(pi: Perm, k: int, method: str = "auto") -> Profile:
    """The k-profile of pi.

    For k > n the profile is the all-zero vector (sum C(n,k) = 0), which
    the Erdos-Szekeres interpolation nodes rely on.
    """
    if k < 1:
        raise KOutOfRange(f"profile order must be >= 1, got {k}")
    n = len(pi)
    if k > n:
        return Profile(n, k, {})
    if method == "naive":
        return profile_naive(pi, k)
    if method == "fast":
        return profile_fast(pi, k)
    if method == "auto":
        return profile_fast(pi, k) if k <= 4 else profile_naive(pi, k)
    raise ValueError(f"unknown method {method!r}")


def profile_family(pi: Perm, k: int, method: str = "auto") -> dict[int, Profile]:
    """Profiles of all orders 1..min(k, n), computed directly."""
    return {m: profile(pi, m, method) for m in range(1, min(k, len(pi)) + 1)}


def delta_scaled(pi: Perm, k: int, method: str = "auto") -> int:
    return profile(pi, k, method).delta_scaled()


def delta(pi: Perm, k: int, method: str = "auto") -> Fraction:
    return profile(pi, k, method).delta()


def is_balanced(pi: Perm, k: int, method: str = "auto") -> bool:
    """Every order-k pattern occurs exactly C(n,k)/k! times."""
    return profile(pi, k, method).is_balanced()


def uniform_target(n: int, k: int) -> Fraction:
    return uniform_count(n, k)
