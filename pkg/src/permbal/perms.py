"""Permutations in one-line notation and the dihedral action on their plots.

A permutation of order n is a tuple of the integers 1..n; the same shape
doubles as a pattern of order k.  Everything here treats a permutation as
the planar point set {(i, pi(i))} inside the square [1,n]^2, which is what
the eight-element dihedral group D4 acts on.  Note that reflection about
the main diagonal is inversion, so the group generated by "D4 and inverse"
is D4 itself.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial
from typing import Iterable, Iterator, Sequence

from .errors import BadIndexSet, NotABijection

Perm = tuple[int, ...]

# D4 element names, in a fixed order used throughout (kernels rely on it).
D4_ELEMENTS = (
    "identity",
    "r",            # 90-degree rotation (x,y) -> (y, n+1-x)
    "r2",           # 180-degree rotation
    "r3",
    "reverse",      # reflect about the vertical axis
    "complement",   # reflect about the horizontal axis
    "inverse",      # reflect about the main diagonal
    "antidiagonal",
)


def from_one_line(seq: Iterable[int]) -> Perm:
    """Validate a 1-based one-line sequence and return it as a Perm.

    >>> from_one_line([2, 4, 1, 3])
    (2, 4, 1, 3)
    """
    values = tuple(int(v) for v in seq)
    n = len(values)
    seen = [False] * n
    for v in values:
        if not 1 <= v <= n or seen[v - 1]:
            raise NotABijection(f"not a bijection on 1..{n}: {values}")
        seen[v - 1] = True
    return values


def parse_one_line(text: str) -> Perm:
    """Parse comma- or whitespace-separated 1-based values."""
    parts = text.replace(",", " ").split()
    if not parts:
        raise NotABijection("empty permutation text")
    try:
        return from_one_line(int(p) for p in parts)
    except ValueError as exc:
        raise NotABijection(f"non-integer entry in {text!r}") from exc


def format_one_line(pi: Perm) -> str:
    return ",".join(str(v) for v in pi)


def pattern_key(tau: Perm) -> str:
    """JSON key for a pattern: digit string for k <= 9, comma form beyond."""
    if len(tau) <= 9:
        return "".join(str(v) for v in tau)
    return format_one_line(tau)


def parse_pattern_key(key: str) -> Perm:
    if "," in key or " " in key:
        return parse_one_line(key)
    return from_one_line(int(c) for c in key)


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def descending(n: int) -> Perm:
    return tuple(range(n, 0, -1))


def inverse(pi: Perm) -> Perm:
    inv = [0] * len(pi)
    for i, v in enumerate(pi):
        inv[v - 1] = i + 1
    return tuple(inv)


def all_perms(k: int) -> Iterator[Perm]:
    """All of S_k in lexicographic order (matches lehmer_rank order)."""
    return itertools.permutations(range(1, k + 1))


def lehmer_rank(tau: Perm) -> int:
    """Lexicographic rank of tau within S_k, 0-based."""
    k = len(tau)
    rank = 0
    for i, v in enumerate(tau):
        smaller_later = sum(1 for w in tau[i + 1 :] if w < v)
        rank += smaller_later * factorial(k - 1 - i)
    return rank


def pattern_of(values: Sequence) -> Perm:
    """Rank-normalize any sequence of distinct comparable values.

    >>> pattern_of((7, 6, 1))
    (3, 2, 1)
    """
    order = sorted(range(len(values)), key=values.__getitem__)
    ranks = [0] * len(values)
    for r, idx in enumerate(order):
        ranks[idx] = r + 1
    return tuple(ranks)


def occurs(pi: Perm, index_set: Iterable[int], tau: Perm) -> bool:
    """Does pi induced on the 1-based index set realize the pattern tau?"""
    positions = sorted(set(index_set))
    n = len(pi)
    if len(positions) != len(tau):
        raise BadIndexSet(f"|S|={len(positions)} but pattern order is {len(tau)}")
    if positions and not (1 <= positions[0] and positions[-1] <= n):
        raise BadIndexSet(f"index set {positions} not inside 1..{n}")
    return pattern_of([pi[s - 1] for s in positions]) == tau


def d4_act(g: str, pi: Perm) -> Perm:
    """Apply a D4 element (by name, see D4_ELEMENTS) to the plot of pi."""
    n = len(pi)
    if g == "identity":
        return tuple(pi)
    if g == "r":
        out = [0] * n
        for i, v in enumerate(pi):
            out[v - 1] = n - i
        return tuple(out)
    if g == "r2":
        return tuple(n + 1 - pi[n - 1 - i] for i in range(n))
    if g == "r3":
        out = [0] * n
        for i, v in enumerate(pi):
            out[n - v] = i + 1
        return tuple(out)
    if g == "reverse":
        return tuple(reversed(pi))
    if g == "complement":
        return tuple(n + 1 - v for v in pi)
    if g == "inverse":
        return inverse(pi)
    if g == "antidiagonal":
        out = [0] * n
        for i, v in enumerate(pi):
            out[n - v] = n - i
        return tuple(out)
    raise ValueError(f"unknown D4 element {g!r}")


def d4_orbit(pi: Perm) -> set[Perm]:
    return {d4_act(g, pi) for g in D4_ELEMENTS}


def symmetry_orbit(pi: Perm) -> set[Perm]:
    """Orbit under the group generated by D4 and inversion (= D4)."""
    return d4_orbit(pi)


def is_canonical(pi: Perm) -> bool:
    """Is pi the lexicographic minimum of its D4 orbit?"""
    return all(pi <= d4_act(g, pi) for g in D4_ELEMENTS)


def rotation_orbit(p: tuple[int, int], n: int) -> set[tuple[int, int]]:
    """Orbit of a grid point under the 90-degree rotation of [1,n]^2.

    O(x,y) = {(x,y), (y, n-x+1), (n-x+1, n-y+1), (n-y+1, x)}
    """
    x, y = p
    return {(x, y), (y, n - x + 1), (n - x + 1, n - y + 1), (n - y + 1, x)}


def points_of(pi: Perm) -> set[tuple[int, int]]:
    return {(i + 1, v) for i, v in enumerate(pi)}


def is_rotation_invariant(pi: Perm) -> bool:
    return d4_act("r", pi) == pi


def random_perm(n: int, rng) -> Perm:
    """Unbiased shuffle through a numpy Generator (Fisher-Yates inside)."""
    return tuple(int(v) + 1 for v in rng.permutation(n))


def binomial(n: int, k: int) -> int:
    """C(n, k) with C(n, k) = 0 for k > n >= 0; exact integer."""
    if k < 0 or k > n:
        return 0
    return factorial(n) // (factorial(k) * factorial(n - k))


def uniform_count(n: int, k: int) -> Fraction:
    """The balanced target C(n,k)/k! as an exact rational."""
    return Fraction(binomial(n, k), factorial(k))
