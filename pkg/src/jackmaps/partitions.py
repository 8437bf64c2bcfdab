"""Integer partitions as decreasing tuples of positive integers.

Every index in the package is a plain tuple such as ``(3, 2, 2)``; the empty
partition is ``()``.  Multiplicity views are computed on demand.
"""

from collections import Counter
from functools import lru_cache
from itertools import product
from math import comb, factorial, prod
from typing import Iterable

Partition = tuple[int, ...]

EMPTY: Partition = ()


def partition(parts: Iterable[int]) -> Partition:
    """Normalize any iterable of positive integers into a partition."""
    out = tuple(sorted((int(p) for p in parts), reverse=True))
    if out and out[-1] <= 0:
        raise ValueError(f"parts must be positive: {out}")
    return out


def is_partition(obj) -> bool:
    if not isinstance(obj, tuple):
        return False
    if any(not isinstance(p, int) or p < 1 for p in obj):
        return False
    return all(obj[i] >= obj[i + 1] for i in range(len(obj) - 1))


def size(lam: Partition) -> int:
    return sum(lam)


def length(lam: Partition) -> int:
    return len(lam)


def multiplicities(lam: Partition) -> dict[int, int]:
    """Map part -> m_i(lam)."""
    return dict(Counter(lam))


def m1(lam: Partition) -> int:
    """Number of parts equal to 1."""
    return lam.count(1)


@lru_cache(maxsize=None)
def z_factor(lam: Partition) -> int:
    """prod_i m_i! * i**m_i; z of the empty partition is 1."""
    return prod(factorial(m) * i**m for i, m in Counter(lam).items())


def dominance_leq(mu: Partition, lam: Partition) -> bool:
    """True iff mu <= lam in dominance order (sizes must agree)."""
    if sum(mu) != sum(lam):
        return False
    s_mu = s_lam = 0
    for i in range(max(len(mu), len(lam))):
        s_mu += mu[i] if i < len(mu) else 0
        s_lam += lam[i] if i < len(lam) else 0
        if s_mu > s_lam:
            return False
    return True


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple[Partition, ...]:
    """All partitions of n in reverse lexicographic order, ``(n,)`` first."""
    if n < 0:
        raise ValueError("n must be nonnegative")

    def rec(rest, cap):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in rec(rest - first, first):
                yield (first,) + tail

    return tuple(rec(n, n))


def partitions_upto(n: int) -> list[Partition]:
    """All partitions of size <= n, graded, each grade in reverse lex order."""
    return [lam for k in range(n + 1) for lam in partitions_of(k)]


def strip_ones(pi: Partition) -> Partition:
    return tuple(p for p in pi if p != 1)


def pad_ones(pi: Partition, k: int) -> Partition:
    if k < 0:
        raise ValueError("cannot pad a negative number of ones")
    return pi + (1,) * k


def union(xi: Partition, pi: Partition) -> Partition:
    return tuple(sorted(xi + pi, reverse=True))


def remove_part(lam: Partition, part: int) -> Partition:
    """Delete one occurrence of ``part``; raises ValueError if absent."""
    i = lam.index(part)
    return lam[:i] + lam[i + 1:]


def add_part(lam: Partition, part: int) -> Partition:
    return union(lam, (part,))


def split_multiplicity(lam: Partition, xi: Partition) -> int:
    """Number of position choices realizing lam = xi + (lam minus xi).

    Equals prod_i binom(m_i(lam), m_i(xi)), or 0 when xi is not a
    sub-multiset of lam.
    """
    m_lam = Counter(lam)
    out = 1
    for part, k in Counter(xi).items():
        if k > m_lam.get(part, 0):
            return 0
        out *= comb(m_lam[part], k)
    return out


def sub_partitions(lam: Partition):
    """Yield ``(xi, rest, multiplicity)`` for every sub-multiset xi of lam."""
    items = sorted(Counter(lam).items(), reverse=True)
    for ks in product(*(range(m + 1) for _, m in items)):
        xi = tuple(p for (p, _), k in zip(items, ks) for _ in range(k))
        rest = tuple(p for (p, m), k in zip(items, ks) for _ in range(m - k))
        yield xi, rest, prod(comb(m, k) for (_, m), k in zip(items, ks))


def cycle_class_size(lam: Partition) -> int:
    """Number of permutations of |lam| with cycle type lam."""
    return factorial(sum(lam)) // z_factor(lam)


def to_json(lam: Partition) -> list[int]:
    return list(lam)


def from_json(obj) -> Partition:
    return partition(obj)


def fmt(lam: Partition) -> str:
    return "[" + ",".join(map(str, lam)) + "]"
