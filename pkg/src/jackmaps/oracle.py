"""Permutation-factorization counts of hypermaps at alpha = 1.

Convention: (+) faces are the cycles of s_plus, (-) faces the cycles of
s_minus, vertices the cycles of the product s_plus s_minus.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb, factorial

from .partitions import Partition, z_factor

Perm = tuple[int, ...]


def cycle_type(p: Perm) -> Partition:
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if not seen[i]:
            k, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                k += 1
            out.append(k)
    return tuple(sorted(out, reverse=True))


def compose(a: Perm, b: Perm) -> Perm:
    """(a b)(i) = a(b(i))."""
    return tuple(a[b[i]] for i in range(len(a)))


def fixed_points(p: Perm) -> frozenset[int]:
    return frozenset(i for i, x in enumerate(p) if x == i)


@lru_cache(maxsize=None)
def _by_type(n: int) -> dict[Partition, tuple[Perm, ...]]:
    out: dict[Partition, list[Perm]] = {}
    for p in permutations(range(n)):
        out.setdefault(cycle_type(p), []).append(p)
    return {k: tuple(v) for k, v in out.items()}


def _check_sizes(pi, mu, nu):
    n = sum(pi)
    if sum(mu) != n or sum(nu) != n:
        raise ValueError(f"sizes differ: {pi}, {mu}, {nu}")
    return n


@lru_cache(maxsize=None)
def count_factorizations(pi: Partition, mu: Partition, nu: Partition) -> int:
    """#{(s+, s-): type(s+) = mu, type(s-) = nu, type(s+ s-) = pi}."""
    n = _check_sizes(pi, mu, nu)
    classes = _by_type(n)
    count = 0
    for sp in classes.get(tuple(mu), ()):
        for sm in classes.get(tuple(nu), ()):
            if cycle_type(compose(sp, sm)) == pi:
                count += 1
    return count


def hypermap_count_alpha1(pi: Partition, mu: Partition, nu: Partition) -> Fraction:
    n = _check_sizes(pi, mu, nu)
    return Fraction(z_factor(pi) * count_factorizations(pi, mu, nu), factorial(n))


def _marked_ways(fp: frozenset, fm: frozenset, sp: int, sm: int) -> int:
    """Disjoint S+ in fp, S- in fm with |S+| = sp, |S-| = sm."""
    c = len(fp & fm)
    # j = |S+ inside the common fixed points|
    return sum(comb(c, j) * comb(len(fp) - c, sp - j) * comb(len(fm) - j, sm)
               for j in range(min(c, sp) + 1))


def marked_ways_explicit(fp: frozenset, fm: frozenset, sp: int, sm: int) -> int:
    """Reference enumeration of the marked sets (small n only)."""
    from itertools import combinations
    return sum(1 for a in combinations(sorted(fp), sp) for b in combinations(sorted(fm), sm)
               if not set(a) & set(b))


@lru_cache(maxsize=None)
def _marked_raw(pi: Partition, mu: Partition, nu: Partition) -> int:
    n = sum(pi)
    if n < max(sum(mu), sum(nu)):
        raise ValueError(f"|pi| must dominate |mu| and |nu|: {pi}, {mu}, {nu}")
    sp, sm = n - sum(mu), n - sum(nu)
    classes = _by_type(n)
    total = 0
    for a in classes.get(tuple(mu) + (1,) * sp, ()):
        fa = fixed_points(a)
        for b in classes.get(tuple(nu) + (1,) * sm, ()):
            if cycle_type(compose(a, b)) == pi:
                total += _marked_ways(fa, fixed_points(b), sp, sm)
    return total


def marked_hypermap_count(pi: Partition, mu: Partition, nu: Partition) -> Fraction:
    """Vertex-labelled count of hypermaps with marked degree-one faces.

    Equals g^pi_{mu,nu}(1) when the theory is right; returned as a Fraction
    so that a failure of integrality is visible instead of rounded away.
    """
    return Fraction(z_factor(pi) * _marked_raw(tuple(pi), tuple(mu), tuple(nu)),
                    factorial(sum(pi)))
