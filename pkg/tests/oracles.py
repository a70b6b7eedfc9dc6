"""Slow reference implementations used only to cross-check the library."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from math import gcd


def det_cofactor(rows: list[list[int]]) -> int:
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * det_cofactor(minor)
    return total


def rational_rank(rows: list[list[int]]) -> int:
    a = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(len(a)):
            if i != rank and a[i][c] != 0:
                f = a[i][c] / a[rank][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def determinantal_divisors(rows: list[list[int]]) -> list[int]:
    """gcd of all i x i minors, for i = 1..rank."""
    m, n = len(rows), len(rows[0]) if rows else 0
    out = []
    for i in range(1, min(m, n) + 1):
        g = 0
        for rs in combinations(range(m), i):
            for cs in combinations(range(n), i):
                g = gcd(g, det_cofactor([[rows[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        out.append(g)
    return out


def snf_diagonal_oracle(rows: list[list[int]]) -> list[int]:
    dd = determinantal_divisors(rows)
    prev = 1
    out = []
    for g in dd:
        out.append(g // prev)
        prev = g
    return out


def finite_group_elements(factors: tuple[int, ...]):
    return list(product(*(range(d) for d in factors)))


def _add(x, y, factors):
    return tuple((a + b) % d for a, b, d in zip(x, y, factors))


def subgroups(factors: tuple[int, ...]) -> list[frozenset]:
    """All subgroups of Z_{d1} + ... + Z_{dm}."""
    elems = finite_group_elements(factors)
    zero = tuple(0 for _ in factors)

    def span(gens):
        s = {zero}
        frontier = [zero]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = _add(x, g, factors)
                if y not in s:
                    s.add(y)
                    frontier.append(y)
        return frozenset(s)

    # every subgroup is reached by adjoining one element at a time
    found = {span([])}
    layer = set(found)
    while layer:
        nxt = set()
        for h in layer:
            for g in elems:
                if g not in h:
                    k = span(list(h) + [g])
                    if k not in found:
                        found.add(k)
                        nxt.add(k)
        layer = nxt
    return list(found)


def quotient_exponent_profile(factors, h: frozenset) -> tuple[int, ...]:
    """Sorted orders of the cosets in G/H: determines G/H up to isomorphism for small groups."""
    elems = finite_group_elements(factors)
    orders = []
    seen = set()
    for x in elems:
        coset = frozenset(_add(x, y, factors) for y in h)
        if coset in seen:
            continue
        seen.add(coset)
        n, y = 1, x
        while y not in h:
            y = _add(y, x, factors)
            n += 1
        orders.append(n)
    return tuple(sorted(orders))


def element_order_profile(factors) -> tuple[int, ...]:
    elems = finite_group_elements(factors)
    out = []
    zero = tuple(0 for _ in factors)
    for x in elems:
        n, y = 1, x
        while y != zero:
            y = _add(y, x, factors)
            n += 1
        out.append(n)
    return tuple(sorted(out))


def is_quotient_bruteforce(q_factors: tuple[int, ...], a_factors: tuple[int, ...]) -> bool:
    """Finite abelian groups are determined by their multiset of element orders."""
    target = element_order_profile(q_factors)
    size = 1
    for d in q_factors:
        size *= d
    for h in subgroups(a_factors):
        if len(finite_group_elements(a_factors)) // len(h) != size:
            continue
        if quotient_exponent_profile(a_factors, h) == target:
            return True
    return False


def arborescences_by_matrix_free_count(mult: list[list[int]], root: int) -> int:
    """Count parent functions: each non-root vertex picks one incoming edge, no cycles."""
    k = len(mult)
    others = [v for v in range(k) if v != root]
    choices = []
    for v in others:
        opts = []
        for u in range(k):
            if u != v:
                opts.extend([u] * mult[v][u])
        choices.append(opts)
    count = 0
    for parents in product(*choices):
        par = dict(zip(others, parents))
        ok = True
        for v in others:
            seen = set()
            x = v
            while x != root:
                if x in seen:
                    ok = False
                    break
                seen.add(x)
                x = par[x]
            if not ok:
                break
        if ok:
            count += 1
    return count
