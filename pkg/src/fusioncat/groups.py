"""Small permutation groups: subgroup classes and gapped-boundary counts.

Lagrangian algebras of ``Z(Rep(G)) = Z(Vec(G))`` correspond to pairs
``(H, psi)`` with ``H <= G`` up to conjugacy and ``psi in H^2(H, U(1))``.
The count is the sum of Schur-multiplier orders over conjugacy classes of
subgroups (for the groups handled here the normalizer actions on ``H^2``
are trivial).
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Iterable, Sequence

from .errors import GroupTooLarge, UnknownMultiplier, UnknownName

__all__ = [
    "PermutationGroup",
    "SubgroupClass",
    "BoundaryCount",
    "named_group",
    "abelian_invariants",
    "schur_multiplier_order",
    "boundary_count_group",
    "MAX_GROUP_ORDER",
]

MAX_GROUP_ORDER = 64
Perm = tuple[int, ...]


def _compose(p: Perm, q: Perm) -> Perm:
    """``p o q`` (apply ``q`` first)."""
    return tuple(p[i] for i in q)


def _cycles_to_perm(degree: int, cycles: Iterable[Sequence[int]]) -> Perm:
    image = list(range(degree))
    for cycle in cycles:
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            image[a] = b
    return tuple(image)


class PermutationGroup:
    """Finite group generated by permutations of ``0..degree-1``."""

    def __init__(self, generators: Iterable[Sequence[int]], name: str = "G"):
        gens = [tuple(int(i) for i in g) for g in generators]
        if not gens:
            gens = [(0,)]
        degree = len(gens[0])
        if any(len(g) != degree or sorted(g) != list(range(degree)) for g in gens):
            raise ValueError("generators must be permutations of a common degree")
        self.generators = gens
        self.degree = degree
        self.name = name
        identity = tuple(range(degree))
        elements = [identity]
        seen = {identity}
        i = 0
        while i < len(elements):
            for g in gens:
                h = _compose(g, elements[i])
                if h not in seen:
                    if len(elements) >= MAX_GROUP_ORDER:
                        raise GroupTooLarge(f"{name} has more than {MAX_GROUP_ORDER} elements")
                    seen.add(h)
                    elements.append(h)
            i += 1
        self.elements = sorted(elements)
        self.index = {g: k for k, g in enumerate(self.elements)}
        n = len(self.elements)
        self.mul = [[self.index[_compose(a, b)] for b in self.elements] for a in self.elements]
        self.identity = self.index[identity]
        self.inverse = [row.index(self.identity) for row in self.mul]

    @property
    def order(self) -> int:
        return len(self.elements)

    def closure(self, gens: Iterable[int]) -> frozenset[int]:
        gens = list(gens)
        elems = [self.identity]
        seen = {self.identity}
        i = 0
        while i < len(elems):
            for g in gens:
                h = self.mul[g][elems[i]]
                if h not in seen:
                    seen.add(h)
                    elems.append(h)
            i += 1
        return frozenset(elems)

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.mul[g][x]
            k += 1
        return k

    @cached_property
    def subgroups(self) -> list[frozenset[int]]:
        """All subgroups, by breadth-first extension of the trivial subgroup."""
        start = frozenset({self.identity})
        gens = {start: ()}
        frontier = [start]
        while frontier:
            nxt = []
            for S in frontier:
                for g in range(self.order):
                    if g in S:
                        continue
                    T = self.closure(gens[S] + (g,))
                    if T not in gens:
                        gens[T] = gens[S] + (g,)
                        nxt.append(T)
            frontier = nxt
        return sorted(gens, key=lambda S: (len(S), sorted(S)))

    def conjugate(self, S: frozenset[int], g: int) -> frozenset[int]:
        gi = self.inverse[g]
        return frozenset(self.mul[self.mul[g][s]][gi] for s in S)

    def subgroup_classes(self) -> list[list[frozenset[int]]]:
        classes = {}
        for S in self.subgroups:
            key = min(tuple(sorted(self.conjugate(S, g))) for g in range(self.order))
            classes.setdefault(key, []).append(S)
        return sorted(classes.values(), key=lambda c: (len(c[0]), min(tuple(sorted(S)) for S in c)))

    def is_abelian(self, S: Iterable[int]) -> bool:
        S = list(S)
        return all(self.mul[a][b] == self.mul[b][a] for a in S for b in S)

    def order_statistics(self, S: Iterable[int]) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(Counter(self.element_order(g) for g in S).items()))


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def abelian_invariants(order_stats: dict[int, int] | Sequence[tuple[int, int]], order: int) -> tuple[int, ...]:
    """Primary cyclic factors ``p^e`` of an abelian group from its element-order counts.

    For each prime ``p`` the number of elements killed by ``p^k`` is
    ``p^(sum_i min(k, e_i))``, which determines the exponents ``e_i``.
    """
    stats = dict(order_stats)
    factors = []
    for p in _prime_factors(order):
        logs = [0]
        k = 1
        while True:
            count = sum(c for o, c in stats.items() if (p ** k) % o == 0)
            logs.append(round(math.log(count, p)))
            if logs[-1] == logs[-2]:
                break
            k += 1
        # number of exponents e_i >= k is logs[k] - logs[k-1]
        at_least = [logs[k] - logs[k - 1] for k in range(1, len(logs))]
        for k, n_k in enumerate(at_least, start=1):
            n_next = at_least[k] if k < len(at_least) else 0
            factors.extend([p ** k] * (n_k - n_next))
    return tuple(sorted(factors))


def _invariant_factor_name(primary: Sequence[int]) -> str:
    if not primary:
        return "1"
    by_prime: dict[int, list[int]] = {}
    for q in primary:
        by_prime.setdefault(_prime_factors(q)[0], []).append(q)
    for v in by_prime.values():
        v.sort(reverse=True)
    width = max(len(v) for v in by_prime.values())
    invariants = [math.prod(v[i] for v in by_prime.values() if i < len(v)) for i in range(width)]
    return "x".join(f"Z{n}" for n in sorted(invariants))


# order -> element-order statistics -> (name, |H^2(H, U(1))|)
_NONABELIAN = {
    (6, ((1, 1), (2, 3), (3, 2))): ("S3", 1),
    (8, ((1, 1), (2, 5), (4, 2))): ("D4", 2),
    (8, ((1, 1), (2, 1), (4, 6))): ("Q8", 1),
    (10, ((1, 1), (2, 5), (5, 4))): ("D5", 1),
    (12, ((1, 1), (2, 3), (3, 8))): ("A4", 2),
    (12, ((1, 1), (2, 7), (3, 2), (6, 2))): ("D6", 2),
    (12, ((1, 1), (2, 1), (3, 2), (4, 6), (6, 2))): ("Dic3", 1),
    (14, ((1, 1), (2, 7), (7, 6))): ("D7", 1),
    (24, ((1, 1), (2, 9), (3, 8), (4, 6))): ("S4", 2),
}


def schur_multiplier_order(G: PermutationGroup, S: Iterable[int]) -> tuple[str, int]:
    """Isomorphism-type name and ``|H^2(H, U(1))|`` for the subgroup ``S``.

    Abelian: ``prod_{i<j} gcd(m_i, m_j)`` over a cyclic decomposition.
    Non-abelian: table lookup; misses raise :class:`UnknownMultiplier`.
    """
    S = list(S)
    stats = G.order_statistics(S)
    if G.is_abelian(S):
        primary = abelian_invariants(stats, len(S))
        mult = math.prod(math.gcd(a, b) for i, a in enumerate(primary) for b in primary[i + 1:])
        return _invariant_factor_name(primary), mult
    try:
        return _NONABELIAN[(len(S), stats)]
    except KeyError:
        raise UnknownMultiplier(
            f"no Schur multiplier on record for a non-abelian group of order {len(S)} "
            f"with element orders {dict(stats)}"
        ) from None


def _quaternion_generators() -> list[Perm]:
    # left regular action of Q8 on {1, i, j, k, -1, -i, -j, -k} (indices 0..7)
    units = ["1", "i", "j", "k"]
    table = {
        ("1", "1"): (1, "1"), ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    }
    for u in units:
        table[("1", u)] = (1, u)
        table[(u, "1")] = (1, u)

    def idx(sign, u):
        return units.index(u) + (0 if sign > 0 else 4)

    gens = []
    for g in ("i", "j"):
        image = [0] * 8
        for sign in (1, -1):
            for u in units:
                s2, v = table[(g, u)]
                image[idx(sign, u)] = idx(sign * s2, v)
        gens.append(tuple(image))
    return gens


def named_group(name: str) -> PermutationGroup:
    """``s3``, ``s4``, ``a4``, ``q8``, ``dN`` (order 2N), ``zN`` / ``Z/N``."""
    key = name.strip().lower().replace(" ", "")
    if key in ("s3", "s4"):
        n = int(key[1])
        return PermutationGroup([_cycles_to_perm(n, [list(range(n))]), _cycles_to_perm(n, [[0, 1]])], key.upper())
    if key == "a4":
        return PermutationGroup([_cycles_to_perm(4, [[0, 1, 2]]), _cycles_to_perm(4, [[0, 1], [2, 3]])], "A4")
    if key == "q8":
        return PermutationGroup(_quaternion_generators(), "Q8")
    match = re.fullmatch(r"d(\d+)", key)
    if match:
        n = int(match.group(1))
        if n < 3:
            raise UnknownName("dihedral groups need N >= 3")
        reflection = tuple((-i) % n for i in range(n))
        return PermutationGroup([_cycles_to_perm(n, [list(range(n))]), reflection], f"D{n}")
    match = re.fullmatch(r"z/?(\d+)", key)
    if match:
        n = int(match.group(1))
        if n > MAX_GROUP_ORDER:
            raise GroupTooLarge(f"|Z/{n}| exceeds {MAX_GROUP_ORDER}")
        return PermutationGroup([_cycles_to_perm(n, [list(range(n))])] if n > 1 else [], f"Z/{n}")
    raise UnknownName(f"unknown group {name!r}; known: s3, s4, a4, q8, dN, zN")


@dataclass(frozen=True)
class SubgroupClass:
    name: str
    order: int
    class_size: int
    multiplier: int


@dataclass(frozen=True)
class BoundaryCount:
    group: str
    classes: tuple[SubgroupClass, ...]

    @property
    def total(self) -> int:
        return sum(c.multiplier for c in self.classes)


def boundary_count_group(G: PermutationGroup | str | Sequence[Sequence[int]]) -> BoundaryCount:
    """Conjugacy classes of subgroups with Schur-multiplier orders, and their total.

    The total counts Lagrangian algebras in ``Z(Vec(G))``.
    """
    if isinstance(G, str):
        G = named_group(G)
    elif not isinstance(G, PermutationGroup):
        G = PermutationGroup(G)
    classes = []
    for cls in G.subgroup_classes():
        name, mult = schur_multiplier_order(G, cls[0])
        classes.append(SubgroupClass(name, len(cls[0]), len(cls), mult))
    return BoundaryCount(G.name, tuple(classes))
