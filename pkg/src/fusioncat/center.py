"""Drinfeld centers of pointed categories as metric groups.

``Z(Vec(G))`` for finite abelian ``G`` is modelled by the metric group
``(G^ x G, q)`` with ``q(a, g) = a(g)``.  The dual group ``G^`` is identified
with ``G`` factor by factor through ``chi_c(x) = exp(2 pi i c x / m)``, so an
element is a residue tuple ``(a_1..a_t, g_1..g_t)`` and

    q(a, g) = sum_i a_i g_i / m_i   (mod 1).

All arithmetic here is exact: quadratic forms take values in ``Q/Z`` stored
as integer numerators over the group exponent.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from typing import Iterable, Sequence

from .errors import (
    GroupTooLarge,
    MetricGroupMismatch,
    NonCoprime,
    NonPrimeOrder,
    NotAntisymmetric,
    NotBicharacter,
    NotQPreserving,
)
from .groups import BoundaryCount, boundary_count_group

__all__ = [
    "AbelianGroup",
    "MetricGroup",
    "Subgroup",
    "Lagrangian",
    "Bicharacter",
    "CenterAutomorphism",
    "AnomalyVerdict",
    "parse_group",
    "center_of_pointed",
    "subgroups",
    "find_basis",
    "antisymmetric_bicharacters",
    "enumerate_lagrangians",
    "lagrangian_from_pair",
    "lagrangians_from_pairs",
    "ty_duality_auto",
    "anomaly_verdict",
    "orbit_fixed_point_forced",
    "BoundaryCount",
    "boundary_count_group",
    "ENUMERATION_BOUND",
]

ENUMERATION_BOUND = 10_000
Element = tuple[int, ...]


@dataclass(frozen=True)
class AbelianGroup:
    """``Z/m_1 x ... x Z/m_t``; factors equal to 1 are dropped."""

    factors: tuple[int, ...] = ()

    def __post_init__(self):
        factors = tuple(int(m) for m in self.factors)
        if any(m < 1 for m in factors):
            raise ValueError(f"cyclic factors must be positive, got {factors}")
        object.__setattr__(self, "factors", tuple(m for m in factors if m > 1))

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @property
    def exponent(self) -> int:
        return reduce(math.lcm, self.factors, 1)

    @property
    def zero(self) -> Element:
        return (0,) * len(self.factors)

    @cached_property
    def elements(self) -> tuple[Element, ...]:
        return tuple(itertools.product(*(range(m) for m in self.factors)))

    def add(self, x: Element, y: Element) -> Element:
        return tuple((a + b) % m for a, b, m in zip(x, y, self.factors))

    def neg(self, x: Element) -> Element:
        return tuple((-a) % m for a, m in zip(x, self.factors))

    def scale(self, k: int, x: Element) -> Element:
        return tuple((k * a) % m for a, m in zip(x, self.factors))

    def element_order(self, x: Element) -> int:
        return reduce(math.lcm, (m // math.gcd(a, m) for a, m in zip(x, self.factors)), 1)

    def normalize(self, x: Iterable[int]) -> Element:
        x = tuple(int(a) for a in x)
        if len(x) != len(self.factors):
            raise ValueError(f"element {x} does not have {len(self.factors)} coordinates")
        return tuple(a % m for a, m in zip(x, self.factors))

    def span(self, generators: Iterable[Element]) -> frozenset[Element]:
        """Subgroup generated by ``generators``."""
        elems = {self.zero}
        for g in generators:
            g = self.normalize(g)
            if g in elems:
                continue
            multiples = [self.scale(k, g) for k in range(self.element_order(g))]
            elems = {self.add(s, c) for s in elems for c in multiples}
        return frozenset(elems)

    def __str__(self):
        return " x ".join(f"Z/{m}" for m in self.factors) if self.factors else "trivial"


def parse_group(spec: str) -> AbelianGroup:
    """Parse ``Z/n``, ``Z/a x Z/b`` (also ``Z/2xZ/2``, ``zN``) or ``trivial``."""
    text = spec.strip().lower().replace(" ", "")
    if text in ("trivial", "1", "z/1", ""):
        return AbelianGroup(())
    factors = []
    for part in text.split("x"):
        if part.startswith("z/"):
            part = part[2:]
        elif part.startswith("z"):
            part = part[1:]
        if not part.isdigit():
            raise ValueError(f"cannot parse group {spec!r}; use Z/n or Z/a x Z/b")
        factors.append(int(part))
    return AbelianGroup(tuple(factors))


@dataclass(frozen=True)
class MetricGroup:
    """``(G^ x G, q)`` for a finite abelian ``G`` (the ``base``)."""

    base: AbelianGroup

    @cached_property
    def group(self) -> AbelianGroup:
        return AbelianGroup(self.base.factors * 2)

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def denominator(self) -> int:
        return max(self.group.exponent, 1)

    @property
    def elements(self) -> tuple[Element, ...]:
        return self.group.elements

    def q_num(self, x: Element) -> int:
        """Numerator of ``q(x)`` over :attr:`denominator`."""
        t = len(self.base.factors)
        e = self.denominator
        return sum(x[i] * x[t + i] * (e // m) for i, m in enumerate(self.base.factors)) % e

    def q(self, x: Element) -> Fraction:
        return Fraction(self.q_num(x), self.denominator)

    def b_num(self, x: Element, y: Element) -> int:
        """Numerator of the bilinear form ``b(x, y) = q(x+y) - q(x) - q(y)``."""
        t = len(self.base.factors)
        e = self.denominator
        return (
            sum((x[i] * y[t + i] + y[i] * x[t + i]) * (e // m) for i, m in enumerate(self.base.factors)) % e
        )

    def b(self, x: Element, y: Element) -> Fraction:
        return Fraction(self.b_num(x, y), self.denominator)

    def check(self) -> list[str]:
        """Problems with the metric-group invariants (empty when all hold)."""
        G = self.group
        problems = []
        if self.q(G.zero) != 0:
            problems.append("q(0) != 0")
        for x in G.elements:
            if self.q(G.neg(x)) != self.q(x):
                problems.append(f"q(-x) != q(x) at {x}")
                break
        gens = [tuple(int(i == j) for j in range(len(G.factors))) for i in range(len(G.factors))]
        for x, y, z in itertools.product(gens, repeat=3):
            if self.b_num(G.add(x, y), z) != (self.b_num(x, z) + self.b_num(y, z)) % self.denominator:
                problems.append(f"b not biadditive at {x}, {y}, {z}")
        for x in G.elements:
            if x != G.zero and all(self.b_num(x, g) == 0 for g in gens):
                problems.append(f"b degenerate: {x} is in the radical")
                break
        return problems

    def name(self, x: Element) -> str:
        """Anyon name; toric-code names ``1, e, m, f`` for ``G = Z/2``."""
        if self.base.factors == (2,):
            return {(0, 0): "1", (1, 0): "e", (0, 1): "m", (1, 1): "f"}[tuple(x)]
        return "(" + ",".join(map(str, x)) + ")"


@dataclass(frozen=True)
class Subgroup:
    """A subgroup, stored as its canonically sorted element list."""

    parent: AbelianGroup | MetricGroup
    elements: tuple[Element, ...]
    generators: tuple[Element, ...] = ()

    @classmethod
    def from_elements(cls, parent, elements: Iterable[Element]) -> "Subgroup":
        elems = tuple(sorted(set(elements)))
        group = _arith(parent)
        return cls(parent, elems, _irredundant_generators(group, elems))

    @classmethod
    def generated_by(cls, parent, generators: Iterable[Iterable[int]]) -> "Subgroup":
        group = _arith(parent)
        return cls.from_elements(parent, group.span(group.normalize(g) for g in generators))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return tuple(x) in self._set

    def __iter__(self):
        return iter(self.elements)

    @cached_property
    def _set(self) -> frozenset:
        return frozenset(self.elements)

    def is_closed(self) -> bool:
        group = _arith(self.parent)
        return group.zero in self._set and all(group.add(x, y) in self._set for x in self.elements for y in self.elements)

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent == other.parent and self.elements == other.elements

    def __hash__(self):
        return hash((self.parent, self.elements))


def _arith(parent) -> AbelianGroup:
    return parent.group if isinstance(parent, MetricGroup) else parent


def _irredundant_generators(group: AbelianGroup, elements: Sequence[Element]) -> tuple[Element, ...]:
    # greedy by decreasing element order; yields a minimal list for the groups used here
    target = len(elements)
    gens: list[Element] = []
    span = frozenset({group.zero})
    for x in sorted(elements, key=lambda x: (-group.element_order(x), x)):
        if len(span) == target:
            break
        if x not in span:
            gens.append(x)
            span = group.span(gens)
    return tuple(gens)


@dataclass(frozen=True)
class Lagrangian:
    subgroup: Subgroup

    @property
    def order(self) -> int:
        return self.subgroup.order

    @property
    def metric(self) -> MetricGroup:
        return self.subgroup.parent

    @property
    def elements(self) -> tuple[Element, ...]:
        return self.subgroup.elements

    def __contains__(self, x):
        return x in self.subgroup

    def label(self) -> str:
        return "+".join(self.metric.name(x) for x in self.elements)

    def check(self) -> bool:
        M = self.metric
        return (
            self.subgroup.is_closed()
            and self.order ** 2 == M.order
            and all(M.q_num(x) == 0 for x in self.elements)
        )


def center_of_pointed(G: AbelianGroup | Sequence[int]) -> MetricGroup:
    if not isinstance(G, AbelianGroup):
        G = AbelianGroup(tuple(G))
    return MetricGroup(G)


def subgroups(G: AbelianGroup) -> list[Subgroup]:
    """All subgroups of ``G`` in canonical order (by order, then elements)."""
    if G.order > ENUMERATION_BOUND:
        raise GroupTooLarge(f"|G| = {G.order} exceeds {ENUMERATION_BOUND}")
    start = frozenset({G.zero})
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for S in frontier:
            for x in G.elements:
                if x in S:
                    continue
                multiples = [G.scale(k, x) for k in range(G.element_order(x))]
                T = frozenset(G.add(s, c) for s in S for c in multiples)
                if T not in seen:
                    seen.add(T)
                    nxt.append(T)
        frontier = nxt
    subs = [Subgroup.from_elements(G, S) for S in seen]
    return sorted(subs, key=lambda H: (H.order, H.elements))


def enumerate_lagrangians(M: MetricGroup) -> list[Lagrangian]:
    """All Lagrangian subgroups of ``M``: isotropic (``q|_L = 0``) of order ``sqrt|M|``.

    Breadth-first closure starting from the trivial subgroup; an isotropic
    element ``x`` may extend ``S`` only when ``b(x, s) = 0`` on the generators
    of ``S``, which keeps every visited subgroup isotropic.
    """
    if M.order > ENUMERATION_BOUND:
        raise GroupTooLarge(f"|M| = {M.order} exceeds {ENUMERATION_BOUND}")
    G = M.group
    target = math.isqrt(M.order)
    if target * target != M.order:
        return []
    isotropic = [x for x in G.elements if x != G.zero and M.q_num(x) == 0]
    start = frozenset({G.zero})
    gens: dict[frozenset, tuple[Element, ...]] = {start: ()}
    frontier = [start]
    found = []
    while frontier:
        nxt = []
        for S in frontier:
            if len(S) == target:
                found.append(S)
                continue
            for x in isotropic:
                if x in S or any(M.b_num(x, g) for g in gens[S]):
                    continue
                multiples = [G.scale(k, x) for k in range(G.element_order(x))]
                T = frozenset(G.add(s, c) for s in S for c in multiples)
                if len(T) > target or T in gens:
                    continue
                gens[T] = gens[S] + (x,)
                nxt.append(T)
        frontier = nxt
    out = [Lagrangian(Subgroup.from_elements(M, S)) for S in found]
    return sorted(out, key=lambda L: L.elements)


def find_basis(H: Subgroup, max_rank: int = 3) -> tuple[Element, ...]:
    """Independent generators ``h_1..h_r`` with ``H = <h_1> + ... + <h_r>`` (direct).

    Depth-first search over elements of maximal order, backtracking when a
    choice cannot be completed; raises :class:`GroupTooLarge` above ``max_rank``.
    """
    G = _arith(H.parent)
    elements = [x for x in H.elements if x != G.zero]
    target = H.order

    def extend(chosen, span):
        if len(span) == target:
            return chosen
        if len(chosen) >= max_rank:
            return None
        candidates = [x for x in elements if not (G.span([x]) & span) - {G.zero}]
        if not candidates:
            return None
        top = max(G.element_order(x) for x in candidates)
        for x in candidates:
            if G.element_order(x) != top:
                continue
            multiples = [G.scale(k, x) for k in range(top)]
            new = frozenset(G.add(s, c) for s in span for c in multiples)
            result = extend(chosen + (x,), new)
            if result is not None:
                return result
        return None

    basis = extend((), frozenset({G.zero}))
    if basis is None:
        raise GroupTooLarge(f"subgroup of order {target} needs more than {max_rank} cyclic factors")
    return basis


@dataclass(frozen=True)
class Bicharacter:
    """A map ``H x H -> Q/Z`` given by its value table (fractions in [0, 1))."""

    subgroup: Subgroup
    table: dict = field(hash=False, compare=False)

    def __call__(self, h: Element, k: Element) -> Fraction:
        return self.table[(tuple(h), tuple(k))]

    @classmethod
    def trivial(cls, H: Subgroup) -> "Bicharacter":
        return cls(H, {(h, k): Fraction(0) for h in H for k in H})

    @classmethod
    def from_function(cls, H: Subgroup, f) -> "Bicharacter":
        return cls(H, {(h, k): Fraction(f(h, k)) % 1 for h in H for k in H})

    def validate(self):
        G = _arith(self.subgroup.parent)
        H = self.subgroup.elements
        if set(self.table) != {(h, k) for h in H for k in H}:
            raise NotBicharacter("table does not cover H x H")
        for h, h2, k in itertools.product(H, repeat=3):
            if self(G.add(h, h2), k) != (self(h, k) + self(h2, k)) % 1:
                raise NotBicharacter(f"not additive in the first argument at {h}, {h2}, {k}")
            if self(k, G.add(h, h2)) != (self(k, h) + self(k, h2)) % 1:
                raise NotBicharacter(f"not additive in the second argument at {k}, {h}, {h2}")
        for h in H:
            if self(h, h) != 0:
                raise NotAntisymmetric(f"b(h, h) != 1 at h = {h}")
            for k in H:
                if (self(h, k) + self(k, h)) % 1 != 0:
                    raise NotAntisymmetric(f"b(h, k) b(k, h) != 1 at {h}, {k}")


def antisymmetric_bicharacters(H: Subgroup) -> list[Bicharacter]:
    """Every antisymmetric bicharacter on ``H`` (at most three cyclic factors).

    On a basis with orders ``n_i`` these are ``b(h_i, h_j) = c_ij / gcd(n_i, n_j)``
    for ``i < j``, so there are ``prod_{i<j} gcd(n_i, n_j)`` of them.
    """
    G = _arith(H.parent)
    basis = find_basis(H)
    orders = [G.element_order(h) for h in basis]
    coords = {}
    for xs in itertools.product(*(range(n) for n in orders)):
        el = G.zero
        for x, h in zip(xs, basis):
            el = G.add(el, G.scale(x, h))
        coords[el] = xs
    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    out = []
    for cs in itertools.product(*(range(math.gcd(orders[i], orders[j])) for i, j in pairs)):
        form = {}
        for (i, j), c in zip(pairs, cs):
            v = Fraction(c, math.gcd(orders[i], orders[j]))
            form[(i, j)] = v
            form[(j, i)] = -v
        table = {}
        for h in H:
            for k in H:
                x, y = coords[h], coords[k]
                table[(h, k)] = sum((x[i] * y[j] * v for (i, j), v in form.items()), Fraction(0)) % 1
        out.append(Bicharacter(H, table))
    return out


def lagrangian_from_pair(M: MetricGroup, H: Subgroup | Iterable, b: Bicharacter | None = None) -> Lagrangian:
    """``L_(H,b) = {(phi, h) : h in H, phi|_H = b(h, .)}``.

    ``H`` is a subgroup of the base group ``G`` (or a list of generators);
    ``b`` defaults to the trivial bicharacter, which gives ``H^perp x H``.
    """
    G = M.base
    if not isinstance(H, Subgroup):
        H = Subgroup.generated_by(G, H)
    if _arith(H.parent) != G:
        raise MetricGroupMismatch("H must be a subgroup of the base group of M")
    if b is None:
        b = Bicharacter.trivial(H)
    else:
        if b.subgroup.elements != H.elements:
            raise NotBicharacter("bicharacter is defined on a different subgroup")
        b.validate()
    e = M.denominator
    gens = H.generators
    elements = []
    for h in H:
        for phi in G.elements:
            ok = True
            for k in gens:
                pairing = sum(p * kk * (e // m) for p, kk, m in zip(phi, k, G.factors)) % e
                if Fraction(pairing, e) != b(h, k):
                    ok = False
                    break
            if ok:
                elements.append(phi + h)
    L = Lagrangian(Subgroup.from_elements(M, elements))
    if not L.check():
        raise NotAntisymmetric("resulting subgroup is not Lagrangian")
    return L


def lagrangians_from_pairs(M: MetricGroup) -> list[Lagrangian]:
    """``L_(H,b)`` over every subgroup ``H <= G`` and antisymmetric ``b``."""
    out = []
    for H in subgroups(M.base):
        for b in antisymmetric_bicharacters(H):
            out.append(lagrangian_from_pair(M, H, b))
    return sorted(out, key=lambda L: L.elements)


@dataclass(frozen=True)
class CenterAutomorphism:
    """Group automorphism of ``M`` given by an integer matrix on residue columns."""

    metric: MetricGroup
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.metric.group.factors)
        matrix = tuple(tuple(int(v) for v in row) for row in self.matrix)
        if len(matrix) != n or any(len(row) != n for row in matrix):
            raise ValueError(f"matrix must be {n} x {n}")
        object.__setattr__(self, "matrix", matrix)
        images = {self(x) for x in self.metric.elements}
        if len(images) != self.metric.order:
            raise ValueError("matrix is not invertible modulo the group factors")

    def __call__(self, x: Element) -> Element:
        factors = self.metric.group.factors
        return tuple(sum(a * xi for a, xi in zip(row, x)) % m for row, m in zip(self.matrix, factors))

    @cached_property
    def order(self) -> int:
        G = self.metric.group
        basis = [tuple(int(i == j) for j in range(len(G.factors))) for i in range(len(G.factors))]
        k, current = 1, [self(v) for v in basis]
        while current != basis:
            current = [self(v) for v in current]
            k += 1
        return k

    def preserves_q(self) -> Element | None:
        """First element with ``q(phi(x)) != q(x)``, or None."""
        M = self.metric
        for x in M.elements:
            if M.q_num(self(x)) != M.q_num(x):
                return x
        return None


def ty_duality_auto(M: MetricGroup, s: int) -> CenterAutomorphism:
    """The Tambara-Yamagami duality ``(a, g) -> (s g, s^-1 a)`` on ``Z(Vec(Z/n))``.

    Also accepted for several factors (diagonal bicharacter), provided ``s`` is
    a unit modulo each.
    """
    factors = M.base.factors
    if any(math.gcd(s, m) != 1 for m in factors):
        raise NonCoprime(f"s = {s} is not coprime to {M.base}")
    t = len(factors)
    rows = [[0] * (2 * t) for _ in range(2 * t)]
    for i, m in enumerate(factors):
        rows[i][t + i] = s % m
        rows[t + i][i] = pow(s, -1, m)
    phi = CenterAutomorphism(M, tuple(map(tuple, rows)))
    bad = phi.preserves_q()
    if bad is not None:  # pragma: no cover - guaranteed by construction
        raise NotQPreserving(f"q not preserved at {bad}")
    return phi


@dataclass(frozen=True)
class AnomalyVerdict:
    anomalous: bool
    lagrangians: tuple[Lagrangian, ...]
    orbits: tuple[tuple[int, ...], ...]

    @property
    def fixed(self) -> tuple[Lagrangian, ...]:
        return tuple(self.lagrangians[o[0]] for o in self.orbits if len(o) == 1)


def anomaly_verdict(M: MetricGroup, phi: CenterAutomorphism) -> AnomalyVerdict:
    """Partition the Lagrangians of ``M`` into ``phi``-orbits.

    ``phi`` is anomalous when no Lagrangian is fixed.
    """
    if phi.metric != M:
        raise MetricGroupMismatch("automorphism acts on a different metric group")
    bad = phi.preserves_q()
    if bad is not None:
        raise NotQPreserving(f"q(phi(x)) != q(x) at x = {bad}")
    lags = enumerate_lagrangians(M)
    index = {frozenset(L.elements): i for i, L in enumerate(lags)}
    image = [index[frozenset(phi(x) for x in L.elements)] for L in lags]
    orbits, seen = [], set()
    for i in range(len(lags)):
        if i in seen:
            continue
        orbit, j = [], i
        while j not in seen:
            seen.add(j)
            orbit.append(j)
            j = image[j]
        orbits.append(tuple(sorted(orbit)))
    anomalous = not any(len(o) == 1 for o in orbits)
    return AnomalyVerdict(anomalous, tuple(lags), tuple(orbits))


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, math.isqrt(p) + 1))


def orbit_fixed_point_forced(count: int, action_order: int) -> bool:
    """Whether a ``Z/p`` action on ``count`` points must fix one (``count % p != 0``)."""
    if not _is_prime(action_order):
        raise NonPrimeOrder(f"action order {action_order} is not prime")
    return count % action_order != 0

