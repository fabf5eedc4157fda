"""Constructors for the example fusion rings.

Pointed rings ``Vec(G)`` for finite abelian ``G``, Tambara-Yamagami rings,
the integer-spin part ``PSU(2)_k`` of ``SU(2)_k``, and a handful of named
rings (Fibonacci, Ising, Rep(S3), Rep(A4), Haagerup).
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import reduce
from pathlib import Path

import numpy as np

from .errors import DegenerateBicharacter, LevelTooSmall, MalformedRing, UnknownName
from .fusion_ring import FusionRing, is_integral, load_ring, verify_ring

__all__ = [
    "CatalogEntry",
    "build_pointed",
    "build_ty",
    "build_psu2",
    "build_named",
    "catalog_names",
    "resolve_ring",
]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    ring: FusionRing
    notes: str
    fiber_functor_flag: str

    def __post_init__(self):
        report = verify_ring(self.ring)
        if not report.passed:
            raise MalformedRing(f"catalog entry {self.name}: {report.message}")


def _group_elements(factors):
    return list(itertools.product(*(range(m) for m in factors)))


def _element_label(element, factors):
    if len(factors) == 1:
        return str(element[0])
    return "(" + ",".join(map(str, element)) + ")"


def _pointed_tensor(factors):
    elements = _group_elements(factors)
    index = {g: i for i, g in enumerate(elements)}
    n = len(elements)
    fusion = np.zeros((n, n, n), dtype=np.int64)
    for (i, g), (j, h) in itertools.product(enumerate(elements), repeat=2):
        k = index[tuple((a + b) % m for a, b, m in zip(g, h, factors))]
        fusion[i, j, k] = 1
    dual = [index[tuple((-a) % m for a, m in zip(g, factors))] for g in elements]
    labels = [_element_label(g, factors) for g in elements]
    return labels, fusion, dual


def _clean_factors(cyclic_factors) -> tuple[int, ...]:
    factors = tuple(int(m) for m in cyclic_factors)
    if any(m < 1 for m in factors):
        raise ValueError(f"cyclic factors must be positive, got {factors}")
    return tuple(m for m in factors if m > 1)


def _group_name(factors) -> str:
    return " x ".join(f"Z/{m}" for m in factors) if factors else "trivial"


def build_pointed(cyclic_factors) -> FusionRing:
    """Group ring of ``G = Z/m_1 x ... x Z/m_t`` (``Vec(G)`` fusion rules).

    An empty factor list gives the trivial ring of rank 1.
    """
    factors = _clean_factors(cyclic_factors)
    labels, fusion, dual = _pointed_tensor(factors)
    return FusionRing(tuple(labels), 0, fusion, tuple(dual), f"Vec({_group_name(factors)})", "yes")


def build_ty(cyclic_factors, bichar_param: int = 1) -> FusionRing:
    """Tambara-Yamagami fusion rules on ``G`` plus a non-invertible ``rho``.

    The bicharacter is ``beta(a, b) = exp(2 pi i s sum_i a_i b_i / m_i)``; it is
    non-degenerate iff ``s`` is coprime to the exponent of ``G``.  The fusion
    rules do not depend on ``s`` but the parameter is validated.
    """
    factors = _clean_factors(cyclic_factors)
    exponent = reduce(math.lcm, factors, 1)
    if math.gcd(int(bichar_param), exponent) != 1:
        raise DegenerateBicharacter(
            f"s = {bichar_param} is not coprime to the exponent {exponent} of {_group_name(factors)}"
        )
    labels, group_fusion, dual = _pointed_tensor(factors)
    n = len(labels)
    rho = n
    fusion = np.zeros((n + 1, n + 1, n + 1), dtype=np.int64)
    fusion[:n, :n, :n] = group_fusion
    fusion[:n, rho, rho] = 1
    fusion[rho, :n, rho] = 1
    fusion[rho, rho, :n] = 1
    square = math.isqrt(n) ** 2 == n
    return FusionRing(
        tuple(labels) + ("rho",),
        0,
        fusion,
        tuple(dual) + (rho,),
        f"TY({_group_name(factors)}, s={bichar_param})",
        "unknown" if square else "no",
    )


def build_psu2(k: int) -> FusionRing:
    """Integer-spin fusion rules of ``SU(2)_k``.

    Simples are spins ``j = 0..floor(k/2)``; ``N^m_{jl} = 1`` iff
    ``|j - l| <= m <= min(j + l, k - j - l)``.
    """
    k = int(k)
    if k < 2:
        raise LevelTooSmall(f"level k = {k} must be at least 2")
    spins = range(k // 2 + 1)
    r = len(spins)
    fusion = np.zeros((r, r, r), dtype=np.int64)
    for j, l, m in itertools.product(spins, repeat=3):
        if abs(j - l) <= m <= min(j + l, k - j - l):
            fusion[j, l, m] = 1
    ring = FusionRing(tuple(f"X_{j}" for j in spins), 0, fusion, tuple(spins), f"PSU(2)_{k}")
    flag = "unknown" if is_integral(ring) else "no"
    return FusionRing(ring.labels, 0, fusion, ring.dual, ring.name, flag)


def _ring_from_rules(name, labels, dual, rules, flag) -> FusionRing:
    """``rules`` maps (x, y) label pairs to {z: multiplicity}; unit products are implicit."""
    r = len(labels)
    idx = {l: i for i, l in enumerate(labels)}
    fusion = np.zeros((r, r, r), dtype=np.int64)
    for x in range(r):
        fusion[0, x, x] = fusion[x, 0, x] = 1
    for (x, y), out in rules.items():
        for z, mult in out.items():
            fusion[idx[x], idx[y], idx[z]] = mult
    return FusionRing(tuple(labels), 0, fusion, tuple(idx[dual.get(l, l)] for l in labels), name, flag)


def _fibonacci():
    return _ring_from_rules("Fibonacci", ["1", "tau"], {}, {("tau", "tau"): {"1": 1, "tau": 1}}, "no")


def _ising():
    rules = {
        ("psi", "psi"): {"1": 1},
        ("psi", "sigma"): {"sigma": 1},
        ("sigma", "psi"): {"sigma": 1},
        ("sigma", "sigma"): {"1": 1, "psi": 1},
    }
    return _ring_from_rules("Ising", ["1", "psi", "sigma"], {}, rules, "no")


def _rep_s3():
    rules = {
        ("sigma", "sigma"): {"1": 1},
        ("sigma", "pi"): {"pi": 1},
        ("pi", "sigma"): {"pi": 1},
        ("pi", "pi"): {"1": 1, "sigma": 1, "pi": 1},
    }
    return _ring_from_rules("Rep(S3)", ["1", "sigma", "pi"], {}, rules, "yes")


def _rep_a4():
    chars = ["1", "chi", "chi2"]
    rules = {}
    for a, b in itertools.product(range(1, 3), repeat=2):
        rules[(chars[a], chars[b])] = {chars[(a + b) % 3]: 1}
    for c in chars[1:]:
        rules[(c, "pi")] = {"pi": 1}
        rules[("pi", c)] = {"pi": 1}
    rules[("pi", "pi")] = {"1": 1, "chi": 1, "chi2": 1, "pi": 2}
    return _ring_from_rules("Rep(A4)", chars + ["pi"], {"chi": "chi2", "chi2": "chi"}, rules, "yes")


def _haagerup():
    # alpha^3 = 1, rho alpha = alpha^2 rho, rho^2 = 1 + rho + alpha rho + alpha^2 rho
    group = ["1", "a", "a2"]
    coset = ["rho", "arho", "a2rho"]
    rules = {}
    for i, j in itertools.product(range(3), repeat=2):
        if i and j:
            rules[(group[i], group[j])] = {group[(i + j) % 3]: 1}
        if i:
            rules[(group[i], coset[j])] = {coset[(i + j) % 3]: 1}
        if j:
            rules[(coset[i], group[j])] = {coset[(i - j) % 3]: 1}
        out = {group[(i - j) % 3]: 1}
        out.update({c: 1 for c in coset})
        rules[(coset[i], coset[j])] = out
    return _ring_from_rules("Haagerup", group + coset, {"a": "a2", "a2": "a"}, rules, "no")


_NAMED = {
    "fibonacci": (_fibonacci, "Fibonacci rules tau^2 = 1 + tau (PSU(2)_3)"),
    "ising": (_ising, "Ising rules; TY(Z/2)"),
    "rep_s3": (_rep_s3, "Rep(S3); PSU(2)_4 fusion ring"),
    "rep_a4": (_rep_a4, "Rep(A4); grade-zero part of SU(3)_3"),
    "haagerup": (_haagerup, "Haagerup fusion rules from the subfactor literature"),
}

_PATTERNS = [
    (re.compile(r"vec_z(\d+)$"), lambda n: (build_pointed([int(n)]), "pointed, trivial twist")),
    (re.compile(r"ty_z(\d+)$"), lambda n: (build_ty([int(n)], 1), "Tambara-Yamagami, s = 1")),
    (re.compile(r"psu2_(\d+)$"), lambda k: (build_psu2(int(k)), "integer spins of SU(2)_k")),
]


def catalog_names() -> list[str]:
    """Fixed names plus one instance of every parametrized family."""
    return sorted(_NAMED) + ["vec_zN", "ty_zN", "psu2_K"]


def build_named(name: str) -> CatalogEntry:
    """Look up a catalog ring by name (``fibonacci``, ``vec_z6``, ``psu2_5``, ...)."""
    key = name.strip().lower()
    if key in _NAMED:
        ctor, notes = _NAMED[key]
        ring = ctor()
    else:
        for pattern, ctor in _PATTERNS:
            match = pattern.match(key)
            if match:
                ring, notes = ctor(match.group(1))
                break
        else:
            raise UnknownName(f"unknown catalog ring {name!r}; known: {', '.join(catalog_names())}")
    return CatalogEntry(key, ring, notes, ring.fiber_functor)


def resolve_ring(ref) -> CatalogEntry:
    """Catalog entry for a name, a :class:`FusionRing`, or a path to a ring file."""
    if isinstance(ref, CatalogEntry):
        return ref
    if isinstance(ref, FusionRing):
        return CatalogEntry(ref.name, ref, "user supplied", ref.fiber_functor)
    path = Path(str(ref))
    if path.suffix or path.exists():
        if path.is_file():
            ring = load_ring(path)
            return CatalogEntry(ring.name, ring, f"loaded from {path}", ring.fiber_functor)
    return build_named(str(ref))
