"""Temperley-Lieb diagram algebra ``TL_m(delta)``.

A basis diagram is a noncrossing perfect matching of ``2m`` boundary points:
bottom points ``0..m-1`` (left to right) and top points ``m..2m-1``.  The
product ``a * b`` stacks ``a`` on top of ``b``; each closed loop contributes a
factor ``delta``.  Integer or :class:`~fractions.Fraction` loop parameters keep
all coefficients exact, floats give floating-point coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from numbers import Number
from typing import Iterator, Mapping

from .errors import (
    IndexOutOfRange,
    SingularQuantumInteger,
    StrandMismatch,
    TooManyStrands,
    WindowTooSmall,
    ZeroLoopParameter,
)

__all__ = [
    "TLDiagram",
    "TLElement",
    "identity",
    "cupcap",
    "jones_projection",
    "multiply",
    "noncrossing_diagrams",
    "tl_dim",
    "catalan",
    "quantum_integers",
    "jones_wenzl",
    "wenzl_recursion",
    "loop_parameter",
    "semisimple_dims",
    "markov_trace",
    "embed",
    "KWShiftVerdict",
    "kw_shift_check",
    "MAX_STRANDS",
]

MAX_STRANDS = 16
SINGULAR_TOL = 1e-9


@dataclass(frozen=True)
class TLDiagram:
    m: int
    pairing: tuple[int, ...]

    def __post_init__(self):
        p = tuple(int(i) for i in self.pairing)
        object.__setattr__(self, "pairing", p)
        if len(p) != 2 * self.m:
            raise ValueError(f"pairing must have {2 * self.m} entries")
        for i, j in enumerate(p):
            if not 0 <= j < 2 * self.m or j == i or p[j] != i:
                raise ValueError(f"pairing {p} is not a fixed-point-free involution")
        if not self.is_planar():
            raise ValueError(f"pairing {p} has crossing arcs")

    def position(self, point: int) -> int:
        """Position of a point going around the boundary of the disk."""
        return point if point < self.m else 3 * self.m - 1 - point

    def is_planar(self) -> bool:
        stack = []
        order = sorted(range(2 * self.m), key=self.position)
        for point in order:
            partner = self.pairing[point]
            if self.position(partner) > self.position(point):
                stack.append(point)
            elif not stack or stack.pop() != partner:
                return False
        return True

    @property
    def through_strands(self) -> int:
        return sum(1 for i in range(self.m) if self.pairing[i] >= self.m)

    def __str__(self):
        arcs = sorted({tuple(sorted((i, j))) for i, j in enumerate(self.pairing)})
        name = lambda p: f"b{p}" if p < self.m else f"t{p - self.m}"
        return "{" + ", ".join(f"{name(i)}-{name(j)}" for i, j in arcs) + "}"


@lru_cache(maxsize=None)
def _identity_diagram(m: int) -> TLDiagram:
    return TLDiagram(m, tuple(list(range(m, 2 * m)) + list(range(m))))


@lru_cache(maxsize=200_000)
def _compose(a: TLDiagram, b: TLDiagram) -> tuple[TLDiagram, int]:
    """Stack ``a`` on top of ``b``; returns the diagram and the number of closed loops."""
    m = a.m
    pa, pb = a.pairing, b.pairing
    result = [0] * (2 * m)
    visited = [False] * m  # middle points: top of b == bottom of a

    def walk(in_a: bool, point: int) -> int:
        while True:
            if in_a:
                q = pa[point]
                if q >= m:
                    return m + (q - m)  # top of a is top of the result
                visited[q] = True
                in_a, point = False, m + q
            else:
                q = pb[point]
                if q < m:
                    return q
                visited[q - m] = True
                in_a, point = True, q - m

    for i in range(m):
        result[i] = walk(False, i)
        result[m + i] = walk(True, m + i)
    loops = 0
    for start in range(m):
        if visited[start]:
            continue
        loops += 1
        point = start
        while True:
            visited[point] = True
            q = pa[point]  # a-bottom to a-bottom
            point = pb[m + q] - m  # cross to b-top and along b
            visited[q] = True
            if point == start:
                break
    return TLDiagram(m, tuple(result)), loops


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def _scalar(x):
    if _is_exact(x):
        return Fraction(x)
    return float(x)


@dataclass(frozen=True, eq=False)
class TLElement:
    """Linear combination of TL diagrams with loop parameter ``delta``."""

    m: int
    delta: Number
    terms: Mapping[TLDiagram, Number] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "delta", _scalar(self.delta))
        clean = {}
        for d, c in self.terms.items():
            if d.m != self.m:
                raise StrandMismatch(f"diagram on {d.m} strands in TL_{self.m}")
            if c != 0:
                clean[d] = c
        object.__setattr__(self, "terms", clean)

    @property
    def exact(self) -> bool:
        return isinstance(self.delta, Fraction)

    def _check(self, other: "TLElement"):
        if self.m != other.m:
            raise StrandMismatch(f"TL_{self.m} vs TL_{other.m}")
        if self.delta != other.delta:
            raise StrandMismatch(f"loop parameters differ: {self.delta} vs {other.delta}")

    def __add__(self, other: "TLElement") -> "TLElement":
        self._check(other)
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out.get(d, 0) + c
        return TLElement(self.m, self.delta, out)

    def __neg__(self) -> "TLElement":
        return TLElement(self.m, self.delta, {d: -c for d, c in self.terms.items()})

    def __sub__(self, other: "TLElement") -> "TLElement":
        return self + (-other)

    def scale(self, s) -> "TLElement":
        s = _scalar(s) if self.exact else float(s)
        return TLElement(self.m, self.delta, {d: s * c for d, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, TLElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def max_abs(self) -> float:
        return max((abs(float(c)) for c in self.terms.values()), default=0.0)

    def isclose(self, other: "TLElement", tol: float = 1e-10) -> bool:
        diff = self - other
        if self.exact and other.exact:
            return not diff.terms
        return diff.max_abs() <= tol

    def __eq__(self, other):
        if not isinstance(other, TLElement):
            return NotImplemented
        return self.m == other.m and self.delta == other.delta and self.terms == other.terms

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        body = " + ".join(f"{c:.6g}*{d}" for d, c in sorted(self.terms.items(), key=lambda t: t[0].pairing))
        return f"TLElement(m={self.m}, delta={float(self.delta):.6g}: {body or '0'})"


def multiply(a: TLElement, b: TLElement) -> TLElement:
    """Product ``a * b`` (``a`` stacked on top of ``b``)."""
    a._check(b)
    delta = a.delta
    out: dict[TLDiagram, Number] = {}
    powers: dict[int, Number] = {0: 1}
    for da, ca in a.terms.items():
        for db, cb in b.terms.items():
            d, loops = _compose(da, db)
            if loops not in powers:
                powers[loops] = delta ** loops
            out[d] = out.get(d, 0) + ca * cb * powers[loops]
    return TLElement(a.m, delta, out)


def identity(m: int, delta) -> TLElement:
    return TLElement(m, delta, {_identity_diagram(m): 1})


def _cupcap_diagram(m: int, i: int) -> TLDiagram:
    p = list(_identity_diagram(m).pairing)
    a, b = i - 1, i
    p[a], p[b] = b, a
    p[m + a], p[m + b] = m + b, m + a
    return TLDiagram(m, tuple(p))


def cupcap(i: int, m: int, delta) -> TLElement:
    """Unnormalized cup-cap ``U_i`` joining strands ``i, i+1`` (1-indexed); ``U_i^2 = delta U_i``."""
    if not 1 <= i <= m - 1:
        raise IndexOutOfRange(f"cup-cap index {i} outside 1..{m - 1}")
    return TLElement(m, delta, {_cupcap_diagram(m, i): 1})


def jones_projection(i: int, m: int, delta) -> TLElement:
    """``e_i = U_i / delta``; a projection with ``e_i e_{i+-1} e_i = e_i / delta^2``."""
    if not 1 <= i <= m - 1:
        raise IndexOutOfRange(f"Jones projection index {i} outside 1..{m - 1}")
    if delta == 0:
        raise ZeroLoopParameter("loop parameter must be non-zero")
    el = cupcap(i, m, delta)
    return el.scale(1 / el.delta)


def embed(x: TLElement, m: int, offset: int = 0) -> TLElement:
    """Place ``x`` on strands ``offset..offset+x.m-1`` of ``TL_m``, other strands straight."""
    if offset < 0 or offset + x.m > m:
        raise StrandMismatch(f"cannot place TL_{x.m} at offset {offset} in TL_{m}")
    base = list(_identity_diagram(m).pairing)
    out = {}
    k = x.m
    for d, c in x.terms.items():
        p = list(base)
        for i, j in enumerate(d.pairing):
            src = offset + i if i < k else m + offset + (i - k)
            dst = offset + j if j < k else m + offset + (j - k)
            p[src] = dst
        out[TLDiagram(m, tuple(p))] = c
    return TLElement(m, x.delta, out)


def _closure_loops(d: TLDiagram) -> int:
    """Loops formed by joining top ``i`` to bottom ``i`` for every ``i``."""
    m = d.m
    seen = [False] * (2 * m)
    loops = 0
    for start in range(2 * m):
        if seen[start]:
            continue
        loops += 1
        p = start
        while not seen[p]:
            seen[p] = True
            q = d.pairing[p]
            seen[q] = True
            p = q - m if q >= m else q + m
    return loops


def markov_trace(x: TLElement):
    """Unnormalized Markov trace: close every strand and evaluate loops."""
    return sum((c * x.delta ** _closure_loops(d) for d, c in x.terms.items()), 0)


def _noncrossing(points: tuple[int, ...]) -> Iterator[list[tuple[int, int]]]:
    if not points:
        yield []
        return
    first = points[0]
    for j in range(1, len(points), 2):
        for inner in _noncrossing(points[1:j]):
            for outer in _noncrossing(points[j + 1:]):
                yield [(first, points[j])] + inner + outer


def noncrossing_diagrams(m: int) -> Iterator[TLDiagram]:
    """Every basis diagram of ``TL_m``."""
    if m > MAX_STRANDS:
        raise TooManyStrands(f"m = {m} exceeds {MAX_STRANDS}")
    # boundary positions 0..2m-1: bottom left to right, then top right to left
    point = lambda pos: pos if pos < m else 3 * m - 1 - pos
    for arcs in _noncrossing(tuple(range(2 * m))):
        p = [0] * (2 * m)
        for u, v in arcs:
            p[point(u)], p[point(v)] = point(v), point(u)
        yield TLDiagram(m, tuple(p))


@lru_cache(maxsize=None)
def _count_matchings(n_points: int) -> int:
    # same recursion as _noncrossing: partner of the first point splits the interval
    if n_points == 0:
        return 1
    return sum(_count_matchings(j - 1) * _count_matchings(n_points - j - 1) for j in range(1, n_points, 2))


def tl_dim(m: int) -> int:
    """Number of noncrossing perfect matchings of ``2m`` points, by enumeration."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if m > MAX_STRANDS:
        raise TooManyStrands(f"m = {m} exceeds {MAX_STRANDS}")
    return _count_matchings(2 * m)


def catalan(m: int) -> int:
    return math.comb(2 * m, m) // (m + 1)


def quantum_integers(delta, p: int) -> list:
    """``[0], [1], ..., [p]`` with ``[j+1] = delta [j] - [j-1]``."""
    delta = _scalar(delta)
    q = [delta * 0, delta * 0 + 1]
    while len(q) <= p:
        q.append(delta * q[-1] - q[-2])
    return q[: p + 1]


def _is_singular(value) -> bool:
    if isinstance(value, Fraction):
        return value == 0
    return abs(value) < SINGULAR_TOL


def wenzl_recursion(one: TLElement, cups: list[TLElement]) -> TLElement:
    """Jones-Wenzl projector built from ``1`` and the cup-caps ``U_1..U_{p-1}``.

    ``f_{n+1} = f_n - ([n] / [n+1]) f_n U_n f_n``; the cup-caps may sit anywhere
    inside a larger ``TL_m`` as long as they are consecutive.
    """
    p = len(cups) + 1
    qint = quantum_integers(one.delta, p)
    for j in range(2, p + 1):
        if _is_singular(qint[j]):
            raise SingularQuantumInteger(
                f"[{j}] = {float(qint[j]):.3g} vanishes at delta = {float(one.delta):.12g}; JW_{p} is undefined"
            )
    f = one
    for n in range(1, p):
        f = f - (f * cups[n - 1] * f).scale(qint[n] / qint[n + 1])
    return f


def jones_wenzl(p: int, delta) -> TLElement:
    """Jones-Wenzl idempotent in ``TL_p``: idempotent and killed by every ``e_i``."""
    if p < 1:
        raise ValueError("p must be positive")
    if delta == 0:
        raise ZeroLoopParameter("loop parameter must be non-zero")
    return wenzl_recursion(identity(p, delta), [cupcap(i, p, delta) for i in range(1, p)])


def loop_parameter(k: int) -> float:
    """``delta_k = 2 cos(pi / (k + 2))``."""
    return 2.0 * math.cos(math.pi / (k + 2))


def semisimple_dims(k: int, m: int) -> int:
    """Dimension of ``TL_m(delta_k)`` modulo negligibles.

    Path model: the sum over vertices ``v`` of the ``A_{k+1}`` Dynkin diagram
    of the squared number of length-``m`` walks from the end vertex to ``v``.
    """
    if k < 2 or m < 1:
        raise ValueError("need k >= 2 and m >= 1")
    counts = [1] + [0] * k
    for _ in range(m):
        counts = [
            (counts[v - 1] if v > 0 else 0) + (counts[v + 1] if v < k else 0) for v in range(k + 1)
        ]
    return sum(c * c for c in counts)


@dataclass(frozen=True)
class KWShiftVerdict:
    k: int
    m: int
    delta: float
    checks: dict = field(hash=False)
    failures: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.failures


def _hamiltonian_terms(indices, J, h) -> dict[int, str]:
    # H_{J,h} = -J sum e_{2i} - h sum e_{2j+1}; coefficient symbols per generator index
    return {i: (J if i % 2 == 0 else h) for i in indices}


def kw_shift_check(k: int, m: int, tol: float = 1e-10) -> KWShiftVerdict:
    """Check that ``e_i -> e_{i-1}`` respects the TL relations on a window of ``m`` strands.

    Verified in ``TL_m(delta_k)``: idempotence, far commutation and the
    ``delta^-2`` relation for the images of the surviving generators
    (``2 <= i <= m-1``); the shifted Jones-Wenzl projector ``JW_{k+1}`` agrees
    with the translated diagram, is idempotent, killed by the shifted
    projections and negligible (zero trace); and ``H_{J,h}`` maps to ``H_{h,J}``
    both symbolically and as an element of ``TL_m``.
    """
    if m < 4:
        raise WindowTooSmall(f"window of {m} strands is too small (need m >= 4)")
    delta = loop_parameter(k)
    e = {i: jones_projection(i, m, delta) for i in range(1, m)}
    alpha = {i: e[i - 1] for i in range(2, m)}
    inv_d2 = 1.0 / delta ** 2
    checks: dict[str, bool] = {}

    def record(name, ok):
        checks[name] = bool(ok)

    for i in range(1, m):
        record(f"e{i}^2 = e{i}", (e[i] * e[i]).isclose(e[i], tol))
    for i in alpha:
        record(f"a(e{i})^2 = a(e{i})", (alpha[i] * alpha[i]).isclose(alpha[i], tol))
        for j in alpha:
            if abs(i - j) >= 2 and i < j:
                record(f"a(e{i})a(e{j}) = a(e{j})a(e{i})", (alpha[i] * alpha[j]).isclose(alpha[j] * alpha[i], tol))
            if abs(i - j) == 1:
                lhs = alpha[i] * alpha[j] * alpha[i]
                record(f"a(e{i})a(e{j})a(e{i}) = d^-2 a(e{i})", lhs.isclose(alpha[i].scale(inv_d2), tol))
                orig = e[i] * e[j] * e[i]
                record(f"e{i}e{j}e{i} = d^-2 e{i}", orig.isclose(e[i].scale(inv_d2), tol))

    p = k + 1
    if p <= m - 1:
        jw = jones_wenzl(p, delta)
        record(f"tr JW_{p} = [{p + 1}] = 0", abs(markov_trace(jw)) <= 1e-8)
        one = identity(m, delta)
        for s in range(2, m - p + 2):
            # JW_{k+1} on strands s..s+k via generators, then via shifted generators
            shifted = wenzl_recursion(one, [e[i].scale(delta) for i in range(s - 1, s + p - 2)])
            translated = embed(jw, m, s - 2)
            record(f"a(JW at {s}) = JW at {s - 1}", shifted.isclose(translated, 1e-9))
            record(f"a(JW at {s}) idempotent", (shifted * shifted).isclose(shifted, 1e-9))
            for i in range(s - 1, s + p - 2):
                record(f"e{i} a(JW at {s}) = 0", (e[i] * shifted).max_abs() <= 1e-9)
                record(f"a(JW at {s}) e{i} = 0", (shifted * e[i]).max_abs() <= 1e-9)

    window = range(1, m)
    symbolic = _hamiltonian_terms(window, "J", "h")
    image = {i - 1: symbolic[i] for i in window if i >= 2}
    dual = _hamiltonian_terms(range(1, m - 1), "h", "J")
    record("a(H_{J,h}) = H_{h,J} (symbolic)", image == dual)
    J, h = 0.7, 1.3
    coeff = {"J": -J, "h": -h}
    H_img = identity(m, delta).scale(0)
    H_dual = identity(m, delta).scale(0)
    for i in window:
        if i >= 2:
            H_img = H_img + alpha[i].scale(coeff[symbolic[i]])
    swapped = {"J": -h, "h": -J}
    for i in range(1, m - 1):
        H_dual = H_dual + e[i].scale(swapped[_hamiltonian_terms([i], "J", "h")[i]])
    record("a(H_{J,h}) = H_{h,J} (in TL_m)", H_img.isclose(H_dual, tol))

    failures = tuple(name for name, ok in checks.items() if not ok)
    return KWShiftVerdict(k, m, delta, checks, failures)
