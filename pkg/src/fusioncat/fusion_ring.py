"""Fusion rings: data model, axiom checks, Frobenius-Perron dimensions.

A fusion ring of rank ``r`` is stored as a dense ``r x r x r`` integer tensor
``fusion[X, Y, Z] = N^Z_{XY}`` (multiplicity of ``Z`` in ``X (x) Y``) together
with a unit label and a dual involution.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    LabelOutOfRange,
    MalformedRing,
    NonIntegralRing,
    NonVerifiedRing,
    RingFormatError,
)

__all__ = [
    "FusionRing",
    "VerificationReport",
    "DimensionVector",
    "MultiplicativityReport",
    "IntegralityVerdict",
    "verify_ring",
    "fp_dimensions",
    "check_multiplicativity",
    "is_integral",
    "fuse_vectors",
    "tensor_multiplicities",
    "object_power",
    "regular_object",
    "find_isomorphism",
    "parse_ring",
    "load_ring",
    "format_ring",
]

FIBER_FLAGS = ("yes", "no", "unknown")
INTEGRALITY_TOL = 1e-6
MULTIPLICATIVITY_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class FusionRing:
    """Arithmetic skeleton of a fusion category.

    Parameters
    ----------
    labels : sequence of str
        Display names of the simple objects.
    unit : int
        Index of the tensor unit.
    fusion : array_like, shape (rank, rank, rank)
        ``fusion[X, Y, Z]`` is the multiplicity ``N^Z_{XY}``.
    dual : sequence of int
        Image list of the duality permutation ``X -> dual[X]``.
    name : str
        Source name, used in reports.
    fiber_functor : {'yes', 'no', 'unknown'}
        Catalog knowledge about the existence of a fiber functor.
    """

    labels: tuple[str, ...]
    unit: int
    fusion: np.ndarray
    dual: tuple[int, ...]
    name: str = "ring"
    fiber_functor: str = "unknown"

    def __post_init__(self):
        labels = tuple(str(l) for l in self.labels)
        try:
            fusion = np.array(self.fusion, dtype=np.int64)
        except (TypeError, ValueError) as exc:
            raise MalformedRing(f"fusion tensor is not an integer array: {exc}") from None
        r = len(labels)
        if r < 1:
            raise MalformedRing("rank must be positive")
        if fusion.shape != (r, r, r):
            raise MalformedRing(f"fusion tensor has shape {fusion.shape}, expected {(r, r, r)}")
        if (fusion < 0).any():
            x, y, z = map(int, np.argwhere(fusion < 0)[0])
            raise MalformedRing(f"negative multiplicity N^{z}_{x}{y}")
        dual = tuple(int(d) for d in self.dual)
        if sorted(dual) != list(range(r)):
            raise MalformedRing(f"dual {dual} is not a permutation of 0..{r - 1}")
        if not 0 <= int(self.unit) < r:
            raise MalformedRing(f"unit index {self.unit} out of range")
        if len(set(labels)) != r:
            raise MalformedRing("labels must be distinct")
        if self.fiber_functor not in FIBER_FLAGS:
            raise MalformedRing(f"fiber_functor flag must be one of {FIBER_FLAGS}")
        fusion.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "unit", int(self.unit))
        object.__setattr__(self, "fusion", fusion)
        object.__setattr__(self, "dual", dual)

    @property
    def rank(self) -> int:
        return len(self.labels)

    def index(self, label: int | str) -> int:
        """Resolve a label name or index to an index."""
        if isinstance(label, (int, np.integer)) and not isinstance(label, bool):
            if 0 <= label < self.rank:
                return int(label)
            raise LabelOutOfRange(f"label index {label} out of range for rank {self.rank}")
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise LabelOutOfRange(f"unknown label {label!r}; labels are {list(self.labels)}") from None

    def fusion_matrix(self, x: int | str) -> np.ndarray:
        """Matrix ``(N^Z_{XY})_{Y,Z}`` of left multiplication by ``x``."""
        return self.fusion[self.index(x)]

    @cached_property
    def table(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        # python ints, for arbitrary-precision multiplicity arithmetic
        return tuple(tuple(tuple(int(v) for v in row) for row in mat) for mat in self.fusion)

    @cached_property
    def dimensions(self) -> "DimensionVector":
        return fp_dimensions(self)

    def with_entry(self, x: int, y: int, z: int, value: int) -> "FusionRing":
        """Copy of the ring with one fusion coefficient replaced."""
        fusion = self.fusion.copy()
        fusion[x, y, z] = value
        return FusionRing(self.labels, self.unit, fusion, self.dual, self.name, "unknown")

    def __eq__(self, other):
        if not isinstance(other, FusionRing):
            return NotImplemented
        return (
            self.labels == other.labels
            and self.unit == other.unit
            and self.dual == other.dual
            and np.array_equal(self.fusion, other.fusion)
        )

    def __hash__(self):
        return hash((self.labels, self.unit, self.dual, self.fusion.tobytes()))

    def __repr__(self):
        return f"FusionRing(name={self.name!r}, labels={list(self.labels)})"


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    axiom: str | None = None
    witness: tuple[int, ...] | None = None
    message: str = "all fusion ring axioms hold"

    def __bool__(self):
        return self.passed


def _fail(ring: FusionRing, axiom: str, witness, detail: str) -> VerificationReport:
    witness = tuple(int(i) for i in witness)
    names = ", ".join(ring.labels[i] for i in witness)
    return VerificationReport(False, axiom, witness, f"{axiom} fails at ({names}): {detail}")


def verify_ring(ring: FusionRing) -> VerificationReport:
    """Check unit, associativity, duality and Frobenius reciprocity.

    Returns the first violated axiom (in that order) with the lexicographically
    first witness index tuple.
    """
    N = ring.fusion
    r = ring.rank
    if N.shape != (r, r, r):
        raise MalformedRing(f"fusion tensor has shape {N.shape}, expected {(r, r, r)}")
    eye = np.eye(r, dtype=np.int64)
    u = ring.unit

    bad = np.argwhere(N[u] != eye)
    if len(bad):
        y, z = bad[0]
        return _fail(ring, "unit", (u, y, z), f"N^{z}_{{1,{y}}} = {N[u, y, z]}")
    bad = np.argwhere(N[:, u, :] != eye)
    if len(bad):
        x, z = bad[0]
        return _fail(ring, "unit", (x, u, z), f"N^{z}_{{{x},1}} = {N[x, u, z]}")

    # float64 routes the contraction through BLAS; sums of small integers stay exact
    F = N.astype(np.float64)
    left = np.tensordot(F, F, axes=(2, 0))  # [x,y,z,w] = sum_e N^e_xy N^w_ez
    right = np.tensordot(F, F, axes=(1, 2)).transpose(0, 2, 3, 1)  # sum_f N^w_xf N^f_yz
    bad = np.argwhere(left != right)
    if len(bad):
        w = bad[0]
        return _fail(ring, "associativity", w, f"(XY)Z gives {int(left[tuple(w)])}, X(YZ) gives {int(right[tuple(w)])}")

    dual = np.array(ring.dual)
    bad = np.flatnonzero(dual[dual] != np.arange(r))
    if len(bad):
        return _fail(ring, "duality", (bad[0],), "dual is not an involution")
    expected = np.zeros((r, r), dtype=np.int64)
    expected[np.arange(r), dual] = 1
    bad = np.argwhere(N[:, :, u] != expected)
    if len(bad):
        x, y = bad[0]
        return _fail(ring, "duality", (x, y), f"N^1_{{{x},{y}}} = {N[x, y, u]}")

    # N^Z_{XY} = N^Y_{dual(X) Z} = N^X_{Z dual(Y)}
    second = N[dual].transpose(0, 2, 1)  # [X, Y, Z] -> N[dual X, Z, Y]
    third = N[:, dual, :].transpose(2, 1, 0)  # [X, Y, Z] -> N[Z, dual Y, X]
    bad = np.argwhere((N != second) | (N != third))
    if len(bad):
        x, y, z = bad[0]
        return _fail(
            ring,
            "frobenius",
            (x, y, z),
            f"N^Z_XY = {N[x, y, z]}, N^Y_(X*)Z = {second[x, y, z]}, N^X_Z(Y*) = {third[x, y, z]}",
        )
    return VerificationReport(True)


@dataclass(frozen=True)
class DimensionVector:
    """Frobenius-Perron dimensions, one per label."""

    values: tuple[float, ...]
    exact_integers: tuple[int, ...] | None = None

    def __getitem__(self, i):
        return self.values[i]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    @property
    def global_dimension(self) -> float:
        """``Dim(C) = sum_X d_X^2``."""
        if self.exact_integers is not None:
            return float(sum(d * d for d in self.exact_integers))
        return float(sum(d * d for d in self.values))

    def as_array(self) -> np.ndarray:
        return np.array(self.values, dtype=float)


def _perron_vector(T: np.ndarray, tol: float = 1e-13, max_iter: int = 100_000) -> np.ndarray:
    v = np.ones(T.shape[0], dtype=float)
    for _ in range(max_iter):
        w = T @ v
        w /= w.max()
        if np.max(np.abs(w - v)) <= tol:
            return w
        v = w
    warnings.warn("power iteration did not reach tolerance", RuntimeWarning, stacklevel=3)
    return v


def fp_dimensions(ring: FusionRing, verify: bool = True) -> DimensionVector:
    """Frobenius-Perron dimensions by power iteration.

    The total fusion matrix ``sum_X N_X`` is non-negative, irreducible and
    dominates the identity (the unit summand), so power iteration converges to
    its Perron vector, which is the dimension vector up to scale.  Each ``d_X``
    is then refined as the Rayleigh quotient of ``N_X`` on that vector.
    """
    if verify:
        report = verify_ring(ring)
        if not report.passed:
            raise NonVerifiedRing(report.message)
    N = ring.fusion.astype(float)
    v = _perron_vector(N.sum(axis=0))
    v = v / v[ring.unit]
    vv = v @ v
    d = np.array([v @ (N[x] @ v) / vv for x in range(ring.rank)])
    d = 0.5 * (d + d[list(ring.dual)])
    d[ring.unit] = 1.0
    rounded = np.rint(d)
    exact = None
    if np.all(np.abs(d - rounded) <= INTEGRALITY_TOL) and np.all(rounded >= 1):
        exact = tuple(int(x) for x in rounded)
    return DimensionVector(tuple(float(x) for x in d), exact)


@dataclass(frozen=True)
class MultiplicativityReport:
    passed: bool
    witness: tuple[int, int] | None = None
    deviation: float = 0.0


def check_multiplicativity(
    ring: FusionRing, dims: Sequence[float] | DimensionVector | None = None, tol: float = MULTIPLICATIVITY_TOL
) -> MultiplicativityReport:
    """Check ``|d_X d_Y - sum_Z N^Z_{XY} d_Z| <= tol * d_X d_Y`` for all pairs.

    ``dims`` defaults to the ring's own dimensions; passing a reference vector
    lets corrupted fusion data be tested against known dimensions.
    """
    d = np.array(list(ring.dimensions if dims is None else dims), dtype=float)
    if d.shape != (ring.rank,):
        raise MalformedRing("dimension vector length differs from rank")
    outer = np.outer(d, d)
    dev = np.abs(outer - ring.fusion.astype(float) @ d)
    rel = dev / outer
    worst = np.unravel_index(np.argmax(rel), rel.shape)
    if rel[worst] > tol:
        bad = np.argwhere(rel > tol)[0]
        return MultiplicativityReport(False, (int(bad[0]), int(bad[1])), float(dev[tuple(bad)]))
    return MultiplicativityReport(True, None, float(dev.max()))


@dataclass(frozen=True)
class IntegralityVerdict:
    integral: bool
    non_integral: tuple[tuple[str, float], ...] = ()
    integers: tuple[int, ...] | None = None

    def __bool__(self):
        return self.integral


def is_integral(ring: FusionRing) -> IntegralityVerdict:
    """Whether every Frobenius-Perron dimension is an integer (within 1e-6)."""
    dims = ring.dimensions
    bad = tuple(
        (ring.labels[x], d) for x, d in enumerate(dims.values) if abs(d - round(d)) > INTEGRALITY_TOL
    )
    if bad:
        return IntegralityVerdict(False, bad, None)
    return IntegralityVerdict(True, (), tuple(int(round(d)) for d in dims.values))


def _as_vector(ring: FusionRing, obj) -> list[int]:
    if isinstance(obj, (str, int, np.integer)) and not isinstance(obj, bool):
        vec = [0] * ring.rank
        vec[ring.index(obj)] = 1
        return vec
    vec = [int(v) for v in obj]
    if len(vec) != ring.rank:
        raise LabelOutOfRange(f"multiplicity vector has length {len(vec)}, rank is {ring.rank}")
    if any(v < 0 for v in vec):
        raise ValueError("multiplicity vectors must be non-negative")
    return vec


def fuse_vectors(ring: FusionRing, u, v) -> tuple[int, ...]:
    """Multiplicities of ``U (x) V`` for objects given as labels or multiplicity vectors."""
    u = _as_vector(ring, u)
    v = _as_vector(ring, v)
    t = ring.table
    out = [0] * ring.rank
    for x, ux in enumerate(u):
        if not ux:
            continue
        for y, vy in enumerate(v):
            if not vy:
                continue
            c = ux * vy
            row = t[x][y]
            for z in range(ring.rank):
                if row[z]:
                    out[z] += c * row[z]
    return tuple(out)


def tensor_multiplicities(ring: FusionRing, word: Iterable) -> tuple[int, ...]:
    """Multiplicity vector of the ordered tensor product of ``word``.

    Entries of ``word`` are labels, label indices, or multiplicity vectors for
    direct sums.  The product is accumulated left to right from the unit.
    """
    word = list(word)
    if not word:
        raise ValueError("word must be non-empty")
    m = _as_vector(ring, ring.unit)
    for letter in word:
        m = fuse_vectors(ring, m, letter)
    return tuple(m)


def object_power(ring: FusionRing, obj, n: int) -> list[tuple[int, ...]]:
    """Multiplicity vectors of ``obj^{(x) k}`` for ``k = 1..n``."""
    out = []
    m = _as_vector(ring, ring.unit)
    for _ in range(n):
        m = fuse_vectors(ring, m, obj)
        out.append(tuple(m))
    return out


def regular_object(ring: FusionRing) -> tuple[int, ...]:
    """The regular element ``R = sum_X d_X X`` of an integral fusion ring."""
    verdict = is_integral(ring)
    if not verdict.integral:
        label, value = verdict.non_integral[0]
        raise NonIntegralRing(f"{ring.name}: d_{label} = {value:.10g} is not an integer")
    return verdict.integers


def find_isomorphism(a: FusionRing, b: FusionRing) -> tuple[int, ...] | None:
    """Label permutation ``p`` with ``a.fusion[x,y,z] == b.fusion[p x, p y, p z]``, or None.

    Brute force over permutations fixing the unit; intended for small ranks.
    """
    if a.rank != b.rank:
        return None
    others_a = [x for x in range(a.rank) if x != a.unit]
    others_b = [x for x in range(b.rank) if x != b.unit]
    for image in itertools.permutations(others_b):
        p = [0] * a.rank
        p[a.unit] = b.unit
        for x, y in zip(others_a, image):
            p[x] = y
        if np.array_equal(a.fusion, b.fusion[np.ix_(p, p, p)]):
            return tuple(p)
    return None


# --- text format -----------------------------------------------------------


def parse_ring(text: str, fiber_functor: str = "unknown") -> FusionRing:
    """Parse the line-oriented fusion-ring format.

    ::

        ring <name>
        labels <l0> <l1> ...
        unit <index>
        dual <p0> <p1> ...
        N <X> <Y> <Z> <mult>      (sparse, absent entries are 0)

    Lines starting with ``#`` are comments.
    """
    lines = [
        (i, line.split())
        for i, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    header = ["ring", "labels", "unit", "dual"]
    if len(lines) < 4:
        raise RingFormatError("expected ring, labels, unit and dual lines")
    for (lineno, tokens), key in zip(lines[:4], header):
        if tokens[0] != key:
            raise RingFormatError(f"line {lineno}: expected '{key}', got '{tokens[0]}'")
    (_, t_ring), (_, t_labels), (ln_unit, t_unit), (ln_dual, t_dual) = lines[:4]
    if len(t_ring) != 2:
        raise RingFormatError("ring line must be 'ring <name>'")
    name = t_ring[1]
    labels = t_labels[1:]
    r = len(labels)
    if r == 0:
        raise RingFormatError("labels line is empty")
    try:
        if len(t_unit) != 2:
            raise ValueError
        unit = int(t_unit[1])
        dual = [int(t) for t in t_dual[1:]]
    except ValueError:
        raise RingFormatError(f"line {ln_unit}/{ln_dual}: integer expected") from None
    if len(dual) != r:
        raise RingFormatError(f"line {ln_dual}: dual has {len(dual)} entries, expected {r}")

    fusion = np.zeros((r, r, r), dtype=np.int64)
    seen = set()
    for lineno, tokens in lines[4:]:
        if tokens[0] != "N" or len(tokens) != 5:
            raise RingFormatError(f"line {lineno}: expected 'N <X> <Y> <Z> <mult>'")
        try:
            x, y, z, mult = (int(t) for t in tokens[1:])
        except ValueError:
            raise RingFormatError(f"line {lineno}: integer expected") from None
        if not all(0 <= i < r for i in (x, y, z)):
            raise RingFormatError(f"line {lineno}: label index out of range")
        if mult < 0:
            raise RingFormatError(f"line {lineno}: negative multiplicity")
        if (x, y, z) in seen:
            raise RingFormatError(f"line {lineno}: duplicate entry N {x} {y} {z}")
        seen.add((x, y, z))
        fusion[x, y, z] = mult
    return FusionRing(tuple(labels), unit, fusion, tuple(dual), name, fiber_functor)


def load_ring(path: str | Path) -> FusionRing:
    return parse_ring(Path(path).read_text(encoding="utf-8"))


def format_ring(ring: FusionRing) -> str:
    """Serialize to the text format (round-trips through :func:`parse_ring`)."""
    name = "_".join(ring.name.split()) or "ring"
    out = [
        f"ring {name}",
        "labels " + " ".join(ring.labels),
        f"unit {ring.unit}",
        "dual " + " ".join(str(d) for d in ring.dual),
    ]
    for x, y, z in zip(*np.nonzero(ring.fusion)):
        out.append(f"N {x} {y} {z} {ring.fusion[x, y, z]}")
    return "\n".join(out) + "\n"
