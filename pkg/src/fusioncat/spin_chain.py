"""Finite combinatorics of fusion spin chains.

* dimensions of the local algebras ``End(X^{(x) k})``;
* the bigraded space ``_X H _Y = Hom(X, R (x) Y)`` of the regular object ``R``
  and the dimension bookkeeping of its tensor-product realization;
* the Kramers-Wannier map on Pauli generators, checked in the symplectic
  representation over GF(2).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

from .errors import LabelOutOfRange, NonIntegralRing, WindowTooSmall
from .fusion_ring import FusionRing, _as_vector, object_power, regular_object

__all__ = [
    "chain_dims",
    "BigradedDims",
    "regular_bigraded",
    "EmbeddingReport",
    "embedding_dim_check",
    "PauliWord",
    "KWPauliVerdict",
    "kw_generators",
    "pauli_kw_check",
]


def chain_dims(ring: FusionRing, obj, n: int) -> list[int]:
    """``dim End(X^{(x) k})`` for ``k = 1..n``.

    ``obj`` is a label or a multiplicity vector (direct sum such as
    ``X_0 + X_1``).  The dimension is the squared norm of the multiplicity
    vector of ``X^{(x) k}``; values are exact Python integers.
    """
    if n < 1:
        raise ValueError("n must be positive")
    vec = _as_vector(ring, obj)
    if not any(vec):
        raise LabelOutOfRange("zero object")
    dual_vec = [vec[ring.dual[x]] for x in range(ring.rank)]
    if dual_vec != vec:
        warnings.warn(f"object {vec} of {ring.name} is not self-dual", stacklevel=2)
    return [sum(m * m for m in mult) for mult in object_power(ring, vec, n)]


@dataclass(frozen=True)
class BigradedDims:
    """``dims[X][Y] = dim(_X H _Y)`` for the regular object, plus on-site dimension ``d``."""

    ring: FusionRing
    dims: tuple[tuple[int, ...], ...]
    onsite_dimension: int


def regular_bigraded(ring: FusionRing) -> BigradedDims:
    """Multiplicity of ``X`` in ``R (x) Y`` for the regular object ``R``.

    Equals ``d_X d_Y`` for integral rings; the on-site Hilbert space dimension
    is ``d = sum_X d_X^2``.
    """
    R = regular_object(ring)
    t = ring.table
    r = ring.rank
    dims = tuple(
        tuple(sum(R[w] * t[w][y][x] for w in range(r)) for y in range(r)) for x in range(r)
    )
    for x in range(r):
        for y in range(r):
            if dims[x][y] != R[x] * R[y]:
                raise NonIntegralRing(
                    f"dim(_{ring.labels[x]} H _{ring.labels[y]}) = {dims[x][y]} != d_X d_Y = {R[x] * R[y]}"
                )
    return BigradedDims(ring, dims, sum(d * d for d in R))


def _matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


@dataclass(frozen=True)
class EmbeddingReport:
    k: int
    power: tuple[tuple[int, ...], ...]
    expected: tuple[tuple[int, ...], ...]
    power_matches: bool
    squared_sum: int
    bound: int

    @property
    def bound_holds(self) -> bool:
        return self.squared_sum <= self.bound

    @property
    def passed(self) -> bool:
        return self.power_matches and self.bound_holds


def embedding_dim_check(ring: FusionRing, k: int) -> EmbeddingReport:
    """Dimension bookkeeping of the spread-one embedding on ``k`` sites.

    Checks ``(D^k)[X][Y] = d_X d_Y d^(k-1)`` for the bigraded matrix ``D`` and
    that ``sum_{X,Y} (d_X d_Y d^(k-1))^2 <= d^(2(k+1))``.
    """
    if k < 1:
        raise ValueError("k must be positive")
    big = regular_bigraded(ring)
    R = regular_object(ring)
    d = big.onsite_dimension
    D = [list(row) for row in big.dims]
    P = D
    for _ in range(k - 1):
        P = _matmul(P, D)
    expected = [[R[x] * R[y] * d ** (k - 1) for y in range(ring.rank)] for x in range(ring.rank)]
    squared = sum(v * v for row in expected for v in row)
    return EmbeddingReport(
        k,
        tuple(map(tuple, P)),
        tuple(map(tuple, expected)),
        P == expected,
        squared,
        d ** (2 * (k + 1)),
    )


@dataclass(frozen=True)
class PauliWord:
    """Pauli operator up to phase: bits ``x`` and ``z`` per site."""

    x: tuple[int, ...]
    z: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.x)

    @classmethod
    def from_sites(cls, n: int, xs: Sequence[int] = (), zs: Sequence[int] = ()) -> "PauliWord":
        x = [0] * n
        z = [0] * n
        for i in xs:
            x[i] ^= 1
        for i in zs:
            z[i] ^= 1
        return cls(tuple(x), tuple(z))

    def symplectic(self, other: "PauliWord") -> int:
        """0 if the words commute, 1 if they anticommute."""
        return sum(a * d + b * c for a, b, c, d in zip(self.x, self.z, other.x, other.z)) % 2

    def __str__(self):
        out = []
        for i, (a, b) in enumerate(zip(self.x, self.z)):
            if a or b:
                letter = "Y" if a and b else ("X" if a else "Z")
                out.append(f"{letter}{i}")
        return " ".join(out) or "I"


def kw_generators(n: int) -> list[tuple[str, PauliWord, PauliWord | None]]:
    """Generators on sites ``0..n-1`` with their Kramers-Wannier images.

    ``X_i -> Z_{i-1} Z_i`` and ``Z_i Z_{i+1} -> X_i``; an image leaving the
    window is ``None``.
    """
    gens = []
    for i in range(n):
        image = PauliWord.from_sites(n, zs=(i - 1, i)) if i >= 1 else None
        gens.append((f"X{i}", PauliWord.from_sites(n, xs=(i,)), image))
    for i in range(n - 1):
        gens.append((f"Z{i}Z{i + 1}", PauliWord.from_sites(n, zs=(i, i + 1)), PauliWord.from_sites(n, xs=(i,))))
    return gens


@dataclass(frozen=True)
class KWPauliVerdict:
    n: int
    passed: bool
    surviving: int
    pairs_checked: int
    failures: tuple[tuple[str, str], ...] = ()


def pauli_kw_check(n: int) -> KWPauliVerdict:
    """Check the KW map preserves all commutation relations among surviving generators."""
    if n < 3:
        raise WindowTooSmall(f"window of {n} sites is too small (need n >= 3)")
    gens = [(name, g, img) for name, g, img in kw_generators(n) if img is not None]
    failures = []
    pairs = 0
    for i, (na, a, ia) in enumerate(gens):
        for nb, b, ib in gens[i + 1:]:
            pairs += 1
            if a.symplectic(b) != ia.symplectic(ib):
                failures.append((na, nb))
    return KWPauliVerdict(n, not failures, len(gens), pairs, tuple(failures))
