"""The symmetry hypergroup: convex combinations of channels ``lambda_X``.

Composition on vertices is

    lambda_X lambda_Y = sum_Z (d_Z / (d_X d_Y)) N^Z_{XY} lambda_Z

and extends bilinearly.  For integral rings the coefficients are kept as exact
fractions; otherwise doubles are used and comparisons take a tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import RingMismatch
from .fusion_ring import FusionRing, is_integral

__all__ = [
    "ChannelCombo",
    "vertex",
    "combo",
    "lambda_compose",
    "combo_compose",
    "conditional_expectation",
    "composition_table",
]

SUM_TOL = 1e-12


def _exact_dims(ring: FusionRing):
    verdict = is_integral(ring)
    return verdict.integers if verdict.integral else None


@dataclass(frozen=True, eq=False)
class ChannelCombo:
    """Point of the simplex spanned by ``lambda_X``, one coefficient per label."""

    ring: FusionRing
    coefficients: tuple[float, ...]
    exact: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        if len(self.coefficients) != self.ring.rank:
            raise ValueError("one coefficient per label required")
        if any(c < -SUM_TOL for c in self.coefficients):
            raise ValueError("coefficients must be non-negative")
        if self.exact is not None:
            if sum(self.exact) != 1:
                raise ValueError(f"exact coefficients sum to {sum(self.exact)}, not 1")
        elif abs(sum(self.coefficients) - 1.0) > SUM_TOL:
            raise ValueError(f"coefficients sum to {sum(self.coefficients)!r}, not 1")

    def __getitem__(self, label) -> float:
        return self.coefficients[self.ring.index(label)]

    def as_dict(self) -> dict[str, float]:
        return {l: c for l, c in zip(self.ring.labels, self.coefficients) if c}

    def max_difference(self, other: "ChannelCombo") -> float:
        _same_ring(self, other)
        return max(abs(a - b) for a, b in zip(self.coefficients, other.coefficients))

    def isclose(self, other: "ChannelCombo", tol: float = 1e-10) -> bool:
        return self.max_difference(other) <= tol

    def __eq__(self, other):
        if not isinstance(other, ChannelCombo):
            return NotImplemented
        if self.ring != other.ring:
            return False
        if self.exact is not None and other.exact is not None:
            return self.exact == other.exact
        return self.coefficients == other.coefficients

    def __repr__(self):
        terms = " + ".join(f"{c:.6g}*L[{l}]" for l, c in self.as_dict().items())
        return f"ChannelCombo({terms})"


def _make(ring: FusionRing, values, exact: bool) -> ChannelCombo:
    if exact:
        values = tuple(Fraction(v) for v in values)
        return ChannelCombo(ring, tuple(float(v) for v in values), values)
    return ChannelCombo(ring, tuple(float(v) for v in values))


def vertex(ring: FusionRing, label) -> ChannelCombo:
    """The channel ``lambda_X`` itself."""
    x = ring.index(label)
    values = [0] * ring.rank
    values[x] = 1
    return _make(ring, values, _exact_dims(ring) is not None)


def combo(ring: FusionRing, weights: Mapping) -> ChannelCombo:
    """Convex combination from a ``{label: weight}`` mapping."""
    values = [0] * ring.rank
    for label, w in weights.items():
        values[ring.index(label)] += w
    exact = _exact_dims(ring) is not None and all(isinstance(w, (int, Fraction)) for w in weights.values())
    return _make(ring, values, exact)


def _structure(ring: FusionRing, x: int, y: int, dims, exact_dims):
    table = ring.table[x][y]
    if exact_dims is not None:
        denom = exact_dims[x] * exact_dims[y]
        return [Fraction(exact_dims[z] * table[z], denom) for z in range(ring.rank)]
    return [dims[z] * table[z] / (dims[x] * dims[y]) for z in range(ring.rank)]


def lambda_compose(ring: FusionRing, x, y) -> ChannelCombo:
    """``lambda_X o lambda_Y`` with coefficient ``d_Z N^Z_{XY} / (d_X d_Y)`` at ``Z``."""
    x, y = ring.index(x), ring.index(y)
    exact_dims = _exact_dims(ring)
    values = _structure(ring, x, y, ring.dimensions.values, exact_dims)
    return _make(ring, values, exact_dims is not None)


def _same_ring(a: ChannelCombo, b: ChannelCombo):
    if a.ring is not b.ring and a.ring != b.ring:
        raise RingMismatch(f"cannot compose channels of {a.ring.name} and {b.ring.name}")


def combo_compose(a: ChannelCombo, b: ChannelCombo) -> ChannelCombo:
    """Bilinear extension of :func:`lambda_compose`."""
    _same_ring(a, b)
    ring = a.ring
    exact = a.exact is not None and b.exact is not None
    exact_dims = _exact_dims(ring) if exact else None
    exact = exact_dims is not None
    ca = a.exact if exact else a.coefficients
    cb = b.exact if exact else b.coefficients
    dims = ring.dimensions.values
    out = [Fraction(0) if exact else 0.0] * ring.rank
    for x, wx in enumerate(ca):
        if not wx:
            continue
        for y, wy in enumerate(cb):
            if not wy:
                continue
            w = wx * wy
            for z, s in enumerate(_structure(ring, x, y, dims, exact_dims)):
                if s:
                    out[z] += w * s
    return _make(ring, out, exact)


def conditional_expectation(ring: FusionRing) -> ChannelCombo:
    """``E = sum_X (d_X^2 / Dim) lambda_X``, the absorbing idempotent."""
    exact_dims = _exact_dims(ring)
    if exact_dims is not None:
        total = sum(d * d for d in exact_dims)
        return _make(ring, [Fraction(d * d, total) for d in exact_dims], True)
    dims = ring.dimensions.values
    total = sum(d * d for d in dims)
    return _make(ring, [d * d / total for d in dims], False)


def composition_table(ring: FusionRing) -> dict[tuple[str, str], ChannelCombo]:
    return {
        (ring.labels[x], ring.labels[y]): lambda_compose(ring, x, y)
        for x in range(ring.rank)
        for y in range(ring.rank)
    }
