"""Verdicts: realizability, fiber-functor status, vacua and gaplessness.

Fiber-functor logic is three-valued.  A non-integral dimension rules a fiber
functor out; a positive answer is only given on catalog provenance (group
rings and representation categories), never inferred from integrality.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .catalog import CatalogEntry, resolve_ring
from .center import CenterAutomorphism, Lagrangian, MetricGroup, anomaly_verdict
from .errors import MetricGroupMismatch
from .fusion_ring import is_integral

__all__ = [
    "FiberFunctorVerdict",
    "RealizabilityReport",
    "StateVerdict",
    "fiber_functor_verdict",
    "vacua_count",
    "lsm_verdict",
    "duality_gapless_verdict",
    "realizability_report",
]


@dataclass(frozen=True)
class FiberFunctorVerdict:
    status: str  # yes | no | unknown
    witness: str | None = None
    dimension: float | None = None
    reason: str = ""


@dataclass(frozen=True)
class RealizabilityReport:
    ring: str
    anyon_chain: bool
    tensor_product: bool
    onsite_tensor_product: str

    def __post_init__(self):
        if self.onsite_tensor_product == "yes" and not self.tensor_product:
            raise ValueError("on-site realization requires integrality")


@dataclass(frozen=True)
class StateVerdict:
    kind: str  # topological | gapless | indeterminate
    reason: str
    vacua_count: int | None = None
    evidence: dict = field(default_factory=dict, hash=False, compare=False)

    def __post_init__(self):
        if self.kind not in ("topological", "gapless", "indeterminate"):
            raise ValueError(f"unknown verdict kind {self.kind!r}")
        if self.kind == "topological" and (self.vacua_count is None or self.vacua_count < 1):
            raise ValueError("a topological verdict needs at least one vacuum")


def fiber_functor_verdict(entry) -> FiberFunctorVerdict:
    entry = resolve_ring(entry)
    ring = entry.ring
    verdict = is_integral(ring)
    if not verdict.integral:
        label, value = verdict.non_integral[0]
        return FiberFunctorVerdict("no", label, value, f"d_{label} = {value:.10g} is not an integer")
    if entry.fiber_functor_flag == "yes":
        return FiberFunctorVerdict("yes", reason=f"{ring.name}: fiber functor known from the catalog")
    return FiberFunctorVerdict("unknown", reason=f"{ring.name} is integral; no fiber functor on record")


def vacua_count(state: Lagrangian, ext: Lagrangian) -> int:
    """Irreducible summands of the induced state: ``|L_state & L_ext|``.

    In a pointed center every simple appears at most once in a Lagrangian,
    so the Hom dimension is the size of the intersection.
    """
    if state.metric != ext.metric:
        raise MetricGroupMismatch("Lagrangians live in different metric groups")
    return len(set(state.elements) & set(ext.elements))


def lsm_verdict(entry) -> StateVerdict:
    """Verdict for a pure symmetric state with the given symmetry."""
    entry = resolve_ring(entry)
    ff = fiber_functor_verdict(entry)
    if ff.status == "no":
        return StateVerdict(
            "gapless",
            f"no fiber functor: d_{ff.witness} ≈ {ff.dimension:.4f}",
            evidence={"witness": ff.witness, "dimension": ff.dimension},
        )
    if ff.status == "unknown":
        return StateVerdict("indeterminate", "fiber-functor status unknown; no obstruction derived, and Morita classes of non-pointed centers are not decided")
    return StateVerdict(
        "topological",
        "unobstructed: the fiber functor gives a rank-one module, a unique gapped symmetric state",
        vacua_count=1,
    )


def duality_gapless_verdict(M: MetricGroup, phi: CenterAutomorphism) -> StateVerdict:
    """Covariant connected symmetric states are gapless when ``phi`` fixes no Lagrangian."""
    verdict = anomaly_verdict(M, phi)
    orbits = [[verdict.lagrangians[i].elements for i in orbit] for orbit in verdict.orbits]
    if verdict.anomalous:
        return StateVerdict(
            "gapless",
            f"anomalous duality: {len(verdict.lagrangians)} Lagrangians, none fixed",
            evidence={"orbits": orbits},
        )
    fixed = [L.elements for L in verdict.fixed]
    return StateVerdict(
        "indeterminate",
        f"duality fixes {len(fixed)} of {len(verdict.lagrangians)} Lagrangians; candidate topological sectors",
        evidence={"orbits": orbits, "fixed": fixed},
    )


def realizability_report(entry) -> RealizabilityReport:
    entry = resolve_ring(entry)
    return RealizabilityReport(
        entry.ring.name,
        True,
        is_integral(entry.ring).integral,
        fiber_functor_verdict(entry).status,
    )
