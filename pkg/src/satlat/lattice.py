"""Union/intersection calculus of closed subcategories at ideal level.

Closed subcategories of the module category correspond to two-sided
ideals, order-reversed: meeting subcategories sums their ideals, their
union intersects them.  A subcategory may be carried by a quantum-space
ideal handle or by a finite-dimensional LinIdeal; meet and join dispatch
on whichever representation both operands share.  The Y-level operations
additionally saturate and re-test stability, reporting whether the
lattice operation stayed inside the Y-closed world.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SideMismatch
from .findim import LinIdeal
from .findim import intersect_ideals as _lin_intersect
from .findim import sum_ideals as _lin_sum
from .idealops import (
    EqualityVerdict,
    IdealHandle,
    Side,
    equal,
    intersect,
    sum_ideals,
)
from .torsion import (
    DEFAULT_CHAIN_LENGTH,
    DEFAULT_DEGREE,
    SaturationResult,
    StabilityVerdict,
    TorsionTheory,
    is_essentially_stable,
    saturate,
)


@dataclass(frozen=True)
class ClosedSubcat:
    """A closed subcategory Mod-(R/K), carried by its defining ideal.

    The ideal is either a two-sided exact IdealHandle (quantum space) or a
    two-sided LinIdeal (finite-dimensional algebra).
    """

    ideal: IdealHandle | LinIdeal

    def __post_init__(self):
        if isinstance(self.ideal, LinIdeal):
            if not self.ideal.two_sided:
                raise SideMismatch("a closed subcategory needs a two-sided ideal")
            return
        if self.ideal.side is not Side.TWO_SIDED:
            raise SideMismatch("a closed subcategory needs a two-sided ideal")
        if not self.ideal.exactness.is_exact:
            raise SideMismatch("a closed subcategory needs an exact ideal")

    @property
    def ring(self):
        if isinstance(self.ideal, LinIdeal):
            return self.ideal.algebra
        return self.ideal.ring

    def __repr__(self):
        return f"ClosedSubcat({self.ideal!r})"


def _both_lin(z1: ClosedSubcat, z2: ClosedSubcat) -> bool:
    a, b = isinstance(z1.ideal, LinIdeal), isinstance(z2.ideal, LinIdeal)
    if a != b:
        raise SideMismatch("cannot mix quantum and finite-dimensional subcategories")
    return a


def meet(z1: ClosedSubcat, z2: ClosedSubcat) -> ClosedSubcat:
    """Intersection of subcategories: sum of defining ideals."""
    if _both_lin(z1, z2):
        return ClosedSubcat(_lin_sum(z1.ideal, z2.ideal))
    return ClosedSubcat(sum_ideals(z1.ideal, z2.ideal))


def join(z1: ClosedSubcat, z2: ClosedSubcat) -> ClosedSubcat:
    """Union of subcategories: intersection of defining ideals."""
    if _both_lin(z1, z2):
        return ClosedSubcat(_lin_intersect(z1.ideal, z2.ideal))
    return ClosedSubcat(intersect(z1.ideal, z2.ideal))


@dataclass(frozen=True)
class DistributivityVerdict:
    holds: bool
    side: str  # which law was tested when it failed; "both" when it holds
    lhs: IdealHandle | None = None
    rhs: IdealHandle | None = None
    comparison: EqualityVerdict | None = None

    def as_json(self):
        out = {"distributive": self.holds, "law": self.side}
        if self.comparison is not None:
            out["comparison"] = self.comparison.as_json()
            if self.lhs is not None:
                out["lhs"] = [str(g) for g in self.lhs.basis]
                out["rhs"] = [str(g) for g in self.rhs.basis]
        return out


def distributivity_check(
    k1: IdealHandle, k2: IdealHandle, k3: IdealHandle
) -> DistributivityVerdict:
    """Test both distributive laws on the ideal lattice, with a witness.

    Checks K1 meet (K2 + K3) = (K1 meet K2) + (K1 meet K3) first and then
    the dual K1 + (K2 meet K3) = (K1 + K2) meet (K1 + K3); the first
    failure is returned with the order-minimal witness from the ideal
    comparison.  (Distributivity is self-dual, so on a genuinely
    non-distributive triple both laws break; the intersection form is the
    one whose witness is reported.)
    """
    lhs1 = intersect(k1, sum_ideals(k2, k3))
    rhs1 = sum_ideals(intersect(k1, k2), intersect(k1, k3))
    v1 = equal(lhs1, rhs1)
    if not v1.equal:
        return DistributivityVerdict(False, "intersection-over-sum", lhs1, rhs1, v1)
    lhs2 = sum_ideals(k1, intersect(k2, k3))
    rhs2 = intersect(sum_ideals(k1, k2), sum_ideals(k1, k3))
    v2 = equal(lhs2, rhs2)
    if not v2.equal:
        return DistributivityVerdict(False, "sum-over-intersection", lhs2, rhs2, v2)
    return DistributivityVerdict(True, "both")


@dataclass
class YLatticeResult:
    """Ideal of the Y-level meet/join plus the stability the result carries."""

    ideal: IdealHandle
    saturation: SaturationResult
    stability: StabilityVerdict | None

    def as_json(self):
        out = {
            "ideal": [str(g) for g in self.ideal.basis],
            "saturation": self.saturation.as_json(),
        }
        if self.stability is not None:
            out["stability"] = self.stability.as_json()
        return out


def y_meet(
    z1: ClosedSubcat,
    z2: ClosedSubcat,
    theory: TorsionTheory,
    length: int = DEFAULT_CHAIN_LENGTH,
    degree: int = DEFAULT_DEGREE,
) -> YLatticeResult:
    """Meet inside the quotient category: saturation of the ideal sum."""
    total = sum_ideals(z1.ideal, z2.ideal)
    sat = saturate(total, theory, degree)
    return YLatticeResult(sat.ideal, sat, None)


def y_join(
    z1: ClosedSubcat,
    z2: ClosedSubcat,
    theory: TorsionTheory,
    length: int = DEFAULT_CHAIN_LENGTH,
    degree: int = DEFAULT_DEGREE,
) -> YLatticeResult:
    """Join inside the quotient category, with its stability verdict.

    The union ideal is the intersection; the verdict records whether the
    union remained Y-essentially stable (the failure mode this operation watches for), and
    the returned ideal is the saturation of the union ideal.
    """
    union = intersect(z1.ideal, z2.ideal)
    stability = is_essentially_stable(union, theory, length, degree)
    sat = saturate(union, theory, degree)
    return YLatticeResult(sat.ideal, sat, stability)
