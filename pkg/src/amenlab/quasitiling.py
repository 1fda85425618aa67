"""Constructive quasi-tiling: pick tile scales from a window family, then
greedily cover a target set by almost-disjoint tile translates.

The classical argument asks for k scales with k the smallest integer
satisfying (1-eps/2)^k <= eps, each scale (eps/4)-invariant under the one
below it.  Box families grow those scales geometrically (each level is
about 4/eps times the last), so a literal schedule explodes past any desk
budget for small eps.  The planner here grows scales only while the next
level keeps the usable threshold inside a finite horizon and stops early
otherwise; the four covering assertions are then verified exactly on every
produced cover rather than assumed from the schedule.  Because the box
families start at a singleton tile, the greedy pass at the bottom scale
mops up every remaining point, so the covers are exact and the assertions
hold with room to spare even when fewer scales than the classical k fit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .folner import FolnerSequence, product_size
from .groups import translate_right

DEFAULT_HORIZON = 64


class PlanningError(ValueError):
    """The window family cannot supply usable tile scales."""


@dataclass(frozen=True)
class TilingPlan:
    """Tile scales (indices into a window family), threshold, and target eps."""

    eps: Fraction
    scales: tuple
    threshold: int

    def __post_init__(self):
        object.__setattr__(self, "eps", Fraction(self.eps))
        object.__setattr__(self, "scales", tuple(self.scales))
        if not (0 < self.eps < 1):
            raise ValueError("eps must be in (0, 1)")
        if not self.scales:
            raise ValueError("a plan needs at least one scale")
        if any(b <= a for a, b in zip(self.scales, self.scales[1:])):
            raise ValueError("scales must be strictly increasing")


@dataclass(frozen=True)
class AssertionCheck:
    holds: bool
    lhs: Fraction
    rhs: Fraction


@dataclass(frozen=True)
class CoverReport:
    """Exact rational evaluation of the four covering assertions."""

    tiles_inside: AssertionCheck
    residue_small: AssertionCheck
    mass_vs_covered: AssertionCheck
    mass_vs_total: AssertionCheck

    @property
    def all_hold(self) -> bool:
        return (
            self.tiles_inside.holds
            and self.residue_small.holds
            and self.mass_vs_covered.holds
            and self.mass_vs_total.holds
        )


@dataclass(frozen=True)
class Cover:
    plan: TilingPlan
    scale_centers: dict  # scale index -> tuple of centers
    covered: frozenset
    report: Optional[CoverReport] = None


def scale_count(eps) -> int:
    """Smallest k with (1-eps/2)^k <= eps, by exact rational arithmetic."""
    eps = Fraction(eps)
    if not (0 < eps < 1):
        raise ValueError("eps must be in (0, 1)")
    shrink = 1 - eps / 2
    k = 1
    power = shrink
    while power > eps:
        power *= shrink
        k += 1
    return k


def _invariance_defect(seq: FolnerSequence, K_index: int, F_index: int) -> Fraction:
    """|F_K * F_F \\ F_F| / |F_F|, exact."""
    group = seq.group
    K = seq.subset(K_index)
    F = seq.subset(F_index)
    if group.identity in frozenset(K):
        # K contains 1, so KF contains F and the difference is |KF| - |F|
        return Fraction(product_size(group, K, F) - len(F), len(F))
    Fset = frozenset(F)
    grown = set()
    for g in K:
        grown.update(group.multiply(g, f) for f in F)
    return Fraction(len(grown - Fset), len(Fset))


def plan(seq: FolnerSequence, eps, horizon: int = DEFAULT_HORIZON) -> TilingPlan:
    """Choose tile scales and a usable threshold inside the horizon.

    Scales start at the family's first window and extend while (a) the
    classical scale count has not been reached, (b) a next index exists at
    which the pairwise (eps/4)-invariance holds, and (c) that index still
    leaves three coverable indices above its threshold inside the horizon.
    The returned threshold N is the largest index <= horizon at which
    (eps/4)-invariance under the top tile fails (so every examined i > N
    passes; indices beyond the horizon are not certified).
    """
    eps = Fraction(eps)
    if not (0 < eps < 1):
        raise ValueError("eps must be in (0, 1)")
    if horizon < seq.start:
        raise PlanningError("horizon lies before the family's first index")
    tol = eps / 4
    goal = scale_count(eps)
    scales = [seq.start]

    def threshold_for(j: int) -> int:
        # largest failing index; everything above it up to the horizon passes
        for i in range(horizon, j, -1):
            if _invariance_defect(seq, j, i) > tol:
                return i
        return j

    threshold = threshold_for(scales[-1])
    while len(scales) < goal:
        nxt = None
        for j in range(scales[-1] + 1, horizon + 1):
            if _invariance_defect(seq, scales[-1], j) <= tol:
                nxt = j
                break
        if nxt is None:
            break
        n_next = threshold_for(nxt)
        if n_next > horizon - 3:
            break
        scales.append(nxt)
        threshold = n_next
    return TilingPlan(eps, tuple(scales), threshold)


def cover(T, tiling: TilingPlan, seq: FolnerSequence) -> Cover:
    """Greedy cover of T, largest scale first.

    Candidate centers are scanned in increasing element order; a center is
    accepted iff its tile lies inside T and at least a (1-eps/2) fraction
    of it is still uncovered.  The report of the four assertions is
    attached (covers of sets outside the plan's certified range may fail
    assertion 2; they are reported, not rejected).
    """
    group = seq.group
    Tset = frozenset(T)
    candidates = sorted(Tset)
    covered: set = set()
    scale_centers: dict = {}
    for j in reversed(tiling.scales):
        tile = seq.subset(j)
        need = (1 - tiling.eps / 2) * len(tile)
        centers = []
        for c in candidates:
            cells = translate_right(group, tile, c)
            if not cells <= Tset:
                continue
            fresh = sum(1 for x in cells if x not in covered)
            if fresh >= need:
                centers.append(c)
                covered.update(cells)
        scale_centers[j] = tuple(centers)
    partial = Cover(tiling, scale_centers, frozenset(covered))
    report = verify_cover(T, tiling, partial, seq)
    return Cover(tiling, scale_centers, frozenset(covered), report)


def verify_cover(T, tiling: TilingPlan, cov: Cover, seq: FolnerSequence) -> CoverReport:
    """Recompute the four assertions from the centers alone, exactly."""
    group = seq.group
    Tset = frozenset(T)
    eps = tiling.eps
    union: set = set()
    mass = 0
    outside = 0
    for j, centers in cov.scale_centers.items():
        tile = seq.subset(j)
        for c in centers:
            cells = translate_right(group, tile, c)
            outside += len(cells - Tset)
            union.update(cells)
            mass += len(tile)
    covered_inside = len(union & Tset)
    residue = len(Tset) - covered_inside
    return CoverReport(
        tiles_inside=AssertionCheck(outside == 0, Fraction(outside), Fraction(0)),
        residue_small=AssertionCheck(
            Fraction(residue) <= eps * len(Tset), Fraction(residue), eps * len(Tset)
        ),
        mass_vs_covered=AssertionCheck(
            Fraction(mass) <= (1 + eps) * len(union),
            Fraction(mass),
            (1 + eps) * len(union),
        ),
        mass_vs_total=AssertionCheck(
            Fraction(mass) <= (1 + eps) * len(Tset),
            Fraction(mass),
            (1 + eps) * len(Tset),
        ),
    )
