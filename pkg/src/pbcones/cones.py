"""Curve cones, Kahler cones and restricted Kahler-cone ratios.

For a completely decomposable bundle the curve cone of the
projectivization is spanned by the fiber line l and the section
C_1 = a_1*l + eta of a minimal-degree summand (degree a_1), so by the
Kleiman criterion a class x*h + y*F is Kahler exactly when x > 0 and
a_1*x + y > 0.  For a semistable bundle over positive genus the Kahler
cone is the whole forward cone.

The restricted-ratio machinery answers: over the projectivization of
V + O, how small can the ratio of the restriction to the subbundle
divisor P(V) get while the ambient class stays Kahler?  The infimum is
a function of deg V, the rank and the genus only, and explicit model
bundles realize it.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Union

from .bundles import (
    BundleSpec,
    Decomposable,
    SemiStable,
    SurfaceGenus,
    degree,
    rank,
    slope,
)
from .cohomology import (
    BundleContext,
    Convention,
    CurveClass,
    DivisorClass,
    line_class,
    topological_residue,
    topological_type,
)

__all__ = [
    "Exactness",
    "ConeDescription",
    "SemistablePlusLine",
    "AmbientBundle",
    "RestrictedRatioResult",
    "NoSuchClassError",
    "bundle_context",
    "balanced_form",
    "plus_trivial_line",
    "curve_cone_decomposable",
    "kahler_cone",
    "kahler_membership",
    "kahler_cone_ratio",
    "min_symplectic_ratio",
    "multisection_degree_bound",
    "matching_bundle",
    "restricted_ratio",
    "kahler_class_for_ratio",
    "restrict_to_divisor",
]


class NoSuchClassError(ValueError):
    """No Kahler class achieves the requested restricted ratio."""


class Exactness(str, Enum):
    EXACT = "exact"
    SUFFICIENT_ONLY = "sufficient-only"


@dataclass(frozen=True)
class ConeDescription:
    """A cone cut out by x > 0 and boundary_slope * x + y > 0.

    For curve cones the extremal rays are listed; the same inequality pair
    describes the dual Kahler cone.  SUFFICIENT_ONLY marks cones where the
    inequality is known to imply membership but the exact boundary is not
    established.
    """

    rays: tuple[CurveClass, ...]
    exactness: Exactness
    boundary_slope: Fraction
    note: str = ""

    def contains(self, u: DivisorClass) -> bool:
        return u.x > 0 and self.boundary_slope * u.x + u.y > 0


@dataclass(frozen=True)
class SemistablePlusLine:
    """The direct sum of an opaque semistable bundle and one line bundle.

    Needed for the total space of the model triple P(V + O) when V is
    semistable: the sum is in general neither a sum of lines nor semistable,
    but its Kahler cone has a known sufficient half-plane as long as the
    line slope is at least the slope of V.
    """

    semistable: SemiStable
    line_degree: int

    @property
    def base(self) -> SurfaceGenus:
        return self.semistable.base


AmbientBundle = Union[Decomposable, SemistablePlusLine]


def _total_rank(b: BundleSpec | SemistablePlusLine) -> int:
    if isinstance(b, SemistablePlusLine):
        return b.semistable.rank + 1
    return rank(b)


def _total_degree(b: BundleSpec | SemistablePlusLine) -> int:
    if isinstance(b, SemistablePlusLine):
        return b.semistable.degree + b.line_degree
    return degree(b)


def bundle_context(b: BundleSpec | SemistablePlusLine,
                   convention: Convention = Convention.QUOTIENT) -> BundleContext:
    return BundleContext(_total_rank(b), _total_degree(b), convention, b.base)


def balanced_form(b: SemiStable) -> Decomposable:
    """The balanced line-bundle splitting of a genus-0 semistable bundle."""
    if b.base.g != 0:
        raise ValueError("balanced splitting only applies over genus 0")
    a = b.degree // b.rank
    return Decomposable((a,) * b.rank, b.base)


def plus_trivial_line(b: BundleSpec) -> AmbientBundle:
    """The bundle V + O modeling the total space of the blow-down triple."""
    if isinstance(b, Decomposable):
        return Decomposable(b.degrees + (0,), b.base)
    if b.base.g == 0:
        return Decomposable(balanced_form(b).degrees + (0,), b.base)
    return SemistablePlusLine(b, 0)


def curve_cone_decomposable(b: BundleSpec) -> ConeDescription:
    """Extremal rays of the curve cone of the projectivization of b.

    Decomposable: the cone is spanned by l and a_1*l + eta where a_1 is
    the minimal summand degree.  Every m-section comes from a quotient
    line bundle of the m-th symmetric power, whose degree is at least
    m*a_1 because all symmetric-power summands have degree >= m*a_1; the
    minimal summand's section attains the bound.

    Semistable over positive genus: only the l ray is pinned down, but the
    Kahler cone is exactly the forward cone, which the description records.
    Genus-0 semistable bundles are balanced splittings and are handled as
    such.
    """
    if isinstance(b, SemiStable):
        if b.base.g == 0:
            return curve_cone_decomposable(balanced_form(b))
        ctx = bundle_context(b)
        return ConeDescription(
            rays=(line_class(ctx),),
            exactness=Exactness.EXACT,
            boundary_slope=slope(b),
            note="Kahler cone equals the forward cone",
        )
    ctx = bundle_context(b)
    a1 = min(b.degrees)
    return ConeDescription(
        rays=(line_class(ctx), CurveClass(a1, 1, ctx)),
        exactness=Exactness.EXACT,
        boundary_slope=Fraction(a1),
    )


def kahler_cone(b: BundleSpec | SemistablePlusLine) -> ConeDescription:
    """The Kahler cone of the projectivization, as an inequality pair.

    For a semistable-plus-line sum with line slope >= bundle slope, every
    quotient line bundle of every symmetric power has degree at least
    m * slope(V), so the half-plane y/x > -slope(V) consists of Kahler
    classes; the exact boundary is not claimed.
    """
    if isinstance(b, SemistablePlusLine):
        v = b.semistable
        if Fraction(b.line_degree) < slope(v):
            raise ValueError(
                "Kahler cone unknown: the line summand slope is below the "
                "semistable slope"
            )
        ctx = bundle_context(b)
        return ConeDescription(
            rays=(line_class(ctx),),
            exactness=Exactness.SUFFICIENT_ONLY,
            boundary_slope=slope(v),
            note="half-plane sufficient for Kahler; exact boundary not claimed",
        )
    return curve_cone_decomposable(b)


def kahler_membership(u: DivisorClass, b: BundleSpec | SemistablePlusLine) -> bool:
    """Whether u is a Kahler class on the projectivization of b.

    Exact for decomposable bundles and for semistable bundles over
    positive genus; for semistable-plus-line sums the test is the known
    sufficient half-plane, so False may mean unknown.
    """
    if u.ctx.convention is not Convention.QUOTIENT:
        raise ValueError("Kahler membership is computed in the quotient convention")
    if (u.ctx.rank != _total_rank(b) or u.ctx.degree != _total_degree(b)
            or u.ctx.genus != b.base):
        raise ValueError(
            f"class context (rank {u.ctx.rank}, degree {u.ctx.degree}, "
            f"genus {u.ctx.genus.g}) does not match the bundle "
            f"(rank {_total_rank(b)}, degree {_total_degree(b)}, genus {b.base.g})"
        )
    return kahler_cone(b).contains(u)


def kahler_cone_ratio(b: BundleSpec) -> Fraction:
    """Infimum of the ratio over the Kahler cone (not attained).

    For a decomposable bundle with degrees a_j the ratio rewrites as
    sum(a_j - a_1) + n*(a_1*x + y)/x, so the infimum over the cone
    a_1*x + y > 0 is sum(a_j - a_1).  Semistable bundles give 0.
    """
    if isinstance(b, SemiStable):
        if b.base.g == 0:
            b = balanced_form(b)
        else:
            return Fraction(0)
    a1 = min(b.degrees)
    return Fraction(sum(a - a1 for a in b.degrees))


def min_symplectic_ratio(ctx: BundleContext) -> Fraction:
    """Infimum of ratios over all fibred symplectic forms on the bundle type.

    Over positive genus every positive ratio occurs (semistable complex
    structures push the Kahler ratio to 0); over genus 0 the infimum is
    the topological type, realized by Kahler cones of balanced-as-possible
    splittings and not beaten by any almost standard form.
    """
    if ctx.genus.g > 0:
        return Fraction(0)
    return Fraction(topological_type(ctx))


def multisection_degree_bound(b: BundleSpec, m: int) -> int:
    """Lower bound m*a_1 for <hyperplane, [Z]> over all m-sections Z."""
    if isinstance(b, SemiStable):
        raise ValueError("multisection bound needs explicit summand degrees")
    if m < 1:
        raise ValueError(f"multisection degree must be >= 1, got {m}")
    return m * min(b.degrees)


def matching_bundle(alpha: int, n: int, genus: SurfaceGenus) -> BundleSpec:
    """Model bundle V of rank n and degree alpha minimizing the restricted ratio.

    Negative alpha over positive genus: any semistable bundle works.
    Otherwise: split alpha = q*n + t with 0 <= t <= n-1 and take degrees
    q repeated n-t times and q+1 repeated t times (for alpha >= 0 this is
    the twist of a partly-trivial sum by degree q).
    """
    if n < 1:
        raise ValueError(f"rank must be positive, got {n}")
    if alpha < 0 and genus.g > 0:
        return SemiStable(n, alpha, genus)
    q, t = divmod(alpha, n)
    return Decomposable((q,) * (n - t) + (q + 1,) * t, genus)


@dataclass(frozen=True)
class RestrictedRatioResult:
    """Infimum of restriction ratios over ambient Kahler classes on P(V + O)."""

    value: Fraction
    achieving_bundle: BundleSpec
    attained: bool = False


def restricted_ratio(alpha: int, n: int, genus: SurfaceGenus) -> RestrictedRatioResult:
    """Least ratio on the divisor P(V), deg V = alpha, forced by an ambient
    Kahler class on P(V + O).

    Over positive genus the answer is max(0, alpha): for alpha < 0 a
    semistable V puts the whole forward half-plane y/x > -alpha/n in the
    ambient Kahler cone, and for alpha >= 0 the trivial summand's section
    caps the cone at y > 0, leaving restriction ratios above alpha.  Over
    genus 0 the answer is max(t, alpha) with t = alpha mod n, coming from
    the balanced-as-possible splitting.  The infimum is never attained.
    """
    if n < 1:
        raise ValueError(f"rank must be positive, got {n}")
    if genus.g > 0:
        value = Fraction(max(0, alpha))
    else:
        value = Fraction(max(topological_residue(alpha, n), alpha))
    return RestrictedRatioResult(value, matching_bundle(alpha, n, genus))


def restrict_to_divisor(u: DivisorClass) -> DivisorClass:
    """Restrict a class on P(V + O) to the subbundle divisor P(V).

    The hyperplane class restricts to the hyperplane class, so the
    coordinates survive while the rank drops by one; the degree is
    unchanged since the dropped summand is trivial.
    """
    ctx = u.ctx
    if ctx.rank < 2:
        raise ValueError("nothing to restrict: ambient rank must be at least 2")
    return DivisorClass(u.x, u.y, BundleContext(ctx.rank - 1, ctx.degree, ctx.convention, ctx.genus))


def kahler_class_for_ratio(alpha: int, n: int, genus: SurfaceGenus,
                           rho0: Fraction | int) -> DivisorClass:
    """A Kahler class on P(V + O) whose restriction to P(V) has ratio rho0.

    V is the matching model bundle of degree alpha.  Solving
    alpha + n*(y/x) = rho0 with x = n * denominator(rho0) gives integer
    coordinates; the class is Kahler exactly when rho0 exceeds the
    restricted-ratio infimum, and the failure below certifies that the
    infimum is strict.
    """
    rho0 = Fraction(rho0)
    result = restricted_ratio(alpha, n, genus)
    if rho0 <= result.value:
        raise NoSuchClassError(
            f"no Kahler class restricts to ratio {rho0}: the infimum over "
            f"P(V + O) is {result.value} and is not attained"
        )
    den = rho0.denominator
    u = DivisorClass(n * den, (rho0 - alpha).numerator,
                     BundleContext(n + 1, alpha, Convention.QUOTIENT, genus))
    ambient = plus_trivial_line(result.achieving_bundle)
    if not kahler_membership(u, ambient):
        raise AssertionError("constructed class left the Kahler cone")
    return u
