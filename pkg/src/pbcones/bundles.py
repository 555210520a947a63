"""Complex vector bundles over a closed oriented surface.

Only the data that survives projectivization is kept: the genus of the
base, and either an explicit multiset of line-bundle degrees (completely
decomposable bundles) or an opaque rank/degree pair for a semistable
bundle.  Over genus 0 every bundle splits into line bundles, so a
semistable bundle exists there only when the rank divides the degree
(the balanced split O(a) + ... + O(a)).

All arithmetic is exact: degrees are integers, slopes are fractions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Union

__all__ = [
    "SurfaceGenus",
    "Decomposable",
    "SemiStable",
    "BundleSpec",
    "SlopeValue",
    "decomposable",
    "semi_stable",
    "rank",
    "degree",
    "slope",
    "dual",
    "twist",
    "sym_power",
    "sym_rank_degree",
    "is_semistable",
    "quotient_line_degree_bounds",
    "semistable_exists",
]

SlopeValue = Fraction


@dataclass(frozen=True)
class SurfaceGenus:
    """Genus of the closed oriented base surface."""

    g: int

    def __post_init__(self) -> None:
        if self.g < 0:
            raise ValueError(f"genus must be non-negative, got {self.g}")


@dataclass(frozen=True)
class Decomposable:
    """A direct sum of line bundles, stored as a sorted degree multiset."""

    degrees: tuple[int, ...]
    base: SurfaceGenus

    def __post_init__(self) -> None:
        if not self.degrees:
            raise ValueError("a decomposable bundle needs at least one summand")
        object.__setattr__(self, "degrees", tuple(sorted(self.degrees)))


@dataclass(frozen=True)
class SemiStable:
    """A semistable bundle known only through its rank and degree.

    The summand structure is deliberately opaque; operations that need
    line-bundle summands reject this variant.
    """

    rank: int
    degree: int
    base: SurfaceGenus

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise ValueError(f"rank must be positive, got {self.rank}")
        if self.base.g == 0 and self.degree % self.rank != 0:
            raise ValueError(
                "over genus 0 every bundle splits; a semistable bundle of rank "
                f"{self.rank} and degree {self.degree} does not exist"
            )


BundleSpec = Union[Decomposable, SemiStable]


def decomposable(*degrees: int, genus: int = 0) -> Decomposable:
    return Decomposable(tuple(degrees), SurfaceGenus(genus))


def semi_stable(rank: int, degree: int, genus: int) -> SemiStable:
    return SemiStable(rank, degree, SurfaceGenus(genus))


def rank(b: BundleSpec) -> int:
    if isinstance(b, Decomposable):
        return len(b.degrees)
    return b.rank


def degree(b: BundleSpec) -> int:
    if isinstance(b, Decomposable):
        return sum(b.degrees)
    return b.degree


def slope(b: BundleSpec) -> SlopeValue:
    """Degree divided by rank, as an exact fraction."""
    return Fraction(degree(b), rank(b))


def dual(b: BundleSpec) -> BundleSpec:
    """Dual bundle: all degrees negate.  The dual of semistable is semistable."""
    if isinstance(b, Decomposable):
        return Decomposable(tuple(-a for a in b.degrees), b.base)
    return SemiStable(b.rank, -b.degree, b.base)


def twist(b: BundleSpec, t: int) -> BundleSpec:
    """Tensor with a line bundle of degree t."""
    if isinstance(b, Decomposable):
        return Decomposable(tuple(a + t for a in b.degrees), b.base)
    return SemiStable(b.rank, b.degree + b.rank * t, b.base)


def _require_decomposable(b: BundleSpec, op: str) -> Decomposable:
    if not isinstance(b, Decomposable):
        raise ValueError(
            f"{op} needs explicit line-bundle summands; "
            "semistable bundles are opaque"
        )
    return b


def sym_power(b: BundleSpec, m: int) -> Decomposable:
    """m-th symmetric power of a decomposable bundle.

    The summands of s^m(L_1 + ... + L_n) are the degree-m monomials in the
    line bundles, so the degree multiset is { sum_i k_i a_i : k_i >= 0,
    sum k_i = m }, counted with multiplicity.
    """
    b = _require_decomposable(b, "sym_power")
    if m < 1:
        raise ValueError(f"symmetric power exponent must be >= 1, got {m}")
    out = []
    for combo in combinations_with_replacement(b.degrees, m):
        out.append(sum(combo))
    return Decomposable(tuple(out), b.base)


def sym_rank_degree(r: int, d: int, m: int) -> tuple[int, int]:
    """Rank and degree of the m-th symmetric power of a rank-r degree-d bundle.

    rank s^m = C(m+r-1, m) and c1 scales by C(m+r-1, m-1); both follow
    from the splitting principle and hold for any bundle over a curve.
    """
    if r < 1:
        raise ValueError(f"rank must be positive, got {r}")
    if m < 1:
        raise ValueError(f"symmetric power exponent must be >= 1, got {m}")
    return math.comb(m + r - 1, m), math.comb(m + r - 1, m - 1) * d


def is_semistable(b: BundleSpec) -> bool:
    """Whether no subbundle has slope above the bundle's slope.

    A direct sum of line bundles is semistable exactly when all degrees
    agree: any summand of maximal degree is a line subbundle realizing
    the maximum, so an unbalanced sum always destabilizes.
    """
    if isinstance(b, SemiStable):
        return True
    return len(set(b.degrees)) == 1


def quotient_line_degree_bounds(b: BundleSpec) -> tuple[int, int]:
    """Sharp degree bounds (min quotient, max sub) for line bundles of b.

    For a direct sum of line bundles, every quotient line bundle has
    degree >= the minimal summand degree and every line subbundle has
    degree <= the maximal one; the summands themselves attain both.
    """
    b = _require_decomposable(b, "quotient_line_degree_bounds")
    return b.degrees[0], b.degrees[-1]


def semistable_exists(genus: SurfaceGenus, r: int, d: int) -> bool:
    """Whether a semistable bundle of the given rank and degree exists.

    Over positive genus they exist for every rank and degree; over genus
    0 only balanced direct sums are semistable.
    """
    if r < 1:
        raise ValueError(f"rank must be positive, got {r}")
    if genus.g >= 1:
        return True
    return d % r == 0
