"""Blow-down decisions for fibred divisors in symplectic six-manifolds.

A codimension-2 divisor fibred as a projective-space bundle with
fiberwise-tautological normal bundle is the shape produced by blowing up
a point or a surface.  Whether it can be blown back down (up to integral
deformation of the symplectic form) is decided here through exact
rational data:

  * alpha, the signed top self-intersection of the normal bundle
    ((-1)^n times the integral of c1(N)^n over the divisor); when the
    divisor comes from blowing up a surface with normal bundle N_S this
    equals -deg(N_S);
  * the restricted symplectic class, recorded in the sub convention on
    the rank-n model of degree -alpha, whose ratio rho must strictly
    exceed alpha (positive genus) or max(alpha, alpha mod n) (genus 0)
    for the divisor to be admissible;
  * for admissible data, a matching-triple certificate: a model bundle V
    of degree alpha, the ambient projectivization of V + O carrying a
    circle-invariant Kahler class whose restriction to P(V) reproduces
    the divisor's class ratio.

Dimension six adds one genuinely two-sided case: a product of two
spheres with alpha = 2 carries two rulings of normal degree -1, and the
verdict picks the ruling of smaller area, refusing to decide when both
areas agree (ratio exactly 2 on both rulings).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .bundles import BundleSpec, SurfaceGenus, degree, rank
from .cohomology import (
    BundleContext,
    Convention,
    DivisorClass,
    forward_ratio,
    in_forward_cone,
    topological_residue,
)
from .cones import (
    AmbientBundle,
    kahler_class_for_ratio,
    kahler_membership,
    matching_bundle,
    plus_trivial_line,
    restrict_to_divisor,
)

__all__ = [
    "NORMAL_FIBER_DEGREE",
    "ExceptionalDivisorData",
    "MatchingTripleCertificate",
    "BlowdownVerdict",
    "VerdictKind",
    "Ruling",
    "CertificateValidation",
    "NotAdmissibleError",
    "alpha_from_blowup_normal",
    "admissibility_bound",
    "is_admissible",
    "build_matching_triple",
    "blowdown_verdict_dim6",
    "refibred_along_second_ruling",
    "validate_certificate",
]

# Pairing of c1 of the normal bundle with a line in a fiber; fixed by the
# fiberwise-tautological normal bundle condition, not user data.
NORMAL_FIBER_DEGREE = -1

Rational = Fraction | int


class NotAdmissibleError(ValueError):
    """The divisor's ratio does not clear the admissibility bound."""


def alpha_from_blowup_normal(deg_normal_of_surface: int) -> int:
    """Signed normal self-intersection of the divisor created by blowing up
    a surface whose normal bundle has the given degree.  Applying the map
    twice inverts it, so it also recovers the blow-down target's normal
    degree from alpha."""
    return -deg_normal_of_surface


def admissibility_bound(alpha: int, n: int, genus: SurfaceGenus) -> int:
    """Strict lower bound the divisor's ratio must exceed to be admissible."""
    if genus.g > 0:
        return alpha
    return max(alpha, topological_residue(alpha, n))


@dataclass(frozen=True)
class ExceptionalDivisorData:
    """A fibred divisor candidate for blowing down.

    base_genus None means the divisor is a projective space over a point
    (in dimension six: a plane with normal degree -1); the remaining
    fields are then absent.  Over a surface the class of the restricted
    symplectic form lives in the sub convention on the rank-n model of
    degree -alpha and must lie in the forward cone.  ruled_areas is the
    area pair of the two rulings, present exactly in the genus-0, rank-2,
    alpha = 2 case where the divisor is a product of spheres with two
    blow-down candidates.
    """

    base_genus: SurfaceGenus | None
    fiber_rank: int | None
    alpha: int | None
    omega_class: DivisorClass | None
    ruled_areas: tuple[Fraction, Fraction] | None = None

    def __post_init__(self) -> None:
        if self.base_genus is None:
            if any(v is not None for v in
                   (self.fiber_rank, self.alpha, self.omega_class, self.ruled_areas)):
                raise ValueError("point-base divisor data carries no bundle fields")
            return
        if self.fiber_rank is None or self.fiber_rank < 1:
            raise ValueError("surface-base divisor data needs a positive fiber rank")
        if self.alpha is None or self.omega_class is None:
            raise ValueError("surface-base divisor data needs alpha and a symplectic class")
        u = self.omega_class
        expected = BundleContext(self.fiber_rank, -self.alpha, Convention.SUB, self.base_genus)
        if u.ctx != expected:
            raise ValueError(
                f"the symplectic class must live on {expected}, got {u.ctx}"
            )
        if not in_forward_cone(u):
            raise ValueError(
                "the restricted symplectic class must lie in the forward cone"
            )
        if self.ruled_areas is not None:
            object.__setattr__(
                self, "ruled_areas",
                (Fraction(self.ruled_areas[0]), Fraction(self.ruled_areas[1])),
            )
        if self.is_double_ruling_case:
            if self.ruled_areas is None:
                raise ValueError(
                    "a sphere-product divisor with alpha = 2 has two rulings; "
                    "their areas are required"
                )
            x, y = self.ruled_areas
            if x <= 0 or y <= 0:
                raise ValueError("ruling areas must be positive")
            if forward_ratio(u) != 2 * y / x:
                raise ValueError(
                    f"inconsistent data: the class ratio {forward_ratio(u)} must "
                    f"equal 2*(second area)/(first area) = {2 * y / x}"
                )
        elif self.ruled_areas is not None:
            raise ValueError("ruling areas only apply to the genus-0, alpha = 2, "
                             "rank-2 divisor")

    @property
    def is_point_base(self) -> bool:
        return self.base_genus is None

    @property
    def is_double_ruling_case(self) -> bool:
        return (self.base_genus is not None and self.base_genus.g == 0
                and self.fiber_rank == 2 and self.alpha == 2)

    @property
    def normal_fiber_degree(self) -> int:
        return NORMAL_FIBER_DEGREE

    @classmethod
    def point(cls) -> "ExceptionalDivisorData":
        return cls(None, None, None, None)

    @classmethod
    def over_surface(cls, genus: int, alpha: int,
                     omega_xy: tuple[Rational, Rational],
                     fiber_rank: int = 2,
                     ruled_areas: tuple[Rational, Rational] | None = None,
                     ) -> "ExceptionalDivisorData":
        g = SurfaceGenus(genus)
        ctx = BundleContext(fiber_rank, -alpha, Convention.SUB, g)
        omega = DivisorClass(Fraction(omega_xy[0]), Fraction(omega_xy[1]), ctx)
        areas = None
        if ruled_areas is not None:
            areas = (Fraction(ruled_areas[0]), Fraction(ruled_areas[1]))
        return cls(g, fiber_rank, alpha, omega, areas)

    @classmethod
    def from_ruled_areas(cls, first: Rational, second: Rational) -> "ExceptionalDivisorData":
        """Sphere-product divisor (alpha = 2) from the two ruling areas.

        With areas (x, y) the volume is 2xy, so the ratio with respect to
        the first ruling is 2y/x and the class is (x, y - x) in the sub
        convention.
        """
        x, y = Fraction(first), Fraction(second)
        return cls.over_surface(0, 2, (x, y - x), fiber_rank=2, ruled_areas=(x, y))


def is_admissible(d: ExceptionalDivisorData) -> bool:
    """Whether the divisor's ratio strictly clears the admissibility bound."""
    if d.is_point_base:
        raise ValueError("admissibility is a surface-base notion; a plane divisor "
                         "of normal degree -1 blows down unconditionally")
    rho = forward_ratio(d.omega_class)
    return rho > admissibility_bound(d.alpha, d.fiber_rank, d.base_genus)


@dataclass(frozen=True)
class MatchingTripleCertificate:
    """Certified blow-down data: the model triple and its Kahler class.

    The triple consists of the total space P(V + O), the divisor P(V) and
    the section P(O) over the base surface, where V is the model bundle of
    degree alpha (so the divisor's normal bundles in the triple and in the
    ambient manifold are opposite).  kahler_class is circle-invariant for
    the rotation fixing P(V) and P(O), and restricts to P(V) with the same
    ratio as the divisor's symplectic class.  The match is class-level
    (weak); in complex fiber dimension one that already suffices.
    """

    model_bundle: BundleSpec
    ambient_bundle: AmbientBundle
    kahler_class: DivisorClass
    restricted_ratio: Fraction
    s1_invariant: bool = True
    weak: bool = True
    notes: tuple[str, ...] = ()

    def triple_description(self) -> dict[str, str]:
        return {
            "total_space": "P(V + O)",
            "divisor": "P(V)",
            "section": "P(O)",
        }


_DEFORMATION_NOTE = ("certifies blowing down up to an integral deformation of the "
                     "symplectic form; whether the deformation step can be dropped "
                     "is an open question")
_DIM6_NOTE = ("fiber dimension one: a class-level (weak) match already yields a "
              "genuine matching triple")


def build_matching_triple(d: ExceptionalDivisorData) -> MatchingTripleCertificate:
    """Construct the certificate for an admissible divisor.

    The model bundle V has degree alpha and rank n; the Kahler class is the
    canonical integral representative restricting to the divisor's exact
    ratio.  Raises NotAdmissibleError when the ratio bound fails.
    """
    if d.is_point_base:
        raise ValueError("point-base divisors blow down without a matching triple")
    rho = forward_ratio(d.omega_class)
    bound = admissibility_bound(d.alpha, d.fiber_rank, d.base_genus)
    if rho <= bound:
        raise NotAdmissibleError(
            f"ratio {rho} does not exceed the admissibility bound {bound}"
        )
    v = matching_bundle(d.alpha, d.fiber_rank, d.base_genus)
    u = kahler_class_for_ratio(d.alpha, d.fiber_rank, d.base_genus, rho)
    notes = [_DEFORMATION_NOTE]
    if d.fiber_rank == 2:
        notes.append(_DIM6_NOTE)
    return MatchingTripleCertificate(
        model_bundle=v,
        ambient_bundle=plus_trivial_line(v),
        kahler_class=u,
        restricted_ratio=rho,
        notes=tuple(notes),
    )


class VerdictKind(str, Enum):
    ALWAYS_BLOWDOWN = "AlwaysBlowdown"
    BLOWDOWN_UP_TO_DEFORMATION = "BlowdownUpToDeformation"
    NOT_ADMISSIBLE = "NotAdmissible"
    UNDETERMINED = "Undetermined"


class Ruling(str, Enum):
    FIRST = "first"
    SECOND = "second"


@dataclass(frozen=True)
class BlowdownVerdict:
    kind: VerdictKind
    certificate: MatchingTripleCertificate | None = None
    chosen_ruling: Ruling | None = None
    reason: str = ""


def refibred_along_second_ruling(d: ExceptionalDivisorData) -> ExceptionalDivisorData:
    """The same sphere-product divisor, fibred by its other ruling."""
    if not d.is_double_ruling_case:
        raise ValueError("only the genus-0, alpha = 2, rank-2 divisor has two rulings")
    x, y = d.ruled_areas
    return ExceptionalDivisorData.from_ruled_areas(y, x)


def blowdown_verdict_dim6(d: ExceptionalDivisorData) -> BlowdownVerdict:
    """Decide blowing down a four-dimensional divisor in a six-manifold.

    A plane over a point always blows down.  A ruled divisor blows down up
    to deformation exactly when admissible; the certificate is attached.
    The sphere-product alpha = 2 divisor is decided by its two ruling
    areas: the smaller-area ruling is blown down (its ratio exceeds 2),
    and equal areas leave the question undetermined because neither ruling
    clears the bound and perturbing the areas apart would need ambient
    rulings that are not cohomologous.
    """
    if d.is_point_base:
        return BlowdownVerdict(VerdictKind.ALWAYS_BLOWDOWN)
    if d.fiber_rank != 2:
        raise ValueError("the dimension-6 verdict needs a divisor ruled by lines "
                         "(fiber rank 2)")
    if d.is_double_ruling_case:
        x, y = d.ruled_areas
        if x == y:
            return BlowdownVerdict(
                VerdictKind.UNDETERMINED,
                reason=("ratio = 2 with respect to both rulings; the criterion is "
                        "silent, and separating the areas by a perturbation would "
                        "require ambient rulings that are not cohomologous"),
            )
        if x < y:
            ruling, effective = Ruling.FIRST, d
        else:
            ruling, effective = Ruling.SECOND, refibred_along_second_ruling(d)
        return BlowdownVerdict(
            VerdictKind.BLOWDOWN_UP_TO_DEFORMATION,
            certificate=build_matching_triple(effective),
            chosen_ruling=ruling,
            reason=f"blowing down the {ruling.value} ruling (smaller area)",
        )
    rho = forward_ratio(d.omega_class)
    bound = admissibility_bound(d.alpha, d.fiber_rank, d.base_genus)
    if rho > bound:
        return BlowdownVerdict(
            VerdictKind.BLOWDOWN_UP_TO_DEFORMATION,
            certificate=build_matching_triple(d),
        )
    return BlowdownVerdict(
        VerdictKind.NOT_ADMISSIBLE,
        reason=f"ratio {rho} does not exceed the admissibility bound {bound}",
    )


@dataclass(frozen=True)
class CertificateValidation:
    ok: bool
    failures: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.ok


def validate_certificate(c: MatchingTripleCertificate,
                         d: ExceptionalDivisorData) -> CertificateValidation:
    """Re-check every certificate condition against the divisor data.

    Checks: the model bundle has degree alpha and rank n, the ambient
    bundle is the model plus a trivial line, the Kahler class lies in the
    (known) Kahler cone of the ambient bundle, its restriction to the
    divisor reproduces the symplectic class ratio exactly, and the
    circle-invariance flag is set.  Returns all failures, not just the
    first.
    """
    failures: list[str] = []
    if d.is_point_base:
        return CertificateValidation(False, ("point-base divisors carry no matching triple",))

    if degree(c.model_bundle) != d.alpha:
        failures.append(
            f"normal degree mismatch: model bundle degree {degree(c.model_bundle)}"
            f" != alpha {d.alpha}"
        )
    if rank(c.model_bundle) != d.fiber_rank:
        failures.append(
            f"rank mismatch: model bundle rank {rank(c.model_bundle)}"
            f" != fiber rank {d.fiber_rank}"
        )
    if c.ambient_bundle != plus_trivial_line(c.model_bundle):
        failures.append("ambient bundle is not the model bundle plus a trivial line")

    try:
        if not kahler_membership(c.kahler_class, c.ambient_bundle):
            failures.append("Kahler class lies outside the Kahler cone of the "
                            "ambient bundle")
    except ValueError as err:
        failures.append(f"Kahler class rejected: {err}")

    try:
        actual = forward_ratio(restrict_to_divisor(c.kahler_class))
        target = forward_ratio(d.omega_class)
        if actual != target:
            failures.append(
                f"restricted ratio mismatch: certificate restricts to {actual}, "
                f"divisor class has ratio {target}"
            )
        if c.restricted_ratio != actual:
            failures.append(
                f"certificate ratio field {c.restricted_ratio} disagrees with the "
                f"actual restriction ratio {actual}"
            )
    except ValueError as err:
        failures.append(f"restriction ratio undefined: {err}")

    if not c.s1_invariant:
        failures.append("circle-invariance flag is not set")

    return CertificateValidation(not failures, tuple(failures))
