"""Even cohomology of a projective bundle over a curve, with exact coefficients.

For a rank-n bundle E of degree d over a curve, H^even of the
projectivization is generated by the hyperplane class h and the fiber
class F with

    F * F = 0,      h^{n-1} * F = 1  (the point class),      h^n = e * h^{n-1} F,

where e depends on the convention: in the quotient convention (bundle of
one-dimensional quotients, Serre class xi) e = d, while in the sub
convention (bundle of one-dimensional subspaces, dual tautological class
tau) e = -d.  The two conventions describe the same space: P(E) equals
the sub-convention projectivization of E^*, with xi matching tau.

Degree-2 homology has the dual basis (l, eta): l the line in a fiber and
eta the unique integral class with <h, eta> = 0, <F, eta> = 1.  A class
u = x*h + y*F pairs as <u, a*l + m*eta> = a*x + m*y, and on the forward
cone {u^n > 0, <u, l> > 0} the scale-invariant ratio u^n / <u,l>^n
equals e + n*y/x, which pins down the ray of u.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Mapping

from .bundles import SurfaceGenus

__all__ = [
    "Convention",
    "BundleContext",
    "DivisorClass",
    "CurveClass",
    "RingElement",
    "RatioValue",
    "ContextMismatchError",
    "ring_multiply",
    "ring_power",
    "integrate",
    "top_power",
    "pair",
    "in_forward_cone",
    "ratio",
    "forward_ratio",
    "topological_residue",
    "topological_type",
    "convert_convention",
    "twist_class",
    "section_class",
    "line_class",
    "eta_class",
]

Rational = Fraction | int


class ContextMismatchError(ValueError):
    """Raised when classes from different bundle contexts are combined."""


class Convention(str, Enum):
    QUOTIENT = "quotient"
    SUB = "sub"


@dataclass(frozen=True)
class BundleContext:
    """Rank, degree and convention of the modeling bundle, plus base genus."""

    rank: int
    degree: int
    convention: Convention = Convention.QUOTIENT
    genus: SurfaceGenus = SurfaceGenus(0)

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise ValueError(f"rank must be positive, got {self.rank}")

    @property
    def top_coefficient(self) -> int:
        """e in the relation h^n = e * h^{n-1} F."""
        if self.convention is Convention.QUOTIENT:
            return self.degree
        return -self.degree

    @property
    def hyperplane_symbol(self) -> str:
        return "xi" if self.convention is Convention.QUOTIENT else "tau"


def _as_fraction(v: Rational) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass(frozen=True)
class DivisorClass:
    """x * (hyperplane class) + y * (fiber class) with exact coefficients."""

    x: Fraction
    y: Fraction
    ctx: BundleContext

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", _as_fraction(self.x))
        object.__setattr__(self, "y", _as_fraction(self.y))

    def __str__(self) -> str:
        return f"{self.x}*{self.ctx.hyperplane_symbol} + {self.y}*F"


@dataclass(frozen=True)
class CurveClass:
    """l * (fiber line class) + eta * (section class) in degree-2 homology."""

    l: int
    eta: int
    ctx: BundleContext

    def __str__(self) -> str:
        terms = []
        if self.l:
            terms.append("l" if self.l == 1 else "-l" if self.l == -1 else f"{self.l}l")
        if self.eta:
            sign = "" if not terms else ("+" if self.eta > 0 else "")
            mag = "eta" if self.eta == 1 else "-eta" if self.eta == -1 else f"{self.eta}eta"
            terms.append(sign + mag)
        return "".join(terms) if terms else "0"


def _check_ctx(a: BundleContext, b: BundleContext) -> None:
    if a != b:
        raise ContextMismatchError(f"mismatched bundle contexts: {a} vs {b}")


def _reduce(ctx: BundleContext, raw: Mapping[tuple[int, int], Fraction]) -> dict[tuple[int, int], Fraction]:
    # Drop F^2 first, then rewrite h^n -> e*h^{n-1}F per monomial; any
    # hyperplane exponent beyond n dies because the rewrite meets F twice.
    n = ctx.rank
    e = ctx.top_coefficient
    out: dict[tuple[int, int], Fraction] = {}

    def add(key: tuple[int, int], c: Fraction) -> None:
        acc = out.get(key, Fraction(0)) + c
        if acc:
            out[key] = acc
        else:
            out.pop(key, None)

    for (a, b), c in raw.items():
        if not c or b >= 2:
            continue
        if b == 0:
            if a < n:
                add((a, 0), c)
            elif a == n:
                add((n - 1, 1), c * e)
            # a > n: zero
        else:
            if a <= n - 1:
                add((a, 1), c)
            # a >= n with one F already: zero
    return out


class RingElement:
    """A finitely supported rational combination of monomials h^a F^b."""

    __slots__ = ("ctx", "_coeffs")

    def __init__(self, ctx: BundleContext, coeffs: Mapping[tuple[int, int], Rational]) -> None:
        self.ctx = ctx
        self._coeffs = _reduce(ctx, {k: _as_fraction(v) for k, v in coeffs.items()})

    @classmethod
    def zero(cls, ctx: BundleContext) -> "RingElement":
        return cls(ctx, {})

    @classmethod
    def one(cls, ctx: BundleContext) -> "RingElement":
        return cls(ctx, {(0, 0): 1})

    @classmethod
    def hyperplane(cls, ctx: BundleContext) -> "RingElement":
        return cls(ctx, {(1, 0): 1})

    @classmethod
    def fiber(cls, ctx: BundleContext) -> "RingElement":
        return cls(ctx, {(0, 1): 1})

    @classmethod
    def from_divisor(cls, u: DivisorClass) -> "RingElement":
        return cls(u.ctx, {(1, 0): u.x, (0, 1): u.y})

    def coefficient(self, a: int, b: int) -> Fraction:
        return self._coeffs.get((a, b), Fraction(0))

    def items(self) -> list[tuple[tuple[int, int], Fraction]]:
        return sorted(self._coeffs.items())

    def is_zero(self) -> bool:
        return not self._coeffs

    def __add__(self, other: "RingElement") -> "RingElement":
        _check_ctx(self.ctx, other.ctx)
        merged = dict(self._coeffs)
        for k, c in other._coeffs.items():
            merged[k] = merged.get(k, Fraction(0)) + c
        return RingElement(self.ctx, merged)

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-1) * other

    def __rmul__(self, scalar: Rational) -> "RingElement":
        s = _as_fraction(scalar)
        return RingElement(self.ctx, {k: s * c for k, c in self._coeffs.items()})

    def __mul__(self, other: "RingElement") -> "RingElement":
        if not isinstance(other, RingElement):
            return NotImplemented
        _check_ctx(self.ctx, other.ctx)
        raw: dict[tuple[int, int], Fraction] = {}
        for (a1, b1), c1 in self._coeffs.items():
            for (a2, b2), c2 in other._coeffs.items():
                key = (a1 + a2, b1 + b2)
                raw[key] = raw.get(key, Fraction(0)) + c1 * c2
        return RingElement(self.ctx, raw)

    def __pow__(self, k: int) -> "RingElement":
        if k < 0:
            raise ValueError("negative powers are not defined in this ring")
        result = RingElement.one(self.ctx)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ctx == other.ctx and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self.ctx, tuple(sorted(self._coeffs.items()))))

    def __repr__(self) -> str:
        if not self._coeffs:
            return "0"
        h = self.ctx.hyperplane_symbol
        parts = []
        for (a, b), c in self.items():
            mono = "*".join([h] * a + ["F"] * b) or "1"
            parts.append(f"{c}*{mono}")
        return " + ".join(parts)


def ring_multiply(p: RingElement, q: RingElement) -> RingElement:
    return p * q


def ring_power(u: DivisorClass, k: int) -> RingElement:
    return RingElement.from_divisor(u) ** k


def integrate(p: RingElement) -> Fraction:
    """Evaluate against the fundamental class: the h^{n-1}F coefficient."""
    return p.coefficient(p.ctx.rank - 1, 1)


def top_power(u: DivisorClass) -> Fraction:
    """u^n integrated over the bundle, by the closed formula x^{n-1}(e*x + n*y)."""
    n = u.ctx.rank
    e = u.ctx.top_coefficient
    return u.x ** (n - 1) * (e * u.x + n * u.y)


def pair(u: DivisorClass, z: CurveClass) -> Fraction:
    _check_ctx(u.ctx, z.ctx)
    return z.l * u.x + z.eta * u.y


def in_forward_cone(u: DivisorClass) -> bool:
    """Strict membership: u^n > 0 and <u, l> > 0."""
    n = u.ctx.rank
    e = u.ctx.top_coefficient
    return u.x > 0 and e * u.x + n * u.y > 0


@dataclass(frozen=True)
class RatioValue:
    """The ratio u^n / <u,l>^n together with forward-cone membership.

    Outside the forward cone the number still identifies the ray when
    <u, l> != 0, but it is not a symplectic-size invariant there; when
    <u, l> = 0 the value is undefined and stored as None.
    """

    value: Fraction | None
    in_forward_cone: bool

    def require(self) -> Fraction:
        if not self.in_forward_cone or self.value is None:
            raise ValueError("class is not in the forward cone, ratio not applicable")
        return self.value


def ratio(u: DivisorClass) -> RatioValue:
    """Scale-invariant ray coordinate e + n*y/x, flagged when out of cone."""
    inside = in_forward_cone(u)
    if u.x == 0:
        return RatioValue(None, inside)
    n = u.ctx.rank
    e = u.ctx.top_coefficient
    return RatioValue(e + n * u.y / u.x, inside)


def forward_ratio(u: DivisorClass) -> Fraction:
    """Ratio of a class required to lie in the forward cone."""
    return ratio(u).require()


def topological_residue(w: int, n: int) -> int:
    """The residue of w in {0, ..., n-1}."""
    return w % n


def topological_type(ctx: BundleContext) -> int:
    """Residue classifying the bundle topologically among P^{n-1}-bundles.

    Twisting by a line bundle shifts the degree by multiples of the rank,
    so only e mod n survives; e is the degree in the quotient convention
    and minus the degree in the sub convention.
    """
    return topological_residue(ctx.top_coefficient, ctx.rank)


def convert_convention(u: DivisorClass) -> DivisorClass:
    """Rewrite the class for the dual bundle's convention.

    The quotient-convention projectivization of E is the sub-convention
    projectivization of E^*, with matching hyperplane classes, so the
    coordinates stay put while the convention flips and the degree negates.
    """
    ctx = u.ctx
    flipped = Convention.SUB if ctx.convention is Convention.QUOTIENT else Convention.QUOTIENT
    new_ctx = BundleContext(ctx.rank, -ctx.degree, flipped, ctx.genus)
    return DivisorClass(u.x, u.y, new_ctx)


def twist_class(u: DivisorClass, t: int) -> DivisorClass:
    """Rewrite the class after twisting the modeling bundle by degree t.

    Twisting leaves the projective bundle alone but moves the hyperplane
    class by t*F, so (x, y) becomes (x, y - t*x) over the degree d + n*t
    model.  Quotient convention only; convert first if needed.
    """
    ctx = u.ctx
    if ctx.convention is not Convention.QUOTIENT:
        raise ValueError("twist_class expects the quotient convention; convert first")
    new_ctx = BundleContext(ctx.rank, ctx.degree + ctx.rank * t, ctx.convention, ctx.genus)
    return DivisorClass(u.x, u.y - t * u.x, new_ctx)


def line_class(ctx: BundleContext) -> CurveClass:
    return CurveClass(1, 0, ctx)


def eta_class(ctx: BundleContext) -> CurveClass:
    return CurveClass(0, 1, ctx)


def section_class(quotient_line_degree: int, ctx: BundleContext) -> CurveClass:
    """Class of the section cut out by a quotient line bundle of that degree.

    A quotient line bundle M of the modeling bundle gives a section Z with
    <hyperplane, [Z]> = deg M, so [Z] = deg(M)*l + eta.
    """
    if ctx.convention is not Convention.QUOTIENT:
        raise ValueError("section classes are indexed by quotient line bundles; "
                         "use the quotient convention")
    return CurveClass(quotient_line_degree, 1, ctx)
