from fractions import Fraction
from itertools import combinations_with_replacement

import pytest

from pbcones.bundles import (
    SurfaceGenus,
    decomposable,
    degree,
    rank,
    semi_stable,
    sym_power,
    twist,
)
from pbcones.cohomology import (
    BundleContext,
    Convention,
    CurveClass,
    DivisorClass,
    forward_ratio,
    in_forward_cone,
    pair,
    section_class,
    twist_class,
)
from pbcones.cones import (
    Exactness,
    NoSuchClassError,
    SemistablePlusLine,
    balanced_form,
    bundle_context,
    curve_cone_decomposable,
    kahler_class_for_ratio,
    kahler_cone,
    kahler_cone_ratio,
    kahler_membership,
    matching_bundle,
    min_symplectic_ratio,
    multisection_degree_bound,
    plus_trivial_line,
    restrict_to_divisor,
    restricted_ratio,
)

Q = Fraction
G0 = SurfaceGenus(0)
G1 = SurfaceGenus(1)
G2 = SurfaceGenus(2)


def cls(b, x, y):
    return DivisorClass(x, y, bundle_context(b))


# --------------------------------------------------------- curve cone


def test_curve_cone_examples():
    cone = curve_cone_decomposable(decomposable(0, 2))
    assert [(r.l, r.eta) for r in cone.rays] == [(1, 0), (0, 1)]
    assert cone.exactness is Exactness.EXACT

    cone = curve_cone_decomposable(decomposable(-2, -1))
    assert [(r.l, r.eta) for r in cone.rays] == [(1, 0), (-2, 1)]

    cone = curve_cone_decomposable(decomposable(3, 3))
    assert [(r.l, r.eta) for r in cone.rays] == [(1, 0), (3, 1)]
    assert cone.boundary_slope == 3
    # all degrees equal: the Kahler cone degenerates to the forward cone
    assert kahler_cone_ratio(decomposable(3, 3)) == 0


def test_curve_cone_semistable():
    cone = curve_cone_decomposable(semi_stable(2, -3, genus=1))
    assert [(r.l, r.eta) for r in cone.rays] == [(1, 0)]
    assert cone.exactness is Exactness.EXACT
    assert "forward cone" in cone.note
    assert cone.boundary_slope == Q(-3, 2)

    # genus-0 semistable bundles are balanced splittings
    cone0 = curve_cone_decomposable(semi_stable(2, 4, genus=0))
    assert [(r.l, r.eta) for r in cone0.rays] == [(1, 0), (2, 1)]


# --------------------------------------------------------- membership


def test_kahler_membership_examples():
    b = decomposable(0, 2)
    assert kahler_membership(cls(b, 1, 1), b)
    assert not kahler_membership(cls(b, 1, 0), b)

    s = semi_stable(2, -3, genus=1)
    assert kahler_membership(cls(s, 1, 2), s)
    assert not kahler_membership(cls(s, 1, 1), s)  # -3 + 2 < 0

    v = decomposable(-1, 0, 0)
    assert kahler_membership(cls(v, 1, Q(3, 2)), v)


def test_kahler_membership_mixed_sum():
    mixed = SemistablePlusLine(semi_stable(2, -3, genus=1), 0)
    cone = kahler_cone(mixed)
    assert cone.exactness is Exactness.SUFFICIENT_ONLY
    u = DivisorClass(1, 2, bundle_context(mixed))
    assert kahler_membership(u, mixed)  # y/x = 2 > 3/2
    assert not kahler_membership(DivisorClass(1, 1, bundle_context(mixed)), mixed)
    with pytest.raises(ValueError, match="unknown"):
        kahler_cone(SemistablePlusLine(semi_stable(2, 3, genus=1), 0))


def test_kahler_membership_context_checks():
    b = decomposable(0, 2)
    wrong_rank = DivisorClass(1, 1, BundleContext(3, 2, Convention.QUOTIENT, G0))
    with pytest.raises(ValueError):
        kahler_membership(wrong_rank, b)
    sub = DivisorClass(1, 1, BundleContext(2, 2, Convention.SUB, G0))
    with pytest.raises(ValueError):
        kahler_membership(sub, b)


def test_kahler_cone_inside_forward_cone():
    # exhaustive over all decomposable bundles with rank <= 4, |degrees| <= 5
    for r in (1, 2, 3, 4):
        for degs in combinations_with_replacement(range(-5, 6), r):
            b = decomposable(*degs)
            for x in range(1, 5):
                for y in range(-6, 7):
                    u = cls(b, x, y)
                    if kahler_membership(u, b):
                        assert in_forward_cone(u)


def test_boundary_class_pairs_to_zero_with_extremal_section():
    for degs in [(0, 2), (-2, -1), (1, 1, 4), (-3, 0, 0, 2)]:
        b = decomposable(*degs)
        a1 = min(degs)
        c1 = section_class(a1, bundle_context(b))
        for x in (1, 2, 5):
            boundary = cls(b, x, -a1 * x)
            assert not kahler_membership(boundary, b)
            assert pair(boundary, c1) == 0


def test_twist_equivariance_of_membership():
    b = decomposable(-1, 2)
    for t in (-2, 1, 3):
        bt = twist(b, t)
        for x in (1, 2):
            for y in (-3, 0, 2, 5):
                u = cls(b, x, y)
                assert kahler_membership(u, b) == kahler_membership(twist_class(u, t), bt)


def test_membership_positive_on_sym_power_sections():
    # Kahler classes pair positively with every m-section class bound
    for degs in [(0, 2), (-2, -1), (-1, 0, 3)]:
        b = decomposable(*degs)
        ctx = bundle_context(b)
        for x in range(1, 4):
            for y in range(-5, 6):
                u = cls(b, x, y)
                if not kahler_membership(u, b):
                    continue
                for m in range(1, 6):
                    for a in sym_power(b, m).degrees:
                        assert pair(u, CurveClass(a, m, ctx)) > 0


# -------------------------------------------------------------- ratio


def test_kahler_cone_ratio_examples():
    assert kahler_cone_ratio(decomposable(0, 2)) == 2
    assert kahler_cone_ratio(semi_stable(2, -3, genus=1)) == 0
    assert kahler_cone_ratio(decomposable(4, 4, 4)) == 0


def test_genus0_semistable_equals_balanced_decomposable():
    s = semi_stable(2, 4, genus=0)
    b = balanced_form(s)
    assert b == decomposable(2, 2)
    assert kahler_cone_ratio(s) == kahler_cone_ratio(b)
    for x in (1, 2):
        for y in (-3, -2, 0, 1):
            u = cls(s, x, y)
            assert kahler_membership(u, s) == kahler_membership(cls(b, x, y), b)


def test_min_symplectic_ratio_examples():
    assert min_symplectic_ratio(BundleContext(2, 5, Convention.QUOTIENT, G2)) == 0
    assert min_symplectic_ratio(BundleContext(2, -1, Convention.SUB, G0)) == 1
    assert min_symplectic_ratio(BundleContext(3, -6, Convention.QUOTIENT, G0)) == 0


def test_multisection_degree_bound_examples():
    assert multisection_degree_bound(decomposable(0, 2), 3) == 0
    assert multisection_degree_bound(decomposable(-2, -1), 2) == -4
    assert multisection_degree_bound(decomposable(-7, 1), 1) == -7
    # the bound is attained by the m-th power of the minimal summand
    for degs in [(0, 2), (-2, -1), (-1, 1, 3)]:
        for m in (1, 2, 3, 4):
            assert min(sym_power(decomposable(*degs), m).degrees) == \
                multisection_degree_bound(decomposable(*degs), m)


# -------------------------------------------------- restricted ratio


def test_matching_bundle_examples():
    assert matching_bundle(-3, 2, G0) == decomposable(-2, -1)
    assert matching_bundle(3, 2, G0) == decomposable(1, 2)
    assert matching_bundle(3, 2, G1) == decomposable(1, 2, genus=1)
    assert matching_bundle(0, 4, G2).degrees == (0, 0, 0, 0)
    assert matching_bundle(-3, 2, G1) == semi_stable(2, -3, genus=1)


def test_restricted_ratio_examples():
    r = restricted_ratio(-3, 2, G0)
    assert r.value == 1 and r.achieving_bundle == decomposable(-2, -1)
    assert not r.attained
    r = restricted_ratio(-3, 2, G1)
    assert r.value == 0 and r.achieving_bundle == semi_stable(2, -3, genus=1)
    r = restricted_ratio(5, 2, G0)
    assert r.value == 5 and r.achieving_bundle == decomposable(2, 3)


def test_restricted_ratio_values_nonnegative_and_match_minimization():
    # Independent check: for the decomposable model the infimum of
    # alpha + n*y/x over the cone {x > 0, a1*x + y > 0} (a1 the minimal
    # degree of V + O) is alpha - n*a1, by y -> -a1*x.
    for alpha in range(-6, 7):
        for n in (2, 3, 4):
            for g in (G0, G1, G2):
                r = restricted_ratio(alpha, n, g)
                assert r.value >= 0
                v = r.achieving_bundle
                assert degree(v) == alpha and rank(v) == n
                ambient = plus_trivial_line(v)
                if isinstance(ambient, SemistablePlusLine):
                    # sufficient half-plane y/x > -alpha/n: infimum of
                    # alpha + n*y/x is 0
                    assert r.value == 0
                else:
                    a1 = min(ambient.degrees)
                    assert r.value == alpha - n * a1


def test_kahler_class_for_ratio_examples():
    u = kahler_class_for_ratio(-1, 2, G0, 2)
    assert (u.x, u.y) == (2, 3)
    assert forward_ratio(restrict_to_divisor(u)) == 2

    u = kahler_class_for_ratio(0, 2, G1, 1)
    assert (u.x, u.y) == (2, 1)
    assert forward_ratio(restrict_to_divisor(u)) == 1

    with pytest.raises(NoSuchClassError):
        kahler_class_for_ratio(-1, 2, G0, 1)


def test_kahler_class_for_ratio_fractional():
    u = kahler_class_for_ratio(-3, 3, G0, Q(7, 5))
    assert (u.x, u.y) == (15, (Q(7, 5) + 3).numerator) == (15, 22)
    assert forward_ratio(restrict_to_divisor(u)) == Q(7, 5)
    v = matching_bundle(-3, 3, G0)
    assert kahler_membership(u, plus_trivial_line(v))


def test_restrict_to_divisor_preserves_coordinates():
    u = kahler_class_for_ratio(2, 2, G0, 4)
    r = restrict_to_divisor(u)
    assert (r.x, r.y) == (u.x, u.y)
    assert r.ctx.rank == u.ctx.rank - 1
    assert r.ctx.degree == u.ctx.degree
