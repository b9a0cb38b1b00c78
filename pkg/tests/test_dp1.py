import random

import pytest

from dp1cert.exactalg import QQ, BinaryForm, PrimeField
from dp1cert.dp1 import (
    Dp1Surface, FiberCensus, InvalidPoint, InvalidSurface, IsBasePoint,
    SectionCurve, SmoothnessViolated, WeightedPoint, fiber_census,
    involution, is_minus_one_curve, is_smooth, move_to_zero,
    section_surface_form,
)
from dp1cert.weier import order5_family

GF11 = PrimeField(11)


def surface(field, f, g):
    return Dp1Surface.from_coeff_lists(field, f, g)


# f = 0, g = 243 z^6 + 16 w^6
S_ISO = surface(QQ, [0] * 5, [16, 0, 0, 0, 0, 0, 243])


def wp(field, x, y, z, w):
    return WeightedPoint(field(x), field(y), field(z), field(w))


# ---------------------------------------------------------------------------
# weighted points
# ---------------------------------------------------------------------------

def test_weighted_point_canonicalization():
    P = wp(QQ, 4, 8, 2, 6)   # lambda = 1/2: (1, 1, 1, 3)
    assert (P.x, P.y, P.z, P.w) == (QQ(1), QQ(1), QQ(1), QQ(3))
    O = wp(QQ, 4, 8, 0, 0)   # x^3 = y^2 = 64: scales to (1:1:0:0)
    assert O.is_base_point and (O.x, O.y) == (QQ(1), QQ(1))
    with pytest.raises(InvalidPoint):
        wp(QQ, 2, 3, 0, 0)
    with pytest.raises(InvalidPoint):
        wp(QQ, 0, 1, 0, 0)


def test_weighted_point_equality_up_to_scaling():
    assert wp(QQ, -63, 14, 1, 5) == wp(QQ, -252, 112, 2, 10)


# ---------------------------------------------------------------------------
# containment / fibers
# ---------------------------------------------------------------------------

def test_contains():
    assert S_ISO.contains(wp(QQ, 0, 4, 0, 1))
    assert S_ISO.contains(WeightedPoint.base_point(QQ))
    assert not S_ISO.contains(wp(QQ, 0, 5, 0, 1))
    assert S_ISO.contains(wp(QQ, -63, 14, 1, 5))


def test_fiber_classification():
    E = S_ISO.fiber(0, 1)
    assert E.kind == "smooth" and E.A == QQ(0) and E.B == QQ(16)
    # nodal: Delta(t0) = 0 with f(t0) != 0
    S = surface(QQ, [-3, 0, 0, 0, 0], [2, 0, 0, 0, 0, 0, 1])
    assert S.fiber(0, 1).kind == "nodal"
    # cuspidal: f = g = 0 at t0
    S2 = surface(QQ, [0, 1, 0, 0, 0], [0, 0, 1, 0, 0, 0, 1])
    assert S2.fiber(0, 1).kind == "cuspidal"


def test_rejects_identically_singular():
    with pytest.raises(InvalidSurface):
        surface(QQ, [0] * 5, [0] * 7)


# ---------------------------------------------------------------------------
# smoothness
# ---------------------------------------------------------------------------

def test_is_smooth_examples():
    assert is_smooth(S_ISO)
    # f = 0, g = z^5 w + w^6
    assert is_smooth(surface(QQ, [0] * 5, [1, 0, 0, 0, 0, 1, 0]))
    # f = 0, g = z^6: the point (0:0:0:1) is singular
    assert not is_smooth(surface(QQ, [0] * 5, [0, 0, 0, 0, 0, 0, 1]))
    # forced singular point: g with a triple root shared by f
    assert not is_smooth(surface(QQ, [0, 0, 0, 0, 1],
                                 [0, 0, 0, 1, 0, 0, 1]))


def test_is_smooth_random_singular_construction():
    # f, g both divisible by z^2 / z^3 force a singularity on z = 0
    rng = random.Random(1)
    for _ in range(5):
        f = [0, 0, rng.randint(1, 3), rng.randint(-3, 3), rng.randint(-3, 3)]
        g = [0, 0, 0, rng.randint(1, 3), rng.randint(-3, 3),
             rng.randint(-3, 3), rng.randint(-3, 3)]
        try:
            S = surface(QQ, f, g)
        except InvalidSurface:
            continue
        assert not is_smooth(S)


# ---------------------------------------------------------------------------
# census
# ---------------------------------------------------------------------------

def test_census_isotrivial():
    c = fiber_census(surface(QQ, [0] * 5, [1, 0, 0, 0, 0, 1, 0]))
    assert (c.M, c.N) == (0, 6)
    c2 = fiber_census(S_ISO)
    assert (c2.M, c2.N) == (0, 6)


def test_census_order5_family_instance():
    # f = f0 w^4, g = delta z^5 w + g0 w^6 with the order-5 fiber constants
    x0, y0, f0, g0 = order5_family(QQ, 2, 1)
    S = surface(QQ, [f0.rep, 0, 0, 0, 0], [g0.rep, 0, 0, 0, 0, 1, 0])
    c = fiber_census(S)
    assert (c.M, c.N) == (10, 1)


def test_census_violation():
    # Delta with a root of multiplicity >= 3 (singular surface)
    S = surface(QQ, [0, 0, 0, 0, 1], [0, 0, 0, 1, 0, 0, 1])
    with pytest.raises(SmoothnessViolated):
        fiber_census(S)


def test_census_random_smooth():
    rng = random.Random(9)
    done = 0
    while done < 15:
        f = [rng.randint(-1, 1) for _ in range(5)]
        g = [rng.randint(-1, 1) for _ in range(7)]
        try:
            S = surface(QQ, f, g)
        except InvalidSurface:
            continue
        if not is_smooth(S):
            continue
        c = fiber_census(S)
        assert c.M + 2 * c.N == 12
        assert all(m in (1, 2) for m in c.pattern)
        done += 1


# ---------------------------------------------------------------------------
# normalization and involution
# ---------------------------------------------------------------------------

def test_move_to_zero_identity_case():
    Q = wp(QQ, 0, 4, 0, 1)
    n = move_to_zero(S_ISO, Q)
    assert n.surface == S_ISO and n.point == Q


def test_move_to_zero_swap_case():
    # Q over (1:0) on f=0, g = 16 z^6 + 243 w^6
    S = surface(QQ, [0] * 5, [243, 0, 0, 0, 0, 0, 16])
    Q = wp(QQ, 0, 4, 1, 0)
    n = move_to_zero(S, Q)
    assert n.point == wp(QQ, 0, 4, 0, 1)
    assert n.surface.g.coeffs == S_ISO.g.coeffs


def test_move_to_zero_general():
    Q = wp(QQ, -63, 14, 1, 5)
    n = move_to_zero(S_ISO, Q)
    assert not n.point.z and n.point.w == QQ(1)
    assert n.surface.contains(n.point)
    assert is_smooth(n.surface)


def test_move_to_zero_base_point():
    with pytest.raises(IsBasePoint):
        move_to_zero(S_ISO, WeightedPoint.base_point(QQ))


def test_involution():
    S = surface(QQ, [2, 3, 1, 0, 5], [1, 7, 0, 0, 2, 0, 4])
    T = involution(S)
    # f1 -> -4 f0 - f1, g1 -> -6 g0 - g1
    assert T.f.coeffs[0] == S.f.coeffs[0]
    assert T.f.coeffs[1] == -4 * S.f.coeffs[0] - S.f.coeffs[1]
    assert T.g.coeffs[1] == -6 * S.g.coeffs[0] - S.g.coeffs[1]
    assert involution(T) == S
    S2 = surface(QQ, [0] * 5, [1, 0, 0, 0, 0, 0, 1])
    T2 = involution(S2)
    # w^6 -> (w - z)^6 and z^6 -> z^6
    expect = BinaryForm(QQ, 1, [1, -1]) ** 6 + BinaryForm(QQ, 6,
                                                          [0] * 6 + [1])
    assert T2.g == expect


# ---------------------------------------------------------------------------
# sections
# ---------------------------------------------------------------------------

def ex41_gf11():
    """Order-5 instance over GF(11): beta=2, eps=1, alpha=4, delta=4."""
    K = GF11
    f = Dp1Surface.from_coeff_lists(K, [1, 0, 0, 0, 0],
                                    [7, 0, 0, 0, 0, 4, 0])
    C = SectionCurve(x0=K(7), y0=K(7), a=K(7), b=K(6), c=K(10),
                     p=K(2), q=K(1))
    return f, C


def test_section_is_minus_one_curve():
    S, C = ex41_gf11()
    assert is_minus_one_curve(C, S)
    assert section_surface_form(C, S).is_zero()
    # section points actually lie on the surface
    for z0, w0 in [(0, 1), (1, 1), (2, 1), (1, 0)]:
        assert S.contains(C.point_at(z0, w0))


def test_section_perturbed_not_on_surface():
    S, C = ex41_gf11()
    C2 = SectionCurve(C.x0, C.y0, C.a + GF11(1), C.b, C.c, C.p, C.q)
    assert not is_minus_one_curve(C2, S)


def test_section_form_degree6_generic():
    rng = random.Random(4)
    S = S_ISO
    for _ in range(5):
        C = SectionCurve(*(QQ(rng.randint(-4, 4)) for _ in range(7)))
        form = section_surface_form(C, S)
        if form.is_zero():
            continue
        assert form.d == 6
