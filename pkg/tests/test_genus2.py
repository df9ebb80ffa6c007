import random
from fractions import Fraction as Q

import pytest

from igusaprym.errors import InvalidInput, NotSquareFree
from igusaprym.exactmath import GF, BinaryForm, Poly, poly_from_roots
from igusaprym.genus2 import (
    HypCurve,
    igusa_clebsch,
    mobius_apply,
    same_curve_up_to_twist,
    sextic_form,
)

# raw transvectant values (A, B, C, D) for split sextics, frozen from the
# build-time oracle: A=(F,F)_6, B=(i,i)_4, C=(y1,y1)_2, D=Res(F_U,F_V)
ORACLE_RAW = [
    (1, [0, 1, 2, 3, 4, 5], 3110, 165952, 159056000, 1194393600),
    (2, [-3, -1, 0, 2, 5, 7], 744576, 8307532800, 2009444231577600, 539369039462400000000),
    (1, [1, 2, 3, 5, 8, 13], 248856, 831686400, 65488984012800, 2549361475584000000),
    (3, [-2, -1, 1, 3, 4, 6], 619542, 4192461504, 847777693099392, 77756841824256000000),
    (1, [0, 1, -1, 2, -2, 5], 8070, 1380672, 3504988800, 526727577600),
    (5, [2, 3, 5, 7, 11, 13], 11656800, 2874447360000, 9785485522944000000, 187300026777600000000000000),
]

WORKED_QUINTIC = Poly([Q(0), Q(112), Q(124), Q(-6), Q(-16), Q(2)])  # 2(x-7)x(x+2)(x+1)(x-4)


def test_invariants_match_root_sums():
    # cross-check against the classical symmetric functions of the roots:
    # A runs over the 15 pairings, B over the 10 triple splits, C over the
    # 60 matched splits, D is the root-product discriminant
    for lc, roots, A, B, C, D in ORACLE_RAW:
        ic = igusa_clebsch(poly_from_roots([Q(r) for r in roots], lc=Q(lc)))
        assert ic.I2 == Q(-A, 120)
        assert ic.I4 == Q(B, 6750) + Q(A * A, 135000)
        assert ic.I6 == Q(C, 101250) - Q(7 * A * B, 4050000) - Q(A ** 3, 27000000)
        assert ic.I10 == D


def test_invariants_frozen():
    ic = igusa_clebsch(poly_from_roots([Q(r) for r in [0, 1, 2, 3, 4, 5]]))
    assert ic.I2 == Q(-311, 12)
    assert ic.I4 == Q(72173, 750)
    assert ic.I6 == Q(-58752323, 135000)
    assert ic.I10 == 1194393600
    ic2 = igusa_clebsch(poly_from_roots([Q(r) for r in [1, 2, 3, 5, 8, 13]]))
    assert ic2.I2 == Q(-10369, 5)
    ic3 = igusa_clebsch(poly_from_roots([Q(r) for r in [0, 1, -1, 2, -2, 5]]))
    assert ic3.I2 == Q(-269, 4)
    ic4 = igusa_clebsch(poly_from_roots([Q(r) for r in [2, 3, 5, 7, 11, 13]], lc=Q(5)))
    assert ic4.I2 == -97140


def test_worked_quintic_invariants_frozen():
    ic = igusa_clebsch(WORKED_QUINTIC)
    assert ic.I2 == -341
    assert ic.I4 == Q(5458024, 375)
    assert ic.I6 == Q(-3058411928, 1875)
    assert ic.I10 != 0


def test_scaling_weights():
    f = WORKED_QUINTIC
    base = igusa_clebsch(f)
    for c in (Q(2), Q(-1), Q(3, 7)):
        sc = igusa_clebsch(Poly([a * c for a in f.c]))
        assert sc.I2 == c ** 2 * base.I2
        assert sc.I4 == c ** 4 * base.I4
        assert sc.I6 == c ** 6 * base.I6
        assert sc.I10 == c ** 10 * base.I10
        assert sc.same_point(base)


def test_mobius_invariance_random_orbits():
    rng = random.Random(29)
    f = sextic_form(WORKED_QUINTIC)
    base = igusa_clebsch(f)
    checked = 0
    for _ in range(50):
        m = [[rng.randrange(-6, 7) for _ in range(2)] for _ in range(2)]
        if m[0][0] * m[1][1] - m[0][1] * m[1][0] == 0:
            continue
        g = mobius_apply(f, m)
        tw = Q(rng.choice([1, -1, 2, 3, 5, -7]))
        g = BinaryForm(6, [tw * c for c in g.c])
        if not g.is_squarefree():
            continue
        assert igusa_clebsch(g).same_point(base)
        checked += 1
    assert checked >= 40


def test_same_curve_up_to_twist():
    f = poly_from_roots([Q(r) for r in [0, 1, 2, 3, 4, 5]])
    g = Poly([-a for a in f.c])
    assert same_curve_up_to_twist(f, g)
    assert same_curve_up_to_twist(f, f)
    h = poly_from_roots([Q(r) for r in [0, 1, 2, 3, 4, 6]])
    assert not same_curve_up_to_twist(f, h)
    # symmetry
    assert same_curve_up_to_twist(h, f) == same_curve_up_to_twist(f, h)


def test_not_squarefree_rejected():
    with pytest.raises(NotSquareFree):
        igusa_clebsch(poly_from_roots([Q(r) for r in [0, 0, 1, 2, 3, 4]]))
    # degree-5 with double root at infinity is fine as written (deg 5 -> one
    # infinity root only), but a degree-4 input is rejected outright
    with pytest.raises(InvalidInput):
        igusa_clebsch(Poly([Q(1), Q(0), Q(1), Q(0), Q(1)]))


def test_degree5_has_infinity_root():
    F = sextic_form(WORKED_QUINTIC)
    assert F.d == 6 and F.inf_mult() == 1


def test_invariants_over_fp():
    p = 10007
    F = GF(p)
    f6 = [F(c) for c in (3, 1, 4, 1, 5, 9, 2)]
    form = BinaryForm(6, f6)
    if form.is_squarefree():
        ic = igusa_clebsch(form)
        # scaling behaves the same way mod p
        c = F(17)
        sc = igusa_clebsch(BinaryForm(6, [c * a for a in f6]))
        assert sc.I10 == c ** 10 * ic.I10
        assert sc.same_point(ic)


def test_mobius_composition():
    rng = random.Random(31)
    f = sextic_form(poly_from_roots([Q(r) for r in [0, 1, -1, 2, -2, 5]]))
    for _ in range(10):
        m1 = [[rng.randrange(-4, 5) for _ in range(2)] for _ in range(2)]
        m2 = [[rng.randrange(-4, 5) for _ in range(2)] for _ in range(2)]
        d1 = m1[0][0] * m1[1][1] - m1[0][1] * m1[1][0]
        d2 = m2[0][0] * m2[1][1] - m2[0][1] * m2[1][0]
        if d1 == 0 or d2 == 0:
            continue
        lhs = mobius_apply(mobius_apply(f, m1), m2)
        prod = [
            [m2[0][0] * m1[0][0] + m2[0][1] * m1[1][0], m2[0][0] * m1[0][1] + m2[0][1] * m1[1][1]],
            [m2[1][0] * m1[0][0] + m2[1][1] * m1[1][0], m2[1][0] * m1[0][1] + m2[1][1] * m1[1][1]],
        ]
        assert lhs == mobius_apply(f, prod)


def test_mobius_order3_map():
    # x -> 1/(1-x) has matrix [[0,1],[-1,1]]; its cube is scalar
    f = sextic_form(WORKED_QUINTIC)
    m = [[0, 1], [-1, 1]]
    g = mobius_apply(mobius_apply(mobius_apply(f, m), m), m)
    assert g.proportional(f)
    with pytest.raises(InvalidInput):
        mobius_apply(f, [[1, 1], [1, 1]])


def test_special_flag_matches_definition():
    for lc, roots, *_ in ORACLE_RAW:
        ic = igusa_clebsch(poly_from_roots([Q(r) for r in roots], lc=Q(lc)))
        assert ic.special == (ic.I4 * ic.I6 == 0)


def test_hypcurve_json():
    c = HypCurve(WORKED_QUINTIC, twist=Q(2))
    j = c.to_json()
    assert j["twist"] == "2"
    assert len(j["f"]) == 7
    assert j["f"][1] == "112" and j["f"][6] == "0"
    with pytest.raises(NotSquareFree):
        HypCurve(poly_from_roots([Q(1), Q(1), Q(2), Q(3), Q(4), Q(5)]))
