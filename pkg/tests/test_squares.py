"""Squared-Jacobian gluing families: overlap degrees, starred cycle types,
the closed-form two-parameter model, palindromic splitting, and the worked
degree-2-map example.  Expected values frozen from notes/oracle_squares.py."""

import random

import pytest

from igusaprym.errors import (
    BranchCollision,
    DegeneratePair,
    DegenerateParameters,
    DegenerateQuotient,
    InvalidInput,
    NotPalindromic,
)
from igusaprym.exactmath import QQ, BinaryForm, Poly, cyclotomic_field
from igusaprym.genus2 import HypCurve, sextic_form, same_curve_up_to_twist
from igusaprym.glue import same_cover_class
from igusaprym.squares import (
    EXTRA_INVOLUTIONS,
    HYPERELLIPTIC_FAMILIES,
    build_square_X,
    example_2dim,
    example_m2_nonhyp,
    instantiate_family,
    overlap_degree,
    palindromic_split,
    render_cycle_label,
    sample_admissible,
    starred_cycle_type,
    two_dim_family_model,
)

ALL_LABELS = [
    "(1,2,3)(6*)",
    "(1,2,3)(5,6*)",
    "(1,2)(3,4)(6*)",
    "(1,2,3,4)(6*)",
    "(3,4,5,6*)",
    "(1,2,3,4)(5,6*)",
    "(1,2,3,4,5)(6*)",
    "(2,3,4,5,6*)",
    "(1,2,3,4,5,6*)",
]


def test_registry_is_complete():
    assert list(HYPERELLIPTIC_FAMILIES) == ALL_LABELS
    assert set(EXTRA_INVOLUTIONS) == {
        "(1,2,3)(6*)", "(1,2,3,4)(6*)", "(3,4,5,6*)",
        "(1,2,3,4,5)(6*)", "(2,3,4,5,6*)", "(1,2,3,4,5,6*)",
    }


# ---------------------------------------------------------------------------
# the symbolic two-parameter family


def test_two_dim_symbolic_closed_form():
    gl = example_2dim()
    assert gl.checks["closed_form_identity"]
    assert gl.checks["markers_at_minus1_plus1"]
    assert gl.checks["model_palindromic"]
    assert gl.checks["overlap_degree_5"]


def test_two_dim_specialization_at_1_1():
    F = two_dim_family_model(QQ(1), QQ(1))
    assert F == Poly([1, 0, 1]) * Poly([1, 0, 8, 0, 30, 0, 8, 0, 1])
    gl = example_2dim(1, 1)
    assert gl.X.F.to_poly() == F
    assert gl.checks["split_quotient_matches_base"]


def test_two_dim_markers_sit_at_minus_one_plus_one():
    gl = example_2dim(3, 7)
    (a0, b0), (a1, b1) = gl.markers
    assert a0 * b1 * -1 == a1 * b0 * 1  # -1 and +1 projectively
    assert gl.checks["markers_at_minus1_plus1"]


def test_two_dim_degenerate_parameters():
    with pytest.raises(DegenerateParameters):
        example_2dim(2, 1)  # u^2 = 4v
    with pytest.raises(DegenerateParameters):
        example_2dim(3, 0)  # v = 0
    with pytest.raises(DegenerateParameters):
        example_2dim(-3, 2)  # 1 + u + v = 0: a marker collides


def test_two_dim_split_invariants_random():
    rng = random.Random(20260819)
    done = 0
    while done < 10:
        u, v = QQ(rng.randrange(-30, 31)), QQ(rng.randrange(-30, 31))
        try:
            gl = example_2dim(u, v)
        except DegenerateParameters:
            continue
        assert gl.checks["split_quotient_matches_base"], (u, v)
        done += 1


# ---------------------------------------------------------------------------
# palindromic splitting


def test_palindromic_split_x10_plus_1():
    F = BinaryForm(10, [1] + [0] * 9 + [1])  # x^10 + 1
    Cp, Cm = palindromic_split(F)
    t5 = Poly([0, 5, 0, -5, 0, 1])
    assert Cp.f == t5 * Poly([2, 1])
    assert Cm.f == t5 * Poly([-2, 1])


def test_palindromic_split_rejects_non_palindromic():
    with pytest.raises(NotPalindromic):
        palindromic_split(Poly([1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 2]))


def test_palindromic_split_degenerate_quotient():
    with pytest.raises(DegenerateQuotient):
        palindromic_split(Poly([0, 0, 0, 0, 0, 1]))  # x^5: R is constant


# ---------------------------------------------------------------------------
# the nine families


@pytest.mark.parametrize("label", ALL_LABELS)
def test_family_overlap_25_random_admissible(label):
    rng = random.Random(sum(map(ord, label)))
    row = HYPERELLIPTIC_FAMILIES[label]
    done = 0
    while done < 25:
        vals = tuple(QQ(rng.randrange(-40, 41)) for _ in row.params)
        try:
            fam = row.instantiate(*vals)
        except DegenerateParameters:
            continue
        assert fam.overlap() == 5, (label, vals)
        done += 1


@pytest.mark.parametrize("label", ALL_LABELS)
def test_family_cycle_label_matches(label):
    rng = random.Random(7)
    done = 0
    while done < 3:
        vals = tuple(QQ(rng.randrange(2, 40))
                     for _ in HYPERELLIPTIC_FAMILIES[label].params)
        try:
            fam = instantiate_family(label, *vals)
        except DegenerateParameters:
            continue
        assert fam.cycle_label() == label, (label, vals)
        done += 1


def test_family_degeneracies():
    with pytest.raises(DegenerateParameters):
        instantiate_family("(3,4,5,6*)", 1)  # repeated roots
    with pytest.raises(DegenerateParameters):
        instantiate_family("(1,2,3,4)(6*)", 0)  # overlap jumps to 6
    with pytest.raises(DegenerateParameters):
        instantiate_family("(1,2,3,4)(5,6*)", -1)  # template denominator
    with pytest.raises(DegenerateParameters):
        instantiate_family("(1,2,3)(5,6*)", 0)  # repeated root at 0
    with pytest.raises(InvalidInput):
        instantiate_family("(9,9)(6*)", 2)


def test_example_instantiations_as_printed():
    fam = instantiate_family("(1,2,3)(6*)", 2)
    assert fam.f == Poly([0, 1]) * Poly([-1, 1]) * Poly([1, -1, 1]) * Poly([-2, 1])
    assert fam.mu == [[0, 1], [-1, 1]]
    fam = instantiate_family("(3,4,5,6*)", 2)
    assert fam.f == Poly([0, 1]) * Poly([-1, 1]) * Poly([-2, 1]) \
        * Poly([-4, 1]) * Poly([-8, 1])
    assert fam.mu == [[QQ(2), 0], [0, 1]]


def test_sample_admissible_deterministic():
    a = sample_admissible("(3,4,5,6*)", random.Random(5))
    b = sample_admissible("(3,4,5,6*)", random.Random(5))
    assert a.params == b.params


# ---------------------------------------------------------------------------
# extra involutions


@pytest.mark.parametrize("label", sorted(EXTRA_INVOLUTIONS))
def test_extra_involution_type(label):
    rng = random.Random(11)
    row = HYPERELLIPTIC_FAMILIES[label]
    done = 0
    while done < 10:
        vals = tuple(QQ(rng.randrange(2, 50)) for _ in row.params)
        try:
            fam = row.instantiate(*vals)
        except DegenerateParameters:
            continue
        rep = fam.extra_involution_report()
        assert rep["is_involution"], (label, vals)
        assert rep["overlap_degree"] == 5, (label, vals)
        assert rep["label"] == "(1,2)(3,4)(6*)", (label, vals)
        assert rep["form_certificate"], (label, vals)
        done += 1


def test_reciprocal_fails_on_the_4cycle_row():
    # on (x^4-1)(x-u) the reciprocal map fixes +-1, swaps +-i, and moves
    # both u and infinity out of the branch set: overlap 4, so it cannot
    # be the extra involution for this family
    fam = instantiate_family("(1,2,3,4)(6*)", 3)
    K4 = cyclotomic_field(4)
    assert overlap_degree(fam.f, [[0, 1], [1, 0]], K4) == 4
    assert overlap_degree(fam.f, [[-1, 0], [0, 1]], K4) == 5


# ---------------------------------------------------------------------------
# gluing: hyperelliptic mode


def test_gluing_from_rational_row():
    fam = instantiate_family("(3,4,5,6*)", 2)
    gl = fam.gluing()
    assert gl.X.model == "hyperelliptic" and gl.X.verify()
    assert gl.checks["model_palindromic"]
    assert gl.permutation["label"] == "(3,4,5,6*)"
    Cp, Cm = palindromic_split(gl.X)
    inv = HypCurve(fam.f).invariants()
    assert inv.same_point(Cp.invariants()) or inv.same_point(Cm.invariants())


def test_gluing_from_cyclotomic_row_is_structural():
    fam = instantiate_family("(1,2,3,4)(6*)", 3)
    gl = fam.gluing()
    assert gl.X.verify()
    assert gl.checks["model_palindromic"]
    assert gl.permutation["label"] == "(1,2,3,4)(6*)"


def test_gluing_twists_scale_the_model():
    fam = instantiate_family("(3,4,5,6*)", 3)
    g1 = fam.gluing()
    g2 = fam.gluing(twists=(2, 3))
    assert g2.X.F.c == [a * 6 for a in g1.X.F.c]


def test_gluing_rejects_bad_overlap():
    # mu = identity has overlap 6
    with pytest.raises(DegeneratePair):
        build_square_X(Poly([0, 112, 124, -6, -16, 2]), [[1, 0], [0, 1]])


def test_gluing_json_has_exact_scalars():
    gl = example_2dim(1, 1)
    js = gl.to_json()
    assert js["mode"] == "hyperelliptic"
    assert js["mu"]["kind"] == "mobius"
    assert js["checks"]["closed_form_identity"] is True
    assert js["markers"] == ["-1", "1"]
    assert all(isinstance(c, str) for c in js["X"]["F"])


# ---------------------------------------------------------------------------
# gluing: d4 mode (degree-2 self-map)


def test_m2_example_end_to_end():
    gl = example_m2_nonhyp()
    assert gl.checks["branch_set_stable"]
    assert gl.branch_quadratic == Poly([3721, 478, 121])
    assert gl.permutation["cycle_type"] == [3, 3]

    def rotate_to(c, first):
        i = c.index(first)
        return tuple(c[i:] + c[:i])

    cycles = gl.permutation["point_cycles"]
    with_m2 = [c for c in cycles if "-2" in c]
    with_inf = [c for c in cycles if "inf" in c]
    assert len(with_m2) == 1 and rotate_to(with_m2[0], "-2") == ("-2", "-1", "4")
    assert len(with_inf) == 1 and rotate_to(with_inf[0], "inf") == ("inf", "7", "0")
    assert gl.checks["covers_verify"]
    assert gl.checks["distinguished_cover_found"]
    assert gl.checks["two_three_cycles"]


def test_m2_branch_quadratic_values():
    gl = example_m2_nonhyp(check_distinguished=False)
    q = gl.branch_quadratic
    # discriminant of the branch quadratic is negative: conjugate branch pts
    assert q(QQ(0)) == 3721 and q(QQ(1)) == 4320
    assert 478 ** 2 - 4 * 121 * 3721 < 0


def test_d4_mode_rejects_unstable_branch_set():
    P = BinaryForm(2, [1, 0, 0])  # x^2
    Q = BinaryForm(2, [0, 0, 1])
    with pytest.raises(DegeneratePair):
        build_square_X(Poly([0, 112, 124, -6, -16, 2]), (P, Q), mode="d4")


def test_d4_cover_against_known_class():
    gl = example_m2_nonhyp(check_distinguished=False)
    f = Poly([0, 112, 124, -6, -16, 2])
    assert any(
        same_cover_class(f, cv.c, cv.d, Poly([125538, 131121, -13914, -5577]),
                         QQ(-9828))
        for cv in gl.covers)


# ---------------------------------------------------------------------------
# starred-cycle plumbing


def test_render_cycle_label_shapes():
    assert render_cycle_label((3,), 1) == "(1,2,3)(6*)"
    assert render_cycle_label((2, 2), 1) == "(1,2)(3,4)(6*)"
    assert render_cycle_label((), 6) == "(1,2,3,4,5,6*)"
    assert render_cycle_label((), 4) == "(3,4,5,6*)"
    assert render_cycle_label((4,), 2) == "(1,2,3,4)(5,6*)"


def test_starred_cycle_type_direct():
    # branch set {0,1,u,u^2,u^3,inf} under x -> ux at u = 2
    roots = [(QQ(0), QQ(1)), (QQ(1), QQ(1)), (QQ(2), QQ(1)), (QQ(4), QQ(1)),
             (QQ(8), QQ(1)), (QQ(1), QQ(0))]
    unst, star = starred_cycle_type(roots, [[QQ(2), 0], [0, 1]])
    assert unst == () and star == 4


def test_starred_cycle_type_needs_overlap_5():
    roots = [(QQ(i), QQ(1)) for i in range(6)]
    with pytest.raises(DegeneratePair):
        starred_cycle_type(roots, [[QQ(1), QQ(17)], [QQ(0), QQ(1)]])
