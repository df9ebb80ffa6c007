import random
from fractions import Fraction as Q

import pytest

from igusaprym.errors import (
    EllipticLocus,
    InvalidInput,
    NotOnHyperplane,
    OnSingularLine,
)
from igusaprym.exactmath import GF, MultiPoly, fp_roots
from igusaprym.igusa import (
    SYNTHEMES,
    KummerSection,
    SigmaAction,
    chart5,
    contains,
    gradient5,
    igusa_classical,
    igusa_symmetroid,
    is_elliptic,
    is_on_singular_line,
    iterated_polar,
    kummer_section,
    polar_pair,
    sigma_apply,
    unchart5,
)
from igusaprym.projgeom import proj_eq, restrict_form

A_PT = [-55, -29, 49, 36, 20, -21]
B_PT = [-29, 49, -55, 36, 20, -21]


def I():
    return igusa_classical()


# ---------------------------------------------------------------- model


def test_chart_agrees_with_ambient():
    rng = random.Random(3)
    F6, F5 = I().F6, I().F5
    for _ in range(10):
        c = [Q(rng.randrange(-9, 10)) for _ in range(5)]
        assert F5.evaluate(c) == F6.evaluate(unchart5(c))


def test_symmetric_group_invariance_symbolic():
    # permuting the six coordinates reindexes the exponent tuples; the
    # quartic is a symmetric function, so all 720 permutations fix it
    from itertools import permutations

    F6 = I().F6
    for perm in permutations(range(6)):
        permuted = {}
        for e, c in F6.t.items():
            pe = tuple(e[perm[i]] for i in range(6))
            permuted[pe] = c
        assert permuted == F6.t


def test_euler_identity_symbolic():
    F5 = I().F5
    lhs = MultiPoly(5)
    for i in range(5):
        lhs = lhs + MultiPoly.var(5, i) * F5.partial(i)
    assert lhs == 4 * F5


def test_all_fifteen_lines_singular_symbolically():
    F5 = I().F5
    grads = [F5.partial(i) for i in range(5)]
    assert len(SYNTHEMES) == 15
    for line in I().lines:
        u, v = line.basis
        basis5 = [u[:5], v[:5]]
        assert F5.subst_linear(basis5).is_zero()
        for g in grads:
            assert g.subst_linear(basis5).is_zero()


# ---------------------------------------------------------------- membership


def test_contains_frozen():
    assert contains(I(), A_PT)
    assert not contains(I(), [1, -1, 0, 0, 0, 0])
    with pytest.raises(NotOnHyperplane):
        contains(I(), [1, 1, 1, 1, 1, 1])


def test_singular_line_points_on_quartic():
    rng = random.Random(5)
    for idx in range(15):
        line = I().lines[idx]
        u, v = line.basis
        s, t = rng.randrange(1, 7), rng.randrange(1, 7)
        pt = [s * a + t * b for a, b in zip(u, v)]
        assert contains(I(), pt)
        assert is_on_singular_line(I(), pt) in (idx, *[k for k in range(15) if k != idx])


def test_is_elliptic():
    assert not is_elliptic(I(), A_PT)
    # x0 + x1 + x2 = 0 forced
    pt = [1, 2, -3, 4, 5, -9]
    assert is_elliptic(I(), pt)


def test_is_on_singular_line_frozen():
    t = Q(3)
    pt = [1, 1, t, t, -1 - t, -1 - t]
    assert is_on_singular_line(I(), pt) == 0  # {01|23|45} is first in lex order
    assert SYNTHEMES[0] == ((0, 1), (2, 3), (4, 5))
    assert is_on_singular_line(I(), A_PT) is None


# ---------------------------------------------------------------- polar


def test_polar_frozen_worked_pair():
    assert polar_pair(I(), A_PT, B_PT) == 0
    assert polar_pair(I(), B_PT, A_PT) == 118110720


def test_polar_euler_on_points():
    rng = random.Random(7)
    for _ in range(10):
        a = [rng.randrange(-9, 10) for _ in range(5)]
        a6 = unchart5(a)
        assert polar_pair(I(), a6, a6) == 4 * I().F6.evaluate(a6)


def test_polar_matches_iterated_polar_j3():
    # j=3 polar is a linear form proportional to x -> P(b, x)
    lin = iterated_polar(I(), B_PT, 3)
    assert lin.degree() == 1
    g = gradient5(I(), B_PT)
    # proportionality constant is 4! / 1 = 24 with the factorial-free rule
    coeffs = [lin.t.get(tuple(1 if k == i else 0 for k in range(5)), 0) for i in range(5)]
    k = None
    for c, gi in zip(coeffs, g):
        if gi != 0:
            k = Q(c, gi)
            break
    assert k is not None and k != 0
    assert all(c == k * gi for c, gi in zip(coeffs, g))
    with pytest.raises(InvalidInput):
        iterated_polar(I(), B_PT, 4)
    with pytest.raises(InvalidInput):
        iterated_polar(I(), B_PT, 0)


def test_polar_vanishing_matches_tangent_membership_fp():
    p = 10007
    F = GF(p)
    rng = random.Random(11)
    Ic = I()
    a6 = [F(x) for x in A_PT]
    g = gradient5(Ic, a6)
    for _ in range(100):
        b5 = [F(rng.randrange(p)) for _ in range(4)]
        # complete b so that P(a,b) = 0: solve the linear condition
        i0 = next(i for i in range(5) if g[i] != 0)
        rest = [i for i in range(5) if i != i0]
        s = sum(g[rest[k]] * b5[k] for k in range(4))
        bi = -s / g[i0]
        chart = [None] * 5
        for k, i in enumerate(rest):
            chart[i] = b5[k]
        chart[i0] = bi
        b6 = unchart5(chart)
        assert polar_pair(Ic, a6, b6) == 0
        # perturb off the tangent space
        chart2 = list(chart)
        chart2[i0] = chart2[i0] + 1
        assert polar_pair(Ic, a6, unchart5(chart2)) != 0


# ---------------------------------------------------------------- sigma


def test_sigma_frozen():
    s = SigmaAction.from_cycles([(0, 1, 2)])
    assert sigma_apply(s, A_PT) == B_PT
    assert SigmaAction.parse("(0,1,2)") == s
    assert sigma_apply(SigmaAction.parse("id"), A_PT) == A_PT
    s3 = s.compose(s).compose(s)
    assert s3.is_identity()
    assert s.cycle_type() == (3, 1, 1, 1)
    assert SigmaAction.parse("(0,1)(2,3)(4,5)").cycle_type() == (2, 2, 2)


def test_sigma_preserves_F():
    rng = random.Random(13)
    s = SigmaAction.parse("(0,3)(1,4,2)")
    for _ in range(10):
        c = [rng.randrange(-9, 10) for _ in range(5)]
        a = unchart5(c)
        assert I().F6.evaluate(a) == I().F6.evaluate(sigma_apply(s, a))


# ---------------------------------------------------------------- sections


def test_kummer_section_worked_point():
    ks = kummer_section(I(), A_PT)
    assert isinstance(ks, KummerSection)
    assert ks.quartic.n == 4 and ks.quartic.degree() == 4
    assert len(ks.nodes) == 16
    assert ks.nodes[0] == [0, 0, 0, 1]
    # basis has a as the last row, in chart coordinates
    assert ks.basis[3] == chart5(A_PT)
    # the quartic vanishes at every node (they are on the surface, not junk)
    for nd in ks.nodes:
        assert ks.quartic.evaluate(nd) == 0


def test_kummer_section_rejects_special_points():
    # elliptic but not on a line: search a small point with x0+x1+x2=0 on I
    found = None
    rng = random.Random(17)
    Ic = I()
    for _ in range(4000):
        c = [rng.randrange(-6, 7) for _ in range(3)]
        x = [c[0], c[1], -c[0] - c[1], c[2]]
        # solve F~ = 0 over Q by scanning the last chart coordinate
        for x4 in range(-6, 7):
            pt = unchart5(x + [x4])
            if contains(Ic, pt) and any(v != 0 for v in pt):
                if is_on_singular_line(Ic, pt) is None and is_elliptic(Ic, pt):
                    found = pt
                    break
        if found:
            break
    assert found is not None
    with pytest.raises(EllipticLocus):
        kummer_section(Ic, found)
    line_pt = [1, 1, 2, 2, -3, -3]
    with pytest.raises(OnSingularLine):
        kummer_section(Ic, line_pt)
    with pytest.raises(InvalidInput):
        kummer_section(Ic, [1, -1, 0, 0, 0, 0])


def test_kummer_section_over_fp_sixteen_nodes():
    p = 10007
    F = GF(p)
    Ic = I()
    rng = random.Random(19)
    done = 0
    while done < 3:
        c03 = [F(rng.randrange(1, p)) for _ in range(4)]
        by_x4 = Ic.F5.collect(4)
        coeffs = [0] * 5
        for k, mp in by_x4.items():
            coeffs[k] = F(mp.evaluate([c03[0], c03[1], c03[2], c03[3], F(0)])).v
        roots = fp_roots(coeffs, p)
        for r, _m in roots:
            a6 = unchart5([c03[0], c03[1], c03[2], c03[3], F(r)])
            if is_on_singular_line(Ic, a6) is not None or is_elliptic(Ic, a6):
                continue
            ks = kummer_section(Ic, a6)
            assert len(ks.nodes) == 16
            done += 1
            break


def test_restriction_singular_at_a():
    # spec example for restrict_form: the tangent-section quartic has a
    # singular point at a's restricted coordinates
    ks = kummer_section(I(), A_PT)
    for i in range(4):
        assert ks.quartic.partial(i).evaluate([0, 0, 0, 1]) == 0


def test_symmetroid_model():
    S = igusa_symmetroid()
    assert S.F5.degree() == 4
    # x0=x1=x2=0 zeroes the first row of A, so the determinant vanishes
    assert contains(S, [0, 0, 0, 1, 1])
    # e0 gives a block-diagonal matrix with determinant 1
    assert not contains(S, [1, 0, 0, 0, 0])
    with pytest.raises(InvalidInput):
        is_elliptic(S, [1, 0, 0, 0, 0, 0])
