"""Kummer quartic surfaces with a distinguished node.

Two constructions meet here.  Going down from the quartic threefold: the
tangent-hyperplane section at a good point b is a 16-nodal quartic surface
with b itself as a distinguished node, and the first two polars of b cut
out, after projection away from b, a plane conic Q_b together with a cubic
meeting it in the six branch points of a genus-2 curve.  Going up from a
curve y^2 = f(x): the singular members of the net of quadrics through the
degree-6 model of the curve form a dual quartic surface det(sum eta_i Q_i),
whose distinguished trope is eta_4 = 0 and whose Gauss map lands on the
companion quartic.  Both directions end in a binary sextic, and the two
sextics agree up to the weighted-projective equivalence of genus-2
invariants; the round trip is exercised in the tests.

Node conventions: section coordinates put the distinguished node at
(0:0:0:1) and the conic/cubic live in the first three variables.  All
arithmetic is exact (rationals or an odd-prime field).
"""

from .errors import (
    DegenerateBranch,
    InvalidInput,
    NotNormalized,
    NotSquareFree,
    SingularPoint,
    StructuralAssertionFailed,
    WorseSingularity,
)
from .exactmath import (
    BinaryForm,
    MultiPoly,
    _div,
    _nz,
    mat_kernel,
    mp_compose,
)
from .genus2 import HypCurve, sextic_form
from .igusa import iterated_polar, kummer_section, tangent_basis
from .projgeom import (
    conic_det,
    conic_from_multipoly,
    conic_parametrize,
    conic_rational_point,
    conic_to_multipoly,
    mp_mat_det,
    param_evaluate,
    conic_tangent_line,
    proj_normalize,
    proportional_to_square,
)

DEFAULT_HEIGHT = 10 ** 4


# ---------------------------------------------------------------------------
# node-polar data on a threefold section


def node_polar_data(I, b):
    """Conic and cubic cut out by the polars of b, projected away from b.

    Returns (gram, c3): the 3x3 Gram matrix of the conic Q_b and the
    ternary cubic, both in the first three coordinates of the tangent
    basis at b (b itself is the dropped last coordinate).  Their common
    zeroes are the six branch points of the genus-2 curve attached to b.
    """
    # reuse the section preconditions: on the quartic, off the singular
    # lines, off the elliptic hyperplanes (checked in this order)
    section = kummer_section(I, b)
    gram, c3 = _polar_pieces(I, b)
    section._node_polar = (gram, c3)
    return gram, c3


def section_polar_data(section):
    """Cached (conic gram, cubic) of a section; computed on first use."""
    if section._node_polar is None:
        if section.ambient is None:
            raise InvalidInput("section does not remember its ambient quartic")
        section._node_polar = _polar_pieces(section.ambient, section.point)
    return section._node_polar


def _polar_pieces(I, b):
    basis = tangent_basis(I, b)
    r2 = iterated_polar(I, b, 2).subst_linear(basis).collect(3)
    r1 = iterated_polar(I, b, 1).subst_linear(basis).collect(3)
    if any(k > 0 and not mp.is_zero() for k, mp in r2.items()):
        raise StructuralAssertionFailed("second polar keeps terms along b on the tangent space")
    if any(k > 1 and not mp.is_zero() for k, mp in r1.items()):
        raise StructuralAssertionFailed("first polar is not linear along b on the tangent space")
    Qb = r2.get(0, MultiPoly(4)).drop_var(3)
    q1 = r1.get(1, MultiPoly(4)).drop_var(3)
    c3 = r1.get(0, MultiPoly(4)).drop_var(3)
    # the six-line geometry forces the linear-in-b part of the first polar
    # to be the tangent-cone conic itself
    if not q1.proportional(Qb):
        raise StructuralAssertionFailed("polar decomposition does not reproduce the tangent cone")
    gram = conic_from_multipoly(Qb)
    if not _nz(conic_det(gram)):
        raise StructuralAssertionFailed("tangent-cone conic is singular off the elliptic locus")
    return gram, c3


def branch_divisor(gram, c3, param):
    """Pull the cubic back along a parametrization of the conic: a sextic.

    param must come from conic_parametrize on the same conic; the result
    is the degree-6 branch divisor as a binary form in the parameter.
    """
    if not _gram_proportional(param["gram"], gram):
        raise InvalidInput("parametrization does not belong to this conic")
    sextic = mp_compose(c3, param["components"])
    if sextic.is_zero():
        raise DegenerateBranch("cubic vanishes identically on the conic")
    return sextic.to_binary_form(6)


def _gram_proportional(a, b):
    fa = conic_to_multipoly(a)
    fb = conic_to_multipoly(b)
    return fa.proportional(fb)


def section_curve(I, b, height_bound=DEFAULT_HEIGHT):
    """The genus-2 curve remembered by the section at b, up to twist.

    Needs a rational point on Q_b; raises NoRationalPointFound within the
    height bound otherwise (which proves nothing — see conic_rational_point).
    """
    gram, c3 = node_polar_data(I, b)
    pt = conic_rational_point(gram, height_bound=height_bound)
    param = conic_parametrize(gram, pt)
    sextic = branch_divisor(gram, c3, param)
    return HypCurve(sextic)


def kummer_extract(I, b, height_bound=DEFAULT_HEIGHT):
    """Everything the section at b knows: conic, cubic, branch sextic.

    The twist slot is None: bare extraction does not pin a quadratic twist.
    """
    gram, c3 = node_polar_data(I, b)
    pt = conic_rational_point(gram, height_bound=height_bound)
    param = conic_parametrize(gram, pt)
    sextic = branch_divisor(gram, c3, param)
    return {
        "conic": gram,
        "cubic": c3,
        "param": param,
        "branch_sextic": sextic,
        "twist": None,
    }


# ---------------------------------------------------------------------------
# trope planes through the distinguished node


def tropes_through_node(section, height_bound=DEFAULT_HEIGHT):
    """The six trope planes through the node, when they are rational.

    Returns a list of six plane coefficient vectors (section coordinates,
    primitive, last entry 0 so each plane passes through the node).  Each
    plane's section of the quartic is verified to be a perfect square up
    to a constant.  When the six contact points are not all rational the
    Galois-stable description {"symbolic": True, conic, cubic} is returned
    instead of planes over an extension field.
    """
    gram, c3 = section_polar_data(section)
    pt = conic_rational_point(gram, height_bound=height_bound)
    param = conic_parametrize(gram, pt)
    sextic = branch_divisor(gram, c3, param)
    roots = sextic.rational_roots()
    if any(m > 1 for _, m in roots):
        raise DegenerateBranch("branch divisor has a repeated point")
    if len(roots) < 6:
        return {"symbolic": True, "conic": gram, "cubic": c3}
    planes = []
    for (s0, t0), _m in roots:
        contact = param_evaluate(param, s0, t0)
        line = conic_tangent_line(gram, contact)
        plane = proj_normalize(list(line) + [0])
        rows = mat_kernel([plane])
        piece = section.quartic.subst_linear(rows)
        if proportional_to_square(piece) is None:
            raise StructuralAssertionFailed("trope section of the quartic is not a square")
        planes.append(plane)
    return planes


# ---------------------------------------------------------------------------
# plane quartics with one node


class NodalPlaneQuartic:
    """Ternary quartic w^2 c2(v) + w c3(v) + c4(v), node at (0:0:1).

    c2, c3, c4 are binary forms in the first two variables of degrees
    2, 3, 4; the absence of w^3 and w^4 terms is what makes the last
    coordinate point a node (possibly a worse one when c2 = 0).
    """

    def __init__(self, form):
        if form.n != 3:
            raise InvalidInput("nodal plane quartic needs exactly 3 variables")
        if form.is_zero() or form.degree() != 4:
            raise InvalidInput("form is not a quartic")
        by = form.collect(2)
        if any(k > 2 and not mp.is_zero() for k, mp in by.items()):
            raise InvalidInput("form has degree >= 3 in the last variable: no node at (0:0:1)")
        self.form = form
        self.c2 = _binary_slice(by.get(2), 2)
        self.c3 = _binary_slice(by.get(1), 3)
        self.c4 = _binary_slice(by.get(0), 4)

    def __repr__(self):
        return "NodalPlaneQuartic(c2=%r)" % (self.c2,)


def _binary_slice(mp, d):
    """Coefficient of a w-power as a binary form in (v0, v1), zero allowed."""
    c = [0] * (d + 1)
    if mp is not None:
        for e, v in mp.t.items():
            if e[0] + e[1] != d:
                raise InvalidInput("slice is not homogeneous of degree %d" % d)
            c[e[1]] = v
    return BinaryForm(d, c)


def nodal_quartic_branch(D):
    """Branch sextic c3^2 - 4 c2 c4 of the node projection, plus c2.

    The projection away from the node is a degree-2 cover of a line; its
    discriminant is the branch locus and c2 is the tangent-cone pair.
    """
    if all(not _nz(x) for x in D.c2.c):
        raise WorseSingularity("tangent cone collapses: not an ordinary node")
    minus4 = (D.c2 * D.c4).map_coefficients(lambda v: -4 * v)
    return D.c3 * D.c3 + minus4, D.c2


# ---------------------------------------------------------------------------
# the dual quartic surface of a genus-2 curve


def _curve_coefficients(f):
    """f as [f0..f6] with f(x) = sum f_k x^k (degree-5 input gets f6 = 0)."""
    F = sextic_form(f)
    return [F.c[6 - k] for k in range(7)], F


def _gram_matrices(fc):
    # pick the half-unit from whatever field the coefficients live in,
    # so the same code serves both the rationals and odd-prime fields
    lead = next(v for v in fc if _nz(v))
    one = _div(lead, lead)
    h = _div(one, 2)
    half = [v * h for v in fc]
    G1 = [[0, 0, -h, 0], [0, one, 0, 0], [-h, 0, 0, 0], [0, 0, 0, 0]]
    G2 = [[0, 0, 0, h], [0, 0, -h, 0], [0, -h, 0, 0], [h, 0, 0, 0]]
    G3 = [[0, 0, 0, 0], [0, 0, 0, -h], [0, 0, one, 0], [0, -h, 0, 0]]
    G4 = [
        [fc[0], half[1], 0, 0],
        [half[1], fc[2], half[3], 0],
        [0, half[3], fc[4], half[5]],
        [0, 0, half[5], fc[6]],
    ]
    return [G1, G2, G3, G4]


class DualKummer:
    """det(eta . Q) = 0: the singular quadrics through the sextic model.

    G is the quartic in eta_1..eta_4 (variables 0..3); grams holds the
    four symmetric matrices of the net restricted to the y = 0 hyperplane.
    The section eta_4 = 0 is the distinguished trope: a perfect square.
    """

    def __init__(self, G, f, grams):
        self.G = G
        self.f = f
        self.grams = grams

    def generic_gram(self, eta):
        """The symmetric matrix of the member at parameter eta."""
        if len(eta) != 4:
            raise InvalidInput("eta has 4 coordinates")
        return [
            [sum(eta[k] * self.grams[k][i][j] for k in range(4)) for j in range(4)]
            for i in range(4)
        ]

    def __repr__(self):
        return "DualKummer(f=%r)" % (self.f,)


def kummer_dual_from_curve(f):
    """Build the dual quartic surface of y^2 = f(x), f square-free."""
    fc, F = _curve_coefficients(f)
    if not F.is_squarefree():
        raise NotSquareFree("curve polynomial has a repeated root")
    grams = _gram_matrices(fc)
    eta = [MultiPoly.var(4, i) for i in range(4)]
    M = [
        [sum((eta[k] * grams[k][i][j] for k in range(4)), MultiPoly(4)) for j in range(4)]
        for i in range(4)
    ]
    G = mp_mat_det(M)
    _assert_trope_square(G)
    return DualKummer(G, F, grams)


def _assert_trope_square(G):
    # the trope section is independent of the curve: it is the square of
    # the conic of rank-3 members of the net through the normal curve
    e1, e2, e3 = (MultiPoly.var(4, i) for i in range(3))
    expected = (e1 * e3 - e2 * e2) * (e1 * e3 - e2 * e2)
    trope = MultiPoly(4, {e: c * 16 for e, c in G.t.items() if e[3] == 0})
    if not (trope - expected).is_zero():
        raise StructuralAssertionFailed("distinguished trope section is not the expected square")


# the linear change eta = (-xi4 : xi3 : -xi2 : xi1), its own inverse up to
# a global sign
_NODE_SUBST = [[0, 0, 0, 1], [0, 0, -1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]]


def kummer_from_curve_normalized(f):
    """The companion quartic G_K(xi) = G(-xi4, xi3, -xi2, xi1).

    Requires the normalized shape f6 = 0, f5 = 1 (a marked ramification
    point above x = infinity); then G_K acquires a node at (0:0:0:1).
    """
    fc, F = _curve_coefficients(f)
    if _nz(fc[6]) or fc[5] != 1:
        raise NotNormalized("normalized curves have f6 = 0 and f5 = 1")
    dual = kummer_dual_from_curve(F)
    GK = dual.G.subst_linear(_NODE_SUBST)
    grad = [GK.partial(i).evaluate([0, 0, 0, 1]) for i in range(4)]
    if _nz(GK.evaluate([0, 0, 0, 1])) or any(_nz(g) for g in grad):
        raise StructuralAssertionFailed("companion quartic lost its node at (0:0:0:1)")
    return GK


def node_branch_sextic(GQ, height_bound=DEFAULT_HEIGHT):
    """Branch data of a quartic surface at its node (0:0:0:1).

    Writes GQ = w^2 q2(v) + w q3(v) + q4(v), parametrizes the tangent-cone
    conic q2 and pulls q3 back to it.  Returns (sextic, gram, q3, param).
    This is the surface analogue of node_polar_data + branch_divisor and
    is what reconstructs the curve from its companion quartic.
    """
    if GQ.n != 4 or GQ.is_zero() or GQ.degree() != 4:
        raise InvalidInput("expected a quartic form in 4 variables")
    by = GQ.collect(3)
    if any(k > 2 and not mp.is_zero() for k, mp in by.items()):
        raise WorseSingularity("no node at (0:0:0:1): degree >= 3 terms in the last variable")
    q2 = by.get(2, MultiPoly(4)).drop_var(3)
    q3 = by.get(1, MultiPoly(4)).drop_var(3)
    if q2.is_zero():
        raise WorseSingularity("tangent cone collapses at the node")
    gram = conic_from_multipoly(q2)
    if not _nz(conic_det(gram)):
        raise WorseSingularity("tangent cone at the node is a singular conic")
    pt = conic_rational_point(gram, height_bound=height_bound)
    param = conic_parametrize(gram, pt)
    sextic = branch_divisor(gram, q3, param)
    return sextic, gram, q3, param


def curve_from_dual(f, height_bound=DEFAULT_HEIGHT):
    """Round trip: curve -> companion quartic -> branch sextic at the node."""
    GK = kummer_from_curve_normalized(f)
    sextic, _gram, _q3, _param = node_branch_sextic(GK, height_bound=height_bound)
    return HypCurve(sextic)


# ---------------------------------------------------------------------------
# Gauss map


def gauss_map(G, p):
    """The gradient point of G at p (the tangent plane, as dual coordinates)."""
    if G.n != len(p):
        raise InvalidInput("point length does not match the number of variables")
    grad = [G.partial(i).evaluate(list(p)) for i in range(G.n)]
    if all(not _nz(g) for g in grad):
        raise SingularPoint("gradient vanishes: Gauss map undefined")
    return proj_normalize(grad)
