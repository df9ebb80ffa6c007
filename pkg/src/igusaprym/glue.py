"""Gluing constructions along a tangency pair on the quartic threefold.

A pair of points (a, b) on the threefold with the polar pairing P(a, b)
vanishing comes in two usable flavours, told apart by the reverse value
P(b, a):

* one-sided vanishing ("D4"): the plane T_a cap T_b cuts the tangent
  section at b in a quartic curve with a node at b.  Projecting the
  section away from b turns that plane into a line, the nodal-quartic
  branch machinery extracts a genus-2 curve C_a from the plane quartic,
  and the usual node projection extracts C_b from the whole section.
  Chasing a point of the section conic to its second tangent contact on
  the line gives a degree-2 map mu between the two parameter lines; its
  branch quadratic is forced to match the tangent cone of the node, and
  mu transports the branch sextic of C_b exactly onto that of C_a.  The
  glued genus-4 curve then lives as a tower y^2 = f(x), z^2 = c(x) + d y
  over C_a, built separately by genus4_D4 from the norm identity
  c^2 - d^2 f = lam * q * s^2.

* two-sided vanishing ("V4"): the plane section degenerates to a double
  conic.  The conic carries seven marked points -- a, b, and the five
  nodes of the section lying on it -- and a coordinate on the conic
  sending the marker of a to infinity produces a quintic f and a scalar
  beta = x(marker of b).  The two genus-2 curves are y^2 = d1 f(x) and
  y^2 = d2 (x - beta) f(x), and the glued genus-4 curve is the
  hyperelliptic y^2 = d1 f(u^2/(d1 d2) + beta), cleared of denominators.

All arithmetic is exact.  Every chart choice (kernel pivots, the
parametrization base point, the coordinate normalizations) is
deterministic and recorded on the returned datum, so identical input
reproduces the identical output.
"""

import itertools
from fractions import Fraction as QQ
from math import gcd, lcm

from .errors import (
    BranchCollision,
    DegeneratePair,
    EllipticLocus,
    InvalidBranch,
    InvalidInput,
    NoRationalPointFound,
    NoRationalPointOnConic,
    NotSquareFree,
    OnSingularLine,
    StructuralAssertionFailed,
    TwistNotRepresented,
)
from .exactmath import (
    BinaryForm,
    MultiPoly,
    Poly,
    _nz,
    fp_roots,
    is_prime,
    is_square_fraction,
    mat_inverse,
    mat_kernel,
    mat_mul,
    mat_solve,
    rational_reconstruction,
    scalar_to_json,
    square_class,
)
from .genus2 import HypCurve, sextic_form
from .igusa import (
    chart5,
    contains,
    gradient5,
    is_elliptic,
    is_on_singular_line,
    kummer_section,
    polar_pair,
)
from .kummer import (
    DEFAULT_HEIGHT,
    NodalPlaneQuartic,
    branch_divisor,
    nodal_quartic_branch,
    section_polar_data,
)
from .projgeom import (
    conic_eval,
    conic_from_multipoly,
    conic_parametrize,
    conic_rational_point,
    mp_mat_det,
    param_inverse,
    proj_eq,
    proportional_to_square,
)


# ---------------------------------------------------------------------------
# form normalization (stable output representatives)


def _is_rational(v):
    return isinstance(v, (int, QQ))


def _primitive_scale(coeffs):
    """Scalar t such that t*coeffs is the canonical representative.

    Rational coefficients: clear denominators, divide by the integer
    content, make the first nonzero entry positive.  Any other field:
    divide by the first nonzero entry.
    """
    nz = [v for v in coeffs if _nz(v)]
    if not nz:
        return 1
    if all(_is_rational(v) for v in nz):
        den = 1
        for v in nz:
            den = lcm(den, QQ(v).denominator)
        num = 0
        for v in nz:
            num = gcd(num, int(QQ(v) * den))
        t = QQ(den, num)
        return -t if QQ(nz[0]) < 0 else t
    return 1 / nz[0]


def _primitive_form(F):
    t = _primitive_scale(F.c)
    return F.map_coefficients(lambda v: v * t)


def _primitive_pair(F, G):
    """Rescale a pair of forms by one common scalar (a projective map)."""
    t = _primitive_scale(list(F.c) + list(G.c))
    return (F.map_coefficients(lambda v: v * t),
            G.map_coefficients(lambda v: v * t))


def _primitive_poly(f):
    t = _primitive_scale(f.c)
    return Poly([v * t for v in f.c])


# ---------------------------------------------------------------------------
# pair classification


class PairClassification:
    """Outcome of classify_pair: the case tag plus both polar values."""

    def __init__(self, case, polar_ab, polar_ba):
        self.case = case
        self.polar_ab = polar_ab
        self.polar_ba = polar_ba

    def to_json(self):
        return {
            "case": self.case,
            "polar_ab": scalar_to_json(self.polar_ab),
            "polar_ba": scalar_to_json(self.polar_ba),
        }

    def __repr__(self):
        return "PairClassification(%s, P(a,b)=%s, P(b,a)=%s)" % (
            self.case, self.polar_ab, self.polar_ba)


def classify_pair(I, a, b):
    """Sort a point pair into D4 / V4 / Invalid by its two polar values.

    "D4"      P(a,b) = 0 and P(b,a) != 0   (one-sided tangency at b)
    "V4"      both polar values vanish      (double-conic plane section)
    "Invalid" P(a,b) != 0                   (no gluing; swapping the pair
                                             may still give a D4 case)

    Raises DegeneratePair when a and b coincide projectively, and
    OnSingularLine / EllipticLocus when either point has no usable
    tangent section.  Both polar values are reported on the result.
    """
    for pt in (a, b):
        if not contains(I, pt):
            raise InvalidInput("point %r is not on the quartic" % (pt,))
    if proj_eq(list(a), list(b)):
        raise DegeneratePair("the two points coincide")
    for pt in (a, b):
        if is_on_singular_line(I, pt) is not None:
            raise OnSingularLine("point %r lies on a singular line" % (pt,))
    for pt in (a, b):
        if is_elliptic(I, pt):
            raise EllipticLocus("point %r is on the elliptic locus" % (pt,))
    pab = polar_pair(I, a, b)
    pba = polar_pair(I, b, a)
    if _nz(pab):
        case = "Invalid"
    elif _nz(pba):
        case = "D4"
    else:
        case = "V4"
    return PairClassification(case, pab, pba)


# ---------------------------------------------------------------------------
# output containers


class GluingDatum:
    """Everything a pair construction produced, chart choices included.

    Common fields: case ("D4"/"V4"), the input points a and b, and the
    two genus-2 curves curve_a / curve_b as HypCurve objects with the
    twist slot left open (tangency data never pins a quadratic twist;
    the cover and model builders take the twists as arguments, which is
    what the `twists` placeholder records).

    D4 extras: mu = (mu0, mu1), a pair of binary quadratics giving the
    degree-2 map from the parameter line of curve_b (the section-conic
    parameter (s:t)) to the parameter line of curve_a (the plane-line
    coordinate (z0:z1)); branch_quadratic, the branch divisor of mu on
    the target line, proportional to the nodal tangent cone.

    V4 extras: conic (Gram matrix of the halved plane section), markers
    (parameter values of a, b and the five shared nodes on that conic),
    beta and shared_quintic (the x-coordinate data: marker of a sits at
    x = infinity, beta = x(marker of b), shared_quintic has the five
    shared markers as roots).

    conventions is a dict of the deterministic chart choices (plane
    basis, pivots, base points) that make the output reproducible.
    """

    def __init__(self, case, a, b, curve_a, curve_b, mu=None,
                 branch_quadratic=None, conic=None, markers=None,
                 beta=None, shared_quintic=None, conventions=None):
        self.case = case
        self.a = list(a)
        self.b = list(b)
        self.curve_a = curve_a
        self.curve_b = curve_b
        self.mu = mu
        self.branch_quadratic = branch_quadratic
        self.conic = conic
        self.markers = markers
        self.beta = beta
        self.shared_quintic = shared_quintic
        self.conventions = conventions or {}
        self.twists = {"a": None, "b": None}

    def models(self, d1, d2):
        """V4 models for chosen twists: the two curves and the glued one.

        C1: y^2 = d1 * f(x)            (marker of a at infinity)
        C2: y^2 = d2 * (x - beta) f(x)  (marker of b at beta)
        X:  the hyperelliptic genus-4 curve of genus4_V4(f, beta, d1, d2)
        """
        if self.case != "V4":
            raise InvalidInput("twisted models exist only for the V4 case")
        f = self.shared_quintic
        one = f.lc() * 0 + 1
        lin = Poly([-self.beta, one])
        return {
            "C1": HypCurve(f, twist=d1),
            "C2": HypCurve(f * lin, twist=d2),
            "X": genus4_V4(f, self.beta, d1, d2),
        }

    def to_json(self):
        out = {
            "case": self.case,
            "a": [scalar_to_json(v) for v in self.a],
            "b": [scalar_to_json(v) for v in self.b],
            "curve_a": self.curve_a.to_json(),
            "curve_b": self.curve_b.to_json(),
            "twists": self.twists,
            "conventions": _jsonify(self.conventions),
        }
        if self.mu is not None:
            out["mu"] = [_jsonify(list(m.c)) for m in self.mu]
        if self.branch_quadratic is not None:
            out["branch_quadratic"] = _jsonify(list(self.branch_quadratic.c))
        if self.conic is not None:
            out["conic"] = _jsonify(self.conic)
        if self.markers is not None:
            out["markers"] = _jsonify(self.markers)
        if self.beta is not None:
            out["beta"] = scalar_to_json(self.beta)
        if self.shared_quintic is not None:
            out["shared_quintic"] = _jsonify(list(self.shared_quintic.c))
        return out

    def __repr__(self):
        return "GluingDatum(case=%s, a=%s, b=%s)" % (self.case, self.a, self.b)


def _jsonify(v):
    if v is None or isinstance(v, (str, bool)):
        return v
    if isinstance(v, (list, tuple)):
        return [_jsonify(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonify(x) for k, x in v.items()}
    if isinstance(v, Poly):
        return [_jsonify(x) for x in v.c]
    if isinstance(v, BinaryForm):
        return [_jsonify(x) for x in v.c]
    return scalar_to_json(v)


class Genus4Curve:
    """A glued genus-4 curve in one of its two exact models.

    model == "hyperelliptic": y^2 = F(x) with F square-free of formal
    degree 10 (an actual degree of 9 puts one branch point at infinity).

    model == "cover": the tower y^2 = f(x), z^2 = c(x) + d*y over a
    genus-2 base, certified by the norm identity

        c^2 - d^2 f  ==  lam * q * s^2

    with q the degree-2 branch quadratic, s monic of degree 2 and lam a
    nonzero scalar whose square class is the twist class of the cover.
    """

    def __init__(self, model, F=None, f=None, q=None, c=None, d=None,
                 s=None, lam=None):
        self.model = model
        if model == "hyperelliptic":
            if F is None:
                raise InvalidInput("hyperelliptic model needs the form F")
            self.F = F
        elif model == "cover":
            if any(v is None for v in (f, q, c, s, lam)) or d is None:
                raise InvalidInput("cover model needs f, q, c, d, s, lam")
            self.f = f
            self.q = q
            self.c = c
            self.d = d
            self.s = s
            self.lam = lam
        else:
            raise InvalidInput("unknown model %r" % (model,))

    def verify(self):
        """Exact recheck of the defining identity / square-freeness."""
        if self.model == "hyperelliptic":
            return self.F.d == 10 and not self.F.is_zero() \
                and self.F.is_squarefree()
        lhs = self.c * self.c - self.f * (self.d * self.d)
        rhs = self.q * self.s * self.s * self.lam
        return _nz(self.d) and _nz(self.lam) and self.q.degree == 2 \
            and self.s.degree == 2 and self.c.degree <= 3 and lhs == rhs

    def to_json(self):
        if self.model == "hyperelliptic":
            return {"model": "hyperelliptic",
                    "F": [_jsonify(x) for x in self.F.c]}
        return {
            "model": "cover",
            "f": _jsonify(self.f),
            "q": _jsonify(self.q),
            "c": _jsonify(self.c),
            "d": scalar_to_json(self.d),
            "s": _jsonify(self.s),
            "lam": scalar_to_json(self.lam),
        }

    def __repr__(self):
        if self.model == "hyperelliptic":
            return "Genus4Curve(hyperelliptic, F=%r)" % (self.F,)
        return "Genus4Curve(cover, c=%r, d=%r)" % (self.c, self.d)


# ---------------------------------------------------------------------------
# the D4 construction


def _tangent_row(I, other, sec):
    """The linear form cutting T_other out of the section chart at sec."""
    g = gradient5(I, other)
    return [sum(gj * rj for gj, rj in zip(g, row)) for row in sec.basis]


def _plane_basis(lam, zero, one):
    """Deterministic basis of the plane {lam . y = 0}, node row last."""
    ker = mat_kernel([lam[:3]])
    if len(ker) != 2:
        raise StructuralAssertionFailed("tangent planes do not meet in a plane")
    u1, u2 = [list(r) for r in ker]
    return u1, u2, [u1 + [zero], u2 + [zero], [zero, zero, zero, one]]


def d4_construct(I, a, b, height_bound=DEFAULT_HEIGHT):
    """Glue a one-sided tangency pair: curves, the degree-2 map, checks.

    Requires classify_pair(I, a, b) to come out "D4" (P(a,b) = 0 and
    P(b,a) != 0); any other case raises InvalidInput with both polar
    values in the message.  The section conic of b needs a rational
    point for the parametrization of C_b's branch data; exhaustion of
    the height search raises NoRationalPointOnConic carrying the Gram
    matrix.

    Two structural identities are verified before returning (failure
    raises StructuralAssertionFailed):
      * the branch quadratic of mu is proportional to the tangent cone
        of the plane quartic's node, and
      * mu pushes the branch sextic of C_b forward onto exactly the
        branch sextic of C_a (resultant elimination of the parameter).
    """
    cls = classify_pair(I, a, b)
    if cls.case != "D4":
        raise InvalidInput(
            "pair classifies as %s, not D4 (polar values %s and %s); "
            "a D4 gluing needs P(a,b) = 0 != P(b,a)"
            % (cls.case, cls.polar_ab, cls.polar_ba))

    sec = kummer_section(I, b)
    gram, c3 = section_polar_data(sec)
    lam = _tangent_row(I, a, sec)
    if _nz(lam[3]):
        raise StructuralAssertionFailed("vanishing polar did not survive the chart change")
    zero = lam[3] * 0
    one = zero + 1
    u1, u2, vbasis = _plane_basis(lam, zero, one)

    # the plane quartic T_a cap T_b cap section, nodal at b = (0:0:1)
    plane_quartic = sec.quartic.subst_linear(vbasis)
    nodal = NodalPlaneQuartic(plane_quartic)
    sex_a, cone = nodal_quartic_branch(nodal)

    # C_b from the section's own node projection
    try:
        pt = conic_rational_point(gram, height_bound=height_bound)
    except NoRationalPointFound:
        raise NoRationalPointOnConic(gram)
    param = conic_parametrize(gram, pt)
    sex_b = branch_divisor(gram, c3, param)

    # mu: conic parameter (s:t) -> line coordinate (z0:z1).  The tangent
    # line of the conic at P(s,t) meets the plane line {lam'=0} in one
    # point; expressing that point in the (u1, u2) kernel basis gives a
    # pair of binary quadratics.
    comps = param["components"]
    ell = []
    for k in range(3):
        acc = MultiPoly.zero(2)
        for l in range(3):
            if _nz(gram[k][l]):
                acc = acc + comps[l] * gram[k][l]
        ell.append(acc)
    lp = lam[:3]
    X = [ell[1] * lp[2] - ell[2] * lp[1],
         ell[2] * lp[0] - ell[0] * lp[2],
         ell[0] * lp[1] - ell[1] * lp[0]]
    pivot = None
    for i in range(3):
        for j in range(i + 1, 3):
            det = u1[i] * u2[j] - u1[j] * u2[i]
            if _nz(det):
                pivot = (i, j, det)
                break
        if pivot:
            break
    if pivot is None:
        raise StructuralAssertionFailed("kernel basis is degenerate")
    i, j, det = pivot
    mu0 = X[i] * u2[j] - X[j] * u2[i]
    mu1 = X[j] * u1[i] - X[i] * u1[j]
    for k in range(3):
        if not (X[k] * det - (mu0 * u1[k] + mu1 * u2[k])).is_zero():
            raise StructuralAssertionFailed("line intersection left the plane")
    mu0 = mu0.to_binary_form(2)
    mu1 = mu1.to_binary_form(2)
    if not _nz(mu0.resultant(mu1)):
        raise StructuralAssertionFailed("tangent-contact map is not of degree 2")
    mu0, mu1 = _primitive_pair(mu0, mu1)

    # branch quadratic of mu on the target line: the (s:t)-discriminant
    # of z1 mu0 - z0 mu1, assembled coefficient by coefficient
    A = BinaryForm(1, [-mu1.c[0], mu0.c[0]])
    B = BinaryForm(1, [-mu1.c[1], mu0.c[1]])
    C = BinaryForm(1, [-mu1.c[2], mu0.c[2]])
    brq = B * B - A * C * 4
    if not brq.proportional(cone):
        raise StructuralAssertionFailed(
            "branch quadratic of mu is not the nodal tangent cone")

    # pushforward of C_b's sextic: eliminate (s:t) from z1 mu0 - z0 mu1
    # and sex_b by an 8x8 resultant with entries linear in (z0, z1)
    Az = [MultiPoly(2, {(0, 1): mu0.c[k], (1, 0): -mu1.c[k]}) for k in range(3)]
    Bz = [MultiPoly.const(2, v) for v in sex_b.c]
    Z = MultiPoly.zero(2)
    rows = []
    for k in range(6):
        rows.append([Z] * k + Az + [Z] * (5 - k))
    for k in range(2):
        rows.append([Z] * k + Bz + [Z] * (1 - k))
    push = mp_mat_det(rows).to_binary_form(6)
    if not push.proportional(sex_a):
        raise StructuralAssertionFailed(
            "mu does not transport the branch sextic of C_b onto C_a")

    return GluingDatum(
        "D4", a, b,
        curve_a=HypCurve(_primitive_form(sex_a)),
        curve_b=HypCurve(_primitive_form(sex_b)),
        mu=(mu0, mu1),
        branch_quadratic=_primitive_form(brq),
        conventions={
            "section_at": "b",
            "plane_basis": vbasis,
            "tangent_row": lam,
            "mu_pivot": (i, j),
            "conic_point": pt,
            "mu_charts": "source (s:t) parametrizes the section conic "
                         "through the recorded point; target (z0:z1) are "
                         "coordinates in the recorded plane basis",
        })


# ---------------------------------------------------------------------------
# the V4 construction


def v4_construct(I, a, b):
    """Glue a two-sided tangency pair via the double-conic plane section.

    Requires classify_pair(I, a, b) to come out "V4".  The plane section
    T_a cap T_b of the tangent quartic at a must be a constant times the
    square of a smooth conic; the conic passes through a, b and exactly
    five of the fifteen line-nodes of the section, all of which is
    verified (StructuralAssertionFailed otherwise).  No point search is
    needed: a itself is the parametrization base point.

    The returned datum fixes the coordinate on the conic sending the
    marker of a to infinity, so the five shared branch points become the
    roots of shared_quintic and the marker of b becomes beta.
    """
    cls = classify_pair(I, a, b)
    if cls.case != "V4":
        raise InvalidInput(
            "pair classifies as %s, not V4 (polar values %s and %s); "
            "a V4 gluing needs both polar values to vanish"
            % (cls.case, cls.polar_ab, cls.polar_ba))

    sec = kummer_section(I, a)
    lam = _tangent_row(I, b, sec)
    if _nz(lam[3]):
        raise StructuralAssertionFailed("vanishing polar did not survive the chart change")
    zero = lam[3] * 0
    one = zero + 1
    u1, u2, vbasis = _plane_basis(lam, zero, one)

    section = sec.quartic.subst_linear(vbasis)
    halved = proportional_to_square(section)
    if halved is None:
        raise StructuralAssertionFailed("plane section is not a double conic")
    const, S = halved
    if S.degree() != 2:
        raise StructuralAssertionFailed("halved section is not a conic")
    G = conic_from_multipoly(S)

    z_a = [zero, zero, one]
    if _nz(conic_eval(G, z_a)):
        raise StructuralAssertionFailed("a is not on the halved conic")
    cols = [[sec.basis[r][c] for r in range(4)] for c in range(5)]
    y_b = mat_solve(cols, chart5(b))
    if y_b is None:
        raise StructuralAssertionFailed("b left the tangent chart")
    vcols = [[vbasis[r][c] for r in range(3)] for c in range(4)]
    z_b = mat_solve(vcols, y_b)
    if z_b is None:
        raise StructuralAssertionFailed("b is not in the intersection plane")
    if _nz(conic_eval(G, z_b)):
        raise StructuralAssertionFailed("b is not on the halved conic")

    # the five nodes of the section shared with the other tangent space
    shared = []
    for node in sec.nodes[1:]:
        if not _nz(sum(l * x for l, x in zip(lam, node))):
            shared.append(node)
    if len(shared) != 5:
        raise StructuralAssertionFailed(
            "expected 5 shared line-nodes, found %d" % len(shared))
    z_nodes = []
    for node in shared:
        zn = mat_solve(vcols, list(node))
        if zn is None:
            raise StructuralAssertionFailed("shared node left the plane")
        if _nz(conic_eval(G, zn)):
            raise StructuralAssertionFailed("shared node is not on the conic")
        z_nodes.append(zn)

    param = conic_parametrize(G, z_a)
    m_a = param_inverse(param, z_a)
    m_b = param_inverse(param, z_b)
    m_nodes = [param_inverse(param, zn) for zn in z_nodes]
    all_markers = [m_a, m_b] + m_nodes
    for r in range(len(all_markers)):
        for s in range(r + 1, len(all_markers)):
            if proj_eq(list(all_markers[r]), list(all_markers[s])):
                raise StructuralAssertionFailed("marked points collide on the conic")

    # x-coordinate with marker(a) at infinity: v = ta s - sa t vanishes
    # exactly at m_a; complete with the first standard form independent
    # of v.
    sa, ta = m_a
    for (cu, du) in ((one, zero), (zero, one)):
        if _nz(cu * (-sa) - du * ta):
            break

    def xcoord(m):
        s, t = m
        v = ta * s - sa * t
        if not _nz(v):
            raise StructuralAssertionFailed("marker unexpectedly at infinity")
        return (cu * s + du * t) / v

    beta = xcoord(m_b)
    xs = [xcoord(m) for m in m_nodes]
    f = Poly([one])
    for x in xs:
        f = f * Poly([-x, one])
    if not _nz(f(beta)):
        raise StructuralAssertionFailed("beta collides with a shared branch point")

    lin = Poly([-beta, one])
    return GluingDatum(
        "V4", a, b,
        curve_a=HypCurve(f),
        curve_b=HypCurve(f * lin),
        conic=G,
        markers={"a": m_a, "b": m_b, "shared": m_nodes},
        beta=beta,
        shared_quintic=f,
        conventions={
            "section_at": "a",
            "plane_basis": vbasis,
            "tangent_row": lam,
            "section_constant": const,
            "x_chart": (cu, du),
            "x_chart_note": "x = (cu*s + du*t)/(ta*s - sa*t) on the conic "
                            "parameter, (sa, ta) the marker of a",
        })


# ---------------------------------------------------------------------------
# Moebius identification of parameter lines


def mobius_three(p1, p2, p3):
    """Matrix of the Moebius map sending p1, p2, p3 to 0, 1, infinity.

    Points are projective pairs (alpha, beta); (1, 0) is infinity.
    """
    def dd(p, q):
        return p[0] * q[1] - p[1] * q[0]

    d23 = dd(p2, p3)
    d21 = dd(p2, p1)
    m = [[p1[1] * d23, -p1[0] * d23], [p3[1] * d21, -p3[0] * d21]]
    if not _nz(m[0][0] * m[1][1] - m[0][1] * m[1][0]):
        raise InvalidInput("the three points are not distinct")
    return m


def mobius_between(f, g):
    """All Moebius matrices m with f.transport(m) proportional to g.

    Both forms must split into rational roots (infinity counted); the
    output list is deterministic and deduplicated projectively.  Forms
    whose root sets are not Moebius-equivalent give the empty list.
    """
    rf = [r for r, m in f.rational_roots() for _ in range(m)]
    rg = [r for r, m in g.rational_roots() for _ in range(m)]
    if len(rf) != f.d or len(rg) != g.d:
        raise InvalidInput("both forms must split over the base field")
    if len(rf) < 3 or len(rg) < 3:
        raise InvalidInput("need at least three roots on each side")
    out, seen = [], set()
    src = mobius_three(rf[0], rf[1], rf[2])
    for trip in itertools.permutations(rg, 3):
        try:
            dst = mobius_three(*trip)
        except InvalidInput:
            continue
        m = mat_mul(mat_inverse(dst), src)
        if f.transport(m).proportional(g):
            key = _projective_key(m[0] + m[1])
            if key not in seen:
                seen.add(key)
                out.append(m)
    return out


def _projective_key(vec):
    t = _primitive_scale(vec)
    return tuple(repr(v * t) for v in vec)


def mobius_conjugate(mu, J, K):
    """The degree-2 pair J o mu o K^{-1} (charts moved on both sides).

    mu is a pair of binary quadratics from source to target line; K is a
    Moebius matrix re-coordinatizing the source, J one for the target.
    """
    mu0, mu1 = mu
    Kinv = mat_inverse(K)
    M0 = BinaryForm(1, [Kinv[0][0], Kinv[0][1]])
    M1 = BinaryForm(1, [Kinv[1][0], Kinv[1][1]])
    m0 = mu0.compose_pair(M0, M1)
    m1 = mu1.compose_pair(M0, M1)
    h0 = m0 * J[0][0] + m1 * J[0][1]
    h1 = m0 * J[1][0] + m1 * J[1][1]
    return _primitive_pair(h0, h1)


def map_cycle_type(mu, form):
    """Cycle type of the permutation a degree-2 pair induces on roots.

    form must be square-free and split over the rationals, and mu must
    map its root set into itself (InvalidInput otherwise).  Returns the
    sorted tuple of cycle lengths.
    """
    mu0, mu1 = mu
    roots = []
    for r, m in form.rational_roots():
        if m > 1:
            raise InvalidInput("form has a repeated root")
        roots.append(r)
    if len(roots) != form.d:
        raise InvalidInput("form does not split over the rationals")

    def norm(p):
        u, v = p
        if not _nz(v):
            if not _nz(u):
                raise InvalidInput("map undefined at a root")
            return (1, 0)
        x = QQ(u) / QQ(v)
        return (x.numerator, x.denominator)

    images = []
    for r in roots:
        images.append(norm((mu0.evaluate(*r), mu1.evaluate(*r))))
    try:
        perm = [roots.index(q) for q in images]
    except ValueError:
        raise InvalidInput("the map does not permute the roots of the form")
    seen, lengths = set(), []
    for s in range(len(roots)):
        if s in seen:
            continue
        t, n = s, 0
        while t not in seen:
            seen.add(t)
            n += 1
            t = perm[t]
        lengths.append(n)
    return tuple(sorted(lengths))


# ---------------------------------------------------------------------------
# cover classes over a fixed genus-2 base


def poly_sqrt(g):
    """Exact polynomial square root over the rationals, or None."""
    if g.is_zero():
        return Poly([])
    if g.degree % 2:
        return None
    ok, r = is_square_fraction(QQ(g.lc()))
    if not ok:
        return None
    m = g.degree // 2
    rc = [QQ(0)] * (m + 1)
    rc[m] = r
    for k in range(m - 1, -1, -1):
        acc = QQ(g[m + k])
        for i in range(k + 1, m):
            acc -= rc[i] * rc[m + k - i]
        rc[k] = acc / (2 * r)
    cand = Poly(rc)
    return cand if cand * cand == g else None


def same_cover_class(f, c1, d1, c2, d2):
    """Do c1 + d1*y and c2 + d2*y cut the same cover of y^2 = f(x)?

    Equality is taken in the function-field square classes up to a
    rational constant, which is exactly the equivalence under the square
    rescalings (c, d) -> (alpha c, alpha d) and twists of the auxiliary
    square.  The test is constructive: the product class P + Q y with
    P = c1 c2 + f d1 d2 and Q = c1 d2 + c2 d1 is a (constant times a)
    square if and only if P^2 - Q^2 f is a polynomial square N^2 and one
    of (P +- N)/2 is a constant times a polynomial square.
    """
    P = c1 * c2 + f * (d1 * d2)
    Q = c1 * d2 + c2 * d1
    N = poly_sqrt(P * P - Q * Q * f)
    if N is None:
        return False
    for sign in (1, -1):
        U = (P + N * sign) * QQ(1, 2)
        if U.is_zero():
            continue
        if poly_sqrt(U * (1 / QQ(U.lc()))) is not None:
            return True
    return False


# ---------------------------------------------------------------------------
# the D4 tower: all covers with a prescribed branch quadratic


def _rational_poly(f):
    return all(_is_rational(v) for v in f.c)


def _residue_branches(f, q):
    """Stage one of the norm ansatz: residues of c modulo q.

    Reducing c^2 - e f = lam q s^2 modulo q forces (c mod q)^2 = e (f mod
    q) in the quadratic residue ring; writing c mod q = g1 x + g0 and
    eliminating e leaves one binary quadratic in (g0 : g1).  Each
    rational root determines e, and only square e survive (d = sqrt(e)
    must be rational).  Returns [(g0, g1), e, d] triples plus the full
    list of e values seen, for error reporting.
    """
    fq = f % q
    if fq.is_zero():
        raise InvalidBranch("the branch quadratic divides the defining polynomial")
    f1b, f0b = QQ(fq[1]), QQ(fq[0])
    q0, q1, q2 = QQ(q[0]), QQ(q[1]), QQ(q[2])
    residue_conic = BinaryForm(2, [-f1b, 2 * f0b, (f1b * q0 - f0b * q1) / q2])
    if residue_conic.is_zero():
        raise InvalidBranch("residue equation is vacuous")
    branches, seen = [], []
    for (g0, g1), _mult in residue_conic.rational_roots():
        if f1b != 0:
            e = (2 * QQ(g0) * g1 - QQ(g1) ** 2 * q1 / q2) / f1b
        else:
            e = (QQ(g0) ** 2 - QQ(g1) ** 2 * q0 / q2) / f0b
        seen.append(e)
        if e == 0:
            continue
        ok, d = is_square_fraction(e)
        if ok:
            branches.append(((g0, g1), e, d))
    return branches, seen


def _tower_equations(f, q, gamma, e):
    """Stage two: the two closing conditions on the linear part of c.

    With c = q*l + cbar (cbar the residue representative, l = l1 x + l0)
    the quartic R = (c^2 - e f)/q must equal lam * (monic square); after
    eliminating s1, s0 two polynomial conditions E1, E2 in (l0, l1)
    remain.  Returns (E1, E2, h) with h = (cbar^2 - e f)/q.
    """
    g0, g1 = gamma
    cbar = Poly([QQ(g0), QQ(g1)])
    num = cbar * cbar - f * e
    h, rem = num.divmod(q)
    if not rem.is_zero():
        raise StructuralAssertionFailed("residue branch is not a residue")
    L0v = MultiPoly.var(2, 0)
    L1v = MultiPoly.var(2, 1)
    lsq = [L0v * L0v, L0v * L1v * 2, L1v * L1v]
    L = [MultiPoly.zero(2) for _ in range(5)]
    for i in range(3):
        if _nz(q[i]):
            for j in range(3):
                L[i + j] = L[i + j] + lsq[j] * q[i]
    two_lc = [L0v * (2 * QQ(g0)),
              L0v * (2 * QQ(g1)) + L1v * (2 * QQ(g0)),
              L1v * (2 * QQ(g1))]
    for i in range(3):
        L[i] = L[i] + two_lc[i]
    for i in range(min(h.degree, 4) + 1):
        if _nz(h[i]):
            L[i] = L[i] + MultiPoly.const(2, QQ(h[i]))
    lam = L[4]
    E1 = lam * lam * L[1] * 8 - lam * L[2] * L[3] * 4 + L[3] * L[3] * L[3]
    E2 = (lam * lam * lam * L[0] * 64 - lam * lam * L[2] * L[2] * 16
          + lam * L[2] * L[3] * L[3] * 8 - L[3] * L[3] * L[3] * L[3])
    return E1, E2, h


class _RetryPrime(Exception):
    pass


def _int_coeffs(E):
    den = 1
    for v in E.t.values():
        den = lcm(den, QQ(v).denominator)
    return {k: int(QQ(v) * den) for k, v in E.t.items()}, den


def _fp_gauss_resultant(A, B, p):
    """det of the Sylvester matrix of two mod-p polynomials (ascending)."""
    m, n = len(A) - 1, len(B) - 1
    size = m + n
    M = []
    for k in range(n):
        M.append([0] * k + list(reversed(A)) + [0] * (size - m - 1 - k))
    for k in range(m):
        M.append([0] * k + list(reversed(B)) + [0] * (size - n - 1 - k))
    det = 1
    for col in range(size):
        piv = next((r for r in range(col, size) if M[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = -det % p
        det = det * M[col][col] % p
        inv = pow(M[col][col], -1, p)
        for r in range(col + 1, size):
            if M[r][col]:
                t = M[r][col] * inv % p
                for cc in range(col, size):
                    M[r][cc] = (M[r][cc] - t * M[col][cc]) % p
    return det


def _lagrange_mod(xs, ys, p):
    n = len(xs)
    coeffs = [0] * n
    for i in range(n):
        num = [1]
        den = 1
        for j in range(n):
            if j == i:
                continue
            nxt = [0] * (len(num) + 1)
            for k, a in enumerate(num):
                nxt[k] = (nxt[k] + a * -xs[j]) % p
                nxt[k + 1] = (nxt[k + 1] + a) % p
            num = nxt
            den = den * (xs[i] - xs[j]) % p
        w = ys[i] * pow(den, -1, p) % p
        for k in range(len(num)):
            coeffs[k] = (coeffs[k] + w * num[k]) % p
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _partials(ed):
    d0, d1 = {}, {}
    for (i, j), cv in ed.items():
        if i:
            d0[(i - 1, j)] = d0.get((i - 1, j), 0) + cv * i
        if j:
            d1[(i, j - 1)] = d1.get((i, j - 1), 0) + cv * j
    return d0, d1


def _evmod(ed, x0, x1, m):
    out = 0
    for (i, j), cv in ed.items():
        out = (out + cv * pow(x0, i, m) * pow(x1, j, m)) % m
    return out


def _solve_tower_pair(E1, E2, p):
    """All rational common zeros of {E1, E2}, via one prime p.

    Interpolated resultant eliminating the first variable, modular root
    extraction, a 2x2 Newton lift with modulus squaring, and rational
    reconstruction; every candidate is verified exactly over the
    rationals before being returned.  Degenerate reductions raise
    _RetryPrime so the caller can move to the next prime.
    """
    e1, den1 = _int_coeffs(E1)
    e2, den2 = _int_coeffs(E2)
    if den1 % p == 0 or den2 % p == 0:
        raise _RetryPrime("denominator vanishes mod p")
    e1p = {k: v % p for k, v in e1.items() if v % p}
    e2p = {k: v % p for k, v in e2.items() if v % p}
    if not e1p or not e2p:
        raise _RetryPrime("equation vanishes mod p")
    d10 = max(k[0] for k in e1.keys())
    d20 = max(k[0] for k in e2.keys())
    d11 = max(k[1] for k in e1.keys())
    d21 = max(k[1] for k in e2.keys())
    if (max(k[0] for k in e1p) != d10 or max(k[0] for k in e2p) != d20
            or max(k[1] for k in e1p) != d11 or max(k[1] for k in e2p) != d21):
        raise _RetryPrime("degree dropped mod p")

    def uni_first(ed, v):
        out = {}
        for (i, j), cv in ed.items():
            out[i] = (out.get(i, 0) + cv * pow(v, j, p)) % p
        top = max(out) if out else 0
        lst = [out.get(i, 0) for i in range(top + 1)]
        while lst and lst[-1] == 0:
            lst.pop()
        return lst

    need = d10 * d21 + d20 * d11 + 1
    xs, ys = [], []
    v = 1
    while len(xs) < need:
        if v >= min(p, 20 * need + 50):
            raise _RetryPrime("not enough good interpolation samples")
        A = uni_first(e1p, v)
        B = uni_first(e2p, v)
        if len(A) - 1 == d10 and len(B) - 1 == d20:
            xs.append(v)
            ys.append(_fp_gauss_resultant(A, B, p))
        v += 1
    elim = _lagrange_mod(xs, ys, p)
    if not elim:
        raise _RetryPrime("eliminant vanishes identically mod p")

    j11, j12 = _partials(e1)
    j21, j22 = _partials(e2)
    sols = []
    for v1, _m in fp_roots(elim, p):
        A = uni_first(e1p, v1)
        if len(A) <= 1:
            continue
        for v0, _m2 in fp_roots(A, p):
            if _evmod(e2p, v0, v1, p) != 0:
                continue
            x0, x1, M = v0, v1, p
            for _lift in range(8):
                r0 = rational_reconstruction(x0, M)
                r1 = rational_reconstruction(x1, M)
                if r0 is not None and r1 is not None:
                    if E1.evaluate((r0, r1)) == 0 and E2.evaluate((r0, r1)) == 0:
                        if (r0, r1) not in sols:
                            sols.append((r0, r1))
                        break
                M2 = M * M
                F1 = _evmod(e1, x0, x1, M2)
                F2 = _evmod(e2, x0, x1, M2)
                a11 = _evmod(j11, x0, x1, M2)
                a12 = _evmod(j12, x0, x1, M2)
                a21 = _evmod(j21, x0, x1, M2)
                a22 = _evmod(j22, x0, x1, M2)
                det = (a11 * a22 - a12 * a21) % M2
                if det % p == 0:
                    break
                dinv = pow(det, -1, M2)
                x0 = (x0 - (a22 * F1 - a12 * F2) * dinv) % M2
                x1 = (x1 - (a11 * F2 - a21 * F1) * dinv) % M2
                M = M2
    sols.sort(key=lambda rr: (rr[1], rr[0]))
    return sols


def _prev_prime(n):
    n |= 1
    while not is_prime(n):
        n -= 2
    return n


def genus4_D4(curve, q, twist=1, _start_prime=(1 << 61) - 1):
    """All covers z^2 = c(x) + d*y of y^2 = f(x) branched along q.

    curve: a HypCurve (its twist, when set, is folded into f) or a
    degree-5/6 polynomial / binary form over the rationals.  q: the
    branch quadratic on the x-line, degree exactly 2, square-free and
    coprime to f (InvalidBranch otherwise).  twist: requested square
    class for the norm scalar lam; pass None to keep every class.

    The norm identity c^2 - d^2 f = lam q s^2 (c of degree <= 3, d a
    nonzero rational, s monic of degree 2) is solved exactly in two
    stages: residues of c modulo q first, then the two closing
    conditions on the linear part by modular elimination, Newton
    lifting and rational reconstruction, with exact verification of
    every solution.  Solutions come modulo the square rescalings
    (c, d, s, lam) ~ (alpha c, alpha d, beta s, alpha^2 lam / beta^2);
    each is emitted in both d-signs, which are genuinely distinct cover
    classes (they differ by the hyperelliptic involution of the base).

    Raises TwistNotRepresented when no solution exists at all or none
    matches the requested class.
    """
    if isinstance(curve, HypCurve):
        form = curve.f
        tw = curve.twist
    else:
        form = sextic_form(curve)
        if not form.is_squarefree():
            raise NotSquareFree("defining form has a repeated root")
        tw = None
    f = form.to_poly()
    if tw is not None:
        if not _nz(tw):
            raise InvalidInput("curve twist must be nonzero")
        f = f * tw
    qp = q.to_poly() if isinstance(q, BinaryForm) else (q if isinstance(q, Poly) else Poly(q))
    if not (_rational_poly(f) and _rational_poly(qp)):
        raise InvalidInput("the cover solver works over the rationals")
    if twist is not None and (not _is_rational(twist) or twist == 0):
        raise InvalidInput("twist must be a nonzero rational or None")
    if qp.degree != 2:
        raise InvalidBranch("branch quadratic must have degree 2")
    if qp[1] * qp[1] == 4 * qp[0] * qp[2]:
        raise InvalidBranch("branch quadratic has a repeated root")
    if f.gcd(qp).degree > 0:
        raise InvalidBranch("branch quadratic meets the branch locus of the base curve")

    branches, seen = _residue_branches(f, qp)
    if not branches:
        raise TwistNotRepresented(
            "no residue branch admits a rational d (e values seen: %s)"
            % (seen,))

    covers = []
    for gamma, e, d in branches:
        E1, E2, h = _tower_equations(f, qp, gamma, e)
        p = _start_prime
        pairs = None
        last = None
        for _attempt in range(8):
            try:
                pairs = _solve_tower_pair(E1, E2, p)
                break
            except _RetryPrime as exc:
                last = exc
                p = _prev_prime(p - 2)
        if pairs is None:
            raise StructuralAssertionFailed(
                "modular elimination failed on 8 primes: %s" % (last,))
        g0, g1 = gamma
        cbar = Poly([QQ(g0), QQ(g1)])
        for (l0, l1) in pairs:
            c = qp * Poly([l0, l1]) + cbar
            R, rem = (c * c - f * e).divmod(qp)
            if not rem.is_zero():
                raise StructuralAssertionFailed("cover candidate broke the residue")
            if R.degree != 4:
                continue  # lam = 0: the square degenerates
            lam = QQ(R.lc())
            s1 = QQ(R[3]) / (2 * lam)
            s0 = QQ(R[2]) / (2 * lam) - s1 * s1 / 2
            s = Poly([s0, s1, QQ(1)])
            if c * c - f * e != qp * s * s * lam:
                raise StructuralAssertionFailed("norm identity failed on a verified zero")
            for dd in (d, -d):
                covers.append(Genus4Curve("cover", f=f, q=qp, c=c, d=dd,
                                          s=s, lam=lam))

    if not covers:
        raise TwistNotRepresented("the norm ansatz has no rational solutions")
    if twist is None:
        return covers
    want = square_class(QQ(twist))
    picked = [cv for cv in covers if square_class(cv.lam) == want]
    if not picked:
        raise TwistNotRepresented(
            "requested class %s not represented; classes found: %s"
            % (want, sorted({square_class(cv.lam) for cv in covers})))
    return picked


# ---------------------------------------------------------------------------
# the V4 model: one hyperelliptic equation


def genus4_V4(f, beta, d1=1, d2=1):
    """The glued hyperelliptic genus-4 curve of a V4 datum.

    f: square-free degree-5 polynomial (the five shared branch points;
    the sixth sits at infinity), beta: the sixth branch point of the
    second curve, d1, d2: nonzero twists of the two curves.  The model
    y^2 = d1 f(u^2/(d1 d2) + beta) is returned with denominators
    cleared, a square-free binary form of degree 10.

    beta at a root of f makes the two branch sets collide and raises
    BranchCollision.
    """
    if isinstance(f, BinaryForm):
        fp = f.to_poly()
    elif isinstance(f, Poly):
        fp = f
    else:
        fp = Poly(f)
    if fp.degree != 5:
        raise InvalidInput("need degree exactly 5 (sixth branch point at infinity)")
    if not BinaryForm.from_poly(fp, 5).is_squarefree():
        raise NotSquareFree("shared quintic has a repeated root")
    if not (_nz(d1) and _nz(d2)):
        raise InvalidInput("twists must be nonzero")
    if not _nz(fp(beta)):
        raise BranchCollision("beta is a shared branch point")
    zero = fp.lc() * 0
    one = zero + 1
    dd = d1 * d2
    shift = Poly([beta * dd, zero, one])  # u^2 + beta d1 d2
    acc = Poly([])
    for i in range(6):
        if _nz(fp[i]):
            acc = acc + shift ** i * (fp[i] * dd ** (5 - i))
    F10 = acc * (d1 * dd)
    FF = BinaryForm.from_poly(F10, 10)
    if not FF.is_squarefree():
        raise StructuralAssertionFailed("cleared model is not square-free")
    return Genus4Curve("hyperelliptic", F=FF)
