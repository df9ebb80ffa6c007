"""Genus-2 curves as binary sextics: invariants, twist/isomorphism tests.

A curve y^2 = f(x) with f square-free of degree 5 or 6 is handled as the
degree-6 binary form F (degree-5 input picks up a root at infinity).
Invariants are computed by classical transvectants:

    A = (F,F)_6          (scalar)
    i = (F,F)_4          (quartic covariant)
    B = (i,i)_4          (scalar)
    y1 = (F,i)_4         (quadratic covariant)
    C = (y1,y1)_2        (scalar)
    D = Res(F_U, F_V)    (scalar, nonzero iff F square-free)

    I2  = -A/120
    I4  =  B/6750  + A^2/135000
    I6  =  C/101250 - 7AB/4050000 - A^3/27000000
    I10 =  D

with weights (2,4,6,10): scaling f by c multiplies I_{2k} by c^{2k}, and
a Moebius substitution of determinant delta multiplies I_{2k} by
delta^{3*2k} -- so the weighted projective point [I2:I4:I6:I10] is a
twist- and coordinate-independent isomorphism invariant.  Two invariant
tuples are compared through tau = lambda^2: I_{2k} = tau^k J_{2k} for
k in (1,2,3,5); tau is pinned by the k=5 ratio since I10 never vanishes.
"""

from fractions import Fraction as QQ
from math import comb, factorial

from .errors import InvalidInput, NotSquareFree
from .exactmath import BinaryForm, Poly, _div, _nz, fp_roots


def sextic_form(f):
    """Canonicalize input (Poly or BinaryForm, degree <= 6) to a degree-6 form."""
    if isinstance(f, Poly):
        if f.degree not in (5, 6):
            raise InvalidInput("need degree 5 or 6, got %s" % f.degree)
        return BinaryForm.from_poly(f, 6)
    if isinstance(f, BinaryForm):
        if f.d == 6:
            return f
        if f.d == 5:
            return BinaryForm(6, [0] + list(f.c))
        raise InvalidInput("need a form of degree 5 or 6, got %d" % f.d)
    return BinaryForm.from_poly(Poly(f), 6)


def _derivs(F, k):
    """Table of d^k F / dU^(k-i) dV^i for i = 0..k."""
    out = []
    for i in range(k + 1):
        g = F
        for _ in range(k - i):
            g = g.deriv_u()
        for _ in range(i):
            g = g.deriv_v()
        out.append(g)
    return out


def transvectant(f, g, k):
    """((m-k)!(n-k)!/(m!n!)) sum_i (-1)^i C(k,i) f_{U^(k-i)V^i} g_{U^i V^(k-i)}."""
    m, n = f.d, g.d
    if k > m or k > n:
        raise InvalidInput("transvectant index exceeds a degree")
    pref = QQ(factorial(m - k) * factorial(n - k), factorial(m) * factorial(n))
    df = _derivs(f, k)
    dg = _derivs(g, k)
    acc = BinaryForm(m + n - 2 * k, [0] * (m + n - 2 * k + 1))
    for i in range(k + 1):
        term = df[i] * dg[k - i] * ((-1) ** i * comb(k, i))
        acc = acc + term
    return acc.map_coefficients(lambda c: pref * c)


class ICInvariants:
    """Weighted tuple (I2, I4, I6, I10); equality is weighted-projective."""

    WEIGHTS = (2, 4, 6, 10)

    def __init__(self, I2, I4, I6, I10, special=False):
        self.I2, self.I4, self.I6, self.I10 = I2, I4, I6, I10
        self.special = special  # I4*I6 = 0: possible extra automorphisms

    def tuple(self):
        return (self.I2, self.I4, self.I6, self.I10)

    def same_point(self, other):
        """True iff exists lambda with I_{2k} = lambda^{2k} J_{2k}."""
        if not _nz(self.I10) or not _nz(other.I10):
            raise InvalidInput("I10 must not vanish (square-free input)")
        ratio = _div(self.I10, other.I10)
        for tau in _kth_roots(ratio, 5):
            if (
                self.I2 == tau * other.I2
                and self.I4 == tau * tau * other.I4
                and self.I6 == tau ** 3 * other.I6
            ):
                return True
        return False

    def to_json(self):
        from .exactmath import scalar_to_json

        return {
            "I2": scalar_to_json(self.I2),
            "I4": scalar_to_json(self.I4),
            "I6": scalar_to_json(self.I6),
            "I10": scalar_to_json(self.I10),
            "special": self.special,
        }

    def __repr__(self):
        return "ICInvariants(%s, %s, %s, %s)" % (self.I2, self.I4, self.I6, self.I10)


def _int_kth_root(n, k):
    """Exact integer k-th root of n >= 0, or None."""
    if n < 0:
        return None
    if n in (0, 1):
        return n
    x = int(round(n ** (1.0 / k))) if n < (1 << 52) else 1 << ((n.bit_length() + k - 1) // k)
    # Newton to a fixed point, then check neighbours (float seed may be off)
    for _ in range(200):
        nx = ((k - 1) * x + n // x ** (k - 1)) // k
        if nx >= x:
            break
        x = nx
    for c in (x - 1, x, x + 1):
        if c >= 0 and c ** k == n:
            return c
    return None


def _kth_roots(ratio, k):
    """All k-th roots of ratio in its own field (exact; [] if none)."""
    if hasattr(ratio, "modulus"):
        p = ratio.modulus
        Fp = type(ratio)
        poly = [(-ratio).v] + [0] * (k - 1) + [1]
        return [Fp(r) for r, _ in fp_roots(poly, p)]
    q = QQ(ratio)
    neg = q < 0
    if neg and k % 2 == 0:
        return []
    rn = _int_kth_root(abs(q.numerator), k)
    rd = _int_kth_root(q.denominator, k)
    if rn is None or rd is None:
        return []
    root = QQ(-rn if neg else rn, rd)
    if k % 2 == 0:
        return [root, -root]
    return [root]


def igusa_clebsch(f):
    """Invariants of y^2 = f(x); degree-5 f is a sextic with a root at infinity."""
    F = sextic_form(f)
    if not F.is_squarefree():
        raise NotSquareFree("f has a repeated root (as a degree-6 form)")
    I2 = transvectant(F, F, 6).c[0]
    i4 = transvectant(F, F, 4)
    I4 = transvectant(i4, i4, 4).c[0]
    y1 = transvectant(F, i4, 4)
    I6 = transvectant(y1, y1, 2).c[0]
    # the resultant of the two partials is -1296 times the root-product
    # discriminant of the form, for every binary sextic
    I10 = _div(F.deriv_u().resultant(F.deriv_v()), -1296)
    special = not _nz(I4 * I6)
    return ICInvariants(I2, I4, I6, I10, special=special)


def same_curve_up_to_twist(f1, f2):
    """Weighted-projective equality of invariants (twist classes ignored)."""
    return igusa_clebsch(f1).same_point(igusa_clebsch(f2))


def mobius_apply(f, m):
    """f pushed through the Moebius map m (roots move forward)."""
    return f.transport(m)


class HypCurve:
    """y^2 = twist * f(x) with f square-free of degree 5 or 6."""

    def __init__(self, f, twist=None):
        self.f = sextic_form(f)
        if not self.f.is_squarefree():
            raise NotSquareFree("defining form has a repeated root")
        self.twist = twist

    def invariants(self):
        return igusa_clebsch(self.f)

    def to_json(self):
        from .exactmath import scalar_to_json

        return {
            "f": [scalar_to_json(c) for c in reversed(self.f.c)],
            "twist": None if self.twist is None else scalar_to_json(self.twist),
        }

    def __repr__(self):
        return "HypCurve(%r, twist=%r)" % (self.f, self.twist)
