"""Exact projective geometry: points, subspaces, projections, conics.

Conventions used throughout the package:

* points are homogeneous coordinate lists; equality is up to scale;
* subspaces carry a spanning basis (rows), canonicalized by reduced row
  echelon form with first-nonzero pivoting, so every derived coordinate
  chart is deterministic;
* a conic is a symmetric 3x3 Gram matrix G, the form being x^T G x
  (characteristic 2 is excluded by the scalar layer).
"""

from fractions import Fraction as QQ

from .errors import (
    InvalidInput,
    InvalidSubspace,
    NoRationalPointFound,
    NotACone,
    StructuralAssertionFailed,
)
from .exactmath import (
    MultiPoly,
    Poly,
    _div,
    _nz,
    is_square_int,
    mat_inverse,
    mat_kernel,
    mat_rank,
    mat_rref,
    scalar_to_json,
)


# ---------------------------------------------------------------------------
# points


def proj_normalize(v):
    """Scale so the first nonzero coordinate is 1 (field) / positive primitive (Q)."""
    v = list(v)
    i0 = next((i for i, a in enumerate(v) if _nz(a)), None)
    if i0 is None:
        raise InvalidInput("zero vector is not a projective point")
    if all(isinstance(a, (int, QQ)) for a in v):
        # integer primitive with positive first entry
        from math import gcd, lcm

        den = 1
        for a in v:
            den = lcm(den, QQ(a).denominator)
        ints = [int(QQ(a) * den) for a in v]
        g = 0
        for a in ints:
            g = gcd(g, a)
        if ints[i0] < 0:
            g = -g
        return [a // g for a in ints]
    lead = v[i0]
    return [_div(a, lead) for a in v]


def proj_eq(u, v):
    """Equality of projective points (up to global scale)."""
    if len(u) != len(v):
        return False
    i0 = next((i for i, a in enumerate(u) if _nz(a)), None)
    j0 = next((i for i, a in enumerate(v) if _nz(a)), None)
    if i0 != j0:
        return False
    if i0 is None:
        raise InvalidInput("zero vector is not a projective point")
    return all(u[i0] * v[k] == v[i0] * u[k] for k in range(len(u)))


# ---------------------------------------------------------------------------
# linear subspaces


class LinearSubspace:
    """Span of basis rows in P^n; equations kept consistent on demand."""

    def __init__(self, basis):
        rows = [list(r) for r in basis]
        if not rows:
            raise InvalidSubspace("empty basis")
        rref, pivots = mat_rref(rows)
        if len(pivots) != len(rows):
            raise InvalidSubspace("basis rows are linearly dependent")
        self.basis = [rref[i] for i in range(len(pivots))]
        self.ambient = len(rows[0])

    @staticmethod
    def from_equations(eqs):
        """Subspace cut out by the given linear forms (coefficient rows)."""
        ker = mat_kernel([list(e) for e in eqs])
        if not ker:
            raise InvalidSubspace("equations have no nonzero solution")
        return LinearSubspace(ker)

    @property
    def dim(self):
        """Projective dimension."""
        return len(self.basis) - 1

    def equations(self):
        """Linear forms vanishing on the subspace."""
        return mat_kernel([list(b) for b in self.basis])

    def contains(self, pt):
        return mat_rank(self.basis + [list(pt)]) == len(self.basis)

    def coordinates(self, pt):
        """Coefficients of pt in the basis, or None if not contained."""
        from .exactmath import mat_solve

        cols = [[self.basis[r][c] for r in range(len(self.basis))] for c in range(self.ambient)]
        return mat_solve(cols, list(pt))

    def to_json(self):
        return {"basis": [[scalar_to_json(a) for a in row] for row in self.basis]}

    def __repr__(self):
        return "LinearSubspace(dim %d in P^%d)" % (self.dim, self.ambient - 1)


def complete_to_basis(vecs, n):
    """Extend the rows to a basis of k^n using standard vectors, in index order."""
    rows = [list(v) for v in vecs]
    if rows and mat_rank(rows) != len(rows):
        raise InvalidSubspace("given vectors are dependent")
    for k in range(n):
        if len(rows) == n:
            break
        e = [0] * n
        e[k] = 1
        if mat_rank(rows + [e]) == len(rows) + 1:
            rows.append(e)
    return rows


def restrict_form(F, S):
    """F composed with the parametrization of S; same degree, dim(S)+1 vars."""
    if not isinstance(S, LinearSubspace):
        S = LinearSubspace(S)
    if F.n != S.ambient:
        raise InvalidSubspace("form lives in %d variables, subspace in %d" % (F.n, S.ambient))
    return F.subst_linear(S.basis)


# ---------------------------------------------------------------------------
# projection from a point


def _mp_divexact(num, den):
    """Exact multivariate division (deglex long division); raises if inexact."""
    if den.is_zero():
        raise ZeroDivisionError
    if num.is_zero():
        return MultiPoly(num.n)
    key = lambda e: (sum(e), e)
    lt_den = max(den.t, key=key)
    cd = den.t[lt_den]
    out = MultiPoly(num.n)
    rem = num
    while not rem.is_zero():
        lt = max(rem.t, key=key)
        diff = tuple(a - b for a, b in zip(lt, lt_den))
        if any(d < 0 for d in diff):
            raise InvalidInput("multivariate division is not exact")
        c = _div(rem.t[lt], cd)
        term = MultiPoly(num.n, {diff: c})
        out = out + term
        rem = rem - den * term
    return out


def mp_mat_det(rows):
    """Fraction-free (Bareiss) determinant of a matrix of MultiPolys."""
    n = len(rows)
    m = [[e for e in r] for r in rows]
    sign = 1
    nvars = m[0][0].n
    prev = MultiPoly.const(nvars, 1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            piv = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if piv is None:
                return MultiPoly(nvars)
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = _mp_divexact(num, prev)
        prev = m[k][k]
    out = m[n - 1][n - 1]
    return -out if sign < 0 else out


def projection_chart(v, n):
    """Deterministic basis with v last: completion by standard vectors."""
    comp = complete_to_basis([list(v)], n)
    return comp[1:] + [list(v)]


def project_from_point(forms, v, eliminate=False):
    """Project the zero locus of the given forms from the point v.

    Coordinates are changed so v becomes (0:...:0:1) via `projection_chart`.
    Cone case (default): each form must not involve the last coordinate;
    the result is coordinate deletion.  With eliminate=True the last
    variable is removed by pairwise resultants instead.
    """
    v = list(v)
    n = len(v)
    basis = projection_chart(v, n)
    moved = [F.subst_linear(basis) for F in forms]
    if not eliminate:
        out = []
        for F in moved:
            for e in F.t:
                if e[n - 1]:
                    raise NotACone(e)
            out.append(F.drop_var(n - 1))
        return out
    if len(moved) < 2:
        raise InvalidInput("resultant elimination needs at least two forms")
    out = []
    for i in range(len(moved) - 1):
        out.append(_resultant_in_last_var(moved[i], moved[i + 1]))
    return out


def _resultant_in_last_var(F, G):
    """Res_w(F, G) where w is the last variable; MultiPoly in one fewer var."""
    n = F.n
    cf = F.collect(n - 1)
    cg = G.collect(n - 1)
    df, dg = max(cf), max(cg)
    if df == 0 or dg == 0:
        raise InvalidInput("a form does not involve the eliminated variable")
    zero = MultiPoly(n)
    rows = []
    fr = [cf.get(df - i, zero) for i in range(df + 1)]  # descending in w
    gr = [cg.get(dg - i, zero) for i in range(dg + 1)]
    size = df + dg
    for k in range(dg):
        rows.append([zero] * k + fr + [zero] * (size - df - 1 - k))
    for k in range(df):
        rows.append([zero] * k + gr + [zero] * (size - dg - 1 - k))
    det = mp_mat_det(rows)
    return det.drop_var(n - 1)


# ---------------------------------------------------------------------------
# conics


def conic_eval(G, x):
    return sum(G[i][j] * x[i] * x[j] for i in range(3) for j in range(3))


def conic_bilinear(G, x, y):
    return sum(G[i][j] * x[i] * y[j] for i in range(3) for j in range(3))


def conic_det(G):
    return (
        G[0][0] * (G[1][1] * G[2][2] - G[1][2] * G[2][1])
        - G[0][1] * (G[1][0] * G[2][2] - G[1][2] * G[2][0])
        + G[0][2] * (G[1][0] * G[2][1] - G[1][1] * G[2][0])
    )


def conic_from_multipoly(F):
    """Symmetric Gram matrix of a quadratic form in 3 variables."""
    if F.n != 3 or F.degree() > 2:
        raise InvalidInput("need a quadratic form in exactly 3 variables")
    G = [[QQ(0)] * 3 for _ in range(3)]
    for e, c in F.t.items():
        if sum(e) != 2:
            raise InvalidInput("form is not homogeneous quadratic")
        idx = [i for i in range(3) for _ in range(e[i])]
        i, j = idx
        if i == j:
            G[i][i] = G[i][i] + c
        else:
            G[i][j] = G[i][j] + _div(c, 2)
            G[j][i] = G[j][i] + _div(c, 2)
    return G


def conic_to_multipoly(G):
    F = MultiPoly(3)
    for i in range(3):
        for j in range(3):
            e = [0, 0, 0]
            e[i] += 1
            e[j] += 1
            F = F + MultiPoly(3, {tuple(e): G[i][j]})
    return F


def _int_gram(G):
    """Clear denominators to a primitive integer Gram matrix."""
    from math import gcd, lcm

    den = 1
    for row in G:
        for a in row:
            den = lcm(den, QQ(a).denominator)
    M = [[int(QQ(a) * den) for a in row] for row in G]
    g = 0
    for row in M:
        for a in row:
            g = gcd(g, a)
    return [[a // g for a in row] for row in M]


def _is_definite(M):
    """Sylvester criterion; M integer symmetric, assumed nonsingular."""
    m1 = M[0][0]
    m2 = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    m3 = conic_det(M)
    if m1 > 0 and m2 > 0 and m3 > 0:
        return True
    if m1 < 0 and m2 > 0 and m3 < 0:
        return True
    return False


def _locally_unsolvable(M):
    """True if x^T M x = 0 has no primitive solution mod one of a few prime powers."""
    for p, m in ((2, 16), (3, 9), (5, 25), (7, 49)):
        found = False
        for x in range(m):
            for y in range(m):
                for z in range(m):
                    if x % p == 0 and y % p == 0 and z % p == 0:
                        continue
                    v = (x, y, z)
                    s = sum(M[i][j] * v[i] * v[j] for i in range(3) for j in range(3))
                    if s % m == 0:
                        found = True
                        break
                if found:
                    break
            if found:
                break
        if not found:
            return True
    return False


def _signed_range(h):
    yield 0
    for k in range(1, h + 1):
        yield k
        yield -k


def conic_rational_point(G, height_bound=10**4):
    """A rational point on the conic x^T G x = 0, by bounded-height search.

    Over F_p (Gram entries carrying a `modulus`) the search is a full
    deterministic chart scan instead.  Exhaustion raises
    NoRationalPointFound -- which is NOT a proof that no point exists.
    """
    if hasattr(G[0][0], "modulus") or any(hasattr(G[i][j], "modulus") for i in range(3) for j in range(3)):
        return _conic_point_fp(G)
    M = _int_gram(G)
    # diagonal zero: a standard basis point is already on the conic
    for i in range(3):
        if M[i][i] == 0:
            pt = [0, 0, 0]
            pt[i] = 1
            return pt
    if _is_definite(M):
        raise NoRationalPointFound("definite form: no real point, hence no rational point")
    if _locally_unsolvable(M):
        raise NoRationalPointFound("no solution over some completion (small prime-power filter)")
    # solve a w^2 + b w + c = 0 for coordinate `solve`, the other two set to (u, v)
    charts = []
    for solve in range(3):
        others = [k for k in range(3) if k != solve]
        charts.append((solve, others))
    for h in range(1, height_bound + 1):
        for solve, (i, j) in charts:
            a = M[solve][solve]
            for u in _signed_range(h):
                for v in _signed_range(h):
                    if max(abs(u), abs(v)) != h:
                        continue
                    b = 2 * (M[solve][i] * u + M[solve][j] * v)
                    c = M[i][i] * u * u + 2 * M[i][j] * u * v + M[j][j] * v * v
                    disc = b * b - 4 * a * c
                    ok, r = is_square_int(disc)
                    if not ok:
                        continue
                    for sgn in (1, -1):
                        num = -b + sgn * r
                        if num % (2 * a) == 0:
                            w = num // (2 * a)
                        else:
                            w = QQ(num, 2 * a)
                        pt = [0, 0, 0]
                        pt[solve], pt[i], pt[j] = w, u, v
                        if any(_nz(x) for x in pt):
                            return proj_normalize(pt)
    raise NoRationalPointFound("height bound %d exhausted" % height_bound)


def _conic_point_fp(G):
    Fp = type(next(G[i][j] for i in range(3) for j in range(3) if hasattr(G[i][j], "modulus")))
    p = Fp.modulus
    M = [[Fp(G[i][j]) for j in range(3)] for i in range(3)]
    for i in range(3):
        if M[i][i] == 0:
            pt = [Fp(0)] * 3
            pt[i] = Fp(1)
            return pt
    # chart z = 1: solve for y given x = t
    a = M[1][1]
    for t in range(p):
        x = Fp(t)
        b = 2 * (M[1][0] * x + M[1][2])
        c = M[0][0] * x * x + 2 * M[0][2] * x + M[2][2]
        disc = b * b - 4 * a * c
        s = disc.sqrt()
        if s is not None:
            y = (-b + s) / (2 * a)
            return proj_normalize([x, y, Fp(1)])
    # chart y = 1, z = 0: a x^2 + 2 M01 x + M11 = 0
    a0 = M[0][0]
    b0 = 2 * M[0][1]
    c0 = M[1][1]
    disc = b0 * b0 - 4 * a0 * c0
    s = disc.sqrt()
    if s is not None:
        return proj_normalize([(-b0 + s) / (2 * a0), Fp(1), Fp(0)])
    raise NoRationalPointFound("no point over F_%d (full scan)" % p)


def conic_parametrize(G, pt):
    """Degree-2 map P^1 -> P^2 sweeping lines through pt.

    Directions run over d(s,t) = s e_i + t e_j for the two smallest
    standard vectors independent of pt; the second intersection is
    x(s,t) = Q(d) pt - 2 B(pt,d) d.  Returns three binary quadratics
    as (degree-2 MultiPoly in (s,t)) coefficient triples.
    """
    pt = list(pt)
    if conic_eval(G, pt) != 0:
        raise InvalidInput("point is not on the conic")
    if conic_det(G) == 0:
        raise InvalidInput("conic is singular")
    idx = None
    for i in range(3):
        for j in range(i + 1, 3):
            rows = [pt, [1 if k == i else 0 for k in range(3)], [1 if k == j else 0 for k in range(3)]]
            if mat_rank(rows) == 3:
                idx = (i, j)
                break
        if idx:
            break
    i, j = idx
    # Q(d) and B(pt, d) as binary forms in (s, t)
    ei = [1 if k == i else 0 for k in range(3)]
    ej = [1 if k == j else 0 for k in range(3)]
    qii = conic_eval(G, ei)
    qjj = conic_eval(G, ej)
    qij = conic_bilinear(G, ei, ej)
    bi = conic_bilinear(G, pt, ei)
    bj = conic_bilinear(G, pt, ej)
    comps = []
    for k in range(3):
        # coefficient of s^2, st, t^2 in  Q(d) pt_k - 2 B(pt,d) d_k
        dk_s = ei[k]
        dk_t = ej[k]
        c_ss = qii * pt[k] - 2 * bi * dk_s
        c_st = 2 * qij * pt[k] - 2 * (bi * dk_t + bj * dk_s)
        c_tt = qjj * pt[k] - 2 * bj * dk_t
        comps.append(MultiPoly(2, {(2, 0): c_ss, (1, 1): c_st, (0, 2): c_tt}))
    if all(c.is_zero() for c in comps):
        raise StructuralAssertionFailed("parametrization collapsed")
    # coprimality of the three components (no common root on P^1)
    _assert_coprime_components(comps)
    return {"components": comps, "point": pt, "dirs": (i, j), "gram": G}


def _assert_coprime_components(comps):
    from .exactmath import BinaryForm

    forms = [c.to_binary_form(2) for c in comps if not c.is_zero()]
    g = forms[0]
    for f in forms[1:]:
        g = g.gcd(f)
    if g.d != 0:
        raise StructuralAssertionFailed("parametrization components share a root")


def param_evaluate(param, s, t):
    return [c.evaluate([s, t]) for c in param["components"]]


def param_inverse(param, y):
    """(s, t) with param(s:t) = y, for y on the conic."""
    G = param["gram"]
    pt = param["point"]
    if conic_eval(G, y) != 0:
        raise InvalidInput("point is not on the conic")
    i, j = param["dirs"]
    ei = [1 if k == i else 0 for k in range(3)]
    ej = [1 if k == j else 0 for k in range(3)]
    from .exactmath import mat_solve

    cols = [[pt[k], ei[k], ej[k]] for k in range(3)]
    co = mat_solve(cols, list(y))
    if co is None:
        raise InvalidInput("point does not lie in the chart span")  # impossible: basis of k^3
    if _nz(co[1]) or _nz(co[2]):
        return (co[1], co[2])
    # y is pt itself: its parameter is the tangent direction
    bi = conic_bilinear(G, pt, ei)
    bj = conic_bilinear(G, pt, ej)
    if not (_nz(bi) or _nz(bj)):
        raise StructuralAssertionFailed("tangent line vanishes on the direction plane")
    return (bj, -bi)


def conic_tangent_line(G, pt):
    """The polar line Gram . pt of a point on the conic."""
    if conic_eval(G, pt) != 0:
        raise InvalidInput("point is not on the conic")
    if conic_det(G) == 0:
        raise InvalidInput("conic is singular")
    return [sum(G[k][l] * pt[l] for l in range(3)) for k in range(3)]


# ---------------------------------------------------------------------------
# squares of forms


def _small_nonvanishing_point(T, radius=3):
    from itertools import product

    for r in range(1, radius + 1):
        for pt in product(range(-r, r + 1), repeat=T.n):
            if any(pt) and _nz(T.evaluate(list(pt))):
                return list(pt)
    return None


def proportional_to_square(T):
    """If the homogeneous form T equals c * S^2, return (c, S); else None.

    Works over Q and over odd-characteristic fields.  The square root is
    read off coefficient-by-coefficient against a variable whose pure
    power occurs in T; if no such variable exists, the form is sheared so
    one does and the result is pulled back.
    """
    if T.is_zero():
        return None
    deg = T.degree()
    if deg % 2:
        return None
    n, d = T.n, deg // 2
    k = None
    for i in range(n):
        if _nz(T.t.get(tuple(deg if j == i else 0 for j in range(n)), 0)):
            k = i
            break
    if k is None:
        pt = _small_nonvanishing_point(T)
        if pt is None:
            return None
        rows = complete_to_basis([pt], n)
        res = proportional_to_square(T.subst_linear(rows))
        if res is None:
            return None
        c, S = res
        return c, S.subst_linear(mat_inverse(rows))
    by = T.collect(k)

    def coef(j):
        return by.get(j, MultiPoly(n))

    c = coef(deg).t[tuple(0 for _ in range(n))]
    inv2c = _div(1, 2 * c)
    half = {d: MultiPoly.const(n, 1)}
    for j in range(1, d + 1):
        acc = coef(deg - j)
        for i in range(1, j):
            acc = acc - (half[d - i] * half[d - j + i]).map_coefficients(lambda v: v * c)
        half[d - j] = acc.map_coefficients(lambda v: v * inv2c)
    S = MultiPoly(n)
    for j, part in half.items():
        S = S + part * MultiPoly.var(n, k, j)
    check = (S * S).map_coefficients(lambda v: v * c) - T
    if not check.is_zero():
        return None
    return c, S
