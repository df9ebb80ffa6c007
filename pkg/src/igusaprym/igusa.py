"""The Igusa quartic threefold: models, polar calculus, special loci, sections.

Classical model: F = (sum x_j^2)^2 - 4 sum x_j^4 on the hyperplane
sum x_j = 0 in P^5.  Its singular locus is the union of 15 lines, one per
perfect matching of {0..5} ("syntheme"): the matching {ij|kl|mn} gives
the line x_i = x_j, x_k = x_l, x_m = x_n.  Ten hyperplane sections
x_i + x_j + x_k = 0 sweep the locus of decomposable (product-of-elliptic)
sections; tangent sections at points outside these loci are Kummer
quartic surfaces.

Symmetroid model: F = det A(x) for the symmetric 4x4 matrix A(x) with
zero diagonal and off-diagonal entries x_0..x_4, x_5 = -(x_0+...+x_4);
its singular locus is the rank-<=2 locus.

Gradient convention (fixed so reported values reproduce bit-exactly):
eliminate x_5 = -(x_0+...+x_4) and differentiate the resulting chart
quartic in x_0..x_4.  With S2 = sum_{i=0..5} x_i^2,

    dF~/dx_j = 4 S2 (x_j - x_5) - 16 (x_j^3 - x_5^3),   j = 0..4.

The polar pairing P(a,b) = sum_{j=0..4} dF~/dx_j(a) b_j.  Vanishing of
P(a,b) (membership b in T_a) is convention-independent; the value is not.
"""

from itertools import combinations

from .errors import (
    EllipticLocus,
    InvalidInput,
    NotOnHyperplane,
    OnSingularLine,
    StructuralAssertionFailed,
)
from .exactmath import MultiPoly, _nz, mat_kernel, mat_solve
from .projgeom import LinearSubspace, proj_eq, proj_normalize


# ---------------------------------------------------------------------------
# syntheme / elliptic combinatorics


def synthemes():
    """The 15 perfect matchings of {0..5}, lexicographically ordered."""
    out = []

    def rec(rest, acc):
        if not rest:
            out.append(tuple(acc))
            return
        first = rest[0]
        for k in rest[1:]:
            pair = (first, k)
            rec([x for x in rest[1:] if x != k], acc + [pair])

    rec(list(range(6)), [])
    return out


SYNTHEMES = synthemes()

ELLIPTIC_TRIPLES = [t for t in combinations(range(6), 3)]  # all 20; complements paired


# ---------------------------------------------------------------------------
# models


def _classical_F6():
    s2 = MultiPoly(6)
    s4 = MultiPoly(6)
    for i in range(6):
        s2 = s2 + MultiPoly.var(6, i, e=2)
        s4 = s4 + MultiPoly.var(6, i, e=4)
    return s2 * s2 - 4 * s4


def _classical_chart_F5():
    """F~ = F with x5 = -(x0+..+x4), a quartic in 5 variables."""
    x5 = MultiPoly(5)
    for i in range(5):
        x5 = x5 - MultiPoly.var(5, i)
    s2 = x5 * x5
    s4 = x5 ** 4
    for i in range(5):
        s2 = s2 + MultiPoly.var(5, i, e=2)
        s4 = s4 + MultiPoly.var(5, i, e=4)
    return s2 * s2 - 4 * s4


def symmetroid_matrix(x, zero=0):
    """A(x) for 5 chart coordinates; x5 = -(x0+..+x4)."""
    x5 = -(x[0] + x[1] + x[2] + x[3] + x[4])
    return [
        [zero, x[0], x[1], x[2]],
        [x[0], zero, x[3], x[4]],
        [x[1], x[3], zero, x5],
        [x[2], x[4], x5, zero],
    ]


def _symmetroid_F5():
    xs = [MultiPoly.var(5, i) for i in range(5)]
    A = symmetroid_matrix(xs, zero=MultiPoly(5))
    from .projgeom import mp_mat_det

    return mp_mat_det(A)


class QuarticThreefold:
    """Immutable model object; all operations are pure functions of it."""

    def __init__(self, model):
        if model not in ("classical", "symmetroid"):
            raise InvalidInput("unknown model %r" % (model,))
        self.model = model
        if model == "classical":
            self.F6 = _classical_F6()
            self.F5 = _classical_chart_F5()
            self.lines = [_syntheme_line(s) for s in SYNTHEMES]
        else:
            self.F5 = _symmetroid_F5()
            self.F6 = None
            self.lines = None  # singular locus is the rank-<=2 locus

    def __repr__(self):
        return "QuarticThreefold(%s)" % self.model


def _syntheme_line(matching):
    """The singular line x_i=x_j (pairs), inside sum x = 0."""
    (i1, j1), (i2, j2), (i3, j3) = matching
    b1 = [0] * 6
    b1[i1] = b1[j1] = 1
    b1[i3] = b1[j3] = -1
    b2 = [0] * 6
    b2[i2] = b2[j2] = 1
    b2[i3] = b2[j3] = -1
    return LinearSubspace([b1, b2])


_CLASSICAL = None
_SYMMETROID = None


def igusa_classical():
    global _CLASSICAL
    if _CLASSICAL is None:
        _CLASSICAL = QuarticThreefold("classical")
    return _CLASSICAL


def igusa_symmetroid():
    global _SYMMETROID
    if _SYMMETROID is None:
        _SYMMETROID = QuarticThreefold("symmetroid")
    return _SYMMETROID


# ---------------------------------------------------------------------------
# coordinate plumbing


def _validate_classical(a):
    if len(a) != 6:
        raise InvalidInput("classical model points have 6 coordinates")
    if not any(_nz(x) for x in a):
        raise InvalidInput("zero vector is not a projective point")
    if _nz(sum(a)):
        raise NotOnHyperplane("coordinates must sum to zero")


def chart5(a):
    """Drop x5 (recoverable as minus the sum of the rest)."""
    _validate_classical(a)
    return list(a[:5])


def unchart5(c):
    return list(c) + [-(c[0] + c[1] + c[2] + c[3] + c[4])]


# ---------------------------------------------------------------------------
# membership and loci


def contains(I, a):
    if I.model == "classical":
        _validate_classical(a)
        return not _nz(I.F6.evaluate(list(a)))
    if len(a) != 5:
        raise InvalidInput("symmetroid points have 5 coordinates")
    return not _nz(I.F5.evaluate(list(a)))


def is_elliptic(I, a):
    """Some triple of coordinates sums to zero (all 20 triples scanned)."""
    if I.model != "classical":
        raise InvalidInput("elliptic locus is defined on the classical model")
    _validate_classical(a)
    return any(not _nz(a[i] + a[j] + a[k]) for i, j, k in ELLIPTIC_TRIPLES)


def is_on_singular_line(I, a):
    """Index into SYNTHEMES of a line containing a, or None."""
    if I.model != "classical":
        raise InvalidInput("syntheme lines are stored on the classical model")
    _validate_classical(a)
    for idx, m in enumerate(SYNTHEMES):
        if all(not _nz(a[i] - a[j]) for i, j in m):
            return idx
    return None


# ---------------------------------------------------------------------------
# polar calculus


def gradient5(I, a):
    """(dF~/dx_0, ..., dF~/dx_4) at a; closed form for the classical model."""
    if I.model == "classical":
        c = chart5(a)
        x5 = a[5]
        s2 = sum(x * x for x in a)
        return [4 * s2 * (c[j] - x5) - 16 * (c[j] ** 3 - x5 ** 3) for j in range(5)]
    if len(a) != 5:
        raise InvalidInput("symmetroid points have 5 coordinates")
    return [I.F5.partial(j).evaluate(list(a)) for j in range(5)]


def polar_pair(I, a, b):
    """P(a,b) = sum_j dF~/dx_j(a) b_j (chart coordinates of b)."""
    g = gradient5(I, a)
    if I.model == "classical":
        c = chart5(b)
    else:
        if len(b) != 5:
            raise InvalidInput("symmetroid points have 5 coordinates")
        c = list(b)
    return sum(gj * cj for gj, cj in zip(g, c))


def iterated_polar(I, b, j):
    """p_b^(j) F~: apply p_b(G) = sum_i b_i dG/dx_i j times (no factorials)."""
    if j < 1 or j > 3:
        raise InvalidInput("iterated polar order must be 1, 2 or 3")
    if I.model == "classical":
        c = chart5(b)
    else:
        if len(b) != 5:
            raise InvalidInput("symmetroid points have 5 coordinates")
        c = list(b)
    G = I.F5
    for _ in range(j):
        G = _polar_step(G, c)
    return G


def _polar_step(G, c):
    out = MultiPoly(G.n)
    for i, ci in enumerate(c):
        if _nz(ci):
            out = out + G.partial(i) * ci
    return out


# ---------------------------------------------------------------------------
# symmetry action


class SigmaAction:
    """Permutation of {0..5} acting by (sigma a)_i = a_{sigma(i)}."""

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(6)):
            raise InvalidInput("not a permutation of 0..5: %r" % (images,))
        self.images = images

    @staticmethod
    def from_cycles(cycles):
        """e.g. [(0,1,2)] for the 3-cycle 0->1->2->0."""
        img = list(range(6))
        for cyc in cycles:
            for k, v in zip(cyc, cyc[1:] + (cyc[0],)):
                img[k] = v
        return SigmaAction(img)

    @staticmethod
    def parse(text):
        """Cycle notation '(0,1,2)(3,4)' or comma list '1,2,0,3,4,5'."""
        text = text.strip()
        if text in ("id", "()", ""):
            return SigmaAction(range(6))
        if text.startswith("("):
            cycles = []
            for part in text.replace(")(", ")|(").split("|"):
                inner = part.strip()[1:-1]
                cyc = tuple(int(t) for t in inner.replace(" ", "").split(","))
                cycles.append(cyc)
            return SigmaAction.from_cycles(cycles)
        return SigmaAction(tuple(int(t) for t in text.split(",")))

    def apply(self, a):
        if len(a) != 6:
            raise InvalidInput("sigma acts on 6 coordinates")
        return [a[self.images[i]] for i in range(6)]

    def compose(self, other):
        """self after other: (self.compose(other)).apply = self.apply of other.apply."""
        return SigmaAction([other.images[self.images[i]] for i in range(6)])

    def inverse(self):
        inv = [0] * 6
        for i, v in enumerate(self.images):
            inv[v] = i
        return SigmaAction(inv)

    def is_identity(self):
        return self.images == tuple(range(6))

    def cycle_type(self):
        seen = [False] * 6
        lens = []
        for i in range(6):
            if seen[i]:
                continue
            l, k = 0, i
            while not seen[k]:
                seen[k] = True
                k = self.images[k]
                l += 1
            lens.append(l)
        return tuple(sorted(lens, reverse=True))

    def __eq__(self, o):
        return isinstance(o, SigmaAction) and self.images == o.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return "SigmaAction%r" % (self.images,)


def sigma_apply(sigma, a):
    if not isinstance(sigma, SigmaAction):
        sigma = SigmaAction(sigma)
    return sigma.apply(a)


# ---------------------------------------------------------------------------
# tangent sections


class KummerSection:
    """The tangent hyperplane section of the classical model at a.

    basis: rows spanning T_a (chart coordinates, 5 entries each), with a
    itself as the LAST row, so the distinguished node is (0:0:0:1).
    quartic: the restriction of F~ to that basis (4 variables).
    nodes: 16 points in basis coordinates, node a first, each verified
    singular on the restricted quartic.
    """

    def __init__(self, point, basis, quartic, nodes, ambient=None):
        self.point = list(point)
        self.basis = basis
        self.quartic = quartic
        self.nodes = nodes
        self.ambient = ambient
        self._node_polar = None  # (conic gram, cubic), filled once on demand

    def __repr__(self):
        return "KummerSection(at %s)" % (self.point,)


def tangent_basis(I, a):
    """Basis of T_a in chart coordinates with a as the last row.

    Deterministic: rref kernel of the gradient row, then drop the first
    kernel vector that carries a nonzero coefficient in a's expansion.
    """
    g = gradient5(I, a)
    if all(not _nz(x) for x in g):
        raise InvalidInput("gradient vanishes: singular point")
    ker = mat_kernel([g])
    if len(ker) != 4:
        raise StructuralAssertionFailed("tangent space has wrong dimension")
    ca = chart5(a) if I.model == "classical" else list(a)
    cols = [[ker[r][c] for r in range(4)] for c in range(5)]
    co = mat_solve(cols, ca)
    if co is None:
        raise StructuralAssertionFailed("point not in its own tangent space")
    j0 = next(i for i in range(4) if _nz(co[i]))
    return [ker[i] for i in range(4) if i != j0] + [ca]


def kummer_section(I, a):
    """Tangent section at a with its 16 nodes, each verified singular."""
    if I.model != "classical":
        raise InvalidInput("kummer_section expects the classical model")
    if not contains(I, a):
        raise InvalidInput("point is not on the quartic")
    # line check first: every point of a singular line also lies on elliptic
    # hyperplanes (cross-pair triples sum to zero), so this order keeps the
    # two failure modes distinguishable.
    if is_on_singular_line(I, a) is not None:
        raise OnSingularLine("tangent section undefined on the singular locus")
    if is_elliptic(I, a):
        raise EllipticLocus("tangent section at an elliptic point is a doubled quadric")
    basis = tangent_basis(I, a)
    quartic = I.F5.subst_linear(basis)
    grads = [quartic.partial(i) for i in range(4)]

    g = gradient5(I, a)

    def eta(v6):
        return sum(gj * vj for gj, vj in zip(g, v6[:5]))

    nodes = [[0, 0, 0, 1]]
    for line in I.lines:
        u, v = line.basis
        eu, ev = eta(u), eta(v)
        if not _nz(eu) and not _nz(ev):
            raise StructuralAssertionFailed("a singular line lies inside T_a")
        p6 = [ev * ui - eu * vi for ui, vi in zip(u, v)]
        node = _in_basis_coords(basis, p6[:5])
        nodes.append(node)
    for node in nodes:
        if any(_nz(gr.evaluate(node)) for gr in grads):
            raise StructuralAssertionFailed("node candidate is not singular")
    # nodes are pairwise distinct projectively
    for i in range(16):
        for j in range(i + 1, 16):
            if proj_eq(nodes[i], nodes[j]):
                raise StructuralAssertionFailed("node collision in the 16-point set")
    return KummerSection(a, basis, quartic, nodes, ambient=I)


def _in_basis_coords(basis, v5):
    cols = [[basis[r][c] for r in range(len(basis))] for c in range(5)]
    co = mat_solve(cols, list(v5))
    if co is None:
        raise StructuralAssertionFailed("point claimed in subspace is not")
    return proj_normalize(co)
