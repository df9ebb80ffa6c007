"""Exact coefficient arithmetic and polynomial algebra.

Scalars are either `fractions.Fraction` (canonical reduced form is
guaranteed by the stdlib) or prime-field elements produced by `GF(p)`
with p an odd prime; characteristic 2 is rejected everywhere.  All
polynomial containers are written against a duck-typed field interface:
coefficients must support +, -, *, / and == among themselves and with
plain ints, so that 0 and 1 literals act as the neutral elements.  This
lets every routine below run unchanged over Q, F_p, a number field, or
a rational function field.

Representations:

* Poly      -- dense univariate, coefficient list in ASCENDING order,
               no trailing zeros; the zero polynomial is [].
* BinaryForm-- homogeneous binary form of formal degree d, coefficient
               vector c[0..d] meaning c0*U^d + c1*U^(d-1)V + ... + cd*V^d.
               The point (1:0) is "infinity"; its multiplicity as a root
               is the number of leading zero coefficients.
* MultiPoly -- sparse multivariate, dict {exponent tuple: coefficient},
               no zero coefficients stored.

No floating point is used anywhere.
"""

import math
from fractions import Fraction

from .errors import InvalidInput

QQ = Fraction


# ---------------------------------------------------------------------------
# integer utilities


def _miller_rabin(n, a):
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    x = pow(a, d, n)
    if x in (1, n - 1):
        return True
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n):
    """Deterministic for n < 3.3 * 10^24 (fixed witness set)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    return all(_miller_rabin(n, a) for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37))


def factor_int(n):
    """Factorization dict of |n|; trial division then Pollard rho."""
    n = abs(n)
    if n == 0:
        raise InvalidInput("cannot factor 0")
    out = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while d * d <= n and d < 100000:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += wheel[i]
        i = (i + 1) % 8
    if n == 1:
        return out

    def rho(m):
        if is_prime(m):
            return m
        if m % 2 == 0:
            return 2
        c = 1
        while True:
            x = y = 2
            d = 1
            while d == 1:
                x = (x * x + c) % m
                y = (y * y + c) % m
                y = (y * y + c) % m
                d = math.gcd(abs(x - y), m)
            if d != m:
                return d if is_prime(d) else rho(d)
            c += 1

    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        p = rho(m)
        stack.append(p)
        stack.append(m // p)
    return out


def divisors(n):
    """Sorted positive divisors of |n| (n != 0)."""
    fac = factor_int(n)
    out = [1]
    for p, e in fac.items():
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def is_square_int(n):
    if n < 0:
        return False, 0
    r = math.isqrt(n)
    return r * r == n, r


def is_square_fraction(q):
    """(True, sqrt) if the rational q is a square in Q, else (False, 0)."""
    q = QQ(q)
    if q < 0:
        return False, QQ(0)
    ok_n, rn = is_square_int(q.numerator)
    if not ok_n:
        return False, QQ(0)
    ok_d, rd = is_square_int(q.denominator)
    if not ok_d:
        return False, QQ(0)
    return True, QQ(rn, rd)


def square_class(q):
    """Squarefree integer representing the class of q in Q^x / (Q^x)^2."""
    q = QQ(q)
    if q == 0:
        raise InvalidInput("0 has no square class")
    n = q.numerator * q.denominator
    sign = -1 if n < 0 else 1
    out = sign
    for p, e in factor_int(n).items():
        if e % 2:
            out *= p
    return out


def rational_reconstruction(a, m):
    """Find p/q = a mod m with |p|, q <= sqrt(m/2), or None."""
    a %= m
    bound = math.isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if r1 == 0 or abs(s1) > bound or math.gcd(r1, abs(s1)) != 1:
        return None
    if s1 < 0:
        return QQ(-r1, -s1)
    return QQ(r1, s1)


def crt(r1, m1, r2, m2):
    g = math.gcd(m1, m2)
    if g != 1:
        raise InvalidInput("moduli not coprime")
    x = (r1 + (r2 - r1) * pow(m1, -1, m2) % m2 * m1) % (m1 * m2)
    return x, m1 * m2


# ---------------------------------------------------------------------------
# prime fields

_GF_CACHE = {}


def GF(p):
    """Element class of F_p.  p must be an odd prime (char 2 rejected)."""
    cls = _GF_CACHE.get(p)
    if cls is not None:
        return cls
    if p < 3 or not is_prime(p):
        raise InvalidInput("GF wants an odd prime, got %s" % p)

    class Fp:
        __slots__ = ("v",)
        modulus = p

        def __init__(self, v):
            if isinstance(v, Fp):
                self.v = v.v
            elif isinstance(v, Fraction):
                self.v = v.numerator * pow(v.denominator, -1, p) % p
            else:
                self.v = int(v) % p

        def __add__(self, o):
            return Fp(self.v + Fp(o).v)

        __radd__ = __add__

        def __sub__(self, o):
            return Fp(self.v - Fp(o).v)

        def __rsub__(self, o):
            return Fp(Fp(o).v - self.v)

        def __mul__(self, o):
            return Fp(self.v * Fp(o).v)

        __rmul__ = __mul__

        def __truediv__(self, o):
            ov = Fp(o).v
            if ov == 0:
                raise ZeroDivisionError("division by zero in GF(%d)" % p)
            return Fp(self.v * pow(ov, -1, p))

        def __rtruediv__(self, o):
            if self.v == 0:
                raise ZeroDivisionError("division by zero in GF(%d)" % p)
            return Fp(Fp(o).v * pow(self.v, -1, p))

        def __pow__(self, e):
            if e < 0:
                return Fp(pow(self.v, e, p))
            return Fp(pow(self.v, e, p))

        def __neg__(self):
            return Fp(-self.v)

        def __eq__(self, o):
            if isinstance(o, Fp):
                return self.v == o.v
            if isinstance(o, int):
                return self.v == o % p
            if isinstance(o, Fraction):
                return self.v == Fp(o).v
            return NotImplemented

        def __ne__(self, o):
            r = self.__eq__(o)
            return NotImplemented if r is NotImplemented else not r

        def __hash__(self):
            return hash((p, self.v))

        def __bool__(self):
            return self.v != 0

        def __repr__(self):
            return "%d" % self.v

        def sqrt(self):
            """Tonelli-Shanks; returns None for non-residues."""
            a = self.v
            if a == 0:
                return Fp(0)
            if pow(a, (p - 1) // 2, p) != 1:
                return None
            if p % 4 == 3:
                return Fp(pow(a, (p + 1) // 4, p))
            # Tonelli-Shanks
            q, s = p - 1, 0
            while q % 2 == 0:
                q //= 2
                s += 1
            z = 2
            while pow(z, (p - 1) // 2, p) != p - 1:
                z += 1
            m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
            while t != 1:
                t2, i = t * t % p, 1
                while t2 != 1:
                    t2 = t2 * t2 % p
                    i += 1
                b = pow(c, 1 << (m - i - 1), p)
                m, c = i, b * b % p
                t, r = t * c % p, r * b % p
            return Fp(r)

    Fp.__name__ = "GF%d" % p
    _GF_CACHE[p] = Fp
    return Fp


# ---------------------------------------------------------------------------
# number fields  Q[z]/(m(z))


class NumberField:
    """Q[z]/(m(z)) with m monic; elements are coefficient tuples."""

    def __init__(self, mod_coeffs, name="z"):
        mod = [QQ(c) for c in mod_coeffs]
        if not mod or mod[-1] != 1:
            raise InvalidInput("modulus must be monic, ascending coefficients")
        self.mod = mod
        self.deg = len(mod) - 1
        self.name = name
        # reduction table: z^(deg+k) as a vector, k = 0..deg-2
        red = []
        cur = [-c for c in mod[:-1]]  # z^deg
        red.append(list(cur))
        for _ in range(self.deg - 2):
            cur = [QQ(0)] + cur
            if len(cur) > self.deg:
                top = cur[self.deg]
                cur = [cur[i] + top * red[0][i] for i in range(self.deg)]
            red.append(list(cur))
        self._red = red

    def __call__(self, v):
        if isinstance(v, NFElem):
            if v.field is not self:
                raise InvalidInput("element of a different field")
            return v
        if isinstance(v, (int, Fraction)):
            co = [QQ(v)] + [QQ(0)] * (self.deg - 1)
            return NFElem(self, co)
        co = [QQ(c) for c in v]
        return NFElem(self, self._reduce_full(co))

    def _reduce_full(self, co):
        co = list(co)
        while len(co) > self.deg:
            top = co.pop()
            if top:
                off = len(co) - self.deg
                for i in range(self.deg):
                    co[off + i] += top * self._red[0][i]
        co += [QQ(0)] * (self.deg - len(co))
        return co

    def gen(self):
        co = [QQ(0)] * self.deg
        if self.deg == 1:
            return self(-self.mod[0])
        co[1] = QQ(1)
        return NFElem(self, co)

    def __repr__(self):
        return "NumberField(%s, %s)" % (self.mod, self.name)


class NFElem:
    __slots__ = ("field", "co")

    def __init__(self, field, co):
        self.field = field
        self.co = [QQ(c) for c in co]

    def _coerce(self, o):
        if isinstance(o, NFElem):
            if o.field is not self.field:
                raise InvalidInput("mixed number fields")
            return o
        if isinstance(o, (int, Fraction)):
            return self.field(o)
        return None

    def __add__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return NFElem(self.field, [a + b for a, b in zip(self.co, o.co)])

    __radd__ = __add__

    def __sub__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return NFElem(self.field, [a - b for a, b in zip(self.co, o.co)])

    def __rsub__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return NFElem(self.field, [b - a for a, b in zip(self.co, o.co)])

    def __mul__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        n = self.field.deg
        prod = [QQ(0)] * (2 * n - 1)
        for i, a in enumerate(self.co):
            if a:
                for j, b in enumerate(o.co):
                    if b:
                        prod[i + j] += a * b
        return NFElem(self.field, self.field._reduce_full(prod))

    __rmul__ = __mul__

    def inverse(self):
        # extended Euclid in Q[z] against the modulus
        if not self:
            raise ZeroDivisionError("inverse of zero in number field")
        a = list(self.field.mod)
        b = list(self.co)
        while b and b[-1] == 0:
            b.pop()
        s0, s1 = [], [QQ(1)]  # coefficients multiplying self
        while True:
            while b and b[-1] == 0:
                b.pop()
            if len(b) == 1:
                inv = 1 / b[0]
                co = [c * inv for c in s1]
                return NFElem(self.field, self.field._reduce_full(co))
            if not b:
                raise ZeroDivisionError("element not invertible (modulus not irreducible?)")
            # a = q*b + r
            q = [QQ(0)] * (len(a) - len(b) + 1)
            r = list(a)
            for k in range(len(a) - len(b), -1, -1):
                if len(r) >= len(b) + k and r[len(b) - 1 + k] != 0:
                    f = r[len(b) - 1 + k] / b[-1]
                    q[k] = f
                    for i in range(len(b)):
                        r[i + k] -= f * b[i]
            while r and r[-1] == 0:
                r.pop()
            # s_new = s0 - q*s1
            qs1 = [QQ(0)] * (len(q) + len(s1) - 1 if s1 else 0)
            for i, qc in enumerate(q):
                if qc:
                    for j, sc in enumerate(s1):
                        qs1[i + j] += qc * sc
            s_new = [QQ(0)] * max(len(s0), len(qs1))
            for i, c in enumerate(s0):
                s_new[i] += c
            for i, c in enumerate(qs1):
                s_new[i] -= c
            a, b = b, r
            s0, s1 = s1, s_new

    def __truediv__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.field(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __neg__(self):
        return NFElem(self.field, [-c for c in self.co])

    def __eq__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return self.co == o.co

    def __ne__(self, o):
        r = self.__eq__(o)
        return NotImplemented if r is NotImplemented else not r

    def __bool__(self):
        return any(self.co)

    def __hash__(self):
        return hash((id(self.field), tuple(self.co)))

    def __repr__(self):
        name = self.field.name
        parts = []
        for i, c in enumerate(self.co):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append("%s*%s" % (c, name))
            else:
                parts.append("%s*%s^%d" % (c, name, i))
        return " + ".join(parts) if parts else "0"


def cyclotomic_field(n):
    """Q(zeta_n) for n in {3, 4, 5} (all this package needs)."""
    mods = {3: [1, 1, 1], 4: [1, 0, 1], 5: [1, 1, 1, 1, 1]}
    if n not in mods:
        raise InvalidInput("unsupported cyclotomic order %s" % n)
    return NumberField(mods[n], "z%d" % n)


# ---------------------------------------------------------------------------
# univariate polynomials


def _strip(c):
    while c and not _nz(c[-1]):
        c.pop()
    return c


def _nz(x):
    # "is nonzero" that works for ints, Fractions and field elements
    return not (x == 0)


def _div(a, b):
    # exact division; never lets int/int fall through to float
    if isinstance(a, int) and isinstance(b, int):
        return QQ(a, b)
    return a / b


class Poly:
    """Dense univariate polynomial, ascending coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        self.c = _strip(list(coeffs))

    @staticmethod
    def const(v):
        return Poly([v])

    @staticmethod
    def x(k=1, coef=1):
        return Poly([0] * k + [coef])

    @property
    def degree(self):
        return len(self.c) - 1

    def is_zero(self):
        return not self.c

    def lc(self):
        if not self.c:
            raise InvalidInput("zero polynomial has no leading coefficient")
        return self.c[-1]

    def __getitem__(self, i):
        return self.c[i] if 0 <= i < len(self.c) else 0

    def __add__(self, o):
        o = o if isinstance(o, Poly) else Poly.const(o)
        n = max(len(self.c), len(o.c))
        return Poly([self[i] + o[i] for i in range(n)])

    __radd__ = __add__

    def __sub__(self, o):
        o = o if isinstance(o, Poly) else Poly.const(o)
        n = max(len(self.c), len(o.c))
        return Poly([self[i] - o[i] for i in range(n)])

    def __rsub__(self, o):
        return Poly.const(o) - self

    def __neg__(self):
        return Poly([-a for a in self.c])

    def __mul__(self, o):
        if not isinstance(o, Poly):
            return Poly([a * o for a in self.c])
        if not self.c or not o.c:
            return Poly()
        out = [0] * (len(self.c) + len(o.c) - 1)
        for i, a in enumerate(self.c):
            if _nz(a):
                for j, b in enumerate(o.c):
                    out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e):
        out = Poly([1])
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, o):
        o = o if isinstance(o, Poly) else Poly.const(o)
        return len(self.c) == len(o.c) and all(a == b for a, b in zip(self.c, o.c))

    def __ne__(self, o):
        return not self.__eq__(o)

    def __hash__(self):
        return hash(tuple(str(a) for a in self.c))

    def __call__(self, x):
        out = 0
        for a in reversed(self.c):
            out = out * x + a
        return out

    def compose(self, o):
        out = Poly()
        for a in reversed(self.c):
            out = out * o + Poly.const(a)
        return out

    def divmod(self, o):
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        q = [0] * max(0, len(r) - len(o.c) + 1)
        dl = o.lc()
        for k in range(len(r) - len(o.c), -1, -1):
            top = r[len(o.c) - 1 + k]
            if not _nz(top):
                continue
            f = _div(top, dl)
            q[k] = f
            for i, b in enumerate(o.c):
                r[i + k] = r[i + k] - f * b
        return Poly(q), Poly(r)

    def __floordiv__(self, o):
        return self.divmod(o)[0]

    def __mod__(self, o):
        return self.divmod(o)[1]

    def exact_div(self, o):
        q, r = self.divmod(o)
        if not r.is_zero():
            raise InvalidInput("division is not exact")
        return q

    def derivative(self):
        return Poly([self.c[i] * i for i in range(1, len(self.c))])

    def monic(self):
        if self.is_zero():
            return self
        l = self.lc()
        return Poly([_div(a, l) for a in self.c])

    def gcd(self, o):
        a, b = self, o
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def resultant(self, o):
        """Sylvester determinant; the field of the coefficients must allow division."""
        if self.is_zero() and o.is_zero():
            raise InvalidInput("resultant of two zero polynomials")
        if self.is_zero() or o.is_zero():
            return 0
        m, n = self.degree, o.degree
        if m == 0:
            return self.c[0] ** n
        if n == 0:
            return o.c[0] ** m
        size = m + n
        rows = []
        rc = list(reversed(self.c))
        for k in range(n):
            rows.append([0] * k + rc + [0] * (size - m - 1 - k))
        oc = list(reversed(o.c))
        for k in range(m):
            rows.append([0] * k + oc + [0] * (size - n - 1 - k))
        return mat_det(rows)

    def content_free(self):
        """For Fraction coefficients: (primitive integer Poly, content)."""
        if self.is_zero():
            return self, QQ(0)
        den = 1
        for a in self.c:
            den = den * QQ(a).denominator // math.gcd(den, QQ(a).denominator)
        ints = [QQ(a) * den for a in self.c]
        g = 0
        for a in ints:
            g = math.gcd(g, int(a))
        if int(ints[-1]) < 0:
            g = -g
        return Poly([int(a) // g for a in ints]), QQ(g, den)

    def rational_roots(self):
        """All rational roots with multiplicity, by divisor scan."""
        if self.is_zero():
            raise InvalidInput("zero polynomial")
        f = self
        out = []
        # x = 0 roots
        k = 0
        while k < len(f.c) and not _nz(f.c[k]):
            k += 1
        if k:
            out.append((QQ(0), k))
            f = Poly(f.c[k:])
        if f.degree == 0:
            return out
        prim, _ = f.content_free()
        a0, an = int(prim.c[0]), int(prim.c[-1])
        if max(abs(a0), abs(an)) > 10 ** 9:
            # the divisor scan factors a0 and an; too expensive here
            fast = _modular_rational_roots(f, prim)
            if fast is not None:
                out.extend(fast)
                return out
        for p in divisors(a0):
            for q in divisors(an):
                if math.gcd(p, q) != 1:
                    continue
                for r in (QQ(p, q), QQ(-p, q)):
                    if f(r) == 0:
                        mult = 0
                        lin = Poly([-r, 1])
                        while True:
                            qq, rr = f.divmod(lin)
                            if rr.is_zero():
                                f = qq
                                mult += 1
                            else:
                                break
                        out.append((r, mult))
        return out

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        parts = []
        for i, a in enumerate(self.c):
            if _nz(a):
                parts.append("%s*x^%d" % (a, i))
        return "Poly(" + " + ".join(parts) + ")"


def _modular_rational_roots(f, prim):
    """Rational roots of f (nonzero constant term) through one big prime.

    Every rational root reduces to a root of the square-free part of
    prim modulo a prime not dividing its leading coefficient, so the
    modular roots are Newton-lifted and reconstructed as fractions, and
    each candidate is verified exactly: the prime choice affects speed,
    never the answer.  Roots come back sorted by value.  Returns None
    after six bad reductions in a row (caller falls back to the scan).
    """
    sq = prim.exact_div(prim.gcd(prim.derivative()))
    sq, _ = sq.content_free()
    g = [int(c) for c in sq.c]
    gq = Poly(g)
    dg = [i * g[i] for i in range(1, len(g))]

    def ev(co, x, m):
        acc = 0
        for c in reversed(co):
            acc = (acc * x + c) % m
        return acc

    p = (1 << 61) - 1
    for _attempt in range(6):
        if g[-1] % p:
            cands, clean = [], True
            for r, _m in fp_roots([c % p for c in g], p):
                if ev(dg, r, p) == 0:
                    clean = False  # repeated root mod p: bad reduction
                    break
                x, M = r, p
                for _lift in range(6):
                    cand = rational_reconstruction(x, M)
                    if cand is not None and gq(cand) == 0:
                        cands.append(cand)
                        break
                    M2 = M * M
                    fx = ev(g, x, M2)
                    dx = ev(dg, x, M2)
                    x = (x - fx * pow(dx, -1, M2)) % M2
                    M = M2
            if clean:
                out = []
                rem = f
                for r in sorted(set(cands)):
                    mult = 0
                    lin = Poly([-r, 1])
                    while True:
                        qq, rr = rem.divmod(lin)
                        if rr.is_zero():
                            rem = qq
                            mult += 1
                        else:
                            break
                    if mult:
                        out.append((r, mult))
                return out
        p -= 2
        while not is_prime(p):
            p -= 2
    return None


def poly_from_roots(roots, lc=1):
    out = Poly([lc])
    for r in roots:
        out = out * Poly([-r, 1])
    return out


def resultant(p, q):
    """Module-level resultant of two univariate polynomials."""
    p = p if isinstance(p, Poly) else Poly(p)
    q = q if isinstance(q, Poly) else Poly(q)
    return p.resultant(q)


# ---------------------------------------------------------------------------
# binary forms


class BinaryForm:
    """c0*U^d + c1*U^(d-1)*V + ... + cd*V^d with formal degree d."""

    __slots__ = ("d", "c")

    def __init__(self, d, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) != d + 1:
            raise InvalidInput("degree-%d form needs %d coefficients" % (d, d + 1))
        self.d = d
        self.c = coeffs

    @staticmethod
    def from_poly(f, d=None):
        """Homogenize an ascending-coefficient Poly to formal degree d."""
        if d is None:
            d = f.degree
        if f.degree > d:
            raise InvalidInput("polynomial degree exceeds requested form degree")
        c = [0] * (d + 1)
        for i, a in enumerate(f.c):
            c[d - i] = a  # x^i -> U^i V^(d-i): coefficient index d-i
        return BinaryForm(d, c)

    def to_poly(self):
        """Dehomogenize at V=1: polynomial in U, ascending."""
        return Poly(list(reversed(self.c)))

    def is_zero(self):
        return all(not _nz(a) for a in self.c)

    def inf_mult(self):
        """Multiplicity of the root (1:0)."""
        k = 0
        while k <= self.d and not _nz(self.c[k]):
            k += 1
        return k if k <= self.d else self.d  # zero form: convention d

    def evaluate(self, u, v):
        out = 0
        for i, a in enumerate(self.c):
            out = out + a * u ** (self.d - i) * v**i
        return out

    def deriv_u(self):
        if self.d == 0:
            return BinaryForm(0, [0])
        return BinaryForm(self.d - 1, [self.c[i] * (self.d - i) for i in range(self.d)])

    def deriv_v(self):
        if self.d == 0:
            return BinaryForm(0, [0])
        return BinaryForm(self.d - 1, [self.c[i + 1] * (i + 1) for i in range(self.d)])

    def __mul__(self, o):
        if not isinstance(o, BinaryForm):
            return BinaryForm(self.d, [a * o for a in self.c])
        out = [0] * (self.d + o.d + 1)
        for i, a in enumerate(self.c):
            if _nz(a):
                for j, b in enumerate(o.c):
                    out[i + j] = out[i + j] + a * b
        return BinaryForm(self.d + o.d, out)

    __rmul__ = __mul__

    def __add__(self, o):
        if self.d != o.d:
            raise InvalidInput("cannot add forms of different degrees")
        return BinaryForm(self.d, [a + b for a, b in zip(self.c, o.c)])

    def __sub__(self, o):
        if self.d != o.d:
            raise InvalidInput("cannot subtract forms of different degrees")
        return BinaryForm(self.d, [a - b for a, b in zip(self.c, o.c)])

    def __neg__(self):
        return BinaryForm(self.d, [-a for a in self.c])

    def __eq__(self, o):
        return isinstance(o, BinaryForm) and self.d == o.d and all(a == b for a, b in zip(self.c, o.c))

    def __ne__(self, o):
        return not self.__eq__(o)

    def __hash__(self):
        return hash((self.d, tuple(str(a) for a in self.c)))

    def proportional(self, o):
        """True iff self = t * o for a nonzero scalar t (same degree)."""
        if not isinstance(o, BinaryForm) or self.d != o.d:
            return False
        if self.is_zero() or o.is_zero():
            return self.is_zero() and o.is_zero()
        i0 = next(i for i, a in enumerate(self.c) if _nz(a))
        if not _nz(o.c[i0]):
            return False
        t = self.c[i0] / o.c[i0]
        return all(a == t * b for a, b in zip(self.c, o.c))

    def resultant(self, o):
        """Form-level Sylvester resultant (formal degrees, so (1:0) roots count)."""
        m, n = self.d, o.d
        if m == 0 and n == 0:
            raise InvalidInput("resultant needs positive total degree")
        size = m + n
        rows = []
        for k in range(n):
            rows.append([0] * k + list(self.c) + [0] * (size - m - 1 - k))
        for k in range(m):
            rows.append([0] * k + list(o.c) + [0] * (size - n - 1 - k))
        if not rows:
            return 1
        return mat_det(rows)

    def disc(self):
        """Discriminant up to a fixed convention: res(F_U, F_V)."""
        if self.d < 1:
            raise InvalidInput("discriminant needs degree >= 1")
        if self.d == 1:
            return 1
        return self.deriv_u().resultant(self.deriv_v())

    def gcd(self, o):
        """Form gcd: affine gcd plus shared multiplicity at (1:0)."""
        if self.is_zero():
            return o
        if o.is_zero():
            return self
        k = min(self.inf_mult(), o.inf_mult())
        g = self.to_poly().gcd(o.to_poly())
        return BinaryForm.from_poly(g, g.degree + k)

    def is_squarefree(self):
        """No repeated root on P^1: gcd(F, F_U, F_V) is constant."""
        if self.is_zero():
            return False
        if self.d == 0:
            return True
        fn = [a for a in self.c if isinstance(a, RatFunc)]
        if fn:
            # The degree-d discriminant is a polynomial in the coefficients,
            # so a square-free rational specialization certifies
            # square-freeness over the function field without running a
            # Euclidean chain on large fractions.  Only the (rare)
            # non-square-free case falls through to the exact gcd.
            seeds = (2, 3, 5, 7, 11, 17, 23, 31)
            nv = fn[0].field.n
            for k in range(6):
                pt = tuple(QQ(seeds[(k + j) % len(seeds)]) for j in range(nv))
                try:
                    spec = BinaryForm(self.d, [
                        a.evaluate(pt) if isinstance(a, RatFunc) else QQ(a)
                        for a in self.c])
                except ZeroDivisionError:
                    continue
                if spec.is_squarefree():
                    return True
        g = self.gcd(self.deriv_u()).gcd(self.deriv_v())
        return g.d == 0

    def squarefree_part(self):
        """Product of the distinct roots, affine part monic."""
        if self.is_zero():
            raise InvalidInput("squarefree_part of 0")
        k = self.inf_mult()
        aff = self.to_poly()
        if aff.degree <= 0:
            return BinaryForm(1, [0, 1])  # pure power of V: only root (1:0)
        g = aff.gcd(aff.derivative())
        rad = aff.exact_div(g) if g.degree > 0 else aff
        rad = rad.monic()
        return BinaryForm.from_poly(rad, rad.degree + (1 if k else 0))

    def transport(self, m):
        """Push roots forward through the Moebius map m = [[a,b],[c,d]].

        Returns F o m^{-1} computed with the adjugate (no determinant
        division): roots r of F map to (a r + b)/(c r + d).
        """
        (a, b), (c, d) = m
        if a * d - b * c == 0:
            raise InvalidInput("singular Moebius matrix")
        U = BinaryForm(1, [d, -b])
        V = BinaryForm(1, [-c, a])
        return self.compose_pair(U, V)

    def compose_pair(self, M0, M1):
        """Substitute (U,V) = (M0(s,t), M1(s,t)); result degree d*deg(M0)."""
        if M0.d != M1.d:
            raise InvalidInput("substitution pair must have equal degrees")
        k = M0.d
        out = BinaryForm(self.d * k, [0] * (self.d * k + 1))
        # Horner in U/V is awkward for forms; power table instead
        p0 = [BinaryForm(0, [1])]
        p1 = [BinaryForm(0, [1])]
        for _ in range(self.d):
            p0.append(p0[-1] * M0)
            p1.append(p1[-1] * M1)
        for i, a in enumerate(self.c):
            if _nz(a):
                term = p0[self.d - i] * p1[i] * a
                pad = out.d - term.d
                if pad:
                    raise InvalidInput("internal degree mismatch")
                out = out + term
        return out

    def rational_roots(self):
        """[( (alpha, beta), multiplicity )] over the coefficient field Q."""
        out = []
        k = self.inf_mult()
        if k:
            out.append(((1, 0), k))
        aff = self.to_poly()
        if not aff.is_zero() and aff.degree > 0:
            for r, m in aff.rational_roots():
                out.append(((r.numerator, r.denominator), m))
        return out

    @staticmethod
    def from_proj_roots(roots, d=None, lc=1):
        """Form with the given projective roots (alpha:beta)."""
        out = BinaryForm(0, [lc])
        for (al, be) in roots:
            out = out * BinaryForm(1, [be, -al])
        if d is not None and out.d != d:
            raise InvalidInput("root count does not match requested degree")
        return out

    def map_coefficients(self, fn):
        return BinaryForm(self.d, [fn(a) for a in self.c])

    def __repr__(self):
        parts = []
        for i, a in enumerate(self.c):
            if _nz(a):
                parts.append("%s*U^%d*V^%d" % (a, self.d - i, i))
        return "BinaryForm(" + (" + ".join(parts) if parts else "0") + ")"


def discriminant(f):
    return f.disc()


def squarefree_part(f):
    return f.squarefree_part()


# ---------------------------------------------------------------------------
# sparse multivariate polynomials


class MultiPoly:
    """Sparse multivariate polynomial: {exponent tuple: coefficient}."""

    __slots__ = ("n", "t")

    def __init__(self, n, terms=None):
        self.n = n
        self.t = {}
        if terms:
            for e, c in terms.items():
                if _nz(c):
                    self.t[tuple(e)] = c

    @staticmethod
    def zero(n):
        return MultiPoly(n)

    @staticmethod
    def const(n, v):
        return MultiPoly(n, {tuple([0] * n): v}) if _nz(v) else MultiPoly(n)

    @staticmethod
    def var(n, i, e=1, coef=1):
        ex = [0] * n
        ex[i] = e
        return MultiPoly(n, {tuple(ex): coef})

    def is_zero(self):
        return not self.t

    def degree(self):
        return max((sum(e) for e in self.t), default=-1)

    def __add__(self, o):
        if not isinstance(o, MultiPoly):
            o = MultiPoly.const(self.n, o)
        out = dict(self.t)
        for e, c in o.t.items():
            s = out.get(e, 0) + c
            if _nz(s):
                out[e] = s
            elif e in out:
                del out[e]
        r = MultiPoly(self.n)
        r.t = out
        return r

    __radd__ = __add__

    def __neg__(self):
        r = MultiPoly(self.n)
        r.t = {e: -c for e, c in self.t.items()}
        return r

    def __sub__(self, o):
        return self + (-o if isinstance(o, MultiPoly) else MultiPoly.const(self.n, -o))

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if not isinstance(o, MultiPoly):
            if not _nz(o):
                return MultiPoly(self.n)
            r = MultiPoly(self.n)
            r.t = {e: c * o for e, c in self.t.items()}
            return r
        out = {}
        for e1, c1 in self.t.items():
            for e2, c2 in o.t.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if _nz(s):
                    out[e] = s
                elif e in out:
                    del out[e]
        r = MultiPoly(self.n)
        r.t = out
        return r

    __rmul__ = __mul__

    def __pow__(self, k):
        out = MultiPoly.const(self.n, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, o):
        if not isinstance(o, MultiPoly):
            o = MultiPoly.const(self.n, o)
        return (self - o).is_zero()

    def __ne__(self, o):
        return not self.__eq__(o)

    def __hash__(self):
        return hash(frozenset((e, str(c)) for e, c in self.t.items()))

    def evaluate(self, pt):
        out = 0
        for e, c in self.t.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v = v * x**k
            out = out + v
        return out

    def partial(self, i):
        out = {}
        for e, c in self.t.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        r = MultiPoly(self.n)
        r.t = out
        return r

    def gradient(self):
        return [self.partial(i) for i in range(self.n)]

    def subst_linear(self, basis):
        """F(sum_j t_j * basis[j]) as a MultiPoly in len(basis) variables."""
        m = len(basis)
        lin = []
        for i in range(self.n):
            terms = {}
            for j in range(m):
                if _nz(basis[j][i]):
                    ex = [0] * m
                    ex[j] = 1
                    terms[tuple(ex)] = basis[j][i]
            lin.append(MultiPoly(m, terms))
        cache = {}

        def power(i, k):
            if (i, k) not in cache:
                cache[(i, k)] = lin[i] ** k
            return cache[(i, k)]

        out = MultiPoly(m)
        for e, c in self.t.items():
            term = MultiPoly.const(m, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def collect(self, i):
        """dict: power of variable i -> MultiPoly (same n vars, var i absent)."""
        out = {}
        for e, c in self.t.items():
            k = e[i]
            ne = list(e)
            ne[i] = 0
            d = out.setdefault(k, {})
            d[tuple(ne)] = d.get(tuple(ne), 0) + c
        res = {}
        for k, d in out.items():
            mp = MultiPoly(self.n)
            mp.t = {e: c for e, c in d.items() if _nz(c)}
            if mp.t:
                res[k] = mp
        return res

    def drop_var(self, i):
        """Remove variable i (which must not occur)."""
        out = {}
        for e, c in self.t.items():
            if e[i]:
                raise InvalidInput("variable %d occurs; cannot drop" % i)
            out[tuple(e[:i] + e[i + 1 :])] = c
        r = MultiPoly(self.n - 1)
        r.t = out
        return r

    def insert_vars(self, n_new, positions=None):
        """Reinterpret in a larger variable list (old vars keep order)."""
        if positions is None:
            positions = list(range(self.n))
        out = {}
        for e, c in self.t.items():
            ne = [0] * n_new
            for i, k in enumerate(e):
                ne[positions[i]] = k
            out[tuple(ne)] = c
        r = MultiPoly(n_new)
        r.t = out
        return r

    def proportional(self, o):
        if self.is_zero() or o.is_zero():
            return self.is_zero() and o.is_zero()
        e0 = min(self.t)
        if e0 not in o.t:
            return False
        t = self.t[e0] / o.t[e0]
        return all(o.t.get(e) is not None and c == t * o.t[e] for e, c in self.t.items()) and all(
            e in self.t for e in o.t
        )

    def map_coefficients(self, fn):
        r = MultiPoly(self.n)
        for e, c in self.t.items():
            v = fn(c)
            if _nz(v):
                r.t[e] = v
        return r

    def to_binary_form(self, d=None):
        """For n == 2: the corresponding BinaryForm."""
        if self.n != 2:
            raise InvalidInput("to_binary_form needs exactly 2 variables")
        if d is None:
            d = self.degree()
        c = [0] * (d + 1)
        for (i, j), co in self.t.items():
            if i + j != d:
                raise InvalidInput("not homogeneous of degree %d" % d)
            c[j] = co
        return BinaryForm(d, c)

    def __repr__(self):
        if not self.t:
            return "MultiPoly(0)"
        parts = []
        for e in sorted(self.t, reverse=True):
            parts.append("%s*x^%s" % (self.t[e], list(e)))
        return "MultiPoly(" + " + ".join(parts) + ")"


def mp_compose(T, comps):
    """Substitute comps[i] (MultiPoly, common variable count) for variable i of T."""
    if len(comps) != T.n:
        raise InvalidInput("need one replacement polynomial per variable")
    n_out = comps[0].n
    if any(c.n != n_out for c in comps):
        raise InvalidInput("replacement polynomials use mismatched variable counts")
    # power tables so repeated exponents cost one multiplication each
    pows = [{0: MultiPoly.const(n_out, 1)} for _ in comps]
    def _pow(i, e):
        tab = pows[i]
        while e not in tab:
            k = max(tab)
            tab[k + 1] = tab[k] * comps[i]
        return tab[e]
    out = MultiPoly(n_out)
    for e, c in T.t.items():
        term = MultiPoly.const(n_out, c)
        for i, ei in enumerate(e):
            if ei:
                term = term * _pow(i, ei)
        out = out + term
    return out


# ---------------------------------------------------------------------------
# matrices over a field (lists of lists)


def mat_det(rows):
    """Gaussian elimination with exact division; rows is modified-safe."""
    n = len(rows)
    m = [list(r) for r in rows]
    det = 1
    for col in range(n):
        piv = None
        for r in range(col, n):
            if _nz(m[r][col]):
                piv = r
                break
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det = det * m[col][col]
        inv = m[col][col]
        for r in range(col + 1, n):
            if _nz(m[r][col]):
                f = _div(m[r][col], inv)
                m[r][col] = 0
                for c in range(col + 1, n):
                    if _nz(m[col][c]):
                        m[r][c] = m[r][c] - f * m[col][c]
    return det


def mat_rref(rows):
    """(rref matrix, pivot column list); deterministic pivot order."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if _nz(m[i][col]):
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][col]
        m[r] = [_div(a, inv) for a in m[r]]
        for i in range(len(m)):
            if i != r and _nz(m[i][col]):
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m, pivots


def mat_kernel(rows):
    """Basis of the right kernel, deterministic (free vars in column order)."""
    if not rows:
        raise InvalidInput("kernel of an empty matrix is ambiguous; pass ncols via a zero row")
    ncols = len(rows[0])
    rref, pivots = mat_rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = -rref[r][fc]
        basis.append(v)
    return basis


def mat_rank(rows):
    return len(mat_rref(rows)[1])


def mat_mul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


def mat_vec(A, v):
    return [sum(A[i][k] * v[k] for k in range(len(v))) for i in range(len(A))]


def mat_solve(A, b):
    """One solution of A x = b, or None if inconsistent."""
    aug = [list(r) + [bv] for r, bv in zip(A, b)]
    rref, pivots = mat_rref(aug)
    ncols = len(A[0])
    if ncols in pivots:
        return None  # pivot in the augmented column
    x = [0] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = rref[r][-1]
    return x


def mat_inverse(A):
    n = len(A)
    aug = [list(A[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    rref, pivots = mat_rref(aug)
    if pivots != list(range(n)):
        raise InvalidInput("matrix not invertible")
    return [row[n:] for row in rref]


# ---------------------------------------------------------------------------
# F_p univariate helpers (plain int coefficient lists, ascending)


def fp_normalize(f, p):
    f = [c % p for c in f]
    while f and f[-1] == 0:
        f.pop()
    return f


def fp_mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return fp_normalize(out, p)


def fp_divmod(f, g, p):
    if not g:
        raise ZeroDivisionError
    f = list(f)
    q = [0] * max(0, len(f) - len(g) + 1)
    inv = pow(g[-1], -1, p)
    for k in range(len(f) - len(g), -1, -1):
        top = f[len(g) - 1 + k] % p
        if top:
            c = top * inv % p
            q[k] = c
            for i, b in enumerate(g):
                f[i + k] = (f[i + k] - c * b) % p
    return fp_normalize(q, p), fp_normalize(f, p)


def fp_gcd(f, g, p):
    f, g = fp_normalize(f, p), fp_normalize(g, p)
    while g:
        f, g = g, fp_divmod(f, g, p)[1]
    if f:
        inv = pow(f[-1], -1, p)
        f = [c * inv % p for c in f]
    return f


def fp_powmod(base, e, mod, p):
    """base^e mod (mod) in F_p[x]."""
    result = [1]
    base = fp_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = fp_divmod(fp_mul(result, base, p), mod, p)[1]
        base = fp_divmod(fp_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


_FP_SCAN_BOUND = 4096


def fp_roots(f, p):
    """All roots of f in F_p with multiplicities: list of (root, mult).

    Equal-degree splitting above the scan bound, exhaustive scan below it.
    Deterministic: the splitting randomness is a fixed LCG seeded from the
    coefficients.
    """
    f = fp_normalize(f, p)
    if not f:
        raise InvalidInput("zero polynomial has every root")
    if len(f) == 1:
        return []
    roots = []
    # x = 0
    k = 0
    while k < len(f) and f[k] == 0:
        k += 1
    if k:
        roots.append((0, k))
        f = f[k:]
    if p < _FP_SCAN_BOUND:
        for r in range(1, p):
            if len(f) == 1:
                break
            # evaluate
            acc = 0
            for c in reversed(f):
                acc = (acc * r + c) % p
            if acc == 0:
                mult = 0
                while True:
                    q, rem = fp_divmod(f, [-r % p, 1], p)
                    if rem:
                        break
                    f = q
                    mult += 1
                roots.append((r, mult))
        return sorted(roots)
    # split off the distinct-root part that lives in F_p
    xp = fp_powmod([0, 1], p, f, p)
    diff = list(xp) + [0] * max(0, 2 - len(xp))
    diff[1] = (diff[1] - 1) % p
    g = fp_gcd(f, fp_normalize(diff, p), p)
    if not g or len(g) == 1:
        return sorted(roots)
    seed = 0
    for c in f:
        seed = (seed * 1103515245 + c + 12345) % (1 << 61)

    def next_rand():
        nonlocal seed
        seed = (seed * 6364136223846793005 + 1442695040888963407) % (1 << 63)
        return seed % p

    stack = [g]
    linear = []
    while stack:
        h = stack.pop()
        if len(h) == 2:
            linear.append((-h[0] * pow(h[1], -1, p)) % p)
            continue
        # h splits into distinct linear factors; Cantor-Zassenhaus
        while True:
            r = next_rand()
            probe = fp_powmod([r, 1], (p - 1) // 2, h, p)
            probe = fp_normalize([(probe[0] - 1) % p] + probe[1:], p) if probe else [p - 1]
            d = fp_gcd(h, probe, p)
            if d and 0 < len(d) - 1 < len(h) - 1:
                stack.append(d)
                stack.append(fp_divmod(h, d, p)[0])
                break
    for r in linear:
        mult = 0
        while True:
            q, rem = fp_divmod(f, [-r % p, 1], p)
            if rem:
                break
            f = q
            mult += 1
        roots.append((r, mult))
    return sorted(roots)


# ---------------------------------------------------------------------------
# rational function fields (lazy fractions of MultiPoly over Q)


class RatFuncField:
    """Fraction field of Q[names]; equality by cross-multiplication."""

    def __init__(self, names):
        self.names = tuple(names)
        self.n = len(self.names)

    def __call__(self, v, den=None):
        if isinstance(v, RatFunc):
            if v.field is not self:
                raise InvalidInput("mixed rational function fields")
            return v
        if den is not None:
            num = v if isinstance(v, MultiPoly) else MultiPoly.const(self.n, QQ(v))
            d = den if isinstance(den, MultiPoly) else MultiPoly.const(self.n, QQ(den))
            return RatFunc(self, num, d)
        if isinstance(v, MultiPoly):
            return RatFunc(self, v, MultiPoly.const(self.n, QQ(1)))
        return RatFunc(self, MultiPoly.const(self.n, QQ(v)), MultiPoly.const(self.n, QQ(1)))

    def var(self, i):
        return RatFunc(self, MultiPoly.var(self.n, i, coef=QQ(1)), MultiPoly.const(self.n, QQ(1)))

    def __repr__(self):
        return "RatFuncField%s" % (self.names,)


def _mp_content_normalize(num, den):
    """Divide num and den by shared integer content and monomial factor."""
    if num.is_zero():
        return num, MultiPoly.const(den.n, QQ(1))
    # shared monomial
    def min_exps(mp):
        its = iter(mp.t)
        first = list(next(its))
        for e in its:
            for i, k in enumerate(e):
                if k < first[i]:
                    first[i] = k
        return first

    mn, md = min_exps(num), min_exps(den)
    shift = tuple(min(a, b) for a, b in zip(mn, md))
    if any(shift):
        def shift_down(mp):
            r = MultiPoly(mp.n)
            r.t = {tuple(a - s for a, s in zip(e, shift)): c for e, c in mp.t.items()}
            return r

        num, den = shift_down(num), shift_down(den)

    def content(mp):
        c = QQ(0)
        for v in mp.t.values():
            v = QQ(v)
            c = QQ(math.gcd(c.numerator, v.numerator), math.lcm(c.denominator, v.denominator)) if c else abs(v)
        return c if c else QQ(1)

    cn, cd = content(num), content(den)
    g = cn / cd
    # normalize sign by den's lexicographically largest term
    lead = den.t[max(den.t)]
    s = -1 if lead < 0 else 1
    num = num.map_coefficients(lambda a: a / (cn * s))
    den = den.map_coefficients(lambda a: a / (cd * s))
    return num.map_coefficients(lambda a: a * g), den


class RatFunc:
    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in rational function")
        num, den = _mp_content_normalize(num, den)
        self.field = field
        self.num = num
        self.den = den

    def _coerce(self, o):
        if isinstance(o, RatFunc):
            if o.field is not self.field:
                raise InvalidInput("mixed rational function fields")
            return o
        if isinstance(o, (int, Fraction)):
            return self.field(o)
        if isinstance(o, MultiPoly):
            return self.field(o)
        return None

    def __add__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return RatFunc(self.field, self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return RatFunc(self.field, self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return RatFunc(self.field, o.num * self.den - self.num * o.den, self.den * o.den)

    def __mul__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return RatFunc(self.field, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.field, self.num * o.den, self.den * o.num)

    def __rtruediv__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        if self.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.field, o.num * self.den, o.den * self.num)

    def __pow__(self, e):
        if e < 0:
            return (1 / self) ** (-e)
        out = self.field(1)
        b = self
        while e:
            if e & 1:
                out = out * b
            b = b * b
            e >>= 1
        return out

    def __neg__(self):
        return RatFunc(self.field, -self.num, self.den)

    def __eq__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return (self.num * o.den - o.num * self.den).is_zero()

    def __ne__(self, o):
        r = self.__eq__(o)
        return NotImplemented if r is NotImplemented else not r

    def __bool__(self):
        return not self.num.is_zero()

    __hash__ = None  # equality is by cross-multiplication, not canonical form

    def evaluate(self, pt):
        d = self.den.evaluate(pt)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at the point")
        return self.num.evaluate(pt) / d

    def __repr__(self):
        return "(%s)/(%s)" % (self.num, self.den)


# ---------------------------------------------------------------------------
# serialization helpers


def scalar_to_json(v):
    """'num/den' strings for rationals; {'residue':, 'p':} for F_p."""
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else "%d/%d" % (v.numerator, v.denominator)
    if hasattr(v, "modulus"):
        return {"residue": v.v, "p": v.modulus}
    if isinstance(v, NFElem):
        return {"coeffs": [scalar_to_json(c) for c in v.co], "modulus": [scalar_to_json(c) for c in v.field.mod]}
    raise InvalidInput("cannot serialize %r" % (v,))


def scalar_from_json(s):
    if isinstance(s, dict):
        if "residue" in s:
            return GF(s["p"])(s["residue"])
        raise InvalidInput("cannot parse scalar %r" % (s,))
    if isinstance(s, int):
        return QQ(s)
    if "/" in s:
        n, d = s.split("/")
        return QQ(int(n), int(d))
    return QQ(int(s))
