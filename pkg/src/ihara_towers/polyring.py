"""Exact big-integer polynomials and Laurent polynomials.

Everything in this module is exact: coefficients are Python ints (or
Fractions in a few internal routines), determinants use fraction-free
Bareiss elimination, and no floating point appears anywhere.

The dense representation keeps coeffs[i] as the coefficient of t**i.
That is a deliberate trade-off: the polynomials handled here have small
degree (a few hundred at most), and density keeps Bareiss elimination
and Sylvester resultants simple.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


class IntPoly:
    """Dense polynomial over the integers.

    The zero polynomial is the empty coefficient tuple and reports
    degree -1 (the distinguished sentinel); otherwise the leading
    coefficient is nonzero.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- basic queries ----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == (IntPoly((other,)).coeffs)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)!r})"

    # -- arithmetic --------------------------------------------------------

    def __neg__(self) -> "IntPoly":
        return IntPoly([-c for c in self.coeffs])

    def __add__(self, other) -> "IntPoly":
        if isinstance(other, int):
            other = IntPoly((other,))
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    __radd__ = __add__

    def __sub__(self, other) -> "IntPoly":
        if isinstance(other, int):
            other = IntPoly((other,))
        return self + (-other)

    def __rsub__(self, other) -> "IntPoly":
        return (-self) + other

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ci in enumerate(a):
            if ci:
                for j, cj in enumerate(b):
                    out[i + j] += ci * cj
        return IntPoly(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "IntPoly":
        """Multiply by t**k (k >= 0)."""
        if k < 0:
            raise ValueError("negative shift on IntPoly")
        if not self.coeffs:
            return self
        return IntPoly((0,) * k + self.coeffs)

    def __call__(self, x):
        """Horner evaluation; works for int, Fraction, float, complex."""
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPoly":
        return IntPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def content(self) -> int:
        """gcd of the coefficients, nonnegative; 0 for the zero polynomial."""
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive_part(self) -> "IntPoly":
        g = self.content()
        if g in (0, 1):
            return self
        return IntPoly([c // g for c in self.coeffs])


def poly_from_pairs(pairs) -> IntPoly:
    """Build an IntPoly from (exponent, coefficient) pairs."""
    if not pairs:
        return IntPoly()
    top = max(e for e, _ in pairs)
    out = [0] * (top + 1)
    for e, c in pairs:
        out[e] += c
    return IntPoly(out)


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------


class LaurentPoly:
    """Laurent polynomial t**low * body with body(0) != 0 unless zero.

    The zero Laurent polynomial is stored as low == 0 with a zero body.
    """

    __slots__ = ("low", "body")

    def __init__(self, low: int, body: IntPoly):
        if body.is_zero():
            self.low = 0
            self.body = body
            return
        k = 0
        while body.coeffs[k] == 0:
            k += 1
        if k:
            body = IntPoly(body.coeffs[k:])
        self.low = low + k
        self.body = body

    @classmethod
    def from_int_poly(cls, f: IntPoly) -> "LaurentPoly":
        return cls(0, f)

    @classmethod
    def from_dict(cls, terms: dict) -> "LaurentPoly":
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return cls(0, IntPoly())
        low = min(terms)
        top = max(terms)
        body = [0] * (top - low + 1)
        for e, c in terms.items():
            body[e - low] = c
        return cls(low, IntPoly(body))

    def is_zero(self) -> bool:
        return self.body.is_zero()

    @property
    def high(self) -> int:
        return self.low + self.body.degree

    def terms(self) -> dict:
        return {self.low + i: c for i, c in enumerate(self.body.coeffs) if c}

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.low == other.low and self.body == other.body

    def __hash__(self):
        return hash((self.low, self.body))

    def __repr__(self):
        return f"LaurentPoly({self.low}, {list(self.body.coeffs)!r})"

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.low, -self.body)

    def __add__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly(0, IntPoly((other,)))
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        low = min(self.low, other.low)
        a = self.body.shift(self.low - low)
        b = other.body.shift(other.low - low)
        return LaurentPoly(low, a + b)

    __radd__ = __add__

    def __sub__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly(0, IntPoly((other,)))
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly(self.low, self.body * other)
        return LaurentPoly(self.low + other.low, self.body * other.body)

    __rmul__ = __mul__

    def __call__(self, x):
        """Evaluate at a nonzero point."""
        val = self.body(x)
        if self.low >= 0:
            return val * x ** self.low
        return val / x ** (-self.low)

    def reciprocal_substitution(self) -> "LaurentPoly":
        """Return f(1/t) as a Laurent polynomial."""
        return LaurentPoly(-self.high, IntPoly(tuple(reversed(self.body.coeffs))))


def is_self_reciprocal(f) -> bool:
    """True iff f(1/t) == f(t).  Accepts LaurentPoly or IntPoly."""
    if isinstance(f, IntPoly):
        f = LaurentPoly.from_int_poly(f)
    if f.is_zero():
        return True
    return f.reciprocal_substitution() == f


# ---------------------------------------------------------------------------
# Division, orders of vanishing
# ---------------------------------------------------------------------------


def divmod_frac(f: IntPoly, g: IntPoly):
    """Long division over the rationals; returns (quotient, remainder) as coeff lists."""
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(c) for c in f.coeffs]
    q = [Fraction(0)] * max(0, len(r) - g.degree)
    glead = Fraction(g.lead)
    while len(r) - 1 >= g.degree and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < g.degree:
            break
        k = len(r) - 1 - g.degree
        c = r[-1] / glead
        q[k] = c
        for i, gc in enumerate(g.coeffs):
            r[k + i] -= c * gc
        r.pop()
    return q, r


def divide_exact(f: IntPoly, g: IntPoly) -> IntPoly:
    """Quotient f/g when g divides f over the integers; raises otherwise."""
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if f.is_zero():
        return IntPoly()
    q, r = divmod_frac(f, g)
    if any(r) or any(c.denominator != 1 for c in q):
        raise ValueError("inexact polynomial division")
    return IntPoly([int(c) for c in q])


def ord_at(f, point: int) -> int:
    """Multiplicity of the root at 0 or 1.

    Laurent input is handled through its body, so ord_at(f, 0) reports the
    multiplicity after the t-power normalization (0 for any nonzero input).
    """
    if isinstance(f, LaurentPoly):
        f = f.body
    if f.is_zero():
        raise ValueError("zero polynomial has no finite vanishing order")
    if point == 0:
        k = 0
        while f.coeffs[k] == 0:
            k += 1
        return k
    if point == 1:
        linear = IntPoly((-1, 1))
        m = 0
        while f(1) == 0:
            f = divide_exact(f, linear)
            m += 1
        return m
    raise ValueError("ord_at supports only the points 0 and 1")


def geometric_quotient(n: int) -> IntPoly:
    """1 + t + ... + t**(n-1), the quotient (t**n - 1)/(t - 1)."""
    if n < 1:
        raise ValueError("n must be positive")
    return IntPoly((1,) * n)


# ---------------------------------------------------------------------------
# gcd machinery (primitive pseudo-remainder sequence)
# ---------------------------------------------------------------------------


def pseudo_rem(f: IntPoly, g: IntPoly) -> IntPoly:
    """Pseudo-remainder of f by g: rem(lead(g)**(deg f - deg g + 1) * f, g)."""
    if g.is_zero():
        raise ZeroDivisionError("pseudo-division by zero")
    r = list(f.coeffs)
    d = g.degree
    gl = g.lead
    while len(r) - 1 >= d and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < d:
            break
        c = r[-1]
        k = len(r) - 1 - d
        r = [gl * x for x in r]
        for i, gc in enumerate(g.coeffs):
            r[k + i] -= c * gc
        r.pop()
    return IntPoly(r)


def poly_gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    """Primitive gcd with positive leading coefficient."""
    a, b = f.primitive_part(), g.primitive_part()
    if a.is_zero():
        a, b = b, a
    while not b.is_zero():
        a, b = b, pseudo_rem(a, b).primitive_part()
    if a.is_zero():
        return a
    return a if a.lead > 0 else -a


def squarefree_part(f: IntPoly) -> IntPoly:
    """f divided by gcd(f, f'), made primitive with positive lead."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    g = poly_gcd(f, f.derivative())
    if g.degree <= 0:
        h = f.primitive_part()
        return h if h.lead > 0 else -h
    # The quotient f/g may be rational before clearing denominators.
    q, r = divmod_frac(f, g)
    if any(r):
        raise AssertionError("gcd does not divide its polynomial")
    den = 1
    for c in q:
        den = den * c.denominator // gcd(den, c.denominator)
    h = IntPoly([int(c * den) for c in q]).primitive_part()
    return h if h.lead > 0 else -h


# ---------------------------------------------------------------------------
# Fraction-free determinants
# ---------------------------------------------------------------------------


def int_matrix_det(rows) -> int:
    """Bareiss determinant of a square integer matrix (list of lists)."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    if any(len(r) != n for r in m):
        raise ValueError("matrix is not square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = m[k][k]
        mk = m[k]
        for i in range(k + 1, n):
            mi = m[i]
            mik = mi[k]
            m[i] = mi[: k + 1] + [
                (mi[j] * pk - mik * mk[j]) // prev for j in range(k + 1, n)
            ]
        prev = pk
    return sign * m[-1][-1]


def _poly_matrix_det_bareiss(rows) -> IntPoly:
    """Bareiss over IntPoly entries; exact divisions are guaranteed over Z[t]."""
    n = len(rows)
    if n == 0:
        return IntPoly((1,))
    m = [list(r) for r in rows]
    sign = 1
    prev = IntPoly((1,))
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return IntPoly()
        pk = m[k][k]
        mk = m[k]
        for i in range(k + 1, n):
            mi = m[i]
            mik = mi[k]
            new_row = mi[: k + 1]
            for j in range(k + 1, n):
                new_row.append(divide_exact(mi[j] * pk - mik * mk[j], prev))
            m[i] = new_row
        prev = pk
    det = m[-1][-1]
    return det if sign == 1 else -det


def poly_matrix_det(rows) -> LaurentPoly:
    """Exact determinant of a square matrix of LaurentPoly entries.

    Each row is cleared to a common power of t first (which scales the
    determinant by a tracked monomial), then fraction-free elimination
    runs over plain integer polynomials.
    """
    n = len(rows)
    if n == 0:
        return LaurentPoly(0, IntPoly((1,)))
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not square")
    shift_total = 0
    cleared = []
    for row in rows:
        lows = [e.low for e in row if not e.is_zero()]
        m_i = min(lows) if lows else 0
        shift_total += m_i
        cleared.append([e.body.shift(e.low - m_i) if not e.is_zero() else IntPoly() for e in row])
    det = _poly_matrix_det_bareiss(cleared)
    return LaurentPoly(shift_total, det)


# ---------------------------------------------------------------------------
# Resultants
# ---------------------------------------------------------------------------


def sylvester_matrix(p: IntPoly, q: IntPoly):
    """Sylvester matrix of p and q (descending coefficients, p-rows first)."""
    m, n = p.degree, q.degree
    size = m + n
    rows = []
    pc = list(reversed(p.coeffs))
    qc = list(reversed(q.coeffs))
    for i in range(n):
        rows.append([0] * i + pc + [0] * (n - 1 - i))
    for i in range(m):
        rows.append([0] * i + qc + [0] * (m - 1 - i))
    return rows


def resultant(p: IntPoly, q: IntPoly) -> int:
    """Res(p, q) as the determinant of the Sylvester matrix.

    The sign convention is the classical one: Res(p, q) equals
    lead(p)**deg(q) times the product of q over the roots of p.
    """
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of the zero polynomial is undefined")
    m, n = p.degree, q.degree
    if m == 0:
        return p.coeffs[0] ** n
    if n == 0:
        return q.coeffs[0] ** m
    return int_matrix_det(sylvester_matrix(p, q))


# ---------------------------------------------------------------------------
# Cyclotomic polynomials (used to reject roots of unity exactly)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def cyclotomic_polynomial(k: int) -> IntPoly:
    """The k-th cyclotomic polynomial, by dividing t**k - 1 by the proper divisors."""
    if k < 1:
        raise ValueError("k must be positive")
    num = IntPoly((-1,) + (0,) * (k - 1) + (1,))
    for d in range(1, k):
        if k % d == 0:
            num = divide_exact(num, cyclotomic_polynomial(d))
    return num


def euler_phi(k: int) -> int:
    result = k
    d = 2
    while d * d <= k:
        if k % d == 0:
            while k % d == 0:
                k //= d
            result -= result // d
        d += 1
    if k > 1:
        result -= result // k
    return result


def vanishes_at_root_of_unity(f: IntPoly) -> bool:
    """True iff some root of f is a root of unity, decided exactly.

    A primitive k-th root can only be a root when phi(k) <= deg(f), and
    phi(k) >= sqrt(k/2) bounds the search range.
    """
    d = f.degree
    if d <= 0:
        return False
    for k in range(1, 2 * d * d + 2):
        if euler_phi(k) > d:
            continue
        _, rem = divmod_frac(f, cyclotomic_polynomial(k))
        if not any(rem):
            return True
    return False
