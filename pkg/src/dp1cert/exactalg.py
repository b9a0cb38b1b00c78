"""Exact field arithmetic and polynomial algebra.

Supported fields: the rationals QQ, prime fields GF(p) with p >= 5, quotient
extensions K[a]/(m(a)) with squarefree modulus (dynamic evaluation: inversion
that discovers a factor of the modulus raises ZeroDivisor carrying the split),
and rational function fields K(u) with monic-denominator canonical form.

Everything here is immutable and exact; no floating point is used anywhere.
"""

from __future__ import annotations

import math
import random
import sys
from fractions import Fraction

# exact rationals within the default bit budget can exceed the interpreter's
# conservative int-to-string limit; allow printing anything we can compute
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(10 ** 7)


# ---------------------------------------------------------------------------
# errors
# ---------------------------------------------------------------------------

class ExactAlgError(Exception):
    pass


class DivisionByZero(ExactAlgError):
    pass


class ZeroDivisor(ExactAlgError):
    """Inversion in a quotient extension found a factor of the modulus.

    Carries the two nonconstant cofactors so the caller can split the
    extension and continue on both branches (dynamic evaluation).
    """

    def __init__(self, factor1, factor2):
        super().__init__(f"zero divisor splits modulus: ({factor1}) * ({factor2})")
        self.factor1 = factor1
        self.factor2 = factor2


class SingularMatrix(ExactAlgError):
    pass


class InseparableCase(ExactAlgError):
    pass


class UnsupportedField(ExactAlgError):
    pass


class OverHeightBudget(ExactAlgError):
    pass


DEFAULT_BIT_BUDGET = 2 ** 16


# ---------------------------------------------------------------------------
# integer helpers
# ---------------------------------------------------------------------------

def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    rng = random.Random(0xD1CE)
    while True:
        c = rng.randrange(1, n)
        x = y = rng.randrange(2, n)
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


def factorint(n: int) -> dict:
    """Prime factorization of |n| as {prime: exponent}; factorint(0) is an error."""
    if n == 0:
        raise ValueError("factorint(0)")
    n = abs(n)
    out: dict = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 7
    while f * f <= n and f < 100000:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 2
    if n == 1:
        return out
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return out


def divisors(n: int) -> list:
    """All positive divisors of |n|."""
    ds = [1]
    for p, e in factorint(n).items():
        ds = [d * p ** k for d in ds for k in range(e + 1)]
    return sorted(ds)


def _sqrt_mod_p(a: int, p: int):
    """Tonelli-Shanks; returns r with r*r = a mod p, or None."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, tt = 0, t
        while tt != 1:
            tt = tt * tt % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


# ---------------------------------------------------------------------------
# fields and elements
# ---------------------------------------------------------------------------

class FieldElement:
    """Element of a Field; wraps a canonical representative."""

    __slots__ = ("field", "rep")

    def __init__(self, field, rep):
        self.field = field
        self.rep = rep

    _SCALARS = (int, Fraction, str)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ExactAlgError("field mismatch")
            return other
        return self.field(other)

    def __add__(self, other):
        if not isinstance(other, (FieldElement, *self._SCALARS)):
            return NotImplemented
        o = self._coerce(other)
        return FieldElement(self.field, self.field._add(self.rep, o.rep))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, self.field._neg(self.rep))

    def __sub__(self, other):
        if not isinstance(other, (FieldElement, *self._SCALARS)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, (FieldElement, *self._SCALARS)):
            return NotImplemented
        o = self._coerce(other)
        return FieldElement(self.field, self.field._mul(self.rep, o.rep))

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise DivisionByZero(str(self.field))
        return FieldElement(self.field, self.field._inv(self.rep))

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __bool__(self):
        return not self.field._is_zero(self.rep)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.rep == other.rep
        if isinstance(other, (int, Fraction)):
            return self == self.field(other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field.__class__), self.field._hash_key(), self.rep))

    def __repr__(self):
        return self.field._to_str(self.rep)

    __str__ = __repr__

    def bit_size(self) -> int:
        return self.field._bit_size(self.rep)


class Field:
    """Base class; subclasses implement raw-representative arithmetic."""

    def __call__(self, value) -> FieldElement:
        return FieldElement(self, self._coerce_rep(value))

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def element_from_str(self, text: str) -> FieldElement:
        return self(parse_rational(text))

    def _bit_size(self, rep) -> int:
        return 0

    def __ne__(self, other):
        return not self.__eq__(other)


def parse_rational(text) -> Fraction:
    """Exact scalar text format: integers like "-12", fractions like "3/4"."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    s = str(text).strip()
    if s.count("/") > 1 or "//" in s:
        raise ValueError(f"malformed scalar {text!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed scalar {text!r}") from exc


class RationalField(Field):
    kind = "rationals"
    char = 0

    def _coerce_rep(self, v):
        if isinstance(v, FieldElement):
            if v.field != self:
                raise ExactAlgError("field mismatch")
            return v.rep
        if isinstance(v, str):
            return parse_rational(v)
        return Fraction(v)

    def _add(self, a, b):
        return a + b

    def _neg(self, a):
        return -a

    def _mul(self, a, b):
        return a * b

    def _inv(self, a):
        return 1 / a

    def _is_zero(self, a):
        return a == 0

    def _to_str(self, a):
        return str(a)

    def _hash_key(self):
        return ("QQ",)

    def _bit_size(self, a):
        return a.numerator.bit_length() + a.denominator.bit_length()

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class PrimeField(Field):
    kind = "prime"

    def __init__(self, p: int):
        if p in (2, 3) or not _is_probable_prime(p):
            raise ExactAlgError(f"prime field needs a prime p >= 5, got {p}")
        self.p = p
        self.char = p

    def _coerce_rep(self, v):
        if isinstance(v, FieldElement):
            if v.field != self:
                raise ExactAlgError("field mismatch")
            return v.rep
        if isinstance(v, str):
            v = parse_rational(v)
        if isinstance(v, Fraction):
            den = v.denominator % self.p
            if den == 0:
                raise DivisionByZero(f"denominator divisible by {self.p}")
            return v.numerator * pow(den, -1, self.p) % self.p
        return int(v) % self.p

    def _add(self, a, b):
        return (a + b) % self.p

    def _neg(self, a):
        return -a % self.p

    def _mul(self, a, b):
        return a * b % self.p

    def _inv(self, a):
        return pow(a, -1, self.p)

    def _is_zero(self, a):
        return a == 0

    def _to_str(self, a):
        return str(a)

    def _hash_key(self):
        return ("GF", self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class QuotientExt(Field):
    """K[a]/(m(a)) with m squarefree over K (not necessarily irreducible)."""

    kind = "quotient"

    def __init__(self, modulus: "UniPoly"):
        if modulus.degree() < 1:
            raise ExactAlgError("modulus must be nonconstant")
        self.modulus = modulus.monic()
        self.base = modulus.field
        self.var = modulus.var
        self.char = self.base.char

    def generator(self):
        return self(UniPoly(self.base, [0, 1], self.var))

    def _coerce_rep(self, v):
        if isinstance(v, FieldElement):
            if v.field == self:
                return v.rep
            if v.field == self.base:
                return UniPoly(self.base, [v], self.var)
            raise ExactAlgError("field mismatch")
        if isinstance(v, UniPoly):
            if v.field != self.base:
                raise ExactAlgError("field mismatch")
            return v % self.modulus
        return UniPoly(self.base, [self.base(v)], self.var)

    def _add(self, a, b):
        return a + b

    def _neg(self, a):
        return -a

    def _mul(self, a, b):
        return (a * b) % self.modulus

    def _inv(self, a):
        g, s, _ = _ext_gcd(a, self.modulus)
        if g.degree() == 0:
            return (s * g.lead().inverse()) % self.modulus
        # g is a nonconstant proper factor of the squarefree modulus
        other = self.modulus // g
        raise ZeroDivisor(g.monic(), other.monic())

    def _is_zero(self, a):
        return a.is_zero()

    def _to_str(self, a):
        return str(a)

    def _hash_key(self):
        return ("ext", self.var, tuple(c.rep for c in self.modulus.coeffs))

    def _bit_size(self, a):
        return sum(c.bit_size() for c in a.coeffs)

    def down(self, el: FieldElement) -> FieldElement:
        """Coerce a degree-0 element back into the base field."""
        rep = el.rep
        if rep.degree() > 0:
            raise ExactAlgError("element is not in the base field")
        return rep.coeffs[0] if rep.coeffs else self.base.zero

    def __eq__(self, other):
        return (isinstance(other, QuotientExt) and other.var == self.var
                and other.modulus == self.modulus)

    def __hash__(self):
        return hash(("ext", self.var, self.modulus))

    def __repr__(self):
        return f"{self.base}[{self.var}]/({self.modulus})"


class FunctionField(Field):
    """K(u): fractions of UniPoly over K, canonical with monic denominator."""

    kind = "function"

    def __init__(self, base: Field, var: str):
        self.base = base
        self.var = var
        self.char = base.char

    def poly(self, coeffs) -> FieldElement:
        return self(UniPoly(self.base, coeffs, self.var))

    def gen(self) -> FieldElement:
        return self.poly([0, 1])

    def _canon(self, num: "UniPoly", den: "UniPoly"):
        if den.is_zero():
            raise DivisionByZero("zero denominator in function field")
        if num.is_zero():
            return (UniPoly(self.base, [], self.var), UniPoly(self.base, [1], self.var))
        g = poly_gcd(num, den)
        if g.degree() > 0:
            num, den = num // g, den // g
        lc = den.lead().inverse()
        return (num * lc, den * lc)

    def _coerce_rep(self, v):
        if isinstance(v, FieldElement):
            if v.field == self:
                return v.rep
            if v.field == self.base:
                return self._canon(UniPoly(self.base, [v], self.var),
                                   UniPoly(self.base, [1], self.var))
            raise ExactAlgError("field mismatch")
        if isinstance(v, UniPoly):
            if v.field != self.base:
                raise ExactAlgError("field mismatch")
            return self._canon(v, UniPoly(self.base, [1], self.var))
        return self._coerce_rep(UniPoly(self.base, [self.base(v)], self.var))

    def _add(self, a, b):
        return self._canon(a[0] * b[1] + b[0] * a[1], a[1] * b[1])

    def _neg(self, a):
        return (-a[0], a[1])

    def _mul(self, a, b):
        return self._canon(a[0] * b[0], a[1] * b[1])

    def _inv(self, a):
        return self._canon(a[1], a[0])

    def _is_zero(self, a):
        return a[0].is_zero()

    def _to_str(self, a):
        if a[1].degree() == 0 and a[1].coeffs and a[1].coeffs[0] == a[1].field(1):
            return str(a[0])
        return f"({a[0]})/({a[1]})"

    def _hash_key(self):
        return ("ff", self.var)

    def _bit_size(self, a):
        return (sum(c.bit_size() for c in a[0].coeffs)
                + sum(c.bit_size() for c in a[1].coeffs))

    def numerator(self, el: FieldElement) -> "UniPoly":
        return el.rep[0]

    def denominator(self, el: FieldElement) -> "UniPoly":
        return el.rep[1]

    def __eq__(self, other):
        return (isinstance(other, FunctionField) and other.var == self.var
                and other.base == self.base)

    def __hash__(self):
        return hash(("ff", self.var, self.base))

    def __repr__(self):
        return f"{self.base}({self.var})"


def sqrt(a: FieldElement):
    """Square root in QQ or GF(p); None when a is not a square."""
    f = a.field
    if isinstance(f, RationalField):
        v = a.rep
        if v < 0:
            return None
        rn, rd = math.isqrt(v.numerator), math.isqrt(v.denominator)
        if rn * rn == v.numerator and rd * rd == v.denominator:
            return f(Fraction(rn, rd))
        return None
    if isinstance(f, PrimeField):
        r = _sqrt_mod_p(a.rep, f.p)
        if r is None:
            return None
        return f(min(r, (-r) % f.p))
    raise UnsupportedField(f"sqrt over {f}")


# ---------------------------------------------------------------------------
# univariate polynomials
# ---------------------------------------------------------------------------

class UniPoly:
    """Dense univariate polynomial over a Field; immutable."""

    __slots__ = ("field", "var", "coeffs")

    def __init__(self, field: Field, coeffs, var: str = "t"):
        self.field = field
        self.var = var
        cs = [c if isinstance(c, FieldElement) else field(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- basics ------------------------------------------------------------
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> FieldElement:
        if not self.coeffs:
            raise ExactAlgError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i: int) -> FieldElement:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def _same(self, other):
        if isinstance(other, UniPoly):
            if other.field != self.field or other.var != self.var:
                raise ExactAlgError("polynomial ring mismatch")
            return other
        return UniPoly(self.field, [self.field(other)], self.var)

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        o = self._same(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return UniPoly(self.field,
                       [self.coeff(i) + o.coeff(i) for i in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(self.field, [-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return self._same(other) - self

    def __mul__(self, other):
        if isinstance(other, FieldElement) and other.field == self.field:
            return UniPoly(self.field, [c * other for c in self.coeffs], self.var)
        if isinstance(other, int):
            k = self.field(other)
            return UniPoly(self.field, [c * k for c in self.coeffs], self.var)
        o = self._same(other)
        if self.is_zero() or o.is_zero():
            return UniPoly(self.field, [], self.var)
        out = [self.field.zero] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(self.field, out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = UniPoly(self.field, [1], self.var)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other):
        o = self._same(other)
        if o.is_zero():
            raise DivisionByZero("polynomial division by zero")
        inv_lc = o.lead().inverse()
        rem = list(self.coeffs)
        dq = len(rem) - len(o.coeffs)
        if dq < 0:
            return UniPoly(self.field, [], self.var), self
        quo = [self.field.zero] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + o.degree()] * inv_lc
            quo[k] = c
            if c:
                for j, b in enumerate(o.coeffs):
                    rem[k + j] = rem[k + j] - c * b
        return (UniPoly(self.field, quo, self.var),
                UniPoly(self.field, rem[:o.degree()], self.var))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "UniPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ExactAlgError("inexact polynomial division")
        return q

    # -- structure -----------------------------------------------------------
    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self * self.lead().inverse()

    def derivative(self) -> "UniPoly":
        return UniPoly(self.field,
                       [self.coeffs[i] * i for i in range(1, len(self.coeffs))],
                       self.var)

    def __call__(self, x):
        if not isinstance(x, FieldElement):
            x = self.field(x)
        acc = x.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + (x.field(c.rep) if c.field == x.field else _lift(c, x.field))
        return acc

    def compose(self, other: "UniPoly") -> "UniPoly":
        acc = UniPoly(self.field, [], self.var)
        for c in reversed(self.coeffs):
            acc = acc * other + self._same(c)
        return acc

    def shift(self, a) -> "UniPoly":
        """p(t + a)."""
        lin = UniPoly(self.field, [a, 1], self.var)
        return self.compose(lin)

    def reversed_coeffs(self) -> "UniPoly":
        return UniPoly(self.field, list(reversed(self.coeffs)), self.var)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return (self.field == other.field and self.var == other.var
                    and self.coeffs == other.coeffs)
        return NotImplemented

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree(), -1, -1):
            c = self.coeff(i)
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mono = self.var if i == 1 else f"{self.var}^{i}"
                cs = str(c)
                parts.append(mono if cs == "1" else f"{cs}*{mono}"
                             if not ("/" in cs or "+" in cs or " " in cs)
                             else f"({cs})*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _lift(c: FieldElement, target: Field) -> FieldElement:
    """Lift a base-field element into an extension/function field over it."""
    return target(c)


def _ext_gcd(a: UniPoly, b: UniPoly):
    """Extended Euclid: returns (g, s, t) with s*a + t*b = g. Plain Euclid;
    used over prime fields and extension towers where coefficients stay small."""
    field, var = a.field, a.var
    r0, r1 = a, b
    s0 = UniPoly(field, [1], var)
    s1 = UniPoly(field, [], var)
    t0 = UniPoly(field, [], var)
    t1 = UniPoly(field, [1], var)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return r0, s0, t0


def _qq_poly_to_int_list(a: UniPoly):
    den = 1
    for c in a.coeffs:
        den = den * c.rep.denominator // math.gcd(den, c.rep.denominator)
    ints = [c.rep.numerator * (den // c.rep.denominator) for c in a.coeffs]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def _int_prem(a: list, b: list) -> list:
    """Pseudo-remainder of integer coefficient lists, content-stripped."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        la = a[-1]
        k = len(a) - 1 - db
        a = [v * lb for v in a]
        for j in range(db + 1):
            a[k + j] -= la * b[j]
        while a and a[-1] == 0:
            a.pop()
    g = 0
    for v in a:
        g = math.gcd(g, v)
    if g > 1:
        a = [v // g for v in a]
    return a


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd; primitive PRS over ZZ when the field is QQ (avoids fraction
    blow-up), monic Euclid otherwise. gcd(0, b) = monic(b)."""
    if a.field != b.field or a.var != b.var:
        raise ExactAlgError("polynomial ring mismatch")
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if isinstance(a.field, RationalField):
        u, v = _qq_poly_to_int_list(a), _qq_poly_to_int_list(b)
        if len(u) < len(v):
            u, v = v, u
        while v:
            u, v = v, _int_prem(u, v)
        return UniPoly(a.field, u, a.var).monic()
    r0, r1 = a, b
    while not r1.is_zero():
        r0, r1 = r1, r0 % r1
        if not r1.is_zero():
            r1 = r1.monic()
    return r0.monic()


def squarefree_part(a: UniPoly) -> UniPoly:
    if a.degree() < 1:
        return a.monic()
    return a.exact_div(poly_gcd(a, a.derivative())).monic()


def squarefree_decomposition(a: UniPoly):
    """Returns [(factor_i, i)] with a = lc * prod factor_i^i, factors monic,
    squarefree, pairwise coprime. Raises InseparableCase in characteristic p
    when a multiplicity >= p (or a p-th power part) appears."""
    if a.is_zero():
        raise ExactAlgError("squarefree decomposition of zero")
    a = a.monic()
    if a.degree() == 0:
        return []
    p = a.field.char
    da = a.derivative()
    if p == 0:
        # Yun's algorithm
        g = poly_gcd(a, da)
        out = []
        c = a.exact_div(g)
        d = da.exact_div(g) - c.derivative()
        i = 1
        while c.degree() > 0:
            f = poly_gcd(c, d)
            if f.degree() > 0:
                out.append((f, i))
            c = c.exact_div(f)
            d = d.exact_div(f) - c.derivative()
            i += 1
        return out
    if da.is_zero():
        raise InseparableCase(str(a))
    g = poly_gcd(a, da)
    w = a.exact_div(g)
    out = []
    i = 1
    while w.degree() > 0:
        if i >= p:
            raise InseparableCase(f"multiplicity >= characteristic in {a}")
        y = poly_gcd(w, g)
        z = w.exact_div(y)
        if z.degree() > 0:
            out.append((z, i))
        i += 1
        w = y
        g = g.exact_div(y)
    if g.degree() > 0:
        raise InseparableCase(f"p-th power part {g}")
    return out


def rational_roots(a: UniPoly) -> list:
    """All roots of a in the coefficient field: rational-root criterion on the
    primitive integral model over QQ, exhaustive scan over GF(p)."""
    if a.is_zero():
        raise ExactAlgError("rational_roots of zero polynomial")
    field = a.field
    if isinstance(field, PrimeField):
        return [field(v) for v in range(field.p) if not a(field(v))]
    if not isinstance(field, RationalField):
        raise UnsupportedField(f"rational_roots over {field}")
    roots = []
    ints = _qq_poly_to_int_list(a)
    k = 0
    while ints and ints[0] == 0:
        ints = ints[1:]
        k += 1
    if k:
        roots.append(field(0))
    if len(ints) <= 1:
        return roots
    a0, ad = abs(ints[0]), abs(ints[-1])
    for num in divisors(a0):
        for den in divisors(ad):
            if math.gcd(num, den) != 1:
                continue
            for cand in (Fraction(num, den), Fraction(-num, den)):
                acc = Fraction(0)
                for c in reversed(ints):
                    acc = acc * cand + c
                if acc == 0:
                    roots.append(field(cand))
    return sorted(set(roots), key=lambda r: (r.rep.denominator, r.rep))


# ---------------------------------------------------------------------------
# binary forms in (z, w)
# ---------------------------------------------------------------------------

class BinaryForm:
    """Homogeneous form sum_i e_i z^i w^(d-i); stores exactly d+1 coefficients."""

    __slots__ = ("field", "d", "coeffs")

    def __init__(self, field: Field, degree: int, coeffs):
        cs = [c if isinstance(c, FieldElement) else field(c) for c in coeffs]
        if len(cs) != degree + 1:
            raise ExactAlgError(f"degree-{degree} form needs {degree + 1} coefficients")
        self.field = field
        self.d = degree
        self.coeffs = tuple(cs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other):
        if other.d != self.d or other.field != self.field:
            raise ExactAlgError("form mismatch")
        return BinaryForm(self.field, self.d,
                          [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return BinaryForm(self.field, self.d, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            out = [self.field.zero] * (self.d + other.d + 1)
            for i, a in enumerate(self.coeffs):
                if not a:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return BinaryForm(self.field, self.d + other.d, out)
        k = other if isinstance(other, FieldElement) else self.field(other)
        return BinaryForm(self.field, self.d, [c * k for c in self.coeffs])

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = BinaryForm(self.field, 0, [1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __call__(self, z0, w0) -> FieldElement:
        z0 = z0 if isinstance(z0, FieldElement) else self.field(z0)
        w0 = w0 if isinstance(w0, FieldElement) else self.field(w0)
        acc = self.field.zero
        zp = self.field.one
        wps = [self.field.one]
        for _ in range(self.d):
            wps.append(wps[-1] * w0)
        for i, c in enumerate(self.coeffs):
            if c:
                acc = acc + c * zp * wps[self.d - i]
            zp = zp * z0
        return acc

    def chart_w(self, var: str = "t") -> UniPoly:
        """Dehomogenize at w=1: coefficient of t^i is e_i."""
        return UniPoly(self.field, list(self.coeffs), var)

    def chart_z(self, var: str = "u") -> UniPoly:
        """Dehomogenize at z=1: coefficient of u^j is e_(d-j)."""
        return UniPoly(self.field, list(reversed(self.coeffs)), var)

    @classmethod
    def from_unipoly(cls, poly: UniPoly, degree: int) -> "BinaryForm":
        if poly.degree() > degree:
            raise ExactAlgError("degree too small to homogenize")
        return cls(poly.field, degree,
                   [poly.coeff(i) for i in range(degree + 1)])

    def __eq__(self, other):
        if isinstance(other, BinaryForm):
            return (self.field == other.field and self.d == other.d
                    and self.coeffs == other.coeffs)
        return NotImplemented

    def __hash__(self):
        return hash((self.d, self.coeffs))

    def __repr__(self):
        return " + ".join(f"({c})*z^{i}w^{self.d - i}"
                          for i, c in enumerate(self.coeffs) if c) or "0"


def pgl2_act(M, form: BinaryForm) -> BinaryForm:
    """form(M . (z,w)^T): substitutes z -> M00 z + M01 w, w -> M10 z + M11 w.
    Satisfies act(M1, act(M2, f)) = act(M2*M1, f)."""
    field = form.field
    m = [[e if isinstance(e, FieldElement) else field(e) for e in row] for row in M]
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if not det:
        raise SingularMatrix(str(M))
    znew = BinaryForm(field, 1, [m[0][1], m[0][0]])  # M00 z + M01 w
    wnew = BinaryForm(field, 1, [m[1][1], m[1][0]])
    out = BinaryForm(field, form.d, [0] * (form.d + 1))
    for i, c in enumerate(form.coeffs):
        if c:
            out = out + c * (znew ** i) * (wnew ** (form.d - i))
    return out


# ---------------------------------------------------------------------------
# bivariate polynomials in (p, q)
# ---------------------------------------------------------------------------

class BiPoly:
    """Sparse polynomial in k[p, q]; keys are (deg_p, deg_q)."""

    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms: dict):
        self.field = field
        self.terms = {k: (v if isinstance(v, FieldElement) else field(v))
                      for k, v in terms.items()}
        self.terms = {k: v for k, v in self.terms.items() if v}

    @classmethod
    def zero(cls, field):
        return cls(field, {})

    @classmethod
    def const(cls, c: FieldElement):
        return cls(c.field, {(0, 0): c})

    @classmethod
    def var_p(cls, field):
        return cls(field, {(1, 0): field.one})

    @classmethod
    def var_q(cls, field):
        return cls(field, {(0, 1): field.one})

    def is_zero(self) -> bool:
        return not self.terms

    def deg_p(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    def deg_q(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def __add__(self, other):
        o = self._same(other)
        out = dict(self.terms)
        for k, v in o.terms.items():
            out[k] = out.get(k, self.field.zero) + v
        return BiPoly(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly(self.field, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return self._same(other) - self

    def _same(self, other):
        if isinstance(other, BiPoly):
            if other.field != self.field:
                raise ExactAlgError("field mismatch")
            return other
        return BiPoly.const(other if isinstance(other, FieldElement)
                            else self.field(other))

    def __mul__(self, other):
        if isinstance(other, (FieldElement, int)):
            k = other if isinstance(other, FieldElement) else self.field(other)
            return BiPoly(self.field, {m: v * k for m, v in self.terms.items()})
        o = self._same(other)
        out = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in o.terms.items():
                key = (i1 + i2, j1 + j2)
                cur = out.get(key)
                out[key] = a * b if cur is None else cur + a * b
        return BiPoly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = BiPoly.const(self.field.one)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __call__(self, pv, qv) -> FieldElement:
        pv = pv if isinstance(pv, FieldElement) else self.field(pv)
        qv = qv if isinstance(qv, FieldElement) else self.field(qv)
        acc = self.field.zero
        ppow, qpow = {0: self.field.one}, {0: self.field.one}
        for (i, j), c in self.terms.items():
            while i not in ppow:
                m = max(ppow)
                ppow[m + 1] = ppow[m] * pv
            while j not in qpow:
                m = max(qpow)
                qpow[m + 1] = qpow[m] * qv
            acc = acc + c * ppow[i] * qpow[j]
        return acc

    def coeffs_in_q(self, var: str = "p") -> list:
        """List of UniPoly in p; entry j is the coefficient of q^j."""
        n = self.deg_q()
        if n < 0:
            return []
        rows = [[self.field.zero] * (self.deg_p() + 1) for _ in range(n + 1)]
        for (i, j), c in self.terms.items():
            rows[j][i] = c
        return [UniPoly(self.field, row, var) for row in rows]

    @classmethod
    def from_coeffs_in_q(cls, coeffs) -> "BiPoly":
        terms = {}
        field = coeffs[0].field
        for j, poly in enumerate(coeffs):
            for i, c in enumerate(poly.coeffs):
                if c:
                    terms[(i, j)] = c
        return cls(field, terms)

    def d_p(self) -> "BiPoly":
        return BiPoly(self.field, {(i - 1, j): c * i
                                   for (i, j), c in self.terms.items() if i})

    def d_q(self) -> "BiPoly":
        return BiPoly(self.field, {(i, j - 1): c * j
                                   for (i, j), c in self.terms.items() if j})

    def subs_q_poly(self, qpoly: UniPoly) -> UniPoly:
        """Substitute q = qpoly(p); returns a UniPoly in p."""
        var = qpoly.var
        out = UniPoly(self.field, [], var)
        for poly_j, j in zip(self.coeffs_in_q(var), range(self.deg_q() + 1)):
            out = out + poly_j * (qpoly ** j)
        return out

    def content_in_p(self, var: str = "p") -> UniPoly:
        """gcd in K[p] of the q-coefficients."""
        g = UniPoly(self.field, [], var)
        for c in self.coeffs_in_q(var):
            g = poly_gcd(g, c)
        return g

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self.field == other.field and self.terms == other.terms
        return NotImplemented

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j) in sorted(self.terms, key=lambda m: (-m[1], -m[0])):
            c = self.terms[(i, j)]
            mono = ("" if i == 0 else f"p^{i}" if i > 1 else "p") + \
                   ("" if j == 0 else f"q^{j}" if j > 1 else "q")
            parts.append(f"({c}){'*' + mono if mono else ''}")
        return " + ".join(parts)

    def proportional_to(self, other: "BiPoly") -> bool:
        """True when self = scalar * other for some nonzero scalar."""
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        if set(self.terms) != set(other.terms):
            return False
        key = next(iter(self.terms))
        ratio = self.terms[key] / other.terms[key]
        return all(self.terms[k] == ratio * other.terms[k] for k in self.terms)


def resultant_q(a: BiPoly, b: BiPoly, var: str = "p") -> UniPoly:
    """Res_q(a, b) as a UniPoly in p: Sylvester determinant computed by
    fraction-free Bareiss elimination over K[p]."""
    if a.deg_q() < 0 or b.deg_q() < 0:
        raise ExactAlgError("resultant of zero polynomial")
    ca, cb = a.coeffs_in_q(var), b.coeffs_in_q(var)
    m, n = len(ca) - 1, len(cb) - 1
    field = a.field
    zero = UniPoly(field, [], var)
    if m == 0 and n == 0:
        return UniPoly(field, [1], var)
    if m == 0:
        return ca[0] ** n
    if n == 0:
        return cb[0] ** m
    size = m + n
    rows = []
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(reversed(ca)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(cb)):
            row[i + j] = c
        rows.append(row)
    sign = 1
    prev = UniPoly(field, [1], var)
    for k in range(size - 1):
        if rows[k][k].is_zero():
            for i in range(k + 1, size):
                if not rows[i][k].is_zero():
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return zero
        piv = rows[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                rows[i][j] = (rows[i][j] * piv - rows[i][k] * rows[k][j]).exact_div(prev)
            rows[i][k] = zero
        prev = piv
    det = rows[size - 1][size - 1]
    return det if sign == 1 else -det


# ---------------------------------------------------------------------------
# budget guard
# ---------------------------------------------------------------------------

def check_budget(el: FieldElement, budget: int = DEFAULT_BIT_BUDGET):
    if el.bit_size() > budget:
        raise OverHeightBudget(f"coordinate exceeds {budget} bits")
    return el
