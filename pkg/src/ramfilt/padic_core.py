"""The base field K/Q_p and exact arithmetic in O_K modulo pi^N.

K is presented as W[x]/(E) where W = Z_p[y]/(g) is the unramified extension
of degree f and E is an Eisenstein polynomial of degree e over W.  Elements
of O_K are stored as e coefficients in W (powers of the uniformizer
pi = x), and each W-coefficient as f integers modulo p^M.  Working modulo
p^M is the same as working modulo pi^(e*M), so ring operations need no carry
handling.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import (
    AtPrecisionZero,
    NonUnit,
    NotEisenstein,
    NotIrreducible,
    NotPrime,
    PrecisionTooSmall,
    RamfiltError,
)

#: valuation / level value of an element that vanishes to working precision
INFINITY = math.inf


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# -- polynomials over F_p, constant coefficient first ---------------------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mod(a, m, p):
    a = [x % p for x in a]
    m = _trim([x % p for x in m])
    inv = pow(m[-1], -1, p)
    dm = len(m) - 1
    for d in range(len(a) - 1, dm - 1, -1):
        c = a[d] * inv % p
        if c:
            for i in range(dm + 1):
                a[d - dm + i] = (a[d - dm + i] - c * m[i]) % p
    return _trim(a[:dm]) if dm > 0 else []


def _fp_mulmod(a, b, m, p):
    prod = [0] * max(len(a) + len(b) - 1, 0)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _fp_mod(prod, m, p)


def _fp_powmod(a, k, m, p):
    result = [1]
    base = _fp_mod(a, m, p)
    while k:
        if k & 1:
            result = _fp_mulmod(result, base, m, p)
        base = _fp_mulmod(base, base, m, p)
        k >>= 1
    return _fp_mod(result, m, p)


def _fp_gcd(a, b, p):
    a, b = _trim([x % p for x in a]), _trim([x % p for x in b])
    while b:
        a, b = b, _fp_mod(a, b, p)
    return a


def is_irreducible_mod_p(g, p) -> bool:
    """True iff gcd(x^(p^k) - x, g) = 1 mod p for every 1 <= k < deg g."""
    g = _trim([x % p for x in g])
    f = len(g) - 1
    if f < 1:
        return False
    if f == 1:
        return True
    xp = [0, 1]
    for _ in range(1, f):
        xp = _fp_powmod(xp, p, g, p)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        if len(_fp_gcd(g, diff, p)) > 1:
            return False
    return True


# -- residue field F_q = F_p[y]/(g mod p) --------------------------------------

@dataclass(frozen=True)
class ResidueField:
    """The residue field F_q; elements are tuples of f integers in [0, p)."""

    p: int
    modulus: tuple[int, ...]

    @property
    def f(self) -> int:
        return len(self.modulus) - 1

    @property
    def q(self) -> int:
        return self.p ** self.f

    def _norm(self, a):
        a = list(a) + [0] * (self.f - len(a))
        return tuple(a[: self.f])

    def element(self, coeffs):
        return self._norm(_fp_mod(list(coeffs), self.modulus, self.p))

    @property
    def zero(self):
        return (0,) * self.f

    @property
    def one(self):
        return self.element([1])

    def basis(self):
        """The residue basis 1, y, ..., y^(f-1)."""
        return [self.element([0] * j + [1]) for j in range(self.f)]

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def scale(self, lam, a):
        return tuple(lam * x % self.p for x in a)

    def mul(self, a, b):
        return self._norm(_fp_mulmod(list(a), list(b), self.modulus, self.p))

    def pow(self, a, k):
        return self._norm(_fp_powmod(list(a), k, self.modulus, self.p))

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError("zero has no inverse in the residue field")
        return self.pow(a, self.q - 2)

    def frobenius_inverse(self, a):
        return self.pow(a, self.p ** (self.f - 1))

    def from_index(self, n):
        """Element whose coefficients are the base-p digits of n, constant first."""
        out = []
        for _ in range(self.f):
            n, r = divmod(n, self.p)
            out.append(r)
        return tuple(out)

    def index(self, a):
        return sum(c * self.p**j for j, c in enumerate(a))

    def elements(self):
        return [self.from_index(n) for n in range(self.q)]


# -- the field K ---------------------------------------------------------------

def _as_poly(c):
    if isinstance(c, int):
        return [c]
    return [int(x) for x in c]


def _reduce_mod_monic(a, m):
    """Exact division remainder of an integer polynomial by a monic one."""
    a = list(a)
    dm = len(m) - 1
    for d in range(len(a) - 1, dm - 1, -1):
        c = a[d]
        if c:
            for i in range(dm + 1):
                a[d - dm + i] -= c * m[i]
    a = a[:dm]
    return tuple(a + [0] * (dm - len(a)))


def _vp(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class FieldSpec:
    """A p-adic field K given by (p, g, E) at coefficient precision p^M.

    ``g`` is monic of degree f with constant term first; ``E`` is monic of
    degree e in x, every coefficient a tuple of f integers (a polynomial in y
    already reduced modulo g over Z, so exact).
    """

    p: int
    g: tuple[int, ...]
    E: tuple[tuple[int, ...], ...]
    M: int

    @property
    def f(self) -> int:
        return len(self.g) - 1

    @property
    def e(self) -> int:
        return len(self.E) - 1

    @property
    def n(self) -> int:
        return self.e * self.f

    @property
    def q(self) -> int:
        return self.p**self.f

    @property
    def N(self) -> int:
        """Precision in powers of pi."""
        return self.e * self.M

    @property
    def modulus(self) -> int:
        return self.p**self.M

    @property
    def crit(self) -> Fraction:
        return Fraction(self.p * self.e, self.p - 1)

    @property
    def crit_int(self) -> int | None:
        c = self.crit
        return int(c) if c.denominator == 1 else None

    @property
    def critical_base_level(self) -> int | None:
        """e/(p-1), the level whose p-th powers land on the critical level."""
        return self.e // (self.p - 1) if self.e % (self.p - 1) == 0 else None

    @cached_property
    def I(self) -> tuple[int, ...]:  # noqa: E743
        return tuple(i for i in range(1, math.ceil(self.crit)) if i % self.p)

    @cached_property
    def residue_field(self) -> ResidueField:
        return ResidueField(self.p, tuple(x % self.p for x in self.g))

    @cached_property
    def zeta_flag(self) -> bool:
        from .units import zeta_p_in_K

        return zeta_p_in_K(self)

    @cached_property
    def _p_over_pi(self):
        # p/pi = -(pi^(e-1) + a_(e-1) pi^(e-2) + ... + a_1) / u0 where a_0 = p*u0.
        # u0 is exact because E is stored over Z.
        u0 = self.element([tuple(c // self.p for c in self.E[0])])
        num = self.element([list(c) for c in self.E[1:]])
        return (-num * u0.inverse()).coeffs

    def __repr__(self):
        return f"FieldSpec(p={self.p}, e={self.e}, f={self.f}, M={self.M})"

    def describe(self) -> str:
        return f"K/Q_{self.p} with e={self.e}, f={self.f}"

    # constructors for elements

    def zero(self) -> RingElement:
        return RingElement(self, ((0,) * self.f,) * self.e)

    def one(self) -> RingElement:
        return self.element(1)

    def pi(self) -> RingElement:
        return self.element([0, 1])

    def pi_power(self, k: int) -> RingElement:
        return self.pi() ** k

    def element(self, value) -> RingElement:
        """Build an element from an int or a list of pi-coefficients.

        Each pi-coefficient is an int or a list of ints (a polynomial in the
        unramified generator y, constant first).  Any degrees are allowed;
        the result is reduced modulo (g, E, p^M).
        """
        if isinstance(value, RingElement):
            return value
        if isinstance(value, int):
            value = [value]
        rows = [_as_poly(c) for c in value]
        return RingElement(self, _reduce(self, rows))

    def from_residue(self, r, shift: int = 0) -> RingElement:
        """Lift of a residue (coefficients in [0, p)) times pi^shift."""
        return self.element([0] * shift + [list(r)])

    def to_json(self) -> dict:
        return {"p": self.p, "g": list(self.g), "E": [list(c) for c in self.E], "precision": self.M}


def _w_mul(a, b, g, f, mod):
    if f == 1:
        return ((a[0] * b[0]) % mod,)
    prod = [0] * (2 * f - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    for d in range(2 * f - 2, f - 1, -1):
        c = prod[d]
        if c:
            for i in range(f):
                prod[d - f + i] -= c * g[i]
    return tuple(x % mod for x in prod[:f])


def _reduce(field: FieldSpec, rows):
    """Reduce a list of y-polynomials (pi-coefficients) modulo (g, E, p^M)."""
    f, e, mod, g = field.f, field.e, field.modulus, field.g
    w = [tuple(x % mod for x in _reduce_mod_monic(r, g)) if len(r) > f else
         tuple(x % mod for x in list(r) + [0] * (f - len(r))) for r in rows]
    w = [list(x) for x in w]
    E = field.E
    for k in range(len(w) - 1, e - 1, -1):
        c = w[k]
        if any(c):
            for i in range(e):
                t = _w_mul(c, E[i], g, f, mod)
                w[k - e + i] = [(x - y) % mod for x, y in zip(w[k - e + i], t)]
    w = w[:e] + [[0] * f] * (e - len(w))
    return tuple(tuple(x) for x in w)


def _mul(field: FieldSpec, A, B):
    f, e, mod, g = field.f, field.e, field.modulus, field.g
    if e == 1 and f == 1:
        return (((A[0][0] * B[0][0]) % mod,),)
    rows = [[0] * (2 * f - 1) for _ in range(2 * e - 1)]
    for i, a in enumerate(A):
        if not any(a):
            continue
        for j, b in enumerate(B):
            if not any(b):
                continue
            row = rows[i + j]
            for s, x in enumerate(a):
                if x:
                    for t, y in enumerate(b):
                        row[s + t] += x * y
    return _reduce(field, rows)


class RingElement:
    """An element of O_K known modulo pi^prec (prec <= N)."""

    __slots__ = ("field", "coeffs", "prec")

    def __init__(self, field: FieldSpec, coeffs, prec: int | None = None):
        self.field = field
        self.coeffs = coeffs
        self.prec = field.N if prec is None else prec

    def _coerce(self, other) -> RingElement:
        if isinstance(other, RingElement):
            if other.field is not self.field and other.field != self.field:
                raise RamfiltError("elements of different fields")
            return other
        if isinstance(other, int):
            return self.field.element(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        mod = self.field.modulus
        c = tuple(tuple((x + y) % mod for x, y in zip(a, b)) for a, b in zip(self.coeffs, other.coeffs))
        return RingElement(self.field, c, min(self.prec, other.prec))

    __radd__ = __add__

    def __neg__(self):
        mod = self.field.modulus
        return RingElement(self.field, tuple(tuple((-x) % mod for x in a) for a in self.coeffs), self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RingElement(self.field, _mul(self.field, self.coeffs, other.coeffs), min(self.prec, other.prec))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one()
        result.prec = self.prec
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        return f"RingElement({format_element(self)})"

    def is_zero(self) -> bool:
        return self.valuation() == INFINITY

    def valuation(self):
        """v_K of the element, or INFINITY when it vanishes modulo pi^prec."""
        e, p = self.field.e, self.field.p
        best = INFINITY
        for i, w in enumerate(self.coeffs):
            nz = [x for x in w if x]
            if nz:
                best = min(best, e * min(_vp(x, p) for x in nz) + i)
        return INFINITY if best >= self.prec else best

    def residue(self):
        return self.field.residue_field.element(self.coeffs[0])

    def _div_pi(self) -> RingElement:
        field = self.field
        p, mod = field.p, field.modulus
        w0 = self.coeffs[0]
        if any(x % p for x in w0):
            raise RamfiltError("element is not divisible by pi")
        w0p = tuple(x // p for x in w0)
        P = field._p_over_pi
        head = [_w_mul(w0p, c, field.g, field.f, mod) for c in P]
        tail = list(self.coeffs[1:]) + [(0,) * field.f]
        c = tuple(tuple((x + y) % mod for x, y in zip(a, b)) for a, b in zip(head, tail))
        return RingElement(field, c, self.prec - 1)

    def shift(self, k: int) -> RingElement:
        """Divide by pi^k; requires valuation >= k and loses k digits of precision."""
        v = self.valuation()
        if v < k:
            raise RamfiltError(f"element of valuation {v} is not divisible by pi^{k}")
        x = self
        for _ in range(k):
            x = x._div_pi()
        return x

    def leading_residue(self):
        v = self.valuation()
        if v == INFINITY:
            raise AtPrecisionZero("element is zero to working precision")
        return v, self.shift(v).residue()

    def inverse(self) -> RingElement:
        r = self.residue()
        if not any(r):
            raise NonUnit("only units can be inverted")
        F = self.field.residue_field
        field = self.field
        y = field.from_residue(F.inv(r))
        one = field.one()
        # Newton: the error 1 - x*y squares each round
        for _ in range(field.N.bit_length() + 2):
            xy = self * y
            if xy.coeffs == one.coeffs:
                break
            y = y * (2 - xy)
        else:
            raise AssertionError("Newton iteration for the inverse did not converge")
        return RingElement(field, y.coeffs, self.prec)

    def digits(self, count: int):
        """First ``count`` pi-adic digits, each a residue tuple; canonical mod pi^count."""
        if count > self.prec:
            raise RamfiltError("requested digits beyond the element's precision")
        field = self.field
        out = []
        x = self
        for i in range(count):
            r = x.residue()
            out.append(r)
            if i + 1 < count:
                x = (x - field.from_residue(r))._div_pi()
        return tuple(out)

    def to_json(self):
        return [list(c) for c in self.coeffs]


def valuation(x: RingElement):
    return x.valuation()


def residue(x: RingElement):
    return x.residue()


def leading_residue(x: RingElement):
    return x.leading_residue()


def unit_inverse(x: RingElement) -> RingElement:
    return x.inverse()


def _signed(x, mod):
    return x - mod if x > mod // 2 else x


def _format_w(w, mod):
    terms = []
    for j, c in enumerate(w):
        c = _signed(c, mod)
        if c:
            mono = "" if j == 0 else ("y" if j == 1 else f"y^{j}")
            terms.append((c, mono))
    if not terms:
        return "0"
    if len(terms) == 1 and terms[0][1] == "":
        return str(terms[0][0])
    parts = [f"{c}*{m}" if m and c != 1 else (m or str(c)) for c, m in terms]
    return "(" + " + ".join(parts) + ")" if len(parts) > 1 else parts[0]


def format_element(x: RingElement) -> str:
    """Human readable form; integers print plainly when e = f = 1."""
    field = x.field
    if field.e == 1 and field.f == 1:
        return str(x.coeffs[0][0])
    mod = field.modulus
    parts = []
    for i, w in enumerate(x.coeffs):
        if not any(w):
            continue
        cw = _format_w(w, mod)
        if i == 0:
            parts.append(cw)
        else:
            mono = "pi" if i == 1 else f"pi^{i}"
            parts.append(mono if cw == "1" else f"{cw}*{mono}")
    return " + ".join(parts).replace("+ -", "- ") or "0"


def make_field(p: int, g, E, M: int = 0) -> FieldSpec:
    """Validate (p, g, E) and build the field; M = 0 picks the default precision."""
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    g = [int(x) for x in g]
    if len(g) < 2 or g[-1] != 1:
        raise NotIrreducible("g must be monic of degree >= 1")
    if not is_irreducible_mod_p(g, p):
        raise NotIrreducible(f"g = {g} is reducible modulo {p}")
    f = len(g) - 1
    Ered = [_reduce_mod_monic(_as_poly(c), g) if len(_as_poly(c)) > f
            else tuple(_as_poly(c) + [0] * (f - len(_as_poly(c)))) for c in E]
    if len(Ered) < 2 or Ered[-1] != (1,) + (0,) * (f - 1):
        raise NotEisenstein("E must be monic of degree >= 1")
    for c in Ered[:-1]:
        if any(x % p for x in c):
            raise NotEisenstein("non-leading coefficients of E must be divisible by p")
    if all((x // p) % p == 0 for x in Ered[0]):
        raise NotEisenstein("constant term of E must have valuation exactly 1")
    e = len(Ered) - 1
    crit = Fraction(p * e, p - 1)
    min_N = math.ceil(crit) + e + 2
    if M == 0:
        M = math.ceil(min_N / e) + 1
    elif M < 0 or e * M < min_N:
        raise PrecisionTooSmall(f"need e*M >= {min_N}, got e*M = {e * M}")
    field = FieldSpec(p, tuple(g), tuple(Ered), M)
    assert len(field.I) == e
    if field.crit_int is not None:
        assert field.crit_int not in field.I
        from .units import critical_expansion_check

        critical_expansion_check(field)
    field.zeta_flag  # noqa: B018 - computed eagerly so construction fails early
    return field


def field_from_json(data: dict, precision: int | None = None) -> FieldSpec:
    """Parse the field-spec JSON object {"p", "g", "E", "precision"}."""
    try:
        p = int(data["p"])
        g = data["g"]
        E = data["E"]
    except (KeyError, TypeError) as exc:
        raise RamfiltError(f"malformed field spec: {exc}") from None
    M = data.get("precision", 0) if precision is None else precision
    return make_field(p, g, E, int(M or 0))


def load_field(path, precision: int | None = None) -> FieldSpec:
    with open(path) as fh:
        return field_from_json(json.load(fh), precision)
