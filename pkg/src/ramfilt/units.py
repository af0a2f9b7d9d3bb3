"""Principal units: levels, the critical-level map, and the strip decomposition.

Every principal unit u is written, modulo p^k-th powers, as a product of the
generators eta_(x,y) = 1 + c_y pi^x (x in I, c_y = y^(y-1) in the residue
basis) and, when zeta_p is in K, one extra unit omega_* sitting at the
critical level pe/(p-1).  The decomposition peels off the leading term of u
one level at a time; the level of the remaining cofactor strictly increases.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    NotApplicable,
    NotPrincipalUnit,
    PrecisionExhausted,
    RamfiltError,
    ZeroInput,
)
from .fp_linalg import FpMatrix, rank, solve, span
from .padic_core import INFINITY, FieldSpec, RingElement


@dataclass(frozen=True)
class OmegaStar:
    element: RingElement
    c_star: tuple[int, ...]


@dataclass(frozen=True)
class UnitDecomposition:
    k: int
    eta_exp: dict
    omega_exp: int | None
    certified_level: float

    def is_trivial(self) -> bool:
        return not any(self.eta_exp.values()) and not self.omega_exp

    def to_json(self) -> dict:
        return {
            "eta": [[x, y, a] for (x, y), a in sorted(self.eta_exp.items())],
            "omega": self.omega_exp,
            "k": self.k,
        }


def level(u: RingElement):
    """v(u - 1) for a principal unit u; INFINITY when u = 1 to working precision."""
    lv = (u - 1).valuation()
    if lv < 1:
        raise NotPrincipalUnit("unit is not congruent to 1 modulo pi")
    return lv


def eta(field: FieldSpec, x: int, y: int) -> RingElement:
    """eta_(x,y) = 1 + y^(y-1) pi^x."""
    c = field.residue_field.basis()[y - 1]
    return 1 + field.from_residue(c, x)


def _theta(field: FieldSpec):
    return field.element(field.p).shift(field.e).residue()


def artin_schreier_theta(field: FieldSpec):
    """Residue of p / pi^e, the linear coefficient of the critical-level map."""
    if field.crit_int is None:
        raise NotApplicable("(p-1) does not divide e; there is no integral critical level")
    return _theta(field)


def phi(field: FieldSpec, c):
    """c^p + theta*c, which describes (1 + c pi^s)^p at the critical level."""
    F = field.residue_field
    return F.add(F.pow(c, field.p), F.mul(artin_schreier_theta(field), c))


def phi_matrix(field: FieldSpec) -> FpMatrix:
    """Matrix of phi in the residue basis (column j is phi(y^j))."""
    cols = [phi(field, b) for b in field.residue_field.basis()]
    return FpMatrix.from_rows(list(zip(*cols)), field.p, field.f)


def critical_expansion_check(field: FieldSpec) -> None:
    """Check (1 + c pi^s)^p = 1 + phi(c) pi^crit mod pi^(crit+1) for every basis residue c."""
    s, crit = field.critical_base_level, field.crit_int
    for c in field.residue_field.basis():
        lhs = (1 + field.from_residue(c, s)) ** field.p
        rhs = 1 + field.from_residue(phi(field, c), crit)
        if (lhs - rhs).valuation() <= crit:
            raise RamfiltError("critical-level expansion self-check failed")


def zeta_p_in_K(field: FieldSpec) -> bool:
    if field.crit_int is None:
        return False
    return rank(phi_matrix(field)) < field.f


@lru_cache(maxsize=None)
def find_omega_star(field: FieldSpec) -> OmegaStar:
    """First residue (in index order) outside image(phi), lifted to the critical level."""
    if not field.zeta_flag:
        raise NotApplicable("zeta_p is not in K, so there is no omega_*")
    m = phi_matrix(field)
    image = span(m.transpose().rows, field.f, field.p)
    F = field.residue_field
    c_star = next(c for c in F.elements() if not image.contains(c))
    return OmegaStar(1 + field.from_residue(c_star, field.crit_int), c_star)


def _solve_critical(field: FieldSpec, d):
    """Find (c, a) with phi(c) + a*c_star = d."""
    m = phi_matrix(field)
    if not field.zeta_flag:
        return solve(m, d), 0
    F = field.residue_field
    c_star = find_omega_star(field).c_star
    for a in range(field.p):
        c = solve(m, F.sub(d, F.scale(a, c_star)))
        if c is not None:
            return c, a
    raise AssertionError("image(phi) + <c_star> should be the whole residue field")


def _stripping_factor(field, l, d):
    """Return (factor, recorded, base) for a unit whose leading term is 1 + d pi^l.

    ``factor`` has the same leading term, ``recorded`` maps generators to
    exponents read off directly, and ``base`` (if not None) is an element whose
    p-th power enters the factor, so its own exponents must be scaled by p.
    """
    p, F = field.p, field.residue_field
    crit = field.crit
    if l < crit and l % p:
        factor = field.one()
        recorded = {}
        for y, b in enumerate(d, start=1):
            if b:
                factor = factor * eta(field, l, y) ** b
                recorded[("eta", l, y)] = b
        return factor, recorded, None
    if l < crit:
        base = 1 + field.from_residue(F.frobenius_inverse(d), l // p)
        return base**p, {}, base
    if l == crit:
        c, a = _solve_critical(field, d)
        base = 1 + field.from_residue(c, field.critical_base_level)
        factor = base**p
        recorded = {}
        if a:
            factor = factor * find_omega_star(field).element ** a
            recorded[("omega",)] = a
        return factor, recorded, base
    # above the critical level p-th powering is multiplication by theta on residues
    c = F.mul(d, F.inv(_theta(field)))
    base = 1 + field.from_residue(c, l - field.e)
    return base**p, {}, base


def decompose(u: RingElement, k: int = 1) -> UnitDecomposition:
    """Exponents mod p^k of u on the eta/omega generators.

    u times the inverse of the recombined product is a p^k-th power.  The
    loop stops once the cofactor's level exceeds crit + (k-1)e, where every
    unit is a p^k-th power.
    """
    if k < 1:
        raise ValueError("exponent precision k must be >= 1")
    field = u.field
    p = field.p
    mod = p**k
    threshold = field.crit + (k - 1) * field.e
    eta_exp = {(x, y): 0 for x in field.I for y in range(1, field.f + 1)}
    omega_exp = 0 if field.zeta_flag else None
    lv = level(u)
    prev = 0
    while lv <= threshold:
        assert lv > prev, "level must strictly increase across strip passes"
        prev = lv
        d = (u - 1).shift(lv).residue()
        factor, recorded, base = _stripping_factor(field, lv, d)
        for key, a in recorded.items():
            if key[0] == "eta":
                eta_exp[key[1:]] = (eta_exp[key[1:]] + a) % mod
            else:
                omega_exp = (omega_exp + a) % mod
        if base is not None and k > 1:
            sub = decompose(base, k - 1)
            for key, a in sub.eta_exp.items():
                eta_exp[key] = (eta_exp[key] + p * a) % mod
            if sub.omega_exp:
                omega_exp = (omega_exp + p * sub.omega_exp) % mod
        u = u * factor.inverse()
        lv = level(u)
    if lv == INFINITY and u.prec <= threshold:
        raise PrecisionExhausted(
            f"unit is 1 modulo pi^{u.prec} but certification needs level > {threshold}"
        )
    return UnitDecomposition(k, eta_exp, omega_exp, lv)


def recompose(field: FieldSpec, dec: UnitDecomposition) -> RingElement:
    """The product of generators raised to the recorded exponents."""
    out = field.one()
    for (x, y), a in dec.eta_exp.items():
        if a:
            out = out * eta(field, x, y) ** a
    if dec.omega_exp:
        out = out * find_omega_star(field).element ** dec.omega_exp
    return out


def is_pth_power(a: RingElement, v_known: int | None = None) -> bool:
    """Whether a nonzero element of K is a p-th power in K.

    The Teichmueller part is removed by raising the unit part to the q-1
    power, which is invertible mod p and so preserves p-th-power-ness.
    """
    v = a.valuation() if v_known is None else v_known
    if v == INFINITY:
        raise ZeroInput("zero is not a valid input")
    field = a.field
    if v % field.p:
        return False
    w = a.shift(v) ** (field.q - 1)
    return decompose(w, 1).is_trivial()
