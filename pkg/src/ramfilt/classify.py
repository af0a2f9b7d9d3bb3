"""Decision procedures for jump sequences and the closed-form filtration of C_K(p)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotSorted, ZetaInK
from .padic_core import FieldSpec
from .ramification import JumpSequence, chain

T_RANGE = "T_RANGE"
T_DIVISIBLE = "T_DIVISIBLE"
M_RANGE = "M_RANGE"
NEG1_NOT_FIRST = "NEG1_NOT_FIRST"
CRIT_NOT_LAST = "CRIT_NOT_LAST"
CRIT_WITHOUT_ZETA = "CRIT_WITHOUT_ZETA"
MAUS_BRANCH = "MAUS_BRANCH"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check; falsy when it failed, with a reason code and the offending index."""

    ok: bool
    code: str | None = None
    index: int | None = None
    degree: int | None = None

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "reason": self.code, "index": self.index, "degree": self.degree}


def _pairs(s):
    pairs = [(int(t), int(m)) for t, m in s]
    if any(b[0] <= a[0] for a, b in zip(pairs, pairs[1:])):
        raise NotSorted("jumps must be strictly increasing")
    return pairs


def is_admissible(field: FieldSpec, s) -> Verdict:
    """Whether some elementary abelian p-extension of K has upper jumps s = [(t, m), ...]."""
    pairs = _pairs(s)
    last = len(pairs) - 1
    for i, (t, m) in enumerate(pairs):
        if t == -1:
            if i != 0:
                return Verdict(False, NEG1_NOT_FIRST, i)
            if m != 1:
                return Verdict(False, M_RANGE, i)
        elif field.crit_int is not None and t == field.crit_int:
            if not field.zeta_flag:
                return Verdict(False, CRIT_WITHOUT_ZETA, i)
            if i != last:
                return Verdict(False, CRIT_NOT_LAST, i)
            if m != 1:
                return Verdict(False, M_RANGE, i)
        elif t < 1 or t >= field.crit:
            return Verdict(False, T_RANGE, i)
        elif t % field.p == 0:
            return Verdict(False, T_DIVISIBLE, i)
        elif not 1 <= m <= field.f:
            return Verdict(False, M_RANGE, i)
    return Verdict(True, degree=field.p ** sum(m for _, m in pairs))


def maus_check(field: FieldSpec, jumps) -> Verdict:
    """Maus' criterion for jumps of a totally ramified cyclic p^m-extension (zeta_p not in K)."""
    if field.zeta_flag:
        raise ZetaInK("Maus' criterion assumes zeta_p is not in K")
    jumps = [int(t) for t in jumps]
    if any(b <= a for a, b in zip(jumps, jumps[1:])):
        raise NotSorted("jumps must be strictly increasing")
    if not jumps:
        return Verdict(True, degree=1)
    p, e = field.p, field.e
    crit = Fraction(p * e, p - 1)
    low = Fraction(e, p - 1)
    t1 = jumps[0]
    if not 1 <= t1 < crit:
        return Verdict(False, T_RANGE, 0)
    if t1 % p == 0:
        return Verdict(False, T_DIVISIBLE, 0)
    for i, (t, nxt) in enumerate(zip(jumps, jumps[1:]), start=1):
        if t < low:
            ok = nxt == p * t or (p * t < nxt < crit and nxt % p)
        else:
            ok = nxt == t + e
        if not ok:
            return Verdict(False, MAUS_BRANCH, i)
    return Verdict(True, degree=p ** len(jumps))


def ckp_degree(field: FieldSpec) -> int:
    """[C_K(p) : K] for the maximal elementary abelian p-extension C_K(p)."""
    return field.p ** (field.n + (2 if field.zeta_flag else 1))


def ckp_filtration(field: FieldSpec) -> JumpSequence:
    """Closed form: -1 and the critical level (if zeta_p in K) of size 1, each t in I of size f."""
    pairs = [(-1, 1)] + [(t, field.f) for t in field.I]
    if field.zeta_flag:
        pairs.append((field.crit_int, 1))
    return JumpSequence(tuple(pairs))


def ckp_chain(field: FieldSpec):
    """The group chain G^v of C_K(p)/K as (lo, hi, log_p |G^v|) segments."""
    seq = ckp_filtration(field)
    return chain(seq, seq.total_size)
