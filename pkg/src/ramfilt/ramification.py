"""Upper ramification jumps and filtrations of elementary abelian p-extensions.

An extension is described by the image n in V = K^x/(K^x)^p of its norm
group (class field side) or by a set of classes a with M = K(a^(1/p))
(Kummer side, only when zeta_p is in K).  The degree-p subextensions are the
hyperplanes above n, respectively the lines of span(a); the upper group G^v
is the intersection of the subextension groups whose jump is below v.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import NotApplicable, NotDivisible, NotHyperplane, RamfiltError, ZeroClass
from .fp_linalg import Subspace, enumerate_hyperplanes_above, enumerate_lines
from .mult_group import kmodp, unit_level_image
from .padic_core import FieldSpec


@dataclass(frozen=True)
class JumpSequence:
    """Upper jumps t (strictly increasing) with sizes m, |G^t/G^(t+1)| = p^m."""

    pairs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        pairs = tuple((int(t), int(m)) for t, m in self.pairs)
        for (t0, _), (t1, _) in zip(pairs, pairs[1:]):
            if t1 <= t0:
                raise RamfiltError("jumps must be strictly increasing")
        if any(m < 1 for _, m in pairs):
            raise RamfiltError("jump sizes must be >= 1")
        object.__setattr__(self, "pairs", pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)

    @property
    def jumps(self) -> tuple[int, ...]:
        return tuple(t for t, _ in self.pairs)

    @property
    def total_size(self) -> int:
        return sum(m for _, m in self.pairs)

    def to_json(self) -> list[list[int]]:
        return [[t, m] for t, m in self.pairs]

    @classmethod
    def from_json(cls, data) -> JumpSequence:
        return cls(tuple((t, m) for t, m in data))


def herbrand_psi_degree_p(t: int, nu: int, p: int) -> int:
    """psi for a degree-p extension with jump t: identity up to t, slope p after."""
    return nu if nu <= t else t + p * (nu - t)


def jump_discriminant(t: int, p: int) -> int:
    """v_L of the different of a degree-p extension with upper jump t."""
    return (p - 1) * (t + 1)


def disc_to_jump(D: int, p: int) -> int:
    if D % (p - 1):
        raise NotDivisible(f"{D} is not divisible by p-1 = {p - 1}")
    return D // (p - 1) - 1


def candidate_grid(field: FieldSpec) -> list[int]:
    grid = [-1, *field.I]
    if field.zeta_flag:
        grid.append(field.crit_int)
    return grid


def jump_of_hyperplane(field: FieldSpec, n: Subspace) -> int:
    """Upper jump of the degree-p extension with norm image n (-1 if unramified)."""
    space = kmodp(field)
    if n.ambient_dim != space.dim or n.p != field.p or n.codim != 1:
        raise NotHyperplane("expected a codimension-one subspace of V")
    if unit_level_image(field, 0) <= n:
        return -1
    j = 0
    while not unit_level_image(field, j + 1) <= n:
        j += 1
    return j


def hyperplane_jumps(field: FieldSpec, n: Subspace) -> list[tuple[Subspace, int]]:
    """Every hyperplane above n with its jump, in canonical order."""
    return [(h, jump_of_hyperplane(field, h)) for h in enumerate_hyperplanes_above(n)]


def _intersection(hyps, start: Subspace) -> Subspace:
    ann = start.annihilator()
    for h in hyps:
        ann = ann + h.annihilator()
    return ann.annihilator()


def upper_group(field: FieldSpec, n: Subspace, nu: int, hyps=None) -> Subspace:
    """The subspace of V whose quotient by n is G^nu."""
    if n.codim == 0:
        return n
    if hyps is None:
        hyps = hyperplane_jumps(field, n)
    return _intersection([h for h, t in hyps if t < nu], kmodp(field).full())


def filtration(field: FieldSpec, n: Subspace) -> JumpSequence:
    """Upper ramification jumps and sizes of the extension with norm image n."""
    if n.codim == 0:
        return JumpSequence()
    hyps = hyperplane_jumps(field, n)
    pairs = []
    prev = upper_group(field, n, -1, hyps).dim
    for t in candidate_grid(field):
        cur = upper_group(field, n, t + 1, hyps).dim
        if cur < prev:
            pairs.append((t, prev - cur))
        prev = cur
    assert prev == n.dim
    return JumpSequence(tuple(pairs))


def kummer_jump(field: FieldSpec, a) -> int:
    """Upper jump of K(a^(1/p))/K read from the coordinates of the class a."""
    if not field.zeta_flag:
        raise NotApplicable("Kummer description needs zeta_p in K")
    space = kmodp(field)
    if not any(x % field.p for x in a):
        raise ZeroClass("the trivial class gives no extension")
    if a[0] % field.p:
        return field.crit_int
    levels = [x for (x, _), i in space.eta_indices() if a[i] % field.p]
    if levels:
        return field.crit_int - min(levels)
    return -1


def kummer_filtration(field: FieldSpec, gens) -> JumpSequence:
    """Jumps of K(A^(1/p)) for A the span of the given classes."""
    if not field.zeta_flag:
        raise NotApplicable("Kummer description needs zeta_p in K")
    space = kmodp(field)
    A = space.span(gens)
    if A.dim == 0:
        return JumpSequence()
    by_jump = {}
    for line in enumerate_lines(A):
        by_jump.setdefault(kummer_jump(field, line), []).append(line)
    pairs = []
    below = space.zero()
    for t in candidate_grid(field):
        upto = below + space.span(by_jump.get(t, []))
        if upto.dim > below.dim:
            pairs.append((t, upto.dim - below.dim))
        below = upto
    assert below == A
    return JumpSequence(tuple(pairs))


def hyperplane_multiset(field: FieldSpec) -> Counter:
    return Counter(t for _, t in hyperplane_jumps(field, kmodp(field).zero()))


def line_multiset(field: FieldSpec) -> Counter:
    space = kmodp(field)
    return Counter(kummer_jump(field, v) for v in enumerate_lines(space.full()))


def chain(seq: JumpSequence, total: int) -> list[tuple[int, int | None, int]]:
    """Segments (lo, hi, k) meaning G^v = (Z/pZ)^k for integers lo <= v <= hi.

    ``total`` is log_p |G|; the last segment has hi = None (all v >= lo).
    """
    out = []
    lo, k = -1, total
    for t, m in seq:
        if t >= lo:
            out.append((lo, t, k))
        k -= m
        lo = t + 1
    out.append((lo, None, k))
    return out


def format_chain(seq: JumpSequence, total: int) -> list[str]:
    lines = []
    for lo, hi, k in chain(seq, total):
        grp = "{e}" if k == 0 else f"(Z/pZ)^{k}"
        if hi is None:
            lines.append(f"G^v = {grp} for v >= {lo}")
        elif lo == hi:
            lines.append(f"G^v = {grp} for v = {lo}")
        else:
            lines.append(f"G^v = {grp} for {lo} <= v <= {hi}")
    return lines
