"""The F_p-vector space V = K^x / (K^x)^p in its distinguished basis.

Basis order: pi, then eta_(x,y) for x in I ascending and y ascending, then
omega_* when zeta_p is in K.  Subgroups of K^x containing the p-th powers
are handled as subspaces of V; nothing from any extension of K is built.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import RamfiltError, ZeroInput
from .fp_linalg import Subspace, span, unit_vector
from .padic_core import INFINITY, FieldSpec, RingElement
from .units import decompose, eta, find_omega_star


@dataclass(frozen=True)
class KModP:
    field: FieldSpec
    labels: tuple[str, ...]

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def p(self) -> int:
        return self.field.p

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def eta_indices(self):
        """((x, y), position) for every eta generator, in basis order."""
        return [(tuple(map(int, lab.split(":")[1:])), i)
                for i, lab in enumerate(self.labels) if lab.startswith("eta:")]

    def zero(self) -> Subspace:
        return Subspace.zero(self.dim, self.p)

    def full(self) -> Subspace:
        return Subspace.full(self.dim, self.p)

    def span(self, vectors) -> Subspace:
        return span(vectors, self.dim, self.p)

    def basis_vector(self, label: str):
        return unit_vector(self.index(label), self.dim)


@lru_cache(maxsize=None)
def kmodp(field: FieldSpec) -> KModP:
    labels = ["pi"] + [f"eta:{x}:{y}" for x in field.I for y in range(1, field.f + 1)]
    if field.zeta_flag:
        labels.append("omega")
    space = KModP(field, tuple(labels))
    assert space.dim == field.n + (2 if field.zeta_flag else 1)
    return space


def basis_element(field: FieldSpec, label: str) -> RingElement:
    if label == "pi":
        return field.pi()
    if label == "omega":
        return find_omega_star(field).element
    if label.startswith("eta:"):
        _, x, y = label.split(":")
        return eta(field, int(x), int(y))
    raise RamfiltError(f"unknown basis label {label!r}")


def coordinates(a: RingElement) -> tuple[int, ...]:
    """Coordinates of the class of a nonzero element in V."""
    field = a.field
    p = field.p
    v = a.valuation()
    if v == INFINITY:
        raise ZeroInput("zero has no class in K^x/(K^x)^p")
    space = kmodp(field)
    # u^(q-1) is principal and kills the Teichmueller part; undo the scalar q-1
    dec = decompose(a.shift(v) ** (field.q - 1), 1)
    scale = pow(field.q - 1, -1, p)
    out = [v % p]
    for (x, y), _ in space.eta_indices():
        out.append(dec.eta_exp[(x, y)] * scale % p)
    if field.zeta_flag:
        out.append(dec.omega_exp * scale % p)
    return tuple(out)


def unit_level_image(field: FieldSpec, j: int) -> Subspace:
    """Image of U^j in V (U^0 meaning all units), from the closed form."""
    if j < 0:
        raise ValueError("level must be >= 0")
    space = kmodp(field)
    if j > field.crit:
        return space.zero()
    j = max(j, 1)
    vecs = [unit_vector(i, space.dim) for (x, _), i in space.eta_indices() if x >= j]
    if field.zeta_flag:
        vecs.append(space.basis_vector("omega"))
    return space.span(vecs)


def norm_subgroup_from_generators(field: FieldSpec, gens) -> Subspace:
    """Image in V of the subgroup generated by ``gens`` and (K^x)^p."""
    space = kmodp(field)
    return space.span([coordinates(field.element(g)) for g in gens])


def cfc_degree(n: Subspace) -> int:
    """Degree [L:K] of the abelian extension whose norm group has image n."""
    return n.p ** n.codim


def format_vector(space: KModP, v) -> str:
    """Multiplicative name of a class, e.g. 'pi*eta(1,1)^2'."""
    parts = []
    for lab, c in zip(space.labels, v):
        if not c:
            continue
        name = {"pi": "pi", "omega": "omega_*"}.get(lab)
        if name is None:
            _, x, y = lab.split(":")
            name = f"(1+c_{y}*pi^{x})"
        parts.append(name if c == 1 else f"{name}^{c}")
    return "*".join(parts) or "1"
