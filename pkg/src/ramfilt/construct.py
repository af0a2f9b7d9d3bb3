"""Witnessing extensions for admissible jump sequences.

The norm image of the witness is the intersection of one block per jump:
all of V except m level-t eta generators (t in I), except omega_* (critical
jump) or except pi (jump -1).  When zeta_p is in K the same blocks come with
explicit Kummer generators.  Every witness re-derives its own filtration
before it is returned.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .classify import is_admissible
from .errors import NotAdmissible, SelfVerificationFailed
from .fp_linalg import Subspace, unit_vector
from .mult_group import cfc_degree, coordinates, kmodp
from .padic_core import FieldSpec, RingElement
from .ramification import JumpSequence, filtration, kummer_filtration
from .units import find_omega_star


@dataclass(frozen=True)
class ExtensionWitness:
    claimed: JumpSequence
    normic: Subspace
    kummer_gens: tuple[RingElement, ...] | None = None
    kummer_coords: tuple[tuple[int, ...], ...] | None = None

    def to_json(self) -> dict:
        return {
            "claimed": self.claimed.to_json(),
            "normic": self.normic.to_json(),
            "kummer": None if self.kummer_gens is None else [g.to_json() for g in self.kummer_gens],
        }


def single_jump_block(field: FieldSpec, t: int, m: int):
    """Norm image and (if zeta_p in K) Kummer generators of one jump of size m.

    For t in I the excluded generators are eta_(t,1..m); the Kummer side uses
    1 + c_y pi^(crit - t) for the same y.
    """
    verdict = is_admissible(field, [(t, m)])
    if not verdict:
        raise NotAdmissible(f"({t}, {m}) is not admissible over {field.describe()}: {verdict.code}")
    space = kmodp(field)
    if t == -1:
        excluded = ["pi"]
    elif t == field.crit_int:
        excluded = ["omega"]
    else:
        excluded = [f"eta:{t}:{y}" for y in range(1, m + 1)]
    keep = [unit_vector(i, space.dim) for i, lab in enumerate(space.labels) if lab not in excluded]
    normic = space.span(keep)
    if not field.zeta_flag:
        return normic, None
    if t == -1:
        gens = [find_omega_star(field).element]
    elif t == field.crit_int:
        gens = [field.pi()]
    else:
        l = field.crit_int - t
        basis = field.residue_field.basis()
        gens = [1 + field.from_residue(basis[y - 1], l) for y in range(1, m + 1)]
    return normic, gens


def construct_extension(field: FieldSpec, s) -> ExtensionWitness:
    """Build and self-verify an extension with upper jumps s."""
    seq = s if isinstance(s, JumpSequence) else JumpSequence(tuple(tuple(x) for x in s))
    verdict = is_admissible(field, seq.pairs)
    if not verdict:
        raise NotAdmissible(f"sequence {seq.to_json()} rejected: {verdict.code} at index {verdict.index}")
    space = kmodp(field)
    normic = space.full()
    gens = [] if field.zeta_flag else None
    for t, m in seq:
        block, block_gens = single_jump_block(field, t, m)
        normic = normic & block
        if gens is not None:
            gens.extend(block_gens)

    got = filtration(field, normic)
    if got != seq:
        raise SelfVerificationFailed(f"norm side gives {got.to_json()}, expected {seq.to_json()}")
    if cfc_degree(normic) != verdict.degree:
        raise SelfVerificationFailed("norm group index does not match the claimed degree")
    coords = None
    if gens is not None:
        coords = tuple(coordinates(g) for g in gens)
        got = kummer_filtration(field, coords)
        if got != seq:
            raise SelfVerificationFailed(f"Kummer side gives {got.to_json()}, expected {seq.to_json()}")
        if space.span(coords).dim != seq.total_size:
            raise SelfVerificationFailed("Kummer generators are not independent")
        gens = tuple(gens)
    return ExtensionWitness(seq, normic, gens, coords)


def admissible_sequences(field: FieldSpec):
    """Every admissible jump sequence over K (including the empty one), in a fixed order."""
    slots = [[(-1, 1)]] + [[(t, m) for m in range(1, field.f + 1)] for t in field.I]
    if field.zeta_flag:
        slots.append([(field.crit_int, 1)])
    for choice in itertools.product(*[[None, *opts] for opts in slots]):
        yield JumpSequence(tuple(c for c in choice if c is not None))
