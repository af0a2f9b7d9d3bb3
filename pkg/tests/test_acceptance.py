"""Acceptance criteria, one test per criterion.

Each test prints a single "[ACCEPTANCE n] PASS|FAIL ..." line (visible even
under output capture) and then asserts.
"""

import math

import pytest

from ramfilt.classify import ckp_filtration, is_admissible, maus_check
from ramfilt.construct import admissible_sequences, construct_extension
from ramfilt.errors import ZetaInK
from ramfilt.fp_linalg import FpMatrix, enumerate_subspaces, rank
from ramfilt.mult_group import coordinates, kmodp
from ramfilt.ramification import (
    candidate_grid,
    disc_to_jump,
    filtration,
    hyperplane_jumps,
    hyperplane_multiset,
    kummer_jump,
    line_multiset,
    upper_group,
)
from ramfilt.units import decompose, is_pth_power, recompose

from oracles import ACCEPTANCE_FIELDS, ZETA_FIELDS, all_units, field, power_set, random_principal_unit, rng

SMALLEST = ["Q2", "Q3", "Q5"]


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\n[ACCEPTANCE {n}] {'PASS' if ok else 'FAIL'} {detail}")
        assert ok, detail

    return emit


def _brute_dim_V(K):
    """1 + log_p [O^x : O^x p], counting units and p-th powers mod pi^L with L > crit."""
    L = math.floor(K.crit) + 1
    units = (K.q - 1) * K.q ** (L - 1)
    index = units // len(power_set(K, L, K.p))
    return 1 + round(math.log(index, K.p))


def test_criterion_1_dimension_of_V(report):
    expected = {"Q2": 3, "Q3": 2, "Q5": 2, "Q3z": 4, "Q4": 4, "Q2s": 4}
    got = {name: kmodp(field(name)).dim for name in ACCEPTANCE_FIELDS}
    ok = got == expected
    for name in ACCEPTANCE_FIELDS:
        K = field(name)
        ok &= got[name] == K.n + (2 if K.zeta_flag else 1)
    brute = {}
    for name in SMALLEST:
        K = field(name)
        L = math.floor(K.crit) + 2
        rows = {coordinates(u) for u in all_units(K, L)} | {coordinates(K.pi())}
        brute[name] = (rank(FpMatrix.from_rows(sorted(rows), K.p)), _brute_dim_V(K))
        ok &= brute[name] == (expected[name], expected[name])
    report(1, ok, f"dim V {got}; brute (rank, index) {brute}")


def test_criterion_2_ckp_closed_form(report):
    bad = [n for n in ACCEPTANCE_FIELDS
           if ckp_filtration(field(n)) != filtration(field(n), kmodp(field(n)).zero())]
    q4 = ckp_filtration(field("Q4")).to_json()
    q2s = ckp_filtration(field("Q2s")).to_json()
    ok = not bad and q4 == [[-1, 1], [1, 2], [2, 1]] and q2s == [[-1, 1], [1, 1], [3, 1], [4, 1]]
    report(2, ok, f"mismatches {bad}; f=2 case {q4}; e=2 case {q2s}")


def test_criterion_3_q2_atlas(report):
    Q2 = field("Q2")
    hyps = hyperplane_jumps(Q2, kmodp(Q2).zero())
    multiset = dict(hyperplane_multiset(Q2))
    # classical: Q2(sqrt d) for the 7 nontrivial square classes, v_2 of the discriminant
    disc_valuation = {5: 0, -1: 2, 3: 2, 2: 3, -2: 3, 6: 3, -6: 3}
    classical = {}
    for d, v in disc_valuation.items():
        classical[d] = (disc_to_jump(v, 2), kummer_jump(Q2, coordinates(Q2.element(d))))
    ok = (len(hyps) == 7 and multiset == {-1: 1, 1: 2, 2: 4}
          and all(a == b for a, b in classical.values()))
    report(3, ok, f"{len(hyps)} hyperplanes, multiset {multiset}; classical vs Kummer {classical}")


def test_criterion_4_kummer_spot_values(report):
    Q2 = field("Q2")
    got = {a: kummer_jump(Q2, coordinates(Q2.element(a))) for a in (-1, 5, 2, 3)}
    ok = got == {-1: 1, 5: -1, 2: 2, 3: 1} and line_multiset(Q2) == hyperplane_multiset(Q2)
    report(4, ok, f"jumps {got}; line/hyperplane multisets agree")


def test_criterion_5_pth_power_oracle(report):
    cases = [(field("Q2"), 8), (field("Q3"), 6), (field("Q3z", M=4), 7)]
    detail, ok = [], True
    for K, top in cases:
        checked = mismatches = 0
        for L in range(math.floor(K.crit) + 1, top + 1):
            table = power_set(K, L, K.p)
            for u in all_units(K, L):
                checked += 1
                mismatches += is_pth_power(u) != (u.digits(L) in table)
        ok &= mismatches == 0
        detail.append(f"p={K.p},e={K.e}: {checked} units up to N={top}, {mismatches} mismatches")
    report(5, ok, "; ".join(detail))


def test_criterion_6_admissibility_both_directions(report):
    detail, ok = [], True
    for name in ACCEPTANCE_FIELDS:
        K = field(name)
        subs = [n for n in enumerate_subspaces(kmodp(K).dim, K.p) if n.codim <= 4]
        forward = all(is_admissible(K, filtration(K, n).pairs) for n in subs)
        seqs = list(admissible_sequences(K))
        backward = all(filtration(K, construct_extension(K, s).normic) == s for s in seqs)
        ok &= forward and backward
        detail.append(f"{name}: {len(subs)} subspaces, {len(seqs)} sequences")
    report(6, ok, "; ".join(detail))


def test_criterion_7_line_hyperplane_multisets(report):
    detail, ok = [], True
    for name in ZETA_FIELDS:
        K = field(name)
        lm, hm = line_multiset(K), hyperplane_multiset(K)
        ok &= lm == hm and kmodp(K).dim <= 5
        detail.append(f"{name}: {dict(sorted(hm.items()))}")
    report(7, ok, "; ".join(detail))


def test_criterion_8_recomposition(report):
    detail, ok = [], True
    for name in ACCEPTANCE_FIELDS:
        K = field(name)
        r = rng(2024)
        failures = 0
        for _ in range(200):
            u = random_principal_unit(K, r)
            residual = u * recompose(K, decompose(u)).inverse()
            failures += not is_pth_power(residual)
        ok &= failures == 0
        detail.append(f"{name}: {failures}/200 failures")
    report(8, ok, "; ".join(detail))


def test_criterion_9_grid_sufficiency(report):
    detail, ok = [], True
    for name in SMALLEST:
        K = field(name)
        space = kmodp(K)
        grid = set(candidate_grid(K))
        hi = math.floor(K.crit) + 1
        changes = set()
        for n in enumerate_subspaces(space.dim, K.p):
            for nu in range(-1, hi + 1):
                if upper_group(K, n, nu) != upper_group(K, n, nu + 1):
                    changes.add(nu)
        ok &= changes <= grid
        detail.append(f"{name}: changes at {sorted(changes)} within {sorted(grid)}")
    report(9, ok, "; ".join(detail))


def test_criterion_10_maus(report):
    Q3 = field("Q3")
    accepted = [s for s in ([1], [1, 2], [1, 2, 3]) if maus_check(Q3, s)]
    rejected = [s for s in ([1, 3], [2]) if not maus_check(Q3, s)]
    try:
        maus_check(field("Q2"), [1])
        zeta_raised = False
    except ZetaInK:
        zeta_raised = True
    ok = len(accepted) == 3 and len(rejected) == 2 and zeta_raised
    report(10, ok, f"accepted {accepted}; rejected {rejected}; Q2 raises ZetaInK: {zeta_raised}")
