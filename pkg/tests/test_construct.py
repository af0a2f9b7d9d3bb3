import pytest

from ramfilt.classify import is_admissible
from ramfilt.construct import admissible_sequences, construct_extension, single_jump_block
from ramfilt.errors import NotAdmissible
from ramfilt.fp_linalg import enumerate_subspaces
from ramfilt.mult_group import cfc_degree, coordinates, kmodp
from ramfilt.ramification import JumpSequence, filtration, kummer_filtration
from ramfilt.units import is_pth_power

from oracles import ACCEPTANCE_FIELDS, field


def test_single_jump_block_examples_q2():
    Q2 = field("Q2")
    sp = kmodp(Q2)
    n, gens = single_jump_block(Q2, -1, 1)
    assert n == sp.span([(0, 1, 0), (0, 0, 1)])
    assert gens[0] == 5
    n, gens = single_jump_block(Q2, 1, 1)
    assert n == sp.span([(1, 0, 0), (0, 0, 1)])
    assert gens[0] == 3  # 1 + pi^(crit - 1)
    n, gens = single_jump_block(Q2, 2, 1)
    assert n == sp.span([(1, 0, 0), (0, 1, 0)])
    assert gens[0] == 2
    with pytest.raises(NotAdmissible):
        single_jump_block(Q2, 1, 2)


def test_single_jump_block_without_zeta():
    n, gens = single_jump_block(field("Q3"), 1, 1)
    assert gens is None
    assert n == kmodp(field("Q3")).span([(1, 0)])


def test_sub_block_for_f2():
    K = field("Q4")
    sp = kmodp(K)
    n1, g1 = single_jump_block(K, 1, 1)
    n2, g2 = single_jump_block(K, 1, 2)
    assert n1.codim == 1 and n2.codim == 2
    assert n2 < n1
    assert filtration(K, n1) == JumpSequence(((1, 1),))
    assert filtration(K, n2) == JumpSequence(((1, 2),))
    assert sp.basis_vector("eta:1:1") not in n1
    assert sp.basis_vector("eta:1:2") in n1
    assert len(g2) == 2


def test_construct_examples():
    Q2 = field("Q2")
    w = construct_extension(Q2, [(-1, 1), (2, 1)])
    assert w.normic == kmodp(Q2).span([(0, 1, 0)])
    assert [int(g.coeffs[0][0]) for g in w.kummer_gens] == [5, 2]
    K = field("Q3z")
    w = construct_extension(K, [(1, 1), (2, 1)])
    assert w.kummer_gens[0] == 1 + K.pi_power(2)
    assert w.kummer_gens[1] == 1 + K.pi()
    assert w.to_json()["claimed"] == [[1, 1], [2, 1]]
    w = construct_extension(field("Q3"), [(-1, 1), (1, 1)])
    assert w.normic.dim == 0 and w.kummer_gens is None
    assert construct_extension(Q2, []).normic == kmodp(Q2).full()


@pytest.mark.parametrize("name", ACCEPTANCE_FIELDS)
def test_every_admissible_sequence_round_trips(name):
    K = field(name)
    seqs = list(admissible_sequences(K))
    realized = {filtration(K, n) for n in enumerate_subspaces(kmodp(K).dim, K.p)}
    assert set(seqs) == realized
    for seq in seqs:
        w = construct_extension(K, seq)
        assert filtration(K, w.normic) == seq
        assert cfc_degree(w.normic) == K.p ** seq.total_size
        if K.zeta_flag:
            coords = tuple(coordinates(g) for g in w.kummer_gens)
            assert kummer_filtration(K, coords) == seq
            assert all(not is_pth_power(g) for g in w.kummer_gens)


def test_admissible_sequence_count():
    # product over jump slots of (1 + number of allowed sizes)
    assert len(list(admissible_sequences(field("Q2")))) == 8
    assert len(list(admissible_sequences(field("Q3")))) == 4
    assert len(list(admissible_sequences(field("Q4")))) == 12
    assert len(list(admissible_sequences(field("Q3z")))) == 16


@pytest.mark.parametrize("seq", [[(1, 2)], [(0, 1)], [(-1, 2)], [(3, 1)]])
def test_construct_rejects_inadmissible(seq):
    with pytest.raises(NotAdmissible):
        construct_extension(field("Q2"), seq)
    assert not is_admissible(field("Q2"), seq)


def test_construct_is_deterministic():
    K = field("Q2s")
    a = construct_extension(K, [(1, 1), (3, 1), (4, 1)])
    b = construct_extension(K, JumpSequence(((1, 1), (3, 1), (4, 1))))
    assert a.to_json() == b.to_json()
