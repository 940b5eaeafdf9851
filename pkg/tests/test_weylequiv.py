import random
from collections import namedtuple

import pytest

from liesub import cartan
from liesub.chevalley import algebra
from liesub.errors import GramMismatch, Undecided
from liesub.roots import root_system
from liesub.weylequiv import (
    conjugate_ordered,
    conjugate_sets,
    linearly_equivalent,
    tuple_gram,
)

from helpers import apply_matrix, brute_conjugate_sets, weyl_matrices

Record = namedtuple("Record", "cartan_matrix h_part")


def rs_of(name):
    return root_system(cartan.canonical_matrix(cartan.parse_type(name)))


def test_identity_on_equal_tuples():
    rs = rs_of("A2")
    A = [(1, 1), (2, 2)]
    word = conjugate_ordered(rs, A, A)
    assert word is not None
    for a in A:
        assert rs.apply_word(word, a) == a


def test_round_trip_witness():
    rng = random.Random(3)
    for name in ["A2", "B2", "G2", "A3"]:
        rs = rs_of(name)
        W = weyl_matrices(rs)
        for _ in range(25):
            A = [tuple(rng.randint(-2, 2) for _ in range(rs.rank)) for _ in range(2)]
            M = W[rng.randrange(len(W))]
            B = [apply_matrix(M, a) for a in A]
            word = conjugate_ordered(rs, A, B)
            assert word is not None
            assert [rs.apply_word(word, a) for a in A] == B


def test_different_dominants_are_absent():
    rs = rs_of("A2")
    assert conjugate_ordered(rs, [(1, 1)], [(2, 2)]) is None


def test_gram_mismatch_raises():
    rs = rs_of("A2")
    with pytest.raises(GramMismatch):
        conjugate_ordered(rs, [(1, 0)], [(2, 0)])


def test_conjugate_sets_with_permutation():
    rs = rs_of("A1+A1")
    A = [(2, 0), (0, 2)]
    B = [(0, 2), (2, 0)]
    out = conjugate_sets(rs, A, B)
    assert out is not None
    word, perm = out
    assert [rs.apply_word(word, A[perm[i]]) for i in range(2)] == B


def test_gram_spectrum_prunes_without_search():
    rs = rs_of("A2")
    assert conjugate_sets(rs, [(1, 1)], [(2, 2)]) is None


def test_node_cap_raises_undecided():
    rs = rs_of("A3")
    A = [(0, 0, 0)] * 3
    with pytest.raises(Undecided):
        conjugate_sets(rs, A, A, node_cap=2)


def test_zero_tuples_and_empty_tuples():
    rs = rs_of("B2")
    assert conjugate_sets(rs, [], []) == ((), ())
    zero = (0, 0)
    out = conjugate_sets(rs, [zero], [zero])
    assert out is not None


def test_linearly_equivalent_interface(a2_db, session):
    L = session.algebra_for(a2_db.ambient_typ)
    regular, principal, full = a2_db.classes
    assert linearly_equivalent(L, regular, regular)
    assert not linearly_equivalent(L, regular, principal)
    w_img = [L.rs.apply_word((0, 1), lab) for lab in principal.h_part]
    moved = Record(principal.cartan_matrix, tuple(w_img))
    assert linearly_equivalent(L, principal, moved)


AMBIENTS_SMALL = ["A1", "A2", "B2", "G2", "A1+A1"]
AMBIENTS_RANK3 = ["A3", "B3", "A1+B2", "A1+A1+A1"]


def _random_instance(rng, rs, W):
    r = rng.randint(1, 3)
    A = [tuple(rng.randint(-2, 2) for _ in range(rs.rank)) for _ in range(r)]
    style = rng.random()
    if style < 0.5:
        M = W[rng.randrange(len(W))]
        idx = list(range(r))
        rng.shuffle(idx)
        B = [apply_matrix(M, A[i]) for i in idx]
    elif style < 0.75:
        B = [tuple(rng.randint(-2, 2) for _ in range(rs.rank)) for _ in range(r)]
    else:
        # near miss: perturb one entry of a conjugate tuple
        M = W[rng.randrange(len(W))]
        B = [apply_matrix(M, a) for a in A]
        k = rng.randrange(r)
        B[k] = tuple(c + rng.choice((-1, 1)) for c in B[k])
    return A, B


def _check_agreement(rng, names, count):
    systems = [(rs_of(n), weyl_matrices(rs_of(n))) for n in names]
    agree = 0
    for _ in range(count):
        rs, W = systems[rng.randrange(len(systems))]
        A, B = _random_instance(rng, rs, W)
        brute = brute_conjugate_sets(rs, W, A, B)
        mine = conjugate_sets(rs, A, B)
        assert (mine is None) == (brute is None), (rs, A, B)
        if mine is not None:
            word, perm = mine
            assert [rs.apply_word(word, A[perm[i]]) for i in range(len(A))] == [
                tuple(b) for b in B
            ]
        agree += 1
    return agree


def test_brute_force_agreement_small():
    rng = random.Random(2024)
    assert _check_agreement(rng, AMBIENTS_SMALL, 1500) == 1500


def test_brute_force_agreement_rank3():
    rng = random.Random(77)
    assert _check_agreement(rng, AMBIENTS_RANK3, 300) == 300
